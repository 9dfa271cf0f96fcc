//! `k`-direct sums: face functions `F(σ) = Σ_{v∈σ} f(v)` over `F_2` on the
//! `(k−1)`-faces, reconstruction of origin functions, and the direct-sum
//! tester built on list agreement.
//!
//! Origin functions are bitmasks over vertex indices of `X(0)`.

use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::assignment::LAssignment;
use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::list_agreement::{self, ExhaustiveOutcome, ListSource, Mode, MonteCarloOutcome};
use crate::rational::{ratio, Rational};
use crate::representation::RepresentationComplex;

/// Vertex limit for the exhaustive distance oracle.
pub const ORACLE_MAX_VERTICES: usize = 16;

/// A bit per `(k−1)`-face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceFunction {
    pub base: Arc<SimplicialComplex>,
    pub k: usize,
    pub values: Vec<bool>,
}

fn vertex_mask(base: &SimplicialComplex, face: &[Vertex]) -> u64 {
    face.iter().fold(0, |m, &v| m | 1 << base.vertex_index(v).expect("vertex"))
}

fn check(base: &SimplicialComplex, k: usize) -> Result<()> {
    if k == 0 || k > base.dim() + 1 {
        return Err(Error::DimensionOutOfRange(k as i64));
    }
    if base.face_count(0) > 64 {
        return Err(Error::InvalidInput("at most 64 vertices are supported".into()));
    }
    Ok(())
}

/// The `k`-direct sum of `f`.
pub fn eval_direct_sum(base: Arc<SimplicialComplex>, k: usize, f: u64) -> Result<FaceFunction> {
    check(&base, k)?;
    let values = base
        .faces(k as i64 - 1)
        .iter()
        .map(|s| (vertex_mask(&base, s) & f).count_ones() % 2 == 1)
        .collect();
    Ok(FaceFunction { base, k, values })
}

impl FaceFunction {
    pub fn new(base: Arc<SimplicialComplex>, k: usize, values: Vec<bool>) -> Result<Self> {
        check(&base, k)?;
        if values.len() != base.face_count(k as i64 - 1) {
            return Err(Error::InvalidInput("one bit per (k−1)-face is required".into()));
        }
        Ok(Self { base, k, values })
    }

    pub fn zero(base: Arc<SimplicialComplex>, k: usize) -> Result<Self> {
        let n = base.face_count(k as i64 - 1);
        Self::new(base, k, vec![false; n])
    }

    /// `F` on a `(k−1)`-face.
    pub fn get(&self, face: &[Vertex]) -> Option<bool> {
        if face.len() != self.k {
            return None;
        }
        self.base.face_index(face).map(|i| self.values[i])
    }

    /// Number of origin functions to return: one for odd `k`, two for even.
    pub fn list_len(&self) -> usize {
        if self.k % 2 == 1 {
            1
        } else {
            2
        }
    }

    /// `Σ_{x ∈ τ ∖ skip} F(τ ∖ {x})` over the `(k−1)`-faces of the `k`-face `τ`.
    fn partial_sum(&self, tau: &[Vertex], skip: &[Vertex], reads: &mut u64) -> bool {
        let mut acc = false;
        for (i, x) in tau.iter().enumerate() {
            if skip.contains(x) {
                continue;
            }
            let mut sub = tau.to_vec();
            sub.remove(i);
            *reads += 1;
            acc ^= self.get(&sub).expect("subface of a k-face");
        }
        acc
    }

    /// Origin value at `v` computed inside the `k`-face `tau` (odd `k`).
    pub fn origin_value_in(&self, v: Vertex, tau: &[Vertex]) -> Result<bool> {
        self.check_face(tau)?;
        if self.k % 2 == 0 || !tau.contains(&v) {
            return Err(Error::InvalidInput("odd k and v ∈ τ are required".into()));
        }
        Ok(self.partial_sum(tau, &[v], &mut 0))
    }

    /// `f(u) + f(w)` computed inside a `k`-face containing both (even `k`).
    pub fn relative_value_in(&self, u: Vertex, w: Vertex, tau: &[Vertex]) -> Result<bool> {
        self.check_face(tau)?;
        if self.k % 2 == 1 || u == w || !tau.contains(&u) || !tau.contains(&w) {
            return Err(Error::InvalidInput("even k and distinct u, w ∈ τ are required".into()));
        }
        Ok(self.partial_sum(tau, &[u, w], &mut 0))
    }

    fn check_face(&self, tau: &[Vertex]) -> Result<()> {
        if tau.len() != self.k + 1 || !self.base.contains(tau) {
            return Err(Error::FaceNotInComplex(tau.to_vec()));
        }
        Ok(())
    }

    /// Reconstructs origin functions. Odd `k` gives one function; even `k`
    /// gives `f_0` anchored at the lowest vertex with `f_0 = 0` there, and
    /// `f_1 = 𝟙 + f_0`. Values spread from the anchor of each component
    /// along lexicographically first `k`-faces.
    pub fn reconstruct_origin(&self) -> Result<Vec<u64>> {
        let x = &self.base;
        let k = self.k as i64;
        if self.k > x.dim() {
            return Err(Error::NoContainingFace(Vec::new()));
        }
        let n = x.face_count(0);
        let verts = x.faces(0);
        let mut containing: Vec<Option<usize>> = vec![None; n];
        for (i, t) in x.faces(k).iter().enumerate() {
            for &v in t {
                let vi = x.vertex_index(v).expect("vertex");
                containing[vi].get_or_insert(i);
            }
        }
        if let Some(vi) = containing.iter().position(Option::is_none) {
            return Err(Error::NoContainingFace(verts[vi].clone()));
        }
        let tau = |vi: usize| &x.faces(k)[containing[vi].expect("face")];
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if self.k % 2 == 1 {
            let mut f = 0u64;
            for vi in 0..n {
                if self.partial_sum(tau(vi), &[verts[vi][0]], &mut 0) {
                    f |= 1 << vi;
                }
            }
            return Ok(vec![f]);
        }
        let mut known = vec![false; n];
        let mut f0 = 0u64;
        for start in 0..n {
            if known[start] {
                continue;
            }
            known[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(ui) = queue.pop_front() {
                let u = verts[ui][0];
                for t in x.faces(k).iter().filter(|t| t.contains(&u)) {
                    for &w in t {
                        let wi = x.vertex_index(w).expect("vertex");
                        if known[wi] {
                            continue;
                        }
                        known[wi] = true;
                        let bit = ((f0 >> ui) & 1 == 1) ^ self.partial_sum(t, &[u, w], &mut 0);
                        f0 |= (bit as u64) << wi;
                        queue.push_back(wi);
                    }
                }
            }
        }
        Ok(vec![f0, !f0 & full])
    }

    /// Origin values on the `k`-face `tau` from exactly `k + 1` reads of
    /// `F`, as local functions (bit `i` is the value at `tau[i]`). Even `k`
    /// anchors `tau[0]` at zero.
    pub fn query_origin_on_face(&self, tau: &[Vertex], reads: &mut u64) -> Result<Vec<u64>> {
        self.check_face(tau)?;
        let mut sums = Vec::with_capacity(tau.len());
        for i in 0..tau.len() {
            let mut sub = tau.to_vec();
            sub.remove(i);
            *reads += 1;
            sums.push(self.get(&sub).expect("subface"));
        }
        let full = (1u64 << tau.len()) - 1;
        // sums[i] = F(τ ∖ {τ_i}); sum of all but position i and (even k) 0.
        let total = sums.iter().fold(false, |a, &b| a ^ b);
        if self.k % 2 == 1 {
            let f = (0..tau.len()).fold(0, |m, i| m | ((total ^ sums[i]) as u64) << i);
            Ok(vec![f])
        } else {
            let f0 = (1..tau.len()).fold(0, |m, i| m | ((total ^ sums[0] ^ sums[i]) as u64) << i);
            Ok(vec![f0, !f0 & full])
        }
    }

    /// The `l`-assignment on `k`-faces answered by origin queries.
    pub fn induced_assignment(&self) -> Result<LAssignment> {
        let lists = self
            .base
            .faces(self.k as i64)
            .iter()
            .map(|t| self.query_origin_on_face(t, &mut 0))
            .collect::<Result<Vec<_>>>()?;
        LAssignment::new(self.base.clone(), self.k, self.list_len(), lists)
    }

    /// Weighted fraction of `(k−1)`-faces where the two functions differ.
    pub fn distance(&self, other: &FaceFunction) -> Result<Rational> {
        if self.k != other.k || *self.base != *other.base {
            return Err(Error::BaseMismatch);
        }
        let i = self.k as i64 - 1;
        let c: u64 = (0..self.values.len())
            .filter(|&j| self.values[j] != other.values[j])
            .map(|j| self.base.containing_count(i, j))
            .sum();
        Ok(ratio(c, self.base.weight_denominator(i)))
    }

    fn weighted_masks(&self) -> Vec<(u64, bool, u64)> {
        let i = self.k as i64 - 1;
        self.base
            .faces(i)
            .iter()
            .enumerate()
            .map(|(j, s)| (vertex_mask(&self.base, s), self.values[j], self.base.containing_count(i, j)))
            .collect()
    }

    fn guard(&self) -> Result<usize> {
        let n = self.base.face_count(0);
        if n > ORACLE_MAX_VERTICES {
            return Err(Error::SearchSpaceTooLarge(format!("{n} vertices")));
        }
        Ok(n)
    }

    /// Exact distance to `k`-direct sums with a nearest origin function.
    pub fn dist_to_direct_sums_oracle(&self) -> Result<(Rational, u64)> {
        let n = self.guard()?;
        let faces = self.weighted_masks();
        let (cost, f) = (0..1u64 << n)
            .map(|f| {
                let c: u64 = faces
                    .iter()
                    .filter(|(m, v, _)| ((m & f).count_ones() % 2 == 1) != *v)
                    .map(|(_, _, w)| w)
                    .sum();
                (c, f)
            })
            .min()
            .expect("nonempty");
        Ok((ratio(cost, self.base.weight_denominator(self.k as i64 - 1)), f))
    }

    /// Every origin function of `F`, found exhaustively.
    pub fn all_origins(&self) -> Result<Vec<u64>> {
        let n = self.guard()?;
        let faces = self.weighted_masks();
        Ok((0..1u64 << n)
            .filter(|&f| faces.iter().all(|(m, v, _)| ((m & f).count_ones() % 2 == 1) == *v))
            .collect())
    }
}

impl ListSource for FaceFunction {
    fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }
    fn k(&self) -> usize {
        self.k
    }
    fn l(&self) -> usize {
        self.list_len()
    }
    fn read_list(&self, idx: usize, reads: &mut u64) -> Vec<u64> {
        let tau = &self.base.faces(self.k as i64)[idx];
        self.query_origin_on_face(tau, reads).expect("k-face")
    }
}

/// Result of the direct-sum tester.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectSumReport {
    pub k: usize,
    pub l: usize,
    /// Exact evaluation on the induced `l`-assignment.
    pub exact: ExhaustiveOutcome,
    pub sampled: Option<MonteCarloOutcome>,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub oracle_distance: Option<Rational>,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub induced_oracle_distance: Option<Rational>,
}

/// Runs the list-agreement tester with `l = 1` (odd `k`) or `l = 2` (even
/// `k`), answering list queries with origin queries on `F`. Needs `k < d`.
pub fn direct_sum_test(f: &FaceFunction, mode: Mode, oracle: bool) -> Result<DirectSumReport> {
    let rep = RepresentationComplex::build(f.base.clone(), f.k)?;
    let induced = f.induced_assignment()?;
    let exact = list_agreement::exhaustive(&rep, &induced)?;
    let sampled = match mode {
        Mode::Exhaustive => None,
        Mode::Single { seed } => Some(list_agreement::monte_carlo(&rep, f, 1, seed)),
        Mode::MonteCarlo { trials, seed } => Some(list_agreement::monte_carlo(&rep, f, trials, seed)),
    };
    let skip_large = |r: Result<Rational>| match r {
        Ok(d) => Ok(Some(d)),
        Err(Error::SearchSpaceTooLarge(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let (oracle_distance, induced_oracle_distance) = if oracle {
        (
            skip_large(f.dist_to_direct_sums_oracle().map(|x| x.0))?,
            skip_large(induced.dist_to_agreeing_oracle().map(|w| w.distance))?,
        )
    } else {
        (None, None)
    };
    Ok(DirectSumReport {
        k: f.k,
        l: f.list_len(),
        exact,
        sampled,
        oracle_distance,
        induced_oracle_distance,
    })
}

/// All `k`-faces containing `v`, for choice-independence checks.
pub fn faces_containing(base: &SimplicialComplex, k: usize, v: Vertex) -> Vec<Vec<Vertex>> {
    base.faces(k as i64).iter().filter(|t| t.contains(&v)).cloned().collect_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::zero;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: u32, d: usize) -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build((0..n).combinations(d + 1)).unwrap())
    }

    #[test]
    fn zero_origin_gives_zero() {
        let x = complete(5, 3);
        assert!(eval_direct_sum(x.clone(), 2, 0).unwrap().values.iter().all(|b| !b));
        let z = FaceFunction::zero(x.clone(), 2).unwrap();
        assert_eq!(z.reconstruct_origin().unwrap(), vec![0, 0b11111]);
        let mut reads = 0;
        assert_eq!(z.query_origin_on_face(&[0, 1, 2], &mut reads).unwrap(), vec![0, 0b111]);
        assert_eq!(reads, 3);
    }

    #[test]
    fn complement_parity() {
        let x = complete(6, 3);
        let full = 0b111111;
        for f in [0b101100u64, 0b000111] {
            for k in 1..=3 {
                let a = eval_direct_sum(x.clone(), k, f).unwrap();
                let b = eval_direct_sum(x.clone(), k, !f & full).unwrap();
                if k % 2 == 0 {
                    assert_eq!(a, b);
                } else {
                    assert!(a.values.iter().zip(&b.values).all(|(p, q)| p != q));
                }
            }
        }
    }

    #[test]
    fn round_trip_and_exact_origin_sets() {
        let x = complete(7, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let f: u64 = rng.gen_range(0..128);
            for k in 1..=4 {
                let df = eval_direct_sum(x.clone(), k, f).unwrap();
                let rec = df.reconstruct_origin().unwrap();
                let mut origins = df.all_origins().unwrap();
                origins.sort_unstable();
                let mut expect = if k % 2 == 1 { vec![f] } else { vec![f, !f & 127] };
                expect.sort_unstable();
                assert_eq!(origins, expect);
                let mut got = rec.clone();
                got.sort_unstable();
                assert_eq!(got, expect);
            }
        }
    }

    #[test]
    fn choices_do_not_matter_for_genuine_sums() {
        let x = complete(6, 3);
        let f = 0b100110u64;
        let odd = eval_direct_sum(x.clone(), 3, f).unwrap();
        for v in 0..6u32 {
            for tau in faces_containing(&x, 3, v) {
                assert_eq!(odd.origin_value_in(v, &tau).unwrap(), f >> v & 1 == 1);
            }
        }
        let even = eval_direct_sum(x.clone(), 2, f).unwrap();
        for tau in x.faces(2) {
            for (&u, &w) in tau.iter().tuple_combinations() {
                let expect = (f >> u & 1) ^ (f >> w & 1) == 1;
                assert_eq!(even.relative_value_in(u, w, tau).unwrap(), expect);
            }
        }
    }

    #[test]
    fn face_queries_match_global_reconstruction() {
        let x = complete(6, 3);
        let f = 0b011010u64;
        let df = eval_direct_sum(x.clone(), 3, f).unwrap();
        for tau in x.faces(3) {
            let mut reads = 0;
            let q = df.query_origin_on_face(tau, &mut reads).unwrap();
            assert_eq!(reads, 4);
            let expect = tau.iter().enumerate().fold(0, |m, (i, &v)| m | (f >> v & 1) << i);
            assert_eq!(q, vec![expect]);
        }
    }

    #[test]
    fn genuine_sums_pass_and_others_can_fail() {
        let x = complete(6, 3);
        let g = eval_direct_sum(x.clone(), 2, 0b110100).unwrap();
        let rep = direct_sum_test(&g, Mode::MonteCarlo { trials: 300, seed: 1 }, true).unwrap();
        assert_eq!(rep.exact.rejection, zero());
        assert_eq!(rep.sampled.as_ref().unwrap().rejections, 0);
        assert!(rep.sampled.unwrap().max_reads <= 9);
        assert_eq!(rep.oracle_distance, Some(zero()));

        let mut bad = g.clone();
        bad.values[0] = !bad.values[0];
        let rep = direct_sum_test(&bad, Mode::Exhaustive, true).unwrap();
        assert!(rep.exact.rejection > zero());
        assert!(rep.oracle_distance.unwrap() <= rep.induced_oracle_distance.unwrap());
    }

    #[test]
    fn single_flip_distance_is_the_face_weight() {
        let x = complete(6, 3);
        let mut f = FaceFunction::zero(x.clone(), 2).unwrap();
        f.values[4] = true;
        let (d, _) = f.dist_to_direct_sums_oracle().unwrap();
        assert_eq!(d, x.weight_at(1, 4));
    }

    proptest! {
        #[test]
        fn oracle_is_complement_symmetric_for_even_k(bits in proptest::collection::vec(any::<bool>(), 15)) {
            let x = complete(6, 3);
            let f = FaceFunction::new(x, 2, bits).unwrap();
            let (d, origin) = f.dist_to_direct_sums_oracle().unwrap();
            let a = eval_direct_sum(f.base.clone(), 2, origin).unwrap();
            let b = eval_direct_sum(f.base.clone(), 2, !origin & 63).unwrap();
            prop_assert_eq!(f.distance(&a).unwrap(), d.clone());
            prop_assert_eq!(f.distance(&b).unwrap(), d);
        }
    }
}
