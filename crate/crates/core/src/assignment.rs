//! Assignments and `l`-assignments on `k`-faces, their distances, and exact
//! distance-to-agreement oracles.
//!
//! A local function on a face is a bitmask: bit `i` is the value at the
//! face's `i`-th vertex (in sorted order). Global functions are bitmasks
//! over vertex indices of `X(0)`.

use std::sync::Arc;

use rand::Rng;

use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::Perm;
use crate::rational::{ratio, Rational};

/// Vertex limit for the exhaustive agreement-distance oracle.
pub const ORACLE_MAX_VERTICES: usize = 10;
/// List-length limit for the exhaustive agreement-distance oracle.
pub const ORACLE_MAX_L: usize = 3;

/// One local function per `k`-face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub base: Arc<SimplicialComplex>,
    pub k: usize,
    pub values: Vec<u64>,
}

/// An ordered list of `l` local functions per `k`-face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LAssignment {
    pub base: Arc<SimplicialComplex>,
    pub k: usize,
    pub l: usize,
    /// `lists[face index][slot]`.
    pub lists: Vec<Vec<u64>>,
}

fn check_shape(base: &SimplicialComplex, k: usize) -> Result<()> {
    if k > base.dim() || k >= 64 {
        return Err(Error::DimensionOutOfRange(k as i64));
    }
    if base.face_count(0) > 64 {
        return Err(Error::InvalidInput("at most 64 vertices are supported".into()));
    }
    Ok(())
}

/// Restriction of a global function (mask over vertex indices) to a face.
pub fn restrict(base: &SimplicialComplex, global: u64, face: &[Vertex]) -> u64 {
    face.iter().enumerate().fold(0, |acc, (i, &v)| {
        let vi = base.vertex_index(v).expect("vertex");
        acc | ((global >> vi) & 1) << i
    })
}

impl Assignment {
    pub fn new(base: Arc<SimplicialComplex>, k: usize, values: Vec<u64>) -> Result<Self> {
        check_shape(&base, k)?;
        if values.len() != base.face_count(k as i64) {
            return Err(Error::InvalidInput("one value per k-face is required".into()));
        }
        Ok(Self { base, k, values })
    }

    /// Restrictions of a global function.
    pub fn from_global(base: Arc<SimplicialComplex>, k: usize, global: u64) -> Result<Self> {
        check_shape(&base, k)?;
        let values = base.faces(k as i64).iter().map(|f| restrict(&base, global, f)).collect();
        Ok(Self { base, k, values })
    }

    /// Norm of the faces where the two assignments differ.
    pub fn distance(&self, other: &Assignment) -> Result<Rational> {
        if self.k != other.k || *self.base != *other.base {
            return Err(Error::BaseMismatch);
        }
        let k = self.k as i64;
        let c: u64 = (0..self.values.len())
            .filter(|&i| self.values[i] != other.values[i])
            .map(|i| self.base.containing_count(k, i))
            .sum();
        Ok(ratio(c, self.base.weight_denominator(k)))
    }

    /// Exact distance to agreeing assignments with a nearest global function.
    pub fn dist_to_agreeing(&self) -> Result<(Rational, u64)> {
        let single = LAssignment {
            base: self.base.clone(),
            k: self.k,
            l: 1,
            lists: self.values.iter().map(|&v| vec![v]).collect(),
        };
        let w = single.search(u64::MAX, false)?;
        Ok((ratio(w.cost, self.base.weight_denominator(self.k as i64)), w.globals[0]))
    }
}

impl LAssignment {
    pub fn new(base: Arc<SimplicialComplex>, k: usize, l: usize, lists: Vec<Vec<u64>>) -> Result<Self> {
        check_shape(&base, k)?;
        if l == 0 || l > crate::group::MAX_L {
            return Err(Error::InvalidParams(format!("list length {l}")));
        }
        if lists.len() != base.face_count(k as i64) || lists.iter().any(|x| x.len() != l) {
            return Err(Error::InvalidInput("every k-face needs exactly l local functions".into()));
        }
        let limit = 1u64 << (k + 1);
        if lists.iter().flatten().any(|&m| m >= limit) {
            return Err(Error::InvalidInput("local function has bits beyond the face".into()));
        }
        Ok(Self { base, k, l, lists })
    }

    /// `ℱ^σ_{π_σ(i)} = F_i|σ`: slot `π_σ(i)` holds global `i`.
    pub fn from_globals(base: Arc<SimplicialComplex>, k: usize, globals: &[u64], perms: &[Perm]) -> Result<Self> {
        check_shape(&base, k)?;
        let faces = base.faces(k as i64);
        if perms.len() != faces.len() || perms.iter().any(|p| p.len() != globals.len()) {
            return Err(Error::InvalidInput("one permutation of [l] per face is required".into()));
        }
        let lists = faces
            .iter()
            .zip(perms)
            .map(|(f, p)| {
                let mut list = vec![0; globals.len()];
                for (i, &g) in globals.iter().enumerate() {
                    list[p.apply(i)] = restrict(&base, g, f);
                }
                list
            })
            .collect();
        Self::new(base, k, globals.len(), lists)
    }

    pub fn faces(&self) -> &[Vec<Vertex>] {
        self.base.faces(self.k as i64)
    }

    pub fn face_index(&self, face: &[Vertex]) -> Option<usize> {
        if face.len() != self.k + 1 {
            return None;
        }
        self.base.face_index(face)
    }

    /// Every two entries on a face differ on at least two vertices.
    pub fn is_two_locally_differing(&self) -> bool {
        self.lists.iter().all(|list| {
            (0..self.l).all(|i| (i + 1..self.l).all(|j| (list[i] ^ list[j]).count_ones() >= 2))
        })
    }

    /// Positional distance `Σ_σ w(σ)·|{i : ℱ_i ≠ 𝒢_i}|/l`.
    pub fn distance(&self, other: &LAssignment) -> Result<Rational> {
        if self.k != other.k || self.l != other.l || *self.base != *other.base {
            return Err(Error::BaseMismatch);
        }
        let k = self.k as i64;
        let c: u64 = self
            .lists
            .iter()
            .zip(&other.lists)
            .enumerate()
            .map(|(i, (a, b))| {
                let diff = a.iter().zip(b).filter(|(x, y)| x != y).count() as u64;
                diff * self.base.containing_count(k, i)
            })
            .sum();
        Ok(ratio(c, self.base.weight_denominator(k) * self.l as u64))
    }

    /// The assignment `{ℱ^σ_{π_σ(i)}}_σ`.
    pub fn slice(&self, perms: &[Perm], i: usize) -> Assignment {
        Assignment {
            base: self.base.clone(),
            k: self.k,
            values: self.lists.iter().zip(perms).map(|(list, p)| list[p.apply(i)]).collect(),
        }
    }

    /// Exact `dist(ℱ, 𝒜)` with a witness, for small instances.
    pub fn dist_to_agreeing_oracle(&self) -> Result<AgreementWitness> {
        let n = self.base.face_count(0);
        if n > ORACLE_MAX_VERTICES || self.l > ORACLE_MAX_L {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{n} vertices with lists of length {}",
                self.l
            )));
        }
        self.search(u64::MAX, false)
    }

    /// Whether `ℱ` is agreeing, with a witness when it is.
    pub fn agreeing_witness(&self) -> Result<Option<AgreementWitness>> {
        let w = self.search(1, true)?;
        Ok((w.cost == 0).then_some(w))
    }

    pub fn is_agreeing(&self) -> Result<bool> {
        Ok(self.agreeing_witness()?.is_some())
    }

    /// Branch and bound over `l`-tuples of global functions, assigning
    /// vertices in index order. Faces are charged when their last vertex is
    /// assigned; globals are kept in lexicographic order to skip relabelings.
    fn search(&self, bound: u64, stop_at_zero: bool) -> Result<AgreementWitness> {
        let x = &self.base;
        let n = x.face_count(0);
        let k = self.k as i64;
        let faces = x.faces(k);
        let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (fi, f) in faces.iter().enumerate() {
            let last = x.vertex_index(*f.last().expect("nonempty face")).expect("vertex");
            by_last[last].push(fi);
        }
        let perms = Perm::all(self.l);
        let mut s = Search {
            a: self,
            by_last: &by_last,
            perms: &perms,
            globals: vec![0; self.l],
            best: None,
            best_cost: bound,
            stop_at_zero,
            done: false,
        };
        s.run(0, 0, (1u32 << self.l.saturating_sub(1)) - 1);
        let (globals, cost) = match s.best {
            Some(b) => (b, s.best_cost),
            None => (vec![0; self.l], u64::MAX),
        };
        let mut face_perms = Vec::with_capacity(faces.len());
        if cost != u64::MAX {
            for (fi, f) in faces.iter().enumerate() {
                let restricted: Vec<u64> = globals.iter().map(|&g| restrict(x, g, f)).collect();
                let (_, p) = best_perm(&self.lists[fi], &restricted, &perms);
                face_perms.push(p);
            }
        }
        let den = x.weight_denominator(k) * self.l as u64;
        Ok(AgreementWitness {
            distance: if cost == u64::MAX { ratio(1, 1) } else { ratio(cost, den) },
            cost,
            globals,
            perms: face_perms,
        })
    }
}

/// Minimum number of mismatched slots over all `π`, where slot `π(i)` is
/// compared with `restricted[i]`.
fn best_perm(list: &[u64], restricted: &[u64], perms: &[Perm]) -> (u64, Perm) {
    let mut best = (u64::MAX, perms[0]);
    for p in perms {
        let mm = restricted
            .iter()
            .enumerate()
            .filter(|(i, g)| list[p.apply(*i)] != **g)
            .count() as u64;
        if mm < best.0 {
            best = (mm, *p);
        }
    }
    best
}

struct Search<'a> {
    a: &'a LAssignment,
    by_last: &'a [Vec<usize>],
    perms: &'a [Perm],
    globals: Vec<u64>,
    best: Option<Vec<u64>>,
    best_cost: u64,
    stop_at_zero: bool,
    done: bool,
}

impl Search<'_> {
    fn run(&mut self, v: usize, cost: u64, tied: u32) {
        if self.done || cost >= self.best_cost {
            return;
        }
        let x = &self.a.base;
        if v == x.face_count(0) {
            self.best_cost = cost;
            self.best = Some(self.globals.clone());
            if self.stop_at_zero && cost == 0 {
                self.done = true;
            }
            return;
        }
        let l = self.a.l;
        let k = self.a.k as i64;
        'tuples: for bits in 0u32..(1 << l) {
            let mut next_tied = tied;
            for i in 0..l.saturating_sub(1) {
                if tied >> i & 1 == 1 {
                    let (bi, bj) = (bits >> i & 1, bits >> (i + 1) & 1);
                    if bi > bj {
                        continue 'tuples;
                    }
                    if bi < bj {
                        next_tied &= !(1 << i);
                    }
                }
            }
            for (i, g) in self.globals.iter_mut().enumerate() {
                *g = (*g & !(1 << v)) | (((bits >> i) & 1) as u64) << v;
            }
            let mut c = cost;
            for &fi in &self.by_last[v] {
                let f = &x.faces(k)[fi];
                let restricted: Vec<u64> = self.globals.iter().map(|&g| restrict(x, g, f)).collect();
                let (mm, _) = best_perm(&self.a.lists[fi], &restricted, self.perms);
                c += mm * x.containing_count(k, fi);
                if c >= self.best_cost {
                    break;
                }
            }
            self.run(v + 1, c, next_tied);
        }
    }
}

/// Nearest agreeing `l`-assignment found by the oracle.
#[derive(Clone, Debug)]
pub struct AgreementWitness {
    pub distance: Rational,
    /// Integer numerator over `weight_denominator(k)·l`.
    pub cost: u64,
    /// Global functions as masks over vertex indices.
    pub globals: Vec<u64>,
    /// Per-face permutation: slot `π(i)` holds global `i`.
    pub perms: Vec<Perm>,
}

/// Right-hand side of the distance decomposition: the mean over `i` of
/// `dist(slice_i, 𝒜)` for a fixed permutation family.
pub fn slice_distance_bound(a: &LAssignment, perms: &[Perm]) -> Result<Rational> {
    let mut total = ratio(0, 1);
    for i in 0..a.l {
        let (d, _) = a.slice(perms, i).dist_to_agreeing()?;
        total += d;
    }
    Ok(total / ratio(a.l as i64, 1))
}

/// Random agreeing `l`-assignment with uniformly random slot orders. With
/// `differing`, globals are resampled until every two of them differ on at
/// least two vertices of every `k`-face.
pub fn random_agreeing<R: Rng + ?Sized>(
    base: Arc<SimplicialComplex>,
    k: usize,
    l: usize,
    differing: bool,
    rng: &mut R,
) -> Result<LAssignment> {
    check_shape(&base, k)?;
    let n = base.face_count(0);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let faces = base.faces(k as i64).to_vec();
    let mut globals = vec![rng.gen::<u64>() & full];
    let ok = |a: u64, b: u64| faces.iter().all(|f| restrict(&base, a ^ b, f).count_ones() >= 2);
    for _ in 1..l {
        let mut found = None;
        for _ in 0..100_000 {
            // Bias towards dense differences so the constraint is met quickly.
            let diff = (0..n).fold(0u64, |acc, v| acc | (rng.gen_bool(0.85) as u64) << v);
            let cand = globals[0] ^ diff;
            if !differing || globals.iter().all(|&g| ok(g, cand)) {
                found = Some(cand);
                break;
            }
        }
        globals.push(found.ok_or_else(|| {
            Error::PreconditionUnsatisfiable("no 2-locally-differing globals found".into())
        })?);
    }
    let perms: Vec<Perm> = faces.iter().map(|_| Perm::random(l, rng)).collect();
    LAssignment::from_globals(base, k, &globals, &perms)
}


#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn complete(n: u32, d: usize) -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build((0..n).combinations(d + 1)).unwrap())
    }

    /// Independent oracle: enumerate all global tuples and all permutations.
    fn brute_distance(a: &LAssignment) -> Rational {
        let x = &a.base;
        let n = x.face_count(0);
        let perms = Perm::all(a.l);
        let k = a.k as i64;
        let mut best = u64::MAX;
        let total = 1u64 << (n * a.l);
        for code in 0..total {
            let globals: Vec<u64> = (0..a.l).map(|i| (code >> (i * n)) & ((1 << n) - 1)).collect();
            let c: u64 = x
                .faces(k)
                .iter()
                .enumerate()
                .map(|(fi, f)| {
                    let r: Vec<u64> = globals.iter().map(|&g| restrict(x, g, f)).collect();
                    perms
                        .iter()
                        .map(|p| (0..a.l).filter(|&i| a.lists[fi][p.apply(i)] != r[i]).count() as u64)
                        .min()
                        .unwrap()
                        * x.containing_count(k, fi)
                })
                .sum();
            best = best.min(c);
        }
        ratio(best, x.weight_denominator(k) * a.l as u64)
    }

    #[test]
    fn positional_distance() {
        let x = Arc::new(SimplicialComplex::build([[1, 2, 3]]).unwrap());
        let a = LAssignment::new(x.clone(), 1, 2, vec![vec![0, 3]; 3]).unwrap();
        let mut b = a.clone();
        assert_eq!(a.distance(&a).unwrap(), ratio(0, 1));
        b.lists[1][0] = 1;
        assert_eq!(a.distance(&b).unwrap(), ratio(1, 6));
    }

    #[test]
    fn agreeing_inputs_have_zero_distance() {
        let x = complete(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let a = random_agreeing(x.clone(), 1, 2, true, &mut rng).unwrap();
            assert!(a.is_two_locally_differing());
            let w = a.dist_to_agreeing_oracle().unwrap();
            assert_eq!(w.distance, ratio(0, 1));
            let rebuilt = LAssignment::from_globals(x.clone(), 1, &w.globals, &w.perms).unwrap();
            assert_eq!(rebuilt, a);
            assert!(a.is_agreeing().unwrap());
        }
    }

    #[test]
    fn oracle_matches_brute_force() {
        let x = complete(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..6 {
            let l = 1 + trial % 2;
            let lists = (0..x.face_count(1)).map(|_| (0..l).map(|_| rng.gen_range(0..4)).collect()).collect();
            let a = LAssignment::new(x.clone(), 1, l, lists).unwrap();
            let w = a.dist_to_agreeing_oracle().unwrap();
            assert_eq!(w.distance, brute_distance(&a));
            let rebuilt = LAssignment::from_globals(x.clone(), 1, &w.globals, &w.perms).unwrap();
            assert_eq!(a.distance(&rebuilt).unwrap(), w.distance);
        }
    }

    #[test]
    fn odd_cycle_with_alternating_lists_is_not_agreeing() {
        let x = Arc::new(SimplicialComplex::build([[0, 1], [1, 2], [0, 2]]).unwrap());
        // Every edge holds (u=1, v=0) and (u=0, v=1).
        let a = LAssignment::new(x, 1, 2, vec![vec![0b01, 0b10]; 3]).unwrap();
        assert!(a.is_two_locally_differing());
        assert!(!a.is_agreeing().unwrap());
        assert!(a.dist_to_agreeing_oracle().unwrap().distance > ratio(0, 1));
    }

    #[test]
    fn oracle_guard() {
        let x = complete(11, 1);
        let a = LAssignment::new(x.clone(), 1, 1, vec![vec![0]; x.face_count(1)]).unwrap();
        assert!(matches!(a.dist_to_agreeing_oracle(), Err(Error::SearchSpaceTooLarge(_))));
        assert!(a.is_agreeing().unwrap());
    }

    #[test]
    fn decomposition_bound_holds() {
        let x = complete(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let mut a = random_agreeing(x.clone(), 1, 2, true, &mut rng).unwrap();
            for _ in 0..3 {
                let f = rng.gen_range(0..a.lists.len());
                let s = rng.gen_range(0..2);
                a.lists[f][s] = rng.gen_range(0..4);
            }
            let perms: Vec<Perm> = (0..a.lists.len()).map(|_| Perm::random(2, &mut rng)).collect();
            let lhs = a.dist_to_agreeing_oracle().unwrap().distance;
            assert!(lhs <= slice_distance_bound(&a, &perms).unwrap());
        }
    }

    #[test]
    fn triangle_inequality_on_random_triples() {
        let x = complete(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let mk = |rng: &mut ChaCha8Rng| {
                LAssignment::new(x.clone(), 1, 2, (0..10).map(|_| vec![rng.gen_range(0..4), rng.gen_range(0..4)]).collect()).unwrap()
            };
            let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
            assert!(a.distance(&c).unwrap() <= a.distance(&b).unwrap() + b.distance(&c).unwrap());
        }
    }
}
