//! The list-agreement tester.
//!
//! Each edge `{σ1, σ2}` of `R̂_k` is covered by the matching `π` that pairs
//! list entries agreeing on `σ1 ∩ σ2`. The matchings form an `S_l` 1-cochain
//! on `R̂_k`. The tester flips a coin: heads runs the empty-triangle test on
//! that cochain, tails samples an edge and checks it is adequately covered.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assignment::{Assignment, LAssignment};
use crate::cochain::{nearest_coboundary, Cochain};
use crate::complex::{intersection, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::{Group, Perm};
use crate::rational::{int, ratio, zero, Rational};
use crate::representation::RepresentationComplex;
use crate::sampling::{self, Z95};

/// Result of covering one `R̂` edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverQuery {
    /// Entry `i` on the first face is matched with entry `perm(i)` on the
    /// second. Identity when no matching exists.
    pub perm: Perm,
    pub adequate: bool,
    /// More than one matching exists; `perm` is the lexicographically first.
    pub ambiguous: bool,
}

/// Values of a local function on `sub ⊆ face`, as a mask over `sub`.
pub fn project(face: &[Vertex], sub: &[Vertex], mask: u64) -> u64 {
    sub.iter().enumerate().fold(0, |acc, (j, v)| {
        let pos = face.binary_search(v).expect("sub-face vertex");
        acc | ((mask >> pos) & 1) << j
    })
}

/// Matches two lists of local functions on their common vertices.
pub fn match_lists(f1: &[Vertex], list1: &[u64], f2: &[Vertex], list2: &[u64]) -> CoverQuery {
    let core = intersection(f1, f2);
    let r1: Vec<u64> = list1.iter().map(|&m| project(f1, &core, m)).collect();
    let r2: Vec<u64> = list2.iter().map(|&m| project(f2, &core, m)).collect();
    let l = r1.len();
    let mut found: Option<Perm> = None;
    for p in Perm::all(l) {
        if (0..l).all(|i| r1[i] == r2[p.apply(i)]) {
            if found.is_some() {
                return CoverQuery { perm: found.unwrap(), adequate: true, ambiguous: true };
            }
            found = Some(p);
        }
    }
    match found {
        Some(perm) => CoverQuery { perm, adequate: true, ambiguous: false },
        None => CoverQuery { perm: Perm::identity(l), adequate: false, ambiguous: false },
    }
}

fn edge_indices(a: &LAssignment, s1: &[Vertex], s2: &[Vertex]) -> Result<(usize, usize)> {
    let not_edge = || Error::NotAnEdge(s1.iter().chain(s2).copied().collect());
    let i1 = a.face_index(s1).ok_or_else(not_edge)?;
    let i2 = a.face_index(s2).ok_or_else(not_edge)?;
    let union = crate::complex::union(s1, s2);
    if union.len() != a.k + 2 || !a.base.contains(&union) {
        return Err(not_edge());
    }
    Ok((i1, i2))
}

/// Covers the `R̂` edge `{σ1, σ2}`.
pub fn query_cover_edge(a: &LAssignment, s1: &[Vertex], s2: &[Vertex]) -> Result<CoverQuery> {
    let (i1, i2) = edge_indices(a, s1, s2)?;
    Ok(match_lists(s1, &a.lists[i1], s2, &a.lists[i2]))
}

pub fn is_adequately_covered(a: &LAssignment, s1: &[Vertex], s2: &[Vertex]) -> Result<bool> {
    Ok(query_cover_edge(a, s1, s2)?.adequate)
}

fn check_rep(rep: &RepresentationComplex, base: &SimplicialComplex, k: usize) -> Result<()> {
    if rep.k() != k || **rep.base() != *base {
        return Err(Error::BaseMismatch);
    }
    Ok(())
}

/// The induced `S_l` cochain on `R̂_k`, `φ(σ1, σ2) = π^{-1}` for `σ1 < σ2`,
/// with the per-edge query results in `R̂` edge order.
pub fn induced_cochain(rep: &RepresentationComplex, a: &LAssignment) -> Result<(Cochain<Perm>, Vec<CoverQuery>)> {
    check_rep(rep, &a.base, a.k)?;
    let xk = a.base.faces(a.k as i64);
    let queries: Vec<CoverQuery> = rep
        .complex()
        .faces(1)
        .iter()
        .map(|e| {
            let (u, v) = (e[0] as usize, e[1] as usize);
            match_lists(&xk[u], &a.lists[u], &xk[v], &a.lists[v])
        })
        .collect();
    let values = queries.iter().map(|q| q.perm.inverse()).collect();
    let phi = Cochain::new(rep.complex().clone(), 1, Perm::identity(a.l), values)?;
    Ok((phi, queries))
}

/// Exact evaluation of the tester.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveOutcome {
    #[serde(with = "crate::rational::serde_str")]
    pub rejection: Rational,
    /// Rejection probability of the empty-triangle branch.
    #[serde(with = "crate::rational::serde_str")]
    pub coboundary_rejection: Rational,
    /// `‖I‖`: weight of the inadequately covered edges, which is the
    /// rejection probability of the adequacy branch.
    #[serde(with = "crate::rational::serde_str")]
    pub inadequate_norm: Rational,
    pub ambiguous_edges: usize,
    pub inadequate_edges: usize,
}

pub fn exhaustive(rep: &RepresentationComplex, a: &LAssignment) -> Result<ExhaustiveOutcome> {
    let (phi, queries) = induced_cochain(rep, a)?;
    let coboundary_rejection = rep.empty_triangle_rejection(&phi)?;
    let r = rep.complex();
    let bad: u64 = queries
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.adequate)
        .map(|(e, _)| r.containing_count(1, e))
        .sum();
    let inadequate_norm = ratio(bad, r.weight_denominator(1));
    Ok(ExhaustiveOutcome {
        rejection: (&coboundary_rejection + &inadequate_norm) / int(2),
        coboundary_rejection,
        inadequate_norm,
        ambiguous_edges: queries.iter().filter(|q| q.ambiguous).count(),
        inadequate_edges: queries.iter().filter(|q| !q.adequate).count(),
    })
}

/// Read access to an `l`-assignment, possibly computed on demand.
pub trait ListSource: Sync {
    fn base(&self) -> &Arc<SimplicialComplex>;
    fn k(&self) -> usize;
    fn l(&self) -> usize;
    /// The list on `k`-face `idx`; adds the underlying reads to `reads`.
    fn read_list(&self, idx: usize, reads: &mut u64) -> Vec<u64>;
}

impl ListSource for LAssignment {
    fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }
    fn k(&self) -> usize {
        self.k
    }
    fn l(&self) -> usize {
        self.l
    }
    fn read_list(&self, idx: usize, reads: &mut u64) -> Vec<u64> {
        *reads += self.l as u64;
        self.lists[idx].clone()
    }
}

/// Which branch of the tester ran.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Triangle,
    Adequacy,
}

/// One invocation of the tester.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotOutcome {
    pub accepted: bool,
    pub branch: Branch,
    /// Distinct faces whose lists were requested.
    pub face_queries: u64,
    /// Underlying reads: list entries for stored assignments.
    pub reads: u64,
    pub ambiguous: bool,
}

struct Session<'a, S: ListSource + ?Sized> {
    src: &'a S,
    lists: HashMap<usize, Vec<u64>>,
    edges: HashMap<(Vertex, Vertex), CoverQuery>,
    face_queries: u64,
    reads: u64,
    ambiguous: bool,
}

impl<S: ListSource + ?Sized> Session<'_, S> {
    fn list(&mut self, idx: usize) -> Vec<u64> {
        if let Some(l) = self.lists.get(&idx) {
            return l.clone();
        }
        self.face_queries += 1;
        let l = self.src.read_list(idx, &mut self.reads);
        self.lists.insert(idx, l.clone());
        l
    }

    fn cover(&mut self, u: Vertex, v: Vertex) -> CoverQuery {
        if let Some(q) = self.edges.get(&(u, v)) {
            return *q;
        }
        let xk = self.src.base().faces(self.src.k() as i64);
        let (lu, lv) = (self.list(u as usize), self.list(v as usize));
        let q = match_lists(&xk[u as usize], &lu, &xk[v as usize], &lv);
        self.ambiguous |= q.ambiguous;
        self.edges.insert((u, v), q);
        q
    }
}

/// Runs the tester once, answering queries through `src`.
pub fn run_once<S: ListSource + ?Sized, R: Rng + ?Sized>(
    rep: &RepresentationComplex,
    src: &S,
    rng: &mut R,
) -> ShotOutcome {
    let mut s = Session {
        src,
        lists: HashMap::new(),
        edges: HashMap::new(),
        face_queries: 0,
        reads: 0,
        ambiguous: false,
    };
    let (accepted, branch) = if rng.gen_bool(0.5) {
        let ok = rep.empty_triangle_test_once(|u, v| s.cover(u, v).perm.inverse(), rng);
        (ok, Branch::Triangle)
    } else {
        let e = rep.sample_rep_face(1, rng);
        (s.cover(e[0], e[1]).adequate, Branch::Adequacy)
    };
    ShotOutcome {
        accepted,
        branch,
        face_queries: s.face_queries,
        reads: s.reads,
        ambiguous: s.ambiguous,
    }
}

/// Aggregate of independent seeded runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloOutcome {
    pub trials: u64,
    pub seed: u64,
    pub rejections: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub max_face_queries: u64,
    pub max_reads: u64,
    pub outcomes: Vec<ShotOutcome>,
}

pub fn monte_carlo<S: ListSource + ?Sized>(
    rep: &RepresentationComplex,
    src: &S,
    trials: u64,
    seed: u64,
) -> MonteCarloOutcome {
    let outcomes: Vec<ShotOutcome> = sampling::pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| run_once(rep, src, &mut sampling::trial_rng(seed, t)))
            .collect()
    });
    let rejections = outcomes.iter().filter(|o| !o.accepted).count() as u64;
    let (ci_low, ci_high) = sampling::wilson(rejections, trials, Z95);
    MonteCarloOutcome {
        trials,
        seed,
        rejections,
        estimate: if trials == 0 { 0.0 } else { rejections as f64 / trials as f64 },
        ci_low,
        ci_high,
        max_face_queries: outcomes.iter().map(|o| o.face_queries).max().unwrap_or(0),
        max_reads: outcomes.iter().map(|o| o.reads).max().unwrap_or(0),
        outcomes,
    }
}

/// How the tester is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Single { seed: u64 },
    MonteCarlo { trials: u64, seed: u64 },
}

/// Summary of one tester evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub mode: Mode,
    pub k: usize,
    pub l: usize,
    pub two_locally_differing: bool,
    pub exact: ExhaustiveOutcome,
    pub sampled: Option<MonteCarloOutcome>,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub oracle_distance: Option<Rational>,
}

/// Evaluates the tester on `a`. The exact quantities are always included;
/// sampled modes add seeded runs. `oracle` requests the exact distance to
/// agreeing `l`-assignments, skipped when the instance is too large.
pub fn test_list_agreement(
    rep: &RepresentationComplex,
    a: &LAssignment,
    mode: Mode,
    oracle: bool,
) -> Result<AgreementReport> {
    let exact = exhaustive(rep, a)?;
    let sampled = match mode {
        Mode::Exhaustive => None,
        Mode::Single { seed } => Some(monte_carlo(rep, a, 1, seed)),
        Mode::MonteCarlo { trials, seed } => Some(monte_carlo(rep, a, trials, seed)),
    };
    let oracle_distance = if oracle {
        match a.dist_to_agreeing_oracle() {
            Ok(w) => Some(w.distance),
            Err(Error::SearchSpaceTooLarge(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(AgreementReport {
        mode,
        k: a.k,
        l: a.l,
        two_locally_differing: a.is_two_locally_differing(),
        exact,
        sampled,
        oracle_distance,
    })
}

/// Quantities from the soundness argument for one input: the nearest
/// coboundary to the induced cochain, the single assignments it selects,
/// and their disagreement sets.
#[derive(Clone, Debug)]
pub struct SoundnessProfile {
    /// `g` with `d_0 g` nearest to the induced cochain.
    pub witness: Cochain<Perm>,
    /// `‖A‖`: weight of edges where the induced cochain differs from `d_0 g`.
    pub adjustment_norm: Rational,
    pub inadequate_norm: Rational,
    /// `F_j(σ) = ℱ^σ_{g(σ)(j)}`.
    pub slices: Vec<Assignment>,
    pub slice_distances: Vec<Rational>,
    /// `‖D_j‖`: weight of `R̂` edges whose endpoints disagree in `F_j` on the core.
    pub disagreement_norms: Vec<Rational>,
    /// `k · min_j ‖D_j‖ / dist(F_j, 𝒜)` over slices at positive distance.
    pub alpha: Option<Rational>,
}

pub fn soundness_profile(rep: &RepresentationComplex, a: &LAssignment) -> Result<SoundnessProfile> {
    let (phi, queries) = induced_cochain(rep, a)?;
    let (witness, _) = nearest_coboundary(&phi, &Perm::all(a.l))?;
    let r = rep.complex();
    let den = r.weight_denominator(1);
    let edges = r.faces(1);
    let mut adjusted = 0u64;
    let mut inadequate = 0u64;
    for (e, uv) in edges.iter().enumerate() {
        let g = witness.value_at(uv[0] as usize).compose(&witness.value_at(uv[1] as usize).inverse());
        if g != phi.value_at(e) {
            adjusted += r.containing_count(1, e);
        }
        if !queries[e].adequate {
            inadequate += r.containing_count(1, e);
        }
    }
    let xk = a.base.faces(a.k as i64);
    let mut slices = Vec::new();
    let mut slice_distances = Vec::new();
    let mut disagreement_norms = Vec::new();
    let mut alpha: Option<Rational> = None;
    for j in 0..a.l {
        let values: Vec<u64> = (0..xk.len()).map(|s| a.lists[s][witness.value_at(s).apply(j)]).collect();
        let slice = Assignment::new(a.base.clone(), a.k, values)?;
        let (dist, _) = slice.dist_to_agreeing()?;
        let bad: u64 = edges
            .iter()
            .enumerate()
            .filter(|(_, uv)| {
                let (u, v) = (uv[0] as usize, uv[1] as usize);
                let core = intersection(&xk[u], &xk[v]);
                project(&xk[u], &core, slice.values[u]) != project(&xk[v], &core, slice.values[v])
            })
            .map(|(e, _)| r.containing_count(1, e))
            .sum();
        let d_norm = ratio(bad, den);
        if dist > zero() {
            let ratio_j = int(a.k as i64) * &d_norm / &dist;
            alpha = Some(match alpha {
                Some(prev) if prev <= ratio_j => prev,
                _ => ratio_j,
            });
        }
        slices.push(slice);
        slice_distances.push(dist);
        disagreement_norms.push(d_norm);
    }
    Ok(SoundnessProfile {
        witness,
        adjustment_norm: ratio(adjusted, den),
        inadequate_norm: ratio(inadequate, den),
        slices,
        slice_distances,
        disagreement_norms,
        alpha,
    })
}

/// Lower bound `(c/(2c+2))·(α/k)·dist` on the rejection probability, where
/// `c` is the constant with `c·‖A‖ ≤` triangle-branch rejection.
pub fn soundness_lower_bound(c: &Rational, alpha: &Rational, k: usize, dist: &Rational) -> Rational {
    c / (c * int(2) + int(2)) * alpha / int(k as i64) * dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::random_agreeing;
    use itertools::Itertools;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn complete(n: u32, d: usize) -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build((0..n).combinations(d + 1)).unwrap())
    }

    #[test]
    fn agreeing_inputs_are_accepted_with_certainty() {
        let x = complete(5, 2);
        let rep = RepresentationComplex::build(x.clone(), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = random_agreeing(x.clone(), 1, 2, true, &mut rng).unwrap();
            let out = exhaustive(&rep, &a).unwrap();
            assert_eq!(out.rejection, zero());
            assert_eq!(out.ambiguous_edges, 0);
            let mc = monte_carlo(&rep, &a, 200, 9);
            assert_eq!(mc.rejections, 0);
            assert!(mc.max_reads <= 3 * a.l as u64);
        }
    }

    #[test]
    fn agreeing_query_returns_relative_permutation() {
        let x = complete(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let globals = [0b10110u64, 0b01001];
        let perms: Vec<Perm> = (0..10).map(|_| Perm::random(2, &mut rng)).collect();
        let a = LAssignment::from_globals(x.clone(), 1, &globals, &perms).unwrap();
        let xk = x.faces(1);
        for (i, j) in (0..10).tuple_combinations() {
            let (s1, s2) = (&xk[i], &xk[j]);
            let Ok(q) = query_cover_edge(&a, s1, s2) else { continue };
            assert!(q.adequate && !q.ambiguous);
            assert_eq!(q.perm, perms[j].compose(&perms[i].inverse()));
        }
    }

    #[test]
    fn identical_lists_give_identity() {
        let x = complete(4, 2);
        let a = LAssignment::new(x.clone(), 1, 2, vec![vec![0b00, 0b11]; 6]).unwrap();
        let q = query_cover_edge(&a, &[0, 1], &[1, 2]).unwrap();
        assert_eq!(q.perm, Perm::identity(2));
        assert!(q.adequate);
        assert!(matches!(query_cover_edge(&a, &[0, 1], &[2, 3]), Err(Error::NotAnEdge(_))));
    }

    #[test]
    fn unmatched_lists_are_inadequate() {
        let x = complete(3, 2);
        let mut lists = vec![vec![0b00, 0b11]; 3];
        lists[0] = vec![0b00, 0b00];
        let a = LAssignment::new(x, 1, 2, lists).unwrap();
        let q = query_cover_edge(&a, &[0, 1], &[0, 2]).unwrap();
        assert!(!q.adequate);
        assert_eq!(q.perm, Perm::identity(2));
    }

    #[test]
    fn odd_cycle_lists_are_adequate_but_not_agreeing() {
        let x = Arc::new(SimplicialComplex::build([[0, 1, 2]]).unwrap());
        let a = LAssignment::new(x.clone(), 1, 2, vec![vec![0b01, 0b10]; 3]).unwrap();
        let rep = RepresentationComplex::build(x, 1).unwrap();
        let (_, queries) = induced_cochain(&rep, &a).unwrap();
        assert!(queries.iter().all(|q| q.adequate));
        assert!(!a.is_agreeing().unwrap());
        let out = exhaustive(&rep, &a).unwrap();
        assert_eq!(out.inadequate_norm, zero());
        assert!(out.rejection > zero());
    }

    #[test]
    fn single_entry_lists_reduce_to_restriction_equality() {
        let x = complete(4, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let lists: Vec<Vec<u64>> = (0..6).map(|_| vec![rng.gen_range(0..4)]).collect();
        let a = LAssignment::new(x.clone(), 1, 1, lists).unwrap();
        for (s1, s2) in x.faces(1).iter().tuple_combinations() {
            let Ok(ok) = is_adequately_covered(&a, s1, s2) else { continue };
            let core = intersection(s1, s2);
            let i1 = x.face_index(s1).unwrap();
            let i2 = x.face_index(s2).unwrap();
            assert_eq!(ok, project(s1, &core, a.lists[i1][0]) == project(s2, &core, a.lists[i2][0]));
        }
    }

    #[test]
    fn sampled_rejection_tracks_exact_value() {
        let x = complete(5, 2);
        let rep = RepresentationComplex::build(x.clone(), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut a = random_agreeing(x, 1, 2, true, &mut rng).unwrap();
        a.lists[0][0] ^= 1;
        a.lists[3][1] ^= 2;
        let exact = crate::rational::to_f64(&exhaustive(&rep, &a).unwrap().rejection);
        let mc = monte_carlo(&rep, &a, 20_000, 11);
        let sigma = (exact * (1.0 - exact) / 20_000.0).sqrt();
        assert!((mc.estimate - exact).abs() <= 4.0 * sigma, "{} vs {exact}", mc.estimate);
        assert!(mc.max_reads <= 6);
        let again = monte_carlo(&rep, &a, 20_000, 11);
        assert_eq!(mc, again);
    }

    #[test]
    fn profile_of_agreeing_input_is_clean() {
        let x = complete(5, 2);
        let rep = RepresentationComplex::build(x.clone(), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let a = random_agreeing(x, 1, 2, true, &mut rng).unwrap();
        let p = soundness_profile(&rep, &a).unwrap();
        assert_eq!(p.adjustment_norm, zero());
        assert!(p.slice_distances.iter().all(|d| *d == zero()));
        assert!(p.alpha.is_none());
    }
}
