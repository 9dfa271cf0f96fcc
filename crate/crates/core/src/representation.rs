//! The representation complex `R̂_k(X)`.
//!
//! Vertices are the `k`-faces of `X`, labelled by their index in `X(k)`.
//! Maximal faces are the sunflowers `r^c_σ = { c ∪ {x} : x ∈ σ \ c }` for
//! `σ ∈ X(d)` and `c` a `k`-subset of `σ`; the core of a face of dimension
//! at least one is the common pairwise intersection of its vertices.
//!
//! For `k ≥ 1` the level below, `R̂_{k−1}(X)`, is kept alongside: its
//! 2-faces index the empty triangles of `R̂_k` and supply their weights.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cochain::{nearest_coboundary, Cochain};
use crate::complex::{difference, intersection, is_subset, union, Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::rational::{binomial, int, ratio, zero, Rational};

#[derive(Clone, Debug)]
pub struct RepresentationComplex {
    base: Arc<SimplicialComplex>,
    k: usize,
    complex: Arc<SimplicialComplex>,
    lower: Option<Arc<SimplicialComplex>>,
    /// Core of each edge, as an index into `X(k−1)` (always 0 when `k = 0`).
    edge_cores: Vec<usize>,
    empty: Vec<EmptyTriangle>,
}

/// Three pairwise adjacent `R̂_k` vertices whose pairwise intersections form
/// a 2-face of `R̂_{k−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EmptyTriangle {
    /// Sorted `R̂_k` vertex labels.
    pub vertices: [Vertex; 3],
    /// The matching sorted `R̂_{k−1}` 2-face.
    pub lower: [Vertex; 3],
    /// Index of `lower` among the 2-faces of `R̂_{k−1}`.
    pub lower_index: usize,
}

fn rep_maximal_faces(base: &SimplicialComplex, k: usize) -> Vec<Face> {
    let mut out = Vec::new();
    for sigma in base.maximal_faces() {
        for c in sigma.iter().copied().combinations(k) {
            out.push(sunflower(base, k, &c, sigma));
        }
    }
    out
}

fn sunflower(base: &SimplicialComplex, k: usize, core: &[Vertex], sigma: &[Vertex]) -> Face {
    let mut r: Face = difference(sigma, core)
        .into_iter()
        .map(|x| {
            let petal = union(core, &[x]);
            base.face_index(&petal).expect("petal is a k-face") as Vertex
        })
        .collect();
    debug_assert!(r.iter().all(|&p| base.faces(k as i64)[p as usize].len() == k + 1));
    r.sort_unstable();
    r
}

fn rep_complex(base: &SimplicialComplex, k: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::build(rep_maximal_faces(base, k))
}

impl RepresentationComplex {
    /// Builds `R̂_k(X)` for `0 ≤ k < d`.
    pub fn build(base: Arc<SimplicialComplex>, k: usize) -> Result<Self> {
        if k >= base.dim() {
            return Err(Error::DimensionOutOfRange(k as i64));
        }
        let complex = Arc::new(rep_complex(&base, k)?);
        let lower = if k >= 1 {
            Some(Arc::new(rep_complex(&base, k - 1)?))
        } else {
            None
        };
        let xk = base.faces(k as i64);
        let edge_cores = complex
            .faces(1)
            .iter()
            .map(|e| {
                let c = intersection(&xk[e[0] as usize], &xk[e[1] as usize]);
                base.face_index(&c).expect("core is a face")
            })
            .collect();
        let mut empty = Vec::new();
        if let Some(low) = &lower {
            let xl = base.faces(k as i64 - 1);
            for (li, t) in low.faces(2).iter().enumerate() {
                let up = |a: Vertex, b: Vertex| {
                    let u = union(&xl[a as usize], &xl[b as usize]);
                    base.face_index(&u).expect("union is a k-face") as Vertex
                };
                let mut vs = [up(t[0], t[1]), up(t[1], t[2]), up(t[0], t[2])];
                vs.sort_unstable();
                empty.push(EmptyTriangle {
                    vertices: vs,
                    lower: [t[0], t[1], t[2]],
                    lower_index: li,
                });
            }
        }
        Ok(Self {
            base,
            k,
            complex,
            lower,
            edge_cores,
            empty,
        })
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `R̂_k` as a plain complex on vertex labels `0..|X(k)|`.
    pub fn complex(&self) -> &Arc<SimplicialComplex> {
        &self.complex
    }

    /// `R̂_{k−1}` for `k ≥ 1`.
    pub fn lower(&self) -> Option<&Arc<SimplicialComplex>> {
        self.lower.as_ref()
    }

    /// The `k`-face of `X` behind an `R̂` vertex.
    pub fn x_face(&self, v: Vertex) -> &Face {
        &self.base.faces(self.k as i64)[v as usize]
    }

    pub fn vertex_of(&self, face: &[Vertex]) -> Option<Vertex> {
        if face.len() != self.k + 1 {
            return None;
        }
        self.base.face_index(face).map(|i| i as Vertex)
    }

    /// Core of the edge with the given index, as an index into `X(k−1)`.
    pub fn edge_core(&self, edge_idx: usize) -> usize {
        self.edge_cores[edge_idx]
    }

    /// The core of an `R̂` face of dimension at least one.
    pub fn core_of(&self, tau: &[Vertex]) -> Result<Face> {
        if tau.len() < 2 {
            return Err(Error::InvalidInput("cores are defined from dimension one".into()));
        }
        if !self.complex.contains(tau) {
            return Err(Error::FaceNotInComplex(tau.to_vec()));
        }
        Ok(tau
            .iter()
            .skip(1)
            .fold(self.x_face(tau[0]).clone(), |acc, &v| intersection(&acc, self.x_face(v))))
    }

    /// The representation map: union of the underlying `X` faces.
    pub fn represented(&self, tau: &[Vertex]) -> Face {
        tau.iter().fold(Vec::new(), |acc, &v| union(&acc, self.x_face(v)))
    }

    /// `r^c_σ` for a `k`-subset `c` of `σ`.
    pub fn rep_for_core(&self, core: &[Vertex], sigma: &[Vertex]) -> Result<Face> {
        if !self.base.contains(sigma) {
            return Err(Error::FaceNotInComplex(sigma.to_vec()));
        }
        if core.len() != self.k || !is_subset(core, sigma) || sigma.len() <= self.k {
            return Err(Error::CoreNotInFace(core.to_vec(), sigma.to_vec()));
        }
        Ok(sunflower(&self.base, self.k, core, sigma))
    }

    /// `R^{-1}(σ)`: the distinct representations of `σ`.
    pub fn preimages(&self, sigma: &[Vertex]) -> Result<Vec<Face>> {
        if sigma.len() <= self.k {
            return Err(Error::DimensionOutOfRange(sigma.len() as i64 - 1));
        }
        let mut out: Vec<Face> = sigma
            .iter()
            .copied()
            .combinations(self.k)
            .map(|c| self.rep_for_core(&c, sigma))
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Samples an `i`-face of `R̂`: an `X`-face of dimension `k+i` by weight,
    /// then a uniform core.
    pub fn sample_rep_face<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> Face {
        let sigma = self.base.sample_face(self.k + i, rng);
        if i == 0 {
            return vec![self.base.face_index(&sigma).expect("face") as Vertex];
        }
        let mut pick: Vec<usize> = sample(rng, sigma.len(), self.k).into_vec();
        pick.sort_unstable();
        let core: Face = pick.into_iter().map(|p| sigma[p]).collect();
        sunflower(&self.base, self.k, &core, &sigma)
    }

    /// Exact output distribution of [`Self::sample_rep_face`].
    pub fn rep_face_distribution(&self, i: usize) -> Vec<(Face, Rational)> {
        let dim = (self.k + i) as i64;
        let mut acc: BTreeMap<Face, Rational> = BTreeMap::new();
        for (idx, sigma) in self.base.faces(dim).iter().enumerate() {
            let w = self.base.weight_at(dim, idx);
            if i == 0 {
                acc.insert(vec![idx as Vertex], w);
                continue;
            }
            let share = w / int(binomial(sigma.len() as u64, self.k as u64));
            for c in sigma.iter().copied().combinations(self.k) {
                *acc.entry(sunflower(&self.base, self.k, &c, sigma)).or_insert_with(zero) += &share;
            }
        }
        acc.into_iter().collect()
    }

    /// `R̂_c`: vertices containing `c` and the faces with core `c`.
    pub fn core_complex(&self, core: &[Vertex]) -> Result<SimplicialComplex> {
        if core.len() != self.k || !self.base.contains(core) {
            return Err(Error::InvalidInput(format!("{core:?} is not a core")));
        }
        let tops: Vec<Face> = self
            .base
            .maximal_faces()
            .iter()
            .filter(|s| is_subset(core, s))
            .map(|s| sunflower(&self.base, self.k, core, s))
            .collect();
        SimplicialComplex::build(tops)
    }

    /// The isomorphism `R̂_c ≅ X_c` given by `τ ↦ R(τ) \ c`, with inverse
    /// `σ ↦ r^c_{σ ∪ c}`.
    pub fn core_link_isomorphism(&self, core: &[Vertex]) -> Result<CoreLinkIsomorphism> {
        let around = self.core_complex(core)?;
        let link = self.base.link(core)?;
        let mut forward = BTreeMap::new();
        let mut backward = BTreeMap::new();
        for i in -1..=around.dim() as i64 {
            for tau in around.faces(i) {
                let image = difference(&self.represented(tau), core);
                forward.insert(tau.clone(), image);
            }
        }
        for i in -1..=link.dim() as i64 {
            for sigma in link.faces(i) {
                let image = if sigma.is_empty() {
                    Vec::new()
                } else {
                    let full = union(sigma, core);
                    if self.k == 0 {
                        full.iter()
                            .map(|v| self.base.face_index(&[*v]).expect("vertex") as Vertex)
                            .collect()
                    } else {
                        sunflower(&self.base, self.k, core, &full)
                    }
                };
                backward.insert(sigma.clone(), image);
            }
        }
        Ok(CoreLinkIsomorphism {
            around,
            link,
            forward,
            backward,
        })
    }

    /// All `(k−1)`-empty triangles.
    pub fn empty_triangles(&self) -> &[EmptyTriangle] {
        &self.empty
    }

    /// The empty triangles through an `R̂` edge: for each `(k−1)`-subset `A`
    /// of the core, the third vertex is `(u △ v) ∪ A`.
    pub fn empty_triangles_of_edge(&self, u: Vertex, v: Vertex) -> Result<Vec<EmptyTriangle>> {
        let (u, v) = (u.min(v), u.max(v));
        if !self.complex.contains(&[u, v]) {
            return Err(Error::NotAnEdge(vec![u, v]));
        }
        let Some(low) = &self.lower else {
            return Ok(Vec::new());
        };
        let (fu, fv) = (self.x_face(u), self.x_face(v));
        let core = intersection(fu, fv);
        let sym = union(&difference(fu, fv), &difference(fv, fu));
        let xl = self.base.faces(self.k as i64 - 1);
        let mut out = Vec::new();
        for a in core.iter().copied().combinations(self.k - 1) {
            let wf = union(&sym, &a);
            let Some(w) = self.vertex_of(&wf) else { continue };
            let mut lower = [
                self.base.face_index(&core).expect("core") as Vertex,
                self.base.face_index(&intersection(fv, &wf)).expect("face") as Vertex,
                self.base.face_index(&intersection(&wf, fu)).expect("face") as Vertex,
            ];
            lower.sort_unstable();
            let Some(lower_index) = low.face_index(&lower) else { continue };
            debug_assert!(lower.iter().all(|&x| xl[x as usize].len() == self.k));
            let mut vertices = [u, v, w];
            vertices.sort_unstable();
            out.push(EmptyTriangle {
                vertices,
                lower,
                lower_index,
            });
        }
        Ok(out)
    }

    /// Weight of an empty triangle: the weight of its `R̂_{k−1}` 2-face.
    pub fn empty_triangle_weight(&self, t: &EmptyTriangle) -> Rational {
        self.lower.as_ref().expect("k ≥ 1").weight_at(2, t.lower_index)
    }

    /// `f` restricted to the edges with core `c`, identity elsewhere.
    pub fn restrict_around_core<G: Group>(&self, f: &Cochain<G>, core: &[Vertex]) -> Result<Cochain<G>> {
        self.check_cochain(f)?;
        let ci = self
            .base
            .face_index(core)
            .filter(|_| core.len() == self.k)
            .ok_or_else(|| Error::InvalidInput(format!("{core:?} is not a core")))?;
        let id = f.group_identity();
        let values = (0..f.values().len())
            .map(|e| if self.edge_cores[e] == ci { f.value_at(e) } else { id })
            .collect();
        Cochain::new(self.complex.clone(), 1, id, values)
    }

    fn check_cochain<G: Group>(&self, f: &Cochain<G>) -> Result<()> {
        if f.dim() != 1 || **f.base() != *self.complex {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    /// Exact violated-triangle norms `(ε_▲, ε_△)`.
    pub fn triangle_violations<G: Group>(&self, f: &Cochain<G>) -> Result<(Rational, Rational)> {
        self.check_cochain(f)?;
        let (full, empty) = self.violation_counts(|u, v| f.edge(u, v).expect("edge"));
        Ok(self.violation_norms(full, empty))
    }

    /// Integer numerators of `(ε_▲, ε_△)` for a cochain given by edge reads.
    pub fn violation_counts<G: Group>(&self, edge: impl Fn(Vertex, Vertex) -> G) -> (u64, u64) {
        let bad = |t: &[Vertex]| {
            !edge(t[0], t[1])
                .compose(&edge(t[1], t[2]))
                .compose(&edge(t[2], t[0]))
                .is_identity()
        };
        let full = self
            .complex
            .faces(2)
            .iter()
            .enumerate()
            .filter(|(_, t)| bad(t))
            .map(|(i, _)| self.complex.containing_count(2, i))
            .sum();
        let empty = match &self.lower {
            Some(low) => self
                .empty
                .iter()
                .filter(|t| bad(&t.vertices))
                .map(|t| low.containing_count(2, t.lower_index))
                .sum(),
            None => 0,
        };
        (full, empty)
    }

    pub fn violation_norms(&self, full: u64, empty: u64) -> (Rational, Rational) {
        let f = if self.complex.dim() >= 2 {
            ratio(full, self.complex.weight_denominator(2))
        } else {
            zero()
        };
        let e = match &self.lower {
            Some(low) => ratio(empty, low.weight_denominator(2)),
            None => zero(),
        };
        (f, e)
    }

    /// Exact rejection probability of the empty-triangle test.
    pub fn empty_triangle_rejection<G: Group>(&self, f: &Cochain<G>) -> Result<Rational> {
        let (a, b) = self.triangle_violations(f)?;
        Ok((a + b) / int(2))
    }

    /// One run of the empty-triangle test; `edge(u, v)` answers `f(u, v)`
    /// for `u < v`. Returns `true` on acceptance.
    pub fn empty_triangle_test_once<G: Group, R: Rng + ?Sized>(
        &self,
        mut edge: impl FnMut(Vertex, Vertex) -> G,
        rng: &mut R,
    ) -> bool {
        let tri: [Vertex; 3] = if rng.gen_bool(0.5) {
            if self.complex.dim() < 2 {
                return true;
            }
            let t = self.sample_rep_face(2, rng);
            [t[0], t[1], t[2]]
        } else {
            let Some(low) = &self.lower else { return true };
            let t = low.sample_face(2, rng);
            let idx = low.face_index(&t).expect("face");
            // Empty triangles are stored in the order of lower 2-faces.
            self.empty[idx].vertices
        };
        let [u, v, w] = tri;
        let a = edge(u, v);
        let b = edge(v, w);
        let c = edge(u, w).inverse();
        a.compose(&b).compose(&c).is_identity()
    }

    /// Builds the attachment map of a cocycle from per-core local witnesses.
    pub fn attachment_map<G: Group>(&self, f: &Cochain<G>) -> Result<AttachmentData<G>> {
        self.check_cochain(f)?;
        let Some(low) = &self.lower else {
            return Err(Error::DimensionOutOfRange(0));
        };
        if !f.is_cocycle() {
            return Err(Error::NotACocycle);
        }
        let id = f.group_identity();
        let xl = self.base.faces(self.k as i64 - 1);
        let mut by_core: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); xl.len()];
        for (e, uv) in self.complex.faces(1).iter().enumerate() {
            by_core[self.edge_cores[e]].push((uv[0], uv[1]));
        }
        let mut local: Vec<HashMap<Vertex, G>> = Vec::with_capacity(xl.len());
        for (ci, c) in xl.iter().enumerate() {
            let mut members: Vec<Vertex> = (0..self.base.face_count(self.k as i64) as Vertex)
                .filter(|&u| is_subset(c, self.x_face(u)))
                .collect();
            members.sort_unstable();
            let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
            for &(u, v) in &by_core[ci] {
                adj.entry(u).or_default().push(v);
                adj.entry(v).or_default().push(u);
            }
            let mut h: HashMap<Vertex, G> = HashMap::new();
            for &root in &members {
                if h.contains_key(&root) {
                    continue;
                }
                h.insert(root, id);
                let mut queue = VecDeque::from([root]);
                while let Some(u) = queue.pop_front() {
                    let hu = h[&u];
                    for &v in adj.get(&u).map(|a| a.as_slice()).unwrap_or(&[]) {
                        if let std::collections::hash_map::Entry::Vacant(slot) = h.entry(v) {
                            slot.insert(f.edge(v, u).expect("edge").compose(&hu));
                            queue.push_back(v);
                        }
                    }
                }
            }
            for &(u, v) in &by_core[ci] {
                if f.edge(u, v).expect("edge") != h[&u].compose(&h[&v].inverse()) {
                    return Err(Error::LocalWitnessFailed(c.clone()));
                }
            }
            local.push(h);
        }
        let values = low
            .faces(1)
            .iter()
            .map(|e| {
                let w = self
                    .vertex_of(&union(&xl[e[0] as usize], &xl[e[1] as usize]))
                    .expect("union is a k-face");
                local[e[0] as usize][&w].inverse().compose(&local[e[1] as usize][&w])
            })
            .collect();
        let attachment = Cochain::new(low.clone(), 1, id, values)?;
        Ok(AttachmentData { local, attachment })
    }

    /// Rounds a cocycle to a coboundary through its attachment map with
    /// canonical cores, and compares the result with the distance bound
    /// `2k/(k+1)·‖ψ̌‖` (and the alternative `2k/(k−1)·‖ψ̌‖`).
    pub fn check_core_choice<G: Group>(&self, f: &Cochain<G>, elements: &[G]) -> Result<CoreChoiceCheck> {
        let data = self.attachment_map(f)?;
        let low = self.lower.as_ref().expect("k ≥ 1");
        let (gt, _) = nearest_coboundary(&data.attachment, elements)?;
        let phi = gt.coboundary()?;
        let psi = phi.inverse().product(&data.attachment)?;
        let xl = self.base.faces(self.k as i64 - 1);
        let nk = self.base.face_count(self.k as i64);
        let mut cores = Vec::with_capacity(nk);
        for u in 0..nk as Vertex {
            let fu = self.x_face(u);
            let subs: Vec<Vertex> = fu
                .iter()
                .copied()
                .combinations(self.k)
                .map(|s| self.base.face_index(&s).expect("face") as Vertex)
                .sorted()
                .collect();
            let cost = |c: Vertex| -> u64 {
                subs.iter()
                    .filter(|&&v| v != c)
                    .map(|&v| {
                        let e = [c.min(v), c.max(v)];
                        let idx = low.face_index(&e).expect("lower edge");
                        if psi.value_at(idx).is_identity() {
                            0
                        } else {
                            low.containing_count(1, idx)
                        }
                    })
                    .sum()
            };
            let best = subs.iter().copied().min_by_key(|&c| (cost(c), c)).expect("nonempty");
            cores.push(best);
        }
        let id = f.group_identity();
        let g_values: Vec<G> = (0..nk as Vertex)
            .map(|u| {
                let c = cores[u as usize] as usize;
                data.local[c][&u].compose(&gt.value_at(c))
            })
            .collect();
        debug_assert_eq!(xl.len(), data.local.len());
        let g = Cochain::new(self.complex.clone(), 0, id, g_values)?;
        let rounded = g.coboundary()?;
        let dist = f.dist(&rounded)?;
        let psi_norm = psi.norm();
        let k = self.k as i64;
        let bound_proof = ratio(2 * k, k + 1) * &psi_norm;
        let bound_stated = (k > 1).then(|| ratio(2 * k, k - 1) * &psi_norm);
        Ok(CoreChoiceCheck {
            holds_proof: dist <= bound_proof,
            holds_stated: bound_stated.as_ref().is_none_or(|b| dist <= *b),
            dist,
            psi_norm,
            bound_proof,
            bound_stated,
            canonical_cores: cores,
        })
    }

    /// Nearest coboundary by exhaustive search, with the `e_k` bound for the
    /// supplied `γ`.
    pub fn round_to_coboundary<G: Group>(&self, f: &Cochain<G>, elements: &[G], gamma: &Rational) -> Result<Rounding<G>> {
        self.check_cochain(f)?;
        let (g, _) = nearest_coboundary(f, elements)?;
        let rounded = g.coboundary()?;
        let dist = f.dist(&rounded)?;
        let (a, b) = self.triangle_violations(f)?;
        let bound = e_k_bound(&a, &b, gamma, self.k)?;
        Ok(Rounding {
            within_bound: dist <= bound,
            rounded,
            dist,
            bound,
        })
    }
}

#[derive(Clone, Debug)]
pub struct CoreLinkIsomorphism {
    pub around: SimplicialComplex,
    pub link: SimplicialComplex,
    /// `τ ↦ R(τ) \ c`.
    pub forward: BTreeMap<Face, Face>,
    /// `σ ↦ r^c_{σ ∪ c}`.
    pub backward: BTreeMap<Face, Face>,
}

#[derive(Clone, Debug)]
pub struct AttachmentData<G: Group> {
    /// Local witness `h^c` per core (indexed like `X(k−1)`).
    pub local: Vec<HashMap<Vertex, G>>,
    /// `f̌` on `R̂_{k−1}`.
    pub attachment: Cochain<G>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoreChoiceCheck {
    #[serde(with = "crate::rational::serde_str")]
    pub dist: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub psi_norm: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub bound_proof: Rational,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub bound_stated: Option<Rational>,
    pub holds_proof: bool,
    pub holds_stated: bool,
    pub canonical_cores: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub struct Rounding<G: Group> {
    pub rounded: Cochain<G>,
    pub dist: Rational,
    pub bound: Rational,
    pub within_bound: bool,
}

/// Coefficients `(a, b)` with `e_k(ε_▲, ε_△) = a·ε_▲ + b·ε_△`, from the
/// closed form for `k ≥ 1` and `e_0 = ε_▲/γ`.
pub fn e_k_coefficients(gamma: &Rational, k: usize) -> Result<(Rational, Rational)> {
    if *gamma <= zero() {
        return Err(Error::NonpositiveGamma);
    }
    let inv = int(1) / gamma;
    if k == 0 {
        return Ok((inv, zero()));
    }
    let six = int(6) / gamma;
    let kk = k as i64;
    let mut a = zero();
    let mut pow = int(1);
    for i in 1..=kk {
        a += ratio(kk + 2 - i, kk + 1) * &pow;
        pow *= &six;
    }
    let mut b = zero();
    let mut pow = int(1);
    for i in 1..kk {
        b += ratio(kk + 1 - i, kk + 1) * &pow;
        pow *= &six;
    }
    Ok((a * &inv, b * int(2) * inv))
}

/// Coefficients from unrolling `e_k(x, y) = x/γ + (2k/(k+1))·e_{k−1}(y + 3x/γ, 0)`
/// from `e_0 = ε_▲/γ`.
pub fn e_k_recursive_coefficients(gamma: &Rational, k: usize) -> Result<(Rational, Rational)> {
    if *gamma <= zero() {
        return Err(Error::NonpositiveGamma);
    }
    let inv = int(1) / gamma;
    let (mut a, mut b) = (inv.clone(), zero());
    for j in 1..=k as i64 {
        let scale = ratio(2 * j, j + 1) * &a;
        b = scale.clone();
        a = &inv + scale * int(3) * &inv;
    }
    Ok((a, b))
}

pub fn e_k_bound(eps_full: &Rational, eps_empty: &Rational, gamma: &Rational, k: usize) -> Result<Rational> {
    let (a, b) = e_k_coefficients(gamma, k)?;
    Ok(a * eps_full + b * eps_empty)
}

/// `c_T = 2(a + b)`: distance to coboundaries is at most `c_T` times the
/// empty-triangle test's rejection probability.
pub fn coboundary_test_constant(gamma: &Rational, k: usize) -> Result<Rational> {
    let (a, b) = e_k_coefficients(gamma, k)?;
    Ok((a + b) * int(2))
}

/// Bitmask view of two-sheet (F_2) cochains on `R̂`: edges are bits, and
/// violated-triangle counts and nearest-coboundary distances are computed
/// with popcounts.
#[derive(Clone, Debug)]
pub struct BinaryView {
    pub edge_count: usize,
    weight_classes: Vec<(u64, u128)>,
    full: Vec<(u128, u64)>,
    empty: Vec<(u128, u64)>,
    coboundaries: Vec<u128>,
}

impl BinaryView {
    pub const MAX_VERTICES: usize = 22;

    pub fn new(rep: &RepresentationComplex) -> Result<Self> {
        let x = rep.complex();
        let m = x.face_count(1);
        let n = x.face_count(0);
        if m > 128 || n > Self::MAX_VERTICES {
            return Err(Error::SearchSpaceTooLarge(format!("{n} vertices, {m} edges")));
        }
        let bit = |a: Vertex, b: Vertex| 1u128 << x.face_index(&[a.min(b), a.max(b)]).expect("edge");
        let tri_mask = |t: &[Vertex]| bit(t[0], t[1]) | bit(t[1], t[2]) | bit(t[0], t[2]);
        let mut classes: BTreeMap<u64, u128> = BTreeMap::new();
        for i in 0..m {
            *classes.entry(x.containing_count(1, i)).or_insert(0) |= 1u128 << i;
        }
        let full = x
            .faces(2)
            .iter()
            .enumerate()
            .map(|(i, t)| (tri_mask(t), x.containing_count(2, i)))
            .collect();
        let empty = match rep.lower() {
            Some(low) => rep
                .empty_triangles()
                .iter()
                .map(|t| (tri_mask(&t.vertices), low.containing_count(2, t.lower_index)))
                .collect(),
            None => Vec::new(),
        };
        let mut cob: Vec<u128> = (0u64..1 << n)
            .map(|g| {
                x.faces(1)
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| (g >> e[0] & 1) != (g >> e[1] & 1))
                    .fold(0u128, |acc, (i, _)| acc | 1u128 << i)
            })
            .collect();
        cob.sort_unstable();
        cob.dedup();
        Ok(Self {
            edge_count: m,
            weight_classes: classes.into_iter().collect(),
            full,
            empty,
            coboundaries: cob,
        })
    }

    /// All coboundaries as edge masks.
    pub fn coboundaries(&self) -> &[u128] {
        &self.coboundaries
    }

    /// Weighted edge count of a mask.
    pub fn weight(&self, mask: u128) -> u64 {
        self.weight_classes
            .iter()
            .map(|(w, m)| w * (mask & m).count_ones() as u64)
            .sum()
    }

    pub fn violation_counts(&self, mask: u128) -> (u64, u64) {
        let count = |ts: &[(u128, u64)]| {
            ts.iter()
                .filter(|(t, _)| (mask & t).count_ones() % 2 == 1)
                .map(|(_, w)| w)
                .sum()
        };
        (count(&self.full), count(&self.empty))
    }

    /// Integer numerator of the distance to the nearest coboundary.
    pub fn nearest_coboundary_count(&self, mask: u128) -> u64 {
        self.coboundaries
            .iter()
            .map(|c| self.weight(mask ^ c))
            .min()
            .expect("zero is a coboundary")
    }
}
