//! Group-valued cochains in dimensions −1, 0 and 1 and their coboundaries.
//!
//! Values are stored per face index of the base complex. A 1-cochain keeps
//! one value per edge `(u, v)` with `u < v`; reading `(v, u)` yields the
//! inverse.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::rational::{ratio, Rational};

#[derive(Clone, Debug)]
pub struct Cochain<G: Group> {
    base: Arc<SimplicialComplex>,
    dim: i64,
    identity: G,
    values: Vec<G>,
}

impl<G: Group> PartialEq for Cochain<G> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.values == other.values && same_base(&self.base, &other.base)
    }
}

fn same_base(a: &Arc<SimplicialComplex>, b: &Arc<SimplicialComplex>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<G: Group> Cochain<G> {
    /// Cochain from values aligned with `base.faces(dim)`.
    pub fn new(base: Arc<SimplicialComplex>, dim: i64, identity: G, values: Vec<G>) -> Result<Self> {
        if !(-1..=2).contains(&dim) {
            return Err(Error::DimensionOutOfRange(dim));
        }
        if values.len() != base.face_count(dim) {
            return Err(Error::InvalidInput(format!(
                "{} values for {} faces of dimension {dim}",
                values.len(),
                base.face_count(dim)
            )));
        }
        Ok(Self {
            base,
            dim,
            identity: identity.identity_like(),
            values,
        })
    }

    pub fn constant(base: Arc<SimplicialComplex>, dim: i64, g: G) -> Result<Self> {
        let n = base.face_count(dim);
        Self::new(base, dim, g.identity_like(), vec![g; n])
    }

    pub fn identity(base: Arc<SimplicialComplex>, dim: i64, identity: G) -> Result<Self> {
        Self::constant(base, dim, identity.identity_like())
    }

    /// Cochain whose value on each sorted face is `f(face)`.
    pub fn from_fn(
        base: Arc<SimplicialComplex>,
        dim: i64,
        identity: G,
        mut f: impl FnMut(&[Vertex]) -> G,
    ) -> Result<Self> {
        let values = base.faces(dim).iter().map(|s| f(s)).collect();
        Self::new(base, dim, identity, values)
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn group_identity(&self) -> G {
        self.identity
    }

    pub fn values(&self) -> &[G] {
        &self.values
    }

    pub fn value_at(&self, idx: usize) -> G {
        self.values[idx]
    }

    pub fn set_at(&mut self, idx: usize, g: G) {
        self.values[idx] = g;
    }

    /// Value on a sorted face.
    pub fn get(&self, face: &[Vertex]) -> Option<G> {
        if face.len() as i64 != self.dim + 1 {
            return None;
        }
        self.base.face_index(face).map(|i| self.values[i])
    }

    /// Value on the oriented edge `(u, v)`.
    pub fn edge(&self, u: Vertex, v: Vertex) -> Option<G> {
        if self.dim != 1 {
            return None;
        }
        if u < v {
            self.get(&[u, v])
        } else {
            self.get(&[v, u]).map(|g| g.inverse())
        }
    }

    /// Coboundary `d_i f`.
    pub fn coboundary(&self) -> Result<Cochain<G>> {
        let x = &self.base;
        let values: Vec<G> = match self.dim {
            -1 => vec![self.values[0]; x.face_count(0)],
            0 => x
                .faces(1)
                .iter()
                .map(|e| {
                    let a = self.values[x.vertex_index(e[0]).expect("vertex")];
                    let b = self.values[x.vertex_index(e[1]).expect("vertex")];
                    a.compose(&b.inverse())
                })
                .collect(),
            1 => x
                .faces(2)
                .iter()
                .map(|t| self.triangle_product(t))
                .collect(),
            d => return Err(Error::DimensionTooHigh(d as i32)),
        };
        Cochain::new(self.base.clone(), self.dim + 1, self.identity, values)
    }

    /// `f(u,v) f(v,w) f(w,u)` for a triangle `[u, v, w]`.
    pub fn triangle_product(&self, t: &[Vertex]) -> G {
        let a = self.edge(t[0], t[1]).expect("edge");
        let b = self.edge(t[1], t[2]).expect("edge");
        let c = self.edge(t[2], t[0]).expect("edge");
        a.compose(&b).compose(&c)
    }

    pub fn is_cocycle(&self) -> bool {
        self.dim == 1
            && self
                .base
                .faces(2)
                .iter()
                .all(|t| self.triangle_product(t).is_identity())
    }

    /// A 0-cochain `g` with `d_0 g = self`, if one exists. Built by
    /// breadth-first propagation from the lowest vertex of each component
    /// (identity at the root), then verified on every edge.
    pub fn is_coboundary(&self) -> Option<Cochain<G>> {
        if self.dim != 1 {
            return None;
        }
        let x = &self.base;
        let verts = x.faces(0);
        let mut g: Vec<Option<G>> = vec![None; verts.len()];
        for root in 0..verts.len() {
            if g[root].is_some() {
                continue;
            }
            g[root] = Some(self.identity);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let gu = g[u].expect("assigned");
                for &v in x.neighbors(u) {
                    if g[v].is_none() {
                        let f_vu = self.edge(verts[v][0], verts[u][0]).expect("edge");
                        g[v] = Some(f_vu.compose(&gu));
                        queue.push_back(v);
                    }
                }
            }
        }
        let witness = Cochain::new(
            x.clone(),
            0,
            self.identity,
            g.into_iter().map(|v| v.expect("assigned")).collect(),
        )
        .ok()?;
        let check = witness.coboundary().ok()?;
        (check.values == self.values).then_some(witness)
    }

    /// Integer measure of the support: sum of containing-maximal-face counts.
    pub fn support_count(&self) -> u64 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_identity())
            .map(|(i, _)| self.base.containing_count(self.dim, i))
            .sum()
    }

    /// `‖f‖`: weight of the faces where `f` is not the identity.
    pub fn norm(&self) -> Rational {
        ratio(self.support_count(), self.base.weight_denominator(self.dim))
    }

    /// `‖f1 f2⁻¹‖`.
    pub fn dist(&self, other: &Cochain<G>) -> Result<Rational> {
        Ok(ratio(self.dist_count(other)?, self.base.weight_denominator(self.dim)))
    }

    pub fn dist_count(&self, other: &Cochain<G>) -> Result<u64> {
        if self.dim != other.dim || !same_base(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| self.base.containing_count(self.dim, i))
            .sum())
    }

    /// Pointwise product `self · other`.
    pub fn product(&self, other: &Cochain<G>) -> Result<Cochain<G>> {
        if self.dim != other.dim || !same_base(&self.base, &other.base) {
            return Err(Error::BaseMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.compose(b))
            .collect();
        Cochain::new(self.base.clone(), self.dim, self.identity, values)
    }

    /// Pointwise inverse.
    pub fn inverse(&self) -> Cochain<G> {
        let values = self.values.iter().map(|g| g.inverse()).collect();
        Cochain::new(self.base.clone(), self.dim, self.identity, values).expect("same shape")
    }

    /// Faces where the cochain is not the identity.
    pub fn support(&self) -> Vec<Face> {
        self.base
            .faces(self.dim)
            .iter()
            .zip(&self.values)
            .filter(|(_, g)| !g.is_identity())
            .map(|(f, _)| f.clone())
            .collect()
    }
}

/// Limit on the number of 0-cochains an exhaustive search may visit.
pub const SEARCH_LIMIT: f64 = 4.0e9;

/// Exact nearest coboundary to a 1-cochain, by branch and bound over all
/// 0-cochains with the root of each component fixed to the identity.
/// Returns the witness and the integer distance count.
pub fn nearest_coboundary<G: Group>(f: &Cochain<G>, elements: &[G]) -> Result<(Cochain<G>, u64)> {
    if f.dim() != 1 {
        return Err(Error::DimensionOutOfRange(f.dim()));
    }
    let x = f.base().clone();
    let verts = x.faces(0);
    let n = verts.len();
    // Breadth-first order so each non-root vertex follows a neighbour.
    let mut order = Vec::with_capacity(n);
    let mut pos = vec![usize::MAX; n];
    let mut roots = vec![false; n];
    for r in 0..n {
        if pos[r] != usize::MAX {
            continue;
        }
        roots[r] = true;
        pos[r] = order.len();
        order.push(r);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &v in x.neighbors(u) {
                if pos[v] == usize::MAX {
                    pos[v] = order.len();
                    order.push(v);
                }
            }
        }
    }
    let free = roots.iter().filter(|r| !**r).count();
    let space = (elements.len() as f64).powi(free as i32);
    if space > SEARCH_LIMIT {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{} group elements on {free} free vertices",
            elements.len()
        )));
    }
    // For each vertex (in search order) the earlier neighbours with edge data.
    let mut back: Vec<Vec<(usize, G, u64)>> = vec![Vec::new(); n];
    for (ei, e) in x.faces(1).iter().enumerate() {
        let a = x.vertex_index(e[0]).expect("vertex");
        let b = x.vertex_index(e[1]).expect("vertex");
        let w = x.containing_count(1, ei);
        let val = f.value_at(ei);
        // Entries are (u, f(u,v), w) with u earlier than v.
        if pos[a] < pos[b] {
            back[b].push((a, val, w));
        } else {
            back[a].push((b, val.inverse(), w));
        }
    }
    struct Search<'a, G: Group> {
        order: &'a [usize],
        roots: &'a [bool],
        back: &'a [Vec<(usize, G, u64)>],
        elements: &'a [G],
        identity: G,
        current: Vec<G>,
        best: Vec<G>,
        best_cost: u64,
    }
    impl<G: Group> Search<'_, G> {
        fn run(&mut self, depth: usize, cost: u64) {
            if cost >= self.best_cost {
                return;
            }
            if depth == self.order.len() {
                self.best_cost = cost;
                self.best = self.current.clone();
                return;
            }
            let v = self.order[depth];
            let candidates: Vec<G> = if self.roots[v] {
                vec![self.identity]
            } else {
                self.elements.to_vec()
            };
            for g in candidates {
                let ginv = g.inverse();
                let mut c = cost;
                for &(u, val, w) in &self.back[v] {
                    if self.current[u].compose(&ginv) != val {
                        c += w;
                    }
                }
                self.current[v] = g;
                self.run(depth + 1, c);
            }
        }
    }
    let identity = f.group_identity();
    let mut s = Search {
        order: &order,
        roots: &roots,
        back: &back,
        elements,
        identity,
        current: vec![identity; n],
        best: vec![identity; n],
        best_cost: u64::MAX,
    };
    s.run(0, 0);
    let witness = Cochain::new(x, 0, identity, s.best)?;
    Ok((witness, s.best_cost))
}

/// Exact `dist(f, B^1)` as a rational.
pub fn dist_to_coboundaries<G: Group>(f: &Cochain<G>, elements: &[G]) -> Result<Rational> {
    let (_, c) = nearest_coboundary(f, elements)?;
    Ok(ratio(c, f.base().weight_denominator(1)))
}
