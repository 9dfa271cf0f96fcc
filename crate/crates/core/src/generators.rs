//! Complex families and adversarial inputs.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::assignment::{restrict, LAssignment};
use crate::cochain::Cochain;
use crate::complex::{SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::{Group, Perm};
use crate::homology::{check_cycle, is_non_skipping, skipped_edges};
use crate::representation::RepresentationComplex;

/// All `(d+1)`-subsets of `{0, …, n−1}`.
pub fn complete_complex(n: usize, d: usize) -> Result<SimplicialComplex> {
    if d + 1 > n || n > 64 {
        return Err(Error::InvalidParams(format!("complete complex needs d + 1 ≤ n ≤ 64, got n={n}, d={d}")));
    }
    SimplicialComplex::build((0..n as Vertex).combinations(d + 1))
}

/// Graph on the given edges, as a 1-dimensional complex.
pub fn graph(edges: &[(Vertex, Vertex)]) -> Result<SimplicialComplex> {
    SimplicialComplex::build(edges.iter().map(|&(a, b)| vec![a, b]))
}

/// A cycle `0, …, n−1` with one extra vertex `n + i` joined to `i` and `i + 1`.
pub fn cycle_with_pendants(n: usize) -> Result<(SimplicialComplex, Vec<Vertex>)> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("cycle length {n}")));
    }
    let n = n as Vertex;
    let mut edges = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        edges.extend([(i, j), (i, n + i), (n + i, j)]);
    }
    Ok((graph(&edges)?, (0..n).collect()))
}

/// A 6-cycle with six side vertices, four edges among them, and the chords
/// `{γ0, γ3}` and `{γ0, γ4}`.
pub fn six_cycle_example() -> (SimplicialComplex, Vec<Vertex>) {
    let mut edges = Vec::new();
    for i in 0..6 {
        let j = (i + 1) % 6;
        edges.extend([(i, j), (i, 6 + i), (6 + i, j)]);
    }
    edges.extend([(6, 7), (8, 9), (9, 10), (11, 6), (0, 4), (0, 3)]);
    (graph(&edges).expect("valid graph"), (0..6).collect())
}

/// Cone over an `n`-cycle: triangles `{i, i+1, n}`. The cycle bounds a disk.
pub fn cycle_cone(n: usize) -> Result<(SimplicialComplex, Vec<Vertex>)> {
    if n < 4 {
        return Err(Error::InvalidParams(format!("cycle length {n}")));
    }
    let n = n as Vertex;
    let tris = (0..n).map(|i| vec![i, (i + 1) % n, n]);
    Ok((SimplicialComplex::build(tris)?, (0..n).collect()))
}

/// Triangulated annulus between the cycles `0..n` and `n..2n`; the first
/// cycle is not a boundary.
pub fn annulus(n: usize) -> Result<(SimplicialComplex, Vec<Vertex>)> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("cycle length {n}")));
    }
    let n = n as Vertex;
    let mut tris = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        tris.push(vec![i, j, n + i]);
        tris.push(vec![j, n + i, n + j]);
    }
    Ok((SimplicialComplex::build(tris)?, (0..n).collect()))
}

// ---- spherical buildings -------------------------------------------------

fn inv_mod(a: u8, p: u8) -> u8 {
    let (mut r, mut b, mut e) = (1u32, a as u32, p as u32 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u32;
        }
        b = b * b % p as u32;
        e >>= 1;
    }
    r as u8
}

/// Reduced row echelon form of the span of `rows` over `F_p`.
pub fn rref(rows: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], p);
        for x in m[rank].iter_mut() {
            *x = (*x as u32 * inv as u32 % p as u32) as u8;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] as u32;
                for j in 0..cols {
                    let sub = f * m[rank][j] as u32 % p as u32;
                    m[r][j] = ((m[r][j] as u32 + p as u32 - sub) % p as u32) as u8;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

fn in_span(v: &[u8], basis: &[Vec<u8>], p: u8) -> bool {
    let mut w = v.to_vec();
    for row in basis {
        let c = row.iter().position(|&x| x != 0).expect("nonzero row");
        let f = w[c] as u32;
        if f != 0 {
            for j in 0..w.len() {
                w[j] = ((w[j] as u32 + p as u32 - f * row[j] as u32 % p as u32) % p as u32) as u8;
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

fn rref_subspaces(m: usize, r: usize, p: u8) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    for pivots in (0..m).combinations(r) {
        let free: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| ((pivots[i] + 1)..m).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let total = (p as usize).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u8; m]; r];
            for (i, &c) in pivots.iter().enumerate() {
                rows[i][c] = 1;
            }
            let mut x = code;
            for &(i, c) in &free {
                rows[i][c] = (x % p as usize) as u8;
                x /= p as usize;
            }
            out.push(rows);
        }
    }
    out
}

/// `SB(p, d)`: the flag complex of proper nontrivial subspaces of `F_p^{d+2}`.
#[derive(Clone, Debug)]
pub struct SphericalBuilding {
    pub p: u8,
    pub d: usize,
    pub complex: SimplicialComplex,
    /// Row-reduced basis of each vertex, indexed by vertex label.
    pub subspaces: Vec<Vec<Vec<u8>>>,
    registry: HashMap<Vec<Vec<u8>>, Vertex>,
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).all(|q| p % q != 0)
}

pub fn spherical_building(p: u8, d: usize) -> Result<SphericalBuilding> {
    if !is_prime(p) || d == 0 {
        return Err(Error::InvalidParams(format!("p={p} must be prime and d={d} positive")));
    }
    if p > 5 || d > 2 {
        return Err(Error::SearchSpaceTooLarge(format!("SB({p},{d}) is beyond p ≤ 5, d ≤ 2")));
    }
    let m = d + 2;
    let mut subspaces = Vec::new();
    let mut by_dim: Vec<Vec<Vertex>> = vec![Vec::new(); m];
    for r in 1..m {
        for s in rref_subspaces(m, r, p) {
            by_dim[r].push(subspaces.len() as Vertex);
            subspaces.push(s);
        }
    }
    let registry: HashMap<Vec<Vec<u8>>, Vertex> =
        subspaces.iter().enumerate().map(|(i, s)| (s.clone(), i as Vertex)).collect();
    // up[v]: subspaces of one dimension more that contain v.
    let mut up: Vec<Vec<Vertex>> = vec![Vec::new(); subspaces.len()];
    for r in 1..m - 1 {
        for &a in &by_dim[r] {
            for &b in &by_dim[r + 1] {
                if subspaces[a as usize].iter().all(|row| in_span(row, &subspaces[b as usize], p)) {
                    up[a as usize].push(b);
                }
            }
        }
    }
    let mut flags = Vec::new();
    let mut stack: Vec<Vec<Vertex>> = by_dim[1].iter().map(|&v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        if chain.len() == d + 1 {
            flags.push(chain);
            continue;
        }
        for &b in &up[*chain.last().expect("nonempty") as usize] {
            let mut c = chain.clone();
            c.push(b);
            stack.push(c);
        }
    }
    let complex = SimplicialComplex::build(flags)?;
    Ok(SphericalBuilding { p, d, complex, subspaces, registry })
}

impl SphericalBuilding {
    /// Vertex of the span of `vectors`, if it is a proper nontrivial subspace.
    pub fn vertex_of_span(&self, vectors: &[Vec<u8>]) -> Option<Vertex> {
        self.registry.get(&rref(vectors, self.p)).copied()
    }

    pub fn dimension_of(&self, v: Vertex) -> usize {
        self.subspaces[v as usize].len()
    }

    /// The cycle `V_1, W_{1,1}, U_1, W_{1,2}, V_2, …, U_{p−1}, W_{p−1,1}`
    /// with `V_i = ⟨(1,i,0,…)⟩`, `U_i = ⟨(1,0,i,0,…)⟩`, `W_{i,j} = ⟨u_i, v_j⟩`.
    pub fn explicit_cycle(&self) -> Result<Vec<Vertex>> {
        let p = self.p;
        if p < 3 {
            return Err(Error::InvalidParams("the explicit cycle needs p ≥ 3".into()));
        }
        let m = self.d + 2;
        let vec_with = |pos: usize, i: u8| {
            let mut x = vec![0u8; m];
            x[0] = 1;
            x[pos] = i % p;
            x
        };
        let v = |i: u8| vec_with(1, i);
        let u = |i: u8| vec_with(2, i);
        let get = |vs: &[Vec<u8>]| {
            self.vertex_of_span(vs)
                .ok_or_else(|| Error::InvalidInput(format!("{vs:?} is not a vertex")))
        };
        let mut cycle = Vec::new();
        for i in 1..p {
            let next = if i == p - 1 { 1 } else { i + 1 };
            cycle.push(get(&[v(i)])?);
            cycle.push(get(&[u(i), v(i)])?);
            cycle.push(get(&[u(i)])?);
            cycle.push(get(&[u(i), v(next)])?);
        }
        check_cycle(&self.complex, &cycle)?;
        Ok(cycle)
    }
}

/// Depth-first search for a simple `i`-non-skipping cycle of exactly `len`
/// vertices, starting from its smallest vertex. Gives up after `budget`
/// extension steps.
pub fn find_non_skipping_cycle(
    x: &SimplicialComplex,
    len: usize,
    i: usize,
    budget: u64,
) -> Result<Option<Vec<Vertex>>> {
    if len < 3 {
        return Err(Error::InvalidParams(format!("cycle length {len}")));
    }
    let n = x.face_count(0);
    let adj = |a: usize, b: usize| x.neighbors(a).binary_search(&b).is_ok();
    let skip = |a: usize, b: usize| {
        let d = b - a;
        d.min(len - d)
    };
    let mut steps = 0u64;
    fn extend(
        path: &mut Vec<usize>,
        len: usize,
        ok: &dyn Fn(&[usize], usize) -> bool,
        nbrs: &dyn Fn(usize) -> Vec<usize>,
        steps: &mut u64,
        budget: u64,
    ) -> Option<Vec<usize>> {
        if path.len() == len {
            return Some(path.clone());
        }
        for w in nbrs(*path.last().expect("nonempty")) {
            *steps += 1;
            if *steps > budget {
                return None;
            }
            if w <= path[0] || path.contains(&w) || !ok(path, w) {
                continue;
            }
            path.push(w);
            if let Some(c) = extend(path, len, ok, nbrs, steps, budget) {
                return Some(c);
            }
            path.pop();
        }
        None
    }
    let ok = |path: &[usize], w: usize| {
        let t = path.len();
        for (j, &pj) in path.iter().enumerate().take(t.saturating_sub(1)) {
            let is_adj = adj(pj, w);
            if j == 0 && t == len - 1 {
                if !is_adj {
                    return false;
                }
                continue;
            }
            if is_adj && skip(j, t) > i {
                return false;
            }
        }
        true
    };
    let nbrs = |v: usize| x.neighbors(v).to_vec();
    for s in 0..n {
        let mut path = vec![s];
        if let Some(c) = extend(&mut path, len, &ok, &nbrs, &mut steps, budget) {
            let verts = x.faces(0);
            let cycle: Vec<Vertex> = c.iter().map(|&vi| verts[vi][0]).collect();
            debug_assert!(is_non_skipping(x, &cycle, i).unwrap_or(false));
            return Ok(Some(cycle));
        }
        if steps > budget {
            return Err(Error::SearchSpaceTooLarge(format!("cycle search exceeded {budget} steps")));
        }
    }
    Ok(None)
}

// ---- coloring candidates -------------------------------------------------

/// `[(u=0, v=1), (u=1, v=0)]` with `u` the lower endpoint.
const ANTI: [u64; 2] = [0b10, 0b01];
/// `[(u=1, v=1), (u=0, v=0)]`.
const SAME: [u64; 2] = [0b11, 0b00];

/// Which coloring candidate to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Candidate {
    /// Colors the cycle by parity of cycle distance.
    Even,
    /// Contracts cycle edge `k` and colors the rest by parity.
    Odd { k: usize },
}

fn circular(a: usize, b: usize, n: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(n - d)
}

/// Edge lists of a coloring candidate on a simple cycle, as a 2-assignment
/// on the edges of `x`.
pub fn coloring_candidate(x: &Arc<SimplicialComplex>, cycle: &[Vertex], which: Candidate) -> Result<LAssignment> {
    check_cycle(x, cycle)?;
    let n = cycle.len();
    let pos: HashMap<Vertex, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let parity = |a: usize, b: usize| -> bool {
        match which {
            Candidate::Even => circular(a, b, n) % 2 == 1,
            Candidate::Odd { k } => {
                let c = |i: usize| {
                    let r = (i + n - (k + 1) % n) % n;
                    if r == n - 1 {
                        0
                    } else {
                        r
                    }
                };
                circular(c(a), c(b), n - 1) % 2 == 1
            }
        }
    };
    if let Candidate::Odd { k } = which {
        if k >= n {
            return Err(Error::InvalidParams(format!("edge index {k} on a cycle of length {n}")));
        }
    }
    let lists = x
        .faces(1)
        .iter()
        .map(|e| match (pos.get(&e[0]), pos.get(&e[1])) {
            (Some(&a), Some(&b)) => {
                let glued = matches!(which, Candidate::Odd { k } if {
                    let (s, t) = (k, (k + 1) % n);
                    (a == s && b == t) || (a == t && b == s)
                });
                if glued || !parity(a, b) {
                    SAME.to_vec()
                } else {
                    ANTI.to_vec()
                }
            }
            (Some(_), None) => vec![0b01, 0b00],
            (None, Some(_)) => vec![0b10, 0b00],
            (None, None) => vec![0, 0],
        })
        .collect();
    LAssignment::new(x.clone(), 1, 2, lists)
}

/// Glues cycle edge `j`: that edge becomes `SAME`, and every edge between
/// cycle vertices that skips it swaps `ANTI` and `SAME`.
pub fn glue(a: &LAssignment, cycle: &[Vertex], j: usize) -> Result<LAssignment> {
    check_cycle(&a.base, cycle)?;
    let n = cycle.len();
    if j >= n || a.k != 1 || a.l != 2 {
        return Err(Error::InvalidParams(format!("glue edge {j} needs a 2-assignment on edges")));
    }
    let pos: HashMap<Vertex, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut out = a.clone();
    for (fi, e) in a.base.faces(1).iter().enumerate() {
        let (Some(&p), Some(&q)) = (pos.get(&e[0]), pos.get(&e[1])) else { continue };
        let is_j = (p == j && q == (j + 1) % n) || (q == j && p == (j + 1) % n);
        if is_j {
            out.lists[fi] = SAME.to_vec();
        } else if skipped_edges(n, p, q).contains(&j) {
            out.lists[fi] = if out.lists[fi] == ANTI { SAME.to_vec() } else { ANTI.to_vec() };
        }
    }
    Ok(out)
}

/// Whether `a` satisfies the three clauses of a coloring candidate for `cycle`.
pub fn is_coloring_candidate(a: &LAssignment, cycle: &[Vertex]) -> bool {
    if a.k != 1 || a.l != 2 || check_cycle(&a.base, cycle).is_err() {
        return false;
    }
    let on: std::collections::HashSet<Vertex> = cycle.iter().copied().collect();
    a.base.faces(1).iter().zip(&a.lists).all(|(e, list)| {
        let set = |mut v: Vec<u64>| {
            v.sort_unstable();
            v
        };
        match (on.contains(&e[0]), on.contains(&e[1])) {
            (true, true) => set(list.clone()) == set(ANTI.to_vec()) || set(list.clone()) == set(SAME.to_vec()),
            (true, false) => set(list.clone()) == vec![0b00, 0b01],
            (false, true) => set(list.clone()) == vec![0b00, 0b10],
            (false, false) => *list == [0, 0],
        }
    })
}

// ---- query lower bound on non-skipping cycles -----------------------------

/// Outcome of the exhaustive indistinguishability check on a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundDemo {
    pub cycle_length: usize,
    pub skip: usize,
    /// Query sets of this size (and, by monotonicity, all smaller) were checked.
    pub query_set_size: usize,
    pub query_sets: u64,
    /// Query sets under which every candidate pair is distinguishable.
    pub failures: u64,
    pub even_candidate_agreeing: bool,
}

/// For every set of fewer than `|γ|/i` whole-face queries on the edges of
/// `x`, checks that some pair among the even candidate, the odd candidates,
/// and gluings of the first odd candidate has opposite agreement status and
/// identical answers on every queried edge.
pub fn lower_bound_demo(x: &Arc<SimplicialComplex>, cycle: &[Vertex], i: usize) -> Result<LowerBoundDemo> {
    if i == 0 || !is_non_skipping(x, cycle, i)? {
        return Err(Error::PreconditionUnsatisfiable(format!("cycle is not {i}-non-skipping")));
    }
    let m = x.face_count(1);
    if m > 64 {
        return Err(Error::SearchSpaceTooLarge(format!("{m} edges")));
    }
    let n = cycle.len();
    let even = coloring_candidate(x, cycle, Candidate::Even)?;
    let odd: Vec<LAssignment> = (0..n)
        .map(|k| coloring_candidate(x, cycle, Candidate::Odd { k }))
        .collect::<Result<_>>()?;
    let glued: Vec<LAssignment> = (1..n).map(|j| glue(&odd[0], cycle, j)).collect::<Result<_>>()?;
    let mut inputs = vec![even];
    inputs.extend(odd);
    inputs.extend(glued);
    let status: Vec<bool> = inputs.iter().map(|a| a.is_agreeing()).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for (a, b) in (0..inputs.len()).tuple_combinations() {
        if status[a] != status[b] {
            let diff = (0..m).fold(0u64, |acc, e| acc | ((inputs[a].lists[e] != inputs[b].lists[e]) as u64) << e);
            pairs.push(diff);
        }
    }
    let size = n.div_ceil(i).saturating_sub(1).min(m);
    let mut query_sets = 0;
    let mut failures = 0;
    for q in (0..m).combinations(size) {
        let mask = q.iter().fold(0u64, |acc, &e| acc | 1 << e);
        query_sets += 1;
        if !pairs.iter().any(|d| d & mask == 0) {
            failures += 1;
        }
    }
    Ok(LowerBoundDemo {
        cycle_length: n,
        skip: i,
        query_set_size: size,
        query_sets,
        failures,
        even_candidate_agreeing: status[0],
    })
}

// ---- adversarial l-assignment ----------------------------------------------

/// A non-agreeing `l`-assignment that every `(l−1)`-query adversary can
/// explain with an agreeing one. Slots are 0-based: slot `i` holds `f_i`
/// except on `σ̂`, where the last slot holds the special function `f_l`.
#[derive(Clone, Debug)]
pub struct Adversarial {
    pub assignment: LAssignment,
    pub globals: Vec<u64>,
    pub special: u64,
    pub sigma_hat: usize,
    /// A `(k−1)`-face of `σ̂` on which `f_l` differs from every `f_i`.
    pub witness: Vec<Vertex>,
}

pub fn adversarial_l_assignment(
    x: Arc<SimplicialComplex>,
    k: usize,
    globals: &[u64],
    special: u64,
    sigma_hat: &[Vertex],
) -> Result<Adversarial> {
    let l = globals.len();
    if l < 2 {
        return Err(Error::PreconditionUnsatisfiable("needs at least two list entries".into()));
    }
    if k == 0 || sigma_hat.len() != k + 1 || !x.contains(sigma_hat) {
        return Err(Error::FaceNotInComplex(sigma_hat.to_vec()));
    }
    let sigma_idx = x.face_index(sigma_hat).expect("face");
    let vi = |v: Vertex| x.vertex_index(v).expect("vertex");
    let witness = sigma_hat.iter().copied().combinations(k).find(|sub| {
        let differs = globals
            .iter()
            .all(|&g| sub.iter().any(|&v| ((g ^ special) >> vi(v)) & 1 == 1));
        let has_neighbour = x
            .faces(k as i64)
            .iter()
            .any(|t| t.as_slice() != sigma_hat && sub.iter().all(|v| t.contains(v)));
        differs && has_neighbour
    });
    let Some(witness) = witness else {
        return Err(Error::PreconditionUnsatisfiable(
            "no subface of σ̂ where the special function differs from every global".into(),
        ));
    };
    let mut a = LAssignment::from_globals(x.clone(), k, globals, &vec![Perm::identity(l); x.face_count(k as i64)])?;
    a.lists[sigma_idx][l - 1] = restrict(&x, special, sigma_hat);
    Ok(Adversarial { assignment: a, globals: globals.to_vec(), special, sigma_hat: sigma_idx, witness })
}

impl Adversarial {
    /// The agreeing assignment matching every query in `queries`
    /// (`(face index, slot)` pairs, at most `l − 1` of them).
    pub fn fooling_assignment(&self, queries: &[(usize, usize)]) -> Result<LAssignment> {
        let a = &self.assignment;
        let l = a.l;
        let Some(free) = (0..l).rev().find(|s| queries.iter().all(|q| q.1 != *s)) else {
            return Err(Error::PreconditionUnsatisfiable("every slot is queried".into()));
        };
        let x = &a.base;
        let faces = x.faces(a.k as i64);
        let perms = vec![Perm::identity(l); faces.len()];
        let mut out = LAssignment::from_globals(x.clone(), a.k, &self.globals, &perms)?;
        if free == l - 1 {
            return Ok(out);
        }
        for (fi, f) in faces.iter().enumerate() {
            if fi == self.sigma_hat {
                out.lists[fi] = a.lists[fi].clone();
                out.lists[fi][free] = restrict(x, self.globals[l - 1], f);
            } else {
                out.lists[fi][free] = restrict(x, self.special, f);
            }
        }
        Ok(out)
    }

    /// Checks every `(l−1)`-set of single-entry queries: returns the number
    /// of query sets and how many lacked a matching agreeing assignment.
    pub fn verify_fooling(&self) -> Result<(u64, u64)> {
        let a = &self.assignment;
        let all: Vec<(usize, usize)> = (0..a.lists.len()).cartesian_product(0..a.l).collect();
        let (mut sets, mut bad) = (0u64, 0u64);
        for qs in all.iter().copied().combinations(a.l - 1) {
            sets += 1;
            let f = self.fooling_assignment(&qs)?;
            let matches = qs.iter().all(|&(fi, s)| f.lists[fi][s] == a.lists[fi][s]);
            if !matches || !f.is_agreeing()? {
                bad += 1;
            }
        }
        Ok((sets, bad))
    }
}

// ---- random cochains -------------------------------------------------------

/// Uniformly random `S_l`-valued cochain of dimension `dim`.
pub fn random_cochain<R: Rng + ?Sized>(x: Arc<SimplicialComplex>, dim: i64, l: usize, rng: &mut R) -> Result<Cochain<Perm>> {
    let values = (0..x.face_count(dim)).map(|_| Perm::random(l, rng)).collect();
    Cochain::new(x, dim, Perm::identity(l), values)
}

/// Random coboundary `d_0 g` with its witness `g`.
pub fn random_coboundary<R: Rng + ?Sized>(
    x: Arc<SimplicialComplex>,
    l: usize,
    rng: &mut R,
) -> Result<(Cochain<Perm>, Cochain<Perm>)> {
    let g = random_cochain(x, 0, l, rng)?;
    Ok((g.coboundary()?, g))
}

/// Random cocycle on `R̂_k` built from an independent local witness per
/// core: `f(u, v) = h_c(u)·h_c(v)^{-1}` where `c` is the core of `{u, v}`.
pub fn random_core_cocycle<R: Rng + ?Sized>(rep: &RepresentationComplex, l: usize, rng: &mut R) -> Result<Cochain<Perm>> {
    let r = rep.complex();
    let mut local: HashMap<(usize, Vertex), Perm> = HashMap::new();
    let mut values = Vec::with_capacity(r.face_count(1));
    for (e, uv) in r.faces(1).iter().enumerate() {
        let c = rep.edge_core(e);
        let hu = *local.entry((c, uv[0])).or_insert_with(|| Perm::random(l, rng));
        let hv = *local.entry((c, uv[1])).or_insert_with(|| Perm::random(l, rng));
        values.push(hu.compose(&hv.inverse()));
    }
    Cochain::new(r.clone(), 1, Perm::identity(l), values)
}
