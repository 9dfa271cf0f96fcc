//! F_2 chains, the boundary operator, skipping chords of cycles, and an
//! exhaustive search for minimal non-bounding 1-cycles.

use std::collections::BTreeSet;

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// A set of `dim`-faces, read as an F_2 chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Chain {
    pub dim: i64,
    pub faces: BTreeSet<Face>,
}

impl F2Chain {
    pub fn new(dim: i64, faces: impl IntoIterator<Item = Face>) -> Self {
        let mut set = BTreeSet::new();
        for f in faces {
            // Adding a face twice cancels it.
            if !set.insert(f.clone()) {
                set.remove(&f);
            }
        }
        F2Chain { dim, faces: set }
    }

    pub fn is_zero(&self) -> bool {
        self.faces.is_empty()
    }
}

/// Mod-2 boundary: every codimension-1 subface counted with multiplicity.
pub fn boundary(chain: &F2Chain) -> F2Chain {
    let mut out = BTreeSet::new();
    for f in &chain.faces {
        for skip in 0..f.len() {
            let sub: Face = f
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, v)| *v)
                .collect();
            if !out.insert(sub.clone()) {
                out.remove(&sub);
            }
        }
    }
    F2Chain {
        dim: chain.dim - 1,
        faces: out,
    }
}

fn edge(a: Vertex, b: Vertex) -> Face {
    if a < b {
        vec![a, b]
    } else {
        vec![b, a]
    }
}

/// Validates that `cycle` is a simple closed walk in the 1-skeleton.
pub fn check_cycle(x: &SimplicialComplex, cycle: &[Vertex]) -> Result<()> {
    let n = cycle.len();
    if n < 3 {
        return Err(Error::NotACycle(format!("length {n} is below 3")));
    }
    let distinct: BTreeSet<_> = cycle.iter().collect();
    if distinct.len() != n {
        return Err(Error::NotACycle("repeated vertex".into()));
    }
    for t in 0..n {
        let e = edge(cycle[t], cycle[(t + 1) % n]);
        if !x.contains(&e) {
            return Err(Error::NotACycle(format!("{e:?} is not an edge")));
        }
    }
    Ok(())
}

/// Indices `t` of cycle edges `{γ_t, γ_{t+1}}` skipped by the chord
/// `{γ_a, γ_b}`: those on a shortest arc between the endpoints (both arcs
/// when they tie).
pub fn skipped_edges(n: usize, a: usize, b: usize) -> Vec<usize> {
    let (a, b) = (a.min(b), a.max(b));
    let forward = b - a;
    let backward = n - forward;
    let mut out = Vec::new();
    if forward <= backward {
        out.extend(a..b);
    }
    if backward <= forward {
        out.extend((b..n).chain(0..a));
    }
    out.sort_unstable();
    out
}

/// Chords of the cycle present in `x`, as position pairs.
pub fn chords(x: &SimplicialComplex, cycle: &[Vertex]) -> Vec<(usize, usize)> {
    let n = cycle.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 2..n {
            if a == 0 && b == n - 1 {
                continue;
            }
            if x.contains(&edge(cycle[a], cycle[b])) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Whether every chord of `cycle` skips at most `i` cycle edges.
pub fn is_non_skipping(x: &SimplicialComplex, cycle: &[Vertex], i: usize) -> Result<bool> {
    check_cycle(x, cycle)?;
    let n = cycle.len();
    Ok(chords(x, cycle)
        .into_iter()
        .all(|(a, b)| skipped_edges(n, a, b).len() <= i))
}

/// Largest number of edges in an exhaustive homology search.
pub const MAX_SEARCH_EDGES: usize = 20;

/// A minimum-size 1-cycle that is not a boundary, found by scanning all
/// edge subsets. Ties are broken by the smallest edge bitmask.
pub fn minimal_nonbounding_cycle(x: &SimplicialComplex) -> Result<Option<F2Chain>> {
    let edges = x.faces(1);
    let m = edges.len();
    if m > MAX_SEARCH_EDGES {
        return Err(Error::SearchSpaceTooLarge(format!("{m} edges")));
    }
    let verts = x.faces(0);
    let nv = verts.len();
    let mut vert_mask = vec![0u128; m];
    for (i, e) in edges.iter().enumerate() {
        let a = x.vertex_index(e[0]).expect("vertex");
        let b = x.vertex_index(e[1]).expect("vertex");
        if a >= 128 || b >= 128 {
            return Err(Error::SearchSpaceTooLarge(format!("{nv} vertices")));
        }
        vert_mask[i] = (1u128 << a) | (1u128 << b);
    }
    // XOR basis of the boundaries of triangles, keyed by highest set bit.
    let mut basis = [0u32; 32];
    for t in x.faces(2) {
        let mut v = 0u32;
        for (p, q) in [(0, 1), (1, 2), (0, 2)] {
            v |= 1 << x.face_index(&[t[p], t[q]]).expect("edge");
        }
        for bit in (0..m).rev() {
            if v >> bit & 1 == 0 {
                continue;
            }
            if basis[bit] == 0 {
                basis[bit] = v;
                break;
            }
            v ^= basis[bit];
        }
    }
    let reduces_to_zero = |mut v: u32| {
        for bit in (0..m).rev() {
            if v >> bit & 1 == 1 {
                if basis[bit] == 0 {
                    return false;
                }
                v ^= basis[bit];
            }
        }
        true
    };
    let mut best: Option<u32> = None;
    for mask in 1u32..(1u32 << m) {
        if let Some(b) = best {
            if mask.count_ones() >= b.count_ones() {
                continue;
            }
        }
        let mut bd = 0u128;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            bd ^= vert_mask[i];
            rest &= rest - 1;
        }
        if bd == 0 && !reduces_to_zero(mask) {
            best = Some(mask);
        }
    }
    Ok(best.map(|mask| {
        F2Chain::new(
            1,
            (0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i].clone()),
        )
    }))
}

/// Whether a 1-chain lies in the image of the boundary from 2-chains.
pub fn is_boundary(x: &SimplicialComplex, chain: &F2Chain) -> Result<bool> {
    let edges = x.faces(1);
    if edges.len() > MAX_SEARCH_EDGES {
        return Err(Error::SearchSpaceTooLarge(format!("{} edges", edges.len())));
    }
    let tris = x.faces(2);
    if tris.len() > 24 {
        return Err(Error::SearchSpaceTooLarge(format!("{} triangles", tris.len())));
    }
    for mask in 0u32..(1u32 << tris.len()) {
        let c = F2Chain::new(
            2,
            (0..tris.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| tris[i].clone()),
        );
        if boundary(&c).faces == chain.faces {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Orders the edges of a connected 2-regular chain as a vertex cycle.
pub fn chain_to_cycle(chain: &F2Chain) -> Option<Vec<Vertex>> {
    let edges: Vec<&Face> = chain.faces.iter().collect();
    let first = edges.first()?;
    let mut cycle = vec![first[0], first[1]];
    let mut used = vec![false; edges.len()];
    used[0] = true;
    loop {
        let last = *cycle.last().expect("nonempty");
        let next = edges.iter().enumerate().find(|(i, e)| !used[*i] && e.contains(&last));
        match next {
            Some((i, e)) => {
                used[i] = true;
                let other = if e[0] == last { e[1] } else { e[0] };
                if other == cycle[0] {
                    break;
                }
                cycle.push(other);
            }
            None => return None,
        }
    }
    (used.iter().all(|u| *u) && cycle.len() == edges.len()).then_some(cycle)
}

/// Maximum number of chain edges meeting at a vertex.
pub fn max_degree(chain: &F2Chain) -> usize {
    let mut deg = std::collections::BTreeMap::new();
    for e in &chain.faces {
        for v in e {
            *deg.entry(*v).or_insert(0usize) += 1;
        }
    }
    deg.values().copied().max().unwrap_or(0)
}

/// The wheel: an 8-cycle on `0..8` with centre `8` and the fan triangles.
pub fn wheel_complex() -> SimplicialComplex {
    SimplicialComplex::build((0..8u32).map(|i| vec![i, (i + 1) % 8, 8])).expect("wheel")
}
