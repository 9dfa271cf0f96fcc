//! Near covers `Y_φ` built from an `S_l`-valued 1-cochain, the cover axioms,
//! lifts of walks, and the splitting of coboundary covers into copies.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::cochain::Cochain;
use crate::complex::{is_subset, Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::group::Perm;

/// A cover vertex `[v, s]`.
pub type Sheeted = (Vertex, usize);

#[derive(Clone, Debug)]
pub struct NearCover {
    base: Arc<SimplicialComplex>,
    l: usize,
    phi: Cochain<Perm>,
    /// Nonempty faces per dimension, each a list of sheeted vertices sorted
    /// by base vertex.
    faces: Vec<BTreeSet<Vec<Sheeted>>>,
}

/// Lifts of a base face: one per starting sheet whose induced sheets are
/// pairwise consistent.
fn lifts(phi: &Cochain<Perm>, l: usize, sigma: &[Vertex]) -> Vec<Vec<Sheeted>> {
    let mut out = Vec::new();
    for s0 in 0..l {
        let sheets: Vec<usize> = sigma
            .iter()
            .map(|&v| if v == sigma[0] { s0 } else { phi.edge(v, sigma[0]).expect("edge").apply(s0) })
            .collect();
        let consistent = (0..sigma.len()).all(|i| {
            (0..sigma.len()).all(|j| i == j || sheets[i] == phi.edge(sigma[i], sigma[j]).expect("edge").apply(sheets[j]))
        });
        if consistent {
            out.push(sigma.iter().copied().zip(sheets).collect());
        }
    }
    out
}

impl NearCover {
    /// `Y_φ`: vertices `[v, s]`, and a face over `σ` for every choice of
    /// sheets with `s_i = φ(v_i, v_j) s_j` for all pairs.
    pub fn from_cochain(phi: &Cochain<Perm>) -> Result<Self> {
        if phi.dim() != 1 {
            return Err(Error::DimensionOutOfRange(phi.dim()));
        }
        let base = phi.base().clone();
        let l = phi.group_identity().len();
        let mut faces = Vec::new();
        for i in 0..=base.dim() as i64 {
            let mut level = BTreeSet::new();
            for sigma in base.faces(i) {
                level.extend(lifts(phi, l, sigma));
            }
            faces.push(level);
        }
        Ok(Self {
            base,
            l,
            phi: phi.clone(),
            faces,
        })
    }

    pub fn base(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn sheets(&self) -> usize {
        self.l
    }

    pub fn cochain(&self) -> &Cochain<Perm> {
        &self.phi
    }

    /// Nonempty faces of dimension `i`.
    pub fn faces(&self, i: usize) -> Vec<Vec<Sheeted>> {
        self.faces.get(i).map(|s| s.iter().cloned().collect()).unwrap_or_default()
    }

    pub fn face_count(&self, i: usize) -> usize {
        self.faces.get(i).map_or(0, |s| s.len())
    }

    fn all_faces(&self) -> impl Iterator<Item = &Vec<Sheeted>> {
        self.faces.iter().flatten()
    }

    /// Checks the three cover axioms directly: the projection is simplicial
    /// and dimension preserving, it maps every up-set bijectively onto the
    /// up-set of the image, and every nonempty base face has exactly `l`
    /// preimages.
    pub fn is_genuine(&self) -> bool {
        let project = |t: &[Sheeted]| -> Face { t.iter().map(|p| p.0).collect() };
        // Projection.
        for t in self.all_faces() {
            let p = project(t);
            let distinct: BTreeSet<_> = p.iter().collect();
            if distinct.len() != p.len() || !self.base.contains(&p) {
                return false;
            }
        }
        // Exactly l preimages.
        let mut preimages: BTreeMap<Face, usize> = BTreeMap::new();
        for t in self.all_faces() {
            *preimages.entry(project(t)).or_insert(0) += 1;
        }
        for i in 0..=self.base.dim() as i64 {
            for s in self.base.faces(i) {
                if preimages.get(s).copied().unwrap_or(0) != self.l {
                    return false;
                }
            }
        }
        // Up-sets map bijectively.
        let all: Vec<&Vec<Sheeted>> = self.all_faces().collect();
        for t in &all {
            let up: Vec<Face> = all
                .iter()
                .filter(|u| t.iter().all(|v| u.contains(v)))
                .map(|u| project(u))
                .collect();
            let image: BTreeSet<Face> = up.iter().cloned().collect();
            let target: BTreeSet<Face> = (0..=self.base.dim() as i64)
                .flat_map(|i| self.base.faces(i).iter())
                .filter(|s| is_subset(&project(t), s))
                .cloned()
                .collect();
            if image.len() != up.len() || image != target {
                return false;
            }
        }
        true
    }

    /// The lift of a base walk starting on `start_sheet`.
    pub fn lift_path(&self, path: &[Vertex], start_sheet: usize) -> Result<Vec<Sheeted>> {
        if !self.is_genuine() {
            return Err(Error::NotGenuine);
        }
        let Some(&first) = path.first() else {
            return Ok(Vec::new());
        };
        if start_sheet >= self.l || self.base.vertex_index(first).is_none() {
            return Err(Error::InvalidInput("bad starting point".into()));
        }
        let mut out = vec![(first, start_sheet)];
        for w in path.windows(2) {
            let g = self
                .phi
                .edge(w[1], w[0])
                .ok_or_else(|| Error::NotAnEdge(vec![w[0], w[1]]))?;
            let s = g.apply(out.last().expect("nonempty").1);
            out.push((w[1], s));
        }
        Ok(out)
    }

    /// Splits a coboundary cover `φ = d_0 g` into the copies
    /// `Y_j = { [v, g(v)(j)] }`.
    pub fn decompose(&self, g: &Cochain<Perm>) -> Result<CoverDecomposition> {
        if g.dim() != 0 || g.coboundary()? != self.phi {
            return Err(Error::NotACoboundary);
        }
        let base = &self.base;
        let mut copies = Vec::with_capacity(self.l);
        for j in 0..self.l {
            let sheet = |v: Vertex| g.value_at(base.vertex_index(v).expect("vertex")).apply(j);
            let mut faces = BTreeSet::new();
            for i in 0..=base.dim() as i64 {
                for s in base.faces(i) {
                    faces.insert(s.iter().map(|&v| (v, sheet(v))).collect::<Vec<_>>());
                }
            }
            copies.push(faces);
        }
        Ok(CoverDecomposition { copies })
    }

    /// Whether `decomposition` consists of pairwise disjoint copies of the
    /// base whose union is the whole cover.
    pub fn verify_decomposition(&self, decomposition: &CoverDecomposition) -> bool {
        let own: BTreeSet<Vec<Sheeted>> = self.all_faces().cloned().collect();
        let mut union = BTreeSet::new();
        let mut seen_vertices = BTreeSet::new();
        for copy in &decomposition.copies {
            // Isomorphic to the base through the projection.
            let projected: BTreeSet<Face> = copy.iter().map(|t| t.iter().map(|p| p.0).collect()).collect();
            let base_faces: BTreeSet<Face> = (0..=self.base.dim() as i64)
                .flat_map(|i| self.base.faces(i).iter().cloned())
                .collect();
            if projected != base_faces || projected.len() != copy.len() {
                return false;
            }
            for t in copy {
                if !own.contains(t) {
                    return false;
                }
                if t.len() == 1 && !seen_vertices.insert(t[0]) {
                    return false;
                }
                union.insert(t.clone());
            }
        }
        union == own
    }
}

#[derive(Clone, Debug)]
pub struct CoverDecomposition {
    /// Faces of each copy, as sheeted vertex lists.
    pub copies: Vec<BTreeSet<Vec<Sheeted>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Perm;
    use itertools::Itertools;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn complete(n: u32, d: usize) -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::build((0..n).combinations(d + 1)).unwrap())
    }

    fn swap_on(x: &Arc<SimplicialComplex>, edge: &[Vertex]) -> Cochain<Perm> {
        let id = Perm::identity(2);
        Cochain::from_fn(x.clone(), 1, id, |e| if e == edge { Perm::swap(2, 0, 1) } else { id }).unwrap()
    }

    #[test]
    fn identity_gives_disjoint_copies() {
        let x = complete(4, 2);
        let phi = Cochain::identity(x.clone(), 1, Perm::identity(3)).unwrap();
        let y = NearCover::from_cochain(&phi).unwrap();
        assert_eq!(y.face_count(0), 12);
        assert_eq!(y.face_count(2), 12);
        assert!(y.is_genuine());
    }

    #[test]
    fn swapped_triangle_is_a_six_cycle() {
        let x = Arc::new(SimplicialComplex::build([[1, 2, 3]]).unwrap());
        let y = NearCover::from_cochain(&swap_on(&x, &[1, 3])).unwrap();
        assert_eq!(y.face_count(0), 6);
        assert_eq!(y.face_count(1), 6);
        assert_eq!(y.face_count(2), 0);
        assert!(!y.is_genuine());
        // The edges form one cycle through all six vertices.
        let edges = y.faces(1);
        let mut deg: BTreeMap<Sheeted, usize> = BTreeMap::new();
        for e in &edges {
            for v in e {
                *deg.entry(*v).or_insert(0) += 1;
            }
        }
        assert!(deg.values().all(|&d| d == 2));
        let walk = [1, 2, 3, 1];
        let x_graph = Arc::new(SimplicialComplex::build([[1, 2], [2, 3], [1, 3]]).unwrap());
        let yg = NearCover::from_cochain(&swap_on(&x_graph, &[1, 3])).unwrap();
        assert!(yg.is_genuine());
        let lift = yg.lift_path(&walk, 0).unwrap();
        assert_eq!(lift.last().unwrap(), &(1, 1));
        assert_eq!(yg.lift_path(&[], 0).unwrap(), vec![]);
        assert_eq!(y.lift_path(&walk, 0).unwrap_err(), Error::NotGenuine);
    }

    #[test]
    fn genuine_iff_cocycle_exhaustively_on_small_bases() {
        let bases = [
            complete(4, 2),
            Arc::new(SimplicialComplex::build([[1, 2, 3]]).unwrap()),
            Arc::new(SimplicialComplex::build([[1, 2, 3], [2, 3, 4]]).unwrap()),
        ];
        for x in bases {
            let m = x.face_count(1);
            for mask in 0u32..(1 << m) {
                let phi = Cochain::new(
                    x.clone(),
                    1,
                    Perm::identity(2),
                    (0..m).map(|i| if mask >> i & 1 == 1 { Perm::swap(2, 0, 1) } else { Perm::identity(2) }).collect(),
                )
                .unwrap();
                let y = NearCover::from_cochain(&phi).unwrap();
                assert_eq!(y.is_genuine(), phi.is_cocycle());
            }
        }
    }

    #[test]
    fn coboundary_covers_split_and_lift_closed_walks() {
        let x = complete(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for l in [2, 3] {
            for _ in 0..10 {
                let g = Cochain::from_fn(x.clone(), 0, Perm::identity(l), |_| Perm::random(l, &mut rng)).unwrap();
                let phi = g.coboundary().unwrap();
                let y = NearCover::from_cochain(&phi).unwrap();
                assert!(y.is_genuine());
                let dec = y.decompose(&g).unwrap();
                assert_eq!(dec.copies.len(), l);
                assert!(y.verify_decomposition(&dec));
                let mut walk = vec![0u32];
                for _ in 0..6 {
                    let last = *walk.last().unwrap();
                    let next = loop {
                        let v = rng.gen_range(0..5);
                        if v != last {
                            break v;
                        }
                    };
                    walk.push(next);
                }
                if *walk.last().unwrap() != 0 {
                    walk.push(0);
                }
                let s = rng.gen_range(0..l);
                let lift = y.lift_path(&walk, s).unwrap();
                assert_eq!(lift.last().unwrap().1, s);
            }
        }
        let phi = swap_on(&x, &[0, 1]);
        let y = NearCover::from_cochain(&phi).unwrap();
        let g = Cochain::identity(x.clone(), 0, Perm::identity(2)).unwrap();
        assert_eq!(y.decompose(&g).unwrap_err(), Error::NotACoboundary);
    }
}
