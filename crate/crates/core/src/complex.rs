//! Pure simplicial complexes with exact weights.
//!
//! Faces are strictly sorted vertex lists; orientation is the order on
//! vertex labels. The weight of an `i`-face is the number of maximal faces
//! containing it divided by `C(d+1, i+1) * |X(d)|`, so weights form a
//! probability distribution on every dimension, including the empty face.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::{binomial, ratio, Rational};

pub type Vertex = u32;
pub type Face = Vec<Vertex>;

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    d: usize,
    /// `faces[i + 1]` holds the sorted list of `i`-faces.
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    /// Number of maximal faces containing each face, aligned with `faces`.
    counts: Vec<Vec<u64>>,
    adjacency: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

fn normalize(face: &[Vertex]) -> Result<Face> {
    let mut f = face.to_vec();
    f.sort_unstable();
    if f.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedVertex(face.to_vec()));
    }
    Ok(f)
}

impl SimplicialComplex {
    /// Builds the downward closure of `maximal`. Duplicates are ignored.
    pub fn build<I, F>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[Vertex]>,
    {
        let mut tops = BTreeSet::new();
        for f in maximal {
            tops.insert(normalize(f.as_ref())?);
        }
        let size = match tops.iter().next() {
            Some(f) if !f.is_empty() => f.len(),
            _ => return Err(Error::EmptyComplex),
        };
        if tops.iter().any(|f| f.len() != size) {
            return Err(Error::MixedDimensions);
        }
        let d = size - 1;
        let mut count_maps: Vec<HashMap<Face, u64>> = vec![HashMap::new(); d + 2];
        for top in &tops {
            for r in 0..=size {
                for sub in top.iter().copied().combinations(r) {
                    *count_maps[r].entry(sub).or_insert(0) += 1;
                }
            }
        }
        let mut faces: Vec<Vec<Face>> = Vec::with_capacity(d + 2);
        let mut counts: Vec<Vec<u64>> = Vec::with_capacity(d + 2);
        let mut index = Vec::with_capacity(d + 2);
        for m in count_maps {
            let mut entries: Vec<(Face, u64)> = m.into_iter().collect();
            entries.sort_unstable();
            let idx: HashMap<Face, usize> = entries
                .iter()
                .enumerate()
                .map(|(i, (f, _))| (f.clone(), i))
                .collect();
            counts.push(entries.iter().map(|(_, c)| *c).collect());
            faces.push(entries.into_iter().map(|(f, _)| f).collect());
            index.push(idx);
        }
        let mut adjacency = vec![Vec::new(); faces[1].len()];
        if d >= 1 {
            for e in &faces[2] {
                let a = index[1][&vec![e[0]]];
                let b = index[1][&vec![e[1]]];
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        Ok(Self {
            d,
            faces,
            index,
            counts,
            adjacency,
        })
    }

    /// Top dimension `d`.
    pub fn dim(&self) -> usize {
        self.d
    }

    fn slot(&self, i: i64) -> Result<usize> {
        if i < -1 || i > self.d as i64 {
            return Err(Error::DimensionOutOfRange(i));
        }
        Ok((i + 1) as usize)
    }

    /// The `i`-faces in lexicographic order; empty for out-of-range `i`.
    pub fn faces(&self, i: i64) -> &[Face] {
        match self.slot(i) {
            Ok(s) => &self.faces[s],
            Err(_) => &[],
        }
    }

    pub fn face_count(&self, i: i64) -> usize {
        self.faces(i).len()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.faces[1].iter().map(|f| f[0]).collect()
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.faces[self.d + 1]
    }

    /// Position of `face` among faces of its dimension.
    pub fn face_index(&self, face: &[Vertex]) -> Option<usize> {
        self.index.get(face.len())?.get(face).copied()
    }

    pub fn contains(&self, face: &[Vertex]) -> bool {
        self.face_index(face).is_some()
    }

    /// Index of a vertex among the 0-faces.
    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        self.index[1].get(&vec![v]).copied()
    }

    /// Neighbours of a vertex (by 0-face index) in the 1-skeleton.
    pub fn neighbors(&self, vertex_idx: usize) -> &[usize] {
        &self.adjacency[vertex_idx]
    }

    /// Number of maximal faces containing the `idx`-th face of dimension `i`.
    pub fn containing_count(&self, i: i64, idx: usize) -> u64 {
        self.counts[(i + 1) as usize][idx]
    }

    /// Common denominator of all `i`-face weights: `C(d+1, i+1) * |X(d)|`.
    pub fn weight_denominator(&self, i: i64) -> u64 {
        binomial(self.d as u64 + 1, (i + 1) as u64) * self.maximal_faces().len() as u64
    }

    pub fn weight(&self, face: &[Vertex]) -> Result<Rational> {
        let f = normalize(face)?;
        let idx = self
            .face_index(&f)
            .ok_or_else(|| Error::FaceNotInComplex(f.clone()))?;
        let i = f.len() as i64 - 1;
        Ok(self.weight_at(i, idx))
    }

    pub fn weight_at(&self, i: i64, idx: usize) -> Rational {
        ratio(self.containing_count(i, idx), self.weight_denominator(i))
    }

    /// Sum of weights of a set of same-dimension faces.
    pub fn norm(&self, set: &[Face]) -> Result<Rational> {
        let Some(first) = set.first() else {
            return Ok(crate::rational::zero());
        };
        let size = first.len();
        let mut seen = BTreeSet::new();
        let mut total = 0u64;
        for f in set {
            if f.len() != size {
                return Err(Error::MixedDimensions);
            }
            let f = normalize(f)?;
            let idx = self
                .face_index(&f)
                .ok_or_else(|| Error::FaceNotInComplex(f.clone()))?;
            if seen.insert(idx) {
                total += self.counts[size][idx];
            }
        }
        Ok(ratio(total, self.weight_denominator(size as i64 - 1)))
    }

    /// All `j`-faces containing some member of `set`.
    pub fn containment_up(&self, set: &[Face], j: i64) -> Result<Vec<Face>> {
        let slot = self.slot(j)?;
        let mut targets = Vec::new();
        for f in set {
            let f = normalize(f)?;
            if !self.contains(&f) {
                return Err(Error::FaceNotInComplex(f));
            }
            if f.len() > slot {
                return Err(Error::DimensionOutOfRange(f.len() as i64 - 1));
            }
            targets.push(f);
        }
        Ok(self.faces[slot]
            .iter()
            .filter(|g| targets.iter().any(|f| is_subset(f, g)))
            .cloned()
            .collect())
    }

    /// The link `X_σ = { τ \ σ : σ ⊆ τ ∈ X }` with its own weights.
    pub fn link(&self, sigma: &[Vertex]) -> Result<SimplicialComplex> {
        let s = normalize(sigma)?;
        if !self.contains(&s) {
            return Err(Error::FaceNotInComplex(s));
        }
        if s.len() == self.d + 1 {
            return Err(Error::TopDimensionalFace(s));
        }
        let tops: Vec<Face> = self
            .maximal_faces()
            .iter()
            .filter(|t| is_subset(&s, t))
            .map(|t| difference(t, &s))
            .collect();
        SimplicialComplex::build(tops)
    }

    /// Faces of dimension at most `i`, reweighted with top dimension `i`.
    pub fn skeleton(&self, i: usize) -> Result<SimplicialComplex> {
        if i > self.d {
            return Err(Error::DimensionOutOfRange(i as i64));
        }
        SimplicialComplex::build(self.faces[i + 1].iter())
    }

    /// Draws an `i`-face with probability equal to its weight.
    pub fn sample_face<R: Rng + ?Sized>(&self, i: usize, rng: &mut R) -> Face {
        let tops = self.maximal_faces();
        let top = &tops[rng.gen_range(0..tops.len())];
        let mut picked: Vec<usize> = sample(rng, top.len(), i + 1).into_vec();
        picked.sort_unstable();
        picked.into_iter().map(|p| top[p]).collect()
    }

    /// Exact distribution of [`Self::sample_face`].
    pub fn face_distribution(&self, i: i64) -> Vec<(Face, Rational)> {
        self.faces(i)
            .iter()
            .enumerate()
            .map(|(idx, f)| (f.clone(), self.weight_at(i, idx)))
            .collect()
    }

    /// Whether the 1-skeleton is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.faces[1].len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == n
    }
}

/// `a ⊆ b` for sorted vertex lists.
pub fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// `a \ b` for sorted vertex lists.
pub fn difference(a: &[Vertex], b: &[Vertex]) -> Face {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

/// `a ∩ b` for sorted vertex lists.
pub fn intersection(a: &[Vertex], b: &[Vertex]) -> Face {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// `a ∪ b` for sorted vertex lists.
pub fn union(a: &[Vertex], b: &[Vertex]) -> Face {
    let mut out: Face = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}
