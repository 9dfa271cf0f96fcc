//! JSON formats for complexes, cochains, `l`-assignments, and face functions.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::assignment::LAssignment;
use crate::cochain::Cochain;
use crate::complex::{Face, SimplicialComplex};
use crate::direct_sum::FaceFunction;
use crate::error::{Error, Result};
use crate::group::{Bit, Perm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub d: usize,
    pub maximal_faces: Vec<Face>,
}

impl ComplexJson {
    pub fn from_complex(x: &SimplicialComplex) -> Self {
        Self { d: x.dim(), maximal_faces: x.maximal_faces().to_vec() }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let x = SimplicialComplex::build(&self.maximal_faces)?;
        if x.dim() != self.d {
            return Err(Error::InvalidInput(format!("declared d={} but faces have d={}", self.d, x.dim())));
        }
        Ok(x)
    }
}

/// Coefficient group of a serialized cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    #[serde(rename = "S_l")]
    Symmetric,
    #[serde(rename = "F2")]
    F2,
}

/// A group element: a one-line permutation or an `F_2` bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Perm(Vec<usize>),
    Bit(u8),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub dim: i64,
    pub coefficients: Coefficients,
    pub l: usize,
    pub values: Vec<(Face, Element)>,
}

impl CochainJson {
    pub fn from_perm(f: &Cochain<Perm>) -> Self {
        let faces = f.base().faces(f.dim());
        Self {
            dim: f.dim(),
            coefficients: Coefficients::Symmetric,
            l: f.group_identity().len(),
            values: faces.iter().zip(f.values()).map(|(s, p)| (s.clone(), Element::Perm(p.images()))).collect(),
        }
    }

    pub fn from_bit(f: &Cochain<Bit>) -> Self {
        let faces = f.base().faces(f.dim());
        Self {
            dim: f.dim(),
            coefficients: Coefficients::F2,
            l: 2,
            values: faces.iter().zip(f.values()).map(|(s, b)| (s.clone(), Element::Bit(b.0 as u8))).collect(),
        }
    }

    /// Decodes onto `base`; faces missing from the file get the identity.
    pub fn to_perm(&self, base: Arc<SimplicialComplex>) -> Result<Cochain<Perm>> {
        if self.coefficients != Coefficients::Symmetric {
            return Err(Error::InvalidInput("expected S_l coefficients".into()));
        }
        let mut f = Cochain::identity(base.clone(), self.dim, Perm::identity(self.l))?;
        for (face, e) in &self.values {
            let Element::Perm(images) = e else {
                return Err(Error::InvalidInput(format!("{e:?} is not a permutation")));
            };
            let p = Perm::from_slice(images)?;
            if p.len() != self.l {
                return Err(Error::InvalidInput(format!("{images:?} is not in S_{}", self.l)));
            }
            let idx = face_idx(&base, self.dim, face)?;
            f.set_at(idx, p);
        }
        Ok(f)
    }

    pub fn to_bit(&self, base: Arc<SimplicialComplex>) -> Result<Cochain<Bit>> {
        if self.coefficients != Coefficients::F2 {
            return Err(Error::InvalidInput("expected F2 coefficients".into()));
        }
        let mut f = Cochain::identity(base.clone(), self.dim, Bit(false))?;
        for (face, e) in &self.values {
            let b = match e {
                Element::Bit(b @ 0..=1) => *b == 1,
                _ => return Err(Error::InvalidInput(format!("{e:?} is not a bit"))),
            };
            let idx = face_idx(&base, self.dim, face)?;
            f.set_at(idx, Bit(b));
        }
        Ok(f)
    }
}

fn face_idx(base: &SimplicialComplex, dim: i64, face: &[u32]) -> Result<usize> {
    if face.len() as i64 != dim + 1 {
        return Err(Error::InvalidInput(format!("{face:?} is not a {dim}-face")));
    }
    base.face_index(face).ok_or_else(|| Error::FaceNotInComplex(face.to_vec()))
}

fn to_bits(mask: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((mask >> i) & 1) as u8).collect()
}

fn from_bits(bits: &[u8]) -> Result<u64> {
    bits.iter().enumerate().try_fold(0u64, |m, (i, &b)| match b {
        0 | 1 => Ok(m | (b as u64) << i),
        _ => Err(Error::InvalidInput(format!("{b} is not a bit"))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLists {
    pub face: Face,
    pub lists: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LAssignmentJson {
    pub k: usize,
    pub l: usize,
    pub faces: Vec<FaceLists>,
}

impl LAssignmentJson {
    pub fn from_assignment(a: &LAssignment) -> Self {
        Self {
            k: a.k,
            l: a.l,
            faces: a
                .faces()
                .iter()
                .zip(&a.lists)
                .map(|(f, list)| FaceLists { face: f.clone(), lists: list.iter().map(|&m| to_bits(m, f.len())).collect() })
                .collect(),
        }
    }

    /// Every `k`-face of `base` must appear exactly once.
    pub fn to_assignment(&self, base: Arc<SimplicialComplex>) -> Result<LAssignment> {
        let n = base.face_count(self.k as i64);
        let mut lists: Vec<Option<Vec<u64>>> = vec![None; n];
        for fl in &self.faces {
            let idx = face_idx(&base, self.k as i64, &fl.face)?;
            if fl.lists.iter().any(|b| b.len() != fl.face.len()) {
                return Err(Error::InvalidInput(format!("lists on {:?} need one bit per vertex", fl.face)));
            }
            let list = fl.lists.iter().map(|b| from_bits(b)).collect::<Result<Vec<_>>>()?;
            if lists[idx].replace(list).is_some() {
                return Err(Error::InvalidInput(format!("{:?} appears twice", fl.face)));
            }
        }
        let lists = lists
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::InvalidInput(format!("{:?} has no lists", base.faces(self.k as i64)[i]))))
            .collect::<Result<Vec<_>>>()?;
        LAssignment::new(base, self.k, self.l, lists)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceFunctionJson {
    pub k_minus_1_faces: Vec<Face>,
    pub values: Vec<u8>,
}

impl FaceFunctionJson {
    pub fn from_function(f: &FaceFunction) -> Self {
        Self {
            k_minus_1_faces: f.base.faces(f.k as i64 - 1).to_vec(),
            values: f.values.iter().map(|&b| b as u8).collect(),
        }
    }

    /// `k` is the common face size; every `(k−1)`-face must appear once.
    pub fn to_function(&self, base: Arc<SimplicialComplex>) -> Result<FaceFunction> {
        if self.k_minus_1_faces.len() != self.values.len() {
            return Err(Error::InvalidInput("faces and values differ in length".into()));
        }
        let k = self.k_minus_1_faces.first().map(Vec::len).ok_or(Error::EmptyComplex)?;
        let n = base.face_count(k as i64 - 1);
        let mut values: Vec<Option<bool>> = vec![None; n];
        for (face, &b) in self.k_minus_1_faces.iter().zip(&self.values) {
            let idx = face_idx(&base, k as i64 - 1, face)?;
            if b > 1 || values[idx].replace(b == 1).is_some() {
                return Err(Error::InvalidInput(format!("bad or repeated entry for {face:?}")));
            }
        }
        let values = values
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidInput("every (k−1)-face needs a value".into()))?;
        FaceFunction::new(base, k, values)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_complex(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    read_json::<ComplexJson>(path)?.to_complex()
}
