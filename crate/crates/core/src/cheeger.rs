//! Cheeger constants `h_0`, `h_1` of small complexes over a finite group,
//! computed by exhaustive enumeration, and the coboundary-expansion
//! constant `γ` measured over the links that the expansion hypothesis
//! quantifies over.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cochain::{nearest_coboundary, Cochain};
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::rational::{ratio, Rational};

/// Largest number of cochains an enumeration may visit.
pub const ENUMERATION_LIMIT: f64 = 4_194_304.0;

fn guard(base: usize, exp: usize, what: &str) -> Result<()> {
    if (base as f64).powi(exp as i32) > ENUMERATION_LIMIT {
        return Err(Error::SearchSpaceTooLarge(format!("{base}^{exp} {what}")));
    }
    Ok(())
}

/// Calls `visit` with every tuple in `elements^len`.
fn for_each_tuple<G: Group>(elements: &[G], len: usize, mut visit: impl FnMut(&[G])) {
    let mut digits = vec![0usize; len];
    let mut tuple: Vec<G> = vec![elements[0]; len];
    loop {
        visit(&tuple);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            digits[i] += 1;
            if digits[i] < elements.len() {
                tuple[i] = elements[digits[i]];
                break;
            }
            digits[i] = 0;
            tuple[i] = elements[0];
            i += 1;
        }
    }
}

/// `min ‖d_0 f‖ / dist(f, B^0)` over non-constant 0-cochains; `None` when
/// every 0-cochain is constant.
pub fn h0<G: Group>(x: &Arc<SimplicialComplex>, elements: &[G]) -> Result<Option<Rational>> {
    let n = x.face_count(0);
    if n <= 1 || elements.len() <= 1 {
        return Ok(None);
    }
    // The ratio is invariant under right multiplication by a constant, so
    // the first vertex is pinned to the identity.
    guard(elements.len(), n - 1, "0-cochains")?;
    let id = elements[0].identity_like();
    let edges: Vec<(usize, usize, u64)> = x
        .faces(1)
        .iter()
        .enumerate()
        .map(|(i, e)| {
            (
                x.vertex_index(e[0]).expect("vertex"),
                x.vertex_index(e[1]).expect("vertex"),
                x.containing_count(1, i),
            )
        })
        .collect();
    let vw: Vec<u64> = (0..n).map(|i| x.containing_count(0, i)).collect();
    let (eden, vden) = (x.weight_denominator(1), x.weight_denominator(0));
    let mut best: Option<Rational> = None;
    let mut f = vec![id; n];
    for_each_tuple(elements, n - 1, |rest| {
        f[1..].copy_from_slice(rest);
        let num: u64 = edges.iter().filter(|(a, b, _)| f[*a] != f[*b]).map(|e| e.2).sum();
        let dist = elements
            .iter()
            .map(|c| (0..n).filter(|&v| f[v] != *c).map(|v| vw[v]).sum::<u64>())
            .min()
            .expect("nonempty group");
        if dist == 0 {
            return;
        }
        let r = ratio(num, eden) / ratio(dist, vden);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    });
    Ok(best)
}

/// Edges of the 1-skeleton split into a breadth-first spanning forest and
/// the remaining edges.
fn spanning_split(x: &SimplicialComplex) -> (Vec<usize>, Vec<usize>) {
    let n = x.face_count(0);
    let mut seen = vec![false; n];
    let mut tree = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = std::collections::VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for &v in x.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    let (a, b) = (x.faces(0)[u][0], x.faces(0)[v][0]);
                    let e = if a < b { [a, b] } else { [b, a] };
                    tree.push(x.face_index(&e).expect("edge"));
                    queue.push_back(v);
                }
            }
        }
    }
    tree.sort_unstable();
    let rest = (0..x.face_count(1)).filter(|i| tree.binary_search(i).is_err()).collect();
    (tree, rest)
}

/// Visits every 1-cochain that is the identity on a spanning forest. Every
/// 1-cochain is gauge-equivalent to one of these, and both `‖d_1 f‖` and
/// distances to `B^1` or `Z^1` are gauge invariant.
fn for_each_gauge_fixed<G: Group>(
    x: &Arc<SimplicialComplex>,
    elements: &[G],
    mut visit: impl FnMut(&Cochain<G>),
) -> Result<()> {
    let (_, rest) = spanning_split(x);
    guard(elements.len(), rest.len(), "gauge-fixed 1-cochains")?;
    let id = elements[0].identity_like();
    let mut f = Cochain::identity(x.clone(), 1, id)?;
    for_each_tuple(elements, rest.len(), |vals| {
        for (&e, &g) in rest.iter().zip(vals) {
            f.set_at(e, g);
        }
        visit(&f);
    });
    Ok(())
}

fn triangle_violation_count<G: Group>(f: &Cochain<G>) -> u64 {
    let x = f.base();
    x.faces(2)
        .iter()
        .enumerate()
        .filter(|(_, t)| !f.triangle_product(t).is_identity())
        .map(|(i, _)| x.containing_count(2, i))
        .sum()
}

/// `min ‖d_1 f‖ / dist(f, B^1)` over 1-cochains outside `B^1`.
pub fn h1_coboundary<G: Group>(x: &Arc<SimplicialComplex>, elements: &[G]) -> Result<Option<Rational>> {
    if x.face_count(1) == 0 {
        return Ok(None);
    }
    let tden = x.weight_denominator(2).max(1);
    let eden = x.weight_denominator(1);
    let mut best: Option<Rational> = None;
    let mut err = None;
    for_each_gauge_fixed(x, elements, |f| {
        if err.is_some() {
            return;
        }
        let dist = match nearest_coboundary(f, elements) {
            Ok((_, c)) => c,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        if dist == 0 {
            return;
        }
        let r = ratio(triangle_violation_count(f), tden) / ratio(dist, eden);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// `min ‖d_1 f‖ / dist(f, Z^1)` over 1-cochains outside `Z^1`.
pub fn h1_cocycle<G: Group>(x: &Arc<SimplicialComplex>, elements: &[G]) -> Result<Option<Rational>> {
    let m = x.face_count(1);
    if m == 0 {
        return Ok(None);
    }
    guard(elements.len(), m, "1-cochains")?;
    let id = elements[0].identity_like();
    let mut cocycles: Vec<Vec<G>> = Vec::new();
    let mut f = Cochain::identity(x.clone(), 1, id)?;
    for_each_tuple(elements, m, |vals| {
        for (e, &g) in vals.iter().enumerate() {
            f.set_at(e, g);
        }
        if f.is_cocycle() {
            cocycles.push(vals.to_vec());
        }
    });
    let w: Vec<u64> = (0..m).map(|i| x.containing_count(1, i)).collect();
    let tden = x.weight_denominator(2).max(1);
    let eden = x.weight_denominator(1);
    let mut best: Option<Rational> = None;
    for_each_gauge_fixed(x, elements, |f| {
        let num = triangle_violation_count(f);
        if num == 0 {
            return;
        }
        let dist = cocycles
            .iter()
            .map(|z| {
                (0..m)
                    .filter(|&e| f.value_at(e) != z[e])
                    .map(|e| w[e])
                    .sum::<u64>()
            })
            .min()
            .expect("identity is a cocycle");
        let r = ratio(num, tden) / ratio(dist, eden);
        if best.as_ref().is_none_or(|b| r < *b) {
            best = Some(r);
        }
    })?;
    Ok(best)
}

/// Cheeger data of one link.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LinkExpansion {
    pub face: Face,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub h0: Option<Rational>,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub h1_coboundary: Option<Rational>,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub h1_cocycle: Option<Rational>,
}

/// Expansion measured over the links of all faces of dimension below `d − 2`
/// (the whole complex is the link of the empty face, and is always used).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GammaReport {
    pub links: Vec<LinkExpansion>,
    /// `min(h_0, h_1)` with `h_1` measured against coboundaries.
    #[serde(with = "crate::rational::serde_str")]
    pub gamma: Rational,
    /// Same with `h_1` measured against cocycles, when computable.
    #[serde(with = "crate::rational::serde_opt_str")]
    pub gamma_cocycle: Option<Rational>,
}

/// Measures `γ`. Vacuous constants (no admissible cochain) are skipped.
pub fn measure_gamma<G: Group>(x: &SimplicialComplex, elements: &[G]) -> Result<GammaReport> {
    let d = x.dim() as i64;
    let mut links = Vec::new();
    for i in -1..=(d - 3).max(-1) {
        for s in x.faces(i) {
            let l = Arc::new(x.link(s)?);
            let h1z = match h1_cocycle(&l, elements) {
                Ok(v) => v,
                Err(Error::SearchSpaceTooLarge(_)) => None,
                Err(e) => return Err(e),
            };
            links.push(LinkExpansion {
                face: s.clone(),
                h0: h0(&l, elements)?,
                h1_coboundary: h1_coboundary(&l, elements)?,
                h1_cocycle: h1z,
            });
        }
    }
    let min_of = |pick: &dyn Fn(&LinkExpansion) -> Vec<Option<Rational>>| {
        links
            .iter()
            .flat_map(pick)
            .flatten()
            .min()
    };
    let gamma = min_of(&|l| vec![l.h0.clone(), l.h1_coboundary.clone()])
        .ok_or_else(|| Error::InvalidInput("no admissible cochains for expansion".into()))?;
    let gamma_cocycle = min_of(&|l| vec![l.h0.clone(), l.h1_cocycle.clone()]);
    Ok(GammaReport {
        links,
        gamma,
        gamma_cocycle,
    })
}
