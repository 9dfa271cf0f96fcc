//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Every quantity the library computes is compared against a value derived
//! independently here (closed forms, direct enumeration, brute force).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::Rng;

use listagree::assignment::{random_agreeing, LAssignment};
use listagree::cheeger::measure_gamma;
use listagree::cochain::{nearest_coboundary, Cochain};
use listagree::covers::NearCover;
use listagree::direct_sum::{direct_sum_test, eval_direct_sum, FaceFunction};
use listagree::generators::{
    adversarial_l_assignment, complete_complex, coloring_candidate, cycle_cone, cycle_with_pendants,
    find_non_skipping_cycle, glue, graph, random_coboundary, random_cochain, spherical_building, Candidate,
};
use listagree::homology::is_non_skipping;
use listagree::list_agreement::{exhaustive, soundness_lower_bound, soundness_profile, Mode};
use listagree::rational::{binomial, int, ratio, to_string, zero, Rational};
use listagree::representation::{coboundary_test_constant, BinaryView, RepresentationComplex};
use listagree::sampling::trial_rng;
use listagree::{Face, Perm, SimplicialComplex, Vertex};

type Outcome = Result<String, String>;

/// Monte Carlo tolerance, in binomial standard deviations.
const SIGMAS: f64 = 3.0;
const SAMPLER_DRAWS: u64 = 60_000;

fn complete(n: usize, d: usize) -> Arc<SimplicialComplex> {
    Arc::new(complete_complex(n, d).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Weight from the maximal faces alone: the fraction of maximal faces
/// containing `face`, divided by the number of same-size subfaces of one.
fn weight_oracle(x: &SimplicialComplex, face: &[Vertex]) -> Rational {
    let tops = x.maximal_faces();
    let containing = tops.iter().filter(|t| face.iter().all(|v| t.contains(v))).count();
    ratio(containing as i64, tops.len() as i64) / int(binomial(x.dim() as u64 + 1, face.len() as u64))
}

fn small_complexes() -> Vec<(String, Arc<SimplicialComplex>)> {
    let mut out = Vec::new();
    for d in 1..=3 {
        for n in (d + 1)..=7 {
            out.push((format!("K({n},{d})"), complete(n, d)));
        }
    }
    for p in [2, 3] {
        out.push((format!("SB({p},1)"), Arc::new(spherical_building(p, 1).unwrap().complex)));
    }
    out
}

fn criterion_1() -> Outcome {
    let mut checked = 0u64;
    for (name, x) in small_complexes() {
        let d = x.dim();
        for i in -1..=d as i64 {
            for s in x.faces(i) {
                let w = x.weight(s).map_err(err)?;
                ensure(w == weight_oracle(&x, s), || format!("{name}: weight of {s:?}"))?;
                checked += 1;
            }
        }
        for i in -1..d as i64 {
            for s in x.faces(i) {
                let link = x.link(s).map_err(err)?;
                let ws = weight_oracle(&x, s);
                for j in -1..=link.dim() as i64 {
                    for t in link.faces(j) {
                        let u: Face = s.iter().chain(t).copied().sorted().collect();
                        let expected = weight_oracle(&x, &u) / (int(binomial(u.len() as u64, t.len() as u64)) * &ws);
                        ensure(link.weight(t).map_err(err)? == expected, || {
                            format!("{name}: link weight of {t:?} in X_{s:?}")
                        })?;
                        checked += 1;
                    }
                }
            }
        }
        for k in 0..d {
            let rep = RepresentationComplex::build(x.clone(), k).map_err(err)?;
            let r = rep.complex();
            for i in 0..=r.dim() as i64 {
                for t in r.faces(i) {
                    let sigma = rep.represented(t);
                    let preimages = if i == 0 { 1 } else { binomial(sigma.len() as u64, k as u64) };
                    ensure(rep.preimages(&sigma).map_err(err)?.len() as u64 == preimages, || {
                        format!("{name}, k={k}: preimage count of {sigma:?}")
                    })?;
                    let expected = weight_oracle(&x, &sigma) / int(preimages);
                    ensure(r.weight(t).map_err(err)? == expected, || format!("{name}, k={k}: weight of {t:?}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} exact weight identities"))
}

fn criterion_2() -> Outcome {
    let mut supports = 0;
    for (name, x) in small_complexes() {
        for k in 0..x.dim() {
            let rep = RepresentationComplex::build(x.clone(), k).map_err(err)?;
            for i in 0..=rep.complex().dim() {
                let dist: BTreeMap<Face, Rational> = rep.rep_face_distribution(i).into_iter().collect();
                let faces = rep.complex().faces(i as i64);
                ensure(dist.len() == faces.len(), || format!("{name}, k={k}, i={i}: support size"))?;
                for (idx, f) in faces.iter().enumerate() {
                    ensure(dist.get(f) == Some(&rep.complex().weight_at(i as i64, idx)), || {
                        format!("{name}, k={k}, i={i}: probability of {f:?}")
                    })?;
                }
                supports += 1;
            }
        }
    }
    let rep = RepresentationComplex::build(complete(6, 2), 1).map_err(err)?;
    let faces = rep.complex().faces(1).to_vec();
    let mut hits = vec![0u64; faces.len()];
    let mut rng = trial_rng(2024, 0);
    for _ in 0..SAMPLER_DRAWS {
        let f = rep.sample_rep_face(1, &mut rng);
        hits[rep.complex().face_index(&f).ok_or("sampled a non-face")?] += 1;
    }
    // Pearson statistic over all faces; the 3σ band is taken on its
    // chi-square distribution, mean df and variance 2·df.
    let n = SAMPLER_DRAWS as f64;
    let (mut chi2, mut worst) = (0.0f64, 0.0f64);
    for (idx, h) in hits.iter().enumerate() {
        let p = listagree::rational::to_f64(&rep.complex().weight_at(1, idx));
        let e = n * p;
        chi2 += (*h as f64 - e).powi(2) / e;
        worst = worst.max((*h as f64 - e).abs() / (e * (1.0 - p)).sqrt());
    }
    let df = (faces.len() - 1) as f64;
    let limit = df + SIGMAS * (2.0 * df).sqrt();
    ensure(chi2 <= limit, || format!("chi-square {chi2:.1} above {limit:.1}"))?;
    Ok(format!(
        "{supports} exact supports; {SAMPLER_DRAWS} draws over {} faces, chi-square {chi2:.1} (limit {limit:.1}), max per-face |z| {worst:.2}",
        faces.len()
    ))
}

fn criterion_3() -> Outcome {
    let mut edges = 0u64;
    for (name, x) in small_complexes() {
        for k in 1..x.dim() {
            let rep = RepresentationComplex::build(x.clone(), k).map_err(err)?;
            let r = rep.complex();
            let low = rep.lower().ok_or("missing lower level")?.clone();
            // Brute force: pairwise adjacent triples whose pairwise
            // intersections are three distinct vertices of a lower 2-face.
            let xf = |v: Vertex| rep.x_face(v).clone();
            let vi = |f: &[Vertex]| x.face_index(f).map(|i| i as Vertex);
            let mut brute: BTreeSet<[Vertex; 3]> = BTreeSet::new();
            for t in r.vertices().into_iter().combinations(3) {
                let (a, b, c) = (t[0], t[1], t[2]);
                if ![[a, b], [b, c], [a, c]].iter().all(|e| r.contains(e)) {
                    continue;
                }
                let meet = |p: Vertex, q: Vertex| -> Face { xf(p).into_iter().filter(|v| xf(q).contains(v)).collect() };
                let lower: Option<Vec<Vertex>> = [meet(a, b), meet(b, c), meet(a, c)]
                    .iter()
                    .map(|m| (m.len() == k).then(|| vi(m)).flatten())
                    .collect();
                if let Some(mut l) = lower {
                    l.sort_unstable();
                    l.dedup();
                    if l.len() == 3 && low.contains(&l) {
                        brute.insert([a, b, c]);
                    }
                }
            }
            let lib: BTreeSet<[Vertex; 3]> = rep.empty_triangles().iter().map(|t| t.vertices).collect();
            ensure(lib == brute, || format!("{name}, k={k}: empty triangle sets differ"))?;
            for (ei, e) in r.faces(1).iter().enumerate() {
                let through: Vec<_> = brute.iter().filter(|t| t.contains(&e[0]) && t.contains(&e[1])).collect();
                ensure(through.len() == k, || format!("{name}, k={k}: edge {e:?} supports {}", through.len()))?;
                let ts = rep.empty_triangles_of_edge(e[0], e[1]).map_err(err)?;
                ensure(ts.len() == k, || format!("{name}, k={k}: edge query for {e:?}"))?;
                let we = r.weight_at(1, ei);
                let mut total = zero();
                for t in &ts {
                    let lower_face = &low.faces(2)[t.lower_index];
                    let sigma: Face = lower_face.iter().flat_map(|&v| x.faces(k as i64 - 1)[v as usize].clone()).sorted().dedup().collect();
                    // The lower 2-face has a core of size k−1 inside a (k+1)-face.
                    let wt = weight_oracle(&x, &sigma) / int(binomial(sigma.len() as u64, k as u64 - 1));
                    ensure(rep.empty_triangle_weight(t) == wt, || format!("{name}, k={k}: triangle weight"))?;
                    ensure(&we / &wt == ratio(k as i64, 3), || format!("{name}, k={k}: ratio k/3 at {e:?}"))?;
                    total += wt;
                }
                ensure(&we / &total == ratio(1, 3), || format!("{name}, k={k}: total ratio at {e:?}"))?;
                edges += 1;
            }
        }
    }
    Ok(format!("{edges} edges checked"))
}

/// Cocycle test written out with explicit permutation application.
fn cocycle_oracle(phi: &Cochain<Perm>) -> bool {
    let x = phi.base();
    let l = phi.group_identity().len();
    x.faces(2).iter().all(|t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let g = |u, v| phi.edge(u, v).unwrap();
        (0..l).all(|s| g(a, b).apply(g(b, c).apply(g(c, a).apply(s))) == s)
    })
}

fn criterion_4() -> Outcome {
    let small: Vec<(&str, Arc<SimplicialComplex>)> = vec![
        ("triangle", complete(3, 2)),
        ("square", Arc::new(graph(&[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap())),
        ("two triangles", Arc::new(SimplicialComplex::build([[0, 1, 2], [1, 2, 3]]).unwrap())),
        ("pentagon", Arc::new(graph(&[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap())),
    ];
    let (mut total, mut cocycles) = (0u64, 0u64);
    let swap = Perm::swap(2, 0, 1);
    let id = Perm::identity(2);
    for (name, x) in &small {
        let m = x.face_count(1);
        for mask in 0u32..(1 << m) {
            let values = (0..m).map(|i| if mask >> i & 1 == 1 { swap } else { id }).collect();
            let phi = Cochain::new(x.clone(), 1, id, values).map_err(err)?;
            let genuine = NearCover::from_cochain(&phi).map_err(err)?.is_genuine();
            let oracle = cocycle_oracle(&phi);
            ensure(genuine == oracle && phi.is_cocycle() == oracle, || format!("{name}: mask {mask:b}"))?;
            total += 1;
            cocycles += oracle as u64;
        }
    }
    let large = [("K(5,2)", complete(5, 2)), ("K(6,3)", complete(6, 3)), ("cone(6)", Arc::new(cycle_cone(6).unwrap().0))];
    let mut rng = trial_rng(4, 0);
    for (name, x) in &large {
        for trial in 0..200 {
            let l = 2 + trial % 2;
            let phi = if trial % 4 < 2 {
                random_cochain(x.clone(), 1, l, &mut rng).map_err(err)?
            } else {
                let (mut f, _) = random_coboundary(x.clone(), l, &mut rng).map_err(err)?;
                if trial % 4 == 3 {
                    let e = rng.gen_range(0..f.values().len());
                    f.set_at(e, Perm::random(l, &mut rng));
                }
                f
            };
            let oracle = cocycle_oracle(&phi);
            let genuine = NearCover::from_cochain(&phi).map_err(err)?.is_genuine();
            ensure(genuine == oracle, || format!("{name}: trial {trial}"))?;
            total += 1;
            cocycles += oracle as u64;
        }
    }
    Ok(format!("{total} cochains, {cocycles} cocycles, 0 mismatches"))
}

fn criterion_5() -> Outcome {
    let bases = [
        ("K(5,2)", complete(5, 2)),
        ("K(6,3)", complete(6, 3)),
        ("cone(5)", Arc::new(cycle_cone(5).unwrap().0)),
        ("SB(2,1)", Arc::new(spherical_building(2, 1).unwrap().complex)),
    ];
    let mut rng = trial_rng(5, 0);
    let mut runs = 0;
    for (name, x) in &bases {
        let all_base: BTreeSet<Face> = (0..=x.dim() as i64).flat_map(|i| x.faces(i).to_vec()).collect();
        for l in [2, 3] {
            for trial in 0..100 {
                let (phi, g) = random_coboundary(x.clone(), l, &mut rng).map_err(err)?;
                let cover = NearCover::from_cochain(&phi).map_err(err)?;
                let dec = cover.decompose(&g).map_err(err)?;
                let fail = || format!("{name}, l={l}, trial {trial}");
                ensure(dec.copies.len() == l, fail)?;
                let all_cover: BTreeSet<Vec<(Vertex, usize)>> =
                    (0..=x.dim()).flat_map(|i| cover.faces(i)).collect();
                let mut union = BTreeSet::new();
                let mut vertex_owner: BTreeMap<(Vertex, usize), usize> = BTreeMap::new();
                for (ci, copy) in dec.copies.iter().enumerate() {
                    let projected: BTreeSet<Face> = copy.iter().map(|t| t.iter().map(|p| p.0).collect()).collect();
                    ensure(projected == all_base && copy.len() == all_base.len(), fail)?;
                    for t in copy {
                        ensure(all_cover.contains(t), fail)?;
                        for &p in t {
                            ensure(*vertex_owner.entry(p).or_insert(ci) == ci, fail)?;
                        }
                        union.insert(t.clone());
                    }
                }
                ensure(union == all_cover, fail)?;
                ensure(cover.verify_decomposition(&dec), fail)?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} decompositions, 0 failures"))
}

fn criterion_6() -> Outcome {
    let mut runs = 0;
    for n in [5, 6] {
        let x = complete(n, 2);
        let rep = RepresentationComplex::build(x.clone(), 1).map_err(err)?;
        let mut rng = trial_rng(6, n as u64);
        for trial in 0..50 {
            let a = random_agreeing(x.clone(), 1, 2, true, &mut rng).map_err(err)?;
            ensure(a.is_two_locally_differing(), || format!("n={n}, trial {trial}: not 2-locally-differing"))?;
            let o = exhaustive(&rep, &a).map_err(err)?;
            ensure(o.rejection == zero(), || format!("n={n}, trial {trial}: rejection {}", to_string(&o.rejection)))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} agreeing inputs, all rejected with probability 0/1"))
}

fn single_corruptions(a: &LAssignment) -> Vec<LAssignment> {
    let width = a.k + 1;
    let mut out = Vec::new();
    for f in 0..a.lists.len() {
        for s in 0..a.l {
            for flip in 1..(1u64 << width) {
                let mut b = a.clone();
                b.lists[f][s] ^= flip;
                out.push(b);
            }
        }
    }
    out
}

/// Every single-face change that keeps lists 2-locally-differing: both
/// entries shifted by the same nonzero mask.
fn differing_face_corruptions(a: &LAssignment) -> Vec<LAssignment> {
    let width = a.k + 1;
    let mut out = Vec::new();
    for f in 0..a.lists.len() {
        for flip in 1..(1u64 << width) {
            let mut b = a.clone();
            for s in 0..a.l {
                b.lists[f][s] ^= flip;
            }
            if b.is_two_locally_differing() {
                out.push(b);
            }
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let x = complete(6, 2);
    let rep = RepresentationComplex::build(x.clone(), 1).map_err(err)?;
    let gamma = measure_gamma(&x, &Perm::all(2)).map_err(err)?.gamma;
    let c_t = coboundary_test_constant(&gamma, 1).map_err(err)?;
    let c = int(1) / &c_t;
    let mut rng = trial_rng(7, 0);
    let (mut instances, mut bounded, mut literal_ok, mut iff_checked) = (0, 0, 0, 0);
    let mut min_slack: Option<Rational> = None;
    for _ in 0..3 {
        let base = random_agreeing(x.clone(), 1, 2, true, &mut rng).map_err(err)?;
        let mut inputs = single_corruptions(&base);
        inputs.extend(differing_face_corruptions(&base));
        for _ in 0..20 {
            let mut a = base.clone();
            for f in rand::seq::index::sample(&mut rng, a.lists.len(), 2) {
                let flip = rng.gen_range(1..4u64);
                for s in 0..a.l {
                    a.lists[f][s] ^= flip;
                }
            }
            inputs.push(a);
        }
        for a in inputs {
            let rej = exhaustive(&rep, &a).map_err(err)?.rejection;
            let dist = a.dist_to_agreeing_oracle().map_err(err)?.distance;
            if a.is_two_locally_differing() {
                ensure((rej == zero()) == (dist == zero()), || {
                    format!("rejection {} with distance {}", to_string(&rej), to_string(&dist))
                })?;
                iff_checked += 1;
            }
            if dist > zero() {
                let p = soundness_profile(&rep, &a).map_err(err)?;
                if let Some(alpha) = &p.alpha {
                    let bound = soundness_lower_bound(&c, alpha, 1, &dist);
                    ensure(rej >= bound, || format!("rejection {} below bound {}", to_string(&rej), to_string(&bound)))?;
                    let slack = &rej / &bound;
                    if min_slack.as_ref().is_none_or(|m| slack < *m) {
                        min_slack = Some(slack);
                    }
                    if rej >= soundness_lower_bound(&c_t, alpha, 1, &dist) {
                        literal_ok += 1;
                    }
                    bounded += 1;
                }
            }
            instances += 1;
        }
    }
    Ok(format!(
        "gamma {}, c_T {}; {instances} corrupted inputs, bound checked on {bounded} (min rejection/bound {}), \
         zero-iff on {iff_checked} 2-locally-differing; literal c = c_T form holds on {literal_ok}/{bounded}",
        to_string(&gamma),
        to_string(&c_t),
        min_slack.map_or("n/a".into(), |s| format!("{:.3}", listagree::rational::to_f64(&s))),
    ))
}

/// Counts cochains within Hamming distance 2 of a coboundary violating
/// `dist ≤ c_T · rejection`.
fn coboundary_bound_violations(n: usize, d: usize) -> Result<(usize, usize, Rational), String> {
    let x = complete(n, d);
    let rep = RepresentationComplex::build(x.clone(), 1).map_err(err)?;
    let view = BinaryView::new(&rep).map_err(err)?;
    let gamma = measure_gamma(&x, &Perm::all(2)).map_err(err)?.gamma;
    let c_t = coboundary_test_constant(&gamma, 1).map_err(err)?;
    let m = view.edge_count;
    let mut masks: HashSet<u128> = HashSet::new();
    for &c in view.coboundaries() {
        masks.insert(c);
        for i in 0..m {
            masks.insert(c ^ 1 << i);
            for j in (i + 1)..m {
                masks.insert(c ^ 1 << i ^ 1 << j);
            }
        }
    }
    let den = rep.complex().weight_denominator(1);
    let mut violations = 0;
    for &mask in &masks {
        let nearest = view.coboundaries().iter().map(|c| view.weight(mask ^ c)).min().unwrap();
        let (full, empty) = view.violation_counts(mask);
        let (ef, ee) = rep.violation_norms(full, empty);
        let rej = (ef + ee) / int(2);
        if ratio(nearest as i64, den as i64) > &c_t * &rej {
            violations += 1;
        }
    }
    Ok((masks.len(), violations, c_t))
}

fn criterion_8() -> Outcome {
    // The generic search agrees with the bitmask view on a sample.
    let x = complete(4, 3);
    let rep = RepresentationComplex::build(x, 1).map_err(err)?;
    let view = BinaryView::new(&rep).map_err(err)?;
    let mut rng = trial_rng(8, 0);
    for _ in 0..20 {
        let f = random_cochain(rep.complex().clone(), 1, 2, &mut rng).map_err(err)?;
        let mask = f.values().iter().enumerate().filter(|(_, p)| p.apply(0) == 1).fold(0u128, |m, (i, _)| m | 1 << i);
        let (_, count) = nearest_coboundary(&f, &Perm::all(2)).map_err(err)?;
        ensure(count == view.nearest_coboundary_count(mask), || "bitmask and generic distances differ".into())?;
        let (full, empty) = view.violation_counts(mask);
        let (ef, ee) = rep.violation_norms(full, empty);
        ensure((ef + ee) / int(2) == rep.empty_triangle_rejection(&f).map_err(err)?, || "rejection mismatch".into())?;
    }
    let mut parts = Vec::new();
    let mut failed = false;
    for n in [4, 5] {
        let (count, bad, c_t) = coboundary_bound_violations(n, 3)?;
        failed |= bad > 0;
        parts.push(format!("K({n},3): {count} cochains, {bad} violations, c_T {}", to_string(&c_t)));
    }
    let mut notes = Vec::new();
    for n in [4, 5] {
        let (count, bad, _) = coboundary_bound_violations(n, 2)?;
        notes.push(format!("K({n},2): {bad}/{count}"));
    }
    let detail = format!("{}; two-dimensional bases, gamma from X alone, reported only: {}", parts.join("; "), notes.join(", "));
    if failed {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn direct_sum_oracle(x: &SimplicialComplex, k: usize, f: u64) -> Vec<bool> {
    x.faces(k as i64 - 1)
        .iter()
        .map(|s| s.iter().fold(false, |acc, &v| acc ^ (f >> x.vertex_index(v).unwrap() & 1 == 1)))
        .collect()
}

fn criterion_9() -> Outcome {
    let mut rng = trial_rng(9, 0);
    let mut round_trips = 0;
    for trial in 0..100 {
        let n = 5 + trial % 3;
        let k = 2 + trial % 2;
        let x = complete(n, k + 1);
        let f0: u64 = rng.gen::<u64>() & ((1 << n) - 1);
        let f = eval_direct_sum(x.clone(), k, f0).map_err(err)?;
        ensure(f.values == direct_sum_oracle(&x, k, f0), || format!("evaluation of {f0:b}"))?;
        let origins = f.reconstruct_origin().map_err(err)?;
        let full = (1u64 << n) - 1;
        let expected: BTreeSet<u64> = if k % 2 == 1 { [f0].into() } else { [f0, !f0 & full].into() };
        ensure(origins.iter().copied().collect::<BTreeSet<_>>() == expected, || format!("round trip of {f0:b}, k={k}"))?;
        round_trips += 1;
    }
    let (mut accepted, mut chains, mut max_reads) = (0, 0, 0u64);
    // Violations of dist(F, direct sums) ≤ dist(induced, agreeing), by k.
    let mut violations: BTreeMap<usize, (usize, Option<String>)> = BTreeMap::new();
    for n in 5..=7 {
        for k in [2, 3] {
            let x = complete(n, k + 1);
            let full = (1u64 << n) - 1;
            let f0 = rng.gen::<u64>() & full;
            let genuine = eval_direct_sum(x.clone(), k, f0).map_err(err)?;
            let report = direct_sum_test(&genuine, Mode::MonteCarlo { trials: 2000, seed: n as u64 }, false).map_err(err)?;
            ensure(report.exact.rejection == zero(), || format!("n={n}, k={k}: genuine rejected"))?;
            let sampled = report.sampled.ok_or("no samples")?;
            ensure(sampled.rejections == 0, || format!("n={n}, k={k}: sampled rejection"))?;
            let cap = 3 * (k as u64 + 1);
            ensure(sampled.max_reads <= cap, || format!("n={n}, k={k}: {} reads", sampled.max_reads))?;
            max_reads = max_reads.max(sampled.max_reads);
            accepted += 1;

            let m = genuine.values.len();
            let mut inputs: Vec<FaceFunction> = (0..m)
                .map(|i| {
                    let mut g = genuine.clone();
                    g.values[i] = !g.values[i];
                    g
                })
                .collect();
            for _ in 0..10 {
                let mut g = genuine.clone();
                let flips = rng.gen_range(2..=4.min(m));
                for i in rand::seq::index::sample(&mut rng, m, flips) {
                    g.values[i] = !g.values[i];
                }
                inputs.push(g);
            }
            for g in inputs {
                // Brute force over every origin function.
                let brute = (0..=full)
                    .map(|h| direct_sum_oracle(&x, k, h).iter().zip(&g.values).filter(|(a, b)| a != b).count())
                    .min()
                    .unwrap();
                let (dist, origin) = g.dist_to_direct_sums_oracle().map_err(err)?;
                let achieved = direct_sum_oracle(&x, k, origin).iter().zip(&g.values).filter(|(a, b)| a != b).count();
                ensure(achieved == brute && dist == ratio(brute as i64, m as i64), || {
                    format!("n={n}, k={k}: direct-sum distance {} vs brute force {brute}/{m}", to_string(&dist))
                })?;
                let induced = g.induced_assignment().map_err(err)?.dist_to_agreeing_oracle().map_err(err)?.distance;
                let entry = violations.entry(k).or_insert((0, None));
                if dist > induced {
                    entry.0 += 1;
                    if entry.1.is_none() {
                        let flipped: Vec<&Face> = x.faces(k as i64 - 1).iter().zip(g.values.iter().zip(&genuine.values))
                            .filter(|(_, (a, b))| a != b)
                            .map(|(f, _)| f)
                            .collect();
                        entry.1 = Some(format!(
                            "K({n},{}) flips {flipped:?}: {} vs induced {}",
                            k + 1,
                            to_string(&dist),
                            to_string(&induced)
                        ));
                    }
                }
                chains += 1;
            }
        }
    }
    let summary = format!(
        "{round_trips} round trips; {accepted} genuine sums accepted exactly; max reads {max_reads}; {chains} distance comparisons, violations {}",
        violations
            .iter()
            .map(|(k, (c, ex))| format!("k={k}: {c}{}", ex.as_ref().map_or(String::new(), |e| format!(" (e.g. {e})"))))
            .join(", ")
    );
    if violations.values().any(|(c, _)| *c > 0) {
        Err(summary)
    } else {
        Ok(summary)
    }
}

fn criterion_10() -> Outcome {
    let mut parity_checks = 0;
    for n in 4..=7 {
        let (x, cycle) = cycle_with_pendants(n).map_err(err)?;
        let x = Arc::new(x);
        // Exact distance within the oracle's size guard, exact search beyond.
        let agreeing = |a: &LAssignment| -> Result<bool, String> {
            if a.base.face_count(0) <= listagree::assignment::ORACLE_MAX_VERTICES {
                Ok(a.dist_to_agreeing_oracle().map_err(err)?.distance == zero())
            } else {
                a.is_agreeing().map_err(err)
            }
        };
        let even = coloring_candidate(&x, &cycle, Candidate::Even).map_err(err)?;
        ensure(agreeing(&even)? == (n % 2 == 0), || format!("even candidate on a {n}-cycle"))?;
        parity_checks += 1;
        for k in 0..n {
            let odd = coloring_candidate(&x, &cycle, Candidate::Odd { k }).map_err(err)?;
            let status = agreeing(&odd)?;
            ensure(status == (n % 2 == 1), || format!("odd candidate {k} on a {n}-cycle"))?;
            parity_checks += 1;
            for j in (0..n).filter(|&j| j != k) {
                let glued = glue(&odd, &cycle, j).map_err(err)?;
                ensure(agreeing(&glued)? != status, || format!("glue {j} of odd candidate {k} on a {n}-cycle"))?;
                parity_checks += 1;
            }
        }
    }

    let mut cycles = Vec::new();
    for (p, d) in [(3u8, 2usize), (5, 1)] {
        let b = spherical_building(p, d).map_err(err)?;
        let target = 2 * (p as usize - 1);
        let c = find_non_skipping_cycle(&b.complex, target, 1, 50_000_000)
            .map_err(err)?
            .ok_or_else(|| format!("no 1-non-skipping cycle of length {target} in SB({p},{d})"))?;
        ensure(c.len() == target && is_non_skipping(&b.complex, &c, 1).map_err(err)?, || format!("SB({p},{d})"))?;
        let explicit = b.explicit_cycle().map_err(err)?;
        ensure(is_non_skipping(&b.complex, &explicit, 1).map_err(err)?, || format!("explicit cycle in SB({p},{d})"))?;
        cycles.push(format!("SB({p},{d}) length {target} (explicit cycle {})", explicit.len()));
    }

    let x = complete(6, 3);
    let full = 0b111111u64;
    let mut fooled = 0;
    for sigma in x.faces(2).to_vec() {
        for (g0, g1) in [(0u64, full), (0b000111, 0b111000), (0b010101, 0b101010)] {
            let special = g0 ^ 1 << x.vertex_index(sigma[0]).unwrap();
            let adv = adversarial_l_assignment(x.clone(), 2, &[g0, g1], special, &sigma).map_err(err)?;
            ensure(!adv.assignment.is_agreeing().map_err(err)?, || "adversarial input is agreeing".into())?;
            let a = &adv.assignment;
            for face in 0..a.lists.len() {
                for slot in 0..a.l {
                    let f = adv.fooling_assignment(&[(face, slot)]).map_err(err)?;
                    ensure(f.lists[face][slot] == a.lists[face][slot], || "fooling input disagrees on the query".into())?;
                    ensure(f.is_agreeing().map_err(err)?, || format!("query ({face},{slot}) on {sigma:?} not fooled"))?;
                    fooled += 1;
                }
            }
        }
    }
    Ok(format!("{parity_checks} parity/glue checks; {}; {fooled} single queries fooled", cycles.join(", ")))
}

fn criterion_11() -> Outcome {
    let c = |n: usize, k: usize| if k > n { 0 } else { binomial(n as u64, k as u64) as u128 };
    let mut checked = 0;
    for d in 0..=11usize {
        for k in 0..=d + 1 {
            for i in 0..=(d + 1 - k) {
                if k + i + 1 > d + 1 {
                    continue;
                }
                let lhs = c(d - k + 1, i + 1) * c(d + 1, k);
                let rhs = c(k + i + 1, k) * c(d + 1, k + i + 1);
                ensure(lhs == rhs, || format!("corrected identity fails at (d,k,i)=({d},{k},{i})"))?;
                checked += 1;
            }
        }
    }
    let (d, k, i) = (4, 1, 2);
    let stated = c(d - k + 1, i) * c(d + 1, k);
    let rhs = c(k + i + 1, k) * c(d + 1, k + i + 1);
    ensure(stated != rhs, || "stated form unexpectedly holds at (4,1,2)".into())?;
    Ok(format!("{checked} cases; stated form at (4,1,2): {stated} vs {rhs}"))
}

/// Criteria whose claim fails on exhibited counterexamples. They still print
/// FAIL; the run only errors if one of them unexpectedly passes or any other
/// criterion fails.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    9,
    "for even k the origin query reads only faces through one anchor vertex, so a flip on a face avoiding every anchor leaves the induced assignment agreeing",
)];

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 11] = [
        ("weight laws", criterion_1, Some(Duration::from_secs(10))),
        ("sampler exactness", criterion_2, Some(Duration::from_secs(30))),
        ("empty-triangle structure", criterion_3, None),
        ("genuine cover iff cocycle", criterion_4, None),
        ("cover decomposition", criterion_5, None),
        ("tester completeness", criterion_6, None),
        ("tester soundness shape", criterion_7, Some(Duration::from_secs(300))),
        ("coboundary-test bound", criterion_8, None),
        ("direct-sum suite", criterion_9, None),
        ("lower-bound demonstrations", criterion_10, Some(Duration::from_secs(120))),
        ("binomial identity", criterion_11, None),
    ];
    let mut unexpected = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let known = KNOWN_FAILURES.iter().find(|(n, _)| *n == i + 1).map(|(_, why)| *why);
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, budget) {
            if elapsed > *limit {
                outcome = Err(format!("{detail}; exceeded {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => {
                println!("PASS {:>2} {name}: {detail} [{:.2?}]", i + 1, elapsed);
                if known.is_some() {
                    println!("     listed as a known failure but passed");
                    unexpected += 1;
                }
            }
            Err(detail) => {
                println!("FAIL {:>2} {name}: {detail} [{:.2?}]", i + 1, elapsed);
                match known {
                    Some(why) => println!("     known failure: {why}"),
                    None => unexpected += 1,
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
