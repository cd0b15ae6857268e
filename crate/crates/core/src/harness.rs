//! Runs every diagram, composite and sum-to-zero verification over the catalog.
//!
//! Each check is an independent pure computation with a stable id. Results
//! are sorted by id, so the report does not depend on execution order.

use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;

use crate::catalog::{build_catalog, h_blocks, Catalog, IOTA_COMPOSITES};
use crate::element::{int, Rational, WeilElement};
use crate::error::Error;
use crate::hom::AlgebraHom;
use crate::limit::{is_limit_cone, mediator, solve_apex, Arrow, Cone, Diagram};
use crate::linalg::Matrix;
use crate::map::InfinitesimalMap;
use crate::object::{Monomial, SimplicialObject};
use crate::random;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub location: String,
    pub passed: bool,
    /// Residual or relation that failed; `None` on success.
    pub diagnostic: Option<String>,
    pub elapsed: Duration,
}

/// Deliberate corruptions used to confirm that checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Lemma 3.15 is checked with apex `D^8` in place of `G`.
    FreeApex,
    /// Lemma 3.15 is checked with `h^1_31` read as printed.
    PrintedH31,
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub seed: u64,
    /// Random compatible tuples per mediator check.
    pub samples: usize,
    pub faults: Vec<Fault>,
    pub parallel: bool,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            seed: 0x5EED,
            samples: 100,
            faults: Vec::new(),
            parallel: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed: Duration,
}

impl Summary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Outcome = Result<(), String>;
type Body = Box<dyn Fn(&Catalog, &HarnessConfig) -> Outcome + Send + Sync>;

struct Check {
    id: String,
    location: &'static str,
    body: Body,
}

fn check<F>(id: impl Into<String>, location: &'static str, body: F) -> Check
where
    F: Fn(&Catalog, &HarnessConfig) -> Outcome + Send + Sync + 'static,
{
    Check {
        id: id.into(),
        location,
        body: Box::new(body),
    }
}

fn run(cat: &Catalog, config: &HarnessConfig, checks: Vec<Check>) -> Vec<CheckResult> {
    let one = |c: &Check| {
        let start = Instant::now();
        let outcome = (c.body)(cat, config);
        CheckResult {
            id: c.id.clone(),
            location: c.location.to_string(),
            passed: outcome.is_ok(),
            diagnostic: outcome.err(),
            elapsed: start.elapsed(),
        }
    };
    let mut results: Vec<CheckResult> = if config.parallel {
        checks.par_iter().map(one).collect()
    } else {
        checks.iter().map(one).collect()
    };
    results.sort_by(|a, b| a.id.cmp(&b.id));
    results
}

fn err(e: Error) -> String {
    e.to_string()
}

fn describe_residual(r: &Matrix) -> String {
    let mut nonzero = Vec::new();
    for i in 0..r.rows() {
        for j in 0..r.cols() {
            if !r.get(i, j).is_zero() {
                nonzero.push((i, j));
            }
        }
    }
    match nonzero.first() {
        None => "zero residual".into(),
        Some(&(i, j)) => format!(
            "residual has {} nonzero entries, first at ({i}, {j}) = {}",
            nonzero.len(),
            r.get(i, j)
        ),
    }
}

fn hom_equal(lhs: &AlgebraHom, rhs: &AlgebraHom) -> Outcome {
    let r = lhs.residual(rhs).map_err(err)?;
    if r.is_zero() {
        Ok(())
    } else {
        Err(describe_residual(&r))
    }
}

/// Full limit certificate: commuting legs, equal dimensions, bijective
/// induced map, subalgebra, and mediator from the cone to itself is the
/// identity.
pub fn certify_limit(d: &Diagram, cone: &Cone) -> Result<(), String> {
    let r = is_limit_cone(d, cone).map_err(err)?;
    if !r.commutes {
        let (legs, _) = cone.complete(d).map_err(err)?;
        let k = r.noncommuting[0];
        let a = &d.arrows()[k];
        let res = legs[a.from]
            .then(&a.hom)
            .and_then(|h| h.residual(&legs[a.to]))
            .map_err(err)?;
        return Err(format!(
            "legs do not commute with arrows {:?}; arrow {k}: {}",
            r.noncommuting,
            describe_residual(&res)
        ));
    }
    if !r.is_limit {
        return Err(format!(
            "apex dimension {} vs limit dimension {} (legs of rank {})",
            r.apex_dimension, r.limit_dimension, r.assembled_rank
        ));
    }
    if !r.limit_is_subalgebra {
        return Err("limit subspace is not closed under products".into());
    }
    let induced = r.induced.expect("commuting cone has an induced matrix");
    let inverse = induced
        .inverse()
        .ok_or_else(|| "induced map onto the limit is not invertible".to_string())?;
    if !induced.mul(&inverse).map_err(err)?.sub(&Matrix::identity(r.limit_dimension)).map_err(err)?.is_zero() {
        return Err("induced map and its inverse do not compose to the identity".into());
    }
    let h = mediator(d, cone, cone).map_err(err)?;
    hom_equal(&h, &AlgebraHom::identity(&cone.apex))
}

fn pullback(cat: &Catalog, apex: &str, left: &str, right: &str, arrow: &str) -> Result<(Diagram, Cone), Error> {
    let a = cat.hom(arrow)?;
    let d = Diagram::cospan(a.clone(), a)?;
    let cone = Cone::new(
        cat.object(apex)?.clone(),
        vec![Some(cat.hom(left)?), Some(cat.hom(right)?), None],
    );
    Ok((d, cone))
}

/// Three inner nodes `0, 1, 2` and three outer nodes `3, 4, 5` with arrows
/// `0->3, 0->5, 1->3, 1->4, 2->4, 2->5`.
fn hexagon(inner: [SimplicialObject; 3], outer: SimplicialObject, arrows: [AlgebraHom; 6]) -> Result<Diagram, Error> {
    let [a03, a05, a13, a14, a24, a25] = arrows;
    let [n0, n1, n2] = inner;
    Diagram::new(
        vec![n0, n1, n2, outer.clone(), outer.clone(), outer],
        vec![
            Arrow::new(0, 3, a03),
            Arrow::new(0, 5, a05),
            Arrow::new(1, 3, a13),
            Arrow::new(1, 4, a14),
            Arrow::new(2, 4, a24),
            Arrow::new(2, 5, a25),
        ],
    )
}

fn inner_cone(apex: SimplicialObject, legs: [AlgebraHom; 3]) -> Cone {
    let [l0, l1, l2] = legs;
    Cone::new(apex, vec![Some(l0), Some(l1), Some(l2), None, None, None])
}

/// The hexagon of Lemma 3.4 with its cone from `W_E`.
pub fn lemma_3_4(cat: &Catalog) -> Result<(Diagram, Cone), Error> {
    let sq = cat.object("D^2")?.clone();
    let inc = cat.hom("i_D(2)^D^2")?;
    let d = hexagon(
        [sq.clone(), sq.clone(), sq],
        cat.object("D(2)")?.clone(),
        std::array::from_fn(|_| inc.clone()),
    )?;
    let cone = inner_cone(cat.object("E")?.clone(), [cat.hom("l1")?, cat.hom("l2")?, cat.hom("l3")?]);
    Ok((d, cone))
}

/// The hexagon of Lemma 3.6 with its cone from `W_E`.
pub fn lemma_3_6(cat: &Catalog) -> Result<(Diagram, Cone), Error> {
    let c = cat.object("C")?.clone();
    let (phi, psi) = (cat.hom("phi")?, cat.hom("psi")?);
    let d = hexagon(
        [c.clone(), c.clone(), c],
        cat.object("D^2")?.clone(),
        [psi.clone(), phi.clone(), phi.clone(), psi.clone(), phi, psi],
    )?;
    let cone = inner_cone(cat.object("E")?.clone(), [cat.hom("m1")?, cat.hom("m2")?, cat.hom("m3")?]);
    Ok((d, cone))
}

/// The hexagon of Lemma 3.15 with its cone from `W_G`, honouring `faults`.
pub fn lemma_3_15(cat: &Catalog, faults: &[Fault]) -> Result<(Diagram, Cone), Error> {
    let h31 = if faults.contains(&Fault::PrintedH31) {
        AlgebraHom::induced(&cat.printed_h31()?)?
    } else {
        cat.hom("h^1_31")?
    };
    let d = hexagon(
        [cat.object("E[1]")?.clone(), cat.object("E[2]")?.clone(), cat.object("E[3]")?.clone()],
        cat.object("D^3(+)D^3")?.clone(),
        [
            cat.hom("h^1_12")?,
            h31,
            cat.hom("h^2_12")?,
            cat.hom("h^2_23")?,
            cat.hom("h^3_23")?,
            cat.hom("h^3_31")?,
        ],
    )?;
    let (apex, legs) = if faults.contains(&Fault::FreeApex) {
        let free = SimplicialObject::cube(8)?;
        let legs = ["k1", "k2", "k3"]
            .map(|k| cat.map(k).and_then(|m| m.with_target(&free)).and_then(|m| AlgebraHom::induced(&m)));
        let [a, b, c] = legs;
        (free, [a?, b?, c?])
    } else {
        (cat.object("G")?.clone(), [cat.hom("k1")?, cat.hom("k2")?, cat.hom("k3")?])
    };
    Ok((d, inner_cone(apex, legs)))
}

fn limit_check(build: impl Fn(&Catalog, &HarnessConfig) -> Result<(Diagram, Cone), Error>) -> impl Fn(&Catalog, &HarnessConfig) -> Outcome {
    move |cat, config| {
        let (d, cone) = build(cat, config).map_err(err)?;
        certify_limit(&d, &cone)
    }
}

fn pullback_check(
    apex: &'static str,
    left: &'static str,
    right: &'static str,
    arrow: &'static str,
) -> impl Fn(&Catalog, &HarnessConfig) -> Outcome {
    limit_check(move |cat, _| pullback(cat, apex, left, right, arrow))
}

/// `W_parts[i] = W_witness ∘ W_axis_i` for each axis, and the diagonal
/// precomposition is `W` of the zero map.
fn zero_sum_checks(prefix: &str, location: &'static str, witness: &'static str, parts: [&'static str; 3]) -> Vec<Check> {
    vec![
        check(format!("{prefix}/witness-valid"), location, move |cat, _| {
            let report = cat.map(witness).and_then(InfinitesimalMap::validate).map_err(err)?;
            if report.is_ok() {
                Ok(())
            } else {
                Err(report.to_string())
            }
        }),
        check(format!("{prefix}/witness-axes"), location, move |cat, _| {
            let w = cat.hom(witness).map_err(err)?;
            for (i, part) in parts.iter().enumerate() {
                let axis = cat.hom(&format!("axis_{}", i + 1)).map_err(err)?;
                let lhs = w.then(&axis).map_err(err)?;
                hom_equal(&lhs, &cat.hom(part).map_err(err)?).map_err(|e| format!("axis {}: {e}", i + 1))?;
            }
            Ok(())
        }),
        check(format!("{prefix}/witness-diagonal"), location, move |cat, _| {
            let s = cat.map(witness).map_err(err)?;
            let diag = cat.hom("diag").map_err(err)?;
            let zero = InfinitesimalMap::zero(diag.target(), s.target());
            let lhs = cat.hom(witness).and_then(|w| w.then(&diag)).map_err(err)?;
            hom_equal(&lhs, &AlgebraHom::induced(&zero).map_err(err)?)
        }),
    ]
}

fn primordial_checks() -> Vec<Check> {
    let loc = "Theorem 3.2";
    let mut checks = vec![
        check("pullback/prop-3.1", "Proposition 3.1", pullback_check("C", "phi", "psi", "i_D(2)^D^2")),
        check("limit/lemma-3.4", "Lemma 3.4", limit_check(|cat, _| lemma_3_4(cat))),
        check("limit/lemma-3.6", "Lemma 3.6", limit_check(|cat, _| lemma_3_6(cat))),
    ];
    for (i, (leg, target)) in [("m1", "jac_1"), ("m2", "jac_2"), ("m3", "jac_3")].into_iter().enumerate() {
        checks.push(check(format!("primordial/composite-{}", i + 1), loc, move |cat, _| {
            let lhs = cat.hom(leg).and_then(|h| h.then(&cat.hom("zeta")?)).map_err(err)?;
            hom_equal(&lhs, &cat.hom(target).map_err(err)?)
        }));
    }
    checks.extend(zero_sum_checks("primordial", loc, "s", ["jac_1", "jac_2", "jac_3"]));
    checks
}

fn general_checks() -> Vec<Check> {
    let loc = "Theorem 3.16";
    let mut checks = vec![
        check("pullback/prop-3.7", "Proposition 3.7", pullback_check("D^4{(2,4),(3,4)}", "phi^3_1", "psi^3_1", "i_D^3{(2,3)}^D^3")),
        check("pullback/prop-3.8", "Proposition 3.8", pullback_check("D^4{(1,4),(3,4)}", "phi^3_2", "psi^3_2", "i_D^3{(1,3)}^D^3")),
        check("pullback/prop-3.9", "Proposition 3.9", pullback_check("D^4{(1,4),(2,4)}", "phi^3_3", "psi^3_3", "i_D^3{(1,2)}^D^3")),
        check("pullback/prop-3.11", "Proposition 3.11", pullback_check("E[1]", "eta^1_1", "eta^1_2", "i^1_14")),
        check("pullback/prop-3.12", "Proposition 3.12", pullback_check("E[2]", "eta^2_1", "eta^2_2", "i^2_24")),
        check(
            "pullback/prop-3.12-printed",
            "Proposition 3.12",
            pullback_check("E[2]", "eta^2_1", "eta^2_2_printed", "i^2_24"),
        ),
        check("pullback/prop-3.13", "Proposition 3.13", pullback_check("E[3]", "eta^3_1", "eta^3_2", "i^3_34")),
        check("limit/lemma-3.15", "Lemma 3.15", limit_check(|cat, config| lemma_3_15(cat, &config.faults))),
    ];
    for i in 1..=3 {
        checks.push(check(format!("general/step-{i}"), loc, move |cat, _| {
            let lhs = cat
                .hom(&format!("k{i}"))
                .and_then(|h| h.then(&cat.hom(&format!("step_{i}"))?))
                .and_then(|h| h.then(&cat.hom("zeta")?))
                .map_err(err)?;
            hom_equal(&lhs, &cat.hom(&format!("gen_{i}")).map_err(err)?)
        }));
    }
    checks.extend(zero_sum_checks("general", loc, "t", ["gen_1", "gen_2", "gen_3"]));
    checks
}

/// Dimensions of the named objects, each cross-checked by enumerating all
/// subsets of the coordinates.
pub const DIMENSIONS: &[(&str, usize)] = &[
    ("D", 2),
    ("D(2)", 3),
    ("D^2", 4),
    ("C", 5),
    ("E", 6),
    ("D^3", 8),
    ("D^3(+)D^3", 15),
    ("E[1]", 17),
    ("E[2]", 17),
    ("E[3]", 17),
    ("G", 16),
];

/// Number of coordinate subsets containing no forbidden set, by enumerating
/// all `2^n` subsets.
pub fn subset_count(obj: &SimplicialObject) -> usize {
    let forbidden: Vec<u64> = obj.forbidden().iter().map(|m| m.bits()).collect();
    (0u64..1 << obj.arity())
        .filter(|s| forbidden.iter().all(|f| s & f != *f))
        .count()
}

fn catalog_checks() -> Vec<Check> {
    vec![
        check("catalog/dimensions", "Lemmas 3.4 and 3.15", |cat, _| {
            let mut bad = Vec::new();
            for &(name, expected) in DIMENSIONS {
                let obj = cat.object(name).map_err(err)?;
                let (dim, brute) = (obj.dim(), subset_count(obj));
                if dim != expected || brute != expected {
                    bad.push(format!("{name}: basis {dim}, subsets {brute}, expected {expected}"));
                }
            }
            if bad.is_empty() {
                Ok(())
            } else {
                Err(bad.join("; "))
            }
        }),
        check("catalog/maps-valid", "Propositions 3.1-3.13, Theorem 3.14", |cat, _| {
            let bad: Vec<String> = cat
                .maps()
                .iter()
                .filter(|e| !e.map.is_valid())
                .map(|e| e.name.to_string())
                .collect();
            if bad.is_empty() {
                Ok(())
            } else {
                Err(format!("invalid: {}", bad.join(", ")))
            }
        }),
        check("catalog/homs-multiplicative", "Propositions 3.1-3.13, Theorem 3.14", |cat, _| {
            for e in cat.maps() {
                let h = AlgebraHom::induced(&e.map).map_err(err)?;
                if !h.is_unital() {
                    return Err(format!("W_{} is not unital", e.name));
                }
                if let Some((m, n)) = h.multiplicativity_defects().map_err(err)?.first() {
                    return Err(format!("W_{} fails on {m} * {n}", e.name));
                }
            }
            Ok(())
        }),
        check("catalog/iota-composites", "Notations after Propositions 3.11-3.13", |cat, _| {
            for &(iota, eta, inner) in IOTA_COMPOSITES {
                let composite = cat.map(inner).and_then(|f| f.then(cat.map(eta)?)).map_err(err)?;
                if &composite != cat.map(iota).map_err(err)? {
                    return Err(format!("{iota} != {eta} . {inner} = {composite}"));
                }
            }
            Ok(())
        }),
        check("catalog/h-restrictions", "Theorem 3.14", |cat, _| {
            let d3 = cat.object("D^3").map_err(err)?;
            let blocks = [d3.clone(), d3.clone()];
            for (h, left, right) in h_blocks() {
                for (k, iota) in [(1, left), (2, right)] {
                    let restricted = InfinitesimalMap::block_inclusion(&blocks, k)
                        .and_then(|inc| inc.then(cat.map(h)?))
                        .map_err(err)?;
                    if &restricted != cat.map(iota).map_err(err)? {
                        return Err(format!("{h} on block {k} is {restricted}, expected {iota}"));
                    }
                }
            }
            Ok(())
        }),
        check("catalog/printed-readings", "Theorem 3.14", |cat, _| {
            let h31 = cat.printed_h31();
            if !matches!(h31, Err(Error::TargetMismatch { .. })) {
                return Err(format!("printed h^1_31 was not a target mismatch: {h31:?}"));
            }
            let names: Vec<&str> = cat.rejected().iter().map(|r| r.name).collect();
            for expected in ["h^1_31_printed", "k3_printed", "iota^2_2_printed"] {
                if !names.contains(&expected) {
                    return Err(format!("{expected} is not flagged"));
                }
            }
            Ok(())
        }),
    ]
}

fn sample_seed(config: &HarnessConfig, salt: u64) -> random::Rng64 {
    random::rng(config.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn element(obj: &SimplicialObject, terms: &[(&Rational, &[usize])]) -> Result<WeilElement, Error> {
    let mut e = WeilElement::zero(obj);
    for (c, idx) in terms {
        e = e.add(&WeilElement::term(obj, (*c).clone(), Monomial::new(idx)?)?)?;
    }
    Ok(e)
}

/// `a + a1 X1 + a2 X2 + a12 X1X2 + (b12 - a12) X3 + (c12 - a12) X4`.
pub fn lemma_3_4_formula(e: &SimplicialObject, g: &[WeilElement]) -> Result<WeilElement, Error> {
    let (a, b, c) = (&g[0], &g[1], &g[2]);
    let a12 = a.coeff_of(&[1, 2]);
    element(
        e,
        &[
            (&a.coeff_of(&[]), &[]),
            (&a.coeff_of(&[1]), &[1]),
            (&a.coeff_of(&[2]), &[2]),
            (&a12, &[1, 2]),
            (&(b.coeff_of(&[1, 2]) - &a12), &[3]),
            (&(c.coeff_of(&[1, 2]) - &a12), &[4]),
        ],
    )
}

/// The closed form for the mediator of Lemma 3.15, with the `X1X2X3`
/// coefficient `a^1_123 - a^1_7 - a^2_7 + a^1_16` (a basis monomial of `W_G`
/// that the printed form leaves out).
pub fn lemma_3_15_formula(g: &SimplicialObject, t: &[WeilElement]) -> Result<WeilElement, Error> {
    let (g1, g2, g3) = (&t[0], &t[1], &t[2]);
    let a = |e: &WeilElement, idx: &[usize]| e.coeff_of(idx);
    let b23 = a(g2, &[2, 3]) + a(g1, &[6]);
    let b123 = a(g1, &[1, 2, 3]) - a(g1, &[7]) - a(g2, &[7]) + a(g1, &[1, 6]);
    element(
        g,
        &[
            (&a(g1, &[]), &[]),
            (&a(g1, &[1]), &[1]),
            (&a(g1, &[2]), &[2]),
            (&a(g1, &[3]), &[3]),
            (&a(g1, &[6]), &[4]),
            (&a(g2, &[6]), &[5]),
            (&a(g3, &[6]), &[6]),
            (&a(g1, &[7]), &[7]),
            (&a(g2, &[7]), &[8]),
            (&a(g1, &[1, 2]), &[1, 2]),
            (&a(g1, &[1, 3]), &[1, 3]),
            (&a(g1, &[1, 6]), &[1, 4]),
            (&b23, &[2, 3]),
            (&a(g2, &[2, 6]), &[2, 5]),
            (&a(g3, &[3, 6]), &[3, 6]),
            (&b123, &[1, 2, 3]),
        ],
    )
}

/// The cubic relations among compatible triples stated in the proof of
/// Lemma 3.15, followed by the dependent one `a^3_345 = a^1_123`.
pub fn lemma_3_15_relations(t: &[WeilElement]) -> Vec<(&'static str, Rational, Rational)> {
    let (g1, g2, g3) = (&t[0], &t[1], &t[2]);
    let a = |e: &WeilElement, idx: &[usize]| e.coeff_of(idx);
    vec![
        (
            "a1_145 - a1_123 = a3_7 + a3_36 - a2_26",
            a(g1, &[1, 4, 5]) - a(g1, &[1, 2, 3]),
            a(g3, &[7]) + a(g3, &[3, 6]) - a(g2, &[2, 6]),
        ),
        (
            "a2_245 - a2_123 = a1_7 + a1_16 - a3_36",
            a(g2, &[2, 4, 5]) - a(g2, &[1, 2, 3]),
            a(g1, &[7]) + a(g1, &[1, 6]) - a(g3, &[3, 6]),
        ),
        (
            "a3_345 - a3_123 = a2_7 + a2_26 - a1_16",
            a(g3, &[3, 4, 5]) - a(g3, &[1, 2, 3]),
            a(g2, &[7]) + a(g2, &[2, 6]) - a(g1, &[1, 6]),
        ),
        ("a1_145 = a2_123", a(g1, &[1, 4, 5]), a(g2, &[1, 2, 3])),
        ("a2_245 = a3_123", a(g2, &[2, 4, 5]), a(g3, &[1, 2, 3])),
        ("a1_7 + a2_7 + a3_7 = 0", a(g1, &[7]) + a(g2, &[7]) + a(g3, &[7]), int(0)),
        ("a3_345 = a1_123", a(g3, &[3, 4, 5]), a(g1, &[1, 2, 3])),
    ]
}

type Formula = fn(&SimplicialObject, &[WeilElement]) -> Result<WeilElement, Error>;

fn mediator_formula_check(
    build: fn(&Catalog) -> Result<(Diagram, Cone), Error>,
    formula: Formula,
    salt: u64,
) -> impl Fn(&Catalog, &HarnessConfig) -> Outcome {
    move |cat, config| {
        let (d, cone) = build(cat).map_err(err)?;
        let limit = d.compute_limit();
        let mut rng = sample_seed(config, salt);
        for k in 0..config.samples {
            let t = random::random_compatible(&mut rng, &d, &limit);
            let solved = solve_apex(&d, &cone, &t).map_err(err)?;
            let expected = formula(&cone.apex, &t).map_err(err)?;
            if solved != expected {
                let diff = solved.sub(&expected).map_err(err)?;
                return Err(format!("sample {k}: solved minus closed form = {diff}"));
            }
        }
        Ok(())
    }
}

fn mediator_checks() -> Vec<Check> {
    vec![
        check(
            "mediator/lemma-3.4-formula",
            "Lemma 3.4",
            mediator_formula_check(lemma_3_4, lemma_3_4_formula, 34),
        ),
        check(
            "mediator/lemma-3.15-formula",
            "Lemma 3.15",
            mediator_formula_check(|cat| lemma_3_15(cat, &[]), lemma_3_15_formula, 315),
        ),
        check("mediator/lemma-3.15-relations", "Lemma 3.15", |cat, config| {
            let (d, _) = lemma_3_15(cat, &[]).map_err(err)?;
            let limit = d.compute_limit();
            let mut rng = sample_seed(config, 3150);
            for k in 0..config.samples {
                let t = random::random_compatible(&mut rng, &d, &limit);
                for (name, lhs, rhs) in lemma_3_15_relations(&t) {
                    if lhs != rhs {
                        return Err(format!("sample {k}: {name} fails ({lhs} vs {rhs})"));
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// Catalog consistency checks.
pub fn verify_catalog(cat: &Catalog, config: &HarnessConfig) -> Vec<CheckResult> {
    run(cat, config, catalog_checks())
}

/// Proposition 3.1, Lemmas 3.4 and 3.6, and the sum-to-zero statement of
/// Theorem 3.2.
pub fn verify_primordial(cat: &Catalog, config: &HarnessConfig) -> Vec<CheckResult> {
    run(cat, config, primordial_checks())
}

/// Propositions 3.7-3.9 and 3.11-3.13, Lemma 3.15, and the sum-to-zero
/// statement of Theorem 3.16.
pub fn verify_general(cat: &Catalog, config: &HarnessConfig) -> Vec<CheckResult> {
    run(cat, config, general_checks())
}

/// Reproduces the closed-form mediators on random compatible tuples.
pub fn verify_mediators(cat: &Catalog, config: &HarnessConfig) -> Vec<CheckResult> {
    run(cat, config, mediator_checks())
}

/// Builds the catalog and runs every check. A catalog that fails to build is
/// reported as a single failed check.
pub fn verify_all(config: &HarnessConfig) -> Summary {
    let start = Instant::now();
    let checks = match build_catalog() {
        Ok(cat) => {
            let mut all = catalog_checks();
            all.extend(primordial_checks());
            all.extend(general_checks());
            all.extend(mediator_checks());
            run(&cat, config, all)
        }
        Err(e) => vec![CheckResult {
            id: "catalog/build".into(),
            location: "Propositions 3.1-3.13, Theorem 3.14".into(),
            passed: false,
            diagnostic: Some(e.to_string()),
            elapsed: start.elapsed(),
        }],
    };
    let passed = checks.iter().filter(|c| c.passed).count();
    Summary {
        failed: checks.len() - passed,
        passed,
        checks,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> HarnessConfig {
        HarnessConfig {
            samples: 5,
            ..HarnessConfig::default()
        }
    }

    #[test]
    fn subset_count_matches_basis() {
        let e = SimplicialObject::new(4, [[1, 3], [2, 3], [1, 4], [2, 4], [3, 4]]).unwrap();
        assert_eq!(subset_count(&e), 6);
        assert_eq!(subset_count(&SimplicialObject::cube(3).unwrap()), 8);
    }

    #[test]
    fn everything_passes() {
        let s = verify_all(&quick());
        let failures: Vec<_> = s.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        let mut ids: Vec<&str> = s.checks.iter().map(|c| c.id.as_str()).collect();
        let sorted = ids.clone();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn free_apex_fails_only_lemma_3_15() {
        let s = verify_all(&HarnessConfig {
            faults: vec![Fault::FreeApex],
            ..quick()
        });
        let failed: Vec<&str> = s.failures().map(|c| c.id.as_str()).collect();
        assert_eq!(failed, ["limit/lemma-3.15"]);
        let diag = s.failures().next().unwrap().diagnostic.clone().unwrap();
        assert!(diag.contains("256"), "{diag}");
    }

    #[test]
    fn printed_h31_is_a_type_error() {
        let cat = build_catalog().unwrap();
        let e = lemma_3_15(&cat, &[Fault::PrintedH31]).unwrap_err();
        assert!(matches!(e, Error::TargetMismatch { .. }));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let strip = |s: Summary| -> Vec<(String, bool)> { s.checks.into_iter().map(|c| (c.id, c.passed)).collect() };
        let seq = verify_all(&HarnessConfig { parallel: false, ..quick() });
        let par = verify_all(&quick());
        assert_eq!(strip(seq), strip(par));
    }
}
