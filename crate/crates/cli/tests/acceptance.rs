//! Acceptance run: one line per criterion, with pinned time bounds.
//!
//! Two criteria cannot hold as stated, because `W_G` has a sixteenth basis
//! monomial `X1X2X3`. Their lines print `FAIL as stated` next to the values that
//! were reproduced. The strict forms are kept as ignored tests and fail when
//! run with `--ignored`.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Zero;
use serde_json::Value;
use weil_core::harness::{
    lemma_3_15, lemma_3_15_formula, lemma_3_15_relations, lemma_3_4, lemma_3_4_formula, lemma_3_6, subset_count,
};
use weil_core::random::{random_compatible, random_map, random_object, rng};
use weil_core::{
    build_catalog, certify_limit, solve_apex, verify_all, AlgebraHom, Catalog, Cone, Diagram, Error, Fault,
    HarnessConfig, InfinitesimalMap, Monomial, SimplicialObject,
};

const SEED: u64 = 0x5EED;
const SAMPLES: usize = 100;

const DIM_BOUND: Duration = Duration::from_millis(100);
const PULLBACK_BOUND: Duration = Duration::from_millis(500);
const HEXAGON_BOUND: Duration = Duration::from_secs(2);
const PRIMORDIAL_BOUND: Duration = Duration::from_millis(100);
const GENERAL_BOUND: Duration = Duration::from_millis(500);
const CLI_BOUND: Duration = Duration::from_secs(10);

struct Line {
    criterion: u8,
    title: &'static str,
    passed: bool,
    detail: String,
}

impl Line {
    fn print(&self) {
        let tag = if self.passed { "PASS" } else { "FAIL as stated" };
        println!("criterion {} [{tag}] {}: {}", self.criterion, self.title, self.detail);
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

fn map(src: &SimplicialObject, tgt: &SimplicialObject, comps: &[&str]) -> InfinitesimalMap {
    InfinitesimalMap::parse(src, tgt, comps).unwrap()
}

fn hom(m: &InfinitesimalMap) -> AlgebraHom {
    AlgebraHom::induced(m).unwrap()
}

// 1 --------------------------------------------------------------------------

struct Dims {
    e: (usize, usize),
    e_i: [(usize, usize); 3],
    g: (usize, usize),
    elapsed: Duration,
}

fn dimensions(cat: &Catalog) -> Dims {
    let both = |name: &str| {
        let o = cat.object(name).unwrap();
        (o.dim(), subset_count(o))
    };
    let (d, elapsed) = timed(|| Dims {
        e: both("E"),
        e_i: [both("E[1]"), both("E[2]"), both("E[3]")],
        g: both("G"),
        elapsed: Duration::ZERO,
    });
    Dims { elapsed, ..d }
}

fn criterion_1(cat: &Catalog) -> (Line, Dims) {
    let d = dimensions(cat);
    let reproduced = d.e == (6, 6) && d.e_i.iter().all(|&x| x == (17, 17)) && d.elapsed < DIM_BOUND;
    let stated = reproduced && d.g == (15, 15);
    let line = Line {
        criterion: 1,
        title: "dimension table",
        passed: stated,
        detail: format!(
            "W_E = {} (brute force {}), W_E[i] = {:?}, W_G = {} (brute force {}; stated 15), {} (bound {})",
            d.e.0,
            d.e.1,
            d.e_i.map(|x| x.0),
            d.g.0,
            d.g.1,
            ms(d.elapsed),
            ms(DIM_BOUND)
        ),
    };
    (line, d)
}

// 2 --------------------------------------------------------------------------

const PULLBACKS: &[(&str, &str, &str, &str, &str)] = &[
    ("Proposition 3.1", "C", "phi", "psi", "i_D(2)^D^2"),
    ("Proposition 3.7", "D^4{(2,4),(3,4)}", "phi^3_1", "psi^3_1", "i_D^3{(2,3)}^D^3"),
    ("Proposition 3.8", "D^4{(1,4),(3,4)}", "phi^3_2", "psi^3_2", "i_D^3{(1,3)}^D^3"),
    ("Proposition 3.9", "D^4{(1,4),(2,4)}", "phi^3_3", "psi^3_3", "i_D^3{(1,2)}^D^3"),
    ("Proposition 3.11", "E[1]", "eta^1_1", "eta^1_2", "i^1_14"),
    ("Proposition 3.12", "E[2]", "eta^2_1", "eta^2_2", "i^2_24"),
    ("Proposition 3.13", "E[3]", "eta^3_1", "eta^3_2", "i^3_34"),
];

fn criterion_2(cat: &Catalog) -> Line {
    let mut failures = Vec::new();
    let mut worst = Duration::ZERO;
    for &(label, apex, left, right, arrow) in PULLBACKS {
        let (outcome, t) = timed(|| {
            let a = cat.hom(arrow).unwrap();
            let d = Diagram::cospan(a.clone(), a).unwrap();
            let cone = Cone::new(
                cat.object(apex).unwrap().clone(),
                vec![Some(cat.hom(left).unwrap()), Some(cat.hom(right).unwrap()), None],
            );
            certify_limit(&d, &cone)
        });
        worst = worst.max(t);
        match outcome {
            Err(e) => failures.push(format!("{label}: {e}")),
            Ok(()) if t >= PULLBACK_BOUND => failures.push(format!("{label}: took {}", ms(t))),
            Ok(()) => {}
        }
    }
    Line {
        criterion: 2,
        title: "seven pullbacks",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("all certified, slowest {} (bound {} each)", ms(worst), ms(PULLBACK_BOUND))
        } else {
            failures.join("; ")
        },
    }
}

// 3 --------------------------------------------------------------------------

type Build = fn(&Catalog) -> Result<(Diagram, Cone), Error>;

fn criterion_3(cat: &Catalog) -> Line {
    let hexagons: [(&str, Build); 3] = [
        ("Lemma 3.4", lemma_3_4),
        ("Lemma 3.6", lemma_3_6),
        ("Lemma 3.15", |c| lemma_3_15(c, &[])),
    ];
    let mut failures = Vec::new();
    let mut times = Vec::new();
    for (label, build) in hexagons {
        let (outcome, t) = timed(|| build(cat).map_err(|e| e.to_string()).and_then(|(d, c)| certify_limit(&d, &c)));
        times.push(format!("{label} {}", ms(t)));
        match outcome {
            Err(e) => failures.push(format!("{label}: {e}")),
            Ok(()) if t >= HEXAGON_BOUND => failures.push(format!("{label}: took {}", ms(t))),
            Ok(()) => {}
        }
    }
    Line {
        criterion: 3,
        title: "three hexagonal limits",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} (bound {} each)", times.join(", "), ms(HEXAGON_BOUND))
        } else {
            failures.join("; ")
        },
    }
}

// 4 --------------------------------------------------------------------------

struct Mediators {
    lemma_3_4_mismatches: usize,
    printed_coefficient_mismatches: usize,
    extra_term_mismatches: usize,
    relation_failures: usize,
    extra_term_nonzero: usize,
}

fn mediators(cat: &Catalog) -> Mediators {
    let mut r = rng(SEED);
    let (d, cone) = lemma_3_4(cat).unwrap();
    let limit = d.compute_limit();
    let mut lemma_3_4_mismatches = 0;
    for _ in 0..SAMPLES {
        let t = random_compatible(&mut r, &d, &limit);
        if solve_apex(&d, &cone, &t).unwrap() != lemma_3_4_formula(&cone.apex, &t).unwrap() {
            lemma_3_4_mismatches += 1;
        }
    }
    let (d, cone) = lemma_3_15(cat, &[]).unwrap();
    let limit = d.compute_limit();
    let x123 = Monomial::new(&[1, 2, 3]).unwrap();
    let mut m = Mediators {
        lemma_3_4_mismatches,
        printed_coefficient_mismatches: 0,
        extra_term_mismatches: 0,
        relation_failures: 0,
        extra_term_nonzero: 0,
    };
    for _ in 0..SAMPLES {
        let t = random_compatible(&mut r, &d, &limit);
        let solved = solve_apex(&d, &cone, &t).unwrap();
        let closed = lemma_3_15_formula(&cone.apex, &t).unwrap();
        for &mono in cone.apex.basis() {
            if solved.coeff(mono) != closed.coeff(mono) {
                if mono == x123 {
                    m.extra_term_mismatches += 1;
                } else {
                    m.printed_coefficient_mismatches += 1;
                }
            }
        }
        if !solved.coeff(x123).is_zero() {
            m.extra_term_nonzero += 1;
        }
        m.relation_failures += lemma_3_15_relations(&t).iter().filter(|(_, l, r)| l != r).count();
    }
    m
}

fn criterion_4(cat: &Catalog) -> (Line, Mediators) {
    let m = mediators(cat);
    let derived = m.lemma_3_4_mismatches == 0
        && m.printed_coefficient_mismatches == 0
        && m.extra_term_mismatches == 0
        && m.relation_failures == 0;
    let line = Line {
        criterion: 4,
        title: "mediator closed forms",
        passed: derived && m.extra_term_nonzero == 0,
        detail: format!(
            "{SAMPLES} tuples each; Lemma 3.4 mismatches {}; Lemma 3.15 printed coefficients mismatches {}, \
             cubic relations failing {}; X1X2X3 coefficient (absent from the printed form) nonzero in {} tuples, \
             matches a1_123 - a1_7 - a2_7 + a1_16 in all but {}",
            m.lemma_3_4_mismatches,
            m.printed_coefficient_mismatches,
            m.relation_failures,
            m.extra_term_nonzero,
            m.extra_term_mismatches
        ),
    };
    (line, m)
}

// 5, 6 -----------------------------------------------------------------------

fn zero_sum(witness: &InfinitesimalMap, parts: &[InfinitesimalMap]) -> Result<(), String> {
    let report = witness.validate().map_err(|e| e.to_string())?;
    if !report.is_ok() {
        return Err(format!("witness invalid: {report}"));
    }
    let d = SimplicialObject::d();
    let d3 = SimplicialObject::first_order(3).unwrap();
    let w = hom(witness);
    for (i, part) in parts.iter().enumerate() {
        let mut comps = ["0", "0", "0"];
        comps[i] = "d1";
        let axis = hom(&map(&d, &d3, &comps));
        if w.then(&axis).unwrap() != hom(part) {
            return Err(format!("axis {} disagrees", i + 1));
        }
    }
    let diag = hom(&map(&d, &d3, &["d1", "d1", "d1"]));
    if w.then(&diag).unwrap() != hom(&InfinitesimalMap::zero(&d, witness.target())) {
        return Err("diagonal is not the zero map".into());
    }
    Ok(())
}

fn criterion_5(cat: &Catalog) -> Line {
    let (outcome, t) = timed(|| -> Result<(), String> {
        let d = SimplicialObject::d();
        let e = cat.object("E").unwrap().clone();
        let stated = [
            map(&d, &e, &["0", "0", "d1", "0"]),
            map(&d, &e, &["0", "0", "-d1", "d1"]),
            map(&d, &e, &["0", "0", "0", "-d1"]),
        ];
        let zeta = cat.hom("zeta").unwrap();
        for (i, expected) in stated.iter().enumerate() {
            let composite = cat.hom(&format!("m{}", i + 1)).unwrap().then(&zeta).unwrap();
            if composite.matrix() != hom(expected).matrix() {
                return Err(format!("step {} composite differs", i + 1));
            }
        }
        zero_sum(cat.map("s").unwrap(), &stated)
    });
    Line {
        criterion: 5,
        title: "primordial Jacobi",
        passed: outcome.is_ok() && t < PRIMORDIAL_BOUND,
        detail: match outcome {
            Ok(()) => format!("composites, witness and diagonal exact, {} (bound {})", ms(t), ms(PRIMORDIAL_BOUND)),
            Err(e) => e,
        },
    }
}

fn criterion_6(cat: &Catalog) -> Line {
    let (outcome, t) = timed(|| -> Result<(), String> {
        let d = SimplicialObject::d();
        let g = cat.object("G").unwrap().clone();
        let z = "0";
        let stated = [
            map(&d, &g, &[z, z, z, z, z, z, "d1", z]),
            map(&d, &g, &[z, z, z, z, z, z, z, "d1"]),
            map(&d, &g, &[z, z, z, z, z, z, "-d1", "-d1"]),
        ];
        let zeta = cat.hom("zeta").unwrap();
        for (i, expected) in stated.iter().enumerate() {
            let composite = cat
                .hom(&format!("k{}", i + 1))
                .unwrap()
                .then(&cat.hom(&format!("step_{}", i + 1)).unwrap())
                .unwrap()
                .then(&zeta)
                .unwrap();
            if composite.matrix() != hom(expected).matrix() {
                return Err(format!("step {} composite differs", i + 1));
            }
        }
        zero_sum(cat.map("t").unwrap(), &stated)
    });
    Line {
        criterion: 6,
        title: "general Jacobi",
        passed: outcome.is_ok() && t < GENERAL_BOUND,
        detail: match outcome {
            Ok(()) => format!("composites, witness and diagonal exact, {} (bound {})", ms(t), ms(GENERAL_BOUND)),
            Err(e) => e,
        },
    }
}

// 7 --------------------------------------------------------------------------

fn criterion_7(cat: &Catalog) -> Line {
    let mut r = rng(SEED + 7);
    let mut functor_failures = 0;
    for _ in 0..200 {
        let (a, b, c) = (random_object(&mut r, 4), random_object(&mut r, 4), random_object(&mut r, 4));
        let f = random_map(&mut r, &a, &b, 200);
        let g = random_map(&mut r, &b, &c, 200);
        let lhs = hom(&InfinitesimalMap::compose(&g, &f).unwrap());
        if lhs != AlgebraHom::compose(&hom(&f), &hom(&g)).unwrap() {
            functor_failures += 1;
        }
    }
    let hom_failures = cat
        .maps()
        .iter()
        .filter(|e| {
            let h = hom(&e.map);
            !h.is_unital() || !h.multiplicativity_defects().unwrap().is_empty()
        })
        .count();
    let mut oplus_failures = 0;
    for _ in 0..100 {
        let (a, b, c) = (random_object(&mut r, 8), random_object(&mut r, 8), random_object(&mut r, 8));
        let ab = a.oplus(&b).unwrap();
        let assoc = ab.oplus(&c).unwrap() == a.oplus(&b.oplus(&c).unwrap()).unwrap();
        if !assoc || ab.dim() != a.dim() + b.dim() - 1 {
            oplus_failures += 1;
        }
    }
    Line {
        criterion: 7,
        title: "property suites",
        passed: functor_failures + hom_failures + oplus_failures == 0,
        detail: format!(
            "functoriality 200 pairs, {functor_failures} failures; {} catalog homs, {hom_failures} not unital and multiplicative; \
             (+) on 100 triples, {oplus_failures} failures",
            cat.maps().len()
        ),
    }
}

// 8 --------------------------------------------------------------------------

fn criterion_8(cat: &Catalog) -> Line {
    let s = verify_all(&HarnessConfig {
        seed: SEED,
        samples: 10,
        faults: vec![Fault::FreeApex],
        parallel: true,
    });
    let failed: Vec<&str> = s.failures().map(|c| c.id.as_str()).collect();
    let diag = s.failures().next().and_then(|c| c.diagnostic.clone()).unwrap_or_default();
    let printed = lemma_3_15(cat, &[Fault::PrintedH31]);
    let type_error = matches!(printed, Err(Error::TargetMismatch { .. }));
    Line {
        criterion: 8,
        title: "fault injection",
        passed: failed == ["limit/lemma-3.15"] && type_error,
        detail: format!(
            "D^8 apex fails {failed:?} ({diag}); printed h^1_31 gives {}",
            match printed {
                Err(e) => e.to_string(),
                Ok(_) => "no error".into(),
            }
        ),
    }
}

// 9 --------------------------------------------------------------------------

fn script(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scripts", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn criterion_9() -> Line {
    let weil = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_weil")).args(args).output().unwrap();
    let (out, t) = timed(|| weil(&["verify-paper", "--json"]));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    let checks = v["checks"].as_array().cloned().unwrap_or_default();
    let all_pass = !checks.is_empty() && checks.iter().all(|c| c["status"] == "pass");
    let codes: Vec<Option<i32>> = ["syntax_error.weil", "invalid_map.weil", "failing_check.weil"]
        .iter()
        .map(|s| weil(&["run", &script(s)]).status.code())
        .collect();
    let passed = out.status.code() == Some(0) && all_pass && codes == [Some(2), Some(3), Some(1)] && t < CLI_BOUND;
    Line {
        criterion: 9,
        title: "CLI contract",
        passed,
        detail: format!(
            "verify-paper --json exit {:?}, {} checks all pass: {all_pass}, {} (bound {}); parse/validation/check exits {:?}",
            out.status.code(),
            checks.len(),
            ms(t),
            ms(CLI_BOUND),
            codes
        ),
    }
}

#[test]
fn acceptance() {
    let cat = build_catalog().unwrap();
    let (l1, dims) = criterion_1(&cat);
    let (l4, med) = criterion_4(&cat);
    let lines = [
        l1,
        criterion_2(&cat),
        criterion_3(&cat),
        l4,
        criterion_5(&cat),
        criterion_6(&cat),
        criterion_7(&cat),
        criterion_8(&cat),
        criterion_9(),
    ];
    for l in &lines {
        l.print();
    }

    // What holds of criteria 1 and 4 once W_G is taken to have dimension 16.
    assert_eq!(dims.e, (6, 6));
    assert!(dims.e_i.iter().all(|&x| x == (17, 17)));
    assert_eq!(dims.g, (16, 16));
    assert!(dims.elapsed < DIM_BOUND);
    assert_eq!(med.lemma_3_4_mismatches, 0);
    assert_eq!(med.printed_coefficient_mismatches, 0);
    assert_eq!(med.extra_term_mismatches, 0);
    assert_eq!(med.relation_failures, 0);

    let failed: Vec<u8> = lines.iter().filter(|l| !l.passed).map(|l| l.criterion).collect();
    assert_eq!(failed, [1, 4], "only the two criteria stated with dim W_G = 15 may fail");
}

#[test]
#[ignore = "W_G has dimension 16; the stated 15 omits X1X2X3"]
fn criterion_1_as_stated() {
    let cat = build_catalog().unwrap();
    let (line, _) = criterion_1(&cat);
    line.print();
    assert!(line.passed);
}

#[test]
#[ignore = "the printed mediator of Lemma 3.15 has no X1X2X3 term"]
fn criterion_4_as_stated() {
    let cat = build_catalog().unwrap();
    let (line, _) = criterion_4(&cat);
    line.print();
    assert!(line.passed);
}
