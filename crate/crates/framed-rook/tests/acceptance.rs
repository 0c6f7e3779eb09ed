//! One line per acceptance criterion. Every comparison is exact; the only
//! tolerances are the wall-clock budgets below.
//!
//! Criteria listed in KNOWN_RED fail for reasons recorded next to them; they
//! still print FAIL, but only an unexpected failure (or an unexpected pass of
//! a known-red criterion) makes this binary exit nonzero.

use std::time::{Duration, Instant};

use framed_rook::coset::{coset_report, verify_literal_cosets, verify_product_law};
use framed_rook::framed;
use framed_rook::hecke::{compare_generator_rules, compare_products, verify_prop078, ConvolutionOracle};
use framed_rook::report::Check;
use framed_rook::suites::{default_points, iso, length_oracle, worked_examples};
use framed_rook::tensor::basis::{certificate_check, cn_matrix, default_method, rank_certificate, spanning_closure};
use framed_rook::tensor::relations::{verify_alternative_presentations, verify_ry_relations};
use framed_rook::tensor::{EMode, TensorRep};
use framed_rook::Result;

const BUDGET_COUNTING: Duration = Duration::from_secs(10);
const BUDGET_COSETS_N3: Duration = Duration::from_secs(120);
const BUDGET_TENSOR_N3: Duration = Duration::from_secs(300);

const SEED: u64 = 20;
const SAMPLES: usize = 200;
const CLOSURE_SAMPLES_N3: usize = 120;

const KNOWN_RED: &[(u32, &str)] = &[
    (
        6,
        "E_i as the framing average fixes v_0 (x) v_j^d, where the two-factor E_i is zero; \
         with the average the quadratic and inverse relations fail, and the derived R_i, P_i \
         relations that use T_i^(-1) fail with them. All relations hold with the two-factor E_i.",
    ),
    (
        9,
        "the printed J_{0,1} of the worked example omits (4,5): columns 2, 4 are empty and \
         3, 5 are not, so (4,5) belongs to J_0 x J_1. All other printed values reproduce.",
    ),
];

struct Outcome {
    ok: bool,
    summary: String,
    failures: Vec<String>,
}

fn outcome(checks: &[Check], extra: Vec<(bool, String)>) -> Outcome {
    let mut failures: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    failures.extend(extra.iter().filter(|(ok, _)| !ok).map(|(_, s)| s.clone()));
    let passed = checks.iter().filter(|c| c.passed()).count() + extra.iter().filter(|(ok, _)| *ok).count();
    let total = checks.len() + extra.len();
    Outcome { ok: failures.is_empty(), summary: format!("{passed}/{total} checks"), failures }
}

fn timed(label: &str, elapsed: Duration, budget: Duration) -> (bool, String) {
    (elapsed <= budget, format!("{label} took {:.1}s (budget {}s)", elapsed.as_secs_f64(), budget.as_secs()))
}

fn c1_counting() -> Result<Outcome> {
    let start = Instant::now();
    let mut extra = Vec::new();
    let mut seq = Vec::new();
    for n in 0..=4 {
        let formula = framed::count(n, 2);
        let listed = framed::enumerate(n, 2, None)?.len() as u128;
        seq.push(formula.to_string());
        extra.push((formula == listed, format!("|I_{n}| formula {formula}, enumerated {listed}")));
    }
    extra.push((seq.join(",") == "1,2,7,34,209", format!("|I_n| for n = 0..4 is {}", seq.join(","))));
    for (n, q) in [(2, 3), (2, 5), (3, 3)] {
        let formula = framed::count(n, q);
        let listed = framed::enumerate(n, q, None)?.len() as u128;
        let closed = framed::closure(&framed::all_generators(n, q, true)?, n, q)?.len() as u128;
        extra.push((
            formula == listed && listed == closed,
            format!("|F_{q}(I_{n})| formula {formula}, enumerated {listed}, generated {closed}"),
        ));
    }
    extra.push(timed("counting", start.elapsed(), BUDGET_COUNTING));
    Ok(outcome(&[], extra))
}

fn c2_cosets() -> Result<Outcome> {
    let mut checks = Vec::new();
    checks.extend(coset_report(2, 3)?.1.checks);
    checks.push(verify_literal_cosets(2, 3, None)?);
    let start = Instant::now();
    checks.extend(coset_report(3, 3)?.1.checks);
    checks.push(verify_literal_cosets(3, 3, Some((60, SEED)))?);
    let extra = vec![timed("(3,3) decomposition", start.elapsed(), BUDGET_COSETS_N3)];
    Ok(outcome(&checks, extra))
}

fn c3_length() -> Result<Outcome> {
    let mut checks = vec![length_oracle(3, 3)?];
    checks.extend(worked_examples()?.into_iter().filter(|c| c.name == "example: length and inversions"));
    Ok(outcome(&checks, vec![]))
}

fn c4_product_law() -> Result<Outcome> {
    let mut checks = Vec::new();
    checks.extend(verify_product_law(2, 3, None)?);
    checks.extend(verify_product_law(3, 3, Some((SAMPLES, SEED)))?);
    Ok(outcome(&checks, vec![]))
}

fn c5_algebra() -> Result<Outcome> {
    let mut checks = Vec::new();
    let o2 = ConvolutionOracle::new(2, 3)?;
    checks.push(compare_generator_rules(&o2, None)?);
    checks.extend(compare_products(&o2, None)?);
    checks.extend(verify_prop078(2, 3)?.checks);
    let o3 = ConvolutionOracle::new(3, 3)?;
    checks.push(compare_generator_rules(&o3, Some((SAMPLES, SEED)))?);
    checks.extend(compare_products(&o3, Some((SAMPLES, SEED)))?);
    checks.extend(verify_prop078(3, 3)?.checks);
    Ok(outcome(&checks, vec![]))
}

fn tensor_checks(n: usize, d: u32, mode: EMode) -> Result<Vec<Check>> {
    let rep = TensorRep::new(n, d, mode)?;
    let mut checks = verify_ry_relations(&rep)?.checks;
    checks.extend(verify_alternative_presentations(&rep)?.checks);
    for c in &mut checks {
        c.name = format!("{} (n={n}, d={d})", c.name);
    }
    Ok(checks)
}

fn c6_tensor() -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut extra = Vec::new();
    for (n, d) in [(2, 2), (2, 3), (3, 3)] {
        let start = Instant::now();
        checks.extend(tensor_checks(n, d, EMode::Averaged)?);
        if n == 3 {
            extra.push(timed("(3,3) operator identities", start.elapsed(), BUDGET_TENSOR_N3));
        }
    }
    Ok(outcome(&checks, extra))
}

fn c6_diagnostic() -> Result<String> {
    let mut fails = Vec::new();
    let mut total = 0;
    for (n, d) in [(2, 2), (2, 3), (3, 3)] {
        let checks = tensor_checks(n, d, EMode::Explicit)?;
        total += checks.len();
        fails.extend(checks.into_iter().filter(|c| !c.passed()).map(|c| c.name));
    }
    Ok(format!("with the two-factor E_i: {}/{total} hold; failing: {}", total - fails.len(), fails.join(", ")))
}

fn c7_basis() -> Result<Outcome> {
    let mut checks = Vec::new();
    let points = default_points();
    for (n, d, sample) in [(2, 2, None), (3, 3, Some((CLOSURE_SAMPLES_N3, SEED)))] {
        let rep = TensorRep::new(n, d, EMode::Averaged)?;
        let m = cn_matrix(&rep)?;
        checks.push(certificate_check(&rank_certificate(&m, &points, default_method(n, d))?));
        checks.push(spanning_closure(&rep, &m, &points[0], sample)?);
    }
    Ok(outcome(&checks, vec![]))
}

fn c8_iso() -> Result<Outcome> {
    let mut checks = Vec::new();
    for (n, q) in [(2, 3), (3, 3)] {
        checks.extend(iso(n, q)?.checks);
    }
    Ok(outcome(&checks, vec![]))
}

fn c9_examples() -> Result<Outcome> {
    Ok(outcome(&worked_examples()?, vec![]))
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Result<Outcome>);
    let criteria: [Criterion; 9] = [
        (1, "counting", c1_counting),
        (2, "double coset decomposition", c2_cosets),
        (3, "length oracle", c3_length),
        (4, "coset product law", c4_product_law),
        (5, "algebra multiplication", c5_algebra),
        (6, "tensor representation", c6_tensor),
        (7, "basis certification", c7_basis),
        (8, "isomorphism at desk scale", c8_iso),
        (9, "worked examples", c9_examples),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id).map(|(_, why)| *why);
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(o) => {
                let status = if o.ok { "PASS" } else { "FAIL" };
                println!("criterion {id} {status}: {name}, {} ({secs:.1}s)", o.summary);
                for f in &o.failures {
                    println!("    failed: {f}");
                }
                match (o.ok, known) {
                    (false, Some(why)) => println!("    known red: {why}"),
                    (false, None) => unexpected += 1,
                    (true, Some(_)) => {
                        println!("    listed as known red but passed; update KNOWN_RED");
                        unexpected += 1;
                    }
                    (true, None) => {}
                }
            }
            Err(e) => {
                println!("criterion {id} FAIL: {name}, error {e} ({secs:.1}s)");
                unexpected += 1;
            }
        }
        if id == 6 {
            match c6_diagnostic() {
                Ok(s) => println!("    diagnostic: {s}"),
                Err(e) => println!("    diagnostic error: {e}"),
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected result(s)");
        std::process::exit(1);
    }
}
