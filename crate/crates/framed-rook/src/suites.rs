//! Named verification suites, shared by the command line and the acceptance run.

use num_bigint::BigInt;

use crate::coset::{self, verify_literal_cosets, verify_product_law};
use crate::error::{guard, Error, Result};
use crate::framed::{self, evaluate_word, FramedPartial, Gen, NormalForm};
use crate::hecke::{self, ConvolutionOracle};
use crate::partitions;
use crate::perm;
use crate::report::{Check, Report};
use crate::ring::Rational;
use crate::rook::{self, bfs_length, canon, compressed, format_pairs, inversion_sets, word_matrix, RookMatrix};
use crate::tensor::basis::{certificate_check, cn_matrix, cn_size, default_method, enumerate_cn, rank_certificate, spanning_closure};
use crate::tensor::relations::{verify_alternative_presentations, verify_matsumoto, verify_ry_relations, verify_support_laws};
use crate::tensor::{EMode, TensorRep};

pub const SUITES: &[&str] = &[
    "partitions",
    "framed",
    "enumerate",
    "rook",
    "cosets",
    "coset-report",
    "hecke",
    "tensor",
    "alt-presentations",
    "basis",
    "iso",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub q: u32,
    /// Framing order for the tensor suites; q - 1 when absent.
    pub d: Option<u32>,
    pub seed: u64,
    /// Pairs checked by sampled comparisons when exhaustion is too large.
    pub samples: usize,
    /// Specializations of t = u^(1/2) used by the rank certificate.
    pub points: Vec<Rational>,
    pub mode: EMode,
    pub unsafe_scale: bool,
}

impl SuiteConfig {
    pub fn new(n: usize, q: u32) -> Self {
        SuiteConfig {
            n,
            q,
            d: None,
            seed: 1,
            samples: 200,
            points: default_points(),
            mode: EMode::Averaged,
            unsafe_scale: false,
        }
    }

    pub fn with_d(mut self, d: u32) -> Self {
        self.d = Some(d);
        self
    }

    pub fn d(&self) -> u32 {
        self.d.unwrap_or(self.q.saturating_sub(1))
    }

    fn params(&self, suite: &str) -> Vec<(&'static str, String)> {
        let mut p = vec![("n", self.n.to_string())];
        match suite_kind(suite) {
            Kind::Tensor => {
                p.push(("d", self.d().to_string()));
                p.push(("e_mode", format!("{:?}", self.mode).to_lowercase()));
            }
            _ => p.push(("q", self.q.to_string())),
        }
        if suite == "basis" {
            let pts: Vec<String> = self.points.iter().map(|t| t.to_string()).collect();
            p.push(("points", pts.join(",")));
        }
        if matches!(suite, "cosets" | "hecke" | "basis") {
            p.push(("seed", self.seed.to_string()));
            p.push(("samples", self.samples.to_string()));
        }
        p
    }

    /// Exhaustive below `limit` items, otherwise a seeded sample.
    fn sampling(&self, total: usize, limit: usize) -> Option<(usize, u64)> {
        (total > limit).then_some((self.samples, self.seed))
    }
}

pub fn default_points() -> Vec<Rational> {
    vec![Rational::new(BigInt::from(7), BigInt::from(3)), Rational::new(BigInt::from(13), BigInt::from(5))]
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Combinatorial,
    Coset,
    Tensor,
}

fn suite_kind(suite: &str) -> Kind {
    match suite {
        "cosets" | "coset-report" | "hecke" | "iso" => Kind::Coset,
        "tensor" | "alt-presentations" | "basis" => Kind::Tensor,
        _ => Kind::Combinatorial,
    }
}

/// The desk-scale envelope: n <= 3, q <= 5 for coset suites; n <= 3, d <= 3
/// for tensor suites; n <= 4, q <= 7 elsewhere.
pub fn check_envelope(suite: &str, cfg: &SuiteConfig) -> Result<()> {
    if !SUITES.contains(&suite) {
        return Err(Error::UnknownSuite(suite.to_string()));
    }
    if cfg.unsafe_scale {
        return Ok(());
    }
    let (n_max, (what, v, v_max)) = match suite_kind(suite) {
        Kind::Coset => (3, ("q", cfg.q as u128, 5)),
        Kind::Tensor => (3, ("d", cfg.d() as u128, 3)),
        Kind::Combinatorial => (4, ("q", cfg.q as u128, 7)),
    };
    guard(&format!("n for suite {suite}"), cfg.n as u128, n_max)?;
    guard(&format!("{what} for suite {suite}"), v, v_max)
}

pub fn run_suite(suite: &str, cfg: &SuiteConfig) -> Result<Report> {
    check_envelope(suite, cfg)?;
    let mut report = Report::new(suite, &cfg.params(suite));
    let (n, q) = (cfg.n, cfg.q);
    match suite {
        "partitions" => report.extend(partitions::verify_pn_presentation(n)?),
        "framed" => {
            report.extend(framed::verify_presentation_relations(n, q)?);
            report.extend(enumeration_table(n, q)?);
            report.push(normal_form_round_trip(n, q)?);
        }
        "enumerate" => report.extend(enumeration_table(n, q)?),
        "rook" => {
            report.push(length_oracle(n, q)?);
            report.extend_checks(worked_examples()?);
        }
        "cosets" => {
            let (_, r) = coset::coset_report(n, q)?;
            report.extend(r);
            let reps = rook::enumerate_q(n, q)?.len();
            report.push(verify_literal_cosets(n, q, cfg.sampling(reps, 200))?);
            report.extend_checks(verify_product_law(n, q, cfg.sampling(n.saturating_sub(1) * reps, 200))?);
            report.extend_checks(coset::verify_torus_powers(n, q)?);
        }
        "coset-report" => {
            let (records, r) = coset::coset_report(n, q)?;
            for rec in records {
                report.push(Check::new(
                    format!("U sigma U for {}", rec.representative),
                    "|U sigma U| = q^(r(r-1)/2 + l(sigma))",
                    rec.verified,
                    format!(
                        "rank {}, length {}, size {}, literal {}",
                        rec.rank,
                        rec.length,
                        rec.size,
                        rec.literal_size.as_deref().unwrap_or("-")
                    ),
                ));
            }
            report.extend(r);
        }
        "hecke" => {
            let oracle = ConvolutionOracle::new(n, q)?;
            let b = oracle.basis().len();
            let gens = hecke::generators(n).len();
            report.push(hecke::compare_generator_rules(&oracle, cfg.sampling(gens * b, 400))?);
            report.extend_checks(hecke::compare_products(&oracle, cfg.sampling(b * b, 400))?);
            report.extend(hecke::verify_prop078(n, q)?);
        }
        "tensor" => {
            let rep = TensorRep::new(n, cfg.d(), cfg.mode)?;
            report.extend(verify_ry_relations(&rep)?);
            report.extend(verify_support_laws(&rep)?);
            report.push(verify_matsumoto(&rep)?);
        }
        "alt-presentations" => {
            let rep = TensorRep::new(n, cfg.d(), cfg.mode)?;
            report.extend(verify_alternative_presentations(&rep)?);
        }
        "basis" => {
            let rep = TensorRep::new(n, cfg.d(), cfg.mode)?;
            let m = cn_matrix(&rep)?;
            let cert = rank_certificate(&m, &cfg.points, default_method(n, cfg.d()))?;
            report.push(certificate_check(&cert));
            let t0 = cfg.points.first().ok_or_else(|| Error::Parse("no specialization point".into()))?;
            report.push(spanning_closure(&rep, &m, t0, cfg.sampling(m.index.len() * (2 * n), 100))?);
        }
        "iso" => report.extend(iso(n, q)?),
        _ => unreachable!("suite names are checked by the envelope"),
    }
    Ok(report)
}

/// Relations in H(M,U) together with dim H(M,U) = |Q| = |C_n| at d = q - 1.
pub fn iso(n: usize, q: u32) -> Result<Report> {
    let mut report = Report::new("iso", &[("n", n.to_string()), ("q", q.to_string())]);
    report.extend(hecke::verify_prop078(n, q)?);
    let cosets = coset::RepresentativeTable::new(n, q)?.reps().len() as u128;
    let qs = framed::count(n, q);
    let cn = cn_size(n, q - 1);
    report.push(Check::new(
        "dim H(M,U) = |Q| = |C_n| at d = q-1",
        "#{U sigma U} = sum_r C(n,r)^2 r! (q-1)^r = sum_r d^r C(n,r)^2 r!",
        cosets == qs && qs == cn,
        format!("double cosets {cosets}, |Q| {qs}, |C_n| {cn}"),
    ));
    Ok(report)
}

/// Per-rank cardinalities of I_n, F_q(I_n) and C_n(d = q-1): formula against
/// enumeration, plus generator closure for the totals.
pub fn enumeration_table(n: usize, q: u32) -> Result<Report> {
    let mut report = Report::new("enumerate", &[("n", n.to_string()), ("q", q.to_string())]);
    let d = q - 1;
    let cn = enumerate_cn(n, d)?;
    for r in 0..=n {
        let i_formula = framed::count_rank(n, 2, r);
        let i_enum = framed::enumerate(n, 2, Some(r))?.len() as u128;
        let f_formula = framed::count_rank(n, q, r);
        let f_enum = framed::enumerate(n, q, Some(r))?.len() as u128;
        let c_formula = (d as u128).pow(r as u32) * perm::binomial(n as u128, r as u128).pow(2) * perm::factorial(r as u128);
        let c_enum = cn.iter().filter(|x| x.r == r).count() as u128;
        report.push(Check::new(
            format!("rank {r}"),
            "|I_n^r| = C(n,r)^2 r!; |F_q(I_n)^r| = (q-1)^r C(n,r)^2 r!; |C_n,r| = d^r C(n,r)^2 r!",
            i_formula == i_enum && f_formula == f_enum && c_formula == c_enum,
            format!(
                "I_n {i_enum} (formula {i_formula}), F_q(I_n) {f_enum} (formula {f_formula}), C_n {c_enum} (formula {c_formula})"
            ),
        ));
    }
    let i_total = framed::count(n, 2);
    let i_closure = framed::closure(&framed::all_generators(n, 2, true)?, n, 2)?.len() as u128;
    let f_total = framed::count(n, q);
    let f_closure = framed::closure(&framed::all_generators(n, q, true)?, n, q)?.len() as u128;
    report.push(Check::new(
        "totals",
        "|I_n| = sum_r C(n,r)^2 r!; |F_q(I_n)| = sum_r (q-1)^r C(n,r)^2 r!",
        i_total == i_closure && f_total == f_closure && cn.len() as u128 == cn_size(n, d),
        format!(
            "I_n {i_total} (closure {i_closure}), F_q(I_n) {f_total} (closure {f_closure}), C_n {} (formula {})",
            cn.len(),
            cn_size(n, d)
        ),
    ));
    Ok(report)
}

fn normal_form_round_trip(n: usize, q: u32) -> Result<Check> {
    let all = framed::enumerate(n, q, None)?;
    let mut failures = Vec::new();
    for x in &all {
        let nf = framed::normal_form(x);
        if evaluate_word(&nf.to_word(), n, q)? != *x {
            failures.push(format!("{x}: {nf}"));
        }
    }
    Ok(Check::from_failures(
        "normal form evaluates back",
        "sigma = omega_A f_m sigma* nu^(n-r) omega-bar_B",
        all.len(),
        failures,
    ))
}

/// Closed-form length against breadth-first search over W x W, on all of R.
pub fn length_oracle(n: usize, q: u32) -> Result<Check> {
    let rs = rook::enumerate_r(n, q)?;
    let failures = rs
        .iter()
        .filter(|s| s.length != bfs_length(s))
        .map(|s| format!("{s}: closed form {}, search {}", s.length, bfs_length(s)))
        .collect();
    Ok(Check::from_failures(
        format!("length closed form vs search (n={n})"),
        "l(sigma) = |inv| + sum_{i in I}(i-1) + sum_{j in J}(n-j) - r(r-1)",
        rs.len(),
        failures,
    ))
}

fn golden(name: &str, anchor: &str, got: String, want: &str) -> Check {
    let ok = got == want;
    let detail = if ok { got } else { format!("got {got}; printed {want}") };
    Check::new(name, anchor, ok, detail)
}

fn example_sigma() -> Result<rook::CanonicalQ> {
    Ok(canon(&RookMatrix::parse("0 0 0 0 0; 0 0 0 0 2; 5 0 0 0 0; 0 0 3 0 0; 0 0 0 0 0", 7)?))
}

/// The worked examples on the 5 x 5 element over F_7 and the n = 6 normal form.
pub fn worked_examples() -> Result<Vec<Check>> {
    let s = example_sigma()?;
    let mut out = Vec::new();

    let f = rook::bruhat_factor(&s);
    let folds = word_matrix(&f.to_word(), 5, 7)? == s.matrix;
    out.push(golden(
        "example: factorization over F_7",
        "sigma = u a_1^m_1 ... a_r^m_r nu^(n-r) w",
        format!("{} = {f}{}", s.matrix.to_text(), if folds { "" } else { " (does not fold)" }),
        "0 0 0 0 0; 0 0 0 0 2; 5 0 0 0 0; 0 0 3 0 0; 0 0 0 0 0 = s_1s_2s_3s_1s_2 · a_1^5a_2a_3^2 · ν^2 · s_2s_1s_3",
    ));
    let (ti, _, tj) = rook::t_decompose(&s);
    out.push(golden(
        "example: sigma*, sigma~ and torus parts",
        "sigma = t_I sigma~ = sigma~ t_J",
        format!(
            "I={:?} J={:?}; sigma* = {}; sigma~ = {}; t_I = diag{:?}; t_J = diag{:?}",
            s.rows,
            s.cols,
            compressed(&s).to_text(),
            s.support.to_text(),
            ti.diagonal(),
            tj.diagonal()
        ),
        "I=[2, 3, 4] J=[1, 3, 5]; sigma* = 0 0 2; 5 0 0; 0 3 0; sigma~ = 0 0 0 0 0; 0 0 0 0 1; 1 0 0 0 0; 0 0 1 0 0; 0 0 0 0 0; \
         t_I = diag[1, 2, 5, 3, 1]; t_J = diag[5, 1, 3, 1, 2]",
    ));

    let sets = inversion_sets(&s);
    out.push(golden(
        "example: length and inversions",
        "l = n(sigma) + m_L(sigma) + m_R(sigma)",
        format!(
            "inv = {}; inv_L = {}; inv_R = {}; n = {}, m_L = {}, m_R = {}, l = {}, search l = {}",
            format_pairs(&sets.inv),
            format_pairs(&sets.inv_l),
            format_pairs(&sets.inv_r),
            sets.inv.len(),
            s.m_left(),
            s.m_right(),
            s.length,
            bfs_length(&s)
        ),
        "inv = {(2,3),(2,4)}; inv_L = {(1,2),(1,3),(1,4)}; inv_R = {(1,2),(1,4),(3,4)}; n = 2, m_L = 3, m_R = 3, l = 8, search l = 8",
    ));

    let printed = [
        ("I_{0,0}", &sets.i[0][0], "{(1,5)}"),
        ("I_{1,0}", &sets.i[1][0], "{(2,5),(3,5),(4,5)}"),
        ("I_{1,1}", &sets.i[1][1], "{(2,3),(2,4),(3,4)}"),
        ("J_{0,0}", &sets.j[0][0], "{(2,4)}"),
        ("J_{0,1}", &sets.j[0][1], "{(2,3),(2,5)}"),
        ("J_{1,1}", &sets.j[1][1], "{(1,3),(1,5),(3,5)}"),
    ];
    for (name, got, want) in printed {
        out.push(golden(
            &format!("example: {name}"),
            "I_{a,b} = {(i,j) in I_a x I_b : i < j}, J_{a,b} likewise",
            format!("{name} = {}", format_pairs(got)),
            &format!("{name} = {want}"),
        ));
    }

    let sw = |w: &[usize]| -> Vec<Gen> { w.iter().map(|&k| Gen::S(k)).collect() };
    let (left, right) = ([2, 1, 3, 2, 1], [3, 1, 2]);
    let staircase = word_matrix(&sw(&left), 5, 7)?.mul(&s.support).mul(&word_matrix(&sw(&right), 5, 7)?);
    let v3 = rook::v_r(5, 7, 3);
    let moves = left.len() + right.len();
    out.push(golden(
        "example: moves to the staircase",
        "v_r = u sigma~ w with l(u) + l(w) = l(sigma)",
        format!(
            "(s_2s_1)(s_3s_2s_1)σ̃(s_3s_1s_2) {} v_r = {}; {moves} moves",
            if staircase == v3 { "=" } else { "!=" },
            v3.to_text()
        ),
        "(s_2s_1)(s_3s_2s_1)σ̃(s_3s_1s_2) = v_r = 0 0 1 0 0; 0 0 0 1 0; 0 0 0 0 1; 0 0 0 0 0; 0 0 0 0 0; 8 moves",
    ));

    let nf = NormalForm { n: 6, a: vec![2, 4, 5], m: vec![3, 5, 2], star: vec![3, 2, 1], b: vec![1, 4, 6] };
    let x: FramedPartial = evaluate_word(&nf.to_word(), 6, 7)?;
    let back = framed::normal_form(&x) == nf;
    out.push(golden(
        "example: normal form for n = 6",
        "sigma = omega_A f_m sigma* nu^(n-r) omega-bar_B",
        format!("σ = {nf}{}", if back { "" } else { " (round trip fails)" }),
        "σ = ω_{2,4,5} f_(3,5,2) (s_1s_2s_1) ν^3 ω̄_{1,4,6}",
    ));
    Ok(out)
}
