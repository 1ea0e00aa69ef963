// One line per criterion on stdout; exits nonzero if any fails. Each
// criterion runs the library check and, where one exists, an oracle
// written here without the library's signature code.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{hermite_real_roots, symmetric_signature, Q};
use hermsig::base::BaseRing;
use hermsig::checks::{
    counting_polys, direct_products, extension_counting, ktf_corpus, morita_invariance, pfister_signatures,
    random_polys, ring_morphism, sturm_vs_bisection, two_power_forms, two_power_matches,
};
use hermsig::corpus::{corpus_scenarios, random_squarefree, MAX_ENTRY_HEIGHT, TEMPLATES};
use hermsig::etale::EtaleAlgebra;
use hermsig::numeric::Ring;
use hermsig::quadratic::{transfer_quadratic, QuadForm};
use hermsig::relative::RelativeEtale;
use hermsig::report::Report;
use hermsig::scenario::parse_num;
use hermsig::signature::{find_reference_form, SearchBudget};
use hermsig::transfer::verify_ktf_commutative;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 0;
const HERMITIAN_LIMIT: Duration = Duration::from_secs(120);
const COMMUTATIVE_LIMIT: Duration = Duration::from_secs(30);
const TWO_POWER_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, summary: String) -> Outcome {
    if problems.is_empty() {
        Outcome {
            ok: true,
            detail: summary,
        }
    } else {
        let shown: Vec<_> = problems.iter().take(3).cloned().collect();
        Outcome {
            ok: false,
            detail: format!("{summary}; {} problem(s): {}", problems.len(), shown.join(" | ")),
        }
    }
}

fn report_problems(r: &Report) -> Vec<String> {
    r.failures()
        .map(|row| format!("{} lhs={} rhs={}", row["instance"], row["lhs"], row["rhs"]))
        .collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn to_q(base: &EtaleAlgebra, m: &[Vec<hermsig::etale::EtaleElement>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|x| base.as_rational(x).expect("entries over Q")).collect())
        .collect()
}

/// Real roots of an integer polynomial in `f64`, by grid sign changes
/// refined with bisection.
fn float_roots(f: &[i64]) -> Vec<f64> {
    let eval = |x: f64| f.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64);
    let lead = *f.last().unwrap() as f64;
    let bound = 1.0 + f.iter().map(|&c| (c as f64 / lead).abs()).fold(0.0, f64::max);
    let n = 200_000;
    let step = 2.0 * bound / n as f64;
    let mut roots = Vec::new();
    for i in 0..n {
        let (mut lo, mut hi) = (-bound + i as f64 * step + 1e-7, -bound + (i + 1) as f64 * step + 1e-7);
        if eval(lo).signum() == eval(hi).signum() {
            continue;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if eval(mid).signum() == eval(lo).signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

fn hermitian_trace_formula() -> Outcome {
    let budget = SearchBudget::default();
    let (report, elapsed) = timed(|| ktf_corpus(SEED, 100, &budget));
    let mut problems = report_problems(&report);
    if elapsed >= HERMITIAN_LIMIT {
        problems.push(format!("took {elapsed:?}"));
    }
    if report.rows.len() < 100 {
        problems.push(format!("only {} instances", report.rows.len()));
    }
    // the base is Q: one row per scenario, and r must be the number of
    // real roots of the extension polynomial
    let scenarios = corpus_scenarios(SEED, 100);
    let mut quadratic_checked = 0;
    for (i, (s, row)) in scenarios.iter().zip(&report.rows).enumerate() {
        let f: Vec<i64> = s
            .doc
            .extension
            .as_ref()
            .unwrap()
            .poly
            .iter()
            .map(|v| parse_num(v).unwrap().to_integer().to_i64().unwrap())
            .collect();
        if row["r"] != hermite_real_roots(&f) {
            problems.push(format!(
                "#{i}: r={} but f has {} real roots",
                row["r"],
                hermite_real_roots(&f)
            ));
        }
        // M_1(Q) with the identity: the left side is an ordinary
        // symmetric signature, up to the sign of the reference form
        if TEMPLATES[i % TEMPLATES.len()] == "Q-id" {
            let ctx = &s.transfers["A"];
            let t = ctx.transfer(&s.extension_forms["h"]).unwrap();
            let flat: Vec<Vec<_>> = t
                .flatten()
                .iter()
                .map(|r| r.iter().map(|x| x[0].clone()).collect())
                .collect();
            let eta = find_reference_form(ctx.algebra(), &budget).unwrap();
            let e_flat: Vec<Vec<_>> = eta
                .form()
                .flatten()
                .iter()
                .map(|r| r.iter().map(|x| x[0].clone()).collect())
                .collect();
            let eta_sign = symmetric_signature(&to_q(&s.base, &e_flat)).signum();
            let expected = eta_sign * symmetric_signature(&to_q(&s.base, &flat));
            if row["lhs"] != expected {
                problems.push(format!("#{i}: lhs={} oracle {expected}", row["lhs"]));
            }
            quadratic_checked += 1;
        }
    }
    outcome(
        problems,
        format!(
            "{} instances, {} with oracle left side, {elapsed:.2?}",
            report.rows.len(),
            quadratic_checked
        ),
    )
}

fn commutative_trace_formula() -> Outcome {
    let start = Instant::now();
    let mut library = Duration::ZERO;
    let base = Arc::new(EtaleAlgebra::rationals());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut problems = Vec::new();
    let mut count = 0;
    for i in 0..100 {
        let f = random_squarefree(&mut rng, 4, 9);
        let e = Arc::new(RelativeEtale::new(base.clone(), f.iter().map(|&c| base.from_int(c)).collect()).unwrap());
        let dim = rng.gen_range(1..=4);
        let mut coeffs = Vec::new();
        let entries: Vec<_> = (0..dim)
            .map(|_| loop {
                let c: Vec<i64> = (0..e.degree())
                    .map(|_| rng.gen_range(-MAX_ENTRY_HEIGHT..=MAX_ENTRY_HEIGHT))
                    .collect();
                let a = e.reduce(c.iter().map(|&v| base.from_int(v)).collect());
                if e.is_unit(&a) {
                    coeffs.push(c);
                    break a;
                }
            })
            .collect();
        let form = QuadForm::diagonal(e.clone(), entries);
        let (rep, t) = timed(|| verify_ktf_commutative(&e, &form, 0));
        library += t;
        count += 1;
        let lhs_oracle = symmetric_signature(&to_q(&base, transfer_quadratic(&e, &form).gram()));
        let roots = float_roots(&f);
        if roots.len() != hermite_real_roots(&f) {
            problems.push(format!("#{i}: float roots unreliable for {f:?}"));
            continue;
        }
        let rhs_oracle: i64 = roots
            .iter()
            .map(|&y| {
                coeffs
                    .iter()
                    .map(|c| c.iter().rev().fold(0.0, |acc, &v| acc * y + v as f64).signum() as i64)
                    .sum::<i64>()
            })
            .sum();
        if (rep.lhs, rep.rhs) != (lhs_oracle, rhs_oracle) || rep.lhs != rep.rhs {
            problems.push(format!(
                "#{i}: library {}/{} oracle {lhs_oracle}/{rhs_oracle}",
                rep.lhs, rep.rhs
            ));
        }
    }
    if library >= COMMUTATIVE_LIMIT {
        problems.push(format!("took {library:?}"));
    }
    let total = start.elapsed();
    outcome(
        problems,
        format!(
            "{count} instances against matrix and root oracles, {library:.2?} verifying ({total:.2?} with oracles)"
        ),
    )
}

fn extension_counts() -> Outcome {
    let report = extension_counting(SEED, 26);
    let mut problems = report_problems(&report);
    let polys = counting_polys(SEED, 26);
    if polys.len() != 30 || report.rows.len() != 30 {
        problems.push(format!("{} extensions", report.rows.len()));
    }
    for (f, row) in polys.iter().zip(&report.rows) {
        if row["rhs"] != hermite_real_roots(f) {
            problems.push(format!("{f:?}: r={} oracle {}", row["rhs"], hermite_real_roots(f)));
        }
    }
    for (row, expected) in report.rows.iter().zip([2, 0, 3, 2]) {
        if row["lhs"] != expected {
            problems.push(format!("{}: {} expected {expected}", row["instance"], row["lhs"]));
        }
    }
    outcome(problems, format!("{} extensions", report.rows.len()))
}

fn pfister() -> Outcome {
    let report = pfister_signatures();
    let mut problems = report_problems(&report);
    let max_k = report.rows.iter().filter_map(|r| r["k"].as_u64()).max().unwrap_or(0);
    if max_k != 3 || report.rows.len() != 1 + 5 + 25 + 125 {
        problems.push(format!("{} forms up to k={max_k}", report.rows.len()));
    }
    outcome(problems, format!("{} forms, k <= {max_k}", report.rows.len()))
}

fn morita() -> Outcome {
    let report = morita_invariance(SEED, 50, 20, &SearchBudget::default());
    let mut problems = report_problems(&report);
    let triples = report.rows.iter().filter(|r| r["check"] == "morita-signature").count();
    let squares = report
        .rows
        .iter()
        .filter(|r| r["check"] == "morita-extension-square")
        .count();
    if triples < 50 || squares < 20 {
        problems.push(format!("{triples} triples, {squares} squares"));
    }
    let nonzero = report
        .rows
        .iter()
        .filter(|r| r["lhs"].as_i64().is_some_and(|v| v != 0))
        .count();
    outcome(
        problems,
        format!("{triples} triples ({nonzero} nonzero), {squares} squares"),
    )
}

fn ring_morphism_check() -> Outcome {
    let report = ring_morphism(SEED, 300, &SearchBudget::default());
    let mut problems = report_problems(&report);
    if report.rows.len() < 300 {
        problems.push(format!("{} cases", report.rows.len()));
    }
    outcome(problems, format!("{} cases incl. hyperbolic forms", report.rows.len()))
}

fn products() -> Outcome {
    let report = direct_products(20);
    let mut problems = report_problems(&report);
    if report.rows.len() < 20 {
        problems.push(format!("{} cases", report.rows.len()));
    }
    outcome(problems, format!("{} cases", report.rows.len()))
}

fn two_power() -> Outcome {
    let (report, elapsed) = timed(|| two_power_forms(&SearchBudget::default()));
    let mut problems = report_problems(&report);
    let names: Vec<&str> = report.rows.iter().filter_map(|r| r["instance"].as_str()).collect();
    for needed in ["M1(Q) id", "(-1,-1)_Q conj", "M2(Q) transpose", "M1(Q(sqrt2)) id"] {
        if !names.contains(&needed) {
            problems.push(format!("missing {needed}"));
        }
    }
    if elapsed >= TWO_POWER_LIMIT {
        problems.push(format!("took {elapsed:?}"));
    }
    let ms: Vec<String> = report.rows.iter().map(|r| r["m"].to_string()).collect();
    outcome(
        problems,
        format!("{} algebras, m = [{}], {elapsed:.2?}", report.rows.len(), ms.join(", ")),
    )
}

fn sturm() -> Outcome {
    let report = sturm_vs_bisection(SEED, 200);
    let mut problems = report_problems(&report);
    let polys = random_polys(SEED, 200, 6);
    if report.rows.len() != 200 || polys.iter().any(|f| f.len() > 7) {
        problems.push(format!("{} polynomials", report.rows.len()));
    }
    for (f, row) in polys.iter().zip(&report.rows) {
        let oracle = hermite_real_roots(f);
        if row["lhs"][0] != oracle {
            problems.push(format!("{f:?}: sturm {} hermite {oracle}", row["lhs"][0]));
        }
    }
    outcome(
        problems,
        format!("{} squarefree polynomials of degree <= 6", report.rows.len()),
    )
}

fn matching() -> Outcome {
    let report = two_power_matches(&SearchBudget::default());
    let mut problems = report_problems(&report);
    if report.rows.len() != 10 {
        problems.push(format!("{} targets", report.rows.len()));
    }
    for row in &report.rows {
        match row.get("m").and_then(Value::as_u64) {
            Some(m) if m <= 6 => {}
            other => problems.push(format!("{}: m = {other:?}", row["instance"])),
        }
    }
    let ms: Vec<String> = report.rows.iter().map(|r| r["m"].to_string()).collect();
    outcome(
        problems,
        format!("{} targets, m = [{}]", report.rows.len(), ms.join(", ")),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("hermitian trace formula", hermitian_trace_formula),
        ("commutative trace formula", commutative_trace_formula),
        ("extension counting", extension_counts),
        ("Pfister signatures", pfister),
        ("Morita invariance", morita),
        ("signature ring morphism", ring_morphism_check),
        ("direct products", products),
        ("two-power reference forms", two_power),
        ("Sturm vs bisection", sturm),
        ("2-primary matching", matching),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!(
            "criterion {} [PRIMARY] {name}: {} ({})",
            i + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
