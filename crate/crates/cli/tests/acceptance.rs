//! End-to-end acceptance run: `lab all --seed 42` twice, every criterion judged
//! from the persisted report with its own pinned tolerance.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use lab::report::{CaseRecord, SuiteReport};

const CPN_P: [f64; 4] = [2.5, 3.0, 4.0, 6.0];
const CPN_UPPER: f64 = 1.0 + 1e-6;
const CONSTANT_DISTANCE: f64 = 1e-3;
const STRICT_CASES: usize = 10_000;
const STRICT_FLOOR: f64 = 1e-6;
const KULIKOV_CASES: usize = 1000;
const KULIKOV_TUPLES: [&str; 3] = [
    "p=2/alpha=-1/q=4/beta=0",
    "p=2/alpha=-1/q=6/beta=1",
    "p=3/alpha=-1/q=6/beta=0",
];
const KERNEL_TOL: f64 = 1e-7;
const STEIN_TOL: f64 = 1e-6;
const STEIN_CASES: usize = 100 * 3 * 3;
const GAMMA_TOL: f64 = 1e-12;
const KNOWN_TOL: f64 = 1e-10;
const KEYCHAIN_CASES: usize = 1000;
const IDENTITY_TOL: f64 = 1e-10;
const CONTRACTION_UPPER: f64 = 1.0 + 1e-8;
const CONTRACTION_CASES: usize = 1000;
/// `sin(π/130)`, the first point of the 64-point ε grid, where both failing pairs already exceed one.
const FROZEN_CROSSING: f64 = 0.024163745236132288;
const HV_SLACK: f64 = 1e-9;
const DIRICHLET_CASES: usize = 500;
const REDUCTION_TOL: f64 = 1e-8;
const ROUNDING_FLOOR: f64 = 1e-14;

/// Runtime ceilings in seconds, per suite.
const CPN_SECONDS: f64 = 180.0;
const KULIKOV_SECONDS: f64 = 120.0;
const DIRICHLET_HELSON_SECONDS: f64 = 300.0;

struct Run {
    report: SuiteReport,
    body: String,
    timings: BTreeMap<String, f64>,
    exit: Option<i32>,
}

fn run_all(out: &Path) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_lab"))
        .args(["all", "--seed", "42", "--out"])
        .arg(out)
        .output()
        .expect("lab binary runs");
    let stderr = String::from_utf8_lossy(&output.stderr);
    let timings = stderr
        .lines()
        .filter_map(|l| {
            let mut parts = l.strip_prefix("time ")?.split_whitespace();
            let suite = parts.next()?.to_string();
            let secs = parts.next()?.trim_end_matches('s').parse().ok()?;
            Some((suite, secs))
        })
        .collect();
    let body = std::fs::read_to_string(out).unwrap_or_default();
    let report = SuiteReport::from_json_file(out).unwrap_or_else(|e| panic!("report unreadable: {e}\n{stderr}"));
    Run {
        report,
        body,
        timings,
        exit: output.status.code(),
    }
}

fn with_prefix<'a>(report: &'a SuiteReport, prefix: &str) -> Vec<&'a CaseRecord> {
    report.cases.iter().filter(|c| c.id.starts_with(prefix)).collect()
}

fn inequality_holds(c: &CaseRecord) -> bool {
    c.pass && c.lhs <= c.rhs + c.est_error + ROUNDING_FLOOR * c.rhs.abs()
}

fn timing(run: &Run, suite: &str) -> f64 {
    run.timings.get(suite).copied().unwrap_or(f64::INFINITY)
}

type Verdict = (bool, String);

fn criterion_1(run: &Run) -> Verdict {
    let r = &run.report;
    let mut ok = true;
    let mut worst_value: f64 = 0.0;
    let mut worst_distance: f64 = 0.0;
    for p in CPN_P {
        for n in 1..=8 {
            match r.case(&format!("cpn/p={p}/n={n}")) {
                Some(c) => {
                    let d = c.inputs["distance_to_constant"].as_f64().unwrap_or(f64::INFINITY);
                    ok &= c.pass && c.lhs <= CPN_UPPER && d < CONSTANT_DISTANCE;
                    worst_value = worst_value.max(c.lhs);
                    worst_distance = worst_distance.max(d);
                }
                None => ok = false,
            }
        }
    }
    let secs = timing(run, "cpn");
    ok &= secs < CPN_SECONDS;
    (
        ok,
        format!("C_(p,n) over 32 pairs: max best_value {worst_value:.15}, max distance to constant {worst_distance:.1e}, cpn suite {secs:.1}s"),
    )
}

fn criterion_2(run: &Run) -> Verdict {
    let strict = with_prefix(&run.report, "cpn/strict/");
    let violations = strict.iter().filter(|c| !inequality_holds(c)).count();
    let floor = strict.iter().map(|c| 1.0 - c.lhs).fold(f64::INFINITY, f64::min);
    let below = strict.iter().filter(|c| 1.0 - c.lhs < STRICT_FLOOR).count();
    let ok = strict.len() == STRICT_CASES && violations == 0 && timing(run, "cpn") < CPN_SECONDS;
    (
        ok,
        format!(
            "{} normalized polynomials, {violations} violations, margin floor {floor:.2e} ({below} below 1e-6, logged only)",
            strict.len()
        ),
    )
}

fn criterion_3(run: &Run) -> Verdict {
    let r = &run.report;
    let mut ok = true;
    let mut fuzz = 0;
    let mut kernel_worst: f64 = 0.0;
    for t in KULIKOV_TUPLES {
        let cases = with_prefix(r, &format!("kulikov/{t}/"));
        let (kernels, random): (Vec<_>, Vec<_>) = cases.into_iter().partition(|c| c.id.contains("/kernel/"));
        ok &= random.len() == KULIKOV_CASES && random.iter().all(|c| inequality_holds(c));
        ok &= kernels.len() == 4 && kernels.iter().all(|c| c.lhs < KERNEL_TOL);
        fuzz += random.len();
        kernel_worst = kernels.iter().map(|c| c.lhs).fold(kernel_worst, f64::max);
    }
    let secs = timing(run, "kulikov");
    ok &= secs < KULIKOV_SECONDS;
    (
        ok,
        format!("{fuzz} random cases hold, kernel |lhs - rhs| ≤ {kernel_worst:.1e}, {secs:.1}s"),
    )
}

fn criterion_4(run: &Run) -> Verdict {
    let cases = with_prefix(&run.report, "norms/hardy_stein/");
    let worst = cases.iter().map(|c| c.lhs).fold(0.0, f64::max);
    let ok = cases.len() == STEIN_CASES && cases.iter().all(|c| c.lhs < STEIN_TOL);
    (ok, format!("{} residuals, worst relative {worst:.1e}", cases.len()))
}

fn criterion_5(run: &Run) -> Verdict {
    let r = &run.report;
    let exact = ["coeff/c2_is_n_plus_1", "coeff/c1_is_one", "coeff/d2_divisor_count"]
        .iter()
        .all(|id| r.case(id).is_some_and(|c| c.pass && c.lhs == 0.0));
    let gamma = with_prefix(r, "coeff/gamma_ratio/");
    let gamma_worst = gamma.iter().map(|c| c.lhs).fold(0.0, f64::max);
    let monotone = with_prefix(r, "coeff/monotone/");
    let bound = with_prefix(r, "coeff/weight_bound/");
    let ok = exact
        && !gamma.is_empty()
        && gamma_worst <= GAMMA_TOL
        && monotone.len() == 6
        && monotone.iter().all(|c| c.pass && c.lhs > 0.0)
        && bound.len() == 6
        && bound.iter().all(|c| c.pass && c.lhs <= 1.0);
    (
        ok,
        format!(
            "exact c_2, c_1, d_2; Γ-ratio worst {gamma_worst:.1e} over {} draws; A_k grid {} p values",
            gamma.len(),
            monotone.len()
        ),
    )
}

fn criterion_6(run: &Run) -> Verdict {
    let r = &run.report;
    let h4 = r.case("norms/known/h4_one_plus_z");
    let monomials = with_prefix(r, "norms/known/a2_z");
    let worst = monomials.iter().chain(h4.iter()).map(|c| c.lhs).fold(0.0, f64::max);
    let ok = h4.is_some() && monomials.len() == 102 && worst < KNOWN_TOL;
    (
        ok,
        format!("‖1+z‖_H4 and 51 monomials by both paths, worst error {worst:.1e}"),
    )
}

fn criterion_7(run: &Run) -> Verdict {
    let r = &run.report;
    let chain: Vec<_> = with_prefix(r, "keychain/")
        .into_iter()
        .filter(|c| !c.id.ends_with("coeff_identity"))
        .collect();
    let identity: Vec<_> = with_prefix(r, "keychain/")
        .into_iter()
        .filter(|c| c.id.ends_with("coeff_identity"))
        .collect();
    let violations = chain.iter().filter(|c| !c.pass).count();
    let id_worst = identity.iter().map(|c| c.lhs).fold(0.0, f64::max);
    let ok = identity.len() == 3 * KEYCHAIN_CASES
        && chain.len() == 2 * identity.len()
        && violations == 0
        && id_worst < IDENTITY_TOL;
    (
        ok,
        format!(
            "{} polynomial/p pairs, {violations} chain violations, identity worst {id_worst:.1e}",
            identity.len()
        ),
    )
}

fn criterion_8(run: &Run) -> Verdict {
    let r = &run.report;
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for pair in ["p=4/alpha=0", "p=3/alpha=-0.5"] {
        let cases = with_prefix(r, &format!("riesz/contraction/{pair}/"));
        ok &= cases.len() == CONTRACTION_CASES && cases.iter().all(|c| c.lhs <= CONTRACTION_UPPER);
        worst = cases.iter().map(|c| c.lhs).fold(worst, f64::max);
    }
    let mut crossings = Vec::new();
    for alpha in ["-0.5", "-0.9"] {
        let c = r.case(&format!("riesz/eps_scan/p=4/alpha={alpha}"));
        let first = c.and_then(|c| c.inputs["first_violation"].as_f64());
        ok &= c.is_some_and(|c| c.pass && c.lhs > 1.0) && first == Some(FROZEN_CROSSING);
        crossings.push(format!(
            "α={alpha}: ε={}",
            first.map_or("none".into(), |e| format!("{e:.6}"))
        ));
    }
    (
        ok,
        format!(
            "sufficiency worst ratio {worst:.12}; crossings {}",
            crossings.join(", ")
        ),
    )
}

fn criterion_9(run: &Run) -> Verdict {
    let r = &run.report;
    let mut ok = true;
    let mut parts = Vec::new();
    for q in [4.0 / 3.0, 2.0, 3.0, 4.0] {
        let cases = with_prefix(r, &format!("hv/q={q}/"));
        let bound = 1.0 / (std::f64::consts::PI / q).sin();
        let max = cases.iter().map(|c| c.lhs).fold(0.0, f64::max);
        ok &= !cases.is_empty() && max <= bound + HV_SLACK;
        parts.push(format!("q={q:.3}: {max:.6} ≤ {bound:.6}"));
    }
    let analytic = with_prefix(r, "hv/analytic/q=2/");
    ok &= !analytic.is_empty() && analytic.iter().all(|c| c.lhs == 0.0);
    (
        ok,
        format!(
            "{}; analytic ratio exactly 1 on {} cases",
            parts.join(", "),
            analytic.len()
        ),
    )
}

fn criterion_10(run: &Run) -> Verdict {
    let r = &run.report;
    let mut ok = true;
    let mut counts = Vec::new();
    for prefix in ["dirichlet/p=2.5/", "dirichlet/p=4/", "helson/"] {
        let cases: Vec<_> = with_prefix(r, prefix)
            .into_iter()
            .filter(|c| !c.id.contains("/reduction/"))
            .collect();
        ok &= cases.len() == DIRICHLET_CASES && cases.iter().all(|c| inequality_holds(c));
        counts.push(cases.len());
    }
    let lhs = r.case("dirichlet/reduction/lhs");
    let rhs = r.case("dirichlet/reduction/rhs");
    ok &= lhs.is_some_and(|c| c.lhs < REDUCTION_TOL) && rhs.is_some_and(|c| c.lhs < REDUCTION_TOL);
    let secs = timing(run, "dirichlet") + timing(run, "helson");
    ok &= secs < DIRICHLET_HELSON_SECONDS;
    (
        ok,
        format!(
            "{counts:?} cases hold; reduction errors {:.1e} / {:.1e}; {secs:.1}s",
            lhs.map_or(f64::NAN, |c| c.lhs),
            rhs.map_or(f64::NAN, |c| c.lhs)
        ),
    )
}

fn strip_timestamp(body: &str) -> String {
    body.lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn criterion_11(a: &Run, b: &Run) -> Verdict {
    let same = !a.body.is_empty() && strip_timestamp(&a.body) == strip_timestamp(&b.body);
    let parsed = lab::report::without_timestamp(&a.body).ok() == lab::report::without_timestamp(&b.body).ok();
    (
        same && parsed,
        format!("{} bytes, identical apart from the timestamp: {same}", a.body.len()),
    )
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let started = Instant::now();
    let first = run_all(&dir.path().join("first.json"));
    let second = run_all(&dir.path().join("second.json"));
    println!(
        "two `lab all --seed 42` runs in {:.1}s",
        started.elapsed().as_secs_f64()
    );

    let exit_ok = first.exit == Some(0) && first.report.passed();
    println!(
        "report: {} cases, {} failures, exit code {:?}",
        first.report.summary.count, first.report.summary.failure_count, first.exit
    );

    let verdicts = [
        criterion_1(&first),
        criterion_2(&first),
        criterion_3(&first),
        criterion_4(&first),
        criterion_5(&first),
        criterion_6(&first),
        criterion_7(&first),
        criterion_8(&first),
        criterion_9(&first),
        criterion_10(&first),
        criterion_11(&first, &second),
    ];
    let mut failed = !exit_ok;
    for (i, (ok, detail)) in verdicts.iter().enumerate() {
        println!(
            "criterion {:>2}: {}  {detail}",
            i + 1,
            if *ok { "PASS" } else { "FAIL" }
        );
        failed |= !ok;
    }
    if failed {
        for id in first.report.summary.failures.iter().take(20) {
            println!("  failing case {id}");
        }
        std::process::exit(1);
    }
}
