//! Acceptance run: one line per criterion, driven through the binary.
//!
//! Runs as a plain program (no test harness) so the lines are always shown.
//! Exits nonzero if a criterion fails unexpectedly; criteria listed in
//! `KNOWN_FAILURES` must fail exactly in the recorded sub-checks.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use serde_json::Value;

/// Criterion 6: the w4 kernel carries no power of y, so for large y the
/// fitted exponent of Phi_w4 is near 0, not +-1/6.
const KNOWN_FAILURES: &[(u32, &[&str])] = &[(6, &["phi_w4_large_y_exponent"])];

struct Run {
    stdout: Vec<u8>,
    report: Value,
    elapsed: Duration,
}

fn satake(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_satake"))
        .args(args)
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let code = out.status.code();
    assert!(
        code == Some(0) || code == Some(2),
        "satake {:?} exited with {:?}: {}",
        args,
        code,
        String::from_utf8_lossy(&out.stderr)
    );
    let report: Value = serde_json::from_slice(&out.stdout).expect("json report");
    Run {
        stdout: out.stdout,
        report,
        elapsed,
    }
}

fn rows(r: &Run) -> &Vec<Value> {
    r.report["results"].as_array().expect("results array")
}

fn passed(r: &Run) -> bool {
    r.report["pass"].as_bool() == Some(true)
}

fn max_field(r: &Run, key: &str) -> f64 {
    rows(r).iter().filter_map(|v| v[key].as_f64()).fold(0.0, f64::max)
}

fn failing(r: &Run) -> Vec<String> {
    rows(r)
        .iter()
        .filter(|v| v["pass"].as_bool() == Some(false))
        .map(|v| {
            v["quantity"]
                .as_str()
                .or(v["check"].as_str())
                .map(str::to_string)
                .unwrap_or_else(|| v.to_string())
        })
        .collect()
}

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
    failed_parts: Vec<String>,
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

fn kf_closed_form() -> Outcome {
    let r = satake(&["kf", "--N", "3", "--lmax", "8"]);
    Outcome {
        id: 1,
        pass: passed(&r),
        detail: format!("{} pairs, all exact matches: {}", rows(&r).len(), passed(&r)),
        elapsed: r.elapsed,
        budget: Duration::from_secs(10),
        failed_parts: failing(&r),
    }
}

fn plancherel_moments() -> Outcome {
    let a = satake(&["moments", "--N", "3", "--p", "2,3,5", "--deg", "4"]);
    let b = satake(&["moments", "--N", "2", "--p", "2,3,5", "--deg", "6"]);
    let quarter = rows(&a)
        .iter()
        .find(|v| v["p"] == 2 && v["m"] == serde_json::json!([1, 1]))
        .and_then(|v| v["moment"].as_f64())
        .unwrap_or(f64::NAN);
    let pass = passed(&a) && passed(&b) && (quarter - 0.75).abs() < 1e-8;
    let mut parts = failing(&a);
    parts.extend(failing(&b));
    Outcome {
        id: 2,
        pass,
        detail: format!(
            "max dev N=3 {:.1e}, N=2 {:.1e}; m=(1,1) p=2 moment {:.12}",
            max_field(&a, "deviation"),
            max_field(&b, "deviation"),
            quarter
        ),
        elapsed: a.elapsed + b.elapsed,
        budget: Duration::from_secs(60),
        failed_parts: parts,
    }
}

const ADJOINT_SMALL: &[&str] = &["adjoint", "--N", "2,3", "--order", "12", "--samples", "100", "--seed", "7", "--exact"];
const ADJOINT_N4: &[&str] = &["adjoint", "--N", "4", "--order", "10", "--samples", "100", "--seed", "7", "--kf-only", "--exact"];
const EQUIDIST: &[&str] = &["equidist", "--N", "3", "--p", "2", "--samples", "100000", "--seed", "1", "--deg", "3"];

fn adjoint_identity() -> Outcome {
    let a = satake(ADJOINT_SMALL);
    let b = satake(ADJOINT_N4);
    let exact = max_field(&a, "max_abs_dev").max(max_field(&b, "max_abs_dev"));
    let mismatches: u64 = rows(&a).iter().chain(rows(&b)).filter_map(|v| v["mismatches"].as_u64()).sum();
    let mut parts = failing(&a);
    parts.extend(failing(&b));
    Outcome {
        id: 3,
        pass: passed(&a) && passed(&b) && exact < 1e-9,
        detail: format!(
            "exact dev {:.1e} ({} mismatching points); f64 abs dev N<=3 {:.1e}, N=4 {:.1e} (rel {:.1e})",
            exact,
            mismatches,
            max_field(&a, "float_max_abs_dev"),
            max_field(&b, "float_max_abs_dev"),
            max_field(&b, "float_max_rel_dev"),
        ),
        elapsed: a.elapsed + b.elapsed,
        budget: Duration::from_secs(60),
        failed_parts: parts,
    }
}

fn poincare() -> Outcome {
    let a = satake(&["poincare", "--N", "2", "--degree", "8", "--points", "10"]);
    let b = satake(&["poincare", "--N", "3", "--degree", "6", "--points", "10"]);
    let mut parts = failing(&a);
    parts.extend(failing(&b));
    Outcome {
        id: 4,
        pass: passed(&a) && passed(&b),
        detail: format!(
            "max dev N=2 {:.1e}, N=3 {:.1e}",
            max_field(&a, "max_abs_dev"),
            max_field(&b, "max_abs_dev")
        ),
        elapsed: a.elapsed + b.elapsed,
        budget: Duration::from_secs(60),
        failed_parts: parts,
    }
}

fn kernel_suite() -> Outcome {
    let r = satake(&["kernels", "--check", "all"]);
    let worst = |check: &str| {
        rows(&r)
            .iter()
            .filter(|v| v["check"] == check)
            .filter_map(|v| v["deviation"].as_f64())
            .fold(0.0, f64::max)
    };
    Outcome {
        id: 5,
        pass: passed(&r),
        detail: format!(
            "symmetrize {:.1e}, k-sym {:.1e}, k-w4 {:.1e}, bessel {:.1e}, j-half {:.1e}, beta {:.1e}",
            worst("symmetrize"),
            worst("k-sym"),
            worst("k-w4"),
            worst("bessel"),
            worst("j-half"),
            worst("beta")
        ),
        elapsed: r.elapsed,
        budget: Duration::from_secs(30 * 60),
        failed_parts: failing(&r),
    }
}

fn scaling() -> Outcome {
    let d = satake(&["delta", "--T", "8,16,32"]);
    let s = satake(&["scaling", "--check", "all"]);
    let slope = |r: &Run, q: &str| {
        rows(r)
            .iter()
            .find(|v| v["quantity"] == q)
            .and_then(|v| v["slope"].as_f64().or(v["value"].as_f64()))
            .unwrap_or(f64::NAN)
    };
    let mut parts = failing(&d);
    parts.extend(failing(&s));
    Outcome {
        id: 6,
        pass: passed(&d) && passed(&s),
        detail: format!(
            "delta slope {:.3}; hat sup slope {:.3}; phi_w6 bound slope {:.3} (majorant {:.3}); phi_w4 y-exponents {:.3} / {:.3}",
            slope(&d, "slope"),
            slope(&s, "hat_sup_slope"),
            slope(&s, "phi_w6_slope"),
            slope(&s, "phi_w6_majorant_slope"),
            slope(&s, "phi_w4_small_y_exponent"),
            slope(&s, "phi_w4_large_y_exponent"),
        ),
        elapsed: d.elapsed + s.elapsed,
        budget: Duration::from_secs(30 * 60),
        failed_parts: parts,
    }
}

fn equidistribution() -> Outcome {
    let r = satake(EQUIDIST);
    Outcome {
        id: 7,
        pass: passed(&r),
        detail: format!("{} moments, max |z| {:.2}", rows(&r).len(), max_field(&r, "z")),
        elapsed: r.elapsed,
        budget: Duration::from_secs(60),
        failed_parts: failing(&r),
    }
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let mut same = true;
    for args in [ADJOINT_SMALL, ADJOINT_N4, EQUIDIST] {
        let first = satake(args).stdout;
        let mut threaded = vec!["--threads", "2"];
        threaded.extend_from_slice(args);
        let again = satake(&threaded).stdout;
        same &= first == again;
    }
    Outcome {
        id: 8,
        pass: same,
        detail: format!("repeated runs byte-identical: {}", same),
        elapsed: start.elapsed(),
        budget: Duration::from_secs(10 * 60),
        failed_parts: Vec::new(),
    }
}

fn main() -> ExitCode {
    // `cargo test -- <filter>` passes extra arguments; only list on --list
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let checks: [fn() -> Outcome; 8] = [
        kf_closed_form,
        plancherel_moments,
        adjoint_identity,
        poincare,
        kernel_suite,
        scaling,
        equidistribution,
        determinism,
    ];
    let mut unexpected = Vec::new();
    for check in checks {
        let o = check();
        let in_time = o.elapsed <= o.budget;
        let ok = o.pass && in_time;
        println!(
            "criterion {}: {} ({:.1}s of {:.0}s) {}{}",
            o.id,
            if ok { "PASS" } else { "FAIL" },
            secs(o.elapsed),
            secs(o.budget),
            o.detail,
            if o.failed_parts.is_empty() {
                String::new()
            } else {
                format!(" [failing: {}]", o.failed_parts.join(", "))
            }
        );
        match KNOWN_FAILURES.iter().find(|k| k.0 == o.id) {
            Some((_, parts)) => {
                let mut got = o.failed_parts.clone();
                got.sort();
                let mut want: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
                want.sort();
                if !in_time || got != want {
                    unexpected.push(o.id);
                }
            }
            None if !ok => unexpected.push(o.id),
            None => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected; known failures: {:?}", KNOWN_FAILURES.iter().map(|k| k.0).collect::<Vec<_>>());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected results for criteria {:?}", unexpected);
        ExitCode::FAILURE
    }
}
