//! The acceptance gate: one line per verification family, nonzero exit if
//! any case fails. Runs without the libtest harness so every line is
//! printed unconditionally.

use qschur::report::{
    run_chi_fixture, run_classical_limit_checks, run_direct_sum_checks, run_family_checks,
    run_filtration_checks, run_kernel_sweep, run_lr_checks, run_rank_sweep,
    run_root_of_unity_sweep, run_yb_checks, CheckReport, DEFAULT_SEED,
};

fn show(index: usize, title: &str, report: &CheckReport) -> bool {
    if report.ok() {
        println!(
            "criterion {index:2}: PASS - {title} ({} cases)",
            report.cases.len()
        );
        true
    } else {
        println!(
            "criterion {index:2}: FAIL - {title} ({} of {} cases failed)",
            report.failed,
            report.cases.len()
        );
        for row in report.cases.iter().filter(|c| !c.ok) {
            println!(
                "    {} :: {}",
                row.case,
                row.detail.as_deref().unwrap_or("failed")
            );
        }
        false
    }
}

fn main() {
    let checks: Vec<(&str, CheckReport)> = vec![
        ("braid and quadratic identities", run_yb_checks(DEFAULT_SEED)),
        ("row-to-column permutation fixture", run_chi_fixture()),
        ("Schur-map rank equals standard count", run_rank_sweep()),
        ("exchange image is the Schur-map kernel", run_kernel_sweep()),
        ("standard basis survives root-of-unity specialization", run_root_of_unity_sweep()),
        ("layer counts and the dimension identity", run_lr_checks()),
        ("layer generators and the spanning family", run_family_checks()),
        ("filtration layer ranks, generic and cyclotomic", run_filtration_checks()),
        ("direct-sum filtration rank products", run_direct_sum_checks()),
        ("classical limit at Q = 1", run_classical_limit_checks()),
    ];
    let mut all_ok = true;
    for (i, (title, report)) in checks.iter().enumerate() {
        all_ok &= show(i + 1, title, report);
    }
    if !all_ok {
        std::process::exit(1);
    }
}
