//! Run the independent numerical oracles: finite-difference gradient and
//! Hessian checks, constraint-geometry identities, catalog classification
//! consistency, and the trap boundary cross-validation.
//!
//! ```bash
//! cargo run --release --example verify_numerics
//! ```

use sunscape::verifier;

fn main() {
    let mut report = Vec::new();
    report.extend(verifier::gradient_suite(5, 25, 1).unwrap());
    report.extend(verifier::hessian_suite(4, 10, 2).unwrap());
    report.extend(verifier::constraint_suite(5, 3).unwrap());
    report.extend(verifier::catalog_suite(5, 3, 4).unwrap());
    report.extend(verifier::trap_boundary_test(&[2, 3, 4, 5]).unwrap());

    for entry in &report {
        println!(
            "[{}] {} (N={}): {}",
            entry.status, entry.test, entry.n, entry.details
        );
    }
    let all_pass = report.iter().all(|r| r.passed());
    println!(
        "\n{}",
        if all_pass {
            "all oracles agree"
        } else {
            "FAILURES PRESENT"
        }
    );
    std::process::exit(if all_pass { 0 } else { 1 });
}
