//! Geodesic gradient ascent on SU(3) from a random start, printing the
//! per-iteration trace and the catalog family of the converged point.
//!
//! ```bash
//! cargo run --example gradient_flow
//! ```

use sunscape::geometry::random_special_unitary;
use sunscape::optimizer::{run, Mode, OptimizerConfig};
use sunscape::TargetGate;

fn main() {
    let n = 3;
    let a = TargetGate::new(random_special_unitary(n, 1).into_inner()).unwrap();
    let start = random_special_unitary(n, 2);

    let config = OptimizerConfig {
        mode: Mode::Maximize,
        seed: 3,
        ..OptimizerConfig::default()
    };
    let trace = run(&a, &start, &config).unwrap();

    for record in &trace.iterates {
        println!(
            "iter {:>4}: value {:>+.12} grad_norm {:.3e} step {:.3e}",
            record.iter, record.value, record.grad_norm, record.step
        );
    }
    println!(
        "converged: {} (final value {:.12}, maximum is {})",
        trace.converged,
        trace.final_value(),
        n
    );
    if let Some(family) = &trace.matched_family {
        println!(
            "matched family: kplus={} mu={:.6} value={:.6} {}",
            family.kplus, family.mu, family.value, family.nature
        );
    }

    println!("\nJSON-lines trace:\n{}", trace.to_json_lines());
}
