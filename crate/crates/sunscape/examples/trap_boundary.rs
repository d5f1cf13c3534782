//! The trap-free boundary: the trace-fidelity landscape on SU(N) has no
//! non-global local extrema for N < 5, and always has them for N >= 5.
//! This example lists the traps per dimension, cross-validates them with
//! Hessian definiteness and a geodesic ball probe, and then demonstrates a
//! gradient flow getting caught in the SU(5) trap.
//!
//! ```bash
//! cargo run --release --example trap_boundary
//! ```

use sunscape::catalog;
use sunscape::geometry::{geodesic_step, random_special_unitary};
use sunscape::matrix::{frobenius_norm, identity, Complex64};
use sunscape::optimizer::{run, Mode, OptimizerConfig};
use sunscape::verifier::trap_boundary_test;
use sunscape::{fidelity_su, SpecialUnitaryPoint, TargetGate};

fn main() {
    for n in 2..=8 {
        let traps = catalog::trap_report(n);
        if traps.is_empty() {
            println!("SU({n}): trap-free");
        } else {
            println!("SU({n}): {} trap families", traps.len());
            for t in &traps {
                println!(
                    "  kplus={:<2} mu={:>+.6} value={:>+.6} {}",
                    t.kplus, t.mu, t.value, t.nature
                );
            }
        }
    }

    println!("\ncross-validation (Hessian definiteness + ball probe):");
    for entry in trap_boundary_test(&(2..=6).collect::<Vec<_>>()).unwrap() {
        println!("  [{}] {} N={}: {}", entry.status, entry.test, entry.n, entry.details);
    }

    // A flow started near the SU(5) trap converges to the trap value
    // 5 cos(2 pi / 5), not to the global maximum 5.
    let n = 5;
    let a = TargetGate::identity(n);
    let phase = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / n as f64);
    let trap = SpecialUnitaryPoint::new(identity(n).map(|c| phase * c)).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
    let dir = sunscape::geometry::random_traceless_direction(n, &mut rng);
    let start = geodesic_step(&trap, &dir.scale(0.05 / frobenius_norm(dir.omega())), 1.0).unwrap();

    let config = OptimizerConfig {
        mode: Mode::Maximize,
        ..OptimizerConfig::default()
    };
    let caught = run(&a, &start, &config).unwrap();
    println!(
        "\nSU(5) ascent from the trap basin: value {:.12} (trap value {:.12}, global max 5)",
        caught.final_value(),
        fidelity_su(&a, &trap)
    );

    let free = run(&a, &random_special_unitary(n, 11), &config).unwrap();
    println!(
        "SU(5) ascent from a generic start:  value {:.12}",
        free.final_value()
    );
}
