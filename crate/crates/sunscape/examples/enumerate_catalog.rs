//! Enumerate every critical-point family of the trace-fidelity landscape
//! on SU(N) in closed form and print the catalog as JSON.
//!
//! ```bash
//! cargo run --example enumerate_catalog -- 5
//! ```

use sunscape::catalog;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);

    let families = catalog::enumerate(n);
    println!("SU({n}) has {} critical-point families:", families.len());
    for family in &families {
        println!(
            "  kplus={:<2} mu={:>+.6} value={:>+.6} {}{}",
            family.kplus,
            family.mu,
            family.value,
            family.nature,
            if family.is_continuum {
                " (continuum: any mu in [-2, 2])"
            } else {
                ""
            }
        );
    }

    println!("\nJSON catalog:\n{}", catalog::to_json(&families));
}
