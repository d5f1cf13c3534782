//! Materialize a catalog family under a random unitary conjugation, then
//! recover its nature from scratch: criticality residual, Hessian spectrum,
//! spectrum-based classification, and a catalog match of the anonymous
//! matrix.
//!
//! ```bash
//! cargo run --example classify_critical_point -- 5
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sunscape::catalog;
use sunscape::geometry::haar_unitary;
use sunscape::landscape::{classify, criticality_residual, hessian_matrix};
use sunscape::{SuNBasis, TargetGate};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);

    let target = TargetGate::identity(n);
    let basis = SuNBasis::new(n);
    let families = catalog::enumerate(n);
    let (gmax, gmin) = catalog::global_extremes(n);
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for family in &families {
        if family.is_degenerate() {
            println!(
                "kplus={:<2} mu={:>+.4}: degenerate family, skipping spectrum (see saddle_probe)",
                family.kplus, family.mu
            );
            continue;
        }
        // Hide the construction behind a random conjugation U S U^dagger.
        let u = haar_unitary(n, &mut rng);
        let entry = catalog::materialize(family, &u, None).expect("family materializes");

        let (mu_hat, residual) = criticality_residual(&target, &entry.s).unwrap();
        let spectrum = hessian_matrix(&target, &entry.s, &basis).unwrap();
        let nature = classify(&target, &entry.s, &spectrum, gmax, gmin).unwrap();
        let matched = catalog::match_family(&entry.s, &families, 1e-6).unwrap();

        println!(
            "kplus={:<2} mu={:>+.4}: residual={:.1e} mu_hat={:>+.4} inertia=(+{}, -{}, 0:{}) -> {} (matched kplus={})",
            family.kplus,
            family.mu,
            residual,
            mu_hat,
            spectrum.n_pos,
            spectrum.n_neg,
            spectrum.n_zero,
            nature,
            matched.kplus,
        );
        assert_eq!(nature, family.nature);
    }
}
