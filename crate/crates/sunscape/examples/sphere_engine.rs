//! The generic embedded-gradient engine on a textbook instance: the height
//! function G(x) = z restricted to the unit sphere in R^3. The engine only
//! sees the constraint gradient and the ambient metric, yet reproduces the
//! analytic tangential gradient e_z - z x and classifies the two poles by
//! the restricted Hessian.
//!
//! ```bash
//! cargo run --example sphere_engine
//! ```

use nalgebra::DVector;
use sunscape::embedded::{embedded_gradient, restricted_hessian_quadratic, sigma, sphere};

fn main() {
    let system = sphere::constraint_system();
    let metric = |a: &DVector<f64>, b: &DVector<f64>| sphere::dot(a, b);

    for (label, p) in [
        ("north pole", DVector::from_vec(vec![0.0, 0.0, 1.0])),
        ("south pole", DVector::from_vec(vec![0.0, 0.0, -1.0])),
        ("equator", DVector::from_vec(vec![1.0, 0.0, 0.0])),
        (
            "generic",
            DVector::from_vec(vec![0.6, 0.0, 0.8]),
        ),
    ] {
        let grad_g = sphere::height_gradient();
        let multipliers = sigma(&p, &grad_g, &system, &metric).unwrap();
        let tangential = embedded_gradient(&p, &grad_g, &system, &metric).unwrap();
        let analytic = sphere::height_gradient() - &p * p[2];
        println!(
            "{label:<10}: sigma = {:+.4}, |grad| = {:.4}, deviation from e_z - z x = {:.1e}",
            multipliers[0],
            tangential.norm(),
            (&tangential - analytic).norm()
        );

        if tangential.norm() < 1e-12 {
            // Critical point: evaluate the restricted Hessian on a tangent
            // direction (the height function has zero ambient Hessian).
            let v = DVector::from_vec(vec![1.0, 0.0, 0.0]);
            let quad = restricted_hessian_quadratic(
                &p,
                &|_: &DVector<f64>, _: &DVector<f64>| 0.0,
                &system,
                &multipliers,
                &v,
                &metric,
            )
            .unwrap();
            println!(
                "            critical; restricted Hessian on e_x: {quad:+.4} ({})",
                if quad < 0.0 { "maximum" } else { "minimum" }
            );
        }
    }
}
