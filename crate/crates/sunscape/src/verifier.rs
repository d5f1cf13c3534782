//! Independent numerical oracles: finite-difference gradient and Hessian
//! checks, constraint-geometry identities, ball-sampling saddle probes for
//! degenerate critical points, and the trap-free boundary test.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog;
use crate::landscape::CriticalNature as Nature;
use crate::error::{Error, Result};
use crate::geometry::{
    ambient_metric, geodesic_step, haar_unitary, random_traceless_direction,
    special_unitary_from_rng, SpecialUnitaryPoint, SuNBasis, TangentDirection, UnitaryPoint,
};
use crate::landscape::{
    criticality_residual, fidelity_su, hessian_matrix, hessian_quadratic, sun_fidelity_gradient,
    TargetGate,
};
use crate::matrix::trace;

fn relative_error(computed: f64, reference: f64) -> f64 {
    let err = (computed - reference).abs();
    let scale = computed.abs().max(reference.abs());
    if scale < 1e-8 {
        err
    } else {
        err / scale
    }
}

/// Compares the central-difference directional derivative of the fidelity
/// along `exp(h Omega) s` against the metric pairing with the SU(N) gradient.
pub fn fd_gradient_check(
    a: &TargetGate,
    s: &SpecialUnitaryPoint,
    dir: &TangentDirection,
    h: f64,
) -> Result<f64> {
    if !(1e-7..=1e-3).contains(&h) {
        return Err(Error::BadStepSize(h, 1e-7, 1e-3));
    }
    if !dir.is_traceless() {
        return Err(Error::NotTraceless {
            trace_abs: trace(dir.omega()).norm(),
        });
    }
    let plus = fidelity_su(a, &geodesic_step(s, dir, h)?);
    let minus = fidelity_su(a, &geodesic_step(s, dir, -h)?);
    let fd = (plus - minus) / (2.0 * h);
    let grad = sun_fidelity_gradient(a, s)?;
    let pairing = ambient_metric(&grad, &(dir.omega() * s.matrix()));
    Ok(relative_error(fd, pairing))
}

/// Compares the central second difference of the fidelity along a geodesic
/// at a critical point against the Hessian quadratic form.
pub fn fd_hessian_check(
    a: &TargetGate,
    s: &SpecialUnitaryPoint,
    dir: &TangentDirection,
    h: f64,
) -> Result<f64> {
    if !(1e-4..=1e-2).contains(&h) {
        return Err(Error::BadStepSize(h, 1e-4, 1e-2));
    }
    let (_, residual) = criticality_residual(a, s)?;
    if residual > 1e-8 {
        return Err(Error::NotCritical {
            residual,
            tol: 1e-8,
        });
    }
    let center = fidelity_su(a, s);
    let plus = fidelity_su(a, &geodesic_step(s, dir, h)?);
    let minus = fidelity_su(a, &geodesic_step(s, dir, -h)?);
    let fd = (plus - 2.0 * center + minus) / (h * h);
    let quadratic = hessian_quadratic(a, s, dir)?;
    Ok(relative_error(fd, quadratic))
}

/// Result of sampling fidelity differences in a geodesic ball around a
/// critical point.
#[derive(Debug, Clone, Copy)]
pub struct ProbeResult {
    pub min_delta: f64,
    pub max_delta: f64,
    pub epsilon: f64,
}

impl ProbeResult {
    pub fn is_saddle(&self) -> bool {
        self.min_delta < -self.epsilon && self.max_delta > self.epsilon
    }

    /// No sampled point above the base value (local-max evidence).
    pub fn one_sided_below(&self) -> bool {
        self.max_delta <= self.epsilon
    }

    /// No sampled point below the base value (local-min evidence).
    pub fn one_sided_above(&self) -> bool {
        self.min_delta >= -self.epsilon
    }
}

/// Samples random traceless directions with Frobenius norm uniform in
/// (0, radius] and records the extreme fidelity differences
/// `f(exp(Omega) s) - f(s)`. Both signs witness a saddle.
pub fn saddle_probe(
    a: &TargetGate,
    s: &SpecialUnitaryPoint,
    radius: f64,
    samples: usize,
    seed: u64,
) -> Result<ProbeResult> {
    assert!(radius > 0.0);
    assert!(samples >= 100);
    let (_, residual) = criticality_residual(a, s)?;
    if residual > 1e-8 {
        return Err(Error::NotCritical {
            residual,
            tol: 1e-8,
        });
    }
    let n = s.dim();
    let base = fidelity_su(a, s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_delta = f64::INFINITY;
    let mut max_delta = f64::NEG_INFINITY;
    for _ in 0..samples {
        let scale: f64 = rng.random_range(f64::MIN_POSITIVE..=1.0) * radius;
        let dir = random_traceless_direction(n, &mut rng).scale(scale);
        let moved = geodesic_step(s, &dir, 1.0)?;
        let delta = fidelity_su(a, &moved) - base;
        min_delta = min_delta.min(delta);
        max_delta = max_delta.max(delta);
    }
    Ok(ProbeResult {
        min_delta,
        max_delta,
        epsilon: 1e-12 * n as f64,
    })
}

/// One line of a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub test: String,
    pub n: usize,
    pub status: String,
    pub details: String,
}

impl ReportEntry {
    fn new(test: &str, n: usize, pass: bool, details: String) -> Self {
        Self {
            test: test.to_string(),
            n,
            status: if pass { "pass" } else { "fail" }.to_string(),
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Checks that the landscape is trap-free exactly for N < 5 and that each
/// reported trap is corroborated by Hessian definiteness and a one-sided
/// saddle probe.
pub fn trap_boundary_test(n_range: &[usize]) -> Result<Vec<ReportEntry>> {
    let mut report = Vec::new();
    for &n in n_range {
        assert!(n >= 2);
        let traps = catalog::trap_report(n);
        let expected_empty = n < 5;
        let boundary_ok = traps.is_empty() == expected_empty;
        report.push(ReportEntry::new(
            "trap-boundary",
            n,
            boundary_ok,
            format!("{} trap families (expected {})", traps.len(), if expected_empty { "none" } else { "some" }),
        ));

        let target = TargetGate::identity(n);
        let basis = SuNBasis::new(n);
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for family in &traps {
            let u = haar_unitary(n, &mut rng);
            let entry = catalog::materialize(family, &u, None)?;
            let spectrum = hessian_matrix(&target, &entry.s, &basis)?;
            let probe = saddle_probe(&target, &entry.s, 0.1, 500, 17)?;
            let definite_ok = match family.nature {
                Nature::LocalMaxNotGlobal => {
                    spectrum.n_neg == basis.len() && probe.one_sided_below()
                }
                Nature::LocalMinNotGlobal => {
                    spectrum.n_pos == basis.len() && probe.one_sided_above()
                }
                _ => false,
            };
            report.push(ReportEntry::new(
                "trap-cross-validation",
                n,
                definite_ok,
                format!(
                    "kplus={} mu={:.6} value={:.6}: spectrum (+{}, -{}, 0:{}), probe [{:.3e}, {:.3e}]",
                    family.kplus,
                    family.mu,
                    family.value,
                    spectrum.n_pos,
                    spectrum.n_neg,
                    spectrum.n_zero,
                    probe.min_delta,
                    probe.max_delta
                ),
            ));
        }
    }
    Ok(report)
}

/// FD gradient suite: random targets, points and directions per dimension.
pub fn gradient_suite(n_max: usize, cases_per_n: usize, seed: u64) -> Result<Vec<ReportEntry>> {
    let mut report = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=n_max {
        let mut worst: f64 = 0.0;
        for _ in 0..cases_per_n {
            let a = TargetGate::new(special_unitary_from_rng(n, &mut rng).into_inner())?;
            let s = special_unitary_from_rng(n, &mut rng);
            let dir = random_traceless_direction(n, &mut rng);
            worst = worst.max(fd_gradient_check(&a, &s, &dir, 1e-5)?);
        }
        report.push(ReportEntry::new(
            "fd-gradient",
            n,
            worst < 1e-6,
            format!("worst relative error {worst:.3e} over {cases_per_n} cases"),
        ));
    }
    Ok(report)
}

/// FD Hessian suite over every materialized catalog critical point.
pub fn hessian_suite(n_max: usize, dirs_per_point: usize, seed: u64) -> Result<Vec<ReportEntry>> {
    let mut report = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=n_max {
        let target = TargetGate::identity(n);
        let mut worst: f64 = 0.0;
        let mut count = 0;
        for family in catalog::enumerate(n) {
            let u = haar_unitary(n, &mut rng);
            let mu = if family.is_continuum { Some(0.4) } else { None };
            let entry = catalog::materialize(&family, &u, mu)?;
            for _ in 0..dirs_per_point {
                let dir = random_traceless_direction(n, &mut rng);
                worst = worst.max(fd_hessian_check(&target, &entry.s, &dir, 1e-3)?);
                count += 1;
            }
        }
        report.push(ReportEntry::new(
            "fd-hessian",
            n,
            worst < 1e-4,
            format!("worst error {worst:.3e} over {count} directions"),
        ));
    }
    Ok(report)
}

/// Catalog consistency suite: spectrum-based classification agrees with the
/// theorem-assigned nature on every non-degenerate family; degenerate
/// families are resolved to saddles by the probe.
pub fn catalog_suite(n_max: usize, conjugators: usize, seed: u64) -> Result<Vec<ReportEntry>> {
    let mut report = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=n_max {
        let target = TargetGate::identity(n);
        let basis = SuNBasis::new(n);
        let (gmax, gmin) = catalog::global_extremes(n);
        let mut ok = true;
        let mut details = String::new();
        for family in catalog::enumerate(n) {
            if family.is_degenerate() {
                let u = haar_unitary(n, &mut rng);
                let mu = if family.is_continuum { Some(2.0) } else { None };
                let entry = catalog::materialize(&family, &u, mu)?;
                let probe = saddle_probe(&target, &entry.s, 0.1, 2000, seed ^ 0xdead)?;
                if !probe.is_saddle() {
                    ok = false;
                    details = format!(
                        "degenerate family kplus={} mu={} not resolved as saddle",
                        family.kplus, family.mu
                    );
                }
                continue;
            }
            for _ in 0..conjugators {
                let u = haar_unitary(n, &mut rng);
                let entry = catalog::materialize(&family, &u, None)?;
                let spectrum = hessian_matrix(&target, &entry.s, &basis)?;
                let nature =
                    crate::landscape::classify(&target, &entry.s, &spectrum, gmax, gmin)?;
                if nature != family.nature {
                    ok = false;
                    details = format!(
                        "family kplus={} mu={}: spectrum says {:?}, theorem says {:?}",
                        family.kplus, family.mu, nature, family.nature
                    );
                }
            }
        }
        if ok {
            details = "all families agree".to_string();
        }
        report.push(ReportEntry::new("catalog-classification", n, ok, details));
    }
    Ok(report)
}

/// Constraint-geometry suite: gradient norm N/2, vanishing constraint
/// Hessian on SU(N), FD agreement of the determinant-chart differential.
pub fn constraint_suite(n_max: usize, seed: u64) -> Result<Vec<ReportEntry>> {
    use crate::geometry::{f_hw, f_hw_differential, grad_f_hw, random_direction};
    use crate::matrix::expm_skew;

    let mut report = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 2..=n_max {
        let mut norm_ok = true;
        let mut hess_ok = true;
        let mut fd_ok = true;
        for _ in 0..100 {
            let s = special_unitary_from_rng(n, &mut rng);
            let g = grad_f_hw(&s);
            if (ambient_metric(&g, &g) - n as f64 / 2.0).abs() > 1e-12 {
                norm_ok = false;
            }
            let dir = random_direction(n, &mut rng);
            if crate::geometry::hess_f_hw_quadratic(&s.as_unitary(), &dir)?.abs() > 1e-12 {
                hess_ok = false;
            }
        }
        for _ in 0..20 {
            let s = special_unitary_from_rng(n, &mut rng);
            let dir = random_direction(n, &mut rng);
            let h = 1e-5;
            let at = |t: f64| -> Result<f64> {
                let u = UnitaryPoint::new(expm_skew(&dir.omega().scale(t))? * s.matrix())?;
                f_hw(&u)
            };
            let fd = (at(h)? - at(-h)?) / (2.0 * h);
            let analytic = f_hw_differential(dir.omega());
            if relative_error(fd, analytic) > 1e-6 {
                fd_ok = false;
            }
        }
        report.push(ReportEntry::new(
            "constraint-geometry",
            n,
            norm_ok && hess_ok && fd_ok,
            format!("norm {norm_ok}, hessian {hess_ok}, differential {fd_ok}"),
        ));
    }
    Ok(report)
}

pub fn report_to_json(report: &[ReportEntry]) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
