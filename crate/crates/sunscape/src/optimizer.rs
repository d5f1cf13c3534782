//! Geodesic gradient ascent/descent for the trace fidelity on SU(N), with
//! Armijo backtracking. The retraction is the exact group exponential, so
//! optimizer steps follow the same curve family as the Hessian derivations
//! and the finite-difference oracles.

use serde::Serialize;

use crate::catalog::{self, CriticalFamily};
use crate::error::{Error, Result};
use crate::geometry::{geodesic_step, metric, metric_norm, SpecialUnitaryPoint};
use crate::landscape::{fidelity_gradient_direction, fidelity_su, TargetGate};
use crate::matrix::{determinant, frobenius_norm, hermitian_eig, identity, CMatrix, Complex64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub mode: Mode,
    pub max_iters: usize,
    /// Convergence threshold on the metric norm of the gradient.
    pub grad_tol: f64,
    pub armijo_c1: f64,
    pub shrink: f64,
    pub init_step: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Maximize,
            max_iters: 5000,
            grad_tol: 1e-9,
            armijo_c1: 1e-4,
            shrink: 0.5,
            init_step: 1.0,
            seed: 0,
        }
    }
}

/// One row of the iterate log.
#[derive(Debug, Clone, Serialize)]
pub struct IterRecord {
    pub iter: usize,
    pub value: f64,
    pub grad_norm: f64,
    pub step: f64,
}

#[derive(Debug)]
pub struct OptimizeTrace {
    pub iterates: Vec<IterRecord>,
    pub final_point: SpecialUnitaryPoint,
    pub converged: bool,
    pub matched_family: Option<CriticalFamily>,
}

impl OptimizeTrace {
    pub fn final_value(&self) -> f64 {
        self.iterates.last().map(|r| r.value).unwrap_or(f64::NAN)
    }

    pub fn final_grad_norm(&self) -> f64 {
        self.iterates.last().map(|r| r.grad_norm).unwrap_or(f64::NAN)
    }

    /// JSON lines, one record per iteration.
    pub fn to_json_lines(&self) -> String {
        self.iterates
            .iter()
            .map(|r| serde_json::to_string(r).expect("iterate record serializes"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

const STEP_UNDERFLOW: f64 = 1e-16;
const DRIFT_TOL: f64 = 1e-10;

/// Pulls a drifting iterate back onto SU(N): polar decomposition through the
/// Hermitian eigendecomposition of S^dagger S, then determinant re-phasing.
fn reorthonormalize(s: &CMatrix) -> Result<SpecialUnitaryPoint> {
    let n = s.nrows();
    let gram = s.adjoint() * s;
    let (values, v) = hermitian_eig(&gram)?;
    let inv_sqrt = CMatrix::from_diagonal(&values.map(|l| Complex64::new(1.0 / l.sqrt(), 0.0)));
    let unitary = s * &v * inv_sqrt * v.adjoint();
    let theta = determinant(&unitary).arg();
    let phase = Complex64::from_polar(1.0, -theta / n as f64);
    SpecialUnitaryPoint::new(unitary.map(|c| phase * c))
}

fn drift(s: &CMatrix) -> f64 {
    let n = s.nrows();
    let unit = frobenius_norm(&(s.adjoint() * s - identity(n)));
    let det = (determinant(s) - Complex64::ONE).norm();
    unit.max(det)
}

/// Runs geodesic gradient flow from `start` and, on convergence, matches the
/// reduced final point `A^dagger S` against the critical-point catalog.
pub fn run(
    a: &TargetGate,
    start: &SpecialUnitaryPoint,
    config: &OptimizerConfig,
) -> Result<OptimizeTrace> {
    if !a.su_mode() {
        return Err(Error::TargetNotSpecialUnitary {
            residual: (determinant(a.matrix()) - Complex64::ONE).norm(),
        });
    }
    let n = start.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch(a.dim(), n));
    }
    let sign = match config.mode {
        Mode::Maximize => 1.0,
        Mode::Minimize => -1.0,
    };

    let mut s = start.clone();
    let mut value = fidelity_su(a, &s);
    let mut iterates = Vec::new();
    let mut converged = false;
    let mut last_step = 0.0;

    for iter in 0..=config.max_iters {
        let grad = fidelity_gradient_direction(a, &s)?;
        let grad_norm = metric_norm(&grad);
        iterates.push(IterRecord {
            iter,
            value,
            grad_norm,
            step: last_step,
        });
        if grad_norm <= config.grad_tol {
            converged = true;
            break;
        }
        if iter == config.max_iters {
            break;
        }

        // Armijo backtracking along the geodesic exp(sign * tau * Omega) S.
        let slope = metric(&grad, &grad); // directional derivative magnitude
        let mut tau = config.init_step;
        let accepted = loop {
            let trial = geodesic_step(&s, &grad, sign * tau)?;
            let trial_value = fidelity_su(a, &trial);
            let sufficient = match config.mode {
                Mode::Maximize => trial_value >= value + config.armijo_c1 * tau * slope,
                Mode::Minimize => trial_value <= value - config.armijo_c1 * tau * slope,
            };
            if sufficient {
                break Some((trial, trial_value));
            }
            tau *= config.shrink;
            if tau < STEP_UNDERFLOW {
                break None;
            }
        };
        let Some((next, next_value)) = accepted else {
            // The required improvement fell below f64 resolution. With a
            // small gradient this means the point is stationary to machine
            // precision; with a large gradient something is wrong.
            if grad_norm <= 1e-6 {
                converged = true;
                break;
            }
            return Err(Error::LineSearchFailure(STEP_UNDERFLOW));
        };
        s = next;
        value = next_value;
        last_step = tau;

        if drift(s.matrix()) > DRIFT_TOL {
            s = reorthonormalize(s.matrix())?;
            value = fidelity_su(a, &s);
        }
    }

    let matched_family = if converged {
        let reduced = SpecialUnitaryPoint::new(a.matrix().adjoint() * s.matrix())?;
        let families = catalog::enumerate(n);
        catalog::match_family(&reduced, &families, 1e-6)
            .ok()
            .cloned()
    } else {
        None
    };

    Ok(OptimizeTrace {
        iterates,
        final_point: s,
        converged,
        matched_family,
    })
}
