//! The trace-fidelity cost `G(U) = Re tr(A^dagger U)` on SU(N): ambient and
//! restricted gradients, the criticality equation, Hessian quadratic forms,
//! materialized Hessian matrices and spectral classification.
//!
//! The 1/N normalization is dropped throughout; values live in [-N, N].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{SpecialUnitaryPoint, SuNBasis, TangentDirection, UnitaryPoint};
use crate::matrix::{
    determinant, frobenius_norm, identity, trace, CMatrix, Complex64, I,
};

/// Threshold on the criticality residual below which a point is accepted as
/// critical by `classify`.
pub const CRITICAL_TOL: f64 = 1e-8;

/// The target gate A. `su_mode` is true when A additionally lies in SU(N);
/// the classification theorems only apply in that mode.
#[derive(Debug, Clone)]
pub struct TargetGate {
    a: CMatrix,
    su_mode: bool,
}

impl TargetGate {
    pub fn new(a: CMatrix) -> Result<Self> {
        let u = UnitaryPoint::new(a)?;
        let a = u.into_inner();
        let su_mode = (determinant(&a) - Complex64::ONE).norm() <= 1e-8;
        Ok(Self { a, su_mode })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a: identity(n),
            su_mode: true,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.a
    }

    pub fn su_mode(&self) -> bool {
        self.su_mode
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }
}

/// Nature of a critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriticalNature {
    GlobalMax,
    GlobalMin,
    LocalMaxNotGlobal,
    LocalMinNotGlobal,
    Saddle,
    Degenerate,
}

impl std::fmt::Display for CriticalNature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CriticalNature::GlobalMax => "global max",
            CriticalNature::GlobalMin => "global min",
            CriticalNature::LocalMaxNotGlobal => "local max (not global)",
            CriticalNature::LocalMinNotGlobal => "local min (not global)",
            CriticalNature::Saddle => "saddle",
            CriticalNature::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// Eigenvalues of the (N^2-1) x (N^2-1) Hessian matrix in an orthonormal
/// su(N) basis, with sign counts under a relative zero threshold.
#[derive(Debug, Clone)]
pub struct HessianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl HessianSpectrum {
    fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let max_abs = eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
        let tau = 1e-9 * max_abs.max(1.0);
        let n_pos = eigenvalues.iter().filter(|&&l| l > tau).count();
        let n_neg = eigenvalues.iter().filter(|&&l| l < -tau).count();
        let n_zero = eigenvalues.len() - n_pos - n_neg;
        Self {
            eigenvalues,
            n_pos,
            n_neg,
            n_zero,
        }
    }
}

fn check_dims(a: &TargetGate, u: &CMatrix) -> Result<()> {
    if a.dim() != u.nrows() {
        return Err(Error::DimensionMismatch(a.dim(), u.nrows()));
    }
    Ok(())
}

/// `Re tr(A^dagger U)`, bounded in [-N, N].
pub fn fidelity(a: &TargetGate, u: &UnitaryPoint) -> f64 {
    trace(&(a.matrix().adjoint() * u.matrix())).re
}

pub fn fidelity_su(a: &TargetGate, s: &SpecialUnitaryPoint) -> f64 {
    trace(&(a.matrix().adjoint() * s.matrix())).re
}

/// Ambient U(N) gradient of the fidelity: `(A U^dagger - U A^dagger) U`.
pub fn ambient_gradient(a: &TargetGate, u: &UnitaryPoint) -> Result<CMatrix> {
    check_dims(a, u.matrix())?;
    let skew = a.matrix() * u.matrix().adjoint() - u.matrix() * a.matrix().adjoint();
    Ok(skew * u.matrix())
}

/// SU(N) gradient of the fidelity:
/// `(A S^dagger - S A^dagger - (1/N) tr(A S^dagger - S A^dagger) I) S`.
pub fn sun_fidelity_gradient(a: &TargetGate, s: &SpecialUnitaryPoint) -> Result<CMatrix> {
    let ambient = ambient_gradient(a, &s.as_unitary())?;
    crate::geometry::sun_gradient(s, &ambient)
}

/// The SU(N) gradient as a traceless skew-Hermitian direction.
pub fn fidelity_gradient_direction(
    a: &TargetGate,
    s: &SpecialUnitaryPoint,
) -> Result<TangentDirection> {
    let ambient = ambient_gradient(a, &s.as_unitary())?;
    crate::geometry::gradient_direction(s, &ambient)
}

/// Residual of the criticality equation `A S^dagger - S A^dagger = mu i I`.
/// Returns the best-fit mu and the Frobenius residual; a small residual
/// certifies kinematic criticality.
pub fn criticality_residual(a: &TargetGate, s: &SpecialUnitaryPoint) -> Result<(f64, f64)> {
    check_dims(a, s.matrix())?;
    let n = s.dim();
    let x = a.matrix() * s.matrix().adjoint() - s.matrix() * a.matrix().adjoint();
    let mu_hat = trace(&x.map(|c| -I * c)).re / n as f64;
    let residual = frobenius_norm(&(&x - identity(n).map(|c| I * Complex64::new(mu_hat, 0.0) * c)));
    Ok((mu_hat, residual))
}

/// Hessian quadratic form of the fidelity at `s` along a traceless direction:
/// `1/2 tr(Omega^2 (S A^dagger + A S^dagger))`. Real; the imaginary part is
/// asserted to cancel.
pub fn hessian_quadratic(
    a: &TargetGate,
    s: &SpecialUnitaryPoint,
    dir: &TangentDirection,
) -> Result<f64> {
    check_dims(a, s.matrix())?;
    if !dir.is_traceless() {
        return Err(Error::NotTraceless {
            trace_abs: trace(dir.omega()).norm(),
        });
    }
    let m = s.matrix() * a.matrix().adjoint() + a.matrix() * s.matrix().adjoint();
    let value = trace(&(dir.omega() * dir.omega() * m)) * Complex64::new(0.5, 0.0);
    debug_assert!(value.im.abs() <= 1e-10 * value.norm().max(1.0));
    Ok(value.re)
}

/// Materialized Hessian matrix in an orthonormal su(N) basis:
/// `H_ab = 1/4 tr((Omega_a Omega_b + Omega_b Omega_a)(S A^dagger + A S^dagger))`,
/// eigen-decomposed with sign counts.
pub fn hessian_matrix(
    a: &TargetGate,
    s: &SpecialUnitaryPoint,
    basis: &SuNBasis,
) -> Result<HessianSpectrum> {
    check_dims(a, s.matrix())?;
    if basis.n() != s.dim() {
        return Err(Error::DimensionMismatch(basis.n(), s.dim()));
    }
    let m = s.matrix() * a.matrix().adjoint() + a.matrix() * s.matrix().adjoint();
    let dim = basis.len();
    let products: Vec<CMatrix> = basis
        .elements()
        .iter()
        .map(|e| e.omega() * &m)
        .collect();
    let mut h = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        for j in i..dim {
            // tr(Omega_i (Omega_j M)) + tr(Omega_j (Omega_i M))
            let t = trace(&(basis.elements()[i].omega() * &products[j]))
                + trace(&(basis.elements()[j].omega() * &products[i]));
            let entry = 0.25 * t.re;
            debug_assert!(t.im.abs() <= 1e-10 * t.norm().max(1.0));
            h[(i, j)] = entry;
            h[(j, i)] = entry;
        }
    }
    let eig = h.symmetric_eigen();
    Ok(HessianSpectrum::from_eigenvalues(
        eig.eigenvalues.iter().copied().collect(),
    ))
}

/// Classifies a certified critical point from its Hessian spectrum and the
/// global extreme values of the landscape. Degenerate spectra are never
/// labeled extrema here; resolving them is the saddle probe's job.
pub fn classify(
    a: &TargetGate,
    s: &SpecialUnitaryPoint,
    spectrum: &HessianSpectrum,
    global_max: f64,
    global_min: f64,
) -> Result<CriticalNature> {
    if !a.su_mode() {
        return Err(Error::TargetNotSpecialUnitary {
            residual: (determinant(a.matrix()) - Complex64::ONE).norm(),
        });
    }
    let (_, residual) = criticality_residual(a, s)?;
    if residual > CRITICAL_TOL {
        return Err(Error::NotCritical {
            residual,
            tol: CRITICAL_TOL,
        });
    }
    let value = fidelity_su(a, s);
    let nature = if spectrum.n_pos > 0 && spectrum.n_neg > 0 {
        CriticalNature::Saddle
    } else if spectrum.n_zero > 0 {
        CriticalNature::Degenerate
    } else if spectrum.n_neg == spectrum.eigenvalues.len() {
        if (value - global_max).abs() <= 1e-9 {
            CriticalNature::GlobalMax
        } else {
            CriticalNature::LocalMaxNotGlobal
        }
    } else {
        if (value - global_min).abs() <= 1e-9 {
            CriticalNature::GlobalMin
        } else {
            CriticalNature::LocalMinNotGlobal
        }
    };
    Ok(nature)
}
