//! Exact enumeration of all critical families of the reduced cost
//! `Re tr(S)` on SU(N).
//!
//! For each admissible multiplicity `kplus` of the positive eigenvalue block,
//! the unit-circle roots of `z^(N - 2 kplus) = (-1)^(N - kplus)` with
//! `Re(z) >= 0` generate the families; `mu = 2 Im(z)` and the critical points
//! are `S = U^dagger (D_{kplus, mu} - (mu i / 2) I) U` over arbitrary unitary
//! conjugators U. Roots are computed in closed form as exponentials so the
//! `Re(z) >= 0` filter is exact at boundary roots `z = +-i`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{SpecialUnitaryPoint, UnitaryPoint};
use crate::landscape::{criticality_residual, CriticalNature, TargetGate};
use crate::matrix::{hermitian_eig, identity, CMatrix, Complex64, I};

/// Acceptance band for boundary roots with Re(z) = 0 up to round-off.
const RE_Z_TOL: f64 = 1e-15;
/// |mu| this close to 2 means the positive/negative blocks collapse and the
/// family is degenerate (the critical point is -+ i I regardless of kplus).
const MU_EDGE_TOL: f64 = 1e-12;

/// One family `S_{kplus, mu}(U)` of critical points of the reduced cost.
#[derive(Debug, Clone)]
pub struct CriticalFamily {
    /// Multiplicity of the positive eigenvalue block, in [0, N].
    pub kplus: usize,
    pub n: usize,
    /// mu = 2 Im(z); for a continuum family this is a representative value.
    pub mu: f64,
    /// Value of the reduced cost: `sqrt(1 - mu^2/4) (2 kplus - N)`.
    pub value: f64,
    pub nature: CriticalNature,
    /// True only for N = 4M, kplus = 2M: a continuous family over mu in [-2, 2].
    pub is_continuum: bool,
    /// The unit-circle root generating mu.
    pub z: Complex64,
}

impl CriticalFamily {
    pub fn radius(&self) -> f64 {
        (1.0 - self.mu * self.mu / 4.0).max(0.0).sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.is_continuum || (2.0 - self.mu.abs()).abs() <= MU_EDGE_TOL || self.mu.abs() >= 2.0
    }
}

/// A concrete critical point materialized from a family.
#[derive(Debug, Clone)]
pub struct CatalogEntryPoint {
    pub family: CriticalFamily,
    pub mu: f64,
    pub s: SpecialUnitaryPoint,
}

fn family_value(n: usize, kplus: usize, mu: f64) -> f64 {
    (1.0 - mu * mu / 4.0).max(0.0).sqrt() * (2.0 * kplus as f64 - n as f64)
}

/// All critical families of the reduced cost for dimension `n`, sorted by
/// `(kplus, mu)`. Natures follow the classification theorem, with the
/// degenerate `|mu| = 2` points labeled saddles.
pub fn enumerate(n: usize) -> Vec<CriticalFamily> {
    assert!(n >= 2);
    let mut families = Vec::new();
    for kplus in 0..=n {
        let m = n as i64 - 2 * kplus as i64;
        let rhs_is_minus_one = (n - kplus) % 2 == 1;
        if m == 0 {
            // z^0 = 1: either an identity (continuum over mu) or no solution.
            if !rhs_is_minus_one {
                families.push(CriticalFamily {
                    kplus,
                    n,
                    mu: 0.0,
                    value: 0.0,
                    nature: CriticalNature::Saddle,
                    is_continuum: true,
                    z: Complex64::ONE,
                });
            }
            continue;
        }
        let degree = m.unsigned_abs();
        let offset = if rhs_is_minus_one { PI } else { 0.0 };
        for k in 0..degree {
            let theta = (offset + 2.0 * PI * k as f64) / degree as f64;
            let z = Complex64::from_polar(1.0, theta);
            if z.re < -RE_Z_TOL {
                continue;
            }
            // Snap boundary roots so mu = +-2 is exact.
            let z = if z.re.abs() <= RE_Z_TOL {
                Complex64::new(0.0, z.im.signum())
            } else {
                z
            };
            let mu = 2.0 * z.im;
            families.push(CriticalFamily {
                kplus,
                n,
                mu,
                value: family_value(n, kplus, mu),
                nature: CriticalNature::Saddle, // assigned below
                is_continuum: false,
                z,
            });
        }
    }

    let global_max = families
        .iter()
        .map(|f| f.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let global_min = families
        .iter()
        .map(|f| f.value)
        .fold(f64::INFINITY, f64::min);

    for f in &mut families {
        f.nature = if f.is_continuum || f.is_degenerate() {
            // |mu| = 2 collapses to -+ i I; saddle by the endpoint argument.
            CriticalNature::Saddle
        } else if f.kplus == f.n {
            if (f.value - global_max).abs() <= 1e-9 {
                CriticalNature::GlobalMax
            } else {
                CriticalNature::LocalMaxNotGlobal
            }
        } else if f.kplus == 0 {
            if (f.value - global_min).abs() <= 1e-9 {
                CriticalNature::GlobalMin
            } else {
                CriticalNature::LocalMinNotGlobal
            }
        } else {
            CriticalNature::Saddle
        };
    }

    families.sort_by(|a, b| {
        a.kplus
            .cmp(&b.kplus)
            .then(a.mu.partial_cmp(&b.mu).unwrap())
    });
    families
}

/// Global max/min of the reduced landscape over the enumerated families.
pub fn global_extremes(n: usize) -> (f64, f64) {
    (n as f64, enumerate(n).iter().map(|f| f.value).fold(f64::INFINITY, f64::min))
}

/// Builds the diagonal canonical form `D_{kplus, mu} - (mu i / 2) I`.
pub fn canonical_matrix(n: usize, kplus: usize, mu: f64) -> CMatrix {
    let r = (1.0 - mu * mu / 4.0).max(0.0).sqrt();
    let plus = Complex64::new(r, -mu / 2.0);
    let minus = Complex64::new(-r, -mu / 2.0);
    CMatrix::from_fn(n, n, |i, j| {
        if i != j {
            Complex64::ZERO
        } else if i < kplus {
            plus
        } else {
            minus
        }
    })
}

/// Materializes a family at a unitary conjugator:
/// `S = U^dagger (D_{kplus, mu} - (mu i / 2) I) U`.
/// Continuum families need a concrete `mu` in [-2, 2].
pub fn materialize(
    family: &CriticalFamily,
    u: &UnitaryPoint,
    mu: Option<f64>,
) -> Result<CatalogEntryPoint> {
    if u.dim() != family.n {
        return Err(Error::DimensionMismatch(u.dim(), family.n));
    }
    let mu = match (family.is_continuum, mu) {
        (true, Some(m)) => {
            if !(-2.0..=2.0).contains(&m) {
                return Err(Error::MuOutOfRange(m));
            }
            m
        }
        (true, None) => return Err(Error::MissingMu),
        (false, Some(m)) => {
            if (m - family.mu).abs() > 1e-12 {
                return Err(Error::MuOutOfRange(m));
            }
            family.mu
        }
        (false, None) => family.mu,
    };
    let core = canonical_matrix(family.n, family.kplus, mu);
    let s_matrix = u.matrix().adjoint() * core * u.matrix();
    let s = SpecialUnitaryPoint::new(s_matrix).map_err(|e| Error::CatalogInvariant {
        detail: e.to_string(),
    })?;
    let target = TargetGate::identity(family.n);
    let (_, residual) = criticality_residual(&target, &s)?;
    if residual > 1e-10 {
        return Err(Error::CatalogInvariant {
            detail: format!("criticality residual {residual:.3e} exceeds 1e-10"),
        });
    }
    Ok(CatalogEntryPoint {
        family: family.clone(),
        mu,
        s,
    })
}

/// Identifies which catalog family a critical point of the reduced cost
/// belongs to, by clustering the spectrum of the Hermitian part against the
/// two-point spectrum `{+-sqrt(1 - mu^2/4)}`.
pub fn match_family<'a>(
    s: &SpecialUnitaryPoint,
    catalog: &'a [CriticalFamily],
    tol: f64,
) -> Result<&'a CriticalFamily> {
    let n = s.dim();
    let target = TargetGate::identity(n);
    let (mu_hat, residual) = criticality_residual(&target, s)?;
    if residual > tol {
        return Err(Error::NotCritical { residual, tol });
    }
    // W = S + (mu/2) i I is Hermitian at a critical point.
    let w = s.matrix() + identity(n).map(|c| I * Complex64::new(mu_hat / 2.0, 0.0) * c);
    let (eigenvalues, _) = hermitian_eig(&w)?;
    let r = (1.0 - mu_hat * mu_hat / 4.0).max(0.0).sqrt();

    if r <= tol {
        // Degenerate point -+ i I: every family with matching mu describes it.
        return catalog
            .iter()
            .find(|f| f.is_continuum || (f.mu - mu_hat).abs() <= tol)
            .ok_or(Error::AmbiguousMatch);
    }

    let mut kplus = 0usize;
    for &lambda in eigenvalues.iter() {
        if (lambda - r).abs() <= tol.max(1e-9) {
            kplus += 1;
        } else if (lambda + r).abs() > tol.max(1e-9) {
            return Err(Error::AmbiguousMatch);
        }
    }
    catalog
        .iter()
        .find(|f| {
            f.kplus == kplus && (f.is_continuum || (f.mu - mu_hat).abs() <= tol.max(1e-9))
        })
        .ok_or(Error::AmbiguousMatch)
}

/// The families that are traps: local extrema that are not global.
/// Empty exactly when the landscape is kinematically SU(N)-trap-free.
pub fn trap_report(n: usize) -> Vec<CriticalFamily> {
    enumerate(n)
        .into_iter()
        .filter(|f| {
            matches!(
                f.nature,
                CriticalNature::LocalMaxNotGlobal | CriticalNature::LocalMinNotGlobal
            )
        })
        .collect()
}

fn format_real(x: f64) -> String {
    // 17 significant digits, valid JSON number.
    let s = format!("{x:.16e}");
    s
}

fn nature_str(n: CriticalNature) -> &'static str {
    match n {
        CriticalNature::GlobalMax => "GlobalMax",
        CriticalNature::GlobalMin => "GlobalMin",
        CriticalNature::LocalMaxNotGlobal => "LocalMaxNotGlobal",
        CriticalNature::LocalMinNotGlobal => "LocalMinNotGlobal",
        CriticalNature::Saddle => "Saddle",
        CriticalNature::Degenerate => "Degenerate",
    }
}

/// Serializes families as a JSON array with stable field order and reals at
/// 17 significant digits.
pub fn to_json(families: &[CriticalFamily]) -> String {
    let mut out = String::from("[");
    for (i, f) in families.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"kplus\":{},\"mu\":{},\"value\":{},\"nature\":\"{}\",\"is_continuum\":{},\"z_re\":{},\"z_im\":{}}}",
            f.kplus,
            format_real(f.mu),
            format_real(f.value),
            nature_str(f.nature),
            f.is_continuum,
            format_real(f.z.re),
            format_real(f.z.im),
        ));
    }
    out.push(']');
    out
}
