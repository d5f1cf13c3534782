//! Geometry of U(N) and SU(N): validated group points, tangent directions,
//! the bi-invariant metric, the determinant constraint in the stereographic
//! chart from the West, geodesics and Haar-style sampling.

use nalgebra::DVector;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{
    self, determinant, expm_skew, frobenius_norm, identity, trace, CMatrix, Complex64, I,
};

/// Tolerance for admitting matrices into the group types.
pub const ADMISSION_TOL: f64 = 1e-8;
/// Tolerance for internal algebraic identities.
pub const INTERNAL_TOL: f64 = 1e-10;
/// Points with |det U + 1| below this are excluded from the West chart.
pub const WEST_POLE_TOL: f64 = 1e-8;

/// Element of U(N), validated on construction.
#[derive(Debug, Clone)]
pub struct UnitaryPoint {
    u: CMatrix,
}

impl UnitaryPoint {
    pub fn new(u: CMatrix) -> Result<Self> {
        matrix::ensure_square_finite(&u)?;
        let residual = matrix::unitarity_residual(&u);
        if residual > ADMISSION_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { u })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.u
    }

    pub fn into_inner(self) -> CMatrix {
        self.u
    }

    pub fn dim(&self) -> usize {
        self.u.nrows()
    }
}

/// Element of SU(N): unitary with determinant 1.
#[derive(Debug, Clone)]
pub struct SpecialUnitaryPoint {
    s: CMatrix,
}

impl SpecialUnitaryPoint {
    pub fn new(s: CMatrix) -> Result<Self> {
        matrix::ensure_square_finite(&s)?;
        let residual = matrix::unitarity_residual(&s);
        if residual > ADMISSION_TOL {
            return Err(Error::NotUnitary { residual });
        }
        let det_residual = (determinant(&s) - Complex64::ONE).norm();
        if det_residual > ADMISSION_TOL {
            return Err(Error::NotSpecialUnitary {
                residual: det_residual,
            });
        }
        Ok(Self { s })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.s
    }

    pub fn into_inner(self) -> CMatrix {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.s.nrows()
    }

    pub fn as_unitary(&self) -> UnitaryPoint {
        UnitaryPoint { u: self.s.clone() }
    }
}

/// Skew-Hermitian matrix Omega representing the tangent vector Omega*U.
#[derive(Debug, Clone)]
pub struct TangentDirection {
    omega: CMatrix,
    traceless: bool,
}

impl TangentDirection {
    pub fn new(omega: CMatrix) -> Result<Self> {
        matrix::ensure_square_finite(&omega)?;
        let scale = frobenius_norm(&omega).max(1.0);
        let residual = matrix::skew_residual(&omega);
        if residual > INTERNAL_TOL * scale {
            return Err(Error::NotSkewHermitian { residual });
        }
        let traceless = trace(&omega).norm() <= INTERNAL_TOL * scale;
        Ok(Self { omega, traceless })
    }

    /// A traceless direction, i.e. tangent to SU(N).
    pub fn new_traceless(omega: CMatrix) -> Result<Self> {
        let dir = Self::new(omega)?;
        if !dir.traceless {
            return Err(Error::NotTraceless {
                trace_abs: trace(&dir.omega).norm(),
            });
        }
        Ok(dir)
    }

    pub fn omega(&self) -> &CMatrix {
        &self.omega
    }

    pub fn is_traceless(&self) -> bool {
        self.traceless
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            omega: self.omega.scale(c),
            traceless: self.traceless,
        }
    }
}

/// Bi-invariant metric on tangent directions: `1/2 Re tr(Omega_v^dagger Omega_w)`.
/// Independent of the base point.
pub fn metric(v: &TangentDirection, w: &TangentDirection) -> f64 {
    ambient_metric_omega(v.omega(), w.omega())
}

pub(crate) fn ambient_metric_omega(a: &CMatrix, b: &CMatrix) -> f64 {
    0.5 * (a.adjoint() * b).diagonal().sum().re
}

/// Metric on ambient matrices V_i = Omega_i U at a common unitary base point:
/// `1/2 Re tr(V_1^dagger V_2)`, which equals the tangent metric by unitarity.
pub fn ambient_metric(v: &CMatrix, w: &CMatrix) -> f64 {
    ambient_metric_omega(v, w)
}

pub fn metric_norm(v: &TangentDirection) -> f64 {
    metric(v, v).max(0.0).sqrt()
}

/// The constraint function in the stereographic chart from the West:
/// `Im(det U) / (Re(det U) + 1)`. Zero exactly on SU(N).
pub fn f_hw(u: &UnitaryPoint) -> Result<f64> {
    let d = determinant(u.matrix());
    if (d + Complex64::ONE).norm() < WEST_POLE_TOL {
        return Err(Error::WestPole);
    }
    Ok(d.im / (d.re + 1.0))
}

/// Differential of `f_hw` on SU(N) along Omega*S, evaluated as a real number:
/// `-(i/2) tr Omega`, i.e. `Im(tr Omega) / 2` for skew-Hermitian Omega.
pub fn f_hw_differential(omega: &CMatrix) -> f64 {
    let t = trace(omega);
    0.5 * t.im
}

/// Ambient gradient of `f_hw` at a point of SU(N): `i S`.
///
/// The sign is fixed so that the metric pairing with Omega*S reproduces the
/// first derivative of `f_hw` along the geodesic `exp(t Omega) S`, which is
/// `-(i/2) tr Omega`.
pub fn grad_f_hw(s: &SpecialUnitaryPoint) -> CMatrix {
    s.matrix().map(|c| I * c)
}

/// Quadratic form of the ambient Hessian of `f_hw` along the geodesic
/// through `u` with speed Omega:
/// `2i det U (tr Omega)^2 (det U - 1) / (det U + 1)^3`.
/// The value is real; the imaginary part cancels and is asserted.
pub fn hess_f_hw_quadratic(u: &UnitaryPoint, dir: &TangentDirection) -> Result<f64> {
    let d = determinant(u.matrix());
    if (d + Complex64::ONE).norm() < WEST_POLE_TOL {
        return Err(Error::WestPole);
    }
    let t = trace(dir.omega());
    let value = Complex64::new(0.0, 2.0) * d * t * t * (d - Complex64::ONE)
        / (d + Complex64::ONE).powu(3);
    debug_assert!(value.im.abs() <= 1e-10 * value.norm().max(1.0));
    Ok(value.re)
}

/// Riemannian gradient on SU(N) of a restricted cost, given its ambient
/// U(N) gradient at `s`: `grad - (1/N) tr(S^dagger grad) S`.
pub fn sun_gradient(s: &SpecialUnitaryPoint, grad_ambient: &CMatrix) -> Result<CMatrix> {
    let n = s.dim();
    if grad_ambient.nrows() != n || grad_ambient.ncols() != n {
        return Err(Error::DimensionMismatch(grad_ambient.nrows(), n));
    }
    let omega = grad_ambient * s.matrix().adjoint();
    let scale = frobenius_norm(&omega).max(1.0);
    let residual = matrix::skew_residual(&omega);
    if residual > ADMISSION_TOL * scale {
        return Err(Error::MalformedGradient { residual });
    }
    let coeff = trace(&(s.matrix().adjoint() * grad_ambient)) / Complex64::new(n as f64, 0.0);
    Ok(grad_ambient - s.matrix().map(|c| coeff * c))
}

/// Converts an ambient gradient at `s` into an exactly traceless
/// skew-Hermitian direction Omega with `Omega S` the SU(N) gradient.
pub fn gradient_direction(
    s: &SpecialUnitaryPoint,
    grad_ambient: &CMatrix,
) -> Result<TangentDirection> {
    let grad = sun_gradient(s, grad_ambient)?;
    let raw = &grad * s.matrix().adjoint();
    // Scrub round-off: project onto traceless skew-Hermitian matrices.
    let skew = (&raw - raw.adjoint()).scale(0.5);
    let n = s.dim();
    let tr = trace(&skew) / Complex64::new(n as f64, 0.0);
    let omega = &skew - identity(n).map(|c| tr * c);
    TangentDirection::new_traceless(omega)
}

/// One geodesic step: `exp(t Omega) s`, staying in SU(N).
pub fn geodesic_step(
    s: &SpecialUnitaryPoint,
    dir: &TangentDirection,
    t: f64,
) -> Result<SpecialUnitaryPoint> {
    if !dir.is_traceless() {
        return Err(Error::NotTraceless {
            trace_abs: trace(dir.omega()).norm(),
        });
    }
    let step = expm_skew(&dir.omega().scale(t))?;
    SpecialUnitaryPoint::new(step * s.matrix())
}

fn gaussian_matrix(n: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / Complex64::new(std::f64::consts::SQRT_2, 0.0)
    })
}

/// Haar-distributed element of U(N): QR of a complex Gaussian matrix with the
/// R diagonal re-phased.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> UnitaryPoint {
    assert!(n >= 1);
    let g = gaussian_matrix(n, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..n {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 {
            d / Complex64::new(d.norm(), 0.0)
        } else {
            Complex64::ONE
        };
        for i in 0..n {
            q[(i, k)] *= phase;
        }
    }
    UnitaryPoint::new(q).expect("QR of a Gaussian matrix is unitary")
}

/// Random element of SU(N): Haar on U(N) with the global phase removed by
/// `e^{-i theta / N}` where `theta = arg det`.
pub fn random_special_unitary(n: usize, seed: u64) -> SpecialUnitaryPoint {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    special_unitary_from_rng(n, &mut rng)
}

pub fn special_unitary_from_rng(n: usize, rng: &mut impl Rng) -> SpecialUnitaryPoint {
    let q = haar_unitary(n, rng).into_inner();
    let theta = determinant(&q).arg();
    let phase = Complex64::from_polar(1.0, -theta / n as f64);
    SpecialUnitaryPoint::new(q.map(|c| phase * c)).expect("phase removal lands on SU(N)")
}

/// Random traceless skew-Hermitian direction with unit Frobenius norm.
pub fn random_traceless_direction(n: usize, rng: &mut impl Rng) -> TangentDirection {
    let g = gaussian_matrix(n, rng);
    let skew = (&g - g.adjoint()).scale(0.5);
    let tr = trace(&skew) / Complex64::new(n as f64, 0.0);
    let mut omega = &skew - identity(n).map(|c| tr * c);
    let norm = frobenius_norm(&omega);
    if norm > 0.0 {
        omega = omega.scale(1.0 / norm);
    }
    TangentDirection::new_traceless(omega).expect("projection yields a traceless direction")
}

/// Random skew-Hermitian direction (not necessarily traceless) with unit norm.
pub fn random_direction(n: usize, rng: &mut impl Rng) -> TangentDirection {
    let g = gaussian_matrix(n, rng);
    let mut omega = (&g - g.adjoint()).scale(0.5);
    let norm = frobenius_norm(&omega);
    if norm > 0.0 {
        omega = omega.scale(1.0 / norm);
    }
    TangentDirection::new(omega).expect("antisymmetrization yields a skew direction")
}

/// Orthonormal basis of su(N): generalized Gell-Mann matrices scaled by i,
/// normalized so `tr(Omega_a^dagger Omega_b) = 2 delta_ab`. Under the
/// bi-invariant metric the Gram matrix is exactly the identity.
#[derive(Debug, Clone)]
pub struct SuNBasis {
    n: usize,
    elements: Vec<TangentDirection>,
}

impl SuNBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut elements = Vec::with_capacity(n * n - 1);
        // Symmetric off-diagonal: i (E_jk + E_kj).
        for j in 0..n {
            for k in (j + 1)..n {
                let mut m = CMatrix::zeros(n, n);
                m[(j, k)] = I;
                m[(k, j)] = I;
                elements.push(TangentDirection::new_traceless(m).unwrap());
            }
        }
        // Antisymmetric off-diagonal: E_jk - E_kj (equals i times the
        // antisymmetric Gell-Mann matrix).
        for j in 0..n {
            for k in (j + 1)..n {
                let mut m = CMatrix::zeros(n, n);
                m[(j, k)] = Complex64::ONE;
                m[(k, j)] = -Complex64::ONE;
                elements.push(TangentDirection::new_traceless(m).unwrap());
            }
        }
        // Diagonal: i sqrt(2 / (l (l+1))) diag(1, ..., 1, -l, 0, ..., 0).
        for l in 1..n {
            let c = (2.0 / (l as f64 * (l as f64 + 1.0))).sqrt();
            let mut diag = DVector::from_element(n, Complex64::ZERO);
            for item in diag.iter_mut().take(l) {
                *item = I * Complex64::new(c, 0.0);
            }
            diag[l] = -I * Complex64::new(c * l as f64, 0.0);
            elements.push(TangentDirection::new_traceless(CMatrix::from_diagonal(&diag)).unwrap());
        }
        debug_assert_eq!(elements.len(), n * n - 1);
        Self { n, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[TangentDirection] {
        &self.elements
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn diag(entries: Vec<Complex64>) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_vec(entries))
    }

    #[test]
    fn metric_basic() {
        let omega = TangentDirection::new(diag(vec![I, -I])).unwrap();
        assert!((metric(&omega, &omega) - 1.0).abs() < 1e-15);
        let zero = TangentDirection::new(CMatrix::zeros(2, 2)).unwrap();
        assert_eq!(metric(&omega, &zero), 0.0);
    }

    #[test]
    fn metric_cauchy_schwarz() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let v = random_direction(3, &mut rng);
            let w = random_direction(3, &mut rng);
            let vw = metric(&v, &w).abs();
            assert!(vw <= metric_norm(&v) * metric_norm(&w) + 1e-12);
        }
    }

    #[test]
    fn f_hw_values() {
        let id = UnitaryPoint::new(identity(3)).unwrap();
        assert_eq!(f_hw(&id).unwrap(), 0.0);
        // diag(e^{i theta}, 1, 1): f_hw = tan(theta / 2).
        let theta = std::f64::consts::FRAC_PI_2;
        let u = UnitaryPoint::new(diag(vec![
            Complex64::from_polar(1.0, theta),
            Complex64::ONE,
            Complex64::ONE,
        ]))
        .unwrap();
        assert!((f_hw(&u).unwrap() - 1.0).abs() < 1e-14);
        // West pole is excluded.
        let west = UnitaryPoint::new(diag(vec![-Complex64::ONE, Complex64::ONE])).unwrap();
        assert!(matches!(f_hw(&west), Err(Error::WestPole)));
    }

    #[test]
    fn f_hw_vanishes_exactly_on_sun() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let s = special_unitary_from_rng(4, &mut rng);
            assert!(f_hw(&s.as_unitary()).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn grad_f_hw_norm_is_n_over_2() {
        for n in 2..=6 {
            let s = random_special_unitary(n, 3 * n as u64);
            let g = grad_f_hw(&s);
            assert!((ambient_metric(&g, &g) - n as f64 / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn grad_f_hw_pairing_matches_differential() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = special_unitary_from_rng(3, &mut rng);
            let omega = random_direction(3, &mut rng);
            let pairing = ambient_metric(&grad_f_hw(&s), &(omega.omega() * s.matrix()));
            assert!((pairing - f_hw_differential(omega.omega())).abs() < 1e-12);
        }
    }

    #[test]
    fn grad_f_hw_differential_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let h = 1e-5;
        for _ in 0..20 {
            let s = special_unitary_from_rng(3, &mut rng);
            let omega = random_direction(3, &mut rng);
            let plus = f_hw(&UnitaryPoint::new(
                expm_skew(&omega.omega().scale(h)).unwrap() * s.matrix(),
            )
            .unwrap())
            .unwrap();
            let minus = f_hw(&UnitaryPoint::new(
                expm_skew(&omega.omega().scale(-h)).unwrap() * s.matrix(),
            )
            .unwrap())
            .unwrap();
            let fd = (plus - minus) / (2.0 * h);
            let analytic = f_hw_differential(omega.omega());
            let denom = analytic.abs().max(fd.abs()).max(1e-8);
            assert!((fd - analytic).abs() / denom < 1e-6);
        }
    }

    #[test]
    fn sun_gradient_zero_and_collinear() {
        let s = random_special_unitary(3, 77);
        let zero = CMatrix::zeros(3, 3);
        assert_eq!(frobenius_norm(&sun_gradient(&s, &zero).unwrap()), 0.0);
        // Ambient gradient collinear with the constraint direction projects
        // to zero: the criticality criterion grad G = alpha S.
        let collinear = s.matrix().map(|c| I * c);
        let g = sun_gradient(&s, &collinear).unwrap();
        assert!(frobenius_norm(&g) < 1e-12);
    }

    #[test]
    fn sun_gradient_output_is_traceless_skew() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let s = special_unitary_from_rng(4, &mut rng);
            let omega = random_direction(4, &mut rng);
            let ambient = omega.omega() * s.matrix();
            let dir = gradient_direction(&s, &ambient).unwrap();
            assert!(matrix::skew_residual(dir.omega()) <= 1e-10);
            assert!(trace(dir.omega()).norm() <= 1e-10);
        }
    }

    #[test]
    fn sun_gradient_rejects_malformed_input() {
        let s = random_special_unitary(3, 10);
        let bad = identity(3); // I * S^dagger is not skew-Hermitian
        assert!(matches!(
            sun_gradient(&s, &bad),
            Err(Error::MalformedGradient { .. })
        ));
    }

    #[test]
    fn geodesic_step_closed_form() {
        let s = random_special_unitary(2, 21);
        let dir = TangentDirection::new_traceless(diag(vec![I, -I])).unwrap();
        let same = geodesic_step(&s, &dir, 0.0).unwrap();
        assert!(frobenius_norm(&(same.matrix() - s.matrix())) < 1e-15);

        let id = SpecialUnitaryPoint::new(identity(2)).unwrap();
        let rotated = geodesic_step(&id, &dir, std::f64::consts::PI).unwrap();
        let expected = identity(2).scale(-1.0);
        assert!(frobenius_norm(&(rotated.matrix() - &expected)) < 1e-12);
    }

    #[test]
    fn geodesic_det_drift_stays_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut s = special_unitary_from_rng(3, &mut rng);
        for _ in 0..1000 {
            let dir = random_traceless_direction(3, &mut rng);
            s = geodesic_step(&s, &dir, 0.01).unwrap();
        }
        assert!((determinant(s.matrix()) - Complex64::ONE).norm() < 1e-7);
    }

    #[test]
    fn random_special_unitary_invariants() {
        for n in 2..=6 {
            for seed in 0..(1000 / 5) {
                let s = random_special_unitary(n, seed);
                assert!(matrix::unitarity_residual(s.matrix()) <= ADMISSION_TOL);
                assert!((determinant(s.matrix()) - Complex64::ONE).norm() <= ADMISSION_TOL);
            }
        }
    }

    #[test]
    fn random_special_unitary_is_deterministic() {
        let a = random_special_unitary(4, 123);
        let b = random_special_unitary(4, 123);
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn random_special_unitary_trace_moment() {
        // Haar-projected heuristic: E|tr S|^2 stays near 1 for n = 3.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let samples = 5000;
        let mean: f64 = (0..samples)
            .map(|_| trace(special_unitary_from_rng(3, &mut rng).matrix()).norm_sqr())
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 1.0).abs() < 0.2);
    }

    #[test]
    fn sun_basis_dimensions_and_orthonormality() {
        assert_eq!(SuNBasis::new(2).len(), 3);
        assert_eq!(SuNBasis::new(3).len(), 8);
        for n in 2..=8 {
            let basis = SuNBasis::new(n);
            for (a, va) in basis.elements().iter().enumerate() {
                for (b, vb) in basis.elements().iter().enumerate() {
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!(
                        (metric(va, vb) - expected).abs() < 1e-12,
                        "n={n} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn hess_f_hw_vanishes_on_sun() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..100 {
            let s = special_unitary_from_rng(3, &mut rng);
            let omega = random_direction(3, &mut rng);
            let h = hess_f_hw_quadratic(&s.as_unitary(), &omega).unwrap();
            assert!(h.abs() < 1e-12);
        }
    }

    #[test]
    fn hess_f_hw_vanishes_for_traceless_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let u = haar_unitary(3, &mut rng);
        let omega = random_traceless_direction(3, &mut rng);
        assert_eq!(hess_f_hw_quadratic(&u, &omega).unwrap(), 0.0);
    }

    #[test]
    fn hess_f_hw_matches_second_differences() {
        let u = UnitaryPoint::new(diag(vec![
            Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3),
            Complex64::ONE,
            Complex64::ONE,
        ]))
        .unwrap();
        let omega = TangentDirection::new(identity(3).map(|c| I * c)).unwrap();
        let analytic = hess_f_hw_quadratic(&u, &omega).unwrap();
        let h = 1e-3;
        let f = |t: f64| {
            f_hw(&UnitaryPoint::new(expm_skew(&omega.omega().scale(t)).unwrap() * u.matrix())
                .unwrap())
            .unwrap()
        };
        let fd = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        assert!((analytic - fd).abs() / analytic.abs().max(1.0) < 1e-5);
    }
}
