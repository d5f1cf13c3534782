//! Dense complex matrix arithmetic and factorizations shared by every other
//! module. Backed by `nalgebra`; this module pins the conventions the rest of
//! the crate relies on (descending eigenvalue order, exponentials through the
//! Hermitian eigendecomposition).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};

pub type Complex64 = Complex<f64>;

/// Dense square complex matrix, the universal carrier for group elements,
/// tangent directions and gradients.
pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn ensure_square_finite(a: &CMatrix) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(a.nrows(), a.ncols()));
    }
    if a.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::NonFiniteEntries);
    }
    Ok(())
}

pub fn multiply(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch(a.ncols(), b.nrows()));
    }
    Ok(a * b)
}

/// Conjugate transpose.
pub fn adjoint(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().sum()
}

/// Complex determinant via LU with partial pivoting.
pub fn determinant(a: &CMatrix) -> Complex64 {
    a.determinant()
}

/// sqrt(tr(a^dagger a)).
pub fn frobenius_norm(a: &CMatrix) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn hermitian_residual(a: &CMatrix) -> f64 {
    frobenius_norm(&(a - a.adjoint()))
}

pub fn skew_residual(a: &CMatrix) -> f64 {
    frobenius_norm(&(a + a.adjoint()))
}

pub fn unitarity_residual(a: &CMatrix) -> f64 {
    let n = a.nrows();
    frobenius_norm(&(a.adjoint() * a - identity(n)))
}

/// Eigendecomposition of a Hermitian matrix: `h = V diag(lambda) V^dagger`
/// with real eigenvalues sorted descending.
pub fn hermitian_eig(h: &CMatrix) -> Result<(DVector<f64>, CMatrix)> {
    ensure_square_finite(h)?;
    let scale = frobenius_norm(h).max(1.0);
    let residual = hermitian_residual(h);
    if residual > 1e-10 * scale {
        return Err(Error::NotHermitian { residual });
    }
    // Symmetrize to scrub round-off before factoring.
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let n = h.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let vectors = CMatrix::from_columns(
        &order
            .iter()
            .map(|&k| eig.eigenvectors.column(k).into_owned())
            .collect::<Vec<_>>(),
    );
    Ok((values, vectors))
}

/// Exponential of a skew-Hermitian matrix, computed by diagonalizing the
/// Hermitian matrix `-i omega` and re-phasing. Lands on the unitary group by
/// construction.
pub fn expm_skew(omega: &CMatrix) -> Result<CMatrix> {
    ensure_square_finite(omega)?;
    let scale = frobenius_norm(omega).max(1.0);
    let residual = skew_residual(omega);
    if residual > 1e-10 * scale {
        return Err(Error::NotSkewHermitian { residual });
    }
    let h = omega.map(|c| -I * c);
    let (values, q) = hermitian_eig(&h)?;
    let phases = CMatrix::from_diagonal(&values.map(|l| Complex64::from_polar(1.0, l)));
    Ok(&q * phases * q.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_special_unitary;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, seed: u64) -> CMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        let a = random_matrix(n, seed);
        (&a + a.adjoint()).scale(0.5)
    }

    fn random_skew(n: usize, seed: u64) -> CMatrix {
        let a = random_matrix(n, seed);
        (&a - a.adjoint()).scale(0.5)
    }

    #[test]
    fn multiply_identity() {
        let id = identity(3);
        assert_eq!(multiply(&id, &id).unwrap(), id);
    }

    #[test]
    fn multiply_diag_i() {
        let d = CMatrix::from_diagonal(&DVector::from_vec(vec![I, -I]));
        let p = multiply(&d, &d).unwrap();
        let expected =
            CMatrix::from_diagonal(&DVector::from_vec(vec![-Complex64::ONE, -Complex64::ONE]));
        assert!(frobenius_norm(&(p - expected)) < 1e-15);
    }

    #[test]
    fn multiply_against_triple_loop() {
        let n = 3;
        let a = random_matrix(n, 1);
        let b = random_matrix(n, 2);
        let fast = multiply(&a, &b).unwrap();
        let mut slow = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    slow[(i, j)] += a[(i, k)] * b[(k, j)];
                }
            }
        }
        assert!(fast.iter().zip(slow.iter()).all(|(x, y)| (x - y).norm() < 1e-13));
    }

    #[test]
    fn multiply_dimension_mismatch() {
        let a = identity(2);
        let b = identity(3);
        assert!(matches!(
            multiply(&a, &b),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn adjoint_basic() {
        assert_eq!(adjoint(&identity(4)), identity(4));
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = I;
        let at = adjoint(&a);
        assert_eq!(at[(1, 0)], -I);
        assert_eq!(at[(0, 1)], Complex64::ZERO);
        assert_eq!(adjoint(&adjoint(&a)), a);
    }

    #[test]
    fn adjoint_of_unitary_inverts() {
        let u = random_special_unitary(4, 7).into_inner();
        assert!(unitarity_residual(&u) < 1e-12);
    }

    #[test]
    fn determinant_identity_and_phase() {
        assert!((determinant(&identity(5)) - Complex64::ONE).norm() < 1e-14);
        let theta = 0.73;
        let mut d = identity(4);
        d[(0, 0)] = Complex64::from_polar(1.0, theta);
        assert!((determinant(&d) - Complex64::from_polar(1.0, theta)).norm() < 1e-14);
    }

    fn cofactor_det(a: &CMatrix) -> Complex64 {
        let n = a.nrows();
        if n == 1 {
            return a[(0, 0)];
        }
        let mut det = Complex64::ZERO;
        for j in 0..n {
            let minor = a.clone().remove_row(0).remove_column(j);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            det += a[(0, j)] * cofactor_det(&minor).scale(sign);
        }
        det
    }

    #[test]
    fn determinant_against_cofactor_expansion() {
        let a = random_matrix(4, 11);
        let fast = determinant(&a);
        let slow = cofactor_det(&a);
        assert!((fast - slow).norm() / slow.norm() < 1e-11);
    }

    #[test]
    fn hermitian_eig_identity_and_diag() {
        let (values, _) = hermitian_eig(&identity(3)).unwrap();
        assert!(values.iter().all(|&l| (l - 1.0).abs() < 1e-14));
        let d = CMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(3.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ]));
        let (values, v) = hermitian_eig(&d).unwrap();
        assert!((values[0] - 3.0).abs() < 1e-14 && (values[1] + 1.0).abs() < 1e-14);
        assert!(unitarity_residual(&v) < 1e-12);
    }

    #[test]
    fn hermitian_eig_reconstructs() {
        for seed in 0..100u64 {
            let n = 2 + (seed as usize % 5);
            let h = random_hermitian(n, 1000 + seed);
            let (values, v) = hermitian_eig(&h).unwrap();
            let lambda = CMatrix::from_diagonal(&values.map(|l| Complex64::new(l, 0.0)));
            let recon = &v * lambda * v.adjoint();
            assert!(frobenius_norm(&(recon - &h)) < 1e-10);
            assert!(unitarity_residual(&v) < 1e-10);
        }
    }

    #[test]
    fn hermitian_eig_rejects_non_hermitian() {
        let mut a = identity(2);
        a[(0, 1)] = Complex64::new(0.5, 0.0);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn expm_skew_basic() {
        let z = CMatrix::zeros(3, 3);
        assert!(frobenius_norm(&(expm_skew(&z).unwrap() - identity(3))) < 1e-14);
        let pi = std::f64::consts::PI;
        let omega = CMatrix::from_diagonal(&DVector::from_vec(vec![
            Complex64::new(0.0, pi),
            Complex64::new(0.0, -pi),
        ]));
        let e = expm_skew(&omega).unwrap();
        let expected = identity(2).scale(-1.0);
        assert!(frobenius_norm(&(e - expected)) < 1e-12);
    }

    #[test]
    fn expm_skew_matches_taylor() {
        for seed in 0..20u64 {
            let n = 2 + (seed as usize % 4);
            let mut omega = random_skew(n, 2000 + seed);
            let norm = frobenius_norm(&omega);
            if norm > 1.0 {
                omega = omega.scale(1.0 / norm);
            }
            let fast = expm_skew(&omega).unwrap();
            let mut taylor = identity(n);
            let mut term = identity(n);
            for k in 1..=20 {
                term = &term * &omega / Complex64::new(k as f64, 0.0);
                taylor += &term;
            }
            assert!(frobenius_norm(&(fast - taylor)) < 1e-12);
        }
    }

    #[test]
    fn expm_skew_rejects_non_skew() {
        let h = random_hermitian(3, 5);
        assert!(matches!(expm_skew(&h), Err(Error::NotSkewHermitian { .. })));
    }

    #[test]
    fn frobenius_norm_basic() {
        assert!((frobenius_norm(&identity(7)) - (7.0f64).sqrt()).abs() < 1e-14);
        assert_eq!(frobenius_norm(&CMatrix::zeros(3, 3)), 0.0);
    }

    proptest! {
        #[test]
        fn adjoint_antihomomorphism(seed_a in 0u64..500, seed_b in 500u64..1000) {
            let a = random_matrix(3, seed_a);
            let b = random_matrix(3, seed_b);
            let lhs = adjoint(&multiply(&a, &b).unwrap());
            let rhs = multiply(&adjoint(&b), &adjoint(&a)).unwrap();
            prop_assert!(frobenius_norm(&(lhs - rhs)) < 1e-14);
        }

        #[test]
        fn det_exp_equals_exp_trace(seed in 0u64..200, n in 2usize..=8) {
            let omega = random_skew(n, seed).scale(0.3);
            let e = expm_skew(&omega).unwrap();
            let lhs = determinant(&e);
            let rhs = trace(&omega).exp();
            prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
        }
    }

    #[test]
    fn eigenvalues_match_characteristic_roots_2x2() {
        // Hermitian [[a, b], [conj(b), c]]: lambda = (a+c)/2 +- sqrt(((a-c)/2)^2 + |b|^2)
        let (a, c) = (1.3, -0.4);
        let b = Complex64::new(0.2, -0.7);
        let mut h = CMatrix::zeros(2, 2);
        h[(0, 0)] = Complex64::new(a, 0.0);
        h[(1, 1)] = Complex64::new(c, 0.0);
        h[(0, 1)] = b;
        h[(1, 0)] = b.conj();
        let disc = (((a - c) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        let (values, _) = hermitian_eig(&h).unwrap();
        assert!((values[0] - ((a + c) / 2.0 + disc)).abs() < 1e-10);
        assert!((values[1] - ((a + c) / 2.0 - disc)).abs() < 1e-10);
    }
}
