//! JSON serialization of complex matrices and validated readers for
//! unitary and special-unitary inputs.
//!
//! The on-disk format stores real and imaginary parts as separate row-major
//! arrays: `{"n": 2, "re": [[...], [...]], "im": [[...], [...]]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{SpecialUnitaryPoint, UnitaryPoint};
use crate::landscape::TargetGate;
use crate::matrix::{ensure_square_finite, CMatrix, Complex64};

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

/// Serializes a square complex matrix to the JSON matrix format.
pub fn matrix_to_json(m: &CMatrix) -> Result<String> {
    ensure_square_finite(m)?;
    let n = m.nrows();
    let mut re = vec![vec![0.0; n]; n];
    let mut im = vec![vec![0.0; n]; n];
    for r in 0..n {
        for c in 0..n {
            re[r][c] = m[(r, c)].re;
            im[r][c] = m[(r, c)].im;
        }
    }
    Ok(serde_json::to_string_pretty(&MatrixFile { n, re, im })?)
}

/// Parses a matrix from the JSON matrix format, validating shape and
/// finiteness. Round-trips with [`matrix_to_json`] bit-exactly.
pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    let n = file.n;
    let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
    if n == 0 || !shape_ok(&file.re) || !shape_ok(&file.im) {
        return Err(Error::DimensionMismatch(file.re.len(), n));
    }
    let m = CMatrix::from_fn(n, n, |r, c| Complex64::new(file.re[r][c], file.im[r][c]));
    ensure_square_finite(&m)?;
    Ok(m)
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<()> {
    fs::write(path, matrix_to_json(m)?)?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> Result<CMatrix> {
    matrix_from_json(&fs::read_to_string(path)?)
}

/// Reads a matrix and validates unitarity to the admission tolerance.
pub fn read_unitary(path: &Path) -> Result<UnitaryPoint> {
    UnitaryPoint::new(read_matrix(path)?)
}

/// Reads a matrix and validates unit determinant in addition to unitarity.
pub fn read_special_unitary(path: &Path) -> Result<SpecialUnitaryPoint> {
    SpecialUnitaryPoint::new(read_matrix(path)?)
}

/// Reads a target gate (unitary; determinant may carry a phase).
pub fn read_target(path: &Path) -> Result<TargetGate> {
    TargetGate::new(read_matrix(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_special_unitary;
    use crate::matrix::identity;

    #[test]
    fn round_trip_is_bit_exact() {
        let m = random_special_unitary(4, 70).into_inner();
        let text = matrix_to_json(&m).unwrap();
        let back = matrix_from_json(&text).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m[(r, c)].re.to_bits(), back[(r, c)].re.to_bits());
                assert_eq!(m[(r, c)].im.to_bits(), back[(r, c)].im.to_bits());
            }
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        let text = r#"{"n": 2, "re": [[1.0, 0.0], [0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#;
        assert!(matrix_from_json(text).is_err());
    }

    #[test]
    fn rejects_non_finite() {
        let text = r#"{"n": 1, "re": [[1e999]], "im": [[0.0]]}"#;
        // serde_json parses 1e999 as infinity.
        assert!(matrix_from_json(text).is_err());
    }

    #[test]
    fn file_round_trip_and_validation() {
        let dir = std::env::temp_dir();
        let path = dir.join("sunscape_io_test.json");
        write_matrix(&path, &identity(3)).unwrap();
        let s = read_special_unitary(&path).unwrap();
        assert_eq!(s.dim(), 3);
        read_target(&path).unwrap();
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn non_unitary_rejected_by_readers() {
        let dir = std::env::temp_dir();
        let path = dir.join("sunscape_io_test_bad.json");
        write_matrix(&path, &(identity(2) * Complex64::new(2.0, 0.0))).unwrap();
        assert!(read_unitary(&path).is_err());
        assert!(read_special_unitary(&path).is_err());
        std::fs::remove_file(&path).ok();
    }
}
