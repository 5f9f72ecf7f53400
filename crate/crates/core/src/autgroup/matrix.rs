//! Dense complex matrix exponential and logarithm.

use nalgebra::{linalg::Schur, DMatrix};
use num_complex::Complex64;

use super::AlgebraError;

pub type CMatrix = DMatrix<Complex64>;

/// Eigenvalues within this relative angle of the negative real axis get their
/// logarithm taken with the cut rotated by the same angle.
pub const NEGATIVE_AXIS_PHASE: f64 = 1e-6;

/// Eigenvector matrices with a larger 2-norm condition number are treated as
/// defective.
pub const MAX_EIGENVECTOR_CONDITION: f64 = 1e8;

/// Result of [`matrix_log`].
#[derive(Clone, Debug)]
pub struct MatrixLog {
    pub log: CMatrix,
    /// Set when some eigenvalue sat on (or within [`NEGATIVE_AXIS_PHASE`] of)
    /// the negative real axis.
    pub negative_axis_rotated: bool,
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn norm1(m: &CMatrix) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|c| c.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `|det M| > 1e-12 * (max |m_ij|)^n`.
pub fn is_invertible(m: &CMatrix) -> bool {
    let n = m.nrows() as i32;
    let scale = max_abs(m);
    if scale == 0.0 || !scale.is_finite() {
        return false;
    }
    m.clone().determinant().norm() > 1e-12 * scale.powi(n)
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let norm = norm1(a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let b = a.map(|c| c / 2f64.powi(squarings));
    let mut sum = CMatrix::identity(n, n);
    let mut term = CMatrix::identity(n, n);
    for k in 1..=30 {
        term = &term * &b / Complex64::new(k as f64, 0.0);
        sum += &term;
        if max_abs(&term) <= 1e-18 * max_abs(&sum) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Principal logarithm of a scalar, with the cut rotated off eigenvalues that
/// lie on the negative real axis.
fn branch_log(lambda: Complex64) -> (Complex64, bool) {
    if lambda.re < 0.0 && lambda.im.abs() <= NEGATIVE_AXIS_PHASE * lambda.norm() {
        let rotated = lambda * Complex64::from_polar(1.0, NEGATIVE_AXIS_PHASE);
        let arg = rotated.arg() - NEGATIVE_AXIS_PHASE;
        (Complex64::new(lambda.norm().ln(), arg), true)
    } else {
        (lambda.ln(), false)
    }
}

/// Logarithm of an invertible matrix: `exp(matrix_log(M).log) = M`.
///
/// A matrix with a single eigenvalue `λ` and `M/λ - I` nilpotent uses the
/// terminating series of `log(I + N)`; everything else goes through an
/// eigendecomposition obtained from the complex Schur form.
pub fn matrix_log(m: &CMatrix) -> Result<MatrixLog, AlgebraError> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    if !is_invertible(m) {
        return Err(AlgebraError::SingularMatrix);
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or(AlgebraError::NonDiagonalizable { condition: f64::INFINITY })?;
    let (q, t) = schur.unpack();
    let eig: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();

    let mean = eig.iter().sum::<Complex64>() / Complex64::new(n as f64, 0.0);
    if eig.iter().all(|l| (l - mean).norm() <= 1e-8 * mean.norm()) {
        if let Some(log) = unipotent_log(m, mean) {
            return Ok(log);
        }
    }

    let t_scale = max_abs(&t);
    let zero = Complex64::new(0.0, 0.0);
    let mut x = CMatrix::zeros(n, n);
    for i in 0..n {
        let lambda = eig[i];
        x[(i, i)] = Complex64::new(1.0, 0.0);
        for j in (0..i).rev() {
            let s: Complex64 = (j + 1..=i).map(|l| t[(j, l)] * x[(l, i)]).sum();
            let d = t[(j, j)] - lambda;
            if d.norm() <= 1e-13 * t_scale {
                // Repeated eigenvalue: only a zero right-hand side keeps the
                // eigenvector finite.
                if s.norm() <= 1e-9 * t_scale {
                    x[(j, i)] = zero;
                } else {
                    return Err(AlgebraError::NonDiagonalizable {
                        condition: f64::INFINITY,
                    });
                }
            } else {
                x[(j, i)] = -s / d;
            }
        }
    }
    let mut v = &q * &x;
    for mut col in v.column_iter_mut() {
        let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        col /= Complex64::new(norm, 0.0);
    }
    let sv = v.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if condition > MAX_EIGENVECTOR_CONDITION {
        return Err(AlgebraError::NonDiagonalizable { condition });
    }
    let v_inv = v
        .clone()
        .try_inverse()
        .ok_or(AlgebraError::NonDiagonalizable { condition })?;

    let mut rotated = false;
    let mut diag = CMatrix::zeros(n, n);
    for (i, &l) in eig.iter().enumerate() {
        let (log, r) = branch_log(l);
        rotated |= r;
        diag[(i, i)] = log;
    }
    Ok(MatrixLog {
        log: &v * diag * v_inv,
        negative_axis_rotated: rotated,
    })
}

/// `log(λ) I + log(I + N)` for `M = λ (I + N)` with `N` nilpotent; `None`
/// when `N` is not numerically nilpotent.
fn unipotent_log(m: &CMatrix, lambda: Complex64) -> Option<MatrixLog> {
    let n = m.nrows();
    let id = CMatrix::identity(n, n);
    let nil = m / lambda - &id;
    let mut power = id.clone();
    for _ in 0..n {
        power = &power * &nil;
    }
    let bound = 1e-9 * max_abs(&nil).max(1.0).powi(n as i32);
    if max_abs(&power) > bound {
        return None;
    }
    let (log_lambda, rotated) = branch_log(lambda);
    let mut log = &id * log_lambda;
    let mut term = id;
    for j in 1..n {
        term = &term * &nil;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        log += &term * Complex64::new(sign / j as f64, 0.0);
    }
    Some(MatrixLog {
        log,
        negative_axis_rotated: rotated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mat(rows: &[&[Complex64]]) -> CMatrix {
        let n = rows.len();
        CMatrix::from_fn(n, rows[0].len(), |i, j| rows[i][j])
    }

    #[test]
    fn log_of_identity_is_zero() {
        let l = matrix_log(&CMatrix::identity(3, 3)).unwrap();
        assert_eq!(max_abs(&l.log), 0.0);
        assert!(!l.negative_axis_rotated);
    }

    #[test]
    fn log_of_quarter_rotation() {
        let m = mat(&[&[c(0., 0.), c(-1., 0.)], &[c(1., 0.), c(0., 0.)]]);
        let l = matrix_log(&m).unwrap();
        let expected = m.map(|x| x * (PI / 2.0));
        assert!(max_abs_diff(&l.log, &expected) < 1e-12);
    }

    #[test]
    fn log_of_jordan_block_is_nilpotent_part() {
        let m = mat(&[&[c(1., 0.), c(1., 0.)], &[c(0., 0.), c(1., 0.)]]);
        let l = matrix_log(&m).unwrap();
        let expected = mat(&[&[c(0., 0.), c(1., 0.)], &[c(0., 0.), c(0., 0.)]]);
        assert!(max_abs_diff(&l.log, &expected) < 1e-15);
    }

    #[test]
    fn defective_with_distinct_blocks_is_rejected() {
        // Jordan block for 2 plus a separate eigenvalue 3.
        let m = mat(&[
            &[c(2., 0.), c(1., 0.), c(0., 0.)],
            &[c(0., 0.), c(2., 0.), c(0., 0.)],
            &[c(0., 0.), c(0., 0.), c(3., 0.)],
        ]);
        assert!(matches!(
            matrix_log(&m),
            Err(AlgebraError::NonDiagonalizable { .. })
        ));
    }

    #[test]
    fn singular_is_rejected() {
        let m = mat(&[&[c(1., 0.), c(2., 0.)], &[c(2., 0.), c(4., 0.)]]);
        assert!(matches!(matrix_log(&m), Err(AlgebraError::SingularMatrix)));
    }

    #[test]
    fn negative_eigenvalue_sets_flag_and_roundtrips() {
        let m = mat(&[&[c(-1., 0.), c(0., 0.)], &[c(0., 0.), c(2., 0.)]]);
        let l = matrix_log(&m).unwrap();
        assert!(l.negative_axis_rotated);
        assert!(max_abs_diff(&expm(&l.log), &m) < 1e-12);
        // The rotated cut puts -1 at argument -pi.
        assert!((l.log[(0, 0)] - c(0.0, -PI)).norm() < 1e-12);
    }

    #[test]
    fn repeated_eigenvalue_diagonalizable() {
        let m = mat(&[
            &[c(2., 0.), c(0., 0.), c(0., 0.)],
            &[c(0., 0.), c(2., 0.), c(0., 0.)],
            &[c(0., 0.), c(0., 0.), c(5., 1.)],
        ]);
        let l = matrix_log(&m).unwrap();
        assert!(max_abs_diff(&expm(&l.log), &m) < 1e-12);
    }
}
