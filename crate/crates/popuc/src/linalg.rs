//! Dense complex linear algebra shared by the matrix modules.
//!
//! Everything here is plumbing over `nalgebra`: Schur-based eigendecomposition
//! with a randomized-similarity fallback, singular values, Haar-distributed
//! random unitaries, and small norm helpers. Domain logic lives elsewhere.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("eigendecomposition did not converge after randomized restarts")]
    SchurFailed,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖U*U − I‖_max`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    let gram = u.adjoint() * u;
    max_abs(&(gram - CMatrix::identity(n, n)))
}

/// Schur-based eigendecomposition.
///
/// Returns the diagonal of the triangular factor together with the Schur basis
/// Q. For a normal input the triangular factor is numerically diagonal, so the
/// columns of Q are orthonormal eigenvectors aligned with the returned values.
/// If the QR iteration stalls, the matrix is retried under a deterministic
/// random unitary similarity, which reshuffles the shift structure without
/// changing the spectrum.
pub fn schur_eigs(m: &CMatrix) -> Result<(Vec<Complex64>, CMatrix), LinalgError> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::identity(0, 0)));
    }
    let max_iter = 100 * n + 2000;
    if let Some(schur) = m.clone().try_schur(f64::EPSILON, max_iter) {
        let (q, t) = schur.unpack();
        return Ok((t.diagonal().iter().copied().collect(), q));
    }
    // fixed seed: results stay deterministic across runs
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_CA5E);
    for _ in 0..4 {
        let w = random_unitary(n, &mut rng);
        let rotated = w.adjoint() * m * &w;
        if let Some(schur) = rotated.try_schur(f64::EPSILON, max_iter) {
            let (q, t) = schur.unpack();
            return Ok((t.diagonal().iter().copied().collect(), w * q));
        }
    }
    Err(LinalgError::SchurFailed)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// A standard complex Gaussian sample (Box–Muller).
pub fn standard_complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    // radius split over re/im keeps the variance of each part at 1/2
    Complex64::new(
        r * theta.cos() / std::f64::consts::SQRT_2,
        r * theta.sin() / std::f64::consts::SQRT_2,
    )
}

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases absorbed into Q.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    loop {
        let g = CMatrix::from_fn(n, n, |_, _| standard_complex_gaussian(rng));
        let qr = g.qr();
        let r = qr.r();
        let mut q = qr.q();
        let mut degenerate = false;
        for j in 0..n {
            let d = r[(j, j)];
            if d.norm() < 1e-12 {
                degenerate = true;
                break;
            }
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        if !degenerate {
            return q;
        }
    }
}

/// A uniformly random unit vector.
pub fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> CVector {
    loop {
        let v = CVector::from_fn(n, |_, _| standard_complex_gaussian(rng));
        let norm = v.norm();
        if norm > 1e-6 {
            return v / Complex64::new(norm, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_eigs_diagonal() {
        let d = CMatrix::from_diagonal(&CVector::from_vec(vec![
            Complex64::new(0.0, 1.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ]));
        let (vals, q) = schur_eigs(&d).unwrap();
        assert_eq!(vals.len(), 3);
        let recon = &q * CMatrix::from_diagonal(&CVector::from_vec(vals)) * q.adjoint();
        assert!(max_abs(&(recon - d)) < 1e-12);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 2, 5, 9] {
            let u = random_unitary(n, &mut rng);
            assert!(unitarity_defect(&u) < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn singular_values_of_rank_one() {
        let u = CVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]);
        let m: CMatrix = &u * u.adjoint();
        let sv = singular_values(&m);
        assert!((sv[0] - 5.0).abs() < 1e-12);
        assert!(sv[1] < 1e-12);
    }
}
