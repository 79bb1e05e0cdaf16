//! Monic orthogonal polynomials on the unit circle and their paraorthogonal
//! variants, generated from a word of Verblunsky coefficients.
//!
//! The recursion is
//!
//! ```text
//! Φ_{n+1}(z) = z Φ_n(z) − conj(α_n) Φ_n*(z),     Φ_0 = 1,
//! Φ_n*(z)   = z^n conj(Φ_n(1/conj(z)))           (reverse and conjugate),
//! ```
//!
//! with every coefficient `α_j` strictly inside the unit disk. Truncating the
//! last step with a unimodular boundary coefficient `β` instead of an interior
//! one produces the degree-n paraorthogonal polynomial
//!
//! ```text
//! Φ_n(z; β) = z Φ_{n−1}(z) − conj(β) Φ_{n−1}*(z),
//! ```
//!
//! all of whose zeros lie on the unit circle. Second-kind polynomials `Ψ_n`
//! are the same construction applied to the negated word. A note on
//! conventions: some sources write the boundary parameter as `β` where this
//! module uses `−conj(β)`; the convention here is the displayed formula,
//! everywhere.
//!
//! Polynomials are stored densely by coefficient (degrees stay in the low
//! hundreds). The reversal operation takes the degree explicitly: the stored
//! coefficient length is authoritative and high-order zero coefficients are
//! significant, so `star(star(p, n), n) = p` holds even when leading
//! coefficients vanish.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circle::CirclePoint;

/// Margin keeping Verblunsky coefficients away from the unit circle, where
/// `(1 − |α|²)^{1/2}` in the matrix representation would degenerate.
pub const TAU_DISK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SzegoError {
    #[error("coefficient {index} has modulus {modulus}, not strictly inside the unit disk")]
    CoefficientOutsideDisk { index: usize, modulus: f64 },
    #[error("word too short: need {needed} coefficients, have {available}")]
    WordTooShort { needed: usize, available: usize },
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("declared degree {declared} is below the stored degree {stored}")]
    DegreeTooSmall { declared: usize, stored: usize },
    #[error("leading coefficient {value} is not exactly 1")]
    NotMonic { value: Complex64 },
    #[error("empty coefficient list")]
    EmptyCoefficients,
}

/// A finite sequence of Verblunsky coefficients, each strictly inside the
/// unit disk (`|α_j| < 1 − TAU_DISK`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct VerblunskyWord {
    coefficients: Vec<Complex64>,
}

impl VerblunskyWord {
    pub fn new(coefficients: Vec<Complex64>) -> Result<Self, SzegoError> {
        for (index, a) in coefficients.iter().enumerate() {
            let modulus = a.norm();
            if modulus >= 1.0 - TAU_DISK {
                return Err(SzegoError::CoefficientOutsideDisk { index, modulus });
            }
        }
        Ok(Self { coefficients })
    }

    /// The constant word `α_j ≡ alpha` of the given length.
    pub fn constant(alpha: Complex64, len: usize) -> Result<Self, SzegoError> {
        Self::new(vec![alpha; len])
    }

    /// The empty word (degree-0 data).
    pub fn empty() -> Self {
        Self {
            coefficients: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn get(&self, j: usize) -> Option<Complex64> {
        self.coefficients.get(j).copied()
    }

    /// The sign-flipped word `α_j ↦ −α_j` defining second-kind polynomials.
    pub fn negated(&self) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|a| -a).collect(),
        }
    }

    /// The first `len` coefficients.
    pub fn prefix(&self, len: usize) -> Result<Self, SzegoError> {
        if len > self.coefficients.len() {
            return Err(SzegoError::WordTooShort {
                needed: len,
                available: self.coefficients.len(),
            });
        }
        Ok(Self {
            coefficients: self.coefficients[..len].to_vec(),
        })
    }
}

impl TryFrom<Vec<[f64; 2]>> for VerblunskyWord {
    type Error = SzegoError;
    fn try_from(pairs: Vec<[f64; 2]>) -> Result<Self, Self::Error> {
        Self::new(
            pairs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<VerblunskyWord> for Vec<[f64; 2]> {
    fn from(w: VerblunskyWord) -> Self {
        w.coefficients.iter().map(|a| [a.re, a.im]).collect()
    }
}

/// A unimodular boundary coefficient.
///
/// Construction validates the modulus against [`crate::circle::TAU_CIRCLE`]
/// and then projects the value radially onto the circle, so the stored value is unimodular to
/// machine precision. The projection keeps the matrix representation exactly
/// decoupled where the theory says it decouples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryCoefficient {
    value: CirclePoint,
}

impl BoundaryCoefficient {
    pub fn new(point: CirclePoint) -> Self {
        let v = point.value();
        let projected = v / v.norm();
        Self {
            // radial projection never moves the argument
            value: CirclePoint::new(projected).expect("radial projection lands on the circle"),
        }
    }

    pub fn from_complex(value: Complex64) -> Result<Self, crate::circle::CircleError> {
        Ok(Self::new(CirclePoint::new(value)?))
    }

    pub fn from_angle(theta: f64) -> Self {
        Self::new(CirclePoint::from_angle(theta))
    }

    pub fn value(&self) -> CirclePoint {
        self.value
    }

    pub fn complex(&self) -> Complex64 {
        self.value.value()
    }

    pub fn negated(&self) -> Self {
        Self::new(CirclePoint::from_angle(self.value.arg() + std::f64::consts::PI))
    }
}

/// A dense complex polynomial `c_0 + c_1 z + … + c_n z^n`.
///
/// Most values produced here are monic by construction (`c_n` exactly `1`);
/// images under [`star`] generally are not, and [`MonicPoly::is_monic`]
/// reports which case holds. The stored length is authoritative: high-order
/// zero coefficients carry degree information and are never trimmed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct MonicPoly {
    coefficients: Vec<Complex64>,
}

impl MonicPoly {
    /// A polynomial whose leading coefficient must be exactly 1.
    pub fn monic(coefficients: Vec<Complex64>) -> Result<Self, SzegoError> {
        match coefficients.last() {
            None => Err(SzegoError::EmptyCoefficients),
            Some(&c) if c == Complex64::new(1.0, 0.0) => Ok(Self { coefficients }),
            Some(&c) => Err(SzegoError::NotMonic { value: c }),
        }
    }

    /// A polynomial with no constraint on the leading coefficient (the
    /// representation used for reversed polynomials).
    pub fn dense(coefficients: Vec<Complex64>) -> Result<Self, SzegoError> {
        if coefficients.is_empty() {
            return Err(SzegoError::EmptyCoefficients);
        }
        Ok(Self { coefficients })
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self {
            coefficients: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// Declared degree: one less than the stored coefficient count.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last() == Some(&Complex64::new(1.0, 0.0))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coefficients.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Largest coefficient-wise distance to another polynomial of the same
    /// declared degree (`∞` if degrees differ).
    pub fn max_coefficient_distance(&self, other: &Self) -> f64 {
        if self.coefficients.len() != other.coefficients.len() {
            return f64::INFINITY;
        }
        self.coefficients
            .iter()
            .zip(other.coefficients.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<[f64; 2]>> for MonicPoly {
    type Error = SzegoError;
    fn try_from(pairs: Vec<[f64; 2]>) -> Result<Self, Self::Error> {
        Self::dense(
            pairs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<MonicPoly> for Vec<[f64; 2]> {
    fn from(p: MonicPoly) -> Self {
        p.coefficients.iter().map(|c| [c.re, c.im]).collect()
    }
}

/// The reversed polynomial of declared degree `degree`:
/// `(c_0, …, c_n) ↦ (conj(c_n), …, conj(c_0))` after zero-padding up to
/// `degree + 1` coefficients.
///
/// The degree is explicit because the reversal depends on it: `z^n` reversed
/// as a degree-n polynomial is the constant 1, stored with n high-order zero
/// coefficients so the reversal can be undone.
pub fn star(p: &MonicPoly, degree: usize) -> Result<MonicPoly, SzegoError> {
    if degree < p.degree() {
        return Err(SzegoError::DegreeTooSmall {
            declared: degree,
            stored: p.degree(),
        });
    }
    let mut padded = p.coefficients.clone();
    padded.resize(degree + 1, Complex64::new(0.0, 0.0));
    padded.reverse();
    for c in padded.iter_mut() {
        *c = c.conj();
    }
    MonicPoly::dense(padded)
}

/// The monic orthogonal polynomial `Φ_n` of the word, by the recursion.
/// All of its zeros lie strictly inside the unit disk.
pub fn phi(word: &VerblunskyWord, n: usize) -> Result<MonicPoly, SzegoError> {
    if n > word.len() {
        return Err(SzegoError::WordTooShort {
            needed: n,
            available: word.len(),
        });
    }
    let mut p = MonicPoly::one();
    for k in 0..n {
        p = recursion_step(&p, k, word.coefficients[k].conj())?;
    }
    Ok(p)
}

/// One step `z·p − multiplier·p*`, taking degree-k `p` to degree k+1.
fn recursion_step(p: &MonicPoly, k: usize, multiplier: Complex64) -> Result<MonicPoly, SzegoError> {
    let reversed = star(p, k)?;
    let mut next = vec![Complex64::new(0.0, 0.0); k + 2];
    for (i, c) in p.coefficients.iter().enumerate() {
        next[i + 1] += c;
    }
    for (i, c) in reversed.coefficients().iter().enumerate() {
        next[i] -= multiplier * c;
    }
    MonicPoly::dense(next)
}

/// Second-kind polynomial `Ψ_n`: the `Φ_n` of the negated word.
pub fn psi(word: &VerblunskyWord, n: usize) -> Result<MonicPoly, SzegoError> {
    phi(&word.negated(), n)
}

/// Degree-n paraorthogonal polynomial `z Φ_{n−1} − conj(β) Φ_{n−1}*`.
/// Monic, and all its zeros lie on the unit circle.
pub fn popuc_first(
    word: &VerblunskyWord,
    beta: &BoundaryCoefficient,
    n: usize,
) -> Result<MonicPoly, SzegoError> {
    if n == 0 {
        return Err(SzegoError::DegreeZero);
    }
    if n - 1 > word.len() {
        return Err(SzegoError::WordTooShort {
            needed: n - 1,
            available: word.len(),
        });
    }
    let p = phi(word, n - 1)?;
    recursion_step(&p, n - 1, beta.complex().conj())
}

/// Second-kind paraorthogonal polynomial `z Ψ_{n−1} − conj(β) Ψ_{n−1}*`,
/// equal to the first kind built from the negated word.
pub fn popuc_second(
    word: &VerblunskyWord,
    beta: &BoundaryCoefficient,
    n: usize,
) -> Result<MonicPoly, SzegoError> {
    popuc_first(&word.negated(), beta, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coeffs_close(p: &MonicPoly, expected: &[Complex64], tol: f64) {
        assert_eq!(p.degree() + 1, expected.len(), "degree mismatch");
        for (a, b) in p.coefficients().iter().zip(expected.iter()) {
            assert!(
                (a - b).norm() <= tol,
                "coefficient mismatch: {a} vs {b} (poly {:?})",
                p.coefficients()
            );
        }
    }

    #[test]
    fn word_validation() {
        assert!(VerblunskyWord::new(vec![z(0.5, 0.0)]).is_ok());
        assert!(matches!(
            VerblunskyWord::new(vec![z(1.0, 0.0)]),
            Err(SzegoError::CoefficientOutsideDisk { .. })
        ));
        assert!(VerblunskyWord::new(vec![z(1.0 - 1e-13, 0.0)]).is_err());
    }

    #[test]
    fn phi_one_step() {
        let a0 = z(0.3, 0.4);
        let word = VerblunskyWord::new(vec![a0]).unwrap();
        let p = phi(&word, 1).unwrap();
        coeffs_close(&p, &[-a0.conj(), z(1.0, 0.0)], 0.0);
    }

    #[test]
    fn phi_zero_word_is_power() {
        let word = VerblunskyWord::new(vec![z(0.0, 0.0); 3]).unwrap();
        let p = phi(&word, 3).unwrap();
        coeffs_close(
            &p,
            &[z(0.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
            0.0,
        );
    }

    #[test]
    fn phi_half_then_zero() {
        let word = VerblunskyWord::new(vec![z(0.5, 0.0), z(0.0, 0.0)]).unwrap();
        let p = phi(&word, 2).unwrap();
        coeffs_close(&p, &[z(0.0, 0.0), z(-0.5, 0.0), z(1.0, 0.0)], 0.0);
        assert!(p.is_monic());
    }

    #[test]
    fn phi_needs_enough_coefficients() {
        let word = VerblunskyWord::new(vec![z(0.1, 0.0)]).unwrap();
        assert!(matches!(
            phi(&word, 2),
            Err(SzegoError::WordTooShort { .. })
        ));
    }

    #[test]
    fn star_examples() {
        let a0 = z(0.3, -0.2);
        let p = MonicPoly::monic(vec![-a0.conj(), z(1.0, 0.0)]).unwrap();
        let s = star(&p, 1).unwrap();
        coeffs_close(&s, &[z(1.0, 0.0), -a0], 0.0);
        assert!(!s.is_monic() || a0 == z(-1.0, 0.0));

        // z^n reverses to the constant 1 (with degree-n storage)
        for n in [1usize, 3, 7] {
            let mut c = vec![z(0.0, 0.0); n + 1];
            c[n] = z(1.0, 0.0);
            let p = MonicPoly::monic(c).unwrap();
            let s = star(&p, n).unwrap();
            assert_eq!(s.eval(z(0.37, 0.11)), z(1.0, 0.0));
            assert_eq!(s.degree(), n);
        }
    }

    #[test]
    fn star_requires_declared_degree() {
        let p = MonicPoly::one();
        assert!(star(&p, 0).is_ok());
        let q = MonicPoly::monic(vec![z(0.0, 0.0), z(1.0, 0.0)]).unwrap();
        assert!(matches!(
            star(&q, 0),
            Err(SzegoError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn psi_examples() {
        let word = VerblunskyWord::new(vec![z(0.0, 0.0); 2]).unwrap();
        coeffs_close(
            &psi(&word, 2).unwrap(),
            &[z(0.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
            0.0,
        );

        let word = VerblunskyWord::new(vec![z(0.5, 0.0)]).unwrap();
        coeffs_close(&psi(&word, 1).unwrap(), &[z(0.5, 0.0), z(1.0, 0.0)], 0.0);

        // double negation
        let word = VerblunskyWord::new(vec![z(0.3, 0.4)]).unwrap();
        let via_psi = psi(&word.negated(), 1).unwrap();
        let direct = phi(&word, 1).unwrap();
        assert_eq!(via_psi, direct);
    }

    #[test]
    fn popuc_first_base_case() {
        let beta = BoundaryCoefficient::from_angle(0.77);
        let p = popuc_first(&VerblunskyWord::empty(), &beta, 1).unwrap();
        coeffs_close(&p, &[-beta.complex().conj(), z(1.0, 0.0)], 0.0);
    }

    #[test]
    fn popuc_first_power_family() {
        // α ≡ 0 with β_n = conj(λ)^n gives z^n − λ^n
        let lambda = Complex64::from_polar(1.0, 0.3);
        for n in 1..=20usize {
            let word = VerblunskyWord::new(vec![z(0.0, 0.0); n.saturating_sub(1)]).unwrap();
            let beta =
                BoundaryCoefficient::from_complex(lambda.conj().powu(n as u32)).unwrap();
            let p = popuc_first(&word, &beta, n).unwrap();
            let mut expected = vec![z(0.0, 0.0); n + 1];
            expected[0] = -lambda.powu(n as u32);
            expected[n] = z(1.0, 0.0);
            coeffs_close(&p, &expected, 1e-13);
            // the designated common zero
            assert!(p.eval(lambda).norm() <= 1e-12);
        }
    }

    #[test]
    fn popuc_first_half_word() {
        let word = VerblunskyWord::new(vec![z(0.5, 0.0)]).unwrap();
        let beta = BoundaryCoefficient::from_angle(0.0);
        let p = popuc_first(&word, &beta, 2).unwrap();
        coeffs_close(&p, &[z(-1.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)], 1e-15);
    }

    #[test]
    fn popuc_second_examples() {
        let beta = BoundaryCoefficient::from_angle(0.0);
        let word = VerblunskyWord::new(vec![z(0.0, 0.0)]).unwrap();
        coeffs_close(
            &popuc_second(&word, &beta, 2).unwrap(),
            &[z(-1.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
            0.0,
        );

        // z(z + 1/2) − (1 + z/2) = z² − 1
        let word = VerblunskyWord::new(vec![z(0.5, 0.0)]).unwrap();
        coeffs_close(
            &popuc_second(&word, &beta, 2).unwrap(),
            &[z(-1.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)],
            1e-15,
        );

        let word = VerblunskyWord::new(vec![z(0.3, 0.0)]).unwrap();
        let neg = VerblunskyWord::new(vec![z(-0.3, 0.0)]).unwrap();
        let beta_i = BoundaryCoefficient::from_complex(z(0.0, 1.0)).unwrap();
        let a = popuc_second(&word, &beta_i, 2).unwrap();
        let b = popuc_first(&neg, &beta_i, 2).unwrap();
        assert!(a.max_coefficient_distance(&b) <= 1e-15);
    }

    #[test]
    fn eval_examples() {
        let p = MonicPoly::monic(vec![z(-1.0, 0.0), z(0.0, 0.0), z(1.0, 0.0)]).unwrap();
        assert_eq!(p.eval(z(0.0, 1.0)), z(-2.0, 0.0));

        let beta = BoundaryCoefficient::from_angle(1.23);
        let q = popuc_first(&VerblunskyWord::empty(), &beta, 1).unwrap();
        assert!(q.eval(beta.complex().conj()).norm() <= 1e-15);
    }

    #[test]
    fn eval_accuracy_high_degree() {
        // z^n − λ^n at unimodular points, degree up to 200: error well below
        // 1e−13 relative to the coefficient mass (= 2)
        let lambda = Complex64::from_polar(1.0, 0.3);
        for n in [50usize, 120, 200] {
            let mut c = vec![z(0.0, 0.0); n + 1];
            c[0] = -lambda.powu(n as u32);
            c[n] = z(1.0, 0.0);
            let p = MonicPoly::monic(c).unwrap();
            for k in 0..12 {
                let w = Complex64::from_polar(1.0, 0.5 + k as f64);
                let exact = w.powu(n as u32) - lambda.powu(n as u32);
                assert!(
                    (p.eval(w) - exact).norm() / 2.0 <= 1e-13,
                    "degree {n} point {k}"
                );
            }
        }
    }

    #[test]
    fn popuc_constant_coefficient_unimodular() {
        // c_0 = −conj(β) exactly, so |c_0| = 1 for every word
        let beta = BoundaryCoefficient::from_angle(2.5);
        for word in [
            VerblunskyWord::new(vec![z(0.0, 0.0); 6]).unwrap(),
            VerblunskyWord::new(vec![z(0.3, -0.2), z(0.1, 0.5), z(-0.7, 0.1)]).unwrap(),
        ] {
            let n = word.len() + 1;
            let p = popuc_first(&word, &beta, n).unwrap();
            assert!((p.coefficients()[0].norm() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn boundary_coefficient_projects() {
        let raw = CirclePoint::new(z(1.0 + 0.9e-10, 0.0)).unwrap();
        let b = BoundaryCoefficient::new(raw);
        assert!((b.complex().norm() - 1.0).abs() < 1e-15);
        let m = b.negated();
        assert!((m.complex() + b.complex()).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn star_is_an_involution(
            res in proptest::collection::vec(-2.0..2.0f64, 1..12),
            ims in proptest::collection::vec(-2.0..2.0f64, 1..12),
        ) {
            let len = res.len().min(ims.len());
            let coeffs: Vec<Complex64> = (0..len).map(|i| z(res[i], ims[i])).collect();
            let p = MonicPoly::dense(coeffs).unwrap();
            let n = p.degree();
            let back = star(&star(&p, n).unwrap(), n).unwrap();
            prop_assert_eq!(p, back);
        }

        #[test]
        fn second_kind_is_first_kind_of_negated_word(
            parts in proptest::collection::vec((-0.65..0.65f64, -0.65..0.65f64), 1..10),
            beta_angle in 0.0..std::f64::consts::TAU,
        ) {
            let coeffs: Vec<Complex64> = parts.iter().map(|&(a, b)| z(a, b)).collect();
            let word = VerblunskyWord::new(coeffs).unwrap();
            let n = word.len() + 1;
            let beta = BoundaryCoefficient::from_angle(beta_angle);
            let second = popuc_second(&word, &beta, n).unwrap();
            let first_of_neg = popuc_first(&word.negated(), &beta, n).unwrap();
            prop_assert!(second.max_coefficient_distance(&first_of_neg) <= 1e-13);
        }
    }
}
