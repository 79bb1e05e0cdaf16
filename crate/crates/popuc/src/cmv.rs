//! Finite CMV matrices: the five-diagonal unitary representation of a
//! coefficient word, built from the two-factor block decomposition
//!
//! ```text
//! C = L·M,   L = Θ(γ_0) ⊕ Θ(γ_2) ⊕ …,   M = 1_{1×1} ⊕ Θ(γ_1) ⊕ Θ(γ_3) ⊕ …,
//! Θ(γ) = [[conj(γ), τ], [τ, −γ]],   τ = (1 − |γ|²)^{1/2},
//! ```
//!
//! where `Θ(γ_j)` occupies rows and columns `j, j+1`. When the final
//! coefficient `γ_{n−1}` is unimodular its `τ` vanishes, the block turns
//! diagonal, and the matrix decouples: the top n×n corner is the finite CMV
//! matrix of the word. Its characteristic polynomial is precisely the
//! degree-n paraorthogonal polynomial of the same data, which makes unitary
//! eigensolving the canonical way to compute POPUC zeros.
//!
//! The module also implements the rank-one surgery on the last interior
//! block: replacing `Θ(α_{n−1})` inside a size-(n+1) matrix by a suitable
//! diagonal 2×2 turns it into `C_n ⊕ [λ_n]` while changing the matrix by a
//! rank-one perturbation. The decoupled value `λ_n` is computed from that
//! construction (the bottom-corner entry of the perturbed product), not from
//! a closed-form transcription; `split` validates the reconstruction and the
//! rank of the difference on every call.

use nalgebra::Matrix2;
use num_complex::Complex64;
use thiserror::Error;

use crate::circle::{CircleError, CirclePoint, TAU_CIRCLE};
use crate::linalg::{self, CMatrix, CVector, LinalgError};
use crate::rankone::{RankOneError, UnitaryMatrix};
use crate::szego::{BoundaryCoefficient, MonicPoly, SzegoError, VerblunskyWord, TAU_DISK};

/// Unitarity tolerance for the individual factors L and M.
pub const TAU_FACTOR: f64 = 1e-12;
/// Unitarity tolerance for assembled dense matrices.
pub const TAU_DENSE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CmvError {
    #[error("gamma has modulus {modulus} > 1")]
    GammaOutsideDisk { modulus: f64 },
    #[error("alpha has modulus {modulus}, not strictly inside the unit disk")]
    AlphaNotInterior { modulus: f64 },
    #[error("matrix of size {size} is too small to split")]
    SizeTooSmall { size: usize },
    #[error("zero vector")]
    ZeroVector,
    #[error("numerical defect in {what}: {value:e}")]
    NumericalDefect { what: &'static str, value: f64 },
    #[error(transparent)]
    Szego(#[from] SzegoError),
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The 2×2 unitary building block `[[conj(γ), τ], [τ, −γ]]`.
///
/// `τ` is snapped to exactly zero when `1 − |γ|²` falls below [`TAU_DISK`],
/// so unimodular coefficients decouple the block exactly.
#[derive(Debug, Clone, Copy)]
pub struct ThetaBlock {
    gamma: Complex64,
    tau: f64,
    entries: Matrix2<Complex64>,
}

impl ThetaBlock {
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn entries(&self) -> &Matrix2<Complex64> {
        &self.entries
    }

    pub fn is_decoupled(&self) -> bool {
        self.tau == 0.0
    }
}

/// Builds the 2×2 block for `|γ| ≤ 1`.
pub fn theta(gamma: Complex64) -> Result<ThetaBlock, CmvError> {
    let modulus = gamma.norm();
    if modulus > 1.0 + TAU_CIRCLE {
        return Err(CmvError::GammaOutsideDisk { modulus });
    }
    let tau_sq = (1.0 - gamma.norm_sqr()).max(0.0);
    let tau = if tau_sq <= TAU_DISK { 0.0 } else { tau_sq.sqrt() };
    let t = Complex64::new(tau, 0.0);
    Ok(ThetaBlock {
        gamma,
        tau,
        entries: Matrix2::new(gamma.conj(), t, t, -gamma),
    })
}

/// The two block-diagonal factors of a finite CMV matrix.
#[derive(Debug, Clone)]
pub struct CMVFactorization {
    l: CMatrix,
    m: CMatrix,
    sign_corner: i8,
}

impl CMVFactorization {
    pub fn l(&self) -> &CMatrix {
        &self.l
    }

    pub fn m(&self) -> &CMatrix {
        &self.m
    }

    /// +1 for the standard corner, −1 for the sign-flipped variant.
    pub fn sign_corner(&self) -> i8 {
        self.sign_corner
    }
}

/// An n×n unitary five-diagonal matrix together with its factorization and
/// the coefficient data it was built from.
#[derive(Debug, Clone)]
pub struct FiniteCMV {
    word: VerblunskyWord,
    boundary: BoundaryCoefficient,
    dense: CMatrix,
    factors: CMVFactorization,
}

impl FiniteCMV {
    pub fn size(&self) -> usize {
        self.dense.nrows()
    }

    pub fn dense(&self) -> &CMatrix {
        &self.dense
    }

    pub fn factors(&self) -> &CMVFactorization {
        &self.factors
    }

    pub fn word(&self) -> &VerblunskyWord {
        &self.word
    }

    pub fn boundary(&self) -> &BoundaryCoefficient {
        &self.boundary
    }

    /// The matrix as a validated [`UnitaryMatrix`].
    pub fn unitary(&self) -> Result<UnitaryMatrix, RankOneError> {
        UnitaryMatrix::new(self.dense.clone())
    }

    /// Monic characteristic polynomial `det(z − C)`.
    ///
    /// Computed by evaluating the determinant at the (n+1)-th roots of unity
    /// and interpolating, so it is independent of the coefficient recursion it
    /// is cross-checked against.
    pub fn char_poly(&self) -> MonicPoly {
        let mut coeffs = char_poly_dense(&self.dense);
        let lead = *coeffs.last().expect("nonempty");
        for c in coeffs.iter_mut() {
            *c /= lead;
        }
        let n = coeffs.len();
        coeffs[n - 1] = Complex64::new(1.0, 0.0);
        MonicPoly::monic(coeffs).expect("normalized leading coefficient")
    }
}

/// Places `Θ(γ_j)` at rows/columns (j, j+1) of `f`, or the truncated 1×1
/// corner `conj(γ_j)` when the block would overflow the matrix.
fn place_block(f: &mut CMatrix, j: usize, gamma: Complex64) -> Result<(), CmvError> {
    let n = f.nrows();
    if j + 1 < n {
        let th = theta(gamma)?;
        f[(j, j)] = th.entries[(0, 0)];
        f[(j, j + 1)] = th.entries[(0, 1)];
        f[(j + 1, j)] = th.entries[(1, 0)];
        f[(j + 1, j + 1)] = th.entries[(1, 1)];
    } else {
        f[(j, j)] = gamma.conj();
    }
    Ok(())
}

fn assemble(gammas: &[Complex64], sign_corner: i8) -> Result<(CMatrix, CMatrix), CmvError> {
    let n = gammas.len();
    let mut l = CMatrix::zeros(n, n);
    let mut m = CMatrix::zeros(n, n);
    if n > 0 {
        m[(0, 0)] = Complex64::new(sign_corner as f64, 0.0);
    }
    for j in (0..n).step_by(2) {
        place_block(&mut l, j, gammas[j])?;
    }
    for j in (1..n).step_by(2) {
        place_block(&mut m, j, gammas[j])?;
    }
    Ok((l, m))
}

fn build_with_sign(
    word: &VerblunskyWord,
    beta: &BoundaryCoefficient,
    sign_corner: i8,
) -> Result<FiniteCMV, CmvError> {
    let mut gammas: Vec<Complex64> = word.coefficients().to_vec();
    gammas.push(beta.complex());
    let (l, m) = assemble(&gammas, sign_corner)?;

    let l_defect = linalg::unitarity_defect(&l);
    let m_defect = linalg::unitarity_defect(&m);
    if l_defect > TAU_FACTOR || m_defect > TAU_FACTOR {
        return Err(CmvError::NumericalDefect {
            what: "factor unitarity",
            value: l_defect.max(m_defect),
        });
    }

    let dense = &l * &m;
    let defect = linalg::unitarity_defect(&dense);
    if defect > TAU_DENSE {
        return Err(CmvError::NumericalDefect {
            what: "dense unitarity",
            value: defect,
        });
    }
    let n = dense.nrows();
    for i in 0..n {
        for j in 0..n {
            if i.abs_diff(j) > 2 && dense[(i, j)] != Complex64::new(0.0, 0.0) {
                return Err(CmvError::NumericalDefect {
                    what: "five-diagonal structure",
                    value: dense[(i, j)].norm(),
                });
            }
        }
    }

    Ok(FiniteCMV {
        word: word.clone(),
        boundary: *beta,
        dense,
        factors: CMVFactorization { l, m, sign_corner },
    })
}

/// The finite CMV matrix of an interior word and a unimodular boundary
/// coefficient; size is `word.len() + 1`.
pub fn build(word: &VerblunskyWord, beta: &BoundaryCoefficient) -> Result<FiniteCMV, CmvError> {
    build_with_sign(word, beta, 1)
}

/// The variant with `−1` in the corner of the second factor. Its spectrum is
/// that of the second-kind pairing: the matrix is unitarily equivalent to
/// `build(word.negated(), beta.negated())`, and it differs from
/// `build(word, beta)` by a rank-one matrix.
pub fn build_m_tilde(
    word: &VerblunskyWord,
    beta: &BoundaryCoefficient,
) -> Result<FiniteCMV, CmvError> {
    build_with_sign(word, beta, -1)
}

/// Raw characteristic polynomial coefficients (ascending, leading not yet
/// normalized) of any square complex matrix, by determinant evaluation at the
/// (n+1)-th roots of unity followed by an inverse discrete Fourier transform.
pub(crate) fn char_poly_dense(a: &CMatrix) -> Vec<Complex64> {
    let n = a.nrows();
    let m = n + 1;
    let step = std::f64::consts::TAU / m as f64;
    let values: Vec<Complex64> = (0..m)
        .map(|j| {
            let z = Complex64::from_polar(1.0, step * j as f64);
            let zi = CMatrix::identity(n, n) * z - a;
            zi.lu().determinant()
        })
        .collect();
    (0..m)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, v) in values.iter().enumerate() {
                acc += v * Complex64::from_polar(1.0, -step * ((j * k) % m) as f64);
            }
            acc / m as f64
        })
        .collect()
}

fn completion_value(first: Complex64, alpha: Complex64) -> Complex64 {
    first.conj() * (first * alpha - Complex64::new(1.0, 0.0))
        / (first.conj() * alpha.conj() - Complex64::new(1.0, 0.0))
}

/// The unique unimodular `x` making `Θ(α) − diag(β, x)` rank one.
///
/// The determinant of that difference is
/// `(conj(α) − β)(−α − x) − (1 − |α|²)`, which vanishes exactly at
/// `x = conj(β)·(βα − 1)/(conj(β)conj(α) − 1)`; the denominator is bounded
/// away from zero because `|βα| < 1`.
pub fn rank_one_completion(
    alpha: Complex64,
    beta: &BoundaryCoefficient,
) -> Result<CirclePoint, CmvError> {
    let modulus = alpha.norm();
    if modulus >= 1.0 - TAU_DISK {
        return Err(CmvError::AlphaNotInterior { modulus });
    }
    Ok(CirclePoint::new(completion_value(beta.complex(), alpha))?)
}

/// The rank-one data relating the original matrix to its decoupled form.
///
/// `phi` is a unit vector supported on the last two coordinates. With
/// `U = perturbed` and `V = original` (their adjoints when `adjoint_pair` is
/// set, which happens when the replaced block lives in the L factor), the pair
/// satisfies `V φ = multiplier · U φ` and
/// `V − U = (multiplier − 1) · (Uφ) φ*`.
#[derive(Debug, Clone)]
pub struct SplitPerturbation {
    pub phi: CVector,
    pub multiplier: CirclePoint,
    pub adjoint_pair: bool,
}

/// Result of decoupling a size-(n+1) matrix into a size-n matrix plus one
/// reserved eigenvalue.
#[derive(Debug, Clone)]
pub struct SplitResult {
    /// The inner size-n finite CMV matrix (same interior word, new boundary).
    pub inner: FiniteCMV,
    /// The decoupled eigenvalue `λ_n`: the bottom-corner entry of the
    /// perturbed product.
    pub decoupled: CirclePoint,
    /// Rank-one relation between original and perturbed matrices.
    pub perturbation: SplitPerturbation,
    /// The diagonal 2×2 that supplanted the last interior block.
    pub replaced_block: Matrix2<Complex64>,
    /// The perturbed matrix itself, equal to `inner ⊕ [decoupled]`.
    pub perturbed: CMatrix,
}

/// Splits a size-(n+1) finite CMV matrix into `C_n ⊕ [λ_n]` by a rank-one
/// replacement of its last interior block.
///
/// The block `Θ(α_{n−1})` (at rows n−1, n) is replaced by `diag(b, x)` where
/// `b = conj(β_n)` forces the top n×n corner of the product to equal the
/// size-n matrix with boundary `β_n`, and `x` is the unique unimodular value
/// keeping the replacement a rank-one change. `λ_n` is read off the corner of
/// the perturbed product; the reconstruction, the rank of the difference, and
/// the rank-one relation are all validated before returning.
pub fn split(c_next: &FiniteCMV, beta_n: &BoundaryCoefficient) -> Result<SplitResult, CmvError> {
    let size = c_next.size();
    if size < 2 {
        return Err(CmvError::SizeTooSmall { size });
    }
    let n = size - 1;
    let alpha = c_next
        .word
        .get(n - 1)
        .expect("word length equals size − 1");

    let b = beta_n.complex().conj();
    let x = completion_value(b, alpha);
    let th = theta(alpha)?;
    let replaced_block = Matrix2::new(
        b,
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        x,
    );

    // Which factor hosts the replaced block depends on the parity of n−1.
    let host_is_l = (n - 1) % 2 == 0;
    let mut l = c_next.factors.l.clone();
    let mut m = c_next.factors.m.clone();
    {
        let target = if host_is_l { &mut l } else { &mut m };
        target[(n - 1, n - 1)] = b;
        target[(n - 1, n)] = Complex64::new(0.0, 0.0);
        target[(n, n - 1)] = Complex64::new(0.0, 0.0);
        target[(n, n)] = x;
    }
    let perturbed = &l * &m;
    let decoupled = CirclePoint::new(perturbed[(n, n)])?;

    let inner = build(&c_next.word.prefix(n - 1)?, beta_n)?;

    // Reconstruction: the perturbed matrix must be the block direct sum.
    let mut block_sum = CMatrix::zeros(size, size);
    block_sum.view_mut((0, 0), (n, n)).copy_from(&inner.dense);
    block_sum[(n, n)] = decoupled.value();
    let recon_defect = linalg::max_abs(&(&perturbed - &block_sum));
    if recon_defect > TAU_DENSE {
        return Err(CmvError::NumericalDefect {
            what: "split reconstruction",
            value: recon_defect,
        });
    }

    // The difference is rank one: D = Θ(α) − diag(b, x) = u·w*, embedded.
    let diff = c_next.dense() - &perturbed;
    let sv = linalg::singular_values(&diff);
    if sv.len() > 1 && sv[1] > TAU_DENSE {
        return Err(CmvError::NumericalDefect {
            what: "split rank-one difference",
            value: sv[1],
        });
    }

    let d00 = th.entries[(0, 0)] - b;
    let d01 = th.entries[(0, 1)];
    let d10 = th.entries[(1, 0)];
    let u = [d00, d10];
    let w = [Complex64::new(1.0, 0.0), (d01 / d00).conj()];
    // Host in M: row space of (original − perturbed) is the embedded w.
    // Host in L: its column space is the embedded u, so the adjoint pair
    // carries the two-coordinate vector instead.
    let (local, adjoint_pair) = if host_is_l { (u, true) } else { (w, false) };
    let mut phi = CVector::zeros(size);
    phi[n - 1] = local[0];
    phi[n] = local[1];
    let norm = phi.norm();
    if norm <= 1e-300 {
        return Err(CmvError::ZeroVector);
    }
    phi /= Complex64::new(norm, 0.0);

    let (u_mat, v_mat) = if adjoint_pair {
        (perturbed.adjoint(), c_next.dense().adjoint())
    } else {
        (perturbed.clone(), c_next.dense().clone())
    };
    let u_phi = &u_mat * &phi;
    let v_phi = &v_mat * &phi;
    let multiplier_raw = u_phi.dotc(&v_phi);
    let multiplier = CirclePoint::new(multiplier_raw)?;

    // Validate the rank-one relation V − U = (μ − 1)(Uφ)φ*.
    let outer: CMatrix = &u_phi * phi.adjoint();
    let relation = &v_mat - &u_mat - outer * (multiplier_raw - Complex64::new(1.0, 0.0));
    let relation_defect = linalg::max_abs(&relation);
    if relation_defect > TAU_DENSE {
        return Err(CmvError::NumericalDefect {
            what: "split rank-one relation",
            value: relation_defect,
        });
    }

    Ok(SplitResult {
        inner,
        decoupled,
        perturbation: SplitPerturbation {
            phi,
            multiplier,
            adjoint_pair,
        },
        replaced_block,
        perturbed,
    })
}

/// Rank of the Krylov span `{φ, Cφ, C²φ, …}` by repeated orthogonalization,
/// with rank tolerance `1e−10`; cyclic iff the rank equals the dimension.
///
/// For a unitary matrix the nonnegative powers already span the full orbit,
/// since the inverse is a polynomial in the matrix.
pub fn krylov_cyclic(c: &CMatrix, phi: &CVector) -> Result<(bool, usize), CmvError> {
    const RANK_TOL: f64 = 1e-10;
    let n = c.nrows();
    let norm = phi.norm();
    if norm <= 1e-300 {
        return Err(CmvError::ZeroVector);
    }
    let mut basis: Vec<CVector> = Vec::with_capacity(n);
    let mut v: CVector = phi / Complex64::new(norm, 0.0);
    loop {
        for _ in 0..2 {
            for b in &basis {
                let coeff = b.dotc(&v);
                v -= b * coeff;
            }
        }
        let r = v.norm();
        if r <= RANK_TOL {
            break;
        }
        let q = v / Complex64::new(r, 0.0);
        basis.push(q.clone());
        if basis.len() == n {
            break;
        }
        v = c * q;
    }
    Ok((basis.len() == n, basis.len()))
}

/// Principal n×n truncation of the doubly-infinite five-diagonal matrix of an
/// interior word (no boundary coefficient).
///
/// Its characteristic polynomial is the degree-n monic orthogonal polynomial
/// of the word, so its eigenvalues are the zeros of `Φ_n` — all strictly
/// inside the unit disk. Used for empirical support estimation.
pub fn opuc_cutoff(word: &VerblunskyWord) -> Result<CMatrix, CmvError> {
    let n = word.len();
    let big = n + 1;
    let mut l = CMatrix::zeros(big, big);
    let mut m = CMatrix::zeros(big, big);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    for j in (0..n).step_by(2) {
        place_block(&mut l, j, word.coefficients()[j])?;
    }
    for j in (1..n).step_by(2) {
        place_block(&mut m, j, word.coefficients()[j])?;
    }
    let product = l * m;
    Ok(product.view((0, 0), (n, n)).into())
}
