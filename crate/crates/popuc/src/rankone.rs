//! Rank-one perturbation calculus for finite unitary matrices.
//!
//! For a unitary `U`, a unit vector `φ`, and a unimodular `λ`, the perturbed
//! matrix
//!
//! ```text
//! V = U + (λ − 1) · (Uφ) φ*
//! ```
//!
//! is again unitary, agrees with `U` on the orthogonal complement of `φ`, and
//! satisfies `Vφ = λ Uφ`. Conversely, two unitaries whose difference has rank
//! one always arise this way, and [`recover`] reads `(φ, λ)` back off the
//! difference.
//!
//! Spectral analysis goes through the scalar measure of the pair `(A, φ)`:
//! with eigendecomposition `A = Σ z_k P_k`, the measure puts weight
//! `‖P_k φ‖²` at `z_k`. Its Carathéodory transform
//! `F(z) = Σ w_k (z_k + z)/(z_k − z)` has positive real part on the disk and
//! `F(0) = 1`; the associated Schur function is obtained from
//! `F = (1 + z f)/(1 − z f)`, i.e. `f = (F − 1)/(z (F + 1))`. Under this
//! convention the boundary condition `z·f(z) = 1` picks out exactly the
//! eigenvalues carrying spectral weight, and a rank-one perturbation with
//! multiplier `λ` divides `f` by `λ`. The opposite sign convention also
//! appears in the literature; it is available behind [`SchurConvention`] and
//! flips the sign of `f` (its `z f = 1` points are not the eigenvalues, which
//! is how the two are told apart).

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::circle::{arc_contains, cyclic_order, CircleError, CirclePoint, CyclicSet, OpenArc, TAU_MATCH};
use crate::linalg::{self, CMatrix, CVector, LinalgError};

/// Unitarity tolerance for validated matrices.
pub const TAU_UNITARY: f64 = 1e-10;
/// Residual tolerance for reported eigenpairs.
pub const TAU_RESIDUAL: f64 = 1e-10;
/// Base offset from the circle for radial boundary evaluation.
pub const RADIAL_OFFSET: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum RankOneError {
    #[error("matrix is not unitary: ‖U*U − I‖_max = {defect:e}")]
    NonUnitary { defect: f64 },
    #[error("vector has norm {norm}, expected a unit vector")]
    NotUnitVector { norm: f64 },
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension mismatch: matrix is {matrix}, vector is {vector}")]
    DimensionMismatch { matrix: usize, vector: usize },
    #[error("matrices are equal; no perturbation direction to recover")]
    ZeroDifference,
    #[error("difference is not rank one: second singular value {sigma2:e}")]
    NotRankOne { sigma2: f64 },
    #[error("recovered pair does not reproduce the perturbation (defect {defect:e})")]
    ReconstructionFailed { defect: f64 },
    #[error("eigenpair residual {residual:e} exceeds {TAU_RESIDUAL:e}")]
    EigenResidual { residual: f64 },
    #[error("evaluation point has modulus {modulus} ≥ 1")]
    OutsideDisk { modulus: f64 },
    #[error("spectral weights sum to {sum}, not 1")]
    WeightSumDefect { sum: f64 },
    #[error("arc contains (or touches) an atom of the measure")]
    ArcContainsAtom,
    #[error("measure with {atoms} atom(s) is degenerate for this check; need at least 2")]
    DegenerateMeasure { atoms: usize },
    #[error("radial limits at two radii disagree by {deviation:e}")]
    RadialLimitUnstable { deviation: f64 },
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A square complex matrix validated to be unitary within [`TAU_UNITARY`].
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    entries: CMatrix,
}

impl UnitaryMatrix {
    pub fn new(entries: CMatrix) -> Result<Self, RankOneError> {
        if entries.nrows() != entries.ncols() {
            return Err(LinalgError::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            }
            .into());
        }
        let defect = linalg::unitarity_defect(&entries);
        if defect > TAU_UNITARY {
            return Err(RankOneError::NonUnitary { defect });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn defect(&self) -> f64 {
        linalg::unitarity_defect(&self.entries)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    /// Direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut m = CMatrix::zeros(a + b, a + b);
        m.view_mut((0, 0), (a, a)).copy_from(&self.entries);
        m.view_mut((a, a), (b, b)).copy_from(&other.entries);
        Self { entries: m }
    }
}

/// A unitary together with a unit direction and a unimodular multiplier:
/// everything needed to form the rank-one perturbation.
#[derive(Debug, Clone)]
pub struct RankOnePair {
    base: UnitaryMatrix,
    direction: CVector,
    multiplier: CirclePoint,
}

impl RankOnePair {
    /// Normalizes the direction; rejects zero vectors and dimension mismatch.
    pub fn new(
        base: UnitaryMatrix,
        direction: CVector,
        multiplier: CirclePoint,
    ) -> Result<Self, RankOneError> {
        if direction.len() != base.dim() {
            return Err(RankOneError::DimensionMismatch {
                matrix: base.dim(),
                vector: direction.len(),
            });
        }
        let norm = direction.norm();
        if norm <= 1e-300 {
            return Err(RankOneError::ZeroVector);
        }
        let direction = direction / Complex64::new(norm, 0.0);
        Ok(Self {
            base,
            direction,
            multiplier,
        })
    }

    pub fn base(&self) -> &UnitaryMatrix {
        &self.base
    }

    pub fn direction(&self) -> &CVector {
        &self.direction
    }

    pub fn multiplier(&self) -> CirclePoint {
        self.multiplier
    }
}

/// Forms `V = U + (λ − 1)(Uφ)φ*` and validates that it is unitary and that
/// `Vφ = λUφ`.
pub fn perturb(pair: &RankOnePair) -> Result<UnitaryMatrix, RankOneError> {
    let u = pair.base.entries();
    let lambda = pair.multiplier.value();
    let u_phi = u * &pair.direction;
    let outer: CMatrix = &u_phi * pair.direction.adjoint();
    let v = u + outer * (lambda - Complex64::new(1.0, 0.0));

    let relation = (&v * &pair.direction) - u_phi * lambda;
    let defect = relation.norm();
    if defect > 1e-10 {
        return Err(RankOneError::ReconstructionFailed { defect });
    }
    UnitaryMatrix::new(v)
}

/// Recovers `(φ, λ)` from two unitaries with rank-one difference.
///
/// `φ` spans the row space of `V − U` (the orthogonal complement of its
/// kernel); its phase is fixed by making the largest-modulus entry real and
/// positive. The recovered pair must reproduce `V` through [`perturb`].
pub fn recover(u: &UnitaryMatrix, v: &UnitaryMatrix) -> Result<(CVector, CirclePoint), RankOneError> {
    if u.dim() != v.dim() {
        return Err(RankOneError::DimensionMismatch {
            matrix: u.dim(),
            vector: v.dim(),
        });
    }
    let diff = v.entries() - u.entries();
    let svd = diff.clone().svd(false, true);
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sigma1 = svd.singular_values[order[0]];
    if sigma1 <= 1e-10 {
        return Err(RankOneError::ZeroDifference);
    }
    if order.len() > 1 {
        let sigma2 = svd.singular_values[order[1]];
        if sigma2 > 1e-10 {
            return Err(RankOneError::NotRankOne { sigma2 });
        }
    }
    // rows of v_t are the adjoint right singular vectors
    let v_t = svd.v_t.expect("requested");
    let mut phi = CVector::from_fn(u.dim(), |j, _| v_t[(order[0], j)].conj());

    let mut best = 0usize;
    for j in 0..phi.len() {
        if phi[j].norm() > phi[best].norm() {
            best = j;
        }
    }
    let anchor = phi[best];
    phi *= anchor.conj() / Complex64::new(anchor.norm(), 0.0);

    let u_phi = u.entries() * &phi;
    let v_phi = v.entries() * &phi;
    let lambda = CirclePoint::new(u_phi.dotc(&v_phi))?;

    let pair = RankOnePair::new(u.clone(), phi.clone(), lambda)?;
    let rebuilt = perturb(&pair)?;
    let defect = linalg::max_abs(&(rebuilt.entries() - v.entries()));
    if defect > 1e-10 {
        return Err(RankOneError::ReconstructionFailed { defect });
    }
    Ok((phi, lambda))
}

/// Eigendecomposition of a unitary matrix, sorted by principal argument.
///
/// Degenerate eigenvalues are reported with multiplicity; the vector matrix
/// columns stay aligned with the values and are orthonormal. Every reported
/// pair satisfies `‖Uv − zv‖ ≤ 1e−10` and `| |z| − 1 | ≤ 1e−10`, and the
/// worst observed residual is carried in the result.
#[derive(Debug, Clone)]
pub struct UnitaryEigs {
    values: Vec<CirclePoint>,
    vectors: CMatrix,
    max_residual: f64,
}

impl UnitaryEigs {
    pub fn values(&self) -> &[CirclePoint] {
        &self.values
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    /// The eigenvalues as a cyclic set; fails on (near-)degenerate spectra.
    pub fn cyclic_set(&self) -> Result<CyclicSet, CircleError> {
        cyclic_order(&self.values)
    }

    /// Smallest chordal distance between eigenvalues (`∞` in dimension 1).
    pub fn min_gap(&self) -> f64 {
        let mut best = f64::INFINITY;
        for j in 0..self.values.len() {
            for k in j + 1..self.values.len() {
                best = best.min(self.values[j].dist(&self.values[k]));
            }
        }
        best
    }
}

pub fn unitary_eigs(u: &UnitaryMatrix) -> Result<UnitaryEigs, RankOneError> {
    let n = u.dim();
    let (raw_values, vectors) = linalg::schur_eigs(u.entries())?;

    // For a unitary (hence normal) matrix the Schur triangle is numerically
    // diagonal, so the Schur basis columns are eigenvectors. Polish each value
    // with a Rayleigh quotient before validating.
    let mut pairs: Vec<(CirclePoint, usize, f64)> = Vec::with_capacity(n);
    let mut max_residual: f64 = 0.0;
    for k in 0..n {
        let q = vectors.column(k);
        let uq = u.entries() * q;
        let rayleigh = q.dotc(&uq);
        let _ = raw_values; // superseded by the Rayleigh value
        let residual = (&uq - q * rayleigh).norm();
        if residual > TAU_RESIDUAL {
            return Err(RankOneError::EigenResidual { residual });
        }
        max_residual = max_residual.max(residual);
        pairs.push((CirclePoint::new(rayleigh)?, k, residual));
    }
    pairs.sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));

    let values: Vec<CirclePoint> = pairs.iter().map(|p| p.0).collect();
    let mut sorted_vectors = CMatrix::zeros(n, n);
    for (dst, (_, src, _)) in pairs.iter().enumerate() {
        sorted_vectors.column_mut(dst).copy_from(&vectors.column(*src));
    }
    Ok(UnitaryEigs {
        values,
        vectors: sorted_vectors,
        max_residual,
    })
}

/// The finite atomic spectral measure of a unitary and a unit vector: weight
/// `|⟨v_k, φ⟩|²` at each eigenvalue, with degenerate eigenvalues merged.
#[derive(Debug, Clone)]
pub struct SpectralMeasure {
    atoms: Vec<(CirclePoint, f64)>,
}

impl SpectralMeasure {
    /// Direct construction from atoms (validated: unimodular points already
    /// typed, weights nonnegative and summing to 1 within 1e−10).
    pub fn from_atoms(atoms: Vec<(CirclePoint, f64)>) -> Result<Self, RankOneError> {
        let sum: f64 = atoms.iter().map(|a| a.1).sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(RankOneError::WeightSumDefect { sum });
        }
        let mut atoms = atoms;
        atoms.sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(CirclePoint, f64)] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn min_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Serialize)]
struct AtomRepr {
    point: CirclePoint,
    weight: f64,
}

impl Serialize for SpectralMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let view: Vec<AtomRepr> = self
            .atoms
            .iter()
            .map(|&(point, weight)| AtomRepr { point, weight })
            .collect();
        view.serialize(s)
    }
}

/// Weight floor below which a projection is considered numerically zero and
/// the atom is omitted from the measure.
const WEIGHT_FLOOR: f64 = 1e-18;

pub fn spectral_measure(a: &UnitaryMatrix, phi: &CVector) -> Result<SpectralMeasure, RankOneError> {
    if phi.len() != a.dim() {
        return Err(RankOneError::DimensionMismatch {
            matrix: a.dim(),
            vector: phi.len(),
        });
    }
    let norm = phi.norm();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(RankOneError::NotUnitVector { norm });
    }
    let eigs = unitary_eigs(a)?;
    let raw: Vec<(CirclePoint, f64)> = (0..a.dim())
        .map(|k| {
            let w = eigs.vectors().column(k).dotc(phi).norm_sqr();
            (eigs.values()[k], w)
        })
        .collect();

    // Merge clusters of degenerate eigenvalues (sorted by argument, with the
    // wrap pair checked last).
    let mut clusters: Vec<Vec<(CirclePoint, f64)>> = Vec::new();
    for atom in raw {
        match clusters.last_mut() {
            Some(cluster) if cluster.last().unwrap().0.dist(&atom.0) <= TAU_MATCH => {
                cluster.push(atom)
            }
            _ => clusters.push(vec![atom]),
        }
    }
    if clusters.len() > 1 {
        let wraps = {
            let first = &clusters.first().unwrap()[0];
            let last = clusters.last().unwrap().last().unwrap();
            first.0.dist(&last.0) <= TAU_MATCH
        };
        if wraps {
            let tail = clusters.pop().unwrap();
            clusters[0].extend(tail);
        }
    }

    let mut atoms: Vec<(CirclePoint, f64)> = Vec::with_capacity(clusters.len());
    let mut total = 0.0;
    for cluster in clusters {
        let weight: f64 = cluster.iter().map(|a| a.1).sum();
        total += weight;
        let centroid = if weight > WEIGHT_FLOOR {
            cluster
                .iter()
                .map(|a| a.0.value() * a.1)
                .sum::<Complex64>()
                / weight
        } else {
            cluster.iter().map(|a| a.0.value()).sum::<Complex64>() / cluster.len() as f64
        };
        let point = CirclePoint::new(centroid / centroid.norm())?;
        if weight > WEIGHT_FLOOR {
            atoms.push((point, weight));
        }
    }
    if (total - 1.0).abs() > 1e-10 {
        return Err(RankOneError::WeightSumDefect { sum: total });
    }
    atoms.sort_by(|a, b| a.0.arg().total_cmp(&b.0.arg()));
    Ok(SpectralMeasure { atoms })
}

/// The Carathéodory transform `F(z) = Σ w_k (z_k + z)/(z_k − z)`, for `z`
/// strictly inside the disk. `F(0) = 1` exactly (the measure is a probability
/// measure by construction).
pub fn caratheodory(m: &SpectralMeasure, z: Complex64) -> Result<Complex64, RankOneError> {
    let modulus = z.norm();
    if modulus >= 1.0 {
        return Err(RankOneError::OutsideDisk { modulus });
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(m.atoms
        .iter()
        .map(|&(zk, w)| {
            let zk = zk.value();
            Complex64::new(w, 0.0) * (zk + z) / (zk - z)
        })
        .sum())
}

/// Sign convention for the Schur function; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchurConvention {
    /// `F = (1 + z f)/(1 − z f)`; `z f(z) = 1` holds exactly at the atoms.
    #[default]
    Standard,
    /// The opposite sign, `f ↦ −f`.
    Mirror,
}

/// The Schur function of the measure.
///
/// Uses the pole-free rewriting `f(z) = 2 g(z) / (F(z) + 1)` with
/// `g(z) = Σ w_k / (z_k − z)`, valid on the whole open disk including the
/// origin, where it reduces to `f(0) = Σ w_k conj(z_k)`.
pub fn schur_function(
    m: &SpectralMeasure,
    z: Complex64,
    convention: SchurConvention,
) -> Result<Complex64, RankOneError> {
    let modulus = z.norm();
    if modulus >= 1.0 {
        return Err(RankOneError::OutsideDisk { modulus });
    }
    let g: Complex64 = m
        .atoms
        .iter()
        .map(|&(zk, w)| Complex64::new(w, 0.0) / (zk.value() - z))
        .sum();
    let f_plus_one = caratheodory(m, z)? + Complex64::new(1.0, 0.0);
    let f = g * 2.0 / f_plus_one;
    Ok(match convention {
        SchurConvention::Standard => f,
        SchurConvention::Mirror => -f,
    })
}

/// Boundary value of the Schur function at a circle point, by Richardson
/// extrapolation of two radial samples (radii `1 − 1e−7` and `1 − 2e−7`).
/// The two samples must agree within `1e−4` or the evaluation is rejected.
pub fn radial_boundary_value(
    m: &SpectralMeasure,
    zeta: &CirclePoint,
    convention: SchurConvention,
) -> Result<Complex64, RankOneError> {
    let direction = zeta.value() / zeta.value().norm();
    let f1 = schur_function(m, direction * (1.0 - RADIAL_OFFSET), convention)?;
    let f2 = schur_function(m, direction * (1.0 - 2.0 * RADIAL_OFFSET), convention)?;
    let deviation = (f1 - f2).norm();
    if deviation > 1e-4 {
        return Err(RankOneError::RadialLimitUnstable { deviation });
    }
    Ok(f1 * 2.0 - f2)
}

/// Maximum deviation `|f_V(z) − λ⁻¹ f_U(z)|` over a grid of interior points,
/// where `V` is the rank-one perturbation of the pair. The contract is that
/// this never exceeds `1e−8`.
pub fn schur_shift_check(pair: &RankOnePair, grid: &[Complex64]) -> Result<f64, RankOneError> {
    let v = perturb(pair)?;
    let m_u = spectral_measure(pair.base(), pair.direction())?;
    let m_v = spectral_measure(&v, pair.direction())?;
    let lambda_inv = Complex64::new(1.0, 0.0) / pair.multiplier().value();
    let mut worst: f64 = 0.0;
    for &z in grid {
        let fu = schur_function(&m_u, z, SchurConvention::Standard)?;
        let fv = schur_function(&m_v, z, SchurConvention::Standard)?;
        worst = worst.max((fv - fu * lambda_inv).norm());
    }
    Ok(worst)
}

/// A deterministic golden-angle spiral of interior sample points.
pub fn spiral_grid(count: usize, radius: f64) -> Vec<Complex64> {
    let golden = 0.618_033_988_749_894_9_f64;
    (0..count)
        .map(|j| {
            let r = radius * (j + 1) as f64 / count as f64;
            let theta = std::f64::consts::TAU * golden * j as f64;
            Complex64::from_polar(r, theta)
        })
        .collect()
}

/// Verdict of the boundary monotonicity check.
#[derive(Debug, Clone, Serialize)]
pub struct MonotoneVerdict {
    pub passed: bool,
    pub samples: usize,
    /// Smallest argument increment between consecutive samples (must exceed
    /// the 1e−9 strictness margin).
    pub min_increment: f64,
    /// Largest deviation of `|f|` from 1 along the arc (must stay ≤ 1e−5).
    pub max_modulus_deviation: f64,
}

/// Checks that `Arg f` is strictly increasing along an arc free of atoms and
/// that `|f| = 1` there (the boundary behaviour of the Schur function across
/// a spectral gap).
///
/// The measure must have at least two atoms: a one-atom measure has constant
/// `f` and the statement degenerates.
pub fn arg_monotone_check(
    m: &SpectralMeasure,
    arc: &OpenArc,
    samples: usize,
) -> Result<MonotoneVerdict, RankOneError> {
    if m.len() < 2 {
        return Err(RankOneError::DegenerateMeasure { atoms: m.len() });
    }
    for &(point, _) in m.atoms() {
        match arc_contains(arc, &point) {
            Ok(false) => {}
            Ok(true) | Err(CircleError::BoundaryAmbiguous) => {
                return Err(RankOneError::ArcContainsAtom)
            }
            Err(e) => return Err(e.into()),
        }
    }
    let samples = samples.max(2);
    let width = arc.width();
    let start = arc.start().arg();
    let mut previous: Option<Complex64> = None;
    let mut min_increment = f64::INFINITY;
    let mut max_modulus_deviation: f64 = 0.0;
    for j in 0..samples {
        let theta = start + width * (j as f64 + 1.0) / (samples as f64 + 1.0);
        let zeta = CirclePoint::from_angle(theta);
        let f = radial_boundary_value(m, &zeta, SchurConvention::Standard)?;
        max_modulus_deviation = max_modulus_deviation.max((f.norm() - 1.0).abs());
        if let Some(prev) = previous {
            // increment of Arg f, unwrapped to (−π, π]
            let increment = (f / prev).arg();
            min_increment = min_increment.min(increment);
        }
        previous = Some(f);
    }
    Ok(MonotoneVerdict {
        passed: min_increment > 1e-9 && max_modulus_deviation <= 1e-5,
        samples,
        min_increment,
        max_modulus_deviation,
    })
}
