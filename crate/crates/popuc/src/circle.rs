//! Geometry of the unit circle.
//!
//! Everything downstream reduces statements about polynomial zeros and unitary
//! spectra to statements about finite point sets on the circle: membership in
//! open arcs, cyclic ordering, and strict interlacing of two equal-size sets.
//! This module is the single home for those predicates and their tolerances.
//!
//! An open arc `(z, w)` is the set of points `ζ` with
//! `Arg(z) < Arg(ζ) < Arg(w)` for the branch of `Arg` that puts
//! `Arg(w) − Arg(z)` in `(0, 2π)`; arcs are always traversed counterclockwise.
//! A finite set is cyclically ordered when consecutive points (including the
//! wrap pair) enclose no other member. Two cyclically ordered sets of equal
//! size strictly interlace when their points alternate around the circle.
//!
//! Points near a decision boundary are never classified silently: membership
//! queries for a point within [`TAU_MATCH`] of an arc endpoint return an error
//! and the caller decides.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::TAU;
use thiserror::Error;

/// Tolerance for unit-modulus validation of a [`CirclePoint`].
pub const TAU_CIRCLE: f64 = 1e-10;

/// Tolerance for point identity (chordal distance). Two points closer than
/// this are treated as the same point; classifications that would depend on
/// distances below it are refused instead of guessed.
pub const TAU_MATCH: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircleError {
    #[error("point has modulus {modulus} outside unit-circle tolerance {TAU_CIRCLE:e}")]
    OffCircle { modulus: f64 },
    #[error("arc endpoints coincide (chordal distance {dist:e} <= {TAU_MATCH:e})")]
    DegenerateArc { dist: f64 },
    #[error("duplicate points at chordal distance {dist:e} <= {TAU_MATCH:e}")]
    DuplicatePoint { dist: f64 },
    #[error("point lies within {TAU_MATCH:e} of an arc endpoint; membership is ambiguous")]
    BoundaryAmbiguous,
    #[error("sets share a point at chordal distance {dist:e}; remove common points first")]
    SharedPoint { dist: f64 },
    #[error("set sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("empty point set")]
    Empty,
}

/// A validated point on the unit circle.
///
/// The principal argument in `[0, 2π)` is computed once at construction and
/// reused by every angular comparison, so repeated queries never re-enter
/// trigonometric code and cannot drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirclePoint {
    value: Complex64,
    arg: f64,
}

impl CirclePoint {
    /// Validates `| |value| − 1 | ≤ TAU_CIRCLE` and fixes the principal argument.
    pub fn new(value: Complex64) -> Result<Self, CircleError> {
        let modulus = value.norm();
        if (modulus - 1.0).abs() > TAU_CIRCLE {
            return Err(CircleError::OffCircle { modulus });
        }
        Ok(Self {
            value,
            arg: principal_arg(value),
        })
    }

    /// The point `e^{iθ}`; always on the circle.
    pub fn from_angle(theta: f64) -> Self {
        let value = Complex64::from_polar(1.0, theta);
        Self {
            value,
            arg: principal_arg(value),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Principal argument in `[0, 2π)`.
    pub fn arg(&self) -> f64 {
        self.arg
    }

    pub fn conj(&self) -> Self {
        Self {
            value: self.value.conj(),
            arg: principal_arg(self.value.conj()),
        }
    }

    /// Chordal distance `|a − b|`.
    pub fn dist(&self, other: &Self) -> f64 {
        (self.value - other.value).norm()
    }

    /// Point identity at the [`TAU_MATCH`] tolerance.
    pub fn coincides(&self, other: &Self) -> bool {
        self.dist(other) <= TAU_MATCH
    }
}

fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.value.re, self.value.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        CirclePoint::new(Complex64::new(re, im)).map_err(D::Error::custom)
    }
}

/// An open counterclockwise arc with distinct endpoints.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OpenArc {
    start: CirclePoint,
    end: CirclePoint,
}

impl OpenArc {
    pub fn new(start: CirclePoint, end: CirclePoint) -> Result<Self, CircleError> {
        let dist = start.dist(&end);
        if dist <= TAU_MATCH {
            return Err(CircleError::DegenerateArc { dist });
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> CirclePoint {
        self.start
    }

    pub fn end(&self) -> CirclePoint {
        self.end
    }

    /// The complementary arc, traversed from `end` to `start`.
    pub fn reversed(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
        }
    }

    /// Angular width in `(0, 2π)`.
    pub fn width(&self) -> f64 {
        rel_angle(self.start.arg, self.end.arg)
    }

    /// Midpoint of the arc (useful for sampling).
    pub fn midpoint(&self) -> CirclePoint {
        CirclePoint::from_angle(self.start.arg + 0.5 * self.width())
    }
}

/// Angle of `x` measured counterclockwise from `base`, in `[0, 2π)`.
fn rel_angle(base: f64, x: f64) -> f64 {
    let d = (x - base).rem_euclid(TAU);
    // rem_euclid can return TAU itself when the difference is a tiny negative
    // number; fold it back.
    if d >= TAU {
        d - TAU
    } else {
        d
    }
}

/// Strict membership of `zeta` in the open arc `a`.
///
/// A point within [`TAU_MATCH`] of either endpoint is refused with
/// [`CircleError::BoundaryAmbiguous`]: the defining inequalities are strict and
/// near-boundary points cannot be classified reliably in floating point.
pub fn arc_contains(a: &OpenArc, zeta: &CirclePoint) -> Result<bool, CircleError> {
    if zeta.dist(&a.start) <= TAU_MATCH || zeta.dist(&a.end) <= TAU_MATCH {
        return Err(CircleError::BoundaryAmbiguous);
    }
    let w = rel_angle(a.start.arg, a.end.arg);
    let r = rel_angle(a.start.arg, zeta.arg);
    Ok(0.0 < r && r < w)
}

/// A set of pairwise-distinct circle points in counterclockwise cyclic order,
/// anchored at the point of smallest nonnegative principal argument.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicSet {
    points: Vec<CirclePoint>,
}

impl CyclicSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, CirclePoint> {
        self.points.iter()
    }

    /// Arcs between cyclically adjacent members, including the wrap arc.
    /// Empty for a singleton (there is no adjacent pair).
    pub fn adjacent_arcs(&self) -> Vec<OpenArc> {
        let l = self.points.len();
        if l < 2 {
            return Vec::new();
        }
        (0..l)
            .map(|j| OpenArc {
                start: self.points[j],
                end: self.points[(j + 1) % l],
            })
            .collect()
    }

    /// Smallest chordal distance between distinct members (`∞` for a singleton).
    pub fn min_separation(&self) -> f64 {
        let l = self.points.len();
        let mut best = f64::INFINITY;
        for j in 0..l {
            for k in j + 1..l {
                best = best.min(self.points[j].dist(&self.points[k]));
            }
        }
        best
    }
}

impl<'de> Deserialize<'de> for CyclicSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let points = Vec::<CirclePoint>::deserialize(d)?;
        cyclic_order(&points).map_err(D::Error::custom)
    }
}

/// Sorts pairwise-distinct points into cyclic order.
///
/// The output starts at the point of smallest nonnegative principal argument
/// and proceeds counterclockwise; the map is idempotent and a permutation of
/// its input. Points within [`TAU_MATCH`] of each other are rejected.
pub fn cyclic_order(points: &[CirclePoint]) -> Result<CyclicSet, CircleError> {
    if points.is_empty() {
        return Err(CircleError::Empty);
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|a, b| a.arg.total_cmp(&b.arg));
    let l = sorted.len();
    for j in 0..l {
        let next = &sorted[(j + 1) % l];
        let dist = sorted[j].dist(next);
        if l > 1 && dist <= TAU_MATCH {
            return Err(CircleError::DuplicatePoint { dist });
        }
    }
    Ok(CyclicSet { points: sorted })
}

/// Outcome of a strict-interlacing query.
#[derive(Debug, Clone, Serialize)]
pub enum Interlacing {
    /// The two sets alternate around the circle.
    Strict,
    /// They do not; the witness is an arc between adjacent members of the
    /// first set containing zero or at least two members of the second.
    Violation(InterlaceWitness),
}

impl Interlacing {
    pub fn is_strict(&self) -> bool {
        matches!(self, Interlacing::Strict)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlaceWitness {
    pub arc: OpenArc,
    /// Number of members of the second set inside the witness arc (≠ 1).
    pub members: usize,
    pub offenders: Vec<CirclePoint>,
}

/// Strict interlacing of two equal-size cyclic sets.
///
/// True iff the merged sequence of points alternates between the two sets all
/// the way around the circle, which is equivalent to: after some cyclic
/// permutation of `b`, the j-th member of `b` lies in the arc between the j-th
/// and (j+1)-th members of `a`. Any pair of points from `a ∪ b` within
/// [`TAU_MATCH`] is a shared point and is rejected; callers dealing with a
/// genuine common zero must remove it from both sets first.
pub fn strictly_interlace(a: &CyclicSet, b: &CyclicSet) -> Result<Interlacing, CircleError> {
    if a.len() != b.len() {
        return Err(CircleError::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(CircleError::Empty);
    }
    for p in a.iter() {
        for q in b.iter() {
            let dist = p.dist(q);
            if dist <= TAU_MATCH {
                return Err(CircleError::SharedPoint { dist });
            }
        }
    }

    // Merge and walk: label alternation around the circle is the predicate.
    let mut merged: Vec<(f64, bool, usize)> = Vec::with_capacity(2 * a.len());
    merged.extend(a.iter().enumerate().map(|(j, p)| (p.arg, true, j)));
    merged.extend(b.iter().enumerate().map(|(j, p)| (p.arg, false, j)));
    merged.sort_by(|x, y| x.0.total_cmp(&y.0));
    let alternates = merged
        .iter()
        .zip(merged.iter().cycle().skip(1))
        .all(|(x, y)| x.1 != y.1);
    if alternates {
        return Ok(Interlacing::Strict);
    }

    // Find an arc of `a` with a b-count different from one.
    let l = a.len();
    for j in 0..l {
        let start = a.points()[j];
        let end = a.points()[(j + 1) % l];
        let width = rel_angle(start.arg, end.arg);
        let offenders: Vec<CirclePoint> = b
            .iter()
            .filter(|q| {
                let r = rel_angle(start.arg, q.arg);
                0.0 < r && r < width
            })
            .copied()
            .collect();
        if offenders.len() != 1 {
            return Ok(Interlacing::Violation(InterlaceWitness {
                arc: OpenArc { start, end },
                members: offenders.len(),
                offenders,
            }));
        }
    }
    unreachable!("non-alternating merge must yield a witness arc");
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn pt(theta: f64) -> CirclePoint {
        CirclePoint::from_angle(theta)
    }

    fn c(re: f64, im: f64) -> CirclePoint {
        CirclePoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn construction_validates_modulus() {
        assert!(CirclePoint::new(Complex64::new(1.0, 0.0)).is_ok());
        assert!(matches!(
            CirclePoint::new(Complex64::new(1.0, 1.0)),
            Err(CircleError::OffCircle { .. })
        ));
        // just inside / outside tolerance
        assert!(CirclePoint::new(Complex64::new(1.0 + 0.5e-10, 0.0)).is_ok());
        assert!(CirclePoint::new(Complex64::new(1.0 + 2e-10, 0.0)).is_err());
    }

    #[test]
    fn principal_argument_range() {
        assert_eq!(c(1.0, 0.0).arg(), 0.0);
        assert!((c(0.0, -1.0).arg() - 3.0 * FRAC_PI_2).abs() < 1e-15);
        let eps = 0.01;
        assert!(pt(-eps).arg() > PI); // maps to 2π − ε
    }

    #[test]
    fn arc_contains_quarter_arc() {
        let a = OpenArc::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!(arc_contains(&a, &pt(FRAC_PI_4)).unwrap());
        assert!(!arc_contains(&a, &c(-1.0, 0.0)).unwrap());
        let rev = OpenArc::new(c(0.0, 1.0), c(1.0, 0.0)).unwrap();
        assert!(arc_contains(&rev, &c(-1.0, 0.0)).unwrap());
    }

    #[test]
    fn arc_boundary_is_ambiguous() {
        let a = OpenArc::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!(matches!(
            arc_contains(&a, &c(1.0, 0.0)),
            Err(CircleError::BoundaryAmbiguous)
        ));
        assert!(matches!(
            arc_contains(&a, &pt(FRAC_PI_2 + 1e-9)),
            Err(CircleError::BoundaryAmbiguous)
        ));
    }

    #[test]
    fn degenerate_arc_rejected() {
        assert!(matches!(
            OpenArc::new(c(1.0, 0.0), pt(1e-9)),
            Err(CircleError::DegenerateArc { .. })
        ));
    }

    #[test]
    fn cyclic_order_examples() {
        let set = cyclic_order(&[c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let args: Vec<f64> = set.iter().map(|p| p.arg()).collect();
        assert!((args[0] - 0.0).abs() < 1e-15);
        assert!((args[1] - FRAC_PI_2).abs() < 1e-15);
        assert!((args[2] - PI).abs() < 1e-15);

        let single = cyclic_order(&[pt(0.1)]).unwrap();
        assert_eq!(single.len(), 1);

        // e^{−iε} has argument 2π − ε and sorts last
        let eps = 0.01;
        let set = cyclic_order(&[c(1.0, 0.0), pt(eps), pt(-eps)]).unwrap();
        let args: Vec<f64> = set.iter().map(|p| p.arg()).collect();
        assert_eq!(args[0], 0.0);
        assert!((args[1] - eps).abs() < 1e-15);
        assert!((args[2] - (TAU - eps)).abs() < 1e-12);
    }

    #[test]
    fn cyclic_order_rejects_duplicates() {
        assert!(matches!(
            cyclic_order(&[pt(0.5), pt(0.5 + 1e-10)]),
            Err(CircleError::DuplicatePoint { .. })
        ));
        // wrap-around duplicate: 0 and 2π − tiny
        assert!(matches!(
            cyclic_order(&[pt(0.0), pt(1.0), pt(-1e-10)]),
            Err(CircleError::DuplicatePoint { .. })
        ));
    }

    #[test]
    fn interlace_fourth_roots() {
        let a = cyclic_order(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let b = cyclic_order(&[c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        assert!(strictly_interlace(&a, &b).unwrap().is_strict());
    }

    #[test]
    fn interlace_crowded_arc_fails_with_witness() {
        let a = cyclic_order(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let b = cyclic_order(&[pt(PI / 8.0), pt(FRAC_PI_4)]).unwrap();
        match strictly_interlace(&a, &b).unwrap() {
            Interlacing::Strict => panic!("crowded arc must not interlace"),
            Interlacing::Violation(w) => {
                assert_ne!(w.members, 1);
                // independently recount the witness arc
                let count = b
                    .iter()
                    .filter(|q| arc_contains(&w.arc, q).unwrap())
                    .count();
                assert_eq!(count, w.members);
            }
        }
    }

    #[test]
    fn interlace_sixth_roots() {
        let a = cyclic_order(&[pt(0.0), pt(TAU / 3.0), pt(2.0 * TAU / 3.0)]).unwrap();
        let b = cyclic_order(&[pt(PI / 3.0), pt(PI), pt(5.0 * PI / 3.0)]).unwrap();
        assert!(strictly_interlace(&a, &b).unwrap().is_strict());
    }

    #[test]
    fn interlace_singletons() {
        let a = cyclic_order(&[pt(0.3)]).unwrap();
        let b = cyclic_order(&[pt(4.0)]).unwrap();
        assert!(strictly_interlace(&a, &b).unwrap().is_strict());
    }

    #[test]
    fn interlace_shared_point_rejected() {
        let a = cyclic_order(&[pt(0.0), pt(PI)]).unwrap();
        let b = cyclic_order(&[pt(1e-10), pt(2.0)]).unwrap();
        assert!(matches!(
            strictly_interlace(&a, &b),
            Err(CircleError::SharedPoint { .. })
        ));
    }

    #[test]
    fn interlace_size_mismatch() {
        let a = cyclic_order(&[pt(0.0), pt(PI)]).unwrap();
        let b = cyclic_order(&[pt(1.0)]).unwrap();
        assert!(matches!(
            strictly_interlace(&a, &b),
            Err(CircleError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn serde_point_roundtrip() {
        let p = pt(2.1);
        let json = serde_json::to_string(&p).unwrap();
        let q: CirclePoint = serde_json::from_str(&json).unwrap();
        assert!(p.dist(&q) < 1e-15);
        assert!(serde_json::from_str::<CirclePoint>("[1.0, 1.0]").is_err());
    }

    proptest! {
        #[test]
        fn cyclic_order_idempotent(angles in proptest::collection::vec(0.0..TAU, 1..12)) {
            let pts: Vec<CirclePoint> = angles.iter().map(|&t| pt(t)).collect();
            if let Ok(once) = cyclic_order(&pts) {
                let twice = cyclic_order(once.points()).unwrap();
                prop_assert_eq!(once.len(), twice.len());
                for (p, q) in once.iter().zip(twice.iter()) {
                    prop_assert!(p.dist(q) == 0.0);
                }
            }
        }

        #[test]
        fn interlace_symmetric_and_rotation_invariant(
            base in proptest::collection::vec(1e-3..(TAU - 1e-3), 2..8),
            jitter in proptest::collection::vec(0.05..0.95f64, 2..8),
            rot in 0.0..TAU,
        ) {
            let l = base.len().min(jitter.len());
            // a: sorted distinct angles with floor spacing; b: one point per gap or
            // crowded, depending on jitter
            let mut a_angles: Vec<f64> = base[..l].to_vec();
            a_angles.sort_by(f64::total_cmp);
            a_angles.dedup_by(|x, y| (*x - *y).abs() < 1e-2);
            let l = a_angles.len();
            prop_assume!(l >= 2);
            let b_angles: Vec<f64> = (0..l)
                .map(|j| {
                    let lo = a_angles[j];
                    let hi = if j + 1 < l { a_angles[j + 1] } else { a_angles[0] + TAU };
                    lo + jitter[j % jitter.len()] * (hi - lo)
                })
                .collect();
            let a = cyclic_order(&a_angles.iter().map(|&t| pt(t)).collect::<Vec<_>>());
            let b = cyclic_order(&b_angles.iter().map(|&t| pt(t)).collect::<Vec<_>>());
            let (a, b) = match (a, b) { (Ok(a), Ok(b)) => (a, b), _ => return Ok(()) };

            let ab = strictly_interlace(&a, &b);
            let ba = strictly_interlace(&b, &a);
            match (ab, ba) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x.is_strict(), y.is_strict()),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "symmetry broken between Ok and Err"),
            }

            // rotation invariance
            let ar = cyclic_order(&a.iter().map(|p| pt(p.arg() + rot)).collect::<Vec<_>>());
            let br = cyclic_order(&b.iter().map(|p| pt(p.arg() + rot)).collect::<Vec<_>>());
            if let (Ok(ar), Ok(br), Ok(plain)) = (ar, br, strictly_interlace(&a, &b)) {
                if let Ok(rotated) = strictly_interlace(&ar, &br) {
                    prop_assert_eq!(plain.is_strict(), rotated.is_strict());
                }
            }
        }

        #[test]
        fn arc_contains_xor_reverse(s in 0.0..TAU, e in 0.0..TAU, t in 0.0..TAU) {
            let (start, end, zeta) = (pt(s), pt(e), pt(t));
            let arc = match OpenArc::new(start, end) { Ok(a) => a, Err(_) => return Ok(()) };
            let fwd = arc_contains(&arc, &zeta);
            let bwd = arc_contains(&arc.reversed(), &zeta);
            if let (Ok(f), Ok(b)) = (fwd, bwd) {
                prop_assert!(f ^ b);
            }
        }
    }
}
