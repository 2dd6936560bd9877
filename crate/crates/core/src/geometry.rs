//! Exact segment predicates and the plane isometries of `Γ₁`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{IntMat2, IntVec2, RatVec2};

/// An element of `Γ₁`: either `x ↦ x + v` or `x ↦ c − x` (a half turn about `c/2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Isometry {
    Translate(IntVec2),
    /// Half turn `x ↦ c − x`; the stored vector is `c = 2μ`.
    Rotate(IntVec2),
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry::Translate(IntVec2::zero())
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Isometry::Translate(v) if v.is_zero())
    }

    pub fn apply(&self, p: &IntVec2) -> IntVec2 {
        match self {
            Isometry::Translate(v) => p + v,
            Isometry::Rotate(c) => c - p,
        }
    }

    pub fn apply_segment(&self, s: &Segment) -> Segment {
        Segment::new(self.apply(&s.start), self.apply(&s.end))
    }

    pub fn inverse(&self) -> Isometry {
        match self {
            Isometry::Translate(v) => Isometry::Translate(-v),
            Isometry::Rotate(c) => Isometry::Rotate(c.clone()),
        }
    }

    /// The unique fixed point, for a half turn.
    pub fn center(&self) -> Option<RatVec2> {
        match self {
            Isometry::Translate(_) => None,
            Isometry::Rotate(c) => {
                let two = BigInt::from(2);
                Some(RatVec2::new(
                    BigRational::new(c.x.clone(), two.clone()),
                    BigRational::new(c.y.clone(), two),
                ))
            }
        }
    }
}

/// A closed segment with integer endpoints, possibly degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub start: IntVec2,
    pub end: IntVec2,
}

impl Segment {
    pub fn new(start: IntVec2, end: IntVec2) -> Self {
        Segment { start, end }
    }

    pub fn is_degenerate(&self) -> bool {
        self.start == self.end
    }

    fn direction(&self) -> IntVec2 {
        &self.end - &self.start
    }

    fn point_at(&self, t: &BigRational) -> RatVec2 {
        let d = self.direction();
        RatVec2::new(
            BigRational::from_integer(self.start.x.clone()) + t * BigRational::from_integer(d.x),
            BigRational::from_integer(self.start.y.clone()) + t * BigRational::from_integer(d.y),
        )
    }
}

/// The intersection of two closed segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point(RatVec2),
    Overlap(RatVec2, RatVec2),
}

impl Intersection {
    pub fn is_empty(&self) -> bool {
        matches!(self, Intersection::Empty)
    }
}

fn ratio(n: BigInt, d: &BigInt) -> BigRational {
    BigRational::new(n, d.clone())
}

fn in_unit(t: &BigRational) -> bool {
    !t.is_negative() && *t <= BigRational::one()
}

/// Exact intersection of two closed segments.
pub fn intersect(a: &Segment, b: &Segment) -> Intersection {
    if a.is_degenerate() && !b.is_degenerate() {
        return intersect(b, a);
    }
    let r = a.direction();
    let s = b.direction();
    let qp = &b.start - &a.start;

    if a.is_degenerate() {
        // both degenerate
        return if qp.is_zero() {
            Intersection::Point(a.start.to_rational())
        } else {
            Intersection::Empty
        };
    }

    let denom = r.cross(&s);
    if !denom.is_zero() {
        let t = ratio(qp.cross(&s), &denom);
        let u = ratio(qp.cross(&r), &denom);
        if in_unit(&t) && in_unit(&u) {
            return Intersection::Point(a.point_at(&t));
        }
        return Intersection::Empty;
    }
    if !qp.cross(&r).is_zero() {
        return Intersection::Empty;
    }
    // collinear (b may be degenerate): project b's endpoints onto a
    let rr = r.dot(&r);
    let t0 = ratio(qp.dot(&r), &rr);
    let t1 = ratio((&b.end - &a.start).dot(&r), &rr);
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = std::cmp::max(lo, BigRational::zero());
    let hi = std::cmp::min(hi, BigRational::one());
    match lo.cmp(&hi) {
        std::cmp::Ordering::Greater => Intersection::Empty,
        std::cmp::Ordering::Equal => Intersection::Point(a.point_at(&lo)),
        std::cmp::Ordering::Less => Intersection::Overlap(a.point_at(&lo), a.point_at(&hi)),
    }
}

/// Coordinates `(s, t)` of `p` in the frame `(2λ₁, λ₂)`; the fundamental
/// domain `F₁` is exactly `[0,1]²` in these coordinates.
pub fn domain_coords(p: &IntVec2, basis: &IntMat2) -> Option<(BigRational, BigRational)> {
    let frame = IntMat2::from_columns(basis.col1.scale(&BigInt::from(2)), basis.col2.clone());
    frame.solve(p).ok().map(|v| (v.x, v.y))
}

pub fn in_closed_domain(p: &IntVec2, basis: &IntMat2) -> bool {
    match domain_coords(p, basis) {
        Some((s, t)) => in_unit(&s) && in_unit(&t),
        None => false,
    }
}

/// Clips a segment to the closed fundamental domain, returning the parameter
/// interval `[t0, t1] ⊆ [0,1]` of the part inside, if any.
pub fn clip_to_domain(seg: &Segment, basis: &IntMat2) -> Option<(BigRational, BigRational)> {
    let (s0, t0) = domain_coords(&seg.start, basis)?;
    let (s1, t1) = domain_coords(&seg.end, basis)?;
    let mut lo = BigRational::zero();
    let mut hi = BigRational::one();
    // Liang–Barsky against [0,1]² in domain coordinates
    for (p0, p1) in [(s0, s1), (t0, t1)] {
        let d = &p1 - &p0;
        if d.is_zero() {
            if !in_unit(&p0) {
                return None;
            }
            continue;
        }
        let a = -&p0 / &d;
        let b = (BigRational::one() - &p0) / &d;
        let (enter, leave) = if a <= b { (a, b) } else { (b, a) };
        lo = std::cmp::max(lo, enter);
        hi = std::cmp::min(hi, leave);
        if lo > hi {
            return None;
        }
    }
    Some((lo, hi))
}

pub fn segment_point(seg: &Segment, t: &BigRational) -> RatVec2 {
    seg.point_at(t)
}
