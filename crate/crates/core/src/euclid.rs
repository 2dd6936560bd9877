//! The affine map `Φ(x) = Ax + b` of a presentation and the slope calculus
//! for Euclidean NET maps: pulling back slopes with their local degrees, and
//! rebuilding `A` from the pullbacks of slopes 0 and ∞.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::diagram::PresentationDiagram;
use crate::error::{Error, Result};
use crate::lattice::{gcd, primitive_part, IntMat2, IntVec2};

/// A reduced slope `p/q` in the `(λ₁, λ₂)` basis, with `q ≥ 0` and ∞ stored
/// as `1/0`. Slope `p/q` is the direction `q·λ₁ + p·λ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedSlope {
    p: BigInt,
    q: BigInt,
}

impl ExtendedSlope {
    /// Reduces `p/q`; returns `None` for `0/0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Option<Self> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return None;
        }
        let g = gcd(&p, &q);
        p /= &g;
        q /= &g;
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Some(ExtendedSlope { p, q })
    }

    pub fn infinity() -> Self {
        ExtendedSlope::new(1, 0).unwrap()
    }

    pub fn zero() -> Self {
        ExtendedSlope::new(0, 1).unwrap()
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    /// The direction `(q, p)` in λ-coordinates.
    pub fn direction(&self) -> IntVec2 {
        IntVec2::new(self.q.clone(), self.p.clone())
    }
}

impl fmt::Display for ExtendedSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            f.write_str("inf")
        } else if self.q == BigInt::from(1) {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for ExtendedSlope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞") {
            return Ok(ExtendedSlope::infinity());
        }
        let bad = || format!("invalid slope `{s}` (expected P/Q, an integer or `inf`)");
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        ExtendedSlope::new(p, q).ok_or_else(bad)
    }
}

/// The affine map `Φ(x) = Ax + b` of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub a: IntMat2,
    pub b: IntVec2,
}

impl Affine {
    pub fn apply(&self, x: &IntVec2) -> IntVec2 {
        &self.a.apply(x) + &self.b
    }

    pub fn is_linear(&self) -> bool {
        self.b.is_zero()
    }
}

pub fn affine_of(d: &PresentationDiagram) -> Affine {
    Affine {
        a: d.basis(),
        b: d.translation(),
    }
}

pub fn degree(d: &PresentationDiagram) -> BigInt {
    d.basis().det()
}

/// Pulls a slope back under the Euclidean map with matrix `A`.
///
/// Returns the slope of every component of the preimage curve together
/// with the degree `d` by which each component maps onto the curve.
pub fn preimage_slope(a: &IntMat2, s: &ExtendedSlope) -> Result<(ExtendedSlope, BigInt)> {
    let w = a.solve(&s.direction())?;
    let (v, k) = primitive_part(&w)?;
    debug_assert!(k.is_integer());
    let slope = ExtendedSlope::new(v.y, v.x).expect("primitive vector is nonzero");
    Ok((slope, k.to_integer()))
}

/// Rebuilds the presentation matrix, up to sign, from the pullback data of
/// slopes 0 and ∞: `s0` with degree `d` and `s_inf` with degree `e`.
///
/// The sign is fixed so that the top-left entry is positive, or, when it is
/// zero, so that the first nonzero entry of the first column is.
pub fn matrix_from_pullback_data(
    s0: &ExtendedSlope,
    d: &BigInt,
    s_inf: &ExtendedSlope,
    e: &BigInt,
) -> Result<IntMat2> {
    if !d.is_positive() || !e.is_positive() {
        return Err(Error::SingularInput);
    }
    let r = |n: &BigInt, k: &BigInt| BigRational::new(n.clone(), k.clone());
    // columns (q/d, p/d) and (s/e, r/e)
    let (a, c) = (r(s0.q(), d), r(s0.p(), d));
    let (mut b, mut dd) = (r(s_inf.q(), e), r(s_inf.p(), e));
    let mut det = &a * &dd - &b * &c;
    if det.is_zero() {
        return Err(Error::SingularInput);
    }
    // each column is known only up to sign; det A > 0 leaves a global sign
    if det.is_negative() {
        b = -b;
        dd = -dd;
        det = -det;
    }
    let inv = [&dd / &det, -&b / &det, -&c / &det, &a / &det];
    if inv.iter().any(|x| !x.is_integer()) {
        return Err(Error::NonIntegralResult);
    }
    let [i00, i01, i10, i11] = inv.map(|x| x.to_integer());
    let mut m = IntMat2::from_rows(i00, i01, i10, i11);
    let lead = if m.col1.x.is_zero() {
        &m.col1.y
    } else {
        &m.col1.x
    };
    if lead.is_negative() {
        m = -m;
    }
    Ok(m)
}
