//! Exact 2×2 integer and rational linear algebra.
//!
//! Everything here works over unbounded integers: repeated twisting grows
//! matrix entries without bound, so no fixed-width arithmetic is used.
//!
//! Besides the basic vector and matrix types this module provides the Smith
//! decomposition used for elementary-divisor normalization and the canonical
//! reduction of integer points modulo the group `{x ↦ ±x + 2λ : λ ∈ Λ}`
//! attached to a lattice `Λ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer vector in standard ℝ² coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl IntVec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        IntVec2 {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        IntVec2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> IntVec2 {
        IntVec2 {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn to_rational(&self) -> RatVec2 {
        RatVec2 {
            x: BigRational::from_integer(self.x.clone()),
            y: BigRational::from_integer(self.y.clone()),
        }
    }

    /// Componentwise parity, as an element of ℤ₂².
    pub fn parity(&self) -> Parity {
        Parity::new(is_odd(&self.x), is_odd(&self.y))
    }

    /// 2D cross product `self × other`.
    pub fn cross(&self, other: &IntVec2) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &IntVec2) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl<'a> Add<&'a IntVec2> for &'a IntVec2 {
    type Output = IntVec2;
    fn add(self, rhs: &'a IntVec2) -> IntVec2 {
        IntVec2 {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl<'a> Sub<&'a IntVec2> for &'a IntVec2 {
    type Output = IntVec2;
    fn sub(self, rhs: &'a IntVec2) -> IntVec2 {
        IntVec2 {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Neg for &IntVec2 {
    type Output = IntVec2;
    fn neg(self) -> IntVec2 {
        IntVec2 {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Add for IntVec2 {
    type Output = IntVec2;
    fn add(self, rhs: IntVec2) -> IntVec2 {
        &self + &rhs
    }
}

impl Sub for IntVec2 {
    type Output = IntVec2;
    fn sub(self, rhs: IntVec2) -> IntVec2 {
        &self - &rhs
    }
}

impl Neg for IntVec2 {
    type Output = IntVec2;
    fn neg(self) -> IntVec2 {
        -&self
    }
}

/// A vector with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec2 {
    pub x: BigRational,
    pub y: BigRational,
}

impl RatVec2 {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RatVec2 { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Returns the vector as an integer vector when both coordinates are integers.
    pub fn to_integer(&self) -> Option<IntVec2> {
        if self.x.is_integer() && self.y.is_integer() {
            Some(IntVec2 {
                x: self.x.to_integer(),
                y: self.y.to_integer(),
            })
        } else {
            None
        }
    }
}

impl fmt::Display for RatVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An element of ℤ₂², used for corner labels, translation selectors and
/// critical-value classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Parity(pub u8, pub u8);

impl Parity {
    pub const ALL: [Parity; 4] = [Parity(0, 0), Parity(1, 0), Parity(0, 1), Parity(1, 1)];

    pub fn new(a: bool, b: bool) -> Self {
        Parity(a as u8, b as u8)
    }

    pub fn to_vec(self) -> IntVec2 {
        IntVec2::new(self.0, self.1)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity(self.0 ^ rhs.0, self.1 ^ rhs.1)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

/// A 2×2 integer matrix stored by columns.
///
/// As a presentation matrix, `col1 = λ₁` and `col2 = λ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMat2 {
    pub col1: IntVec2,
    pub col2: IntVec2,
}

impl IntMat2 {
    pub fn from_columns(col1: IntVec2, col2: IntVec2) -> Self {
        IntMat2 { col1, col2 }
    }

    /// Builds `[[a, b], [c, d]]` from row-major entries.
    pub fn from_rows(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        IntMat2 {
            col1: IntVec2::new(a, c),
            col2: IntVec2::new(b, d),
        }
    }

    pub fn identity() -> Self {
        IntMat2::from_rows(1, 0, 0, 1)
    }

    pub fn diag(a: BigInt, d: BigInt) -> Self {
        IntMat2::from_rows(a, 0, 0, d)
    }

    /// Row-major entries `[a, b, c, d]`.
    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.col1.x, &self.col2.x, &self.col1.y, &self.col2.y]
    }

    pub fn det(&self) -> BigInt {
        det(self)
    }

    pub fn trace(&self) -> BigInt {
        &self.col1.x + &self.col2.y
    }

    pub fn apply(&self, v: &IntVec2) -> IntVec2 {
        IntVec2 {
            x: &self.col1.x * &v.x + &self.col2.x * &v.y,
            y: &self.col1.y * &v.x + &self.col2.y * &v.y,
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMat2 {
        IntMat2 {
            col1: self.col1.scale(k),
            col2: self.col2.scale(k),
        }
    }

    /// The adjugate, so that `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> IntMat2 {
        let [a, b, c, d] = self.entries();
        IntMat2::from_rows(d.clone(), -b, -c, a.clone())
    }

    /// Inverse of a matrix with determinant ±1.
    pub fn inverse_unimodular(&self) -> Option<IntMat2> {
        let det = self.det();
        if det.is_one() {
            Some(self.adjugate())
        } else if (-&det).is_one() {
            Some(-self.adjugate())
        } else {
            None
        }
    }

    /// `M⁻¹ · v` with exact rational entries.
    pub fn solve(&self, v: &IntVec2) -> Result<RatVec2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let adj = self.adjugate().apply(v);
        Ok(RatVec2 {
            x: BigRational::new(adj.x, det.clone()),
            y: BigRational::new(adj.y, det),
        })
    }

    /// Whether `v` lies in the lattice spanned by the columns.
    pub fn contains(&self, v: &IntVec2) -> bool {
        let det = self.det();
        if det.is_zero() {
            return false;
        }
        let adj = self.adjugate().apply(v);
        adj.x.is_multiple_of(&det) && adj.y.is_multiple_of(&det)
    }

    /// Whether `v` lies in twice the lattice spanned by the columns.
    pub fn contains_double(&self, v: &IntVec2) -> bool {
        self.scale(&BigInt::from(2)).contains(v)
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl<'a> Mul<&'a IntMat2> for &'a IntMat2 {
    type Output = IntMat2;
    fn mul(self, rhs: &'a IntMat2) -> IntMat2 {
        IntMat2 {
            col1: self.apply(&rhs.col1),
            col2: self.apply(&rhs.col2),
        }
    }
}

impl Mul for IntMat2 {
    type Output = IntMat2;
    fn mul(self, rhs: IntMat2) -> IntMat2 {
        &self * &rhs
    }
}

impl Neg for &IntMat2 {
    type Output = IntMat2;
    fn neg(self) -> IntMat2 {
        IntMat2 {
            col1: -&self.col1,
            col2: -&self.col2,
        }
    }
}

impl Neg for IntMat2 {
    type Output = IntMat2;
    fn neg(self) -> IntMat2 {
        -&self
    }
}

/// Elementary divisors of a nonsingular 2×2 integer matrix.
///
/// The convention is `n | m` (not the more common `m | n`), with
/// `m · n = |det|` and `n` the gcd of all entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisors {
    pub m: BigInt,
    pub n: BigInt,
}

/// Smith decomposition `M = P · diag(m, n) · Q` with `det P = det Q = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub p: IntMat2,
    pub q: IntMat2,
    pub divisors: Divisors,
}

pub fn det(m: &IntMat2) -> BigInt {
    &m.col1.x * &m.col2.y - &m.col2.x * &m.col1.y
}

fn is_odd(v: &BigInt) -> bool {
    v.is_odd()
}

pub(crate) fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Extended gcd: returns `(g, x, y)` with `a·x + b·y = g ≥ 0`.
pub(crate) fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn elementary_divisors(m: &IntMat2) -> Result<Divisors> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let [a, b, c, d] = m.entries();
    let n = gcd(&gcd(a, b), &gcd(c, d));
    let m = det.abs() / &n;
    Ok(Divisors { m, n })
}

/// Reduces `m` to `diag(d1, d2)` with `0 < d1 | d2`, returning unimodular
/// `(u, v)` with `u · m · v = diag(d1, d2)`.
fn smith_reduce(m: &IntMat2) -> (IntMat2, IntMat2, BigInt, BigInt) {
    let mut d = m.clone();
    let mut u = IntMat2::identity();
    let mut v = IntMat2::identity();
    loop {
        if !d.col2.x.is_zero() {
            // column operation clearing the (0,1) entry
            let (a, b) = (d.col1.x.clone(), d.col2.x.clone());
            let r = if !a.is_zero() && b.is_multiple_of(&a) {
                IntMat2::from_rows(1, -(&b / &a), 0, 1)
            } else {
                let (g, x, y) = xgcd(&a, &b);
                IntMat2::from_rows(x, -(&b / &g), y, &a / &g)
            };
            d = &d * &r;
            v = &v * &r;
        }
        if !d.col1.y.is_zero() {
            // row operation clearing the (1,0) entry
            let (a, c) = (d.col1.x.clone(), d.col1.y.clone());
            let l = if !a.is_zero() && c.is_multiple_of(&a) {
                IntMat2::from_rows(1, 0, -(&c / &a), 1)
            } else {
                let (g, x, y) = xgcd(&a, &c);
                IntMat2::from_rows(x, y, -(&c / &g), &a / &g)
            };
            d = &l * &d;
            u = &l * &u;
            continue;
        }
        if d.col2.x.is_zero() {
            if d.col1.x.is_zero() || d.col2.y.is_multiple_of(&d.col1.x) {
                break;
            }
            // diagonal but d1 ∤ d2: fold row 1 into row 0 and repeat
            let l = IntMat2::from_rows(1, 1, 0, 1);
            d = &l * &d;
            u = &l * &u;
        }
    }
    if d.col1.x.is_negative() {
        let l = IntMat2::from_rows(-1, 0, 0, 1);
        d = &l * &d;
        u = &l * &u;
    }
    if d.col2.y.is_negative() {
        let l = IntMat2::from_rows(1, 0, 0, -1);
        d = &l * &d;
        u = &l * &u;
    }
    (u, v, d.col1.x, d.col2.y)
}

/// Factors `M = P · diag(m, n) · Q` with `P, Q ∈ SL(2, ℤ)` and `(m, n)` the
/// elementary divisors of `M`.
///
/// When the columns of `M` are already divisible by `m` and `n`
/// respectively, `Q` is the identity.
pub fn smith_decomposition(m: &IntMat2) -> Result<SmithDecomposition> {
    if !m.det().is_positive() {
        return Err(Error::NonPositiveDeterminant);
    }
    let divisors = elementary_divisors(m)?;
    if m.col1.x.is_multiple_of(&divisors.m)
        && m.col1.y.is_multiple_of(&divisors.m)
        && m.col2.x.is_multiple_of(&divisors.n)
        && m.col2.y.is_multiple_of(&divisors.n)
    {
        let p = IntMat2::from_columns(
            IntVec2::new(&m.col1.x / &divisors.m, &m.col1.y / &divisors.m),
            IntVec2::new(&m.col2.x / &divisors.n, &m.col2.y / &divisors.n),
        );
        return Ok(SmithDecomposition {
            p,
            q: IntMat2::identity(),
            divisors,
        });
    }

    let (u, v, d1, d2) = smith_reduce(m);
    debug_assert_eq!(d1, divisors.n);
    debug_assert_eq!(d2, divisors.m);
    let u_inv = u
        .inverse_unimodular()
        .expect("row operations are unimodular");
    let v_inv = v
        .inverse_unimodular()
        .expect("column operations are unimodular");
    // diag(d2, d1) = S · diag(d1, d2) · S with S the coordinate swap
    let swap = IntMat2::from_rows(0, 1, 1, 0);
    let mut p = &u_inv * &swap;
    let mut q = &swap * &v_inv;
    if p.det().is_negative() {
        let flip = IntMat2::from_rows(-1, 0, 0, 1);
        p = &p * &flip;
        q = &flip * &q;
    }
    Ok(SmithDecomposition { p, q, divisors })
}

/// Scales a nonzero rational vector to a primitive integer vector.
///
/// Returns `(v, k)` with `gcd(v.x, v.y) = 1`, `k > 0` and `k · w = ±v`; the
/// sign of `v` is fixed so that its first nonzero coordinate is positive.
pub fn primitive_part(w: &RatVec2) -> Result<(IntVec2, BigRational)> {
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    let l = w.x.denom().lcm(w.y.denom());
    let ix = (&w.x * BigRational::from_integer(l.clone())).to_integer();
    let iy = (&w.y * BigRational::from_integer(l.clone())).to_integer();
    let g = gcd(&ix, &iy);
    let mut v = IntVec2::new(ix / &g, iy / &g);
    let first = if v.x.is_zero() { &v.y } else { &v.x };
    if first.is_negative() {
        v = -v;
    }
    Ok((v, BigRational::new(l, g)))
}

/// Canonical representative of an integer point on the quotient sphere of a
/// lattice `Λ₁`, i.e. of its orbit under `{x ↦ ±x + 2λ : λ ∈ Λ₁}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpherePoint {
    pub rep: IntVec2,
    pub basis: IntMat2,
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Reduces `mu` modulo translations by `2Λ₁` into the half-open
/// parallelogram spanned by `2λ₁, 2λ₂`.
fn reduce_translation(mu: &IntVec2, basis: &IntMat2) -> Result<IntVec2> {
    let t = basis.solve(mu)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let k = IntVec2::new(
        (&t.x / &two).floor().to_integer(),
        (&t.y / &two).floor().to_integer(),
    );
    let shift = basis.apply(&k).scale(&BigInt::from(2));
    Ok(mu - &shift)
}

pub fn sphere_reduce(mu: &IntVec2, basis: &IntMat2) -> Result<SpherePoint> {
    if !basis.det().is_positive() {
        return Err(Error::NonPositiveDeterminant);
    }
    let plus = reduce_translation(mu, basis)?;
    let minus = reduce_translation(&-mu, basis)?;
    let rep = std::cmp::min_by(plus, minus, |a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    Ok(SpherePoint {
        rep,
        basis: basis.clone(),
    })
}
