//! Actions on diagrams: matrix and translation twisting, projective
//! canonical forms, elementary-divisor normalization, push selection from
//! terminal classes, and a bounded search for affine conjugacy.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diagram::{serialize, validate, DotIndex, GreenSegment, PresentationDiagram};
use crate::error::{Error, Result};
use crate::geometry::{domain_coords, in_closed_domain, intersect, Isometry};
use crate::lattice::{
    elementary_divisors, smith_decomposition, IntMat2, IntVec2, Parity, SpherePoint,
};

/// Transforms the whole diagram by `M`: `λᵢ ↦ Mλᵢ`, terminals `t ↦ Mt`.
pub fn matrix_twist(d: &PresentationDiagram, m: &IntMat2) -> Result<PresentationDiagram> {
    if !m.det().is_positive() {
        return Err(Error::NonPositiveDeterminant);
    }
    Ok(PresentationDiagram::new(
        m.apply(d.lambda1()),
        m.apply(d.lambda2()),
        d.selector(),
        d.pushes()
            .clone()
            .map(|p| GreenSegment::new(p.initial, m.apply(&p.terminal))),
    ))
}

/// Adds `v mod 2` (standard coordinates) to the selector (λ-coordinates).
pub fn translation_twist(d: &PresentationDiagram, v: &IntVec2) -> PresentationDiagram {
    d.with_selector(d.selector() + v.parity())
}

fn negate(d: &PresentationDiagram) -> PresentationDiagram {
    let minus = -IntMat2::identity();
    matrix_twist(d, &minus).expect("det(−I) = 1")
}

/// The serialization-least of `D` and `−D`.
pub fn projective_canonical(d: &PresentationDiagram) -> PresentationDiagram {
    let neg = negate(d);
    if serialize(&neg) < serialize(d) {
        neg
    } else {
        d.clone()
    }
}

pub fn projective_equal(a: &PresentationDiagram, b: &PresentationDiagram) -> bool {
    projective_canonical(a) == projective_canonical(b)
}

/// Conjugates the presentation by the `Q` of a Smith decomposition
/// `A = P·diag(m, n)·Q`, so that `m | λ₁′` and `n | λ₂′`.
///
/// Each conjugated push is moved back into the new fundamental domain by an
/// element of `Γ₁′`; if some push has no such image the result is
/// [`Error::NormalizationObstructed`].
pub fn normalize_divisors(d: &PresentationDiagram) -> Result<PresentationDiagram> {
    let a = d.basis();
    let smith = smith_decomposition(&a)?;
    let q = &smith.q;
    let q_inv = q
        .inverse_unimodular()
        .ok_or_else(|| Error::InternalInconsistency("Smith factor Q is not unimodular".into()))?;
    let a2 = &(q * &a) * &q_inv;
    let selector = q.apply(&d.selector().to_vec()).parity();

    let mut pushes = Vec::with_capacity(4);
    for p in d.pushes() {
        let init = q.apply(&p.initial.point(&a));
        let term = q.apply(&p.terminal);
        let placed = relocate(&init, &term, &a2).ok_or_else(|| Error::NormalizationObstructed {
            push: p.initial.token().to_string(),
        })?;
        pushes.push(placed);
    }
    let pushes: [GreenSegment; 4] = pushes.try_into().expect("four pushes");
    let out = PresentationDiagram::new(a2.col1, a2.col2, selector, pushes);
    debug_assert!(validate(&out).is_valid());
    Ok(out)
}

/// Finds `γ ∈ Γ₁` taking `init` to a dot and `term` into the closed
/// fundamental domain, trying the identity first.
fn relocate(init: &IntVec2, term: &IntVec2, basis: &IntMat2) -> Option<GreenSegment> {
    if in_closed_domain(term, basis) {
        if let Some(dot) = DotIndex::ALL.into_iter().find(|d| d.point(basis) == *init) {
            return Some(GreenSegment::new(dot, term.clone()));
        }
    }
    for dot in DotIndex::ALL {
        let target = dot.point(basis);
        let candidates = [
            Isometry::Translate(&target - init),
            Isometry::Rotate(&target + init),
        ];
        for g in candidates {
            let v = match &g {
                Isometry::Translate(v) | Isometry::Rotate(v) => v,
            };
            if !basis.contains_double(v) {
                continue;
            }
            let t = g.apply(term);
            if in_closed_domain(&t, basis) {
                return Some(GreenSegment::new(dot, t));
            }
        }
    }
    None
}

/// A terminal class folded into the representative region of `F₁`, with its
/// frame coordinates `p = s·2λ₁ + t·λ₂`.
#[derive(Clone, Debug)]
struct Folded {
    point: IntVec2,
    s: BigRational,
    t: BigRational,
}

fn fold(p: &IntVec2, basis: &IntMat2) -> Result<Folded> {
    let (mut s, mut t) = domain_coords(p, basis).ok_or(Error::SingularMatrix)?;
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    t = &t - (&t / &two).floor() * &two;
    if t > one {
        s = -s;
        t = &two - &t;
    }
    s = &s - s.floor();
    let half = BigRational::new(1.into(), 2.into());
    if (t.is_zero() || t == one) && s > half {
        s = &one - &s;
    }
    // p = A·(2s, t), integral because the fold stays inside Γ₁
    let coeffs = (&s * &two, t.clone());
    let px = &coeffs.0 * BigRational::from_integer(basis.col1.x.clone())
        + &coeffs.1 * BigRational::from_integer(basis.col2.x.clone());
    let py = &coeffs.0 * BigRational::from_integer(basis.col1.y.clone())
        + &coeffs.1 * BigRational::from_integer(basis.col2.y.clone());
    if !px.is_integer() || !py.is_integer() {
        return Err(Error::InternalInconsistency(format!(
            "folding {p} left the integer lattice"
        )));
    }
    Ok(Folded {
        point: IntVec2::new(px.to_integer(), py.to_integer()),
        s,
        t,
    })
}

/// Picks four push segments in `F₁` realizing the given terminal classes,
/// pairwise disjoint and embedded on the quotient sphere.
///
/// Terminals on the bottom edge attach to `0` (nearest first) and `λ₁`, those
/// on the top edge to `λ₂` and `λ₁ + λ₂`; the remaining terminals go to the
/// free bottom corners in increasing height and to the free top corners in
/// decreasing height. Crossing pairs at the same edge swap terminals. If the
/// result still fails validation, all assignments and representatives are
/// searched in a fixed order.
pub fn choose_segments(basis: &IntMat2, classes: &[SpherePoint; 4]) -> Result<[GreenSegment; 4]> {
    if !basis.det().is_positive() {
        return Err(Error::NonPositiveDeterminant);
    }
    let folded: Vec<Folded> = classes
        .iter()
        .map(|c| fold(&c.rep, basis))
        .collect::<Result<_>>()?;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if folded[i].point == folded[j].point {
                return Err(Error::DuplicateTerminalClass);
            }
        }
    }

    let greedy = greedy_assignment(basis, &folded);
    if passes(basis, &greedy) {
        return Ok(greedy);
    }
    exhaustive_assignment(basis, &folded).ok_or_else(|| {
        Error::InternalInconsistency("no disjoint choice of push segments found".into())
    })
}

fn passes(basis: &IntMat2, pushes: &[GreenSegment; 4]) -> bool {
    let d = PresentationDiagram::new(
        basis.col1.clone(),
        basis.col2.clone(),
        Parity(0, 0),
        pushes.clone(),
    );
    validate(&d).is_valid()
}

fn greedy_assignment(basis: &IntMat2, folded: &[Folded]) -> [GreenSegment; 4] {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut slot: [Option<usize>; 4] = [None; 4];
    let corner = |d: DotIndex| d.class();
    let idx = |c: Parity| Parity::ALL.iter().position(|&p| p == c).unwrap();
    let mut used = [false; 4];

    for (k, f) in folded.iter().enumerate() {
        for dot in [
            DotIndex::ORIGIN,
            DotIndex::L1,
            DotIndex::L2,
            DotIndex::L1_L2,
        ] {
            if dot.point(basis) == f.point {
                slot[idx(corner(dot))] = Some(k);
                used[k] = true;
            }
        }
    }

    for (t, low, high) in [
        (&zero, DotIndex::ORIGIN, DotIndex::L1),
        (&one, DotIndex::L2, DotIndex::L1_L2),
    ] {
        let mut edge: Vec<usize> = (0..folded.len())
            .filter(|&k| !used[k] && folded[k].t == *t)
            .collect();
        edge.sort_by(|&a, &b| folded[a].s.cmp(&folded[b].s));
        if let Some(&first) = edge.first() {
            if slot[idx(corner(low))].is_none() {
                slot[idx(corner(low))] = Some(first);
                used[first] = true;
                edge.remove(0);
            }
        }
        if let Some(&last) = edge.last() {
            if slot[idx(corner(high))].is_none() {
                slot[idx(corner(high))] = Some(last);
                used[last] = true;
            }
        }
    }

    let mut rest: Vec<usize> = (0..folded.len()).filter(|&k| !used[k]).collect();
    rest.sort_by(|&a, &b| (&folded[a].t, &folded[a].s).cmp(&(&folded[b].t, &folded[b].s)));
    for dot in [DotIndex::ORIGIN, DotIndex::L1] {
        if slot[idx(dot.class())].is_none() && !rest.is_empty() {
            slot[idx(dot.class())] = Some(rest.remove(0));
        }
    }
    // top corners take the highest points, lower s first among equal heights
    rest.sort_by(|&a, &b| {
        folded[b]
            .t
            .cmp(&folded[a].t)
            .then_with(|| folded[a].s.cmp(&folded[b].s))
    });
    for dot in [DotIndex::L2, DotIndex::L1_L2] {
        if slot[idx(dot.class())].is_none() && !rest.is_empty() {
            slot[idx(dot.class())] = Some(rest.remove(0));
        }
    }

    let seg = |dot: DotIndex, slot: &[Option<usize>; 4]| {
        GreenSegment::new(dot, folded[slot[idx(dot.class())].unwrap()].point.clone())
    };
    for (a, b) in [
        (DotIndex::ORIGIN, DotIndex::L1),
        (DotIndex::L2, DotIndex::L1_L2),
    ] {
        let (sa, sb) = (seg(a, &slot), seg(b, &slot));
        if !sa.is_degenerate(basis)
            && !sb.is_degenerate(basis)
            && !intersect(&sa.segment(basis), &sb.segment(basis)).is_empty()
        {
            slot.swap(idx(a.class()), idx(b.class()));
        }
    }
    [
        DotIndex::ORIGIN,
        DotIndex::L1,
        DotIndex::L2,
        DotIndex::L1_L2,
    ]
    .map(|d| seg(d, &slot))
}

/// Every representative of the class of `p` in the closed domain.
fn representatives(basis: &IntMat2, p: &IntVec2) -> Vec<IntVec2> {
    let mut out: Vec<IntVec2> = Vec::new();
    let two = BigInt::from(2);
    let shifts = [basis.col1.scale(&two), basis.col2.scale(&two)];
    for sign in [false, true] {
        let q = if sign { -p } else { p.clone() };
        for i in -2i64..=2 {
            for j in -2i64..=2 {
                let r =
                    &(&q + &shifts[0].scale(&BigInt::from(i))) + &shifts[1].scale(&BigInt::from(j));
                if in_closed_domain(&r, basis) && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

fn exhaustive_assignment(basis: &IntMat2, folded: &[Folded]) -> Option<[GreenSegment; 4]> {
    let reps: Vec<Vec<IntVec2>> = folded
        .iter()
        .map(|f| representatives(basis, &f.point))
        .collect();
    let dots_for = |c: Parity| -> Vec<DotIndex> {
        DotIndex::ALL
            .into_iter()
            .filter(|d| d.class() == c)
            .collect()
    };
    for perm in crate::netmap::permutations4() {
        // perm[k] = corner class index receiving terminal k
        let mut choices: Vec<Vec<GreenSegment>> = Vec::new();
        for k in 0..4 {
            let class = Parity::ALL[perm[k]];
            let mut opts = Vec::new();
            for dot in dots_for(class) {
                for r in &reps[k] {
                    opts.push(GreenSegment::new(dot, r.clone()));
                }
            }
            choices.push(opts);
        }
        for a in &choices[0] {
            for b in &choices[1] {
                for c in &choices[2] {
                    for d in &choices[3] {
                        let cand = [a.clone(), b.clone(), c.clone(), d.clone()];
                        if passes(basis, &cand) {
                            return Some(cand);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Which screening invariant separates two presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistinctReason {
    Determinant,
    ElementaryDivisors,
    Trace,
}

impl fmt::Display for DistinctReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistinctReason::Determinant => "determinant",
            DistinctReason::ElementaryDivisors => "elementary divisors",
            DistinctReason::Trace => "absolute trace",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    /// `Ψ(x) = Cx + d` with `Ψ∘Φ₁∘Ψ⁻¹ = sign·Φ₂ + 2λ` for some `λ ∈ ℤ²`.
    Equivalent {
        c: IntMat2,
        d: IntVec2,
        sign: i8,
    },
    Distinct(DistinctReason),
    Unknown,
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceVerdict::Equivalent { c, d, sign } => {
                let s = if *sign > 0 { '+' } else { '-' };
                write!(f, "equivalent: C = {c}, d = {d}, sign = {s}")
            }
            EquivalenceVerdict::Distinct(r) => write!(f, "distinct: {r} differs"),
            EquivalenceVerdict::Unknown => f.write_str("unknown: search bound exhausted"),
        }
    }
}

/// Unimodular matrices with entries in `[-bound, bound]`, by max-norm shell,
/// then by L1 distance from the identity, then lexicographically.
fn unimodular_candidates(bound: u32) -> Vec<[i64; 4]> {
    let b = i64::from(bound);
    let mut out = Vec::new();
    for shell in 1..=b {
        let mut ring = Vec::new();
        for a in -shell..=shell {
            for bb in -shell..=shell {
                for c in -shell..=shell {
                    for d in -shell..=shell {
                        let norm = a.abs().max(bb.abs()).max(c.abs()).max(d.abs());
                        if norm == shell && a * d - bb * c == 1 {
                            ring.push([a, bb, c, d]);
                        }
                    }
                }
            }
        }
        ring.sort_by_key(|m| {
            let l1 = (m[0] - 1).abs() + m[1].abs() + m[2].abs() + (m[3] - 1).abs();
            (l1, *m)
        });
        out.extend(ring);
    }
    out
}

/// Searches for an orientation-preserving affine conjugacy between the
/// Euclidean maps of two presentations, with conjugating matrix entries
/// bounded by `bound`.
pub fn euclidean_equivalence(
    d1: &PresentationDiagram,
    d2: &PresentationDiagram,
    bound: u32,
) -> EquivalenceVerdict {
    let (a1, a2) = (d1.basis(), d2.basis());
    if a1.det() != a2.det() {
        return EquivalenceVerdict::Distinct(DistinctReason::Determinant);
    }
    if elementary_divisors(&a1).ok() != elementary_divisors(&a2).ok() {
        return EquivalenceVerdict::Distinct(DistinctReason::ElementaryDivisors);
    }
    if a1.trace().abs() != a2.trace().abs() {
        return EquivalenceVerdict::Distinct(DistinctReason::Trace);
    }
    let (b1, b2) = (d1.translation(), d2.translation());
    let parities = [Parity(0, 0), Parity(1, 0), Parity(0, 1), Parity(1, 1)];
    for e in unimodular_candidates(bound) {
        let c = IntMat2::from_rows(e[0], e[1], e[2], e[3]);
        let lhs = &c * &a1;
        for sign in [1i8, -1] {
            let sa2 = if sign > 0 { a2.clone() } else { -&a2 };
            if lhs != &sa2 * &c {
                continue;
            }
            // (I − εA₂)d ≡ εb₂ − Cb₁ (mod 2ℤ²), so only d mod 2 matters
            let sb2 = if sign > 0 { b2.clone() } else { -&b2 };
            let rhs = &sb2 - &c.apply(&b1);
            for p in parities {
                let d = p.to_vec();
                let lhs_d = &d - &sa2.apply(&d);
                if (&lhs_d - &rhs).parity() == Parity(0, 0) {
                    return EquivalenceVerdict::Equivalent { c, d, sign };
                }
            }
        }
    }
    EquivalenceVerdict::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::sphere_reduce;
    use crate::netmap::{portrait, terminal_points};
    use proptest::prelude::*;

    fn diagram(
        l1: (i64, i64),
        l2: (i64, i64),
        sel: Parity,
        pushes: [(DotIndex, (i64, i64)); 4],
    ) -> PresentationDiagram {
        PresentationDiagram::new(
            IntVec2::new(l1.0, l1.1),
            IntVec2::new(l2.0, l2.1),
            sel,
            pushes.map(|(d, t)| GreenSegment::new(d, IntVec2::new(t.0, t.1))),
        )
    }

    fn rabbit() -> PresentationDiagram {
        diagram(
            (0, -1),
            (2, 1),
            Parity(0, 1),
            [
                (DotIndex::ORIGIN, (1, 0)),
                (DotIndex::L1, (1, -1)),
                (DotIndex::L2, (2, 1)),
                (DotIndex::L1_L2, (2, 0)),
            ],
        )
    }

    fn lodge() -> PresentationDiagram {
        diagram(
            (3, 0),
            (1, 1),
            Parity(1, 0),
            [
                (DotIndex::ORIGIN, (1, 0)),
                (DotIndex::L1, (2, 0)),
                (DotIndex::L2, (2, 1)),
                (DotIndex::L1_L2, (3, 1)),
            ],
        )
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> IntMat2 {
        IntMat2::from_rows(a, b, c, d)
    }

    #[test]
    fn matrix_twist_basics() {
        let d = rabbit();
        assert_eq!(matrix_twist(&d, &IntMat2::identity()).unwrap(), d);
        let neg = matrix_twist(&d, &m(-1, 0, 0, -1)).unwrap();
        assert_ne!(neg, d);
        assert!(projective_equal(&neg, &d));
        let t = matrix_twist(&d, &m(1, 1, 0, 1)).unwrap();
        assert_eq!(t.basis().det(), BigInt::from(2));
        assert!(validate(&t).is_valid());
        assert_eq!(
            matrix_twist(&d, &m(0, 1, 1, 0)),
            Err(Error::NonPositiveDeterminant)
        );
    }

    #[test]
    fn translation_twist_basics() {
        let d = rabbit();
        assert_eq!(translation_twist(&d, &IntVec2::zero()), d);
        assert_eq!(translation_twist(&d, &IntVec2::new(2, 2)), d);
        assert_eq!(
            translation_twist(&d, &IntVec2::new(1, 0)).selector(),
            Parity(1, 1)
        );
    }

    #[test]
    fn projective_canonical_is_idempotent() {
        for d in [rabbit(), lodge()] {
            let c = projective_canonical(&d);
            assert_eq!(projective_canonical(&c), c);
        }
        assert!(!projective_equal(&rabbit(), &lodge()));
    }

    #[test]
    fn normalize_leaves_lodge_alone() {
        assert_eq!(normalize_divisors(&lodge()).unwrap(), lodge());
    }

    #[test]
    fn normalize_with_nontrivial_q() {
        // A = [[1,1],[-1,1]]: m = 2, n = 1, first column not divisible by 2
        let d = diagram(
            (1, -1),
            (1, 1),
            Parity(0, 0),
            [
                (DotIndex::ORIGIN, (0, 0)),
                (DotIndex::L1, (1, -1)),
                (DotIndex::L2, (1, 1)),
                (DotIndex::L1_L2, (2, 0)),
            ],
        );
        assert!(validate(&d).is_valid());
        let smith = smith_decomposition(&d.basis()).unwrap();
        assert_ne!(smith.q, IntMat2::identity());
        let n = normalize_divisors(&d).unwrap();
        assert!(validate(&n).is_valid());
        let two = BigInt::from(2);
        assert!((&n.lambda1().x % &two).is_zero() && (&n.lambda1().y % &two).is_zero());
        assert_eq!(n.basis().det(), d.basis().det());
        assert!(portrait(&d).unwrap().is_isomorphic(&portrait(&n).unwrap()));
    }

    #[test]
    fn choose_segments_on_dot_classes() {
        let basis = m(2, 0, 0, 1);
        let classes = [
            DotIndex::ORIGIN,
            DotIndex::L1,
            DotIndex::L2,
            DotIndex::L1_L2,
        ]
        .map(|d| sphere_reduce(&d.point(&basis), &basis).unwrap());
        let segs = choose_segments(&basis, &classes).unwrap();
        assert!(segs.iter().all(|s| s.is_degenerate(&basis)));
    }

    #[test]
    fn choose_segments_bottom_edge_goes_to_origin() {
        // F₁ = [0,8] × [0,2]; (1, 0) is on the bottom edge near 0
        let basis = m(4, 0, 0, 2);
        let pts = [(1, 0), (3, 1), (5, 1), (6, 1)]
            .map(|(x, y)| sphere_reduce(&IntVec2::new(x, y), &basis).unwrap());
        let segs = choose_segments(&basis, &pts).unwrap();
        let origin = segs.iter().find(|s| s.initial == DotIndex::ORIGIN).unwrap();
        assert_eq!(origin.terminal, IntVec2::new(1, 0));
        assert!(passes(&basis, &segs));
    }

    #[test]
    fn choose_segments_exchanges_crossing_pair() {
        // lowest two interior points; naive 0→(5,1) and λ₁→(1,2) cross
        let basis = m(3, 0, 0, 3);
        let pts = [(5, 1), (1, 2), (2, 2), (4, 2)]
            .map(|(x, y)| sphere_reduce(&IntVec2::new(x, y), &basis).unwrap());
        let segs = choose_segments(&basis, &pts).unwrap();
        assert!(passes(&basis, &segs));
        let origin = segs.iter().find(|s| s.initial == DotIndex::ORIGIN).unwrap();
        assert_eq!(origin.terminal, IntVec2::new(1, 2));
    }

    #[test]
    fn choose_segments_rejects_duplicates() {
        let basis = m(2, 0, 0, 1);
        let p = sphere_reduce(&IntVec2::new(1, 0), &basis).unwrap();
        let q = sphere_reduce(&IntVec2::new(-1, 0), &basis).unwrap();
        let r = sphere_reduce(&IntVec2::new(0, 1), &basis).unwrap();
        let s = sphere_reduce(&IntVec2::new(1, 1), &basis).unwrap();
        assert_eq!(
            choose_segments(&basis, &[p, q, r, s]),
            Err(Error::DuplicateTerminalClass)
        );
    }

    #[test]
    fn choose_segments_realizes_rabbit_classes() {
        let d = rabbit();
        let segs = choose_segments(&d.basis(), &terminal_points(&d).unwrap()).unwrap();
        assert!(passes(&d.basis(), &segs));
    }

    #[test]
    fn equivalence_examples() {
        let d = rabbit();
        assert_eq!(
            euclidean_equivalence(&d, &d, 1),
            EquivalenceVerdict::Equivalent {
                c: IntMat2::identity(),
                d: IntVec2::zero(),
                sign: 1
            }
        );
        assert_eq!(
            euclidean_equivalence(&rabbit(), &lodge(), 3),
            EquivalenceVerdict::Distinct(DistinctReason::Determinant)
        );
        // conjugate by C₀: A ↦ C₀AC₀⁻¹, b ↦ C₀b
        let c0 = m(1, 1, 0, 1);
        for d in [rabbit(), lodge()] {
            let a = d.basis();
            let a2 = &(&c0 * &a) * &c0.inverse_unimodular().unwrap();
            let sel = c0.apply(&d.selector().to_vec()).parity();
            let conj = PresentationDiagram::new(a2.col1, a2.col2, sel, d.pushes().clone());
            match euclidean_equivalence(&d, &conj, 2) {
                EquivalenceVerdict::Equivalent { c, d: t, sign } => {
                    assert_eq!(c.det(), BigInt::one());
                    let s = if sign > 0 {
                        conj.basis()
                    } else {
                        -&conj.basis()
                    };
                    assert_eq!(&c * &d.basis(), &s * &c);
                    let sb = if sign > 0 {
                        conj.translation()
                    } else {
                        -&conj.translation()
                    };
                    let residue = &(&(&t - &s.apply(&t)) - &sb) + &c.apply(&d.translation());
                    assert_eq!(residue.parity(), Parity(0, 0));
                }
                other => panic!("{other}"),
            }
        }
    }

    #[test]
    fn equivalence_screens_trace() {
        let a = diagram(
            (2, 0),
            (0, 1),
            Parity(0, 0),
            [
                (DotIndex::ORIGIN, (0, 0)),
                (DotIndex::L1, (2, 0)),
                (DotIndex::L2, (0, 1)),
                (DotIndex::L1_L2, (2, 1)),
            ],
        );
        let b = diagram(
            (0, 1),
            (-2, 0),
            Parity(0, 0),
            [
                (DotIndex::ORIGIN, (0, 0)),
                (DotIndex::L1, (0, 1)),
                (DotIndex::L2, (-2, 0)),
                (DotIndex::L1_L2, (-2, 1)),
            ],
        );
        assert_eq!(
            euclidean_equivalence(&a, &b, 2),
            EquivalenceVerdict::Distinct(DistinctReason::Trace)
        );
    }

    #[test]
    fn candidate_order_starts_at_identity() {
        let c = unimodular_candidates(2);
        assert_eq!(c[0], [1, 0, 0, 1]);
        assert!(c.iter().all(|m| m[0] * m[3] - m[1] * m[2] == 1));
        let shell1 = c.iter().filter(|m| m.iter().all(|x| x.abs() <= 1)).count();
        assert!(c[..shell1].iter().all(|m| m.iter().all(|x| x.abs() <= 1)));
    }

    fn small_unimodular() -> impl Strategy<Value = IntMat2> {
        (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
            .prop_map(|(a, b, c, d)| m(a, b, c, d))
            .prop_filter("det 1", |x| x.det() == BigInt::one())
    }

    proptest! {
        #[test]
        fn twist_composition(m1 in small_unimodular(), m2 in small_unimodular()) {
            let d = rabbit();
            let lhs = matrix_twist(&matrix_twist(&d, &m1).unwrap(), &m2).unwrap();
            let rhs = matrix_twist(&d, &(&m2 * &m1)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn twist_is_free_on_projective_classes(mm in small_unimodular()) {
            prop_assume!(mm != IntMat2::identity() && mm != -IntMat2::identity());
            for d in [rabbit(), lodge()] {
                prop_assert!(!projective_equal(&d, &matrix_twist(&d, &mm).unwrap()));
            }
        }

        #[test]
        fn translation_twist_is_involutive(x in -5i64..5, y in -5i64..5) {
            let v = IntVec2::new(x, y);
            let d = lodge();
            prop_assert_eq!(translation_twist(&translation_twist(&d, &v), &v), d);
        }
    }
}
