//! Presentation diagrams: an ordered lattice basis `(λ₁, λ₂)`, a circled
//! corner selecting the translation term, and four push segments drawn in
//! the fundamental domain `F₁` with corners `0, 2λ₁, λ₂, 2λ₁ + λ₂`.

mod format;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

pub use format::{parse, serialize};

use crate::error::{Error, Result};
use crate::geometry::{in_closed_domain, intersect, Intersection, Isometry, Segment};
use crate::lattice::{IntMat2, IntVec2, Parity};

/// One of the six marked lattice points `i·λ₁ + j·λ₂` of `F₁`, with
/// `i ∈ {0,1,2}` and `j ∈ {0,1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DotIndex {
    i: u8,
    j: u8,
}

impl DotIndex {
    pub const ORIGIN: DotIndex = DotIndex { i: 0, j: 0 };
    pub const L1: DotIndex = DotIndex { i: 1, j: 0 };
    pub const TWO_L1: DotIndex = DotIndex { i: 2, j: 0 };
    pub const L2: DotIndex = DotIndex { i: 0, j: 1 };
    pub const L1_L2: DotIndex = DotIndex { i: 1, j: 1 };
    pub const TWO_L1_L2: DotIndex = DotIndex { i: 2, j: 1 };

    /// All six dots, in canonical order.
    pub const ALL: [DotIndex; 6] = [
        DotIndex::ORIGIN,
        DotIndex::L1,
        DotIndex::TWO_L1,
        DotIndex::L2,
        DotIndex::L1_L2,
        DotIndex::TWO_L1_L2,
    ];

    pub fn new(i: u8, j: u8) -> Option<Self> {
        (i <= 2 && j <= 1).then_some(DotIndex { i, j })
    }

    pub fn i(self) -> u8 {
        self.i
    }

    pub fn j(self) -> u8 {
        self.j
    }

    /// The corner label in `Λ₁/2Λ₁ ≅ ℤ₂²`.
    pub fn class(self) -> Parity {
        Parity(self.i % 2, self.j)
    }

    /// The dot on the bottom or top edge representing a corner label.
    pub fn for_class(class: Parity) -> DotIndex {
        DotIndex {
            i: class.0,
            j: class.1,
        }
    }

    pub fn point(self, basis: &IntMat2) -> IntVec2 {
        &basis.col1.scale(&BigInt::from(self.i)) + &basis.col2.scale(&BigInt::from(self.j))
    }

    pub fn token(self) -> &'static str {
        match (self.i, self.j) {
            (0, 0) => "0",
            (1, 0) => "l1",
            (2, 0) => "2l1",
            (0, 1) => "l2",
            (1, 1) => "l1+l2",
            _ => "2l1+l2",
        }
    }

    pub fn from_token(token: &str) -> Option<DotIndex> {
        DotIndex::ALL.into_iter().find(|d| d.token() == token)
    }
}

impl PartialOrd for DotIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DotIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl fmt::Display for DotIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A push arc, stored as one lift: a straight segment in `F₁` from a dot to
/// a point of `ℤ²`. Degenerate pushes have `terminal` equal to the dot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GreenSegment {
    pub initial: DotIndex,
    pub terminal: IntVec2,
}

impl GreenSegment {
    pub fn new(initial: DotIndex, terminal: IntVec2) -> Self {
        GreenSegment { initial, terminal }
    }

    pub fn segment(&self, basis: &IntMat2) -> Segment {
        Segment::new(self.initial.point(basis), self.terminal.clone())
    }

    pub fn is_degenerate(&self, basis: &IntMat2) -> bool {
        self.initial.point(basis) == self.terminal
    }
}

/// A complete NET map presentation.
///
/// Pushes are kept sorted by initial dot so that equal presentations compare
/// equal regardless of construction order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentationDiagram {
    lambda1: IntVec2,
    lambda2: IntVec2,
    selector: Parity,
    pushes: [GreenSegment; 4],
}

impl PresentationDiagram {
    pub fn new(
        lambda1: IntVec2,
        lambda2: IntVec2,
        selector: Parity,
        mut pushes: [GreenSegment; 4],
    ) -> Self {
        pushes.sort_by_key(|p| p.initial);
        PresentationDiagram {
            lambda1,
            lambda2,
            selector,
            pushes,
        }
    }

    pub fn lambda1(&self) -> &IntVec2 {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &IntVec2 {
        &self.lambda2
    }

    /// `(c₁, c₂)` with translation term `b = c₁λ₁ + c₂λ₂`.
    pub fn selector(&self) -> Parity {
        self.selector
    }

    pub fn pushes(&self) -> &[GreenSegment; 4] {
        &self.pushes
    }

    /// The presentation matrix `[λ₁ λ₂]`.
    pub fn basis(&self) -> IntMat2 {
        IntMat2::from_columns(self.lambda1.clone(), self.lambda2.clone())
    }

    pub fn translation(&self) -> IntVec2 {
        self.basis().apply(&self.selector.to_vec())
    }

    pub fn with_selector(&self, selector: Parity) -> Self {
        PresentationDiagram {
            selector,
            ..self.clone()
        }
    }

    pub fn dot(&self, d: DotIndex) -> IntVec2 {
        d.point(&self.basis())
    }

    pub fn push_for_class(&self, class: Parity) -> Option<&GreenSegment> {
        self.pushes.iter().find(|p| p.initial.class() == class)
    }
}

/// The nine elements `γ ∈ Γ₁` with `γ(F₁) ∩ F₁ ≠ ∅`: the identity, the
/// translations by `±2λ₁`, and the half turns about the six dots.
pub fn neighbor_isometries(basis: &IntMat2) -> Result<Vec<Isometry>> {
    if !basis.det().is_positive() {
        return Err(Error::NonPositiveDeterminant);
    }
    let two = BigInt::from(2);
    let shift = basis.col1.scale(&two);
    let mut out = vec![
        Isometry::identity(),
        Isometry::Translate(shift.clone()),
        Isometry::Translate(-shift),
    ];
    out.extend(
        DotIndex::ALL
            .iter()
            .map(|d| Isometry::Rotate(d.point(basis).scale(&two))),
    );
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationCode {
    /// `det[λ₁ λ₂] ≤ 0`.
    NonPositiveDeterminant,
    /// `det[λ₁ λ₂] = 1`: the map would have degree 1.
    DegreeTooSmall,
    TerminalOutsideDomain,
    ClassCoverage,
    PushesIntersect,
    PushSelfIntersects,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::NonPositiveDeterminant => "nonpositive-determinant",
            ViolationCode::DegreeTooSmall => "degree-too-small",
            ViolationCode::TerminalOutsideDomain => "terminal-outside-domain",
            ViolationCode::ClassCoverage => "class-coverage",
            ViolationCode::PushesIntersect => "pushes-intersect",
            ViolationCode::PushSelfIntersects => "push-self-intersects",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    fn push(&mut self, code: ViolationCode, message: String) {
        self.violations.push(Violation { code, message });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{}: {}", v.code, v.message)?;
        }
        Ok(())
    }
}

/// Checks a diagram: degree, domain containment, corner-class coverage and
/// disjointness of the push arcs on the quotient sphere.
pub fn validate(d: &PresentationDiagram) -> ValidationReport {
    let mut report = ValidationReport::default();
    let basis = d.basis();
    let det = basis.det();

    if !det.is_positive() {
        report.push(
            ViolationCode::NonPositiveDeterminant,
            format!("det[λ₁ λ₂] = {det} is not positive"),
        );
    } else if det < BigInt::from(2) {
        report.push(
            ViolationCode::DegreeTooSmall,
            format!("det[λ₁ λ₂] = {det}; degree must be at least 2"),
        );
    }

    let positive = det.is_positive();
    if positive {
        for p in &d.pushes {
            if !in_closed_domain(&p.terminal, &basis) {
                report.push(
                    ViolationCode::TerminalOutsideDomain,
                    format!("push {} ends at {} outside F₁", p.initial, p.terminal),
                );
            }
        }
    }

    for class in Parity::ALL {
        let n = d
            .pushes
            .iter()
            .filter(|p| p.initial.class() == class)
            .count();
        if n != 1 {
            report.push(
                ViolationCode::ClassCoverage,
                format!("corner class {class} has {n} pushes, expected 1"),
            );
        }
    }

    if !positive {
        return report;
    }
    let gammas = neighbor_isometries(&basis).expect("determinant checked positive");
    let segs: Vec<Segment> = d.pushes.iter().map(|p| p.segment(&basis)).collect();

    for i in 0..4 {
        for j in (i + 1)..4 {
            if gammas
                .iter()
                .any(|g| !intersect(&segs[i], &g.apply_segment(&segs[j])).is_empty())
            {
                report.push(
                    ViolationCode::PushesIntersect,
                    format!(
                        "pushes {} and {} meet on the quotient sphere",
                        d.pushes[i].initial, d.pushes[j].initial
                    ),
                );
            }
        }
    }

    for (p, seg) in d.pushes.iter().zip(&segs) {
        let folds = gammas
            .iter()
            .filter(|g| !g.is_identity())
            .any(|g| !self_meeting_allowed(seg, g));
        if folds {
            report.push(
                ViolationCode::PushSelfIntersects,
                format!("push {} is not embedded on the quotient sphere", p.initial),
            );
        }
    }
    report
}

/// `seg ∩ γ(seg)` may only be a γ-fixed endpoint of `seg`.
fn self_meeting_allowed(seg: &Segment, g: &Isometry) -> bool {
    match intersect(seg, &g.apply_segment(seg)) {
        Intersection::Empty => true,
        Intersection::Overlap(..) => false,
        Intersection::Point(p) => {
            let is_endpoint = p == seg.start.to_rational() || p == seg.end.to_rational();
            is_endpoint && g.center().as_ref() == Some(&p)
        }
    }
}
