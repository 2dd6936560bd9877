//! Exact combinatorics of NET map presentation diagrams.
//!
//! A presentation diagram fixes an affine map `Φ(x) = Ax + b` with
//! `A = [λ₁ λ₂]` and four push arcs; together they determine a Thurston map
//! `f = h∘g` of degree `det A` on a four-cornered lattice quotient sphere.
//! All arithmetic is done with unbounded integers and exact rationals.

pub mod diagram;
pub mod error;
pub mod euclid;
pub mod geometry;
pub mod lattice;
pub mod netmap;
pub mod reference;
pub mod render;
pub mod twist;

pub use diagram::{
    parse, serialize, validate, DotIndex, GreenSegment, PresentationDiagram, ValidationReport,
    Violation, ViolationCode,
};
pub use error::{Error, Result};
pub use euclid::{
    affine_of, degree, matrix_from_pullback_data, preimage_slope, Affine, ExtendedSlope,
};
pub use lattice::{
    elementary_divisors, primitive_part, smith_decomposition, sphere_reduce, Divisors, IntMat2,
    IntVec2, Parity, RatVec2, SmithDecomposition, SpherePoint,
};
pub use netmap::{critical_value_classes, is_net, map_on_p, portrait, terminal_points, Portrait};
pub use render::{render_svg, RenderOptions};
pub use twist::{
    choose_segments, euclidean_equivalence, matrix_twist, normalize_divisors, projective_canonical,
    projective_equal, translation_twist, DistinctReason, EquivalenceVerdict,
};
