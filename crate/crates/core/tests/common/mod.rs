#![allow(dead_code)]

use netmap_core::{
    choose_segments, sphere_reduce, DotIndex, GreenSegment, IntMat2, IntVec2, Parity,
    PresentationDiagram, SpherePoint,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn diagram(
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

/// All four pushes degenerate at the bottom and top corner dots.
pub fn degenerate(basis: &IntMat2, sel: Parity) -> PresentationDiagram {
    let pushes = [
        DotIndex::ORIGIN,
        DotIndex::L1,
        DotIndex::L2,
        DotIndex::L1_L2,
    ]
    .map(|d| GreenSegment::new(d, d.point(basis)));
    PresentationDiagram::new(basis.col1.clone(), basis.col2.clone(), sel, pushes)
}

/// A matrix with entries in `[-r, r]` and determinant in `[lo, hi]`.
pub fn random_matrix(rng: &mut ChaCha8Rng, r: i64, lo: i64, hi: i64) -> IntMat2 {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-r..=r));
        let det = e[0] * e[3] - e[1] * e[2];
        if (lo..=hi).contains(&det) {
            return IntMat2::from_rows(e[0], e[1], e[2], e[3]);
        }
    }
}

/// Four pairwise distinct sphere points of the lattice spanned by `basis`.
pub fn random_classes(rng: &mut ChaCha8Rng, basis: &IntMat2) -> [SpherePoint; 4] {
    let mut out: Vec<SpherePoint> = Vec::new();
    while out.len() < 4 {
        let p = IntVec2::new(rng.gen_range(-12i64..=12), rng.gen_range(-12i64..=12));
        let s = sphere_reduce(&p, basis).unwrap();
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.try_into().unwrap()
}

pub fn random_selector(rng: &mut ChaCha8Rng) -> Parity {
    Parity::ALL[rng.gen_range(0..4)]
}

/// A random valid diagram: random basis, selector and terminal classes, with
/// pushes picked by `choose_segments`.
pub fn random_diagram(rng: &mut ChaCha8Rng) -> PresentationDiagram {
    let basis = random_matrix(rng, 4, 2, 12);
    let classes = random_classes(rng, &basis);
    let pushes = choose_segments(&basis, &classes).expect("segments exist");
    PresentationDiagram::new(basis.col1, basis.col2, random_selector(rng), pushes)
}
