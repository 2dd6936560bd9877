//! The map `f = h∘g` on the four candidate postcritical points.
//!
//! `g` is the branched cover `S²₁ → S²₂` induced by `Φ`, and `h` is the push
//! homeomorphism carrying each corner of `S²₁` along its push arc. Only the
//! action of `h` on the corners is needed to follow the four points.

use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::PresentationDiagram;
use crate::error::{Error, Result};
use crate::lattice::{sphere_reduce, Parity, SpherePoint};

/// The four push terminals, reduced on the sphere, in push order.
pub fn terminal_points(d: &PresentationDiagram) -> Result<[SpherePoint; 4]> {
    let basis = d.basis();
    let pts: Vec<SpherePoint> = d
        .pushes()
        .iter()
        .map(|p| sphere_reduce(&p.terminal, &basis))
        .collect::<Result<_>>()?;
    Ok(pts.try_into().expect("four pushes"))
}

/// Corner labels of `S²₁` (in λ-coordinates mod 2) that are critical values
/// of `g`.
///
/// The critical points of `g` are the images of `ℤ² \ Aℤ²`; a point `μ` is
/// sent to the corner labelled `(μ + c) mod 2`. A label `ρ` is missed exactly
/// when the whole coset `(ρ − c) + 2ℤ²` lies in `Aℤ²`.
pub fn critical_value_classes(d: &PresentationDiagram) -> BTreeSet<Parity> {
    let a = d.basis();
    let c = d.selector();
    let even_in_lattice = a.contains(&Parity(1, 0).to_vec().scale(&2.into()))
        && a.contains(&Parity(0, 1).to_vec().scale(&2.into()));
    Parity::ALL
        .into_iter()
        .filter(|&rho| !(even_in_lattice && a.contains(&(rho + c).to_vec())))
        .collect()
}

fn index_of(points: &[SpherePoint; 4], p: &SpherePoint) -> Result<usize> {
    points
        .iter()
        .position(|q| q == p)
        .ok_or_else(|| Error::InternalInconsistency(format!("{p} is not a push terminal")))
}

/// `f` on the terminal points, as indices into [`terminal_points`].
pub fn map_on_p(d: &PresentationDiagram) -> Result<[usize; 4]> {
    let points = terminal_points(d)?;
    let basis = d.basis();
    let mut out = [0; 4];
    for (k, p) in points.iter().enumerate() {
        // λ-coordinates of Φ(t) are t + c
        let label = p.rep.parity() + d.selector();
        let push = d.push_for_class(label).ok_or_else(|| {
            Error::InternalInconsistency(format!("no push for corner class {label}"))
        })?;
        out[k] = index_of(&points, &sphere_reduce(&push.terminal, &basis)?)?;
    }
    Ok(out)
}

/// The dynamic portrait of `f` on the four push terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Portrait {
    pub points: [SpherePoint; 4],
    /// `edges[i]` is the index of `f(points[i])`.
    pub edges: [usize; 4],
    pub cv_classes: BTreeSet<Parity>,
    /// Indices of the pushed critical values `h(v)`.
    pub critical_values: BTreeSet<usize>,
    pub postcritical: BTreeSet<usize>,
}

impl Portrait {
    pub fn is_net(&self) -> bool {
        self.postcritical.len() == 4
    }

    /// Lengths of the cycles of `f` on the four points, sorted.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = [false; 4];
        let mut out = Vec::new();
        for start in 0..4 {
            // walk until a repeat; count the cycle only the first time it is met
            let mut path = vec![start];
            let mut x = self.edges[start];
            while !path.contains(&x) {
                path.push(x);
                x = self.edges[x];
            }
            if !seen[x] {
                let mut len = 0;
                let mut y = x;
                loop {
                    seen[y] = true;
                    len += 1;
                    y = self.edges[y];
                    if y == x {
                        break;
                    }
                }
                out.push(len);
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether some relabelling of the points carries one portrait onto the
    /// other, preserving edges and critical-value marks.
    pub fn is_isomorphic(&self, other: &Portrait) -> bool {
        permutations4().iter().any(|s| {
            (0..4).all(|i| s[self.edges[i]] == other.edges[s[i]])
                && self
                    .critical_values
                    .iter()
                    .map(|&i| s[i])
                    .collect::<BTreeSet<_>>()
                    == other.critical_values
        })
    }
}

pub(crate) fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            let cv = if self.critical_values.contains(&i) {
                " *"
            } else {
                ""
            };
            writeln!(f, "{} -> {}{cv}", p, self.points[self.edges[i]])?;
        }
        Ok(())
    }
}

pub fn portrait(d: &PresentationDiagram) -> Result<Portrait> {
    let points = terminal_points(d)?;
    let edges = map_on_p(d)?;
    let basis = d.basis();
    let cv_classes = critical_value_classes(d);
    let mut critical_values = BTreeSet::new();
    for &class in &cv_classes {
        let push = d.push_for_class(class).ok_or_else(|| {
            Error::InternalInconsistency(format!("no push for corner class {class}"))
        })?;
        critical_values.insert(index_of(&points, &sphere_reduce(&push.terminal, &basis)?)?);
    }
    let mut postcritical = critical_values.clone();
    let mut frontier: Vec<usize> = postcritical.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        if postcritical.insert(edges[x]) {
            frontier.push(edges[x]);
        }
    }
    Ok(Portrait {
        points,
        edges,
        cv_classes,
        critical_values,
        postcritical,
    })
}

pub fn is_net(d: &PresentationDiagram) -> Result<bool> {
    Ok(portrait(d)?.is_net())
}
