//! SVG drawings of presentation diagrams: graph paper, the fundamental
//! domain, the six dots, the circled translation corner and every lift of
//! each push that runs inside `F₁`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::diagram::{neighbor_isometries, DotIndex, PresentationDiagram};
use crate::geometry::{clip_to_domain, segment_point, Isometry};
use crate::lattice::{IntVec2, RatVec2};

const GREEN: &str = "#1a9641";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    /// Pixels per unit of `ℤ²`; must be positive.
    pub cell: u32,
    /// Blank grid cells around the domain.
    pub margin: u32,
    pub grid: bool,
    /// Tag dots and pushes with `id` attributes named after their dots.
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            cell: 40,
            margin: 1,
            grid: true,
            labels: false,
        }
    }
}

/// Decimal with exactly three fractional digits, rounded half away from zero.
fn fixed3(r: &BigRational) -> String {
    let n = (r * BigRational::from_integer(1000.into()))
        .round()
        .to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let a = n.abs();
    let (int, frac) = (&a / 1000, &a % 1000);
    format!("{sign}{int}.{frac:0>3}")
}

struct View {
    xmin: BigInt,
    ymax: BigInt,
    cell: BigRational,
}

impl View {
    fn x(&self, x: &BigRational) -> String {
        fixed3(&((x - BigRational::from_integer(self.xmin.clone())) * &self.cell))
    }

    fn y(&self, y: &BigRational) -> String {
        fixed3(&((BigRational::from_integer(self.ymax.clone()) - y) * &self.cell))
    }

    fn point(&self, p: &RatVec2) -> (String, String) {
        (self.x(&p.x), self.y(&p.y))
    }
}

fn id_attr(labels: bool, prefix: &str, dot: DotIndex) -> String {
    if labels {
        format!(" id=\"{prefix}-{}\"", dot.token().replace('+', "-"))
    } else {
        String::new()
    }
}

/// Renders `d` as a standalone SVG document. Invalid diagrams are drawn as
/// given; a nonpositive basis determinant only suppresses the push lifts.
pub fn render_svg(d: &PresentationDiagram, opts: &RenderOptions) -> String {
    let basis = d.basis();
    let two = BigInt::from(2);
    let corners = [
        IntVec2::zero(),
        d.lambda1().scale(&two),
        &d.lambda1().scale(&two) + d.lambda2(),
        d.lambda2().clone(),
    ];
    let margin = BigInt::from(opts.margin);
    let min = |f: fn(&IntVec2) -> &BigInt| corners.iter().map(f).min().unwrap().clone();
    let max = |f: fn(&IntVec2) -> &BigInt| corners.iter().map(f).max().unwrap().clone();
    let (xmin, xmax) = (min(|v| &v.x) - &margin, max(|v| &v.x) + &margin);
    let (ymin, ymax) = (min(|v| &v.y) - &margin, max(|v| &v.y) + &margin);
    let cell = BigInt::from(opts.cell.max(1));
    let width = (&xmax - &xmin) * &cell;
    let height = (&ymax - &ymin) * &cell;
    let view = View {
        xmin: xmin.clone(),
        ymax: ymax.clone(),
        cell: BigRational::from_integer(cell.clone()),
    };
    let c = |k: u32| {
        fixed3(&BigRational::new(
            BigInt::from(opts.cell.max(1)) * k,
            100.into(),
        ))
    };

    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"{GREEN}\"/></marker></defs>"
    )
    .unwrap();

    if opts.grid {
        let (top, bottom) = (
            fixed3(&BigRational::zero()),
            fixed3(&BigRational::from_integer(height.clone())),
        );
        let (left, right) = (
            top.clone(),
            fixed3(&BigRational::from_integer(width.clone())),
        );
        let mut x = xmin.clone();
        while x <= xmax {
            let px = view.x(&BigRational::from_integer(x.clone()));
            writeln!(
                out,
                "<line class=\"grid\" x1=\"{px}\" y1=\"{top}\" x2=\"{px}\" y2=\"{bottom}\" stroke=\"#cccccc\" stroke-width=\"1\"/>"
            )
            .unwrap();
            x += 1;
        }
        let mut y = ymin.clone();
        while y <= ymax {
            let py = view.y(&BigRational::from_integer(y.clone()));
            writeln!(
                out,
                "<line class=\"grid\" x1=\"{left}\" y1=\"{py}\" x2=\"{right}\" y2=\"{py}\" stroke=\"#cccccc\" stroke-width=\"1\"/>"
            )
            .unwrap();
            y += 1;
        }
    }

    let path: Vec<String> = corners
        .iter()
        .map(|p| {
            let (x, y) = view.point(&p.to_rational());
            format!("{x} {y}")
        })
        .collect();
    writeln!(
        out,
        "<path class=\"domain\" d=\"M {} L {} L {} L {} Z\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>",
        path[0], path[1], path[2], path[3]
    )
    .unwrap();

    if let Ok(gammas) = neighbor_isometries(&basis) {
        for p in d.pushes() {
            let seg = p.segment(&basis);
            if seg.is_degenerate() {
                let (x, y) = view.point(&seg.start.to_rational());
                writeln!(
                    out,
                    "<circle class=\"push-point\"{} cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"{GREEN}\"/>",
                    id_attr(opts.labels, "push", p.initial),
                    c(20)
                )
                .unwrap();
                continue;
            }
            for g in &gammas {
                let lift = g.apply_segment(&seg);
                let Some((t0, t1)) = clip_to_domain(&lift, &basis) else {
                    continue;
                };
                if t0 >= t1 {
                    continue;
                }
                let (x1, y1) = view.point(&segment_point(&lift, &t0));
                let (x2, y2) = view.point(&segment_point(&lift, &t1));
                let arrow = if t1 == num_traits::One::one() {
                    " marker-end=\"url(#arrow)\""
                } else {
                    ""
                };
                let id = if g == &Isometry::identity() {
                    id_attr(opts.labels, "push", p.initial)
                } else {
                    String::new()
                };
                writeln!(
                    out,
                    "<line class=\"push\"{id} x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{GREEN}\" stroke-width=\"3\"{arrow}/>"
                )
                .unwrap();
            }
        }
    }

    for dot in DotIndex::ALL {
        let (x, y) = view.point(&dot.point(&basis).to_rational());
        writeln!(
            out,
            "<circle class=\"dot\"{} cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"#000000\"/>",
            id_attr(opts.labels, "dot", dot),
            c(12)
        )
        .unwrap();
    }

    let (x, y) = view.point(&d.translation().to_rational());
    writeln!(
        out,
        "<circle class=\"translate\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>",
        c(25)
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::GreenSegment;
    use crate::lattice::Parity;

    fn rabbit() -> PresentationDiagram {
        PresentationDiagram::new(
            IntVec2::new(0, -1),
            IntVec2::new(2, 1),
            Parity(0, 1),
            [
                GreenSegment::new(DotIndex::ORIGIN, IntVec2::new(1, 0)),
                GreenSegment::new(DotIndex::L1, IntVec2::new(1, -1)),
                GreenSegment::new(DotIndex::L2, IntVec2::new(2, 1)),
                GreenSegment::new(DotIndex::L1_L2, IntVec2::new(2, 0)),
            ],
        )
    }

    fn count(svg: &str, tag: &str, class: &str) -> usize {
        let doc = roxmltree::Document::parse(svg).expect("well-formed SVG");
        doc.descendants()
            .filter(|n| n.has_tag_name(tag) && n.attribute("class") == Some(class))
            .count()
    }

    #[test]
    fn fixed_point_format() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(fixed3(&r(1, 3)), "0.333");
        assert_eq!(fixed3(&r(-1, 3)), "-0.333");
        assert_eq!(fixed3(&r(2, 3)), "0.667");
        assert_eq!(fixed3(&r(-1, 10000)), "0.000");
        assert_eq!(fixed3(&r(40, 1)), "40.000");
    }

    #[test]
    fn rabbit_structure() {
        let svg = render_svg(&rabbit(), &RenderOptions::default());
        assert_eq!(count(&svg, "circle", "dot"), 6);
        assert_eq!(count(&svg, "circle", "translate"), 1);
        assert_eq!(count(&svg, "circle", "push-point"), 2);
        let green = count(&svg, "line", "push") + count(&svg, "circle", "push-point");
        assert!((4..=8).contains(&green), "{green}");
        assert_eq!(svg, render_svg(&rabbit(), &RenderOptions::default()));
    }

    #[test]
    fn degenerate_push_has_no_arrow() {
        let svg = render_svg(&rabbit(), &RenderOptions::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        for n in doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("push-point"))
        {
            assert!(n.attribute("marker-end").is_none());
        }
    }

    #[test]
    fn boundary_push_has_two_lifts() {
        // 0 → (1, 0) along the bottom edge of F₁ = [0,4] × [0,1]
        let d = PresentationDiagram::new(
            IntVec2::new(2, 0),
            IntVec2::new(0, 1),
            Parity(0, 0),
            [
                GreenSegment::new(DotIndex::ORIGIN, IntVec2::new(1, 0)),
                GreenSegment::new(DotIndex::L1, IntVec2::new(2, 0)),
                GreenSegment::new(DotIndex::L2, IntVec2::new(0, 1)),
                GreenSegment::new(DotIndex::L1_L2, IntVec2::new(2, 1)),
            ],
        );
        let svg = render_svg(&d, &RenderOptions::default());
        assert_eq!(count(&svg, "line", "push"), 2);
    }

    #[test]
    fn options_are_honoured() {
        let opts = RenderOptions {
            cell: 10,
            margin: 0,
            grid: false,
            labels: true,
        };
        let svg = render_svg(&rabbit(), &opts);
        assert_eq!(count(&svg, "line", "grid"), 0);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert!(doc
            .descendants()
            .any(|n| n.attribute("id") == Some("dot-l1-l2")));
        // F₁ spans x ∈ [0, 2] and y ∈ [-2, 1]
        assert_eq!(doc.root_element().attribute("width"), Some("20"));
        assert_eq!(doc.root_element().attribute("height"), Some("30"));
    }
}
