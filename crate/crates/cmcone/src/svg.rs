//! Deterministic SVG figures for Cohen-Macaulay cones.
//!
//! Two branches: the plane with the rank functional vertical and the
//! coordinate difference `q_1 - q_2` horizontal, where the cone is the
//! symmetric wedge between the rays through `(1, 1)` and `(-1, 1)`.
//! Three or more branches: the rank-one slice polytope, projected to the
//! plane by a fixed orthogonal basis of the rank-zero hyperplane.

use num_traits::{Signed, Zero};

use crate::cone::{cm_cone, cm_cone_subsets, ConeError};
use crate::grothendieck::class_of_structure_sheaf;
use crate::rational::Rational;

const SIZE: f64 = 420.0;
const MARGIN: f64 = 40.0;

/// Renders the cone figure for `m` branches as a standalone SVG
/// document. Output is byte-stable for fixed input and version.
pub fn cone_figure(m: usize) -> Result<String, ConeError> {
    match m {
        0 => Err(ConeError::ZeroDimension),
        1 => Ok(single_ray_figure()),
        2 => Ok(wedge_figure()),
        _ => slice_polygon_figure(m),
    }
}

fn document(body: &str, caption: &str) -> String {
    format!(
        concat!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n",
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{s}\" height=\"{s}\" ",
            "viewBox=\"0 0 {s} {s}\">\n",
            "  <rect width=\"{s}\" height=\"{s}\" fill=\"white\"/>\n",
            "{body}",
            "  <text x=\"{cx}\" y=\"{cap_y}\" text-anchor=\"middle\" ",
            "font-family=\"serif\" font-size=\"14\">{caption}</text>\n",
            "</svg>\n"
        ),
        s = fmt(SIZE),
        body = body,
        cx = fmt(SIZE / 2.0),
        cap_y = fmt(SIZE - 10.0),
        caption = caption,
    )
}

fn fmt(v: f64) -> String {
    // fixed-point formatting keeps the output byte-stable
    format!("{v:.2}")
}

/// One vertical ray: the cone of a single branch is the ray through the
/// structure sheaf class.
fn single_ray_figure() -> String {
    let cx = SIZE / 2.0;
    let oy = SIZE - 2.0 * MARGIN;
    let top = MARGIN;
    let mut body = String::new();
    body.push_str(&format!(
        "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" stroke-width=\"1\"/>\n",
        fmt(MARGIN), fmt(oy), fmt(SIZE - MARGIN), fmt(oy)
    ));
    body.push_str(&format!(
        "  <line class=\"ray\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"2\"/>\n",
        fmt(cx), fmt(oy), fmt(cx), fmt(top)
    ));
    body.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"serif\" font-size=\"13\">[R##]</text>\n",
        fmt(cx + 8.0), fmt(top + 12.0)
    ));
    document(&body, "Cohen-Macaulay cone, one branch")
}

/// The two-branch wedge: rays land at `(1, 1)` and `(-1, 1)` in
/// `(q_1 - q_2, rank)` coordinates, so the region is symmetric about the
/// vertical rank axis.
fn wedge_figure() -> String {
    let ox = SIZE / 2.0;
    let oy = SIZE - 2.0 * MARGIN;
    let reach = SIZE / 2.0 - MARGIN;
    // wedge polygon: origin, ray endpoints, closed along the top
    let (rx, ry) = (ox + reach, oy - reach);
    let (lx, ly) = (ox - reach, oy - reach);
    let mut body = String::new();
    body.push_str(&format!(
        "  <path class=\"wedge\" d=\"M {} {} L {} {} L {} {} Z\" fill=\"lightsteelblue\" fill-opacity=\"0.6\"/>\n",
        fmt(ox), fmt(oy), fmt(rx), fmt(ry), fmt(lx), fmt(ly)
    ));
    // axes: horizontal difference coordinate, vertical rank
    body.push_str(&format!(
        "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" stroke-width=\"1\"/>\n",
        fmt(MARGIN), fmt(oy), fmt(SIZE - MARGIN), fmt(oy)
    ));
    body.push_str(&format!(
        "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n",
        fmt(ox), fmt(oy), fmt(ox), fmt(MARGIN)
    ));
    for (x2, y2, label, anchor) in [
        (rx, ry, "I_{1}", "start"),
        (lx, ly, "I_{2}", "end"),
    ] {
        body.push_str(&format!(
            "  <line class=\"ray\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"steelblue\" stroke-width=\"2\"/>\n",
            fmt(ox), fmt(oy), fmt(x2), fmt(y2)
        ));
        body.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"{}\" font-family=\"serif\" font-size=\"13\">{}</text>\n",
            fmt(x2), fmt(y2 - 6.0), anchor, label
        ));
    }
    body.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"serif\" font-size=\"12\">q1 - q2</text>\n",
        fmt(SIZE - MARGIN), fmt(oy + 16.0)
    ));
    body.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"serif\" font-size=\"12\">rank</text>\n",
        fmt(ox + 6.0), fmt(MARGIN + 4.0)
    ));
    document(&body, "Cohen-Macaulay cone, two branches")
}

/// Rank-one slice polytope for `m >= 3` branches, projected by a fixed
/// orthogonal basis of the rank-zero hyperplane centered at `[R##]`.
fn slice_polygon_figure(m: usize) -> Result<String, ConeError> {
    let cone = cm_cone(m)?;
    let center = class_of_structure_sheaf(m).expect("m >= 1");
    // fixed orthogonal pair in the hyperplane { sum = 0 }
    let mut u1 = vec![Rational::zero(); m];
    u1[0] = Rational::from_integer(1.into());
    u1[1] = Rational::from_integer((-1).into());
    let mut u2 = vec![Rational::from_integer(1.into()); 2];
    u2.push(Rational::from_integer((-2).into()));
    u2.resize(m, Rational::zero());

    let subsets = cm_cone_subsets(m);
    let mut points: Vec<(f64, f64, String)> = Vec::new();
    for (g, subset) in cone.generators().iter().zip(&subsets) {
        let rank: Rational = g.iter().sum();
        let v: Vec<Rational> = g
            .iter()
            .zip(center.coords())
            .map(|(c, ct)| &(c / &rank) - ct)
            .collect();
        let px = project(&v, &u1);
        let py = project(&v, &u2);
        points.push((px, py, subset.to_string()));
    }

    let max_abs = points
        .iter()
        .flat_map(|(x, y, _)| [x.abs(), y.abs()])
        .fold(1e-9, f64::max);
    let scale = (SIZE / 2.0 - 2.0 * MARGIN) / max_abs;
    let to_screen = |x: f64, y: f64| -> (f64, f64) {
        (SIZE / 2.0 + x * scale, SIZE / 2.0 - 20.0 - y * scale)
    };

    let hull = convex_hull(
        &points
            .iter()
            .map(|(x, y, _)| (*x, *y))
            .collect::<Vec<_>>(),
    );
    let mut body = String::new();
    if hull.len() >= 3 {
        let mut d = String::new();
        for (i, &(x, y)) in hull.iter().enumerate() {
            let (sx, sy) = to_screen(x, y);
            d.push_str(if i == 0 { "M " } else { "L " });
            d.push_str(&format!("{} {} ", fmt(sx), fmt(sy)));
        }
        d.push('Z');
        body.push_str(&format!(
            "  <path class=\"slice\" d=\"{d}\" fill=\"lightsteelblue\" fill-opacity=\"0.6\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n"
        ));
    }
    for (x, y, label) in &points {
        let (sx, sy) = to_screen(*x, *y);
        body.push_str(&format!(
            "  <circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"midnightblue\"/>\n",
            fmt(sx), fmt(sy)
        ));
        body.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"serif\" font-size=\"11\">{}</text>\n",
            fmt(sx + 5.0), fmt(sy - 4.0), label
        ));
    }
    Ok(document(
        &body,
        &format!("rank-one slice of the Cohen-Macaulay cone, m = {m}"),
    ))
}

fn project(v: &[Rational], basis: &[Rational]) -> f64 {
    let dot: Rational = v.iter().zip(basis).map(|(a, b)| a * b).sum();
    let norm: Rational = basis.iter().map(|b| b * b).sum();
    rational_to_f64(&dot) / rational_to_f64(&norm).sqrt()
}

fn rational_to_f64(r: &Rational) -> f64 {
    let num = r.numer().to_string().parse::<f64>().unwrap_or(0.0);
    let den = r.denom().to_string().parse::<f64>().unwrap_or(1.0);
    num / den
}

/// Monotone-chain convex hull, counterclockwise.
fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| -> f64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_structure() {
        let svg = cone_figure(2).unwrap();
        assert!(svg.starts_with("<?xml version=\"1.0\""));
        assert_eq!(svg.matches("class=\"ray\"").count(), 2);
        assert_eq!(svg.matches("class=\"wedge\"").count(), 1);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn wedge_is_symmetric_about_the_rank_axis() {
        let svg = cone_figure(2).unwrap();
        // the wedge path runs origin -> right tip -> left tip; the tips
        // mirror each other around the center line
        let d_start = svg.find("class=\"wedge\" d=\"M ").unwrap();
        let d = &svg[d_start + 18..svg[d_start..].find("Z").unwrap() + d_start];
        let nums: Vec<f64> = d
            .split(|c: char| !c.is_ascii_digit() && c != '.' && c != '-')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().unwrap())
            .collect();
        let (ox, right_x, right_y, left_x, left_y) = (nums[0], nums[2], nums[3], nums[4], nums[5]);
        assert_eq!(right_y, left_y);
        assert!((right_x - ox - (ox - left_x)).abs() < 1e-9);
    }

    #[test]
    fn hexagonal_slice_for_three_branches() {
        let svg = cone_figure(3).unwrap();
        assert_eq!(svg.matches("class=\"vertex\"").count(), 6);
        assert_eq!(svg.matches("class=\"slice\"").count(), 1);
        // hexagon: six path segments (M + 5 L)
        let d_start = svg.find("class=\"slice\" d=\"").unwrap();
        let d = &svg[d_start..d_start + svg[d_start..].find("Z").unwrap()];
        assert_eq!(d.matches("L ").count(), 5);
    }

    #[test]
    fn byte_stable() {
        assert_eq!(cone_figure(2).unwrap(), cone_figure(2).unwrap());
        assert_eq!(cone_figure(4).unwrap(), cone_figure(4).unwrap());
    }

    #[test]
    fn one_branch_figure() {
        let svg = cone_figure(1).unwrap();
        assert_eq!(svg.matches("class=\"ray\"").count(), 1);
    }
}
