//! Deterministic SVG rendering of designs with optional symmetry overlays.
//!
//! Styling follows the drawing conventions used throughout: mirrors are solid
//! lines, axes of side-reversing (τ) glide-reflection are filled dashed
//! lines, axes of side-preserving glide-reflection are hollow dashed lines,
//! and a mirror that also carries a side-preserving glide gets its hollow
//! dashes filled. Thin grey lines outline lattice units.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::design::Design;
use crate::isometry::{AxisSlope, Side};
use crate::species::{GroupSpec, LatticeUnit, UnitShape};

/// Overlay toggles.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overlays {
    pub mirrors: bool,
    pub glide_axes: bool,
    pub g1_unit: bool,
    pub h1_unit: bool,
}

impl Overlays {
    pub fn all() -> Self {
        Overlays {
            mirrors: true,
            glide_axes: true,
            g1_unit: true,
            h1_unit: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Palette {
    pub dark: String,
    pub pale: String,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            dark: "#1a1a1a".into(),
            pale: "#f2ead9".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub cell_px: u32,
    pub overlays: Overlays,
    pub palette: Palette,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            cell_px: 20,
            overlays: Overlays::default(),
            palette: Palette::default(),
        }
    }
}

#[derive(Clone, Copy, Default)]
struct LineFlags {
    mirror: bool,
    glide_tau: bool,
    glide_e: bool,
}

/// Renders the design as an SVG document. With a group, the requested
/// overlays draw its diagonal axes and lattice units.
pub fn render_svg(d: &Design, group: Option<&GroupSpec>, spec: &RenderSpec) -> String {
    let n = d.size();
    let px = spec.cell_px as i64;
    let side = n as i64 * px;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{side}" viewBox="0 0 {side} {side}">"#
    );
    let _ = writeln!(
        svg,
        r#"  <rect x="0" y="0" width="{side}" height="{side}" fill="{}"/>"#,
        spec.palette.pale
    );
    for y in (0..n).rev() {
        for x in 0..n {
            if d.color(x as i64, y as i64) {
                let sx = x as i64 * px;
                let sy = (n - 1 - y) as i64 * px;
                let _ = writeln!(
                    svg,
                    r#"  <rect x="{sx}" y="{sy}" width="{px}" height="{px}" fill="{}"/>"#,
                    spec.palette.dark
                );
            }
        }
    }

    if let Some(g) = group {
        if spec.overlays.g1_unit {
            draw_unit(&mut svg, &g.g1_unit, n, px, "#7a7a7a", 1.5);
        }
        if spec.overlays.h1_unit {
            draw_unit(&mut svg, &g.h1_unit, n, px, "#b0b0b0", 1.0);
        }
        if spec.overlays.mirrors || spec.overlays.glide_axes {
            draw_axes(&mut svg, d, g, spec, n, px);
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// Census of the group's diagonal axis lines: offset (in quarter units,
/// modulo the repeat period) to the kinds of operations on the line.
fn line_table(g: &GroupSpec) -> (i64, HashMap<i64, LineFlags>) {
    let basis = g.lattice.basis();
    let along = [
        (basis[0].1 - basis[0].0, basis[0].0 + basis[0].1),
        (basis[1].1 - basis[1].0, basis[1].0 + basis[1].1),
    ];
    let m = crate::isometry::Lattice::new(along[0], along[1]);
    let q0 = m.min_period_x();
    let a = m.min_period_y();
    let g_step = gcd(along[0].0.abs(), along[1].0.abs());

    let mut lines: HashMap<i64, LineFlags> = HashMap::new();
    for op in crate::enumeration::group_cosets(g) {
        let class = op.classify();
        if class.axis_slope != Some(AxisSlope::Plus) {
            continue;
        }
        let c_r = (op.shift.y - op.shift.x) / 2;
        let k_r = (op.shift.x + op.shift.y) / 2;
        let mut j = 0;
        while g_step * j < q0 {
            let target = g_step * j;
            if let Some(dk) = solve_increment(&along, target) {
                let k = k_r + dk;
                let offset = (c_r + target).rem_euclid(q0);
                let entry = lines.entry(offset).or_default();
                if k.rem_euclid(a) == 0 {
                    entry.mirror |= op.side == Side::Tau;
                    // A side-preserving op with zero glide would be the
                    // identity; treat it as a glide line anyway.
                    entry.glide_e |= op.side == Side::E;
                } else if op.side == Side::Tau {
                    entry.glide_tau = true;
                } else {
                    entry.glide_e = true;
                }
            }
            j += 1;
        }
    }
    (q0, lines)
}

fn draw_axes(svg: &mut String, _d: &Design, g: &GroupSpec, spec: &RenderSpec, n: usize, px: i64) {
    let (q0, lines) = line_table(g);
    let span = 2 * n as i64; // box size in quarter units
    let scale = px as f64 / 2.0;
    let mut offsets: Vec<(i64, LineFlags)> = Vec::new();
    let mut c = -span;
    while c <= span {
        if let Some(f) = lines.get(&c.rem_euclid(q0)) {
            offsets.push((c, *f));
        }
        c += 1;
    }
    for (c, flags) in offsets {
        // Clip y = x + c against the box [0, span]^2 in quarter units.
        let x0 = 0.max(-c);
        let x1 = span.min(span - c);
        if x0 >= x1 {
            continue;
        }
        let (y0, y1) = (x0 + c, x1 + c);
        let to = |qx: i64, qy: i64| -> (f64, f64) {
            (qx as f64 * scale, (span - qy) as f64 * scale)
        };
        let (ax, ay) = to(x0, y0);
        let (bx, by) = to(x1, y1);
        let line = |svg: &mut String, stroke: &str, width: f64, dash: &str| {
            let dash_attr = if dash.is_empty() {
                String::new()
            } else {
                format!(r#" stroke-dasharray="{dash}""#)
            };
            let _ = writeln!(
                svg,
                r#"  <line x1="{ax:.1}" y1="{ay:.1}" x2="{bx:.1}" y2="{by:.1}" stroke="{stroke}" stroke-width="{width:.1}"{dash_attr}/>"#
            );
        };
        if flags.mirror && spec.overlays.mirrors {
            line(svg, "#000000", 2.0, "");
            if flags.glide_e && spec.overlays.glide_axes {
                // Mirror doubling as a side-preserving glide axis: filled
                // dashes over the solid line.
                line(svg, "#ffffff", 0.8, "6,6");
            }
        } else if spec.overlays.glide_axes {
            if flags.glide_tau {
                line(svg, "#000000", 2.0, "6,6");
            } else if flags.glide_e {
                // Hollow dashes: a wide dashed line with its core knocked out.
                line(svg, "#000000", 2.4, "6,6");
                line(svg, "#ffffff", 1.2, "6,6");
            }
        }
    }
}

fn draw_unit(svg: &mut String, unit: &LatticeUnit, n: usize, px: i64, stroke: &str, width: f64) {
    let span = 2 * n as i64;
    let scale = px as f64 / 2.0;
    let to = |qx: i64, qy: i64| -> String {
        format!("{:.1},{:.1}", qx as f64 * scale, (span - qy) as f64 * scale)
    };
    let l = unit.length_delta as i64;
    let w = unit.width_delta as i64;
    let (ax, ay) = unit.anchor;
    let pts = match unit.shape {
        UnitShape::Rectangular => [
            to(ax, ay),
            to(ax + 2 * l, ay + 2 * l),
            to(ax + 2 * l + 2 * w, ay + 2 * l - 2 * w),
            to(ax + 2 * w, ay - 2 * w),
        ],
        UnitShape::Rhombic => [
            to(ax, ay),
            to(ax + l + w, ay + l - w),
            to(ax + 2 * l, ay + 2 * l),
            to(ax + l - w, ay + l + w),
        ],
    };
    let _ = writeln!(
        svg,
        r#"  <polygon points="{}" fill="none" stroke="{stroke}" stroke-width="{width:.1}"/>"#,
        pts.join(" ")
    );
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn solve_increment(along: &[(i64, i64); 2], target: i64) -> Option<i64> {
    let (a1, k1) = along[0];
    let (a2, k2) = along[1];
    let (g, x, y) = ext_gcd(a1, a2);
    if g == 0 {
        return if target == 0 { Some(0) } else { None };
    }
    if target % g != 0 {
        return None;
    }
    let f = target / g;
    Some(f * (x * k1 + y * k2))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_weave_render_has_two_dark_cells() {
        let svg = render_svg(&Design::plain_weave(), None, &RenderSpec::default());
        assert!(svg.contains(r#"width="40" height="40""#));
        let dark = RenderSpec::default().palette.dark;
        let count = svg.matches(&format!(r#"fill="{dark}""#)).count();
        assert_eq!(count, 2);
    }

    #[test]
    fn render_is_deterministic() {
        let d = Design::from_rows(&["1101", "0010", "1110", "0001"]);
        let spec = RenderSpec {
            overlays: Overlays::all(),
            ..RenderSpec::default()
        };
        let g = crate::species::group_for(crate::species::SpeciesParams::new(
            crate::species::SpeciesTag::S1m,
            2,
            3,
        ))
        .unwrap();
        let a = render_svg(&d, Some(&g), &spec);
        let b = render_svg(&d, Some(&g), &spec);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
    }

    #[test]
    fn mirror_species_renders_solid_axes() {
        let g = crate::species::group_for(crate::species::SpeciesParams::new(
            crate::species::SpeciesTag::S5e,
            2,
            3,
        ))
        .unwrap();
        let d = Design::trivial(12, false);
        let spec = RenderSpec {
            overlays: Overlays::all(),
            ..RenderSpec::default()
        };
        let svg = render_svg(&d, Some(&g), &spec);
        assert!(svg.contains("<line"));
    }
}
