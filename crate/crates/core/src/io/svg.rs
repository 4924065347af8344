//! Deterministic SVG frames: the grey container box, black arm segments, and
//! field circles drawn at true radius times the canvas scale. A bonded
//! red-blue circle is drawn as two half-disks, the red half facing the codon
//! with the red arm. Identical states render to identical bytes.

use crate::config::Params;
use crate::model::{
    field_radius, tip_position, CodonState, CodonType, FieldSlot,
};
use crate::vec2::Vec2;
use std::fmt::Write;

pub const COLOR_RED: &str = "#CC0000";
pub const COLOR_BLUE: &str = "#0000CC";
pub const COLOR_GREEN: &str = "#00AA00";
pub const COLOR_PURPLE: &str = "#8800CC";
pub const COLOR_YELLOW: &str = "#DDBB00";
pub const COLOR_CONTAINER: &str = "#888888";

#[derive(Clone, Copy, Debug)]
pub struct RenderSpec {
    /// Pixels per length unit.
    pub scale: f64,
    /// Padding around the container, in length units (fields can extend past
    /// the walls because only codon middles are confined).
    pub margin: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { scale: 6.0, margin: 12.0 }
    }
}

struct Canvas {
    scale: f64,
    margin: f64,
    world_h: f64,
}

impl Canvas {
    fn map(&self, p: Vec2) -> (f64, f64) {
        (
            (p.x + self.margin) * self.scale,
            (self.world_h + self.margin - p.y) * self.scale,
        )
    }
}

fn slot_color(slot: FieldSlot, ty: CodonType) -> &'static str {
    match slot {
        FieldSlot::Red => COLOR_RED,
        FieldSlot::Blue => COLOR_BLUE,
        FieldSlot::Vertical => match ty {
            CodonType::Type0 => COLOR_PURPLE,
            CodonType::Type1 => COLOR_GREEN,
        },
        FieldSlot::Yellow => COLOR_YELLOW,
    }
}

/// Render one frame. Elements appear in canonical order: container first,
/// then per codon (ascending id) its three arms and its four field circles.
pub fn render_svg(codons: &[(CodonType, CodonState)], p: &Params, spec: &RenderSpec) -> String {
    let canvas = Canvas {
        scale: spec.scale,
        margin: spec.margin,
        world_h: p.container_height,
    };
    let width = (p.container_width + 2.0 * spec.margin) * spec.scale;
    let height = (p.container_height + 2.0 * spec.margin) * spec.scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.3}\" height=\"{height:.3}\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    );
    let (bx, by) = canvas.map(Vec2::new(0.0, p.container_height));
    let _ = writeln!(
        out,
        "  <rect x=\"{bx:.3}\" y=\"{by:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"none\" stroke=\"{COLOR_CONTAINER}\" stroke-width=\"1.5\"/>",
        p.container_width * spec.scale,
        p.container_height * spec.scale,
    );

    for (i, (ty, st)) in codons.iter().enumerate() {
        let _ = writeln!(out, "  <g id=\"codon{i}\">");
        // Arms: vertical, red, blue.
        for slot in [FieldSlot::Vertical, FieldSlot::Red, FieldSlot::Blue] {
            let (x1, y1) = canvas.map(st.position);
            let (x2, y2) = canvas.map(tip_position(st, *ty, slot, p));
            let _ = writeln!(
                out,
                "    <line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"black\" stroke-width=\"0.8\"/>"
            );
        }
        // Field circles.
        for slot in FieldSlot::ALL {
            let center = tip_position(st, *ty, slot, p);
            let radius = field_radius(st.field_size.get(slot), slot, p);
            let bonded_horizontal = matches!(slot, FieldSlot::Red | FieldSlot::Blue)
                && st.bond(slot).is_some();
            if bonded_horizontal {
                let partner = st.bond(slot).expect("bonded");
                let toward_self = st.position - codons[partner.index()].1.position;
                let axis = if toward_self.length_squared() > 1e-24 {
                    toward_self * (1.0 / toward_self.length())
                } else {
                    Vec2::new(1.0, 0.0)
                };
                // The half facing this codon takes this arm's color; the
                // other half takes the partner arm's color.
                let (self_color, other_color) = match slot {
                    FieldSlot::Red => (COLOR_RED, COLOR_BLUE),
                    _ => (COLOR_BLUE, COLOR_RED),
                };
                half_disk(&mut out, &canvas, center, radius, axis, self_color);
                half_disk(&mut out, &canvas, center, radius, -axis, other_color);
            } else {
                let (cx, cy) = canvas.map(center);
                let _ = writeln!(
                    out,
                    "    <circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{:.3}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"{}\" stroke-width=\"0.4\"/>",
                    radius * spec.scale,
                    slot_color(slot, *ty),
                    slot_color(slot, *ty),
                );
            }
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    out
}

/// Half-disk on the `side` of the circle center, where `side` is a world
/// unit vector.
fn half_disk(out: &mut String, canvas: &Canvas, center: Vec2, radius: f64, side: Vec2, color: &str) {
    let p1 = canvas.map(center + side.perp() * radius);
    let p2 = canvas.map(center - side.perp() * radius);
    let r = radius * canvas.scale;
    let _ = writeln!(
        out,
        "    <path d=\"M {:.3} {:.3} A {r:.3} {r:.3} 0 0 1 {:.3} {:.3} Z\" fill=\"{color}\" fill-opacity=\"0.35\" stroke=\"{color}\" stroke-width=\"0.4\"/>",
        p1.0, p1.1, p2.0, p2.1,
    );
}
