//! Static SVG rendering of a configuration: the domain arcs on a
//! circle, labeled by letter and occurrence, with the cycle of each
//! generator drawn as chords. The only module that uses floating point;
//! everything here is presentation.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::config::{arc_cycle, ArcId, Configuration};

const SIZE: f64 = 500.0;
const CX: f64 = 250.0;
const CY: f64 = 250.0;
const R: f64 = 200.0;

const PALETTE: [&str; 6] = [
    "#c0392b", "#2471a3", "#1e8449", "#b7950b", "#884ea0", "#17a589",
];

/// Point on the drawing circle at circle coordinate `t` in `[0,1)`,
/// measured counterclockwise from the positive x-axis.
fn point(t: f64, radius: f64) -> (f64, f64) {
    let theta = TAU * t;
    (CX + radius * theta.cos(), CY - radius * theta.sin())
}

/// Deterministic SVG diagram of the configuration.
pub fn render_svg(cfg: &Configuration) -> String {
    let m = cfg.arc_count();
    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r##"  <circle cx="{CX}" cy="{CY}" r="{R}" fill="none" stroke="#d5d8dc" stroke-width="2"/>"##
    )
    .unwrap();

    // Domain arcs: the middle third of each sector, as in the standard
    // realization layout.
    for j in 0..m {
        let letter = cfg.letter_at(ArcId(j));
        let color = PALETTE[letter.gen_index() % PALETTE.len()];
        let t0 = (3 * j + 1) as f64 / (3 * m) as f64;
        let t1 = (3 * j + 2) as f64 / (3 * m) as f64;
        let (x0, y0) = point(t0, R);
        let (x1, y1) = point(t1, R);
        // Counterclockwise in circle coordinates is sweep flag 0 in
        // SVG's y-down frame.
        writeln!(
            svg,
            r#"  <path d="M {x0:.4} {y0:.4} A {R} {R} 0 0 0 {x1:.4} {y1:.4}" fill="none" stroke="{color}" stroke-width="10" stroke-linecap="round"/>"#
        )
        .unwrap();
        let (lx, ly) = point((t0 + t1) / 2.0, R + 26.0);
        writeln!(
            svg,
            r#"  <text x="{lx:.4}" y="{ly:.4}" font-family="monospace" font-size="20" fill="{color}" text-anchor="middle" dominant-baseline="middle">{}{}</text>"#,
            letter.to_char(),
            cfg.occurrence_index(j)
        )
        .unwrap();
    }

    // One closed chord path per generator cycle.
    for g in 0..cfg.rank() {
        let color = PALETTE[g % PALETTE.len()];
        let cycle = arc_cycle(cfg, g);
        let mut d = String::new();
        for (step, arc) in cycle.vertices.iter().enumerate() {
            let t = (2 * arc.0 + 1) as f64 / (2 * m) as f64;
            let (x, y) = point(t, R - 14.0);
            write!(d, "{} {x:.4} {y:.4} ", if step == 0 { "M" } else { "L" }).unwrap();
        }
        writeln!(
            svg,
            r#"  <path d="{}Z" fill="none" stroke="{color}" stroke-width="1.5" stroke-dasharray="6 4" opacity="0.8"/>"#,
            d
        )
        .unwrap();
    }

    writeln!(svg, "</svg>").unwrap();
    svg
}
