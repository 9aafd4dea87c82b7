//! SVG 1.1 rendering of planar disk systems.

use std::fmt::Write;

use crate::aabb::AabbReport;
use crate::enumerate::CandidateSource;
use crate::geometry::{DiskSystem, Orientation};

const SIZE: f64 = 600.0;

/// Draws the disks, the retained poles and the minimal box. `system` must be
/// planar.
pub fn render_svg(system: &DiskSystem, report: &AabbReport) -> String {
    assert_eq!(system.dim(), 2, "plot requires a planar system");
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for d in system.iter() {
        for q in 0..2 {
            lo[q] = lo[q].min(d.center()[q] - d.radius());
            hi[q] = hi[q].max(d.center()[q] + d.radius());
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]) * 1.1;
    let mid = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    let s = SIZE / span;
    // World to screen, with y pointing up.
    let sx = |x: f64| (x - mid[0]) * s + SIZE / 2.0;
    let sy = |y: f64| SIZE / 2.0 - (y - mid[1]) * s;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (i, d) in system.iter().enumerate() {
        let _ = writeln!(
            out,
            r##"  <circle id="disk-{i}" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="#4a90d9" fill-opacity="0.15" stroke="#1f4e79" stroke-width="1.5"/>"##,
            sx(d.center()[0]),
            sy(d.center()[1]),
            d.radius() * s
        );
    }
    if let Some(b) = &report.bbox {
        let (x, y) = (b.interval(0), b.interval(1));
        let _ = writeln!(
            out,
            r##"  <rect id="aabb" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
            sx(x.lower),
            sy(y.upper),
            x.width().max(0.0) * s,
            y.width().max(0.0) * s
        );
    }
    for c in &report.retained {
        let color = match c.source {
            CandidateSource::Pole { orientation: Orientation::South, .. } => "#27ae60",
            CandidateSource::Pole { orientation: Orientation::North, .. } => "#8e44ad",
            CandidateSource::SinglePoint => "#000000",
        };
        let _ = writeln!(
            out,
            r#"  <circle class="pole" cx="{:.3}" cy="{:.3}" r="3" fill="{color}"/>"#,
            sx(c.point[0]),
            sy(c.point[1])
        );
    }
    out.push_str("</svg>\n");
    out
}
