use std::fmt::Write;

use wittmod::exact::Rational;
use wittmod::tensormod::{TensorModule, Window};

pub const CELL: i64 = 24;

/// `(absolute weight, dim)` over the nonzero weight spaces of the window.
pub fn rows(f: &TensorModule, window: &Window) -> Vec<(Vec<Rational>, Vec<i64>, usize)> {
    window
        .weights()
        .map(|nu| (f.absolute_weight(nu), nu.clone(), window.basis(nu).len()))
        .collect()
}

pub fn csv(n: usize, rows: &[(Vec<Rational>, Vec<i64>, usize)]) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    let _ = writeln!(out, "{},dim", header.join(","));
    for (w, _, d) in rows {
        let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{},{d}", parts.join(","));
    }
    out
}

/// Lattice diagram of an `n = 2` window: one cell per offset, origin lower-left.
pub fn svg(f: &TensorModule, window: &Window) -> String {
    let b = window.bbox();
    let (x0, y0) = (b.center[0] - b.radius, b.center[1] - b.radius);
    let side = 2 * b.radius + 1;
    let max = window.max_dim().max(1);
    let pad = 48;
    let legend = 24 * (max as i64 + 1) + 16;
    let (w, h) = (pad + side * CELL + 16 + legend, pad + side * CELL + 32);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="monospace" font-size="10">"#
    );
    let shade = |d: usize| 255 - (d * 200 / max) as i64;
    for nu in b.points() {
        let d = window.basis(&nu).len();
        let (cx, cy) = (
            pad + (nu[0] - x0) * CELL,
            16 + (side - 1 - (nu[1] - y0)) * CELL,
        );
        let g = if d == 0 { 255 } else { shade(d) };
        let _ = writeln!(
            s,
            r##"<rect x="{cx}" y="{cy}" width="{CELL}" height="{CELL}" fill="rgb({g},{g},{g})" stroke="#ccc"/>"##
        );
    }
    for i in 0..side {
        let wx = f.absolute_weight(&[x0 + i, y0])[0].clone();
        let wy = f.absolute_weight(&[x0, y0 + i])[1].clone();
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{wx}</text>"#,
            pad + i * CELL + CELL / 2,
            16 + side * CELL + 14
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{wy}</text>"#,
            pad - 4,
            16 + (side - 1 - i) * CELL + CELL / 2 + 4
        );
    }
    let lx = pad + side * CELL + 16;
    for d in 0..=max {
        let g = if d == 0 { 255 } else { shade(d) };
        let ly = 16 + d as i64 * CELL;
        let _ = writeln!(
            s,
            r##"<rect x="{lx}" y="{ly}" width="{CELL}" height="{CELL}" fill="rgb({g},{g},{g})" stroke="#ccc"/>"##
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">dim {d}</text>"#,
            lx + CELL + 4,
            ly + CELL / 2 + 4
        );
    }
    s.push_str("</svg>\n");
    s
}
