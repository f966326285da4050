//! SVG drawing of a polygon and its triangle.

use std::fmt::Write;

/// One path for the polygon and one for the triangle, y pointing up.
pub fn render(polygon: &[[f64; 2]], triangle: &[[f64; 2]]) -> String {
    let all = || polygon.iter().chain(triangle);
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &[x, y] in all() {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let margin = 0.05 * span;
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = 0.004 * span;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - margin,
        -(y1 + margin),
        w,
        h
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)">"#);
    let _ = writeln!(
        out,
        r#"<path class="triangle" d="{}" fill="none" stroke="crimson" stroke-width="{stroke}"/>"#,
        path_data(triangle)
    );
    let _ = writeln!(
        out,
        r##"<path class="polygon" d="{}" fill="#9ecae1" stroke="#08519c" stroke-width="{stroke}"/>"##,
        path_data(polygon)
    );
    out.push_str("</g>\n</svg>\n");
    out
}

fn path_data(pts: &[[f64; 2]]) -> String {
    let mut d = String::new();
    for (i, [x, y]) in pts.iter().enumerate() {
        let _ = write!(d, "{}{x} {y} ", if i == 0 { "M" } else { "L" });
    }
    d.push('Z');
    d
}

/// Vertex lists of the `polygon` and `triangle` paths in a rendered file.
pub fn paths(svg: &str) -> Vec<(String, Vec<[f64; 2]>)> {
    let mut out = Vec::new();
    for line in svg.lines().filter(|l| l.trim_start().starts_with("<path")) {
        let attr = |name: &str| {
            let key = format!("{name}=\"");
            line.find(&key).map(|i| {
                let rest = &line[i + key.len()..];
                rest[..rest.find('"').unwrap_or(rest.len())].to_string()
            })
        };
        let class = attr("class").unwrap_or_default();
        let d = attr("d").unwrap_or_default();
        let nums: Vec<f64> = d
            .split(|c: char| c == 'M' || c == 'L' || c == 'Z' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .filter_map(|s| s.parse().ok())
            .collect();
        out.push((class, nums.chunks_exact(2).map(|c| [c[0], c[1]]).collect()));
    }
    out
}
