//! SVG pictures of tilings, with the non-intersecting paths drawn on top.

use std::fmt::Write;

use pade_tilings::regions::paths::PathKind;
use pade_tilings::regions::{
    classify_domino, DominoClass, DominoTiling, LozengeKind, LozengeTiling, PathSystem, Tiling,
};

const SCALE: f64 = 20.0;
const MARGIN: f64 = 10.0;

pub fn domino_color(class: DominoClass) -> &'static str {
    match class {
        DominoClass::North => "red",
        DominoClass::South => "yellow",
        DominoClass::East => "green",
        DominoClass::West => "blue",
    }
}

pub fn lozenge_color(kind: LozengeKind) -> &'static str {
    match kind {
        LozengeKind::A => "#4477aa",
        LozengeKind::B => "#ddcc77",
        LozengeKind::C => "#cc6677",
    }
}

/// Renders a tiling; `paths`, when given, must come from the same tiling.
pub fn render_svg(tiling: &Tiling, paths: Option<&PathSystem>) -> String {
    match tiling {
        Tiling::Domino(t) => render_dominoes(t, paths),
        Tiling::Lozenge(t) => render_lozenges(t, paths),
    }
}

struct Canvas {
    body: String,
    min: (f64, f64),
    max: (f64, f64),
}

impl Canvas {
    fn new(min: (f64, f64), max: (f64, f64)) -> Self {
        Canvas { body: String::new(), min, max }
    }

    /// Lattice point to pixel, with `y` pointing up.
    fn px(&self, p: (f64, f64)) -> (f64, f64) {
        (MARGIN + (p.0 - self.min.0) * SCALE, MARGIN + (self.max.1 - p.1) * SCALE)
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, class: &str) {
        let pts: Vec<String> = pts.iter().map(|&p| self.px(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon class="{class}" points="{}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#,
            pts.join(" ")
        );
    }

    fn rect(&mut self, lo: (f64, f64), hi: (f64, f64), fill: &str, class: &str) {
        let (x, y) = self.px((lo.0, hi.1));
        let (w, h) = ((hi.0 - lo.0) * SCALE, (hi.1 - lo.1) * SCALE);
        let _ = writeln!(
            self.body,
            r#"<rect class="{class}" x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)]) {
        let pts: Vec<String> = pts.iter().map(|&p| self.px(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polyline class="path" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            pts.join(" ")
        );
    }

    fn finish(self) -> String {
        let w = (self.max.0 - self.min.0) * SCALE + 2.0 * MARGIN;
        let h = (self.max.1 - self.min.1) * SCALE + 2.0 * MARGIN;
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.2} {h:.2}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn render_dominoes(t: &DominoTiling, paths: Option<&PathSystem>) -> String {
    let n = t.n as f64;
    let mut canvas = Canvas::new((-n - 1.0, -n - 1.0), (n + 1.0, n + 1.0));
    for d in &t.dominoes {
        let class = classify_domino(d, t.n);
        let lo = (d.a.0 as f64, d.a.1 as f64);
        let hi = (d.b.0 as f64 + 1.0, d.b.1 as f64 + 1.0);
        canvas.rect(lo, hi, domino_color(class), &class.letter().to_string());
    }
    if let Some(ps) = paths {
        for (j, path) in ps.paths.iter().enumerate() {
            // Path `j` leaves the diamond at (2N-2j, -j); the rest is padding.
            // Odd `α` marks the middle of a two-step segment.
            let exit = (2 * t.n - 2 * j as i64, -(j as i64));
            let mut pts = Vec::new();
            for &(al, be) in path {
                if al % 2 != 0 {
                    continue;
                }
                pts.push(((al - be - t.n) as f64, be as f64 - 0.5));
                if (al, be) == exit {
                    break;
                }
            }
            canvas.polyline(&pts);
        }
    }
    canvas.finish()
}

/// Shears the lattice so that all three lozenges have equal sides.
fn hex_point(x: i64, y: f64) -> (f64, f64) {
    (x as f64 * 3f64.sqrt() / 2.0, y - x as f64 / 2.0)
}

fn render_lozenges(t: &LozengeTiling, paths: Option<&PathSystem>) -> String {
    let corners = [(0, 0), (t.l - t.m, 0), (t.l, t.m), (t.l, t.m + t.n), (t.m, t.m + t.n), (0, t.n)];
    let mapped: Vec<(f64, f64)> = corners.iter().map(|&(x, y)| hex_point(x, y as f64)).collect();
    let fold = |f: fn(f64, f64) -> f64, init: f64, g: fn(&(f64, f64)) -> f64| mapped.iter().map(g).fold(init, f);
    let min = (fold(f64::min, f64::INFINITY, |p| p.0), fold(f64::min, f64::INFINITY, |p| p.1));
    let max = (fold(f64::max, f64::NEG_INFINITY, |p| p.0), fold(f64::max, f64::NEG_INFINITY, |p| p.1));
    let mut canvas = Canvas::new(min, max);
    for z in &t.lozenges {
        let pts: Vec<(f64, f64)> = z.corners().iter().map(|&(x, y)| hex_point(x, y as f64)).collect();
        let class = format!("{:?}", z.kind);
        canvas.polygon(&pts, lozenge_color(z.kind), &class);
    }
    if let Some(ps) = paths {
        if matches!(ps.kind, PathKind::Hexagon { .. }) {
            for path in &ps.paths {
                let pts: Vec<(f64, f64)> = path.iter().map(|&(x, y)| hex_point(x, y as f64 + 0.5)).collect();
                canvas.polyline(&pts);
            }
        }
    }
    canvas.finish()
}
