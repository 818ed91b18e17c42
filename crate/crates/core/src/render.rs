//! Static depictions of plans: text frames and SVG documents, one per time
//! step.
//!
//! Text frames start with a `t=<step>` line followed by the grid, one line
//! per row, cells separated by a space: `#` for a removed cell, `.` for an
//! empty one, otherwise the robot index in base 36, right-aligned to the
//! width of the largest index. Graphs without grid metadata are drawn as a
//! single row of vertices in index order.

use std::fmt::Write as _;

use crate::graph::VertexId;
use crate::instance::Instance;
use crate::plan::Plan;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Ascii,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ascii" => Ok(Format::Ascii),
            "svg" => Ok(Format::Svg),
            _ => Err(format!("unknown format `{s}` (expected ascii or svg)")),
        }
    }
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Ascii => "txt",
            Format::Svg => "svg",
        }
    }
}

/// One document per time step `0..=T`.
pub fn render(plan: &Plan, inst: &Instance, format: Format) -> Vec<String> {
    match format {
        Format::Ascii => ascii_frames(plan, inst),
        Format::Svg => svg_frames(plan, inst),
    }
}

pub fn base36(mut k: usize) -> String {
    let digits = b"0123456789abcdefghijklmnopqrstuvwxyz";
    let mut out = Vec::new();
    loop {
        out.push(digits[k % 36]);
        k /= 36;
        if k == 0 {
            break;
        }
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

/// Cell grid used by both formats: `None` for a removed cell.
fn cells(inst: &Instance) -> (usize, usize, Vec<Option<VertexId>>) {
    let g = inst.graph();
    match g.grid() {
        Some(l) => {
            let mut out = Vec::with_capacity(l.rows * l.cols);
            for r in 0..l.rows {
                for c in 0..l.cols {
                    out.push(l.vertex_at(r, c));
                }
            }
            (l.rows, l.cols, out)
        }
        None => (1, g.vertex_count(), (0..g.vertex_count()).map(Some).collect()),
    }
}

pub fn ascii_frames(plan: &Plan, inst: &Instance) -> Vec<String> {
    let (rows, cols, grid) = cells(inst);
    let width = base36(plan.robot_count().saturating_sub(1)).len();
    let mut robot_at = vec![None; inst.graph().vertex_count()];
    (0..=plan.horizon())
        .map(|t| {
            robot_at.iter_mut().for_each(|x| *x = None);
            for i in 0..plan.robot_count() {
                robot_at[plan.position(i, t)] = Some(i);
            }
            let mut s = format!("t={t}\n");
            for r in 0..rows {
                let line: Vec<String> = (0..cols)
                    .map(|c| {
                        let sym = match grid[r * cols + c] {
                            None => "#".to_string(),
                            Some(v) => robot_at[v].map_or(".".to_string(), base36),
                        };
                        format!("{sym:>width$}")
                    })
                    .collect();
                s.push_str(&line.join(" "));
                s.push('\n');
            }
            s
        })
        .collect()
}

const CELL: f64 = 40.0;
const MARGIN: f64 = 10.0;

/// Vertex centres, either from the grid or on a circle.
fn positions(inst: &Instance) -> (Vec<(f64, f64)>, f64, f64) {
    let g = inst.graph();
    match g.grid() {
        Some(l) => {
            let pos = (0..g.vertex_count())
                .map(|v| {
                    let (r, c) = l.row_col(v);
                    (MARGIN + (c as f64 + 0.5) * CELL, MARGIN + (r as f64 + 0.5) * CELL)
                })
                .collect();
            (pos, 2.0 * MARGIN + l.cols as f64 * CELL, 2.0 * MARGIN + l.rows as f64 * CELL)
        }
        None => {
            let n = g.vertex_count().max(1);
            let radius = (n as f64 * CELL / std::f64::consts::TAU).max(CELL);
            let centre = MARGIN + CELL / 2.0 + radius;
            let pos = (0..g.vertex_count())
                .map(|v| {
                    let a = std::f64::consts::TAU * v as f64 / n as f64 - std::f64::consts::FRAC_PI_2;
                    (centre + radius * a.cos(), centre + radius * a.sin())
                })
                .collect();
            (pos, 2.0 * centre, 2.0 * centre)
        }
    }
}

pub fn svg_frames(plan: &Plan, inst: &Instance) -> Vec<String> {
    let g = inst.graph();
    let (pos, w, h) = positions(inst);
    let mut background = String::new();
    if let Some(l) = g.grid() {
        for r in 0..l.rows {
            for c in 0..l.cols {
                let fill = if l.vertex_at(r, c).is_some() { "#ffffff" } else { "#404040" };
                let _ = writeln!(
                    background,
                    r##"<rect x="{:.1}" y="{:.1}" width="{CELL:.1}" height="{CELL:.1}" fill="{fill}" stroke="#999999"/>"##,
                    MARGIN + c as f64 * CELL,
                    MARGIN + r as f64 * CELL
                );
            }
        }
    } else {
        for &(u, v) in g.edges() {
            let _ = writeln!(
                background,
                r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#999999"/>"##,
                pos[u].0, pos[u].1, pos[v].0, pos[v].1
            );
        }
        for p in &pos {
            let _ = writeln!(background, r##"<circle cx="{:.1}" cy="{:.1}" r="4" fill="#999999"/>"##, p.0, p.1);
        }
    }
    (0..=plan.horizon())
        .map(|t| {
            let mut s = String::new();
            let _ = writeln!(
                s,
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
            );
            s.push_str(concat!(
                r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">"##,
                r##"<path d="M0,0 L10,5 L0,10 z" fill="#d03030"/></marker></defs>"##,
                "\n"
            ));
            let _ = writeln!(s, "<title>t={t}</title>");
            s.push_str(&background);
            for i in 0..plan.robot_count() {
                let (x, y) = pos[plan.position(i, t)];
                let _ = writeln!(
                    s,
                    r##"<circle cx="{x:.1}" cy="{y:.1}" r="{:.1}" fill="#4a7ab8"/><text x="{x:.1}" y="{y:.1}" font-size="12" text-anchor="middle" dominant-baseline="central" fill="#ffffff">{}</text>"##,
                    CELL * 0.35,
                    base36(i)
                );
            }
            if t < plan.horizon() {
                for i in 0..plan.robot_count() {
                    let (a, b) = (plan.position(i, t), plan.position(i, t + 1));
                    if a == b {
                        continue;
                    }
                    let ((x1, y1), (x2, y2)) = (pos[a], pos[b]);
                    let (dx, dy) = (x2 - x1, y2 - y1);
                    let len = (dx * dx + dy * dy).sqrt().max(1e-9);
                    let trim = CELL * 0.35;
                    let _ = writeln!(
                        s,
                        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#d03030" stroke-width="2" marker-end="url(#arrow)"/>"##,
                        x1 + dx / len * trim,
                        y1 + dy / len * trim,
                        x2 - dx / len * trim,
                        y2 - dy / len * trim
                    );
                }
            }
            s.push_str("</svg>\n");
            s
        })
        .collect()
}
