use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::page::E2Page;
use crate::error::Result;

const CELL_W: i64 = 96;
const CELL_H: i64 = 56;
const LEFT: i64 = 56;
const TOP: i64 = 40;
const BOTTOM: i64 = 44;
const RIGHT: i64 = 24;
const LINE: i64 = 12;
const MAX_STACK: usize = 3;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// SVG chart of the page: Ext degree `l` to the right, weight `q` upward.
/// Classes sharing a cell are stacked; past three the rest are counted.
pub fn chart_svg(page: &E2Page) -> String {
    let mut cells: BTreeMap<(i64, i64), Vec<String>> = BTreeMap::new();
    for c in page.basis() {
        let t = page.tridegree(&c);
        cells.entry((t.l, t.q)).or_default().push(page.label(&c));
    }
    let l_max = cells.keys().map(|&(l, _)| l).max().unwrap_or(0);
    let q_max = page.max_weight() as i64;
    let width = LEFT + (l_max + 1) * CELL_W + RIGHT;
    let height = TOP + (q_max + 1) * CELL_H + BOTTOM;
    let x0 = LEFT;
    let y0 = TOP + (q_max + 1) * CELL_H;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="20" font-size="13">E2 page ({}) {}, q ≤ {}</text>"#,
        LEFT,
        page.signature(),
        page.variant(),
        q_max
    );
    let _ = writeln!(s, r##"<g stroke="#bbb" stroke-width="0.5">"##);
    for l in 0..=l_max + 1 {
        let x = x0 + l * CELL_W;
        let _ = writeln!(s, r#"<line x1="{x}" y1="{TOP}" x2="{x}" y2="{y0}"/>"#);
    }
    for q in 0..=q_max + 1 {
        let y = y0 - q * CELL_H;
        let _ = writeln!(
            s,
            r#"<line x1="{x0}" y1="{y}" x2="{}" y2="{y}"/>"#,
            x0 + (l_max + 1) * CELL_W
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1.5"><line x1="{x0}" y1="{y0}" x2="{}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{TOP}"/></g>"#,
        x0 + (l_max + 1) * CELL_W
    );
    for l in 0..=l_max {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{l}</text>"#,
            x0 + l * CELL_W + CELL_W / 2,
            y0 + 16
        );
    }
    for q in 0..=q_max {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{q}</text>"#,
            x0 - 8,
            y0 - q * CELL_H - CELL_H / 2 + 4
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">l</text>"#,
        x0 + (l_max + 1) * CELL_W / 2,
        y0 + 36
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" font-size="12">q</text>"#,
        TOP + (q_max + 1) * CELL_H / 2
    );

    for ((l, q), labels) in &cells {
        let cx = x0 + l * CELL_W + 6;
        let top = y0 - (q + 1) * CELL_H + LINE + 2;
        let _ = writeln!(s, r#"<g class="cell" data-l="{l}" data-q="{q}">"#);
        for (k, label) in labels.iter().take(MAX_STACK).enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{cx}" y="{}">{}</text>"#,
                top + k as i64 * LINE,
                escape(label)
            );
        }
        if labels.len() > MAX_STACK {
            let _ = writeln!(
                s,
                r##"<text x="{cx}" y="{}" fill="#666">+{} more</text>"##,
                top + MAX_STACK as i64 * LINE,
                labels.len() - MAX_STACK
            );
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_chart(page: &E2Page, path: &Path) -> Result<()> {
    std::fs::write(path, chart_svg(page))?;
    Ok(())
}
