//! Deterministic ASCII and SVG drawings of diagrams: labelled boundary
//! points with arcs drawn as nested hulls.

use std::fmt::Write as _;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::pairing::Pairing;

const MAX_RENDER_POINTS: usize = 40;
const COL_STEP: usize = 4;

fn col(i: usize) -> usize {
    COL_STEP * i + 2
}

struct Grid {
    rows: Vec<Vec<char>>,
}

impl Grid {
    fn new(height: usize, width: usize) -> Self {
        Grid {
            rows: vec![vec![' '; width]; height],
        }
    }

    fn put(&mut self, r: usize, c: usize, ch: char) {
        let cell = &mut self.rows[r][c];
        // Crossing an existing segment becomes a junction.
        *cell = if *cell == ' ' || *cell == ch { ch } else { '+' };
    }

    fn hline(&mut self, r: usize, c1: usize, c2: usize) {
        for c in c1.min(c2)..=c1.max(c2) {
            self.put(r, c, '-');
        }
    }

    fn vline(&mut self, c: usize, r1: usize, r2: usize) {
        for r in r1.min(r2)..=r1.max(r2) {
            self.put(r, c, '|');
        }
    }

    fn text(&mut self, r: usize, c: usize, s: &str) {
        for (i, ch) in s.chars().enumerate() {
            if c + i < self.rows[r].len() {
                self.rows[r][c + i] = ch;
            }
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: String = row.iter().collect();
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Nesting depth of each arc among `arcs` (innermost = 1).
fn arc_depths(arcs: &[(usize, usize)]) -> Vec<usize> {
    arcs.iter()
        .map(|&(a, b)| {
            1 + arcs
                .iter()
                .filter(|&&(c, d)| a < c && d < b)
                .map(|&(c, d)| arc_depths_inner(arcs, c, d))
                .max()
                .unwrap_or(0)
        })
        .collect()
}

fn arc_depths_inner(arcs: &[(usize, usize)], a: usize, b: usize) -> usize {
    1 + arcs
        .iter()
        .filter(|&&(c, d)| a < c && d < b)
        .map(|&(c, d)| arc_depths_inner(arcs, c, d))
        .max()
        .unwrap_or(0)
}

struct PairingLayout {
    bottom_arcs: Vec<(usize, usize)>,
    top_arcs: Vec<(usize, usize)>,
    throughs: Vec<(usize, usize)>,
}

fn layout(p: &Pairing) -> PairingLayout {
    use crate::pairing::PairingPoint::{Bottom, Top};
    let mut bottom_arcs = Vec::new();
    let mut top_arcs = Vec::new();
    let mut throughs = Vec::new();
    for i in 1..=p.bottom_count() {
        match p.partner(Bottom(i)).expect("point in range") {
            Bottom(j) if i < j => bottom_arcs.push((i - 1, j - 1)),
            Top(j) => throughs.push((i - 1, j - 1)),
            _ => {}
        }
    }
    for i in 1..=p.top_count() {
        if let Some(Top(j)) = p.partner(Top(i)) {
            if i < j {
                top_arcs.push((i - 1, j - 1));
            }
        }
    }
    PairingLayout {
        bottom_arcs,
        top_arcs,
        throughs,
    }
}

/// ASCII picture of a rectangle diagram: top labels, arcs as nested
/// hulls, bottom labels.
pub fn render_pairing_ascii(p: &Pairing) -> Result<String> {
    let total = p.bottom_count() + p.top_count();
    if total > MAX_RENDER_POINTS {
        return Err(Error::invalid(
            "render",
            format!("{total} points exceeds the render limit {MAX_RENDER_POINTS}"),
        ));
    }
    let l = layout(p);
    let top_depth = arc_depths(&l.top_arcs).into_iter().max().unwrap_or(0);
    let bottom_depth = arc_depths(&l.bottom_arcs).into_iter().max().unwrap_or(0);
    let lanes = l.throughs.len();
    let height = 2 + top_depth + lanes.max(usize::from(lanes == 0 && total > 0)) + bottom_depth;
    let width = COL_STEP * p.bottom_count().max(p.top_count()) + 4;
    let mut grid = Grid::new(height, width);
    let top_label_row = 0;
    let bottom_label_row = height - 1;
    let middle_start = 1 + top_depth;
    let middle_end = height - 2 - bottom_depth;

    for (j, _) in (1..=p.top_count()).enumerate() {
        grid.text(top_label_row, col(j).saturating_sub(1), &format!("T{}", j + 1));
    }
    for (i, _) in (1..=p.bottom_count()).enumerate() {
        grid.text(bottom_label_row, col(i).saturating_sub(1), &format!("B{}", i + 1));
    }

    let top_arc_depths = arc_depths(&l.top_arcs);
    for (idx, &(a, b)) in l.top_arcs.iter().enumerate() {
        let row = top_label_row + top_arc_depths[idx];
        grid.hline(row, col(a), col(b));
        grid.put(row, col(a), '.');
        grid.put(row, col(b), '.');
        grid.vline(col(a), top_label_row + 1, row);
        grid.vline(col(b), top_label_row + 1, row);
        grid.put(row, col(a), '.');
        grid.put(row, col(b), '.');
    }
    let bottom_arc_depths = arc_depths(&l.bottom_arcs);
    for (idx, &(a, b)) in l.bottom_arcs.iter().enumerate() {
        let row = bottom_label_row - bottom_arc_depths[idx];
        grid.hline(row, col(a), col(b));
        grid.vline(col(a), row, bottom_label_row - 1);
        grid.vline(col(b), row, bottom_label_row - 1);
        grid.put(row, col(a), '\'');
        grid.put(row, col(b), '\'');
    }
    for (lane, &(b, t)) in l.throughs.iter().enumerate() {
        let lane_row = (middle_start + lane).min(middle_end);
        if col(b) == col(t) {
            grid.vline(col(b), top_label_row + 1, bottom_label_row - 1);
        } else {
            grid.vline(col(t), top_label_row + 1, lane_row);
            grid.hline(lane_row, col(t), col(b));
            grid.vline(col(b), lane_row, bottom_label_row - 1);
            grid.put(lane_row, col(t), '+');
            grid.put(lane_row, col(b), '+');
        }
    }
    Ok(grid.render())
}

/// SVG picture of a rectangle diagram.
pub fn render_pairing_svg(p: &Pairing) -> Result<String> {
    let total = p.bottom_count() + p.top_count();
    if total > MAX_RENDER_POINTS {
        return Err(Error::invalid(
            "render",
            format!("{total} points exceeds the render limit {MAX_RENDER_POINTS}"),
        ));
    }
    let l = layout(p);
    let unit = 40.0;
    let width = unit * (p.bottom_count().max(p.top_count()).max(1) as f64 + 1.0);
    let height = 160.0;
    let (y_top, y_bottom) = (20.0, 140.0);
    let x = |i: usize| unit * (i as f64 + 1.0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        svg,
        "  <rect x=\"2\" y=\"2\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#bbb\"/>",
        width - 4.0,
        height - 4.0
    );
    for (a, b, y, dir) in l
        .top_arcs
        .iter()
        .map(|&(a, b)| (a, b, y_top, 1.0))
        .chain(l.bottom_arcs.iter().map(|&(a, b)| (a, b, y_bottom, -1.0)))
    {
        let depth = (b - a) as f64 * 18.0 + 22.0;
        let _ = writeln!(
            svg,
            "  <path d=\"M {} {} C {} {}, {} {}, {} {}\" fill=\"none\" stroke=\"black\"/>",
            x(a),
            y,
            x(a),
            y + dir * depth,
            x(b),
            y + dir * depth,
            x(b),
            y
        );
    }
    for &(b, t) in &l.throughs {
        let _ = writeln!(
            svg,
            "  <path d=\"M {} {} C {} {}, {} {}, {} {}\" fill=\"none\" stroke=\"black\"/>",
            x(b),
            y_bottom,
            x(b),
            80.0,
            x(t),
            80.0,
            x(t),
            y_top
        );
    }
    for j in 0..p.top_count() {
        let _ = writeln!(
            svg,
            "  <text x=\"{}\" y=\"14\" font-size=\"10\" text-anchor=\"middle\">T{}</text>",
            x(j),
            j + 1
        );
    }
    for i in 0..p.bottom_count() {
        let _ = writeln!(
            svg,
            "  <text x=\"{}\" y=\"154\" font-size=\"10\" text-anchor=\"middle\">B{}</text>",
            x(i),
            i + 1
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Labels of a box diagram's boundary walk, left edge upward, top, right
/// edge downward.
fn boundary_labels(grade: usize, context: usize) -> Vec<String> {
    let mut labels = Vec::new();
    for i in (1..=context).rev() {
        labels.push(format!("L{i}"));
    }
    for j in 1..=2 * grade {
        labels.push(format!("T{j}"));
    }
    for i in 1..=context {
        labels.push(format!("R{i}"));
    }
    labels
}

/// ASCII picture of an element: each term is its scalar followed by the
/// unrolled boundary walk with the matching drawn as nested hulls.
pub fn render_element_ascii(e: &Element) -> Result<String> {
    let total = 2 * (e.grade() + e.context());
    if total > MAX_RENDER_POINTS {
        return Err(Error::invalid(
            "render",
            format!("{total} points exceeds the render limit {MAX_RENDER_POINTS}"),
        ));
    }
    let labels = boundary_labels(e.grade(), e.context());
    let mut out = format!("element of P({},{})\n", e.grade(), e.context());
    if e.is_zero() {
        out.push_str("0\n");
        return Ok(out);
    }
    for (d, c) in e.terms() {
        let _ = writeln!(out, "({c}) ×");
        // Arcs in boundary-walk positions.
        let text = d.to_string();
        let arcs = walk_arcs(&text, e.grade(), e.context())?;
        let depths = arc_depths(&arcs);
        let max_depth = depths.iter().copied().max().unwrap_or(0);
        let width = COL_STEP * labels.len() + 4;
        let mut grid = Grid::new(max_depth + 1, width);
        for (i, label) in labels.iter().enumerate() {
            grid.text(0, col(i).saturating_sub(1), label);
        }
        for (idx, &(a, b)) in arcs.iter().enumerate() {
            let row = depths[idx];
            grid.hline(row, col(a), col(b));
            grid.vline(col(a), 1, row);
            grid.vline(col(b), 1, row);
            grid.put(row, col(a), '\'');
            grid.put(row, col(b), '\'');
        }
        out.push_str(&grid.render());
    }
    Ok(out)
}

/// Parses a box diagram's pair list back into boundary-walk positions.
fn walk_arcs(text: &str, grade: usize, context: usize) -> Result<Vec<(usize, usize)>> {
    let body = text
        .split_once(":{")
        .and_then(|(_, b)| b.strip_suffix('}'))
        .ok_or_else(|| Error::parse("bad box diagram text"))?;
    let pos = |label: &str| -> Result<usize> {
        let (kind, idx) = label.split_at(1);
        let i: usize = idx
            .parse()
            .map_err(|e| Error::parse(format!("bad label '{label}': {e}")))?;
        Ok(match kind {
            "L" => context - i,
            "T" => context + i - 1,
            "R" => context + 2 * grade + i - 1,
            _ => return Err(Error::parse(format!("bad label '{label}'"))),
        })
    };
    let mut arcs = Vec::new();
    for (a, b) in crate::pairing::parse_pair_list(body)? {
        let (x, y) = (pos(&a)?, pos(&b)?);
        arcs.push((x.min(y), x.max(y)));
    }
    arcs.sort();
    Ok(arcs)
}

/// SVG picture of an element: one row of boundary points per term with
/// the matching drawn as arcs below the line.
pub fn render_element_svg(e: &Element) -> Result<String> {
    let total = 2 * (e.grade() + e.context());
    if total > MAX_RENDER_POINTS {
        return Err(Error::invalid(
            "render",
            format!("{total} points exceeds the render limit {MAX_RENDER_POINTS}"),
        ));
    }
    let labels = boundary_labels(e.grade(), e.context());
    let unit = 40.0;
    let row_height = 120.0;
    let terms = e.num_terms().max(1);
    let width = unit * (labels.len().max(1) as f64 + 1.0);
    let height = row_height * terms as f64;
    let x = |i: usize| unit * (i as f64 + 1.0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    for (row, (d, c)) in e.terms().enumerate() {
        let y0 = row_height * row as f64 + 30.0;
        let _ = writeln!(
            svg,
            "  <text x=\"6\" y=\"{}\" font-size=\"10\">{}</text>",
            y0 - 16.0,
            c
        );
        for (i, label) in labels.iter().enumerate() {
            let _ = writeln!(
                svg,
                "  <text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{label}</text>",
                x(i),
                y0 - 4.0
            );
        }
        for (a, b) in walk_arcs(&d.to_string(), e.grade(), e.context())? {
            let depth = (b - a) as f64 * 14.0 + 18.0;
            let _ = writeln!(
                svg,
                "  <path d=\"M {} {} C {} {}, {} {}, {} {}\" fill=\"none\" stroke=\"black\"/>",
                x(a),
                y0,
                x(a),
                y0 + depth,
                x(b),
                y0 + depth,
                x(b),
                y0
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::cup_element;

    #[test]
    fn cap_ascii_has_one_hull() {
        let text = render_pairing_ascii(&Pairing::cap()).unwrap();
        assert!(text.contains("B1"));
        assert!(text.contains("B2"));
        assert!(text.contains('-'));
        assert!(!text.contains("T1"));
    }

    #[test]
    fn identity_ascii_has_two_strands() {
        let text = render_pairing_ascii(&Pairing::identity(2)).unwrap();
        assert!(text.contains("T1") && text.contains("T2"));
        assert!(text.contains("B1") && text.contains("B2"));
        let strand_cols = text
            .lines()
            .filter(|l| l.matches('|').count() == 2)
            .count();
        assert!(strand_cols >= 1);
    }

    #[test]
    fn e_svg_is_valid_with_two_arcs() {
        let e: Pairing = "2→2:{(B1,B2),(T1,T2)}".parse().unwrap();
        let svg = render_pairing_svg(&e).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(svg.contains("xmlns=\"http://www.w3.org/2000/svg\""));
    }

    #[test]
    fn renders_are_deterministic() {
        let p: Pairing = "4→2:{(B1,B2),(B3,T1),(B4,T2)}".parse().unwrap();
        assert_eq!(
            render_pairing_ascii(&p).unwrap(),
            render_pairing_ascii(&p).unwrap()
        );
        assert_eq!(
            render_pairing_svg(&p).unwrap(),
            render_pairing_svg(&p).unwrap()
        );
    }

    #[test]
    fn element_renders() {
        let u = cup_element(1);
        let text = render_element_ascii(&u).unwrap();
        assert!(text.contains("L1") && text.contains("R1") && text.contains("T1"));
        let svg = render_element_svg(&u).unwrap();
        assert!(svg.starts_with("<svg") && svg.matches("<path").count() == 2);
        let zero = render_element_ascii(&Element::zero(1, 0)).unwrap();
        assert!(zero.contains('0'));
    }

    #[test]
    fn oversize_render_is_rejected() {
        let p = Pairing::identity(25);
        assert!(render_pairing_ascii(&p).is_err());
        assert!(render_pairing_svg(&p).is_err());
    }
}
