//! SVG and ASCII pictures of grid partitions.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::grid::GridGraph;
use crate::partition::Partition;

pub const CELL: i64 = 20;

pub const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
];

const UNCOLOURED: &str = "#ffffff";

fn check(grid: &GridGraph, partition: Option<&Partition>) -> Result<()> {
    if grid.num_vertices() == 0 {
        return Err(Error::InvalidInput(
            "nothing to render in an empty grid".into(),
        ));
    }
    match partition {
        Some(p) if p.len() != grid.num_vertices() => Err(Error::LengthMismatch {
            expected: grid.num_vertices(),
            got: p.len(),
        }),
        _ => Ok(()),
    }
}

/// One `CELL`-sized square per vertex, filled by colour, with lattice edges
/// as thin lines between cell centres and `connectors` drawn bold. The
/// y axis points up.
pub fn render_svg(
    grid: &GridGraph,
    partition: Option<&Partition>,
    connectors: &[Edge],
) -> Result<String> {
    check(grid, partition)?;
    let ((x0, y0), (x1, y1)) = grid.bounding_box().expect("nonempty");
    let (w, h) = ((x1 - x0 + 1) * CELL, (y1 - y0 + 1) * CELL);
    let corner = |v: usize| {
        let (x, y) = grid.coords()[v];
        ((x - x0) * CELL, (y1 - y) * CELL)
    };
    let centre = |v: usize| {
        let (x, y) = corner(v);
        (x + CELL / 2, y + CELL / 2)
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    out.push_str("<g stroke=\"#000000\" stroke-width=\"0.5\">\n");
    for v in 0..grid.num_vertices() {
        let (x, y) = corner(v);
        let fill = partition.map_or(UNCOLOURED, |p| PALETTE[p.colour(v) % PALETTE.len()]);
        let _ = writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"{fill}\"/>"
        );
    }
    out.push_str("</g>\n");

    let mut bold: Vec<Edge> = connectors
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    bold.sort_unstable();
    let line = |out: &mut String, (u, v): Edge| {
        let ((ax, ay), (bx, by)) = (centre(u), centre(v));
        let _ = writeln!(
            out,
            "<line x1=\"{ax}\" y1=\"{ay}\" x2=\"{bx}\" y2=\"{by}\"/>"
        );
    };
    out.push_str("<g stroke=\"#333333\" stroke-width=\"1\">\n");
    for &e in grid.edges() {
        if bold.binary_search(&e).is_err() {
            line(&mut out, e);
        }
    }
    out.push_str("</g>\n");
    if !bold.is_empty() {
        out.push_str("<g stroke=\"#000000\" stroke-width=\"4\">\n");
        for &e in &bold {
            line(&mut out, e);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// One character per lattice point, top row first: the colour in base 36
/// (wrapping), `#` for an uncoloured vertex, `.` for a missing point.
pub fn render_ascii(grid: &GridGraph, partition: Option<&Partition>) -> Result<String> {
    check(grid, partition)?;
    let ((x0, y0), (x1, y1)) = grid.bounding_box().expect("nonempty");
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let c = match grid.index_of((x, y)) {
                None => '.',
                Some(v) => match partition {
                    None => '#',
                    Some(p) => std::char::from_digit((p.colour(v) % 36) as u32, 36).unwrap_or('?'),
                },
            };
            out.push(c);
        }
        out.push('\n');
    }
    Ok(out)
}
