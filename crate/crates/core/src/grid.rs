//! Subgraphs of the infinite two-dimensional lattice.
//!
//! Edges are explicit: two lattice-adjacent vertices are joined only if the
//! edge is listed, so a grid graph need not be an induced subgraph.

use crate::error::{Error, Result};
use crate::graph::{normalise_edges, Edge, Graph};

pub type Point = (i64, i64);

/// Neighbour directions in clockwise order.
const DIRS: [Point; 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridGraph {
    coords: Vec<Point>,
    edges: Vec<Edge>,
}

impl GridGraph {
    /// Builds a grid from points and lattice edges given by their endpoints.
    /// Points are sorted and deduplicated; edge endpoints must be present.
    pub fn new(
        points: impl IntoIterator<Item = Point>,
        edges: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self> {
        let mut coords: Vec<Point> = points.into_iter().collect();
        coords.sort_unstable();
        coords.dedup();
        let mut indexed = Vec::new();
        for (a, b) in edges {
            let lookup = |p: Point| {
                coords.binary_search(&p).map_err(|_| {
                    Error::InvalidGraph(format!("edge endpoint {p:?} is not a vertex"))
                })
            };
            indexed.push((lookup(a)?, lookup(b)?));
        }
        Self::from_indexed(coords, indexed)
    }

    /// Builds a grid from already sorted, distinct coordinates and index pairs.
    pub fn from_indexed(coords: Vec<Point>, edges: Vec<Edge>) -> Result<Self> {
        if let Some(w) = coords.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGraph(format!(
                "coordinates must be strictly increasing, found {:?} before {:?}",
                w[0], w[1]
            )));
        }
        let edges = normalise_edges(coords.len(), edges)?;
        for &(u, v) in &edges {
            let (a, b) = (coords[u], coords[v]);
            if (a.0 - b.0).abs() + (a.1 - b.1).abs() != 1 {
                return Err(Error::InvalidGraph(format!(
                    "edge {a:?}-{b:?} is not a unit lattice edge"
                )));
            }
        }
        Ok(GridGraph { coords, edges })
    }

    pub(crate) fn from_parts_unchecked(coords: Vec<Point>, edges: Vec<Edge>) -> Self {
        debug_assert!(coords.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        GridGraph { coords, edges }
    }

    /// All lattice edges between the given points.
    pub fn induced(points: impl IntoIterator<Item = Point>) -> Self {
        let mut coords: Vec<Point> = points.into_iter().collect();
        coords.sort_unstable();
        coords.dedup();
        let mut edges = Vec::new();
        for (i, &(x, y)) in coords.iter().enumerate() {
            for q in [(x, y + 1), (x + 1, y)] {
                if let Ok(j) = coords.binary_search(&q) {
                    edges.push((i.min(j), i.max(j)));
                }
            }
        }
        edges.sort_unstable();
        GridGraph { coords, edges }
    }

    /// Full `width x height` rectangle with its lower left corner at the origin.
    pub fn rectangle(width: usize, height: usize) -> Self {
        Self::induced((0..width as i64).flat_map(|x| (0..height as i64).map(move |y| (x, y))))
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.coords.binary_search(&p).ok()
    }

    /// `(min corner, max corner)`, or `None` for the empty grid.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        let first = *self.coords.first()?;
        Some(
            self.coords
                .iter()
                .fold((first, first), |(lo, hi), &(x, y)| {
                    ((lo.0.min(x), lo.1.min(y)), (hi.0.max(x), hi.1.max(y)))
                }),
        )
    }

    /// Neighbour of every vertex in each direction (N, E, S, W).
    fn rotation_system(&self) -> Vec<[Option<usize>; 4]> {
        let mut nbr = vec![[None; 4]; self.coords.len()];
        for &(u, v) in &self.edges {
            let (a, b) = (self.coords[u], self.coords[v]);
            let d = DIRS
                .iter()
                .position(|&(dx, dy)| (a.0 + dx, a.1 + dy) == b)
                .expect("edges join lattice neighbours");
            nbr[u][d] = Some(v);
            nbr[v][(d + 2) % 4] = Some(u);
        }
        nbr
    }
}

impl Graph for GridGraph {
    fn num_vertices(&self) -> usize {
        self.coords.len()
    }

    fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Boundary walk of one face of the lattice embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Number of half-edges on the walk.
    pub length: usize,
    /// Twice the signed (shoelace) area; positive for bounded faces.
    pub doubled_area: i64,
}

/// Traces every face of the canonical embedding. Around each vertex the
/// edges are ordered N, E, S, W; a walk continues with the next edge
/// clockwise after the reverse of the edge it arrived on.
pub fn faces(grid: &GridGraph) -> Vec<Face> {
    let nbr = grid.rotation_system();
    let coords = grid.coords();
    let mut visited = vec![[false; 4]; nbr.len()];
    let mut out = Vec::new();
    for v in 0..nbr.len() {
        for d in 0..4 {
            if nbr[v][d].is_none() || visited[v][d] {
                continue;
            }
            let (mut cur_v, mut cur_d) = (v, d);
            let mut face = Face {
                length: 0,
                doubled_area: 0,
            };
            loop {
                visited[cur_v][cur_d] = true;
                let w = nbr[cur_v][cur_d].expect("half-edge exists");
                let (a, b) = (coords[cur_v], coords[w]);
                face.doubled_area += a.0 * b.1 - b.0 * a.1;
                face.length += 1;
                let back = (cur_d + 2) % 4;
                let next = (1..=4)
                    .map(|step| (back + step) % 4)
                    .find(|&dd| nbr[w][dd].is_some())
                    .expect("the reverse half-edge always exists");
                cur_v = w;
                cur_d = next;
                if (cur_v, cur_d) == (v, d) {
                    break;
                }
            }
            out.push(face);
        }
    }
    out
}

/// Connected and every bounded face is a unit square.
pub fn is_solid(grid: &GridGraph) -> bool {
    if grid.num_vertices() == 0 || grid.components().len() != 1 {
        return false;
    }
    faces(grid)
        .iter()
        .all(|f| f.doubled_area <= 0 || f.length == 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> GridGraph {
        let pts: Vec<Point> = (0..3)
            .flat_map(|x| (0..3).map(move |y| (x, y)))
            .filter(|&p| p != (1, 1))
            .collect();
        GridGraph::induced(pts)
    }

    #[test]
    fn full_rectangle_is_solid() {
        let g = GridGraph::rectangle(3, 3);
        assert_eq!(g.edges().len(), 12);
        assert!(is_solid(&g));
        let fs = faces(&g);
        assert_eq!(fs.iter().filter(|f| f.doubled_area > 0).count(), 4);
        assert_eq!(fs.iter().filter(|f| f.doubled_area <= 0).count(), 1);
    }

    #[test]
    fn ring_has_a_hole() {
        let g = ring3();
        assert_eq!(g.num_vertices(), 8);
        assert_eq!(g.edges().len(), 8);
        assert!(!is_solid(&g));
        let bounded: Vec<_> = faces(&g)
            .into_iter()
            .filter(|f| f.doubled_area > 0)
            .collect();
        assert_eq!(
            bounded,
            vec![Face {
                length: 8,
                doubled_area: 8
            }]
        );
    }

    #[test]
    fn comb_joined_by_single_edge_is_solid() {
        let left = GridGraph::rectangle(3, 3);
        let right_pts: Vec<Point> = left.coords().iter().map(|&(x, y)| (x + 3, y)).collect();
        let mut edges: Vec<(Point, Point)> = Vec::new();
        for (u, v) in left.edges() {
            let (a, b) = (left.coords()[*u], left.coords()[*v]);
            edges.push((a, b));
            edges.push(((a.0 + 3, a.1), (b.0 + 3, b.1)));
        }
        edges.push(((2, 0), (3, 0)));
        let pts = left.coords().iter().copied().chain(right_pts);
        let g = GridGraph::new(pts, edges).unwrap();
        assert_eq!(g.num_vertices(), 18);
        assert!(is_solid(&g));
        // The induced version of the same points is solid too (a 6x3 rectangle).
        assert!(is_solid(&GridGraph::induced(g.coords().to_vec())));
    }

    #[test]
    fn dangling_edge_inside_a_face_makes_a_hole() {
        // 3x3 ring plus the centre vertex hanging off the left middle vertex.
        let mut pts: Vec<Point> = ring3().coords().to_vec();
        pts.push((1, 1));
        let ring = ring3();
        let mut edges: Vec<(Point, Point)> = ring
            .edges()
            .iter()
            .map(|&(u, v)| (ring.coords()[u], ring.coords()[v]))
            .collect();
        edges.push(((0, 1), (1, 1)));
        let g = GridGraph::new(pts, edges).unwrap();
        assert!(!is_solid(&g));
    }

    #[test]
    fn disconnected_or_empty_is_not_solid() {
        let g = GridGraph::new([(0, 0), (5, 5)], []).unwrap();
        assert!(!is_solid(&g));
        assert!(!is_solid(&GridGraph::new([], []).unwrap()));
        assert!(is_solid(&GridGraph::new([(0, 0)], []).unwrap()));
    }

    #[test]
    fn rejects_non_lattice_edges() {
        assert!(GridGraph::new([(0, 0), (1, 1)], [((0, 0), (1, 1))]).is_err());
        assert!(GridGraph::new([(0, 0)], [((0, 0), (0, 1))]).is_err());
        assert!(GridGraph::from_indexed(vec![(1, 0), (0, 0)], vec![]).is_err());
    }

    #[test]
    fn rectangles_with_a_missing_interior_vertex_are_not_solid() {
        for w in 1..=6 {
            for h in 1..=6 {
                let full = GridGraph::rectangle(w, h);
                assert!(is_solid(&full), "{w}x{h}");
                if w < 3 || h < 3 {
                    continue;
                }
                for x in 1..w as i64 - 1 {
                    for y in 1..h as i64 - 1 {
                        let pts = full.coords().iter().copied().filter(|&p| p != (x, y));
                        assert!(
                            !is_solid(&GridGraph::induced(pts)),
                            "{w}x{h} minus ({x},{y})"
                        );
                    }
                }
            }
        }
    }
}
