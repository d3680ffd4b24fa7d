//! Graph representations shared by every other module.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

/// Unordered vertex pair, stored with the smaller index first.
pub type Edge = (usize, usize);

pub trait Graph {
    fn num_vertices(&self) -> usize;

    /// Normalised edges (`u < v`), sorted.
    fn edges(&self) -> &[Edge];

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for &(u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    fn components(&self) -> Vec<Vec<usize>> {
        components_of(self.num_vertices(), self.edges().iter().copied())
    }
}

pub(crate) fn components_of(n: usize, edges: impl Iterator<Item = Edge>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Validates and normalises an edge list over `n` vertices.
pub(crate) fn normalise_edges(
    n: usize,
    edges: impl IntoIterator<Item = Edge>,
) -> Result<Vec<Edge>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (a, b) in edges {
        if a >= n || b >= n {
            return Err(Error::InvalidGraph(format!(
                "edge ({a}, {b}) out of range for {n} vertices"
            )));
        }
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
        }
        let e = (a.min(b), a.max(b));
        if !seen.insert(e) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge ({}, {})",
                e.0, e.1
            )));
        }
        out.push(e);
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl GeneralGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        Ok(GeneralGraph {
            n,
            edges: normalise_edges(n, edges)?,
        })
    }

    pub fn path(n: usize) -> Self {
        GeneralGraph {
            n,
            edges: (1..n).map(|v| (v - 1, v)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "a cycle needs 3 vertices, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Disjoint union of `other` after `self`, shifting its indices.
    pub fn disjoint_union(&self, other: &GeneralGraph) -> GeneralGraph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        GeneralGraph {
            n: self.n + other.n,
            edges,
        }
    }
}

impl Graph for GeneralGraph {
    fn num_vertices(&self) -> usize {
        self.n
    }

    fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Rooted tree stored as a parent array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGraph {
    parent: Vec<Option<usize>>,
    root: usize,
    edges: Vec<Edge>,
}

impl TreeGraph {
    /// `parent[root]` is `None`; all other entries point one step towards the root.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidGraph(format!(
                "a tree needs exactly one root, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        if let Some(v) = (0..n).find(|&v| parent[v].is_some_and(|p| p >= n || p == v)) {
            return Err(Error::InvalidGraph(format!(
                "bad parent link at vertex {v}"
            )));
        }
        // 0 = unknown, 1 = on the current walk, 2 = reaches the root.
        let mut state = vec![0u8; n];
        state[root] = 2;
        for start in 0..n {
            let mut walk = Vec::new();
            let mut v = start;
            while state[v] == 0 {
                state[v] = 1;
                walk.push(v);
                v = parent[v].expect("only the root lacks a parent");
            }
            if state[v] == 1 {
                return Err(Error::InvalidGraph(format!(
                    "parent links form a cycle through {v}"
                )));
            }
            for w in walk {
                state[w] = 2;
            }
        }
        let mut edges: Vec<Edge> = (0..n)
            .filter_map(|v| parent[v].map(|p| (v.min(p), v.max(p))))
            .collect();
        edges.sort_unstable();
        Ok(TreeGraph {
            parent,
            root,
            edges,
        })
    }

    /// Roots an undirected edge list at `root`.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
        root: usize,
    ) -> Result<Self> {
        if root >= n {
            return Err(Error::InvalidGraph(format!(
                "root {root} out of range for {n} vertices"
            )));
        }
        let edges = normalise_edges(n, edges)?;
        if edges.len() + 1 != n {
            return Err(Error::InvalidGraph(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidGraph("edge list is not connected".into()));
        }
        Ok(TreeGraph {
            parent,
            root,
            edges,
        })
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v)), 0)
    }

    /// Star with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)), 0).expect("stars are trees")
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Children lists in increasing index order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                out[p].push(v);
            }
        }
        out
    }
}

impl Graph for TreeGraph {
    fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_general_graphs() {
        assert!(GeneralGraph::new(3, [(0, 0)]).is_err());
        assert!(GeneralGraph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(GeneralGraph::new(3, [(0, 3)]).is_err());
        let g = GeneralGraph::new(3, [(2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn tree_parent_validation() {
        assert!(TreeGraph::from_parents(vec![None, None]).is_err());
        assert!(TreeGraph::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(TreeGraph::from_parents(vec![Some(1), Some(0)]).is_err());
        let t = TreeGraph::from_parents(vec![Some(1), None, Some(1)]).unwrap();
        assert_eq!(t.root(), 1);
        assert_eq!(t.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn tree_from_edges_requires_spanning_tree() {
        assert!(TreeGraph::from_edges(4, [(0, 1), (2, 3)], 0).is_err());
        assert!(TreeGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)], 0).is_err());
        let t = TreeGraph::from_edges(4, [(0, 1), (1, 2), (1, 3)], 0).unwrap();
        assert_eq!(t.parent(3), Some(1));
        assert_eq!(t.children()[1], vec![2, 3]);
    }

    #[test]
    fn components_are_ordered() {
        let g = GeneralGraph::new(5, [(3, 4), (0, 2)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3, 4]]);
    }
}
