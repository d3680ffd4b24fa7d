//! Exact oracles and the simple partitioners that match the hardness bounds.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num::traits::PrimInt;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::Graph;
use crate::graph::TreeGraph;
use crate::grid::GridGraph;
use crate::par::{map_collect, Exec};
use crate::partition::{cut_size, part_capacity, Partition};

/// Largest graph accepted by [`exact_balanced_mincut`].
pub const MAX_EXACT_VERTICES: usize = 20;
/// Largest component count accepted by [`components_packing`].
pub const MAX_PACKING_COMPONENTS: usize = 30;
/// Largest number of edge subsets [`corner_cut_oracle`] will enumerate.
pub const CORNER_CUT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub partition: Partition,
    pub cut: usize,
    /// True only for results proven optimal.
    pub optimal: bool,
    pub algorithm: &'static str,
}

/// Minimum cut over all `k`-colourings whose parts hold at most
/// `(1+eps) * ceil(n/k)` vertices.
pub fn exact_balanced_mincut<G: Graph + ?Sized>(
    graph: &G,
    k: usize,
    epsilon: Rational,
) -> Result<SolveResult> {
    exact_balanced_mincut_with(graph, k, epsilon, Exec::default())
}

/// Branch and bound over colour vectors in lexicographic order. Vertices
/// are coloured by index, colour `c` may only appear after `c - 1`, and a
/// branch dies when a part is full or its partial cut reaches the best cut.
/// The witness is the lexicographically smallest optimal canonical vector,
/// regardless of `exec`.
pub fn exact_balanced_mincut_with<G: Graph + ?Sized>(
    graph: &G,
    k: usize,
    epsilon: Rational,
    exec: Exec,
) -> Result<SolveResult> {
    let n = graph.num_vertices();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceed the exact solver limit {MAX_EXACT_VERTICES}"
        )));
    }
    let cap = part_capacity(n, k, epsilon)?;
    let mut lower = vec![Vec::new(); n];
    for &(u, v) in graph.edges() {
        lower[v].push(u);
    }

    let depth = n.min(6);
    let prefixes = canonical_prefixes(depth, k, cap);
    let shared = AtomicUsize::new(usize::MAX);
    let results = map_collect(exec, prefixes, |prefix| {
        let mut search = BranchAndBound {
            n,
            k,
            cap,
            lower: &lower,
            colours: vec![0; n],
            sizes: vec![0; k],
            best_cut: usize::MAX,
            best: None,
            shared: &shared,
        };
        let mut cut = 0;
        let mut used = 0;
        for (v, &c) in prefix.iter().enumerate() {
            cut += search.lower[v]
                .iter()
                .filter(|&&u| search.colours[u] != c)
                .count();
            search.colours[v] = c;
            search.sizes[c] += 1;
            used = used.max(c + 1);
        }
        if cut <= shared.load(AtomicOrdering::Relaxed) {
            search.run(depth, used, cut);
        }
        search.best.map(|b| (search.best_cut, b))
    });
    let (cut, colours) = results
        .into_iter()
        .flatten()
        .min()
        .ok_or_else(|| Error::Infeasible("no balanced colouring exists".into()))?;
    Ok(SolveResult {
        partition: Partition::new(k, colours)?,
        cut,
        optimal: true,
        algorithm: "exact",
    })
}

/// Canonical colour prefixes of length `depth` that respect the part cap.
fn canonical_prefixes(depth: usize, k: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(
        depth: usize,
        k: usize,
        cap: usize,
        acc: &mut Vec<usize>,
        sizes: &mut [usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        if acc.len() == depth {
            out.push(acc.clone());
            return;
        }
        let used = acc.iter().map(|&c| c + 1).max().unwrap_or(0);
        for c in 0..k.min(used + 1) {
            if sizes[c] < cap {
                sizes[c] += 1;
                acc.push(c);
                rec(depth, k, cap, acc, sizes, out);
                acc.pop();
                sizes[c] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(depth, k, cap, &mut Vec::new(), &mut vec![0; k], &mut out);
    out
}

struct BranchAndBound<'a> {
    n: usize,
    k: usize,
    cap: usize,
    lower: &'a [Vec<usize>],
    colours: Vec<usize>,
    sizes: Vec<usize>,
    best_cut: usize,
    best: Option<Vec<usize>>,
    shared: &'a AtomicUsize,
}

impl BranchAndBound<'_> {
    fn run(&mut self, v: usize, used: usize, cut: usize) {
        if v == self.n {
            if cut < self.best_cut {
                self.best_cut = cut;
                self.best = Some(self.colours.clone());
                self.shared.fetch_min(cut, AtomicOrdering::Relaxed);
            }
            return;
        }
        for c in 0..self.k.min(used + 1) {
            if self.sizes[c] == self.cap {
                continue;
            }
            let delta = self.lower[v]
                .iter()
                .filter(|&&u| self.colours[u] != c)
                .count();
            let next = cut + delta;
            // Ties with other subtrees must survive so the smallest vector wins.
            if next >= self.best_cut || next > self.shared.load(AtomicOrdering::Relaxed) {
                continue;
            }
            self.colours[v] = c;
            self.sizes[c] += 1;
            self.run(v + 1, used.max(c + 1), next);
            self.sizes[c] -= 1;
        }
        self.colours[v] = 0;
    }
}

/// A zero-cut partition whose parts hold at most `ceil(n/k)` vertices, if
/// the connected components can be packed that way.
pub fn components_packing<G: Graph + ?Sized>(graph: &G, k: usize) -> Result<Option<Partition>> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let comps = graph.components();
    if comps.len() > MAX_PACKING_COMPONENTS {
        return Err(Error::TooLarge(format!(
            "{} components exceed the packing limit {MAX_PACKING_COMPONENTS}",
            comps.len()
        )));
    }
    let cap = graph.num_vertices().div_ceil(k);
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(comps[i].len()));
    let sizes: Vec<usize> = order.iter().map(|&i| comps[i].len()).collect();

    fn pack(
        i: usize,
        sizes: &[usize],
        cap: usize,
        loads: &mut [usize],
        bin_of: &mut [usize],
    ) -> bool {
        if i == sizes.len() {
            return true;
        }
        for b in 0..loads.len() {
            // Bins with equal load are interchangeable.
            if loads[b] + sizes[i] > cap || loads[..b].contains(&loads[b]) {
                continue;
            }
            loads[b] += sizes[i];
            bin_of[i] = b;
            if pack(i + 1, sizes, cap, loads, bin_of) {
                return true;
            }
            loads[b] -= sizes[i];
        }
        false
    }

    let mut bin_of = vec![0; sizes.len()];
    if !pack(0, &sizes, cap, &mut vec![0; k], &mut bin_of) {
        return Ok(None);
    }
    let mut colour = vec![0; graph.num_vertices()];
    for (slot, &ci) in order.iter().enumerate() {
        for &v in &comps[ci] {
            colour[v] = bin_of[slot];
        }
    }
    Ok(Some(Partition::new(k, colour)?))
}

/// Cuts consecutive runs off a boustrophedon ordering of the grid.
///
/// The sweep advances along the longer side of the bounding box (rows on a
/// tie), so every boundary between consecutive parts crosses the shorter
/// side. The first `n mod k` parts get `ceil(n/k)` vertices, the rest
/// `floor(n/k)`. On a full `W x H` rectangle the cut is at most
/// `(k-1) * (min(W, H) + 1)`. Parts need not be connected.
pub fn snake_partition(grid: &GridGraph, k: usize) -> Result<SolveResult> {
    let n = grid.coords().len();
    if n == 0 {
        return Err(Error::InvalidInput("cannot partition an empty grid".into()));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let ((x0, y0), (x1, y1)) = grid.bounding_box().expect("nonempty");
    let by_columns = x1 - x0 > y1 - y0;
    let key = |&(x, y): &(i64, i64)| {
        let (major, minor) = if by_columns {
            (x - x0, y - y0)
        } else {
            (y - y0, x - x0)
        };
        (major, if major % 2 == 0 { minor } else { -minor })
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| key(&grid.coords()[v]));

    let (q, r) = (n / k, n % k);
    let mut colour = vec![0; n];
    let mut pos = 0;
    for part in 0..k {
        let size = q + usize::from(part < r);
        for &v in &order[pos..pos + size] {
            colour[v] = part;
        }
        pos += size;
    }
    let partition = Partition::new(k, colour)?;
    Ok(SolveResult {
        cut: cut_size(grid, &partition)?,
        partition,
        optimal: k == 1,
        algorithm: "snake",
    })
}

/// Exact minimum bisection of a tree into parts of `ceil(n/2)` and
/// `floor(n/2)` vertices.
///
/// For every vertex `v` and count `t`, the table holds the fewest edges cut
/// inside `v`'s subtree when exactly `t` of its vertices lie on `v`'s side.
/// Children are merged knapsack style, which is `O(n^2)` overall.
pub fn tree_bisection_dp(tree: &TreeGraph) -> Result<SolveResult> {
    const INF: usize = usize::MAX;
    let n = tree.num_vertices();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "bisection needs n >= 2, got {n}"
        )));
    }
    let children = tree.children();

    let mut order = Vec::with_capacity(n);
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        order.push(v);
        stack.extend(&children[v]);
    }

    // choice[v][i][t] = (t before child i, t inside child i, same side)
    let mut choice: Vec<Vec<Vec<(usize, usize, bool)>>> = vec![Vec::new(); n];
    let mut table: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order.iter().rev() {
        let mut cur = vec![INF, 0];
        for &c in &children[v] {
            let child = std::mem::take(&mut table[c]);
            let sc = child.len() - 1;
            let mut next = vec![INF; cur.len() + sc];
            let mut back = vec![(0, 0, true); next.len()];
            for (t1, &a) in cur.iter().enumerate().filter(|(_, &a)| a != INF) {
                for (t2, &b) in child.iter().enumerate().filter(|(_, &b)| b != INF) {
                    let same = (t1 + t2, a + b);
                    if same.1 < next[same.0] {
                        next[same.0] = same.1;
                        back[same.0] = (t1, t2, true);
                    }
                    let apart = (t1 + sc - t2, a + b + 1);
                    if apart.1 < next[apart.0] {
                        next[apart.0] = apart.1;
                        back[apart.0] = (t1, t2, false);
                    }
                }
            }
            cur = next;
            choice[v].push(back);
        }
        table[v] = cur;
    }

    let root_table = &table[tree.root()];
    let (target, cut) = [n.div_ceil(2), n / 2]
        .into_iter()
        .map(|t| (t, root_table[t]))
        .min_by_key(|&(_, c)| c)
        .expect("two candidates");

    let mut colour = vec![0; n];
    let mut work = vec![(tree.root(), target, 0usize)];
    while let Some((v, mut t, side)) = work.pop() {
        colour[v] = side;
        for (i, &c) in children[v].iter().enumerate().rev() {
            let (t1, t2, same) = choice[v][i][t];
            work.push((c, t2, if same { side } else { 1 - side }));
            t = t1;
        }
        debug_assert_eq!(t, 1);
    }
    let partition = Partition::new(2, colour)?;
    debug_assert_eq!(cut_size(tree, &partition)?, cut);
    Ok(SolveResult {
        partition,
        cut,
        optimal: true,
        algorithm: "tree-dp",
    })
}

/// Removes every edge and deals the singletons round-robin in index order.
///
/// This spends a budget of `n - 1` edges; the reported cut is the true cut
/// of the resulting colouring, which is smaller when an edge joins two
/// vertices dealt the same colour.
pub fn cut_all_edges_tree(tree: &TreeGraph, k: usize) -> Result<SolveResult> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let partition = Partition::new(k, (0..tree.num_vertices()).map(|v| v % k).collect())?;
    Ok(SolveResult {
        cut: cut_size(tree, &partition)?,
        partition,
        optimal: false,
        algorithm: "cut-all",
    })
}

/// Number of edge subsets of size at most `b` among `edges` edges.
pub fn subsets_up_to(edges: u128, b: u128) -> u128 {
    let mut total: u128 = 0;
    let mut term: u128 = 1;
    for j in 0..=b.min(edges) {
        if let Some(next) = term.saturating_mul(edges + 1 - j).checked_div(j) {
            term = next;
        }
        total = total.saturating_add(term);
    }
    total
}

/// Most vertices that removing at most `b` edges can separate from the
/// largest remaining component of a full `w x h` rectangle, by brute force
/// over every edge subset.
pub fn corner_cut_oracle(w: usize, h: usize, b: usize) -> Result<usize> {
    corner_cut_oracle_with(w, h, b, Exec::default())
}

pub fn corner_cut_oracle_with(w: usize, h: usize, b: usize, exec: Exec) -> Result<usize> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidInput(format!("empty rectangle {w}x{h}")));
    }
    let n = w * h;
    let edges = w * (h - 1) + h * (w - 1);
    let count = subsets_up_to(edges as u128, b as u128);
    if count > CORNER_CUT_BUDGET {
        return Err(Error::Budget(format!(
            "{count} subsets of at most {b} of {edges} edges exceed {CORNER_CUT_BUDGET}"
        )));
    }
    if n <= 64 {
        Ok(CornerCut::<u64>::new(w, h).max_separated(b, exec))
    } else if n <= 128 {
        Ok(CornerCut::<u128>::new(w, h).max_separated(b, exec))
    } else {
        Err(Error::TooLarge(format!(
            "{w}x{h} has more than 128 vertices"
        )))
    }
}

/// Bit-parallel flood fill over a rectangle whose vertex `(x, y)` is bit
/// `y * w + x`. Bit `i` of `right` (`up`) marks the edge from vertex `i` to
/// its right (upper) neighbour.
struct CornerCut<M> {
    w: usize,
    n: usize,
    right: M,
    up: M,
    /// `(is_horizontal, bit)` per edge.
    edges: Vec<(bool, usize)>,
}

impl<M: PrimInt + Send + Sync> CornerCut<M> {
    fn new(w: usize, h: usize) -> Self {
        let mut right = M::zero();
        let mut up = M::zero();
        let mut edges = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let bit = y * w + x;
                if x + 1 < w {
                    right = right | (M::one() << bit);
                    edges.push((true, bit));
                }
                if y + 1 < h {
                    up = up | (M::one() << bit);
                    edges.push((false, bit));
                }
            }
        }
        CornerCut {
            w,
            n: w * h,
            right,
            up,
            edges,
        }
    }

    fn all(&self) -> M {
        if self.n == M::zero().count_zeros() as usize {
            !M::zero()
        } else {
            (M::one() << self.n) - M::one()
        }
    }

    fn flood(&self, seed: M, right: M, up: M) -> M {
        let mut cur = seed;
        loop {
            let next = cur
                | ((cur & right) << 1)
                | ((cur >> 1) & right)
                | ((cur & up) << self.w)
                | ((cur >> self.w) & up);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// `n` minus the largest component after removing the missing edges.
    fn separated(&self, right: M, up: M) -> usize {
        let mut remaining = self.all();
        let mut largest = 0;
        while remaining != M::zero() {
            let seed = M::one() << remaining.trailing_zeros() as usize;
            let comp = self.flood(seed, right, up);
            largest = largest.max(comp.count_ones() as usize);
            remaining = remaining & !comp;
            if (remaining.count_ones() as usize) <= largest {
                break;
            }
        }
        self.n - largest
    }

    fn remove(&self, e: usize, right: M, up: M) -> (M, M) {
        let (horizontal, bit) = self.edges[e];
        let mask = !(M::one() << bit);
        if horizontal {
            (right & mask, up)
        } else {
            (right, up & mask)
        }
    }

    /// Best over every subset of at most `left` more edges drawn from `start..`.
    fn search(&self, start: usize, left: usize, right: M, up: M) -> usize {
        let mut best = self.separated(right, up);
        if left == 0 {
            return best;
        }
        for e in start..self.edges.len() {
            let (r, u) = self.remove(e, right, up);
            best = best.max(self.search(e + 1, left - 1, r, u));
        }
        best
    }

    fn max_separated(&self, b: usize, exec: Exec) -> usize {
        if b == 0 {
            return self.separated(self.right, self.up);
        }
        // Split on the smallest removed edge; the empty subset separates nothing.
        let firsts: Vec<usize> = (0..self.edges.len()).collect();
        map_collect(exec, firsts, |e| {
            let (r, u) = self.remove(e, self.right, self.up);
            self.search(e + 1, b - 1, r, u)
        })
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}
