//! Reduction graphs built from 3-PARTITION instances.
//!
//! Each family places one gadget of `p * a_i` vertices per integer `a_i` and
//! joins consecutive gadgets with `m` connector edges. For the grid and tree
//! families the gadget scale `p` depends on the total vertex count `n`
//! through the approximation ratio `alpha = n^c * (2ks)^d`, so `n` is found
//! first as the fixed point of a ceiling equation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, BigUint};
use num::traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{smallest_satisfying, PowerProduct, Rational};
use crate::graph::{components_of, Edge, GeneralGraph, Graph, TreeGraph};
use crate::grid::{GridGraph, Point};
use crate::tpart::ThreePartInstance;

/// Instances are unary-scale; `k * s` above this is refused.
pub const MAX_KS: u64 = 1_000_000;

/// Largest reduction graph the builders will materialise.
pub const MAX_BUILD_VERTICES: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    General,
    GridFptas,
    GridPerfect,
    Tree,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::General => "general",
            Family::GridFptas => "grid-fptas",
            Family::GridPerfect => "grid-perfect",
            Family::Tree => "tree",
        }
    }

    pub fn is_grid(self) -> bool {
        matches!(self, Family::GridFptas | Family::GridPerfect)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Family::General,
            Family::GridFptas,
            Family::GridPerfect,
            Family::Tree,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| Error::InvalidInput(format!("unknown family {s:?}")))
    }
}

/// Result of solving a vertex-count equation.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedPointTrace {
    /// Nonzero fixed point of the ceiling-free right-hand side.
    pub n1: f64,
    /// `ceil(n1)`, computed exactly.
    pub n1_ceil: BigUint,
    /// Realised vertex count.
    pub u: BigUint,
    /// Right-hand side evaluated at `u`; equal to `u`.
    pub rhs_at_u: BigUint,
    /// Gadget height, for the grid families.
    pub h: Option<BigUint>,
    /// Vertices per unit of `a_i`.
    pub p: BigUint,
}

/// One of the three vertex-count equations.
#[derive(Clone, Copy, Debug)]
struct CountEquation {
    family: Family,
    k: u64,
    s: u64,
    c: Rational,
    d: Rational,
}

impl CountEquation {
    fn new(family: Family, k: u64, s: u64, c: Rational, d: Rational) -> Result<Self> {
        if k == 0 || s == 0 {
            return Err(Error::InvalidInput(format!(
                "k and s must be positive (k={k}, s={s})"
            )));
        }
        if k.checked_mul(s).is_none_or(|ks| ks > MAX_KS) {
            return Err(Error::Overflow(format!("k*s exceeds {MAX_KS}")));
        }
        if c < Rational::zero() || d < Rational::zero() {
            return Err(Error::InvalidInput(format!(
                "exponents must be nonnegative (c={c}, d={d})"
            )));
        }
        let limit = match family {
            Family::GridFptas | Family::GridPerfect => Rational::new(1, 2),
            Family::Tree => Rational::one(),
            Family::General => {
                return Err(Error::InvalidInput(
                    "the general family has a closed-form size".into(),
                ))
            }
        };
        if c >= limit {
            return Err(Error::InvalidInput(format!(
                "{family} requires c < {limit}, got {c}"
            )));
        }
        if family == Family::GridPerfect && !d.is_zero() {
            return Err(Error::InvalidInput(
                "grid-perfect takes no d exponent".into(),
            ));
        }
        Ok(CountEquation { family, k, s, c, d })
    }

    fn two_ks(&self) -> u64 {
        2 * self.k * self.s
    }

    /// `(base, root)` with `n1 = base^(1/root)`, where `base` is a power product.
    fn n1_form(&self) -> (PowerProduct, Rational) {
        let (k, s, b) = (self.k, self.s, self.two_ks());
        let one = Rational::one();
        let two = Rational::from_integer(2);
        match self.family {
            Family::GridFptas => (
                PowerProduct::integer(18 * k * k * k * s).times_power(b, two * self.d),
                one - two * self.c,
            ),
            Family::GridPerfect => (PowerProduct::integer(9 * k * k * k * s), one - two * self.c),
            Family::Tree => (
                PowerProduct::integer(6 * k * k * s).times_power(b, self.d),
                one - self.c,
            ),
            Family::General => unreachable!(),
        }
    }

    fn n1(&self) -> f64 {
        let (base, root) = self.n1_form();
        base.to_f64().powf(1.0 / root.to_f64().unwrap_or(f64::NAN))
    }

    fn n1_ceil(&self) -> Result<BigUint> {
        let (base, root) = self.n1_form();
        smallest_satisfying(self.n1(), |x| {
            let lhs = PowerProduct::one().times_power(x.clone(), root);
            Ok(lhs.try_cmp(&base)? != Ordering::Less)
        })
    }

    /// Right-hand side at integer `n`, returned as `(scale, value)`: the
    /// gadget height for grids, `p` for trees.
    fn rhs(&self, n: &BigUint) -> Result<(BigUint, BigUint)> {
        let (k, s, b) = (self.k, self.s, self.two_ks());
        let two = Rational::from_integer(2);
        let ks = BigUint::from(k * s);
        let nf = n.to_f64().unwrap_or(f64::INFINITY);
        let nc = nf.powf(self.c.to_f64().unwrap_or(f64::NAN));
        let bd = (b as f64).powf(self.d.to_f64().unwrap_or(f64::NAN));
        let n_int = BigInt::from(n.clone());
        match self.family {
            Family::GridFptas => {
                // Smallest h with h^2 * B - n >= 9k^2 * B^(2d+1) * n^(2c).
                let bound = PowerProduct::integer(9 * k * k * b)
                    .times_power(b, two * self.d)
                    .times_power(n.clone(), two * self.c);
                let estimate = ((3.0 * k as f64 * nc * bd).powi(2) + nf / b as f64).sqrt();
                let h = smallest_satisfying(estimate, |h| {
                    let lhs = BigInt::from(h * h * b) - &n_int;
                    Ok(bound.cmp_integer(&lhs)? != Ordering::Less)
                })?;
                let value = &h * &h * ks;
                Ok((h, value))
            }
            Family::GridPerfect => {
                // Smallest h with h >= 3k * n^c.
                let bound = PowerProduct::integer(3 * k).times_power(n.clone(), self.c);
                let h = smallest_satisfying(3.0 * k as f64 * nc, |h| {
                    Ok(bound.cmp_integer(&BigInt::from(h.clone()))? != Ordering::Less)
                })?;
                let value = &h * &h * ks;
                Ok((h, value))
            }
            Family::Tree => {
                // Smallest t with t * B - n >= 3k * B^(d+1) * n^c.
                let bound = PowerProduct::integer(3 * k * b)
                    .times_power(b, self.d)
                    .times_power(n.clone(), self.c);
                let estimate = 3.0 * k as f64 * nc * bd + nf / b as f64;
                let t = smallest_satisfying(estimate, |t| {
                    let lhs = BigInt::from(t * b) - &n_int;
                    Ok(bound.cmp_integer(&lhs)? != Ordering::Less)
                })?;
                let value = &t * ks;
                Ok((t, value))
            }
            Family::General => unreachable!(),
        }
    }

    fn solve(&self) -> Result<FixedPointTrace> {
        let n1 = self.n1();
        let n1_ceil = self.n1_ceil()?;
        // The right-hand side is a nondecreasing step function that is
        // constant on [n1, n2] with u <= n2, so evaluating it at ceil(n1)
        // gives the same u as evaluating it at n1.
        let (scale, u) = self.rhs(&n1_ceil)?;
        let (_, rhs_at_u) = self.rhs(&u)?;
        if rhs_at_u != u || u < n1_ceil {
            return Err(Error::FixedPoint(format!(
                "{}: rhs({u}) = {rhs_at_u}, ceil(n1) = {n1_ceil}",
                self.family
            )));
        }
        let (h, p) = if self.family.is_grid() {
            (Some(scale.clone()), &scale * &scale)
        } else {
            (None, scale)
        };
        Ok(FixedPointTrace {
            n1,
            n1_ceil,
            u,
            rhs_at_u,
            h,
            p,
        })
    }
}

/// Vertex count of the grid family at imbalance `1/(2ks)`.
pub fn solve_count_grid_fptas(k: u64, s: u64, c: Rational, d: Rational) -> Result<FixedPointTrace> {
    CountEquation::new(Family::GridFptas, k, s, c, d)?.solve()
}

/// Vertex count of the grid family for perfectly balanced partitions.
pub fn solve_count_grid_perfect(k: u64, s: u64, c: Rational) -> Result<FixedPointTrace> {
    CountEquation::new(Family::GridPerfect, k, s, c, Rational::zero())?.solve()
}

/// Vertex count of the tree family at imbalance `1/(2ks)`.
pub fn solve_count_tree(k: u64, s: u64, c: Rational, d: Rational) -> Result<FixedPointTrace> {
    CountEquation::new(Family::Tree, k, s, c, d)?.solve()
}

/// Right-hand side of a family's vertex-count equation at integer `n`.
pub fn count_rhs(
    family: Family,
    k: u64,
    s: u64,
    c: Rational,
    d: Rational,
    n: &BigUint,
) -> Result<BigUint> {
    Ok(CountEquation::new(family, k, s, c, d)?.rhs(n)?.1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    pub family: Family,
    pub k: u64,
    pub s: u64,
    pub c: Rational,
    pub d: Rational,
    pub epsilon: Rational,
    pub p: u64,
    pub m: u64,
    pub n: u64,
    pub h: Option<u64>,
}

fn to_u64(v: &BigUint, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Overflow(format!("{what} = {v} does not fit in 64 bits")))
}

impl ReductionParams {
    /// Solves for the vertex count and collects the family's parameters.
    pub fn derive(family: Family, k: u64, s: u64, c: Rational, d: Rational) -> Result<Self> {
        if family == Family::General {
            if !c.is_zero() || !d.is_zero() {
                return Err(Error::InvalidInput(
                    "the general family takes no exponents".into(),
                ));
            }
            if k == 0 || s == 0 {
                return Err(Error::InvalidInput(format!(
                    "k and s must be positive (k={k}, s={s})"
                )));
            }
            if k.checked_mul(s).is_none_or(|ks| ks > MAX_KS) {
                return Err(Error::Overflow(format!("k*s exceeds {MAX_KS}")));
            }
            return Ok(ReductionParams {
                family,
                k,
                s,
                c,
                d,
                epsilon: Rational::new(1, (2 * k * s) as i64),
                p: 2,
                m: 0,
                n: 2 * k * s,
                h: None,
            });
        }
        let eq = CountEquation::new(family, k, s, c, d)?;
        let trace = eq.solve()?;
        let epsilon = match family {
            Family::GridPerfect => Rational::zero(),
            _ => Rational::new(1, eq.two_ks() as i64),
        };
        Ok(ReductionParams {
            family,
            k,
            s,
            c,
            d,
            epsilon,
            p: to_u64(&trace.p, "p")?,
            m: 3 * k - 1,
            n: to_u64(&trace.u, "n")?,
            h: trace.h.as_ref().map(|h| to_u64(h, "h")).transpose()?,
        })
    }

    pub fn two_ks(&self) -> u64 {
        2 * self.k * self.s
    }

    /// `n^c * (2ks)^d`, exact.
    pub fn alpha(&self) -> PowerProduct {
        PowerProduct::one()
            .times_power(self.n, self.c)
            .times_power(self.two_ks(), self.d)
    }

    /// `alpha * m`, the cut budget of a reduction set member.
    pub fn alpha_m(&self) -> PowerProduct {
        self.alpha().scaled(self.m)
    }

    /// Whether `cut <= alpha * m`, decided exactly.
    pub fn within_alpha_m(&self, cut: u64) -> Result<bool> {
        Ok(self.alpha_m().cmp_integer(&BigInt::from(cut))? != Ordering::Greater)
    }
}

/// The concrete graph inside a bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleGraph {
    Grid(GridGraph),
    Tree(TreeGraph),
    General(GeneralGraph),
}

impl Graph for BundleGraph {
    fn num_vertices(&self) -> usize {
        match self {
            BundleGraph::Grid(g) => g.num_vertices(),
            BundleGraph::Tree(g) => g.num_vertices(),
            BundleGraph::General(g) => g.num_vertices(),
        }
    }

    fn edges(&self) -> &[Edge] {
        match self {
            BundleGraph::Grid(g) => g.edges(),
            BundleGraph::Tree(g) => g.edges(),
            BundleGraph::General(g) => g.edges(),
        }
    }
}

/// A named analytic check with its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
}

impl Certificate {
    fn new(name: &str, passed: bool) -> Self {
        Certificate {
            name: name.to_string(),
            passed,
        }
    }
}

/// A built reduction graph with its gadget map and parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionBundle {
    params: ReductionParams,
    graph: BundleGraph,
    gadget_of: Vec<usize>,
    connectors: Vec<Edge>,
    source: ThreePartInstance,
}

impl ReductionBundle {
    /// Assembles a bundle and checks its structural invariants.
    pub fn from_parts(
        params: ReductionParams,
        graph: BundleGraph,
        gadget_of: Vec<usize>,
        connectors: Vec<Edge>,
        source: ThreePartInstance,
    ) -> Result<Self> {
        let mut connectors: Vec<Edge> = connectors
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        connectors.sort_unstable();
        let bundle = ReductionBundle {
            params,
            graph,
            gadget_of,
            connectors,
            source,
        };
        bundle.check_structure()?;
        Ok(bundle)
    }

    pub fn params(&self) -> &ReductionParams {
        &self.params
    }

    pub fn graph(&self) -> &BundleGraph {
        &self.graph
    }

    pub fn gadget_of(&self) -> &[usize] {
        &self.gadget_of
    }

    pub fn connectors(&self) -> &[Edge] {
        &self.connectors
    }

    pub fn source(&self) -> &ThreePartInstance {
        &self.source
    }

    pub fn family(&self) -> Family {
        self.params.family
    }

    pub fn gadget_count(&self) -> usize {
        self.source.len()
    }

    pub fn gadget_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.gadget_count()];
        for &g in &self.gadget_of {
            sizes[g] += 1;
        }
        sizes
    }

    /// Gadget sizes are `p * a_i`, they sum to `n`, the connectors are
    /// exactly the inter-gadget edges, and removing them leaves one
    /// connected component per gadget.
    pub fn check_structure(&self) -> Result<()> {
        let p = &self.params;
        let src = &self.source;
        if (p.k, p.s) != (src.k(), src.s()) {
            return Err(Error::Mismatch(format!(
                "params are for (k={}, s={}), instance is (k={}, s={})",
                p.k,
                p.s,
                src.k(),
                src.s()
            )));
        }
        let n = self.graph.num_vertices();
        if n as u64 != p.n || self.gadget_of.len() != n {
            return Err(Error::Mismatch(format!(
                "graph has {n} vertices and {} gadget labels, params say n = {}",
                self.gadget_of.len(),
                p.n
            )));
        }
        if let Some(&g) = self.gadget_of.iter().find(|&&g| g >= src.len()) {
            return Err(Error::Mismatch(format!("gadget label {g} out of range")));
        }
        for (i, (&size, &a)) in self.gadget_sizes().iter().zip(src.a()).enumerate() {
            if size as u64 != p.p * a {
                return Err(Error::Mismatch(format!(
                    "gadget {i} has {size} vertices, expected p*a_i = {}",
                    p.p * a
                )));
            }
        }
        if self.connectors.len() as u64 != p.m {
            return Err(Error::Mismatch(format!(
                "{} connector edges, expected m = {}",
                self.connectors.len(),
                p.m
            )));
        }
        let crossing: Vec<Edge> = self
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.gadget_of[u] != self.gadget_of[v])
            .collect();
        if crossing != self.connectors {
            return Err(Error::Mismatch(
                "connector edges differ from the inter-gadget edges".into(),
            ));
        }
        let inner = self
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.gadget_of[u] == self.gadget_of[v]);
        let comps = components_of(n, inner);
        if comps.len() != src.len() {
            return Err(Error::Mismatch(format!(
                "removing connectors leaves {} components, expected {}",
                comps.len(),
                src.len()
            )));
        }
        Ok(())
    }

    /// Family-specific analytic checks that make the bundle a valid
    /// reduction set member, all decided exactly.
    pub fn certificates(&self) -> Result<Vec<Certificate>> {
        let p = &self.params;
        let n = BigInt::from(p.n);
        let (e_num, e_den) = (
            BigInt::from(*p.epsilon.numer()),
            BigInt::from(*p.epsilon.denom()),
        );
        let e_den_u = BigUint::from(*p.epsilon.denom() as u64);
        // p - eps*n, scaled by the denominator of eps.
        let slack = BigInt::from(p.p) * &e_den - &e_num * &n;
        let size_identity =
            self.source.a().iter().map(|&a| p.p * a).sum::<u64>() == p.n && p.p * p.k * p.s == p.n;
        let mut out = vec![Certificate::new(
            "size identity: sum p*a_i = p*k*s = n",
            size_identity,
        )];
        match p.family {
            Family::GridFptas | Family::GridPerfect => {
                let h = p.h.unwrap_or(0);
                out.push(Certificate::new("gadget area is h^2", h * h == p.p));
                let height = p.alpha_m().cmp_integer(&BigInt::from(h))? == Ordering::Greater;
                out.push(Certificate::new("h > alpha*m", height));
                let squared = p.alpha_m().powi(2).scaled(e_den_u);
                let mass = squared.cmp_integer(&slack)? == Ordering::Greater;
                out.push(Certificate::new("p > (alpha*m)^2 + eps*n", mass));
            }
            Family::Tree => {
                let bound = p.alpha().scaled(3 * p.k).scaled(e_den_u);
                let scale = bound.cmp_integer(&slack)? != Ordering::Less;
                out.push(Certificate::new("p >= 3k*alpha + eps*n", scale));
                let min_a = self.source.a().iter().copied().min().unwrap_or(0);
                let min_star = p
                    .alpha()
                    .scaled(6 * p.k)
                    .cmp_integer(&BigInt::from(p.p * min_a))?
                    != Ordering::Less;
                out.push(Certificate::new("min gadget >= 6k*alpha", min_star));
            }
            Family::General => {
                out.push(Certificate::new(
                    "m = 0",
                    p.m == 0 && self.connectors.is_empty(),
                ));
                out.push(Certificate::new("p = 2", p.p == 2));
            }
        }
        Ok(out)
    }
}

fn check_params(instance: &ThreePartInstance, params: &ReductionParams) -> Result<()> {
    if (params.k, params.s) != (instance.k(), instance.s()) {
        return Err(Error::Mismatch(format!(
            "params are for (k={}, s={}), instance is (k={}, s={})",
            params.k,
            params.s,
            instance.k(),
            instance.s()
        )));
    }
    let total: u64 = instance.a().iter().map(|&a| params.p * a).sum();
    if total != params.n {
        return Err(Error::Mismatch(format!(
            "sum p*a_i = {total} differs from n = {}",
            params.n
        )));
    }
    if params.n > MAX_BUILD_VERTICES {
        return Err(Error::Overflow(format!(
            "n = {} exceeds the build limit {MAX_BUILD_VERTICES}",
            params.n
        )));
    }
    Ok(())
}

/// Rectangles of height `h` and width `h * a_i`, placed flush left to right
/// and joined only by one edge between the bottom corners of neighbours.
pub fn build_grid_reduction(
    instance: &ThreePartInstance,
    params: &ReductionParams,
) -> Result<ReductionBundle> {
    if !params.family.is_grid() {
        return Err(Error::Mismatch(format!(
            "{} params cannot build a grid",
            params.family
        )));
    }
    check_params(instance, params)?;
    let h = params.h.filter(|&h| h * h == params.p).ok_or_else(|| {
        Error::Mismatch(format!(
            "p = {} is not h^2 for h = {:?}",
            params.p, params.h
        ))
    })?;
    let n = params.n as usize;
    let hu = h as usize;
    let width: usize = instance.a().iter().map(|&a| (h * a) as usize).sum();
    let index = |x: usize, y: usize| x * hu + y;

    let mut coords: Vec<Point> = Vec::with_capacity(n);
    let mut gadget_of = Vec::with_capacity(n);
    let mut column_gadget = Vec::with_capacity(width);
    for (i, &a) in instance.a().iter().enumerate() {
        column_gadget.extend(std::iter::repeat_n(i, (h * a) as usize));
    }
    for (x, &g) in column_gadget.iter().enumerate() {
        for y in 0..hu {
            coords.push((x as i64, y as i64));
            gadget_of.push(g);
        }
    }

    let mut edges = Vec::with_capacity(2 * n);
    let mut connectors = Vec::with_capacity(params.m as usize);
    for x in 0..width {
        for y in 0..hu {
            if y + 1 < hu {
                edges.push((index(x, y), index(x, y + 1)));
            }
            if x + 1 < width {
                let same = column_gadget[x] == column_gadget[x + 1];
                if same {
                    edges.push((index(x, y), index(x + 1, y)));
                } else if y == 0 {
                    let e = (index(x, 0), index(x + 1, 0));
                    edges.push(e);
                    connectors.push(e);
                }
            }
        }
    }
    edges.sort_unstable();
    let graph = BundleGraph::Grid(GridGraph::from_parts_unchecked(coords, edges));
    ReductionBundle::from_parts(
        params.clone(),
        graph,
        gadget_of,
        connectors,
        instance.clone(),
    )
}

/// Stars of `p * a_i` vertices whose centres form a path in gadget order.
/// Each gadget is a contiguous index block starting at its centre.
pub fn build_tree_reduction(
    instance: &ThreePartInstance,
    params: &ReductionParams,
) -> Result<ReductionBundle> {
    if params.family != Family::Tree {
        return Err(Error::Mismatch(format!(
            "{} params cannot build a tree",
            params.family
        )));
    }
    check_params(instance, params)?;
    let n = params.n as usize;
    let mut parent = Vec::with_capacity(n);
    let mut gadget_of = Vec::with_capacity(n);
    let mut connectors = Vec::new();
    let mut prev_centre = None;
    for (i, &a) in instance.a().iter().enumerate() {
        let centre = parent.len();
        parent.push(prev_centre);
        if let Some(pc) = prev_centre {
            connectors.push((pc, centre));
        }
        gadget_of.push(i);
        for _ in 1..params.p * a {
            parent.push(Some(centre));
            gadget_of.push(i);
        }
        prev_centre = Some(centre);
    }
    let graph = BundleGraph::Tree(TreeGraph::from_parents(parent)?);
    ReductionBundle::from_parts(
        params.clone(),
        graph,
        gadget_of,
        connectors,
        instance.clone(),
    )
}

/// Disjoint paths on `2 * a_i` vertices.
pub fn build_general_reduction(instance: &ThreePartInstance) -> Result<ReductionBundle> {
    let params = ReductionParams::derive(
        Family::General,
        instance.k(),
        instance.s(),
        Rational::zero(),
        Rational::zero(),
    )?;
    check_params(instance, &params)?;
    let mut edges = Vec::with_capacity(params.n as usize);
    let mut gadget_of = Vec::with_capacity(params.n as usize);
    for (i, &a) in instance.a().iter().enumerate() {
        let start = gadget_of.len();
        for j in 0..(2 * a) as usize {
            if j > 0 {
                edges.push((start + j - 1, start + j));
            }
            gadget_of.push(i);
        }
    }
    let graph = BundleGraph::General(GeneralGraph::new(params.n as usize, edges)?);
    ReductionBundle::from_parts(params, graph, gadget_of, Vec::new(), instance.clone())
}

/// Derives parameters for `family` and builds the matching bundle.
pub fn build_reduction(
    instance: &ThreePartInstance,
    family: Family,
    c: Rational,
    d: Rational,
) -> Result<ReductionBundle> {
    match family {
        Family::General => {
            if !c.is_zero() || !d.is_zero() {
                return Err(Error::InvalidInput(
                    "the general family takes no exponents".into(),
                ));
            }
            build_general_reduction(instance)
        }
        Family::Tree => {
            let params = ReductionParams::derive(family, instance.k(), instance.s(), c, d)?;
            build_tree_reduction(instance, &params)
        }
        Family::GridFptas | Family::GridPerfect => {
            let params = ReductionParams::derive(family, instance.k(), instance.s(), c, d)?;
            build_grid_reduction(instance, &params)
        }
    }
}
