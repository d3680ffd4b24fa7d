//! Audits of partitions against a reduction bundle, and the end-to-end
//! procedure that decides 3-PARTITION with a balanced partitioner.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{PowerProduct, Rational};
use crate::graph::Graph;
use crate::partition::{cut_size, is_balanced, CutReport, Partition};
use crate::reductions::{BundleGraph, Certificate, ReductionBundle};
use crate::solvers::{
    components_packing, corner_cut_oracle, cut_all_edges_tree, exact_balanced_mincut,
    snake_partition, tree_bisection_dp, SolveResult,
};
use crate::tpart::TripleSolution;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditOutcome {
    pub report: CutReport,
    /// Every part within `(1+eps) * ceil(n/k)` at the bundle's `eps`.
    pub balanced: bool,
    pub perfectly_balanced: bool,
    pub cut_within_alpha_m: bool,
    /// `minority_total < p - eps*n`.
    pub minority_ok: bool,
    /// A cut within `alpha*m` comes with few minority vertices.
    pub reduction_condition_holds: bool,
    pub certificates: Vec<Certificate>,
    /// `p - eps*n`.
    pub minority_budget: Rational,
    /// `(1+eps)*n/k - eps*n`: no colour class can be smaller under the balance cap.
    pub smallest_class_lower_bound: Rational,
}

impl AuditOutcome {
    pub fn certificates_pass(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }
}

fn check_partition(bundle: &ReductionBundle, partition: &Partition) -> Result<()> {
    let n = bundle.graph().num_vertices();
    if partition.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: partition.len(),
        });
    }
    if partition.k() as u64 != bundle.params().k {
        return Err(Error::Mismatch(format!(
            "partition has k = {}, bundle has k = {}",
            partition.k(),
            bundle.params().k
        )));
    }
    Ok(())
}

pub fn audit(bundle: &ReductionBundle, partition: &Partition) -> Result<AuditOutcome> {
    check_partition(bundle, partition)?;
    let params = bundle.params();
    let report = CutReport::compute(bundle.graph(), partition, bundle.gadget_of())?;
    let eps = params.epsilon;
    let n = Rational::from_integer(params.n as i64);
    let k = Rational::from_integer(params.k as i64);
    let minority_budget = Rational::from_integer(params.p as i64) - eps * n;
    let minority_ok = Rational::from_integer(report.minority_total as i64) < minority_budget;
    let cut_within_alpha_m = params.within_alpha_m(report.cut_size as u64)?;
    Ok(AuditOutcome {
        balanced: is_balanced(partition, eps)?,
        perfectly_balanced: is_balanced(partition, Rational::from_integer(0))?,
        cut_within_alpha_m,
        minority_ok,
        reduction_condition_holds: !cut_within_alpha_m || minority_ok,
        certificates: bundle.certificates()?,
        minority_budget,
        smallest_class_lower_bound: (Rational::from_integer(1) + eps) * n / k - eps * n,
        report,
    })
}

/// Colours every vertex of gadget `i` with the index of the triple holding `i`.
pub fn assemble_yes_partition(
    bundle: &ReductionBundle,
    solution: &TripleSolution,
) -> Result<Partition> {
    solution.check(bundle.source())?;
    let triple_of = solution.assignment(bundle.gadget_count());
    Partition::new(
        bundle.params().k as usize,
        bundle.gadget_of().iter().map(|&g| triple_of[g]).collect(),
    )
}

/// Strict-majority colour of each gadget.
pub fn extract_majority_assignment(
    bundle: &ReductionBundle,
    partition: &Partition,
) -> Result<Vec<usize>> {
    check_partition(bundle, partition)?;
    let report = crate::partition::minority_count(bundle.gadget_of(), partition)?;
    report
        .majority_colour
        .iter()
        .enumerate()
        .map(|(g, c)| c.ok_or(Error::NoMajority(g)))
        .collect()
}

/// Something that partitions a bundle's graph into `k` balanced parts.
pub trait Partitioner {
    fn name(&self) -> &str;
    fn partition(&self, bundle: &ReductionBundle) -> Result<Partition>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Exact,
    Snake,
    TreeDp,
    CutAll,
    Components,
    Assemble,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Snake => "snake",
            Algorithm::TreeDp => "tree-dp",
            Algorithm::CutAll => "cut-all",
            Algorithm::Components => "components",
            Algorithm::Assemble => "assemble",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Algorithm::*;
        [Exact, Snake, TreeDp, CutAll, Components, Assemble]
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown algorithm {s:?}")))
    }
}

/// Runs one of the library's algorithms on a bundle.
pub fn solve_bundle(
    bundle: &ReductionBundle,
    algorithm: Algorithm,
    solution: Option<&TripleSolution>,
) -> Result<SolveResult> {
    let k = bundle.params().k as usize;
    let graph = bundle.graph();
    let wrong_family = || {
        Error::InvalidInput(format!(
            "algorithm {algorithm} does not apply to a {} bundle",
            bundle.family()
        ))
    };
    match algorithm {
        Algorithm::Exact => exact_balanced_mincut(graph, k, bundle.params().epsilon),
        Algorithm::Snake => match graph {
            BundleGraph::Grid(g) => snake_partition(g, k),
            _ => Err(wrong_family()),
        },
        Algorithm::TreeDp => match graph {
            BundleGraph::Tree(t) if k == 2 => tree_bisection_dp(t),
            BundleGraph::Tree(_) => {
                Err(Error::InvalidInput(format!("tree-dp bisects, but k = {k}")))
            }
            _ => Err(wrong_family()),
        },
        Algorithm::CutAll => match graph {
            BundleGraph::Tree(t) => cut_all_edges_tree(t, k),
            _ => Err(wrong_family()),
        },
        Algorithm::Components => {
            let (partition, optimal) = match components_packing(graph, k)? {
                Some(p) => (p, true),
                // Any balanced colouring cuts at least one edge here.
                None => (round_robin(k, graph.num_vertices())?, false),
            };
            Ok(SolveResult {
                cut: cut_size(graph, &partition)?,
                partition,
                optimal,
                algorithm: "components",
            })
        }
        Algorithm::Assemble => {
            let solution = solution.ok_or_else(|| {
                Error::InvalidInput("assemble needs a 3-PARTITION solution".into())
            })?;
            let partition = assemble_yes_partition(bundle, solution)?;
            Ok(SolveResult {
                cut: cut_size(graph, &partition)?,
                partition,
                optimal: false,
                algorithm: "assemble",
            })
        }
    }
}

fn round_robin(k: usize, n: usize) -> Result<Partition> {
    Partition::new(k, (0..n).map(|v| v % k).collect())
}

/// Library algorithm used as a partitioner.
#[derive(Clone, Debug)]
pub struct AlgorithmPartitioner {
    pub algorithm: Algorithm,
    pub solution: Option<TripleSolution>,
}

impl AlgorithmPartitioner {
    pub fn new(algorithm: Algorithm) -> Self {
        AlgorithmPartitioner {
            algorithm,
            solution: None,
        }
    }
}

impl Partitioner for AlgorithmPartitioner {
    fn name(&self) -> &str {
        self.algorithm.name()
    }

    fn partition(&self, bundle: &ReductionBundle) -> Result<Partition> {
        Ok(solve_bundle(bundle, self.algorithm, self.solution.as_ref())?.partition)
    }
}

/// Returns a fixed partition.
#[derive(Clone, Debug)]
pub struct Replay(pub Partition);

impl Partitioner for Replay {
    fn name(&self) -> &str {
        "replay"
    }

    fn partition(&self, _bundle: &ReductionBundle) -> Result<Partition> {
        Ok(self.0.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
        })
    }
}

/// Answers YES iff the partitioner's cut is at most `alpha * m`.
///
/// The answer is only correct when the partitioner really approximates the
/// optimal perfectly balanced cut within `alpha` while respecting the
/// bundle's imbalance; the balance half of that contract is enforced here.
pub fn decide_three_partition(
    bundle: &ReductionBundle,
    partitioner: &dyn Partitioner,
    alpha: &PowerProduct,
) -> Result<Decision> {
    let partition = partitioner.partition(bundle)?;
    check_partition(bundle, &partition)?;
    if !is_balanced(&partition, bundle.params().epsilon)? {
        return Err(Error::BalanceViolated(format!(
            "{} produced parts {:?}",
            partitioner.name(),
            partition.part_sizes()
        )));
    }
    let cut = cut_size(bundle.graph(), &partition)?;
    let budget = alpha.clone().scaled(bundle.params().m);
    let within = budget.cmp_integer(&BigInt::from(cut))? != Ordering::Greater;
    Ok(if within { Decision::Yes } else { Decision::No })
}

/// Whether every removal of at most `b` edges from a full `w x h`
/// rectangle separates strictly less than `bound` vertices from the
/// largest remaining component.
pub fn separation_brute_check(w: usize, h: usize, b: usize, bound: Rational) -> Result<bool> {
    let worst = corner_cut_oracle(w, h, b)?;
    Ok(Rational::from_integer(worst as i64) < bound)
}
