//! Colourings and the metrics computed from them.

use num::traits::Signed;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::Graph;

/// Assignment of every vertex to one of `k` colours.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    k: usize,
    colour: Vec<usize>,
}

impl Partition {
    pub fn new(k: usize, colour: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidPartition("k must be at least 1".into()));
        }
        if let Some((v, &c)) = colour.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} has colour {c}, outside [0, {k})"
            )));
        }
        Ok(Partition { k, colour })
    }

    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        Self::new(k, vec![0; n])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colour.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colour.is_empty()
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colour[v]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colour
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.colour {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Audit of a partition, optionally relative to a gadget decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutReport {
    pub cut_size: usize,
    pub part_sizes: Vec<usize>,
    pub max_part: usize,
    pub minority_total: usize,
    /// Strict-majority colour of each gadget, if it has one.
    pub majority_colour: Vec<Option<usize>>,
}

impl CutReport {
    pub fn compute<G: Graph + ?Sized>(
        graph: &G,
        partition: &Partition,
        gadget_of: &[usize],
    ) -> Result<Self> {
        let cut_size = cut_size(graph, partition)?;
        let minority = minority_count(gadget_of, partition)?;
        let part_sizes = partition.part_sizes();
        Ok(CutReport {
            cut_size,
            max_part: part_sizes.iter().copied().max().unwrap_or(0),
            part_sizes,
            minority_total: minority.minority_total,
            majority_colour: minority.majority_colour,
        })
    }
}

pub fn cut_size<G: Graph + ?Sized>(graph: &G, partition: &Partition) -> Result<usize> {
    check_len(graph.num_vertices(), partition.len())?;
    Ok(graph
        .edges()
        .iter()
        .filter(|&&(u, v)| partition.colour(u) != partition.colour(v))
        .count())
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}

/// Largest part size allowed at imbalance `epsilon`: `floor((1+eps) * ceil(n/k))`.
pub fn part_capacity(n: usize, k: usize, epsilon: Rational) -> Result<usize> {
    if epsilon.is_negative() {
        return Err(Error::InvalidInput(format!(
            "epsilon must be nonnegative, got {epsilon}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let ceil = n.div_ceil(k) as i128;
    let (num, den) = (*epsilon.numer() as i128, *epsilon.denom() as i128);
    Ok(((den + num) * ceil / den) as usize)
}

/// Every part has at most `(1+eps) * ceil(n/k)` vertices, compared exactly.
pub fn is_balanced(partition: &Partition, epsilon: Rational) -> Result<bool> {
    let cap = part_capacity(partition.len(), partition.k(), epsilon)?;
    Ok(partition.part_sizes().iter().all(|&s| s <= cap))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorityReport {
    pub minority_total: usize,
    pub majority_colour: Vec<Option<usize>>,
}

/// Counts minority vertices: those whose colour is held by fewer than half
/// of their gadget. A colour held by exactly half is not a minority, and a
/// gadget split exactly in half has no majority colour.
pub fn minority_count(gadget_of: &[usize], partition: &Partition) -> Result<MinorityReport> {
    check_len(partition.len(), gadget_of.len())?;
    let gadgets = gadget_of.iter().map(|&g| g + 1).max().unwrap_or(0);
    let k = partition.k();
    let mut counts = vec![0usize; gadgets * k];
    let mut sizes = vec![0usize; gadgets];
    for (v, &g) in gadget_of.iter().enumerate() {
        counts[g * k + partition.colour(v)] += 1;
        sizes[g] += 1;
    }
    let mut minority_total = 0;
    let mut majority_colour = Vec::with_capacity(gadgets);
    for g in 0..gadgets {
        let row = &counts[g * k..(g + 1) * k];
        minority_total += row.iter().filter(|&&c| 2 * c < sizes[g]).sum::<usize>();
        majority_colour.push(row.iter().position(|&c| 2 * c > sizes[g]));
    }
    Ok(MinorityReport {
        minority_total,
        majority_colour,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GeneralGraph;
    use crate::grid::GridGraph;

    fn p(k: usize, c: &[usize]) -> Partition {
        Partition::new(k, c.to_vec()).unwrap()
    }

    #[test]
    fn cut_of_a_halved_cycle() {
        let g = GeneralGraph::cycle(4).unwrap();
        assert_eq!(cut_size(&g, &p(2, &[0, 0, 1, 1])).unwrap(), 2);
        assert_eq!(cut_size(&g, &p(2, &[0, 0, 0, 0])).unwrap(), 0);
        assert!(matches!(
            cut_size(&g, &p(2, &[0, 0, 1])),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 3
            })
        ));
    }

    #[test]
    fn cut_of_left_column_in_3x3() {
        let g = GridGraph::rectangle(3, 3);
        let colours: Vec<usize> = g
            .coords()
            .iter()
            .map(|&(x, _)| usize::from(x != 0))
            .collect();
        // Oracle: count horizontal edges leaving column 0 by hand.
        let by_hand = g
            .edges()
            .iter()
            .filter(|&&(u, v)| (g.coords()[u].0 == 0) != (g.coords()[v].0 == 0))
            .count();
        assert_eq!(by_hand, 3);
        assert_eq!(cut_size(&g, &p(2, &colours)).unwrap(), by_hand);
    }

    #[test]
    fn balance_examples() {
        let zero = Rational::from_integer(0);
        assert!(is_balanced(&p(2, &[0, 0, 0, 1, 1, 1]), zero).unwrap());
        assert!(!is_balanced(&p(2, &[0, 0, 0, 0, 1, 1]), zero).unwrap());
        assert!(is_balanced(&p(2, &[0, 0, 0, 0, 1, 1, 1]), zero).unwrap());
        assert!(is_balanced(&p(2, &[0, 0, 0, 0, 1, 1]), Rational::new(1, 3)).unwrap());
        assert!(!is_balanced(&p(2, &[0, 0, 0, 0, 1, 1]), Rational::new(1, 4)).unwrap());
        assert!(is_balanced(&p(2, &[0]), Rational::new(-1, 2)).is_err());
    }

    #[test]
    fn capacity_is_exact_at_the_boundary() {
        // ceil(10/3) = 4; (1 + 1/4) * 4 = 5 exactly.
        assert_eq!(part_capacity(10, 3, Rational::new(1, 4)).unwrap(), 5);
        assert_eq!(part_capacity(10, 3, Rational::new(24, 100)).unwrap(), 4);
    }

    #[test]
    fn minority_examples() {
        let r = minority_count(&[0; 4], &p(2, &[0, 0, 0, 1])).unwrap();
        assert_eq!((r.minority_total, r.majority_colour), (1, vec![Some(0)]));

        let r = minority_count(&[0; 4], &p(2, &[0, 0, 1, 1])).unwrap();
        assert_eq!((r.minority_total, r.majority_colour), (0, vec![None]));

        let gadgets = [0, 0, 0, 0, 1, 1, 1, 1, 1, 1];
        let part = p(2, &[0, 0, 0, 1, 1, 1, 1, 1, 0, 0]);
        let r = minority_count(&gadgets, &part).unwrap();
        // Direct count: gadget 0 has one vertex of colour 1; gadget 1 has two of colour 0.
        let direct: usize = (0..10)
            .filter(|&v| {
                let same = (0..10)
                    .filter(|&u| gadgets[u] == gadgets[v] && part.colour(u) == part.colour(v))
                    .count();
                let size = gadgets.iter().filter(|&&g| g == gadgets[v]).count();
                2 * same < size
            })
            .count();
        assert_eq!(direct, 3);
        assert_eq!(r.minority_total, direct);
        assert_eq!(r.majority_colour, vec![Some(0), Some(1)]);
    }

    #[test]
    fn rejects_out_of_range_colours() {
        assert!(Partition::new(2, vec![0, 2]).is_err());
        assert!(Partition::new(0, vec![]).is_err());
    }
}
