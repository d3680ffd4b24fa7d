//! 3-PARTITION instances: validation, an exact backtracking solver and a
//! seeded generator for solvable, unsolvable and arbitrary instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, InstanceError, Result};

/// Largest number of triples the exact solver accepts (3k <= 24).
pub const MAX_EXACT_TRIPLES: u64 = 8;

/// Attempts made by [`generate`] in [`Mode::No`] before giving up.
pub const NO_INSTANCE_RETRIES: usize = 10_000;

/// `3k` integers strictly between `s/4` and `s/2` that sum to `k*s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartInstance {
    k: u64,
    s: u64,
    a: Vec<u64>,
}

impl ThreePartInstance {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

fn in_bounds(value: u64, s: u64) -> bool {
    4 * value > s && 2 * value < s
}

/// Checks length, bounds and sum, in that order.
pub fn validate(k: u64, s: u64, a: Vec<u64>) -> Result<ThreePartInstance, InstanceError> {
    if k == 0 || s == 0 {
        return Err(InstanceError::NonPositive { k, s });
    }
    let expected = 3 * k as usize;
    if a.len() != expected {
        return Err(InstanceError::Length {
            expected,
            got: a.len(),
        });
    }
    if let Some((index, &value)) = a.iter().enumerate().find(|(_, &v)| !in_bounds(v, s)) {
        return Err(InstanceError::Bound { index, value, s });
    }
    let got: u64 = a.iter().sum();
    if got != k * s {
        return Err(InstanceError::Sum {
            expected: k * s,
            got,
        });
    }
    Ok(ThreePartInstance { k, s, a })
}

/// `k` index triples partitioning `0..3k`, each summing to `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSolution {
    pub triples: Vec<[usize; 3]>,
}

impl TripleSolution {
    /// Re-checks the solution against `instance`.
    pub fn check(&self, instance: &ThreePartInstance) -> Result<()> {
        let n = instance.len();
        if self.triples.len() as u64 != instance.k() {
            return Err(Error::InvalidSolution(format!(
                "expected {} triples, got {}",
                instance.k(),
                self.triples.len()
            )));
        }
        let mut used = vec![false; n];
        for (t, triple) in self.triples.iter().enumerate() {
            let mut sum = 0;
            for &i in triple {
                if i >= n || used[i] {
                    return Err(Error::InvalidSolution(format!(
                        "triple {t} reuses or overflows index {i}"
                    )));
                }
                used[i] = true;
                sum += instance.a()[i];
            }
            if sum != instance.s() {
                return Err(Error::InvalidSolution(format!(
                    "triple {t} sums to {sum}, expected {}",
                    instance.s()
                )));
            }
        }
        Ok(())
    }

    /// Triple index of each integer.
    pub fn assignment(&self, len: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; len];
        for (t, triple) in self.triples.iter().enumerate() {
            for &i in triple {
                out[i] = t;
            }
        }
        out
    }
}

/// Deterministic backtracking: the smallest unassigned index anchors each
/// triple and partners are tried in increasing index order.
pub fn solve_exact(instance: &ThreePartInstance) -> Result<Option<TripleSolution>> {
    if instance.k() > MAX_EXACT_TRIPLES {
        return Err(Error::TooLarge(format!(
            "3k = {} exceeds {}",
            3 * instance.k(),
            3 * MAX_EXACT_TRIPLES
        )));
    }
    let mut used = vec![false; instance.len()];
    let mut triples = Vec::with_capacity(instance.k() as usize);
    Ok(
        backtrack(instance.a(), instance.s(), &mut used, &mut triples)
            .then_some(TripleSolution { triples }),
    )
}

fn backtrack(a: &[u64], s: u64, used: &mut [bool], triples: &mut Vec<[usize; 3]>) -> bool {
    let Some(anchor) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[anchor] = true;
    for j in anchor + 1..a.len() {
        if used[j] || a[anchor] + a[j] >= s {
            continue;
        }
        used[j] = true;
        let need = s - a[anchor] - a[j];
        for l in j + 1..a.len() {
            if used[l] || a[l] != need {
                continue;
            }
            used[l] = true;
            triples.push([anchor, j, l]);
            if backtrack(a, s, used, triples) {
                return true;
            }
            triples.pop();
            used[l] = false;
        }
        used[j] = false;
    }
    used[anchor] = false;
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Yes,
    No,
    Random,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(Mode::Yes),
            "no" => Ok(Mode::No),
            "random" => Ok(Mode::Random),
            other => Err(Error::InvalidInput(format!("unknown mode {other:?}"))),
        }
    }
}

/// Integers strictly between `s/4` and `s/2`.
fn admissible(s: u64) -> std::ops::RangeInclusive<u64> {
    (s / 4 + 1)..=((s - 1) / 2)
}

/// Sorted triples of admissible integers summing to `s`.
fn admissible_triples(s: u64) -> Vec<[u64; 3]> {
    let range = admissible(s);
    let mut out = Vec::new();
    for x in range.clone() {
        for y in x..=*range.end() {
            if x + y >= s {
                break;
            }
            let z = s - x - y;
            if z >= y && range.contains(&z) {
                out.push([x, y, z]);
            }
        }
    }
    out
}

pub fn generate(k: u64, s: u64, mode: Mode, seed: u64) -> Result<ThreePartInstance> {
    if k == 0 {
        return Err(Error::Infeasible("k must be positive".into()));
    }
    if s < 5 || admissible(s).is_empty() {
        return Err(Error::Infeasible(format!(
            "no integer lies strictly between {s}/4 and {s}/2"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        Mode::Yes => {
            let triples = admissible_triples(s);
            if triples.is_empty() {
                return Err(Error::Infeasible(format!(
                    "no admissible triple sums to {s}"
                )));
            }
            let mut a: Vec<u64> = (0..k)
                .flat_map(|_| *triples.choose(&mut rng).expect("nonempty"))
                .collect();
            a.shuffle(&mut rng);
            Ok(validate(k, s, a)?)
        }
        Mode::Random => random_instance(k, s, &mut rng),
        Mode::No => {
            if k > MAX_EXACT_TRIPLES {
                return Err(Error::TooLarge(format!(
                    "no-instances are certified by the exact solver, which accepts k <= {MAX_EXACT_TRIPLES}"
                )));
            }
            for _ in 0..NO_INSTANCE_RETRIES {
                let candidate = random_instance(k, s, &mut rng)?;
                if solve_exact(&candidate)?.is_none() {
                    return Ok(candidate);
                }
            }
            Err(Error::Infeasible(format!(
                "no unsolvable instance found for k={k}, s={s} after {NO_INSTANCE_RETRIES} attempts"
            )))
        }
    }
}

/// Starts every integer at the lower bound and hands out the remaining
/// mass one unit at a time to random integers that are not yet full.
fn random_instance(k: u64, s: u64, rng: &mut ChaCha8Rng) -> Result<ThreePartInstance> {
    let range = admissible(s);
    let (lo, hi) = (*range.start(), *range.end());
    if 3 * lo > s || 3 * hi < s {
        return Err(Error::Infeasible(format!(
            "admissible integers {lo}..={hi} cannot form a triple summing to {s}"
        )));
    }
    let len = 3 * k as usize;
    let mut a = vec![lo; len];
    let mut open: Vec<usize> = if lo < hi {
        (0..len).collect()
    } else {
        Vec::new()
    };
    let mut remaining = k * s - lo * len as u64;
    while remaining > 0 {
        let slot = rng.gen_range(0..open.len());
        let i = open[slot];
        a[i] += 1;
        remaining -= 1;
        if a[i] == hi {
            open.swap_remove(slot);
        }
    }
    Ok(validate(k, s, a)?)
}
