//! JSON interchange files.
//!
//! Keys are written sorted, output is compact, and no semantic field is a
//! float: rationals are `[numerator, denominator]` pairs and the
//! approximation ratio is recoverable from `c`, `d` and the realised `n`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::{Edge, GeneralGraph, Graph, TreeGraph};
use crate::grid::{GridGraph, Point};
use crate::partition::Partition;
use crate::reductions::{BundleGraph, Family, ReductionBundle, ReductionParams};
use crate::tpart::{validate, ThreePartInstance, TripleSolution};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    a: Vec<u64>,
    k: u64,
    s: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionFile {
    colors: Vec<usize>,
    k: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    triples: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    c: [i64; 2],
    d: [i64; 2],
    epsilon: [i64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<u64>,
    k: u64,
    m: u64,
    n: u64,
    p: u64,
    s: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleFile {
    connectors: Vec<Edge>,
    edges: Vec<Edge>,
    family: String,
    gadget_of: Vec<usize>,
    params: ParamsFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Point>>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    // Going through `Value` sorts every object's keys.
    let value = serde_json::to_value(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn from_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed {what}: {e}")))
}

fn pair(r: Rational) -> [i64; 2] {
    [*r.numer(), *r.denom()]
}

fn rational(p: [i64; 2], what: &str) -> Result<Rational> {
    if p[1] == 0 {
        return Err(Error::InvalidInput(format!(
            "{what} has a zero denominator"
        )));
    }
    let r = Rational::new(p[0], p[1]);
    if (*r.numer(), *r.denom()) != (p[0], p[1]) {
        return Err(Error::InvalidInput(format!(
            "{what} = {}/{} is not in lowest terms",
            p[0], p[1]
        )));
    }
    Ok(r)
}

pub fn instance_to_json(instance: &ThreePartInstance) -> Result<String> {
    to_json(&InstanceFile {
        a: instance.a().to_vec(),
        k: instance.k(),
        s: instance.s(),
    })
}

pub fn instance_from_json(text: &str) -> Result<ThreePartInstance> {
    let f: InstanceFile = from_json(text, "instance")?;
    Ok(validate(f.k, f.s, f.a)?)
}

pub fn partition_to_json(partition: &Partition) -> Result<String> {
    to_json(&PartitionFile {
        colors: partition.colours().to_vec(),
        k: partition.k(),
    })
}

pub fn partition_from_json(text: &str) -> Result<Partition> {
    let f: PartitionFile = from_json(text, "partition")?;
    Partition::new(f.k, f.colors)
}

pub fn solution_to_json(solution: &TripleSolution) -> Result<String> {
    to_json(&SolutionFile {
        triples: solution.triples.clone(),
    })
}

pub fn solution_from_json(text: &str) -> Result<TripleSolution> {
    let f: SolutionFile = from_json(text, "solution")?;
    Ok(TripleSolution { triples: f.triples })
}

pub fn bundle_to_json(bundle: &ReductionBundle) -> Result<String> {
    let p = bundle.params();
    let vertices = match bundle.graph() {
        BundleGraph::Grid(g) => Some(g.coords().to_vec()),
        _ => None,
    };
    to_json(&BundleFile {
        connectors: bundle.connectors().to_vec(),
        edges: bundle.graph().edges().to_vec(),
        family: p.family.name().to_string(),
        gadget_of: bundle.gadget_of().to_vec(),
        params: ParamsFile {
            c: pair(p.c),
            d: pair(p.d),
            epsilon: pair(p.epsilon),
            h: p.h,
            k: p.k,
            m: p.m,
            n: p.n,
            p: p.p,
            s: p.s,
        },
        vertices,
    })
}

/// Parses a bundle, re-deriving its parameters and source instance.
///
/// The stored parameters must equal the ones derived from `(family, k, s,
/// c, d)`, and each `a_i` is recovered as gadget size over `p`.
pub fn bundle_from_json(text: &str) -> Result<ReductionBundle> {
    let f: BundleFile = from_json(text, "bundle")?;
    let family: Family = f.family.parse()?;
    let fp = &f.params;
    let stored = ReductionParams {
        family,
        k: fp.k,
        s: fp.s,
        c: rational(fp.c, "c")?,
        d: rational(fp.d, "d")?,
        epsilon: rational(fp.epsilon, "epsilon")?,
        p: fp.p,
        m: fp.m,
        n: fp.n,
        h: fp.h,
    };
    let derived = ReductionParams::derive(family, stored.k, stored.s, stored.c, stored.d)?;
    if derived != stored {
        return Err(Error::Mismatch(format!(
            "stored params {stored:?} differ from derived {derived:?}"
        )));
    }
    let n = usize::try_from(stored.n)
        .map_err(|_| Error::Overflow(format!("n = {} does not fit", stored.n)))?;
    if f.gadget_of.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: f.gadget_of.len(),
        });
    }

    let gadgets = 3 * stored.k as usize;
    let mut sizes = vec![0u64; gadgets];
    for &g in &f.gadget_of {
        *sizes.get_mut(g).ok_or_else(|| {
            Error::InvalidInput(format!(
                "gadget index {g} out of range for {gadgets} gadgets"
            ))
        })? += 1;
    }
    let a = sizes
        .iter()
        .enumerate()
        .map(|(i, &size)| {
            if size % stored.p == 0 {
                Ok(size / stored.p)
            } else {
                Err(Error::InvalidInput(format!(
                    "gadget {i} has {size} vertices, not a multiple of p = {}",
                    stored.p
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let source = validate(stored.k, stored.s, a)?;

    let graph = match (family, f.vertices) {
        (Family::GridFptas | Family::GridPerfect, Some(vertices)) => {
            BundleGraph::Grid(GridGraph::from_indexed(vertices, f.edges)?)
        }
        (Family::Tree, None) => BundleGraph::Tree(TreeGraph::from_edges(n, f.edges, 0)?),
        (Family::General, None) => BundleGraph::General(GeneralGraph::new(n, f.edges)?),
        (fam, v) => {
            return Err(Error::InvalidInput(format!(
                "{fam} bundle {} a vertex list",
                if v.is_some() {
                    "must not carry"
                } else {
                    "needs"
                }
            )))
        }
    };
    ReductionBundle::from_parts(stored, graph, f.gadget_of, f.connectors, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::build_reduction;

    fn zero() -> Rational {
        Rational::from_integer(0)
    }

    fn inst() -> ThreePartInstance {
        validate(2, 16, vec![5, 5, 6, 5, 5, 6]).unwrap()
    }

    #[test]
    fn instance_layout() {
        let text = instance_to_json(&inst()).unwrap();
        assert_eq!(text, r#"{"a":[5,5,6,5,5,6],"k":2,"s":16}"#);
        assert_eq!(instance_from_json(&text).unwrap(), inst());
    }

    #[test]
    fn invalid_instances_are_rejected() {
        assert!(matches!(
            instance_from_json(r#"{"a":[4,5,6,5,6,6],"k":2,"s":16}"#),
            Err(Error::Instance(_))
        ));
        assert!(instance_from_json(r#"{"a":[],"k":2}"#).is_err());
        assert!(instance_from_json(r#"{"a":[],"k":2,"s":1,"x":0}"#).is_err());
    }

    #[test]
    fn bundles_round_trip() {
        for fam in [
            Family::General,
            Family::GridFptas,
            Family::GridPerfect,
            Family::Tree,
        ] {
            let b = build_reduction(&inst(), fam, zero(), zero()).unwrap();
            let text = bundle_to_json(&b).unwrap();
            let back = bundle_from_json(&text).unwrap();
            assert_eq!(back, b, "{fam}");
            assert_eq!(bundle_to_json(&back).unwrap(), text);
        }
    }

    #[test]
    fn bundle_keys_are_sorted() {
        let b = build_reduction(&inst(), Family::GridPerfect, zero(), zero()).unwrap();
        let text = bundle_to_json(&b).unwrap();
        assert!(text.starts_with(r#"{"connectors":"#));
        assert!(text.contains(
            r#""params":{"c":[0,1],"d":[0,1],"epsilon":[0,1],"h":6,"k":2,"m":5,"n":1152,"p":36,"s":16}"#
        ));
    }

    #[test]
    fn tampered_params_are_rejected() {
        let b = build_reduction(&inst(), Family::Tree, zero(), zero()).unwrap();
        let text = bundle_to_json(&b)
            .unwrap()
            .replace(r#""p":12"#, r#""p":13"#);
        assert!(matches!(bundle_from_json(&text), Err(Error::Mismatch(_))));
    }

    #[test]
    fn partitions_round_trip() {
        let p = Partition::new(3, vec![0, 2, 1, 1]).unwrap();
        let text = partition_to_json(&p).unwrap();
        assert_eq!(text, r#"{"colors":[0,2,1,1],"k":3}"#);
        assert_eq!(partition_from_json(&text).unwrap(), p);
        assert!(partition_from_json(r#"{"colors":[3],"k":3}"#).is_err());
    }

    #[test]
    fn solutions_round_trip() {
        let s = TripleSolution {
            triples: vec![[0, 1, 2], [3, 4, 5]],
        };
        let text = solution_to_json(&s).unwrap();
        assert_eq!(solution_from_json(&text).unwrap(), s);
    }
}
