//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every expected value below is recomputed here by an independent brute
//! force or integer iteration before it is compared with the library.
//! Tolerances are exact unless a line says otherwise; each criterion also
//! has a wall-clock budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kbalance::formats::{bundle_from_json, bundle_to_json, partition_from_json, partition_to_json};
use kbalance::reductions::{
    build_reduction, count_rhs, solve_count_grid_fptas, solve_count_grid_perfect, solve_count_tree,
    Family,
};
use kbalance::render::render_svg;
use kbalance::solvers::{
    corner_cut_oracle, exact_balanced_mincut, snake_partition, tree_bisection_dp,
};
use kbalance::tpart::{generate, solve_exact, validate, Mode};
use kbalance::verify::{
    assemble_yes_partition, audit, decide_three_partition, Algorithm, AlgorithmPartitioner,
    Decision,
};
use kbalance::{is_balanced, GeneralGraph, Graph, GridGraph, Partition, Rational, TreeGraph};
use num::bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn zero() -> Rational {
    Rational::from_integer(0)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

/// Iterates an integer map from `start` until it stops moving.
fn fixed_point(start: u128, f: impl Fn(u128) -> u128) -> u128 {
    let mut n = start;
    for _ in 0..10_000 {
        let next = f(n);
        if next == n {
            return n;
        }
        n = next;
    }
    panic!("no fixed point from {start}");
}

/// Smallest `x` with `x * x >= v`.
fn ceil_sqrt(v: u128) -> u128 {
    let mut x = (v as f64).sqrt() as u128;
    while x * x < v {
        x += 1;
    }
    while x > 0 && (x - 1) * (x - 1) >= v {
        x -= 1;
    }
    x
}

// Right-hand sides at c = d = 0, in integers: B = 2ks.
fn fptas_rhs(k: u128, s: u128) -> impl Fn(u128) -> u128 {
    let b = 2 * k * s;
    // ceil(sqrt(9k^2 + n/B)) = smallest h with h^2 * B >= 9k^2 * B + n.
    move |n| {
        let need = 9 * k * k * b + n;
        let h = ceil_sqrt(need.div_ceil(b));
        h * h * k * s
    }
}

fn perfect_rhs(k: u128, s: u128) -> impl Fn(u128) -> u128 {
    move |_| 9 * k * k * k * s
}

fn tree_rhs(k: u128, s: u128) -> impl Fn(u128) -> u128 {
    let b = 2 * k * s;
    move |n| (3 * k * b + n).div_ceil(b) * k * s
}

fn criterion_1() -> Outcome {
    let big = BigUint::from;
    let (k, s) = (2u128, 16u128);
    let want_fptas = fixed_point(18 * k * k * k * s, fptas_rhs(k, s));
    let want_perfect = fixed_point(9 * k * k * k * s, perfect_rhs(k, s));
    let want_tree = fixed_point(6 * k * k * s, tree_rhs(k, s));
    ensure(
        (want_fptas, want_perfect, want_tree) == (2592, 1152, 384),
        || {
            format!("oracle disagrees with the pinned values: {want_fptas}, {want_perfect}, {want_tree}")
        },
    )?;

    let t = ok(solve_count_grid_fptas(2, 16, zero(), zero()), "fptas")?;
    ensure(
        (t.u.clone(), t.h.clone(), t.p.clone()) == (big(2592u32), Some(big(9u32)), big(81u32)),
        || format!("grid-fptas gave u={} h={:?} p={}", t.u, t.h, t.p),
    )?;
    let t = ok(solve_count_grid_perfect(2, 16, zero()), "perfect")?;
    ensure(
        (t.u.clone(), t.h.clone(), t.p.clone()) == (big(1152u32), Some(big(6u32)), big(36u32)),
        || format!("grid-perfect gave u={} h={:?} p={}", t.u, t.h, t.p),
    )?;
    let t = ok(solve_count_tree(2, 16, zero(), zero()), "tree")?;
    ensure(
        (t.u.clone(), t.p.clone()) == (big(384u32), big(12u32)),
        || format!("tree gave u={} p={}", t.u, t.p),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let grid_c = [(0, 1), (1, 8), (1, 6), (1, 4), (1, 3), (3, 8), (2, 5)];
    let tree_c = [(0, 1), (1, 4), (1, 2), (2, 3), (3, 4)];
    let ds = [(0, 1), (1, 4), (1, 3), (1, 2), (1, 1)];
    let mut integer_checked = 0;
    for draw in 0..200 {
        let family = [Family::GridFptas, Family::GridPerfect, Family::Tree][draw % 3];
        let k = rng.gen_range(1..=3u64);
        let s = rng.gen_range(3..=30u64);
        let pick = |rng: &mut ChaCha8Rng, set: &[(i64, i64)]| {
            let (n, d) = *set.choose(rng).unwrap();
            Rational::new(n, d)
        };
        let c = pick(
            &mut rng,
            if family == Family::Tree {
                &tree_c
            } else {
                &grid_c
            },
        );
        let d = if family == Family::GridPerfect {
            zero()
        } else {
            pick(&mut rng, &ds)
        };
        let t = ok(
            match family {
                Family::GridFptas => solve_count_grid_fptas(k, s, c, d),
                Family::GridPerfect => solve_count_grid_perfect(k, s, c),
                _ => solve_count_tree(k, s, c, d),
            },
            "random draw",
        )?;
        let rhs = ok(count_rhs(family, k, s, c, d, &t.u), "rhs")?;
        ensure(rhs == t.u, || {
            format!("{family} k={k} s={s} c={c} d={d}: RHS({}) = {rhs}", t.u)
        })?;
        if c == zero() && d == zero() {
            let (k, s) = (k as u128, s as u128);
            let want = match family {
                Family::GridFptas => fixed_point(18 * k * k * k * s, fptas_rhs(k, s)),
                Family::GridPerfect => fixed_point(9 * k * k * k * s, perfect_rhs(k, s)),
                _ => fixed_point(6 * k * k * s, tree_rhs(k, s)),
            };
            ensure(t.u == BigUint::from(want), || {
                format!("{family} k={k} s={s}: {} vs oracle {want}", t.u)
            })?;
            integer_checked += 1;
        }
    }
    Ok(format!(
        "u = 2592/1152/384 with h = 9/6, p = 81/36/12; RHS(u) = u on 200 draws ({integer_checked} also matched integer iteration)"
    ))
}

fn criterion_2() -> Outcome {
    let inst = ok(validate(2, 16, vec![5, 5, 6, 5, 5, 6]), "instance")?;
    let sol = ok(solve_exact(&inst), "solve")?.ok_or("worked instance has no solution")?;
    let assignment = sol.assignment(inst.len());
    // Only connectors between gadgets of different triples are cut.
    let expected_cut = assignment.windows(2).filter(|w| w[0] != w[1]).count();
    let mut summary = Vec::new();
    for family in [
        Family::GridFptas,
        Family::GridPerfect,
        Family::Tree,
        Family::General,
    ] {
        let b = ok(build_reduction(&inst, family, zero(), zero()), "build")?;
        let part = ok(assemble_yes_partition(&b, &sol), "assemble")?;
        let out = ok(audit(&b, &part), "audit")?;
        let m = b.params().m as usize;
        let want = if m == 0 { 0 } else { expected_cut };
        ensure(out.certificates_pass(), || {
            format!("{family} certificates: {:?}", out.certificates)
        })?;
        ensure(out.perfectly_balanced, || {
            format!("{family} parts {:?}", out.report.part_sizes)
        })?;
        ensure(out.report.minority_total == 0, || {
            format!("{family} minority {}", out.report.minority_total)
        })?;
        ensure(out.report.cut_size == want && want <= m, || {
            format!(
                "{family} cut {} (expected {want}, m = {m})",
                out.report.cut_size
            )
        })?;
        summary.push(format!("{family} cut={}/m={m}", out.report.cut_size));
    }
    Ok(format!(
        "certificates pass, perfectly balanced, minority 0; {}",
        summary.join(", ")
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut yes, mut no, mut agree) = (0, 0, 0);
    let mut seed = 0u64;
    while yes < 20 || no < 20 {
        seed += 1;
        ensure(seed < 10_000, || {
            format!("only {yes} YES and {no} NO instances generated")
        })?;
        let k = rng.gen_range(2..=3u64);
        let s = rng.gen_range(13..=20u64);
        let mode = if yes < 20 { Mode::Yes } else { Mode::No };
        let Ok(inst) = generate(k, s, mode, seed) else {
            continue;
        };
        let truth = ok(solve_exact(&inst), "solve")?.is_some();
        ensure(truth == (mode == Mode::Yes), || {
            format!("generator mode {mode:?} gave {inst:?}")
        })?;
        let b = ok(
            build_reduction(&inst, Family::General, zero(), zero()),
            "build",
        )?;
        let decision = ok(
            decide_three_partition(
                &b,
                &AlgorithmPartitioner::new(Algorithm::Components),
                &b.params().alpha(),
            ),
            "decide",
        )?;
        ensure((decision == Decision::Yes) == truth, || {
            format!("{inst:?}: decided {decision}")
        })?;
        agree += 1;
        if truth {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!(
        "{agree}/40 decisions agree with the exact solver ({yes} YES, {no} NO)"
    ))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for b in 0..=5usize {
        for w in (b + 1)..=7 {
            for h in (b + 1)..=7 {
                let got = ok(corner_cut_oracle(w, h, b), "oracle")?;
                ensure(got == b * b / 4, || {
                    format!("{w}x{h}, B={b}: {got} != {}", b * b / 4)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("floor(B^2/4) on {checked} rectangles, exact"))
}

fn criterion_5() -> Outcome {
    let mut runs = 0;
    for w in 1..=30usize {
        for h in 1..=30usize {
            let grid = GridGraph::rectangle(w, h);
            for k in 1..=8usize.min(w * h) {
                let r = ok(snake_partition(&grid, k), "snake")?;
                ensure(ok(is_balanced(&r.partition, zero()), "balance")?, || {
                    format!("{w}x{h} k={k}: parts {:?}", r.partition.part_sizes())
                })?;
                let bound = (k - 1) * (w.min(h) + 1);
                ensure(r.cut <= bound, || {
                    format!("{w}x{h} k={k}: cut {} > {bound}", r.cut)
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{runs} runs perfectly balanced with cut <= (k-1)(min(W,H)+1)"
    ))
}

/// Fewest cut edges over every colouring of `n` vertices into `k` colours
/// with no part above `cap`.
fn brute_mincut(n: usize, edges: &[(usize, usize)], k: usize, cap: usize) -> Option<usize> {
    let total = k.pow(n as u32);
    let mut best = None;
    let mut colour = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        let mut sizes = vec![0usize; k];
        for slot in colour.iter_mut() {
            *slot = c % k;
            sizes[*slot] += 1;
            c /= k;
        }
        if sizes.iter().any(|&s| s > cap) {
            continue;
        }
        let cut = edges
            .iter()
            .filter(|&&(u, v)| colour[u] != colour[v])
            .count();
        best = Some(best.map_or(cut, |b: usize| b.min(cut)));
    }
    best
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..200 {
        let n = rng.gen_range(2..=10usize);
        let mut labels: Vec<usize> = (0..n).collect();
        labels.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> = (1..n)
            .map(|v| (labels[rng.gen_range(0..v)], labels[v]))
            .collect();
        let tree = ok(
            TreeGraph::from_edges(n, edges.clone(), rng.gen_range(0..n)),
            "tree",
        )?;
        let r = ok(tree_bisection_dp(&tree), "dp")?;
        let want = brute_mincut(n, &edges, 2, n.div_ceil(2)).expect("bisections exist");
        let mut sizes = r.partition.part_sizes();
        sizes.sort_unstable();
        let real = edges
            .iter()
            .filter(|&&(u, v)| r.partition.colour(u) != r.partition.colour(v))
            .count();
        ensure(
            r.cut == want && real == want && sizes == [n / 2, n.div_ceil(2)],
            || {
                format!("trial {trial}, n={n}, edges {edges:?}: dp {} (witness {real}, sizes {sizes:?}) vs {want}", r.cut)
            },
        )?;
    }
    Ok("200 random trees, n <= 10, exact equality".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let n = rng.gen_range(3..=9usize);
        let k = rng.gen_range(2..=3usize);
        let eps = if rng.gen_bool(0.5) {
            zero()
        } else {
            Rational::new(1, 2)
        };
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let p = rng.gen_range(0.1..0.6);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(p) && !edges.contains(&(u, v)) {
                    edges.push((u, v));
                }
            }
        }
        let g = ok(GeneralGraph::new(n, edges), "graph")?;
        // floor((1+eps) * ceil(n/k)) with eps in {0, 1/2}.
        let ceil = n.div_ceil(k);
        let cap = if eps == zero() { ceil } else { ceil + ceil / 2 };
        let want = brute_mincut(n, g.edges(), k, cap).expect("colourings exist");
        let r = ok(exact_balanced_mincut(&g, k, eps), "exact")?;
        let witness = g
            .edges()
            .iter()
            .filter(|&&(u, v)| r.partition.colour(u) != r.partition.colour(v))
            .count();
        ensure(
            r.cut == want && witness == want && r.partition.part_sizes().iter().all(|&s| s <= cap),
            || format!("trial {trial}: n={n} k={k} eps={eps}: {} vs {want}", r.cut),
        )?;
    }
    Ok("100 random connected graphs, n <= 9, k in {2,3}, eps in {0,1/2}, exact equality".into())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let inst = ok(validate(2, 16, vec![5, 5, 6, 5, 5, 6]), "instance")?;
    let mut bundles = 0;
    for (family, c, d) in [
        (Family::General, zero(), zero()),
        (Family::GridFptas, zero(), zero()),
        (Family::GridFptas, zero(), Rational::new(1, 4)),
        (Family::GridPerfect, zero(), zero()),
        (Family::Tree, zero(), zero()),
        (Family::Tree, Rational::new(1, 4), zero()),
    ] {
        let b = ok(build_reduction(&inst, family, c, d), "build")?;
        let text = ok(bundle_to_json(&b), "write")?;
        let back = ok(bundle_from_json(&text), "read")?;
        ensure(back == b, || {
            format!("{family} bundle changed on round trip")
        })?;
        ensure(ok(bundle_to_json(&back), "rewrite")? == text, || {
            format!("{family} bytes changed")
        })?;

        let n = b.graph().num_vertices();
        let k = rng.gen_range(1..=12usize);
        let part = ok(
            Partition::new(k, (0..n).map(|_| rng.gen_range(0..k)).collect()),
            "partition",
        )?;
        let ptext = ok(partition_to_json(&part), "write partition")?;
        let pback = ok(partition_from_json(&ptext), "read partition")?;
        ensure(
            pback == part && ok(partition_to_json(&pback), "rewrite")? == ptext,
            || format!("{family} partition changed on round trip"),
        )?;
        bundles += 1;
    }

    let grid = GridGraph::rectangle(3, 3);
    let part = ok(snake_partition(&grid, 3), "snake")?.partition;
    let svg = ok(render_svg(&grid, Some(&part), &[]), "render")?;
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/golden/rectangle_3x3.svg"
    );
    let golden = ok(std::fs::read_to_string(path), "golden")?;
    ensure(svg == golden, || {
        "3x3 SVG differs from its golden file".into()
    })?;
    Ok(format!(
        "{bundles} bundles and partitions round-trip byte for byte; 3x3 SVG matches golden"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fixed-point counts", Duration::from_secs(1), criterion_1),
        ("reduction soundness", Duration::from_secs(5), criterion_2),
        (
            "decision on the general family",
            Duration::from_secs(30),
            criterion_3,
        ),
        ("corner-cut oracle", Duration::from_secs(120), criterion_4),
        ("snake partition", Duration::from_secs(10), criterion_5),
        ("tree bisection DP", Duration::from_secs(30), criterion_6),
        ("exact solver", Duration::from_secs(60), criterion_7),
        (
            "round trips and golden",
            Duration::from_secs(60),
            criterion_8,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(detail) if elapsed <= budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over the {budget:?} budget")),
            Err(detail) => ("FAIL", detail),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} [{status}] {name}: {detail} ({:.3}s, budget {}s)",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
