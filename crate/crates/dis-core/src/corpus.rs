//! Deterministic graph and instance corpora for axiom checks and tests.
//!
//! Everything here is reproducible: random pieces are driven by a caller
//! seed through ChaCha8, whose output is platform-independent.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::solver::HittingSetInstance;

/// The path `P_n` on vertices `0..n` (the empty graph for `n ≤ 1`).
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// The cycle `C_n`, `n ≥ 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Every labelled graph on exactly `n` vertices, by edge-mask order.
/// There are `2^(n(n-1)/2)` of them; callers keep `n ≤ 5` in practice.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "exhaustive enumeration beyond n = 6 is not sensible");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            Graph::new(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap()
        })
        .collect()
}

/// Erdős–Rényi-style graph: each pair becomes an edge with probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    Graph::new(
        n,
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(p))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

/// A deterministic stream of exactly `count` graphs, each on at most
/// `max_n` vertices: first the named families (paths, cycles, complete
/// graphs, and paths padded with an isolated vertex), then seeded random
/// graphs.
pub fn enumerate_small_graphs(max_n: usize, seed: u64, count: usize) -> Vec<Graph> {
    let mut graphs = Vec::new();
    for n in 1..=max_n {
        graphs.push(path(n));
    }
    for n in 3..=max_n {
        graphs.push(cycle(n));
    }
    // K_1 and K_2 already appear as paths.
    for n in 3..=max_n {
        graphs.push(complete(n));
    }
    // Disconnected shapes: P_{n-1} plus an isolated vertex.
    for n in 2..=max_n {
        graphs.push(Graph::new(n, (1..n - 1).map(|i| (i - 1, i))).unwrap());
    }
    graphs.truncate(count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while graphs.len() < count {
        // Bias towards larger graphs; the named prefix already covers the
        // degenerate sizes.
        let n = rng.random_range(1..=max_n).max(rng.random_range(1..=max_n));
        let p = rng.random_range(0.15..0.85);
        graphs.push(random_graph(n, p, &mut rng));
    }
    graphs
}

/// The corpus used by trait checking: every labelled graph on at most 5
/// vertices, plus named families (paths, cycles, complete graphs) up to
/// `max_n` vertices.
pub fn standard_corpus(max_n: usize) -> Vec<Graph> {
    let mut graphs = Vec::new();
    for n in 0..=max_n.min(5) {
        graphs.extend(all_labeled_graphs(n));
    }
    for n in 6..=max_n {
        graphs.push(path(n));
        graphs.push(cycle(n));
        graphs.push(complete(n));
    }
    graphs
}

/// A random covering hitting-set instance on `n` elements and `m` sets.
///
/// Total memberships are capped at `max(n + m, 2(n + m) − 4)` — the Euler
/// bound on edges of a planar bipartite incidence graph — which keeps the
/// planar-case artifact size bounds applicable to generated batches.
pub fn random_instance(n: usize, m: usize, rng: &mut impl Rng) -> HittingSetInstance {
    assert!(n >= 1 && m >= 1);
    let cap = (n + m).max((2 * (n + m)).saturating_sub(4));
    let mut sets: Vec<Vec<usize>> = alloc::vec![Vec::new(); m];
    // Cover every element, then fill empty sets.
    for e in 1..=n {
        let j = rng.random_range(0..m);
        sets[j].push(e);
    }
    for set in sets.iter_mut() {
        if set.is_empty() {
            set.push(rng.random_range(1..=n));
        }
    }
    let mut total: usize = sets.iter().map(Vec::len).sum();
    if total < cap {
        let target = rng.random_range(total..=cap);
        let mut attempts = 4 * cap + 16;
        while total < target && attempts > 0 {
            attempts -= 1;
            let e = rng.random_range(1..=n);
            let j = rng.random_range(0..m);
            if !sets[j].contains(&e) {
                sets[j].push(e);
                total += 1;
            }
        }
    }
    HittingSetInstance::new(n, sets).expect("construction keeps the instance valid")
}
