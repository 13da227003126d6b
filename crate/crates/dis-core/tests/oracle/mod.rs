//! Brute-force reference implementations, independent of the library's
//! solver path (no constraint families, no branch and bound, and the
//! predicate definitions are re-derived from raw distances).

// Each test binary pulls in a different subset of the oracle.
#![allow(dead_code)]

use dis_core::graph::{DistanceMatrix, Graph, UNREACHABLE};

/// A problem selection mirrored for the oracle: family name plus radius
/// (`None` = ∞).
#[derive(Clone, Copy, Debug)]
pub struct OracleProblem {
    pub family: &'static str,
    pub r: Option<u32>,
}

pub const IC1: OracleProblem = OracleProblem { family: "ic", r: Some(1) };
pub const LD1: OracleProblem = OracleProblem { family: "ld", r: Some(1) };
pub const MD1: OracleProblem = OracleProblem { family: "md", r: Some(1) };
pub const MD_INF: OracleProblem = OracleProblem { family: "md", r: None };

impl OracleProblem {
    pub fn selection(&self) -> String {
        match self.r {
            Some(r) => format!("{}:{r}", self.family),
            None => format!("{}:inf", self.family),
        }
    }
}

fn in_ball(dm: &DistanceMatrix, r: Option<u32>, center: usize, w: usize) -> bool {
    let d = dm.get(center, w);
    match r {
        Some(r) => d != UNREACHABLE && d <= r,
        None => d != UNREACHABLE,
    }
}

fn separates(dm: &DistanceMatrix, p: OracleProblem, w: usize, u: usize, v: usize) -> bool {
    let ball_u = in_ball(dm, p.r, u, w);
    let ball_v = in_ball(dm, p.r, v, w);
    match p.family {
        "ic" => ball_u != ball_v,
        "ld" => w == u || w == v || ball_u != ball_v,
        "md" => (ball_u || ball_v) && dm.get(u, w) != dm.get(v, w),
        other => panic!("unknown family {other}"),
    }
}

fn is_dis_oracle(g: &Graph, dm: &DistanceMatrix, p: OracleProblem, set: &[usize]) -> bool {
    let n = g.vertex_count();
    for v in 0..n {
        if !set.iter().any(|&s| in_ball(dm, p.r, v, s)) {
            return false;
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if !set.iter().any(|&s| separates(dm, p, s, u, v)) {
                return false;
            }
        }
    }
    true
}

/// All k-subsets of `0..n` in lexicographic order of their sorted form.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            if n - v < k - current.len() {
                break;
            }
            current.push(v);
            rec(n, k, v + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

/// Exhaustive minimum DIS: subsets by increasing size, lexicographic within
/// a size; the first valid one is both minimum and the canonical witness.
/// `None` means infeasible (even the full vertex set fails).
pub fn brute_force_min_dis(g: &Graph, p: OracleProblem) -> Option<(usize, Vec<usize>)> {
    let dm = g.distances();
    let n = g.vertex_count();
    for k in 0..=n {
        for candidate in combinations(n, k) {
            if is_dis_oracle(g, &dm, p, &candidate) {
                return Some((k, candidate));
            }
        }
    }
    None
}

/// Exhaustive minimum hitting set over 1-based elements; same ordering
/// guarantees as [`brute_force_min_dis`]. Never `None` for valid instances
/// (the whole universe hits everything), but kept symmetric for clarity.
pub fn brute_force_min_hitting_set(n: usize, sets: &[Vec<usize>]) -> Option<(usize, Vec<usize>)> {
    for k in 0..=n {
        for candidate in combinations(n, k) {
            let selection: Vec<usize> = candidate.iter().map(|e| e + 1).collect();
            if sets
                .iter()
                .all(|s| s.iter().any(|e| selection.contains(e)))
            {
                return Some((k, selection));
            }
        }
    }
    None
}

/// Truth-table satisfiability for small CNFs (positive literal `v`,
/// negative `-v`, variables `1..=num_vars`).
pub fn cnf_satisfiable(num_vars: usize, clauses: &[Vec<i32>]) -> bool {
    assert!(num_vars <= 20);
    (0u32..1 << num_vars).any(|assignment| {
        clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let var = lit.unsigned_abs() as usize;
                let value = assignment >> (var - 1) & 1 == 1;
                (lit > 0) == value
            })
        })
    })
}
