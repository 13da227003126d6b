//! Exact minimum-DIS and minimum-hitting-set solving.
//!
//! Finding a minimum `(f, r)`-DIS is itself a hitting-set problem over the
//! vertex set: every vertex must be r-dominated (hit its ball) and every
//! vertex pair must be separated (hit its witness set). The solver therefore
//! works on a [`ConstraintFamily`] — a list of vertex sets to hit — and both
//! [`min_dis`] and [`min_hitting_set`] share one engine:
//!
//! * infeasibility is detected up front: an instance is infeasible iff some
//!   constraint set is empty (otherwise the whole ground set is a solution);
//! * branch and bound on an unhit constraint of minimum live cardinality,
//!   excluding earlier members in later branches so the search partitions;
//!   unit constraints are propagated; lower bounds come from greedily
//!   packing disjoint unhit constraints; the initial incumbent from greedy
//!   hitting. Twin pairs surface as two-element separation constraints, so
//!   minimum-cardinality branching resolves them first;
//! * once the optimum size is known, a second increasing-order search
//!   extracts the lexicographically smallest optimal witness, and can
//!   enumerate *all* optima (used by the gadget `p_s` check);
//! * a node-expansion budget bounds the whole run; exhausting it yields
//!   [`SolveResult::Aborted`] with the best bounds found.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::BitSet;
use crate::graph::{Graph, Vertex};
use crate::problems::IdentifyingProblem;

/// Default node-expansion budget for the exact solver.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Knobs for the exact solver.
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Maximum number of search-tree node expansions across all phases.
    pub node_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// What a constraint set stands for; reported on infeasibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintTag {
    /// The closed ball of `v`: some chosen vertex must r-dominate `v`.
    Dominate(Vertex),
    /// The witness set of the pair `(u, v)`, `u < v`.
    Distinguish(Vertex, Vertex),
    /// Set `j` (1-based) of a hitting-set instance.
    Hit(usize),
}

impl fmt::Display for ConstraintTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintTag::Dominate(v) => write!(f, "dominate:{v}"),
            ConstraintTag::Distinguish(u, v) => write!(f, "distinguish:{u}:{v}"),
            ConstraintTag::Hit(j) => write!(f, "hit:{j}"),
        }
    }
}

/// One set that must be hit.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub tag: ConstraintTag,
    pub members: BitSet,
}

/// A ground set `0..ground` plus sets to hit, in canonical order.
#[derive(Clone, Debug)]
pub struct ConstraintFamily {
    pub ground: usize,
    pub constraints: Vec<Constraint>,
}

impl ConstraintFamily {
    /// The DIS reformulation: one domination constraint per vertex (its
    /// closed r-ball) followed by one separation constraint per pair, in
    /// lexicographic order.
    pub fn for_dis(graph: &Graph, problem: &IdentifyingProblem) -> Self {
        let n = graph.vertex_count();
        let dm = graph.distances();
        let mut constraints = Vec::new();
        for v in 0..n {
            constraints.push(Constraint {
                tag: ConstraintTag::Dominate(v),
                members: BitSet::from_iter(n, dm.ball(v, problem.radius())),
            });
        }
        for u in 0..n {
            for v in u + 1..n {
                constraints.push(Constraint {
                    tag: ConstraintTag::Distinguish(u, v),
                    members: BitSet::from_iter(
                        n,
                        (0..n).filter(|&w| problem.distinguishes(&dm, w, u, v)),
                    ),
                });
            }
        }
        ConstraintFamily {
            ground: n,
            constraints,
        }
    }

    /// Hitting-set constraints; elements `1..=n` map to ground values
    /// `0..n`.
    pub fn for_hitting_set(inst: &HittingSetInstance) -> Self {
        let n = inst.universe_size();
        let constraints = inst
            .sets()
            .iter()
            .enumerate()
            .map(|(idx, set)| Constraint {
                tag: ConstraintTag::Hit(idx + 1),
                members: BitSet::from_iter(n, set.iter().map(|&e| e - 1)),
            })
            .collect();
        ConstraintFamily {
            ground: n,
            constraints,
        }
    }

    /// First constraint with an empty member set, if any.
    pub fn first_empty(&self) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.members.is_empty())
    }
}

/// Result of an exact solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    /// Minimum size together with the lexicographically smallest optimal
    /// witness (sorted ascending).
    Optimal { size: usize, witness: Vec<usize> },
    /// Some constraint can never be hit; its tag names the first offender.
    Infeasible { tag: ConstraintTag },
    /// Node budget exhausted; carries the best bounds found and the best
    /// known (not necessarily optimal) solution.
    Aborted {
        lower_bound: usize,
        upper_bound: usize,
        best: Option<Vec<usize>>,
    },
}

impl SolveResult {
    pub fn optimal_size(&self) -> Option<usize> {
        match self {
            SolveResult::Optimal { size, .. } => Some(*size),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            SolveResult::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Minimum `(f, r)`-DIS of `graph` under `problem`.
pub fn min_dis(graph: &Graph, problem: &IdentifyingProblem, opts: &SolveOptions) -> SolveResult {
    solve_family(&ConstraintFamily::for_dis(graph, problem), opts)
}

/// Minimum hitting set; the witness lists elements (1-based).
pub fn min_hitting_set(inst: &HittingSetInstance, opts: &SolveOptions) -> SolveResult {
    let shift = |set: Vec<usize>| set.into_iter().map(|e| e + 1).collect();
    match solve_family(&ConstraintFamily::for_hitting_set(inst), opts) {
        SolveResult::Optimal { size, witness } => SolveResult::Optimal {
            size,
            witness: shift(witness),
        },
        SolveResult::Aborted {
            lower_bound,
            upper_bound,
            best,
        } => SolveResult::Aborted {
            lower_bound,
            upper_bound,
            best: best.map(shift),
        },
        infeasible => infeasible,
    }
}

/// Exact solve over an arbitrary constraint family.
pub fn solve_family(family: &ConstraintFamily, opts: &SolveOptions) -> SolveResult {
    if let Some(c) = family.first_empty() {
        return SolveResult::Infeasible { tag: c.tag };
    }
    let mut engine = Engine::new(family, opts.node_budget);
    let greedy = engine.greedy();
    engine.best = Some(greedy);
    let no_hits = vec![0u32; engine.sets.len()];
    engine.root_lower_bound = engine.packing_bound(&no_hits, &engine.suffix_masks[0]);
    engine.branch_and_bound(&mut Vec::new(), &mut BitSet::new(engine.ground), &mut vec![0; engine.sets.len()]);
    let best = engine.best.clone().expect("greedy found an incumbent");
    if engine.exhausted {
        return SolveResult::Aborted {
            lower_bound: engine.root_lower_bound,
            upper_bound: best.len(),
            best: Some(best),
        };
    }
    let size = best.len();
    // Second phase: the lexicographically smallest witness of optimal size.
    let mut out = Vec::new();
    engine.lex_search(&mut Vec::new(), &mut vec![0; engine.sets.len()], 0, size, true, &mut out);
    if engine.exhausted {
        return SolveResult::Aborted {
            lower_bound: size,
            upper_bound: size,
            best: Some(best),
        };
    }
    let witness = out.into_iter().next().expect("an optimum exists");
    SolveResult::Optimal { size, witness }
}

/// All optimal solutions of the given size, in lexicographic order, or
/// `None` if the node budget runs out first. `size` is normally the
/// `Optimal` size returned by [`solve_family`] on the same family.
pub fn enumerate_optima(
    family: &ConstraintFamily,
    size: usize,
    opts: &SolveOptions,
) -> Option<Vec<Vec<usize>>> {
    if family.first_empty().is_some() {
        return Some(Vec::new());
    }
    let mut engine = Engine::new(family, opts.node_budget);
    let mut out = Vec::new();
    engine.lex_search(&mut Vec::new(), &mut vec![0; engine.sets.len()], 0, size, false, &mut out);
    (!engine.exhausted).then_some(out)
}

struct Engine {
    ground: usize,
    sets: Vec<BitSet>,
    /// Constraint indices containing each ground value.
    occurrences: Vec<Vec<usize>>,
    /// `suffix_masks[s]` holds the ground values `s..ground`.
    suffix_masks: Vec<BitSet>,
    budget: u64,
    exhausted: bool,
    best: Option<Vec<usize>>,
    root_lower_bound: usize,
}

impl Engine {
    fn new(family: &ConstraintFamily, budget: u64) -> Self {
        let ground = family.ground;
        // Deduplicate identical member sets.
        let mut seen = BTreeSet::new();
        let mut sets = Vec::new();
        for c in &family.constraints {
            if seen.insert(c.members.clone()) {
                sets.push(c.members.clone());
            }
        }
        let mut occurrences = vec![Vec::new(); ground];
        for (ci, s) in sets.iter().enumerate() {
            for v in s.iter() {
                occurrences[v].push(ci);
            }
        }
        let mut suffix_masks = Vec::with_capacity(ground + 1);
        for s in 0..=ground {
            suffix_masks.push(BitSet::from_iter(ground, s..ground));
        }
        Engine {
            ground,
            sets,
            occurrences,
            suffix_masks,
            budget,
            exhausted: false,
            best: None,
            root_lower_bound: 0,
        }
    }

    fn spend_node(&mut self) -> bool {
        if self.budget == 0 {
            self.exhausted = true;
            return false;
        }
        self.budget -= 1;
        true
    }

    fn choose(&self, v: usize, hit: &mut [u32]) {
        for &ci in &self.occurrences[v] {
            hit[ci] += 1;
        }
    }

    fn unchoose(&self, v: usize, hit: &mut [u32]) {
        for &ci in &self.occurrences[v] {
            hit[ci] -= 1;
        }
    }

    /// Greedy incumbent: repeatedly take the vertex hitting the most unhit
    /// constraints (smallest id on ties). Terminates because no constraint
    /// set is empty.
    fn greedy(&self) -> Vec<usize> {
        let mut hit = vec![0u32; self.sets.len()];
        let mut chosen = Vec::new();
        while hit.iter().any(|&h| h == 0) {
            let mut best_v = usize::MAX;
            let mut best_count = 0usize;
            for v in 0..self.ground {
                let count = self.occurrences[v].iter().filter(|&&ci| hit[ci] == 0).count();
                if count > best_count {
                    best_count = count;
                    best_v = v;
                }
            }
            assert!(best_v != usize::MAX, "unhittable constraint in greedy");
            self.choose(best_v, &mut hit);
            chosen.push(best_v);
        }
        chosen.sort_unstable();
        chosen
    }

    /// Greedy packing of pairwise-disjoint unhit live sets: any solution
    /// needs one new vertex per packed set. `restrict` masks the vertices
    /// still allowed (exclusions or the lex suffix).
    fn packing_bound(&self, hit: &[u32], restrict: &BitSet) -> usize {
        let mut order: Vec<(usize, usize)> = self
            .sets
            .iter()
            .enumerate()
            .filter(|&(ci, _)| hit[ci] == 0)
            .map(|(ci, s)| (s.intersection_len(restrict), ci))
            .collect();
        order.sort_unstable();
        let mut taken = BitSet::new(self.ground);
        let mut count = 0;
        for (live, ci) in order {
            if live == 0 {
                // Unhittable on this path: no completion exists.
                return usize::MAX;
            }
            let mut live_set = self.sets[ci].clone();
            live_set.intersect_with(restrict);
            if live_set.is_disjoint(&taken) {
                taken.union_with(&live_set);
                count += 1;
            }
        }
        count
    }

    /// Branch and bound for the optimum size; `excluded` holds vertices
    /// banned on the current path, `hit` counts chosen members per
    /// constraint.
    fn branch_and_bound(
        &mut self,
        chosen: &mut Vec<usize>,
        excluded: &mut BitSet,
        hit: &mut [u32],
    ) {
        if self.exhausted || !self.spend_node() {
            return;
        }
        // Unit propagation: forced picks and dead-branch detection.
        let mut forced = Vec::new();
        let mut allowed = self.allowed_mask(excluded);
        loop {
            let incumbent = self.best.as_ref().map_or(usize::MAX, Vec::len);
            let mut unit = None;
            let mut min_live = usize::MAX;
            let mut branch_ci = None;
            let mut dead = false;
            for (ci, s) in self.sets.iter().enumerate() {
                if hit[ci] > 0 {
                    continue;
                }
                let live = s.intersection_len(&allowed);
                if live == 0 {
                    dead = true;
                    break;
                }
                if live == 1 {
                    unit = Some(first_allowed(s, &allowed));
                    break;
                }
                if live < min_live {
                    min_live = live;
                    branch_ci = Some(ci);
                }
            }
            if dead {
                break;
            }
            if let Some(v) = unit {
                self.choose(v, hit);
                chosen.push(v);
                forced.push(v);
                continue;
            }
            let Some(ci) = branch_ci else {
                // Everything hit: record the incumbent.
                if chosen.len() < incumbent {
                    let mut sol = chosen.clone();
                    sol.sort_unstable();
                    self.best = Some(sol);
                }
                break;
            };
            // Prune by lower bound.
            let bound = self.packing_bound(hit, &allowed);
            if chosen.len().saturating_add(bound) >= incumbent {
                break;
            }
            // Branch over the live members of the chosen constraint,
            // excluding earlier members in later branches.
            let members: Vec<usize> = self.sets[ci]
                .iter()
                .filter(|&v| allowed.contains(v))
                .collect();
            let mut newly_excluded = Vec::new();
            for v in members {
                self.choose(v, hit);
                chosen.push(v);
                self.branch_and_bound(chosen, excluded, hit);
                chosen.pop();
                self.unchoose(v, hit);
                if self.exhausted {
                    break;
                }
                excluded.insert(v);
                newly_excluded.push(v);
                allowed.remove(v);
            }
            for v in newly_excluded {
                excluded.remove(v);
            }
            break;
        }
        for v in forced.into_iter().rev() {
            chosen.pop();
            self.unchoose(v, hit);
        }
    }

    fn allowed_mask(&self, excluded: &BitSet) -> BitSet {
        let mut allowed = self.suffix_masks[0].clone();
        allowed.difference_with(excluded);
        allowed
    }

    /// Depth-limited DFS in increasing vertex order. Visits exactly the
    /// irredundant solutions of size ≤ `depth_left` in lexicographic order;
    /// at the optimum size these are all the optimal solutions. With
    /// `stop_at_first` it yields the canonical (lex-smallest) witness.
    fn lex_search(
        &mut self,
        chosen: &mut Vec<usize>,
        hit: &mut [u32],
        start: usize,
        depth_left: usize,
        stop_at_first: bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if self.exhausted || !self.spend_node() {
            return;
        }
        if hit.iter().all(|&h| h > 0) {
            out.push(chosen.clone());
            return;
        }
        if depth_left == 0 {
            return;
        }
        let suffix = &self.suffix_masks[start];
        let bound = self.packing_bound(hit, suffix);
        if bound > depth_left {
            return;
        }
        for v in start..self.ground {
            // Only vertices that hit something still unhit can appear in an
            // irredundant completion.
            if !self.occurrences[v].iter().any(|&ci| hit[ci] == 0) {
                continue;
            }
            self.choose(v, hit);
            chosen.push(v);
            self.lex_search(chosen, hit, v + 1, depth_left - 1, stop_at_first, out);
            chosen.pop();
            self.unchoose(v, hit);
            if self.exhausted || (stop_at_first && !out.is_empty()) {
                return;
            }
        }
    }
}

fn first_allowed(s: &BitSet, allowed: &BitSet) -> usize {
    s.iter()
        .find(|&v| allowed.contains(v))
        .expect("live count was nonzero")
}

/// A hitting-set instance: universe `{1..n}` and non-empty sets whose union
/// covers the universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetInstance {
    n: usize,
    sets: Vec<Vec<usize>>,
}

/// Validation errors for hitting-set instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceError {
    EmptyUniverse,
    NoSets,
    /// Set `j` (1-based) is empty.
    EmptySet { set: usize },
    /// Set `j` mentions an element outside `1..=n`.
    ElementOutOfRange { set: usize, element: usize },
    /// Element belongs to no set.
    UncoveredElement { element: usize },
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceError::EmptyUniverse => write!(f, "universe must be non-empty"),
            InstanceError::NoSets => write!(f, "instance needs at least one set"),
            InstanceError::EmptySet { set } => write!(f, "set {set} is empty"),
            InstanceError::ElementOutOfRange { set, element } => {
                write!(f, "set {set} mentions element {element} outside the universe")
            }
            InstanceError::UncoveredElement { element } => {
                write!(f, "element {element} belongs to no set")
            }
        }
    }
}

impl core::error::Error for InstanceError {}

impl HittingSetInstance {
    /// Validates and normalizes (sorts and deduplicates each set).
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        if n == 0 {
            return Err(InstanceError::EmptyUniverse);
        }
        if sets.is_empty() {
            return Err(InstanceError::NoSets);
        }
        let mut covered = vec![false; n + 1];
        let mut normalized = Vec::with_capacity(sets.len());
        for (idx, mut set) in sets.into_iter().enumerate() {
            let j = idx + 1;
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(InstanceError::EmptySet { set: j });
            }
            for &e in &set {
                if e == 0 || e > n {
                    return Err(InstanceError::ElementOutOfRange { set: j, element: e });
                }
                covered[e] = true;
            }
            normalized.push(set);
        }
        if let Some(e) = (1..=n).find(|&e| !covered[e]) {
            return Err(InstanceError::UncoveredElement { element: e });
        }
        Ok(HittingSetInstance {
            n,
            sets: normalized,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    /// Sets in instance order, each sorted ascending (1-based elements).
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Total number of memberships `Σ|S_j|`.
    pub fn membership_count(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// First set (1-based) not hit by `selection`, if any.
    pub fn first_unhit(&self, selection: &[usize]) -> Option<usize> {
        self.sets
            .iter()
            .position(|s| !s.iter().any(|e| selection.contains(e)))
            .map(|idx| idx + 1)
    }
}

/// Why a vertex set fails to be an `(f, r)`-DIS; the first violation in
/// deterministic order (range errors, then domination by vertex, then
/// separation by lexicographic pair).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisViolation {
    OutOfRange(Vertex),
    NotDominated(Vertex),
    NotDistinguished(Vertex, Vertex),
}

impl fmt::Display for DisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DisViolation::OutOfRange(v) => write!(f, "out_of_range:{v}"),
            DisViolation::NotDominated(v) => write!(f, "dominate:{v}"),
            DisViolation::NotDistinguished(u, v) => write!(f, "distinguish:{u}:{v}"),
        }
    }
}

/// Verifies that `set` is an `(f, r)`-DIS of `graph`, reporting the first
/// violation otherwise. Duplicates in `set` are ignored.
pub fn check_dis(
    graph: &Graph,
    problem: &IdentifyingProblem,
    set: &[Vertex],
) -> Result<(), DisViolation> {
    let n = graph.vertex_count();
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(DisViolation::OutOfRange(v));
    }
    let dm = graph.distances();
    for v in 0..n {
        if !set.iter().any(|&s| problem.dominates(&dm, s, v)) {
            return Err(DisViolation::NotDominated(v));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if !set.iter().any(|&s| problem.distinguishes(&dm, s, u, v)) {
                return Err(DisViolation::NotDistinguished(u, v));
            }
        }
    }
    Ok(())
}

/// Convenience wrapper over [`check_dis`].
pub fn is_dis(graph: &Graph, problem: &IdentifyingProblem, set: &[Vertex]) -> bool {
    check_dis(graph, problem, set).is_ok()
}

/// Kernel bound for r-local problems with finite r: an `Optimal(k)` answer
/// on an n-vertex graph must satisfy `n ≤ (r+1)^k + k`.
pub fn kernel_bound_holds(n: usize, r: u32, k: usize) -> bool {
    let mut pow: u128 = 1;
    for _ in 0..k {
        pow = pow.saturating_mul((r as u128) + 1);
    }
    (n as u128) <= pow.saturating_add(k as u128)
}
