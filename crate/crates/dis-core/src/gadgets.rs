//! Gadget families for the Hitting-Set-to-DIS reductions, plus empirical
//! checking of the gadget axioms.
//!
//! A gadget is a triple `(H, B, C)` — a connected graph, a border set, and a
//! code set — meant to be replicated inside a host graph so that any DIS of
//! the host must spend at least `|C|` vertices inside each copy, while `C`
//! itself takes care of the copy. The axioms, stated over *B-extensions* of
//! `H` (supergraphs `G` where every new vertex's neighbourhood inside `H` is
//! either empty or exactly `B`):
//!
//! * `p_h`: `C` separates every pair with at least one endpoint in `V_H`;
//! * `p_b`: `C` separates the B-adjacent new vertices from the other new
//!   vertices;
//! * `p_d`: `C` r-dominates the subgraph induced by `V_H ∪ N_B`;
//! * `p_s`: every DIS `S` of `G` has `|S ∩ V_H| ≥ |C|`;
//! * `p_l` (local gadgets): for every `k ∈ 1..=r` some code vertex sits at
//!   distance exactly `k−1` from the border.
//!
//! Three families are built here:
//!
//! * [`gadget_1layered`] — a fixed 10-vertex gadget valid for every
//!   1-layered problem at any radius (metric dimension included);
//! * [`gadget_local0`] — a `4r+2`-vertex (8 for `r = 1`) local gadget for
//!   `r`-local 0-layered problems (`r`-LD, `r`-MD);
//! * [`gadget_ic`] — a `6r+4`-vertex local gadget specific to `r`-IC.
//!
//! `p_h`, `p_b`, `p_d`, `p_l` are decidable directly; `p_s` quantifies over
//! all DIS of the extension and is checked exactly by enumerating *all*
//! optimal solutions on small extensions (an optimal DIS short on gadget
//! vertices would witness a violation; non-optimal ones only have more
//! room). Extensions beyond `CheckOptions::exact_limit` vertices report
//! [`Verdict::Unchecked`] rather than a guess.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphBuilder, Role, Vertex};
use crate::problems::IdentifyingProblem;
use crate::solver::{enumerate_optima, min_dis, ConstraintFamily, SolveOptions, SolveResult};

/// Which family a gadget belongs to; fixes which problems the reduction
/// theorems certify it for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetFamily {
    /// Valid for every 1-layered problem, any radius.
    OneLayered,
    /// Valid for every `r`-local 0-layered problem.
    LocalZero { r: u32 },
    /// Valid for the `r`-identifying-code problem specifically.
    IdCode { r: u32 },
}

/// Errors selecting or constructing gadgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetError {
    ZeroRadius,
    UnknownName(String),
}

impl fmt::Display for GadgetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GadgetError::ZeroRadius => write!(f, "gadget radius must be at least 1"),
            GadgetError::UnknownName(s) => write!(
                f,
                "unknown gadget '{s}' (expected 1layered, local0:<r>, or ic:<r>)"
            ),
        }
    }
}

impl core::error::Error for GadgetError {}

/// Facts about a gadget the reductions rely on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetMeta {
    /// Whether the B-single-extension is bipartite (computed, not asserted).
    pub bipartite_single_ext: bool,
    /// Whether twin-extensions stay planar (a property of the three
    /// families; no planarity tester here).
    pub planar_twin_ext: bool,
    /// Whether the gadget is local (satisfies `p_l` for its radius).
    pub local: bool,
    /// The radius a local gadget is built for.
    pub radius: Option<u32>,
}

/// A gadget `(H, B, C)` with vertex names for labelling and reporting.
#[derive(Clone, Debug)]
pub struct Gadget {
    name: String,
    family: GadgetFamily,
    graph: Graph,
    names: Vec<String>,
    border: Vec<Vertex>,
    code: Vec<Vertex>,
    twin_pairs: Vec<(Vertex, Vertex)>,
    meta: GadgetMeta,
}

impl Gadget {
    /// Canonical name: `1layered`, `local0:<r>`, `ic:<r>`.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> GadgetFamily {
        self.family
    }

    /// The gadget graph `H`.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Border `B`, sorted.
    pub fn border(&self) -> &[Vertex] {
        &self.border
    }

    /// Code `C`, sorted.
    pub fn code(&self) -> &[Vertex] {
        &self.code
    }

    pub fn meta(&self) -> &GadgetMeta {
        &self.meta
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// The open-neighbourhood twin pairs of the construction (empty for
    /// `ic:<r>` with `r ≥ 2`, whose forcing argument runs through r-balls
    /// instead). These pairs remain twins in every B-extension and every
    /// reduction artifact, so swapping one for the other preserves DIS
    /// validity.
    pub fn twin_pairs(&self) -> &[(Vertex, Vertex)] {
        &self.twin_pairs
    }

    /// The gadget graph plus one fresh vertex adjacent to exactly `B`.
    pub fn single_extension(&self) -> Graph {
        self.extend_with(&[ExtEdge::Border])
    }

    /// The gadget graph plus two fresh non-adjacent vertices, each adjacent
    /// to exactly `B` (a twin pair).
    pub fn twin_extension(&self) -> Graph {
        self.extend_with(&[ExtEdge::Border, ExtEdge::Border])
    }

    /// A seeded random B-extension with `extra ≥ 1` fresh vertices. Each
    /// fresh vertex is B-adjacent or not by coin flip and fresh pairs get
    /// random edges; deterministic repairs then guarantee the extension
    /// invariants: at least one fresh vertex is B-adjacent, and every fresh
    /// component reaches a B-adjacent fresh vertex, so the result is
    /// connected while each fresh vertex still sees `∅` or `B` inside `H`.
    pub fn random_extension(&self, extra: usize, seed: u64) -> Graph {
        assert!(extra >= 1, "an extension needs at least one fresh vertex");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut border_adjacent: Vec<bool> = (0..extra).map(|_| rng.random_bool(0.6)).collect();
        if !border_adjacent.iter().any(|&b| b) {
            border_adjacent[0] = true;
        }
        let mut fresh_edges = Vec::new();
        for i in 0..extra {
            for j in i + 1..extra {
                if rng.random_bool(0.4) {
                    fresh_edges.push((i, j));
                }
            }
        }
        // Repair connectivity: every fresh component must contain a
        // B-adjacent vertex; attach stragglers to the first B-adjacent one.
        let anchor = border_adjacent.iter().position(|&b| b).unwrap();
        let mut comp: Vec<usize> = (0..extra).collect();
        fn find(comp: &mut Vec<usize>, x: usize) -> usize {
            if comp[x] != x {
                let root = find(comp, comp[x]);
                comp[x] = root;
            }
            comp[x]
        }
        for &(i, j) in &fresh_edges {
            let (a, b) = (find(&mut comp, i), find(&mut comp, j));
            if a != b {
                comp[a] = b;
            }
        }
        for i in 0..extra {
            let root = find(&mut comp, i);
            let anchored = (0..extra)
                .filter(|&x| find(&mut comp, x) == root)
                .any(|x| border_adjacent[x]);
            if !anchored {
                let smallest = (0..extra).find(|&x| find(&mut comp, x) == root).unwrap();
                fresh_edges.push((smallest.min(anchor), smallest.max(anchor)));
                let (a, b) = (find(&mut comp, smallest), find(&mut comp, anchor));
                comp[a] = b;
            }
        }
        let spec: Vec<ExtEdge> = border_adjacent
            .iter()
            .map(|&b| if b { ExtEdge::Border } else { ExtEdge::Floating })
            .collect();
        let mut g = self.extension_builder(&spec);
        let base = self.graph.vertex_count();
        for (i, j) in fresh_edges {
            g.add_edge(base + i, base + j);
        }
        g.build()
    }

    /// The named extension family used by gadget checking: `single`, `twin`,
    /// then `random_count` seeded random extensions with `1..=max_extra`
    /// fresh vertices (cycling).
    pub fn standard_family(
        &self,
        seed: u64,
        random_count: usize,
        max_extra: usize,
    ) -> Vec<ExtensionMember> {
        assert!(max_extra >= 1);
        let mut family = vec![
            ExtensionMember {
                name: "single".to_string(),
                graph: self.single_extension(),
            },
            ExtensionMember {
                name: "twin".to_string(),
                graph: self.twin_extension(),
            },
        ];
        for i in 0..random_count {
            let extra = 1 + i % max_extra;
            family.push(ExtensionMember {
                name: format!("random:{i}"),
                graph: self.random_extension(extra, seed.wrapping_add(i as u64)),
            });
        }
        family
    }

    fn extension_builder(&self, fresh: &[ExtEdge]) -> GraphBuilder {
        let mut b = GraphBuilder::new();
        for _ in 0..self.graph.vertex_count() {
            b.add_vertex(Role::Plain);
        }
        for &(u, v) in self.graph.edges() {
            b.add_edge(u, v);
        }
        for kind in fresh {
            let v = b.add_vertex(Role::Plain);
            if matches!(kind, ExtEdge::Border) {
                for &bv in &self.border {
                    b.add_edge(bv, v);
                }
            }
        }
        b
    }

    fn extend_with(&self, fresh: &[ExtEdge]) -> Graph {
        self.extension_builder(fresh).build()
    }

    /// Distance from each code vertex to the border inside `H`.
    fn border_distances(&self) -> Vec<u32> {
        let dm = self.graph.distances();
        self.code
            .iter()
            .map(|&c| self.border.iter().map(|&b| dm.get(c, b)).min().unwrap())
            .collect()
    }
}

enum ExtEdge {
    Border,
    Floating,
}

/// A named B-extension for reporting.
#[derive(Clone, Debug)]
pub struct ExtensionMember {
    pub name: String,
    pub graph: Graph,
}

fn assemble(
    name: String,
    family: GadgetFamily,
    graph: Graph,
    names: Vec<String>,
    border: Vec<Vertex>,
    code: Vec<Vertex>,
    twin_pairs: Vec<(Vertex, Vertex)>,
) -> Gadget {
    assert!(graph.is_connected(), "{name}: gadget graphs are connected");
    assert_eq!(names.len(), graph.vertex_count());
    assert!(border.windows(2).all(|w| w[0] < w[1]));
    assert!(code.windows(2).all(|w| w[0] < w[1]));
    assert!(border.iter().all(|&v| v < graph.vertex_count()));
    assert!(code.iter().all(|&v| v < graph.vertex_count()));
    let (local, radius) = match family {
        GadgetFamily::OneLayered => (false, None),
        GadgetFamily::LocalZero { r } | GadgetFamily::IdCode { r } => (true, Some(r)),
    };
    let mut gadget = Gadget {
        name,
        family,
        graph,
        names,
        border,
        code,
        twin_pairs,
        meta: GadgetMeta {
            bipartite_single_ext: false,
            planar_twin_ext: true,
            local,
            radius,
        },
    };
    gadget.meta.bipartite_single_ext = gadget.single_extension().is_bipartite();
    if let Some(r) = radius {
        // Structural p_l: the code covers all border distances 0..r-1.
        let dists = gadget.border_distances();
        for k in 0..r {
            assert!(
                dists.contains(&k),
                "{}: no code vertex at border distance {k}",
                gadget.name
            );
        }
    }
    for &(x, y) in &gadget.twin_pairs {
        assert_eq!(
            gadget.graph.neighbors(x),
            gadget.graph.neighbors(y),
            "{}: ({x},{y}) are not twins",
            gadget.name
        );
    }
    gadget
}

/// The 10-vertex gadget for 1-layered problems: two 4-cycles hanging off a
/// twin border pair. `B = {b, b̄}`, `C = {b, u1, u2, v1, v2}`.
pub fn gadget_1layered() -> Gadget {
    let names: Vec<String> = [
        "b", "bbar", "u1", "u1bar", "u2", "u2bar", "v1", "v1bar", "v2", "v2bar",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let (b, bbar, u1, u1bar, u2, u2bar, v1, v1bar, v2, v2bar) =
        (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
    let edges = [
        // 4-cycle u1 - u2 - u1bar - u2bar - u1, and the same on the v side.
        (u1, u2),
        (u2, u1bar),
        (u1bar, u2bar),
        (u2bar, u1),
        (v1, v2),
        (v2, v1bar),
        (v1bar, v2bar),
        (v2bar, v1),
        // Both border vertices see both cycle entries.
        (b, u1),
        (b, u1bar),
        (b, v1),
        (b, v1bar),
        (bbar, u1),
        (bbar, u1bar),
        (bbar, v1),
        (bbar, v1bar),
    ];
    let graph = Graph::new(10, edges).unwrap();
    assemble(
        "1layered".to_string(),
        GadgetFamily::OneLayered,
        graph,
        names,
        vec![b, bbar],
        vec![b, u1, u2, v1, v2],
        vec![(b, bbar), (u1, u1bar), (u2, u2bar), (v1, v1bar), (v2, v2bar)],
    )
}

/// The local 0-layered gadget: a ladder of twin pairs `(a_i, b_i)` with
/// every consecutive pair fully joined. `2r+1` rungs for `r ≥ 2`, four rungs
/// for `r = 1`; `B = {a_1, b_1}`, `C = {a_1, …}`.
pub fn gadget_local0(r: u32) -> Result<Gadget, GadgetError> {
    if r == 0 {
        return Err(GadgetError::ZeroRadius);
    }
    let rungs = if r == 1 { 4 } else { 2 * r as usize + 1 };
    let a = |i: usize| 2 * (i - 1); // a_i, 1-based i
    let b = |i: usize| 2 * (i - 1) + 1;
    let mut names = Vec::new();
    for i in 1..=rungs {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    let mut edges = Vec::new();
    for i in 1..rungs {
        edges.push((a(i), a(i + 1)));
        edges.push((a(i), b(i + 1)));
        edges.push((b(i), a(i + 1)));
        edges.push((b(i), b(i + 1)));
    }
    let graph = Graph::new(2 * rungs, edges).unwrap();
    let code = (1..=rungs).map(a).collect();
    let twin_pairs = (1..=rungs).map(|i| (a(i), b(i))).collect();
    Ok(assemble(
        format!("local0:{r}"),
        GadgetFamily::LocalZero { r },
        graph,
        names,
        vec![a(1), b(1)],
        code,
        twin_pairs,
    ))
}

/// The `r`-identifying-code gadget on `6r+4` vertices: two spines
/// `a_0..a_{r+1}` and `b_0..b_{r+1}`, two parallel paths from `b_0` to `a_0`
/// (through `a^1_i` / `a^2_i`), and two pendant paths into `b_0` (through
/// `b^1_i` / `b^2_i`) whose tips form the border.
pub fn gadget_ic(r: u32) -> Result<Gadget, GadgetError> {
    if r == 0 {
        return Err(GadgetError::ZeroRadius);
    }
    let r = r as usize;
    // Vertex ids: a_i = i; b_i = r+2+i; a1_i = 2r+3+i; a2_i = 3r+3+i;
    // b1_i = 4r+3+i; b2_i = 5r+3+i (i runs 0..=r+1 on spines, 1..=r on
    // branches). The identifications a^j_0 = b_0 and a^j_{r+1} = a_0 and
    // b^j_{r+1} = b_0 are baked into the edges.
    let a = |i: usize| i;
    let b = |i: usize| r + 2 + i;
    let a1 = |i: usize| 2 * r + 3 + i;
    let a2 = |i: usize| 3 * r + 3 + i;
    let b1 = |i: usize| 4 * r + 3 + i;
    let b2 = |i: usize| 5 * r + 3 + i;
    let mut names = vec![String::new(); 6 * r + 4];
    for i in 0..=r + 1 {
        names[a(i)] = format!("a{i}");
        names[b(i)] = format!("b{i}");
    }
    for i in 1..=r {
        names[a1(i)] = format!("a1_{i}");
        names[a2(i)] = format!("a2_{i}");
        names[b1(i)] = format!("b1_{i}");
        names[b2(i)] = format!("b2_{i}");
    }
    let mut edges = Vec::new();
    for i in 0..=r {
        edges.push((a(i), a(i + 1)));
        edges.push((b(i), b(i + 1)));
    }
    for (branch, start, end) in [
        (&a1 as &dyn Fn(usize) -> usize, b(0), a(0)),
        (&a2, b(0), a(0)),
        (&b1, usize::MAX, b(0)), // pendant: no start-side edge
        (&b2, usize::MAX, b(0)),
    ] {
        if start != usize::MAX {
            edges.push((start, branch(1)));
        }
        for i in 1..r {
            edges.push((branch(i), branch(i + 1)));
        }
        edges.push((branch(r), end));
    }
    let graph = Graph::new(6 * r + 4, edges).unwrap();
    let mut code = vec![a(0), a(r + 1), b(0), b(r + 1)];
    code.extend((1..=r).map(a1));
    code.extend((1..=r).map(b1));
    code.sort_unstable();
    let twin_pairs = if r == 1 {
        vec![(a1(1), a2(1)), (b1(1), b2(1))]
    } else {
        Vec::new()
    };
    Ok(assemble(
        format!("ic:{r}"),
        GadgetFamily::IdCode { r: r as u32 },
        graph,
        names,
        vec![b1(1), b2(1)],
        code,
        twin_pairs,
    ))
}

/// Selects a gadget by canonical name: `1layered`, `local0:<r>`, `ic:<r>`.
pub fn from_name(s: &str) -> Result<Gadget, GadgetError> {
    if s == "1layered" {
        return Ok(gadget_1layered());
    }
    let unknown = || GadgetError::UnknownName(s.to_string());
    let (family, r) = s.split_once(':').ok_or_else(unknown)?;
    let r: u32 = r.parse().map_err(|_| unknown())?;
    match family {
        "local0" => gadget_local0(r),
        "ic" => gadget_ic(r),
        _ => Err(unknown()),
    }
}

/// Outcome of one axiom over one extension family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(CheckFailure),
    /// Not decided (extension too large for exact `p_s`, budget exhausted,
    /// or the axiom does not apply); never treated as a pass.
    Unchecked { reason: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    pub fn token(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Unchecked { .. } => "unchecked",
        }
    }
}

/// Concrete counterexample attached to a failed verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckFailure {
    /// `p_h`/`p_b`: no code vertex separates this pair (extension ids).
    UnseparatedPair {
        member: String,
        u: Vertex,
        v: Vertex,
    },
    /// `p_d`: this vertex of `G[V_H ∪ N_B]` is not r-dominated by the code.
    Undominated { member: String, vertex: Vertex },
    /// `p_s`: an optimal DIS with fewer than `|C|` vertices inside `V_H`.
    ThinOptimum {
        member: String,
        witness: Vec<Vertex>,
        inside: usize,
    },
    /// `p_l`: no code vertex at border distance `k − 1`.
    MissingLayer { k: u32 },
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::UnseparatedPair { member, u, v } => {
                write!(f, "{member}:pair:{u}:{v}")
            }
            CheckFailure::Undominated { member, vertex } => {
                write!(f, "{member}:undominated:{vertex}")
            }
            CheckFailure::ThinOptimum {
                member,
                witness,
                inside,
            } => {
                write!(f, "{member}:optimum-inside:{inside}:")?;
                for (i, v) in witness.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            CheckFailure::MissingLayer { k } => write!(f, "layer:{k}"),
        }
    }
}

/// Per-axiom verdicts for a gadget/problem pair over an extension family.
/// `p_l` is present only for local gadget families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub p_h: Verdict,
    pub p_b: Verdict,
    pub p_d: Verdict,
    pub p_s: Verdict,
    pub p_l: Option<Verdict>,
}

impl AxiomReport {
    /// True when nothing failed (unchecked verdicts are allowed).
    pub fn gadget_ok(&self) -> bool {
        let mut verdicts = vec![&self.p_h, &self.p_b, &self.p_d, &self.p_s];
        if let Some(l) = &self.p_l {
            verdicts.push(l);
        }
        verdicts.iter().all(|v| !v.failed())
    }
}

/// Knobs for [`check_gadget`].
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Largest extension checked exactly for `p_s` (all-optima enumeration).
    pub exact_limit: usize,
    pub solve: SolveOptions,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exact_limit: 18,
            solve: SolveOptions::default(),
        }
    }
}

/// Checks the gadget axioms for `(gadget, problem)` over the extension
/// family, merging per-member verdicts (first failure wins, then first
/// unchecked, then pass). Extensions list the gadget vertices first, as
/// produced by the extension constructors.
pub fn check_gadget(
    gadget: &Gadget,
    problem: &IdentifyingProblem,
    family: &[ExtensionMember],
    opts: &CheckOptions,
) -> AxiomReport {
    let mut p_h = Vec::new();
    let mut p_b = Vec::new();
    let mut p_d = Vec::new();
    let mut p_s = Vec::new();
    for member in family {
        p_h.push(check_p_h(gadget, problem, member));
        p_b.push(check_p_b(gadget, problem, member));
        p_d.push(check_p_d(gadget, problem, member));
        p_s.push(check_p_s(gadget, problem, member, opts));
    }
    AxiomReport {
        p_h: merge(p_h),
        p_b: merge(p_b),
        p_d: merge(p_d),
        p_s: merge(p_s),
        p_l: gadget.meta.local.then(|| check_p_l(gadget, problem)),
    }
}

fn merge(verdicts: Vec<Verdict>) -> Verdict {
    if let Some(fail) = verdicts.iter().find(|v| v.failed()) {
        return fail.clone();
    }
    if let Some(unchecked) = verdicts
        .iter()
        .find(|v| matches!(v, Verdict::Unchecked { .. }))
    {
        return unchecked.clone();
    }
    Verdict::Pass
}

/// Fresh vertices of an extension whose neighbourhood inside `H` is exactly
/// `B`. Also asserts the B-extension invariant (`∅` or `B`), which all
/// extension constructors guarantee.
fn border_adjacent(gadget: &Gadget, g: &Graph) -> Vec<Vertex> {
    let h_n = gadget.graph().vertex_count();
    let mut out = Vec::new();
    for v in h_n..g.vertex_count() {
        let inside: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| w < h_n).collect();
        if inside.is_empty() {
            continue;
        }
        assert_eq!(
            inside,
            gadget.border(),
            "not a B-extension: vertex {v} sees {inside:?} inside the gadget"
        );
        out.push(v);
    }
    out
}

fn check_p_h(gadget: &Gadget, problem: &IdentifyingProblem, member: &ExtensionMember) -> Verdict {
    let g = &member.graph;
    let dm = g.distances();
    let h_n = gadget.graph().vertex_count();
    for u in 0..h_n {
        for v in u + 1..g.vertex_count() {
            if !gadget
                .code()
                .iter()
                .any(|&c| problem.distinguishes(&dm, c, u, v))
            {
                return Verdict::Fail(CheckFailure::UnseparatedPair {
                    member: member.name.clone(),
                    u,
                    v,
                });
            }
        }
    }
    Verdict::Pass
}

fn check_p_b(gadget: &Gadget, problem: &IdentifyingProblem, member: &ExtensionMember) -> Verdict {
    let g = &member.graph;
    let dm = g.distances();
    let h_n = gadget.graph().vertex_count();
    let adjacent = border_adjacent(gadget, g);
    for &u in &adjacent {
        for v in h_n..g.vertex_count() {
            if u == v || adjacent.contains(&v) {
                continue;
            }
            if !gadget
                .code()
                .iter()
                .any(|&c| problem.distinguishes(&dm, c, u, v))
            {
                return Verdict::Fail(CheckFailure::UnseparatedPair {
                    member: member.name.clone(),
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
    }
    Verdict::Pass
}

fn check_p_d(gadget: &Gadget, problem: &IdentifyingProblem, member: &ExtensionMember) -> Verdict {
    let g = &member.graph;
    let h_n = gadget.graph().vertex_count();
    // Induced subgraph on V_H ∪ N_B; gadget vertices keep their ids.
    let mut keep: Vec<Vertex> = (0..h_n).collect();
    keep.extend(border_adjacent(gadget, g));
    let mut position = vec![usize::MAX; g.vertex_count()];
    for (idx, &v) in keep.iter().enumerate() {
        position[v] = idx;
    }
    let induced = Graph::new(
        keep.len(),
        g.edges()
            .iter()
            .filter(|&&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
            .map(|&(u, v)| (position[u], position[v])),
    )
    .unwrap();
    let dm = induced.distances();
    for (idx, &original) in keep.iter().enumerate() {
        if !gadget
            .code()
            .iter()
            .any(|&c| problem.radius().contains(dm.get(c, idx)))
        {
            return Verdict::Fail(CheckFailure::Undominated {
                member: member.name.clone(),
                vertex: original,
            });
        }
    }
    Verdict::Pass
}

fn check_p_s(
    gadget: &Gadget,
    problem: &IdentifyingProblem,
    member: &ExtensionMember,
    opts: &CheckOptions,
) -> Verdict {
    let g = &member.graph;
    if g.vertex_count() > opts.exact_limit {
        return Verdict::Unchecked {
            reason: format!(
                "{}: {} vertices exceed the exact limit {}",
                member.name,
                g.vertex_count(),
                opts.exact_limit
            ),
        };
    }
    let h_n = gadget.graph().vertex_count();
    let family = ConstraintFamily::for_dis(g, problem);
    let optimum = match min_dis(g, problem, &opts.solve) {
        SolveResult::Optimal { size, .. } => size,
        // No DIS at all: the quantifier over solutions is vacuous.
        SolveResult::Infeasible { .. } => return Verdict::Pass,
        SolveResult::Aborted { .. } => {
            return Verdict::Unchecked {
                reason: format!("{}: solve budget exhausted", member.name),
            }
        }
    };
    // The size arithmetic of the reduction theorems only ever applies p_s
    // to optimal solutions, so enumerating all optima decides exactly the
    // instances of the axiom that carry weight.
    let Some(optima) = enumerate_optima(&family, optimum, &opts.solve) else {
        return Verdict::Unchecked {
            reason: format!("{}: enumeration budget exhausted", member.name),
        };
    };
    for witness in optima {
        let inside = witness.iter().filter(|&&v| v < h_n).count();
        if inside < gadget.code().len() {
            return Verdict::Fail(CheckFailure::ThinOptimum {
                member: member.name.clone(),
                witness,
                inside,
            });
        }
    }
    Verdict::Pass
}

fn check_p_l(gadget: &Gadget, problem: &IdentifyingProblem) -> Verdict {
    let Some(r) = problem.radius().finite() else {
        return Verdict::Unchecked {
            reason: "locality is defined for finite radii".to_string(),
        };
    };
    let dists = gadget.border_distances();
    for k in 1..=r {
        if !dists.contains(&(k - 1)) {
            return Verdict::Fail(CheckFailure::MissingLayer { k });
        }
    }
    Verdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes_and_code_sizes() {
        let g = gadget_1layered();
        assert_eq!(g.graph().vertex_count(), 10);
        assert_eq!(g.code().len(), 5);
        assert_eq!(g.border(), &[0, 1]);

        for r in 1..=5u32 {
            let g = gadget_local0(r).unwrap();
            let expected = if r == 1 { 8 } else { 4 * r as usize + 2 };
            assert_eq!(g.graph().vertex_count(), expected, "local0:{r}");
            let code = if r == 1 { 4 } else { 2 * r as usize + 1 };
            assert_eq!(g.code().len(), code, "local0:{r}");

            let g = gadget_ic(r).unwrap();
            assert_eq!(g.graph().vertex_count(), 6 * r as usize + 4, "ic:{r}");
            assert_eq!(g.code().len(), 2 * r as usize + 4, "ic:{r}");
        }
    }

    #[test]
    fn one_layered_gadget_shape() {
        let g = gadget_1layered();
        assert!(g.graph().is_bipartite());
        assert_eq!(g.graph().degree(0), 4); // b
        assert_eq!(g.graph().open_twins(), g.twin_pairs());
        assert!(g.meta().bipartite_single_ext);
        assert!(!g.meta().local);
    }

    #[test]
    fn ic_gadget_shape() {
        let g = gadget_ic(1).unwrap();
        // b_0 is vertex r+2 = 3 and has degree 5 in the r = 1 gadget.
        assert_eq!(g.vertex_name(3), "b0");
        assert_eq!(g.graph().degree(3), 5);
        assert!(g.graph().is_bipartite());
        assert!(g.meta().local);
        assert_eq!(g.meta().radius, Some(1));
        // Both borders are pendant-path tips next to b_0.
        assert_eq!(g.border(), &[8, 9]);

        let g2 = gadget_ic(2).unwrap();
        assert!(g2.graph().is_bipartite());
        assert!(g2.twin_pairs().is_empty());
        assert_eq!(g2.graph().vertex_count(), 16);
    }

    #[test]
    fn local0_border_distances_cover_layers() {
        for r in 1..=4u32 {
            let g = gadget_local0(r).unwrap();
            let dists = g.border_distances();
            for k in 0..r {
                assert!(dists.contains(&k), "local0:{r} misses layer {k}");
            }
        }
    }

    #[test]
    fn gadget_twins_stay_twins_in_extensions() {
        for gadget in [
            gadget_1layered(),
            gadget_local0(2).unwrap(),
            gadget_ic(1).unwrap(),
        ] {
            let ext = gadget.twin_extension();
            let twins = ext.open_twins();
            for &(x, y) in gadget.twin_pairs() {
                assert!(twins.contains(&(x, y)), "{}: ({x},{y})", gadget.name());
            }
            // The two fresh vertices are twins of each other too.
            let n = ext.vertex_count();
            assert!(twins.contains(&(n - 2, n - 1)));
        }
    }

    #[test]
    fn random_extensions_are_legal_and_deterministic() {
        let gadget = gadget_local0(1).unwrap();
        let h_n = gadget.graph().vertex_count();
        for seed in 0..20u64 {
            let ext = gadget.random_extension(4, seed);
            assert_eq!(ext, gadget.random_extension(4, seed));
            assert!(ext.is_connected(), "seed {seed}");
            let mut some_border_adjacent = false;
            for v in h_n..ext.vertex_count() {
                let inside: Vec<usize> = ext
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| w < h_n)
                    .collect();
                assert!(
                    inside.is_empty() || inside == gadget.border(),
                    "seed {seed}, vertex {v}"
                );
                some_border_adjacent |= !inside.is_empty();
            }
            assert!(some_border_adjacent, "seed {seed}");
        }
    }

    #[test]
    fn name_selection() {
        assert_eq!(from_name("1layered").unwrap().name(), "1layered");
        assert_eq!(from_name("local0:3").unwrap().name(), "local0:3");
        assert_eq!(from_name("ic:2").unwrap().name(), "ic:2");
        assert!(matches!(
            from_name("local0:0"),
            Err(GadgetError::ZeroRadius)
        ));
        for bad in ["", "local0", "ic:x", "zzz:1", "1layered:2"] {
            assert!(matches!(from_name(bad), Err(GadgetError::UnknownName(_))), "{bad}");
        }
    }

    #[test]
    fn one_layered_with_ld1_passes_on_small_family() {
        let gadget = gadget_1layered();
        let problem = IdentifyingProblem::from_selection("ld:1").unwrap();
        let family = gadget.standard_family(7, 2, 2);
        let report = check_gadget(&gadget, &problem, &family, &CheckOptions::default());
        assert!(report.p_h.passed(), "{:?}", report.p_h);
        assert!(report.p_b.passed(), "{:?}", report.p_b);
        assert!(report.p_d.passed(), "{:?}", report.p_d);
        assert!(report.p_s.passed(), "{:?}", report.p_s);
        assert!(report.p_l.is_none());
        assert!(report.gadget_ok());
    }

    #[test]
    fn unchecked_p_s_beyond_the_exact_limit() {
        let gadget = gadget_1layered();
        let problem = IdentifyingProblem::from_selection("md:inf").unwrap();
        let family = gadget.standard_family(3, 1, 1);
        let opts = CheckOptions {
            exact_limit: 9,
            ..CheckOptions::default()
        };
        let report = check_gadget(&gadget, &problem, &family, &opts);
        assert!(matches!(report.p_s, Verdict::Unchecked { .. }));
        assert!(report.gadget_ok());
    }
}
