//! Hitting-Set-to-DIS reductions and their solution maps.
//!
//! Three constructions turn a hitting set instance `(Ω, 𝒮)` with
//! `|Ω| = n`, `|𝒮| = m` into a graph whose minimum DIS sizes encode the
//! minimum hitting set size exactly:
//!
//! * [`build_distance_id_graph`] — `Φ[H,B,r]`: one gadget copy per element
//!   (a B-single-extension through the element vertex `v^Ω_i`) and per set
//!   (a B-twin-extension through `v^𝒮_j`, `v̄^𝒮_j`), with a fresh path of
//!   `r−1` vertices per membership joining `v^Ω_i` to `v^𝒮_j`;
//! * [`build_apex_graph`] — `Φ*[H,B]`: `Φ[H,B,1]` plus an apex adjacent to
//!   every element-copy border and every set vertex pair;
//! * [`build_compressed_graph`] — `Ψ[H,B,r]`: only `ℓ(n+1)` element-side
//!   and `ℓ(m)` set-side copies (`ℓ(x) = 1+⌊log₂x⌋`), elements and sets
//!   wired to the copies by the 1-bits of their indices, a shared path
//!   `l_i^0..l_i^{r−1}` per element, and an apex path `a^0..a^{r−1}` whose
//!   head is adjacent to every element-side border (the all-ones pattern,
//!   which no element index attains) and whose tail is adjacent to every
//!   set vertex.
//!
//! Bit indexing: bit `k ∈ 1..=ℓ` of `x` is the k-th most significant bit of
//! the `ℓ`-wide binary representation, so patterns read left to right.
//!
//! The solution maps mirror the two directions of the equivalence proofs:
//! [`ReductionArtifact::lift`] sends a hitting set `P` to
//! `{v^Ω_i : u_i ∈ P} ∪ ⋃ C^Ω ∪ ⋃ C^𝒮` (size `|P| + offset` where
//! `offset = |C| · copies`), and [`ReductionArtifact::extract`] sends any
//! valid DIS `I` to a hitting set
//! `{u_i : I ∩ L_i ≠ ∅} ∪ {u_φ(j) : v^𝒮_j ∈ I or v̄^𝒮_j ∈ I}` of size at
//! most `|I| − offset`, with `φ(j)` the smallest element of `S_j` and `L_i`
//! the element vertex plus its path vertices. Together the two maps certify
//! `min-DIS = min-HS + offset` without ever solving the DIS side.
//!
//! The size bounds of the artifacts hold unconditionally for the compressed
//! construction; for the distance-identifying and apex constructions the
//! stated bound `(|H|+2r)(n+m)` assumes sparse instances (membership count
//! at most `2(n+m)−4`, as holds for planar associated graphs), which the
//! corpus generator respects.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gadgets::{Gadget, GadgetFamily};
use crate::graph::{CopyTag, Graph, GraphBuilder, Radius, Role, Vertex};
use crate::problems::{IdentifyingProblem, ProblemKind};
use crate::solver::{check_dis, HittingSetInstance, InstanceError};

/// `ℓ(x) = 1 + ⌊log₂ x⌋` for `x ≥ 1`: the width of the binary
/// representation of `x`.
pub fn bit_width(x: usize) -> u32 {
    assert!(x >= 1);
    usize::BITS - x.leading_zeros()
}

/// Bit `k ∈ 1..=width` of `x`, counting from the most significant bit of
/// the `width`-wide representation.
pub fn bit_of(x: usize, k: u32, width: u32) -> bool {
    debug_assert!(k >= 1 && k <= width);
    (x >> (width - k)) & 1 == 1
}

/// Which reduction a [`ReductionArtifact`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    DistanceId { r: u32 },
    Apex,
    Compressed { r: u32 },
}

impl ArtifactKind {
    /// The domination radius the construction was built for (1 for apex).
    pub fn r(self) -> u32 {
        match self {
            ArtifactKind::DistanceId { r } | ArtifactKind::Compressed { r } => r,
            ArtifactKind::Apex => 1,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            ArtifactKind::DistanceId { .. } => "distance",
            ArtifactKind::Apex => "apex",
            ArtifactKind::Compressed { .. } => "compressed",
        }
    }
}

/// Errors from the reduction builders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionError {
    ZeroRadius,
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::ZeroRadius => write!(f, "reduction radius must be at least 1"),
        }
    }
}

impl core::error::Error for ReductionError {}

/// Errors lifting a hitting set into an artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftError {
    ElementOutOfRange { element: usize },
    /// The proposed set misses this set index (1-based): not a hitting set.
    NotHitting { set: usize },
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::ElementOutOfRange { element } => {
                write!(f, "element {element} out of range")
            }
            LiftError::NotHitting { set } => write!(f, "input does not hit set {set}"),
        }
    }
}

impl core::error::Error for LiftError {}

/// Errors extracting a hitting set from a DIS of an artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractError {
    /// The problem's claimed traits do not match what the artifact's
    /// construction theorem requires.
    ProblemMismatch { problem: String },
    VertexOutOfRange { vertex: Vertex },
    /// The input is not a valid DIS of the artifact graph.
    InvalidDis { violation: String },
    /// The extracted set misses a set — the equivalence theorem's
    /// hypotheses were violated (e.g. an untested `n = 1` instance).
    NotHitting { set: usize },
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::ProblemMismatch { problem } => {
                write!(f, "problem {problem} does not match the artifact")
            }
            ExtractError::VertexOutOfRange { vertex } => {
                write!(f, "vertex {vertex} out of range")
            }
            ExtractError::InvalidDis { violation } => {
                write!(f, "input is not a distance identifying set: {violation}")
            }
            ExtractError::NotHitting { set } => {
                write!(f, "extraction does not hit set {set}")
            }
        }
    }
}

impl core::error::Error for ExtractError {}

/// A built reduction graph with everything needed to lift and extract
/// solutions: the instance, the gadget, and the vertex index maps.
#[derive(Clone, Debug)]
pub struct ReductionArtifact {
    kind: ArtifactKind,
    graph: Graph,
    gadget: Gadget,
    instance: HittingSetInstance,
    copies: usize,
    offset: usize,
    /// First vertex of each gadget copy, element-side copies first.
    copy_bases: Vec<Vertex>,
    /// `v^Ω_i` per element (index 0 = element 1).
    element_vertices: Vec<Vertex>,
    /// `v^𝒮_j` / `v̄^𝒮_j` per set.
    set_vertices: Vec<Vertex>,
    set_twin_vertices: Vec<Vertex>,
    /// `L_i`: the element vertex plus every path vertex charged to it.
    element_support: Vec<Vec<Vertex>>,
    /// Apex (length 1) or apex path `a^0..a^{r−1}`; empty for `Φ`.
    apex_path: Vec<Vertex>,
    /// The size equivalence for `Φ` and `Φ*` assumes `n > 1`; smaller
    /// instances still build, flagged here.
    equivalence_untested: bool,
}

impl ReductionArtifact {
    pub fn kind(&self) -> ArtifactKind {
        self.kind
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn gadget(&self) -> &Gadget {
        &self.gadget
    }

    pub fn instance(&self) -> &HittingSetInstance {
        &self.instance
    }

    /// Number of gadget copies: `n + m` for distance-id/apex,
    /// `ℓ(n+1) + ℓ(m)` for compressed.
    pub fn copies(&self) -> usize {
        self.copies
    }

    /// `|C| · copies`: the exact DIS-size surcharge of the construction.
    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn equivalence_untested(&self) -> bool {
        self.equivalence_untested
    }

    /// `v^Ω_i` for a 1-based element index.
    pub fn element_vertex(&self, i: usize) -> Vertex {
        self.element_vertices[i - 1]
    }

    /// `v^𝒮_j` for a 1-based set index.
    pub fn set_vertex(&self, j: usize) -> Vertex {
        self.set_vertices[j - 1]
    }

    /// `v̄^𝒮_j` for a 1-based set index.
    pub fn set_twin_vertex(&self, j: usize) -> Vertex {
        self.set_twin_vertices[j - 1]
    }

    /// The apex vertex (apex kind) or apex path `a^0..a^{r−1}` (compressed).
    pub fn apex_path(&self) -> &[Vertex] {
        &self.apex_path
    }

    /// The vertices of gadget copy `c` (0-based, element-side copies first).
    pub fn copy_vertices(&self, c: usize) -> impl Iterator<Item = Vertex> + '_ {
        let base = self.copy_bases[c];
        base..base + self.gadget.graph().vertex_count()
    }

    /// The size bound of the construction: `(|H|+2r)(n+m)` for
    /// distance-id/apex (guaranteed on sparse instances),
    /// `|H|(ℓ(n+1)+ℓ(m)) + r(n+1) + 2m` for compressed (always exact or
    /// better).
    pub fn size_bound(&self) -> usize {
        let h = self.gadget.graph().vertex_count();
        let n = self.instance.universe_size();
        let m = self.instance.set_count();
        let r = self.kind.r() as usize;
        match self.kind {
            ArtifactKind::DistanceId { .. } | ArtifactKind::Apex => (h + 2 * r) * (n + m),
            ArtifactKind::Compressed { .. } => self.copies * h + r * (n + 1) + 2 * m,
        }
    }

    /// Whether the equivalence theorem backing this artifact applies to the
    /// given problem: the problem's claimed traits must fit both the
    /// construction kind and the gadget family.
    pub fn problem_matches(&self, problem: &IdentifyingProblem) -> bool {
        let kind_ok = match self.kind {
            ArtifactKind::Apex => problem.claims_layered(Radius::Finite(1)),
            ArtifactKind::Compressed { r: 1 } => {
                problem.claims_layered(Radius::Finite(1))
                    || problem.claimed_local() == Some(Radius::Finite(1))
            }
            ArtifactKind::DistanceId { r } | ArtifactKind::Compressed { r } => {
                problem.claimed_local() == Some(Radius::Finite(r))
            }
        };
        let gadget_ok = match self.gadget.family() {
            GadgetFamily::OneLayered => problem.claims_layered(Radius::Finite(1)),
            GadgetFamily::LocalZero { r } => {
                problem.claimed_local() == Some(Radius::Finite(r))
                    && problem.claims_layered(Radius::Finite(0))
            }
            GadgetFamily::IdCode { r } => {
                problem.kind() == ProblemKind::Ic && problem.radius() == Radius::Finite(r)
            }
        };
        kind_ok && gadget_ok
    }

    /// Lifts a hitting set (1-based elements) to a DIS of the artifact:
    /// the chosen element vertices plus every code copy. The result has
    /// size `|hs| + offset` and is sorted.
    pub fn lift(&self, hs: &[usize]) -> Result<Vec<Vertex>, LiftError> {
        let n = self.instance.universe_size();
        let mut chosen = vec![false; n + 1];
        for &e in hs {
            if e == 0 || e > n {
                return Err(LiftError::ElementOutOfRange { element: e });
            }
            chosen[e] = true;
        }
        for (j, set) in self.instance.sets().iter().enumerate() {
            if !set.iter().any(|&e| chosen[e]) {
                return Err(LiftError::NotHitting { set: j + 1 });
            }
        }
        let mut out: Vec<Vertex> = (1..=n)
            .filter(|&e| chosen[e])
            .map(|e| self.element_vertex(e))
            .collect();
        for &base in &self.copy_bases {
            out.extend(self.gadget.code().iter().map(|&v| base + v));
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Extracts a hitting set from any valid DIS of the artifact, per the
    /// equivalence proofs: elements whose support `L_i` is hit, plus the
    /// smallest element of every set whose vertex pair is hit. The result
    /// has size at most `|dis| − offset` and is sorted.
    pub fn extract(
        &self,
        problem: &IdentifyingProblem,
        dis: &[Vertex],
    ) -> Result<Vec<usize>, ExtractError> {
        if !self.problem_matches(problem) {
            return Err(ExtractError::ProblemMismatch {
                problem: problem.name().into(),
            });
        }
        let n_v = self.graph.vertex_count();
        if let Some(&v) = dis.iter().find(|&&v| v >= n_v) {
            return Err(ExtractError::VertexOutOfRange { vertex: v });
        }
        if let Err(violation) = check_dis(&self.graph, problem, dis) {
            return Err(ExtractError::InvalidDis {
                violation: format!("{violation}"),
            });
        }
        let mut in_dis = vec![false; n_v];
        for &v in dis {
            in_dis[v] = true;
        }
        let n = self.instance.universe_size();
        let mut picked = vec![false; n + 1];
        for i in 1..=n {
            if self.element_support[i - 1].iter().any(|&v| in_dis[v]) {
                picked[i] = true;
            }
        }
        for (j, set) in self.instance.sets().iter().enumerate() {
            if in_dis[self.set_vertices[j]] || in_dis[self.set_twin_vertices[j]] {
                picked[set[0]] = true; // φ(j): smallest element of S_j
            }
        }
        let out: Vec<usize> = (1..=n).filter(|&e| picked[e]).collect();
        if let Some(j) = self.instance.first_unhit(&out) {
            return Err(ExtractError::NotHitting { set: j });
        }
        Ok(out)
    }

    /// Twin pairs inside every gadget copy (artifact vertex ids). Swapping
    /// the two sides of a pair inside a DIS is the perturbation the
    /// equivalence tests use; validity of each swap is problem-dependent
    /// and must be re-checked.
    pub fn copy_twin_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for &base in &self.copy_bases {
            for &(x, y) in self.gadget.twin_pairs() {
                out.push((base + x, base + y));
            }
        }
        out
    }
}

/// The associated (bipartite incidence) graph of an instance: one vertex
/// per element, one per set, an edge per membership.
pub fn build_associated_graph(inst: &HittingSetInstance) -> Graph {
    let n = inst.universe_size();
    let m = inst.set_count();
    let mut b = GraphBuilder::new();
    for i in 1..=n {
        b.add_vertex(Role::Element(i));
    }
    for j in 1..=m {
        b.add_vertex(Role::Set(j));
    }
    for (j, set) in inst.sets().iter().enumerate() {
        for &e in set {
            b.add_edge(e - 1, n + j);
        }
    }
    b.build()
}

/// Adds one gadget copy to the builder; returns its base vertex.
fn add_copy(b: &mut GraphBuilder, gadget: &Gadget, tag: CopyTag) -> Vertex {
    let base = b.vertex_count();
    for v in 0..gadget.graph().vertex_count() {
        b.add_vertex(Role::Gadget {
            copy: tag,
            name: gadget.vertex_name(v).into(),
        });
    }
    for &(u, v) in gadget.graph().edges() {
        b.add_edge(base + u, base + v);
    }
    base
}

fn wire_to_border(b: &mut GraphBuilder, gadget: &Gadget, base: Vertex, v: Vertex) {
    for &bv in gadget.border() {
        b.add_edge(base + bv, v);
    }
}

/// Builds `Φ[H,B,r]`: the `(H,B,r)`-distance identifying graph of the
/// instance.
pub fn build_distance_id_graph(
    gadget: &Gadget,
    r: u32,
    inst: &HittingSetInstance,
) -> Result<ReductionArtifact, ReductionError> {
    if r == 0 {
        return Err(ReductionError::ZeroRadius);
    }
    let (mut b, skeleton) = build_phi_skeleton(gadget, inst);
    let mut element_support: Vec<Vec<Vertex>> =
        skeleton.element_vertices.iter().map(|&v| vec![v]).collect();
    for (j, set) in inst.sets().iter().enumerate() {
        for &i in set {
            // A fresh path l^1..l^{r−1} with d(v^Ω_i, l^k) = k, then the
            // closing edge into v^𝒮_j (a direct edge when r = 1).
            let mut prev = skeleton.element_vertices[i - 1];
            for k in 1..r {
                let l = b.add_vertex(Role::Path {
                    element: i,
                    set: Some(j + 1),
                    step: k as usize,
                });
                b.add_edge(prev, l);
                element_support[i - 1].push(l);
                prev = l;
            }
            b.add_edge(prev, skeleton.set_vertices[j]);
        }
    }
    Ok(finish(
        ArtifactKind::DistanceId { r },
        b,
        gadget,
        inst,
        skeleton,
        element_support,
        Vec::new(),
    ))
}

/// Builds `Φ*[H,B]`: the `(H,B)`-apex distance identifying graph — the
/// `r = 1` distance identifying graph plus an apex adjacent to every
/// element-copy border and every set vertex pair.
pub fn build_apex_graph(gadget: &Gadget, inst: &HittingSetInstance) -> ReductionArtifact {
    let (mut b, skeleton) = build_phi_skeleton(gadget, inst);
    let element_support: Vec<Vec<Vertex>> =
        skeleton.element_vertices.iter().map(|&v| vec![v]).collect();
    for (j, set) in inst.sets().iter().enumerate() {
        for &i in set {
            b.add_edge(skeleton.element_vertices[i - 1], skeleton.set_vertices[j]);
        }
    }
    let apex = b.add_vertex(Role::Apex);
    for c in 0..inst.universe_size() {
        wire_to_border(&mut b, gadget, skeleton.copy_bases[c], apex);
    }
    for j in 0..inst.set_count() {
        b.add_edge(apex, skeleton.set_vertices[j]);
        b.add_edge(apex, skeleton.set_twin_vertices[j]);
    }
    finish(
        ArtifactKind::Apex,
        b,
        gadget,
        inst,
        skeleton,
        element_support,
        vec![apex],
    )
}

/// Builds `Ψ[H,B,r]`: the `(H,B,r)`-compressed graph of the instance.
pub fn build_compressed_graph(
    gadget: &Gadget,
    r: u32,
    inst: &HittingSetInstance,
) -> Result<ReductionArtifact, ReductionError> {
    if r == 0 {
        return Err(ReductionError::ZeroRadius);
    }
    let n = inst.universe_size();
    let m = inst.set_count();
    let wn = bit_width(n + 1);
    let wm = bit_width(m);
    let mut b = GraphBuilder::new();
    let mut copy_bases = Vec::new();
    for k in 1..=wn {
        copy_bases.push(add_copy(&mut b, gadget, CopyTag::Element(k as usize)));
    }
    for k in 1..=wm {
        copy_bases.push(add_copy(&mut b, gadget, CopyTag::Set(k as usize)));
    }
    // Element paths l_i^0..l_i^{r−1}; l_i^0 is the element vertex, wired to
    // the element-side borders selected by the bits of i.
    let mut element_vertices = Vec::new();
    let mut element_support = Vec::new();
    for i in 1..=n {
        let head = b.add_vertex(Role::Element(i));
        element_vertices.push(head);
        let mut support = vec![head];
        for k in 1..=wn {
            if bit_of(i, k, wn) {
                wire_to_border(&mut b, gadget, copy_bases[k as usize - 1], head);
            }
        }
        let mut prev = head;
        for step in 1..r {
            let l = b.add_vertex(Role::Path {
                element: i,
                set: None,
                step: step as usize,
            });
            b.add_edge(prev, l);
            support.push(l);
            prev = l;
        }
        element_support.push(support);
    }
    // Set vertex pairs, wired to the set-side borders by the bits of j.
    let mut set_vertices = Vec::new();
    let mut set_twin_vertices = Vec::new();
    for j in 1..=m {
        let v = b.add_vertex(Role::Set(j));
        let vbar = b.add_vertex(Role::SetTwin(j));
        for k in 1..=wm {
            if bit_of(j, k, wm) {
                let base = copy_bases[wn as usize + k as usize - 1];
                wire_to_border(&mut b, gadget, base, v);
                wire_to_border(&mut b, gadget, base, vbar);
            }
        }
        set_vertices.push(v);
        set_twin_vertices.push(vbar);
    }
    // Membership edges from the path tails.
    for (j, set) in inst.sets().iter().enumerate() {
        for &i in set {
            b.add_edge(*element_support[i - 1].last().unwrap(), set_vertices[j]);
        }
    }
    // Apex path: a^0 carries the all-ones pattern (which no element index
    // reaches), a^{r−1} is adjacent to every set vertex.
    let mut apex_path = Vec::new();
    for step in 0..r {
        let a = b.add_vertex(Role::ApexPath(step as usize));
        if let Some(&prev) = apex_path.last() {
            b.add_edge(prev, a);
        }
        apex_path.push(a);
    }
    for k in 1..=wn {
        wire_to_border(&mut b, gadget, copy_bases[k as usize - 1], apex_path[0]);
    }
    let tail = *apex_path.last().unwrap();
    for j in 0..m {
        b.add_edge(tail, set_vertices[j]);
        b.add_edge(tail, set_twin_vertices[j]);
    }
    let copies = (wn + wm) as usize;
    Ok(ReductionArtifact {
        kind: ArtifactKind::Compressed { r },
        graph: b.build(),
        gadget: gadget.clone(),
        instance: inst.clone(),
        copies,
        offset: gadget.code().len() * copies,
        copy_bases,
        element_vertices,
        set_vertices,
        set_twin_vertices,
        element_support,
        apex_path,
        equivalence_untested: false,
    })
}

/// Common `Φ` part: element blocks (copy + `v^Ω_i`) then set blocks
/// (copy + `v^𝒮_j` + `v̄^𝒮_j`), all border-wired; membership edges are up
/// to the caller.
struct PhiSkeleton {
    copy_bases: Vec<Vertex>,
    element_vertices: Vec<Vertex>,
    set_vertices: Vec<Vertex>,
    set_twin_vertices: Vec<Vertex>,
}

fn build_phi_skeleton(gadget: &Gadget, inst: &HittingSetInstance) -> (GraphBuilder, PhiSkeleton) {
    let mut b = GraphBuilder::new();
    let mut copy_bases = Vec::new();
    let mut element_vertices = Vec::new();
    for i in 1..=inst.universe_size() {
        let base = add_copy(&mut b, gadget, CopyTag::Element(i));
        copy_bases.push(base);
        let v = b.add_vertex(Role::Element(i));
        wire_to_border(&mut b, gadget, base, v);
        element_vertices.push(v);
    }
    let mut set_vertices = Vec::new();
    let mut set_twin_vertices = Vec::new();
    for j in 1..=inst.set_count() {
        let base = add_copy(&mut b, gadget, CopyTag::Set(j));
        copy_bases.push(base);
        let v = b.add_vertex(Role::Set(j));
        let vbar = b.add_vertex(Role::SetTwin(j));
        wire_to_border(&mut b, gadget, base, v);
        wire_to_border(&mut b, gadget, base, vbar);
        set_vertices.push(v);
        set_twin_vertices.push(vbar);
    }
    (
        b,
        PhiSkeleton {
            copy_bases,
            element_vertices,
            set_vertices,
            set_twin_vertices,
        },
    )
}

fn finish(
    kind: ArtifactKind,
    b: GraphBuilder,
    gadget: &Gadget,
    inst: &HittingSetInstance,
    skeleton: PhiSkeleton,
    element_support: Vec<Vec<Vertex>>,
    apex_path: Vec<Vertex>,
) -> ReductionArtifact {
    let copies = inst.universe_size() + inst.set_count();
    ReductionArtifact {
        kind,
        graph: b.build(),
        gadget: gadget.clone(),
        instance: inst.clone(),
        copies,
        offset: gadget.code().len() * copies,
        copy_bases: skeleton.copy_bases,
        element_vertices: skeleton.element_vertices,
        set_vertices: skeleton.set_vertices,
        set_twin_vertices: skeleton.set_twin_vertices,
        element_support,
        apex_path,
        equivalence_untested: inst.universe_size() == 1,
    }
}

/// A CNF formula over variables `1..=num_vars`; a literal is `+v` or `-v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<i64>>,
}

/// Errors validating a CNF formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CnfError {
    NoVariables,
    ZeroLiteral { clause: usize },
    LiteralOutOfRange { clause: usize, literal: i64 },
}

impl fmt::Display for CnfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CnfError::NoVariables => write!(f, "a formula needs at least one variable"),
            CnfError::ZeroLiteral { clause } => write!(f, "zero literal in clause {clause}"),
            CnfError::LiteralOutOfRange { clause, literal } => {
                write!(f, "literal {literal} out of range in clause {clause}")
            }
        }
    }
}

impl core::error::Error for CnfError {}

impl CnfFormula {
    /// Validates literals; clauses are kept in order, 1-based in reports.
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self, CnfError> {
        if num_vars == 0 {
            return Err(CnfError::NoVariables);
        }
        for (idx, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 {
                    return Err(CnfError::ZeroLiteral { clause: idx + 1 });
                }
                if lit.unsigned_abs() as usize > num_vars {
                    return Err(CnfError::LiteralOutOfRange {
                        clause: idx + 1,
                        literal: lit,
                    });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i64>] {
        &self.clauses
    }
}

/// Errors converting a CNF formula to a hitting set instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatReductionError {
    /// An empty clause is unsatisfiable and has no set encoding.
    EmptyClause { clause: usize },
    Instance(InstanceError),
}

impl fmt::Display for SatReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SatReductionError::EmptyClause { clause } => {
                write!(f, "clause {clause} is empty")
            }
            SatReductionError::Instance(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SatReductionError {}

/// Encodes SAT as hitting set: elements `2v−1` (positive) and `2v`
/// (negative) per variable, a pair set `{2v−1, 2v}` per variable, then one
/// set per clause listing its literals. The formula is satisfiable iff the
/// minimum hitting set has size exactly `num_vars` (it can never be
/// smaller, the pair sets being disjoint).
pub fn sat_to_hitting_set(cnf: &CnfFormula) -> Result<HittingSetInstance, SatReductionError> {
    let v = cnf.num_vars();
    let mut sets: Vec<Vec<usize>> = (1..=v).map(|x| vec![2 * x - 1, 2 * x]).collect();
    for (idx, clause) in cnf.clauses().iter().enumerate() {
        if clause.is_empty() {
            return Err(SatReductionError::EmptyClause { clause: idx + 1 });
        }
        sets.push(
            clause
                .iter()
                .map(|&lit| {
                    let var = lit.unsigned_abs() as usize;
                    if lit > 0 {
                        2 * var - 1
                    } else {
                        2 * var
                    }
                })
                .collect(),
        );
    }
    HittingSetInstance::new(2 * v, sets).map_err(SatReductionError::Instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets;
    use crate::problems::IdentifyingProblem;
    use crate::solver::is_dis;

    fn small_instance() -> HittingSetInstance {
        HittingSetInstance::new(4, vec![vec![1, 2], vec![2, 3, 4]]).unwrap()
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(bit_width(1), 1);
        assert_eq!(bit_width(2), 2);
        assert_eq!(bit_width(3), 2);
        assert_eq!(bit_width(4), 3);
        assert_eq!(bit_width(5), 3);
        assert_eq!(bit_width(8), 4);
        // 5 = 101 over width 3, most significant bit first.
        assert!(bit_of(5, 1, 3));
        assert!(!bit_of(5, 2, 3));
        assert!(bit_of(5, 3, 3));
        // 2 = 010 over width 3.
        assert!(!bit_of(2, 1, 3));
        assert!(bit_of(2, 2, 3));
        assert!(!bit_of(2, 3, 3));
    }

    #[test]
    fn associated_graph_shape() {
        let g = build_associated_graph(&small_instance());
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 5);
        assert!(g.is_bipartite());
        assert_eq!(*g.label(0), Role::Element(1));
        assert_eq!(*g.label(4), Role::Set(1));
        // Singleton sets give a perfect matching.
        let matching = HittingSetInstance::new(3, vec![vec![1], vec![2], vec![3]]).unwrap();
        let g = build_associated_graph(&matching);
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 3));
        assert!((0..6).all(|v| g.degree(v) == 1));
    }

    #[test]
    fn distance_id_counts() {
        let gadget = gadgets::gadget_local0(2).unwrap();
        let art = build_distance_id_graph(&gadget, 2, &small_instance()).unwrap();
        assert_eq!(art.graph().vertex_count(), 73);
        assert_eq!(art.copies(), 6);
        assert_eq!(art.offset(), 30);
        assert!(art.graph().vertex_count() <= art.size_bound());
        assert!(art.graph().is_connected());
        assert!(art.graph().is_bipartite());
        assert!(!art.equivalence_untested());
        // d(v^Ω_i, v^𝒮_j) = r for memberships.
        let dm = art.graph().distances();
        assert_eq!(dm.get(art.element_vertex(2), art.set_vertex(1)), 2);
        assert_eq!(dm.get(art.element_vertex(2), art.set_vertex(2)), 2);
        // Path interiors have degree 2.
        for (v, role) in art.graph().labels().iter().enumerate() {
            if matches!(role, Role::Path { .. }) {
                assert_eq!(art.graph().degree(v), 2);
            }
        }
    }

    #[test]
    fn distance_id_r1_has_no_paths() {
        let gadget = gadgets::gadget_local0(1).unwrap();
        let inst = small_instance();
        let art = build_distance_id_graph(&gadget, 1, &inst).unwrap();
        // 4·(8+1) + 2·(8+2) = 56 vertices, no Path roles.
        assert_eq!(art.graph().vertex_count(), 56);
        assert!(art
            .graph()
            .labels()
            .iter()
            .all(|role| !matches!(role, Role::Path { .. })));
        let dm = art.graph().distances();
        assert_eq!(dm.get(art.element_vertex(1), art.set_vertex(1)), 1);
    }

    #[test]
    fn apex_counts() {
        let gadget = gadgets::gadget_1layered();
        let inst = small_instance();
        let art = build_apex_graph(&gadget, &inst);
        assert_eq!(art.graph().vertex_count(), 69);
        assert_eq!(art.copies(), 6);
        assert_eq!(art.offset(), 30);
        assert!(art.graph().vertex_count() <= art.size_bound());
        assert!(art.graph().is_bipartite());
        let apex = art.apex_path()[0];
        assert_eq!(*art.graph().label(apex), Role::Apex);
        // Apex degree n·|B| + 2m = 4·2 + 2·2 = 12; distance 1 to every set
        // vertex.
        assert_eq!(art.graph().degree(apex), 12);
        for j in 1..=2 {
            assert!(art.graph().has_edge(apex, art.set_vertex(j)));
            assert!(art.graph().has_edge(apex, art.set_twin_vertex(j)));
        }
    }

    #[test]
    fn compressed_counts() {
        let gadget = gadgets::gadget_local0(2).unwrap();
        let inst = small_instance();
        let art = build_compressed_graph(&gadget, 2, &inst).unwrap();
        // ℓ(5) + ℓ(2) = 3 + 2 copies; 5·10 + 4·2 + 2·2 + 2 = 64 vertices.
        assert_eq!(art.copies(), 5);
        assert_eq!(art.offset(), 25);
        assert_eq!(art.graph().vertex_count(), 64);
        assert_eq!(art.graph().vertex_count(), art.size_bound());
        assert!(art.graph().is_connected());
        assert!(art.graph().is_bipartite());
        assert!(!art.equivalence_untested());
        // d(v^Ω_i, v^𝒮_j) = r for memberships.
        let dm = art.graph().distances();
        assert_eq!(dm.get(art.element_vertex(2), art.set_vertex(1)), 2);
        // The apex head is adjacent to every element-side border; no
        // element shares the all-ones pattern.
        let a0 = art.apex_path()[0];
        for k in 0..3usize {
            let border_hits = art
                .copy_vertices(k)
                .filter(|&v| art.graph().has_edge(a0, v))
                .count();
            assert_eq!(border_hits, gadget.border().len());
        }
        for i in 1..=4 {
            let wired: Vec<u32> = (1..=3)
                .filter(|&k| bit_of(i, k, 3))
                .collect();
            assert!(wired.len() < 3, "element {i} must not be all-ones");
        }
    }

    #[test]
    fn lift_and_extract_round_trip_on_the_running_instance() {
        let inst = small_instance();
        let cases: Vec<(ReductionArtifact, IdentifyingProblem)> = vec![
            (
                build_apex_graph(&gadgets::gadget_1layered(), &inst),
                IdentifyingProblem::from_selection("md:inf").unwrap(),
            ),
            (
                build_distance_id_graph(&gadgets::gadget_local0(2).unwrap(), 2, &inst).unwrap(),
                IdentifyingProblem::from_selection("md:2").unwrap(),
            ),
            (
                build_compressed_graph(&gadgets::gadget_local0(2).unwrap(), 2, &inst).unwrap(),
                IdentifyingProblem::from_selection("md:2").unwrap(),
            ),
        ];
        for (art, problem) in &cases {
            let lifted = art.lift(&[2]).unwrap();
            assert_eq!(lifted.len(), 1 + art.offset(), "{:?}", art.kind());
            assert!(
                is_dis(art.graph(), problem, &lifted),
                "{:?} lift of {{2}} must verify",
                art.kind()
            );
            let back = art.extract(problem, &lifted).unwrap();
            assert_eq!(back, vec![2], "{:?}", art.kind());
        }
    }

    #[test]
    fn lift_rejects_non_hitting_inputs() {
        let art = build_apex_graph(&gadgets::gadget_1layered(), &small_instance());
        assert_eq!(art.lift(&[]), Err(LiftError::NotHitting { set: 1 }));
        assert_eq!(art.lift(&[1]), Err(LiftError::NotHitting { set: 2 }));
        assert_eq!(art.lift(&[5]), Err(LiftError::ElementOutOfRange { element: 5 }));
    }

    #[test]
    fn extract_rejects_mismatches_and_invalid_sets() {
        let inst = small_instance();
        let art = build_apex_graph(&gadgets::gadget_1layered(), &inst);
        let md_inf = IdentifyingProblem::from_selection("md:inf").unwrap();
        let ic1 = IdentifyingProblem::from_selection("ic:1").unwrap();
        let lifted = art.lift(&[2]).unwrap();
        assert!(matches!(
            art.extract(&ic1, &lifted),
            Err(ExtractError::ProblemMismatch { .. })
        ));
        assert!(matches!(
            art.extract(&md_inf, &lifted[1..]),
            Err(ExtractError::InvalidDis { .. })
        ));
        assert!(matches!(
            art.extract(&md_inf, &[10_000]),
            Err(ExtractError::VertexOutOfRange { vertex: 10_000 })
        ));
    }

    #[test]
    fn problem_matching_rules() {
        let inst = small_instance();
        let md2 = IdentifyingProblem::from_selection("md:2").unwrap();
        let ld2 = IdentifyingProblem::from_selection("ld:2").unwrap();
        let ld1 = IdentifyingProblem::from_selection("ld:1").unwrap();
        let md1 = IdentifyingProblem::from_selection("md:1").unwrap();
        let md_inf = IdentifyingProblem::from_selection("md:inf").unwrap();
        let ic1 = IdentifyingProblem::from_selection("ic:1").unwrap();
        let ic2 = IdentifyingProblem::from_selection("ic:2").unwrap();

        let apex = build_apex_graph(&gadgets::gadget_1layered(), &inst);
        assert!(apex.problem_matches(&md_inf));
        assert!(apex.problem_matches(&ld1));
        assert!(apex.problem_matches(&md1));
        assert!(!apex.problem_matches(&ld2)); // ld:2 is only 0-layered
        assert!(!apex.problem_matches(&ic1));

        let local = gadgets::gadget_local0(2).unwrap();
        let dist = build_distance_id_graph(&local, 2, &inst).unwrap();
        assert!(dist.problem_matches(&md2));
        assert!(dist.problem_matches(&ld2));
        assert!(!dist.problem_matches(&md1)); // wrong locality radius
        assert!(!dist.problem_matches(&ic2)); // ic needs the ic gadget

        let ic_gadget = gadgets::gadget_ic(2).unwrap();
        let dist_ic = build_distance_id_graph(&ic_gadget, 2, &inst).unwrap();
        assert!(dist_ic.problem_matches(&ic2));
        assert!(!dist_ic.problem_matches(&md2));

        // The 1-layered gadget in a compressed r = 1 build serves any
        // 1-layered problem, metric dimension included.
        let comp1 = build_compressed_graph(&gadgets::gadget_1layered(), 1, &inst).unwrap();
        assert!(comp1.problem_matches(&md_inf));
        assert!(comp1.problem_matches(&ld1));
        assert!(!comp1.problem_matches(&ld2));
    }

    #[test]
    fn single_element_instances_are_flagged() {
        let inst = HittingSetInstance::new(1, vec![vec![1]]).unwrap();
        let apex = build_apex_graph(&gadgets::gadget_1layered(), &inst);
        assert!(apex.equivalence_untested());
        let comp =
            build_compressed_graph(&gadgets::gadget_local0(1).unwrap(), 1, &inst).unwrap();
        assert!(!comp.equivalence_untested());
    }

    #[test]
    fn artifact_labels_are_complete_and_consistent() {
        let gadget = gadgets::gadget_local0(2).unwrap();
        let inst = small_instance();
        let art = build_compressed_graph(&gadget, 2, &inst).unwrap();
        let mut gadget_vertices = 0;
        for role in art.graph().labels() {
            match role {
                Role::Gadget { .. } => gadget_vertices += 1,
                Role::Plain => panic!("artifact vertices must carry construction roles"),
                _ => {}
            }
        }
        assert_eq!(gadget_vertices, art.copies() * gadget.graph().vertex_count());
        for i in 1..=4 {
            assert_eq!(*art.graph().label(art.element_vertex(i)), Role::Element(i));
        }
    }

    #[test]
    fn copy_twins_are_real_twins() {
        let gadget = gadgets::gadget_local0(2).unwrap();
        let art = build_distance_id_graph(&gadget, 2, &small_instance()).unwrap();
        let twins = art.graph().open_twins();
        for pair in art.copy_twin_pairs() {
            assert!(twins.contains(&pair), "{pair:?}");
        }
    }

    #[test]
    fn sat_reduction_examples() {
        // (x) ∧ (¬x): min hitting set 2 > 1 variable → unsatisfiable.
        let cnf = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
        let inst = sat_to_hitting_set(&cnf).unwrap();
        assert_eq!(inst.universe_size(), 2);
        assert_eq!(inst.sets(), &[vec![1, 2], vec![1], vec![2]]);

        // (x ∨ y): two variables, satisfiable.
        let cnf = CnfFormula::new(2, vec![vec![1, 2]]).unwrap();
        let inst = sat_to_hitting_set(&cnf).unwrap();
        assert_eq!(inst.universe_size(), 4);
        assert_eq!(inst.sets(), &[vec![1, 2], vec![3, 4], vec![1, 3]]);

        // A variable with no occurrence still gets its pair set.
        let cnf = CnfFormula::new(2, vec![vec![1]]).unwrap();
        let inst = sat_to_hitting_set(&cnf).unwrap();
        assert_eq!(inst.set_count(), 3);

        let cnf = CnfFormula::new(1, vec![vec![]]).unwrap();
        assert_eq!(
            sat_to_hitting_set(&cnf),
            Err(SatReductionError::EmptyClause { clause: 1 })
        );
    }

    #[test]
    fn cnf_validation() {
        assert_eq!(CnfFormula::new(0, vec![]), Err(CnfError::NoVariables));
        assert_eq!(
            CnfFormula::new(1, vec![vec![1, 0]]),
            Err(CnfError::ZeroLiteral { clause: 1 })
        );
        assert_eq!(
            CnfFormula::new(1, vec![vec![2]]),
            Err(CnfError::LiteralOutOfRange {
                clause: 1,
                literal: 2
            })
        );
    }
}
