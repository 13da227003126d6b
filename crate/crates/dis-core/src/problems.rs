//! Distance identifying functions and their structural axioms.
//!
//! An identifying function `f_G[w](u, v)` decides whether witness `w`
//! separates the pair `(u, v)` in graph `G`; it only ever looks at the
//! distance matrix. The built-in families are:
//!
//! * `r`-IC (identifying codes): `w ∈ N_r[u] Δ N_r[v]` — symmetric
//!   difference of closed balls; finite `r` only;
//! * `r`-LD (locating-dominating): the `r`-IC condition, or `w ∈ {u, v}`;
//!   finite `r` only;
//! * `r`-MD (resolving sets / metric dimension): `w ∈ N_r[u] ∪ N_r[v]` and
//!   `d(u, w) ≠ d(v, w)`; `r` may be `∞`, which is the classic metric
//!   dimension predicate.
//!
//! The axioms checked over graph corpora, for a layer index `i ∈ [∞]`:
//!
//! * α (distance): `f` is false whenever `d(u, w) = d(v, w)` (unreachable
//!   counts as equidistant from unreachable);
//! * β1(i): `f` is true whenever `d(u, w) ≤ i < d(v, w)` or symmetrically;
//! * β2(i): `f` is false whenever `i < min(d(u, w), d(v, w))`;
//! * γ(i): `f` is true whenever `min(d(u, w), d(v, w)) ≤ i` and the two
//!   distances differ.
//!
//! `i`-local means β1(i) ∧ β2(i); `i`-layered means γ(i). γ is monotone:
//! γ(i) implies γ(i′) for every `i′ ≤ i`, so a claim records the strongest
//! layer. A *local* problem is an `i`-local one solved at radius `r = i`
//! with `i` finite — `md:inf` is `∞`-local but not local in this sense.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{DistanceMatrix, Graph, Radius, Vertex};

/// Identifying-function family of a problem; reductions use this to decide
/// which gadget families certifiably support a problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    /// `r`-identifying codes.
    Ic,
    /// `r`-locating-dominating sets.
    Ld,
    /// `r`-resolving sets (metric dimension when `r = ∞`).
    Md,
    /// User-supplied predicate.
    Custom,
}

/// A structural property claimed by a problem. `Local(i)` claims are exact
/// (the built-ins are `i`-local for exactly one `i`); `Layered(i)` claims
/// record the strongest layer, lower layers follow by monotonicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemTrait {
    /// Axiom α holds.
    Distance,
    /// Axioms β1(i) and β2(i) hold.
    Local(Radius),
    /// Axiom γ(i) holds (hence γ(i′) for all i′ ≤ i).
    Layered(Radius),
}

impl fmt::Display for ProblemTrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemTrait::Distance => write!(f, "distance"),
            ProblemTrait::Local(i) => write!(f, "local:{i}"),
            ProblemTrait::Layered(i) => write!(f, "layered:{i}"),
        }
    }
}

type Predicate = dyn Fn(&DistanceMatrix, Vertex, Vertex, Vertex) -> bool + Send + Sync;

/// An `(f, r)` instance of the meta-problem: the identifying predicate `f`
/// together with the domination radius `r`.
pub struct IdentifyingProblem {
    name: String,
    kind: ProblemKind,
    radius: Radius,
    claimed: Vec<ProblemTrait>,
    predicate: Box<Predicate>,
}

/// Errors constructing or selecting a problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemError {
    /// `r = 0` never dominates anything but the set itself; rejected.
    ZeroRadius,
    /// The family is defined for finite radii only (`ic`, `ld`).
    InfiniteRadius { family: &'static str },
    UnknownSelection(String),
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::ZeroRadius => write!(f, "radius must be at least 1"),
            ProblemError::InfiniteRadius { family } => {
                write!(f, "{family} is defined for finite radii only")
            }
            ProblemError::UnknownSelection(s) => write!(
                f,
                "unknown problem '{s}' (expected ic:<r>, ld:<r>, md:<r>, or md:inf)"
            ),
        }
    }
}

impl core::error::Error for ProblemError {}

fn in_ball(dm: &DistanceMatrix, r: Radius, center: Vertex, w: Vertex) -> bool {
    r.contains(dm.get(center, w))
}

impl IdentifyingProblem {
    /// `r`-identifying codes; finite `r ≥ 1`.
    pub fn r_ic(r: Radius) -> Result<Self, ProblemError> {
        let r = finite_radius(r, "ic")?;
        Ok(IdentifyingProblem {
            name: format!("ic:{r}"),
            kind: ProblemKind::Ic,
            radius: Radius::Finite(r),
            claimed: vec![ProblemTrait::Distance, ProblemTrait::Local(Radius::Finite(r))],
            predicate: Box::new(move |dm, w, u, v| {
                in_ball(dm, Radius::Finite(r), u, w) != in_ball(dm, Radius::Finite(r), v, w)
            }),
        })
    }

    /// `r`-locating-dominating sets; finite `r ≥ 1`.
    pub fn r_ld(r: Radius) -> Result<Self, ProblemError> {
        let r = finite_radius(r, "ld")?;
        // 1-LD is 1-layered; for r ≥ 2 only γ(0) survives (the witness must
        // be one of the pair once both are deeper than one layer in).
        let layer = if r == 1 { 1 } else { 0 };
        Ok(IdentifyingProblem {
            name: format!("ld:{r}"),
            kind: ProblemKind::Ld,
            radius: Radius::Finite(r),
            claimed: vec![
                ProblemTrait::Distance,
                ProblemTrait::Local(Radius::Finite(r)),
                ProblemTrait::Layered(Radius::Finite(layer)),
            ],
            predicate: Box::new(move |dm, w, u, v| {
                w == u
                    || w == v
                    || in_ball(dm, Radius::Finite(r), u, w) != in_ball(dm, Radius::Finite(r), v, w)
            }),
        })
    }

    /// `r`-resolving sets; `r` may be [`Radius::Infinite`] (metric dimension).
    pub fn r_md(r: Radius) -> Result<Self, ProblemError> {
        if r == Radius::Finite(0) {
            return Err(ProblemError::ZeroRadius);
        }
        let name = match r {
            Radius::Infinite => "md:inf".to_string(),
            Radius::Finite(v) => format!("md:{v}"),
        };
        Ok(IdentifyingProblem {
            name,
            kind: ProblemKind::Md,
            radius: r,
            claimed: vec![
                ProblemTrait::Distance,
                ProblemTrait::Local(r),
                ProblemTrait::Layered(r),
            ],
            predicate: Box::new(move |dm, w, u, v| {
                (in_ball(dm, r, u, w) || in_ball(dm, r, v, w)) && dm.get(u, w) != dm.get(v, w)
            }),
        })
    }

    /// A user-supplied identifying function. The predicate is evaluated
    /// through the unordered pair, so it need not be symmetric itself; the
    /// claimed traits should be verified over a corpus before the problem is
    /// used with the reduction machinery.
    pub fn custom(
        name: impl Into<String>,
        radius: Radius,
        claimed: Vec<ProblemTrait>,
        predicate: impl Fn(&DistanceMatrix, Vertex, Vertex, Vertex) -> bool + Send + Sync + 'static,
    ) -> Self {
        IdentifyingProblem {
            name: name.into(),
            kind: ProblemKind::Custom,
            radius,
            claimed,
            predicate: Box::new(predicate),
        }
    }

    /// Parses a problem selection string: `ic:<r>`, `ld:<r>`, `md:<r>`, or
    /// `md:inf`.
    pub fn from_selection(s: &str) -> Result<Self, ProblemError> {
        let unknown = || ProblemError::UnknownSelection(s.to_string());
        let (family, radius) = s.split_once(':').ok_or_else(unknown)?;
        let radius = if radius == "inf" {
            Radius::Infinite
        } else {
            Radius::Finite(radius.parse().map_err(|_| unknown())?)
        };
        match family {
            "ic" => Self::r_ic(radius),
            "ld" => Self::r_ld(radius),
            "md" => Self::r_md(radius),
            _ => Err(unknown()),
        }
    }

    /// Canonical selection string (`ic:2`, `md:inf`, …).
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    /// Domination radius `r` of the `(f, r)` pair.
    pub fn radius(&self) -> Radius {
        self.radius
    }

    pub fn claimed_traits(&self) -> &[ProblemTrait] {
        &self.claimed
    }

    /// Whether `w` separates the pair `(u, v)`. Symmetry in `(u, v)` is
    /// enforced by evaluating through the unordered pair. `u = v` is never
    /// separated.
    pub fn distinguishes(&self, dm: &DistanceMatrix, w: Vertex, u: Vertex, v: Vertex) -> bool {
        if u == v {
            return false;
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        (self.predicate)(dm, w, a, b)
    }

    /// Whether `w` r-dominates `v` (i.e. `d(w, v) ≤ r`, never across
    /// components).
    pub fn dominates(&self, dm: &DistanceMatrix, w: Vertex, v: Vertex) -> bool {
        self.radius.contains(dm.get(w, v))
    }

    /// The exact locality claim, if any.
    pub fn claimed_local(&self) -> Option<Radius> {
        self.claimed.iter().find_map(|t| match t {
            ProblemTrait::Local(i) => Some(*i),
            _ => None,
        })
    }

    /// Whether the claims certify γ(i) (some `Layered(j)` with `j ≥ i`).
    pub fn claims_layered(&self, i: Radius) -> bool {
        self.claimed.iter().any(|t| match t {
            ProblemTrait::Layered(j) => *j >= i,
            _ => false,
        })
    }
}

impl fmt::Debug for IdentifyingProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IdentifyingProblem({}, r = {}, claims {:?})",
            self.name, self.radius, self.claimed
        )
    }
}

fn finite_radius(r: Radius, family: &'static str) -> Result<u32, ProblemError> {
    match r {
        Radius::Finite(0) => Err(ProblemError::ZeroRadius),
        Radius::Finite(r) => Ok(r),
        Radius::Infinite => Err(ProblemError::InfiniteRadius { family }),
    }
}

/// A single checkable axiom instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Alpha,
    Beta1(Radius),
    Beta2(Radius),
    Gamma(Radius),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::Alpha => write!(f, "alpha"),
            Axiom::Beta1(i) => write!(f, "beta1:{i}"),
            Axiom::Beta2(i) => write!(f, "beta2:{i}"),
            Axiom::Gamma(i) => write!(f, "gamma:{i}"),
        }
    }
}

impl Axiom {
    /// Parses `alpha`, `beta1:<i>`, `beta2:<i>`, `gamma:<i>` (with `inf`
    /// accepted as `<i>`).
    pub fn from_token(s: &str) -> Option<Axiom> {
        if s == "alpha" {
            return Some(Axiom::Alpha);
        }
        let (name, layer) = s.split_once(':')?;
        let layer = if layer == "inf" {
            Radius::Infinite
        } else {
            Radius::Finite(layer.parse().ok()?)
        };
        match name {
            "beta1" => Some(Axiom::Beta1(layer)),
            "beta2" => Some(Axiom::Beta2(layer)),
            "gamma" => Some(Axiom::Gamma(layer)),
            _ => None,
        }
    }

    /// The axioms certifying a claimed trait.
    pub fn for_trait(t: ProblemTrait) -> Vec<Axiom> {
        match t {
            ProblemTrait::Distance => vec![Axiom::Alpha],
            ProblemTrait::Local(i) => vec![Axiom::Beta1(i), Axiom::Beta2(i)],
            ProblemTrait::Layered(i) => vec![Axiom::Gamma(i)],
        }
    }

    /// Whether the axiom constrains this triple, and if so the value `f`
    /// must take. `None` means the axiom's guard does not fire.
    fn required_value(self, dm: &DistanceMatrix, w: Vertex, u: Vertex, v: Vertex) -> Option<bool> {
        let du = dm.get(u, w);
        let dv = dm.get(v, w);
        match self {
            Axiom::Alpha => (du == dv).then_some(false),
            Axiom::Beta1(i) => {
                let split = |a: u32, b: u32| i.contains(a) && !i.contains(b);
                (split(du, dv) || split(dv, du)).then_some(true)
            }
            Axiom::Beta2(i) => (!i.contains(du) && !i.contains(dv)).then_some(false),
            Axiom::Gamma(i) => (i.contains(du.min(dv)) && du != dv).then_some(true),
        }
    }
}

/// First counterexample found for a failed axiom check.
#[derive(Clone, Debug)]
pub struct TraitCounterexample {
    /// Index of the graph within the corpus passed to the check.
    pub graph_index: usize,
    pub graph: Graph,
    pub witness: Vertex,
    pub pair: (Vertex, Vertex),
    /// Value the predicate returned (the axiom demands the opposite).
    pub observed: bool,
}

/// Outcome of checking one axiom over a corpus.
#[derive(Clone, Debug)]
pub struct TraitReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub counterexample: Option<TraitCounterexample>,
}

/// Checks one axiom for `problem` over every `(w, {u, v})` triple of every
/// corpus graph, in deterministic order (graphs in corpus order, then `w`,
/// then pairs lexicographically). The first violation is reported.
pub fn check_axiom(problem: &IdentifyingProblem, axiom: Axiom, corpus: &[Graph]) -> TraitReport {
    for (graph_index, g) in corpus.iter().enumerate() {
        let dm = g.distances();
        let n = g.vertex_count();
        for w in 0..n {
            for u in 0..n {
                for v in u + 1..n {
                    let Some(required) = axiom.required_value(&dm, w, u, v) else {
                        continue;
                    };
                    let observed = problem.distinguishes(&dm, w, u, v);
                    if observed != required {
                        return TraitReport {
                            axiom,
                            holds: false,
                            counterexample: Some(TraitCounterexample {
                                graph_index,
                                graph: g.clone(),
                                witness: w,
                                pair: (u, v),
                                observed,
                            }),
                        };
                    }
                }
            }
        }
    }
    TraitReport {
        axiom,
        holds: true,
        counterexample: None,
    }
}

/// Checks every axiom implied by the problem's claimed traits over the
/// corpus; reports come back in claim order.
pub fn verify_claims(problem: &IdentifyingProblem, corpus: &[Graph]) -> Vec<TraitReport> {
    problem
        .claimed_traits()
        .iter()
        .flat_map(|&t| Axiom::for_trait(t))
        .map(|axiom| check_axiom(problem, axiom, corpus))
        .collect()
}

/// First failing report, if any claim does not survive the corpus.
pub fn first_violation(problem: &IdentifyingProblem, corpus: &[Graph]) -> Option<TraitReport> {
    verify_claims(problem, corpus)
        .into_iter()
        .find(|r| !r.holds)
}
