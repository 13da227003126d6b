//! Distance identifying sets over finite undirected graphs.
//!
//! A *distance identifying function* `f_G[w](u, v)` tells whether a witness
//! vertex `w` separates the pair `(u, v)` — e.g. "w is in exactly one of the
//! two closed r-balls" (identifying codes) or "w sees different distances to
//! u and v" (resolving sets). An `(f, r)`-*distance identifying set* (DIS) is
//! an r-dominating set whose members separate every vertex pair. Identifying
//! codes, locating-dominating sets, and metric dimension are all instances of
//! this one meta-problem for different choices of `f` and `r`.
//!
//! This crate provides:
//!
//! * [`graph`] — simple graphs with dense vertex ids, BFS all-pairs distances,
//!   balls, bipartiteness, twins, and role labels for reduction artifacts;
//! * [`problems`] — the `r`-IC / `r`-LD / `r`-MD identifying functions plus
//!   pluggable user predicates, and automated checking of the structural
//!   axioms (α distance, β locality, γ layering) over graph corpora;
//! * [`solver`] — an exact branch-and-bound solver for minimum DIS and
//!   minimum hitting set, with canonical witnesses and full optimum
//!   enumeration;
//! * [`gadgets`] — the three gadget families used by the hardness reductions
//!   (generic 1-layered, local 0-layered, and `r`-identifying-code gadgets)
//!   together with empirical checking of the gadget axioms over B-extension
//!   families;
//! * [`reductions`] — the three Hitting-Set-to-DIS constructions (distance
//!   identifying graph, apex graph, compressed graph), with solution lifting
//!   and extraction that make the `min-DIS = k* + offset` equivalence
//!   theorems executable, plus the SAT-to-Hitting-Set step;
//! * [`corpus`] — deterministic graph and instance generators for checks.
//!
//! ```
//! use dis_core::graph::Graph;
//! use dis_core::problems::IdentifyingProblem;
//! use dis_core::solver::{min_dis, SolveOptions, SolveResult};
//!
//! // The metric dimension of a path is 1: one endpoint resolves everything.
//! let p5 = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
//! let md = IdentifyingProblem::from_selection("md:inf").unwrap();
//! match min_dis(&p5, &md, &SolveOptions::default()) {
//!     SolveResult::Optimal { size, witness } => {
//!         assert_eq!(size, 1);
//!         assert_eq!(witness, vec![0]);
//!     }
//!     other => panic!("unexpected: {other:?}"),
//! }
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bitset;
pub mod corpus;
pub mod gadgets;
pub mod graph;
pub mod problems;
pub mod reductions;
pub mod solver;
