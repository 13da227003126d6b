//! Std companion to [`dis_core`]: line-oriented text formats for graphs,
//! hitting-set instances, reduction manifests, and DIMACS CNF, plus the
//! `dis` command-line binary built on top of them.

pub mod formats;
