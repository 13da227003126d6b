//! `dis` — batch front end: exact solves, DIS verification, the three
//! hitting-set reductions with lift/extract, gadget axiom checks, trait
//! checks, theorem round-trips, and DIMACS conversion.
//!
//! Every command prints a line-oriented `key value` report on stdout and
//! diagnostics on stderr. Identical invocations produce byte-identical
//! reports. Exit codes: 0 success/feasible, 1 usage or parse errors,
//! 2 infeasible/invalid/failed checks, 3 solver budget exhausted.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{fs, io::Write as _};

use clap::{Args, Parser, Subcommand, ValueEnum};

use dis_core::corpus::{enumerate_small_graphs, standard_corpus};
use dis_core::gadgets::{check_gadget, from_name, CheckOptions, Gadget};
use dis_core::problems::{verify_claims, IdentifyingProblem};
use dis_core::reductions::{
    build_apex_graph, build_compressed_graph, build_distance_id_graph, sat_to_hitting_set,
    ArtifactKind, ReductionArtifact,
};
use dis_core::solver::{
    check_dis, is_dis, min_dis, min_hitting_set, HittingSetInstance, SolveOptions, SolveResult,
    DEFAULT_NODE_BUDGET,
};
use dis_tools::formats::{
    instance_digest, read_cnf, read_graph, read_hs_instance, read_manifest, write_dot,
    write_graph, write_hs_instance, write_manifest, Manifest,
};

#[derive(Parser)]
#[command(name = "dis", version, about = "Distance identifying set toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve min-DIS exactly on a graph file.
    Solve(SolveArgs),
    /// Check whether a vertex set is a valid DIS.
    Verify(VerifyArgs),
    /// Build a reduction artifact from a hitting-set instance.
    Reduce(ReduceArgs),
    /// Lift a hitting set into a DIS of a reduction artifact.
    Lift(LiftArgs),
    /// Extract a hitting set from a DIS of a reduction artifact.
    Extract(ExtractArgs),
    /// Check the gadget axioms over an extension family.
    GadgetCheck(GadgetCheckArgs),
    /// Check a problem's claimed traits over a graph corpus.
    TraitCheck(TraitCheckArgs),
    /// Certify the reduction size arithmetic end to end.
    Roundtrip(RoundtripArgs),
    /// Convert a DIMACS CNF file to a hitting-set instance.
    Sat2hs(Sat2hsArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Problem selection: `ic:<r>`, `ld:<r>`, `md:<r>`, or `md:inf`.
    #[arg(long)]
    problem: String,
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Search-node budget for the exact solver.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    graph: PathBuf,
    /// Candidate vertices, comma- or space-separated, 0-based.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct ReduceArgs {
    /// Construction: per-membership paths, apex, or bit-compressed.
    #[arg(long, value_enum)]
    kind: Kind,
    /// Gadget selection: `1layered`, `local0:<r>`, or `ic:<r>`.
    #[arg(long)]
    gadget: String,
    /// Domination radius; required for `distance` and `compressed`.
    #[arg(long)]
    r: Option<u32>,
    /// Hitting-set instance file.
    #[arg(long)]
    hs: PathBuf,
    /// Write the artifact graph here.
    #[arg(long)]
    out_graph: Option<PathBuf>,
    /// Write the artifact manifest here.
    #[arg(long)]
    out_manifest: Option<PathBuf>,
    /// Write a DOT dump of the artifact here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    /// Manifest written by `reduce`.
    #[arg(long)]
    manifest: PathBuf,
    /// The instance the manifest was built from.
    #[arg(long)]
    hs: PathBuf,
    /// Hitting set, 1-based elements.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long)]
    hs: PathBuf,
    #[arg(long)]
    problem: String,
    /// DIS vertices of the artifact, 0-based.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct GadgetCheckArgs {
    #[arg(long)]
    gadget: String,
    #[arg(long)]
    problem: String,
    /// Seed for the random extensions.
    #[arg(long, default_value_t = 2026)]
    seed: u64,
    /// Number of random extensions in the family.
    #[arg(long, default_value_t = 10)]
    randoms: usize,
    /// Largest number of fresh vertices per random extension.
    #[arg(long, default_value_t = 4)]
    max_extra: usize,
    /// Largest extension checked exactly for p_s.
    #[arg(long, default_value_t = 18)]
    exact_limit: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct TraitCheckArgs {
    #[arg(long)]
    problem: String,
    /// Corpus bound: exhaustive up to 5 vertices, named families beyond.
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Extra seeded random graphs appended to the corpus.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 2026)]
    seed: u64,
}

#[derive(Args)]
struct RoundtripArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    gadget: String,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    problem: String,
    #[arg(long)]
    hs: PathBuf,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct Sat2hsArgs {
    /// DIMACS CNF input.
    #[arg(long)]
    cnf: PathBuf,
    /// Hitting-set instance output.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Distance,
    Apex,
    Compressed,
}

/// A failed run: exit code plus the diagnostic for stderr. Budget
/// exhaustion is not a failure — aborted solves report their bounds on
/// stdout and exit 3.
enum Failure {
    /// Bad flags or unparseable input files (exit 1).
    Usage(String),
    /// Semantically invalid data or a failed check (exit 2).
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Check(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) => m,
        }
    }
}

type Report = Vec<(String, String)>;

fn kv(report: &mut Report, key: &str, value: impl Display) {
    report.push((key.to_string(), value.to_string()));
}

fn join(xs: &[usize]) -> String {
    let words: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    words.join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((report, code)) => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for (key, value) in &report {
                let _ = writeln!(out, "{key} {value}");
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("dis: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Result<(Report, u8), Failure> {
    match command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Lift(a) => cmd_lift(a),
        Command::Extract(a) => cmd_extract(a),
        Command::GadgetCheck(a) => cmd_gadget_check(a),
        Command::TraitCheck(a) => cmd_trait_check(a),
        Command::Roundtrip(a) => cmd_roundtrip(a),
        Command::Sat2hs(a) => cmd_sat2hs(a),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, dis_tools::formats::FormatError>) -> Result<T, Failure> {
    parse(&read_file(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_problem(selection: &str) -> Result<IdentifyingProblem, Failure> {
    IdentifyingProblem::from_selection(selection).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_gadget(name: &str) -> Result<Gadget, Failure> {
    from_name(name).map_err(|e| Failure::Usage(e.to_string()))
}

/// Comma- or whitespace-separated indices.
fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::Usage(format!("bad index `{t}` in set")))
        })
        .collect()
}

fn resolve_kind(kind: Kind, r: Option<u32>) -> Result<ArtifactKind, Failure> {
    let need = |r: Option<u32>, what: &str| {
        let r = r.ok_or_else(|| Failure::Usage(format!("--r is required for kind {what}")))?;
        if r == 0 {
            return Err(Failure::Usage("radius must be positive".into()));
        }
        Ok(r)
    };
    match kind {
        Kind::Apex => match r {
            None | Some(1) => Ok(ArtifactKind::Apex),
            Some(_) => Err(Failure::Usage(
                "the apex construction is fixed at radius 1".into(),
            )),
        },
        Kind::Distance => Ok(ArtifactKind::DistanceId {
            r: need(r, "distance")?,
        }),
        Kind::Compressed => Ok(ArtifactKind::Compressed {
            r: need(r, "compressed")?,
        }),
    }
}

fn build_artifact(
    kind: ArtifactKind,
    gadget: &Gadget,
    inst: &HittingSetInstance,
) -> Result<ReductionArtifact, Failure> {
    match kind {
        ArtifactKind::Apex => Ok(build_apex_graph(gadget, inst)),
        ArtifactKind::DistanceId { r } => {
            build_distance_id_graph(gadget, r, inst).map_err(|e| Failure::Usage(e.to_string()))
        }
        ArtifactKind::Compressed { r } => {
            build_compressed_graph(gadget, r, inst).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

/// Rebuilds the artifact a manifest describes, re-verifying the digest.
fn rebuild(man: &Manifest, inst: &HittingSetInstance) -> Result<ReductionArtifact, Failure> {
    if instance_digest(inst) != man.instance_digest {
        return Err(Failure::Check(
            "instance file does not match the manifest digest".into(),
        ));
    }
    let gadget = parse_gadget(&man.gadget)?;
    let art = build_artifact(man.kind, &gadget, inst)?;
    if art.copies() != man.copies
        || art.offset() != man.offset
        || art.gadget().code().len() != man.code_size
    {
        return Err(Failure::Check(
            "manifest does not describe this construction".into(),
        ));
    }
    Ok(art)
}

fn artifact_header(report: &mut Report, art: &ReductionArtifact, inst: &HittingSetInstance) {
    kv(report, "kind", art.kind().token());
    kv(report, "r", art.kind().r());
    kv(report, "gadget", art.gadget().name());
    kv(report, "n", inst.universe_size());
    kv(report, "m", inst.set_count());
    kv(report, "vertices", art.graph().vertex_count());
    kv(report, "edges", art.graph().edge_count());
    kv(report, "copies", art.copies());
    kv(report, "offset", art.offset());
    kv(report, "size_bound", art.size_bound());
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_solve(a: SolveArgs) -> Result<(Report, u8), Failure> {
    let problem = parse_problem(&a.problem)?;
    let graph = in_file(&a.graph, read_graph)?;
    let opts = SolveOptions {
        node_budget: a.budget,
    };
    let mut report = Report::new();
    kv(&mut report, "problem", problem.name());
    let code = match min_dis(&graph, &problem, &opts) {
        SolveResult::Optimal { size, witness } => {
            kv(&mut report, "status", "optimal");
            kv(&mut report, "k", size);
            if !witness.is_empty() {
                kv(&mut report, "witness", join(&witness));
            }
            0
        }
        SolveResult::Infeasible { tag } => {
            kv(&mut report, "status", "infeasible");
            kv(&mut report, "reason", tag);
            2
        }
        SolveResult::Aborted {
            lower_bound,
            upper_bound,
            best,
        } => {
            kv(&mut report, "status", "aborted");
            kv(&mut report, "lower_bound", lower_bound);
            kv(&mut report, "upper_bound", upper_bound);
            if let Some(best) = best {
                kv(&mut report, "best", join(&best));
            }
            3
        }
    };
    Ok((report, code))
}

fn cmd_verify(a: VerifyArgs) -> Result<(Report, u8), Failure> {
    let problem = parse_problem(&a.problem)?;
    let graph = in_file(&a.graph, read_graph)?;
    let set = parse_list(&a.set)?;
    if let Some(&v) = set.iter().find(|&&v| v >= graph.vertex_count()) {
        return Err(Failure::Check(format!(
            "vertex {v} out of range for n = {}",
            graph.vertex_count()
        )));
    }
    let mut report = Report::new();
    kv(&mut report, "problem", problem.name());
    kv(&mut report, "size", set.len());
    match check_dis(&graph, &problem, &set) {
        Ok(()) => {
            kv(&mut report, "valid", "true");
            Ok((report, 0))
        }
        Err(violation) => {
            kv(&mut report, "valid", "false");
            kv(&mut report, "violation", violation);
            Ok((report, 2))
        }
    }
}

fn cmd_reduce(a: ReduceArgs) -> Result<(Report, u8), Failure> {
    let kind = resolve_kind(a.kind, a.r)?;
    let gadget = parse_gadget(&a.gadget)?;
    let inst = in_file(&a.hs, read_hs_instance)?;
    let art = build_artifact(kind, &gadget, &inst)?;
    let man = Manifest::for_artifact(&art, &inst);
    if let Some(path) = &a.out_graph {
        write_file(path, &write_graph(art.graph()))?;
    }
    if let Some(path) = &a.out_manifest {
        write_file(path, &write_manifest(&man))?;
    }
    if let Some(path) = &a.dot {
        write_file(path, &write_dot(art.graph()))?;
    }
    let mut report = Report::new();
    artifact_header(&mut report, &art, &inst);
    kv(&mut report, "equivalence_untested", art.equivalence_untested());
    Ok((report, 0))
}

fn cmd_lift(a: LiftArgs) -> Result<(Report, u8), Failure> {
    let man = in_file(&a.manifest, read_manifest)?;
    let inst = in_file(&a.hs, read_hs_instance)?;
    let art = rebuild(&man, &inst)?;
    let hs = parse_list(&a.set)?;
    let dis = art
        .lift(&hs)
        .map_err(|e| Failure::Check(e.to_string()))?;
    let mut report = Report::new();
    kv(&mut report, "kind", art.kind().token());
    kv(&mut report, "offset", art.offset());
    kv(&mut report, "dis_size", dis.len());
    kv(&mut report, "dis", join(&dis));
    Ok((report, 0))
}

fn cmd_extract(a: ExtractArgs) -> Result<(Report, u8), Failure> {
    let man = in_file(&a.manifest, read_manifest)?;
    let inst = in_file(&a.hs, read_hs_instance)?;
    let problem = parse_problem(&a.problem)?;
    let art = rebuild(&man, &inst)?;
    let dis = parse_list(&a.set)?;
    let hs = art
        .extract(&problem, &dis)
        .map_err(|e| Failure::Check(e.to_string()))?;
    let mut report = Report::new();
    kv(&mut report, "kind", art.kind().token());
    kv(&mut report, "offset", art.offset());
    kv(&mut report, "hs_size", hs.len());
    kv(&mut report, "hitting_set", join(&hs));
    Ok((report, 0))
}

fn cmd_gadget_check(a: GadgetCheckArgs) -> Result<(Report, u8), Failure> {
    let gadget = parse_gadget(&a.gadget)?;
    let problem = parse_problem(&a.problem)?;
    let family = gadget.standard_family(a.seed, a.randoms, a.max_extra);
    let opts = CheckOptions {
        exact_limit: a.exact_limit,
        solve: SolveOptions {
            node_budget: a.budget,
        },
    };
    let axioms = check_gadget(&gadget, &problem, &family, &opts);
    let mut report = Report::new();
    kv(&mut report, "gadget", gadget.name());
    kv(&mut report, "problem", problem.name());
    kv(&mut report, "members", family.len());
    kv(&mut report, "p_h", axioms.p_h.token());
    kv(&mut report, "p_b", axioms.p_b.token());
    kv(&mut report, "p_d", axioms.p_d.token());
    kv(&mut report, "p_s", axioms.p_s.token());
    if let Some(p_l) = &axioms.p_l {
        kv(&mut report, "p_l", p_l.token());
    }
    let ok = axioms.gadget_ok();
    kv(&mut report, "gadget_ok", ok);
    Ok((report, if ok { 0 } else { 2 }))
}

fn cmd_trait_check(a: TraitCheckArgs) -> Result<(Report, u8), Failure> {
    let problem = parse_problem(&a.problem)?;
    let mut corpus = standard_corpus(a.max_n);
    if a.random > 0 {
        corpus.extend(enumerate_small_graphs(a.max_n, a.seed, a.random));
    }
    let mut report = Report::new();
    kv(&mut report, "problem", problem.name());
    kv(&mut report, "graphs", corpus.len());
    let mut ok = true;
    for check in verify_claims(&problem, &corpus) {
        kv(
            &mut report,
            &check.axiom.to_string(),
            if check.holds { "pass" } else { "fail" },
        );
        if let Some(ce) = &check.counterexample {
            ok = false;
            kv(
                &mut report,
                "counterexample",
                format!(
                    "graph {} w {} pair {} {}",
                    ce.graph_index, ce.witness, ce.pair.0, ce.pair.1
                ),
            );
        }
    }
    kv(&mut report, "claims_ok", ok);
    Ok((report, if ok { 0 } else { 2 }))
}

fn cmd_roundtrip(a: RoundtripArgs) -> Result<(Report, u8), Failure> {
    let kind = resolve_kind(a.kind, a.r)?;
    let gadget = parse_gadget(&a.gadget)?;
    let problem = parse_problem(&a.problem)?;
    let inst = in_file(&a.hs, read_hs_instance)?;
    let art = build_artifact(kind, &gadget, &inst)?;
    let opts = SolveOptions {
        node_budget: a.budget,
    };

    let mut report = Report::new();
    artifact_header(&mut report, &art, &inst);
    kv(&mut report, "problem", problem.name());
    kv(&mut report, "equivalence_untested", art.equivalence_untested());
    if !art.problem_matches(&problem) {
        kv(&mut report, "problem_ok", "false");
        return Ok((report, 2));
    }
    kv(&mut report, "problem_ok", "true");

    let (k, witness) = match min_hitting_set(&inst, &opts) {
        SolveResult::Optimal { size, witness } => (size, witness),
        SolveResult::Aborted { .. } => {
            kv(&mut report, "status", "aborted");
            return Ok((report, 3));
        }
        SolveResult::Infeasible { tag } => {
            return Err(Failure::Check(format!("instance infeasible: {tag}")))
        }
    };
    kv(&mut report, "hs_opt", k);
    kv(&mut report, "hs_witness", join(&witness));

    let lifted = art.lift(&witness).map_err(|e| Failure::Check(e.to_string()))?;
    kv(&mut report, "lift_size", lifted.len());
    let lift_valid = is_dis(art.graph(), &problem, &lifted);
    kv(&mut report, "lift_valid", lift_valid);
    if !lift_valid {
        return Ok((report, 2));
    }

    let extracted = art
        .extract(&problem, &lifted)
        .map_err(|e| Failure::Check(e.to_string()))?;
    kv(&mut report, "extract_size", extracted.len());

    let ok = lifted.len() == k + art.offset() && extracted.len() == k;
    kv(&mut report, "theorem_ok", ok);
    Ok((report, if ok { 0 } else { 2 }))
}

fn cmd_sat2hs(a: Sat2hsArgs) -> Result<(Report, u8), Failure> {
    let cnf = in_file(&a.cnf, read_cnf)?;
    let inst = sat_to_hitting_set(&cnf).map_err(|e| Failure::Check(e.to_string()))?;
    write_file(&a.out, &write_hs_instance(&inst))?;
    let mut report = Report::new();
    kv(&mut report, "vars", cnf.num_vars());
    kv(&mut report, "clauses", cnf.clauses().len());
    kv(&mut report, "elements", inst.universe_size());
    kv(&mut report, "sets", inst.set_count());
    kv(&mut report, "digest", instance_digest(&inst));
    Ok((report, 0))
}
