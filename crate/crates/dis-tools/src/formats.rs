//! Line-oriented text formats.
//!
//! All four grammars share the same conventions: UTF-8, LF line endings,
//! `#` starts a comment (whole line only), blank lines are ignored, and
//! fields on a line are separated by ASCII whitespace. Writers are
//! canonical — sorted edges, sorted set elements, fixed key order — so
//! `write ∘ read` is the identity on written files and byte-identical
//! across runs and platforms.
//!
//! Graph files use 0-based vertex ids (matching the solver internals);
//! hitting-set files use 1-based elements (matching the usual `u_i`
//! notation). The reduction builders own that boundary.
//!
//! ```text
//! # graph                      # hitting set          # manifest
//! g 5 4                        hs 4 2                 kind compressed
//! 0 1                          1 2                    r 2
//! 1 2                          2 3 4                  gadget local0:2
//! 2 3                                                 code_size 5
//! 3 4                                                 copies 5
//! label 0 elem:1                                      offset 25
//!                                                     instance_digest <hex>
//! ```
//!
//! CNF input is standard DIMACS (`c` comments, `p cnf <vars> <clauses>`,
//! whitespace-separated literals with `0` closing each clause).

use std::fmt::Write as _;

use dis_core::graph::{CopyTag, Graph, Role};
use dis_core::reductions::{ArtifactKind, CnfFormula, ReductionArtifact};
use dis_core::solver::{HittingSetInstance, InstanceError};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Parse errors; every variant names the offending 1-based line.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: index {index} out of range (limit {limit})")]
    OutOfRange {
        line: usize,
        index: usize,
        limit: usize,
    },
}

fn malformed(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based numbers; comments and blanks dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field<T: core::str::FromStr>(
    token: &str,
    line: usize,
    what: &str,
) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| malformed(line, format!("expected {what}, got `{token}`")))
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

fn copy_tag_token(tag: CopyTag) -> String {
    tag.to_string()
}

fn parse_copy_tag(token: &str, line: usize) -> Result<CopyTag, FormatError> {
    let index = token.get(1..).unwrap_or("");
    let k = parse_field(index, line, "copy index")?;
    match &token[..1] {
        "e" => Ok(CopyTag::Element(k)),
        "s" => Ok(CopyTag::Set(k)),
        _ => Err(malformed(line, format!("unknown copy tag `{token}`"))),
    }
}

/// Token encoding of a [`Role`]; `Plain` has none (it is the default).
fn role_token(role: &Role) -> Option<String> {
    match role {
        Role::Plain => None,
        Role::Gadget { copy, name } => Some(format!("gadget:{}:{name}", copy_tag_token(*copy))),
        Role::Element(i) => Some(format!("elem:{i}")),
        Role::Set(j) => Some(format!("set:{j}")),
        Role::SetTwin(j) => Some(format!("settwin:{j}")),
        Role::Path {
            element,
            set: Some(j),
            step,
        } => Some(format!("path:{element}:{j}:{step}")),
        Role::Path {
            element,
            set: None,
            step,
        } => Some(format!("epath:{element}:{step}")),
        Role::Apex => Some("apex".into()),
        Role::ApexPath(step) => Some(format!("apexpath:{step}")),
    }
}

fn parse_role(token: &str, line: usize) -> Result<Role, FormatError> {
    let mut parts = token.splitn(3, ':');
    let head = parts.next().unwrap_or("");
    let rest: Vec<&str> = parts.collect();
    let arity = |want: usize| -> Result<(), FormatError> {
        if rest.len() == want {
            Ok(())
        } else {
            Err(malformed(line, format!("malformed role `{token}`")))
        }
    };
    match head {
        "plain" => arity(0).map(|()| Role::Plain),
        "apex" => arity(0).map(|()| Role::Apex),
        "apexpath" => {
            arity(1)?;
            Ok(Role::ApexPath(parse_field(rest[0], line, "path step")?))
        }
        "elem" => {
            arity(1)?;
            Ok(Role::Element(parse_field(rest[0], line, "element index")?))
        }
        "set" => {
            arity(1)?;
            Ok(Role::Set(parse_field(rest[0], line, "set index")?))
        }
        "settwin" => {
            arity(1)?;
            Ok(Role::SetTwin(parse_field(rest[0], line, "set index")?))
        }
        "gadget" => {
            arity(2)?;
            Ok(Role::Gadget {
                copy: parse_copy_tag(rest[0], line)?,
                name: rest[1].to_string(),
            })
        }
        "epath" => {
            arity(2)?;
            Ok(Role::Path {
                element: parse_field(rest[0], line, "element index")?,
                set: None,
                step: parse_field(rest[1], line, "path step")?,
            })
        }
        "path" => {
            arity(2)?;
            let mut tail = rest[1].splitn(2, ':');
            let set = tail.next().unwrap_or("");
            let step = tail
                .next()
                .ok_or_else(|| malformed(line, format!("malformed role `{token}`")))?;
            Ok(Role::Path {
                element: parse_field(rest[0], line, "element index")?,
                set: Some(parse_field(set, line, "set index")?),
                step: parse_field(step, line, "path step")?,
            })
        }
        _ => Err(malformed(line, format!("unknown role `{token}`"))),
    }
}

/// Parses a graph file: a `g <n> <m>` header, `m` edge lines, and any
/// number of `label <v> <role>` lines.
pub fn read_graph(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "missing `g <n> <m>` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "g" {
        return Err(malformed(header_line, "expected `g <n> <m>` header"));
    }
    let n: usize = parse_field(fields[1], header_line, "vertex count")?;
    let m: usize = parse_field(fields[2], header_line, "edge count")?;

    let check = |v: usize, line: usize| -> Result<usize, FormatError> {
        if v < n {
            Ok(v)
        } else {
            Err(FormatError::OutOfRange {
                line,
                index: v,
                limit: n,
            })
        }
    };

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    let mut labels = vec![Role::Plain; n];
    let mut labelled = vec![false; n];
    let mut last_line = header_line;
    for (line, l) in lines {
        last_line = line;
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields[0] == "label" {
            if fields.len() != 3 {
                return Err(malformed(line, "expected `label <v> <role>`"));
            }
            let v = check(parse_field(fields[1], line, "vertex id")?, line)?;
            if labelled[v] {
                return Err(malformed(line, format!("vertex {v} labelled twice")));
            }
            labelled[v] = true;
            labels[v] = parse_role(fields[2], line)?;
            continue;
        }
        if fields.len() != 2 {
            return Err(malformed(line, "expected `<u> <v>` edge line"));
        }
        let u = check(parse_field(fields[0], line, "vertex id")?, line)?;
        let v = check(parse_field(fields[1], line, "vertex id")?, line)?;
        if u == v {
            return Err(malformed(line, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(malformed(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(malformed(
            last_line,
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    Graph::with_labels(n, edges, labels)
        .map_err(|e| malformed(header_line, e.to_string()))
}

/// Canonical graph text: header, sorted edges, then one `label` line per
/// non-plain vertex in ascending order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "g {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for v in 0..g.vertex_count() {
        if let Some(token) = role_token(g.label(v)) {
            writeln!(out, "label {v} {token}").unwrap();
        }
    }
    out
}

/// DOT dump of a graph: structure plus role labels, no layout hints.
pub fn write_dot(g: &Graph) -> String {
    let mut out = String::from("graph dis {\n");
    for v in 0..g.vertex_count() {
        match role_token(g.label(v)) {
            Some(token) => writeln!(out, "  {v} [label=\"{v} {token}\"];").unwrap(),
            None => writeln!(out, "  {v};").unwrap(),
        }
    }
    for &(u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Hitting-set instances
// ---------------------------------------------------------------------------

/// Parses a hitting-set file: an `hs <n> <m>` header followed by `m`
/// lines of 1-based set elements.
pub fn read_hs_instance(text: &str) -> Result<HittingSetInstance, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| malformed(1, "missing `hs <n> <m>` header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "hs" {
        return Err(malformed(header_line, "expected `hs <n> <m>` header"));
    }
    let n: usize = parse_field(fields[1], header_line, "universe size")?;
    let m: usize = parse_field(fields[2], header_line, "set count")?;

    let mut sets = Vec::with_capacity(m);
    let mut set_lines = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, l) in lines {
        last_line = line;
        if sets.len() == m {
            return Err(malformed(line, format!("more than {m} set lines")));
        }
        let mut set = Vec::new();
        for token in l.split_whitespace() {
            set.push(parse_field::<usize>(token, line, "element")?);
        }
        sets.push(set);
        set_lines.push(line);
    }
    if sets.len() != m {
        return Err(malformed(
            last_line,
            format!("header promises {m} sets, found {}", sets.len()),
        ));
    }
    HittingSetInstance::new(n, sets).map_err(|e| match e {
        InstanceError::ElementOutOfRange { set, element } => FormatError::OutOfRange {
            line: set_lines[set - 1],
            index: element,
            limit: n,
        },
        InstanceError::EmptySet { set } => malformed(set_lines[set - 1], e.to_string()),
        _ => malformed(header_line, e.to_string()),
    })
}

/// Canonical hitting-set text; sets keep instance order, elements are
/// sorted (the instance constructor normalizes them).
pub fn write_hs_instance(inst: &HittingSetInstance) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "hs {} {}",
        inst.universe_size(),
        inst.set_count()
    )
    .unwrap();
    for set in inst.sets() {
        let words: Vec<String> = set.iter().map(|e| e.to_string()).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

/// Hex SHA-256 of the canonical instance text; the manifest digest.
pub fn instance_digest(inst: &HittingSetInstance) -> String {
    let hash = Sha256::digest(write_hs_instance(inst).as_bytes());
    let mut out = String::with_capacity(64);
    for byte in hash {
        write!(out, "{byte:02x}").unwrap();
    }
    out
}

// ---------------------------------------------------------------------------
// DIMACS CNF
// ---------------------------------------------------------------------------

/// Parses DIMACS CNF. Clauses may span lines; each ends at a `0`.
pub fn read_cnf(text: &str) -> Result<CnfFormula, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_line = 1;
    for (line, l) in text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
    {
        last_line = line;
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields[0] == "p" {
            if header.is_some() {
                return Err(malformed(line, "repeated `p` line"));
            }
            if fields.len() != 4 || fields[1] != "cnf" {
                return Err(malformed(line, "expected `p cnf <vars> <clauses>`"));
            }
            header = Some((
                parse_field(fields[2], line, "variable count")?,
                parse_field(fields[3], line, "clause count")?,
            ));
            continue;
        }
        let (num_vars, _) = header.ok_or_else(|| {
            malformed(line, "literals before the `p cnf` header")
        })?;
        for token in l.split_whitespace() {
            let lit: i64 = parse_field(token, line, "literal")?;
            if lit == 0 {
                clauses.push(core::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(FormatError::OutOfRange {
                    line,
                    index: lit.unsigned_abs() as usize,
                    limit: num_vars,
                });
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, num_clauses) =
        header.ok_or_else(|| malformed(last_line, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(malformed(last_line, "last clause not closed by 0"));
    }
    if clauses.len() != num_clauses {
        return Err(malformed(
            last_line,
            format!(
                "header promises {num_clauses} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    CnfFormula::new(num_vars, clauses).map_err(|e| malformed(last_line, e.to_string()))
}

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

/// Sidecar record describing a reduction artifact, written next to its
/// graph so lift/extract can rebuild the construction deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub kind: ArtifactKind,
    pub gadget: String,
    pub code_size: usize,
    pub copies: usize,
    pub offset: usize,
    /// Hex SHA-256 of the canonical text of the source instance.
    pub instance_digest: String,
}

impl Manifest {
    pub fn for_artifact(art: &ReductionArtifact, inst: &HittingSetInstance) -> Self {
        Manifest {
            kind: art.kind(),
            gadget: art.gadget().name().to_string(),
            code_size: art.gadget().code().len(),
            copies: art.copies(),
            offset: art.offset(),
            instance_digest: instance_digest(inst),
        }
    }
}

/// Canonical manifest text: fixed `key value` lines.
pub fn write_manifest(man: &Manifest) -> String {
    let mut out = String::new();
    writeln!(out, "kind {}", man.kind.token()).unwrap();
    writeln!(out, "r {}", man.kind.r()).unwrap();
    writeln!(out, "gadget {}", man.gadget).unwrap();
    writeln!(out, "code_size {}", man.code_size).unwrap();
    writeln!(out, "copies {}", man.copies).unwrap();
    writeln!(out, "offset {}", man.offset).unwrap();
    writeln!(out, "instance_digest {}", man.instance_digest).unwrap();
    out
}

/// Parses a manifest; keys may come in any order but each must appear
/// exactly once.
pub fn read_manifest(text: &str) -> Result<Manifest, FormatError> {
    let mut fields = std::collections::BTreeMap::new();
    let mut last_line = 1;
    for (line, l) in content_lines(text) {
        last_line = line;
        let (key, value) = l
            .split_once(char::is_whitespace)
            .ok_or_else(|| malformed(line, "expected `key value`"))?;
        if fields.insert(key.to_string(), (line, value.trim().to_string())).is_some() {
            return Err(malformed(line, format!("repeated key `{key}`")));
        }
    }
    let mut take = |key: &str| -> Result<(usize, String), FormatError> {
        fields
            .remove(key)
            .ok_or_else(|| malformed(last_line, format!("missing key `{key}`")))
    };
    let (kind_line, kind_token) = take("kind")?;
    let (r_line, r_token) = take("r")?;
    let r: u32 = parse_field(&r_token, r_line, "radius")?;
    let kind = match kind_token.as_str() {
        "distance" => ArtifactKind::DistanceId { r },
        "compressed" => ArtifactKind::Compressed { r },
        "apex" if r == 1 => ArtifactKind::Apex,
        "apex" => return Err(malformed(r_line, "the apex construction has r 1")),
        other => return Err(malformed(kind_line, format!("unknown kind `{other}`"))),
    };
    if r == 0 {
        return Err(malformed(r_line, "radius must be positive"));
    }
    let gadget = take("gadget")?.1;
    let (l, v) = take("code_size")?;
    let code_size = parse_field(&v, l, "code size")?;
    let (l, v) = take("copies")?;
    let copies = parse_field(&v, l, "copy count")?;
    let (l, v) = take("offset")?;
    let offset = parse_field(&v, l, "offset")?;
    let instance_digest = take("instance_digest")?.1;
    if let Some(key) = fields.keys().next() {
        let line = fields[key].0;
        return Err(malformed(line, format!("unknown key `{key}`")));
    }
    Ok(Manifest {
        kind,
        gadget,
        code_size,
        copies,
        offset,
        instance_digest,
    })
}
