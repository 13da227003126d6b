//! End-to-end checks of the `dis` binary: the documented report lines,
//! exit-code classes, file outputs, and report determinism.

use std::path::Path;
use std::process::{Command, Output};

use dis_tools::formats::{read_graph, read_hs_instance, read_manifest};

fn dis(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dis"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value of `key` in a `key value` report.
fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} ")))
        .unwrap_or_else(|| panic!("no `{key}` in report:\n{report}"))
        .to_string()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const P5: &str = "g 5 4\n0 1\n1 2\n2 3\n3 4\n";
const FIG2: &str = "hs 4 2\n1 2\n2 3 4\n";

#[test]
fn solve_reports_the_path_metric_dimension() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p5.g", P5);
    let out = dis(dir.path(), &["solve", "--problem", "md:inf", "--graph", "p5.g"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "status"), "optimal");
    assert_eq!(field(&report, "k"), "1");
}

#[test]
fn reduce_reports_the_compressed_offsets_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "fig2.hs", FIG2);
    let out = dis(
        dir.path(),
        &[
            "reduce",
            "--kind",
            "compressed",
            "--gadget",
            "local0:2",
            "--r",
            "2",
            "--hs",
            "fig2.hs",
            "--out-graph",
            "fig2.g",
            "--out-manifest",
            "fig2.man",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "offset"), "25");
    assert_eq!(field(&report, "copies"), "5");
    assert_eq!(field(&report, "vertices"), "64");

    let graph = read_graph(&std::fs::read_to_string(dir.path().join("fig2.g")).unwrap()).unwrap();
    assert_eq!(graph.vertex_count(), 64);
    let man =
        read_manifest(&std::fs::read_to_string(dir.path().join("fig2.man")).unwrap()).unwrap();
    assert_eq!(man.offset, 25);
    assert_eq!(man.copies, 5);
    let inst = read_hs_instance(FIG2).unwrap();
    assert_eq!(man.instance_digest, dis_tools::formats::instance_digest(&inst));
}

#[test]
fn roundtrip_certifies_the_running_example() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "fig2.hs", FIG2);
    let out = dis(
        dir.path(),
        &[
            "roundtrip",
            "--kind",
            "apex",
            "--gadget",
            "1layered",
            "--problem",
            "md:inf",
            "--hs",
            "fig2.hs",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "hs_opt"), "1");
    assert_eq!(field(&report, "lift_size"), "31");
    assert_eq!(field(&report, "lift_valid"), "true");
    assert_eq!(field(&report, "extract_size"), "1");
    assert_eq!(field(&report, "theorem_ok"), "true");
}

#[test]
fn lift_and_extract_compose_through_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "fig2.hs", FIG2);
    let out = dis(
        dir.path(),
        &[
            "reduce", "--kind", "distance", "--gadget", "local0:2", "--r", "2", "--hs",
            "fig2.hs", "--out-manifest", "fig2.man",
        ],
    );
    assert_eq!(out.status.code(), Some(0));

    let out = dis(
        dir.path(),
        &["lift", "--manifest", "fig2.man", "--hs", "fig2.hs", "--set", "2"],
    );
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "dis_size"), "31");
    let dis_set = field(&report, "dis").replace(' ', ",");

    let out = dis(
        dir.path(),
        &[
            "extract", "--manifest", "fig2.man", "--hs", "fig2.hs", "--problem", "md:2",
            "--set", &dis_set,
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "hs_size"), "1");
    assert_eq!(field(&report, "hitting_set"), "2");

    // A non-hitting input is rejected on lift.
    let out = dis(
        dir.path(),
        &["lift", "--manifest", "fig2.man", "--hs", "fig2.hs", "--set", "3"],
    );
    assert_eq!(out.status.code(), Some(2));

    // An instance that does not match the manifest digest is rejected.
    write(dir.path(), "other.hs", "hs 2 1\n1 2\n");
    let out = dis(
        dir.path(),
        &["lift", "--manifest", "fig2.man", "--hs", "other.hs", "--set", "1"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("digest"));
}

#[test]
fn exit_codes_separate_failure_classes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p5.g", P5);
    write(dir.path(), "k2.g", "g 2 1\n0 1\n");
    // A 3-regular-ish graph the solver cannot finish within one node.
    write(
        dir.path(),
        "g9.g",
        "g 9 13\n0 1\n0 2\n1 3\n2 4\n3 5\n4 5\n5 6\n6 7\n7 8\n8 0\n2 6\n1 7\n3 8\n",
    );

    // Usage errors: bad selection, missing radius, malformed file.
    let out = dis(dir.path(), &["solve", "--problem", "xx:1", "--graph", "p5.g"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
    let out = dis(
        dir.path(),
        &["reduce", "--kind", "distance", "--gadget", "local0:1", "--hs", "p5.g"],
    );
    assert_eq!(out.status.code(), Some(1));
    write(dir.path(), "bad.g", "g 2 1\n0 7\n");
    let out = dis(dir.path(), &["solve", "--problem", "md:1", "--graph", "bad.g"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));

    // Closed twins make 1-identifying codes infeasible.
    let out = dis(dir.path(), &["solve", "--problem", "ic:1", "--graph", "k2.g"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(field(&stdout(&out), "status"), "infeasible");

    // An invalid candidate set fails verification.
    let out = dis(
        dir.path(),
        &["verify", "--problem", "md:inf", "--graph", "p5.g", "--set", "2"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(field(&stdout(&out), "valid"), "false");

    // Budget exhaustion reports bounds and exits 3.
    let out = dis(
        dir.path(),
        &["solve", "--problem", "md:1", "--graph", "g9.g", "--budget", "1"],
    );
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(field(&stdout(&out), "status"), "aborted");
}

#[test]
fn check_commands_report_verdict_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = dis(
        dir.path(),
        &["gadget-check", "--gadget", "1layered", "--problem", "ld:1", "--randoms", "3"],
    );
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    for key in ["p_h", "p_b", "p_d", "p_s"] {
        assert_eq!(field(&report, key), "pass");
    }
    assert_eq!(field(&report, "gadget_ok"), "true");

    // A mismatched pairing fails the axiom matrix and exits 2.
    let out = dis(
        dir.path(),
        &["gadget-check", "--gadget", "ic:1", "--problem", "md:1", "--randoms", "2"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(field(&stdout(&out), "gadget_ok"), "false");

    let out = dis(dir.path(), &["trait-check", "--problem", "ld:1", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "alpha"), "pass");
    assert_eq!(field(&report, "claims_ok"), "true");
}

#[test]
fn sat2hs_reports_the_encoding_shape() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "f.cnf", "p cnf 2 2\n1 2 0\n-1 0\n");
    let out = dis(dir.path(), &["sat2hs", "--cnf", "f.cnf", "--out", "f.hs"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout(&out);
    assert_eq!(field(&report, "elements"), "4");
    assert_eq!(field(&report, "sets"), "4");
    let inst = read_hs_instance(&std::fs::read_to_string(dir.path().join("f.hs")).unwrap()).unwrap();
    assert_eq!(inst.sets(), &[vec![1, 2], vec![3, 4], vec![1, 3], vec![2]]);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "fig2.hs", FIG2);
    let args = [
        "roundtrip", "--kind", "compressed", "--gadget", "local0:2", "--r", "2",
        "--problem", "ld:2", "--hs", "fig2.hs",
    ];
    let first = dis(dir.path(), &args);
    let second = dis(dir.path(), &args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let args = [
        "gadget-check", "--gadget", "ic:2", "--problem", "ic:2", "--randoms", "4",
        "--seed", "7",
    ];
    let first = dis(dir.path(), &args);
    let second = dis(dir.path(), &args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}
