use fibered_cli::report::Report;
use fibered_cli::run_to;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fibered").chain(args.iter().copied());
    let code = run_to(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = run(&full);
    (code, Report::from_json(&out).expect("valid report"))
}

#[test]
fn interlace_twisted_cubic_pair() {
    let (code, r) = json(&["interlace", "--f", "s^3-4*s*t^2", "--g", "s^2*t-t^3"]);
    assert_eq!(code, 0);
    assert_eq!(r.verdict, "RealFiberedInterlacing");
    assert_eq!(
        r.certificates["bezoutian"],
        serde_json::json!([["1", "0", "-1"], ["0", "3", "0"], ["-1", "0", "4"]])
    );
    assert_eq!(r.certificates["determinant"], "9");
    assert_eq!(r.certificates["signature"], serde_json::json!({"n_plus": 3, "n_minus": 0, "n_zero": 0}));
}

#[test]
fn tracetest_witness() {
    let (code, r) = json(&["tracetest", "--q", "t^2 - z"]);
    assert_eq!(code, 1);
    assert_eq!(r.certificates["witness"]["z"], "-1");
    assert_eq!(r.certificates["trace_form"], serde_json::json!([["2", "0"], ["0", "2*z"]]));
}

#[test]
fn tracetest_from_map_matches_interlace() {
    let (c1, _) = json(&["tracetest", "--f", "s^2-t^2", "--g", "s*t"]);
    let (c2, _) = json(&["interlace", "--f", "s^2-t^2", "--g", "s*t"]);
    assert_eq!((c1, c2), (0, 0));
    let (c3, _) = json(&["tracetest", "--f", "s^2", "--g", "t^2"]);
    let (c4, _) = json(&["interlace", "--f", "s^2", "--g", "t^2"]);
    assert_eq!((c3, c4), (1, 1));
}

#[test]
fn reports_round_trip_through_json() {
    let (_, out, _) = run(&["--json", "realroots", "--p", "t^3 - t"]);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.to_json() + "\n", out);
    assert_eq!(r.schema, 1);
    assert_eq!(r.verdict, "AllRealRoots");
}

#[test]
fn same_seed_gives_identical_reports() {
    let a = run(&["--json", "--seed", "5", "hyperbolic", "search", "--f", "x0^4-x1^4-x2^4", "--e", "1,0,0"]);
    let b = run(&["--json", "--seed", "5", "hyperbolic", "search", "--f", "x0^4-x1^4-x2^4", "--e", "1,0,0"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 1);
    let c = run(&["--json", "--seed", "9", "demo", "veronese"]);
    let d = run(&["--json", "--seed", "9", "demo", "veronese"]);
    assert_eq!(c, d);
}

#[test]
fn timing_only_when_asked() {
    let (_, out, _) = run(&["--json", "demo", "tv-screen"]);
    assert!(!out.contains("timing_ms"));
    let (_, out, _) = run(&["--json", "--timing", "demo", "tv-screen"]);
    assert!(out.contains("timing_ms"));
}

#[test]
fn invalid_input_exits_two() {
    let (code, _, err) = run(&["interlace", "--f", "s^2 + y", "--g", "t^2"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 6"), "{err}");
    assert_eq!(run(&["interlace", "--f", "s^2"]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
    // common zero at (0:1)
    let (code, r) = json(&["interlace", "--f", "s^2", "--g", "s*t"]);
    assert_eq!(code, 2);
    assert_eq!(r.verdict, "CommonZero");
    let (code, r) = json(&["tracetest", "--q", "2*t^2 - z"]);
    assert_eq!(code, 2);
    assert_eq!(r.verdict, "InvalidInput");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("tracetest"));
}

#[test]
fn demos_exit_as_expected() {
    assert_eq!(run(&["demo", "twisted-cubic"]).0, 0);
    assert_eq!(run(&["demo", "mobius", "4"]).0, 0);
    assert_eq!(run(&["demo", "double-cover"]).0, 0);
    assert_eq!(run(&["demo", "double-cover", "--p", "x0^2 - x1^2"]).0, 1);
    let (code, r) = json(&["demo", "tv-screen"]);
    assert_eq!(code, 1);
    assert_eq!(r.certificates["reason"], "g+1-s=3 odd");
    assert_eq!(run(&["demo", "veronese"]).0, 1);
    assert_eq!(run(&["--samples", "3", "demo", "edge-quartic"]).0, 0);
}

#[test]
fn detrep_membership_and_definiteness() {
    let (code, r) = json(&[
        "detrep",
        "--matrix",
        r#"[["x0+x1","x2"],["x2","x0-x1"]]"#,
        "--points",
        "[[1,1,0],[2,0,1]]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.certificates["determinant"], "x0^2 - x1^2 - x2^2");
    assert_eq!(r.certificates["membership"][0]["member"], true);
    assert_eq!(r.certificates["membership"][1]["member"], false);
}

#[test]
fn koszul_on_commuting_diagonal_system() {
    let (code, r) = json(&[
        "koszul",
        "--matrices",
        r#"[[["z1-z0","0"],["0","z1-2*z0"]],[["z2-z0","0"],["0","z2+z0"]]]"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r.certificates["koszul_factor"], "-2");
    assert_eq!(r.certificates["delta_center_evaluation"], serde_json::json!([["1", "0"], ["0", "1"]]));
    assert_eq!(r.certificates["differential_shapes"], serde_json::json!([[2, 4], [4, 2]]));
    let (code, _) = json(&["koszul", "--matrices", r#"[[["z1","z0"],["0","z1"]],[["z0","0"],["z2","z0"]]]"#]);
    assert_eq!(code, 2, "non-commuting input is rejected");
}

#[test]
fn project_curve_non_interlacing_center() {
    let (code, r) = json(&["hyperbolic", "project-curve", "--center", r#"["x0","x3"]"#]);
    assert_eq!(code, 1);
    assert_eq!(r.certificates["f"], "s^3");
    assert_eq!(r.certificates["g"], "t^3");
}
