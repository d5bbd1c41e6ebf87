use curved_kepler::cli::run_cli;
use curved_kepler::SpectrumReport;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("curved-kepler").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn spectrum_csv_reference_rows() {
    let (code, out, _) = run(&[
        "spectrum",
        "--manifold",
        "sphere",
        "--n",
        "0",
        "--l",
        "0",
        "--kmax",
        "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "manifold,n,l,level,E_analytic,E_numeric,rel_diff,residual\n\
         sphere,0,0,0,-1,,,\n\
         sphere,0,0,1,-1.5,,,\n\
         sphere,0,0,2,-2,,,\n"
    );
}

#[test]
fn pseudosphere_spectrum_ground() {
    let (code, out, _) = run(&["spectrum", "--manifold", "pseudosphere", "--kmax", "0"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("pseudosphere,0,0,0,1,,,\n"), "{out}");
}

#[test]
fn oracle_ground_at_2000_is_pinned() {
    let (code, out, _) = run(&["oracle", "--count", "1", "--grid", "2000"]);
    assert_eq!(code, 0);
    let row = out.lines().nth(1).unwrap();
    assert_eq!(row.split(',').nth(5), Some("-1.999974018456967"));
}

#[test]
fn theta_max_on_sphere_is_usage_error() {
    let (code, out, err) = run(&["oracle", "--manifold", "sphere", "--theta-max", "5"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("--theta-max"), "{err}");
}

#[test]
fn bad_parameters_name_their_flags() {
    let (code, _, err) = run(&["spectrum", "--mass", "0", "--hbar=-1"]);
    assert_eq!(code, 2);
    assert!(err.contains("--mass") && err.contains("--hbar"), "{err}");

    let (code, _, err) = run(&["oracle", "--grid", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("--grid"), "{err}");

    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["spectrum", "--manifold", "torus"]);
    assert_eq!(code, 2);
}

#[test]
fn negative_quantum_numbers_parse() {
    let (code, out, _) = run(&["spectrum", "--n", "-1", "--l", "2", "--kmax", "0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("sphere,-1,2,0,"));
}

#[test]
fn json_output_round_trips() {
    let (code, out, _) = run(&["compare", "--kmax", "1", "--grid", "400", "--format", "json"]);
    assert_eq!(code, 0);
    let report = SpectrumReport::from_json(&out).unwrap();
    assert_eq!(report.levels.len(), 2);
    assert_eq!(report.to_json().unwrap(), out);
}

#[test]
fn output_flag_writes_file_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("levels.csv");
    let (code, out, _) = run(&["spectrum", "--kmax", "1", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("manifold,n,l,level"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn wavefunction_samples_cover_half_sphere() {
    let (code, out, _) = run(&["wavefunction", "--grid", "100", "--k", "1"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("theta,f"));
    // nodes i·π/100 up to π/2; 50·(π/100) rounds one ulp past π/2
    assert_eq!(lines.count(), 49);

    let (code, out, _) = run(&[
        "wavefunction",
        "--source",
        "numeric",
        "--grid",
        "100",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["theta"].as_array().unwrap().len(), 99);
    assert_eq!(v["f"].as_array().unwrap().len(), 99);
}

#[test]
fn check_reports_all_passing() {
    let (code, out, _) = run(&["check"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 8);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn repeated_runs_are_identical() {
    let args = [
        "compare",
        "--manifold",
        "pseudosphere",
        "--kmax",
        "1",
        "--grid",
        "600",
        "--format",
        "json",
    ];
    assert_eq!(run(&args), run(&args));
}
