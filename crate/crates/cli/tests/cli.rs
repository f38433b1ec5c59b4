use std::process::{Command, Output};

use num_rational::BigRational;
use pade_tilings::algebra::rational::{format_rational, parse_rational};
use pade_tilings::approximants::{aztec_count_eps, aztec_pade_eps, hexagon_hermite_pade, hexagon_multigap_solve};
use pade_tilings::kernels::{KernelSpec, KrawtchoukKernelSpec};
use pade_tilings::oracle::sample_tiling;
use pade_tilings::regions::{build_aztec_region, build_hexagon_region, AztecVariant, HexagonVariant, Tiling};
use pade_tilings::shuffling::{mc_gap_probability, shuffle_sample};
use pade_tilings::GapSet;
use pade_tilings_cli::{parse_gaps, render_svg, run_verify_sweep, Family, VerifyConfig};
use serde::Serialize;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pade-tilings")).args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// What the binary prints for a value returned by the library.
fn printed<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(&serde_json::to_value(v).unwrap()).unwrap() + "\n"
}

fn r(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

#[test]
fn ratio_commands_print_the_library_solution() {
    let pade = aztec_pade_eps(5, 3, 2, 0, &r("2/3")).unwrap();
    assert_eq!(
        stdout_of(&["ratio", "pade", "--n", "5", "--m", "3", "--j", "2", "--eps", "0", "--a", "2/3"]),
        printed(&pade)
    );

    let hermite = hexagon_hermite_pade(14, 5, 6, 3, 7).unwrap();
    assert_eq!(
        stdout_of(&["ratio", "hermite", "--l", "14", "--m", "5", "--n", "6", "--r", "3", "--k", "7"]),
        printed(&hermite)
    );

    let gaps = GapSet::from_clusters(&[(5, Some(5)), (3, Some(3))]).unwrap();
    let multi = hexagon_multigap_solve(13, 6, 4, 7, &gaps).unwrap();
    let args = ["ratio", "multigap", "hexagon", "--l", "13", "--m", "6", "--n", "4", "--r", "7", "--gaps", "5,3"];
    assert_eq!(stdout_of(&args), printed(&multi));
}

#[test]
fn multigap_check_agrees_with_transfer_counts() {
    let out = stdout_of(&[
        "ratio",
        "multigap",
        "aztec",
        "--n",
        "4",
        "--m",
        "3",
        "--eps",
        "1",
        "--gaps",
        "3..,-1..0",
        "--jstar",
        "1",
        "--a",
        "1/2",
        "--check",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["check"]["matches"], Value::Bool(true));
    assert_eq!(v["check"]["theorem"], v["solution"]["ratio"]);
}

#[test]
fn count_commands_match_library_and_oracle() {
    let out = stdout_of(&["count", "aztec", "--n", "5", "--m", "3", "--k", "2", "--a", "1/2", "--check"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let expected = format_rational(&aztec_count_eps(5, 3, 2, 1, &r("1/2")).unwrap());
    assert_eq!(v["count"], Value::String(expected));
    assert_eq!(v["matches"], Value::Bool(true));

    let v: Value = serde_json::from_str(&stdout_of(&["count", "aztec", "--n", "2"])).unwrap();
    assert_eq!(v["count"], "8");

    let v: Value = serde_json::from_str(&stdout_of(&["count", "hexagon", "--l", "3", "--m", "1", "--n", "2"])).unwrap();
    assert_eq!(v["count"], "6");

    let out = stdout_of(&["count", "hexagon", "--l", "6", "--m", "2", "--n", "3", "--r", "2", "--k", "3", "--check"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], v["oracle"]);
}

#[test]
fn samples_are_reproducible_from_the_seed() {
    let a = r("1/2");
    let region = build_aztec_region(4, &AztecVariant::Reduced { m: 3, k: 1 }).unwrap();
    let direct = sample_tiling(&region, &a, 17).unwrap();
    let args = ["sample", "--method", "dp", "--n", "4", "--m", "3", "--k", "1", "--a", "1/2", "--seed", "17"];
    assert_eq!(stdout_of(&args), printed(&direct));

    let direct = shuffle_sample(6, &a, 5).unwrap();
    assert_eq!(
        stdout_of(&["sample", "--method", "shuffle", "--n", "6", "--a", "1/2", "--seed", "5"]),
        printed(&direct)
    );

    let region = build_hexagon_region(5, 2, 3, &HexagonVariant::Full).unwrap();
    let direct = sample_tiling(&region, &BigRational::from_integer(1.into()), 2).unwrap();
    let args = ["sample", "--geometry", "hexagon", "--l", "5", "--m", "2", "--n", "3", "--seed", "2"];
    assert_eq!(stdout_of(&args), printed(&direct));
}

#[test]
fn monte_carlo_summary_matches_library() {
    let est = mc_gap_probability(3, 2, 2, 0, &r("1"), 4000, 11).unwrap();
    let args = [
        "sample", "--method", "shuffle", "--n", "3", "--m", "2", "--k", "2", "--eps", "0", "--trials", "4000",
        "--seed", "11",
    ];
    let out = run(&args);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), printed(&est));
    assert_eq!(out.status.success(), est.sigmas <= 4.0);
}

#[test]
fn kernel_commands() {
    let spec: KernelSpec = KrawtchoukKernelSpec::new(4, 2, 1, r("1/2")).unwrap().into();
    let out = stdout_of(&["kernel", "entry", "--n", "4", "--m", "2", "--a", "1/2", "--x", "-1", "--y", "1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], Value::String(format_rational(&spec.entry(-1, 1))));

    let args = ["kernel", "det", "--n", "4", "--m", "2", "--a", "1/2", "--gaps", "2..,-1..0", "--check"];
    let v: Value = serde_json::from_str(&stdout_of(&args)).unwrap();
    assert_eq!(v["matches"], Value::Bool(true));

    let args = [
        "kernel",
        "det",
        "--geometry",
        "hexagon",
        "--l",
        "6",
        "--m",
        "3",
        "--n",
        "3",
        "--r",
        "2",
        "--k",
        "3",
        "--check",
    ];
    let v: Value = serde_json::from_str(&stdout_of(&args)).unwrap();
    assert_eq!(v["matches"], Value::Bool(true));

    let args = ["kernel", "nystrom", "--n", "4", "--m", "3", "--k", "1", "--eps", "0"];
    let v: Value = serde_json::from_str(&stdout_of(&args)).unwrap();
    assert!(v["difference"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_reports_every_case_and_honours_jobs() {
    let out = Command::new(env!("CARGO_BIN_EXE_pade-tilings"))
        .args(["verify", "--family", "aztec-count,hexagon-kernel", "--n-max", "3", "--l-max", "4", "--hex-n-max", "2"])
        .env("PADE_TILINGS_JOBS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let config = VerifyConfig {
        families: vec![Family::AztecCount, Family::HexagonKernel],
        n_max: 3,
        l_max: 4,
        hex_n_max: 2,
        weights: vec![r("1"), r("1/2")],
        jobs: 1,
    };
    let report = run_verify_sweep(&config, Vec::new()).unwrap();
    assert!(report.ok);
    assert_eq!(v["passed"].as_u64().unwrap() as usize, report.passed);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["ok"], true);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), report.cases.len());
    for (printed, direct) in cases.iter().zip(&report.cases) {
        assert_eq!(printed["theorem"], serde_json::to_value(&direct.outcome.theorem).unwrap());
        assert!(printed["millis"].is_number());
    }
}

#[test]
fn bad_parameters_exit_nonzero() {
    let out = run(&["count", "aztec", "--n", "2", "--m", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
    let out = run(&["sample", "--method", "shuffle", "--n", "3", "--m", "2", "--k", "1"]);
    assert!(!out.status.success());
}

#[test]
fn gap_strings() {
    assert_eq!(parse_gaps("3..").unwrap(), GapSet::semi_infinite(3));
    assert_eq!(parse_gaps("2..5").unwrap(), GapSet::interval(2, 5));
    assert_eq!(
        parse_gaps("12..13,6..8,2").unwrap(),
        GapSet::from_clusters(&[(12, Some(13)), (6, Some(8)), (2, Some(2))]).unwrap()
    );
    assert_eq!(parse_gaps("-1..,-4..-3").unwrap(), GapSet::from_clusters(&[(-1, None), (-4, Some(-3))]).unwrap());
    assert!(parse_gaps("3..,1..").is_err());
    assert!(parse_gaps("x..2").is_err());
    assert!(parse_gaps("2..4,3..5").is_err());
}

#[test]
fn render_writes_the_library_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.svg");
    let p = path.to_str().unwrap();
    let out = stdout_of(&["render", "--method", "shuffle", "--n", "5", "--seed", "4", "--paths", "--out", p]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pieces"], 30);
    let tiling = Tiling::Domino(shuffle_sample(5, &r("1"), 4).unwrap());
    let paths = pade_tilings::regions::tiling_to_paths(&tiling).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), render_svg(&tiling, Some(&paths)));
}
