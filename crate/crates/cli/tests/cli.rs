use std::process::{Command, Output};

use idensity::json::{self, ClassifyDto, DensityReportDto, GlobalIacDto, LimitsDto, OracleDto, SeparationDto, SetDto};
use serde::de::DeserializeOwned;
use serde::Serialize;

const REALS: &str = r#"{"components":[{"lo":"-inf","hi":"inf","lo_open":true,"hi_open":true}]}"#;
const RATIONALS_01: &str = r#"{"components":[{"lo":"0","hi":"1","lo_open":true,"hi_open":true,"class":"rationals_only"}]}"#;
const GENERATOR: &str = r#"{"center":"1/3","radius":"(1/2)^n"}"#;
const SEQUENCE: &str = r#"{"patterns":[
    {"index_set":{"kind":"powers","e":2},"rule":{"kind":"const","v":"5"}},
    {"index_set":{"kind":"complement","of":{"kind":"powers","e":2}},"rule":{"kind":"formula","expr":"1 - 1/n"}}]}"#;
const FUNCTION: &str = r#"{"pieces":[
    {"set":{"components":[{"lo":"-inf","hi":"0","lo_open":true,"hi_open":true}]},"affine":{"a":"0","b":"0"}},
    {"set":{"components":[{"lo":"0","hi":"inf","lo_open":false,"hi_open":true}]},"affine":{"a":"0","b":"1"}}]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idensity")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Parses `text` and checks that serializing it again gives back `text`.
fn round_trip<T: DeserializeOwned + Serialize>(text: &str) -> T {
    let v: T = json::from_str(text).expect("emitted JSON parses");
    assert_eq!(format!("{}\n", json::to_string(&v)), text);
    v
}

#[test]
fn squares_example_csv() {
    let out = stdout(&["examples", "run", "ex2.3", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,m_J,m_JE,quotient,quotient_decimal"));
    let first: Vec<(String, String)> = lines
        .by_ref()
        .take(4)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[3].to_string())
        })
        .collect();
    let expected = [("1", "1/1"), ("2", "1/1"), ("3", "1/1"), ("4", "1/4")];
    assert_eq!(first, expected.map(|(a, b)| (a.to_string(), b.to_string())));
    assert!(out.lines().any(|l| l == "I_d-density: 1"));
    assert!(out.lines().any(|l| l == "Fin density: does not exist"));
    assert!(out.contains("9,18/1,2/1,1/9,0.111111111111"));
    assert!(out.contains("10,2/21,2/21,1/1,1.000000000000"));
}

#[test]
fn neither_open_nor_closed_example() {
    let out = stdout(&["examples", "run", "ex4.10"]);
    let r: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    let rows = r["table"]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|row| row[3] == "1/2"));
    assert!(r["summary"].as_array().unwrap().iter().any(|p| p[0] == "I_d-open" && p[1] == "false"));
}

#[test]
fn classify_rationals() {
    let out = stdout(&["classify", "--set", RATIONALS_01]);
    let c: ClassifyDto = round_trip(&out);
    assert!(!c.i_d_open && c.i_d_closed);
    assert_eq!(c.measure, "0/1");
    assert_eq!(c.theta, SetDto::default());
}

#[test]
fn density_of_the_line() {
    for ideal in ["natdens", "fin"] {
        let out = stdout(&["density", "--set", REALS, "--generator", GENERATOR, "--ideal", ideal]);
        let r: DensityReportDto = round_trip(&out);
        assert_eq!(r.two_sided.as_deref(), Some("1/1"));
        assert!(r.admissible);
        r.build("$").unwrap();
    }
}

#[test]
fn limits_and_oracle() {
    let out = stdout(&["limsup", "--sequence", SEQUENCE]);
    let l: LimitsDto = round_trip(&out);
    assert_eq!((l.limsup.as_str(), l.limit.as_deref()), ("1/1", Some("1/1")));
    assert_eq!(l.classical_limsup, "5/1");
    let fin: LimitsDto = round_trip(&stdout(&["limsup", "--sequence", SEQUENCE, "--ideal", "fin"]));
    assert_eq!((fin.limsup.as_str(), fin.limit), ("5/1", None));

    let o: OracleDto = json::from_str(&stdout(&["oracle", "--sequence", SEQUENCE, "--horizon", "20000"])).unwrap();
    assert!(o.agree, "{o:?}");
    assert_eq!(o.horizon, 20000);
}

#[test]
fn continuity_reports() {
    let g: GlobalIacDto = round_trip(&stdout(&["iac", "--function", FUNCTION]));
    assert!(!g.level_set_route && !g.pointwise_route);
    let at_zero = g.points.iter().find(|p| p.point == "0/1").expect("breakpoint is tested");
    assert!(!at_zero.holds && at_zero.upper_semicontinuous && !at_zero.lower_semicontinuous);
    let csv = stdout(&["iac", "--function", FUNCTION, "--point", "1/2", "--format", "csv"]);
    assert_eq!(csv, "point,value,iac,upper_semicontinuous,lower_semicontinuous\n1/2,1/1,true,true,true\n");
}

#[test]
fn separation() {
    let closed = r#"{"components":[{"lo":"0","hi":"1"}]}"#;
    let s: SeparationDto = round_trip(&stdout(&["separate", "--closed", closed, "--point", "2", "--grid-step", "1/4"]));
    assert!(s.report.ok);
    assert_eq!(s.samples.len(), 48);
    let csv = stdout(&["separate", "--closed", closed, "--point", "2", "--grid-step", "1/4", "--format", "csv"]);
    assert!(csv.starts_with("x,g1,g2,g\n"));
    assert!(csv.contains("\n1/2,0/1,1/1,0/1\n") && csv.contains("\n2/1,1/1,0/1,1/1\n"));
    assert!(csv.ends_with("iac everywhere: true\n"));
}

#[test]
fn bundle_and_files() {
    let dir = std::env::temp_dir().join(format!("idensity-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let set_path = dir.join("set.json");
    std::fs::write(&set_path, RATIONALS_01).unwrap();
    let at = format!("@{}", set_path.display());
    assert_eq!(stdout(&["classify", "--set", &at]), stdout(&["classify", "--set", RATIONALS_01]));

    let bundle = dir.join("bundle.json");
    std::fs::write(&bundle, format!(r#"{{"set":{REALS},"generator":{{"center":"0","radius":"n"}}}}"#)).unwrap();
    let r: DensityReportDto = json::from_str(&stdout(&["density", "--file", bundle.to_str().unwrap(), "--rows", "0"])).unwrap();
    assert!(!r.admissible && r.quotient_table.is_none());

    std::fs::write(&bundle, r#"{"set":{"components":[{"lo":"0","hi":"1","hi_open":"yes"}]}}"#).unwrap();
    let out = run(&["classify", "--file", bundle.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.set.components[0].hi_open"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validation_exit_codes() {
    let cases: [&[&str]; 6] = [
        &["classify", "--set", r#"{"components":[{"lo":"1","hi":"0"}]}"#],
        &["classify", "--set", r#"{"components":[{"lo":"0","hi":"x"}]}"#],
        &["density", "--set", REALS, "--generator", r#"{"center":"0","radius":"-1"}"#],
        &["separate", "--closed", r#"{"components":[{"lo":"0","hi":"1"}]}"#, "--point", "1/2"],
        &["limsup", "--sequence", SEQUENCE, "--ideal", "nope"],
        &["classify", "--set", "@/nonexistent/path.json"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
    let out = run(&["classify", "--set", r#"{"components":[{"lo":"0","hi":"x"}]}"#]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.components[0].hi"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let runs: [&[&str]; 4] = [
        &["examples", "run", "ex4.10", "--format", "csv"],
        &["iac", "--function", FUNCTION],
        &["oracle", "--sequence", SEQUENCE, "--horizon", "5000"],
        &["separate", "--closed", r#"{"components":[{"lo":"0","hi":"1"}]}"#, "--point", "3"],
    ];
    for args in runs {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
