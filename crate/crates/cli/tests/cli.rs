use std::path::PathBuf;
use std::process::{Command, Output};

use plabic_kappa::fixtures::SHARK;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plabic-kappa")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit status")
}

fn model_file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn shark_flow_polynomial() {
    assert_eq!(stdout(&["flow", "shark", "25"]), "F_25 = y34*(1+y24)\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["flow", "shark", "25", "--format", "json"])).unwrap();
    assert_eq!(json["terms"].as_array().unwrap().len(), 2);
    assert_eq!(json["terms"][0]["exp"], serde_json::json!({ "34": 1 }));
}

#[test]
fn shark_partition_functions() {
    assert_eq!(stdout(&["partition", "shark", "45"]), "P_45 = 0\n");
    let p35 = stdout(&["partition", "shark", "35"]);
    assert!(p35.starts_with("P_35 = ") && !p35.contains('+'), "{p35}");
}

#[test]
fn kappa_grid_gr49() {
    let grid = stdout(&["kappa", "rect:4,9", "1457"]);
    let rows: Vec<Vec<i64>> =
        grid.lines().take(4).map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][0], 0);
    assert_eq!(rows[3][4], 3);
    assert_eq!(rows.iter().flatten().max(), Some(&3));
    assert!(grid.ends_with("✱ 1234 = 0\n"));
}

#[test]
fn verification_suites_pass() {
    assert_eq!(code(&["verify", "gt-trop", "--kn", "2,4"]), 0);
    assert!(stdout(&["verify", "gt-trop", "--kn", "2,4"]).starts_with("PASS gt-trop Gr(2,4)"));
    for suite in ["plucker", "valuation-kappa", "xflow"] {
        assert_eq!(code(&["verify", suite, "shark"]), 0, "{suite}");
        assert_eq!(code(&["verify", suite, "rect:2,5"]), 0, "{suite}");
    }
    for suite in ["trop-a", "wformula", "weyl-count"] {
        assert_eq!(code(&["verify", suite, "--kn", "2,5"]), 0, "{suite}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["verify", "no-such-suite"]), 2);
    assert_eq!(code(&["verify", "gt-trop"]), 2);
    assert_eq!(code(&["flow", "shark", "99"]), 2);
    assert_eq!(code(&["gt-cone", "--kn", "4,4"]), 2);
    assert_eq!(code(&["kappa", "rect:3,6", "123", "--mutations", "145"]), 2);
    assert_eq!(code(&["flow", "/nonexistent/model.txt"]), 2);
}

#[test]
fn model_invariant_violations_exit_with_three() {
    let shark = model_file("shark.txt", SHARK);
    assert_eq!(stdout(&["flow", shark.to_str().unwrap(), "25"]), "F_25 = y34*(1+y24)\n");
    let bad_label = model_file("bad_label.txt", &SHARK.replace("e10,e7,e8,e9 24", "e10,e7,e8,e9 25"));
    assert_eq!(code(&["kappa", bad_label.to_str().unwrap(), "25"]), 3);
    let bad_rotation = model_file("bad_rotation.txt", &SHARK.replace("rot B1 e7 e6 e8", "rot B1 e7 e8 e6"));
    assert_eq!(code(&["flow", bad_rotation.to_str().unwrap()]), 3);
    let garbage = model_file("garbage.txt", "plabic v1\nkn 2 4\nnonsense\n");
    assert_eq!(code(&["matchings", garbage.to_str().unwrap()]), 3);
}

#[test]
fn output_is_deterministic() {
    for format in ["pretty", "json", "csv"] {
        for args in [
            vec!["valuation", "rect:3,6"],
            vec!["partition", "shark"],
            vec!["superpotential", "--kn", "2,5", "--mutations", "14"],
        ] {
            let mut args = args.clone();
            args.extend(["--format", format]);
            assert_eq!(stdout(&args), stdout(&args), "{args:?}");
        }
    }
}

#[test]
fn gt_cone_level_counts() {
    let out = stdout(&["gt-cone", "--kn", "2,5", "--level", "2"]);
    assert!(out.starts_with("50 lattice points at level 2; Weyl dimension 50"), "{out}");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["gt-cone", "--kn", "2,4", "--format", "json"])).unwrap();
    assert_eq!(json["ineqs"].as_array().unwrap().len(), 6);
}

#[test]
fn square_moves_round_trip() {
    let once = stdout(&["mutate", "rect:2,4", "--mutations", "13"]);
    let path = model_file("moved.txt", &once);
    let twice = stdout(&["mutate", path.to_str().unwrap(), "--mutations", "24"]);
    let flow_before = stdout(&["flow", "rect:2,4"]);
    let back = model_file("back.txt", &twice);
    assert_eq!(stdout(&["flow", back.to_str().unwrap()]), flow_before);
}

#[test]
fn no_body_points_lie_in_mutated_cone() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["no-body", "rect:2,5", "--mutations", "14", "--format", "json"])).unwrap();
    assert_eq!(json["in_trop_w_cone"], true);
    assert_eq!(json["points"].as_object().unwrap().len(), 10);
}

#[test]
fn x_check_and_wx() {
    assert_eq!(code(&["xcheck", "rect:2,5"]), 0);
    let wx = stdout(&["wx", "--kn", "2,4"]);
    assert_eq!(wx.lines().count(), 5);
    assert!(wx.lines().last().unwrap().starts_with("W_X = "));
}
