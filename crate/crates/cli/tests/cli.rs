mod common;

use std::process::Command;

use clusterlab::positivity::snake_quiver;
use clusterlab::quiver::{catalog, QuiverJson};
use clusterlab::surface::{Lamination, MultiLamination, MultiLaminationJson, Triangulation, TriangulationJson};
use clusterlab::Quiver;
use common::{data, data_json, run, run_on};
use serde_json::Value;

fn quiver_file(name: &str) -> Quiver {
    Quiver::try_from(serde_json::from_value::<QuiverJson>(data_json(name)).unwrap()).unwrap()
}

#[test]
fn shipped_files_match_the_engine() {
    assert_eq!(quiver_file("sl4n_seed.json"), snake_quiver(4));
    assert_eq!(quiver_file("a3_path.json"), catalog::path(3));
    assert_eq!(quiver_file("five_vertex.json"), catalog::five_vertex_example());

    let t: TriangulationJson = serde_json::from_value(data_json("hexagon.json")).unwrap();
    let t = Triangulation::try_from(&t).unwrap();
    assert_eq!(t, Triangulation::from_pairs(6, &[(4, 6), (2, 6), (2, 4)]).unwrap());
    let ml: MultiLaminationJson = serde_json::from_value(data_json("hexagon_laminations.json")).unwrap();
    let ml = MultiLamination::try_from(&ml).unwrap();
    let expected: Vec<(String, Lamination)> = [
        ("D4", (1, 5)),
        ("D1", (4, 6)),
        ("D123", (1, 3)),
        ("D234", (2, 4)),
        ("D34", (3, 6)),
        ("D12", (2, 5)),
    ]
    .iter()
    .map(|(name, (a, b))| (name.to_string(), Lamination::single(6, *a, *b).unwrap()))
    .collect();
    assert_eq!(ml.entries(), &expected[..]);
}

#[test]
fn classify_a3() {
    let (code, out, _) = run_on(&["classify"], "a3_path.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "finite: A3\n");
    let (_, out, _) = run_on(&["classify"], "a3_path.json", &["--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "finite: A3");
    assert_eq!(v["details"]["verdict"], "finite");
}

#[test]
fn sl4_exchange_graph_has_fourteen_seeds() {
    let (code, out, err) = run_on(&["exchange-graph"], "sl4n_seed.json", &["--max-seeds", "100"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seeds"].as_array().unwrap().len(), 14);
    assert_eq!(v["edges"].as_array().unwrap().len(), 21);
    assert_eq!(v["complete"], true);
    assert_eq!(v["cluster_variables"].as_array().unwrap().len(), 9);

    let (code, dot, _) = run_on(&["exchange-graph"], "sl4n_seed.json", &["--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph exchange {"));
    assert_eq!(dot.matches(" -- ").count(), 21);
}

#[test]
fn small_cap_reports_incomplete() {
    let (code, out, _) = run_on(&["exchange-graph"], "sl4n_seed.json", &["--max-seeds", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["complete"], false);
    assert_eq!(v["seeds"].as_array().unwrap().len(), 5);
}

#[test]
fn mutate_five_vertex() {
    let (code, out, _) = run_on(&["mutate"], "five_vertex.json", &["--at", "z"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let q = Quiver::try_from(serde_json::from_value::<QuiverJson>(v["quiver"].clone()).unwrap()).unwrap();
    assert_eq!(q.multiplicity("x", "u"), 2);
    assert_eq!(q.multiplicity("v", "y"), 1);
    assert_eq!(q.multiplicity("y", "x") + q.multiplicity("x", "y"), 0);

    let (code, out, _) = run_on(&["mutate"], "five_vertex.json", &["--at", "z,z"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let back = Quiver::try_from(serde_json::from_value::<QuiverJson>(v["quiver"].clone()).unwrap()).unwrap();
    assert_eq!(back, catalog::five_vertex_example());
}

#[test]
fn domain_errors_exit_one() {
    let (code, out, err) = run_on(&["mutate"], "five_vertex.json", &["--at", "w"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error: UnknownVertex"), "{err}");

    let (code, _, err) = run_on(&["mutate"], "five_vertex.json", &["--at", "u"]);
    assert_eq!(code, 1);
    assert!(err.contains("FrozenVertexMutation"), "{err}");

    let (code, _, err) = run_on(&["polygon", "flip"], "hexagon.json", &["--diagonal", "1,4"]);
    assert_eq!(code, 1);
    assert!(err.contains("NotInTriangulation"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["mutate"]).0, 2);
    assert_eq!(run(&["tp-test", "x.json", "--mode", "sideways"]).0, 2);
    let (code, _, err) = run(&["classify", "/nonexistent/q.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("Io"), "{err}");
    let (code, _, err) = run_on(&["classify"], "hexagon.json", &[]);
    assert_eq!(code, 2);
    assert!(err.contains("MalformedRequest"), "{err}");
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("exchange-graph"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["exchange-graph"],
        vec!["classify"],
        vec!["laurent-check"],
    ] {
        let a = run_on(&args, "sl4n_seed.json", &[]);
        let b = run_on(&args, "sl4n_seed.json", &[]);
        assert_eq!(a, b);
    }
}

#[test]
fn polygon_commands() {
    let lam = data("hexagon_laminations.json");
    let lam = lam.to_str().unwrap();
    let (code, out, _) = run_on(&["polygon", "verify"], "hexagon.json", &["--laminations", lam]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 3);

    let (_, out, _) = run_on(&["polygon", "shear"], "hexagon.json", &["--laminations", lam]);
    let v: Value = serde_json::from_str(&out).unwrap();
    // The curve (s2,s4) cuts off vertex 3 and crosses only the diagonal 2-4.
    assert_eq!(v["shear_vectors"]["D234"]["d2_4"], 1);
    assert_eq!(v["shear_vectors"]["D234"]["d2_6"], 0);

    let (_, out, _) = run(&["polygon", "triangulations", "--n", "6"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 14);
    assert_eq!(v["flips"].as_array().unwrap().len(), 21);
}

#[test]
fn positivity_commands() {
    let (code, out, _) = run(&["tp-generate", "--n", "4"]);
    assert_eq!(code, 0);
    let dir = std::env::temp_dir().join(format!("clusterlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("m.json");
    std::fs::write(&m, &out).unwrap();
    let m = m.to_str().unwrap();
    for mode in ["all-minors", "cryer", "chamber"] {
        let (code, out, _) = run(&["tp-test", m, "--mode", mode]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let flags = v["result"].as_object().unwrap();
        let verdicts: Vec<&Value> = flags.iter().filter(|(k, _)| k.ends_with("positive") || k.ends_with("negative")).map(|(_, x)| x).collect();
        assert!(!verdicts.is_empty() && verdicts.iter().all(|x| **x == Value::Bool(true)), "{mode}: {out}");
    }
    let (_, out, _) = run(&["tp-generate", "--n", "3", "--factors", "x1:1"]);
    std::fs::write(dir.join("u.json"), &out).unwrap();
    let (_, out, _) = run(&["tp-test", dir.join("u.json").to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["totally_nonnegative"], true);
    assert_eq!(v["result"]["totally_positive"], false);
    let (code, _, err) = run(&["tp-generate", "--n", "3", "--factors", "x3:1"]);
    assert_eq!(code, 1, "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn wiring_commands() {
    let (_, out, _) = run(&["wiring", "--word", "1,2,1,3,2,1", "chambers"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["chambers"].as_array().unwrap().len(), 9);
    let (_, out, _) = run(&["wiring", "--word", "1,2,1,3,2,1", "quiver"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quiver"], serde_json::to_value(QuiverJson::from(&snake_quiver(4))).unwrap());
    let (code, _, err) = run(&["wiring", "--word", "1,1", "moves"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_clusterlab");
    let ok = Command::new(bin).arg("classify").arg(data("a3_path.json")).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "finite: A3\n");
    let bad = Command::new(bin)
        .args(["mutate", "--at", "nope"])
        .arg(data("five_vertex.json"))
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("UnknownVertex"));
    let usage = Command::new(bin).arg("--no-such-flag").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
