use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use heartforge_core::algebra::{build_algebra, QuiverPresentation};
use heartforge_core::homological::ext_dim;
use heartforge_core::modrep::ModuleJson;
use heartforge_core::torsion::regular_mod_ideal;
use heartforge_core::{FdModule, Fp};
use serde_json::{json, Value};
use tempfile::TempDir;

fn heartforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heartforge"))
        .args(args)
        .env_remove("HEARTFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stacked_kronecker() -> Value {
    json!({
        "field": {"prime": 101},
        "vertices": ["1", "2", "3"],
        "arrows": [
            {"name": "alpha", "from": "1", "to": "2"}, {"name": "beta", "from": "1", "to": "2"},
            {"name": "gamma", "from": "2", "to": "3"}, {"name": "delta", "from": "2", "to": "3"}
        ],
        "relations": [
            [{"coeff": "1", "path": ["alpha", "delta"]}],
            [{"coeff": 1, "path": ["beta", "gamma"]}],
            [{"coeff": "1", "path": ["alpha", "gamma"]}, {"coeff": "-1", "path": ["beta", "delta"]}]
        ]
    })
}

fn kronecker() -> Value {
    json!({
        "field": {"prime": 101},
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "1", "to": "2"}]
    })
}

#[test]
fn golden_examples_exit_codes() {
    for (name, expected) in [("8.1", 0), ("8.2a", 0), ("8.2b", 2), ("8.2c", 0), ("8.3-kronecker", 2)] {
        let o = heartforge(&["examples-run", name]);
        assert_eq!(code(&o), expected, "{name}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let o = heartforge(&["examples-run", "8.2b"]);
    assert!(String::from_utf8_lossy(&o.stdout).contains("diff (expected -, computed +)"));
}

#[test]
fn golden_example_8_1_dimensions() {
    for (n, dim) in [("3", 4), ("4", 7)] {
        let o = heartforge(&["examples-run", "8.1", "--n", n, "--json"]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout_json(&o)["report"]["end_ring"]["dim"], dim);
    }
}

#[test]
fn usage_errors() {
    assert_eq!(code(&heartforge(&["examples-run", "9.9"])), 64);
    assert_eq!(code(&heartforge(&["no-such-command"])), 64);
    assert_eq!(code(&heartforge(&["examples-run", "8.1", "--field", "4"])), 64);
    assert_eq!(code(&heartforge(&["--help"])), 0);
}

#[test]
fn algebra_round_trip_and_check() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &stacked_kronecker());
    let text = std::fs::read_to_string(&a).unwrap();
    let parsed: QuiverPresentation = serde_json::from_str(&text).unwrap();
    let again: QuiverPresentation = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, again);
    let o = heartforge(&["algebra-check", "--algebra", s(&a), "--json"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["invariants"]["dim"], 8);
    assert_eq!(v["invariants"]["radical_dim"], 5);
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let mut bad = kronecker();
    bad["relations"] = json!([[{"coeff": "1", "path": ["a"]}]]);
    let p = write(&dir, "bad.json", &bad);
    let o = heartforge(&["algebra-check", "--algebra", s(&p)]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not admissible"));

    let mut unknown = kronecker();
    unknown["colour"] = json!("red");
    let p = write(&dir, "unknown.json", &unknown);
    let o = heartforge(&["algebra-check", "--algebra", s(&p)]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    // alpha·delta = 1 on this representation, violating the first relation.
    let a = write(&dir, "a.json", &stacked_kronecker());
    let m = json!({
        "dims": {"1": 1, "2": 1, "3": 1},
        "arrows": {"alpha": [[1]], "beta": [[0]], "gamma": [[0]], "delta": [[1]]}
    });
    let mp = write(&dir, "m.json", &m);
    let o = heartforge(&["algebra-check", "--algebra", s(&a), "--module", s(&mp)]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha*delta"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn stalk_check_witness_is_reconfirmed() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &stacked_kronecker());
    let ok = write(&dir, "e1.json", &json!({"idempotent": ["1"]}));
    assert_eq!(code(&heartforge(&["stalk-check", "--algebra", s(&a), "--torsion", s(&ok)])), 0);
    let t = write(&dir, "e12.json", &json!({"idempotent": ["1", "2"]}));
    let o = heartforge(&["stalk-check", "--algebra", s(&a), "--torsion", s(&t), "--json"]);
    assert_eq!(code(&o), 2);
    let v = stdout_json(&o);
    let w = &v["verdict"]["witness"];
    assert!(w["description"].as_str().unwrap().contains("Ext^2(S3, S1)"));

    let k = Fp::new(101).unwrap();
    let pres: QuiverPresentation = serde_json::from_value(stacked_kronecker()).unwrap();
    let r = build_algebra(&k, &pres, None).unwrap();
    let simple: ModuleJson = serde_json::from_value(w["data"].clone()).unwrap();
    let s1 = FdModule::from_json(&r, &simple).unwrap();
    let (quotient, _) = regular_mod_ideal(&r, &r.idempotent_ideal(&[0, 1]));
    assert!(ext_dim(2, &quotient, &s1).unwrap() > 0);
}

#[test]
fn torsion_and_heart_commands() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", &stacked_kronecker());
    let t = write(&dir, "t.json", &json!({"idempotent": ["1", "2"]}));
    let o = heartforge(&["torsion", "--algebra", s(&a), "--torsion", s(&t), "--json"]);
    assert_eq!(code(&o), 0);
    let o = heartforge(&["heart-progenerator", "--algebra", s(&a), "--torsion", s(&t), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["end_ring"]["dim"], 10);
    let o = heartforge(&["heart-endring", "--algebra", s(&a), "--torsion", s(&t), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["end_ring"]["simples"], 3);

    // Torsion class generated by D(A) over the Kronecker algebra.
    let k = Fp::new(101).unwrap();
    let pres: QuiverPresentation = serde_json::from_value(kronecker()).unwrap();
    let r = build_algebra(&k, &pres, None).unwrap();
    let op = Arc::new(r.opposite());
    let v = FdModule::regular(&op).dual(&r);
    let kp = write(&dir, "k.json", &kronecker());
    write(&dir, "v.json", &serde_json::to_value(v.to_json()).unwrap());
    let g = write(&dir, "g.json", &json!({"generated_by": "v.json"}));
    let o = heartforge(&["torsion", "--algebra", s(&kp), "--torsion", s(&g), "--json"]);
    assert_eq!(code(&o), 0);
    let o = heartforge(&["heart-progenerator", "--algebra", s(&kp), "--torsion", s(&g)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn tilt_and_hkm_checks() {
    let dir = TempDir::new().unwrap();
    let k = Fp::new(101).unwrap();
    let pres: QuiverPresentation = serde_json::from_value(kronecker()).unwrap();
    let r = build_algebra(&k, &pres, None).unwrap();
    let kp = write(&dir, "k.json", &kronecker());
    let op = Arc::new(r.opposite());
    let dual = FdModule::regular(&op).dual(&r);
    let vp = write(&dir, "v.json", &serde_json::to_value(dual.to_json()).unwrap());
    assert_eq!(code(&heartforge(&["tilt-check", "--algebra", s(&kp), "--module", s(&vp)])), 0);

    // R[0] against the trivial torsion pair T = R-Mod.
    let reg = FdModule::regular(&r);
    let zero = FdModule::zero(&r);
    let c = json!({"q": zero.to_json(), "p": reg.to_json(), "d": {}});
    let cp = write(&dir, "c.json", &c);
    let t = write(&dir, "t.json", &json!({"idempotent": []}));
    let o = heartforge(&["tilt-check", "--algebra", s(&kp), "--complex", s(&cp), "--torsion", s(&t)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = heartforge(&["hkm-check", "--algebra", s(&kp), "--complex", s(&cp), "--torsion", s(&t)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(code(&heartforge(&["tilt-check", "--algebra", s(&kp)])), 64);
}

#[test]
fn trivext_build() {
    let dir = TempDir::new().unwrap();
    let kp = write(&dir, "k.json", &kronecker());
    let o =
        heartforge(&["trivext-build", "--algebra", s(&kp), "--source-vertex", "1", "--check-presentation", "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert_eq!(v["dim_r"], 8);
    assert_eq!(v["all_facts_proven"], true);
    assert_eq!(v["presentation_check"]["presentation_dim"], 9);
    assert_eq!(v["presentation_check"]["matches"], false);
    assert_eq!(code(&heartforge(&["trivext-build", "--algebra", s(&kp), "--source-vertex", "2"])), 65);
    let a2 = write(
        &dir,
        "a2.json",
        &json!({"field": {"prime": 101}, "vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}),
    );
    let o = heartforge(&["trivext-build", "--algebra", s(&a2), "--source-vertex", "1"]);
    assert_eq!(code(&o), 65);
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypothesis failed"));
}

#[test]
fn reports_are_deterministic() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_heartforge"))
            .args(["examples-run", "8.2c", "--json"])
            .env("HEARTFORGE_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("7"), run("7"));
    assert_eq!(
        heartforge(&["examples-run", "8.2a", "--json"]).stdout,
        heartforge(&["examples-run", "8.2a", "--json"]).stdout
    );
}

#[test]
fn fields_agree_on_golden_examples() {
    for name in ["8.1", "8.2a", "8.2b", "8.2c", "8.3-kronecker"] {
        let computed = |field: &str| -> Vec<Value> {
            let v = stdout_json(&heartforge(&["examples-run", name, "--json", "--field", field]));
            v["checks"].as_array().unwrap().iter().map(|c| json!([c["quantity"], c["computed"], c["ok"]])).collect()
        };
        assert_eq!(computed("101"), computed("Q"), "{name}");
    }
}
