use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const S3: &str = r#"{"degree": 3, "generators": [[1,0,2],[1,2,0]]}"#;
const Z2: &str = r#"{"degree": 2, "generators": [[1,0]]}"#;
const TRIVIAL: &str = r#"{"degree": 1, "generators": []}"#;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_quasik"))
            .args(args)
            .env("QUASIK_CACHE", self.dir.path().join("cache"))
            .env_remove("QUASIK_MAX_ORDER")
            .output()
            .unwrap()
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classes_of_s3_and_trivial() {
    let f = Fixture::new();
    let g = f.file("s3.json", S3);
    let o = f.run(&["classes", "-g", s(&g), "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["classes"].as_array().unwrap().len(), 3);
    let t = f.file("t.json", TRIVIAL);
    let o = f.run(&["classes", "-g", s(&t), "--format", "json"]);
    assert_eq!(json(&o)["count"], 1);
}

#[test]
fn commuting_pairs_of_s3() {
    let f = Fixture::new();
    let g = f.file("s3.json", S3);
    let o = f.run(&["tuples", "-g", s(&g), "-n", "2", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["tuples"].as_array().unwrap().len(), 8);
}

#[test]
fn qk_ranks_and_degrees() {
    let f = Fixture::new();
    let g = f.file("s3.json", S3);
    let o = f.run(&["qk", "-g", s(&g), "-n", "1"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["total_rank"], 8);

    let t = f.file("t.json", TRIVIAL);
    assert_eq!(
        json(&f.run(&["qk", "-g", s(&t), "-n", "3"]))["total_rank"],
        1
    );

    let z2 = f.file("z2.json", Z2);
    let text = stdout(&f.run(&["qk", "-g", s(&z2), "-n", "1"]));
    assert!(text.contains("\"1/2\""));

    let table = stdout(&f.run(&["qk", "-g", s(&g), "-n", "1", "--format", "table"]));
    assert!(table.contains("total rank 8"));
}

#[test]
fn qk_with_gset() {
    let f = Fixture::new();
    let g = f.file("s3.json", S3);
    let x = f.file(
        "x.json",
        r#"{"points": 3, "generator_action": [[1,0,2],[1,2,0]]}"#,
    );
    let o = f.run(&["qk", "-g", s(&g), "-x", s(&x), "-n", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    let total: usize = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["basis"].as_array().unwrap().len())
        .sum();
    assert_eq!(v["total_rank"], total);
}

#[test]
fn output_is_deterministic() {
    let f = Fixture::new();
    let g = f.file("s3.json", S3);
    let a = f.run(&["qk", "-g", s(&g), "-n", "2"]);
    let b = f.run(&["qk", "-g", s(&g), "-n", "2"]);
    assert!(f.dir.path().join("cache").is_dir());
    assert_eq!(a.stdout, b.stdout);
    let a = f.run(&["export-tate", "-g", s(&g), "-n", "1"]);
    let b = f.run(&["export-tate", "-g", s(&g), "-n", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("q^{1/3}"));
}

#[test]
fn input_errors_name_the_field() {
    let f = Fixture::new();
    let bad = f.file(
        "bad.json",
        r#"{"degree": 3, "generators": [[1,0,2],[0,0,1]]}"#,
    );
    let o = f.run(&["classes", "-g", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("generators[1]"));

    let g = f.file("s3.json", S3);
    let x = f.file("x.json", r#"{"points": 2, "generator_action": [[1,0]]}"#);
    let o = f.run(&["qk", "-g", s(&g), "-x", s(&x)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("generator_action"));

    let o = f.run(&["classes", "-g", s(&f.dir.path().join("missing.json"))]);
    assert_eq!(o.status.code(), Some(2));
    let o = f.run(&["qk", "-g", s(&g), "-n", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = f.run(&["verify", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_overflow_exits_3() {
    let f = Fixture::new();
    let g = f.file("s3.json", S3);
    let o = Command::new(env!("CARGO_BIN_EXE_quasik"))
        .args(["classes", "-g", s(&g)])
        .env("QUASIK_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_on_user_corpus() {
    let f = Fixture::new();
    let dir = f.dir.path().join("corpus");
    std::fs::create_dir(&dir).unwrap();
    std::fs::write(dir.join("Z2.json"), Z2).unwrap();
    let o = f.run(&["verify", "kunneth", "--corpus", s(&dir)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text
        .contains("PASS [kunneth] Z2 x Z2 n=1: expected (16, true, true) actual (16, true, true)"));

    let o = f.run(&[
        "verify",
        "change-of-group",
        "--corpus",
        s(&f.file(
            "s3s.json",
            r#"[{"name": "S3", "degree": 3, "generators": [[1,0,2],[1,2,0]]}]"#,
        )),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .contains("S3 H#1(|H|=2) X=pt n=1: expected (4, true, true) actual (4, true, true)"));

    let t = f.file(
        "triv.json",
        r#"[{"name": "trivial", "degree": 1, "generators": []}]"#,
    );
    let o = f.run(&["verify", "all", "--corpus", s(&t), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}
