use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const MT_STAR: &str = r#"{"vertices":[{"id":"v1","color":"bullet"},{"id":"v2","color":"bullet"},{"id":"c","color":"circle"},{"id":"r","color":"bullet"}],"edges":[{"a":"v1","b":"c","k":1},{"a":"v2","b":"c","k":1},{"a":"c","b":"r","k":1}],"root":"r"}"#;
const CHAIN_21: &str = r#"{"vertices":[{"id":"v1","color":"bullet"},{"id":"v2","color":"bullet"},{"id":"v3","color":"bullet"}],"edges":[{"a":"v1","b":"v2","k":2},{"a":"v2","b":"v3","k":1}],"root":"v3"}"#;
const MIDDLE: &str = r#"{"vertices":[{"id":"v1","color":"bullet"},{"id":"rt","color":"bullet"},{"id":"v2","color":"bullet"}],"edges":[{"a":"v1","b":"rt","k":1},{"a":"rt","b":"v2","k":2}],"root":"rt"}"#;
const SINGLE: &str = r#"{"vertices":[{"id":"x","color":"bullet"}],"edges":[],"root":"x"}"#;
const ZERO_PATH: &str = r#"{"vertices":[{"id":"a","color":"bullet"},{"id":"b","color":"bullet"}],"edges":[{"a":"a","b":"b","k":0}],"root":"a"}"#;
const CIRCLE_LEAF: &str = r#"{"vertices":[{"id":"a","color":"bullet"},{"id":"u","color":"circle"}],"edges":[{"a":"a","b":"u","k":1}],"root":"a"}"#;

fn tree_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fmzv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, body).unwrap();
    path
}

fn fmzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmzv"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn reduce_outputs() {
    let o = fmzv(&["reduce", tree_file("mt", MT_STAR).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"sign\":1,\"terms\":[{\"index\":[1,2],\"coeff\":\"2\"}]}\n"
    );

    let o = fmzv(&["reduce", tree_file("chain", CHAIN_21).to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "{\"sign\":1,\"terms\":[{\"index\":[2,1],\"coeff\":\"1\"}]}\n"
    );

    let o = fmzv(&["reduce", tree_file("middle", MIDDLE).to_str().unwrap()]);
    assert_eq!(
        stdout(&o),
        "{\"sign\":-1,\"terms\":[{\"index\":[2,1],\"coeff\":\"1\"}]}\n"
    );

    let o = fmzv(&[
        "reduce",
        "--pretty",
        tree_file("mt", MT_STAR).to_str().unwrap(),
    ]);
    assert!(stdout(&o).contains("\n  \"sign\": 1"));
}

#[test]
fn validation_errors_exit_2() {
    let o = fmzv(&["reduce", tree_file("zero", ZERO_PATH).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotEssentiallyPositive"));

    let o = fmzv(&["eval", tree_file("leaf", CIRCLE_LEAF).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("CircleTerminal: vertex u"),
        "{}",
        stderr(&o)
    );

    let o = fmzv(&["eval", tree_file("garbage", "{not json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Parse"));

    let o = fmzv(&[
        "eval",
        "--primes",
        "2",
        tree_file("chain", CHAIN_21).to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("EvenPrime"));
}

#[test]
fn eval_outputs() {
    let chain = tree_file("chain", CHAIN_21);
    assert_eq!(
        stdout(&fmzv(&["eval", "--primes", "7", chain.to_str().unwrap()])),
        "{\"7\":4}\n"
    );
    let mt = tree_file("mt", MT_STAR);
    assert_eq!(
        stdout(&fmzv(&["eval", "--primes", "7", mt.to_str().unwrap()])),
        "{\"7\":6}\n"
    );
    let single = tree_file("single", SINGLE);
    assert_eq!(
        stdout(&fmzv(&[
            "eval",
            "--primes",
            "13,5",
            single.to_str().unwrap()
        ])),
        "{\"5\":1,\"13\":1}\n"
    );
}

#[test]
fn eval_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fmzv"))
        .args(["eval", "--primes", "7", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(CHAIN_21.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "{\"7\":4}\n");
}

#[test]
fn verify_outputs() {
    let o = fmzv(&["verify", tree_file("mt", MT_STAR).to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["primes"].as_array().unwrap().len(), 4);
    assert_eq!(
        report["primes"][1],
        serde_json::json!({"p":7,"lhs":6,"rhs":6,"pass":true})
    );

    let o = fmzv(&[
        "verify",
        "--primes",
        "7,11",
        tree_file("middle", MIDDLE).to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = fmzv(&[
        "verify",
        "--primes",
        "7",
        tree_file("chain", CHAIN_21).to_str().unwrap(),
    ]);
    assert_eq!(
        stdout(&o),
        "{\"pass\":true,\"primes\":[{\"p\":7,\"lhs\":4,\"rhs\":4,\"pass\":true}]}\n"
    );
}

#[test]
fn shuffle_commands() {
    assert_eq!(stdout(&fmzv(&["shuffle", "2", "2"])), "2·z2z2 + 4·z1z3\n");
    assert_eq!(
        stdout(&fmzv(&["shuffle", "2", "2", "--words"])),
        "2·yxyx + 4·yyxx\n"
    );
    assert_eq!(stdout(&fmzv(&["shuffle", "1", ""])), "1·z1\n");
    let o = fmzv(&["shuffle-relation", "1", "2", "--primes", "7,11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p\tlhs\trhs\tpass\n7\t3\t3\ttrue\n"));
    assert!(stdout(&o).ends_with("pass\n"));
}

#[test]
fn mt_eval_command() {
    assert_eq!(
        stdout(&fmzv(&["mt-eval", "1,1", "1", "--primes", "7"])),
        "{\"7\":6}\n"
    );
    assert_eq!(
        stdout(&fmzv(&["mt-eval", "1", "0", "--primes", "7"])),
        "{\"7\":0}\n"
    );
    assert_eq!(
        stdout(&fmzv(&["mt-eval", "1,2", "0", "--primes", "7"])),
        "{\"7\":3}\n"
    );
}

#[test]
fn corpus_command() {
    let o = fmzv(&["corpus", "--max-edges", "1", "--max-weight", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pairs 1\n"));
    let o = fmzv(&[
        "corpus",
        "--max-edges",
        "3",
        "--max-weight",
        "4",
        "--primes",
        "5,7",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s["failures"], serde_json::json!([]));
    assert_eq!(
        fmzv(&["corpus", "--max-weight", "11"]).status.code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let args = ["corpus", "--max-edges", "3", "--max-weight", "3", "--json"];
    assert_eq!(fmzv(&args).stdout, fmzv(&args).stdout);
    let mt = tree_file("mt", MT_STAR);
    let args = ["verify", mt.to_str().unwrap()];
    assert_eq!(fmzv(&args).stdout, fmzv(&args).stdout);
}
