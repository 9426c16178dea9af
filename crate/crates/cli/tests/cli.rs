use std::process::{Command, Output};

use serde_json::Value;

fn kroncoeff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kroncoeff"))
        .args(args)
        .env_remove("KRONCOEFF_CHAR_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = kroncoeff(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(stdout(&out).trim()).unwrap()
}

#[test]
fn documented_examples() {
    let out = kroncoeff(&["kron", "--lam", "2,1", "--mu", "2,1", "--nu", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1\n");

    let out = kroncoeff(&["char", "--lam", "1,1,1", "--nu", "3"]);
    assert_eq!(stdout(&out), "1\n");

    let out = kroncoeff(&[
        "char", "--lam", "4,2", "--nu", "2,2,1,1", "--method", "two-row",
    ]);
    let mn = kroncoeff(&["char", "--lam", "4,2", "--nu", "2,2,1,1"]);
    assert_eq!(stdout(&out), stdout(&mn));

    let out = kroncoeff(&["tables", "--a", "1,1", "--b", "1,1", "--c", "1,1"]);
    assert_eq!(stdout(&out), "4\n");

    let out = kroncoeff(&[
        "lr",
        "--lam",
        "2,1",
        "--mu",
        "1",
        "--nu",
        "1,1",
        "--method",
        "reduction",
    ]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn reduce_prints_certificate() {
    let out = kroncoeff(&[
        "reduce",
        "--lam",
        "19,15,12,5,1",
        "--mu",
        "16,16,14,3,3",
        "--nu",
        "49,2,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("I = {3,6}"), "{text}");
    assert!(text.contains("omega = 19,16,14,5,3"), "{text}");
    assert!(text.contains("rho = 16,15,12,3,1"), "{text}");

    let v = json(&["reduce", "--lam", "5,1", "--mu", "3,3", "--nu", "5,1"]);
    assert_eq!(v["result"], "0");
    assert_eq!(v["zero_row"], 1);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["kron", "--lam", "1,2", "--mu", "3", "--nu", "3"],
        vec!["kron", "--lam", "x", "--mu", "3", "--nu", "3"],
        vec!["kron", "--lam", "2,1", "--mu", "2", "--nu", "3"],
        vec!["kron", "--lam", "2,1"],
        vec!["frobnicate"],
        vec!["hook", "--lam", "2,1", "--mu", "2,1", "--k", "3"],
        vec![
            "hook", "--lam", "3,1", "--mu", "3,1", "--k", "1", "--max-n", "3",
        ],
        vec!["verify", "--max-n", "99"],
        vec!["tables", "--a", "1,q", "--b", "1", "--c", "1"],
    ] {
        let out = kroncoeff(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(kroncoeff(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_round_trips() {
    let cases: [&[&str]; 4] = [
        &["kron", "--lam", "3,2,1", "--mu", "3,2,1", "--nu", "4,1,1"],
        &[
            "kron", "--lam", "4,2", "--mu", "3,3", "--nu", "2,2,1,1", "--method", "tables",
        ],
        &[
            "kron",
            "--lam",
            "4,2",
            "--mu",
            "3,3",
            "--nu",
            "2,2,1,1",
            "--conjugate",
        ],
        &["lr", "--lam", "3,2,1", "--mu", "2,1", "--nu", "2,1"],
    ];
    for args in cases {
        let first = json(args);
        for key in ["input", "result", "method", "millis"] {
            assert!(first.get(key).is_some(), "missing {key}");
        }
        let input = &first["input"];
        let mut again: Vec<String> = vec![args[0].to_string()];
        for key in ["lam", "mu", "nu"] {
            again.push(format!("--{key}"));
            again.push(input[key].as_str().unwrap().to_string());
        }
        if input.get("conjugate").is_some() {
            again.push("--conjugate".into());
        }
        let again: Vec<&str> = again.iter().map(String::as_str).collect();
        assert_eq!(json(&again)["result"], first["result"]);
    }
}

#[test]
fn gapp_parts_are_reported() {
    let v = json(&[
        "kron", "--lam", "4,1", "--mu", "4,1", "--nu", "4,1", "--gapp",
    ]);
    let pos: u64 = v["gapp"]["pos"].as_str().unwrap().parse().unwrap();
    let neg: u64 = v["gapp"]["neg"].as_str().unwrap().parse().unwrap();
    assert_eq!((pos - neg).to_string(), v["result"].as_str().unwrap());
}

#[test]
fn hook_trace_lists_tableaux() {
    let out = kroncoeff(&[
        "hook", "--lam", "3,2,1", "--mu", "3,2,1", "--k", "2", "--trace",
    ]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    let count: usize = lines.last().unwrap().parse().unwrap();
    assert_eq!(lines.len(), count + 1);
    assert!(lines[..count].iter().all(|l| l.contains(" / ")));
    let kron = kroncoeff(&["kron", "--lam", "3,2,1", "--mu", "3,2,1", "--nu", "4,1,1"]);
    assert_eq!(stdout(&kron).trim(), count.to_string());
}

#[test]
fn output_independent_of_threads() {
    let cases: [&[&str]; 3] = [
        &[
            "kron", "--lam", "5,3,2", "--mu", "4,4,2", "--nu", "6,2,1,1", "--method", "tables",
        ],
        &[
            "hook", "--lam", "4,3,2", "--mu", "3,3,2,1", "--k", "3", "--trace",
        ],
        &["verify", "--max-n", "3"],
    ];
    for args in cases {
        let one: Vec<&str> = [&["--threads", "1"], args].concat();
        let many: Vec<&str> = [&["--threads", "4"], args].concat();
        let (a, b) = (kroncoeff(&one), kroncoeff(&many));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_passes_at_five() {
    let v = json(&["verify", "--max-n", "5"]);
    assert_eq!(v["result"], "pass");
    assert!(v["checks"].as_u64().unwrap() > 10_000);
    let v = json(&["verify", "--max-n", "0"]);
    assert_eq!(v["result"], "pass");
}

#[test]
fn character_cache_file_from_environment() {
    let dir = std::env::temp_dir().join(format!("kroncoeff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("chars.txt");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_kroncoeff"))
            .args([
                "kron", "--lam", "3,2,1", "--mu", "4,2", "--nu", "3,3", "--method", "oracle",
            ])
            .env("KRONCOEFF_CHAR_CACHE", &file)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    let records = std::fs::read_to_string(&file).unwrap();
    assert!(records.lines().count() > 0);
    assert!(records.lines().all(|l| l.split('|').count() == 3));
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
