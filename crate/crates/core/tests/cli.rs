use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taufact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["check", "Z/12", "tau_z", "bfr"]).status.code(), Some(1));
    assert_eq!(run(&["check", "Z/6", "tau_z", "bfr"]).status.code(), Some(0));
    assert_eq!(run(&["info", "Q/5"]).status.code(), Some(2));
    assert_eq!(run(&["check", "Z/6", "nonsense", "bfr"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "Z/30", "tau_z", "7"]).status.code(), Some(3));
    assert_eq!(run(&["classify", "Z/30", "tau_z", "31"]).status.code(), Some(3));
    assert_eq!(run(&["check", "Z/6", "subset:5", "bfr"]).status.code(), Some(3));
}

#[test]
fn info_reports_presimplifiable() {
    assert!(stdout(&run(&["info", "Z/4"])).contains("presimplifiable: true"));
    assert!(stdout(&run(&["info", "Z/6"])).contains("presimplifiable: false"));
    assert!(stdout(&run(&["info", "GF(5)"])).contains("domain: true"));
}

#[test]
fn classify_examples() {
    let out = stdout(&run(&["classify", "Z/6", "full", "2"]));
    assert!(out.starts_with("2: irreducible yes, strongly yes, m yes, very strongly no"));
    let out = stdout(&run(&["classify", "Z/4", "tau_z", "2"]));
    assert!(out.starts_with("2: irreducible yes, strongly yes, m yes, very strongly yes"));
}

#[test]
fn bfr_witness_and_factorizations() {
    let out = stdout(&run(&["check", "Z/12", "tau_z", "bfr"]));
    assert!(out.contains("witness: 0 = 6·6 = 6·6·6"), "{out}");
    let out = stdout(&run(&["factorizations", "Z/30", "tau_z", "0", "--max-len", "3"]));
    assert!(out.lines().any(|l| l == "0 = 6·10·15"), "{out}");
}

#[test]
fn json_lines_parse() {
    for args in [
        vec!["--json", "info", "GF(2) x Z/4"],
        vec!["--json", "check", "Z/30", "tau_z", "combinable"],
        vec!["--json", "graph", "Z/12"],
        vec!["--json", "classify", "Z/9", "tau_z_delta"],
        vec!["--json", "corpus", "Z/2..Z/8", "tau_z"],
    ] {
        let out = stdout(&run(&args));
        let lines: Vec<&str> = out.lines().collect();
        assert!(lines.len() >= 2);
        for line in &lines {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["command"], args[1]);
            assert!(v["kind"].is_string());
        }
        let last: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
        assert_eq!(last["kind"], "exit");
    }
}

#[test]
fn dot_is_deterministic() {
    let a = stdout(&run(&["graph", "Z/30", "--dot"]));
    let b = stdout(&run(&["graph", "Z/30", "--dot"]));
    assert_eq!(a, b);
    assert!(a.starts_with("// clique number 3\ngraph zero_divisors {"));
    let q = stdout(&run(&["graph", "Z/12", "--mode", "quotient", "--dot"]));
    assert!(q.contains("\"[2]\" -- \"[6]\""), "{q}");
}

#[test]
fn verify_paper_and_fault_injection() {
    let ok = run(&["verify-paper"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(!stdout(&ok).contains("FAIL"));

    let bad = run(&["verify-paper", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    let out = stdout(&bad);
    assert!(out.lines().any(|l| l.starts_with("FAIL [tau_z atoms]")), "{out}");

    let json = stdout(&run(&["--json", "verify-paper"]));
    let facts = json.lines().filter(|l| l.contains("\"kind\":\"fact\"")).count();
    assert!(facts > 50);
}

#[test]
fn corpus_reports_violations() {
    // Z/6 with τ_z is clean apart from the arrows into very strongly atomic
    let out = run(&["corpus", "Z/6", "tau_z", "--jobs", "2"]);
    let text = stdout(&out);
    assert!(text.lines().all(|l| !l.starts_with("violation") || l.contains("very_strongly_atomic")), "{text}");
    assert!(text.contains("1 rings"));
    let out = run(&["corpus", "Z/5..Z/7", "full,empty"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(run(&["corpus", "Z/9..Z/2"]).status.code(), Some(2));
}

#[test]
fn oversized_index_falls_back_to_bounded_verdicts() {
    // 30 pairwise related letters overflow the exact state sweep
    let out = run(&["check", "GF(2) x GF(2) x GF(2) x GF(2) x GF(2)", "full", "atomic"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("verified_up_to(6)"));
}
