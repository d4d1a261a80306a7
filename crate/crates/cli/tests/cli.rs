use std::io::Write;
use std::process::{Command, Output, Stdio};
use std::sync::Arc;

use twisted_sylow::{Field, Suzuki, SylowFactorization};

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_twisted-sylow"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// The report line without its timing field.
fn report(o: &Output) -> String {
    let line = stdout(o);
    line.trim_end().rsplit_once(" ms=").unwrap().0.to_string()
}

#[test]
fn verify_reports() {
    let o = run(
        &["suzuki", "--q", "8", "verify", "lemma1", "--exhaustive"],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o), "SUITE lemma1 q=8 cases=7 failures=0");

    let o = run(
        &["ree", "--q", "27", "verify", "lemma2", "--exhaustive"],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o), "SUITE lemma2 q=27 cases=26 failures=0");

    let o = run(
        &["suzuki", "--q", "8", "verify", "bruhat", "--exhaustive"],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o), "SUITE bruhat q=8 cases=29120 failures=0");

    let o = run(&["ree", "--q", "3", "verify", "closure"], "");
    assert_eq!(report(&o), "SUITE closure q=3 cases=1512 failures=0");

    let o = run(
        &[
            "ree", "--q", "27", "verify", "factor", "--sample", "200", "--seed", "5",
        ],
        "",
    );
    assert_eq!(report(&o), "SUITE factor q=27 cases=200 failures=0");
}

#[test]
fn enumerate_counts() {
    for (group, q, count) in [
        ("suzuki", "2", "20"),
        ("suzuki", "8", "29120"),
        ("ree", "3", "1512"),
    ] {
        let o = run(&[group, "--q", q, "enumerate", "--count-only"], "");
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), count);
    }
    let o = run(&["suzuki", "--q", "2", "enumerate"], "");
    assert_eq!(stdout(&o).lines().filter(|l| !l.is_empty()).count(), 20 * 4);
}

#[test]
fn oversize_requests_fail_fast() {
    let o = run(&["ree", "--q", "27", "enumerate", "--count-only"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("10073444472"), "{}", stderr(&o));
    let o = run(
        &["suzuki", "--q", "32", "verify", "factor", "--exhaustive"],
        "",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    for args in [
        &["suzuki", "--q", "8", "verify", "lemma3"][..],
        &[
            "suzuki",
            "--q",
            "8",
            "verify",
            "bruhat",
            "--exhaustive",
            "--sample",
            "3",
        ],
        &["suzuki", "--q", "9", "verify", "lemma1"],
        &["suzuki", "--q", "27", "verify", "lemma1"],
        &["ree", "--q", "3", "verify", "form"],
        &["ree", "--q", "3", "verify", "lemma1"],
        &["suzuki", "--q", "8", "sample"],
        &["klein", "--q", "8", "sample", "--sample", "1"],
        &[
            "suzuki",
            "--q",
            "8",
            "--field",
            "p=2 n=3 mod=1,0,0,1",
            "verify",
            "lemma1",
        ],
    ] {
        let o = run(args, "");
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn factor_identity_and_weyl() {
    let o = run(
        &["suzuki", "--q", "8", "factor"],
        "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("suzuki q=8\n"));
    assert!(text.ends_with("PRODUCT OK\n"));

    let field = Arc::new(Field::with_order(8).unwrap());
    let w = Suzuki::with_field(field.clone()).unwrap().weyl();
    let o = run(
        &["suzuki", "--q", "8", "factor", "--element", "-"],
        &w.to_text(),
    );
    assert_eq!(o.status.code(), Some(0));
    let (name, fac) = SylowFactorization::parse(&field, &stdout(&o)).unwrap();
    assert_eq!(name, "suzuki");
    assert_eq!(fac.product(), w);
    assert!(!fac.factors[3].is_identity() || !fac.factors[1].is_identity());
}

#[test]
fn factor_from_file_with_custom_field() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("ree_weyl.txt");
    let spec = "p=3 n=3 mod=1,0,2,1";
    let field = Arc::new(Field::new(spec.parse().unwrap()));
    let w = twisted_sylow::Ree::with_field(field.clone())
        .unwrap()
        .weyl();
    std::fs::write(&path, w.to_text()).unwrap();
    let o = run(
        &[
            "ree",
            "--q",
            "27",
            "--field",
            spec,
            "factor",
            "--element",
            path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (_, fac) = SylowFactorization::parse(&field, &stdout(&o)).unwrap();
    assert_eq!(fac.product(), w);
}

#[test]
fn factor_rejects_non_members() {
    let o = run(
        &["suzuki", "--q", "8", "factor"],
        "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 0\n",
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not in group"));

    let o = run(
        &["suzuki", "--q", "8", "factor"],
        "1 1 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    );
    assert_eq!(o.status.code(), Some(1));

    for bad in [
        "1 0 0\n",
        "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 9\n",
        "a b c d\n",
    ] {
        let o = run(&["suzuki", "--q", "8", "factor"], bad);
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
    }
    let o = run(
        &[
            "suzuki",
            "--q",
            "8",
            "factor",
            "--element",
            "/nonexistent/file",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_is_deterministic() {
    let o = run(&["suzuki", "--q", "8", "sample", "--sample", "0"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());

    let args = [
        "ree", "--q", "27", "sample", "--sample", "300", "--seed", "42",
    ];
    let one = run_env(&args, "", &[("TWISTED_SYLOW_WORKERS", "1")]);
    let four = run_env(&args, "", &[("TWISTED_SYLOW_WORKERS", "4")]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let text = stdout(&one);
    assert_eq!(text.matches("PRODUCT OK").count(), 300);
    assert!(!text.contains("FAILED"));

    let other = run(
        &[
            "ree", "--q", "27", "sample", "--sample", "300", "--seed", "43",
        ],
        "",
    );
    assert_ne!(one.stdout, other.stdout);

    let o = run_env(&args, "", &[("TWISTED_SYLOW_WORKERS", "many")]);
    assert_eq!(o.status.code(), Some(2));
}
