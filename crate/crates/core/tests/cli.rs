use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_weightnet"));
    c.env_remove("RUST_LOG");
    c
}

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn weightnet");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(data) = stdin {
            pipe.write_all(data).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&[u8]>) -> String {
    let out = run(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(dir: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(dir)
}

#[test]
fn binomial_rewrite_verify_pipeline() {
    let original = ok(&["gen-binomial", "10", "5", "--opt"], None);
    assert!(original.starts_with("asp 1 0 0\n"));
    let rewritten = ok(&["rewrite", "--depth", "4"], Some(original.as_bytes()));
    assert_ne!(rewritten, original);

    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("orig.aspif");
    let b = dir.path().join("rewritten.aspif");
    fs::write(&a, &original).unwrap();
    fs::write(&b, &rewritten).unwrap();
    let report = ok(&["verify", b.to_str().unwrap(), "--against", a.to_str().unwrap()], None);
    assert_eq!(report, "ok answer_sets=638 optimum=Some([5])\n");

    let piped = ok(&["verify"], Some(rewritten.as_bytes()));
    assert_eq!(piped.lines().count(), 30);
    assert!(piped
        .lines()
        .all(|l| l.ends_with("ok answer_sets=638 optimum=Some([5])")));
}

#[test]
fn pch_summary() {
    assert_eq!(
        ok(&["pch", "10", "5", "--network", "none"], None),
        "m=252 complete=true\n"
    );
    assert_eq!(ok(&["pch", "8", "4", "--shuffle", "3"], None), "m=70 complete=true\n");
    let full = ok(&["pch", "8", "4", "--network", "full"], None);
    let m: usize = full
        .trim()
        .strip_prefix("m=")
        .unwrap()
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(m <= 5, "{full}");
    let trace = ok(&["pch", "4", "2", "--trace"], None);
    assert_eq!(trace.lines().count(), 7);
    assert_eq!(trace.lines().last(), Some("m=6 complete=true"));
}

#[test]
fn depth_zero_is_byte_identical() {
    for entry in fs::read_dir(golden("aspif")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read(&path).unwrap();
        let from_file = ok(&["rewrite", "--depth", "0", path.to_str().unwrap()], None);
        assert_eq!(from_file.as_bytes(), &text[..], "{}", path.display());
        let from_stdin = ok(&["rewrite", "--depth", "0", "-"], Some(&text));
        assert_eq!(from_stdin.as_bytes(), &text[..]);
    }
}

#[test]
fn rewrite_is_deterministic_and_clean() {
    let input = fs::read(golden("aspif").join("24_mixed.aspif")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let args = ["rewrite", "--sparseness", "inf", "--report", report.to_str().unwrap()];
    let first = run(&args, Some(&input));
    let second = run(&args, Some(&input));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(first.stderr.is_empty());
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.starts_with("asp 1 0 0\n") && text.ends_with("\n0\n"));
    let report = fs::read_to_string(report).unwrap();
    assert!(report.contains("priority=0 inputs=4"), "{report}");
}

#[test]
fn sorter_stats() {
    assert_eq!(ok(&["gen-sorter", "8"], None), "width=8 depth=6 size=19\n");
    assert_eq!(
        ok(&["gen-sorter", "8", "--depth", "1"], None),
        "width=8 depth=1 size=4\n"
    );
    let diagram = ok(&["gen-sorter", "4", "--diagram"], None);
    assert_eq!(
        diagram,
        fs::read_to_string(golden("render").join("sorter4.txt")).unwrap()
    );
}

#[test]
fn render_goldens() {
    let cases: [(&str, &[&str]); 5] = [
        ("sorter4.txt", &["render", "4"]),
        ("sorter4_weights.txt", &["render", "4", "--weights", "40,50,90,70"]),
        (
            "sorter4_unpropagated.txt",
            &["render", "4", "--weights", "40,50,90,70", "--no-propagate"],
        ),
        (
            "sorter5_sparse2.txt",
            &["render", "5", "--weights", "20,90,80,30,70", "--sparseness", "2"],
        ),
        (
            "sorter6_depth3_inf.txt",
            &[
                "render",
                "6",
                "--depth",
                "3",
                "--weights",
                "1,2,3,4,5,6",
                "--sparseness",
                "inf",
            ],
        ),
    ];
    for (file, args) in cases {
        let expected = fs::read_to_string(golden("render").join(file)).unwrap();
        assert_eq!(ok(args, None), expected, "{file}");
    }
}

#[test]
fn random_suite_summary() {
    let out = ok(&["verify", "--count", "5", "--seed", "7", "--jobs", "2"], Some(b""));
    assert_eq!(out, "programs=5 checks=150 failures=0\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["rewrite", "--sparseness", "0"], Some(b"asp 1 0 0\n0\n"))
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"], None).status.code(), Some(2));
    let bad = run(&["rewrite"], Some(b"not aspif\n"));
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    assert_eq!(run(&["rewrite", "/nonexistent/file"], None).status.code(), Some(2));
    assert_eq!(run(&["render", "4", "--weights", "1,2"], None).status.code(), Some(2));
    assert_eq!(
        run(&["pch", "4", "2", "--network", "deep"], None).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.aspif");
    let b = dir.path().join("b.aspif");
    fs::write(&a, "asp 1 0 0\n1 1 2 1 2 0 0\n2 0 2 1 40 2 70\n0\n").unwrap();
    fs::write(&b, "asp 1 0 0\n1 1 2 1 2 0 0\n2 0 2 1 40 2 71\n0\n").unwrap();
    let out = run(&["verify", b.to_str().unwrap(), "--against", a.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL"));
}
