use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn bdx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdx")).args(args).output().expect("spawn bdx")
}

fn ok(args: &[&str]) -> String {
    let out = bdx(args);
    assert!(out.status.success(), "bdx {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, bytes: &[u8]) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, bytes).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn field<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .trim_end()
        .split('\t')
        .find_map(|kv| kv.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in {report:?}"))
}

#[test]
fn worked_example_end_to_end() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "s.txt", b"aacaaacgcta\n");
    let pats = write(&dir, "p.txt", b"acaaa\nttttt\naca\n");
    let idx = dir.path().join("s.bdx");
    let report =
        ok(&["build", "-t", s(&text), "--ell", "5", "--r", "1", "--kind", "lex", "--block", "10", "-o", s(&idx)]);
    assert_eq!(field(&report, "n"), "11");
    assert_eq!(field(&report, "anchors"), "4");
    assert_eq!(field(&report, "kind"), "lex");
    let out = ok(&["query", "-t", s(&text), "-i", s(&idx), "-p", s(&pats)]);
    assert_eq!(out, "1\t1\t2\n2\t0\t\n3\tERR pattern-too-short\n");

    let csv =
        ok(&["bench", "-t", s(&text), "--ell", "5", "--r", "1", "--kind", "lex", "--block", "10", "-p", s(&pats)]);
    let lines: Vec<&str> = csv.lines().collect();
    let header: Vec<&str> = lines[0].split(',').collect();
    let row: Vec<&str> = lines[1].split(',').collect();
    let col = |name: &str| row[header.iter().position(|h| *h == name).unwrap()];
    assert_eq!(col("anchors"), "4");
    let total: f64 = col("query_total_ns").parse().unwrap();
    let count: f64 = col("patterns").parse().unwrap();
    let mean: f64 = col("query_mean_ns").parse().unwrap();
    assert_eq!(count, 2.0);
    assert!((mean - total / count).abs() <= 0.05 + 1e-9 * total);
}

#[test]
fn builds_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let body: Vec<u8> = (0..30_000).map(|_| b"acgt"[rng.gen_range(0..4)]).collect();
    let text = write(&dir, "t.txt", &body);
    let mut files = Vec::new();
    for (i, threads) in ["1", "1", "4"].iter().enumerate() {
        let idx = dir.path().join(format!("{i}.bdx"));
        ok(&[
            "build",
            "-t",
            s(&text),
            "--ell",
            "32",
            "--seed",
            "9",
            "--block",
            "1000",
            "--threads",
            threads,
            "-o",
            s(&idx),
        ]);
        files.push(std::fs::read(&idx).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
}

#[test]
fn index_answers_match_scan() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let body: Vec<u8> = (0..20_000).map(|_| b"acgt"[rng.gen_range(0..4)]).collect();
    let text = write(&dir, "t.txt", &body);
    let mut pats = ok(&["patgen", "-t", s(&text), "-l", "16", "-c", "600", "--seed", "3"]);
    pats.push_str(&ok(&["patgen", "-t", s(&text), "-l", "40", "-c", "300", "--seed", "4"]));
    for _ in 0..100 {
        let p: String = (0..rng.gen_range(16..30)).map(|_| b"acgt"[rng.gen_range(0..4)] as char).collect();
        pats.push_str(&p);
        pats.push('\n');
    }
    let pats = write(&dir, "p.txt", pats.as_bytes());
    for (builder, kind) in [("sparse", "ran"), ("full", "lex")] {
        let idx = dir.path().join(format!("{builder}.bdx"));
        ok(&[
            "build",
            "-t",
            s(&text),
            "--ell",
            "16",
            "--kind",
            kind,
            "--builder",
            builder,
            "--variant",
            "grid",
            "-o",
            s(&idx),
        ]);
        let oracle = ok(&["query", "-t", s(&text), "-i", s(&idx), "-p", s(&pats), "--oracle"]);
        assert_eq!(oracle.lines().count(), 1000);
        for variant in ["bidir", "grid"] {
            let got = ok(&["query", "-t", s(&text), "-i", s(&idx), "-p", s(&pats), "--variant", variant]);
            assert_eq!(got, oracle, "{builder}/{kind}/{variant}");
        }
    }
}

#[test]
fn generated_patterns_occur_and_replay() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "t.txt", b"the quick brown fox\njumps over the lazy dog\n");
    let a = ok(&["patgen", "-t", s(&text), "-l", "6", "-c", "50", "--seed", "8"]);
    let b = ok(&["patgen", "-t", s(&text), "-l", "6", "-c", "50", "--seed", "8"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 50);
    let body = std::fs::read_to_string(&text).unwrap();
    for p in a.lines() {
        assert_eq!(p.len(), 6);
        assert!(body.contains(p));
    }
}

#[test]
fn distinct_patterns_give_up_on_unary_text() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "u.txt", &[b'a'; 1000]);
    let out = bdx(&["patgen", "-t", s(&text), "-l", "10", "-c", "500000", "--distinct"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot generate enough distinct patterns"));
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "s.txt", b"aacaaacgcta");
    let other = write(&dir, "o.txt", b"aacaaacgctaa");
    let pats = write(&dir, "p.txt", b"acaaa\n");
    let idx = dir.path().join("s.bdx");

    let out = bdx(&["build", "-t", s(&text), "--ell", "20", "-o", s(&idx)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("text shorter than window"));

    assert_eq!(bdx(&["build", "-t", s(&text), "--ell", "5", "--r", "5", "-o", s(&idx)]).status.code(), Some(1));
    assert_eq!(bdx(&["build", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(bdx(&["build", "-t", "/nonexistent", "--ell", "5", "-o", s(&idx)]).status.code(), Some(2));

    ok(&["build", "-t", s(&text), "--ell", "5", "--block", "10", "-o", s(&idx)]);
    assert_eq!(bdx(&["query", "-t", s(&other), "-i", s(&idx), "-p", s(&pats)]).status.code(), Some(2));
    assert_eq!(
        bdx(&["query", "-t", s(&text), "-i", s(&idx), "-p", s(&pats), "--variant", "grid"]).status.code(),
        Some(2)
    );
    let garbage = write(&dir, "g.bdx", b"not an index");
    assert_eq!(bdx(&["query", "-t", s(&text), "-i", s(&garbage), "-p", s(&pats)]).status.code(), Some(2));
}

#[test]
fn trailing_newline_flag() {
    let dir = TempDir::new().unwrap();
    let text = write(&dir, "s.txt", b"aacaaacgcta\n");
    let idx = dir.path().join("s.bdx");
    let kept = ok(&[
        "build",
        "-t",
        s(&text),
        "--ell",
        "5",
        "--block",
        "10",
        "--strip-trailing-newline",
        "false",
        "-o",
        s(&idx),
    ]);
    assert_eq!(field(&kept, "n"), "12");
    let stripped = ok(&["build", "-t", s(&text), "--ell", "5", "--block", "10", "-o", s(&idx)]);
    assert_eq!(field(&stripped, "n"), "11");
    let stats = ok(&["stats", "-i", s(&idx)]);
    assert_eq!(field(&stats, "n"), "11");
}
