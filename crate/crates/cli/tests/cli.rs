use std::fs;
use std::path::Path;
use std::process::Command;

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn clopen(args: &[&str], dir: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_clopen"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn workdir() -> TempDir {
    let dir = TempDir::new().unwrap();
    // {a}⁺{b}⁺
    fs::write(
        dir.path().join("ab-concat.aut"),
        "alphabet: a b\nstates: s x y d\ninitial: s\nfinals: y\ns a x\ns b d\nx a x\nx b y\ny a d\ny b y\nd a d\nd b d\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("sigma-star.aut"),
        "alphabet: a b\nstates: q\ninitial: q\nfinals: q\nq a q\nq b q\n",
    )
    .unwrap();
    fs::write(
        dir.path().join("majority.lang"),
        "# words with fewer a than b, plus eps\nalphabet: a b\n(union (finite eps)\n       (freq a < 1/2))\n",
    )
    .unwrap();
    fs::write(dir.path().join("words.txt"), "a\na.a\na.b\na.b.a.b\nb\n").unwrap();
    dir
}

#[test]
fn check_reports_certificate() {
    let dir = workdir();
    let r = clopen(&["check", "ab-concat.aut", "--property", "pos-closed"], dir.path());
    assert_eq!((r.code, r.stdout.as_str()), (1, "FAIL u=a.b v=a.b uv=a.b.a.b\n"));
    let r = clopen(&["check", "sigma-star.aut", "--property", "pos-closed"], dir.path());
    assert_eq!((r.code, r.stdout.as_str()), (0, "OK\n"));
    let r = clopen(&["check", "sigma-star.aut", "--property", "clopen-kleene"], dir.path());
    assert_eq!(r.code, 1);
}

#[test]
fn nfa_flag_agrees_with_determinization() {
    let dir = workdir();
    for property in ["pos-closed", "pos-open"] {
        let direct = clopen(&["check", "ab-concat.aut", "--nfa", "--property", property], dir.path());
        let plain = clopen(&["check", "ab-concat.aut", "--property", property], dir.path());
        assert_eq!(direct.code, plain.code, "{property}");
    }
}

#[test]
fn witness_file_round_trips_through_check() {
    let dir = workdir();
    let r = clopen(&["witness", "2", "--out", "w2.aut"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = clopen(&["check", "w2.aut", "--property", "pos-closed"], dir.path());
    assert_eq!(r.code, 1);
    let line = r.stdout.lines().next().unwrap();
    let uv = line.split("uv=").nth(1).unwrap();
    assert_eq!(uv.split('.').count(), 10);

    let r = clopen(&["witness", "5", "--which", "mprime", "--out", "w5.aut"], dir.path());
    assert_eq!(r.code, 0);
    let text = fs::read_to_string(dir.path().join("w5.aut")).unwrap();
    let states = text.lines().find_map(|l| l.strip_prefix("states:")).unwrap();
    assert_eq!(states.split_whitespace().count(), 15);
}

#[test]
fn separate_modes() {
    let dir = workdir();
    let r = clopen(&["separate", "a", "b"], dir.path());
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("(sig+ a)"));

    let r = clopen(&["separate", "a.b", "b.a", "--mode", "clopen"], dir.path());
    assert_eq!(
        r.stdout,
        "(union (inter (image 2 (sig+ <a.b>)) (freq a = 1/2)) (freq a < 1/2))\n\
         block-descent u=a.b v=b.a symbol=a lambda=1/2 n=2\n\
         \x20 disjoint-alphabets u=<a.b> v=<b.a> gamma={<a.b>}\n"
    );

    let r = clopen(&["separate", "a.b", "a.b.a.b"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("COMMUTE\n"));

    let r = clopen(
        &["separate", "a.b", "a", "--mode", "open", "--alphabet", "a,b"],
        dir.path(),
    );
    assert_eq!((r.code, r.stdout.as_str()), (0, "{b, a.b, b.a, b.b}\n"));
    let r = clopen(&["separate", "a.a", "a", "--mode", "open"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("POWER\n"));

    let r = clopen(&["separate", "a.a.b", "a.b", "--mode", "distinguish"], dir.path());
    assert_eq!(r.stdout, "{eps, a, a.b}\ncontains v\n");
    let r = clopen(&["separate", "a.b", "a.b", "--mode", "distinguish"], dir.path());
    assert_eq!(r.code, 2);

    let r = clopen(&["separate", "a.b", "b.a", "--mode", "pair"], dir.path());
    assert_eq!(r.stdout, "L = {b, a.b, b.b}\nM = {a, a.a, b.a}\n");
}

#[test]
fn components_group_by_root() {
    let dir = workdir();
    let r = clopen(&["components", "words.txt"], dir.path());
    assert_eq!((r.code, r.stdout.as_str()), (0, "a a.a\na.b a.b.a.b\nb\n"));
}

#[test]
fn oracle_labels_bounds() {
    let dir = workdir();
    let r = clopen(
        &["oracle", "majority.lang", "--check", "closed", "--max-len", "8"],
        dir.path(),
    );
    assert_eq!((r.code, r.stdout.as_str()), (0, "OK(bounded 8)\n"));
    fs::write(dir.path().join("eq.lang"), "alphabet: a b\n(freq a = 1/2)").unwrap();
    let r = clopen(&["oracle", "eq.lang", "--check", "open", "--max-len", "6"], dir.path());
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("FAIL(bounded 6)"), "{}", r.stdout);
}

#[test]
fn laws_are_deterministic() {
    let dir = workdir();
    let args = ["laws", "--suite", "T1a", "--trials", "20", "--seed", "4"];
    let first = clopen(&args, dir.path());
    let second = clopen(&args, dir.path());
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(first.stdout.starts_with("suite=T1a seed=4 requested=20 qualifying=20"));
}

#[test]
fn interior_writes_an_open_automaton() {
    let dir = workdir();
    let r = clopen(&["interior", "ab-concat.aut", "--out", "int.aut"], dir.path());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = clopen(&["check", "int.aut", "--property", "pos-open"], dir.path());
    assert_eq!(r.code, 0);
}

#[test]
fn input_errors_exit_2() {
    let dir = workdir();
    fs::write(dir.path().join("bad.aut"), "alphabet: a\nstates: q\ninitial: nowhere\n").unwrap();
    for args in [
        &["check", "bad.aut"][..],
        &["check", "missing.aut"],
        &["check", "sigma-star.aut", "--budget", "0"],
        &["check", "sigma-star.aut", "--frobnicate"],
        &["separate", "a", "b", "--alphabet", "a"],
        &["laws", "--suite", "T99"],
        &["check", "ab-concat.aut", "--nfa", "--budget", "2"],
    ] {
        let r = clopen(args, dir.path());
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
    }
}
