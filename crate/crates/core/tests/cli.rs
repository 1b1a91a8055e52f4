use std::fs;
use std::path::Path;

use srtk::cli::run_with;
use tempfile::TempDir;

const TABLE1_IOB2: &str = include_str!("data/table1_iob2.conll");
const TABLE1_IOBES: &str = include_str!("data/table1_iobes.conll");

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn srtk(args: &[&str]) -> Run {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("srtk").chain(args.iter().copied());
    let code = run_with(argv, &mut stdout, &mut stderr);
    Run {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

fn read(p: impl AsRef<Path>) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn convert_iob2_to_iobes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "in.conll", TABLE1_IOB2);
    let out = path(&dir, "out.conll");
    let run = srtk(&["convert", "--from", "iob2", "--to", "iobes", "--in", &input, "--out", &out]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(read(&out), TABLE1_IOBES);

    let run = srtk(&["convert", "--from", "IOBES", "--to", "iob2", "--in", &out]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, TABLE1_IOB2);
}

#[test]
fn convert_rejects_invalid_input_in_strict_mode() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.conll", "a\tO\nb\tF-p\nc\tO\n\n");
    let run = srtk(&["convert", "--from", "frobes", "--to", "iob2", "--in", &input]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("illegal-start"), "{}", run.stderr);

    let run = srtk(&["convert", "--from", "frobes", "--to", "iob2", "--in", &input, "--mode", "lenient"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, "a\tO\nb\tB-p\nc\tO\n\n");
}

#[test]
fn validate_reports_each_violation() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.conll", TABLE1_IOB2);
    let run = srtk(&["validate", "--scheme", "iob2", "--in", &good]);
    assert_eq!((run.code, run.stdout.as_str()), (0, ""));

    let bad = write(&dir, "bad.conll", "x\tB-p\ny\tR-p\nz\tF-p\nw\tE-p\n\n");
    let run = srtk(&["validate", "--scheme", "frobes", "--in", &bad]);
    assert_eq!(run.code, 1);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines.len(), 2, "{}", run.stdout);
    assert!(lines[0].contains(":2: sentence 0 token 1: illegal-transition"), "{}", lines[0]);
    assert!(lines[1].contains("token 2: illegal-transition"), "{}", lines[1]);
}

#[test]
fn stats_on_the_fixture() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "mini.conll", include_str!("data/stats_mini.conll"));
    let run = srtk(&["stats", "--scheme", "iob2", "--in", &input]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("N = 1\t3\t42.86 %"), "{}", run.stdout);
    assert!(run.stdout.contains("N > 3\t1\t14.29 %"), "{}", run.stdout);
    assert!(run.stdout.ends_with("Total\t7\n"));
}

#[test]
fn gen_train_tag_eval_ensemble() {
    let dir = TempDir::new().unwrap();
    let train = path(&dir, "train.conll");
    let test = path(&dir, "test.conll");
    for (file, seed, n) in [(&train, "1", "400"), (&test, "2", "100")] {
        let run = srtk(&["gen", "--out", file, "--sentences", n, "--seed", seed]);
        assert_eq!(run.code, 0, "{}", run.stderr);
    }
    let again = srtk(&["gen", "--sentences", "100", "--seed", "2"]);
    assert_eq!(again.stdout, read(&test));

    let mut preds = Vec::new();
    for scheme in ["iob2", "iobes", "frobes"] {
        let model = path(&dir, &format!("{scheme}.model"));
        let run = srtk(&["train", "--scheme", scheme, "--in-scheme", "iob2", "--train", &train, "--model", &model, "--epochs", "3"]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        assert!(read(&model).starts_with(&format!("srtk-model v1 {scheme}\n")));

        let pred = path(&dir, &format!("{scheme}.pred"));
        let run = srtk(&["tag", "--model", &model, "--in", &test, "--out", &pred]);
        assert_eq!(run.code, 0, "{}", run.stderr);

        let run = srtk(&["eval", "--gold", &test, "--gold-scheme", "iob2", "--pred", &pred, "--scheme", scheme, "--by-length", "--tsv"]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        assert!(run.stdout.starts_with("section\trow\tsystem\tvalue\n"));
        assert!(run.stdout.contains("length:n>=3\tf1\t"), "{}", run.stdout);
        preds.push(format!("{pred}:{scheme}"));
    }

    let voted = path(&dir, "voted.conll");
    let run = srtk(&["ensemble", "--pred", &preds[0], "--pred", &preds[1], "--pred", &preds[2], "--out", &voted]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let run = srtk(&["eval", "--gold", &test, "--pred", &voted, "--scheme", "iob2", "--name", "Ensemble"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("Ensemble"), "{}", run.stdout);
}

#[test]
fn eval_rejects_misaligned_files() {
    let dir = TempDir::new().unwrap();
    let gold = write(&dir, "gold.conll", TABLE1_IOB2);
    let pred = write(&dir, "pred.conll", "The\tO\n\n");
    let run = srtk(&["eval", "--gold", &gold, "--pred", &pred, "--scheme", "iob2"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.starts_with("error:"));
}

#[test]
fn demo_table() {
    let run = srtk(&["demo-table1"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, srtk::demo::render_table1());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(srtk(&[]).code, 2);
    assert_eq!(srtk(&["convert", "--from", "bilou", "--to", "iob2", "--in", "x"]).code, 2);
    assert_eq!(srtk(&["ensemble", "--pred", "nofile"]).code, 2);
    let help = srtk(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("demo-table1"));
}

#[test]
fn missing_input_file() {
    let run = srtk(&["stats", "--scheme", "iob2", "--in", "/nonexistent/file.conll"]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("cannot read"), "{}", run.stderr);
}
