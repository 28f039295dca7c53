//! End-to-end runs of the binary: exit codes, corrupted files, vacuous
//! inputs, and piping a construction back into validation.

use std::process::Command;

fn parcat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_parcat"))
        .args(args)
        .output()
        .expect("spawn parcat");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn validate_corpus_exits_zero() {
    let (code, stdout, _) = parcat(&["validate", "corpus:inst-top"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("result: PASS"));
}

#[test]
fn corrupted_gamma_entry_exits_one_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("good.pc");
    let (code, _, _) = parcat(&[
        "construct",
        "polyad",
        "--in",
        "corpus:inst-top",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    // redirect one gamma component to a wrongly-typed morphism
    let text = std::fs::read_to_string(&path).unwrap();
    let mut corrupted = String::new();
    let mut in_gamma = false;
    let mut done = false;
    for line in text.lines() {
        if line.starts_with('[') {
            in_gamma = line == "[gamma]";
        }
        if in_gamma && !done && !line.starts_with('[') {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() == 4 {
                let m: usize = toks[3].parse().unwrap();
                corrupted.push_str(&format!(
                    "{} {} {} {}\n",
                    toks[0],
                    toks[1],
                    toks[2],
                    (m + 1) % 9
                ));
                done = true;
                continue;
            }
        }
        corrupted.push_str(line);
        corrupted.push('\n');
    }
    assert!(done, "a gamma row was rewritten");
    let bad = dir.path().join("bad.pc");
    std::fs::write(&bad, corrupted).unwrap();
    let (code, stdout, _) = parcat(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 1, "validation failure exit code");
    assert!(stdout.contains("FAIL"));
    assert!(
        stdout.contains("g") && stdout.contains("X") || stdout.contains("condition"),
        "failure names its witness: {stdout}"
    );
}

#[test]
fn empty_category_file_is_vacuously_valid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.pc");
    std::fs::write(
        &path,
        "[meta]\nformat_version: 1\nkind: category\nfield: none\n",
    )
    .unwrap();
    let (code, stdout, _) = parcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn unparsable_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.pc");
    std::fs::write(&path, "[meta]\nformat_version: 7\n").unwrap();
    let (code, _, stderr) = parcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line"));
}

#[test]
fn constructions_pipe_back_into_validate() {
    let dir = tempfile::tempdir().unwrap();
    for (op, input, extra) in [
        ("globalize", "corpus:inst-top", None),
        ("smash", "corpus:inst-top-linear", None),
        ("trace", "corpus:inst-fus", Some(["--object", "{1}"])),
    ] {
        let path = dir.path().join(format!("{op}.pc"));
        let mut args = vec!["construct", op, "--in", input, "--out", path.to_str().unwrap()];
        if let Some(extra) = extra {
            args.extend(extra);
        }
        let (code, stdout, stderr) = parcat(&args);
        assert_eq!(code, 0, "{op}: {stdout} {stderr}");
        let (code, stdout, _) = parcat(&["validate", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{op} output validates: {stdout}");
    }
}

#[test]
fn invalid_thread_env_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_parcat"))
        .args(["validate", "corpus:trivial"])
        .env("PARCAT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
