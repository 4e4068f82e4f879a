//! End-to-end tests of the asub binary.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, Command, Stdio};

const GOLDEN_VALUES: &str =
    "1084,1251,1094,1163,1152,1231,1104,1251,1124,1251,1084,1253,1153,1242,1152";

fn asub(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_asub"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let output = asub(args);
    assert!(
        output.status.success(),
        "asub {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    String::from_utf8(output.stdout).expect("stdout is UTF-8")
}

#[test]
fn keys_prints_derived_pair() {
    assert_eq!(stdout_of(&["keys", "RESPECTEVERYONE"]), "K1=1056 K2=1155\n");
}

#[test]
fn encrypt_emits_canonical_envelope() {
    let envelope = stdout_of(&["encrypt", "RESPECTEVERYONE"]);
    assert_eq!(
        envelope,
        format!("ASUB;v=1;mode=paper;keys=in-band:1056,1155\n({GOLDEN_VALUES})\n")
    );
}

#[test]
fn decrypt_inverts_encrypt_without_extra_bytes() {
    let envelope = stdout_of(&["encrypt", "RESPECTEVERYONE"]);
    // Exact plaintext, no trailing newline added.
    assert_eq!(
        stdout_of(&["decrypt", envelope.trim_end()]),
        "RESPECTEVERYONE"
    );
}

#[test]
fn decrypt_handles_raw_values_and_explicit_keys() {
    let plaintext = stdout_of(&["decrypt", "--values", GOLDEN_VALUES, "--keys", "1056,1155"]);
    assert_eq!(plaintext, "RESPECTEVERYONE");
}

#[test]
fn external_envelopes_round_trip_with_keys_on_the_side() {
    let envelope = stdout_of(&["encrypt", "SECRET", "--keys", "400,500", "--external"]);
    assert!(envelope.contains("keys=external"));
    let plaintext = stdout_of(&["decrypt", envelope.trim_end(), "--keys", "400,500"]);
    assert_eq!(plaintext, "SECRET");
}

#[test]
fn binary_envelopes_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("asub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("message.bin");
    let path = path.to_str().unwrap();

    stdout_of(&["encrypt", "RESPECTEVERYONE", "--binary", "--out-file", path]);
    let bytes = std::fs::read(path).unwrap();
    assert_eq!(&bytes[..4], b"ASUB");
    assert_eq!(bytes.len(), 79);

    let plaintext = stdout_of(&["decrypt", "--in-file", path, "--binary"]);
    assert_eq!(plaintext, "RESPECTEVERYONE");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn extended_mode_carries_bytes_outside_the_paper_range() {
    let envelope = stdout_of(&["encrypt", "café noon", "--mode", "extended"]);
    assert!(envelope.starts_with("ASUB;v=1;mode=extended;"));
    assert_eq!(stdout_of(&["decrypt", envelope.trim_end()]), "café noon");
}

#[test]
fn stdin_input_is_accepted() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_asub"))
        .args(["keys", "--stdin"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"RESPECTEVERYONE\n")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8_lossy(&output.stdout), "K1=1056 K2=1155\n");
}

#[test]
fn attack_known_plaintext_recovers_golden_keys() {
    let report = stdout_of(&[
        "attack",
        "known-plaintext",
        "--plaintext",
        "RESPECTEVERYONE",
        "--values",
        GOLDEN_VALUES,
    ]);
    assert_eq!(report, "K1=1056 K2=1155\n");
}

#[test]
fn attack_known_plaintext_marks_unseen_classes() {
    let report = stdout_of(&[
        "attack",
        "known-plaintext",
        "--plaintext",
        "AB",
        "--values",
        "121,160",
        "--key-count",
        "3",
    ]);
    assert_eq!(report, "K1=65 K2=94 K3=?\n");
}

#[test]
fn attack_ciphertext_only_ranks_golden_plaintext_first() {
    let report = stdout_of(&["attack", "ciphertext-only", "--values", GOLDEN_VALUES]);
    let first = report.lines().next().expect("at least one candidate");
    let fields: Vec<&str> = first.split('\t').collect();
    assert_eq!(fields[0], "1056,1155");
    assert_eq!(fields[2], "RESPECTEVERYONE");
    assert!(report.lines().count() <= 10);
}

#[test]
fn attack_ciphertext_only_respects_limit_flag() {
    let output = asub(&[
        "attack",
        "ciphertext-only",
        "--values",
        GOLDEN_VALUES,
        "--limit",
        "5",
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("SearchSpaceExceeded"));
}

#[test]
fn analyze_diffusion_prints_golden_spread() {
    let report = stdout_of(&["analyze", "diffusion", "RESPECTEVERYONE"]);
    assert!(report.contains("E\t1152x2,1251x3\n"));
    assert!(report.ends_with("max_distinct\t2\n"));
}

#[test]
fn baseline_subcommands_match_golden_examples() {
    assert_eq!(
        stdout_of(&["baseline", "mono", "--shift", "4", "abcdea"]),
        "EFGHIE\n"
    );
    assert_eq!(
        stdout_of(&["baseline", "mono", "--shift", "4", "--decrypt", "EFGHIE"]),
        "abcdea\n"
    );
    assert_eq!(
        stdout_of(&["baseline", "keyword", "--key", "abcd", "welcome"]),
        "xgogpoh\n"
    );
    assert_eq!(
        stdout_of(&[
            "baseline",
            "keyword",
            "--key",
            "abcd",
            "--decrypt",
            "xgogpoh"
        ]),
        "welcome\n"
    );
}

#[test]
fn usage_errors_exit_two_data_errors_exit_one() {
    let usage = asub(&["encrypt"]);
    assert_eq!(usage.status.code(), Some(2));

    let data = asub(&["decrypt", "not an envelope"]);
    assert_eq!(data.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&data.stderr).starts_with("error: "));

    let missing_keys = asub(&["decrypt", "--values", "121"]);
    assert_eq!(missing_keys.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing_keys.stderr).contains("--keys"));

    let external_without_keys = asub(&["encrypt", "HELLO", "--external"]);
    assert_eq!(external_without_keys.status.code(), Some(2));
}

struct ServerGuard {
    child: Child,
    // Keeps the stdout pipe open; the server panics on EPIPE otherwise.
    stdout: BufReader<std::process::ChildStdout>,
}

impl ServerGuard {
    fn next_line(&mut self) -> String {
        let mut line = String::new();
        self.stdout.read_line(&mut line).unwrap();
        line
    }
}

impl Drop for ServerGuard {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

fn spawn_server(extra: &[&str]) -> (ServerGuard, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_asub"))
        .args(["serve", "--port", "0"])
        .args(extra)
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let stdout = BufReader::new(child.stdout.take().unwrap());
    let mut guard = ServerGuard { child, stdout };
    let line = guard.next_line();
    let addr = line
        .strip_prefix("listening on ")
        .unwrap_or_else(|| panic!("unexpected serve output: {line:?}"))
        .trim()
        .to_string();
    (guard, addr)
}

#[test]
fn serve_and_send_round_trip() {
    let (mut guard, addr) = spawn_server(&[]);
    let reply = stdout_of(&["send", "--addr", &addr, "--message", "HELLO"]);
    assert_eq!(reply, "OK:5\n");
    assert_eq!(guard.next_line(), "recv: HELLO\n");
}

#[test]
fn serve_and_send_with_shared_keys() {
    let (mut guard, addr) = spawn_server(&["--external-keys", "1056,1155"]);
    let reply = stdout_of(&[
        "send",
        "--addr",
        &addr,
        "--message",
        "RESPECTEVERYONE",
        "--external-keys",
        "1056,1155",
    ]);
    assert_eq!(reply, "OK:15\n");
    assert_eq!(guard.next_line(), "recv: RESPECTEVERYONE\n");

    // A keyless client still gets its in-band message through, but the
    // server acks on the shared keys, which the client cannot read.
    let output = asub(&["send", "--addr", &addr, "--message", "HI"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("reply carries no keys"));
    assert_eq!(guard.next_line(), "recv: HI\n");
}
