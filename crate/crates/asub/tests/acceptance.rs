//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N PASS/FAIL` line (visible with `--nocapture`).

use std::fmt::Display;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use asub::analysis::{
    ciphertext_only_attack, diffusion_report, known_plaintext_attack, AttackOptions, FrequencyTable,
};
use asub::baselines::{
    keyword_decrypt, keyword_encrypt, mono_decrypt, mono_encrypt, KeywordKey, ShiftKey,
};
use asub::cipher::{decrypt, encrypt, encrypt_auto, KeySchedule};
use asub::codec::CodecConfig;
use asub::envelope::Envelope;
use asub::net::{self, SendOptions, Server, ServerOptions};

const GOLDEN_PLAINTEXT: &str = "RESPECTEVERYONE";
const GOLDEN_VALUES: [u64; 15] = [
    1084, 1251, 1094, 1163, 1152, 1231, 1104, 1251, 1124, 1251, 1084, 1253, 1153, 1242, 1152,
];

fn check(criterion: u32, ok: bool, detail: impl Display) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion} {verdict}: {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn random_text(rng: &mut StdRng, config: &CodecConfig, len: usize) -> String {
    (0..len)
        .map(|_| CodecConfig::code_to_char(rng.gen_range(config.min_code()..=config.max_code())))
        .collect()
}

fn random_keys(rng: &mut StdRng, count: usize, max: u64) -> Vec<u64> {
    (0..count).map(|_| rng.gen_range(0..max)).collect()
}

#[test]
fn criterion_01_golden_reproduction() {
    let start = Instant::now();
    let config = CodecConfig::paper();
    let schedule = KeySchedule::derive(GOLDEN_PLAINTEXT, &config).unwrap();
    let keys_ok = schedule.keys() == [1056, 1155];
    let ciphertext = encrypt(GOLDEN_PLAINTEXT, &schedule, &config).unwrap();
    let values_ok = ciphertext.values() == GOLDEN_VALUES;
    let decrypted = decrypt(&ciphertext, &schedule, &config).unwrap();
    let elapsed = start.elapsed();
    check(
        1,
        keys_ok && values_ok && decrypted == GOLDEN_PLAINTEXT && elapsed < Duration::from_secs(1),
        format!("golden keys, ciphertext, and round trip reproduced in {elapsed:?}"),
    );
}

#[test]
fn criterion_02_baseline_golden_examples() {
    let shift = ShiftKey::new(4).unwrap();
    let mono_ok = mono_encrypt("abcdea", shift).unwrap() == "EFGHIE"
        && mono_decrypt("EFGHIE", shift).unwrap() == "abcdea";
    let key = KeywordKey::new("abcd").unwrap();
    let keyword_ok = keyword_encrypt("welcome", &key).unwrap() == "xgogpoh"
        && keyword_decrypt("xgogpoh", &key).unwrap() == "welcome";
    let mut round_trips = true;
    for s in 0..26 {
        let shift = ShiftKey::new(s).unwrap();
        let cipher = mono_encrypt("thequickbrownfox", shift).unwrap();
        round_trips &= mono_decrypt(&cipher, shift).unwrap() == "thequickbrownfox";
    }
    check(
        2,
        mono_ok && keyword_ok && round_trips,
        "baseline ciphers reproduce their examples and round-trip all shifts",
    );
}

#[test]
fn criterion_03_randomized_round_trips() {
    let mut rng = StdRng::seed_from_u64(3);
    let key_counts = [1usize, 2, 3, 5];
    let mut trials = 0u32;
    for config in [CodecConfig::paper(), CodecConfig::extended()] {
        for _ in 0..10_000 {
            let len = rng.gen_range(0..=512);
            let text = random_text(&mut rng, &config, len);
            let count = key_counts[rng.gen_range(0..key_counts.len())];
            let schedule = KeySchedule::explicit(random_keys(&mut rng, count, 1_000_000)).unwrap();
            let ciphertext = encrypt(&text, &schedule, &config).unwrap();
            assert_eq!(decrypt(&ciphertext, &schedule, &config).unwrap(), text);
            trials += 1;
        }
    }
    check(
        3,
        trials == 20_000,
        format!("{trials} randomized round trips across both modes, 1/2/3/5-key schedules"),
    );
}

#[test]
fn criterion_04_reversal_involution_exhaustive() {
    let mut checked = 0u32;
    for config in [CodecConfig::paper(), CodecConfig::extended()] {
        for code in config.min_code()..=config.max_code() {
            let reversed = config.reverse_code(code).unwrap();
            assert_eq!(config.unreverse_code(reversed).unwrap(), code);
            checked += 1;
        }
    }
    check(
        4,
        checked == 90 + 256,
        format!("{checked} codes reverse twice to themselves across both alphabets"),
    );
}

#[test]
fn criterion_05_diffusion_bound() {
    let config = CodecConfig::paper();
    let (ciphertext, _) = encrypt_auto(GOLDEN_PLAINTEXT, &config).unwrap();
    let report = diffusion_report(GOLDEN_PLAINTEXT, &ciphertext).unwrap();
    let e_values = report.values_for('E').unwrap();
    let golden_ok =
        e_values.get(&1251) == Some(&3) && e_values.get(&1152) == Some(&2) && e_values.len() == 2;

    let mut rng = StdRng::seed_from_u64(5);
    let mut bound_ok = true;
    for _ in 0..1_000 {
        let len = rng.gen_range(1..=64);
        let text = random_text(&mut rng, &config, len);
        let (ciphertext, _) = encrypt_auto(&text, &config).unwrap();
        let report = diffusion_report(&text, &ciphertext).unwrap();
        bound_ok &= report.max_distinct() <= 2;
    }
    check(
        5,
        golden_ok && bound_ok,
        "two-key encryption maps E to {1251, 1152} and no symbol to more than 2 values in 1000 trials",
    );
}

#[test]
fn criterion_06_known_plaintext_recovery() {
    let mut rng = StdRng::seed_from_u64(6);
    let config = CodecConfig::paper();
    let key_counts = [1usize, 2, 3, 5];
    let mut hits = 0u32;
    for _ in 0..100 {
        let count = key_counts[rng.gen_range(0..key_counts.len())];
        let len = rng.gen_range(count..=64);
        let text = random_text(&mut rng, &config, len);
        let keys = random_keys(&mut rng, count, 1_000_000);
        let schedule = KeySchedule::explicit(keys.clone()).unwrap();
        let ciphertext = encrypt(&text, &schedule, &config).unwrap();
        let recovered = known_plaintext_attack(&text, &ciphertext, &config, count).unwrap();
        if recovered.into_schedule().map(|s| s.keys().to_vec()) == Some(keys) {
            hits += 1;
        }
    }
    check(
        6,
        hits == 100,
        format!("known-plaintext attack recovered the full schedule in {hits}/100 trials"),
    );
}

#[test]
fn criterion_07_ciphertext_only_completeness() {
    let table = FrequencyTable::english();
    let mut rng = StdRng::seed_from_u64(7);
    let mut hits = 0u32;
    let mut trials = 0u32;
    for (config, count, len_range) in [
        (CodecConfig::paper(), 80, 6..=48),
        (CodecConfig::extended(), 20, 12..=48),
    ] {
        for _ in 0..count {
            let len = rng.gen_range(len_range.clone());
            let text = random_text(&mut rng, &config, len);
            let keys = random_keys(&mut rng, 2, 100_000);
            let schedule = KeySchedule::explicit(keys.clone()).unwrap();
            let ciphertext = encrypt(&text, &schedule, &config).unwrap();
            let report =
                ciphertext_only_attack(&ciphertext, &config, table, &AttackOptions::default())
                    .unwrap();
            if report.rank_of(&keys).is_some() {
                hits += 1;
            }
            trials += 1;
        }
    }

    let config = CodecConfig::paper();
    let (ciphertext, schedule) = encrypt_auto(GOLDEN_PLAINTEXT, &config).unwrap();
    let report =
        ciphertext_only_attack(&ciphertext, &config, table, &AttackOptions::default()).unwrap();
    let golden_rank = report.rank_of(schedule.keys());
    let golden_decoded = golden_rank
        .map(|rank| report.candidates[rank - 1].decoded == GOLDEN_PLAINTEXT)
        .unwrap_or(false);
    check(
        7,
        hits == trials && golden_decoded,
        format!(
            "true schedule present in {hits}/{trials} trials; golden decode found at rank {}",
            golden_rank.unwrap_or(0)
        ),
    );
}

#[test]
fn criterion_08_envelope_round_trips_and_fuzz() {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..10_000 {
        let mode = if rng.gen_bool(0.5) {
            "paper"
        } else {
            "extended"
        };
        let keys = if rng.gen_bool(0.5) {
            let count = rng.gen_range(1..=5);
            Some((0..count).map(|_| u64::from(rng.gen::<u32>())).collect())
        } else {
            None
        };
        let values = (0..rng.gen_range(0..=64))
            .map(|_| u64::from(rng.gen::<u32>()))
            .collect();
        let envelope = Envelope::new(mode, keys, values).unwrap();
        assert_eq!(
            Envelope::decode_text(&envelope.encode_text()).unwrap(),
            envelope
        );
        assert_eq!(
            Envelope::decode_binary(&envelope.encode_binary()).unwrap(),
            envelope
        );
    }

    for _ in 0..10_000 {
        let len = rng.gen_range(0..=64);
        let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        let _ = Envelope::decode_binary(&bytes);
        let text: String = (0..len)
            .map(|_| char::from(rng.gen_range(b' '..=b'~')))
            .collect();
        let _ = Envelope::decode_text(&text);
    }

    let golden = Envelope::new("paper", None, vec![])
        .unwrap()
        .encode_binary();
    check(
        8,
        golden
            == [
                0x41, 0x53, 0x55, 0x42, 0x01, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00,
            ],
        "10000 envelope round trips per format, 10000 fuzz inputs without a crash, 11-byte golden",
    );
}

#[test]
fn criterion_09_loopback_demo() {
    let start = Instant::now();
    let received = Arc::new(AtomicUsize::new(0));
    let counter = Arc::clone(&received);
    let server = Server::bind(
        "127.0.0.1:0",
        ServerOptions {
            on_plaintext: Some(Arc::new(move |_: &str| {
                counter.fetch_add(1, Ordering::SeqCst);
            })),
            ..ServerOptions::default()
        },
    )
    .unwrap();
    let addr = server.local_addr();

    let config = CodecConfig::paper();
    let mut rng = StdRng::seed_from_u64(9);
    let options = SendOptions::default();
    for _ in 0..100 {
        let len = rng.gen_range(0..=32);
        let text = random_text(&mut rng, &config, len);
        let ack = net::send(addr, &text, &options).unwrap();
        assert_eq!(ack, format!("OK:{}", text.chars().count()));
    }

    // A frame of garbage draws a typed error, not a crash, and the server
    // keeps answering afterwards.
    let mut stream = std::net::TcpStream::connect(addr).unwrap();
    stream
        .set_read_timeout(Some(Duration::from_secs(2)))
        .unwrap();
    net::write_frame(&mut stream, b"not an envelope", 1 << 20).unwrap();
    let reply = net::read_frame(&mut stream, 1 << 20).unwrap();
    assert!(reply.starts_with(b"ERR:DECODE"));
    drop(stream);
    let ack = net::send(addr, "STILL ALIVE", &options).unwrap();
    assert_eq!(ack, "OK:11");

    server.shutdown();
    let elapsed = start.elapsed();
    check(
        9,
        received.load(Ordering::SeqCst) == 101 && elapsed < Duration::from_secs(10),
        format!("101 loopback messages and a corrupted frame handled in {elapsed:?}"),
    );
}

#[test]
fn criterion_10_key_space_documented_not_asserted() {
    let readme = include_str!("../../../README.md");
    let discussed = readme.contains("26!")
        && readme.contains("2*(256*256)")
        && readme.to_lowercase().contains("key space");
    check(
        10,
        discussed,
        "key-space claims are discussed in the README, not asserted as code properties",
    );
}
