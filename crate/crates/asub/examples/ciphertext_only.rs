//! Breaking the cipher from ciphertext alone. Each key class confines its
//! key to a narrow window; the cross product is small enough to enumerate
//! and rank by letter frequency.

use asub::analysis::{ciphertext_only_attack, AttackOptions, FrequencyTable};
use asub::{encrypt_auto, CodecConfig, Error};

fn main() -> Result<(), Error> {
    let config = CodecConfig::paper();
    let (ciphertext, schedule) = encrypt_auto("RESPECTEVERYONE", &config)?;
    println!("ciphertext: {ciphertext}");
    println!("(true keys {}, unknown to the attacker)\n", schedule);

    let report = ciphertext_only_attack(
        &ciphertext,
        &config,
        FrequencyTable::english(),
        &AttackOptions::default(),
    )?;

    println!(
        "{} feasible key schedules enumerated",
        report.search_space_size
    );
    println!("\nrank  keys        score    decoded");
    for (i, candidate) in report.candidates.iter().take(5).enumerate() {
        println!(
            "{:>4}  {:<10}  {:<7.4}  {}",
            i + 1,
            candidate.schedule.to_string(),
            candidate.score,
            candidate.decoded
        );
    }

    let rank = report
        .rank_of(schedule.keys())
        .expect("true keys are always present");
    println!("\ntrue schedule found at rank {rank}");
    Ok(())
}
