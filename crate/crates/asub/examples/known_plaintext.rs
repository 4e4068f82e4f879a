//! Key recovery when one plaintext/ciphertext pair is known: every position
//! gives away its class key as `value - reverse(code)`.

use asub::analysis::known_plaintext_attack;
use asub::{encrypt, CodecConfig, Error, KeySchedule};

fn main() -> Result<(), Error> {
    let config = CodecConfig::paper();
    let secret_keys = vec![4821, 1337, 902];
    let schedule = KeySchedule::explicit(secret_keys.clone())?;

    let message = "ATTACKATDAWN";
    let ciphertext = encrypt(message, &schedule, &config)?;
    println!("intercepted: {ciphertext}");
    println!("known plaintext: {message}\n");

    let recovered = known_plaintext_attack(message, &ciphertext, &config, 3)?;
    for (class, key) in recovered.classes().iter().enumerate() {
        match key {
            Some(key) => println!("class {class}: key {key}"),
            None => println!("class {class}: no positions observed"),
        }
    }
    assert_eq!(recovered.into_schedule().unwrap().keys(), &secret_keys[..]);

    // Guessing the key count wrong is caught, not silently accepted: two
    // positions of the same class then demand different keys.
    match known_plaintext_attack(message, &ciphertext, &config, 2) {
        Err(err) => println!("\nwrong key count: {err}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
