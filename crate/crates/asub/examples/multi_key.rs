//! Explicit key schedules: any number of keys, applied cyclically, and what
//! happens when the wrong schedule meets a ciphertext.

use asub::{decrypt, encrypt, CodecConfig, Error, KeySchedule};

fn main() -> Result<(), Error> {
    let config = CodecConfig::paper();
    let message = "MEETATNOON";

    for keys in [vec![500], vec![500, 9000], vec![500, 9000, 42]] {
        let schedule = KeySchedule::explicit(keys.clone())?;
        let ciphertext = encrypt(message, &schedule, &config)?;
        println!("keys {keys:?}");
        println!("  {ciphertext}");
        assert_eq!(decrypt(&ciphertext, &schedule, &config)?, message);
    }

    // Wrong keys fail in two ways. A far-off key breaks the arithmetic and
    // is rejected; a near miss can still shed valid residues and decodes to
    // garbage, silently. Nothing in the scheme authenticates the keys.
    let schedule = KeySchedule::explicit(vec![500, 9000])?;
    let ciphertext = encrypt(message, &schedule, &config)?;
    let far = KeySchedule::explicit(vec![600, 9000])?;
    match decrypt(&ciphertext, &far, &config) {
        Err(err) => println!("\nfar-off key rejected: {err}"),
        Ok(text) => unreachable!("decrypted to {text:?}"),
    }
    let near = KeySchedule::explicit(vec![501, 9000])?;
    println!(
        "off-by-one key garbles: {:?}",
        decrypt(&ciphertext, &near, &config)
    );

    // The extended mode carries whole bytes, spaces and accents included.
    let config = CodecConfig::extended();
    let message = "café at noon";
    let schedule = KeySchedule::explicit(vec![12345, 67890])?;
    let ciphertext = encrypt(message, &schedule, &config)?;
    println!("\nextended mode: {message:?}");
    println!("  {ciphertext}");
    assert_eq!(decrypt(&ciphertext, &schedule, &config)?, message);
    Ok(())
}
