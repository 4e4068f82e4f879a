//! The full scheme on one message: encode, reverse, derive keys, encrypt,
//! decrypt.

use asub::{decrypt, CodecConfig, Error, KeySchedule};

fn main() -> Result<(), Error> {
    let config = CodecConfig::paper();
    let message = "RESPECTEVERYONE";

    println!("message: {message}\n");
    println!("pos  ch  code  reversed");
    for (position, ch) in message.chars().enumerate() {
        let code = config.char_code(position, ch)?;
        let reversed = config.reverse_code(code)?;
        println!("{position:>3}  {ch}   {code}    {reversed}");
    }

    let schedule = KeySchedule::derive(message, &config)?;
    println!("\nderived keys (sum of reversed codes, sum of plain codes):");
    println!("  K1 = {}", schedule.keys()[0]);
    println!("  K2 = {}", schedule.keys()[1]);

    let ciphertext = asub::encrypt(message, &schedule, &config)?;
    println!("\nciphertext (K1 on even positions, K2 on odd):");
    println!("  {ciphertext}");

    let recovered = decrypt(&ciphertext, &schedule, &config)?;
    println!("\ndecrypted: {recovered}");
    assert_eq!(recovered, message);
    Ok(())
}
