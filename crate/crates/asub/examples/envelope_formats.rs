//! The two wire formats: self-describing text and compact binary.

use asub::{encrypt_auto, CodecConfig, Envelope, Error};

fn main() -> Result<(), Error> {
    let config = CodecConfig::paper();
    let (ciphertext, schedule) = encrypt_auto("RESPECTEVERYONE", &config)?;

    let in_band = Envelope::in_band(&ciphertext, &schedule)?;
    println!("text form, keys in-band:\n{}", in_band.encode_text());

    let external = Envelope::external(&ciphertext)?;
    println!("text form, keys external:\n{}", external.encode_text());

    let bytes = in_band.encode_binary();
    println!("binary form, {} bytes:", bytes.len());
    for chunk in bytes.chunks(16) {
        let hex: Vec<String> = chunk.iter().map(|b| format!("{b:02x}")).collect();
        println!("  {}", hex.join(" "));
    }

    assert_eq!(Envelope::decode_binary(&bytes)?, in_band);
    assert_eq!(Envelope::decode_text(&in_band.encode_text())?, in_band);
    println!("\nboth forms round-trip");

    // The parsers are strict: one envelope, one encoding.
    let mut padded = in_band.encode_text();
    padded.insert(padded.find("1056").unwrap(), '0');
    println!(
        "\nzero-padded key rejected: {}",
        Envelope::decode_text(&padded).unwrap_err()
    );

    let mut trailing = bytes.clone();
    trailing.push(0);
    println!(
        "trailing byte rejected:   {}",
        Envelope::decode_binary(&trailing).unwrap_err()
    );
    Ok(())
}
