//! The classical baselines on their textbook examples.

use asub::{
    keyword_decrypt, keyword_encrypt, mono_decrypt, mono_encrypt, Error, KeywordKey, ShiftKey,
};

fn main() -> Result<(), Error> {
    let shift = ShiftKey::new(4)?;
    let cipher = mono_encrypt("abcdea", shift)?;
    println!("shift 4:       abcdea -> {cipher}");
    assert_eq!(mono_decrypt(&cipher, shift)?, "abcdea");

    // Keyword letters count from one: 'a' shifts by 1, 'z' by 26 (identity).
    let key = KeywordKey::new("abcd")?;
    let cipher = keyword_encrypt("welcome", &key)?;
    println!("keyword abcd:  welcome -> {cipher}");
    assert_eq!(keyword_decrypt(&cipher, &key)?, "welcome");

    let identity = KeywordKey::new("z")?;
    println!(
        "keyword z:     quiet -> {}",
        keyword_encrypt("quiet", &identity)?
    );

    // A repeated plaintext letter leaks under the shift cipher but not
    // under a keyword longer than the repeat distance.
    let key = KeywordKey::new("key")?;
    println!(
        "keyword key:   aaaaaa -> {}",
        keyword_encrypt("aaaaaa", &key)?
    );
    println!(
        "shift 4:       aaaaaa -> {}",
        mono_encrypt("aaaaaa", shift)?
    );
    Ok(())
}
