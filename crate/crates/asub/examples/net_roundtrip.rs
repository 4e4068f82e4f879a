//! Envelopes over TCP: a loopback server decrypts framed messages and
//! answers with encrypted acks.

use std::sync::Arc;

use asub::net::{self, NetError, SendOptions, Server, ServerOptions};
use asub::CodecConfig;

fn main() -> Result<(), NetError> {
    // Keys ride in-band: the server needs no configuration to decrypt.
    let server = Server::bind(
        "127.0.0.1:0",
        ServerOptions {
            on_plaintext: Some(Arc::new(|text: &str| println!("server got: {text}"))),
            ..ServerOptions::default()
        },
    )?;
    let addr = server.local_addr();
    println!("server on {addr}\n");

    for message in ["HELLO", "RESPECTEVERYONE", ""] {
        let ack = net::send(addr, message, &SendOptions::default())?;
        println!("client sent {message:?}, ack: {ack}");
    }
    server.shutdown();

    // With shared keys both directions travel without keys on the wire.
    let keys = vec![31415, 92653];
    let server = Server::bind(
        "127.0.0.1:0",
        ServerOptions {
            shared_keys: Some(keys.clone()),
            ..ServerOptions::default()
        },
    )?;
    let options = SendOptions {
        shared_keys: Some(keys),
        ..SendOptions::default()
    };
    let ack = net::send(server.local_addr(), "EXTERNAL KEYS", &options)?;
    println!("\nshared-key ack: {ack}");

    // A mismatched client is turned away with a typed error frame.
    let options = SendOptions {
        codec: CodecConfig::extended(),
        ..SendOptions::default()
    };
    match net::send(server.local_addr(), "HELLO", &options) {
        Err(err) => println!("mode mismatch: {err}"),
        Ok(_) => unreachable!(),
    }
    server.shutdown();
    Ok(())
}
