//! Loopback TCP demo: binary envelopes in length-prefixed frames.
//!
//! Each frame is a big-endian u32 length followed by that many payload
//! bytes. A client frames one binary envelope per message; the server
//! decrypts it (in-band keys first, configured shared keys as fallback) and
//! answers with an encrypted `OK:<char count>` ack, or a plain-text
//! `ERR:<KIND> <detail>` frame when the message cannot be processed. An
//! oversize frame draws an `ERR:OVERSIZE` reply and closes the connection,
//! since its payload was never consumed; other errors leave the connection
//! usable.
//!
//! The server runs on plain std threads. Shutdown is cooperative: the accept
//! loop polls a stop flag between non-blocking accepts, and connection
//! threads poll it between read-timeout ticks, tracking partial fills so a
//! tick never drops bytes already read.

use std::io::{self, ErrorKind, Read, Write};
use std::net::{SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::Duration;

use crate::cipher::{decrypt, encrypt, encrypt_auto, KeySchedule};
use crate::codec::CodecConfig;
use crate::envelope::Envelope;
use crate::error::Error;

/// Frames larger than this are rejected by default.
pub const DEFAULT_MAX_FRAME_LEN: usize = 1 << 20;

/// Callback handed each successfully decrypted message.
pub type PlaintextHook = Arc<dyn Fn(&str) + Send + Sync>;

const TICK: Duration = Duration::from_millis(25);

#[derive(Debug, thiserror::Error)]
pub enum NetError {
    #[error("io error: {0}")]
    Io(#[from] io::Error),

    #[error("timed out after {0:?}")]
    Timeout(Duration),

    #[error("frame of {len} bytes exceeds limit {max}")]
    FrameOversize { len: usize, max: usize },

    #[error("protocol error: {0}")]
    Protocol(String),

    #[error(transparent)]
    Data(#[from] Error),
}

/// Write one length-prefixed frame.
pub fn write_frame(stream: &mut impl Write, payload: &[u8], max: usize) -> Result<(), NetError> {
    if payload.len() > max || payload.len() > u32::MAX as usize {
        return Err(NetError::FrameOversize {
            len: payload.len(),
            max: max.min(u32::MAX as usize),
        });
    }
    stream.write_all(&(payload.len() as u32).to_be_bytes())?;
    stream.write_all(payload)?;
    stream.flush()?;
    Ok(())
}

/// Read one length-prefixed frame, rejecting lengths above `max` before
/// allocating.
pub fn read_frame(stream: &mut impl Read, max: usize) -> Result<Vec<u8>, NetError> {
    let mut header = [0u8; 4];
    stream.read_exact(&mut header)?;
    let len = u32::from_be_bytes(header) as usize;
    if len > max {
        return Err(NetError::FrameOversize { len, max });
    }
    let mut payload = vec![0u8; len];
    stream.read_exact(&mut payload)?;
    Ok(payload)
}

/// Server configuration. `shared_keys` decrypt envelopes that arrive without
/// in-band keys and encrypt the acks; without them the server acks with
/// fresh auto-derived keys carried in-band. `on_plaintext` sees every
/// successfully decrypted message.
#[derive(Clone, Default)]
pub struct ServerOptions {
    pub codec: CodecConfig,
    pub shared_keys: Option<Vec<u64>>,
    pub max_frame_len: Option<usize>,
    pub on_plaintext: Option<PlaintextHook>,
}

/// Client configuration, mirroring [`ServerOptions`]: with `shared_keys` the
/// message is sent in an external-key envelope, otherwise auto-derived keys
/// ride in-band.
#[derive(Clone)]
pub struct SendOptions {
    pub codec: CodecConfig,
    pub shared_keys: Option<Vec<u64>>,
    pub timeout: Duration,
    pub max_frame_len: Option<usize>,
}

impl Default for SendOptions {
    fn default() -> Self {
        SendOptions {
            codec: CodecConfig::default(),
            shared_keys: None,
            timeout: Duration::from_secs(5),
            max_frame_len: None,
        }
    }
}

/// A reply's schedule must keep ack values inside the 32-bit envelope
/// bound, so shared keys are capped at bind/send time.
fn validate_shared_keys(keys: &[u64], codec: &CodecConfig) -> Result<(), NetError> {
    if keys.is_empty() {
        return Err(NetError::Data(Error::EmptyKeySchedule));
    }
    let cap = u64::from(u32::MAX) - u64::from(codec.max_reversed());
    for &key in keys {
        if key > cap {
            return Err(NetError::Data(Error::ValueTooLarge { value: key }));
        }
    }
    Ok(())
}

struct ServerState {
    codec: CodecConfig,
    shared_keys: Option<Vec<u64>>,
    max_frame_len: usize,
    on_plaintext: Option<PlaintextHook>,
}

impl ServerState {
    fn respond(&self, payload: &[u8]) -> Vec<u8> {
        let envelope = match Envelope::decode_binary(payload) {
            Ok(envelope) => envelope,
            Err(err) => return format!("ERR:DECODE {err}").into_bytes(),
        };
        if envelope.mode_name() != self.codec.mode_name() {
            return format!(
                "ERR:MODE server runs {:?}, envelope is {:?}",
                self.codec.mode_name(),
                envelope.mode_name()
            )
            .into_bytes();
        }
        let schedule = match envelope.schedule() {
            Some(schedule) => schedule,
            None => match &self.shared_keys {
                Some(keys) => KeySchedule::explicit(keys.clone()).expect("validated at bind"),
                None => return b"ERR:KEYS envelope has no keys and none are configured".to_vec(),
            },
        };
        let plaintext = match decrypt(&envelope.ciphertext(), &schedule, &self.codec) {
            Ok(plaintext) => plaintext,
            Err(err) => return format!("ERR:DECRYPT {err}").into_bytes(),
        };
        if let Some(callback) = &self.on_plaintext {
            callback(&plaintext);
        }
        let ack = format!("OK:{}", plaintext.chars().count());
        let reply = match &self.shared_keys {
            Some(keys) => {
                let schedule = KeySchedule::explicit(keys.clone()).expect("validated at bind");
                encrypt(&ack, &schedule, &self.codec).and_then(|ct| Envelope::external(&ct))
            }
            None => encrypt_auto(&ack, &self.codec)
                .and_then(|(ct, schedule)| Envelope::in_band(&ct, &schedule)),
        };
        reply
            .expect("acks are in-alphabet and shared keys are capped")
            .encode_binary()
    }
}

/// A running demo server. Dropping it (or calling [`shutdown`](Self::shutdown))
/// stops the accept loop and joins every connection thread.
pub struct Server {
    addr: SocketAddr,
    stop: Arc<AtomicBool>,
    handle: Option<JoinHandle<()>>,
}

impl Server {
    pub fn bind(addr: impl ToSocketAddrs, options: ServerOptions) -> Result<Server, NetError> {
        if let Some(keys) = &options.shared_keys {
            validate_shared_keys(keys, &options.codec)?;
        }
        let listener = TcpListener::bind(addr)?;
        listener.set_nonblocking(true)?;
        let addr = listener.local_addr()?;
        let stop = Arc::new(AtomicBool::new(false));
        let state = Arc::new(ServerState {
            codec: options.codec,
            shared_keys: options.shared_keys,
            max_frame_len: options.max_frame_len.unwrap_or(DEFAULT_MAX_FRAME_LEN),
            on_plaintext: options.on_plaintext,
        });
        let accept_stop = Arc::clone(&stop);
        let handle = thread::spawn(move || accept_loop(listener, state, accept_stop));
        Ok(Server {
            addr,
            stop,
            handle: Some(handle),
        })
    }

    pub fn local_addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn shutdown(mut self) {
        self.stop_and_join();
    }

    fn stop_and_join(&mut self) {
        self.stop.store(true, Ordering::SeqCst);
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}

impl Drop for Server {
    fn drop(&mut self) {
        self.stop_and_join();
    }
}

fn accept_loop(listener: TcpListener, state: Arc<ServerState>, stop: Arc<AtomicBool>) {
    let mut connections: Vec<JoinHandle<()>> = Vec::new();
    while !stop.load(Ordering::SeqCst) {
        match listener.accept() {
            Ok((stream, peer)) => {
                log::debug!("accepted connection from {peer}");
                let state = Arc::clone(&state);
                let stop = Arc::clone(&stop);
                connections.push(thread::spawn(move || {
                    handle_connection(stream, state, stop);
                }));
            }
            Err(err) if err.kind() == ErrorKind::WouldBlock => thread::sleep(TICK),
            Err(err) => {
                log::warn!("accept failed: {err}");
                thread::sleep(TICK);
            }
        }
        connections.retain(|handle| !handle.is_finished());
    }
    for handle in connections {
        let _ = handle.join();
    }
}

fn handle_connection(mut stream: TcpStream, state: Arc<ServerState>, stop: Arc<AtomicBool>) {
    if stream.set_read_timeout(Some(TICK)).is_err()
        || stream
            .set_write_timeout(Some(Duration::from_secs(1)))
            .is_err()
    {
        return;
    }
    loop {
        match read_frame_cooperative(&mut stream, state.max_frame_len, &stop) {
            Ok(FrameOutcome::Frame(payload)) => {
                let reply = state.respond(&payload);
                if write_frame(&mut stream, &reply, u32::MAX as usize).is_err() {
                    break;
                }
            }
            Ok(FrameOutcome::Oversize(len)) => {
                // The oversize payload was never read, so the stream is
                // desynchronized; report and drop the connection.
                let message = format!(
                    "ERR:OVERSIZE frame of {len} bytes exceeds {}",
                    state.max_frame_len
                );
                let _ = write_frame(&mut stream, message.as_bytes(), u32::MAX as usize);
                break;
            }
            Ok(FrameOutcome::Closed | FrameOutcome::Stopped) => break,
            Err(err) => {
                log::debug!("connection error: {err}");
                break;
            }
        }
    }
}

enum FrameOutcome {
    Frame(Vec<u8>),
    Oversize(usize),
    Closed,
    Stopped,
}

fn read_frame_cooperative(
    stream: &mut TcpStream,
    max: usize,
    stop: &AtomicBool,
) -> Result<FrameOutcome, NetError> {
    let mut header = [0u8; 4];
    match fill(stream, &mut header, stop)? {
        Fill::Done => {}
        Fill::Eof(0) => return Ok(FrameOutcome::Closed),
        Fill::Eof(_) => return Err(NetError::Protocol("peer closed mid-frame".to_string())),
        Fill::Stopped => return Ok(FrameOutcome::Stopped),
    }
    let len = u32::from_be_bytes(header) as usize;
    if len > max {
        return Ok(FrameOutcome::Oversize(len));
    }
    let mut payload = vec![0u8; len];
    match fill(stream, &mut payload, stop)? {
        Fill::Done => Ok(FrameOutcome::Frame(payload)),
        Fill::Eof(_) => Err(NetError::Protocol("peer closed mid-frame".to_string())),
        Fill::Stopped => Ok(FrameOutcome::Stopped),
    }
}

enum Fill {
    Done,
    Eof(usize),
    Stopped,
}

/// Read until `buf` is full, keeping the fill count across timeout ticks so
/// a stop check never discards bytes already received.
fn fill(stream: &mut TcpStream, buf: &mut [u8], stop: &AtomicBool) -> io::Result<Fill> {
    let mut filled = 0;
    while filled < buf.len() {
        if stop.load(Ordering::SeqCst) {
            return Ok(Fill::Stopped);
        }
        match stream.read(&mut buf[filled..]) {
            Ok(0) => return Ok(Fill::Eof(filled)),
            Ok(n) => filled += n,
            Err(err)
                if matches!(
                    err.kind(),
                    ErrorKind::WouldBlock | ErrorKind::TimedOut | ErrorKind::Interrupted
                ) =>
            {
                continue;
            }
            Err(err) => return Err(err),
        }
    }
    Ok(Fill::Done)
}

/// Encrypt `message`, send it as one framed envelope, and return the
/// decrypted ack. Server-side failures come back as
/// [`NetError::Protocol`] carrying the `ERR:` reply.
pub fn send(
    addr: impl ToSocketAddrs,
    message: &str,
    options: &SendOptions,
) -> Result<String, NetError> {
    if let Some(keys) = &options.shared_keys {
        validate_shared_keys(keys, &options.codec)?;
    }
    let max_frame_len = options.max_frame_len.unwrap_or(DEFAULT_MAX_FRAME_LEN);
    let envelope = match &options.shared_keys {
        Some(keys) => {
            let schedule = KeySchedule::explicit(keys.clone())?;
            let ciphertext = encrypt(message, &schedule, &options.codec)?;
            Envelope::external(&ciphertext)?
        }
        None => {
            let (ciphertext, schedule) = encrypt_auto(message, &options.codec)?;
            Envelope::in_band(&ciphertext, &schedule)?
        }
    };

    let target = addr
        .to_socket_addrs()?
        .next()
        .ok_or_else(|| NetError::Protocol("address resolved to nothing".to_string()))?;
    let mut stream = TcpStream::connect_timeout(&target, options.timeout)?;
    stream.set_read_timeout(Some(options.timeout))?;
    stream.set_write_timeout(Some(options.timeout))?;

    write_frame(&mut stream, &envelope.encode_binary(), max_frame_len)?;
    let reply = read_frame(&mut stream, max_frame_len).map_err(|err| match err {
        NetError::Io(io) if matches!(io.kind(), ErrorKind::WouldBlock | ErrorKind::TimedOut) => {
            NetError::Timeout(options.timeout)
        }
        other => other,
    })?;

    if reply.starts_with(b"ERR:") {
        return Err(NetError::Protocol(
            String::from_utf8_lossy(&reply).into_owned(),
        ));
    }
    let envelope = Envelope::decode_binary(&reply)?;
    let schedule = match envelope.schedule() {
        Some(schedule) => schedule,
        None => match &options.shared_keys {
            Some(keys) => KeySchedule::explicit(keys.clone())?,
            None => {
                return Err(NetError::Protocol(
                    "reply carries no keys and none are configured".to_string(),
                ))
            }
        },
    };
    Ok(decrypt(&envelope.ciphertext(), &schedule, &options.codec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    #[test]
    fn frames_round_trip_in_memory() {
        let mut wire = Vec::new();
        write_frame(&mut wire, b"hello", 1024).unwrap();
        write_frame(&mut wire, b"", 1024).unwrap();
        let mut reader = Cursor::new(wire);
        assert_eq!(read_frame(&mut reader, 1024).unwrap(), b"hello");
        assert_eq!(read_frame(&mut reader, 1024).unwrap(), b"");
    }

    #[test]
    fn frame_header_is_big_endian_length() {
        let mut wire = Vec::new();
        write_frame(&mut wire, b"abc", 1024).unwrap();
        assert_eq!(&wire, &[0, 0, 0, 3, b'a', b'b', b'c']);
    }

    #[test]
    fn write_frame_rejects_oversize_payload() {
        let mut wire = Vec::new();
        assert!(matches!(
            write_frame(&mut wire, &[0u8; 32], 16),
            Err(NetError::FrameOversize { len: 32, max: 16 })
        ));
        assert!(wire.is_empty());
    }

    #[test]
    fn read_frame_rejects_oversize_header_before_reading() {
        let mut wire = Vec::new();
        wire.extend_from_slice(&1_000_000u32.to_be_bytes());
        let mut reader = Cursor::new(wire);
        assert!(matches!(
            read_frame(&mut reader, 1024),
            Err(NetError::FrameOversize {
                len: 1_000_000,
                max: 1024
            })
        ));
    }

    #[test]
    fn read_frame_propagates_truncation() {
        let mut wire = Vec::new();
        write_frame(&mut wire, b"hello", 1024).unwrap();
        wire.truncate(6);
        let mut reader = Cursor::new(wire);
        assert!(matches!(
            read_frame(&mut reader, 1024),
            Err(NetError::Io(_))
        ));
    }

    #[test]
    fn shared_key_cap_tracks_codec() {
        let codec = CodecConfig::paper();
        let cap = u64::from(u32::MAX) - 99;
        assert!(validate_shared_keys(&[cap], &codec).is_ok());
        assert!(validate_shared_keys(&[cap + 1], &codec).is_err());
        assert!(validate_shared_keys(&[], &codec).is_err());
    }
}
