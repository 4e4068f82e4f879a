//! Command-line front end. All real work happens in the library; this file
//! only maps arguments onto it.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use asub::analysis::{self, AttackOptions, FrequencyTable};
use asub::baselines::{self, KeywordKey, ShiftKey};
use asub::cipher::{self, CipherText, KeySchedule};
use asub::codec::CodecConfig;
use asub::envelope::{parse_value_list, Envelope};
use asub::error::Error;
use asub::net::{self, NetError, SendOptions, Server, ServerOptions};

#[derive(Parser)]
#[command(
    name = "asub",
    version,
    about = "Digit-reversal substitution cipher toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encrypt text into an envelope.
    Encrypt(EncryptArgs),
    /// Decrypt an envelope or raw ciphertext values.
    Decrypt(DecryptArgs),
    /// Show the keys auto-derived from a text.
    Keys(KeysArgs),
    /// Recover keys from ciphertext.
    Attack(AttackArgs),
    /// Inspect statistical properties of the cipher.
    Analyze(AnalyzeArgs),
    /// Run the classical baseline ciphers.
    Baseline(BaselineArgs),
    /// Serve the loopback TCP demo.
    Serve(ServeArgs),
    /// Send one message to a demo server.
    Send(SendArgs),
}

/// Plaintext input: inline argument, file, or stdin. File and stdin input
/// lose one trailing newline so `echo TEXT |` works; use `printf` for exact
/// control.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct TextInput {
    /// The text itself.
    text: Option<String>,

    /// Read the text from a file.
    #[arg(long, value_name = "PATH")]
    in_file: Option<PathBuf>,

    /// Read the text from standard input.
    #[arg(long)]
    stdin: bool,
}

impl TextInput {
    fn read(&self) -> Result<String, CliError> {
        let raw = if let Some(text) = &self.text {
            return Ok(text.clone());
        } else if let Some(path) = &self.in_file {
            fs::read_to_string(path)?
        } else {
            let mut buffer = String::new();
            io::stdin().read_to_string(&mut buffer)?;
            buffer
        };
        Ok(strip_line_ending(raw))
    }
}

fn strip_line_ending(mut text: String) -> String {
    if text.ends_with('\n') {
        text.pop();
        if text.ends_with('\r') {
            text.pop();
        }
    }
    text
}

/// Ciphertext input: an envelope (inline, file, or stdin; `--binary` for the
/// binary form) or raw values via `--values`.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct CipherInput {
    /// Envelope text.
    envelope: Option<String>,

    /// Read an envelope from a file.
    #[arg(long, value_name = "PATH")]
    in_file: Option<PathBuf>,

    /// Read an envelope from standard input.
    #[arg(long)]
    stdin: bool,

    /// Raw ciphertext values, e.g. "(1084,1251)" or "1084,1251".
    #[arg(long, value_name = "LIST")]
    values: Option<String>,
}

enum LoadedCipher {
    /// An envelope, which names its own mode and may carry keys.
    Enveloped(Envelope),
    /// Bare values; mode and keys must come from flags.
    Raw(Vec<u64>),
}

impl CipherInput {
    fn load(&self, binary: bool) -> Result<LoadedCipher, CliError> {
        if let Some(values) = &self.values {
            return Ok(LoadedCipher::Raw(parse_value_list(values)?));
        }
        let bytes = if let Some(text) = &self.envelope {
            text.clone().into_bytes()
        } else if let Some(path) = &self.in_file {
            fs::read(path)?
        } else {
            let mut buffer = Vec::new();
            io::stdin().read_to_end(&mut buffer)?;
            buffer
        };
        let envelope = if binary {
            Envelope::decode_binary(&bytes)?
        } else {
            let mut text = String::from_utf8(bytes)
                .map_err(|_| CliError::Usage("envelope text is not UTF-8".to_string()))?;
            // Shell substitution strips the final newline; restore it.
            if !text.ends_with('\n') {
                text.push('\n');
            }
            Envelope::decode_text(&text)?
        };
        Ok(LoadedCipher::Enveloped(envelope))
    }
}

#[derive(Args)]
struct EncryptArgs {
    #[command(flatten)]
    input: TextInput,

    /// Codec mode: paper (codes 10-99) or extended (codes 0-255).
    #[arg(long, default_value = "paper")]
    mode: String,

    /// Explicit keys, comma-separated. Without this, two keys are derived
    /// from the text.
    #[arg(long, value_name = "LIST")]
    keys: Option<String>,

    /// Leave the keys out of the envelope. Requires --keys, since derived
    /// keys would be unrecoverable.
    #[arg(long, requires = "keys")]
    external: bool,

    /// Emit the binary envelope instead of text.
    #[arg(long)]
    binary: bool,

    /// Write the envelope to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out_file: Option<PathBuf>,
}

#[derive(Args)]
struct DecryptArgs {
    #[command(flatten)]
    input: CipherInput,

    /// Codec mode for --values input; envelopes carry their own mode.
    #[arg(long, default_value = "paper")]
    mode: String,

    /// Keys, comma-separated. Overrides in-band keys; required when the
    /// input carries none.
    #[arg(long, value_name = "LIST")]
    keys: Option<String>,

    /// Treat file or stdin input as a binary envelope.
    #[arg(long)]
    binary: bool,

    /// Write the plaintext to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out_file: Option<PathBuf>,
}

#[derive(Args)]
struct KeysArgs {
    #[command(flatten)]
    input: TextInput,

    #[arg(long, default_value = "paper")]
    mode: String,
}

#[derive(Args)]
struct AttackArgs {
    #[command(subcommand)]
    kind: AttackKind,
}

#[derive(Subcommand)]
enum AttackKind {
    /// Recover keys from a plaintext/ciphertext pair.
    KnownPlaintext(KnownPlaintextArgs),
    /// Enumerate feasible keys from ciphertext alone and rank decryptions.
    CiphertextOnly(CiphertextOnlyArgs),
}

#[derive(Args)]
struct KnownPlaintextArgs {
    /// The known plaintext, same length as the ciphertext.
    #[arg(long)]
    plaintext: String,

    #[command(flatten)]
    input: CipherInput,

    /// Codec mode for --values input.
    #[arg(long, default_value = "paper")]
    mode: String,

    /// Assumed number of keys in the schedule.
    #[arg(long, default_value_t = 2)]
    key_count: usize,

    /// Treat file or stdin input as a binary envelope.
    #[arg(long)]
    binary: bool,
}

#[derive(Args)]
struct CiphertextOnlyArgs {
    #[command(flatten)]
    input: CipherInput,

    /// Codec mode for --values input.
    #[arg(long, default_value = "paper")]
    mode: String,

    /// Assumed number of keys in the schedule.
    #[arg(long, default_value_t = 2)]
    key_count: usize,

    /// Abort if more key tuples than this are feasible.
    #[arg(long, default_value_t = 1_000_000)]
    limit: u64,

    /// Print every candidate instead of the top ten.
    #[arg(long)]
    all: bool,

    /// Score against this frequency table file instead of the built-in
    /// English one.
    #[arg(long, value_name = "PATH")]
    freq_table: Option<PathBuf>,

    /// Treat file or stdin input as a binary envelope.
    #[arg(long)]
    binary: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(subcommand)]
    kind: AnalyzeKind,
}

#[derive(Subcommand)]
enum AnalyzeKind {
    /// Show which ciphertext values each plaintext symbol maps to.
    Diffusion(DiffusionArgs),
}

#[derive(Args)]
struct DiffusionArgs {
    #[command(flatten)]
    input: TextInput,

    #[arg(long, default_value = "paper")]
    mode: String,
}

#[derive(Args)]
struct BaselineArgs {
    #[command(subcommand)]
    kind: BaselineKind,
}

#[derive(Subcommand)]
enum BaselineKind {
    /// Monoalphabetic shift: lowercase in, uppercase out.
    Mono(MonoArgs),
    /// Keyword polyalphabetic shift, keyword letters counted from one.
    Keyword(KeywordArgs),
}

#[derive(Args)]
struct MonoArgs {
    #[command(flatten)]
    input: TextInput,

    /// Shift amount, 0-25.
    #[arg(long)]
    shift: u32,

    /// Decrypt instead of encrypt.
    #[arg(long)]
    decrypt: bool,
}

#[derive(Args)]
struct KeywordArgs {
    #[command(flatten)]
    input: TextInput,

    /// Lowercase keyword.
    #[arg(long)]
    key: String,

    /// Decrypt instead of encrypt.
    #[arg(long)]
    decrypt: bool,
}

#[derive(Args)]
struct ServeArgs {
    /// Port to listen on (loopback only).
    #[arg(long)]
    port: u16,

    #[arg(long, default_value = "paper")]
    mode: String,

    /// Shared keys for envelopes that arrive without in-band keys.
    #[arg(long, value_name = "LIST")]
    external_keys: Option<String>,
}

#[derive(Args)]
struct SendArgs {
    /// Server address, e.g. 127.0.0.1:4000.
    #[arg(long)]
    addr: String,

    /// Message to encrypt and send.
    #[arg(long)]
    message: String,

    #[arg(long, default_value = "paper")]
    mode: String,

    /// Shared keys; the message is sent without in-band keys.
    #[arg(long, value_name = "LIST")]
    external_keys: Option<String>,

    #[arg(long, default_value_t = 5)]
    timeout_secs: u64,
}

enum CliError {
    Data(Error),
    Net(NetError),
    Io(io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Data(err) => write!(f, "{}: {err}", err.name()),
            CliError::Net(err) => write!(f, "net: {err}"),
            CliError::Io(err) => write!(f, "io: {err}"),
            CliError::Usage(message) => f.write_str(message),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Data(err)
    }
}

impl From<NetError> for CliError {
    fn from(err: NetError) -> Self {
        CliError::Net(err)
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Io(err)
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Encrypt(args) => cmd_encrypt(args),
        Command::Decrypt(args) => cmd_decrypt(args),
        Command::Keys(args) => cmd_keys(args),
        Command::Attack(args) => match args.kind {
            AttackKind::KnownPlaintext(args) => cmd_known_plaintext(args),
            AttackKind::CiphertextOnly(args) => cmd_ciphertext_only(args),
        },
        Command::Analyze(args) => match args.kind {
            AnalyzeKind::Diffusion(args) => cmd_diffusion(args),
        },
        Command::Baseline(args) => match args.kind {
            BaselineKind::Mono(args) => cmd_mono(args),
            BaselineKind::Keyword(args) => cmd_keyword(args),
        },
        Command::Serve(args) => cmd_serve(args),
        Command::Send(args) => cmd_send(args),
    }
}

fn mode_config(name: &str) -> Result<CodecConfig, CliError> {
    CodecConfig::by_name(name).ok_or_else(|| CliError::Data(Error::UnknownMode(name.to_string())))
}

fn parse_keys(list: &str) -> Result<KeySchedule, CliError> {
    Ok(KeySchedule::explicit(parse_value_list(list)?)?)
}

fn write_output(bytes: &[u8], out_file: Option<&Path>) -> Result<(), CliError> {
    match out_file {
        Some(path) => fs::write(path, bytes)?,
        None => {
            let mut stdout = io::stdout();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn cmd_encrypt(args: EncryptArgs) -> Result<(), CliError> {
    let config = mode_config(&args.mode)?;
    let text = args.input.read()?;
    let (ciphertext, schedule) = match &args.keys {
        Some(list) => {
            let schedule = parse_keys(list)?;
            (cipher::encrypt(&text, &schedule, &config)?, schedule)
        }
        None => cipher::encrypt_auto(&text, &config)?,
    };
    let envelope = if args.external {
        Envelope::external(&ciphertext)?
    } else {
        Envelope::in_band(&ciphertext, &schedule)?
    };
    let bytes = if args.binary {
        envelope.encode_binary()
    } else {
        envelope.encode_text().into_bytes()
    };
    write_output(&bytes, args.out_file.as_deref())
}

fn cmd_decrypt(args: DecryptArgs) -> Result<(), CliError> {
    let override_schedule = args.keys.as_deref().map(parse_keys).transpose()?;
    let (ciphertext, config, in_band) = match args.input.load(args.binary)? {
        LoadedCipher::Enveloped(envelope) => {
            let config = mode_config(envelope.mode_name())?;
            (envelope.ciphertext(), config, envelope.schedule())
        }
        LoadedCipher::Raw(values) => {
            let config = mode_config(&args.mode)?;
            (CipherText::new(values, config.mode_name()), config, None)
        }
    };
    let schedule = override_schedule
        .or(in_band)
        .ok_or_else(|| CliError::Usage("input carries no keys; pass --keys".to_string()))?;
    let plaintext = cipher::decrypt(&ciphertext, &schedule, &config)?;
    write_output(plaintext.as_bytes(), args.out_file.as_deref())
}

fn cmd_keys(args: KeysArgs) -> Result<(), CliError> {
    let config = mode_config(&args.mode)?;
    let schedule = KeySchedule::derive(&args.input.read()?, &config)?;
    println!(
        "{}",
        format_key_report(schedule.keys().iter().map(|&k| Some(k)))
    );
    Ok(())
}

fn format_key_report(keys: impl Iterator<Item = Option<u64>>) -> String {
    keys.enumerate()
        .map(|(i, key)| match key {
            Some(key) => format!("K{}={key}", i + 1),
            None => format!("K{}=?", i + 1),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_known_plaintext(args: KnownPlaintextArgs) -> Result<(), CliError> {
    let (ciphertext, config) = load_attack_input(&args.input, args.binary, &args.mode)?;
    let recovered =
        analysis::known_plaintext_attack(&args.plaintext, &ciphertext, &config, args.key_count)?;
    println!("{}", format_key_report(recovered.classes().iter().copied()));
    Ok(())
}

fn cmd_ciphertext_only(args: CiphertextOnlyArgs) -> Result<(), CliError> {
    let (ciphertext, config) = load_attack_input(&args.input, args.binary, &args.mode)?;
    let table = match &args.freq_table {
        Some(path) => FrequencyTable::parse(&fs::read_to_string(path)?)?,
        None => FrequencyTable::english().clone(),
    };
    let options = AttackOptions {
        key_count: args.key_count,
        limit: args.limit,
    };
    let report = analysis::ciphertext_only_attack(&ciphertext, &config, &table, &options)?;
    eprintln!("search space: {} candidates", report.search_space_size);
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    let shown = if args.all {
        report.candidates.len()
    } else {
        report.candidates.len().min(10)
    };
    for candidate in &report.candidates[..shown] {
        println!(
            "{}\t{:.4}\t{}",
            candidate.schedule, candidate.score, candidate.decoded
        );
    }
    Ok(())
}

fn load_attack_input(
    input: &CipherInput,
    binary: bool,
    mode: &str,
) -> Result<(CipherText, CodecConfig), CliError> {
    match input.load(binary)? {
        LoadedCipher::Enveloped(envelope) => {
            let config = mode_config(envelope.mode_name())?;
            Ok((envelope.ciphertext(), config))
        }
        LoadedCipher::Raw(values) => {
            let config = mode_config(mode)?;
            Ok((CipherText::new(values, config.mode_name()), config))
        }
    }
}

fn cmd_diffusion(args: DiffusionArgs) -> Result<(), CliError> {
    let config = mode_config(&args.mode)?;
    let text = args.input.read()?;
    let (ciphertext, _) = cipher::encrypt_auto(&text, &config)?;
    let report = analysis::diffusion_report(&text, &ciphertext)?;
    for (symbol, values) in report.per_symbol() {
        let spread = values
            .iter()
            .map(|(value, count)| format!("{value}x{count}"))
            .collect::<Vec<_>>()
            .join(",");
        println!("{symbol}\t{spread}");
    }
    println!("max_distinct\t{}", report.max_distinct());
    Ok(())
}

fn cmd_mono(args: MonoArgs) -> Result<(), CliError> {
    let key = ShiftKey::new(args.shift)?;
    let text = args.input.read()?;
    let output = if args.decrypt {
        baselines::mono_decrypt(&text, key)?
    } else {
        baselines::mono_encrypt(&text, key)?
    };
    println!("{output}");
    Ok(())
}

fn cmd_keyword(args: KeywordArgs) -> Result<(), CliError> {
    let key = KeywordKey::new(&args.key)?;
    let text = args.input.read()?;
    let output = if args.decrypt {
        baselines::keyword_decrypt(&text, &key)?
    } else {
        baselines::keyword_encrypt(&text, &key)?
    };
    println!("{output}");
    Ok(())
}

fn cmd_serve(args: ServeArgs) -> Result<(), CliError> {
    let options = ServerOptions {
        codec: mode_config(&args.mode)?,
        shared_keys: args
            .external_keys
            .as_deref()
            .map(parse_value_list)
            .transpose()?,
        max_frame_len: None,
        on_plaintext: Some(Arc::new(|text: &str| {
            println!("recv: {text}");
        })),
    };
    let server = Server::bind(("127.0.0.1", args.port), options)?;
    println!("listening on {}", server.local_addr());
    io::stdout().flush()?;
    loop {
        thread::sleep(Duration::from_secs(3600));
    }
}

fn cmd_send(args: SendArgs) -> Result<(), CliError> {
    let options = SendOptions {
        codec: mode_config(&args.mode)?,
        shared_keys: args
            .external_keys
            .as_deref()
            .map(parse_value_list)
            .transpose()?,
        timeout: Duration::from_secs(args.timeout_secs),
        max_frame_len: None,
    };
    let reply = net::send(args.addr.as_str(), &args.message, &options)?;
    println!("{reply}");
    Ok(())
}
