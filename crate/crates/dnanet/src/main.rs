use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dnanet::records::{parse_chain, parse_frames, render_chain, render_frames};
use dnanet::stats::{append_mining, hop_csv, MiningRecord};
use dnanet::{topology, Error};
use dnanet_core::channel::{route_and_deliver, NoiseModel, Topology};
use dnanet_core::ledger::{extend, replicate, validate_chain, DnaChain, LedgerError, ReplicaSet};
use dnanet_core::stack::{
    codon_view, encode_message, Address, EccMode, Frame, PresentationMode, Reassembler, StackConfig,
};

/// Simulate a nucleotide-encoded network stack and a DNA ledger.
#[derive(Parser, Debug)]
#[command(name = "dnanet", version, arg_required_else_help = true)]
struct Cli {
    /// Run the built-in walkthrough: a 3-cell send and a 3-replica fork resolution.
    #[arg(long)]
    demo: bool,
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Args, Debug)]
struct Opts {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Per-base substitution probability on each hop.
    #[arg(long, global = true, default_value_t = 0.0)]
    p_sub: f64,
    /// Per-base insertion probability on each hop.
    #[arg(long, global = true, default_value_t = 0.0)]
    p_ins: f64,
    /// Per-base deletion probability on each hop.
    #[arg(long, global = true, default_value_t = 0.0)]
    p_del: f64,
    /// Frame error correction.
    #[arg(long, global = true, value_enum, default_value_t = Ecc::Triple)]
    ecc: Ecc,
    /// Leading A's required of a block digest.
    #[arg(long, global = true, default_value_t = 2)]
    difficulty: u8,
    /// Maximum segment payload in nucleotides.
    #[arg(long, global = true, default_value_t = 512)]
    segment_size: usize,
    /// Topology file.
    #[arg(long, global = true)]
    topology: Option<PathBuf>,
    /// Source address (hex).
    #[arg(long, global = true, value_parser = parse_addr, default_value = "0001")]
    src: Address,
    /// Destination address (hex, ffff for broadcast).
    #[arg(long, global = true, value_parser = parse_addr, default_value = "0002")]
    dst: Address,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// CSV statistics file.
    #[arg(long, global = true)]
    stats_csv: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Ecc {
    None,
    Triple,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Encode a file into frame records.
    Encode { input: PathBuf },
    /// Reassemble frame records into the original file.
    Decode { input: PathBuf },
    /// Encode, route through a topology and decode at the destination.
    Send { payload: PathBuf },
    /// Ledger operations.
    #[command(subcommand)]
    Chain(ChainCmd),
}

#[derive(Subcommand, Debug)]
enum ChainCmd {
    /// Mine a genesis block.
    Init { payload: Option<PathBuf> },
    /// Mine one block onto a chain.
    Mine { chain: PathBuf, payload: Option<PathBuf> },
    /// Check links, indices and proof of work.
    Validate { chain: PathBuf },
    /// Copy a chain with per-base mutations.
    Replicate {
        chain: PathBuf,
        /// Per-base substitution probability.
        #[arg(long, default_value_t = 0.0)]
        p_mut: f64,
    },
    /// Keep the longest valid replica and write it out.
    Resolve {
        #[arg(required = true)]
        chains: Vec<PathBuf>,
    },
}

fn parse_addr(s: &str) -> Result<Address, String> {
    topology::parse_address(s).ok_or_else(|| format!("expected 1 to 4 hex digits, got {s:?}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    eprintln!("{}", repro_header(&cli));
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// One stderr line holding every setting, defaults included.
fn repro_header(cli: &Cli) -> String {
    let o = &cli.opts;
    let path = |p: &Option<PathBuf>| p.as_ref().map_or("-".to_string(), |p| p.display().to_string());
    let command = match (&cli.cmd, cli.demo) {
        (_, true) => "demo".to_string(),
        (Some(Cmd::Encode { .. }), _) => "encode".into(),
        (Some(Cmd::Decode { .. }), _) => "decode".into(),
        (Some(Cmd::Send { .. }), _) => "send".into(),
        (Some(Cmd::Chain(c)), _) => match c {
            ChainCmd::Init { .. } => "chain init".into(),
            ChainCmd::Mine { .. } => "chain mine".into(),
            ChainCmd::Validate { .. } => "chain validate".into(),
            ChainCmd::Replicate { p_mut, .. } => format!("chain replicate p_mut={p_mut}"),
            ChainCmd::Resolve { .. } => "chain resolve".into(),
        },
        (None, false) => "none".into(),
    };
    format!(
        "# dnanet {} command={command} seed={} p_sub={} p_ins={} p_del={} ecc={} difficulty={} segment_size={} topology={} src={} dst={} out={} stats_csv={}",
        env!("CARGO_PKG_VERSION"),
        o.seed,
        o.p_sub,
        o.p_ins,
        o.p_del,
        match o.ecc {
            Ecc::None => "none",
            Ecc::Triple => "triple",
        },
        o.difficulty,
        o.segment_size,
        path(&o.topology),
        o.src,
        o.dst,
        path(&o.out),
        path(&o.stats_csv),
    )
}

fn run(cli: &Cli) -> Result<(), Error> {
    let o = &cli.opts;
    if cli.demo {
        if cli.cmd.is_some() {
            return Err(Error::Usage("--demo takes no subcommand".into()));
        }
        return demo(o);
    }
    match cli.cmd.as_ref().expect("clap requires a subcommand or --demo") {
        Cmd::Encode { input } => {
            let frames = encode_message(&read(input)?, &stack_config(o))?;
            emit(&o.out, render_frames(&frames).as_bytes())
        }
        Cmd::Decode { input } => {
            let frames = parse_frames(&read_text(input)?)?;
            let (payload, _) = reassemble(frames, &stack_config(o))?;
            emit(&o.out, &payload)
        }
        Cmd::Send { payload } => send(o, payload),
        Cmd::Chain(c) => chain(o, c),
    }
}

fn stack_config(o: &Opts) -> StackConfig {
    StackConfig {
        src_addr: o.src,
        dst_addr: o.dst,
        max_segment_payload: o.segment_size,
        ecc: match o.ecc {
            Ecc::None => EccMode::None,
            Ecc::Triple => EccMode::Triple,
        },
        ..StackConfig::default()
    }
}

/// Feeds frames to a receiver. Damaged frames are reported and discarded.
fn reassemble<I>(frames: I, cfg: &StackConfig) -> Result<(Vec<u8>, usize), Error>
where
    I: IntoIterator,
    I::Item: Into<Result<Frame, Error>>,
{
    let mut rx = Reassembler::new(cfg.clone());
    for (i, f) in frames.into_iter().enumerate() {
        match f.into().and_then(|f| rx.push(&f).map_err(Error::from)) {
            Ok(()) => {}
            Err(e) => eprintln!("warning: frame {i} discarded: {e}"),
        }
    }
    let corrected = rx.corrected();
    Ok((rx.finish()?, corrected))
}

fn send(o: &Opts, payload: &Path) -> Result<(), Error> {
    let topo_path = o.topology.as_ref().ok_or_else(|| Error::Usage("send requires --topology".into()))?;
    let mut topo = topology::parse(&read_text(topo_path)?)?;
    let cfg = stack_config(o);
    let data = read(payload)?;
    let frames = encode_message(&data, &cfg)?;
    let noise = NoiseModel::new(o.p_sub, o.p_ins, o.p_del, o.seed)?;
    let delivery = route_and_deliver(&frames, o.src, o.dst, &mut topo, &noise)?;

    let report = hop_csv(&delivery.hops)?;
    if let Some(p) = &o.stats_csv {
        fs::write(p, &report).map_err(Error::io(p))?;
    }
    print!("{report}");

    let totals = delivery.totals();
    let receivers: Vec<Address> =
        if o.dst.is_broadcast() { delivery.delivered.keys().copied().collect() } else { vec![o.dst] };
    let mut first_error = None;
    let mut recovered_payload = None;
    for &node in &receivers {
        let got = delivery.delivered.get(&node).cloned().unwrap_or_default();
        let outcome = reassemble(got.into_iter().map(Ok::<_, Error>), &cfg).and_then(|(bytes, _)| {
            if bytes == data {
                Ok(bytes)
            } else {
                Err(Error::Mismatch(node))
            }
        });
        match outcome {
            Ok(bytes) => {
                recovered_payload.get_or_insert(bytes);
            }
            Err(e) => {
                if receivers.len() > 1 {
                    eprintln!("warning: node {node}: {e}");
                }
                first_error.get_or_insert(e);
            }
        }
    }
    let recovered = first_error.is_none() && recovered_payload.is_some();
    eprintln!(
        "result recovered={recovered} receivers={} frames={} corrupted={} corrected={} dropped={}",
        receivers.len(),
        frames.len(),
        totals.corrupted,
        totals.corrected,
        totals.dropped
    );
    match (first_error, recovered_payload) {
        (Some(e), _) => Err(e),
        (None, None) => Err(Error::Undelivered),
        (None, Some(bytes)) => match &o.out {
            Some(p) => fs::write(p, bytes).map_err(Error::io(p)),
            None => Ok(()),
        },
    }
}

fn chain(o: &Opts, cmd: &ChainCmd) -> Result<(), Error> {
    match cmd {
        ChainCmd::Init { payload } => {
            let data = read_opt(payload)?;
            let (chain, row) = timed(o.difficulty, || DnaChain::genesis(o.difficulty, &data))?;
            log_mining(o, row)?;
            emit(&o.out, render_chain(&chain).as_bytes())
        }
        ChainCmd::Mine { chain, payload } => {
            let current = load_chain(chain, o.difficulty)?;
            let data = read_opt(payload)?;
            let (next, row) = timed(o.difficulty, || extend(&current, &data))?;
            log_mining(o, row)?;
            emit(&o.out, render_chain(&next).as_bytes())
        }
        ChainCmd::Validate { chain } => {
            let c = load_chain(chain, o.difficulty)?;
            match validate_chain(&c) {
                Ok(()) => {
                    eprintln!("valid blocks={}", c.len());
                    Ok(())
                }
                Err(v) => {
                    let listing: String = v.iter().map(|v| format!("{v}\n")).collect();
                    emit(&None, listing.as_bytes())?;
                    Err(LedgerError::Validation(v).into())
                }
            }
        }
        ChainCmd::Replicate { chain, p_mut } => {
            let c = load_chain(chain, o.difficulty)?;
            let copy = replicate(&c, *p_mut, o.seed)?;
            emit(&o.out, render_chain(&copy).as_bytes())
        }
        ChainCmd::Resolve { chains } => {
            let mut set = ReplicaSet::new();
            for p in chains {
                set.insert(p.display().to_string(), load_chain(p, o.difficulty)?);
            }
            let winner = set.resolve_fork()?;
            eprintln!("winner blocks={}", winner.len());
            emit(&o.out, render_chain(&winner).as_bytes())
        }
    }
}

/// Runs a mining step and measures it. Attempts follow from the winning nonce.
fn timed(difficulty: u8, f: impl FnOnce() -> Result<DnaChain, LedgerError>) -> Result<(DnaChain, MiningRecord), Error> {
    let start = Instant::now();
    let chain = f()?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let attempts = u64::from(chain.tip().expect("mining yields a block").nonce) + 1;
    Ok((chain, MiningRecord { difficulty, attempts, wall_ms }))
}

fn log_mining(o: &Opts, row: MiningRecord) -> Result<(), Error> {
    eprintln!("mined difficulty={} attempts={}", row.difficulty, row.attempts);
    match &o.stats_csv {
        Some(p) => append_mining(p, &[row]),
        None => Ok(()),
    }
}

fn demo(o: &Opts) -> Result<(), Error> {
    let mut out = String::new();

    let mut topo = Topology::new();
    for a in 1..=3 {
        topo.add_node(Address(a))?;
    }
    topo.add_link(Address(1), Address(2), 0.5)?;
    topo.add_link(Address(2), Address(3), 0.5)?;
    topo.add_route(Address(1), Address(3), Address(2))?;
    topo.add_route(Address(2), Address(3), Address(3))?;
    let cfg = StackConfig {
        src_addr: Address(1),
        dst_addr: Address(3),
        presentation: PresentationMode::CodonView,
        ..stack_config(o)
    };
    let message = b"cells talk through gap junctions";
    let frames = encode_message(message, &cfg)?;
    let noise = NoiseModel::new(o.p_sub, o.p_ins, o.p_del, o.seed)?;
    let delivery = route_and_deliver(&frames, Address(1), Address(3), &mut topo, &noise)?;
    let got = delivery.delivered.get(&Address(3)).cloned().unwrap_or_default();
    let result = reassemble(got.into_iter().map(Ok::<_, Error>), &cfg);
    let t = delivery.totals();
    out += "[network]\n";
    out += &format!("message={:?}\n", String::from_utf8_lossy(message));
    out += &format!("codons={}\n", codon_view(message, &cfg).unwrap_or_default());
    out += &format!("path=0001>0002>0003 frames={} wire_nt={}\n", frames.len(), frames[0].to_sequence().len());
    out += &format!("corrupted={} corrected={} dropped={}\n", t.corrupted, t.corrected, t.dropped);
    out += &format!("recovered={}\n", matches!(&result, Ok((b, _)) if b == message));

    let d = o.difficulty;
    let mut base = DnaChain::genesis(d, b"genesis")?;
    base = extend(&base, b"cell 1 divides")?;
    let mut set = ReplicaSet::new();
    set.insert("cell-a", extend(&base, b"cell a grows")?);
    set.insert("cell-b", extend(&extend(&base, b"cell b grows")?, b"and grows again")?);
    set.insert("cell-c", replicate(&base, 0.01, o.seed)?);
    out += "[ledger]\n";
    for (name, c) in &set.replicas {
        let status = match validate_chain(c) {
            Ok(()) => "valid".to_string(),
            Err(v) => format!("invalid({})", v.len()),
        };
        out += &format!("{name} blocks={} {status}\n", c.len());
    }
    let winner = set.resolve_fork()?;
    out += &format!("winner blocks={} tip={}\n", winner.len(), winner.tip().expect("non-empty").digest());
    emit(&o.out, out.as_bytes())
}

fn read(p: &Path) -> Result<Vec<u8>, Error> {
    fs::read(p).map_err(Error::io(p))
}

fn read_text(p: &Path) -> Result<String, Error> {
    fs::read_to_string(p).map_err(Error::io(p))
}

fn read_opt(p: &Option<PathBuf>) -> Result<Vec<u8>, Error> {
    p.as_deref().map_or(Ok(Vec::new()), read)
}

fn load_chain(p: &Path, difficulty: u8) -> Result<DnaChain, Error> {
    parse_chain(&read_text(p)?, difficulty)
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(Error::io(p)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}
