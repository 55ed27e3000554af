use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rmq::complexity::{format_table, format_table_csv};
use rmq::sim::{csv_row, ebn0_db, CSV_HEADER};
use rmq::{
    encode, ml_decode_instrumented, ml_decode_with, parse_symbols, run_trials, supercode_decode,
    supercode_decode_instrumented, table1, BruteForce, ChannelConfig, CodeParams, CosetCode,
    DecoderChoice, Error, HardDecision, InfoVector, ReceivedVector,
};

mod samples;

#[derive(Parser)]
#[command(
    name = "rmq",
    version,
    about = "Encode, decode and simulate RM_q(1,m) codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Ml,
    Oracle,
    Supercode,
}

#[derive(Subcommand)]
enum Command {
    /// Print u·G_m mod q as comma-separated symbols.
    Encode {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        /// Information symbols, e.g. 1,2,3
        #[arg(long)]
        u: String,
    },
    /// Decode a file of `re,im` samples, one per line.
    Decode {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        samples: PathBuf,
        #[arg(long, value_enum, default_value = "ml")]
        mode: Mode,
        /// Coset leaders, one per line (supercode mode).
        #[arg(long)]
        cosets: Option<PathBuf>,
        /// Also print complex addition and multiplication counts.
        #[arg(long)]
        count: bool,
        /// Use the full q-way hard decision instead of quadrant pruning.
        #[arg(long)]
        full_search: bool,
    },
    /// Monte-Carlo word and symbol error rates as CSV.
    Simulate {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        /// Es/N0 in dB: a single value or start:step:stop
        #[arg(long)]
        snr: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "ml")]
        mode: Mode,
        #[arg(long)]
        cosets: Option<PathBuf>,
        /// Append an Eb/N0 column (q = 2^h only).
        #[arg(long)]
        ebn0: bool,
    },
    /// Predicted operation counts for each (m, q) pair.
    Complexity {
        /// Orders, e.g. 4,5,6
        #[arg(long)]
        m: String,
        /// Moduli (powers of two), e.g. 2,4,8,16
        #[arg(long)]
        q: String,
        #[arg(long)]
        csv: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("RMQ_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| format!("RMQ_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<String, Error> {
    match command {
        Command::Encode { q, m, u } => {
            let params = CodeParams::new(q, m)?;
            let u = InfoVector::new(&params, parse_symbols(&u)?)?;
            Ok(format!("{}\n", encode(&params, &u)?))
        }
        Command::Decode {
            q,
            m,
            samples,
            mode,
            cosets,
            count,
            full_search,
        } => {
            let params = CodeParams::new(q, m)?;
            let y = samples::read(&samples)?;
            decode(&params, &y, mode, cosets.as_deref(), count, full_search)
        }
        Command::Simulate {
            q,
            m,
            snr,
            trials,
            seed,
            mode,
            cosets,
            ebn0,
        } => {
            let params = CodeParams::new(q, m)?;
            simulate(&params, &snr, trials, seed, mode, cosets.as_deref(), ebn0)
        }
        Command::Complexity { m, q, csv } => {
            let ms = parse_symbols(&m)?;
            let hs = parse_symbols(&q)?
                .into_iter()
                .map(|q| {
                    if q >= 2 && q.is_power_of_two() {
                        Ok(q.trailing_zeros())
                    } else {
                        Err(Error::UnsupportedModulus(q))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rows = table1(&ms, &hs)?;
            Ok(if csv {
                format_table_csv(&rows)
            } else {
                format_table(&rows)
            })
        }
    }
}

fn load_cosets(params: &CodeParams, path: Option<&Path>) -> Result<CosetCode, Error> {
    let path = path.ok_or_else(|| {
        Error::InvalidParameters("supercode mode requires --cosets <FILE>".into())
    })?;
    CosetCode::from_file(*params, path)
}

fn decode(
    params: &CodeParams,
    y: &ReceivedVector,
    mode: Mode,
    cosets: Option<&Path>,
    count: bool,
    full_search: bool,
) -> Result<String, Error> {
    if count && full_search {
        return Err(Error::InvalidParameters(
            "--count applies to the quadrant-pruned decoder only".into(),
        ));
    }
    let mut out = String::new();
    match mode {
        Mode::Ml => {
            let (result, counts) = if count {
                let (r, c) = ml_decode_instrumented(params, y)?;
                (r, Some(c))
            } else {
                let hd = if full_search {
                    HardDecision::Full
                } else {
                    HardDecision::Pruned
                };
                (ml_decode_with(params, y, hd)?, None)
            };
            push_result(&mut out, &result);
            if let Some(c) = counts {
                out.push_str(&format!("{c}\n"));
            }
        }
        Mode::Oracle => {
            if count {
                return Err(Error::InvalidParameters(
                    "--count is not available in oracle mode".into(),
                ));
            }
            let result = BruteForce::default().decode(params, y)?.best;
            push_result(&mut out, &result);
        }
        Mode::Supercode => {
            let code = load_cosets(params, cosets)?;
            let (decision, counts) = if count {
                let (d, c) = supercode_decode_instrumented(&code, y)?;
                (d, Some(c))
            } else {
                (supercode_decode(&code, y)?, None)
            };
            out.push_str(&format!("coset={}\n", decision.coset_index));
            push_result(&mut out, &decision.result);
            if let Some(c) = counts {
                out.push_str(&format!("{c}\n"));
            }
        }
    }
    Ok(out)
}

fn push_result(out: &mut String, result: &rmq::DecodeResult) {
    out.push_str(&format!("info={}\n", result.info));
    out.push_str(&format!("codeword={}\n", result.codeword));
    out.push_str(&format!("correlation={}\n", result.correlation));
}

/// Expands `start:step:stop` (inclusive) or a single value.
fn snr_points(range: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::InvalidParameters(format!("invalid SNR range {range:?}"));
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = range.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, step, stop] => {
            let (start, step, stop) = (parse(start)?, parse(step)?, parse(stop)?);
            if !start.is_finite()
                || !stop.is_finite()
                || !step.is_finite()
                || step <= 0.0
                || stop < start
            {
                return Err(bad());
            }
            let count = ((stop - start) / step + 1e-9).floor() as u64 + 1;
            if count > 10_000 {
                return Err(bad());
            }
            Ok((0..count)
                .map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9)
                .collect())
        }
        _ => Err(bad()),
    }
}

fn simulate(
    params: &CodeParams,
    snr: &str,
    trials: u64,
    seed: u64,
    mode: Mode,
    cosets: Option<&Path>,
    with_ebn0: bool,
) -> Result<String, Error> {
    let points = snr_points(snr)?;
    if with_ebn0 && params.h().is_none() {
        return Err(Error::UnsupportedModulus(params.q()));
    }
    let decoder = match mode {
        Mode::Ml => DecoderChoice::Ml,
        Mode::Oracle => DecoderChoice::Oracle(BruteForce::default()),
        Mode::Supercode => DecoderChoice::Supercode(load_cosets(params, cosets)?),
    };
    let mut out = String::from(CSV_HEADER);
    if with_ebn0 {
        out.push_str(",ebn0_db");
    }
    out.push('\n');
    for snr_db in points {
        let config = ChannelConfig::new(snr_db, seed)?;
        let record = run_trials(params, &config, trials, &decoder)?;
        out.push_str(&csv_row(&record, params));
        if let Some(eb) = with_ebn0.then(|| ebn0_db(params, snr_db)).flatten() {
            out.push_str(&format!(",{:.6}", eb));
        }
        out.push('\n');
    }
    Ok(out)
}
