//! AWGN channel and Monte-Carlo error-rate estimation.
//!
//! Noise streams come from ChaCha20 (`rand_chacha`). Trials are grouped in
//! blocks of [`BLOCK_TRIALS`]; block `b` draws from the generator seeded by
//! `seed` with stream id `b`, so tallies do not depend on how blocks are
//! scheduled across threads. Gaussian samples use the ziggurat transform of
//! `rand_distr::StandardNormal`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::codec::{encode, to_polyphase, CodeParams, InfoVector, PolyphaseWord};
use crate::decoder::{MlDecoder, ReceivedVector};
use crate::error::{Error, Result};
use crate::oracle::BruteForce;
use crate::supercode::{supercode_decode, CosetCode};

/// Trials per independent random stream.
pub const BLOCK_TRIALS: u64 = 1024;

/// Es/N0 per complex sample in dB, and the seed of the noise stream.
/// `snr_db = +∞` disables noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    snr_db: f64,
    seed: u64,
}

impl ChannelConfig {
    pub fn new(snr_db: f64, seed: u64) -> Result<Self> {
        if snr_db.is_nan() || snr_db == f64::NEG_INFINITY {
            return Err(Error::InvalidParameters(format!("snr_db = {snr_db}")));
        }
        Ok(Self { snr_db, seed })
    }

    pub fn noiseless(seed: u64) -> Self {
        Self {
            snr_db: f64::INFINITY,
            seed,
        }
    }

    pub fn snr_db(&self) -> f64 {
        self.snr_db
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_noiseless(&self) -> bool {
        self.snr_db == f64::INFINITY
    }

    /// Total complex noise variance `σ² = 10^(-snr_db/10)`.
    pub fn noise_variance(&self) -> f64 {
        if self.is_noiseless() {
            0.0
        } else {
            10f64.powf(-self.snr_db / 10.0)
        }
    }

    /// Generator for stream `stream` of this configuration's seed.
    pub fn stream(&self, stream: u64) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// `y_k = x_k + n_k` with circularly-symmetric Gaussian `n_k` of total
/// variance `σ²`, split equally between the real and imaginary parts.
pub fn awgn<R: Rng + ?Sized>(
    x: &PolyphaseWord,
    config: &ChannelConfig,
    rng: &mut R,
) -> ReceivedVector {
    let sigma = (config.noise_variance() / 2.0).sqrt();
    let samples = x
        .samples()
        .iter()
        .map(|&s| {
            if config.is_noiseless() {
                return s;
            }
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            s + Complex64::new(sigma * re, sigma * im)
        })
        .collect();
    ReceivedVector::new(samples).expect("finite noise")
}

/// Decoder driven by [`run_trials`].
#[derive(Debug, Clone)]
pub enum DecoderChoice {
    Ml,
    Oracle(BruteForce),
    Supercode(CosetCode),
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrialRecord {
    pub trials: u64,
    pub word_errors: u64,
    pub symbol_errors: u64,
    pub snr_db: f64,
}

impl TrialRecord {
    pub fn word_error_rate(&self) -> f64 {
        self.word_errors as f64 / self.trials as f64
    }

    /// Error rate over the `trials·(m+1)` information symbols.
    pub fn symbol_error_rate(&self, params: &CodeParams) -> f64 {
        self.symbol_errors as f64 / (self.trials as f64 * params.k() as f64)
    }

    fn merge(self, other: Self) -> Self {
        Self {
            trials: self.trials + other.trials,
            word_errors: self.word_errors + other.word_errors,
            symbol_errors: self.symbol_errors + other.symbol_errors,
            snr_db: self.snr_db,
        }
    }
}

/// CSV header for [`csv_row`].
pub const CSV_HEADER: &str = "snr_db,trials,word_errors,wer,symbol_errors,ser";

/// `snr_db,trials,word_errors,wer,symbol_errors,ser`.
pub fn csv_row(record: &TrialRecord, params: &CodeParams) -> String {
    format!(
        "{},{},{},{:.6e},{},{:.6e}",
        record.snr_db,
        record.trials,
        record.word_errors,
        record.word_error_rate(),
        record.symbol_errors,
        record.symbol_error_rate(params)
    )
}

/// Eb/N0 in dB for `q = 2^h`: `Es/N0 - 10·log10((m+1)·h/2^m)`.
pub fn ebn0_db(params: &CodeParams, esn0_db: f64) -> Option<f64> {
    let h = params.h()? as f64;
    let bits_per_sample = params.k() as f64 * h / params.n() as f64;
    Some(esn0_db - 10.0 * bits_per_sample.log10())
}

/// Encodes random messages, passes them through the channel and decodes.
/// Deterministic in `config.seed()` for any thread count. Under the coset
/// decoder a trial is a word error if the message or the coset differs.
pub fn run_trials(
    params: &CodeParams,
    config: &ChannelConfig,
    trials: u64,
    decoder: &DecoderChoice,
) -> Result<TrialRecord> {
    if trials == 0 {
        return Err(Error::InvalidParameters("trials must be at least 1".into()));
    }
    match decoder {
        DecoderChoice::Oracle(bf) => {
            bf.check_size(params)?;
        }
        DecoderChoice::Supercode(code) if code.params() != params => {
            return Err(Error::InvalidParameters(
                "coset code parameters differ from simulation parameters".into(),
            ));
        }
        _ => {}
    }
    let ml = MlDecoder::new(*params);
    let blocks = trials.div_ceil(BLOCK_TRIALS);
    let empty = TrialRecord {
        snr_db: config.snr_db(),
        ..TrialRecord::default()
    };
    (0..blocks)
        .into_par_iter()
        .map(|block| {
            let count = BLOCK_TRIALS.min(trials - block * BLOCK_TRIALS);
            run_block(params, config, block, count, decoder, &ml)
        })
        .try_reduce(|| empty, |a, b| Ok(a.merge(b)))
}

fn run_block(
    params: &CodeParams,
    config: &ChannelConfig,
    block: u64,
    count: u64,
    decoder: &DecoderChoice,
    ml: &MlDecoder,
) -> Result<TrialRecord> {
    let mut rng = config.stream(block);
    let mut record = TrialRecord {
        snr_db: config.snr_db(),
        ..TrialRecord::default()
    };
    for _ in 0..count {
        let u = InfoVector::new(
            params,
            (0..params.k())
                .map(|_| rng.random_range(0..params.q()))
                .collect(),
        )?;
        let mut word = encode(params, &u)?;
        let coset = match decoder {
            DecoderChoice::Supercode(code) => {
                let j = rng.random_range(0..code.len());
                word = word.add_mod(&code.representatives()[j], params.q());
                Some(j)
            }
            _ => None,
        };
        let y = awgn(&to_polyphase(params, &word)?, config, &mut rng);
        let (decided, decided_coset) = match decoder {
            DecoderChoice::Ml => (ml.decode(&y)?.info, None),
            DecoderChoice::Oracle(bf) => (bf.decode(params, &y)?.best.info, None),
            DecoderChoice::Supercode(code) => {
                let d = supercode_decode(code, &y)?;
                (d.result.info, Some(d.coset_index))
            }
        };
        let symbol_errors = u
            .symbols()
            .iter()
            .zip(decided.symbols())
            .filter(|(a, b)| a != b)
            .count() as u64;
        record.trials += 1;
        record.symbol_errors += symbol_errors;
        if symbol_errors > 0 || decided_coset != coset {
            record.word_errors += 1;
        }
    }
    Ok(record)
}
