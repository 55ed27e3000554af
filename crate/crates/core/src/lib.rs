//! Generalized first-order Reed–Muller codes RM_q(1,m) over Z_q.
//!
//! - [`codec`]: parameters, generator matrix, encoding and q-PSK mapping.
//! - [`decoder`]: recursive soft-decision ML decoder and its operation tally.
//! - [`oracle`]: exhaustive ML reference decoder.
//! - [`supercode`]: decoding of unions of cosets.
//! - [`complexity`]: closed-form and recursive operation-count predictors.
//! - [`sim`]: AWGN channel and Monte-Carlo error counting.
//!
//! ```
//! use rmq::{encode, ml_decode, to_polyphase, CodeParams, InfoVector, ReceivedVector};
//!
//! let params = CodeParams::new(8, 3)?;
//! let u = InfoVector::new(&params, vec![5, 1, 0, 7])?;
//! let x = to_polyphase(&params, &encode(&params, &u)?)?;
//! let decoded = ml_decode(&params, &ReceivedVector::from_polyphase(&x))?;
//! assert_eq!(decoded.info, u);
//! # Ok::<(), rmq::Error>(())
//! ```

pub use num_complex::Complex64;

pub mod codec;
pub mod complexity;
pub mod decoder;
pub mod error;
pub mod oracle;
pub mod sim;
pub mod supercode;

pub use codec::{
    encode, encode_recursive, generator_matrix, parse_symbols, psk_point, to_polyphase, CodeParams,
    GeneratorMatrix, InfoVector, PolyphaseWord, ZqCodeword,
};
pub use complexity::{
    comparison_ratio, predicted_adds, predicted_counts, predicted_mults, table1, OpCounts,
};
pub use decoder::{
    correlation, hard_decision_symbol, hard_decision_symbol_full, ml_decode,
    ml_decode_instrumented, ml_decode_with, DecodeResult, HardDecision, MlDecoder, ReceivedVector,
};
pub use error::{Error, Result};
pub use oracle::{brute_force_decode, min_distance_check, BruteForce, OracleResult};
pub use sim::{awgn, run_trials, ChannelConfig, DecoderChoice, TrialRecord};
pub use supercode::{
    derotate, supercode_decode, supercode_decode_instrumented, CosetCode, CosetDecision,
};
