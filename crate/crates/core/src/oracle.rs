//! Exhaustive maximum-likelihood reference decoder.

use crate::codec::{encode_unchecked, to_polyphase, CodeParams, InfoVector};
use crate::decoder::{correlation, DecodeResult, ReceivedVector};
use crate::error::{Error, Result};

/// Default bound on the number of enumerated codewords.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 20;

/// Brute-force search over all `q^(m+1)` codewords.
#[derive(Debug, Clone, Copy)]
pub struct BruteForce {
    pub cap: u64,
}

impl Default for BruteForce {
    fn default() -> Self {
        Self {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Oracle output together with the runner-up metric.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best: DecodeResult,
    /// Largest metric among all other codewords.
    pub second_best: f64,
}

impl OracleResult {
    /// Whether the maximum is unique by more than `tol`.
    pub fn is_unique(&self, tol: f64) -> bool {
        self.best.correlation - self.second_best > tol
    }
}

impl BruteForce {
    pub fn new(cap: u64) -> Self {
        Self { cap }
    }

    pub fn check_size(&self, params: &CodeParams) -> Result<u128> {
        let size = params.code_size();
        if size > self.cap as u128 {
            return Err(Error::EnumerationCapExceeded {
                size,
                cap: self.cap,
            });
        }
        Ok(size)
    }

    /// Enumerates messages in lexicographic order; ties keep the earliest.
    pub fn decode(&self, params: &CodeParams, y: &ReceivedVector) -> Result<OracleResult> {
        let size = self.check_size(params)?;
        y.check_len(params)?;
        let mut best: Option<DecodeResult> = None;
        let mut second_best = f64::NEG_INFINITY;
        for index in 0..size {
            let u = InfoVector::from_index(params, index);
            let codeword = encode_unchecked(params, u.symbols());
            let x = to_polyphase(params, &codeword)?;
            let metric = correlation(y, &x)?;
            match &best {
                Some(b) if metric <= b.correlation => {
                    second_best = second_best.max(metric);
                }
                _ => {
                    if let Some(b) = &best {
                        second_best = second_best.max(b.correlation);
                    }
                    best = Some(DecodeResult {
                        codeword,
                        info: u,
                        correlation: metric,
                    });
                }
            }
        }
        let best = best.expect("code has at least one word");
        Ok(OracleResult { best, second_best })
    }

    /// Largest `Re{x_1·x_2^H}` over distinct codeword pairs.
    pub fn min_distance_check(&self, params: &CodeParams) -> Result<f64> {
        let size = self.check_size(params)?;
        let words = (0..size)
            .map(|i| {
                let c = encode_unchecked(params, InfoVector::from_index(params, i).symbols());
                to_polyphase(params, &c)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut max = f64::NEG_INFINITY;
        for (a, x1) in words.iter().enumerate() {
            let y = ReceivedVector::from_polyphase(x1);
            for x2 in &words[a + 1..] {
                max = max.max(correlation(&y, x2)?);
            }
        }
        Ok(max)
    }
}

/// Exhaustive ML decoding with the default enumeration cap.
pub fn brute_force_decode(params: &CodeParams, y: &ReceivedVector) -> Result<DecodeResult> {
    Ok(BruteForce::default().decode(params, y)?.best)
}

/// Largest metric between distinct codewords; strictly below `n`.
pub fn min_distance_check(params: &CodeParams) -> Result<f64> {
    BruteForce::default().min_distance_check(params)
}
