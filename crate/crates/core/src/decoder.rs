//! Recursive soft-decision maximum-likelihood decoder.
//!
//! Every codeword of RM_q(1,m) splits as `x = (w | w·ξ^i)` with
//! `w ∈ RM_q(1,m-1)`, and
//!
//! ```text
//! Re{y·x^H} = Re{z(i)·w^H},   z_k(i) = y_k + y_{k+n/2}·ξ^{-i}.
//! ```
//!
//! The decoder folds `y` into `z(i)` for each `i ∈ Z_q`, decodes every fold
//! one level down, and keeps the fold with the largest metric. At `m = 1`
//! the generator matrix is the identity, so per-symbol hard decisions are
//! already ML.

use num_complex::Complex64;

use crate::codec::{
    encode_unchecked, psk_point, CodeParams, InfoVector, PolyphaseWord, ZqCodeword,
};
use crate::complexity::OpCounts;
use crate::error::{Error, Result};

/// Channel output `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedVector(Vec<Complex64>);

impl ReceivedVector {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFiniteInput);
        }
        Ok(Self(samples))
    }

    /// Noiseless observation of a polyphase word.
    pub fn from_polyphase(x: &PolyphaseWord) -> Self {
        Self(x.samples().to_vec())
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn check_len(&self, params: &CodeParams) -> Result<()> {
        if self.0.len() != params.n() {
            return Err(Error::LengthMismatch {
                expected: params.n(),
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

/// Decoded codeword `x̂` (as Z_q symbols), message `û` and metric `Re{y·x̂^H}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub codeword: ZqCodeword,
    pub info: InfoVector,
    pub correlation: f64,
}

/// `Re{ Σ_k y_k · conj(x_k) }`.
pub fn correlation(y: &ReceivedVector, x: &PolyphaseWord) -> Result<f64> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(correlation_raw(y.samples(), x.samples()))
}

pub(crate) fn correlation_raw(y: &[Complex64], x: &[Complex64]) -> f64 {
    y.iter().zip(x).map(|(a, b)| (a * b.conj()).re).sum()
}

/// Multiplication by `ξ^{-i}` under the trivial-product rules: quarter
/// turns are swaps and sign flips, and for even `q` the upper half of the
/// exponents reuses the lower half with a sign change.
#[derive(Debug, Clone)]
pub(crate) struct Rotator {
    q: u32,
    inverse_points: Vec<Complex64>,
}

impl Rotator {
    pub(crate) fn new(q: u32) -> Self {
        let inverse_points = (0..q).map(|i| psk_point(i, q).conj()).collect();
        Self { q, inverse_points }
    }

    /// `ξ^{-i}` is one of 1, -j, -1, j.
    pub(crate) fn is_trivial(&self, i: u32) -> bool {
        (4 * i).is_multiple_of(self.q)
    }

    fn rotate_lower(&self, y: Complex64, i: u32) -> Complex64 {
        if self.is_trivial(i) {
            match 4 * i / self.q {
                0 => y,
                1 => Complex64::new(y.im, -y.re),
                2 => -y,
                _ => Complex64::new(-y.im, y.re),
            }
        } else {
            y * self.inverse_points[i as usize]
        }
    }

    /// `y·ξ^{-i}` for `i ∈ [0, q)`.
    pub(crate) fn rotate(&self, y: Complex64, i: u32) -> Complex64 {
        let half = self.q / 2;
        if self.q.is_multiple_of(2) && i >= half {
            -self.rotate_lower(y, i - half)
        } else {
            self.rotate_lower(y, i)
        }
    }
}

/// Per-symbol hard-decision strategy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum HardDecision {
    /// Quadrant pruning for `q = 2^h`, `h > 2`; full search otherwise.
    #[default]
    Pruned,
    /// Reference search over all `q` rotations.
    Full,
}

trait Tally {
    fn real_adds(&mut self, n: u128);
    fn complex_adds(&mut self, n: u128);
    fn mults(&mut self, n: u128);
}

struct NoTally;

impl Tally for NoTally {
    #[inline(always)]
    fn real_adds(&mut self, _: u128) {}
    #[inline(always)]
    fn complex_adds(&mut self, _: u128) {}
    #[inline(always)]
    fn mults(&mut self, _: u128) {}
}

#[derive(Default)]
struct Counter {
    half_adds: u128,
    mults: u128,
}

impl Tally for Counter {
    fn real_adds(&mut self, n: u128) {
        self.half_adds += n;
    }
    fn complex_adds(&mut self, n: u128) {
        self.half_adds += 2 * n;
    }
    fn mults(&mut self, n: u128) {
        self.mults += n;
    }
}

fn check_finite(y: Complex64) -> Result<()> {
    if y.re.is_finite() && y.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteInput)
    }
}

fn check_modulus(q: u32) -> Result<()> {
    if q < 2 {
        Err(Error::InvalidModulus(q))
    } else {
        Ok(())
    }
}

/// Hard decision `argmax_i Re{y_k·ξ^{-i}}` with its achieved value; ties go
/// to the smallest `i`. Uses quadrant pruning when `q = 2^h`, `h > 2`.
pub fn hard_decision_symbol(y_k: Complex64, q: u32) -> Result<(u32, f64)> {
    check_modulus(q)?;
    check_finite(y_k)?;
    Ok(hard_decision(
        &Rotator::new(q),
        y_k,
        HardDecision::Pruned,
        &mut NoTally,
    ))
}

/// Reference hard decision searching all `q` candidates.
pub fn hard_decision_symbol_full(y_k: Complex64, q: u32) -> Result<(u32, f64)> {
    check_modulus(q)?;
    check_finite(y_k)?;
    Ok(hard_decision(
        &Rotator::new(q),
        y_k,
        HardDecision::Full,
        &mut NoTally,
    ))
}

fn uses_quadrants(q: u32) -> bool {
    q.is_power_of_two() && q >= 8
}

fn hard_decision<T: Tally>(
    rot: &Rotator,
    y: Complex64,
    mode: HardDecision,
    tally: &mut T,
) -> (u32, f64) {
    let q = rot.q;
    let mut best = (0u32, f64::NEG_INFINITY);
    let mut consider = |i: u32, tally: &mut T| {
        if !rot.is_trivial(i) {
            tally.mults(1);
        }
        let v = rot.rotate(y, i).re;
        if v > best.1 || (v == best.1 && i < best.0) {
            best = (i, v);
        }
    };
    if mode == HardDecision::Pruned && uses_quadrants(q) {
        let quarter = q / 4;
        let quadrant = match (y.re >= 0.0, y.im >= 0.0) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        };
        let start = quadrant * quarter;
        for t in 0..=quarter {
            consider((start + t) % q, tally);
        }
    } else {
        for i in 0..q {
            consider(i, tally);
        }
    }
    best
}

/// Reusable decoder for one `(q, m)`.
#[derive(Debug, Clone)]
pub struct MlDecoder {
    params: CodeParams,
    rotator: Rotator,
    mode: HardDecision,
}

impl MlDecoder {
    pub fn new(params: CodeParams) -> Self {
        Self::with_hard_decision(params, HardDecision::Pruned)
    }

    pub fn with_hard_decision(params: CodeParams, mode: HardDecision) -> Self {
        Self {
            params,
            rotator: Rotator::new(params.q()),
            mode,
        }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn decode(&self, y: &ReceivedVector) -> Result<DecodeResult> {
        self.run(y, &mut NoTally)
    }

    /// Decodes and tallies operations; requires `q = 2^h`.
    pub fn decode_instrumented(&self, y: &ReceivedVector) -> Result<(DecodeResult, OpCounts)> {
        if self.params.h().is_none() {
            return Err(Error::UnsupportedModulus(self.params.q()));
        }
        let mut counter = Counter::default();
        let result = self.run(y, &mut counter)?;
        Ok((result, OpCounts::new(counter.half_adds, counter.mults)))
    }

    fn run<T: Tally>(&self, y: &ReceivedVector, tally: &mut T) -> Result<DecodeResult> {
        y.check_len(&self.params)?;
        let m = self.params.m() as usize;
        let mut scratch = vec![Complex64::default(); self.params.n()];
        let mut info = vec![0u32; m + 1];
        let mut candidates = vec![0u32; (m + 1) * (m + 1)];
        let correlation = self.fold(y.samples(), &mut scratch, &mut info, &mut candidates, tally);
        let codeword = encode_unchecked(&self.params, &info);
        Ok(DecodeResult {
            codeword,
            info: InfoVector::from_raw(info),
            correlation,
        })
    }

    /// Decodes `y` of length `2^level` into `info[..=level]`, returning the
    /// metric. `scratch` holds the folds of this and deeper levels,
    /// `candidates` the sub-decoder messages.
    fn fold<T: Tally>(
        &self,
        y: &[Complex64],
        scratch: &mut [Complex64],
        info: &mut [u32],
        candidates: &mut [u32],
        tally: &mut T,
    ) -> f64 {
        let rot = &self.rotator;
        if y.len() == 2 {
            let (s0, c0) = hard_decision(rot, y[0], self.mode, tally);
            let (s1, c1) = hard_decision(rot, y[1], self.mode, tally);
            info[0] = s0;
            info[1] = s1;
            tally.real_adds(1);
            return c0 + c1;
        }

        let half = y.len() / 2;
        let level = info.len() - 1;
        let q = rot.q;
        let (lower, upper) = y.split_at(half);
        let (z, deeper_scratch) = scratch.split_at_mut(half);
        let (sub_info, deeper_candidates) = candidates.split_at_mut(level);

        let mut best = f64::NEG_INFINITY;
        for i in 0..q {
            // Upper-half exponents reuse the lower-half products by sign change.
            if (q % 2 == 1 || i < q / 2) && !rot.is_trivial(i) {
                tally.mults(half as u128);
            }
            if q == 2 {
                tally.real_adds(half as u128);
            } else {
                tally.complex_adds(half as u128);
            }
            for ((zk, &a), &b) in z.iter_mut().zip(lower).zip(upper) {
                *zk = a + rot.rotate(b, i);
            }
            let p = self.fold(z, deeper_scratch, sub_info, deeper_candidates, tally);
            if i == 0 || p > best {
                best = p;
                info[..level].copy_from_slice(sub_info);
                info[level] = i;
            }
        }
        best
    }
}

/// Decodes `y` with the recursive ML decoder.
pub fn ml_decode(params: &CodeParams, y: &ReceivedVector) -> Result<DecodeResult> {
    MlDecoder::new(*params).decode(y)
}

/// [`ml_decode`] with an explicit hard-decision strategy.
pub fn ml_decode_with(
    params: &CodeParams,
    y: &ReceivedVector,
    mode: HardDecision,
) -> Result<DecodeResult> {
    MlDecoder::with_hard_decision(*params, mode).decode(y)
}

/// [`ml_decode`] plus the operation tally; `q` must be a power of two.
pub fn ml_decode_instrumented(
    params: &CodeParams,
    y: &ReceivedVector,
) -> Result<(DecodeResult, OpCounts)> {
    MlDecoder::new(*params).decode_instrumented(y)
}
