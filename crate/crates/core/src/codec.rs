//! Code parameters, the generator matrix, encoding and the q-PSK mapping.
//!
//! Codewords of RM_q(1,m) are `u·G_m (mod q)` for `u ∈ Z_q^(m+1)`. The
//! generator matrix is built from the block recursion
//!
//! ```text
//! G_m = | G_{m-1}  G_{m-1} |      G_1 = | 1 0 |
//!       |   0...0  1...1   |            | 0 1 |
//! ```
//!
//! so row 0 selects the even positions, and row `j ≥ 1` selects the
//! positions whose index has bit `j-1` set.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported order; keeps `2^m` addressable.
pub const MAX_ORDER: u32 = 30;

/// Modulus tolerance for unit-modulus samples.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// The pair `(q, m)` defining RM_q(1,m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    q: u32,
    m: u32,
}

impl CodeParams {
    pub fn new(q: u32, m: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        if !(1..=MAX_ORDER).contains(&m) {
            return Err(Error::InvalidOrder(m));
        }
        Ok(Self { q, m })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Code length `2^m`.
    pub fn n(&self) -> usize {
        1usize << self.m
    }

    /// Number of information symbols, `m + 1`.
    pub fn k(&self) -> usize {
        self.m as usize + 1
    }

    /// `h` with `q = 2^h`, if `q` is a power of two.
    pub fn h(&self) -> Option<u32> {
        self.q.is_power_of_two().then(|| self.q.trailing_zeros())
    }

    /// Number of codewords, `q^(m+1)`, saturating at `u128::MAX`.
    pub fn code_size(&self) -> u128 {
        (self.q as u128)
            .checked_pow(self.m + 1)
            .unwrap_or(u128::MAX)
    }

    /// Parameters of the half-length code RM_q(1,m-1).
    pub fn shortened(&self) -> Option<Self> {
        (self.m > 1).then(|| Self {
            q: self.q,
            m: self.m - 1,
        })
    }
}

fn check_symbols(symbols: &[u32], q: u32) -> Result<()> {
    match symbols.iter().find(|&&s| s >= q) {
        Some(&s) => Err(Error::SymbolOutOfRange {
            symbol: s as u64,
            q,
        }),
        None => Ok(()),
    }
}

/// Information vector `u ∈ Z_q^(m+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfoVector(Vec<u32>);

impl InfoVector {
    pub fn new(params: &CodeParams, symbols: Vec<u32>) -> Result<Self> {
        if symbols.len() != params.k() {
            return Err(Error::DimensionMismatch {
                expected: params.k(),
                found: symbols.len(),
            });
        }
        check_symbols(&symbols, params.q())?;
        Ok(Self(symbols))
    }

    /// The all-zero message.
    pub fn zero(params: &CodeParams) -> Self {
        Self(vec![0; params.k()])
    }

    /// Builds the message whose mixed-radix index (u_0 most significant)
    /// is `index`; enumerating `0..q^(m+1)` walks messages in
    /// lexicographic order.
    pub fn from_index(params: &CodeParams, mut index: u128) -> Self {
        let q = params.q() as u128;
        let mut symbols = vec![0; params.k()];
        for s in symbols.iter_mut().rev() {
            *s = (index % q) as u32;
            index /= q;
        }
        Self(symbols)
    }

    pub(crate) fn from_raw(symbols: Vec<u32>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `u′ = (u_0 … u_{m-1})`, the message of the half-length code.
    pub fn prefix(&self) -> Self {
        Self(self.0[..self.0.len() - 1].to_vec())
    }

    /// Component-wise sum mod `q`.
    pub fn add_mod(&self, other: &Self, q: u32) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| ((a as u64 + b as u64) % q as u64) as u32)
                .collect(),
        )
    }
}

/// A codeword in `Z_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZqCodeword(Vec<u32>);

impl ZqCodeword {
    /// Validates length `2^m` and symbol range; used for user-supplied
    /// words such as coset representatives.
    pub fn new(params: &CodeParams, symbols: Vec<u32>) -> Result<Self> {
        if symbols.len() != params.n() {
            return Err(Error::DimensionMismatch {
                expected: params.n(),
                found: symbols.len(),
            });
        }
        check_symbols(&symbols, params.q())?;
        Ok(Self(symbols))
    }

    #[cfg(test)]
    pub(crate) fn from_raw(symbols: Vec<u32>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Component-wise sum mod `q`.
    pub fn add_mod(&self, other: &Self, q: u32) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| ((a as u64 + b as u64) % q as u64) as u32)
                .collect(),
        )
    }
}

impl fmt::Display for ZqCodeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.0)
    }
}

impl fmt::Display for InfoVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, &self.0)
    }
}

fn write_csv(f: &mut fmt::Formatter<'_>, symbols: &[u32]) -> fmt::Result {
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

/// Parses comma-separated decimal symbols, e.g. `0,1,3`.
pub fn parse_symbols(text: &str) -> Result<Vec<u32>> {
    text.trim()
        .split(',')
        .map(|t| {
            t.trim().parse::<u32>().map_err(|e| Error::Parse {
                line: 1,
                msg: format!("bad symbol {:?}: {e}", t.trim()),
            })
        })
        .collect()
}

/// Complex image `ξ^c` of a codeword, `ξ = exp(j2π/q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyphaseWord(Vec<Complex64>);

impl PolyphaseWord {
    pub fn samples(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Squared Euclidean norm; equals `n` for every codeword image.
    pub fn energy(&self) -> f64 {
        self.0.iter().map(|x| x.norm_sqr()).sum()
    }
}

/// `ξ^s` for `s ∈ Z_q`. Multiples of a quarter turn are produced exactly.
pub fn psk_point(s: u32, q: u32) -> Complex64 {
    let s = s % q;
    if (4 * s).is_multiple_of(q) {
        return match 4 * s / q {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * s as f64 / q as f64)
}

pub fn to_polyphase(params: &CodeParams, c: &ZqCodeword) -> Result<PolyphaseWord> {
    check_symbols(c.symbols(), params.q())?;
    Ok(PolyphaseWord(
        c.symbols()
            .iter()
            .map(|&s| psk_point(s, params.q()))
            .collect(),
    ))
}

/// `G_m` stored row-major as bit flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<Vec<bool>>,
}

impl GeneratorMatrix {
    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.rows[i]
    }

    /// Vector-matrix product `u·G_m mod q`.
    pub fn multiply(&self, u: &[u32], q: u32) -> Vec<u32> {
        let n = self.rows.first().map_or(0, Vec::len);
        (0..n)
            .map(|col| {
                let acc: u64 = u
                    .iter()
                    .zip(&self.rows)
                    .filter(|(_, row)| row[col])
                    .map(|(&s, _)| s as u64)
                    .sum();
                (acc % q as u64) as u32
            })
            .collect()
    }
}

pub fn generator_matrix(m: u32) -> Result<GeneratorMatrix> {
    if !(1..=MAX_ORDER).contains(&m) {
        return Err(Error::InvalidOrder(m));
    }
    let mut rows = vec![vec![true, false], vec![false, true]];
    for level in 2..=m {
        let half = 1usize << (level - 1);
        for row in rows.iter_mut() {
            row.extend_from_within(..);
        }
        let mut last = vec![false; half];
        last.resize(2 * half, true);
        rows.push(last);
    }
    Ok(GeneratorMatrix { rows })
}

/// `u·G_m (mod q)`.
///
/// Evaluated position by position: `c_k = u_0·[k even] + Σ_{j≥1} u_j·bit_{j-1}(k)`.
pub fn encode(params: &CodeParams, u: &InfoVector) -> Result<ZqCodeword> {
    if u.len() != params.k() {
        return Err(Error::DimensionMismatch {
            expected: params.k(),
            found: u.len(),
        });
    }
    check_symbols(u.symbols(), params.q())?;
    Ok(encode_unchecked(params, u.symbols()))
}

pub(crate) fn encode_unchecked(params: &CodeParams, u: &[u32]) -> ZqCodeword {
    let q = params.q() as u64;
    let symbols = (0..params.n())
        .map(|k| {
            let mut acc = if k & 1 == 0 { u[0] as u64 } else { 0 };
            for (j, &s) in u.iter().enumerate().skip(1) {
                if (k >> (j - 1)) & 1 == 1 {
                    acc += s as u64;
                }
            }
            (acc % q) as u32
        })
        .collect();
    ZqCodeword(symbols)
}

/// Encoder built on the concatenation identity
/// `u·G_m = (u′·G_{m-1} | u′·G_{m-1} + u_m·1)`.
pub fn encode_recursive(params: &CodeParams, u: &InfoVector) -> Result<ZqCodeword> {
    if u.len() != params.k() {
        return Err(Error::DimensionMismatch {
            expected: params.k(),
            found: u.len(),
        });
    }
    check_symbols(u.symbols(), params.q())?;
    let Some(sub) = params.shortened() else {
        return Ok(ZqCodeword(u.symbols().to_vec()));
    };
    let left = encode_recursive(&sub, &u.prefix())?;
    let last = u.symbols()[params.m() as usize];
    let q = params.q();
    let right = left.0.iter().map(|&s| (s + last) % q);
    let symbols = left.0.iter().copied().chain(right).collect();
    Ok(ZqCodeword(symbols))
}
