//! Operation-count predictors for the recursive decoder, with q = 2^h.
//!
//! Counting rules: a real addition is half a complex addition; products
//! with 1, j, -1, -j are free; products `y·ξ^{-i}` for `i ≥ q/2` come from
//! sign changes and are free.
//!
//! Recursions (base case `m = 1`):
//!
//! ```text
//! N×(2^h,1) = 0 (h ≤ 2),  2^{h-1} - 2 (h > 2)
//! N×(2^h,m) = (2^{h-1} - 2)·2^{m-1} + 2^h·N×(2^h,m-1)
//! N+(2^h,1) = 1/2
//! N+(2,m)   = 2·(2^{m-2} + N+(2,m-1))
//! N+(2^h,m) = 2^h·(2^{m-1} + N+(2^h,m-1))        (h > 1)
//! ```

use std::fmt;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Largest exponent accepted by the predictors; keeps every count in u128.
pub const MAX_EXPONENT: u32 = 8;

/// Complex-operation tallies. Additions are kept in half units so that a
/// single real addition is represented exactly.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounts {
    half_adds: u128,
    mults: u128,
}

impl OpCounts {
    pub const ZERO: OpCounts = OpCounts {
        half_adds: 0,
        mults: 0,
    };

    pub fn new(half_adds: u128, mults: u128) -> Self {
        Self { half_adds, mults }
    }

    /// Additions in half-complex-addition units (real-addition equivalents).
    pub fn half_adds(&self) -> u128 {
        self.half_adds
    }

    pub fn complex_mults(&self) -> u128 {
        self.mults
    }

    /// Complex additions as `(numerator, denominator)` in lowest terms.
    pub fn complex_adds(&self) -> (u128, u128) {
        if self.half_adds.is_multiple_of(2) {
            (self.half_adds / 2, 1)
        } else {
            (self.half_adds, 2)
        }
    }

    pub fn complex_adds_f64(&self) -> f64 {
        self.half_adds as f64 / 2.0
    }

    /// Complex additions rendered as an integer or `k/2`.
    pub fn adds_string(&self) -> String {
        match self.complex_adds() {
            (k, 1) => k.to_string(),
            (k, d) => format!("{k}/{d}"),
        }
    }
}

impl Add for OpCounts {
    type Output = OpCounts;

    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts::new(self.half_adds + rhs.half_adds, self.mults + rhs.mults)
    }
}

impl Mul<u128> for OpCounts {
    type Output = OpCounts;

    fn mul(self, rhs: u128) -> OpCounts {
        OpCounts::new(self.half_adds * rhs, self.mults * rhs)
    }
}

impl fmt::Display for OpCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "adds={} mults={}", self.adds_string(), self.mults)
    }
}

fn check(h: u32, m: u32) -> Result<()> {
    if !(1..=MAX_EXPONENT).contains(&h) {
        return Err(Error::InvalidParameters(format!(
            "exponent h = {h} outside 1..={MAX_EXPONENT}"
        )));
    }
    if !(1..=12).contains(&m) {
        return Err(Error::InvalidParameters(format!(
            "order m = {m} outside 1..=12"
        )));
    }
    Ok(())
}

fn pow2(e: u32) -> u128 {
    1u128 << e
}

/// Multiplications per base-case hard decision.
pub(crate) fn hard_decision_mults(h: u32) -> u128 {
    if h <= 2 {
        0
    } else {
        pow2(h - 2) - 1
    }
}

/// Nontrivial Step-3 products per output position.
pub(crate) fn step3_mults_per_position(h: u32) -> u128 {
    if h <= 2 {
        0
    } else {
        pow2(h - 1) - 2
    }
}

/// N×(2^h, m) by recursion.
pub fn predicted_mults(h: u32, m: u32) -> Result<u128> {
    check(h, m)?;
    Ok(mults_recursive(h, m))
}

fn mults_recursive(h: u32, m: u32) -> u128 {
    if m == 1 {
        return 2 * hard_decision_mults(h);
    }
    step3_mults_per_position(h) * pow2(m - 1) + pow2(h) * mults_recursive(h, m - 1)
}

/// N×(2^h, m) by closed form `(2^{h-1}-2)(2^{hm}-2^m)/(2^h-2)`.
pub fn predicted_mults_closed(h: u32, m: u32) -> Result<u128> {
    check(h, m)?;
    if h <= 2 {
        return Ok(0);
    }
    let num = (pow2(h - 1) - 2) * (pow2(h * m) - pow2(m));
    let den = pow2(h) - 2;
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

/// N+(2^h, m) by recursion, in half units.
pub fn predicted_adds(h: u32, m: u32) -> Result<OpCounts> {
    check(h, m)?;
    Ok(OpCounts::new(half_adds_recursive(h, m), 0))
}

fn half_adds_recursive(h: u32, m: u32) -> u128 {
    if m == 1 {
        return 1;
    }
    // 2^h·2^{m-1} additions in Step 3, real when h = 1.
    let step3 = pow2(h) * pow2(m - 1) * if h == 1 { 1 } else { 2 };
    step3 + pow2(h) * half_adds_recursive(h, m - 1)
}

/// N+(2^h, m) by closed form, in half units: `(2m-1)·2^{m-2}` for h = 1,
/// `(5·2^{hm-1} - 2^{h(m-1)} - 2^{h+m})/(2^h - 2)` for h > 1.
pub fn predicted_adds_closed(h: u32, m: u32) -> Result<OpCounts> {
    check(h, m)?;
    let half = if h == 1 {
        (2 * m as u128 - 1) * pow2(m - 1)
    } else {
        let num = 5 * pow2(h * m) - pow2(h * (m - 1) + 1) - pow2(h + m + 1);
        let den = pow2(h) - 2;
        debug_assert_eq!(num % den, 0);
        num / den
    };
    Ok(OpCounts::new(half, 0))
}

/// Both predicted tallies for RM_{2^h}(1,m).
pub fn predicted_counts(h: u32, m: u32) -> Result<OpCounts> {
    Ok(OpCounts::new(
        predicted_adds(h, m)?.half_adds(),
        predicted_mults(h, m)?,
    ))
}

/// Asymptotic ratio of additions against the q-ary FHT decoder,
/// `(2^{h+1} + 2^{h-1} - 1)/2^{2h}`.
pub fn comparison_ratio(h: u32) -> Result<f64> {
    if !(2..=MAX_EXPONENT).contains(&h) {
        return Err(Error::InvalidParameters(format!(
            "comparison ratio needs 2 <= h <= {MAX_EXPONENT}, got {h}"
        )));
    }
    let num = pow2(h + 1) + pow2(h - 1) - 1;
    Ok(num as f64 / pow2(2 * h) as f64)
}

/// Model of the q-ary FHT decoder's complex additions for h > 1,
/// `2^h(2^{hm} - 2^m)/(2^h - 2)`. Fitted to the published reference
/// counts; reproduces every h > 1 reference cell of the table.
pub fn reference_adds_model(h: u32, m: u32) -> Result<u128> {
    check(h, m)?;
    if h < 2 {
        return Err(Error::InvalidParameters(
            "reference addition model needs h >= 2".into(),
        ));
    }
    let num = pow2(h) * (pow2(h * m) - pow2(m));
    let den = pow2(h) - 2;
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

/// Real additions of the dedicated RM_4(1,m) ML decoder, `(m+1)·2^{2m+1}`.
/// Comparison constant only.
pub fn rm4_dedicated_real_adds(m: u32) -> u128 {
    (m as u128 + 1) * pow2(2 * m + 1)
}

/// Published operation counts: `(m, q, adds, mults, ref_adds, ref_mults)`
/// where `ref_*` belong to the q-ary FHT decoder.
pub const PUBLISHED_TABLE: [(u32, u32, u128, u128, u128, u128); 12] = [
    (4, 2, 28, 0, 32, 0),
    (4, 4, 256, 0, 480, 0),
    (4, 8, 1600, 1360, 5440, 2720),
    (4, 16, 11392, 28080, 74880, 56160),
    (5, 2, 72, 0, 80, 0),
    (5, 4, 1088, 0, 1984, 0),
    (5, 8, 12928, 10912, 43648, 21824),
    (5, 16, 182528, 449376, 1198336, 898752),
    (6, 2, 176, 0, 192, 0),
    (6, 4, 4480, 0, 8064, 0),
    (6, 8, 103680, 87360, 349440, 174720),
    (6, 16, 2920960, 7190208, 19173888, 14380416),
];

/// Published reference-decoder counts `(adds, mults)` for a table cell.
pub fn published_reference(m: u32, q: u32) -> Option<(u128, u128)> {
    PUBLISHED_TABLE
        .iter()
        .find(|r| r.0 == m && r.1 == q)
        .map(|r| (r.4, r.5))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub m: u32,
    pub q: u32,
    pub counts: OpCounts,
    pub reference: Option<(u128, u128)>,
}

/// Predicted counts for every `(m, q = 2^h)` pair, ordered by m then h.
pub fn table1(ms: &[u32], hs: &[u32]) -> Result<Vec<TableRow>> {
    let mut rows = Vec::with_capacity(ms.len() * hs.len());
    for &m in ms {
        for &h in hs {
            let q = 1u32 << h;
            rows.push(TableRow {
                m,
                q,
                counts: predicted_counts(h, m)?,
                reference: published_reference(m, q),
            });
        }
    }
    Ok(rows)
}

/// Aligned text rendering in the published layout.
pub fn format_table(rows: &[TableRow]) -> String {
    let mut out = format!(
        "{:>3} {:>4} | {:>10} {:>10} | {:>10} {:>10}\n",
        "m", "q", "N+", "Nx", "ref N+", "ref Nx"
    );
    out.push_str(&"-".repeat(59));
    out.push('\n');
    let mut last_m = None;
    for row in rows {
        let m = if last_m == Some(row.m) {
            String::new()
        } else {
            row.m.to_string()
        };
        last_m = Some(row.m);
        let (ra, rm) = match row.reference {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None => ("-".into(), "-".into()),
        };
        out.push_str(&format!(
            "{:>3} {:>4} | {:>10} {:>10} | {:>10} {:>10}\n",
            m,
            row.q,
            row.counts.adds_string(),
            row.counts.complex_mults(),
            ra,
            rm
        ));
    }
    out
}

/// CSV rendering: `m,q,adds,mults,ref_adds,ref_mults`; reference cells are
/// empty outside the published table.
pub fn format_table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("m,q,adds,mults,ref_adds,ref_mults\n");
    for row in rows {
        let (ra, rm) = match row.reference {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.m,
            row.q,
            row.counts.adds_string(),
            row.counts.complex_mults(),
            ra,
            rm
        ));
    }
    out
}
