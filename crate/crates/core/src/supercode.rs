//! Decoding of unions of cosets of RM_q(1,m).
//!
//! For a coset `RM_q(1,m) + r`, `Re{y·ξ^{(c + r)H}} = Re{y′·ξ^{cH}}` with
//! `y′_k = y_k·ξ^{-r_k}`, so each coset is decoded by derotating `y` with
//! its leader and running the RM decoder. Keeping the best metric over the
//! cosets is ML over the union.

use std::path::Path;

use crate::codec::{parse_symbols, CodeParams, ZqCodeword};
use crate::complexity::OpCounts;
use crate::decoder::{DecodeResult, MlDecoder, ReceivedVector, Rotator};
use crate::error::{Error, Result};

/// A union of `M ≥ 1` cosets given by their leaders.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetCode {
    params: CodeParams,
    representatives: Vec<ZqCodeword>,
}

impl CosetCode {
    pub fn new(params: CodeParams, representatives: Vec<ZqCodeword>) -> Result<Self> {
        if representatives.is_empty() {
            return Err(Error::EmptyCosetList);
        }
        let representatives = representatives
            .into_iter()
            .map(|r| ZqCodeword::new(&params, r.symbols().to_vec()))
            .collect::<Result<_>>()?;
        Ok(Self {
            params,
            representatives,
        })
    }

    /// Parses one leader per line as comma-separated decimal symbols.
    /// Blank lines are skipped.
    pub fn parse(params: CodeParams, text: &str) -> Result<Self> {
        let mut reps = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let symbols = parse_symbols(line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: idx + 1, msg },
                other => other,
            })?;
            let word = ZqCodeword::new(&params, symbols).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?;
            reps.push(word);
        }
        Self::new(params, reps)
    }

    pub fn from_file(params: CodeParams, path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
        Self::parse(params, &text)
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn representatives(&self) -> &[ZqCodeword] {
        &self.representatives
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Renders the leaders in the file format accepted by [`CosetCode::parse`].
    pub fn to_text(&self) -> String {
        self.representatives
            .iter()
            .map(|r| format!("{r}\n"))
            .collect()
    }
}

/// Winning coset and the decoded word; `result.codeword` is the full coset
/// word `encode(û) + r_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetDecision {
    pub coset_index: usize,
    pub result: DecodeResult,
}

/// `y_k·ξ^{-r_k}`.
pub fn derotate(params: &CodeParams, y: &ReceivedVector, r: &ZqCodeword) -> Result<ReceivedVector> {
    y.check_len(params)?;
    let rot = Rotator::new(params.q());
    let samples = y
        .samples()
        .iter()
        .zip(r.symbols())
        .map(|(&v, &s)| rot.rotate(v, s))
        .collect();
    ReceivedVector::new(samples)
}

/// Nontrivial multiplications needed to derotate by `r`.
fn derotation_mults(params: &CodeParams, r: &ZqCodeword) -> u128 {
    let rot = Rotator::new(params.q());
    let half = params.q() / 2;
    r.symbols()
        .iter()
        .filter(|&&s| {
            let s = if params.q().is_multiple_of(2) && s >= half {
                s - half
            } else {
                s
            };
            !rot.is_trivial(s)
        })
        .count() as u128
}

fn decode_cosets(
    code: &CosetCode,
    y: &ReceivedVector,
    mut each: impl FnMut(&MlDecoder, &ReceivedVector) -> Result<DecodeResult>,
) -> Result<CosetDecision> {
    y.check_len(&code.params)?;
    let decoder = MlDecoder::new(code.params);
    let q = code.params.q();
    let mut best: Option<CosetDecision> = None;
    for (index, r) in code.representatives.iter().enumerate() {
        let derotated = derotate(&code.params, y, r)?;
        let inner = each(&decoder, &derotated)?;
        if best
            .as_ref()
            .is_none_or(|b| inner.correlation > b.result.correlation)
        {
            best = Some(CosetDecision {
                coset_index: index,
                result: DecodeResult {
                    codeword: inner.codeword.add_mod(r, q),
                    info: inner.info,
                    correlation: inner.correlation,
                },
            });
        }
    }
    best.ok_or(Error::EmptyCosetList)
}

/// ML decoding over the union of cosets; ties go to the smallest index.
pub fn supercode_decode(code: &CosetCode, y: &ReceivedVector) -> Result<CosetDecision> {
    decode_cosets(code, y, |d, y| d.decode(y))
}

/// [`supercode_decode`] with operation counts: the sum of the per-coset
/// decodes plus derotation products, under the same trivial-product rules.
pub fn supercode_decode_instrumented(
    code: &CosetCode,
    y: &ReceivedVector,
) -> Result<(CosetDecision, OpCounts)> {
    if code.params.h().is_none() {
        return Err(Error::UnsupportedModulus(code.params.q()));
    }
    let mut total = OpCounts::ZERO;
    let decision = decode_cosets(code, y, |d, y| {
        let (r, counts) = d.decode_instrumented(y)?;
        total = total + counts;
        Ok(r)
    })?;
    let derot: u128 = code
        .representatives
        .iter()
        .map(|r| derotation_mults(&code.params, r))
        .sum();
    Ok((decision, total + OpCounts::new(0, derot)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{encode, psk_point, to_polyphase, InfoVector};
    use crate::complexity::predicted_counts;
    use crate::decoder::{correlation, ml_decode};
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(q: u32, m: u32) -> CodeParams {
        CodeParams::new(q, m).unwrap()
    }

    fn random_word(rng: &mut impl Rng, p: &CodeParams) -> ZqCodeword {
        ZqCodeword::new(p, (0..p.n()).map(|_| rng.random_range(0..p.q())).collect()).unwrap()
    }

    fn random_y(rng: &mut impl Rng, n: usize) -> ReceivedVector {
        ReceivedVector::new(
            (0..n)
                .map(|_| Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_zero_coset_is_plain_decoding() {
        let p = params(4, 3);
        let code = CosetCode::new(p, vec![ZqCodeword::new(&p, vec![0; 8]).unwrap()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let y = random_y(&mut rng, 8);
            let d = supercode_decode(&code, &y).unwrap();
            assert_eq!(d.coset_index, 0);
            assert_eq!(d.result, ml_decode(&p, &y).unwrap());
        }
    }

    #[test]
    fn noiseless_coset_word() {
        let p = params(4, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let reps: Vec<_> = (0..4).map(|_| random_word(&mut rng, &p)).collect();
        let code = CosetCode::new(p, reps.clone()).unwrap();
        for (j, rep) in reps.iter().enumerate() {
            let u = InfoVector::new(&p, vec![1, 3, 0, 2]).unwrap();
            let word = encode(&p, &u).unwrap().add_mod(rep, 4);
            let y = ReceivedVector::from_polyphase(&to_polyphase(&p, &word).unwrap());
            let d = supercode_decode(&code, &y).unwrap();
            assert_eq!(d.coset_index, j);
            assert_eq!(d.result.info, u);
            assert_eq!(d.result.codeword, word);
            assert!((d.result.correlation - 8.0).abs() < 1e-9);
        }
    }

    #[test]
    fn reported_correlation_is_against_full_word() {
        let p = params(8, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let code = CosetCode::new(p, (0..3).map(|_| random_word(&mut rng, &p)).collect()).unwrap();
        for _ in 0..100 {
            let y = random_y(&mut rng, 4);
            let d = supercode_decode(&code, &y).unwrap();
            let x = to_polyphase(&p, &d.result.codeword).unwrap();
            assert!((correlation(&y, &x).unwrap() - d.result.correlation).abs() < 1e-9);
        }
    }

    #[test]
    fn errors() {
        let p = params(4, 2);
        assert_eq!(CosetCode::new(p, vec![]), Err(Error::EmptyCosetList));
        assert_eq!(CosetCode::parse(p, "\n\n"), Err(Error::EmptyCosetList));
        assert!(matches!(
            CosetCode::parse(p, "0,1,2,3\n0,1,2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            CosetCode::parse(p, "0,1,2,4\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let code = CosetCode::parse(p, "0,1,2,3\n\n3,3,3,3\n").unwrap();
        assert_eq!(code.len(), 2);
        assert_eq!(code.to_text(), "0,1,2,3\n3,3,3,3\n");
        let y = ReceivedVector::new(vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert!(matches!(
            supercode_decode(&code, &y),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn instrumented_counts() {
        let p = params(8, 3);
        // Leader symbols 0,2,4,6 are trivial; 1,3,5,7 each cost one product.
        let reps = vec![
            ZqCodeword::new(&p, vec![0, 2, 4, 6, 0, 0, 0, 0]).unwrap(),
            ZqCodeword::new(&p, vec![1, 3, 5, 7, 0, 2, 0, 1]).unwrap(),
        ];
        let code = CosetCode::new(p, reps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let y = random_y(&mut rng, 8);
        let (d, counts) = supercode_decode_instrumented(&code, &y).unwrap();
        assert_eq!(d, supercode_decode(&code, &y).unwrap());
        let single = predicted_counts(3, 3).unwrap();
        assert_eq!(counts, single * 2 + OpCounts::new(0, 5));
    }

    proptest! {
        #[test]
        fn derotation_identity(
            seed in any::<u64>(),
            q in prop::sample::select(vec![2u32, 3, 4, 8]),
            m in 1u32..=4,
        ) {
            let p = params(q, m);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let y = random_y(&mut rng, p.n());
            let r = random_word(&mut rng, &p);
            let w = random_word(&mut rng, &p);
            let lhs = correlation(&derotate(&p, &y, &r).unwrap(), &to_polyphase(&p, &w).unwrap()).unwrap();
            let rhs = correlation(&y, &to_polyphase(&p, &w.add_mod(&r, q)).unwrap()).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-9);
            let direct: Vec<_> = y.samples().iter().zip(r.symbols())
                .map(|(v, &s)| v * psk_point(s, q).conj()).collect();
            for (a, b) in derotate(&p, &y, &r).unwrap().samples().iter().zip(&direct) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
