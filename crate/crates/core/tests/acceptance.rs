//! Acceptance criteria. Runs as a plain binary (`harness = false`) so that
//! each criterion prints exactly one PASS/FAIL line.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rmq::complexity::{predicted_adds, predicted_mults, reference_adds_model, PUBLISHED_TABLE};
use rmq::{
    comparison_ratio, correlation, encode, ml_decode, ml_decode_instrumented, predicted_counts,
    run_trials, supercode_decode, to_polyphase, BruteForce, ChannelConfig, CodeParams, Complex64,
    CosetCode, DecoderChoice, InfoVector, ReceivedVector, ZqCodeword,
};

const TOL: f64 = 1e-9;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(q: u32, m: u32) -> CodeParams {
    CodeParams::new(q, m).unwrap()
}

fn random_info(rng: &mut impl Rng, p: &CodeParams) -> InfoVector {
    InfoVector::new(p, (0..p.k()).map(|_| rng.random_range(0..p.q())).collect()).unwrap()
}

fn gaussian(rng: &mut impl Rng, sigma: f64) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(sigma * re, sigma * im)
}

/// Half the inputs are pure noise, half are codewords at 0..10 dB.
fn random_input(rng: &mut impl Rng, p: &CodeParams) -> ReceivedVector {
    if rng.random_bool(0.5) {
        ReceivedVector::new((0..p.n()).map(|_| gaussian(rng, 1.0)).collect()).unwrap()
    } else {
        let u = random_info(rng, p);
        let x = to_polyphase(p, &encode(p, &u).unwrap()).unwrap();
        let snr_db: f64 = rng.random_range(0.0..10.0);
        let sigma = (10f64.powf(-snr_db / 10.0) / 2.0).sqrt();
        ReceivedVector::new(
            x.samples()
                .iter()
                .map(|&s| s + gaussian(rng, sigma))
                .collect(),
        )
        .unwrap()
    }
}

fn table_reproduction() -> Outcome {
    let mut cells = 0;
    for &(m, q, adds, mults, _, _) in &PUBLISHED_TABLE {
        let h = q.trailing_zeros();
        let a = predicted_adds(h, m).unwrap();
        ensure(a.complex_adds() == (adds, 1), || {
            format!("N+ at m={m} q={q}: {} != {adds}", a.adds_string())
        })?;
        let x = predicted_mults(h, m).unwrap();
        ensure(x == mults, || format!("Nx at m={m} q={q}: {x} != {mults}"))?;
        cells += 2;
    }
    ensure(cells == 24, || format!("{cells} cells"))?;
    Ok(format!("{cells}/24 cells exact"))
}

fn instrumentation_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
    let mut runs = 0;
    for h in 1..=4u32 {
        for m in 1..=6u32 {
            let p = params(1 << h, m);
            let expect = predicted_counts(h, m).unwrap();
            for _ in 0..10 {
                let y = random_input(&mut rng, &p);
                let (_, counts) = ml_decode_instrumented(&p, &y).unwrap();
                ensure(counts == expect, || {
                    format!("q={} m={m}: measured {counts}, predicted {expect}", 1 << h)
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} instrumented decodes match"))
}

fn ml_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA3);
    let oracle = BruteForce::default();
    let (mut total, mut unique) = (0, 0);
    for q in [2u32, 4, 8] {
        for m in 1..=3u32 {
            let p = params(q, m);
            for trial in 0..1000 {
                let y = random_input(&mut rng, &p);
                let fast = ml_decode(&p, &y).unwrap();
                let slow = oracle.decode(&p, &y).unwrap();
                let gap = (fast.correlation - slow.best.correlation).abs();
                ensure(gap <= TOL, || {
                    format!("q={q} m={m} trial {trial}: metric gap {gap:e}")
                })?;
                let direct = correlation(&y, &to_polyphase(&p, &fast.codeword).unwrap()).unwrap();
                ensure((direct - fast.correlation).abs() <= TOL, || {
                    format!("q={q} m={m} trial {trial}: codeword does not attain metric")
                })?;
                if slow.is_unique(TOL) {
                    ensure(fast.codeword == slow.best.codeword, || {
                        format!("q={q} m={m} trial {trial}: codewords differ")
                    })?;
                    unique += 1;
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} inputs, {unique} with unique maximum"))
}

fn multiplication_halving() -> Outcome {
    let mut cells = 0;
    for &(m, q, _, _, _, ref_mults) in &PUBLISHED_TABLE {
        let h = q.trailing_zeros();
        if h < 3 {
            continue;
        }
        let x = predicted_mults(h, m).unwrap();
        ensure(2 * x == ref_mults, || {
            format!("m={m} q={q}: 2·{x} != {ref_mults}")
        })?;
        cells += 1;
    }
    Ok(format!("{cells} cells exactly half"))
}

fn ratio_convergence() -> Outcome {
    for &(m, q, _, _, ref_adds, _) in &PUBLISHED_TABLE {
        let h = q.trailing_zeros();
        if h >= 2 {
            let model = reference_adds_model(h, m).unwrap();
            ensure(model == ref_adds, || {
                format!("reference model m={m} q={q}: {model} != {ref_adds}")
            })?;
        }
    }
    let mut summary = Vec::new();
    for h in 2..=4u32 {
        let limit = comparison_ratio(h).unwrap();
        let mut last = f64::INFINITY;
        for m in 4..=10u32 {
            let ours = predicted_adds(h, m).unwrap().complex_adds_f64();
            let theirs = reference_adds_model(h, m).unwrap() as f64;
            let err = (ours / theirs - limit).abs();
            ensure(err < last, || {
                format!("h={h} m={m}: error {err:e} not below {last:e}")
            })?;
            last = err;
        }
        let (_, _, adds6, _, ref6, _) = *PUBLISHED_TABLE
            .iter()
            .find(|r| r.0 == 6 && r.1 == 1 << h)
            .unwrap();
        let rel = (adds6 as f64 / ref6 as f64 / limit - 1.0).abs();
        ensure(rel <= 0.05, || format!("h={h}: m=6 ratio off by {rel:.3}"))?;
        summary.push(format!("h={h} err@10={last:.2e}"));
    }
    Ok(summary.join(", "))
}

fn noiseless_end_to_end() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA6);
    for trial in 0..1000 {
        let q = rng.random_range(2..=16u32);
        let m = rng.random_range(1..=5u32);
        let p = params(q, m);
        let u = random_info(&mut rng, &p);
        let x = to_polyphase(&p, &encode(&p, &u).unwrap()).unwrap();
        let r = ml_decode(&p, &ReceivedVector::from_polyphase(&x)).unwrap();
        ensure(r.info == u, || {
            format!("trial {trial} q={q} m={m}: decoded {} != {u}", r.info)
        })?;
        ensure((r.correlation - p.n() as f64).abs() <= TOL, || {
            format!("trial {trial} q={q} m={m}: correlation {}", r.correlation)
        })?;
    }
    Ok("1000 configurations, 0 failures".into())
}

fn shared_seed_monte_carlo() -> Outcome {
    let p = params(2, 3);
    let mut parts = Vec::new();
    for snr in [0.0, 3.0, 6.0] {
        let cfg = ChannelConfig::new(snr, 0xA7).unwrap();
        let ml = run_trials(&p, &cfg, 10_000, &DecoderChoice::Ml).unwrap();
        let oracle = run_trials(
            &p,
            &cfg,
            10_000,
            &DecoderChoice::Oracle(BruteForce::default()),
        )
        .unwrap();
        ensure(ml == oracle, || {
            format!("{snr} dB: ml {ml:?} vs oracle {oracle:?}")
        })?;
        parts.push(format!("{snr} dB: {} word errors", ml.word_errors));
    }
    Ok(parts.join(", "))
}

/// Exhaustive search over every word of every coset, without derotation.
fn union_search(code: &CosetCode, y: &ReceivedVector) -> f64 {
    let p = *code.params();
    let mut best = f64::NEG_INFINITY;
    for r in code.representatives() {
        for idx in 0..p.code_size() {
            let w = encode(&p, &InfoVector::from_index(&p, idx))
                .unwrap()
                .add_mod(r, p.q());
            best = best.max(correlation(y, &to_polyphase(&p, &w).unwrap()).unwrap());
        }
    }
    best
}

fn supercode_equivalence() -> Outcome {
    let p = params(4, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(0xA8);
    let mut trials = 0;
    for cosets in [2usize, 4] {
        let reps = (0..cosets)
            .map(|_| {
                ZqCodeword::new(&p, (0..p.n()).map(|_| rng.random_range(0..4)).collect()).unwrap()
            })
            .collect();
        let code = CosetCode::new(p, reps).unwrap();
        for trial in 0..500 {
            let j = rng.random_range(0..cosets);
            let u = random_info(&mut rng, &p);
            let word = encode(&p, &u)
                .unwrap()
                .add_mod(&code.representatives()[j], 4);
            let x = to_polyphase(&p, &word).unwrap();
            let sigma = (10f64.powf(-rng.random_range(0.0..8.0) / 10.0) / 2.0).sqrt();
            let y = ReceivedVector::new(
                x.samples()
                    .iter()
                    .map(|&s| s + gaussian(&mut rng, sigma))
                    .collect(),
            )
            .unwrap();
            let d = supercode_decode(&code, &y).unwrap();
            let best = union_search(&code, &y);
            ensure((d.result.correlation - best).abs() <= TOL, || {
                format!(
                    "M={cosets} trial {trial}: {} vs {best}",
                    d.result.correlation
                )
            })?;
            trials += 1;
        }
    }
    Ok(format!(
        "{trials} noisy trials match exhaustive union search"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("1 table reproduction", table_reproduction),
        ("2 instrumentation agreement", instrumentation_agreement),
        ("3 ML optimality", ml_optimality),
        ("4 multiplication halving", multiplication_halving),
        ("5 ratio convergence", ratio_convergence),
        ("6 noiseless end-to-end", noiseless_end_to_end),
        ("7 shared-seed Monte-Carlo", shared_seed_monte_carlo),
        ("8 supercode equivalence", supercode_equivalence),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
