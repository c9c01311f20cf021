//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use mpcm::eigen::{diag_h, eigenvalues_h};
use mpcm::matrix::Matrix;
use mpcm::scalar::{pi, random_real};
use mpcm::special::gamma;
use mpcm::{Error, MpComplex, MpReal};
use mpcm_cli::classic::{self, Method, EXACT_X, EXACT_Y};
use mpcm_cli::{dj, grover, nmr, simple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

// criterion 1
const CLASSIC_EXACT_TOL: f64 = 1e-20;
const CLASSIC_DOUBLE_MIN_ERR: f64 = 1e-3;
const CLASSIC_BUDGET: Duration = Duration::from_secs(1);
// criterion 2
const GROVER_TOL: f64 = 1e-8;
const GROVER_BUDGET: Duration = Duration::from_secs(5);
// criterion 3
const SIMPLE_BUDGET: Duration = Duration::from_secs(1);
// criteria 4 and 5
const DJ_EXPECTED_RANK: usize = 28;
const DJ_EXACT_TOL: f64 = 1e-50;
const DJ_CAPPED_MIN_ERR: f64 = 1e-3;
const DJ_AT_RANK_TOL: f64 = 1e-30;
const DJ_FULL_BUDGET: Duration = Duration::from_secs(30 * 60);
const DJ_FAST_BUDGET: Duration = Duration::from_secs(2 * 60);
// criterion 6
const STARVED_PRECISIONS: [u32; 2] = [53, 55];
// criterion 7
const ORACLE_CIRCUITS: usize = 200;
const ORACLE_MAX_QUBITS: usize = 8;
const ORACLE_MAX_GATES: usize = 30;
const ORACLE_TOL_EXP: i32 = -232;
const ORACLE_BUDGET: Duration = Duration::from_secs(10 * 60);
// criterion 8
const EIGEN_DIM: usize = 20;
const EIGEN_SEEDS: u64 = 5;
const DIAG_H_TOL: f64 = 1e-70;
const EIGENVALUES_H_TOL: f64 = 1e-25;
// criterion 9
const GAMMA_SAMPLES: usize = 100;
const GAMMA_PRECISIONS: [u32; 2] = [256, 512];
const GAMMA_SLACK_BITS: i32 = 8;
const GAMMA_BUDGET: Duration = Duration::from_secs(60);
// criterion 10
const NMR_TEMPERATURE: f64 = 300.0;
const NMR_PREC: u32 = 280;
const NMR_DOMINANCE: f64 = 5.0;
const NMR_BUDGET: Duration = Duration::from_secs(2 * 60);

const P: u32 = 256;

fn report(n: u32, ok: bool, detail: String) {
    println!(
        "criterion {n}: {} {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn rel_err(z: &MpComplex, exact: u64) -> f64 {
    let e = Float::with_val(z.prec(), exact);
    let d = (z - &MpComplex::from_real(e.clone())).abs();
    Float::with_val(z.prec(), d / e).to_f64()
}

#[test]
fn criterion_01_classic_system() {
    let t = Instant::now();
    let mut worst_exact: f64 = 0.0;
    let mut least_double = f64::INFINITY;
    for m in [Method::Inverse, Method::Gauss] {
        let (x, y) = classic::solve(256, m).unwrap();
        worst_exact = worst_exact
            .max(rel_err(&x, EXACT_X))
            .max(rel_err(&y, EXACT_Y));
        let (x53, _) = classic::solve(53, m).unwrap();
        least_double = least_double.min(rel_err(&x53, EXACT_X));
    }
    let elapsed = t.elapsed();
    let ok = worst_exact < CLASSIC_EXACT_TOL
        && least_double > CLASSIC_DOUBLE_MIN_ERR
        && elapsed < CLASSIC_BUDGET;
    report(
        1,
        ok,
        format!("rel err at 256 bits {worst_exact:.3e}, x rel err at 53 bits {least_double:.3e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_02_grover_transcript() {
    let t = Instant::now();
    let probs = grover::probabilities(1, 8, P).unwrap();
    let want = [0.25, 1.0, 0.25, 0.25, 1.0, 0.25, 0.25, 1.0, 0.25];
    let worst = probs
        .iter()
        .zip(want)
        .map(|(p, w)| Float::with_val(P, p - w).abs().to_f64())
        .fold(0.0, f64::max);
    let lines = grover::transcript(8, P, 10).unwrap();
    let text_ok = lines[0] == "Initially, Prob(01)=2.500000000e-01"
        && lines[2] == "After 1 times iteration, Prob(01)=1.000000000e+00"
        && lines[9] == "After 8 times iteration, Prob(01)=2.500000000e-01";
    let elapsed = t.elapsed();
    let ok = worst <= GROVER_TOL && text_ok && elapsed < GROVER_BUDGET;
    report(
        2,
        ok,
        format!("max deviation {worst:.3e}, transcript lines match: {text_ok}, {elapsed:?}"),
    );
}

#[test]
fn criterion_03_simple_transcript() {
    let t = Instant::now();
    let lines = simple::transcript(P, 8).unwrap();
    let first = lines[1] == "1.0000000e+00|000><000|";
    let last = lines[5]
        == "5.0000000e-01|00><00|+5.0000000e-01|00><11|+5.0000000e-01|11><00|+5.0000000e-01|11><11|";
    let elapsed = t.elapsed();
    report(
        3,
        first && last && elapsed < SIMPLE_BUDGET,
        format!("initial {first}, final {last}, {elapsed:?}"),
    );
}

#[test]
fn criterion_04_deutsch_jozsa_exact() {
    let t = Instant::now();
    let fast = dj::run(2, P, 0, 0).unwrap();
    let fast_time = t.elapsed();
    let t = Instant::now();
    let full = dj::run(7, P, 0, 0).unwrap();
    let full_time = t.elapsed();
    let fast_err = fast.max_error().to_f64();
    let full_err = full.max_error().to_f64();
    let ok = full.m_maxmax == DJ_EXPECTED_RANK
        && full_err <= DJ_EXACT_TOL
        && full_time <= DJ_FULL_BUDGET
        && fast_err <= DJ_EXACT_TOL
        && fast_time <= DJ_FAST_BUDGET;
    report(
        4,
        ok,
        format!(
            "N_g=7: m_maxmax {} error {full_err:.3e} in {full_time:?}; N_g=2: error {fast_err:.3e} in {fast_time:?}",
            full.m_maxmax
        ),
    );
}

#[test]
fn criterion_05_truncation_cliff() {
    let below = std::thread::spawn(|| dj::run(7, P, DJ_EXPECTED_RANK - 1, 0).unwrap());
    let at = dj::run(7, P, DJ_EXPECTED_RANK, 0).unwrap();
    let below = below.join().unwrap();
    let e_below = below.max_error().to_f64();
    let e_at = at.max_error().to_f64();
    let ok = e_below >= DJ_CAPPED_MIN_ERR && e_at <= DJ_AT_RANK_TOL;
    report(
        5,
        ok,
        format!("cap 27 error {e_below:.3e}, cap 28 error {e_at:.3e}"),
    );
}

#[test]
fn criterion_06_precision_starvation() {
    let handles: Vec<_> = STARVED_PRECISIONS
        .iter()
        .map(|&prec| std::thread::spawn(move || (prec, dj::run(7, prec, 0, 0))))
        .collect();
    let mut ok = true;
    let mut notes = Vec::new();
    for h in handles {
        let (prec, r) = h.join().unwrap();
        match r {
            Err(e)
                if matches!(
                    e.downcast_ref::<Error>(),
                    Some(Error::ConvergenceFailure { .. })
                ) =>
            {
                notes.push(format!("prec {prec}: convergence failure"));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("prec {prec}: other error {e}"));
            }
            Ok(r) => {
                ok = false;
                notes.push(format!(
                    "prec {prec}: finished, m_maxmax {} error {:.3e}",
                    r.m_maxmax,
                    r.max_error().to_f64()
                ));
            }
        }
    }
    report(6, ok, notes.join("; "));
}

#[test]
fn criterion_07_mps_matches_dense_oracle() {
    let t = Instant::now();
    let tol = Float::with_val(P, Float::u_exp(1, ORACLE_TOL_EXP));
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = Float::new(P);
    let mut failures = 0;
    for _ in 0..ORACLE_CIRCUITS {
        let n = rng.gen_range(1..=ORACLE_MAX_QUBITS);
        let len = rng.gen_range(1..=ORACLE_MAX_GATES);
        let ops = common::random_circuit(&mut rng, n, len, P);
        let dev = common::compare(n, &ops, P);
        if dev > tol {
            failures += 1;
        }
        if dev > worst {
            worst = dev;
        }
    }
    let elapsed = t.elapsed();
    let ok = failures == 0 && elapsed < ORACLE_BUDGET;
    report(
        7,
        ok,
        format!(
            "{failures} of {ORACLE_CIRCUITS} circuits over 2^{ORACLE_TOL_EXP}, worst {:.3e}, {elapsed:?}",
            worst.to_f64()
        ),
    );
}

fn construct(d: &[MpReal], rng: &mut ChaCha8Rng) -> Matrix {
    let q = Matrix::random_unitary(d.len(), rng, P);
    let diag = Matrix::diag(
        &d.iter()
            .map(|x| MpComplex::from_real(x.clone()))
            .collect::<Vec<_>>(),
    );
    q.mul(&diag).unwrap().mul(&q.adjoint()).unwrap()
}

fn sum_abs_diff(found: &[MpReal], want: &[MpReal]) -> f64 {
    let mut want = want.to_vec();
    want.sort_by(|a, b| b.partial_cmp(a).unwrap());
    found
        .iter()
        .zip(&want)
        .fold(Float::new(P), |acc, (x, y)| {
            acc + Float::with_val(P, x - y).abs()
        })
        .to_f64()
}

fn orthonormal(v: &Matrix) -> bool {
    let n = v.cols();
    v.adjoint()
        .mul(v)
        .unwrap()
        .sub(&Matrix::identity(n, P))
        .unwrap()
        .frobenius_norm()
        <= DIAG_H_TOL
}

#[test]
fn criterion_08_eigensolver_recovery() {
    let mut ok = true;
    let mut notes = Vec::new();
    for seed in 0..EIGEN_SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d: Vec<MpReal> = (0..EIGEN_DIM).map(|_| random_real(&mut rng, P)).collect();
        let a = construct(&d, &mut rng);
        let full = diag_h(&a).unwrap();
        let e_full = sum_abs_diff(&full.eigenvalues, &d);
        let e_fast = sum_abs_diff(&eigenvalues_h(&a).unwrap(), &d);
        let seed_ok = e_full <= DIAG_H_TOL && e_fast <= EIGENVALUES_H_TOL && e_full < e_fast;
        ok &= seed_ok;
        notes.push(format!("seed {seed}: {e_full:.2e}/{e_fast:.2e}"));
    }
    let identity = diag_h(&Matrix::identity(EIGEN_DIM, P)).unwrap();
    let id_ok = identity.eigenvalues.iter().all(|x| *x == 1) && orthonormal(&identity.vectors);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let pairs: Vec<MpReal> = (0..EIGEN_DIM / 2)
        .map(|_| random_real(&mut rng, P))
        .flat_map(|x| [x.clone(), x])
        .collect();
    let a = construct(&pairs, &mut rng);
    let paired = diag_h(&a).unwrap();
    let pair_ok =
        sum_abs_diff(&paired.eigenvalues, &pairs) <= DIAG_H_TOL && orthonormal(&paired.vectors);
    ok &= id_ok && pair_ok;
    report(
        8,
        ok,
        format!(
            "diag_h/eigenvalues_h {}; identity {id_ok}; paired spectrum {pair_ok}",
            notes.join(", ")
        ),
    );
}

fn rel(a: &MpComplex, b: &MpComplex) -> Float {
    let p = a.prec().max(b.prec());
    Float::with_val(p, (a - b).abs() / b.abs())
}

#[test]
fn criterion_09_gamma_accuracy() {
    let t = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for prec in GAMMA_PRECISIONS {
        let bound = Float::with_val(prec, Float::u_exp(1, GAMMA_SLACK_BITS - prec as i32));
        let mut rng = ChaCha8Rng::seed_from_u64(prec as u64);
        let mut worst = [Float::new(prec), Float::new(prec), Float::new(prec)];
        let mut n = 0;
        while n < GAMMA_SAMPLES {
            let re = Float::with_val(prec, random_real(&mut rng, prec) * 10u32);
            let im = Float::with_val(prec, random_real(&mut rng, prec) * 10u32);
            let z = MpComplex::from_parts(re, im);
            // the sampled values are never integers, so Γ(z), Γ(1-z), Γ(z+1) are all finite
            let g = match gamma(&z, prec) {
                Ok(g) => g,
                Err(Error::Pole(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            n += 1;
            let oracle = gamma(&z.clone().with_prec(2 * prec), 2 * prec).unwrap();
            let one = MpComplex::one(prec);
            let shifted = gamma(&(&z + &one), prec).unwrap();
            let reflected = gamma(&(&one - &z), prec).unwrap();
            let pi_c = MpComplex::from_real(pi(prec));
            let sin = (&pi_c * &z).sin();
            let checks = [
                rel(&g.clone().with_prec(2 * prec), &oracle),
                rel(&shifted, &(&z * &g)),
                rel(&(&g * &reflected), &pi_c.div(&sin).unwrap()),
            ];
            for (w, c) in worst.iter_mut().zip(checks) {
                if c > *w {
                    *w = Float::with_val(prec, c);
                }
            }
        }
        let prec_ok = worst.iter().all(|w| *w <= bound);
        ok &= prec_ok;
        notes.push(format!(
            "prec {prec}: oracle {:.2e} recurrence {:.2e} reflection {:.2e} (bound {:.2e})",
            worst[0].to_f64(),
            worst[1].to_f64(),
            worst[2].to_f64(),
            bound.to_f64()
        ));
    }
    let elapsed = t.elapsed();
    ok &= elapsed < GAMMA_BUDGET;
    report(9, ok, format!("{}; {elapsed:?}", notes.join("; ")));
}

#[test]
fn criterion_10_nmr_doublet() {
    let t = Instant::now();
    let r = nmr::run(NMR_TEMPERATURE, NMR_PREC, None, 8).unwrap();
    let elapsed = t.elapsed();
    let df = r.spectrum.step.to_f64();
    // below Nyquist: the first half of the padded transform
    let mag: Vec<f64> = r.spectrum.samples[..r.samples]
        .iter()
        .map(|z| z.re.to_f64())
        .collect();
    let mut order: Vec<usize> = (0..mag.len()).collect();
    order.sort_by(|&a, &b| mag[b].partial_cmp(&mag[a]).unwrap());
    let (p1, p2) = (order[0], order[1]);
    let rest = mag[order[2]];
    let dominance = mag[p2] / rest;
    // closed form: the proton line splits into the transition frequencies
    // E(0σ) − E(1σ) = w1 ± J12/2 of the diagonal Hamiltonian
    let h = nmr::hamiltonian(NMR_PREC).unwrap();
    let lines: Vec<f64> = [(0, 2), (1, 3)]
        .iter()
        .map(|&(a, b)| Float::with_val(NMR_PREC, &h[(a, a)].re - &h[(b, b)].re).to_f64())
        .collect();
    let found = {
        let mut f = [p1 as f64 * df, p2 as f64 * df];
        f.sort_by(|a, b| a.partial_cmp(b).unwrap());
        f
    };
    let mut expected = lines.clone();
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let located = found
        .iter()
        .zip(&expected)
        .all(|(f, e)| (f - e).abs() <= df);
    let side_lobe = (1..mag.len() - 1)
        .filter(|&k| k != p1 && k != p2 && mag[k] > mag[k - 1] && mag[k] >= mag[k + 1])
        .map(|k| mag[k])
        .fold(0.0, f64::max);
    let ok = located && dominance >= NMR_DOMINANCE && elapsed < NMR_BUDGET;
    report(
        10,
        ok,
        format!(
            "peaks at bins {p1},{p2} ({:.1} Hz, {:.1} Hz vs {:.1} Hz, {:.1} Hz, df {df:.1} Hz) located {located}; \
             weaker peak / next bin {dominance:.2}, / largest side lobe {:.2}; {elapsed:?}",
            found[0],
            found[1],
            expected[0],
            expected[1],
            mag[p2] / side_lobe
        ),
    );
}
