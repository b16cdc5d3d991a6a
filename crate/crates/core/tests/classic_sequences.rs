use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use zeta3::bigmath::{lcm_upto, silver_ratio};
use zeta3::classic::{apery_det, apery_explicit, apery_recurrence, sl14_explicit, zudilin_sequences};
use zeta3::contfrac::{apery_cf, cf_from_convergents, equivalence_factors, ConvergentPair};
use zeta3::zoo::zeta3_bits;

const PREC: u32 = 1024;

fn error(p: &Rational, q: &Rational, z: &Float) -> Float {
    let v = Float::with_val(PREC, Rational::from(p / q));
    Float::with_val(PREC, v - z).abs()
}

#[test]
fn apery_det_to_100() {
    for n in 1..=100u32 {
        assert_eq!(apery_det(n).unwrap(), Rational::from((6, Integer::from(n).pow(3))), "n = {n}");
    }
}

#[test]
fn apery_denominators() {
    for t in apery_recurrence(60).into_iter().skip(1) {
        assert_eq!(t.q.denom(), &1, "q_{} not integral", t.n);
        let v = Rational::from(&t.p * (lcm_upto(t.n).pow(3) * 2u32));
        assert_eq!(v.denom(), &1, "2 p_{} L^3 not integral", t.n);
    }
}

// qₙ ~ c·ϖ^{4n}·n^{−3/2}; the step ratio with the prefactor removed tends to ϖ⁴.
fn corrected_step(q0: &Rational, q1: &Rational, n: u32, alpha: f64) -> f64 {
    let r = Float::with_val(256, Rational::from(q1 / q0)).to_f64();
    r * ((n + 1) as f64 / n as f64).powf(alpha)
}

#[test]
fn apery_growth_rate() {
    let w4 = silver_ratio(64).to_f64().powi(4);
    let (q59, q60) = (apery_explicit(59).q, apery_explicit(60).q);
    let step = corrected_step(&q59, &q60, 59, 1.5);
    assert!((step / w4 - 1.0).abs() < 0.03, "{step} vs {w4}");

    // The raw n-th root lags: the n^{−3/2} factor still costs 3.6% at n = 60.
    let rate = Float::with_val(256, q60.numer()).ln().to_f64() / 60.0;
    let gap = 1.0 - rate / w4.ln();
    assert!(gap > 0.03 && gap < 0.04, "{gap}");
    let q200 = apery_explicit(200).q;
    let rate = Float::with_val(256, q200.numer()).ln().to_f64() / 200.0;
    assert!((rate / w4.ln() - 1.0).abs() < 0.03);
}

#[test]
fn apery_tail_sum() {
    // ζ(3) − pₙ/qₙ = Σ_{k>n} 6/(k³ q_{k−1} q_k)
    let z = zeta3_bits(PREC).unwrap();
    let seq = apery_recurrence(260);
    let tol = Float::with_val(PREC, Float::i_exp(1, 40 - PREC as i32));
    for n in [1usize, 5, 20, 60] {
        let mut tail = Rational::new();
        for k in n + 1..=n + 200 {
            let den = Integer::from(k as u32).pow(3);
            tail += Rational::from((6, den)) / Rational::from(&seq[k - 1].q * &seq[k].q);
        }
        let lhs = Float::with_val(PREC, &z - Float::with_val(PREC, seq[n].ratio()));
        let diff = Float::with_val(PREC, lhs - Float::with_val(PREC, &tail)).abs();
        assert!(diff < tol, "n = {n}: {diff}");
    }
}

#[test]
fn apery_fraction_general_numerator() {
    let cf = apery_cf(21);
    for n in 2..=20usize {
        let m = Integer::from(n as u32 - 1).pow(6);
        assert_eq!(cf.b[n - 1], -Rational::from(m), "b_{n}");
    }
    let (p, q) = (0..=20)
        .map(|n| {
            let t = apery_explicit(n);
            (t.p, t.q)
        })
        .unzip();
    let built = cf_from_convergents(&ConvergentPair { p, q }, 20).unwrap();
    assert!(equivalence_factors(&built, &apery_cf(20)).is_some());
}

#[test]
fn sl14_converges_monotonically() {
    let z = zeta3_bits(PREC).unwrap();
    let errs: Vec<Float> = (1..=30)
        .map(|n| {
            let t = sl14_explicit(n).unwrap();
            error(&t.p, &t.q, &z)
        })
        .collect();
    for n in 2..=30usize {
        assert!(errs[n - 1] < errs[n - 2], "n = {n}");
    }
}

#[test]
fn sl14_growth_rate() {
    // q̂ₙ ~ c·ϖ^{4n}·n^{−5/2}
    let w4 = silver_ratio(64).to_f64().powi(4);
    let (a, b) = (sl14_explicit(30).unwrap().q, sl14_explicit(31).unwrap().q);
    let step = corrected_step(&a, &b, 30, 2.5);
    assert!((step / w4 - 1.0).abs() < 0.05, "{step} vs {w4}");
}

#[test]
fn zudilin_converges_monotonically() {
    let z = zeta3_bits(PREC).unwrap();
    let seq = zudilin_sequences(25).unwrap();
    let errs: Vec<Float> = seq.iter().map(|t| error(&t.p, &t.q, &z)).collect();
    for n in 3..=25 {
        assert!(errs[n] < errs[n - 1], "n = {n}");
    }
    assert!(errs[25] < 1e-30);
}
