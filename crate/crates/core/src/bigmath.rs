//! Exact integer/rational primitives, special numbers, and high-precision
//! real constants shared by every other module.
//!
//! Exact values are plain [`Integer`] / [`Rational`] (always canonical,
//! denominator positive). Real values are [`Float`]s whose precision in bits
//! travels with the value.
//!
//! π and ln 2 are computed here from fixed-point series rather than taken
//! from MPFR, so that the MPFR constants remain an independent check:
//!
//! * π: Machin's formula `π = 16·atan(1/5) − 4·atan(1/239)`,
//! * ln 2: `2·artanh(1/3) = 2·Σ 1/((2k+1)·3^(2k+1))`,
//!
//! both summed on integers scaled by `2^(prec + 32)` and rounded once.

use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::{Error, Result};

/// Unbounded signed integer.
pub type ExactInt = Integer;
/// Canonical rational with positive denominator.
pub type ExactRat = Rational;
/// Binary floating value; its precision is `RealHP::prec()`.
pub type RealHP = Float;

/// Smallest working precision accepted anywhere in the crate.
pub const MIN_PREC: u32 = 64;
/// Default working precision: enough for errors near 1e-217 plus guard bits.
pub const DEFAULT_PREC: u32 = 1024;

const GUARD_BITS: u32 = 32;
/// Bernoulli numbers B_0..=B_140 are kept in a process-wide table.
const BERNOULLI_CACHE: u32 = 140;

pub(crate) fn check_prec(prec: u32) -> Result<()> {
    if prec < MIN_PREC {
        return Err(Error::InvalidArgument(format!("precision {prec} bits is below the minimum of {MIN_PREC}")));
    }
    Ok(())
}

/// C(n, k), zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u32, k: i64) -> Integer {
    if k < 0 || k > i64::from(n) {
        return Integer::new();
    }
    Integer::from(n).binomial(k as u32)
}

/// Rising factorial (z)_k = z(z+1)…(z+k−1), with (z)_0 = 1.
pub fn pochhammer(z: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    let mut factor = z.clone();
    for _ in 0..k {
        acc *= &factor;
        factor += 1;
    }
    acc
}

/// Generalised harmonic number H_k^(r) = Σ_{1≤j≤k} j^(−r).
pub fn harmonic(k: u32, r: u32) -> Rational {
    assert!(r >= 1, "harmonic order must be positive");
    let mut acc = Rational::new();
    for j in 1..=k {
        acc += Rational::from((1, Integer::from(j).pow(r)));
    }
    acc
}

/// `[H_0^(r), H_1^(r), …, H_max^(r)]`.
pub fn harmonic_table(max: u32, r: u32) -> Vec<Rational> {
    assert!(r >= 1, "harmonic order must be positive");
    let mut table = Vec::with_capacity(max as usize + 1);
    let mut acc = Rational::new();
    table.push(acc.clone());
    for j in 1..=max {
        acc += Rational::from((1, Integer::from(j).pow(r)));
        table.push(acc.clone());
    }
    table
}

fn primes_upto(n: u32) -> Vec<u32> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    primes
}

/// L_n = lcm(1, …, n), evaluated as Π_{p ≤ n} p^⌊log n / log p⌋.
pub fn lcm_upto(n: u32) -> Integer {
    assert!(n >= 1, "lcm_upto requires n >= 1");
    let mut acc = Integer::from(1);
    for p in primes_upto(n) {
        // largest power of p not exceeding n
        let mut pk = u64::from(p);
        while pk * u64::from(p) <= u64::from(n) {
            pk *= u64::from(p);
        }
        acc *= pk;
    }
    acc
}

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_upto(BERNOULLI_CACHE))
}

/// B_0..=B_max from Σ_{k=0}^{m} C(m+1, k)·B_k = 0.
fn bernoulli_upto(max: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(max as usize + 1);
    b.push(Rational::from(1));
    for m in 1..=max {
        if m >= 3 && m % 2 == 1 {
            b.push(Rational::new());
            continue;
        }
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            if *bk != 0 {
                acc += Rational::from(binomial(m + 1, k as i64) * bk);
            }
        }
        // C(m+1, m) = m+1
        b.push(-acc / (m + 1));
    }
    b
}

/// Bernoulli number B_m with the B_1 = −1/2 convention.
pub fn bernoulli(m: u32) -> Rational {
    if m <= BERNOULLI_CACHE {
        return bernoulli_table()[m as usize].clone();
    }
    if m % 2 == 1 {
        return Rational::new();
    }
    bernoulli_upto(m).pop().expect("table is non-empty")
}

/// Σ_{k≥0} 1/((2k+1)·x^(2k+1)), alternating if `alternating`, scaled by 2^bits.
fn inverse_arctan_fixed(x: u32, bits: u32, alternating: bool) -> Integer {
    let x2 = Integer::from(x) * x;
    let mut power = (Integer::from(1) << bits) / x;
    let mut sum = power.clone();
    let mut k: u32 = 1;
    loop {
        power /= &x2;
        if power == 0 {
            break;
        }
        let term = Integer::from(&power / (2 * k + 1));
        if alternating && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn fixed_to_float(fixed: Integer, bits: u32, prec: u32) -> Float {
    Float::with_val(prec, fixed) >> bits
}

/// π to `prec` bits via Machin's formula on fixed-point integers.
pub fn pi_hp(prec: u32) -> Float {
    assert!(prec >= MIN_PREC, "precision below {MIN_PREC} bits");
    let bits = prec + GUARD_BITS;
    let fixed = inverse_arctan_fixed(5, bits, true) * 16u32 - inverse_arctan_fixed(239, bits, true) * 4u32;
    fixed_to_float(fixed, bits, prec)
}

/// ln 2 to `prec` bits as 2·artanh(1/3).
pub fn ln2_hp(prec: u32) -> Float {
    assert!(prec >= MIN_PREC, "precision below {MIN_PREC} bits");
    let bits = prec + GUARD_BITS;
    let fixed = inverse_arctan_fixed(3, bits, false) * 2u32;
    fixed_to_float(fixed, bits, prec)
}

/// Silver ratio ϖ = 1 + √2.
pub fn silver_ratio(prec: u32) -> Float {
    Float::with_val(prec, 2).sqrt() + 1u32
}

/// ζ(2k) from Euler's formula ζ(2k) = (−1)^(k−1)(2π)^(2k)·B_2k / (2·(2k)!).
///
/// k = 0 returns ζ(0) = −1/2 (analytic continuation), which the
/// ζ(2k)-weighted series need for their first term.
pub fn zeta_even(k: u32, prec: u32) -> Float {
    assert!(prec >= MIN_PREC, "precision below {MIN_PREC} bits");
    if k == 0 {
        return Float::with_val(prec, -0.5f64);
    }
    let work = prec + GUARD_BITS;
    let two_pi = pi_hp(work) * 2u32;
    let b = bernoulli(2 * k).abs();
    let fact = Integer::from(Integer::factorial(2 * k));
    let coeff = b / (fact * 2u32);
    let value = two_pi.pow(2 * k) * coeff;
    Float::with_val(prec, value)
}

/// Exact rational → float at `prec` bits, correctly rounded.
pub fn to_float(r: &Rational, prec: u32) -> Float {
    Float::with_val(prec, r)
}

/// Terminating generalised hypergeometric sum
/// `pFq(upper; lower | z) = Σ_k Π(a_i)_k / Π(b_j)_k · z^k / k!`.
///
/// One upper parameter must be a non-positive integer −m; the sum stops at
/// k = m. Fails if no upper parameter terminates the series or a lower
/// parameter produces a zero denominator before that.
pub fn hypergeometric_terminating(upper: &[Rational], lower: &[Rational], z: &Rational) -> Result<Rational> {
    let stop = upper
        .iter()
        .filter(|a| a.denom() == &1 && *a.numer() <= 0)
        .map(|a| (-a.numer().clone()).to_u32().ok_or(Error::NonTerminating))
        .collect::<Result<Vec<u32>>>()?
        .into_iter()
        .min()
        .ok_or(Error::NonTerminating)?;
    for b in lower {
        if b.denom() == &1 && *b.numer() <= 0 {
            let m = (-b.numer().clone()).to_u32().ok_or(Error::NonTerminating)?;
            if m < stop {
                return Err(Error::NonTerminating);
            }
        }
    }
    let mut term = Rational::from(1);
    let mut sum = term.clone();
    for k in 0..stop {
        for a in upper {
            term *= Rational::from(a + k);
        }
        for b in lower {
            term /= Rational::from(b + k);
        }
        term *= z;
        term /= k + 1;
        sum += &term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn factorial_oracle(n: u32) -> Integer {
        (1..=n).fold(Integer::from(1), |acc, j| acc * j)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 0), 1);
        let oracle = factorial_oracle(10) / (factorial_oracle(5) * factorial_oracle(5));
        assert_eq!(binomial(10, 5), oracle);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&Rational::from(1), 4), 24);
        assert_eq!(pochhammer(&Rational::from((7, 3)), 0), 1);
        // (3/2)(5/2)
        assert_eq!(pochhammer(&Rational::from((3, 2)), 2), Rational::from((15, 4)));
        assert_eq!(pochhammer(&Rational::from(-2), 3), 0);
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(3, 1), Rational::from((11, 6)));
        assert_eq!(harmonic(0, 3), 0);
        assert_eq!(harmonic(2, 3), Rational::from((9, 8)));
        let t = harmonic_table(10, 2);
        assert_eq!(t[10], harmonic(10, 2));
    }

    #[test]
    fn harmonic_differences_are_reciprocal_powers() {
        for r in 1..=3u32 {
            let table = harmonic_table(200, r);
            for k in 1..=200u32 {
                let diff = Rational::from(&table[k as usize] - &table[k as usize - 1]);
                assert_eq!(diff, Rational::from((1, Integer::from(k).pow(r))));
            }
        }
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_upto(1), 1);
        assert_eq!(lcm_upto(4), 12);
        let pairwise = (1..=10u32).fold(Integer::from(1), |acc, j| acc.lcm(&Integer::from(j)));
        assert_eq!(lcm_upto(10), pairwise);
        assert_eq!(lcm_upto(10), 2520);
    }

    #[test]
    fn lcm_matches_pairwise_and_divisibility() {
        let mut pairwise = Integer::from(1);
        for n in 1..=500u32 {
            pairwise.lcm_mut(&Integer::from(n));
            let l = lcm_upto(n);
            assert_eq!(l, pairwise, "n = {n}");
            for j in [1, n / 2 + 1, n] {
                assert!(l.is_divisible(&Integer::from(j)));
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        for m in 1..=200u32 {
            let mut acc = Rational::new();
            for k in 0..=m {
                acc += binomial(m + 1, i64::from(k)) * bernoulli(k);
            }
            assert_eq!(acc, 0, "m = {m}");
        }
    }

    #[test]
    fn pi_matches_mpfr_constant() {
        for prec in [64u32, 256, 1024, 3000] {
            let ours = pi_hp(prec);
            let mpfr = Float::with_val(prec, Constant::Pi);
            let diff = Float::with_val(prec, &ours - &mpfr).abs();
            let ulp = Float::with_val(prec, 1) >> (prec - 2);
            assert!(diff <= Float::with_val(prec, &ulp * 2u32), "prec = {prec}");
        }
        assert!((pi_hp(64).to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn pi_precision_self_consistency() {
        for p in [64u32, 128, 256, 512] {
            let lo = pi_hp(p);
            let hi = pi_hp(2 * p);
            let diff = Float::with_val(2 * p, &hi - &lo).abs();
            let bound = Float::with_val(2 * p, 1) >> (p - 1);
            assert!(diff < bound);
            let agreement = Float::with_val(2 * p, 1) >> (p - 2);
            assert!(diff < agreement);
        }
        let a = pi_hp(256);
        let b = pi_hp(512);
        let diff = Float::with_val(512, &a - &b).abs();
        assert!(diff < (Float::with_val(512, 1) >> 253u32));
    }

    #[test]
    fn ln2_matches_mpfr_and_inverts_exp() {
        for prec in [64u32, 512, 2048] {
            let ours = ln2_hp(prec);
            let mpfr = Float::with_val(prec, Constant::Log2);
            let diff = Float::with_val(prec, &ours - &mpfr).abs();
            assert!(diff <= (Float::with_val(prec, 1) >> (prec - 2)));
            let back = Float::with_val(prec, ours.exp_ref()) - 2u32;
            assert!(back.abs() < (Float::with_val(prec, 1) >> (prec - 4)));
        }
        assert!((ln2_hp(64).to_f64() - std::f64::consts::LN_2).abs() < 1e-16);
        let a = ln2_hp(128);
        let b = ln2_hp(256);
        assert!(Float::with_val(256, &a - &b).abs() < (Float::with_val(256, 1) >> 127u32));
    }

    #[test]
    fn zeta_even_values() {
        let prec = 256;
        let z2 = zeta_even(1, prec);
        let pi = pi_hp(prec);
        let expected = Float::with_val(prec, pi.square_ref()) / 6u32;
        assert!(Float::with_val(prec, &z2 - &expected).abs() < (Float::with_val(prec, 1) >> 250u32));
        assert_eq!(zeta_even(0, prec), -0.5f64);
        let z4 = zeta_even(2, prec);
        let expected4 = Float::with_val(prec, pi.pow(4u32)) / 90u32;
        assert!(Float::with_val(prec, &z4 - &expected4).abs() < (Float::with_val(prec, 1) >> 250u32));
    }

    #[test]
    fn zeta_even_decreases_towards_one() {
        // ζ(140) − 1 ≈ 2^-140, so the precision must resolve it
        let mut prev = Float::with_val(512, 1.65f64);
        for k in 1..=70u32 {
            let z = zeta_even(k, 512);
            assert!(z > 1u32 && z <= 1.65f64, "k = {k}");
            assert!(z < prev, "k = {k}");
            prev = z;
        }
    }

    #[test]
    fn hypergeometric_counts_binomial_sum() {
        // 2F1(-n, -n; 1 | 1) = C(2n, n)
        for n in 0..10u32 {
            let a = Rational::from(-i64::from(n));
            let v = hypergeometric_terminating(&[a.clone(), a], &[Rational::from(1)], &Rational::from(1)).unwrap();
            assert_eq!(v, binomial(2 * n, i64::from(n)));
        }
        let err = hypergeometric_terminating(&[Rational::from(1)], &[Rational::from(1)], &Rational::from(1));
        assert_eq!(err, Err(Error::NonTerminating));
        let err = hypergeometric_terminating(&[Rational::from(-3)], &[Rational::from(-1)], &Rational::from(1));
        assert_eq!(err, Err(Error::NonTerminating));
    }
}
