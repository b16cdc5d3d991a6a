//! Error sequences, exponential-model fits and the irrationality certificate.
//!
//! Errors are modelled as εₙ = q·e^{βi} with i = n − n_lo + 1 the position in
//! the fitted window, so ln q is the extrapolated error one step before the
//! window starts. Rates are reported as digits gained per step in base b,
//! r(b) = −β/ln b.

use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::bigmath::{check_prec, lcm_upto, silver_ratio};
use crate::rho;
use crate::zoo::{partial_sums, zeta3_bits, SeriesId};
use crate::{Error, Result};

/// Bases for which [`FitResult::r_of_b`] is filled.
pub const RATE_BASES: [u32; 2] = [2, 10];

/// Bits of the working precision that must stay significant in every εₙ.
const FLOOR_MARGIN: u32 = 64;

/// εₙ = |ζₙ − ζ(3)| for n = n_lo..=n_lo+len−1.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSeq {
    pub id: Option<SeriesId>,
    pub n_lo: u32,
    pub eps: Vec<Float>,
}

impl ErrorSeq {
    /// Wraps precomputed errors; each must be strictly positive.
    pub fn new(id: Option<SeriesId>, n_lo: u32, eps: Vec<Float>) -> Result<Self> {
        if let Some(i) = eps.iter().position(|e| *e <= 0 || e.is_nan()) {
            return Err(Error::InvalidArgument(format!("error at n = {} is not positive", n_lo + i as u32)));
        }
        Ok(ErrorSeq { id, n_lo, eps })
    }

    pub fn n_hi(&self) -> u32 {
        self.n_lo + self.eps.len() as u32 - 1
    }

    pub fn get(&self, n: u32) -> Option<&Float> {
        n.checked_sub(self.n_lo).and_then(|i| self.eps.get(i as usize))
    }
}

/// Least-squares fit of ln εₙ = ln q + β·i.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub ln_q: Float,
    pub beta: Float,
    pub q: Float,
    pub r_of_b: BTreeMap<u32, Float>,
    /// n_lo − 1; the intercept in absolute n is ln_q − β·index_offset.
    pub index_offset: u32,
    pub max_residual: Float,
}

fn check_floor(id: &str, n: u32, eps: &Float, prec: u32) -> Result<()> {
    let floor = Float::with_val(prec, Float::i_exp(1, -((prec - FLOOR_MARGIN) as i32)));
    if *eps < floor {
        return Err(Error::PrecisionFloor { id: id.to_string(), n, prec });
    }
    Ok(())
}

/// Errors of the partial sums of `id` against ζ(3), at `prec` bits.
/// Fails if any error has fewer than 64 significant bits left.
pub fn error_sequence(id: SeriesId, n_lo: u32, n_hi: u32, prec: u32) -> Result<ErrorSeq> {
    check_prec(prec)?;
    if prec <= FLOOR_MARGIN + 1 {
        return Err(Error::InvalidArgument(format!("precision {prec} leaves no room for the error floor")));
    }
    if n_lo == 0 {
        return Err(Error::InvalidArgument("error sequences start at n >= 1".into()));
    }
    let zeta3 = zeta3_bits(prec + 32)?;
    let sums = partial_sums(id, n_lo, n_hi, prec + 32)?;
    let mut eps = Vec::with_capacity(sums.len());
    for (i, s) in sums.into_iter().enumerate() {
        let e = Float::with_val(prec, s - &zeta3).abs();
        check_floor(&id.to_string(), n_lo + i as u32, &e, prec)?;
        eps.push(e);
    }
    ErrorSeq::new(Some(id), n_lo, eps)
}

/// |pₙ/qₙ − ζ(3)| for the ρ-family, from the approximants directly.
pub fn rho_ratio_errors(rho_: u32, n_lo: u32, n_hi: u32, prec: u32) -> Result<ErrorSeq> {
    check_prec(prec)?;
    if n_lo == 0 || n_hi < n_lo {
        return Err(Error::InvalidArgument(format!("bad range {n_lo}..={n_hi}")));
    }
    let zeta3 = zeta3_bits(prec + 32)?;
    let mut eps = Vec::new();
    for n in n_lo..=n_hi {
        let ratio = rho::p_rho(n, rho_)? / rho::q_rho(n, rho_)?;
        let e = Float::with_val(prec, Float::with_val(prec + 32, &ratio) - &zeta3).abs();
        check_floor(&format!("rho:{rho_}"), n, &e, prec)?;
        eps.push(e);
    }
    ErrorSeq::new(Some(SeriesId::Rho(rho_)), n_lo, eps)
}

/// Least-squares line y = c₀ + c₁x; returns (c₀, c₁).
pub fn least_squares_line(xs: &[Float], ys: &[Float]) -> Result<(Float, Float)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidArgument("need at least two (x, y) pairs".into()));
    }
    let prec = ys.iter().chain(xs).map(Float::prec).max().unwrap_or(64);
    let n = Float::with_val(prec, xs.len());
    let sx = Float::with_val(prec, Float::sum(xs.iter()));
    let sy = Float::with_val(prec, Float::sum(ys.iter()));
    let sxx = Float::with_val(prec, Float::dot(xs.iter().zip(xs)));
    let sxy = Float::with_val(prec, Float::dot(xs.iter().zip(ys)));
    let det = Float::with_val(prec, &n * &sxx) - Float::with_val(prec, sx.square_ref());
    // relative test: identical abscissae leave only rounding noise
    let scale = Float::with_val(prec, &n * &sxx);
    if det.is_zero()
        || Float::with_val(prec, &det / &scale).abs() < Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2))
    {
        return Err(Error::DegenerateDesign("all abscissae are equal".into()));
    }
    let slope = (Float::with_val(prec, &n * &sxy) - Float::with_val(prec, &sx * &sy)) / &det;
    let intercept = (sy - Float::with_val(prec, &slope * &sx)) / n;
    Ok((intercept, slope))
}

/// Fits ln εₙ = ln q + β·i over the sequence, i = 1..N.
pub fn fit_exponential(errs: &ErrorSeq) -> Result<FitResult> {
    if errs.eps.len() < 3 {
        return Err(Error::InvalidArgument("a fit needs at least three points".into()));
    }
    let prec = errs.eps.iter().map(Float::prec).max().unwrap_or(64);
    let xs: Vec<Float> = (1..=errs.eps.len()).map(|i| Float::with_val(prec, i)).collect();
    let ys: Vec<Float> = errs.eps.iter().map(|e| Float::with_val(prec, e.ln_ref())).collect();
    let (ln_q, beta) = least_squares_line(&xs, &ys)?;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| Float::with_val(prec, y - Float::with_val(prec, &beta * x) - &ln_q).abs())
        .fold(Float::new(prec), |m, r| if r > m { r } else { m });
    let r_of_b =
        RATE_BASES.iter().map(|&b| (b, Float::with_val(prec, -&beta) / Float::with_val(prec, b).ln())).collect();
    Ok(FitResult {
        q: Float::with_val(prec, ln_q.exp_ref()),
        ln_q,
        beta,
        r_of_b,
        index_offset: errs.n_lo - 1,
        max_residual,
    })
}

/// Digits (in base `base`) gained between two consecutive errors:
/// ln(εₙ/ε_{n+1}) / ln(base).
pub fn step_rate(eps_n: &Float, eps_next: &Float, base: u32) -> Result<Float> {
    if *eps_n <= 0 || *eps_next <= 0 {
        return Err(Error::InvalidArgument("errors must be positive".into()));
    }
    if base < 2 {
        return Err(Error::InvalidArgument(format!("base must be >= 2, got {base}")));
    }
    let prec = eps_n.prec().max(eps_next.prec());
    let ratio = Float::with_val(prec, eps_n / eps_next);
    Ok(ratio.ln() / Float::with_val(prec, base).ln())
}

/// δ = (ln ϖ⁴ − 3)/(ln ϖ⁴ + 3).
pub fn delta(prec: u32) -> Float {
    let l = silver_ratio(prec).ln() * 4u32;
    Float::with_val(prec, &l - 3u32) / (l + 3u32)
}

/// e³ϖ⁻⁴.
pub fn e3w4(prec: u32) -> Float {
    let e3 = Float::with_val(prec, 3).exp();
    e3 / silver_ratio(prec).pow(4u32)
}

/// Integrality of n·qₙ and 2n·Lₙ³·pₙ at one n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegralityCheck {
    pub n: u32,
    pub nq: bool,
    pub scaled_p: bool,
}

/// Numeric evidence that ζ(3) is irrational along the ρ-family.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub rho: u32,
    pub n_max: u32,
    pub delta: Float,
    pub e3w4: Float,
    pub integrality_checks: Vec<IntegralityCheck>,
    /// (name, passed) for each growth estimate.
    pub growth_checks: Vec<(String, bool)>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.integrality_checks.iter().all(|c| c.nq && c.scaled_p)
            && self.growth_checks.iter().all(|(_, ok)| *ok)
            && self.delta > 0
            && self.e3w4 < 1
    }
}

fn rel_close(x: &Float, target: &Float, tol: f64) -> bool {
    let d = Float::with_val(x.prec(), x - target).abs() / target.clone().abs();
    d.to_f64() < tol
}

/// Checks, for n ≤ N:
/// * n·qₙ ∈ ℤ and 2n·Lₙ³·pₙ ∈ ℤ (an integrality failure is an error);
/// * q_{N}/q_{N−1} ≈ ϖ⁴ and r_{N}/r_{N−1} ≈ ϖ⁻⁴ within 10%;
/// * |rₙ|ϖ^{4n} over the upper half of the range stays below its maximum on
///   the lower half;
/// * 2N·L_N³·|r_N| < 1;
/// * δ > 0 and e³ϖ⁻⁴ < 1.
pub fn irrationality_certificate(rho_: u32, n_max: u32, prec: u32) -> Result<Certificate> {
    check_prec(prec)?;
    if n_max < 10 {
        return Err(Error::InvalidArgument(format!("certificate needs N >= 10, got {n_max}")));
    }
    let zeta3 = zeta3_bits(prec)?;
    let seq = rho::approximants_with_residuals(n_max, rho_, &zeta3)?;
    let mut integrality_checks = Vec::with_capacity(seq.len());
    for t in &seq {
        let nq = Rational::from(&t.q * t.n).denom() == &1;
        let scaled = Rational::from(&t.p * (lcm_upto(t.n).pow(3) * 2u32 * t.n));
        let check = IntegralityCheck { n: t.n, nq, scaled_p: scaled.denom() == &1 };
        if !(check.nq && check.scaled_p) {
            return Err(Error::Integrality(format!("rho = {rho_}, n = {}: {check:?}", t.n)));
        }
        integrality_checks.push(check);
    }

    let w4 = silver_ratio(prec).pow(4u32);
    let r_abs: Vec<Float> = seq.iter().map(|t| t.r.clone().expect("residuals evaluated").abs()).collect();
    let last = n_max as usize - 1;
    for (i, r) in r_abs.iter().enumerate() {
        check_floor(&format!("rho:{rho_} residual"), i as u32 + 1, r, prec)?;
    }
    let q_ratio = Float::with_val(prec, Rational::from(&seq[last].q / &seq[last - 1].q));
    let r_ratio = Float::with_val(prec, &r_abs[last] / &r_abs[last - 1]);
    let w4_inv = Float::with_val(prec, w4.recip_ref());

    let scaled: Vec<Float> = r_abs
        .iter()
        .enumerate()
        .map(|(i, r)| Float::with_val(prec, r * Float::with_val(prec, (&w4).pow(i as u32 + 1))))
        .collect();
    let half = scaled.len() / 2;
    let max_of = |v: &[Float]| v.iter().fold(Float::new(prec), |m, x| if *x > m { x.clone() } else { m });
    let bounded = max_of(&scaled[half..]) <= max_of(&scaled[..half]);

    let l3 = lcm_upto(n_max).pow(3);
    let denominators = Float::with_val(prec, &r_abs[last] * l3) * (2 * n_max);

    let delta = delta(prec);
    let e3w4 = e3w4(prec);
    let growth_checks = vec![
        ("q ratio near w^4".to_string(), rel_close(&q_ratio, &w4, 0.1)),
        ("r ratio near w^-4".to_string(), rel_close(&r_ratio, &w4_inv, 0.1)),
        ("|r_n| w^4n bounded".to_string(), bounded),
        ("2n L_n^3 |r_n| < 1".to_string(), denominators < 1),
        ("e^3 w^-4 < 1".to_string(), e3w4 < 1),
    ];
    Ok(Certificate { rho: rho_, n_max, delta, e3w4, integrality_checks, growth_checks })
}

/// `x` in scientific notation with `sig` significant figures, rounded from
/// the full binary value (so values below the f64 range print correctly),
/// e.g. `6.00e-159`.
pub fn format_sci(x: &Float, sig: usize) -> String {
    let sig = sig.max(1);
    if x.is_zero() {
        return format!("{:.*}e0", sig - 1, 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, digits, exp) = x.to_sign_string_exp(10, Some(sig));
    let exp = exp.unwrap_or(0) - 1;
    let sign = if neg { "-" } else { "" };
    if sig == 1 {
        format!("{sign}{digits}e{exp}")
    } else {
        format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
    }
}

/// A column of the reference convergence tables and the series behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableColumn {
    pub label: &'static str,
    pub series: SeriesId,
}

/// Reference column order. The SL column is the ρ = 2 series, and the
/// PP08 and A columns hold the Amdeberhan and PP08 formulas respectively.
pub const TABLE_COLUMNS: [TableColumn; 8] = [
    TableColumn { label: "SL", series: SeriesId::Rho(2) },
    TableColumn { label: "CS", series: SeriesId::ChenSrivastava },
    TableColumn { label: "Sr", series: SeriesId::Srivastava },
    TableColumn { label: "B", series: SeriesId::Borwein },
    TableColumn { label: "PP08", series: SeriesId::AmdeberhanA },
    TableColumn { label: "A", series: SeriesId::PP08 },
    TableColumn { label: "PP10", series: SeriesId::PP10 },
    TableColumn { label: "Sch", series: SeriesId::Scheufens },
];

/// Column label for a series, falling back to its id.
pub fn column_label(id: SeriesId) -> String {
    TABLE_COLUMNS.iter().find(|c| c.series == id).map(|c| c.label.to_string()).unwrap_or_else(|| id.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: f64) -> Float {
        Float::with_val(256, x)
    }

    #[test]
    fn synthetic_recovery() {
        let prec = 256;
        let eps: Vec<Float> =
            (1..=20).map(|n| Float::with_val(prec, Float::with_val(prec, -2 * n).exp()) * f(3e-5)).collect();
        let fit = fit_exponential(&ErrorSeq::new(None, 1, eps).unwrap()).unwrap();
        assert!((fit.beta.to_f64() + 2.0).abs() < 1e-12);
        assert!((fit.q.to_f64() / 3e-5 - 1.0).abs() < 1e-10);
        assert!(fit.max_residual.to_f64() < 1e-30);
        let r10 = fit.r_of_b[&10].to_f64();
        assert!((r10 - 2.0 / std::f64::consts::LN_10).abs() < 1e-12);
    }

    #[test]
    fn offset_recorded() {
        let eps: Vec<Float> = (51..=60).map(|n| Float::with_val(128, -n).exp()).collect();
        let fit = fit_exponential(&ErrorSeq::new(None, 51, eps).unwrap()).unwrap();
        assert_eq!(fit.index_offset, 50);
        assert!((fit.ln_q.to_f64() + 50.0).abs() < 1e-9);
    }

    #[test]
    fn bad_inputs() {
        assert!(ErrorSeq::new(None, 1, vec![f(0.0); 4]).is_err());
        assert!(ErrorSeq::new(None, 1, vec![f(1e-3), f(-1e-4)]).is_err());
        let two = ErrorSeq::new(None, 1, vec![f(1e-3), f(1e-4)]).unwrap();
        assert!(fit_exponential(&two).is_err());
        let xs = vec![f(3.0); 5];
        let ys: Vec<Float> = (0..5).map(|i| f(i as f64)).collect();
        assert!(matches!(least_squares_line(&xs, &ys), Err(Error::DegenerateDesign(_))));
    }

    #[test]
    fn step_rates() {
        assert!((step_rate(&f(1e-3), &f(1e-5), 10).unwrap().to_f64() - 2.0).abs() < 1e-12);
        assert_eq!(step_rate(&f(0.25), &f(0.25), 2).unwrap().to_f64(), 0.0);
        assert!(step_rate(&f(0.0), &f(1.0), 10).is_err());
    }

    #[test]
    fn constants() {
        assert!((delta(128).to_f64() - 0.080529).abs() < 5e-7);
        assert!((e3w4(128).to_f64() - 0.591263).abs() < 5e-7);
        let a = delta(64).to_f64();
        let b = delta(2048).to_f64();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn precision_floor_enforced() {
        // ε₅₀ of the ρ = 2 series is near 2^{-510}
        assert!(matches!(error_sequence(SeriesId::Rho(2), 50, 50, 512), Err(Error::PrecisionFloor { .. })));
        assert!(error_sequence(SeriesId::Rho(2), 50, 50, 1024).is_ok());
    }

    #[test]
    fn small_certificate() {
        let c = irrationality_certificate(1, 20, 512).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.integrality_checks.len(), 20);
        assert!(irrationality_certificate(1, 9, 512).is_err());
    }

    #[test]
    fn sci_format() {
        assert_eq!(format_sci(&f(6.004e-10), 3), "6.00e-10");
        assert_eq!(format_sci(&f(-1234.5), 2), "-1.2e3");
        assert_eq!(format_sci(&f(0.0), 3), "0.00e0");
        assert_eq!(format_sci(&f(9.996), 3), "1.00e1");
        let tiny = Float::with_val(2048, Float::i_exp(3, -1500));
        assert_eq!(format_sci(&tiny, 3), "8.55e-452");
    }

    #[test]
    fn labels() {
        assert_eq!(column_label(SeriesId::Rho(2)), "SL");
        assert_eq!(column_label(SeriesId::PP08), "A");
        assert_eq!(column_label(SeriesId::Markov), "markov");
    }
}
