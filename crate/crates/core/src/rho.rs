//! The one-parameter family of rational approximations pₙ^(ρ)/qₙ^(ρ) → ζ(3).
//!
//! For ρ ∈ ℕ and 0 ≤ k ≤ n,
//!
//! ```text
//! b_{k,n} = C(n+k,k)² C(n,k)² (k+ρn+1)/(n+k)
//! a_{k,n} = 2 b_{k,n} [2H_k − H_{n+k−1} − H_{n−k} − ((ρ+1)n+2k+1)/(2(k+ρn+1)(n+k))]
//! qₙ = Σ_{0≤k≤n} b_{k,n}                                  (= Θₙ, a ₅F₄ at 1)
//! pₙ = Σ_{1≤k≤n} (b_{k,n} H_k^(3) + ½ a_{k,n} H_k^(2))
//! ```
//!
//! Both sequences satisfy the three-term recurrence
//! (n+2)⁴Φₙ y_{n+2} + βₙ y_{n+1} + n⁴Φ_{n+1} yₙ = 0, the determinant
//! pₙq_{n+1} − p_{n+1}qₙ = −Φₙ/(2n⁴(n+1)⁴), and telescope into the series
//! ζ(3) = (7ρ+12)/(6ρ+10) + Σ_{n≥1} Φₙ/(2n⁴(n+1)⁴ΘₙΘ_{n+1}).
//!
//! Three readings are fixed here: the fraction inside a_{k,n} enters with a
//! minus sign, the q-sum starts at k = 0, and (p, q) are Θ-normalised
//! (q₁ = 3ρ+5). [`alt`] keeps the rejected readings for regression tests.
//! n = 0 is excluded throughout because b_{0,0} divides by zero.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bigmath::{binomial, check_prec, harmonic_table, hypergeometric_terminating, lcm_upto};
use crate::classic::poly;
use crate::{Error, Result};

/// One member (n, qₙ, pₙ) of the family, with the residual rₙ = qₙζ(3) − pₙ
/// when it has been evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoApprox {
    pub n: u32,
    pub q: Rational,
    pub p: Rational,
    pub r: Option<Float>,
}

/// Which of the two sequences to feed into [`verify_recurrence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sequence {
    P,
    Q,
}

fn check_params(n: u32, rho: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1 (b_{0,0} is singular)".into()));
    }
    if rho == 0 {
        return Err(Error::InvalidArgument("rho must be >= 1".into()));
    }
    Ok(())
}

/// C(n+k,k)² C(n,k)² (k+ρn+1)/(n+k); zero for k > n.
pub fn b_coeff(n: u32, k: u32, rho: u32) -> Result<Rational> {
    check_params(n, rho)?;
    if k > n {
        return Ok(Rational::new());
    }
    let w = (binomial(n + k, i64::from(k)) * binomial(n, i64::from(k))).pow(2);
    Ok(Rational::from((w * (k + rho * n + 1), n + k)))
}

/// The bracketed factor of a_{k,n} with the given sign in front of the fraction.
fn a_bracket(n: u32, k: u32, rho: u32, h1: &[Rational], fraction_sign: i32) -> Rational {
    let (nu, ku) = (n as usize, k as usize);
    let frac = Rational::from(((rho + 1) * n + 2 * k + 1, 2 * (k + rho * n + 1) * (n + k)));
    let base = Rational::from(&h1[ku] * 2u32) - &h1[nu + ku - 1] - &h1[nu - ku];
    if fraction_sign < 0 {
        base - frac
    } else {
        base + frac
    }
}

fn a_coeff_signed(n: u32, k: u32, rho: u32, fraction_sign: i32) -> Result<Rational> {
    let b = b_coeff(n, k, rho)?;
    if k > n {
        return Ok(b);
    }
    let h1 = harmonic_table(2 * n, 1);
    Ok(Rational::from(&b * &a_bracket(n, k, rho, &h1, fraction_sign)) * 2u32)
}

/// 2b_{k,n}[2H_k − H_{n+k−1} − H_{n−k} − ((ρ+1)n+2k+1)/(2(k+ρn+1)(n+k))].
pub fn a_coeff(n: u32, k: u32, rho: u32) -> Result<Rational> {
    a_coeff_signed(n, k, rho, -1)
}

/// (a_{0,n}, …, a_{n,n}) and (b_{0,n}, …, b_{n,n}) sharing one harmonic table.
pub fn coefficients(n: u32, rho: u32) -> Result<(Vec<Rational>, Vec<Rational>)> {
    check_params(n, rho)?;
    let h1 = harmonic_table(2 * n, 1);
    let mut a = Vec::with_capacity(n as usize + 1);
    let mut b = Vec::with_capacity(n as usize + 1);
    for k in 0..=n {
        let bk = b_coeff(n, k, rho)?;
        a.push(Rational::from(&bk * &a_bracket(n, k, rho, &h1, -1)) * 2u32);
        b.push(bk);
    }
    Ok((a, b))
}

/// qₙ^(ρ) = Σ_{0≤k≤n} b_{k,n}.
pub fn q_rho(n: u32, rho: u32) -> Result<Rational> {
    check_params(n, rho)?;
    (0..=n).try_fold(Rational::new(), |acc, k| Ok(acc + b_coeff(n, k, rho)?))
}

/// Θₙ^(ρ) = ((ρn+1)/n)·₅F₄(n+1, n, −n, −n, ρn+2; 1, 1, 1, ρn+1 | 1), summed
/// term by term from Pochhammer ratios; an independent path to [`q_rho`].
pub fn theta_5f4(n: u32, rho: u32) -> Result<Rational> {
    check_params(n, rho)?;
    let ni = i64::from(n);
    let rn = i64::from(rho) * ni;
    let upper = [ni + 1, ni, -ni, -ni, rn + 2].map(Rational::from);
    let lower = [1, 1, 1, rn + 1].map(Rational::from);
    let f = hypergeometric_terminating(&upper, &lower, &Rational::from(1))?;
    Ok(f * Rational::from((rn + 1, ni)))
}

/// pₙ^(ρ) = Σ_{1≤k≤n} (b_{k,n}H_k^(3) + ½a_{k,n}H_k^(2)).
pub fn p_rho(n: u32, rho: u32) -> Result<Rational> {
    let (a, b) = coefficients(n, rho)?;
    let h2 = harmonic_table(n, 2);
    let h3 = harmonic_table(n, 3);
    let mut p = Rational::new();
    for k in 1..=n as usize {
        p += Rational::from(&b[k] * &h3[k]);
        p += Rational::from(&a[k] * &h2[k]) / 2u32;
    }
    Ok(p)
}

/// (qₙ, pₙ) for n = 1..=N, without residuals.
pub fn approximants(max_n: u32, rho: u32) -> Result<Vec<RhoApprox>> {
    (1..=max_n).map(|n| Ok(RhoApprox { n, q: q_rho(n, rho)?, p: p_rho(n, rho)?, r: None })).collect()
}

/// As [`approximants`], with rₙ = qₙζ(3) − pₙ evaluated against `zeta3`.
pub fn approximants_with_residuals(max_n: u32, rho: u32, zeta3: &Float) -> Result<Vec<RhoApprox>> {
    check_prec(zeta3.prec())?;
    let prec = zeta3.prec();
    let mut out = approximants(max_n, rho)?;
    for a in &mut out {
        let r = Float::with_val(prec, zeta3 * &a.q) - Float::with_val(prec, &a.p);
        a.r = Some(r);
    }
    Ok(out)
}

fn poly_rho(n: u32, rho: u32, by_rho: &[&[i64]]) -> Integer {
    let ni = Integer::from(n);
    let ri = Integer::from(rho);
    by_rho.iter().rev().fold(Integer::new(), |acc, coeffs| acc * &ri + poly(&ni, coeffs))
}

/// Φₙ^(ρ), degree 5 in n and 2 in ρ.
pub fn phi_poly(n: u32, rho: u32) -> Result<Integer> {
    check_params(n, rho)?;
    Ok(poly_rho(n, rho, &[&[5, 24, 33, 0, -33, -12], &[3, 21, 56, 70, 39, 0], &[0, 3, 19, 46, 54, 24]]))
}

/// βₙ^(ρ) = −2(n+1)·(degree-8 polynomial in n, quadratic in ρ).
pub fn beta_poly(n: u32, rho: u32) -> Result<Integer> {
    check_params(n, rho)?;
    let inner = poly_rho(
        n,
        rho,
        &[
            &[412, 2748, 6870, 7366, 735, -5487, -4899, -1683, -204],
            &[344, 2776, 9340, 17212, 18955, 12409, 4433, 663, 0],
            &[0, 344, 2708, 8888, 16070, 16802, 10028, 3162, 408],
        ],
    );
    Ok(inner * (n + 1) * -2i32)
}

/// (n+2)⁴Φₙ y_{n+2} + βₙ y_{n+1} + n⁴Φ_{n+1} yₙ for y = p or q; exactly zero.
pub fn verify_recurrence(n: u32, rho: u32, seq: Sequence) -> Result<Rational> {
    check_params(n, rho)?;
    let y = |m: u32| match seq {
        Sequence::P => p_rho(m, rho),
        Sequence::Q => q_rho(m, rho),
    };
    let (lead, mid, tail) = recurrence_coefficients(n, rho)?;
    Ok(Rational::from(&lead * &y(n + 2)?) + Rational::from(&mid * &y(n + 1)?) + Rational::from(&tail * &y(n)?))
}

/// ((n+2)⁴Φₙ, βₙ, n⁴Φ_{n+1}).
pub fn recurrence_coefficients(n: u32, rho: u32) -> Result<(Integer, Integer, Integer)> {
    let lead = Integer::from(n + 2).pow(4) * phi_poly(n, rho)?;
    let tail = Integer::from(n).pow(4) * phi_poly(n + 1, rho)?;
    Ok((lead, beta_poly(n, rho)?, tail))
}

/// Recurrence residual for the numeric sequence rₙ; zero up to rounding.
pub fn verify_recurrence_residual(n: u32, rho: u32, zeta3: &Float) -> Result<Float> {
    let prec = zeta3.prec();
    let seq = approximants_with_residuals(n + 2, rho, zeta3)?;
    let r = |m: u32| seq[m as usize - 1].r.clone().expect("residuals were evaluated");
    let (lead, mid, tail) = recurrence_coefficients(n, rho)?;
    let total = Float::with_val(prec, &lead * &r(n + 2))
        + Float::with_val(prec, &mid * &r(n + 1))
        + Float::with_val(prec, &tail * &r(n));
    Ok(total)
}

/// pₙq_{n+1} − p_{n+1}qₙ; equals −Φₙ/(2n⁴(n+1)⁴).
pub fn det_pair(n: u32, rho: u32) -> Result<Rational> {
    let (p0, q0) = (p_rho(n, rho)?, q_rho(n, rho)?);
    let (p1, q1) = (p_rho(n + 1, rho)?, q_rho(n + 1, rho)?);
    Ok(Rational::from(&p0 * &q1) - Rational::from(&p1 * &q0))
}

/// The closed form −Φₙ/(2n⁴(n+1)⁴) that [`det_pair`] must equal.
pub fn det_closed_form(n: u32, rho: u32) -> Result<Rational> {
    let den = Integer::from(n).pow(4) * Integer::from(n + 1).pow(4) * 2u32;
    Ok(-Rational::from((phi_poly(n, rho)?, den)))
}

/// (7ρ+12)/(6ρ+10) + Σ_{n=1}^{N} Φₙ/(2n⁴(n+1)⁴ΘₙΘ_{n+1}); equals p_{N+1}/q_{N+1}.
pub fn series_partial(max_n: u32, rho: u32) -> Result<Rational> {
    if rho == 0 {
        return Err(Error::InvalidArgument("rho must be >= 1".into()));
    }
    let mut sum = Rational::from((7 * rho + 12, 6 * rho + 10));
    let mut theta = q_rho(1, rho)?;
    for n in 1..=max_n {
        let next = q_rho(n + 1, rho)?;
        sum += series_term(n, rho, &theta, &next)?;
        theta = next;
    }
    Ok(sum)
}

/// Φₙ/(2n⁴(n+1)⁴ΘₙΘ_{n+1}) given Θₙ and Θ_{n+1}.
pub fn series_term(n: u32, rho: u32, theta_n: &Rational, theta_next: &Rational) -> Result<Rational> {
    let den = Integer::from(n).pow(4) * Integer::from(n + 1).pow(4) * 2u32;
    let t = Rational::from((phi_poly(n, rho)?, den));
    Ok(t / Rational::from(theta_n * theta_next))
}

/// Checks n·qₙ ∈ ℤ and 2n·Lₙ³·pₙ ∈ ℤ.
pub fn integrality(n: u32, rho: u32) -> Result<(bool, bool)> {
    let q = q_rho(n, rho)?;
    let p = p_rho(n, rho)?;
    let nq = q * n;
    let scaled_p = p * (lcm_upto(n).pow(3) * 2u32 * n);
    Ok((nq.denom() == &1, scaled_p.denom() == &1))
}

/// Readings of the coefficient formulas that this module rejects. They are
/// kept public so tests can show each one breaks a known identity.
pub mod alt {
    use super::*;

    /// a_{k,n} with "+" in front of the fraction.
    pub fn a_coeff_plus_sign(n: u32, k: u32, rho: u32) -> Result<Rational> {
        a_coeff_signed(n, k, rho, 1)
    }

    /// pₙ built from [`a_coeff_plus_sign`].
    pub fn p_rho_plus_sign(n: u32, rho: u32) -> Result<Rational> {
        let h2 = harmonic_table(n, 2);
        let h3 = harmonic_table(n, 3);
        let mut p = Rational::new();
        for k in 1..=n {
            let ku = k as usize;
            p += Rational::from(&b_coeff(n, k, rho)? * &h3[ku]);
            p += Rational::from(&a_coeff_plus_sign(n, k, rho)? * &h2[ku]) / 2u32;
        }
        Ok(p)
    }

    /// pₙ with the a_{k,n}H_k^(2) term taken at full weight instead of ½.
    pub fn p_rho_full_weight(n: u32, rho: u32) -> Result<Rational> {
        let (a, b) = coefficients(n, rho)?;
        let h2 = harmonic_table(n, 2);
        let h3 = harmonic_table(n, 3);
        let mut p = Rational::new();
        for k in 1..=n as usize {
            p += Rational::from(&b[k] * &h3[k]);
            p += Rational::from(&a[k] * &h2[k]);
        }
        Ok(p)
    }

    /// qₙ summed from k = 1, dropping b_{0,n} = (ρn+1)/n.
    pub fn q_rho_from_k1(n: u32, rho: u32) -> Result<Rational> {
        check_params(n, rho)?;
        (1..=n).try_fold(Rational::new(), |acc, k| Ok(acc + b_coeff(n, k, rho)?))
    }
}
