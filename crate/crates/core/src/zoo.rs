//! Partial sums of the known series for ζ(3), at arbitrary precision.
//!
//! | id | n-th partial sum |
//! |----|------------------|
//! | `euler` | −4π²/7 Σ_{0≤k≤n} ζ(2k)/((2k+1)(2k+2)4ᵏ) |
//! | `markov` | 5/2 Σ_{1≤k≤n} (−1)^{k−1}/(k³C(2k,k)) |
//! | `chen-srivastava` | −8π²/5 Σ_{0≤k≤n} ζ(2k)/((2k+1)(2k+2)(2k+3)4ᵏ) |
//! | `srivastava` | −6π²/23 Σ_{0≤k≤n} (98k+121)ζ(2k)/((2k+1)⋯(2k+5)4ᵏ) |
//! | `borwein` | 2π²/7 [ln 2 − ½ + Σ_{1≤k≤n} ζ(2k)/(4ᵏ(k+1))] |
//! | `amdeberhan` | ¼ Σ_{1≤k≤n} (−1)^{k−1}(56k²−32k+5)/(k³(2k−1)²C(2k,k)C(3k,k)) |
//! | `pp08` | Σ_{0≤k≤n} (−1)ᵏ k!¹⁰(205k²+250k+77)/(64(2k+1)!⁵) |
//! | `pp10` | ½ Σ_{1≤k≤n} (−1)^{k−1}(205k²−160k+32)/(k⁵C(2k,k)⁵) |
//! | `scheufens` | −2π²/7 Σ_{0≤k≤n} ζ(2k)/(4ᵏ(k+1)(2k+1)) |
//! | `sl2014` | 7/6 + Σ_{1≤k≤n} (24k³+30k²+16k+3)/(2k³(k+1)³Θ_kΘ_{k+1}), Θ_k = ₄F₃(−k,−k,k,k+1;1,1,1∣1) |
//! | `rho:ρ` | (7ρ+12)/(6ρ+10) + Σ_{1≤k≤n} Φ_k/(2k⁴(k+1)⁴Θ_kΘ_{k+1}) |
//!
//! ζ(0) = −½ in the ζ(2k) sums.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bigmath::{binomial, check_prec, hypergeometric_terminating, ln2_hp, pi_hp, zeta_even};
use crate::rho;
use crate::{Error, Result};

/// Extra bits carried while accumulating a partial sum.
const WORK_GUARD: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesId {
    Euler,
    Markov,
    ChenSrivastava,
    Srivastava,
    Borwein,
    AmdeberhanA,
    PP08,
    PP10,
    Scheufens,
    SL2014,
    Rho(u32),
}

impl SeriesId {
    pub const FIXED: [SeriesId; 10] = [
        SeriesId::Euler,
        SeriesId::Markov,
        SeriesId::ChenSrivastava,
        SeriesId::Srivastava,
        SeriesId::Borwein,
        SeriesId::AmdeberhanA,
        SeriesId::PP08,
        SeriesId::PP10,
        SeriesId::Scheufens,
        SeriesId::SL2014,
    ];

    /// Smallest n for which the partial sum is defined.
    pub fn min_index(self) -> u32 {
        match self {
            SeriesId::Markov | SeriesId::AmdeberhanA | SeriesId::PP10 | SeriesId::SL2014 | SeriesId::Rho(_) => 1,
            _ => 0,
        }
    }

    /// Whether every term is rational (no π, ln 2 or ζ(2k)).
    pub fn is_rational(self) -> bool {
        matches!(
            self,
            SeriesId::Markov
                | SeriesId::AmdeberhanA
                | SeriesId::PP08
                | SeriesId::PP10
                | SeriesId::SL2014
                | SeriesId::Rho(_)
        )
    }

    fn check(self) -> Result<()> {
        match self {
            SeriesId::Rho(0) => Err(Error::InvalidArgument("rho must be >= 1".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesId::Euler => f.write_str("euler"),
            SeriesId::Markov => f.write_str("markov"),
            SeriesId::ChenSrivastava => f.write_str("chen-srivastava"),
            SeriesId::Srivastava => f.write_str("srivastava"),
            SeriesId::Borwein => f.write_str("borwein"),
            SeriesId::AmdeberhanA => f.write_str("amdeberhan"),
            SeriesId::PP08 => f.write_str("pp08"),
            SeriesId::PP10 => f.write_str("pp10"),
            SeriesId::Scheufens => f.write_str("scheufens"),
            SeriesId::SL2014 => f.write_str("sl2014"),
            SeriesId::Rho(r) => write!(f, "rho:{r}"),
        }
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        if let Some(r) = lower.strip_prefix("rho:") {
            let rho: u32 = r.parse().map_err(|_| Error::InvalidArgument(format!("bad rho in series id {s:?}")))?;
            let id = SeriesId::Rho(rho);
            id.check()?;
            return Ok(id);
        }
        SeriesId::FIXED
            .into_iter()
            .find(|id| id.to_string() == lower)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown series id {s:?}")))
    }
}

/// Θ_k = ₄F₃(−k, −k, k, k+1; 1, 1, 1 ∣ 1).
pub fn theta_4f3(k: u32) -> Result<Rational> {
    let k = i64::from(k);
    let upper = [-k, -k, k, k + 1].map(Rational::from);
    let lower = [1, 1, 1].map(Rational::from);
    hypergeometric_terminating(&upper, &lower, &Rational::from(1))
}

fn signed(k: u32, odd_negative: bool) -> i32 {
    if (k % 2 == 1) == odd_negative {
        -1
    } else {
        1
    }
}

/// Exact terms of the rational series for k = min..=n_hi, plus the constant
/// added in front of the sum.
fn rational_terms(id: SeriesId, n_hi: u32) -> Result<(Rational, Vec<Rational>)> {
    let lo = id.min_index();
    let mut terms = Vec::new();
    let constant = match id {
        SeriesId::Markov => {
            for k in lo..=n_hi {
                let den = Integer::from(k).pow(3) * binomial(2 * k, i64::from(k));
                terms.push(Rational::from((signed(k, false) * 5, den * 2u32)));
            }
            Rational::new()
        }
        SeriesId::AmdeberhanA => {
            for k in lo..=n_hi {
                let ki = i64::from(k);
                let num = 56 * ki * ki - 32 * ki + 5;
                let den = Integer::from(k).pow(3)
                    * Integer::from(2 * k - 1).pow(2)
                    * binomial(2 * k, ki)
                    * binomial(3 * k, ki)
                    * 4u32;
                terms.push(Rational::from((num * i64::from(signed(k, false)), den)));
            }
            Rational::new()
        }
        SeriesId::PP08 => {
            for k in lo..=n_hi {
                let ki = i64::from(k);
                let num =
                    Integer::from(Integer::factorial(k)).pow(10) * (205 * ki * ki + 250 * ki + 77) * signed(k, true);
                let den = Integer::from(Integer::factorial(2 * k + 1)).pow(5) * 64u32;
                terms.push(Rational::from((num, den)));
            }
            Rational::new()
        }
        SeriesId::PP10 => {
            for k in lo..=n_hi {
                terms.push(pp10_term(k));
            }
            Rational::new()
        }
        SeriesId::SL2014 => {
            let mut theta = theta_4f3(1)?;
            for k in lo..=n_hi {
                let next = theta_4f3(k + 1)?;
                let ki = Integer::from(k);
                let num = crate::classic::poly(&ki, &[3, 16, 30, 24]);
                let den = Integer::from(k).pow(3) * Integer::from(k + 1).pow(3) * 2u32;
                terms.push(Rational::from((num, den)) / Rational::from(&theta * &next));
                theta = next;
            }
            Rational::from((7, 6))
        }
        SeriesId::Rho(r) => {
            let mut theta = rho::q_rho(1, r)?;
            for k in lo..=n_hi {
                let next = rho::q_rho(k + 1, r)?;
                terms.push(rho::series_term(k, r, &theta, &next)?);
                theta = next;
            }
            Rational::from((7 * r + 12, 6 * r + 10))
        }
        _ => return Err(Error::InvalidArgument(format!("{id} has irrational terms"))),
    };
    Ok((constant, terms))
}

fn pp10_term(k: u32) -> Rational {
    let ki = i64::from(k);
    let num = 205 * ki * ki - 160 * ki + 32;
    let den = Integer::from(k).pow(5) * binomial(2 * k, ki).pow(5) * 2u32;
    Rational::from((num * i64::from(signed(k, false)), den))
}

fn amdeberhan_term(k: u32) -> Rational {
    let ki = i64::from(k);
    let num = 56 * ki * ki - 32 * ki + 5;
    let den =
        Integer::from(k).pow(3) * Integer::from(2 * k - 1).pow(2) * binomial(2 * k, ki) * binomial(3 * k, ki) * 4u32;
    Rational::from((num * i64::from(signed(k, false)), den))
}

/// Float terms of the ζ(2k)-weighted series, with the prefactor and the
/// additive constant inside the bracket.
fn zeta_terms(id: SeriesId, n_hi: u32, w: u32) -> (Float, Float, Vec<Float>) {
    let pi2 = pi_hp(w).square();
    let lo = id.min_index();
    let mut terms = Vec::new();
    for k in lo..=n_hi {
        if id == SeriesId::Borwein && k == 0 {
            // the bracketed sum starts at k = 1; n = 0 is the bare constant
            terms.push(Float::new(w));
            continue;
        }
        let z = zeta_even(k, w);
        let k2 = 2 * u64::from(k);
        let four_k = Integer::from(1) << (2 * k);
        let den: Integer = match id {
            SeriesId::Euler => four_k * ((k2 + 1) * (k2 + 2)),
            SeriesId::ChenSrivastava => four_k * ((k2 + 1) * (k2 + 2) * (k2 + 3)),
            SeriesId::Srivastava => four_k * (1..=5u64).map(|j| k2 + j).product::<u64>(),
            SeriesId::Borwein => four_k * (k + 1),
            SeriesId::Scheufens => four_k * ((u64::from(k) + 1) * (k2 + 1)),
            _ => unreachable!("not a zeta(2k) series"),
        };
        let mut t = Float::with_val(w, z / den);
        if id == SeriesId::Srivastava {
            t *= 98 * k + 121;
        }
        terms.push(t);
    }
    let (pre, constant) = match id {
        SeriesId::Euler => (-pi2 * 4u32 / 7u32, Float::new(w)),
        SeriesId::ChenSrivastava => (-pi2 * 8u32 / 5u32, Float::new(w)),
        SeriesId::Srivastava => (-pi2 * 6u32 / 23u32, Float::new(w)),
        SeriesId::Borwein => (pi2 * 2u32 / 7u32, ln2_hp(w) - 0.5f64),
        SeriesId::Scheufens => (-pi2 * 2u32 / 7u32, Float::new(w)),
        _ => unreachable!("not a zeta(2k) series"),
    };
    (pre, constant, terms)
}

fn check_range(id: SeriesId, n_lo: u32, n_hi: u32, prec: u32) -> Result<()> {
    id.check()?;
    check_prec(prec)?;
    if n_lo < id.min_index() {
        return Err(Error::InvalidArgument(format!("{id} starts at n = {}, got {n_lo}", id.min_index())));
    }
    if n_hi < n_lo {
        return Err(Error::InvalidArgument(format!("empty range {n_lo}..={n_hi}")));
    }
    Ok(())
}

/// Partial sums for n = n_lo..=n_hi at `prec` bits, accumulated in floating
/// point with guard bits.
pub fn partial_sums(id: SeriesId, n_lo: u32, n_hi: u32, prec: u32) -> Result<Vec<Float>> {
    check_range(id, n_lo, n_hi, prec)?;
    let w = prec + WORK_GUARD;
    let lo = id.min_index();
    let (pre, mut acc, terms) = if id.is_rational() {
        let (c, t) = rational_terms(id, n_hi)?;
        let t = t.into_iter().map(|x| Float::with_val(w, x)).collect();
        (Float::with_val(w, 1), Float::with_val(w, c), t)
    } else {
        zeta_terms(id, n_hi, w)
    };
    let mut out = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    for (i, t) in terms.iter().enumerate() {
        acc += t;
        if lo + i as u32 >= n_lo {
            out.push(Float::with_val(prec, &acc * &pre));
        }
    }
    Ok(out)
}

/// Exact partial sums for the rational series.
pub fn partial_sums_exact(id: SeriesId, n_lo: u32, n_hi: u32) -> Result<Vec<Rational>> {
    check_range(id, n_lo, n_hi, crate::bigmath::MIN_PREC)?;
    let (mut acc, terms) = rational_terms(id, n_hi)?;
    let lo = id.min_index();
    let mut out = Vec::new();
    for (i, t) in terms.into_iter().enumerate() {
        acc += t;
        if lo + i as u32 >= n_lo {
            out.push(acc.clone());
        }
    }
    Ok(out)
}

/// The n-th partial sum.
pub fn series_partial(id: SeriesId, n: u32, prec: u32) -> Result<Float> {
    Ok(partial_sums(id, n, n, prec)?.pop().expect("one value"))
}

/// Σ terms until |term| < 2^{−bits−8}; both series alternate with
/// decreasing terms, so the tail is below the last term.
fn alternating_limit(bits: u32, term: fn(u32) -> Rational) -> Float {
    let w = bits + WORK_GUARD;
    let eps = Float::with_val(w, Float::i_exp(1, -(bits as i32) - 8));
    let mut acc = Float::new(w);
    let mut k = 1;
    loop {
        let t = Float::with_val(w, term(k));
        let small = Float::with_val(w, t.abs_ref()) < eps;
        acc += t;
        if small {
            break;
        }
        k += 1;
    }
    acc
}

/// ζ(3) to `bits` bits from two independent fast series; fails if they
/// disagree beyond 2^{−bits+2}.
pub fn zeta3_bits(bits: u32) -> Result<Float> {
    check_prec(bits)?;
    let a = alternating_limit(bits, pp10_term);
    let b = alternating_limit(bits, amdeberhan_term);
    let diff = Float::with_val(a.prec(), &a - &b).abs();
    if diff > Float::with_val(a.prec(), Float::i_exp(1, 2 - bits as i32)) {
        let digits = (f64::from(bits) * std::f64::consts::LOG10_2) as u32;
        return Err(Error::CrossValidation { digits });
    }
    Ok(Float::with_val(bits, a))
}

/// ζ(3) to `digits` decimal digits (≤ 1000), cross-validated as in
/// [`zeta3_bits`].
pub fn reference_zeta3(digits: u32) -> Result<Float> {
    if digits == 0 || digits > 1000 {
        return Err(Error::InvalidArgument(format!("digits must be in 1..=1000, got {digits}")));
    }
    let bits = (f64::from(digits) / std::f64::consts::LOG10_2).ceil() as u32 + 16;
    let a = alternating_limit(bits, pp10_term);
    let b = alternating_limit(bits, amdeberhan_term);
    let diff = Float::with_val(a.prec(), &a - &b).abs();
    let tol = Float::with_val(a.prec(), 10).pow(-(digits as i32) - 1);
    if diff > tol {
        return Err(Error::CrossValidation { digits });
    }
    Ok(Float::with_val(bits.max(crate::bigmath::MIN_PREC), a))
}
