//! Classical rational approximations to ζ(3) as exact-rational sequences:
//! Apéry's pₙ/qₙ, the 2014 Soria-Lorente family p̂ₙ/q̂ₙ, and Zudilin's
//! 2002 four-term family p̃ₙ/q̃ₙ.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::bigmath::{binomial, harmonic_table};
use crate::{Error, Result};

/// `(n, pₙ, qₙ)` of one approximation family.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxTriple {
    pub n: u32,
    pub p: Rational,
    pub q: Rational,
}

impl ApproxTriple {
    pub fn ratio(&self) -> Rational {
        Rational::from(&self.p / &self.q)
    }
}

fn cube(n: u32) -> Integer {
    Integer::from(n).pow(3)
}

/// Apéry's approximants from the explicit double sums
/// qₙ = Σ C(n+k,k)²C(n,k)², pₙ = Σ C(n+k,k)²C(n,k)²·γ_{n,k}.
pub fn apery_explicit(n: u32) -> ApproxTriple {
    let mut p = Rational::new();
    let mut q = Rational::new();
    let mut h3 = Rational::new();
    for j in 1..=n {
        h3 += Rational::from((1, cube(j)));
    }
    // γ_{n,k} = H_n^(3) + Σ_{j≤k} (−1)^(j−1) / (2j³ C(n+j,j) C(n,j))
    let mut gamma = h3;
    for k in 0..=n {
        if k > 0 {
            let den = Integer::from(2) * cube(k) * binomial(n + k, i64::from(k)) * binomial(n, i64::from(k));
            let t = Rational::from((1, den));
            if k % 2 == 1 {
                gamma += t;
            } else {
                gamma -= t;
            }
        }
        let w = (binomial(n + k, i64::from(k)) * binomial(n, i64::from(k))).pow(2);
        q += &w;
        p += Rational::from(&gamma * &w);
    }
    ApproxTriple { n, p, q }
}

/// Iterates (n+2)³y_{n+2} − (2n+3)(17n²+51n+39)y_{n+1} + (n+1)³yₙ = 0 from
/// p₀=0, p₁=6, q₀=1, q₁=5. Returns n = 0..=N.
pub fn apery_recurrence(max_n: u32) -> Vec<ApproxTriple> {
    let mut p = vec![Rational::new(), Rational::from(6)];
    let mut q = vec![Rational::from(1), Rational::from(5)];
    for n in 0..max_n.saturating_sub(1) {
        let m = Integer::from(2 * n + 3) * (17 * n * n + 51 * n + 39);
        let lo = cube(n + 1);
        let hi = cube(n + 2);
        let i = n as usize;
        let next = |y: &[Rational]| (Rational::from(&m * &y[i + 1]) - Rational::from(&lo * &y[i])) / &hi;
        let np = next(&p);
        let nq = next(&q);
        p.push(np);
        q.push(nq);
    }
    p.into_iter()
        .zip(q)
        .take(max_n as usize + 1)
        .enumerate()
        .map(|(n, (p, q))| ApproxTriple { n: n as u32, p, q })
        .collect()
}

/// pₙq_{n−1} − qₙp_{n−1}; equals 6/n³.
pub fn apery_det(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument("apery_det requires n >= 1".into()));
    }
    let a = apery_explicit(n);
    let b = apery_explicit(n - 1);
    Ok(Rational::from(&a.p * &b.q) - Rational::from(&a.q * &b.p))
}

/// d_k^(n) = n⁻¹C(n+k−1,k)²C(n,k)² + n⁻¹C(n+k−1,k)²C(n−1,k−1)C(n,k).
fn sl14_weight(n: u32, k: u32) -> Rational {
    let k = i64::from(k);
    let c = binomial(n + k as u32 - 1, k).pow(2);
    let first = &c * binomial(n, k).pow(2);
    let second = c * binomial(n - 1, k - 1) * binomial(n, k);
    Rational::from((first + second, n))
}

/// Soria-Lorente (2014) approximants:
/// q̂ₙ = Σ_{0≤k≤n} d_k, p̂ₙ = Σ_{1≤k≤n} d_k H_k^(3) + ½ Σ_{1≤k≤n} c_k H_k^(2),
/// with c_k = 2d_k[2H_k − H_{n+k−1} − H_{n−k} − 1/(2(n+k))].
pub fn sl14_explicit(n: u32) -> Result<ApproxTriple> {
    if n == 0 {
        return Err(Error::InvalidArgument("sl14_explicit requires n >= 1".into()));
    }
    let h1 = harmonic_table(2 * n, 1);
    let h2 = harmonic_table(n, 2);
    let h3 = harmonic_table(n, 3);
    let mut p = Rational::new();
    let mut q = Rational::new();
    for k in 0..=n {
        let d = sl14_weight(n, k);
        q += &d;
        if k == 0 {
            continue;
        }
        let (ku, nu) = (k as usize, n as usize);
        let bracket =
            Rational::from(&h1[ku] * 2u32) - &h1[nu + ku - 1] - &h1[nu - ku] - Rational::from((1, 2 * (n + k)));
        let c = Rational::from(&d * &bracket) * 2u32;
        p += Rational::from(&d * &h3[ku]);
        p += Rational::from(&c * &h2[ku]) / 2u32;
    }
    Ok(ApproxTriple { n, p, q })
}

/// Iterates
/// (n+2)⁴(24n³+30n²+16n+3)y_{n+2} − 4(n+1)(204n⁶+…+86)y_{n+1} + n⁴(24n³+102n²+148n+73)yₙ = 0
/// seeded from the explicit sums at n = 1, 2. Returns n = 1..=N.
pub fn sl14_recurrence(max_n: u32) -> Result<Vec<ApproxTriple>> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("sl14_recurrence requires N >= 2".into()));
    }
    let mut out = vec![sl14_explicit(1)?, sl14_explicit(2)?];
    for n in 1..=max_n - 2 {
        let n_i = Integer::from(n);
        let lead = Integer::from(n + 2).pow(4) * poly(&n_i, &[3, 16, 30, 24]);
        let mid = Integer::from(4 * (n + 1)) * poly(&n_i, &[86, 634, 1905, 3065, 2668, 1173, 204]);
        let tail = Integer::from(n).pow(4) * poly(&n_i, &[73, 148, 102, 24]);
        let (y0, y1) = (&out[out.len() - 2], &out[out.len() - 1]);
        let step = |a: &Rational, b: &Rational| Rational::from(&mid * b) - Rational::from(&tail * a);
        let p = step(&y0.p, &y1.p) / &lead;
        let q = step(&y0.q, &y1.q) / &lead;
        out.push(ApproxTriple { n: n + 2, p, q });
    }
    Ok(out)
}

/// Evaluates Σ coeffs[i]·xⁱ.
pub(crate) fn poly(x: &Integer, coeffs: &[i64]) -> Integer {
    coeffs.iter().rev().fold(Integer::new(), |acc, &c| acc * x + c)
}

/// Zudilin's (2002) approximants from
/// (n+1)⁴φ₀(n)y_{n+1} − φ₁(n)yₙ + 4(2n−1)φ₂(n)y_{n−1} − 4(n−1)²(2n−1)(2n−3)φ₀(n+1)y_{n−2} = 0
/// with p̃ = (0, 17, 9405/8), q̃ = (1, 14, 978). Returns n = 0..=N.
pub fn zudilin_sequences(max_n: u32) -> Result<Vec<ApproxTriple>> {
    if max_n < 3 {
        return Err(Error::InvalidArgument("zudilin_sequences requires N >= 3".into()));
    }
    let phi0 = |n: i64| poly(&Integer::from(n), &[153, -731, 946]);
    let phi1 = |n: i64| poly(&Integer::from(n), &[1071, 3298, -8482, -34525, 12788, 127710, 104060]) * 2u32;
    let phi2 = |n: i64| poly(&Integer::from(n), &[-184, 328, 853, -1925, -1032, 3784]);
    let mut p = vec![Rational::new(), Rational::from(17), Rational::from((9405, 8))];
    let mut q = vec![Rational::from(1), Rational::from(14), Rational::from(978)];
    for n in 2..i64::from(max_n) {
        let lead = Integer::from(n + 1).pow(4) * phi0(n);
        let c1 = phi1(n);
        let c2 = Integer::from(4 * (2 * n - 1)) * phi2(n);
        let c3 = Integer::from(4 * (n - 1) * (n - 1) * (2 * n - 1) * (2 * n - 3)) * phi0(n + 1);
        let i = n as usize;
        let next = |y: &[Rational]| {
            (Rational::from(&c1 * &y[i]) - Rational::from(&c2 * &y[i - 1]) + Rational::from(&c3 * &y[i - 2])) / &lead
        };
        let np = next(&p);
        let nq = next(&q);
        p.push(np);
        q.push(nq);
    }
    Ok(p.into_iter().zip(q).enumerate().map(|(n, (p, q))| ApproxTriple { n: n as u32, p, q }).collect())
}
