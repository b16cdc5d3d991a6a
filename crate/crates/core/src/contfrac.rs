//! Irregular continued fractions
//!
//! ```text
//! a₀ + b₁/(a₁ + b₂/(a₂ + b₃/(a₃ + …)))
//! ```
//!
//! with convergents pₙ = aₙp_{n−1} + bₙp_{n−2}, qₙ = aₙq_{n−1} + bₙq_{n−2},
//! seeded by p₋₁ = 1, q₋₁ = 0, q₀ = 1.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::classic::poly;
use crate::rho;
use crate::{Error, Result};

/// a₀ plus partial denominators `a[n−1] = aₙ` and numerators `b[n−1] = bₙ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContFrac {
    pub a0: Rational,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

/// Convergent numerators and denominators, `p[n]`, `q[n]` for n = 0..=N.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergentPair {
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
}

impl ConvergentPair {
    pub fn ratio(&self, n: usize) -> Rational {
        Rational::from(&self.p[n] / &self.q[n])
    }
}

impl ContFrac {
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Forward recursion up to `depth`.
    pub fn convergents(&self, depth: usize) -> Result<ConvergentPair> {
        self.check_depth(depth)?;
        let mut p = vec![self.a0.clone()];
        let mut q = vec![Rational::from(1)];
        let (mut pm, mut qm) = (Rational::from(1), Rational::new());
        for n in 0..depth {
            let np = Rational::from(&self.a[n] * &p[n]) + Rational::from(&self.b[n] * &pm);
            let nq = Rational::from(&self.a[n] * &q[n]) + Rational::from(&self.b[n] * &qm);
            pm = p[n].clone();
            qm = q[n].clone();
            p.push(np);
            q.push(nq);
        }
        Ok(ConvergentPair { p, q })
    }

    fn check_depth(&self, depth: usize) -> Result<()> {
        if depth > self.len() || self.b.len() != self.a.len() {
            return Err(Error::InvalidArgument(format!("depth {depth} exceeds stored length {}", self.len())));
        }
        Ok(())
    }
}

/// Builds the unique fraction whose n-th convergent is pₙ/qₙ:
/// a₀ = p₀, a₁ = q₁, b₁ = p₁ − p₀q₁ and, for n ≥ 2, with
/// D = p_{n−1}q_{n−2} − p_{n−2}q_{n−1},
/// aₙ = (pₙq_{n−2} − p_{n−2}qₙ)/D, bₙ = (p_{n−1}qₙ − pₙq_{n−1})/D.
/// Requires q₀ = 1.
pub fn cf_from_convergents(pair: &ConvergentPair, max_n: usize) -> Result<ContFrac> {
    let (p, q) = (&pair.p, &pair.q);
    if p.len() <= max_n || q.len() <= max_n {
        return Err(Error::InvalidArgument(format!("need convergents up to index {max_n}")));
    }
    if q[0] != 1 {
        return Err(Error::InvalidArgument("q₀ must be 1".into()));
    }
    let mut a = Vec::with_capacity(max_n);
    let mut b = Vec::with_capacity(max_n);
    if max_n >= 1 {
        a.push(q[1].clone());
        b.push(&p[1] - Rational::from(&p[0] * &q[1]));
    }
    for n in 2..=max_n {
        let d = Rational::from(&p[n - 1] * &q[n - 2]) - Rational::from(&p[n - 2] * &q[n - 1]);
        if d == 0 {
            return Err(Error::DegenerateConvergents { index: n });
        }
        let an = (Rational::from(&p[n] * &q[n - 2]) - Rational::from(&p[n - 2] * &q[n])) / &d;
        let bn = (Rational::from(&p[n - 1] * &q[n]) - Rational::from(&p[n] * &q[n - 1])) / &d;
        a.push(an);
        b.push(bn);
    }
    Ok(ContFrac { a0: p[0].clone(), a, b })
}

/// aₙ′ = cₙaₙ, bₙ′ = cₙc_{n−1}bₙ; `c[0]` must be 1 and `c.len()` must
/// exceed the fraction length.
pub fn cf_equiv_transform(cf: &ContFrac, c: &[Rational]) -> Result<ContFrac> {
    if c.len() <= cf.len() {
        return Err(Error::InvalidArgument(format!("need {} scale factors, got {}", cf.len() + 1, c.len())));
    }
    if c[0] != 1 {
        return Err(Error::InvalidArgument("c₀ must be 1".into()));
    }
    if let Some(index) = c.iter().position(|x| *x == 0) {
        return Err(Error::ZeroScale { index });
    }
    let a = cf.a.iter().enumerate().map(|(i, x)| Rational::from(x * &c[i + 1])).collect();
    let b = cf.b.iter().enumerate().map(|(i, x)| Rational::from(x * &c[i + 1]) * &c[i]).collect();
    Ok(ContFrac { a0: cf.a0.clone(), a, b })
}

/// Scale factors c with `cf_equiv_transform(from, c) == to`, or `None` when
/// the two fractions are not equivalent over their common length.
pub fn equivalence_factors(from: &ContFrac, to: &ContFrac) -> Option<Vec<Rational>> {
    if from.a0 != to.a0 || from.len() != to.len() {
        return None;
    }
    let mut c = vec![Rational::from(1)];
    for n in 0..from.len() {
        if from.a[n] == 0 || to.a[n] == 0 {
            return None;
        }
        let cn = Rational::from(&to.a[n] / &from.a[n]);
        if Rational::from(&from.b[n] * &cn) * &c[n] != to.b[n] {
            return None;
        }
        c.push(cn);
    }
    Some(c)
}

/// Backward evaluation of the depth-truncated fraction at `prec` bits.
pub fn cf_evaluate(cf: &ContFrac, depth: usize, prec: u32) -> Result<Float> {
    cf.check_depth(depth)?;
    if depth == 0 {
        return Ok(Float::with_val(prec, &cf.a0));
    }
    let mut t = Float::with_val(prec, &cf.a[depth - 1]);
    for n in (1..depth).rev() {
        if t.is_zero() {
            return Err(Error::DivisionByZero { depth: n + 1 });
        }
        t = Float::with_val(prec, &cf.b[n] / t) + &cf.a[n - 1];
    }
    if t.is_zero() {
        return Err(Error::DivisionByZero { depth: 1 });
    }
    Ok(Float::with_val(prec, &cf.b[0] / t) + &cf.a0)
}

/// Exact backward evaluation.
pub fn cf_evaluate_exact(cf: &ContFrac, depth: usize) -> Result<Rational> {
    cf.check_depth(depth)?;
    if depth == 0 {
        return Ok(cf.a0.clone());
    }
    let mut t = cf.a[depth - 1].clone();
    for n in (1..depth).rev() {
        if t == 0 {
            return Err(Error::DivisionByZero { depth: n + 1 });
        }
        t = Rational::from(&cf.b[n] / &t) + &cf.a[n - 1];
    }
    if t == 0 {
        return Err(Error::DivisionByZero { depth: 1 });
    }
    Ok(Rational::from(&cf.b[0] / &t) + &cf.a0)
}

/// ζ(3) = 6/(5 − 1/(117 − 64/(535 − … − n⁶/((2n+1)(17n²+17n+5) − …)))).
pub fn apery_cf(max_n: usize) -> ContFrac {
    let mut a = Vec::with_capacity(max_n);
    let mut b = Vec::with_capacity(max_n);
    for m in 1..=max_n as u64 {
        a.push(Rational::from(Integer::from(2 * m - 1) * (17 * m * m - 17 * m + 5)));
        if m == 1 {
            b.push(Rational::from(6));
        } else {
            b.push(-Rational::from(Integer::from(m - 1).pow(6)));
        }
    }
    ContFrac { a0: Rational::new(), a, b }
}

/// 2ζ(3) = 2 + 1/(2 + 2/(4 + 1/(3 + 4/(2 + 2/(4 + 6/(6 + 4/(5 + …))))))).
/// With n = 4k + r, partial denominators are 2k+2, 2k+4, 2k+3, 2k for
/// r = 1, 2, 3, 0 and partial numerators k(k+1), (k+1)(k+2), (k+1)², (k+1)²;
/// the first numerator is 1.
pub fn nesterenko_cf(max_n: usize) -> ContFrac {
    let mut a = Vec::with_capacity(max_n);
    let mut b = Vec::with_capacity(max_n);
    for n in 1..=max_n as u64 {
        let (k, r) = (n / 4, n % 4);
        let (den, num) = match r {
            1 => (2 * k + 2, if n == 1 { 1 } else { k * (k + 1) }),
            2 => (2 * k + 4, (k + 1) * (k + 2)),
            3 => (2 * k + 3, (k + 1) * (k + 1)),
            _ => (2 * k, (k + 1) * (k + 1)),
        };
        a.push(Rational::from(den));
        b.push(Rational::from(num));
    }
    ContFrac { a0: Rational::from(2), a, b }
}

/// 𝒫ₙ for n ≥ 4 (partial numerator).
fn rho_p_poly(n: u32, rho: u32) -> Integer {
    let ni = Integer::from(n);
    let ri = Integer::from(rho);
    let r2 = Integer::from(rho).pow(2);
    let f = |c: [[i64; 3]; 6]| {
        let cols: Vec<Integer> =
            c.iter().map(|[c0, c1, c2]| Integer::from(&r2 * *c2) + Integer::from(&ri * *c1) + *c0).collect();
        cols.iter().rev().fold(Integer::new(), |acc, x| acc * &ni + x)
    };
    // each row: coefficients of (1, ρ, ρ²) for nᵏ, k = 0..5
    let first = f([
        [473, 1713, -2538],
        [-1470, -2637, 5019],
        [1491, 1532, -3959],
        [-684, -398, 1558],
        [147, 39, -306],
        [-12, 0, 24],
    ]);
    let second = f([[-7, 7, 0], [30, -37, 7], [-45, 80, -35], [12, -86, 70], [27, 39, -66], [-12, 0, 24]]);
    -(Integer::from(n - 2).pow(4) * Integer::from(n - 1).pow(4)) * first * second
}

/// 𝒬ₙ for n ≥ 3 (partial denominator).
fn rho_q_poly(n: u32, rho: u32) -> Integer {
    let ni = Integer::from(n);
    let by_rho: [&[i64]; 3] = [
        &[476, -3300, 8922, -11066, 4425, 3321, -4185, 1581, -204],
        &[-504, 4008, -13348, 23932, -24795, 14905, -4849, 663, 0],
        &[0, -504, 3892, -12488, 21330, -20710, 11456, -3366, 408],
    ];
    let ri = Integer::from(rho);
    let inner = by_rho.iter().rev().fold(Integer::new(), |acc, coeffs| acc * &ri + poly(&ni, coeffs));
    inner * (n - 1) * 2u32
}

/// (partial numerator, partial denominator) of the n-th term of the
/// closed-form ρ-fraction, n ≥ 1:
/// (7ρ+12, 6ρ+10), (−2Φ₁, 1654ρ+1981), (−16(7ρ+12)(2082ρ²+1453ρ−727), 𝒬₃),
/// then (𝒫ₙ, 𝒬ₙ).
pub fn rho_cf_closed(n: u32, rho: u32) -> Result<(Rational, Rational)> {
    if n == 0 || rho == 0 {
        return Err(Error::InvalidArgument("rho_cf_closed needs n >= 1 and rho >= 1".into()));
    }
    let r = i64::from(rho);
    let (num, den) = match n {
        1 => (Integer::from(7 * r + 12), Integer::from(6 * r + 10)),
        2 => (rho::phi_poly(1, rho)? * -2i32, Integer::from(1654 * r + 1981)),
        3 => (Integer::from(-16 * (7 * r + 12)) * (2082 * r * r + 1453 * r - 727), rho_q_poly(3, rho)),
        _ => (rho_p_poly(n, rho), rho_q_poly(n, rho)),
    };
    Ok((Rational::from(num), Rational::from(den)))
}

/// Closed-form ρ-fraction to depth N with a₀ = 0.
pub fn rho_cf_explicit(max_n: usize, rho: u32) -> Result<ContFrac> {
    let mut a = Vec::with_capacity(max_n);
    let mut b = Vec::with_capacity(max_n);
    for n in 1..=max_n as u32 {
        let (num, den) = rho_cf_closed(n, rho)?;
        a.push(den);
        b.push(num);
    }
    Ok(ContFrac { a0: Rational::new(), a, b })
}

/// (pₙ, qₙ) of the ρ-family for n = 0..=N with p₀ = 0, q₀ = 1 prepended.
pub fn rho_convergents(max_n: usize, rho: u32) -> Result<ConvergentPair> {
    let mut p = vec![Rational::new()];
    let mut q = vec![Rational::from(1)];
    for t in rho::approximants(max_n as u32, rho)? {
        p.push(t.p);
        q.push(t.q);
    }
    Ok(ConvergentPair { p, q })
}

/// The ρ-fraction built from the family's convergents.
pub fn rho_cf(max_n: usize, rho: u32) -> Result<ContFrac> {
    cf_from_convergents(&rho_convergents(max_n, rho)?, max_n)
}
