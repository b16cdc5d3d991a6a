//! Exact-identity suites, grouped by scope, as run by `zeta3 verify`.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::classic::{apery_det, apery_explicit, apery_recurrence, sl14_explicit, sl14_recurrence, zudilin_sequences};
use crate::contfrac::{
    apery_cf, cf_equiv_transform, cf_evaluate, cf_evaluate_exact, equivalence_factors, nesterenko_cf, rho_cf,
    rho_cf_explicit, rho_convergents,
};
use crate::ratfunc::{f1_closed, f1_pf, lmre_check, orthogonality_zeros};
use crate::rho::{self, Sequence};
use crate::zoo::zeta3_bits;
use crate::{Error, Result};

/// Seed for the random rational points of the ratfunc suite.
pub const RATFUNC_SEED: u64 = 0x5eed_2e7a_0003;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Apery,
    Rho,
    Ratfunc,
    Cf,
    All,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apery" => Ok(Scope::Apery),
            "rho" => Ok(Scope::Rho),
            "ratfunc" => Ok(Scope::Ratfunc),
            "cf" => Ok(Scope::Cf),
            "all" => Ok(Scope::All),
            _ => Err(Error::InvalidArgument(format!("unknown scope {s:?}"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scope::Apery => "apery",
            Scope::Rho => "rho",
            Scope::Ratfunc => "ratfunc",
            Scope::Cf => "cf",
            Scope::All => "all",
        };
        f.write_str(s)
    }
}

/// Outcome of one identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, failures: Vec<String>, total: usize) -> Check {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{total} cases")
        } else {
            let shown: Vec<_> = failures.iter().take(5).cloned().collect();
            format!("{} of {total} failed: {}", failures.len(), shown.join("; "))
        };
        Check { name: name.into(), passed, detail }
    }
}

/// Runs every suite in `scope` with n ≤ `n_max` and ρ ≤ `rho_max`.
pub fn run(scope: Scope, n_max: u32, rho_max: u32) -> Result<Vec<Check>> {
    if n_max < 3 || rho_max < 1 {
        return Err(Error::InvalidArgument("need n_max >= 3 and rho_max >= 1".into()));
    }
    let mut out = Vec::new();
    if matches!(scope, Scope::Apery | Scope::All) {
        out.extend(apery_suite(n_max)?);
    }
    if matches!(scope, Scope::Rho | Scope::All) {
        out.extend(rho_suite(n_max, rho_max)?);
    }
    if matches!(scope, Scope::Ratfunc | Scope::All) {
        out.extend(ratfunc_suite(n_max.min(15), rho_max)?);
    }
    if matches!(scope, Scope::Cf | Scope::All) {
        out.extend(cf_suite(n_max, rho_max)?);
    }
    Ok(out)
}

/// Apéry recurrence vs explicit sums, detAp = 6/n³, the 2014 recurrence,
/// and Zudilin's initial terms.
pub fn apery_suite(n_max: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let rec = apery_recurrence(n_max);
    let bad = rec.iter().filter(|t| **t != apery_explicit(t.n)).map(|t| format!("n = {}", t.n)).collect();
    checks.push(Check::new("apery recurrence = explicit sums", bad, rec.len()));

    let mut bad = Vec::new();
    for n in 1..=n_max {
        if apery_det(n)? != Rational::from((6, Integer::from(n).pow(3))) {
            bad.push(format!("n = {n}"));
        }
    }
    checks.push(Check::new("apery p_n q_{n-1} - q_n p_{n-1} = 6/n^3", bad, n_max as usize));

    let sl = sl14_recurrence(n_max)?;
    let mut bad = Vec::new();
    for t in &sl {
        if *t != sl14_explicit(t.n)? {
            bad.push(format!("n = {}", t.n));
        }
    }
    checks.push(Check::new("sl14 recurrence = explicit sums", bad, sl.len()));

    let z = zudilin_sequences(3)?;
    let bad = if z[3].q == 103_820 { vec![] } else { vec![format!("q3 = {}", z[3].q)] };
    checks.push(Check::new("zudilin q_3 = 103820", bad, 1));
    Ok(checks)
}

/// Recurrence, determinant, ₅F₄, telescoping and integrality for the
/// ρ-family.
pub fn rho_suite(n_max: u32, rho_max: u32) -> Result<Vec<Check>> {
    let mut rec_bad = Vec::new();
    let mut det_bad = Vec::new();
    let mut theta_bad = Vec::new();
    let mut tele_bad = Vec::new();
    let mut int_bad = Vec::new();
    let mut cases = 0;
    for r in 1..=rho_max {
        let seq = rho::approximants(n_max + 2, r)?;
        let at = |n: u32| &seq[n as usize - 1];
        let mut series = Rational::from((7 * r + 12, 6 * r + 10));
        for n in 1..=n_max {
            cases += 1;
            let (lead, mid, tail) = rho::recurrence_coefficients(n, r)?;
            for seq_kind in [Sequence::P, Sequence::Q] {
                let y = |m: u32| match seq_kind {
                    Sequence::P => &at(m).p,
                    Sequence::Q => &at(m).q,
                };
                let res =
                    Rational::from(&lead * y(n + 2)) + Rational::from(&mid * y(n + 1)) + Rational::from(&tail * y(n));
                if res != 0 {
                    rec_bad.push(format!("{seq_kind:?}: rho = {r}, n = {n}"));
                }
            }
            let det = Rational::from(&at(n).p * &at(n + 1).q) - Rational::from(&at(n + 1).p * &at(n).q);
            if det != rho::det_closed_form(n, r)? {
                det_bad.push(format!("rho = {r}, n = {n}"));
            }
            if rho::theta_5f4(n, r)? != at(n).q {
                theta_bad.push(format!("rho = {r}, n = {n}"));
            }
            series += rho::series_term(n, r, &at(n).q, &at(n + 1).q)?;
            if series != Rational::from(&at(n + 1).p / &at(n + 1).q) {
                tele_bad.push(format!("rho = {r}, N = {n}"));
            }
            let (nq, sp) = rho::integrality(n, r)?;
            if !(nq && sp) {
                int_bad.push(format!("rho = {r}, n = {n}"));
            }
        }
    }
    Ok(vec![
        Check::new("rho recurrence residual = 0 (p and q)", rec_bad, 2 * cases),
        Check::new("rho determinant = -Phi_n/(2n^4(n+1)^4)", det_bad, cases),
        Check::new("rho q_n = 5F4 path", theta_bad, cases),
        Check::new("rho series partial sum N = p_{N+1}/q_{N+1}", tele_bad, cases),
        Check::new("rho n q_n and 2n L_n^3 p_n integral", int_bad, cases),
    ])
}

/// A random non-pole rational with |num|, den ≤ 20.
fn random_point(rng: &mut StdRng, n: u32) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=20);
        let z = Rational::from((num, den));
        let pole = z.denom() == &1 && *z.numer() < 0 && *z.numer() >= -i64::from(n) - 1;
        if !pole {
            return z;
        }
    }
}

/// Partial fractions vs closed form at five seeded random points, residue
/// sum, zeros, and the three special values.
pub fn ratfunc_suite(n_max: u32, rho_max: u32) -> Result<Vec<Check>> {
    let mut rng = StdRng::seed_from_u64(RATFUNC_SEED);
    let mut pf_bad = Vec::new();
    let mut sum_bad = Vec::new();
    let mut zero_bad = Vec::new();
    let mut lmre_bad = Vec::new();
    let mut cases = 0;
    for n in 1..=n_max {
        for r in 1..=rho_max {
            cases += 1;
            let pf = f1_pf(n, r)?;
            for _ in 0..5 {
                let z = random_point(&mut rng, n);
                if pf.evaluate(&z)? != f1_closed(n, r, &z)? {
                    pf_bad.push(format!("n = {n}, rho = {r}, z = {z}"));
                }
            }
            if pf.simple_residue_sum() != 0 {
                sum_bad.push(format!("n = {n}, rho = {r}"));
            }
            if !orthogonality_zeros(n, r)? {
                zero_bad.push(format!("n = {n}, rho = {r}"));
            }
            let lm = lmre_check(n, r)?;
            if lm != [true; 3] {
                lmre_bad.push(format!("n = {n}, rho = {r}: {lm:?}"));
            }
        }
    }
    Ok(vec![
        Check::new("partial fractions = closed form at random points", pf_bad, 5 * cases),
        Check::new("sum of simple residues = 0", sum_bad, cases),
        Check::new("F1(j) = 0, j < n and F2(j) = 0, j < n-1", zero_bad, cases),
        Check::new("special values F2(n-1), F2(n), F1(n)", lmre_bad, cases),
    ])
}

/// Apéry fraction vs explicit convergents, Nesterenko leading terms and
/// convergence, ρ-fraction closed form up to equivalence.
pub fn cf_suite(n_max: u32, rho_max: u32) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let depth = n_max.min(20) as usize;

    let cf = apery_cf(depth);
    let conv = cf.convergents(depth)?;
    let mut bad = Vec::new();
    for n in 0..=depth {
        if conv.ratio(n) != apery_explicit(n as u32).ratio() || cf_evaluate_exact(&cf, n)? != conv.ratio(n) {
            bad.push(format!("depth {n}"));
        }
    }
    checks.push(Check::new("apery fraction convergents = p_n/q_n", bad, depth + 1));

    let nest = nesterenko_cf(400);
    let den = [2, 4, 3, 2, 4, 6, 5];
    let num = [1, 2, 1, 4, 2, 6, 4];
    let mut bad = Vec::new();
    if nest.a0 != 2 {
        bad.push("a0".to_string());
    }
    for i in 0..7 {
        if nest.a[i] != den[i] || nest.b[i] != num[i] {
            bad.push(format!("term {}", i + 1));
        }
    }
    checks.push(Check::new("nesterenko leading terms", bad, 8));

    let prec = 1024;
    let two_z3 = Float::with_val(prec, zeta3_bits(prec)? * 2u32);
    let e100 = Float::with_val(prec, cf_evaluate(&nest, 100, prec)? - &two_z3).abs();
    let e400 = Float::with_val(prec, cf_evaluate(&nest, 400, prec)? - &two_z3).abs();
    let bad = if e400 < e100 {
        vec![]
    } else {
        vec![format!("depth 400 error {} >= depth 100 error {}", e400.to_f64(), e100.to_f64())]
    };
    checks.push(Check::new("nesterenko error shrinks from depth 100 to 400", bad, 1));

    let depth = n_max.min(15) as usize;
    let mut bad = Vec::new();
    for r in 1..=rho_max {
        let built = rho_cf(depth, r)?;
        let explicit = rho_cf_explicit(depth, r)?;
        let ok = match equivalence_factors(&built, &explicit) {
            Some(c) => cf_equiv_transform(&built, &c)? == explicit,
            None => false,
        };
        let pair = rho_convergents(depth, r)?;
        let conv_ok = (0..=depth).all(|n| cf_evaluate_exact(&explicit, n).map(|v| v == pair.ratio(n)).unwrap_or(false));
        if !(ok && conv_ok) {
            bad.push(format!("rho = {r}"));
        }
    }
    checks.push(Check::new("rho fraction closed form ~ constructed fraction", bad, rho_max as usize));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse() {
        for s in ["apery", "rho", "ratfunc", "cf", "all"] {
            assert_eq!(s.parse::<Scope>().unwrap().to_string(), s);
        }
        assert!("bogus".parse::<Scope>().is_err());
    }

    #[test]
    fn small_run_passes() {
        let checks = run(Scope::All, 8, 2).unwrap();
        assert!(checks.len() >= 14);
        for c in &checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn failure_detail() {
        let c = Check::new("x", vec!["n = 1".into()], 3);
        assert!(!c.passed);
        assert_eq!(c.detail, "1 of 3 failed: n = 1");
    }
}
