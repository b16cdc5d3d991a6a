//! The rational function
//!
//! ```text
//! F₁(z) = (−z)_{n−1}² (z−n+1)(z−ρn) / (z+1)_{n+1}²
//!       = Σ_{0≤k≤n} a_{k,n}/(z+k+1) + b_{k,n}/(z+k+1)²
//! ```
//!
//! and its derivative F₂ = F₁′, evaluated at exact rational points.
//! The residues a_{k,n}, b_{k,n} are the ρ-family coefficients from [`crate::rho`].

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::bigmath::{harmonic, pochhammer};
use crate::rho::coefficients;
use crate::{Error, Result};

/// F₁ as Σ simple_res[k]/(z+k+1) + double_res[k]/(z+k+1)².
#[derive(Debug, Clone, PartialEq)]
pub struct PartialFractionForm {
    pub n: u32,
    pub rho: u32,
    pub simple_res: Vec<Rational>,
    pub double_res: Vec<Rational>,
}

impl PartialFractionForm {
    pub fn evaluate(&self, z: &Rational) -> Result<Rational> {
        check_pole(self.n, z)?;
        let mut sum = Rational::new();
        for (k, (a, b)) in self.simple_res.iter().zip(&self.double_res).enumerate() {
            let d = Rational::from(z + (k as u32 + 1));
            sum += Rational::from(a / &d);
            sum += Rational::from(b / &d.square());
        }
        Ok(sum)
    }

    /// F₂(z) = −Σ (a_k/(z+k+1)² + 2b_k/(z+k+1)³).
    pub fn derivative(&self, z: &Rational) -> Result<Rational> {
        check_pole(self.n, z)?;
        let mut sum = Rational::new();
        for (k, (a, b)) in self.simple_res.iter().zip(&self.double_res).enumerate() {
            let d = Rational::from(z + (k as u32 + 1));
            let d2 = Rational::from(d.square_ref());
            sum += Rational::from(a / &d2);
            sum += (b / Rational::from(&d2 * &d)) * 2u32;
        }
        Ok(-sum)
    }

    /// Σ_k a_k; zero because F₁(z) = O(z⁻²) at infinity.
    pub fn simple_residue_sum(&self) -> Rational {
        self.simple_res.iter().sum()
    }
}

fn check_pole(n: u32, z: &Rational) -> Result<()> {
    if z.denom() == &1 && *z.numer() < 0 && *z.numer() >= -i64::from(n) - 1 {
        return Err(Error::Pole(format!("z = {z} is a pole of F (n = {n})")));
    }
    Ok(())
}

fn check_params(n: u32, rho: u32) -> Result<()> {
    if n == 0 || rho == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and rho >= 1, got n = {n}, rho = {rho}")));
    }
    Ok(())
}

/// F₁(z) from its product form.
pub fn f1_closed(n: u32, rho: u32, z: &Rational) -> Result<Rational> {
    check_params(n, rho)?;
    check_pole(n, z)?;
    let num =
        pochhammer(&Rational::from(-z), n - 1).square() * Rational::from(z - (n - 1)) * Rational::from(z - rho * n);
    Ok(num / pochhammer(&Rational::from(z + 1u32), n + 1).square())
}

/// Partial-fraction form of F₁ with residues a_{k,n}, b_{k,n}.
pub fn f1_pf(n: u32, rho: u32) -> Result<PartialFractionForm> {
    check_params(n, rho)?;
    let (simple_res, double_res) = coefficients(n, rho)?;
    Ok(PartialFractionForm { n, rho, simple_res, double_res })
}

/// F₂(z) = F₁′(z) via the partial-fraction form.
pub fn f2_eval(n: u32, rho: u32, z: &Rational) -> Result<Rational> {
    f1_pf(n, rho)?.derivative(z)
}

/// Polynomial with rational coefficients, lowest degree first.
fn poly_mul_linear(p: &[Rational], root: &Rational) -> Vec<Rational> {
    // p(z)·(z − root)
    let mut out = vec![Rational::new(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= Rational::from(c * root);
    }
    out
}

fn poly_eval(p: &[Rational], z: &Rational) -> Rational {
    p.iter().rev().fold(Rational::new(), |acc, c| acc * z + c)
}

fn poly_deriv(p: &[Rational]) -> Vec<Rational> {
    p.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u32)).collect()
}

/// F₁′(z) by the quotient rule on the expanded numerator and denominator
/// polynomials; shares no code with the partial-fraction path.
pub fn f2_closed(n: u32, rho: u32, z: &Rational) -> Result<Rational> {
    check_params(n, rho)?;
    check_pole(n, z)?;
    let mut num = vec![Rational::from(1)];
    // (−z)_{n−1}² = Π_{0≤j<n−1} (j − z)²; the sign (−1)^{2(n−1)} is +1
    for j in 0..n - 1 {
        let r = Rational::from(j);
        num = poly_mul_linear(&num, &r);
        num = poly_mul_linear(&num, &r);
    }
    num = poly_mul_linear(&num, &Rational::from(n - 1));
    num = poly_mul_linear(&num, &Rational::from(rho * n));
    let mut den = vec![Rational::from(1)];
    for j in 1..=n + 1 {
        let r = Rational::from(-i64::from(j));
        den = poly_mul_linear(&den, &r);
        den = poly_mul_linear(&den, &r);
    }
    let (nv, dv) = (poly_eval(&num, z), poly_eval(&den, z));
    let (ndv, ddv) = (poly_eval(&poly_deriv(&num), z), poly_eval(&poly_deriv(&den), z));
    Ok((ndv * &dv - nv * ddv) / dv.square())
}

fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// X = n!² / ((n+1)_{n+1})².
fn x_factor(n: u32) -> Rational {
    let poch = factorial(2 * n + 1) / factorial(n);
    Rational::from((factorial(n).square(), poch.square()))
}

/// F₂(n−1) = −(ρn−n+1)(n−1)!⁴/(2n)!².
pub fn lmre_f2_at_n_minus_1(n: u32, rho: u32) -> Rational {
    let num = Integer::from(rho * n - n + 1) * factorial(n - 1).pow(4);
    -Rational::from((num, factorial(2 * n).square()))
}

/// F₂(n) = −(2n(ρ−1)X)(2Hₙ − H_{2n+1} − (ρn−n+1)/(2n(ρ−1))) for ρ ≥ 2;
/// for ρ = 1 the product is expanded to −X[2n(ρ−1)(2Hₙ − H_{2n+1}) − (ρn−n+1)].
pub fn lmre_f2_at_n(n: u32, rho: u32) -> Rational {
    let x = x_factor(n);
    let h = (harmonic(n, 1) * 2u32) - harmonic(2 * n + 1, 1);
    let s = rho * n - n + 1;
    if rho >= 2 {
        let t = 2 * n * (rho - 1);
        let bracket = h - Rational::from((s, t));
        -(x * t) * bracket
    } else {
        let inner = h * (2 * n * (rho - 1)) - s;
        -x * inner
    }
}

/// F₁(n) = −n(ρ−1)X.
pub fn lmre_f1_at_n(n: u32, rho: u32) -> Rational {
    -x_factor(n) * (n * (rho - 1))
}

/// Compares the three special values F₂(n−1), F₂(n), F₁(n) against
/// partial-fraction evaluation.
pub fn lmre_check(n: u32, rho: u32) -> Result<[bool; 3]> {
    let pf = f1_pf(n, rho)?;
    let nm1 = Rational::from(n - 1);
    let nn = Rational::from(n);
    Ok([
        pf.derivative(&nm1)? == lmre_f2_at_n_minus_1(n, rho),
        pf.derivative(&nn)? == lmre_f2_at_n(n, rho),
        pf.evaluate(&nn)? == lmre_f1_at_n(n, rho),
    ])
}

/// F₁(j) = 0 for 0 ≤ j < n and F₂(j) = 0 for 0 ≤ j < n−1.
pub fn orthogonality_zeros(n: u32, rho: u32) -> Result<bool> {
    let pf = f1_pf(n, rho)?;
    for j in 0..n {
        let z = Rational::from(j);
        if pf.evaluate(&z)? != 0 {
            return Ok(false);
        }
        if j + 1 < n && pf.derivative(&z)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::{a_coeff, b_coeff};

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn closed_zeros() {
        for n in 1..=6u32 {
            for rho in 1..=3u32 {
                for j in 0..n {
                    assert_eq!(f1_closed(n, rho, &Rational::from(j)).unwrap(), 0);
                }
                assert_eq!(f1_closed(n, rho, &Rational::from(rho * n)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn poles_rejected() {
        for z in [-1, -2, -3] {
            assert!(matches!(f1_closed(2, 1, &Rational::from(z)), Err(Error::Pole(_))));
            assert!(matches!(f2_eval(2, 1, &Rational::from(z)), Err(Error::Pole(_))));
        }
        assert!(f1_closed(2, 1, &Rational::from(-4)).is_ok());
        assert!(f1_closed(2, 1, &r(-3, 2)).is_ok());
    }

    #[test]
    fn pf_matches_closed() {
        let pf = f1_pf(2, 1).unwrap();
        assert_eq!(pf.evaluate(&r(1, 2)).unwrap(), f1_closed(2, 1, &r(1, 2)).unwrap());
        let pf = f1_pf(1, 1).unwrap();
        assert_eq!(pf.simple_res, vec![Rational::from(-7), Rational::from(7)]);
        assert_eq!(pf.double_res, vec![Rational::from(2), Rational::from(6)]);
        assert_eq!(pf.evaluate(&Rational::from(3)).unwrap(), f1_closed(1, 1, &Rational::from(3)).unwrap());
        for n in 1..=10u32 {
            for rho in 1..=4u32 {
                let pf = f1_pf(n, rho).unwrap();
                assert_eq!(pf.evaluate(&r(7, 3)).unwrap(), f1_closed(n, rho, &r(7, 3)).unwrap());
                assert_eq!(pf.simple_residue_sum(), 0);
            }
        }
    }

    #[test]
    fn residues_are_rho_coefficients() {
        let pf = f1_pf(5, 3).unwrap();
        assert_eq!(pf.simple_res.len(), 6);
        for k in 0..=5u32 {
            assert_eq!(pf.simple_res[k as usize], a_coeff(5, k, 3).unwrap());
            assert_eq!(pf.double_res[k as usize], b_coeff(5, k, 3).unwrap());
        }
    }

    #[test]
    fn derivative_two_paths() {
        for n in 1..=8u32 {
            for rho in 1..=3u32 {
                for z in [r(7, 3), r(-1, 2), Rational::from(n), Rational::from(n + 3)] {
                    assert_eq!(f2_eval(n, rho, &z).unwrap(), f2_closed(n, rho, &z).unwrap());
                }
            }
        }
    }

    #[test]
    fn special_values() {
        assert_eq!(lmre_check(3, 2).unwrap(), [true, true, true]);
        assert_eq!(lmre_f1_at_n(5, 1), 0);
        assert_eq!(f1_pf(5, 1).unwrap().evaluate(&Rational::from(5)).unwrap(), 0);
        for n in 1..=12 {
            for rho in 1..=5 {
                assert_eq!(lmre_check(n, rho).unwrap(), [true; 3], "n = {n}, rho = {rho}");
            }
        }
    }

    #[test]
    fn f2_at_n_minus_1_is_negative() {
        // The positive-sign reading never matches the derivative.
        for n in 1..=8u32 {
            for rho in 1..=4u32 {
                let v = f2_eval(n, rho, &Rational::from(n - 1)).unwrap();
                assert!(v < 0);
                assert_ne!(v, -lmre_f2_at_n_minus_1(n, rho));
            }
        }
        assert_eq!(lmre_f2_at_n_minus_1(1, 1), r(-1, 4));
    }

    #[test]
    fn f2_at_n_both_forms_agree_for_rho_ge_2() {
        for n in 1..=8u32 {
            for rho in 2..=5u32 {
                let x = x_factor(n);
                let h = (harmonic(n, 1) * 2u32) - harmonic(2 * n + 1, 1);
                let expanded = -x * (h * (2 * n * (rho - 1)) - (rho * n - n + 1));
                assert_eq!(lmre_f2_at_n(n, rho), expanded);
            }
        }
    }

    #[test]
    fn zeros_of_f1_and_f2() {
        for n in 1..=15 {
            for rho in 1..=5 {
                assert!(orthogonality_zeros(n, rho).unwrap());
            }
        }
    }
}
