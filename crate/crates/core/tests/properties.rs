use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};

use zeta3::analysis::{fit_exponential, step_rate, ErrorSeq};
use zeta3::bigmath::{binomial, harmonic, lcm_upto, pochhammer};
use zeta3::contfrac::{
    apery_cf, cf_equiv_transform, cf_evaluate, cf_evaluate_exact, cf_from_convergents, nesterenko_cf, rho_cf, ContFrac,
};
use zeta3::ratfunc::{f1_closed, f1_pf, f2_closed, f2_eval};

fn nonzero(lim: i32) -> impl Strategy<Value = Rational> {
    (1..=lim, any::<bool>(), 1..=5i32).prop_map(|(m, neg, d)| Rational::from((if neg { -m } else { m }, d)))
}

fn cont_frac(max_len: usize) -> impl Strategy<Value = ContFrac> {
    (1..=max_len)
        .prop_flat_map(|len| {
            (-20..=20i32, prop::collection::vec(nonzero(20), len), prop::collection::vec(nonzero(20), len))
        })
        .prop_map(|(a0, a, b)| ContFrac { a0: Rational::from(a0), a, b })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20..=20i32, 1..=20i32).prop_map(|(n, d)| Rational::from((n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn equivalence_scales_convergents(
        (cf, c) in cont_frac(15).prop_flat_map(|cf| {
            let n = cf.len();
            (Just(cf), prop::collection::vec(nonzero(6), n))
        })
    ) {
        let mut scale = vec![Rational::from(1)];
        scale.extend(c);
        let moved = cf_equiv_transform(&cf, &scale).unwrap();
        let (x, y) = (cf.convergents(cf.len()).unwrap(), moved.convergents(cf.len()).unwrap());
        let mut acc = Rational::from(1);
        for (n, c) in scale.iter().enumerate() {
            acc *= c;
            prop_assert_eq!(Rational::from(&x.p[n] * &acc), y.p[n].clone());
            prop_assert_eq!(Rational::from(&x.q[n] * &acc), y.q[n].clone());
        }
    }

    #[test]
    fn construction_inverts_recursion(cf in cont_frac(15)) {
        let pair = cf.convergents(cf.len()).unwrap();
        prop_assert_eq!(cf_from_convergents(&pair, cf.len()).unwrap(), cf);
    }

    #[test]
    fn backward_evaluation_matches_convergent(cf in cont_frac(12)) {
        let pair = cf.convergents(cf.len()).unwrap();
        let n = cf.len();
        prop_assume!(pair.q[n] != 0);
        let exact = cf_evaluate_exact(&cf, n);
        prop_assume!(exact.is_ok());
        let exact = exact.unwrap();
        prop_assert_eq!(&exact, &pair.ratio(n));
        let f = cf_evaluate(&cf, n, 256).unwrap();
        let diff = Float::with_val(256, &f - &exact).abs();
        prop_assert!(diff <= Float::with_val(256, Float::i_exp(1, -200)) * (exact.clone().abs() + 1u32));
    }

    #[test]
    fn partial_fractions_match_closed_form(n in 1..=12u32, rho in 1..=5u32, z in small_rational()) {
        let closed = f1_closed(n, rho, &z);
        prop_assume!(closed.is_ok());
        let pf = f1_pf(n, rho).unwrap();
        prop_assert_eq!(pf.evaluate(&z).unwrap(), closed.unwrap());
        prop_assert_eq!(f2_eval(n, rho, &z).unwrap(), f2_closed(n, rho, &z).unwrap());
    }

    #[test]
    fn harmonic_steps(k in 1..=200u32, r in 1..=3u32) {
        let step = harmonic(k, r) - harmonic(k - 1, r);
        prop_assert_eq!(step, Rational::from((1, rug::Integer::from(k).pow(r))));
    }

    #[test]
    fn pascal_and_symmetry(n in 1..=300u32, k in 0..=300i64) {
        prop_assume!(k <= n as i64);
        prop_assert_eq!(binomial(n, k), binomial(n, n as i64 - k));
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1));
    }

    #[test]
    fn pochhammer_step(z in small_rational(), k in 0..=30u32) {
        let next = pochhammer(&z, k) * Rational::from(&z + k);
        prop_assert_eq!(pochhammer(&z, k + 1), next);
    }

    #[test]
    fn lcm_divisible(n in 1..=500u32) {
        let l = lcm_upto(n);
        for j in 1..=n {
            prop_assert!(l.is_divisible_u(j));
        }
        if n > 1 {
            prop_assert!(l.is_divisible(&lcm_upto(n - 1)));
        }
    }

    #[test]
    fn fit_recovers_line(ln_q in -400.0..-1.0f64, beta in -8.0..-0.5f64, len in 3..=25usize) {
        let eps: Vec<Float> = (1..=len)
            .map(|i| Float::with_val(256, ln_q + beta * i as f64).exp())
            .collect();
        let fit = fit_exponential(&ErrorSeq::new(None, 51, eps).unwrap()).unwrap();
        prop_assert!((fit.beta.to_f64() - beta).abs() < 1e-9);
        prop_assert!((fit.ln_q.to_f64() - ln_q).abs() < 1e-9);
        prop_assert!(fit.max_residual.to_f64() < 1e-9);
    }

    #[test]
    fn step_rate_antisymmetric(x in -300.0..0.0f64, y in -300.0..0.0f64, base in 2..=16u32) {
        let (a, b) = (Float::with_val(128, x).exp(), Float::with_val(128, y).exp());
        let s = step_rate(&a, &b, base).unwrap() + step_rate(&b, &a, base).unwrap();
        prop_assert!(s.to_f64().abs() < 1e-12);
    }
}

#[test]
fn families_round_trip() {
    let mut fams = vec![apery_cf(20), nesterenko_cf(20)];
    fams.extend((1..=4).map(|r| rho_cf(20, r).unwrap()));
    for cf in fams {
        let pair = cf.convergents(20).unwrap();
        let built = cf_from_convergents(&pair, 20).unwrap();
        for n in 1..=20 {
            assert_eq!(cf_evaluate_exact(&built, n).unwrap(), pair.ratio(n));
        }
    }
}
