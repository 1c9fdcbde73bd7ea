mod common;

use std::cmp::Ordering;

use halphen::exactalg::{Poly, Scalar};
use halphen::ode::*;
use halphen::transforms::*;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn lame() -> impl Strategy<Value = LameEquation> {
    any::<u64>().prop_map(|s| common::random_lame(&mut common::rng(s)))
}

fn sorted(mut v: Vec<Scalar>) -> Vec<Scalar> {
    v.sort_by(|a, b| a.cmp_real(b).unwrap_or(Ordering::Equal));
    v
}

/// Finite and infinite points with their sorted exponents, dropping ordinary points.
fn scheme_map(op: &DiffOperator) -> Vec<(Point, Vec<Scalar>)> {
    let ordinary = vec![Scalar::zero(), Scalar::one()];
    let mut out: Vec<(Point, Vec<Scalar>)> = riemann_scheme(op)
        .unwrap()
        .entries
        .into_iter()
        .filter_map(|e| Some((e.point.as_point()?, sorted(e.exponents?))))
        .filter(|(_, e)| *e != ordinary)
        .collect();
    out.sort_by_key(|(p, _)| p.to_string());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn r0_factorization(mu in rational(), nu in rational(), n in rational()) {
        prop_assert_eq!(r0(&nu, &mu), r0_factored(&nu, &mu));
        let nu_n = &n * &(&n + &Scalar::one());
        for root in [Scalar::frac(-1, 2), n.clone(), -&(&n + &Scalar::one())] {
            prop_assert!(r0(&nu_n, &root).is_zero());
        }
    }

    #[test]
    fn r1_matches_integral_form(l in lame(), mu in rational()) {
        prop_assert_eq!(r1(&l, &mu), r1_integral_form(&l, &mu));
    }

    #[test]
    fn euler_transform_matches_oracle(l in lame(), mu in rational()) {
        let l3 = sym_square_2nd(&l.as_operator()).unwrap();
        prop_assert_eq!(&l3, &DiffOperator::new(lame_sym_square_coefficients(&l)).unwrap());
        let e = euler_third_order(&l, &mu);
        prop_assert_eq!(common::euler_oracle(&l3, &mu), e.clone());
        prop_assert!(fuchs_holds(&l3));
        prop_assert!(fuchs_holds(&e));
    }

    #[test]
    fn specializations_are_order_reductions(l in lame(), n in rational()) {
        let a = euler_third_order(&l, &Scalar::frac(-1, 2)).reduce_order().unwrap();
        prop_assert_eq!(&a, &halphen_a(&l));
        prop_assert!(fuchs_holds(&a));
        let ln = LameEquation::new(l.p0.clone(), &n * &(&n + &Scalar::one()), l.h.clone()).unwrap();
        for (case, mu) in [(HalphenCase::B, n.clone()), (HalphenCase::C, -&(&n + &Scalar::one()))] {
            let red = euler_third_order(&ln, &mu).reduce_order().unwrap();
            let bc = halphen_bc(&ln, &n, case).unwrap();
            prop_assert_eq!(&red, &bc);
            prop_assert!(fuchs_holds(&bc));
        }
        let closed = DiffOperator::new(halphen_c_closed_coefficients(&ln, &n)).unwrap();
        prop_assert_eq!(closed, halphen_bc(&ln, &n, HalphenCase::C).unwrap());
    }

    #[test]
    fn round_trips(l in lame(), n in rational()) {
        prop_assert_eq!(&heun_to_lame(&lame_to_heun(&l)).unwrap(), &l);
        let h = HeunEquation::from_operator(&halphen_a(&l)).unwrap();
        prop_assert_eq!(&heun_to_lame(&h).unwrap(), &l);
        prop_assert_eq!(&LameEquation::from_operator(&l.as_operator()).unwrap(), &l);
        prop_assume!(n != Scalar::zero());
        let ln = LameEquation::new(l.p0.clone(), &n * &(&n + &Scalar::one()), l.h.clone()).unwrap();
        let hc = HeunEquation::from_operator(&halphen_bc(&ln, &n, HalphenCase::C).unwrap()).unwrap();
        prop_assert_eq!(&HeunEquation::from_operator(&hc.as_operator()).unwrap(), &hc);
        prop_assert_eq!(inverse_halphen_c(&hc).unwrap(), (n, ln));
    }

    #[test]
    fn moebius_relabels_schemes(l in lame(), a in rational(), b in rational(), c in rational(), d in rational()) {
        let Ok(m) = MoebiusMap::new(a, b, c, d) else { return Ok(()) };
        let op = l.as_operator();
        let moved = moebius_transform(&op, &m).unwrap();
        let mut expected: Vec<(Point, Vec<Scalar>)> = scheme_map(&op).into_iter().map(|(p, e)| (m.apply(&p), e)).collect();
        expected.sort_by_key(|(p, _)| p.to_string());
        prop_assert_eq!(scheme_map(&moved), expected);
        prop_assert!(fuchs_holds(&moved));
    }
}

/// Exponents `{0, ½}` at the finite points and `{−n/2, (n+1)/2}` at infinity; after
/// case c, `{0, n+½}` and (for Σe = 0) `{−2n, ½−n}`.
#[test]
fn lame_and_halphen_c_schemes() {
    let mut r = common::rng(21);
    let half = Scalar::frac(1, 2);
    for _ in 0..5 {
        // Σe = 0: roots e₁, e₂, −e₁−e₂
        let (e1, e2) = loop {
            let e1 = common::small_rational(&mut r, 6, 3);
            let e2 = common::small_rational(&mut r, 6, 3);
            let e3 = -&(&e1 + &e2);
            if e1 != e2 && e1 != e3 && e2 != e3 {
                break (e1, e2);
            }
        };
        let e3 = -&(&e1 + &e2);
        let p0 = [&e1, &e2, &e3].iter().fold(Poly::one(), |acc, e| &acc * &Poly::linear_root(e));
        let n = common::small_rational(&mut r, 9, 4);
        if n.is_zero() || n == Scalar::frac(-1, 2) {
            continue;
        }
        let nu = &n * &(&n + &Scalar::one());
        let l = LameEquation::new(p0, nu, common::small_rational(&mut r, 9, 4)).unwrap();
        let s = riemann_scheme(&l.as_operator()).unwrap();
        for e in [&e1, &e2, &e3] {
            assert_eq!(sorted(s.exponents_at(&SingularPoint::Finite((*e).clone())).unwrap()), sorted(vec![Scalar::zero(), half.clone()]));
        }
        let inf = sorted(s.exponents_at(&SingularPoint::Infinity).unwrap());
        assert_eq!(inf, sorted(vec![-&(&n * &half), &(&n + &Scalar::one()) * &half]));

        let c = halphen_bc(&l, &n, HalphenCase::C).unwrap();
        assert!(fuchs_holds(&c));
        let s = riemann_scheme(&c).unwrap();
        for e in [&e1, &e2, &e3] {
            assert_eq!(sorted(s.exponents_at(&SingularPoint::Finite((*e).clone())).unwrap()), sorted(vec![Scalar::zero(), &n + &half]));
        }
        let inf = sorted(s.exponents_at(&SingularPoint::Infinity).unwrap());
        assert_eq!(inf, sorted(vec![&Scalar::from(-2) * &n, &half - &n]));
    }
}

#[test]
fn euler_transform_at_zero_is_identity() {
    let l = common::random_lame(&mut common::rng(22));
    let l3 = sym_square_2nd(&l.as_operator()).unwrap();
    assert_eq!(common::euler_oracle(&l3, &Scalar::zero()), l3);
}
