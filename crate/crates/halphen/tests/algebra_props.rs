use halphen::exactalg::{Matrix, Poly, Scalar};
use halphen::parse::{parse_poly, parse_scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-60i64..60, 1i64..20).prop_map(|(n, d)| Scalar::frac(n, d))
}

/// Elements of Q(√−3) (and Q when the second part is 0).
fn quadratic() -> impl Strategy<Value = Scalar> {
    (rational(), rational()).prop_map(|(a, b)| &a + &(&b * &Scalar::sqrt_int(-3)))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(Poly::new)
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(0i64), 7 => -4i64..5], r * c).prop_map(move |v| {
            Matrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&k| Scalar::from(k)).collect()).collect())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in quadratic(), b in quadratic(), c in quadratic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn scalar_print_parse(a in quadratic()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn poly_print_parse(p in poly(6)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn squarefree_reassembles(f in poly(3), g in poly(2), h in poly(2)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
        let p = &(&f * &g.pow(2)) * &h.pow(3);
        let d = p.squarefree_decompose().unwrap();
        let back = d.factors.iter().fold(Poly::constant(d.unit.clone()), |acc, (q, k)| &acc * &q.pow(*k));
        prop_assert_eq!(back, p);
        for (q, _) in &d.factors {
            prop_assert!(q.gcd(&q.derivative()).is_constant());
        }
    }

    #[test]
    fn rational_roots_recovered(rs in prop::collection::vec((-10_000_000i64..10_000_000, 1i64..1_000_000), 1..5), q in poly(2)) {
        let roots: Vec<Scalar> = rs.iter().map(|&(n, d)| Scalar::frac(n, d)).collect();
        let p = roots.iter().fold(q.clone(), |acc, r| &acc * &Poly::linear_root(r));
        prop_assume!(!q.is_zero());
        let found = p.rational_roots();
        for r in &roots {
            prop_assert!(found.contains(r));
        }
        for r in &found {
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn nullspace_and_rank(m in matrix()) {
        let basis = m.nullspace();
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.rank() + basis.len(), m.cols());
    }

    #[test]
    fn inverse_and_det(m in matrix()) {
        prop_assume!(m.is_square());
        match m.inverse() {
            Some(inv) => {
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&m.det() * &inv.det()).is_one());
            }
            None => prop_assert!(m.det().is_zero()),
        }
    }
}

#[test]
fn parse_examples() {
    let p = parse_poly("4*x^3 - 5/2*x + 1").unwrap();
    assert_eq!(p.coeffs(), &[Scalar::one(), Scalar::frac(-5, 2), Scalar::zero(), Scalar::from(4)]);
    assert_eq!(parse_poly("x*(x-1)*(x-81)").unwrap(), Poly::from_ints(&[0, 81, -82, 1]));
    assert!(parse_poly("x^(-1)").is_err());
}

#[test]
fn kernel_examples() {
    let u = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
    assert_eq!(u.nullspace(), vec![vec![Scalar::one(), Scalar::zero()]]);
    // −Sym²([[1,1],[0,1]]) − I
    let m = Matrix::from_ints(&[&[-2, -1, -1], &[0, -2, -2], &[0, 0, -2]]);
    assert!(m.nullspace().is_empty());
    assert_eq!(m.rank(), 3);
}
