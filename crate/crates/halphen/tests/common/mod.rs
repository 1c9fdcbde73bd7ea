//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use halphen::exactalg::{Matrix, Poly, Scalar};
use halphen::monodromy::MatrixTuple;
use halphen::ode::{DiffOperator, LameEquation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Rational with numerator in `-n..=n` and denominator in `1..=d`.
pub fn small_rational(r: &mut StdRng, n: i64, d: i64) -> Scalar {
    Scalar::frac(r.gen_range(-n..=n), r.gen_range(1..=d))
}

/// Lamé data with three distinct rational roots.
pub fn random_lame(r: &mut StdRng) -> LameEquation {
    loop {
        let e: Vec<Scalar> = (0..3).map(|_| small_rational(r, 9, 4)).collect();
        if e[0] == e[1] || e[1] == e[2] || e[0] == e[2] {
            continue;
        }
        let p0 = e.iter().fold(Poly::one(), |acc, ei| &acc * &Poly::linear_root(ei));
        let nu = small_rational(r, 12, 5);
        let h = small_rational(r, 12, 5);
        return LameEquation::new(p0, nu, h).unwrap();
    }
}

/// `x^j ∂^j = θ(θ−1)⋯(θ−j+1)` as a polynomial in `θ`.
fn falling(j: usize) -> Poly {
    (0..j).fold(Poly::one(), |acc, i| &acc * &Poly::new(vec![Scalar::from(-(i as i64)), Scalar::one()]))
}

/// Stirling numbers of the second kind `S(i, j)`: `θ^i = Σ_j S(i, j) x^j ∂^j`.
fn stirling2(i: usize, j: usize) -> i64 {
    let mut t = vec![vec![0i64; i + 1]; i + 1];
    t[0][0] = 1;
    for a in 1..=i {
        for b in 1..=a {
            t[a][b] = b as i64 * t[a - 1][b] + t[a - 1][b - 1];
        }
    }
    if j <= i {
        t[i][j]
    } else {
        0
    }
}

/// Euler transform `Y = ∫ f(t)(x − t)^{−1−μ} dt` at the operator level, for operators
/// with `deg pₖ ≤ k`: writing `L = Σ_m P_m(θ)∂^m` with `θ = x∂`, the transform is
/// `Σ_m P_m(θ + μ)∂^m` (from `I^a θ = (θ − a)I^a` with `a = −μ`).
pub fn euler_oracle(op: &DiffOperator, mu: &Scalar) -> DiffOperator {
    let n = op.order();
    let c = |j: usize, k: usize| op.coeff(k).coeff(j);
    let mut out = vec![Poly::zero(); n + 1];
    let shift = Poly::new(vec![mu.clone(), Scalar::one()]);
    for m in 0..=n {
        let mut p = Poly::zero();
        for j in 0..=n - m {
            assert!(op.coeff(j + m).deg() <= (j + m) as i64, "coefficient degree exceeds order");
            p = &p + &falling(j).scale(&c(j, j + m));
        }
        let q = p.compose(&shift);
        for (i, qi) in q.coeffs().iter().enumerate() {
            for j in 0..=i {
                let s = stirling2(i, j);
                if s != 0 && j + m <= n {
                    out[j + m] = &out[j + m] + &Poly::monomial(qi * &Scalar::from(s), j);
                }
            }
        }
    }
    DiffOperator::new(out).unwrap()
}

pub fn involution(r: &mut StdRng, det: i64) -> Matrix {
    // [[a, b], [c, −a]] with −a² − bc = det
    loop {
        let a = small_rational(r, 6, 3);
        let b = small_rational(r, 6, 3);
        if b.is_zero() {
            continue;
        }
        let c = &(&Scalar::from(-det) - &(&a * &a)) / &b;
        return Matrix::from_rows(vec![vec![a.clone(), b], vec![c, -a]]);
    }
}

pub fn random_involution_tuple(r: &mut StdRng, det: i64) -> MatrixTuple {
    MatrixTuple::closing((0..3).map(|_| involution(r, det)).collect()).unwrap()
}

/// Integer matrix of determinant 1 from a short random word in the elementary generators.
pub fn random_sl2z(r: &mut StdRng) -> Matrix {
    let mut m = Matrix::identity(2);
    for _ in 0..r.gen_range(1..=4) {
        let k = r.gen_range(-3..=3);
        let e = if r.gen_bool(0.5) { Matrix::from_ints(&[&[1, k], &[0, 1]]) } else { Matrix::from_ints(&[&[1, 0], &[k, 1]]) };
        m = &m * &e;
    }
    m
}

pub fn random_integer_tuple(r: &mut StdRng) -> MatrixTuple {
    MatrixTuple::closing((0..3).map(|_| random_sl2z(r)).collect()).unwrap()
}
