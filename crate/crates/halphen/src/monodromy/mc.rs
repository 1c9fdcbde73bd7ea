//! Symmetric square of tuples and the middle convolution `MC_λ`.
//!
//! `MC_λ` is applied to the first `r − 1` generators (the last one is the local
//! monodromy at infinity and is recomputed as the inverse product).  The block
//! construction is done on transposed matrices and transposed back; with this
//! convention `MC₁` preserves all trace words and `MC₋₁ ∘ MC₋₁` is trace-equivalent to
//! the identity.

use crate::exactalg::{Matrix, Scalar};

use super::{FrickeData, MatrixTuple, MonodromyError};

/// Action of `[[a, b], [c, d]]` on the degree-2 monomials `e₁², e₁e₂, e₂²`.
pub fn sym_square(a: &Matrix) -> Result<Matrix, MonodromyError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(MonodromyError::Shape("symmetric square needs a 2×2 matrix".into()));
    }
    let (p, q, r, s) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
    let two = Scalar::from(2);
    Ok(Matrix::from_rows(vec![
        vec![p * p, p * q, q * q],
        vec![&two * &(p * r), &(p * s) + &(q * r), &two * &(q * s)],
        vec![r * r, r * s, s * s],
    ]))
}

pub fn sym_square_tuple(t: &MatrixTuple) -> Result<MatrixTuple, MonodromyError> {
    let m = t.matrices().iter().map(sym_square).collect::<Result<Vec<_>, _>>()?;
    MatrixTuple::unchecked(m)
}

/// `Cᵢ = −Sym²(Aᵢ)/det Aᵢ` for the first three generators (reflections when `Aᵢ` has
/// trace 0), closed by the inverse product.
pub fn pipeline_sym_square(t: &MatrixTuple) -> Result<MatrixTuple, MonodromyError> {
    if t.len() != 4 || t.dim() != 2 {
        return Err(MonodromyError::Shape("need four 2×2 matrices".into()));
    }
    let first = t.matrices()[..3]
        .iter()
        .map(|a| Ok(sym_square(a)?.scale(&-a.det().inv())))
        .collect::<Result<Vec<_>, MonodromyError>>()?;
    MatrixTuple::closing(first)
}

/// Independent columns among `vecs`, as a matrix with `n` rows (possibly no columns).
fn independent(vecs: Vec<Vec<Scalar>>, n: usize) -> Vec<Vec<Scalar>> {
    let mut kept: Vec<Vec<Scalar>> = Vec::new();
    for v in vecs {
        let mut cand = kept.clone();
        cand.push(v.clone());
        let m = Matrix::hstack(&cand.iter().map(|c| Matrix::column(c.clone())).collect::<Vec<_>>());
        if m.rank() == cand.len() {
            kept = cand;
        }
    }
    debug_assert!(kept.iter().all(|v| v.len() == n));
    kept
}

/// Block-row construction on the matrices as given (no transposition).
fn mc_rows(a: &[Matrix], lambda: &Scalar) -> Result<Vec<Matrix>, MonodromyError> {
    let r = a.len();
    let n = a[0].rows();
    let id = Matrix::identity(n);
    let big = n * r;
    let mut bs = Vec::with_capacity(r);
    for k in 0..r {
        let mut b = Matrix::identity(big);
        for (j, aj) in a.iter().enumerate() {
            let blk = match j.cmp(&k) {
                std::cmp::Ordering::Less => aj - &id,
                std::cmp::Ordering::Equal => aj.scale(lambda),
                std::cmp::Ordering::Greater => (aj - &id).scale(lambda),
            };
            b.set_block(k * n, j * n, &blk);
        }
        bs.push(b);
    }
    let mut vecs = Vec::new();
    for (k, ak) in a.iter().enumerate() {
        for v in (ak - &id).nullspace() {
            let mut w = vec![Scalar::zero(); big];
            w[k * n..(k + 1) * n].clone_from_slice(&v);
            vecs.push(w);
        }
    }
    let stacked = Matrix::vstack(&bs.iter().map(|b| b - &Matrix::identity(big)).collect::<Vec<_>>());
    vecs.extend(stacked.nullspace());
    let w = independent(vecs, big);
    let d = w.len();
    if d >= big {
        return Err(MonodromyError::Degenerate("middle convolution has dimension 0".into()));
    }
    let basis = if d == 0 {
        Matrix::identity(big)
    } else {
        Matrix::complete_basis(&Matrix::hstack(&w.into_iter().map(Matrix::column).collect::<Vec<_>>()))
    };
    let pinv = basis.inverse().expect("completed basis is invertible");
    let m = big - d;
    Ok(bs.iter().map(|b| (&(&pinv * b) * &basis).submatrix(d, d, m, m)).collect())
}

/// `MC_λ` of a tuple whose last generator is the inverse product of the others.
pub fn middle_convolution(t: &MatrixTuple, lambda: &Scalar) -> Result<MatrixTuple, MonodromyError> {
    if lambda.is_zero() {
        return Err(MonodromyError::Precondition("lambda must be nonzero".into()));
    }
    if t.len() < 2 {
        return Err(MonodromyError::Shape("middle convolution needs at least two generators".into()));
    }
    let finite: Vec<Matrix> = t.matrices()[..t.len() - 1].iter().map(Matrix::transpose).collect();
    let out: Vec<Matrix> = mc_rows(&finite, lambda)?.iter().map(Matrix::transpose).collect();
    MatrixTuple::closing(out)
}

/// For a tuple whose first three generators have trace 0 and determinant 1, `√−1·Aᵢ` (an honest involution with
/// the same projective image), re-closed; other tuples are returned unchanged.
pub fn involution_lift(t: &MatrixTuple) -> Result<MatrixTuple, MonodromyError> {
    let m = t.matrices();
    if m.len() == 4 && m[..3].iter().all(|a| a.trace().is_zero() && a.det().is_one()) {
        let i = Scalar::sqrt_int(-1);
        MatrixTuple::closing(m[..3].iter().map(|a| a.scale(&i)).collect())
    } else {
        Ok(t.clone())
    }
}

fn check_trace_zero(f: &FrickeData) -> Result<(), MonodromyError> {
    if f.a[..3].iter().any(|a| !a.is_zero()) {
        return Err(MonodromyError::Precondition("a1 = a2 = a3 = 0 required".into()));
    }
    Ok(())
}

/// `(0,0,0,a₄,x,y,z) ↦ (2,2,2,−a₄²−2,−(x²−2),−(y²−2),−(z²−2))`
pub fn trace_map(f: &FrickeData) -> Result<FrickeData, MonodromyError> {
    trace_map_det(f, &Scalar::from(-1))
}

/// The same map for generators of determinant `det` (±1): the fourth coordinate becomes
/// `det·a₄² − 2`.
pub fn trace_map_det(f: &FrickeData, det: &Scalar) -> Result<FrickeData, MonodromyError> {
    check_trace_zero(f)?;
    let two = Scalar::from(2);
    let g = |v: &Scalar| -(&(v * v) - &two);
    Ok(FrickeData::new(
        [two.clone(), two.clone(), two.clone(), &(det * &(&f.a[3] * &f.a[3])) - &two],
        g(&f.x),
        g(&f.y),
        g(&f.z),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::fricke_params;
    use super::*;

    fn involution(a: i64, b: i64, det: i64) -> Matrix {
        // [[a, b], [c, −a]] with −a² − bc = det
        let c = Scalar::frac(-det - a * a, b);
        Matrix::from_rows(vec![vec![Scalar::from(a), Scalar::from(b)], vec![c, Scalar::from(-a)]])
    }

    #[test]
    fn sym_square_examples() {
        let u = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(sym_square(&u).unwrap(), Matrix::from_ints(&[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]]));
        let s = sym_square(&involution(2, 3, -1)).unwrap();
        // eigenvalues 1, 1, −1: a reflection
        assert_eq!((&s - &Matrix::identity(3)).rank(), 1);
        assert_eq!(s.trace(), Scalar::one());
        let id = MatrixTuple::identity(4, 2);
        assert_eq!(sym_square_tuple(&id).unwrap(), MatrixTuple::identity(4, 3));
    }

    #[test]
    fn trace_map_examples() {
        let z = FrickeData::from_ints([0; 7]);
        assert_eq!(trace_map(&z).unwrap(), FrickeData::from_ints([2, 2, 2, -2, 2, 2, 2]));
        let f = FrickeData::new(
            [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            Scalar::frac(5, 2),
            Scalar::one(),
            Scalar::one(),
        );
        assert_eq!(trace_map(&f).unwrap().x, Scalar::frac(-17, 4));
        assert!(trace_map(&FrickeData::from_ints([2; 7])).is_err());
    }

    #[test]
    fn pipeline_on_involutions() {
        for det in [-1, 1] {
            let t = MatrixTuple::closing(vec![involution(1, 2, det), involution(-2, 3, det), involution(3, -1, det)]).unwrap();
            let c = pipeline_sym_square(&t).unwrap();
            let b = middle_convolution(&c, &Scalar::from(-1)).unwrap();
            assert_eq!(b.dim(), 2);
            let got = fricke_params(&b).unwrap();
            let f = fricke_params(&t).unwrap();
            assert_eq!(got, trace_map_det(&f, &Scalar::from(det)).unwrap());
            let lifted = fricke_params(&involution_lift(&t).unwrap()).unwrap();
            assert_eq!(got, trace_map(&lifted).unwrap());
        }
    }

    #[test]
    fn mc_one_keeps_traces() {
        let t = MatrixTuple::closing(vec![
            Matrix::from_ints(&[&[2, 1], &[1, 1]]),
            Matrix::from_ints(&[&[1, 3], &[0, 2]]),
            Matrix::from_ints(&[&[3, 0], &[5, -1]]),
        ])
        .unwrap();
        let b = middle_convolution(&t, &Scalar::one()).unwrap();
        assert_eq!(fricke_params(&b).unwrap(), fricke_params(&t).unwrap());
        assert!(middle_convolution(&t, &Scalar::zero()).is_err());
    }
}
