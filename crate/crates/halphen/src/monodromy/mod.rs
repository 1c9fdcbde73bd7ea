//! Rank-2 monodromy tuples: Fricke coordinates, the braid action, Vieta descent on
//! unipotent triples, reconstruction from traces, symmetric square and middle
//! convolution, and invariant hermitian forms.

mod construct;
mod form;
mod mc;
mod vieta;

use std::fmt;

use crate::exactalg::{common_field, Matrix, Scalar};

pub use construct::{
    classify_tuple, construct_tuple, diagonal_conjugator, verify_golden_tuples, Classification, ConstructedTuple,
    FamilyCheck, TupleCheck, TupleReport,
};
pub use form::{
    common_eigenvector, hermitian_conjugate, inverse_trace_data, invariant_form, is_irreducible, FormVerdict,
    InvariantForm, Signature, TraceSquares,
};
pub use mc::{involution_lift, middle_convolution, pipeline_sym_square, sym_square, sym_square_tuple, trace_map, trace_map_det};
pub use vieta::{
    descend_minimal, enumerate_minimal, is_jump_fixed, unipotent_residual, vieta_partner, MinimalTriple, Triple,
    TripleCase,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonodromyError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("generators do not multiply to the identity")]
    ProductNotIdentity,
    #[error("singular generator {0}")]
    Singular(usize),
    #[error("malformed braid word: {0}")]
    Word(String),
    #[error("nonzero residual {0}")]
    Residual(Scalar),
    #[error("coordinate {0} is zero: no Vieta jump")]
    ZeroCoordinate(usize),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Invertible square matrices of one size with `A₁⋯A_r = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTuple {
    matrices: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<Matrix>) -> Result<Self, MonodromyError> {
        let t = MatrixTuple::unchecked(matrices)?;
        if !t.product().is_identity() {
            return Err(MonodromyError::ProductNotIdentity);
        }
        Ok(t)
    }

    /// Shape and invertibility checks only.
    pub fn unchecked(matrices: Vec<Matrix>) -> Result<Self, MonodromyError> {
        let Some(first) = matrices.first() else {
            return Err(MonodromyError::Shape("empty tuple".into()));
        };
        let m = first.rows();
        for (i, a) in matrices.iter().enumerate() {
            if !a.is_square() || a.rows() != m {
                return Err(MonodromyError::Shape(format!("generator {} is not {m}×{m}", i + 1)));
            }
            if a.det().is_zero() {
                return Err(MonodromyError::Singular(i + 1));
            }
        }
        Ok(MatrixTuple { matrices })
    }

    /// The given generators followed by the inverse of their product.
    pub fn closing(mut first: Vec<Matrix>) -> Result<Self, MonodromyError> {
        let t = MatrixTuple::unchecked(first.clone())?;
        first.push(t.product().inverse().expect("product of invertible matrices"));
        Ok(MatrixTuple { matrices: first })
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn product(&self) -> Matrix {
        let n = self.dim();
        self.matrices.iter().fold(Matrix::identity(n), |acc, a| &acc * a)
    }

    /// Radicand of the quadratic field of the entries (0 for rational).
    pub fn field(&self) -> Result<i64, MonodromyError> {
        common_field(self.matrices.iter().flat_map(|a| a.entries()))
            .map_err(|(d, e)| MonodromyError::Unsupported(format!("entries in Q(sqrt({d})) and Q(sqrt({e}))")))
    }

    /// `D⁻¹ A_i D` for every generator.
    pub fn conjugate(&self, d: &Matrix) -> Result<Self, MonodromyError> {
        let inv = d.inverse().ok_or_else(|| MonodromyError::Degenerate("singular conjugator".into()))?;
        Ok(MatrixTuple { matrices: self.matrices.iter().map(|a| &(&inv * a) * d).collect() })
    }

    pub fn identity(r: usize, m: usize) -> Self {
        MatrixTuple { matrices: vec![Matrix::identity(m); r] }
    }

    fn check_rank2_four(&self) -> Result<(), MonodromyError> {
        if self.len() != 4 || self.dim() != 2 {
            return Err(MonodromyError::Shape(format!("need four 2×2 matrices, got {} of size {}", self.len(), self.dim())));
        }
        Ok(())
    }
}

impl fmt::Display for MatrixTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.matrices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let rows: Vec<String> = a
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            write!(f, "[{}]", rows.join("; "))?;
        }
        Ok(())
    }
}

/// `(a₁, a₂, a₃, a₄, x, y, z)` with `x = tr A₁A₂`, `y = tr A₂A₃`, `z = tr A₁A₃`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrickeData {
    pub a: [Scalar; 4],
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl FrickeData {
    pub fn new(a: [Scalar; 4], x: Scalar, y: Scalar, z: Scalar) -> Self {
        FrickeData { a, x, y, z }
    }

    pub fn from_ints(v: [i64; 7]) -> Self {
        let s = |i: usize| Scalar::from(v[i]);
        FrickeData { a: [s(0), s(1), s(2), s(3)], x: s(4), y: s(5), z: s(6) }
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        let mut v = self.a.to_vec();
        v.extend([self.x.clone(), self.y.clone(), self.z.clone()]);
        v
    }

    pub fn from_slice(v: &[Scalar]) -> Result<Self, MonodromyError> {
        if v.len() != 7 {
            return Err(MonodromyError::Shape(format!("Fricke data has 7 coordinates, got {}", v.len())));
        }
        Ok(FrickeData { a: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()], x: v[4].clone(), y: v[5].clone(), z: v[6].clone() })
    }
}

impl fmt::Display for FrickeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.to_vec().iter().map(|s| s.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

pub fn fricke_params(t: &MatrixTuple) -> Result<FrickeData, MonodromyError> {
    t.check_rank2_four()?;
    let m = t.matrices();
    Ok(FrickeData {
        a: [m[0].trace(), m[1].trace(), m[2].trace(), m[3].trace()],
        x: (&m[0] * &m[1]).trace(),
        y: (&m[1] * &m[2]).trace(),
        z: (&m[0] * &m[2]).trace(),
    })
}

/// `Σaᵢ² + Πaᵢ + x² + y² + z² + xyz − (a₁a₂+a₃a₄)x − (a₁a₄+a₂a₃)y − (a₁a₃+a₂a₄)z − 4`
pub fn fricke_residual(f: &FrickeData) -> Scalar {
    let [a1, a2, a3, a4] = &f.a;
    let (x, y, z) = (&f.x, &f.y, &f.z);
    let mut r: Scalar = f.a.iter().map(|a| a * a).sum();
    r += &(&(a1 * a2) * &(a3 * a4));
    r += &(&(x * x) + &(&(y * y) + &(z * z)));
    r += &(&(x * y) * z);
    r -= &(&(&(a1 * a2) + &(a3 * a4)) * x);
    r -= &(&(&(a1 * a4) + &(a2 * a3)) * y);
    r -= &(&(&(a1 * a3) + &(a2 * a4)) * z);
    r - Scalar::from(4)
}

/// A braid generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Braid {
    B1,
    B2,
    B1Inv,
    B2Inv,
}

impl Braid {
    pub fn inverse(self) -> Braid {
        match self {
            Braid::B1 => Braid::B1Inv,
            Braid::B2 => Braid::B2Inv,
            Braid::B1Inv => Braid::B1,
            Braid::B2Inv => Braid::B2,
        }
    }
}

impl fmt::Display for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Braid::B1 => "b1",
            Braid::B2 => "b2",
            Braid::B1Inv => "b1^-1",
            Braid::B2Inv => "b2^-1",
        })
    }
}

/// Parses words such as `"b1 b2^-1 b1"` (also comma separated; `b1'` and `B1i`
/// are accepted for inverses).  Letters act left to right.
pub fn parse_word(text: &str) -> Result<Vec<Braid>, MonodromyError> {
    text.split(|c: char| c.is_whitespace() || c == ',' || c == '*')
        .filter(|s| !s.is_empty())
        .map(|tok| match tok.to_ascii_lowercase().as_str() {
            "b1" => Ok(Braid::B1),
            "b2" => Ok(Braid::B2),
            "b1^-1" | "b1'" | "b1i" => Ok(Braid::B1Inv),
            "b2^-1" | "b2'" | "b2i" => Ok(Braid::B2Inv),
            _ => Err(MonodromyError::Word(format!("unknown letter {tok:?}"))),
        })
        .collect()
}

fn inv(a: &Matrix) -> Matrix {
    a.inverse().expect("tuple generators are invertible")
}

fn braid_step(m: &[Matrix], b: Braid) -> Vec<Matrix> {
    let (a1, a2, a3) = (&m[0], &m[1], &m[2]);
    let mut out = m.to_vec();
    match b {
        Braid::B1 => {
            out[0] = a2.clone();
            out[1] = &(&inv(a2) * a1) * a2;
        }
        Braid::B1Inv => {
            out[0] = &(a1 * a2) * &inv(a1);
            out[1] = a1.clone();
        }
        Braid::B2 => {
            out[1] = a3.clone();
            out[2] = &(&inv(a3) * a2) * a3;
        }
        Braid::B2Inv => {
            out[1] = &(a2 * a3) * &inv(a2);
            out[2] = a2.clone();
        }
    }
    out
}

/// The braid action on tuples of length at least 3 (generators act on the first three).
pub fn braid(t: &MatrixTuple, word: &[Braid]) -> Result<MatrixTuple, MonodromyError> {
    if t.len() < 3 {
        return Err(MonodromyError::Shape("braid action needs at least three generators".into()));
    }
    let mut m = t.matrices().to_vec();
    for &b in word {
        m = braid_step(&m, b);
    }
    Ok(MatrixTuple { matrices: m })
}

fn braid_fricke_step(f: &FrickeData, b: Braid) -> FrickeData {
    let [a1, a2, a3, a4] = &f.a;
    let (x, y, z) = (&f.x, &f.y, &f.z);
    match b {
        Braid::B1 => {
            let zt = &(&(&(a1 * a3) + &(a2 * a4)) - z) - &(x * y);
            FrickeData::new([a2.clone(), a1.clone(), a3.clone(), a4.clone()], x.clone(), zt, y.clone())
        }
        Braid::B1Inv => {
            let yt = &(&(&(a2 * a3) + &(a1 * a4)) - y) - &(x * z);
            FrickeData::new([a2.clone(), a1.clone(), a3.clone(), a4.clone()], x.clone(), z.clone(), yt)
        }
        Braid::B2 => {
            let xt = &(&(&(a1 * a2) + &(a3 * a4)) - x) - &(y * z);
            FrickeData::new([a1.clone(), a3.clone(), a2.clone(), a4.clone()], z.clone(), y.clone(), xt)
        }
        Braid::B2Inv => {
            let zt = &(&(&(a1 * a3) + &(a2 * a4)) - z) - &(x * y);
            FrickeData::new([a1.clone(), a3.clone(), a2.clone(), a4.clone()], zt, y.clone(), x.clone())
        }
    }
}

/// The braid action induced on Fricke coordinates.
pub fn braid_fricke(f: &FrickeData, word: &[Braid]) -> FrickeData {
    word.iter().fold(f.clone(), |acc, &b| braid_fricke_step(&acc, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n6() -> MatrixTuple {
        MatrixTuple::new(vec![
            Matrix::from_ints(&[&[1, 0], &[-6, 1]]),
            Matrix::from_ints(&[&[-5, 2], &[-18, 7]]),
            Matrix::from_ints(&[&[-5, 3], &[-12, 7]]),
            Matrix::from_ints(&[&[1, 1], &[0, 1]]),
        ])
        .unwrap()
    }

    #[test]
    fn fricke_examples() {
        let id = MatrixTuple::identity(4, 2);
        assert_eq!(fricke_params(&id).unwrap(), FrickeData::from_ints([2; 7]));
        assert!(fricke_residual(&FrickeData::from_ints([2; 7])).is_zero());
        assert_eq!(fricke_residual(&FrickeData::from_ints([0, 0, 0, 0, 2, 2, 2])), Scalar::from(16));
        let f = fricke_params(&n6()).unwrap();
        assert_eq!(f, FrickeData::from_ints([2, 2, 2, 2, -10, -4, -16]));
        assert!(fricke_residual(&f).is_zero());
    }

    #[test]
    fn braid_examples() {
        let t = n6();
        let f = fricke_params(&t).unwrap();
        assert_eq!(braid_fricke(&f, &[Braid::B1]), FrickeData::from_ints([2, 2, 2, 2, -10, -16, -4]));
        assert_eq!(braid_fricke(&f, &[Braid::B2]), FrickeData::from_ints([2, 2, 2, 2, -16, -4, -46]));
        for w in [vec![Braid::B1], vec![Braid::B2], vec![Braid::B1Inv], vec![Braid::B2Inv]] {
            let bt = braid(&t, &w).unwrap();
            assert!(bt.product().is_identity());
            assert_eq!(fricke_params(&bt).unwrap(), braid_fricke(&f, &w));
        }
        let id = MatrixTuple::identity(4, 2);
        assert_eq!(braid(&id, &parse_word("b1 b2 b1^-1").unwrap()).unwrap(), id);
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("b1, b2^-1 B1").unwrap(), vec![Braid::B1, Braid::B2Inv, Braid::B1]);
        assert!(parse_word("b3").is_err());
        let t = n6();
        let w = parse_word("b1 b2 b2^-1 b1^-1").unwrap();
        assert_eq!(braid(&t, &w).unwrap(), t);
    }

    #[test]
    fn rejects_bad_tuples() {
        let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(MatrixTuple::new(vec![a.clone(), a.clone()]), Err(MonodromyError::ProductNotIdentity));
        assert!(matches!(MatrixTuple::new(vec![Matrix::zeros(2, 2)]), Err(MonodromyError::Singular(1))));
        let t = MatrixTuple::closing(vec![a.clone(), a]).unwrap();
        assert!(fricke_params(&t).is_err());
    }
}
