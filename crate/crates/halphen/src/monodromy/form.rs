//! Invariant hermitian forms of 2×2 tuples, irreducibility, and the form criterion on
//! unipotent trace data.

use std::cmp::Ordering;
use std::fmt;

use crate::exactalg::{Matrix, Scalar};

use super::{FrickeData, MatrixTuple, MonodromyError};

pub fn hermitian_conjugate(a: &Matrix) -> Matrix {
    a.adjoint()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    Definite,
    Indefinite,
    Degenerate,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Definite => "definite",
            Signature::Indefinite => "indefinite",
            Signature::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantForm {
    /// Dimension of the real solution space of `A†HA = H`.
    pub dimension: usize,
    /// A basis element (the first one), if any.
    pub form: Option<Matrix>,
    pub signature: Signature,
}

/// Real basis of the 2×2 hermitian matrices over `Q(√d)`, `d < 0`:
/// `E₁₁, E₁₂ + E₂₁, E₂₂, √d·(E₁₂ − E₂₁)`.
fn hermitian_basis(d: i64) -> [Matrix; 4] {
    let s = Scalar::sqrt_int(d);
    let z = Scalar::zero;
    [
        Matrix::from_ints(&[&[1, 0], &[0, 0]]),
        Matrix::from_ints(&[&[0, 1], &[1, 0]]),
        Matrix::from_ints(&[&[0, 0], &[0, 1]]),
        Matrix::from_rows(vec![vec![z(), s.clone()], vec![-s, z()]]),
    ]
}

/// Solves `Aᵢ†HAᵢ = H` for hermitian `H`.  Rational tuples are treated over `Q(√−1)`;
/// entries in a real quadratic field are unsupported (no complex conjugation).
pub fn invariant_form(t: &MatrixTuple) -> Result<InvariantForm, MonodromyError> {
    if t.dim() != 2 {
        return Err(MonodromyError::Shape("invariant forms are computed for 2×2 tuples".into()));
    }
    let d = match t.field()? {
        0 => -1,
        d if d < 0 => d,
        d => return Err(MonodromyError::Unsupported(format!("entries in the real field Q(sqrt({d}))"))),
    };
    let basis = hermitian_basis(d);
    // one real column per unknown; rows are real and √d parts of every equation entry
    let mut cols: Vec<Vec<Scalar>> = vec![Vec::new(); 4];
    for a in t.matrices() {
        let ad = hermitian_conjugate(a);
        for (k, e) in basis.iter().enumerate() {
            let m = &(&(&ad * e) * a) - e;
            for v in m.entries() {
                cols[k].push(Scalar::from(v.re_part().clone()));
                cols[k].push(Scalar::from(v.sqrt_part().clone()));
            }
        }
    }
    let system = Matrix::hstack(&cols.into_iter().map(Matrix::column).collect::<Vec<_>>());
    let sols = system.nullspace();
    let dimension = sols.len();
    let form = sols.first().map(|v| {
        let v = normalize_sign(v);
        basis.iter().zip(&v).fold(Matrix::zeros(2, 2), |acc, (e, c)| &acc + &e.scale(c))
    });
    let signature = match (&form, dimension) {
        (Some(h), 1) => match h.det().cmp_real(&Scalar::zero()) {
            Some(Ordering::Greater) => Signature::Definite,
            Some(Ordering::Less) => Signature::Indefinite,
            _ => Signature::Degenerate,
        },
        _ => Signature::Degenerate,
    };
    Ok(InvariantForm { dimension, form, signature })
}

/// First nonzero coordinate made positive.
fn normalize_sign(v: &[Scalar]) -> Vec<Scalar> {
    let neg = v
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.signum_real() == Some(-1));
    if neg {
        v.iter().map(|c| -c.clone()).collect()
    } else {
        v.to_vec()
    }
}

/// A common eigenvector with coordinates in the entries' field (or the quadratic field
/// of an eigenvalue of a rational generator), if one exists there.
pub fn common_eigenvector(t: &MatrixTuple) -> Option<Vec<Scalar>> {
    let is_scalar = |a: &Matrix| a.get(0, 1).is_zero() && a.get(1, 0).is_zero() && a.get(0, 0) == a.get(1, 1);
    let Some(a) = t.matrices().iter().find(|a| !is_scalar(a)) else {
        return Some(vec![Scalar::one(), Scalar::zero()]);
    };
    let tr = a.trace();
    let disc = &(&tr * &tr) - &(&Scalar::from(4) * &a.det());
    let root = disc.sqrt()?;
    let half = Scalar::frac(1, 2);
    for mu in [&(&tr + &root) * &half, &(&tr - &root) * &half] {
        let shifted = a - &Matrix::identity(2).scale(&mu);
        let Some(v) = shifted.nullspace().into_iter().next() else { continue };
        let shared = t.matrices().iter().all(|b| {
            let w = b.mul_vec(&v);
            (&(&v[0] * &w[1]) - &(&v[1] * &w[0])).is_zero()
        });
        if shared {
            return Some(v);
        }
    }
    None
}

/// Irreducible over the algebraic closure: the generated algebra is all of `M₂`
/// (words of length ≤ 3 span a 4-dimensional space).  Equivalent to the absence of a
/// common eigenvector.
pub fn is_irreducible(t: &MatrixTuple) -> bool {
    if t.dim() != 2 {
        return false;
    }
    let gens = t.matrices();
    let mut words = vec![Matrix::identity(2)];
    let mut frontier = words.clone();
    for _ in 0..3 {
        let next: Vec<Matrix> = frontier.iter().flat_map(|w| gens.iter().map(move |g| w * g)).collect();
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let cols: Vec<Matrix> = words.into_iter().map(|w| Matrix::column(w.entries().to_vec())).collect();
    Matrix::hstack(&cols).rank() == 4
}

/// Which clause of the form criterion the traces satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormVerdict {
    /// All of `x, y, z ≤ −2`: the preimage preserves a hermitian form.
    AllAtMostMinusTwo,
    /// All of `x, y, z ∈ [−2, 2]` (of the form `λ + λ̄`, `|λ| = 1`) with `a₄ ≠ 2`.
    AllInInterval,
    NoForm,
}

impl FormVerdict {
    pub fn form_exists(self) -> bool {
        self != FormVerdict::NoForm
    }
}

impl fmt::Display for FormVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormVerdict::AllAtMostMinusTwo => "form exists (all traces <= -2)",
            FormVerdict::AllInInterval => "form exists (all traces in [-2, 2])",
            FormVerdict::NoForm => "no invariant hermitian form for the preimage",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSquares {
    /// `(2 − x, 2 − y, 2 − z)`: the squared traces of the reflection preimage products.
    pub squares: [Scalar; 3],
    pub verdict: FormVerdict,
}

/// For unipotent `B₁, B₂, B₃`: the squared traces of the preimage `A` and whether `A`
/// preserves a hermitian form.  When `B₄` is unipotent too (`a₄ = 2`) only the
/// `≤ −2` clause applies.
pub fn inverse_trace_data(f: &FrickeData) -> Result<TraceSquares, MonodromyError> {
    let two = Scalar::from(2);
    if f.a[..3].iter().any(|a| *a != two) {
        return Err(MonodromyError::Precondition("a1 = a2 = a3 = 2 required".into()));
    }
    let xyz = [&f.x, &f.y, &f.z];
    let squares = xyz.map(|v| &two - v);
    let minus_two = Scalar::from(-2);
    let le = |a: &Scalar, b: &Scalar| matches!(a.cmp_real(b), Some(Ordering::Less | Ordering::Equal));
    let verdict = if xyz.iter().all(|v| le(v, &minus_two)) {
        FormVerdict::AllAtMostMinusTwo
    } else if f.a[3] != two && xyz.iter().all(|v| le(&minus_two, v) && le(v, &two)) {
        FormVerdict::AllInInterval
    } else {
        FormVerdict::NoForm
    };
    Ok(TraceSquares { squares, verdict })
}
