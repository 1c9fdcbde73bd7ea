//! Singular points, indicial polynomials and Riemann schemes.
//!
//! A finite singular point is handled through a squarefree factor `f` of the leading
//! coefficient: the indicial coefficients are computed in `K[x]/(f)`, so conjugate
//! points are treated together without choosing roots.  Factors whose points carry
//! different exponents are split using the minimal polynomial of the offending residue.

use std::fmt;

use crate::exactalg::{common_field, Matrix, Poly, RatFunc, Scalar};

use super::{DiffOperator, OdeError};

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Finite(Scalar),
    Infinity,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(s) => write!(f, "{s}"),
            Point::Infinity => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularPoint {
    Finite(Scalar),
    /// All roots of an irreducible (or at least exponent-homogeneous) factor.
    Factor(Poly),
    Infinity,
}

impl SingularPoint {
    pub fn multiplicity(&self) -> usize {
        match self {
            SingularPoint::Factor(f) => f.degree().unwrap_or(0),
            _ => 1,
        }
    }

    pub fn as_point(&self) -> Option<Point> {
        match self {
            SingularPoint::Finite(s) => Some(Point::Finite(s.clone())),
            SingularPoint::Infinity => Some(Point::Infinity),
            SingularPoint::Factor(_) => None,
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularPoint::Finite(s) => write!(f, "{s}"),
            SingularPoint::Factor(p) => write!(f, "roots of {p}"),
            SingularPoint::Infinity => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeEntry {
    pub point: SingularPoint,
    /// Indicial polynomial in ρ (coefficients in the base field).
    pub indicial: Poly,
    /// Roots of the indicial polynomial with multiplicity; `None` when they do not lie in
    /// a quadratic field reachable from the coefficients.
    pub exponents: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannScheme {
    pub entries: Vec<SchemeEntry>,
}

impl RiemannScheme {
    pub fn entry(&self, p: &SingularPoint) -> Option<&SchemeEntry> {
        self.entries.iter().find(|e| &e.point == p)
    }

    pub fn exponents_at(&self, p: &SingularPoint) -> Option<Vec<Scalar>> {
        self.entry(p)?.exponents.clone()
    }

    /// Points as projective-line points (only when every finite factor is linear).
    pub fn points(&self) -> Option<Vec<Point>> {
        self.entries.iter().map(|e| e.point.as_point()).collect()
    }
}

impl fmt::Display for RiemannScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let ex = match &e.exponents {
                Some(v) => v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
                None => format!("roots of {}", e.indicial.to_string_var("r")),
            };
            writeln!(f, "{}: {{{ex}}}", e.point)?;
        }
        Ok(())
    }
}

/// Falling factorial ρ(ρ−1)…(ρ−k+1).
fn falling(k: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, i| &acc * &Poly::new(vec![Scalar::from(-(i as i64)), Scalar::one()]))
}

/// Indicial coefficients `L_k` at the roots of `f` as residues mod `f`.
fn indicial_residues(op: &DiffOperator, f: &Poly) -> Result<Vec<Poly>, OdeError> {
    let n = op.order();
    let cn = op.leading();
    let m = cn.valuation(f);
    let g = cn.exact_div(&f.pow(m));
    let df = f.derivative();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let ck = op.coeff(k);
        let j = (n - k) as u32;
        if ck.is_zero() {
            out.push(Poly::zero());
            continue;
        }
        let e = ck.valuation(f);
        if m > e + j {
            return Err(OdeError::Irregular(format!("roots of {f}")));
        }
        if m == e + j {
            let h = ck.exact_div(&f.pow(e));
            let den = (&g * &df.pow(j)).rem(f);
            let inv = den
                .inv_mod(f)
                .ok_or_else(|| OdeError::Unsupported(format!("non-invertible residue modulo {f}")))?;
            out.push((&h * &inv).rem(f));
        } else {
            out.push(Poly::zero());
        }
    }
    Ok(out)
}

/// Minimal polynomial of `r` in `K[x]/(f)`.
fn minimal_polynomial(r: &Poly, f: &Poly) -> Poly {
    let m = f.degree().unwrap_or(0);
    let mut powers = vec![Poly::one()];
    for k in 1..=m {
        powers.push((&powers[k - 1] * r).rem(f));
        let cols: Vec<Matrix> = powers
            .iter()
            .map(|p| Matrix::column((0..m).map(|i| p.coeff(i)).collect()))
            .collect();
        let ker = Matrix::hstack(&cols).nullspace();
        if let Some(v) = ker.first() {
            return Poly::new(v.clone()).monic();
        }
    }
    unreachable!("powers up to the degree are always dependent")
}

/// Splits `f` so that every residue is constant on each piece, where possible.
fn split_homogeneous(op: &DiffOperator, f: Poly, out: &mut Vec<Poly>) -> Result<(), OdeError> {
    if f.degree() == Some(1) {
        out.push(f);
        return Ok(());
    }
    let res = indicial_residues(op, &f)?;
    for r in &res {
        if r.is_constant() {
            continue;
        }
        let mp = minimal_polynomial(r, &f);
        for v in value_candidates(&mp) {
            let g = f.gcd(&(r - &Poly::constant(v)));
            if !g.is_constant() && g.degree() != f.degree() {
                split_homogeneous(op, g.clone(), out)?;
                return split_homogeneous(op, f.exact_div(&g), out);
            }
        }
    }
    out.push(f);
    Ok(())
}

fn value_candidates(mp: &Poly) -> Vec<Scalar> {
    if mp.is_rational() {
        mp.rational_roots()
    } else if mp.degree() == Some(1) {
        vec![-mp.coeff(0)]
    } else {
        vec![]
    }
}

/// Roots with multiplicity; `None` if some factor does not split over a quadratic field.
pub fn roots_with_multiplicity(p: &Poly) -> Option<Vec<Scalar>> {
    let sf = p.squarefree_decompose().ok()?;
    let mut out = Vec::new();
    for (f, m) in &sf.factors {
        let rs = f.roots()?;
        if rs.len() != f.degree()? {
            return None;
        }
        for r in rs {
            for _ in 0..*m {
                out.push(r.clone());
            }
        }
    }
    common_field(&out).ok()?;
    Some(out)
}

/// Finite singular factors of an operator, refined by the optional `hints`.
pub fn singular_factors(op: &DiffOperator, hints: &[Poly]) -> Result<Vec<Poly>, OdeError> {
    // one piece per multiplicity in the leading coefficient
    let sf = op.leading().squarefree_decompose().map_err(|e| OdeError::Unsupported(e.to_string()))?;
    let mut pieces: Vec<Poly> = sf.factors.iter().filter(|(f, _)| !f.is_constant()).map(|(f, _)| f.monic()).collect();
    for h in hints {
        if h.is_zero() {
            continue;
        }
        pieces = pieces
            .into_iter()
            .flat_map(|f| {
                let g = f.gcd(h);
                if g.is_constant() || g.degree() == f.degree() {
                    vec![f]
                } else {
                    let q = f.exact_div(&g).monic();
                    vec![g, q]
                }
            })
            .collect();
    }
    // linear pieces for every root found in a quadratic field
    let mut linear = Vec::new();
    for f in pieces {
        let rs = if f.is_rational() { f.rational_roots() } else { vec![] };
        let mut rest = f;
        for r in rs {
            rest = rest.exact_div(&Poly::linear_root(&r));
            linear.push(Poly::linear_root(&r));
        }
        if !rest.is_constant() {
            linear.push(rest.monic());
        }
    }
    let mut out = Vec::new();
    for f in linear {
        split_homogeneous(op, f, &mut out)?;
    }
    Ok(out)
}

/// Indicial polynomial shared by all roots of `f` (monic in ρ).  Ordinary points give
/// `ρ(ρ−1)…(ρ−n+1)`.
pub fn indicial_at(op: &DiffOperator, f: &Poly) -> Result<Poly, OdeError> {
    let f = f.monic();
    let res = indicial_residues(op, &f)?;
    if res.iter().any(|r| !r.is_constant()) {
        return Err(OdeError::Unsupported(format!("exponents differ between the roots of {f}")));
    }
    let mut ind = Poly::zero();
    for (k, r) in res.iter().enumerate() {
        ind = &ind + &falling(k).scale(&r.coeff(0));
    }
    Ok(ind.monic())
}

pub fn indicial_at_infinity(op: &DiffOperator) -> Result<Poly, OdeError> {
    indicial_at(&at_infinity(op)?, &Poly::x()).map_err(|err| match err {
        OdeError::Irregular(_) => OdeError::Irregular("infinity".into()),
        other => other,
    })
}

fn entry_for_factor(op: &DiffOperator, f: &Poly, split_roots: bool) -> Result<Vec<SchemeEntry>, OdeError> {
    let ind = indicial_at(op, f)?;
    let exponents = roots_with_multiplicity(&ind);
    let points: Vec<SingularPoint> = match f.degree() {
        Some(1) => vec![SingularPoint::Finite(-f.coeff(0))],
        _ if split_roots => match f.roots() {
            Some(rs) if rs.len() == f.degree().unwrap() => rs.into_iter().map(SingularPoint::Finite).collect(),
            _ => vec![SingularPoint::Factor(f.clone())],
        },
        _ => vec![SingularPoint::Factor(f.clone())],
    };
    Ok(points
        .into_iter()
        .map(|point| SchemeEntry { point, indicial: ind.clone(), exponents: exponents.clone() })
        .collect())
}

/// The operator in the coordinate `t = 1/x`.
pub fn at_infinity(op: &DiffOperator) -> Result<DiffOperator, OdeError> {
    op.change_variable(&RatFunc::new(Poly::one(), Poly::x()))
}

fn infinity_entry(op: &DiffOperator) -> Result<Option<SchemeEntry>, OdeError> {
    let flipped = at_infinity(op)?;
    if !flipped.leading().eval(&Scalar::zero()).is_zero() {
        return Ok(None);
    }
    let mut e = entry_for_factor(&flipped, &Poly::x(), false)
        .map_err(|err| match err {
            OdeError::Irregular(_) => OdeError::Irregular("infinity".into()),
            other => other,
        })?
        .remove(0);
    e.point = SingularPoint::Infinity;
    Ok(Some(e))
}

fn build_scheme(op: &DiffOperator, hints: &[Poly], split_roots: bool) -> Result<RiemannScheme, OdeError> {
    let mut entries = Vec::new();
    for f in singular_factors(op, hints)? {
        entries.extend(entry_for_factor(op, &f, split_roots)?);
    }
    if let Some(e) = infinity_entry(op)? {
        entries.push(e);
    }
    Ok(RiemannScheme { entries })
}

/// Riemann scheme; irreducible non-linear factors are kept as [`SingularPoint::Factor`].
pub fn riemann_scheme(op: &DiffOperator) -> Result<RiemannScheme, OdeError> {
    build_scheme(op, &[], false)
}

/// Riemann scheme with every singular point made explicit (roots in a quadratic field),
/// using `hints` to separate factors.
pub fn riemann_scheme_split(op: &DiffOperator, hints: &[Poly]) -> Result<RiemannScheme, OdeError> {
    build_scheme(op, hints, true)
}

/// Trace of a residue in `K[x]/(f)`.
fn residue_trace(r: &Poly, f: &Poly) -> Scalar {
    let m = f.degree().unwrap_or(0);
    let mut t = Scalar::zero();
    let mut xi = Poly::one();
    for i in 0..m {
        t += &(&xi * r).rem(f).coeff(i);
        xi = &xi * &Poly::x();
    }
    t
}

/// Σ of all exponents minus `(s−2)·n(n−1)/2`; zero by Fuchs' relation.  Needs no roots:
/// exponent sums come from the two top indicial coefficients.
pub fn fuchs_defect(op: &DiffOperator) -> Result<Scalar, OdeError> {
    let n = op.order() as i64;
    let mut total = Scalar::zero();
    let mut s = 1i64; // infinity is always counted
    // one factor per multiplicity, so the residues are invertible
    let sf = op.leading().squarefree_decompose().map_err(|e| OdeError::Unsupported(e.to_string()))?;
    for (f, _) in &sf.factors {
        if f.is_constant() {
            continue;
        }
        let f = f.monic();
        let res = indicial_residues(op, &f)?;
        // I(ρ) = Σ L_k ρ^(k); the ρ^(n−1) coefficient is L_{n−1} − L_n·n(n−1)/2
        let sum = &Poly::constant(Scalar::from(n * (n - 1) / 2)) - &res[op.order() - 1];
        total += &residue_trace(&sum, &f);
        s += f.deg();
    }
    let flipped = at_infinity(op)?;
    let res = indicial_residues(&flipped, &Poly::x())?;
    total += &(&Scalar::from(n * (n - 1) / 2) - &res[op.order() - 1].coeff(0));
    Ok(total - Scalar::from((s - 2) * n * (n - 1) / 2))
}

/// Sum of exponents at every point, checked against Fuchs' relation.
pub fn fuchs_holds(op: &DiffOperator) -> bool {
    fuchs_defect(op).is_ok_and(|d| d.is_zero())
}
