use crate::exactalg::{common_field, Poly, RatFunc, Scalar};

use super::scheme::{riemann_scheme_split, Point};
use super::{DiffOperator, OdeError};

/// `x ↦ (a·x + b)/(c·x + d)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl MoebiusMap {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self, OdeError> {
        if (&(&a * &d) - &(&b * &c)).is_zero() {
            return Err(OdeError::Invalid("singular Möbius map (ad − bc = 0)".into()));
        }
        Ok(MoebiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MoebiusMap { a: Scalar::one(), b: Scalar::zero(), c: Scalar::zero(), d: Scalar::one() }
    }

    pub fn scaling(s: Scalar) -> Self {
        MoebiusMap { a: s, b: Scalar::zero(), c: Scalar::zero(), d: Scalar::one() }
    }

    pub fn inverse(&self) -> Self {
        MoebiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// `self ∘ other`
    pub fn compose(&self, o: &MoebiusMap) -> Self {
        MoebiusMap {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        match p {
            Point::Infinity if self.c.is_zero() => Point::Infinity,
            Point::Infinity => Point::Finite(&self.a / &self.c),
            Point::Finite(x) => {
                let den = &(&self.c * x) + &self.d;
                if den.is_zero() {
                    Point::Infinity
                } else {
                    Point::Finite((&(&self.a * x) + &self.b) / den)
                }
            }
        }
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::new(
            Poly::new(vec![self.b.clone(), self.a.clone()]),
            Poly::new(vec![self.d.clone(), self.c.clone()]),
        )
    }

    /// The map sending `p0, p1, p_inf` to `0, 1, ∞`.
    pub fn to_standard(p0: &Point, p1: &Point, pinf: &Point) -> Result<Self, OdeError> {
        use Point::*;
        let m = match (p0, p1, pinf) {
            (Finite(a), Finite(b), Infinity) => MoebiusMap::new(Scalar::one(), -a, Scalar::zero(), b - a),
            (Infinity, Finite(b), Finite(c)) => MoebiusMap::new(Scalar::zero(), b - c, Scalar::one(), -c),
            (Finite(a), Infinity, Finite(c)) => MoebiusMap::new(Scalar::one(), -a, Scalar::one(), -c),
            (Finite(a), Finite(b), Finite(c)) => {
                let u = b - c;
                let v = b - a;
                MoebiusMap::new(u.clone(), -(a * &u), v.clone(), -(c * &v))
            }
            _ => Err(OdeError::Invalid("points must be distinct".into())),
        };
        m.map_err(|_| OdeError::Invalid("points must be distinct".into()))
    }

    /// The map sending each `src[i]` to `dst[i]` (three pairs).
    pub fn from_three_pairs(src: [&Point; 3], dst: [&Point; 3]) -> Result<Self, OdeError> {
        let s = MoebiusMap::to_standard(src[0], src[1], src[2])?;
        let t = MoebiusMap::to_standard(dst[0], dst[1], dst[2])?;
        Ok(t.inverse().compose(&s))
    }
}

/// Operator whose solutions are `y ∘ m⁻¹`; singular points move by `m`.
pub fn moebius_transform(op: &DiffOperator, m: &MoebiusMap) -> Result<DiffOperator, OdeError> {
    op.change_variable(&m.inverse().as_ratfunc())
}

pub fn cross_ratio_orbit(t: &Scalar) -> Vec<Scalar> {
    let one = Scalar::one();
    let u = &one - t;
    let mut out = Vec::new();
    for v in [t.clone(), t.inv(), u.clone(), u.inv(), t / &(t - &one), &(t - &one) / t] {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Every normalization of a four-point operator with singular points sent to `0, 1, t, ∞`,
/// one entry per distinct `(t, operator)`.
pub fn normalize_heun(op: &DiffOperator) -> Result<Vec<(Scalar, DiffOperator)>, OdeError> {
    normalize_heun_with_hints(op, &[])
}

pub fn normalize_heun_with_hints(op: &DiffOperator, hints: &[Poly]) -> Result<Vec<(Scalar, DiffOperator)>, OdeError> {
    if op.order() != 2 {
        return Err(OdeError::Order { expected: 2, got: op.order() });
    }
    let scheme = riemann_scheme_split(op, hints)?;
    let pts = scheme
        .points()
        .ok_or_else(|| OdeError::Unsupported("singular points not in a quadratic field".into()))?;
    if pts.len() != 4 {
        return Err(OdeError::PointCount(pts.len()));
    }
    let finite: Vec<Scalar> = pts
        .iter()
        .filter_map(|p| match p {
            Point::Finite(s) => Some(s.clone()),
            Point::Infinity => None,
        })
        .collect();
    common_field(&finite).map_err(|_| OdeError::Unsupported("points in different quadratic fields".into()))?;
    let mut out: Vec<(Scalar, DiffOperator)> = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                if i == j || j == k || i == k {
                    continue;
                }
                let l = 6 - i - j - k;
                let m = MoebiusMap::to_standard(&pts[i], &pts[j], &pts[k])?;
                let Point::Finite(t) = m.apply(&pts[l]) else { unreachable!("distinct points stay distinct") };
                let tr = moebius_transform(op, &m)?;
                if !out.iter().any(|(s, o)| s == &t && o == &tr) {
                    out.push((t, tr));
                }
            }
        }
    }
    Ok(out)
}
