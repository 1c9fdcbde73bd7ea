//! Dense univariate polynomials over [`Scalar`], lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{common_field, Rational, Scalar};
use super::AlgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Scalar>,
}

/// `p = unit · Π fᵢ^mᵢ`, factors ordered by increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Scalar,
    pub factors: Vec<(Poly, u32)>,
}

impl Poly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|s| s.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn constant(s: Scalar) -> Self {
        Poly::new(vec![s])
    }

    pub fn monomial(s: Scalar, k: usize) -> Self {
        let mut c = vec![Scalar::zero(); k];
        c.push(s);
        Poly::new(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&n| Scalar::from(n)).collect())
    }

    /// `x − s`
    pub fn linear_root(s: &Scalar) -> Self {
        Poly::new(vec![-s, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with −1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn field(&self) -> i64 {
        common_field(&self.c).expect("polynomial coefficients share one field")
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(Scalar::is_rational)
    }

    pub fn conj(&self) -> Self {
        Poly::new(self.c.iter().map(Scalar::conj).collect())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * &Scalar::from(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Poly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `self(q(x))`
    pub fn compose(&self, q: &Poly) -> Self {
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(a.clone());
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let t = &r[k + dd] * &inv;
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    let v = &r[k + j] - &(&t * dj);
                    r[k + j] = v;
                }
            }
            q[k] = t;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Division that must be exact.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, p: &Poly) -> bool {
        p.rem(self).is_zero()
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).xgcd(m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    /// Multiplicity of `f` (non-constant) as a factor.
    pub fn valuation(&self, f: &Poly) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = p.div_rem(f);
            if !r.is_zero() {
                return k;
            }
            p = q;
            k += 1;
        }
    }

    /// `(content, primitive)` with `self = content · primitive`.  Rational polynomials
    /// get an integer primitive part with positive leading coefficient; others are made monic.
    pub fn primitive(&self) -> (Scalar, Poly) {
        if self.is_zero() {
            return (Scalar::zero(), Poly::zero());
        }
        if !self.is_rational() {
            return (self.lc(), self.monic());
        }
        let content = rational_content(self.c.iter().map(|s| s.re_part()));
        let content = if self.lc().re_part().is_negative() { -content } else { content };
        let cs = Scalar::from_rational(content);
        (cs.clone(), self.scale(&cs.inv()))
    }

    /// Yun's algorithm.
    pub fn squarefree_decompose(&self) -> Result<SquarefreeDecomposition, AlgError> {
        if self.is_zero() {
            return Err(AlgError::ZeroInput);
        }
        let mut factors = Vec::new();
        if self.deg() > 0 {
            let d = self.derivative();
            let b = self.gcd(&d);
            let mut c = self.exact_div(&b);
            let mut w = &d.exact_div(&b) - &c.derivative();
            let mut i = 1;
            while !c.is_constant() {
                let a = c.gcd(&w);
                if !a.is_constant() {
                    factors.push((a.primitive().1, i));
                }
                c = c.exact_div(&a);
                w = &w.exact_div(&a) - &c.derivative();
                i += 1;
            }
        }
        let mut prod = Poly::one();
        for (f, m) in &factors {
            prod = &prod * &f.pow(*m);
        }
        let unit = self.lc() / prod.lc();
        Ok(SquarefreeDecomposition { unit, factors })
    }

    /// Product of the distinct irreducible factors (primitive form).
    pub fn squarefree_part(&self) -> Poly {
        match self.squarefree_decompose() {
            Ok(sf) => sf.factors.iter().fold(Poly::one(), |acc, (f, _)| &acc * f),
            Err(_) => Poly::zero(),
        }
    }

    /// Distinct rational roots of a rational polynomial (empty for non-rational input).
    pub fn rational_roots(&self) -> Vec<Scalar> {
        if self.is_zero() || !self.is_rational() {
            return vec![];
        }
        let mut out = Vec::new();
        let mut ints = integer_coeffs(&self.squarefree_part());
        if ints[0].is_zero() {
            out.push(Scalar::zero());
            ints.remove(0);
        }
        if ints.len() < 2 {
            return out;
        }
        // y = aₙx turns the roots into integer roots of a monic polynomial
        let n = ints.len() - 1;
        let lead = ints[n].clone();
        let monic: Vec<BigInt> = (0..=n)
            .map(|i| if i == n { BigInt::one() } else { &ints[i] * lead.pow((n - 1 - i) as u32) })
            .collect();
        for y in integer_roots(&monic) {
            out.push(Scalar::from_rational(Rational::new(y, lead.clone())));
        }
        out
    }

    /// All distinct roots, provided the squarefree part splits into rational roots and at
    /// most quadratic pieces whose roots lie in one common field.
    pub fn roots(&self) -> Option<Vec<Scalar>> {
        let mut rest = self.squarefree_part();
        let mut out = Vec::new();
        if rest.is_rational() {
            for r in rest.rational_roots() {
                rest = rest.exact_div(&Poly::linear_root(&r));
                out.push(r);
            }
        }
        match rest.degree()? {
            0 => {}
            1 => out.push(-rest.coeff(0) / rest.coeff(1)),
            2 => out.extend(quadratic_roots(&rest)?),
            _ => return None,
        }
        common_field(&out).ok()?;
        Some(out)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let (neg, mag) = match (a.is_rational(), a.signum_real()) {
                (true, Some(-1)) => (true, -a),
                _ => (false, a.clone()),
            };
            let body = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            let term = match (k, mag.is_one()) {
                (0, _) => body,
                (_, true) if k == 1 => var.to_string(),
                (_, true) => format!("{var}^{k}"),
                (1, false) => format!("{body}*{var}"),
                _ => format!("{body}*{var}^{k}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

fn quadratic_roots(q: &Poly) -> Option<Vec<Scalar>> {
    let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
    let disc = &(&b * &b) - &(&Scalar::from(4) * &(&a * &c));
    let s = disc.sqrt()?;
    let two_a = &Scalar::from(2) * &a;
    Some(vec![(&(-&b) + &s) / &two_a, (&(-&b) - &s) / &two_a])
}

pub(crate) fn rational_content<'a>(it: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for q in it {
        if q.is_zero() {
            continue;
        }
        num = num.gcd(q.numer());
        den = den.lcm(q.denom());
    }
    if num.is_zero() {
        return Rational::one();
    }
    Rational::new(num, den)
}

/// Integer coefficient vector of a rational polynomial, denominators cleared.
fn integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let l = p.c.iter().fold(BigInt::one(), |acc, s| acc.lcm(s.re_part().denom()));
    p.c.iter()
        .map(|s| (s.re_part() * Rational::from_integer(l.clone())).to_integer())
        .collect()
}

/// Integer roots of a squarefree monic integer polynomial, by Sturm bisection.
fn integer_roots(c: &[BigInt]) -> Vec<BigInt> {
    let p = Poly::new(c.iter().cloned().map(Scalar::from).collect());
    let dp = p.derivative();
    let mut sturm = vec![p, dp];
    while !sturm.last().unwrap().is_zero() {
        let k = sturm.len();
        let r = -&sturm[k - 2].rem(&sturm[k - 1]);
        sturm.push(r);
    }
    sturm.pop();
    // positive multiples with integer coefficients keep every sign
    let sturm: Vec<Vec<BigInt>> = sturm.iter().map(integer_coeffs).collect();
    let eval = |q: &[BigInt], t: &BigInt| q.iter().rev().fold(BigInt::zero(), |acc, a| acc * t + a);
    let changes = |t: &BigInt| -> usize {
        let signs: Vec<bool> = sturm.iter().map(|q| eval(q, t)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    // Fujiwara: every root is below 2·max |c_{n−k}|^{1/k}
    let n = c.len() - 1;
    let bound: BigInt = (1..=n).map(|k| c[n - k].abs().nth_root(k as u32) + BigInt::one()).max().unwrap_or_default() * BigInt::from(2) + BigInt::one();
    let mut out = Vec::new();
    // roots in (lo, hi] number V(lo) − V(hi)
    let mut stack = vec![(-bound.clone(), bound.clone(), changes(&-bound.clone()), changes(&bound))];
    let two = BigInt::from(2);
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        if vlo <= vhi {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if eval(c, &hi).is_zero() {
                out.push(hi);
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&two);
        let vmid = changes(&mid);
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|a| -a).collect())
    }
}

macro_rules! forward_owned_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly { (&self).$m(o) }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { self.$m(&o) }
        }
    )*};
}
forward_owned_poly!(Add add, Sub sub, Mul mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}
