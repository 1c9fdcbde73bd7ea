//! Exact scalars: rationals and elements `a + b·√d` of a single quadratic field.
//!
//! A value with `b = 0` is always stored as a plain rational (`d = 0`), so equality
//! and hashing never depend on which field a rational happened to come from.
//! Combining two values from different quadratic fields panics; callers that take
//! untrusted data check [`common_field`] first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    /// Squarefree radicand; 0 marks a rational value.
    d: i64,
}

pub fn rat(n: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(den))
}

/// Field shared by all values: `Ok(0)` for Q, `Ok(d)` for Q(√d).
pub fn common_field<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Result<i64, (i64, i64)> {
    let mut d = 0;
    for v in values {
        if v.d != 0 {
            if d == 0 {
                d = v.d;
            } else if d != v.d {
                return Err((d, v.d));
            }
        }
    }
    Ok(d)
}

fn join(d1: i64, d2: i64) -> i64 {
    match (d1, d2) {
        (0, d) | (d, 0) => d,
        (x, y) if x == y => x,
        (x, y) => panic!("mixed quadratic extensions Q(sqrt({x})) and Q(sqrt({y}))"),
    }
}

/// Writes `n = f²·s` with `s` squarefree (sign kept in `s`).
/// Trial division is capped; a leftover cofactor is tested for being a perfect square.
pub fn square_split(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut f = BigInt::one();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2u32);
    let cap = BigInt::from(2_000_000u32);
    while &p * &p <= m && p < cap {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                s *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let r = m.sqrt();
    if &r * &r == m {
        f *= r;
    } else {
        s *= m;
    }
    (f, sign * s)
}

/// Exact rational square root, if one exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: Rational::zero(), b: Rational::zero(), d: 0 }
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::zero(), d: 0 }
    }

    pub fn frac(n: i64, den: i64) -> Self {
        Scalar::from_rational(rat(n, den))
    }

    /// `a + b·√d` for any nonzero integer `d`; square factors of `d` are absorbed into `b`.
    pub fn quadratic(a: Rational, b: Rational, d: i64) -> Self {
        if b.is_zero() || d == 0 {
            return Scalar::from_rational(a);
        }
        let (f, s) = square_split(&BigInt::from(d));
        let b = b * Rational::from_integer(f);
        if s.is_one() {
            return Scalar::from_rational(a + b);
        }
        let d = s.to_i64().expect("radicand fits in i64");
        Scalar { a, b, d }
    }

    /// `√d` for an integer `d`.
    pub fn sqrt_int(d: i64) -> Self {
        Scalar::quadratic(Rational::zero(), Rational::one(), d)
    }

    pub fn re_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.b
    }

    /// Radicand of the field this value lives in (0 for rationals).
    pub fn field(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.d == 0 && self.a.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn is_integer(&self) -> bool {
        self.d == 0 && self.a.is_integer()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    /// Real when rational or in a real quadratic field.
    pub fn is_real(&self) -> bool {
        self.d >= 0
    }

    /// Galois conjugate `a − b√d`; complex conjugation when `d < 0`.
    pub fn conj(&self) -> Self {
        Scalar { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(BigInt::from(self.d)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        Scalar { a: &self.a / &n, b: -&self.b / &n, d: self.d }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.inv().pow((-e) as u32)
        }
    }

    /// Square root inside Q or Q(√d) (for rationals, possibly in a new quadratic field).
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.d == 0 {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Scalar::from_rational(r));
            }
            // √(p/q) = √(p·q)/q
            let pq = self.a.numer() * self.a.denom();
            let (f, s) = square_split(&pq);
            let d = s.to_i64()?;
            let b = Rational::new(f, self.a.denom().clone());
            return Some(Scalar::quadratic(Rational::zero(), b, d));
        }
        // (u + v√d)² = self  ⇔  u² + d v² = a, 2uv = b
        let s = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for cand in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if let Some(u) = rational_sqrt(&cand) {
                if u.is_zero() {
                    continue;
                }
                let v = &self.b / (&two * &u);
                return Some(Scalar { a: u, b: v, d: self.d });
            }
        }
        None
    }

    /// Sign of a real value.
    pub fn signum_real(&self) -> Option<i32> {
        if self.d < 0 {
            return None;
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return Some(if sa == 0 { sb } else { sa });
        }
        if sa == 0 {
            return Some(sb);
        }
        // opposite signs: compare a² with d·b²
        let lhs = &self.a * &self.a;
        let rhs = Rational::from_integer(BigInt::from(self.d)) * &self.b * &self.b;
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        })
    }

    /// Order of two real values.
    pub fn cmp_real(&self, other: &Scalar) -> Option<Ordering> {
        if !self.is_real() || !other.is_real() || join_checked(self.d, other.d).is_none() {
            return None;
        }
        (self - other).signum_real().map(|s| s.cmp(&0))
    }
}

fn join_checked(d1: i64, d2: i64) -> Option<i64> {
    match (d1, d2) {
        (0, d) | (d, 0) => Some(d),
        (x, y) if x == y => Some(x),
        _ => None,
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_rational(Rational::from_integer(n))
    }
}

fn norm_tag(a: Rational, b: Rational, d: i64) -> Scalar {
    if b.is_zero() {
        Scalar::from_rational(a)
    } else {
        Scalar { a, b, d }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let d = join(self.d, o.d);
        norm_tag(&self.a + &o.a, &self.b + &o.b, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let d = join(self.d, o.d);
        norm_tag(&self.a - &o.a, &self.b - &o.b, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let d = join(self.d, o.d);
        let dq = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &o.a + dq * &self.b * &o.b;
        let b = &self.a * &o.b + &self.b * &o.a;
        norm_tag(a, b, d)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// `p/q`, or `p/q+r/s*sqrt(d)` for quadratic values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            return f.write_str(&fmt_rational(&self.a));
        }
        let mag = self.b.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{}*", fmt_rational(&mag)) };
        let root = format!("{coeff}sqrt({})", self.d);
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{root}")
            } else {
                f.write_str(&root)
            }
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{sign}{root}", fmt_rational(&self.a))
        }
    }
}
