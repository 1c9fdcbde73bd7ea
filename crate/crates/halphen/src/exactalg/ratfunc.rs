//! Rational functions `num/den` in lowest terms with monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::Poly;
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let l = den.lc().inv();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(s: Scalar) -> Self {
        RatFunc::from_poly(Poly::constant(s))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    pub fn inv(&self) -> Self {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        RatFunc::new(self.num.scale(s), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `self(r(t))`
    pub fn compose(&self, r: &RatFunc) -> RatFunc {
        &poly_compose(&self.num, r) / &poly_compose(&self.den, r)
    }
}

/// `p(r(t))` for a polynomial `p`.
pub fn poly_compose(p: &Poly, r: &RatFunc) -> RatFunc {
    // homogenize: Σ aᵢ num^i den^(d−i) / den^d
    let Some(d) = p.degree() else { return RatFunc::zero() };
    let mut num = Poly::zero();
    let mut np = Poly::one();
    let dens: Vec<Poly> = {
        let mut v = vec![Poly::one()];
        for k in 1..=d {
            v.push(&v[k - 1] * &r.den);
        }
        v
    };
    for (i, a) in p.coeffs().iter().enumerate() {
        if !a.is_zero() {
            num = &num + &(&np * &dens[d - i]).scale(a);
        }
        np = &np * &r.num;
    }
    RatFunc::new(num, dens[d].clone())
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "rational function division by zero");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned_rf {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc { (&self).$m(o) }
        }
        impl<'a> $tr<RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc { self.$m(&o) }
        }
    )*};
}
forward_owned_rf!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let x = Poly::x();
        let r = RatFunc::new(&x * &Poly::from_ints(&[-1, 1]), Poly::from_ints(&[0, 2]));
        assert_eq!(r.den(), &Poly::one());
        assert_eq!(r.num(), &Poly::new(vec![Scalar::frac(-1, 2), Scalar::frac(1, 2)]));
    }

    #[test]
    fn compose_and_derivative() {
        // 1/x ∘ 1/x = x
        let inv = RatFunc::new(Poly::one(), Poly::x());
        assert_eq!(inv.compose(&inv), RatFunc::x());
        // d/dx (1/x) = −1/x²
        assert_eq!(inv.derivative(), RatFunc::new(Poly::from_ints(&[-1]), Poly::from_ints(&[0, 0, 1])));
        // (x² + 1)(1/(t−1)) = (t² − 2t + 2)/(t−1)²
        let p = Poly::from_ints(&[1, 0, 1]);
        let r = RatFunc::new(Poly::one(), Poly::from_ints(&[-1, 1]));
        assert_eq!(poly_compose(&p, &r), RatFunc::new(Poly::from_ints(&[2, -2, 1]), Poly::from_ints(&[1, -2, 1])));
    }
}
