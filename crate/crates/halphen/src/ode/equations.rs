//! Structured Lamé and Heun equations.

use crate::exactalg::{Poly, Scalar};

use super::{DiffOperator, OdeError};

/// `p y'' + ½p' y' − (ν x − H) y = 0` with `p = 4·p₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LameEquation {
    pub p0: Poly,
    pub nu: Scalar,
    pub h: Scalar,
}

/// `p₀ y'' + λ p₀' y' + (αβ x + H̃) y = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeunEquation {
    pub p0: Poly,
    pub ab: Scalar,
    pub ht: Scalar,
    pub lambda: Scalar,
}

fn check_cubic(p0: &Poly) -> Result<(), OdeError> {
    if p0.degree() != Some(3) || !p0.lc().is_one() {
        return Err(OdeError::Invalid(format!("p0 must be a monic cubic, got {p0}")));
    }
    if !p0.gcd(&p0.derivative()).is_constant() {
        return Err(OdeError::Invalid(format!("p0 must have distinct roots, got {p0}")));
    }
    Ok(())
}

/// `e₁ + e₂ + e₃` for a monic cubic.
pub fn root_sum(p0: &Poly) -> Scalar {
    -p0.coeff(2)
}

/// Scale `s` with `s·c₂ = p₀` monic cubic, plus that `p₀`.
fn monic_leading(op: &DiffOperator, what: &'static str) -> Result<(Scalar, Poly), OdeError> {
    if op.order() != 2 {
        return Err(OdeError::Order { expected: 2, got: op.order() });
    }
    let c2 = op.coeff(2);
    if c2.degree() != Some(3) {
        return Err(OdeError::NotNormalForm(what, "leading coefficient is not cubic".into()));
    }
    let s = c2.lc().inv();
    Ok((s.clone(), c2.scale(&s)))
}

impl LameEquation {
    pub fn new(p0: Poly, nu: Scalar, h: Scalar) -> Result<Self, OdeError> {
        check_cubic(&p0)?;
        Ok(LameEquation { p0, nu, h })
    }

    pub fn p(&self) -> Poly {
        self.p0.scale(&Scalar::from(4))
    }

    pub fn root_sum(&self) -> Scalar {
        root_sum(&self.p0)
    }

    /// Coefficients `[H − νx, ½p', p]` exactly as displayed (leading `4p₀`).
    pub fn coefficients(&self) -> Vec<Poly> {
        let p = self.p();
        vec![
            Poly::new(vec![self.h.clone(), -&self.nu]),
            p.derivative().scale(&Scalar::frac(1, 2)),
            p,
        ]
    }

    pub fn as_operator(&self) -> DiffOperator {
        DiffOperator::new(self.coefficients()).expect("Lamé operator has a cubic leading coefficient")
    }

    pub fn from_operator(op: &DiffOperator) -> Result<Self, OdeError> {
        let (s, p0) = monic_leading(op, "Lamé")?;
        let c1 = op.coeff(1).scale(&s);
        let c0 = op.coeff(0).scale(&s).scale(&Scalar::from(4));
        if c1.scale(&Scalar::from(2)) != p0.derivative() {
            return Err(OdeError::NotNormalForm("Lamé", "first-order coefficient is not ½p'".into()));
        }
        if c0.deg() > 1 {
            return Err(OdeError::NotNormalForm("Lamé", "zeroth-order coefficient is not linear".into()));
        }
        LameEquation::new(p0, -c0.coeff(1), c0.coeff(0))
    }

    /// The two values of `n` with `n(n+1) = ν` (possibly in a quadratic field).
    pub fn n_values(&self) -> Option<[Scalar; 2]> {
        // n = (−1 ± √(1+4ν))/2
        let s = (&Scalar::one() + &(&Scalar::from(4) * &self.nu)).sqrt()?;
        let half = Scalar::frac(1, 2);
        Some([&(&s - &Scalar::one()) * &half, &(-&(&s + &Scalar::one())) * &half])
    }
}

impl HeunEquation {
    pub fn new(p0: Poly, ab: Scalar, ht: Scalar, lambda: Scalar) -> Result<Self, OdeError> {
        check_cubic(&p0)?;
        Ok(HeunEquation { p0, ab, ht, lambda })
    }

    pub fn root_sum(&self) -> Scalar {
        root_sum(&self.p0)
    }

    pub fn coefficients(&self) -> Vec<Poly> {
        vec![
            Poly::new(vec![self.ht.clone(), self.ab.clone()]),
            self.p0.derivative().scale(&self.lambda),
            self.p0.clone(),
        ]
    }

    pub fn as_operator(&self) -> DiffOperator {
        DiffOperator::new(self.coefficients()).expect("Heun operator has a cubic leading coefficient")
    }

    pub fn from_operator(op: &DiffOperator) -> Result<Self, OdeError> {
        let (s, p0) = monic_leading(op, "Heun")?;
        let c1 = op.coeff(1).scale(&s);
        let c0 = op.coeff(0).scale(&s);
        let dp = p0.derivative();
        let lambda = c1.lc() / dp.lc();
        if c1 != dp.scale(&lambda) {
            return Err(OdeError::NotNormalForm("Heun", "first-order coefficient is not λp'".into()));
        }
        if c0.deg() > 1 {
            return Err(OdeError::NotNormalForm("Heun", "zeroth-order coefficient is not linear".into()));
        }
        HeunEquation::new(p0, c0.coeff(1), c0.coeff(0), lambda)
    }
}
