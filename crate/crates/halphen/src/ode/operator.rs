use std::fmt;

use crate::exactalg::{poly_compose, Poly, RatFunc, Scalar};

use super::OdeError;

/// `Σ cₖ(x) y⁽ᵏ⁾ = 0` with polynomial coefficients.
///
/// Coefficients are stored with their common polynomial gcd removed and scaled to a
/// canonical representative (integer-primitive with positive leading coefficient over
/// Q, monic otherwise), so `==` is equality up to a nonzero scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffOperator {
    coeffs: Vec<Poly>,
}

impl DiffOperator {
    pub fn new(mut coeffs: Vec<Poly>) -> Result<Self, OdeError> {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(OdeError::Degenerate);
        }
        let g = coeffs.iter().fold(Poly::zero(), |g, c| g.gcd(c));
        if !g.is_constant() {
            coeffs = coeffs.iter().map(|c| c.exact_div(&g)).collect();
        }
        let lc = coeffs.last().unwrap().lc().inv();
        coeffs = coeffs.iter().map(|c| c.scale(&lc)).collect();
        if coeffs.iter().all(Poly::is_rational) {
            // integer-primitive; the leading coefficient stays positive
            let all = Poly::new(
                coeffs.iter().flat_map(|c| c.coeffs().iter().cloned()).chain([Scalar::one()]).collect(),
            );
            let (content, _) = all.primitive();
            let inv = content.inv();
            coeffs = coeffs.iter().map(|c| c.scale(&inv)).collect();
            let s = coeffs.last().unwrap().lc();
            if s.signum_real() == Some(-1) {
                coeffs = coeffs.iter().map(|c| -c).collect();
            }
        }
        Ok(DiffOperator { coeffs })
    }

    /// Clears denominators of rational-function coefficients.
    pub fn from_ratfuncs(coeffs: &[RatFunc]) -> Result<Self, OdeError> {
        let l = coeffs.iter().fold(Poly::one(), |acc, r| {
            let g = acc.gcd(r.den());
            &acc * &r.den().exact_div(&g)
        });
        let l = RatFunc::from_poly(l);
        DiffOperator::new(
            coeffs
                .iter()
                .map(|r| {
                    let p = r * &l;
                    debug_assert!(p.is_poly());
                    p.num().scale(&p.den().lc().inv())
                })
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn leading(&self) -> &Poly {
        self.coeffs.last().unwrap()
    }

    pub fn field(&self) -> i64 {
        let all: Vec<Scalar> = self.coeffs.iter().flat_map(|c| c.coeffs().iter().cloned()).collect();
        crate::exactalg::common_field(&all).expect("operator coefficients share one field")
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Poly::is_rational)
    }

    /// `cₖ / cₙ`
    pub fn monic_coeffs(&self) -> Vec<RatFunc> {
        let lead = self.leading();
        self.coeffs.iter().map(|c| RatFunc::new(c.clone(), lead.clone())).collect()
    }

    /// Coefficients rescaled so the leading one equals `lead`, when proportional.
    pub fn with_leading(&self, lead: &Poly) -> Option<Vec<Poly>> {
        let cur = self.leading();
        if cur.degree() != lead.degree() {
            return None;
        }
        let s = lead.lc() / cur.lc();
        (cur.scale(&s) == *lead).then(|| self.coeffs.iter().map(|c| c.scale(&s)).collect())
    }

    /// Operator annihilating `w(t) = y(φ(t))` for every solution `y`.
    pub fn change_variable(&self, phi: &RatFunc) -> Result<DiffOperator, OdeError> {
        let dphi = phi.derivative();
        if dphi.is_zero() {
            return Err(OdeError::Invalid("constant change of variable".into()));
        }
        let inv_dphi = dphi.inv();
        let n = self.order();
        // y⁽ᵏ⁾ = Σⱼ v[k][j] w⁽ʲ⁾
        let mut v: Vec<Vec<RatFunc>> = vec![vec![RatFunc::one()]];
        for k in 0..n {
            let prev = &v[k];
            let mut next = vec![RatFunc::zero(); prev.len() + 1];
            for (j, a) in prev.iter().enumerate() {
                next[j] = &next[j] + &(&a.derivative() * &inv_dphi);
                next[j + 1] = &next[j + 1] + &(a * &inv_dphi);
            }
            v.push(next);
        }
        let c_phi: Vec<RatFunc> = self.coeffs.iter().map(|c| poly_compose(c, phi)).collect();
        let mut out = vec![RatFunc::zero(); n + 1];
        for (k, ck) in c_phi.iter().enumerate() {
            for (j, a) in v[k].iter().enumerate() {
                out[j] = &out[j] + &(ck * a);
            }
        }
        DiffOperator::from_ratfuncs(&out)
    }

    /// Operator annihilating `g·v` for solutions `v`, where `g'/g = r`.
    pub fn gauge(&self, r: &RatFunc) -> Result<DiffOperator, OdeError> {
        let n = self.order();
        // (1/g)⁽ⁱ⁾ = (1/g)·P_i,  P₀ = 1,  P_{i+1} = P_i' − r·P_i
        let mut p = vec![RatFunc::one()];
        for i in 0..n {
            let next = &p[i].derivative() - &(r * &p[i]);
            p.push(next);
        }
        let mut out = vec![RatFunc::zero(); n + 1];
        for (k, ck) in self.coeffs.iter().enumerate() {
            let ck = RatFunc::from_poly(ck.clone());
            for j in 0..=k {
                let term = (&ck * &p[k - j]).scale(&Scalar::from(binomial(k, j)));
                out[j] = &out[j] + &term;
            }
        }
        DiffOperator::from_ratfuncs(&out)
    }

    /// Operator for `y'` when the zeroth coefficient vanishes.
    pub fn reduce_order(&self) -> Option<DiffOperator> {
        if !self.coeffs[0].is_zero() || self.order() < 2 {
            return None;
        }
        DiffOperator::new(self.coeffs[1..].to_vec()).ok()
    }

    pub fn display_coeffs(coeffs: &[Poly]) -> String {
        let mut parts = Vec::new();
        for (k, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let y = match k {
                0 => "y".to_string(),
                1 => "y'".to_string(),
                2 => "y''".to_string(),
                3 => "y'''".to_string(),
                _ => format!("y^({k})"),
            };
            parts.push(format!("({c})*{y}"));
        }
        format!("{} = 0", parts.join(" + "))
    }
}

pub fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&DiffOperator::display_coeffs(&self.coeffs))
    }
}
