//! Symmetric square, the third-order Euler transform of a Lamé equation, its three
//! second-order specializations (μ = −½, n, −n−1) and the maps between Lamé and Heun
//! normal forms.
//!
//! Everything is emitted in the `p = 4p₀` scaling; operator equality is up to scalar.

use std::fmt;

use rayon::prelude::*;

use crate::data::{self, DataError};
use crate::exactalg::{Poly, RatFunc, Scalar};
use crate::ode::{DiffOperator, HeunEquation, LameEquation, OdeError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error("n(n+1) = {got} differs from nu = {nu}")]
    NotRoot { nu: Scalar, got: Scalar },
    #[error("first-order factor is {0}, not 1: use inverse_halphen_c")]
    UseInverseHalphenC(Scalar),
    #[error("first-order factor 1/2 gives n = 0, which is ambiguous with the mu = -1/2 form")]
    DegenerateLambda,
    #[error("not a case-c image: alpha*beta = {ab}, but n(2n-1) = {expected} for n = {n}")]
    NotHalphenImage { n: Scalar, ab: Scalar, expected: Scalar },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalphenCase {
    /// μ = n
    B,
    /// μ = −n−1
    C,
}

fn s(n: i64) -> Scalar {
    Scalar::from(n)
}

/// Third-order operator annihilating all products of two solutions.
pub fn sym_square_2nd(op: &DiffOperator) -> Result<DiffOperator, TransformError> {
    if op.order() != 2 {
        return Err(OdeError::Order { expected: 2, got: op.order() }.into());
    }
    let m = op.monic_coeffs();
    let (q1, q2) = (&m[1], &m[0]);
    let c = |k: i64| RatFunc::constant(s(k));
    let c0 = &c(2) * &(&q2.derivative() + &(&c(2) * &(q1 * q2)));
    let c1 = &(&q1.derivative() + &(&c(4) * q2)) + &(&c(2) * &(q1 * q1));
    let c2 = &c(3) * q1;
    Ok(DiffOperator::from_ratfuncs(&[c0, c1, c2, RatFunc::one()])?)
}

/// Lamé symmetric square in closed form: `p y''' + (3/2)p' y'' + (p''/2 − 4(νx − H)) y' − 2ν y`.
pub fn lame_sym_square_coefficients(eq: &LameEquation) -> Vec<Poly> {
    let p = eq.p();
    let lin = Poly::new(vec![-&eq.h, eq.nu.clone()]);
    vec![
        Poly::constant(&s(-2) * &eq.nu),
        &p.derivative().derivative().scale(&Scalar::frac(1, 2)) - &lin.scale(&s(4)),
        p.derivative().scale(&Scalar::frac(3, 2)),
        p,
    ]
}

/// `r₁ = 12(μ+1)²x − 4(μ+1)²Σe − 4νx + 4H`
pub fn r1(eq: &LameEquation, mu: &Scalar) -> Poly {
    let m1 = (mu + &Scalar::one()).pow(2);
    let c0 = &(&s(-4) * &(&m1 * &eq.root_sum())) + &(&s(4) * &eq.h);
    let c1 = &(&s(12) * &m1) - &(&s(4) * &eq.nu);
    Poly::new(vec![c0, c1])
}

/// `r₁` written as the integral-transform computation produces it:
/// `4(6x − 2Σe)(μ(μ−1)/2 + 3μ/2 + 1/2) − 4(νx − H)`.
pub fn r1_integral_form(eq: &LameEquation, mu: &Scalar) -> Poly {
    let half = Scalar::frac(1, 2);
    let f = &(&(&(mu * &(mu - &Scalar::one())) * &half) + &(&Scalar::frac(3, 2) * mu)) + &half;
    let lin = Poly::new(vec![&s(-2) * &eq.root_sum(), s(6)]).scale(&(&s(4) * &f));
    &lin - &Poly::new(vec![-&eq.h, eq.nu.clone()]).scale(&s(4))
}

/// `r₀ = 4μ³ + 6μ² + 2μ − 4μν − 2ν`
pub fn r0(nu: &Scalar, mu: &Scalar) -> Scalar {
    let terms = [
        &s(4) * &mu.pow(3),
        &s(6) * &mu.pow(2),
        &s(2) * mu,
        &s(-4) * &(mu * nu),
        &s(-2) * nu,
    ];
    terms.into_iter().sum()
}

/// `2(2μ+1)(μ² + μ − ν)`
pub fn r0_factored(nu: &Scalar, mu: &Scalar) -> Scalar {
    let a = &(&s(2) * mu) + &Scalar::one();
    let b = &(&mu.pow(2) + mu) - nu;
    &s(2) * &(&a * &b)
}

/// Coefficients `[r₀, r₁, (3/2+μ)p', p]` of the Euler transform of the symmetric square.
pub fn euler_coefficients(eq: &LameEquation, mu: &Scalar) -> Vec<Poly> {
    let p = eq.p();
    vec![
        Poly::constant(r0(&eq.nu, mu)),
        r1(eq, mu),
        p.derivative().scale(&(&Scalar::frac(3, 2) + mu)),
        p,
    ]
}

pub fn euler_third_order(eq: &LameEquation, mu: &Scalar) -> DiffOperator {
    DiffOperator::new(euler_coefficients(eq, mu)).expect("cubic leading coefficient")
}

/// `[4H − Σe − (4ν−3)x, p', p]`
pub fn halphen_a_coefficients(eq: &LameEquation) -> Vec<Poly> {
    let p = eq.p();
    let c0 = Poly::new(vec![&(&s(4) * &eq.h) - &eq.root_sum(), &s(3) - &(&s(4) * &eq.nu)]);
    vec![c0, p.derivative(), p]
}

/// Case μ = −½ of the Euler transform.
pub fn halphen_a(eq: &LameEquation) -> DiffOperator {
    DiffOperator::new(halphen_a_coefficients(eq)).expect("cubic leading coefficient")
}

fn check_n(eq: &LameEquation, n: &Scalar) -> Result<(), TransformError> {
    let got = n * &(n + &Scalar::one());
    if got != eq.nu {
        return Err(TransformError::NotRoot { nu: eq.nu.clone(), got });
    }
    Ok(())
}

/// Order-reduced Euler transform at μ = n (case b) or μ = −n−1 (case c), `p = 4p₀` scaling.
pub fn halphen_bc_coefficients(eq: &LameEquation, n: &Scalar, case: HalphenCase) -> Result<Vec<Poly>, TransformError> {
    check_n(eq, n)?;
    let mu = match case {
        HalphenCase::B => n.clone(),
        HalphenCase::C => -&(n + &Scalar::one()),
    };
    let c = euler_coefficients(eq, &mu);
    debug_assert!(c[0].is_zero());
    Ok(c[1..].to_vec())
}

pub fn halphen_bc(eq: &LameEquation, n: &Scalar, case: HalphenCase) -> Result<DiffOperator, TransformError> {
    Ok(DiffOperator::new(halphen_bc_coefficients(eq, n, case)?)?)
}

/// Case c as a closed formula: `p y'' + (½−n)p' y' + (4(H − n²Σe) + 4n(2n−1)x) y`.
pub fn halphen_c_closed_coefficients(eq: &LameEquation, n: &Scalar) -> Vec<Poly> {
    let p = eq.p();
    let n2 = n.pow(2);
    let c0 = Poly::new(vec![
        &s(4) * &(&eq.h - &(&n2 * &eq.root_sum())),
        &s(4) * &(n * &(&(&s(2) * n) - &Scalar::one())),
    ]);
    vec![c0, p.derivative().scale(&(&Scalar::frac(1, 2) - n)), p]
}

/// `ν = 3/4 − αβ`, `H = H̃ + Σe/4` for a Heun equation with λ = 1.
pub fn heun_to_lame(h: &HeunEquation) -> Result<LameEquation, TransformError> {
    if !h.lambda.is_one() {
        return Err(TransformError::UseInverseHalphenC(h.lambda.clone()));
    }
    let nu = &Scalar::frac(3, 4) - &h.ab;
    let hh = &h.ht + &(&h.root_sum() * &Scalar::frac(1, 4));
    Ok(LameEquation::new(h.p0.clone(), nu, hh)?)
}

/// Inverse of [`heun_to_lame`]: the case-a image divided by 4.
pub fn lame_to_heun(l: &LameEquation) -> HeunEquation {
    let ab = &Scalar::frac(3, 4) - &l.nu;
    let ht = &l.h - &(&l.root_sum() * &Scalar::frac(1, 4));
    HeunEquation { p0: l.p0.clone(), ab, ht, lambda: Scalar::one() }
}

/// Lamé data `(n, L)` with `halphen_bc(L, n, C) = h` up to scalar; `n = ½ − λ`.
pub fn inverse_halphen_c(h: &HeunEquation) -> Result<(Scalar, LameEquation), TransformError> {
    let half = Scalar::frac(1, 2);
    if h.lambda == half {
        return Err(TransformError::DegenerateLambda);
    }
    let n = &half - &h.lambda;
    let expected = &n * &(&(&s(2) * &n) - &Scalar::one());
    if expected != h.ab {
        return Err(TransformError::NotHalphenImage { n, ab: h.ab.clone(), expected });
    }
    let nu = &n * &(&n + &Scalar::one());
    let hh = &h.ht + &(&n.pow(2) * &h.root_sum());
    Ok((n, LameEquation::new(h.p0.clone(), nu, hh)?))
}

/// Per-row comparison of a Heun table entry with its Lamé partner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub row: u32,
    /// `heun_to_lame` of the Heun entry, if it applies.
    pub computed: Option<LameEquation>,
    pub expected: Option<LameEquation>,
    /// computed − expected
    pub nu_diff: Option<Scalar>,
    pub h_diff: Option<Scalar>,
    /// `halphen_a(expected)` equals the Heun operator up to scalar.
    pub case_a_match: bool,
}

impl TableRow {
    pub fn pass(&self) -> bool {
        self.computed.is_some() && self.computed == self.expected && self.case_a_match
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: {}", self.row, if self.pass() { "match" } else { "MISMATCH" })?;
        if let Some(l) = &self.computed {
            write!(f, " (nu, H) = ({}, {})", l.nu, l.h)?;
        }
        match (&self.nu_diff, &self.h_diff) {
            (Some(dn), Some(dh)) if !(dn.is_zero() && dh.is_zero()) => write!(f, ", difference (nu, H): ({dn}, {dh})")?,
            (None, _) | (_, None) => f.write_str(", no partner row or transform inapplicable")?,
            _ => {}
        }
        if !self.case_a_match {
            f.write_str(", case-a image differs")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn matched(&self) -> usize {
        self.rows.iter().filter(|r| r.pass()).count()
    }

    pub fn pass(&self) -> bool {
        !self.rows.is_empty() && self.matched() == self.rows.len()
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        write!(f, "{}/{} rows match", self.matched(), self.rows.len())
    }
}

/// Rows are paired by number; each Heun row is mapped to Lamé form and compared exactly,
/// and the case-a transform of the Lamé row is compared with the Heun operator.
pub fn compare_tables(heun: &[(u32, HeunEquation)], lame: &[(u32, LameEquation)]) -> TableReport {
    let mut ids: Vec<u32> = heun.iter().map(|r| r.0).chain(lame.iter().map(|r| r.0)).collect();
    ids.sort_unstable();
    ids.dedup();
    let rows = ids
        .par_iter()
        .map(|&row| {
            let h = heun.iter().find(|r| r.0 == row).map(|r| &r.1);
            let expected = lame.iter().find(|r| r.0 == row).map(|r| r.1.clone());
            let computed = h.and_then(|h| heun_to_lame(h).ok());
            let (nu_diff, h_diff) = match (&computed, &expected) {
                (Some(c), Some(e)) if c.p0 == e.p0 => (Some(&c.nu - &e.nu), Some(&c.h - &e.h)),
                _ => (None, None),
            };
            let case_a_match = match (h, &expected) {
                (Some(h), Some(e)) => halphen_a(e) == h.as_operator(),
                _ => false,
            };
            TableRow { row, computed, expected, nu_diff, h_diff, case_a_match }
        })
        .collect();
    TableReport { rows }
}

/// [`compare_tables`] on the shipped table data.
pub fn reproduce_tables() -> Result<TableReport, DataError> {
    let t = data::tables()?;
    Ok(compare_tables(&t.heun, &t.lame))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::fuchs_holds;

    fn krammer() -> LameEquation {
        LameEquation::new(Poly::from_ints(&[0, 81, -82, 1]), Scalar::frac(-2, 9), Scalar::from(-2)).unwrap()
    }

    #[test]
    fn krammer_case_a() {
        let c = halphen_a_coefficients(&krammer());
        assert_eq!(c[0], Poly::new(vec![Scalar::from(-90), Scalar::frac(35, 9)]));
        assert_eq!(r1(&krammer(), &Scalar::frac(-1, 2)), c[0]);
        assert!(fuchs_holds(&halphen_a(&krammer())));
    }

    #[test]
    fn r0_examples() {
        assert_eq!(r0(&Scalar::from(2), &Scalar::from(3)), Scalar::from(140));
        assert!(r0(&Scalar::frac(7, 5), &Scalar::frac(-1, 2)).is_zero());
    }

    #[test]
    fn sym_square_of_lame_is_closed_form() {
        let l = krammer();
        let a = sym_square_2nd(&l.as_operator()).unwrap();
        assert_eq!(a, DiffOperator::new(lame_sym_square_coefficients(&l)).unwrap());
        let y2 = DiffOperator::new(vec![Poly::zero(), Poly::zero(), Poly::one()]).unwrap();
        assert_eq!(sym_square_2nd(&y2).unwrap().coeffs().len(), 4);
        assert!(sym_square_2nd(&a).is_err());
    }

    #[test]
    fn example_case_c() {
        let p0 = Poly::new(vec![Scalar::zero(), Scalar::frac(32, 27), Scalar::frac(-59, 27), Scalar::one()]);
        let n = Scalar::frac(-1, 6);
        let nu = &n * &(&n + &Scalar::one());
        let l = LameEquation::new(p0.clone(), nu, Scalar::frac(-13, 108)).unwrap();
        let c = halphen_bc_coefficients(&l, &n, HalphenCase::C).unwrap();
        let quarter = Scalar::frac(1, 4);
        assert_eq!(c[1].scale(&quarter), p0.derivative().scale(&Scalar::frac(2, 3)));
        assert_eq!(c[0].scale(&quarter), Poly::new(vec![Scalar::frac(-44, 243), Scalar::frac(2, 9)]));
        let h = HeunEquation::from_operator(&halphen_bc(&l, &n, HalphenCase::C).unwrap()).unwrap();
        let (n2, back) = inverse_halphen_c(&h).unwrap();
        assert_eq!(n2, n);
        assert_eq!(back, l);
    }

    #[test]
    fn heun_lame_rows() {
        let h = HeunEquation::new(Poly::from_ints(&[0, 81, -82, 1]), Scalar::frac(35, 36), Scalar::frac(-45, 2), Scalar::one())
            .unwrap();
        assert_eq!(heun_to_lame(&h).unwrap(), krammer());
        assert_eq!(lame_to_heun(&krammer()), h);
        let mut bad = h.clone();
        bad.lambda = Scalar::frac(2, 3);
        assert!(matches!(heun_to_lame(&bad), Err(TransformError::UseInverseHalphenC(_))));
        bad.lambda = Scalar::frac(1, 2);
        assert_eq!(inverse_halphen_c(&bad), Err(TransformError::DegenerateLambda));
    }

    #[test]
    fn lambda_one_paths_agree() {
        // at n = −½ cases a and c coincide: αβ = 1 forces ν = −¼ on both paths
        let h = HeunEquation::new(Poly::from_ints(&[0, -1, 0, 1]), Scalar::one(), Scalar::zero(), Scalar::one()).unwrap();
        let (_, via_c) = inverse_halphen_c(&h).unwrap();
        assert_eq!(via_c.nu, heun_to_lame(&h).unwrap().nu);
        assert_eq!(via_c.nu, Scalar::frac(-1, 4));
    }

    #[test]
    fn tables_reproduce() {
        let r = reproduce_tables().unwrap();
        assert_eq!(r.rows.len(), 13);
        assert!(r.pass(), "{r}");
        assert!(r.to_string().ends_with("13/13 rows match"));
        let row9 = r.rows.iter().find(|x| x.row == 9).unwrap().computed.clone().unwrap();
        assert_eq!((row9.nu, row9.h), (Scalar::frac(-2, 9), Scalar::from(-2)));
    }

    #[test]
    fn perturbed_row_is_reported() {
        let t = data::tables().unwrap();
        let mut heun = t.heun.clone();
        heun[2].1.ht = &heun[2].1.ht + &Scalar::one();
        let r = compare_tables(&heun, &t.lame);
        assert_eq!(r.matched(), 12);
        let bad = &r.rows[2];
        assert!(!bad.pass() && !bad.case_a_match);
        assert_eq!(bad.nu_diff, Some(Scalar::zero()));
        assert_eq!(bad.h_diff, Some(Scalar::one()));
        assert!(bad.to_string().contains("difference (nu, H): (0, 1)"));
    }
}
