//! Belyi maps and pullbacks of the Gauss hypergeometric equation.
//!
//! A pullback is `g(x)·u(j(x))` with `u` a hypergeometric solution and `g = j₂^e` a
//! gauge factor.  Local exponents over `0, 1, ∞` are multiplied by the ramification
//! index and shifted by the order of `g`, which is what [`expected_exponents`] checks.

use rayon::prelude::*;

use crate::data::{BelyiData, BelyiExample, BelyiRow};
use crate::exactalg::{Poly, RatFunc, Scalar};
use crate::ode::{
    for_each_candidate, indicial_at, indicial_at_infinity, match_operators, normalize_heun_with_hints, DiffOperator,
    HeunEquation, MatchWitness, OdeError,
};
use crate::transforms::{inverse_halphen_c, TransformError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PullbackError {
    #[error(transparent)]
    Ode(#[from] OdeError),
    #[error(transparent)]
    Transform(#[from] Box<TransformError>),
    #[error("degenerate map: {0}")]
    Degenerate(String),
    #[error("unknown row {0}")]
    UnknownRow(String),
}

impl From<TransformError> for PullbackError {
    fn from(e: TransformError) -> Self {
        PullbackError::Transform(Box::new(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelyiMap {
    pub j1: Poly,
    pub j2: Poly,
}

impl BelyiMap {
    pub fn new(j1: Poly, j2: Poly) -> Result<Self, PullbackError> {
        if j2.is_zero() {
            return Err(PullbackError::Degenerate("zero denominator".into()));
        }
        if j1.is_constant() && j2.is_constant() {
            return Err(PullbackError::Degenerate("constant map".into()));
        }
        if !j1.gcd(&j2).is_constant() {
            return Err(PullbackError::Degenerate(format!("{j1} and {j2} share a factor")));
        }
        Ok(BelyiMap { j1, j2 })
    }

    pub fn degree(&self) -> usize {
        self.j1.deg().max(self.j2.deg()) as usize
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::new(self.j1.clone(), self.j2.clone())
    }

    /// The polynomials whose roots form the fibers over 0, 1, ∞.
    pub fn fiber_polys(&self) -> [Poly; 3] {
        [self.j1.clone(), &self.j1 - &self.j2, self.j2.clone()]
    }

    /// Squarefree factors of the three fiber polynomials; useful as splitting hints.
    pub fn hints(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for p in self.fiber_polys() {
            if let Ok(sf) = p.squarefree_decompose() {
                out.extend(sf.factors.into_iter().map(|(f, _)| f));
            }
        }
        out
    }
}

/// Fiber multiplicities over 0, 1 and ∞, each sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationData {
    pub over0: Vec<u32>,
    pub over1: Vec<u32>,
    pub over_inf: Vec<u32>,
}

impl RamificationData {
    pub fn fibers(&self) -> [&Vec<u32>; 3] {
        [&self.over0, &self.over1, &self.over_inf]
    }

    pub fn from_printed(p: &[Vec<u32>; 3]) -> Self {
        let s = |v: &Vec<u32>| {
            let mut v = v.clone();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        RamificationData { over0: s(&p[0]), over1: s(&p[1]), over_inf: s(&p[2]) }
    }
}

impl std::fmt::Display for RamificationData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let g = |v: &Vec<u32>| v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}),({}),({})", g(&self.over0), g(&self.over1), g(&self.over_inf))
    }
}

/// One point class of a fiber: the roots of `factor` (or `x = ∞` when `None`), each with
/// ramification index `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPart {
    pub factor: Option<Poly>,
    pub k: u32,
}

/// Fiber parts over 0, 1, ∞.
pub fn fibers(j: &BelyiMap) -> [Vec<FiberPart>; 3] {
    let deg = j.degree() as i64;
    j.fiber_polys().map(|p| {
        let mut parts = Vec::new();
        if let Ok(sf) = p.squarefree_decompose() {
            for (f, m) in sf.factors {
                parts.push(FiberPart { factor: Some(f.monic()), k: m });
            }
        }
        let deficit = deg - p.deg();
        if deficit > 0 {
            parts.push(FiberPart { factor: None, k: deficit as u32 });
        }
        parts
    })
}

pub fn ramification_data(j: &BelyiMap) -> RamificationData {
    let [a, b, c] = fibers(j).map(|parts| {
        let mut v = Vec::new();
        for p in parts {
            let count = p.factor.as_ref().map_or(1, |f| f.deg() as usize);
            v.extend(std::iter::repeat_n(p.k, count));
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    });
    RamificationData { over0: a, over1: b, over_inf: c }
}

/// Riemann–Hurwitz equality: all ramification lies over 0, 1, ∞.
pub fn is_belyi(j: &BelyiMap) -> bool {
    let r = ramification_data(j);
    let deg = j.degree();
    let defect: usize = r.fibers().iter().map(|f| deg - f.len()).sum();
    defect == 2 * deg - 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HGParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl HGParams {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self, PullbackError> {
        if c.is_integer() && c.signum_real() != Some(1) {
            return Err(PullbackError::Degenerate(format!("c = {c} is a nonpositive integer")));
        }
        Ok(HGParams { a, b, c })
    }

    pub fn from_array(p: &[Scalar; 3]) -> Result<Self, PullbackError> {
        HGParams::new(p[0].clone(), p[1].clone(), p[2].clone())
    }

    /// `x(1−x)u'' + (c − (a+b+1)x)u' − ab·u`
    pub fn operator(&self) -> DiffOperator {
        let s = &(&self.a + &self.b) + &Scalar::one();
        DiffOperator::new(vec![
            Poly::constant(-(&self.a * &self.b)),
            Poly::new(vec![self.c.clone(), -s]),
            Poly::from_ints(&[0, 1, -1]),
        ])
        .expect("hypergeometric operator")
    }

    /// Local exponents over 0, 1, ∞.
    pub fn exponents(&self) -> [[Scalar; 2]; 3] {
        let one = Scalar::one();
        [
            [Scalar::zero(), &one - &self.c],
            [Scalar::zero(), &(&self.c - &self.a) - &self.b],
            [self.a.clone(), self.b.clone()],
        ]
    }
}

/// Operator for `j₂^e · u(j(x))`.
pub fn pullback_operator_gauged(h: &HGParams, j: &BelyiMap, e: &Scalar) -> Result<DiffOperator, PullbackError> {
    let op = h.operator().change_variable(&j.as_ratfunc())?;
    if e.is_zero() || j.j2.is_constant() {
        return Ok(op);
    }
    let r = RatFunc::new(j.j2.derivative().scale(e), j.j2.clone());
    Ok(op.gauge(&r)?)
}

/// Operator for `j₂^{−a} · u(j(x))`.
pub fn pullback_operator(h: &HGParams, j: &BelyiMap) -> Result<DiffOperator, PullbackError> {
    pullback_operator_gauged(h, j, &-&h.a)
}

fn monic_from_roots(rs: &[Scalar]) -> Poly {
    rs.iter().fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r))
}

/// Expected indicial polynomial at every fiber part, for the gauge `j₂^e`.
pub fn expected_exponents(h: &HGParams, j: &BelyiMap, e: &Scalar) -> Vec<(FiberPart, [Scalar; 2])> {
    let ex = h.exponents();
    let mut out = Vec::new();
    for (s, parts) in fibers(j).into_iter().enumerate() {
        for part in parts {
            let k = Scalar::from(part.k as i64);
            let shift = match (&part.factor, s) {
                (Some(_), 2) => e * &k,
                (Some(_), _) => Scalar::zero(),
                (None, _) => -(e * &Scalar::from(j.j2.deg())),
            };
            let v = [&(&ex[s][0] * &k) + &shift, &(&ex[s][1] * &k) + &shift];
            out.push((part, v));
        }
    }
    // x = ∞ outside the three fibers is an ordinary point of u ∘ j, shifted by the gauge
    if !out.iter().any(|(p, _)| p.factor.is_none()) {
        let shift = -(e * &Scalar::from(j.j2.deg()));
        out.push((FiberPart { factor: None, k: 1 }, [shift.clone(), &shift + &Scalar::one()]));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentCheck {
    /// Fiber parts whose indicial polynomial differs from the prediction.
    pub mismatches: Vec<(Option<Poly>, Poly, Poly)>,
    /// Singular factors of the operator outside every fiber.
    pub unexpected: Vec<Poly>,
    /// Fiber parts with integer exponents other than `{0, 1}` (possible apparent points).
    pub apparent: Vec<(Option<Poly>, [Scalar; 2])>,
}

impl ExponentCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty() && self.unexpected.is_empty()
    }
}

pub fn check_exponents(op: &DiffOperator, h: &HGParams, j: &BelyiMap, e: &Scalar) -> Result<ExponentCheck, PullbackError> {
    let mut mismatches = Vec::new();
    let mut apparent = Vec::new();
    for (part, ex) in expected_exponents(h, j, e) {
        let want = monic_from_roots(&ex);
        let got = match &part.factor {
            Some(f) => indicial_at(op, f)?,
            None => indicial_at_infinity(op)?,
        };
        if got != want {
            mismatches.push((part.factor.clone(), want, got));
        }
        let d = &ex[1] - &ex[0];
        let ordinary = ex[0].is_zero() && ex[1].is_one() || ex[1].is_zero() && ex[0].is_one();
        if ex.iter().all(|v| v.is_integer()) && !d.is_zero() && !ordinary {
            apparent.push((part.factor, ex));
        }
    }
    let all = j.fiber_polys().iter().fold(Poly::one(), |acc, p| &acc * p).squarefree_part();
    let lc = op.leading().squarefree_part();
    let stray = lc.exact_div(&lc.gcd(&all));
    let unexpected = if stray.is_constant() { vec![] } else { vec![stray.monic()] };
    Ok(ExponentCheck { mismatches, unexpected, apparent })
}

// ---------------------------------------------------------------- row verification

#[derive(Clone, Debug)]
pub struct OperatorComparison {
    /// Gauge exponent `e` of `j₂^e` used for the pullback.
    pub gauge_exponent: Scalar,
    pub operator: DiffOperator,
    /// Equal to the printed operator up to a scalar, with no change of variable.
    pub literal: bool,
    /// Möbius map and gauge identifying the pullback with the printed operator.
    pub witness: Option<MatchWitness>,
    /// If no witness exists: the pullback brought to the printed singular points and
    /// exponents, as a Heun equation, so that the accessory-parameter gap can be read off.
    pub nearest: Option<HeunEquation>,
}

#[derive(Clone, Debug)]
pub struct RowReport {
    pub row: String,
    pub ramification: RamificationData,
    pub printed_ramification: RamificationData,
    pub is_belyi: bool,
    pub exponents: ExponentCheck,
    pub printed: HeunEquation,
    pub comparisons: Vec<OperatorComparison>,
    pub note: Option<String>,
}

impl RowReport {
    pub fn ramification_ok(&self) -> bool {
        self.ramification == self.printed_ramification
    }

    pub fn operator_ok(&self) -> bool {
        self.comparisons.iter().any(|c| c.literal || c.witness.is_some())
    }

    pub fn pass(&self) -> bool {
        self.ramification_ok() && self.is_belyi && self.exponents.ok() && self.operator_ok()
    }

    /// `H̃(printed) − H̃(pullback)` when the operators differ only in the accessory parameter.
    pub fn accessory_gap(&self) -> Option<Scalar> {
        self.comparisons.iter().find_map(|c| c.nearest.as_ref().map(|h| &self.printed.ht - &h.ht))
    }
}

fn heun_shape_matches(cand: &DiffOperator, dst: &HeunEquation) -> Option<HeunEquation> {
    let h = HeunEquation::from_operator(cand).ok()?;
    (h.p0 == dst.p0 && h.lambda == dst.lambda && h.ab == dst.ab).then_some(h)
}

fn compare(
    op: DiffOperator,
    e: Scalar,
    j: &BelyiMap,
    printed: &HeunEquation,
) -> Result<OperatorComparison, PullbackError> {
    let dst = printed.as_operator();
    let literal = op == dst;
    let hints = j.hints();
    let witness = if literal { None } else { match_operators(&op, &dst, &hints, &[])? };
    let mut nearest = None;
    if !literal && witness.is_none() {
        for_each_candidate(&op, &dst, &hints, &[], |_, cand| {
            nearest = heun_shape_matches(&cand, printed);
            nearest.is_some()
        })?;
    }
    Ok(OperatorComparison { gauge_exponent: e, operator: op, literal, witness, nearest })
}

/// Checks one Belyi row: ramification, Riemann–Hurwitz, local exponents and the printed
/// Heun operator.  The gauge `j₂^{−a}` is tried first; since `₂F₁(a,b,c)` is symmetric in
/// `a, b`, the gauge `j₂^{−b}` is tried as well.
pub fn verify_row(row: &BelyiRow) -> Result<RowReport, PullbackError> {
    let j = BelyiMap::new(row.j1.clone(), row.j2.clone())?;
    let h = HGParams::from_array(&row.params)?;
    let ramification = ramification_data(&j);
    let mut exps = vec![-&h.a];
    if h.b != h.a {
        exps.push(-&h.b);
    }
    let mut comparisons = Vec::new();
    let mut exponents = None;
    for e in exps {
        let op = pullback_operator_gauged(&h, &j, &e)?;
        if exponents.is_none() {
            exponents = Some(check_exponents(&op, &h, &j, &e)?);
        }
        let c = compare(op, e, &j, &row.heun)?;
        let done = c.literal || c.witness.is_some();
        comparisons.push(c);
        if done {
            break;
        }
    }
    Ok(RowReport {
        row: row.id.clone(),
        printed_ramification: RamificationData::from_printed(&row.ramification),
        is_belyi: is_belyi(&j),
        ramification,
        exponents: exponents.expect("at least one gauge"),
        printed: row.heun.clone(),
        comparisons,
        note: row.note.clone(),
    })
}

pub fn verify_pullback_row(data: &BelyiData, row_id: &str) -> Result<RowReport, PullbackError> {
    let row = data.rows.iter().find(|r| r.id == row_id).ok_or_else(|| PullbackError::UnknownRow(row_id.into()))?;
    verify_row(row)
}

pub fn verify_all_rows(data: &BelyiData) -> Vec<Result<RowReport, PullbackError>> {
    data.rows.par_iter().map(verify_row).collect()
}

#[derive(Clone, Debug)]
pub struct ExampleReport {
    pub ramification: RamificationData,
    pub printed_ramification: RamificationData,
    pub is_belyi: bool,
    pub exponents: ExponentCheck,
    /// Cross-ratio values of the four-point normalizations.
    pub t_values: Vec<Scalar>,
    pub expected_t: Scalar,
    /// Normalization at the printed `t`, matched to the printed Heun operator.
    pub witness: Option<MatchWitness>,
    pub n: Option<Scalar>,
    pub lame: Option<crate::ode::LameEquation>,
    pub expected: BelyiExample,
}

impl ExampleReport {
    pub fn pass(&self) -> bool {
        self.ramification == self.printed_ramification
            && self.is_belyi
            && self.exponents.ok()
            && self.t_values.contains(&self.expected_t)
            && self.witness.is_some()
            && self.n.as_ref() == Some(&self.expected.n)
            && self.lame.as_ref() == Some(&self.expected.lame)
    }
}

/// The pullback with a gauge leaving exactly four singular points, normalized to
/// `0, 1, t, ∞`, matched to the printed Heun operator and sent back through the
/// inverse Halphen transform.
pub fn verify_example(ex: &BelyiExample) -> Result<ExampleReport, PullbackError> {
    let j = BelyiMap::new(ex.j1.clone(), ex.j2.clone())?;
    let h = HGParams::from_array(&ex.params)?;
    let op = pullback_operator_gauged(&h, &j, &ex.gauge_exponent)?;
    let exponents = check_exponents(&op, &h, &j, &ex.gauge_exponent)?;
    let hints = j.hints();
    let normal = normalize_heun_with_hints(&op, &hints)?;
    let mut t_values: Vec<Scalar> = Vec::new();
    for (t, _) in &normal {
        if !t_values.contains(t) {
            t_values.push(t.clone());
        }
    }
    let dst = ex.heun.as_operator();
    let mut witness = None;
    for (t, cand) in &normal {
        if t == &ex.t {
            if let Some(w) = match_operators(cand, &dst, &[], &[])? {
                witness = Some(w);
                break;
            }
        }
    }
    let (n, lame) = match witness {
        Some(_) => {
            let (n, l) = inverse_halphen_c(&ex.heun)?;
            (Some(n), Some(l))
        }
        None => (None, None),
    };
    Ok(ExampleReport {
        ramification: ramification_data(&j),
        printed_ramification: RamificationData::from_printed(&ex.ramification),
        is_belyi: is_belyi(&j),
        exponents,
        t_values,
        expected_t: ex.t.clone(),
        witness,
        n,
        lame,
        expected: ex.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    fn map(j1: &[i64], j2: &[i64]) -> BelyiMap {
        BelyiMap::new(Poly::from_ints(j1), Poly::from_ints(j2)).unwrap()
    }

    #[test]
    fn small_maps() {
        let id = map(&[0, 1], &[1]);
        let r = ramification_data(&id);
        assert_eq!((r.over0, r.over1, r.over_inf), (vec![1], vec![1], vec![1]));
        assert!(is_belyi(&id));
        assert!(is_belyi(&map(&[0, 0, 1], &[1])));
        assert!(!is_belyi(&map(&[0, -3, 0, 1], &[1])));
        assert!(BelyiMap::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[0, 2])).is_err());
    }

    #[test]
    fn identity_pullback_is_hypergeometric() {
        let h = HGParams::new(Scalar::frac(1, 2), Scalar::frac(1, 3), Scalar::frac(1, 4)).unwrap();
        let id = map(&[0, 1], &[1]);
        assert_eq!(pullback_operator(&h, &id).unwrap(), h.operator());
        assert!(check_exponents(&h.operator(), &h, &id, &Scalar::zero()).unwrap().ok());
    }

    #[test]
    fn printed_ramification() {
        let d = data::belyi().unwrap();
        for row in &d.rows {
            let j = BelyiMap::new(row.j1.clone(), row.j2.clone()).unwrap();
            assert_eq!(ramification_data(&j), RamificationData::from_printed(&row.ramification), "row {}", row.id);
            assert!(is_belyi(&j));
        }
    }
}
