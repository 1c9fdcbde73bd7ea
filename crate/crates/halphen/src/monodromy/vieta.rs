//! Integer triples `nᵢ` of unipotent tuples (`a₁ = a₂ = a₃ = 2`) and their Vieta jumps.
//!
//! With `a = 2 − a₄` the Fricke relation becomes `(Σnᵢ + a)² + Πnᵢ = 0` where
//! `x = n₁ + 2` etc.  For `a₄ = 2` the triple is written `x = N·n₁ + 2` with
//! `gcd(n₁, n₂, n₃) = 1`, giving `(Σnᵢ)² + N·Πnᵢ = 0`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use super::MonodromyError;
use crate::exactalg::Scalar;

pub type Triple = [i64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleCase {
    /// `a₄ = 2`, scaled by `N`
    I { n: u32 },
    /// `a₄ = 0`
    II,
    /// `a₄ = 1`
    III,
    /// `a₄ = −1`
    IV,
}

impl TripleCase {
    pub fn a4(self) -> i64 {
        match self {
            TripleCase::I { .. } => 2,
            TripleCase::II => 0,
            TripleCase::III => 1,
            TripleCase::IV => -1,
        }
    }

    /// `a = 2 − a₄`
    pub fn shift(self) -> i64 {
        2 - self.a4()
    }

    pub fn scale(self) -> i64 {
        match self {
            TripleCase::I { n } => n as i64,
            _ => 1,
        }
    }

    pub fn from_a4(a4: i64, n: u32) -> Option<Self> {
        match a4 {
            2 => Some(TripleCase::I { n }),
            0 => Some(TripleCase::II),
            1 => Some(TripleCase::III),
            -1 => Some(TripleCase::IV),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TripleCase::I { .. } => "i",
            TripleCase::II => "ii",
            TripleCase::III => "iii",
            TripleCase::IV => "iv",
        }
    }

    /// Parses `i`, `ii`, `iii`, `iv` (case i needs `n`).
    pub fn parse(name: &str, n: Option<u32>) -> Result<Self, MonodromyError> {
        match (name, n) {
            ("i", Some(n)) if n > 0 => Ok(TripleCase::I { n }),
            ("i", _) => Err(MonodromyError::Precondition("case i needs N >= 1".into())),
            ("ii", _) => Ok(TripleCase::II),
            ("iii", _) => Ok(TripleCase::III),
            ("iv", _) => Ok(TripleCase::IV),
            _ => Err(MonodromyError::Precondition(format!("unknown case {name:?}"))),
        }
    }
}

impl fmt::Display for TripleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleCase::I { n } => write!(f, "i (N={n})"),
            other => f.write_str(other.name()),
        }
    }
}

fn residual_i128(n: &Triple, case: TripleCase) -> i128 {
    let [a, b, c] = n.map(i128::from);
    let s = a + b + c;
    match case {
        TripleCase::I { n: big_n } => s * s + big_n as i128 * a * b * c,
        _ => {
            let t = s + case.shift() as i128;
            t * t + a * b * c
        }
    }
}

pub fn unipotent_residual(n: &Triple, case: TripleCase) -> Scalar {
    Scalar::from(num_bigint::BigInt::from(residual_i128(n, case)))
}

/// Other root of the quadratic in coordinate `i`, via the sum of the roots (no division).
fn partner_unchecked(n: &Triple, i: usize, case: TripleCase) -> Triple {
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let lin = match case {
        TripleCase::I { n: big_n } => 2 * (n[j] + n[k]) + big_n as i64 * n[j] * n[k],
        _ => 2 * (n[j] + n[k] + case.shift()) + n[j] * n[k],
    };
    let mut m = *n;
    m[i] = -lin - n[i];
    m
}

/// Replaces `nᵢ` by the second root: `nᵢnᵢ' = (n_j + n_k)²` in case i and
/// `(n_j + n_k + a)²` otherwise.
pub fn vieta_partner(n: &Triple, i: usize, case: TripleCase) -> Result<Triple, MonodromyError> {
    if i > 2 {
        return Err(MonodromyError::Precondition(format!("coordinate index {i} out of range")));
    }
    if n[i] == 0 {
        return Err(MonodromyError::ZeroCoordinate(i + 1));
    }
    let r = residual_i128(n, case);
    if r != 0 {
        return Err(MonodromyError::Residual(unipotent_residual(n, case)));
    }
    let (j, k) = [(1, 2), (0, 2), (0, 1)][i];
    let s = (n[j] + n[k] + if matches!(case, TripleCase::I { .. }) { 0 } else { case.shift() }) as i128;
    let (q, rem) = (s * s).div_rem(&(n[i] as i128));
    debug_assert_eq!(rem, 0);
    let mut m = *n;
    m[i] = q as i64;
    debug_assert_eq!(m, partner_unchecked(n, i, case));
    Ok(m)
}

fn weight(n: &Triple) -> i64 {
    n.iter().map(|v| v.abs()).sum()
}

fn sorted(mut n: Triple) -> Triple {
    n.sort_by_key(|v| (v.abs(), *v));
    n
}

/// No single jump lowers `|n₁| + |n₂| + |n₃|`.
pub fn is_jump_fixed(n: &Triple, case: TripleCase) -> bool {
    let w = weight(n);
    (0..3).all(|i| weight(&partner_unchecked(n, i, case)) >= w)
}

/// Jumps while the weight strictly drops; returns the triple sorted by absolute value.
pub fn descend_minimal(n: &Triple, case: TripleCase) -> Result<Triple, MonodromyError> {
    if residual_i128(n, case) != 0 {
        return Err(MonodromyError::Residual(unipotent_residual(n, case)));
    }
    let mut cur = *n;
    loop {
        let w = weight(&cur);
        let next = (0..3)
            .map(|i| partner_unchecked(&cur, i, case))
            .filter(|m| weight(m) < w)
            .min_by_key(weight);
        match next {
            Some(m) => cur = m,
            None => return Ok(sorted(cur)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalTriple {
    pub case: TripleCase,
    pub triple: Triple,
}

impl fmt::Display for MinimalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.triple;
        match self.case {
            TripleCase::I { n } => write!(f, "N={n} ({a},{b},{c})"),
            _ => write!(f, "({a},{b},{c})"),
        }
    }
}

/// Largest `N` with negative solutions in case i: `n₁ ≥ −9/N` forces `N ≤ 9`.
pub const MAX_N: u32 = 9;

/// All jump-fixed negative triples with `|nᵢ| ≤ bound` and zero residual, deduplicated
/// by sorting.  `case` only selects the family; for case i every `N ≤ 9` is searched.
pub fn enumerate_minimal(case: TripleCase, bound: u32) -> Vec<MinimalTriple> {
    let cases: Vec<TripleCase> = match case {
        TripleCase::I { .. } => (1..=MAX_N).map(|n| TripleCase::I { n }).collect(),
        c => vec![c],
    };
    let b = bound as i64;
    let found: BTreeSet<MinimalTriple> = cases
        .into_par_iter()
        .flat_map_iter(|c| (1..=b).map(move |n1| (c, n1)))
        .flat_map_iter(|(c, n1)| {
            let mut out = Vec::new();
            for n2 in n1..=b {
                for n3 in n2..=b {
                    let t = [-n1, -n2, -n3];
                    if residual_i128(&t, c) != 0 {
                        continue;
                    }
                    if matches!(c, TripleCase::I { .. }) && n1.gcd(&n2).gcd(&n3) != 1 {
                        continue;
                    }
                    if is_jump_fixed(&t, c) {
                        out.push(MinimalTriple { case: c, triple: sorted(t) });
                    }
                }
            }
            out
        })
        .collect();
    let mut out: Vec<MinimalTriple> = found.into_iter().collect();
    out.sort_by_key(|m| (m.case, m.triple.map(i64::abs)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_examples() {
        assert!(unipotent_residual(&[-1, -2, -3], TripleCase::I { n: 6 }).is_zero());
        assert!(unipotent_residual(&[-5, -8, -10], TripleCase::IV).is_zero());
        assert_eq!(unipotent_residual(&[-1, -1, -1], TripleCase::I { n: 3 }), Scalar::from(6));
    }

    #[test]
    fn partner_examples() {
        let i6 = TripleCase::I { n: 6 };
        assert_eq!(vieta_partner(&[-1, -2, -3], 0, i6).unwrap(), [-25, -2, -3]);
        assert_eq!(vieta_partner(&[-5, -8, -10], 2, TripleCase::IV).unwrap(), [-5, -8, -10]);
        assert_eq!(vieta_partner(&[-1, -1, -1], 0, TripleCase::I { n: 9 }).unwrap(), [-4, -1, -1]);
        assert!(matches!(vieta_partner(&[0, -1, -1], 0, i6), Err(MonodromyError::ZeroCoordinate(1))));
        assert!(matches!(vieta_partner(&[-1, -1, -1], 0, i6), Err(MonodromyError::Residual(_))));
    }

    #[test]
    fn descent_examples() {
        let i6 = TripleCase::I { n: 6 };
        assert_eq!(descend_minimal(&[-25, -2, -3], i6).unwrap(), [-1, -2, -3]);
        assert_eq!(descend_minimal(&[-1, -2, -3], i6).unwrap(), [-1, -2, -3]);
        assert_eq!(descend_minimal(&[-4, -1, -1], TripleCase::I { n: 9 }).unwrap(), [-1, -1, -1]);
    }

    #[test]
    fn enumeration_case_iv() {
        let v: Vec<Triple> = enumerate_minimal(TripleCase::IV, 30).into_iter().map(|m| m.triple).collect();
        assert_eq!(v, vec![[-5, -8, -10], [-6, -6, -9]]);
    }
}
