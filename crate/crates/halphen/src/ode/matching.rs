//! Equivalence of second-order operators up to a Möbius change of variable, a gauge
//! factor `Π (x − q)^δ_q` and a scalar.
//!
//! Candidate maps come from bijections between singular points; gauge exponents are
//! forced by the local exponents.  Source points whose exponents differ by one may be
//! left out of the bijection and shifted to `{0, 1}` (apparent points of pullbacks).
//! Every candidate is confirmed by exact operator comparison.

use crate::exactalg::{common_field, Poly, RatFunc, Scalar};

use super::moebius::{moebius_transform, MoebiusMap};
use super::scheme::{riemann_scheme_split, Point};
use super::{DiffOperator, OdeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchWitness {
    pub map: MoebiusMap,
    /// `(q, δ)`: the matched operator is gauged by `(x − q)^δ` after the map.
    pub gauge: Vec<(Scalar, Scalar)>,
}

type Pts = Vec<(Point, Vec<Scalar>)>;

fn explicit_points(op: &DiffOperator, hints: &[Poly]) -> Result<Option<Pts>, OdeError> {
    let s = riemann_scheme_split(op, hints)?;
    let mut out = Vec::new();
    for e in s.entries {
        let (Some(p), Some(ex)) = (e.point.as_point(), e.exponents) else { return Ok(None) };
        out.push((p, ex));
    }
    Ok(Some(out))
}

fn removable(ex: &[Scalar]) -> bool {
    ex.len() == 2 && {
        let d = &ex[1] - &ex[0];
        d == Scalar::one() || d == Scalar::from(-1)
    }
}

/// Shifts δ with `E + δ = F` as multisets.
fn shifts(e: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::new();
    for (i, j) in [(0, 1), (1, 0)] {
        let d = &f[0] - &e[i];
        if f[1] == &e[j] + &d && !out.contains(&d) {
            out.push(d);
        }
    }
    out
}

fn all_finite<'a>(pts: impl Iterator<Item = &'a Point>) -> Vec<Scalar> {
    pts.filter_map(|p| match p {
        Point::Finite(s) => Some(s.clone()),
        Point::Infinity => None,
    })
    .collect()
}

pub fn match_operators(
    src: &DiffOperator,
    dst: &DiffOperator,
    src_hints: &[Poly],
    dst_hints: &[Poly],
) -> Result<Option<MatchWitness>, OdeError> {
    let mut found = None;
    for_each_candidate(src, dst, src_hints, dst_hints, |w, cand| {
        if &cand == dst {
            found = Some(w);
            true
        } else {
            false
        }
    })?;
    Ok(found)
}

/// Every transform of `src` compatible with the singular points and local exponents of
/// `dst`, until `visit` returns true.  Useful to locate a mismatch in accessory
/// parameters, which local data cannot see.
pub fn for_each_candidate(
    src: &DiffOperator,
    dst: &DiffOperator,
    src_hints: &[Poly],
    dst_hints: &[Poly],
    mut visit: impl FnMut(MatchWitness, DiffOperator) -> bool,
) -> Result<(), OdeError> {
    if src.order() != 2 || dst.order() != 2 {
        return Err(OdeError::Order { expected: 2, got: src.order().max(dst.order()) });
    }
    let (Some(ps), Some(pt)) = (explicit_points(src, src_hints)?, explicit_points(dst, dst_hints)?) else {
        return Ok(());
    };
    let k = pt.len();
    if k < 3 || ps.len() < k {
        return Ok(());
    }
    let fin = all_finite(ps.iter().map(|p| &p.0).chain(pt.iter().map(|p| &p.0)));
    if common_field(&fin).is_err() {
        return Ok(());
    }
    let fixed: Vec<usize> = (0..ps.len()).filter(|&i| !removable(&ps[i].1)).collect();
    let optional: Vec<usize> = (0..ps.len()).filter(|&i| removable(&ps[i].1)).collect();
    if fixed.len() > k || fixed.len() + optional.len() < k {
        return Ok(());
    }
    for extra in choose(&optional, k - fixed.len()) {
        let chosen: Vec<usize> = fixed.iter().chain(&extra).copied().collect();
        let left_out: Vec<usize> = optional.iter().filter(|i| !extra.contains(i)).copied().collect();
        for perm in permutations(k) {
            let image = perm;
            let src3 = [&ps[chosen[0]].0, &ps[chosen[1]].0, &ps[chosen[2]].0];
            let dst3 = [&pt[image[0]].0, &pt[image[1]].0, &pt[image[2]].0];
            let m = MoebiusMap::from_three_pairs(src3, dst3)?;
            if (3..k).any(|i| m.apply(&ps[chosen[i]].0) != pt[image[i]].0) {
                continue;
            }
            // gauge choices per finite image point
            let mut options: Vec<(Scalar, Vec<Scalar>)> = Vec::new();
            let mut feasible = true;
            for i in 0..k {
                let Point::Finite(q) = &pt[image[i]].0 else { continue };
                let sh = shifts(&ps[chosen[i]].1, &pt[image[i]].1);
                if sh.is_empty() {
                    feasible = false;
                    break;
                }
                options.push((q.clone(), sh));
            }
            if !feasible {
                continue;
            }
            for &i in &left_out {
                if let Point::Finite(q) = m.apply(&ps[i].0) {
                    let e = &ps[i].1;
                    let lo = if e[0].cmp_real(&e[1]) == Some(std::cmp::Ordering::Less) { &e[0] } else { &e[1] };
                    options.push((q, vec![-lo]));
                }
            }
            let moved = moebius_transform(src, &m)?;
            for combo in product(&options) {
                let mut r = RatFunc::zero();
                for (q, d) in &combo {
                    if !d.is_zero() {
                        r = &r + &RatFunc::new(Poly::constant(d.clone()), Poly::linear_root(q));
                    }
                }
                let cand = if r.is_zero() { moved.clone() } else { moved.gauge(&r)? };
                let gauge = combo.into_iter().filter(|(_, d)| !d.is_zero()).collect();
                if visit(MatchWitness { map: m.clone(), gauge }, cand) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

fn choose(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if items.len() < r {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in choose(&items[i + 1..], r - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn product(options: &[(Scalar, Vec<Scalar>)]) -> Vec<Vec<(Scalar, Scalar)>> {
    let mut out: Vec<Vec<(Scalar, Scalar)>> = vec![vec![]];
    for (q, ds) in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                ds.iter().map(move |d| {
                    let mut v = prefix.clone();
                    v.push((q.clone(), d.clone()));
                    v
                })
            })
            .collect();
    }
    out
}

/// All permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::LameEquation;

    #[test]
    fn scaled_lame_matches() {
        let p0 = Poly::from_ints(&[0, 81, -82, 1]);
        let l = LameEquation::new(p0, Scalar::frac(-2, 9), Scalar::from(-2)).unwrap().as_operator();
        let m = MoebiusMap::scaling(Scalar::frac(1, 81));
        let moved = moebius_transform(&l, &m).unwrap();
        let w = match_operators(&l, &moved, &[], &[]).unwrap().unwrap();
        assert!(w.gauge.is_empty());
        // a gauge factor is recovered as well
        let g = moved.gauge(&RatFunc::new(Poly::constant(Scalar::frac(1, 3)), Poly::x())).unwrap();
        let w = match_operators(&l, &g, &[], &[]).unwrap().unwrap();
        assert_eq!(w.gauge.len(), 1);
    }
}
