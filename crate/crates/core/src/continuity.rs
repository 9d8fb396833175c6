//! Ideal approximate continuity of piecewise functions.
//!
//! Every piece expression is continuous where it is defined, so near `p` the
//! function restricted to the union `W` of pieces whose expression takes the
//! value `f(p)` at `p` is continuous, and any set of density 1 at `p` must
//! have full measure near `p` inside `W`. The pointwise test is therefore
//! `p ∈ essint(W)`. The global test goes through level sets instead: `f` is
//! approximately continuous everywhere iff every strict level set is open in
//! the density topology, and for affine pieces it suffices to test finitely
//! many thresholds.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::density::is_i_d_open;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::piecewise::{PiecewiseFunction, RatFn};
use crate::rational::{int, rat, Rational};
use crate::sets::{Interval, RationalBorelSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IacVerdict {
    pub holds: bool,
    /// A set of density 1 at the point on which the function is continuous there.
    pub witness: Option<RationalBorelSet>,
}

fn pieces_where(f: &PiecewiseFunction, p: &Rational, keep: impl Fn(&Rational) -> bool) -> RationalBorelSet {
    f.pieces()
        .iter()
        .filter(|piece| piece.expr.eval(p).is_some_and(|v| keep(&v)))
        .fold(RationalBorelSet::empty(), |acc, piece| acc.union(&piece.set))
}

pub fn is_iac_at(f: &PiecewiseFunction, p: &Rational, _ideal: &dyn Ideal) -> IacVerdict {
    let v = f.eval(p);
    let agree = pieces_where(f, p, |x| *x == v);
    if agree.essential_interior().contains(p) {
        let window = RationalBorelSet::closed(p - int(1), p + int(1));
        IacVerdict { holds: true, witness: Some(agree.intersect(&window)) }
    } else {
        IacVerdict { holds: false, witness: None }
    }
}

/// `{x : f(x) < mu}` and `{x : f(x) > mu}`.
pub fn level_sets(f: &PiecewiseFunction, mu: &Rational) -> Result<(RationalBorelSet, RationalBorelSet)> {
    f.level_sets(mu)
}

fn require_affine(f: &PiecewiseFunction) -> Result<Vec<(Rational, Rational)>> {
    f.pieces()
        .iter()
        .map(|p| p.expr.as_affine().ok_or_else(|| Error::Unsupported(format!("non-affine piece {}", p.expr))))
        .collect()
}

/// Points where two affine piece expressions cross.
fn crossings(lines: &[(Rational, Rational)]) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for (i, (a1, b1)) in lines.iter().enumerate() {
        for (a2, b2) in &lines[i + 1..] {
            if a1 != a2 {
                out.insert((b2 - b1) / (a1 - a2));
            }
        }
    }
    out
}

/// Thresholds at which the shape of the level sets can change, plus one
/// representative between consecutive ones and one beyond either end.
pub fn critical_thresholds(f: &PiecewiseFunction) -> Result<Vec<Rational>> {
    let lines = require_affine(f)?;
    let mut xs: BTreeSet<Rational> = f.breakpoints().into_iter().collect();
    xs.extend(crossings(&lines));
    let mut crit = BTreeSet::new();
    for (a, b) in &lines {
        if a.is_zero() {
            crit.insert(b.clone());
        }
        for x in &xs {
            crit.insert(a * x + b);
        }
    }
    if crit.is_empty() {
        crit.insert(Rational::zero());
    }
    let crit: Vec<Rational> = crit.into_iter().collect();
    let mut tests = crit.clone();
    tests.extend(crit.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
    tests.push(&crit[0] - int(1));
    tests.push(crit.last().expect("non-empty") + int(1));
    tests.sort();
    Ok(tests)
}

/// Level-set route: every strict level set at every critical threshold is open
/// in the density topology.
pub fn is_iac_global(f: &PiecewiseFunction, ideal: &dyn Ideal) -> Result<bool> {
    for mu in critical_thresholds(f)? {
        let (below, above) = f.level_sets(&mu)?;
        if !is_i_d_open(&below, ideal) || !is_i_d_open(&above, ideal) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rational test points covering every behaviour of an affine piecewise
/// function: breakpoints, crossings, and interior samples of each gap.
pub fn pointwise_test_points(f: &PiecewiseFunction) -> Result<Vec<Rational>> {
    let lines = require_affine(f)?;
    let mut xs: BTreeSet<Rational> = f.breakpoints().into_iter().collect();
    xs.extend(crossings(&lines));
    let sorted: Vec<Rational> = xs.iter().cloned().collect();
    for w in sorted.windows(2) {
        let width = &w[1] - &w[0];
        for k in 1..=3 {
            xs.insert(&w[0] + &width * rat(k, 4));
        }
    }
    let (lo, hi) = match (sorted.first(), sorted.last()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => (Rational::zero(), Rational::zero()),
    };
    for k in 1..=3 {
        xs.insert(&lo - int(k));
        xs.insert(&hi + int(k));
    }
    Ok(xs.into_iter().collect())
}

/// Pointwise route: the checker passes at every test point.
pub fn is_iac_global_pointwise(f: &PiecewiseFunction, ideal: &dyn Ideal) -> Result<bool> {
    Ok(pointwise_test_points(f)?.iter().all(|p| is_iac_at(f, p, ideal).holds))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Semicontinuity {
    pub upper: bool,
    pub lower: bool,
}

/// Upper and lower ideal approximate semicontinuity at `p`.
///
/// Affine functions use the level-set definition at the one threshold that
/// matters (just past `f(p)`, before any other piece value at `p`); other
/// functions compare piece values at `p` directly.
pub fn semicontinuity_at(f: &PiecewiseFunction, p: &Rational, _ideal: &dyn Ideal) -> Result<Semicontinuity> {
    let v = f.eval(p);
    if f.is_affine() {
        let values: BTreeSet<Rational> = f.pieces().iter().filter_map(|piece| piece.expr.eval(p)).collect();
        let next_up = values.range((std::ops::Bound::Excluded(&v), std::ops::Bound::Unbounded)).next();
        let next_down = values.range(..&v).next_back();
        let alpha_up = next_up.map_or(&v + int(1), |u| (&v + u) / int(2));
        let alpha_down = next_down.map_or(&v - int(1), |d| (&v + d) / int(2));
        let (below, _) = f.level_sets(&alpha_up)?;
        let (_, above) = f.level_sets(&alpha_down)?;
        return Ok(Semicontinuity {
            upper: below.essential_interior().contains(p),
            lower: above.essential_interior().contains(p),
        });
    }
    Ok(Semicontinuity {
        upper: pieces_where(f, p, |x| *x <= v).essential_interior().contains(p),
        lower: pieces_where(f, p, |x| *x >= v).essential_interior().contains(p),
    })
}

/// `∫_lo^hi f` for polynomial pieces.
pub fn integral(f: &PiecewiseFunction, lo: &Rational, hi: &Rational) -> Result<Rational> {
    let mut total = Rational::zero();
    for piece in f.pieces() {
        let poly = piece
            .expr
            .as_poly()
            .ok_or_else(|| Error::Unsupported(format!("integral of non-polynomial piece {}", piece.expr)))?;
        let anti = poly.integral();
        let window = piece.set.intersect(&RationalBorelSet::closed(lo.clone(), hi.clone()));
        for (a, b) in window.measure_runs() {
            let (a, b) = (a.finite().cloned().expect("bounded"), b.finite().cloned().expect("bounded"));
            total += anti.eval(&b) - anti.eval(&a);
        }
    }
    Ok(total)
}

/// `n (G(r + 1/n) - G(r))` with `G` an antiderivative of `f`.
pub fn baire_average(f: &PiecewiseFunction, r: &Rational, n: u64) -> Result<Rational> {
    let nq = Rational::from_integer(n.into());
    Ok(integral(f, r, &(r + nq.recip()))? * nq)
}

/// A constant `C` with `|baire_average(f, r, n) - f(r)| <= C / n` for all
/// `n >= 1`, valid when `f` is approximately continuous at `r`.
pub fn baire_constant(f: &PiecewiseFunction, r: &Rational) -> Result<Rational> {
    let fr = f.eval(r).abs();
    let mut sup = Rational::zero();
    for piece in f.pieces() {
        let poly = piece
            .expr
            .as_poly()
            .ok_or_else(|| Error::Unsupported(format!("non-polynomial piece {}", piece.expr)))?;
        // bound of |p(r + t)| over t in [0, 1]
        sup = sup.max(poly.shift(r).abs_coeff_sum());
    }
    let right = f
        .breakpoints()
        .into_iter()
        .find(|b| b > r)
        .map(|b| b - r)
        .unwrap_or_else(Rational::one)
        .min(Rational::one());
    // on [r, r + right) almost every point lies in the piece covering the
    // irrationals just right of r
    let slope_bound = f
        .pieces()
        .iter()
        .filter(|piece| piece.set.right_density_indicator(r))
        .filter_map(|piece| piece.expr.as_poly().map(|p| p.derivative().shift(r).abs_coeff_sum()))
        .fold(Rational::zero(), |a, b| a.max(b));
    Ok((slope_bound / int(2)).max((sup + fr) / right))
}

/// `ψ(x1, x2) = |x1| / (|x1| + |x2|)`.
pub fn psi(x1: &Rational, x2: &Rational) -> Option<Rational> {
    let den = x1.abs() + x2.abs();
    (!den.is_zero()).then(|| x1.abs() / den)
}

/// Composition `g ∘ f` with a continuous affine `g`.
pub fn compose_affine(f: &PiecewiseFunction, a: &Rational, b: &Rational) -> PiecewiseFunction {
    f.post_affine(a, b)
}

/// Indicator function of a set, as a two-piece function.
pub fn indicator(set: &RationalBorelSet) -> Result<PiecewiseFunction> {
    PiecewiseFunction::from_pairs(vec![
        (set.clone(), RatFn::constant(Rational::one())),
        (set.complement(), RatFn::constant(Rational::zero())),
    ])
}

/// `0` on `(-inf, 0]` and `1` on `(0, inf)`.
pub fn step_at_zero() -> PiecewiseFunction {
    indicator(&RationalBorelSet::interval(&Interval::above(Rational::zero(), false))).expect("partition")
}

/// `1` on the rationals, `0` on the irrationals.
pub fn dirichlet() -> PiecewiseFunction {
    indicator(&RationalBorelSet::rationals()).expect("partition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::NatDensityZero;

    const I: NatDensityZero = NatDensityZero;

    #[test]
    fn pointwise_examples() {
        assert!(!is_iac_at(&dirichlet(), &rat(1, 2), &I).holds);
        let id = is_iac_at(&PiecewiseFunction::identity(), &int(0), &I);
        assert!(id.holds && id.witness.is_some());
        assert!(!is_iac_at(&step_at_zero(), &int(0), &I).holds);
        assert!(is_iac_at(&step_at_zero(), &int(1), &I).holds);
    }

    #[test]
    fn global_examples_agree_across_routes() {
        for (f, expected) in [
            (PiecewiseFunction::identity(), true),
            (dirichlet(), false),
            (PiecewiseFunction::constant(int(0)), true),
            (step_at_zero(), false),
            (indicator(&RationalBorelSet::open(int(0), int(1)).difference(&RationalBorelSet::point(rat(1, 2)))).unwrap(), false),
        ] {
            assert_eq!(is_iac_global(&f, &I).unwrap(), expected, "{f}");
            assert_eq!(is_iac_global_pointwise(&f, &I).unwrap(), expected, "{f}");
        }
    }

    #[test]
    fn semicontinuity_examples() {
        let spike = indicator(&RationalBorelSet::point(int(0))).unwrap();
        assert_eq!(semicontinuity_at(&spike, &int(0), &I).unwrap(), Semicontinuity { upper: true, lower: false });
        let id = PiecewiseFunction::identity();
        assert_eq!(semicontinuity_at(&id, &rat(3, 7), &I).unwrap(), Semicontinuity { upper: true, lower: true });
        // f(0) = 0 with f = 1 on the right: values above f(0) break upper semicontinuity
        assert_eq!(
            semicontinuity_at(&step_at_zero(), &int(0), &I).unwrap(),
            Semicontinuity { upper: false, lower: true }
        );
    }

    #[test]
    fn baire_examples() {
        assert_eq!(baire_average(&step_at_zero(), &int(1), 10).unwrap(), int(1));
        assert_eq!(baire_average(&PiecewiseFunction::identity(), &int(0), 4).unwrap(), rat(1, 8));
        for n in [1, 10, 1000] {
            assert_eq!(baire_average(&dirichlet(), &rat(1, 2), n).unwrap(), int(0));
        }
        let c = baire_constant(&PiecewiseFunction::identity(), &int(0)).unwrap();
        for n in [10u64, 100, 1000, 10_000] {
            let err = (baire_average(&PiecewiseFunction::identity(), &int(0), n).unwrap()).abs();
            assert!(err <= &c / Rational::from_integer(n.into()));
        }
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(&rat(1, 2), &rat(1, 2)), Some(rat(1, 2)));
        assert_eq!(psi(&int(0), &int(3)), Some(int(0)));
        assert_eq!(psi(&int(2), &int(0)), Some(int(1)));
    }
}
