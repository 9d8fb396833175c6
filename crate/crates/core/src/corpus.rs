//! Seeded random instances for property suites and acceptance runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::generator::{IntervalGenerator, RadiusPattern};
use crate::index_set::IndexSet;
use crate::piecewise::{PiecewiseFunction, RatFn};
use crate::rational::{int, rat, Rational};
use crate::sequence::{DescribedSequence, ValueRule};
use crate::sets::{Bound, ComponentClass, Interval, RationalBorelSet};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in `[lo, hi]` on the grid of step `1/den`.
pub fn rational(rng: &mut CorpusRng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

fn sorted_points(rng: &mut CorpusRng, count: usize, lo: i64, hi: i64, den: i64) -> Vec<Rational> {
    let mut xs: Vec<Rational> = (0..count).map(|_| rational(rng, lo, hi, den)).collect();
    xs.sort();
    xs.dedup();
    xs
}

/// Up to two quarter-grid points in `[-5, 5]`.
fn some_points(rng: &mut CorpusRng) -> Vec<Rational> {
    let k = rng.gen_range(0..3);
    sorted_points(rng, k, -5, 5, 4)
}

fn class(rng: &mut CorpusRng) -> ComponentClass {
    match rng.gen_range(0..6) {
        0 => ComponentClass::RationalsOnly,
        1 => ComponentClass::IrrationalsOnly,
        _ => ComponentClass::Full,
    }
}

/// A set of up to four components in `[-4, 4]` with occasional rays and
/// point modifications.
pub fn set(rng: &mut CorpusRng) -> RationalBorelSet {
    let n = rng.gen_range(0..=4);
    let xs = sorted_points(rng, 2 * n, -4, 4, 8);
    let mut comps = Vec::new();
    for pair in xs.chunks(2) {
        let (lo, hi) = match pair {
            [a, b] => (Bound::Finite(a.clone()), Bound::Finite(b.clone())),
            [a] => (Bound::Finite(a.clone()), Bound::PosInf),
            _ => continue,
        };
        let iv = Interval::new(lo, hi, rng.gen_bool(0.5), rng.gen_bool(0.5)).expect("sorted");
        comps.push((iv, class(rng)));
    }
    if rng.gen_bool(0.15) {
        let iv = Interval::below(int(-5), rng.gen_bool(0.5));
        comps.push((iv, class(rng)));
    }
    let plus = some_points(rng);
    let minus = some_points(rng);
    RationalBorelSet::from_parts(&comps, &plus, &minus)
}

/// Closed in the usual topology: closed intervals, closed rays and points.
pub fn natural_closed(rng: &mut CorpusRng) -> RationalBorelSet {
    let n = rng.gen_range(0..=3);
    let xs = sorted_points(rng, 2 * n, -4, 4, 8);
    let mut out = RationalBorelSet::empty();
    for pair in xs.chunks(2) {
        if let [a, b] = pair {
            out = out.union(&RationalBorelSet::closed(a.clone(), b.clone()));
        }
    }
    if rng.gen_bool(0.2) {
        out = out.union(&RationalBorelSet::interval(&Interval::above(int(5), true)));
    }
    out.union(&RationalBorelSet::points(some_points(rng)))
}

/// Open in the usual topology.
pub fn natural_open(rng: &mut CorpusRng) -> RationalBorelSet {
    natural_closed(rng).complement()
}

/// A partition of ℕ from a fixed menu of shapes.
pub fn partition(rng: &mut CorpusRng) -> Vec<IndexSet> {
    let squares = IndexSet::powers(2);
    let parts = match rng.gen_range(0..6) {
        0 => vec![IndexSet::All],
        1 => vec![IndexSet::ap(2, 2), IndexSet::ap(1, 2)],
        2 => vec![squares.complement(), squares],
        3 => {
            let head = IndexSet::finite(sorted_points(rng, 4, 1, 30, 1).iter().map(|q| q.numer().try_into().unwrap()));
            vec![head.clone(), head.complement()]
        }
        4 => vec![IndexSet::ap(1, 3), IndexSet::ap(2, 3), IndexSet::ap(3, 3)],
        _ => {
            let cubes = IndexSet::powers(3);
            vec![cubes.complement().and(&IndexSet::ap(2, 2)), cubes.complement().and(&IndexSet::ap(1, 2)), cubes]
        }
    };
    let mut parts = parts;
    parts.shuffle(rng);
    parts
}

/// A bounded rule approaching its limit monotonically.
pub fn rule(rng: &mut CorpusRng) -> ValueRule {
    let c = rational(rng, -2, 2, 4);
    let k = rational(rng, -3, 3, 2);
    let j = rng.gen_range(0..4);
    let text = match rng.gen_range(0..5) {
        0 => return ValueRule::Constant(c),
        1 => format!("{c} + ({k})/(n + {j})"),
        2 => format!("{c} + ({k})*(1/2)^n"),
        3 => {
            let a = rng.gen_range(1..4);
            format!("({c}*{a}*n + {k})/({a}*n + {})", j + 1)
        }
        _ => format!("{c} + ({k})/(n*n + {j})"),
    };
    ValueRule::parse(&text, None).expect("corpus rule")
}

pub fn sequence(rng: &mut CorpusRng) -> DescribedSequence {
    let pairs = partition(rng).into_iter().map(|s| (s, rule(rng))).collect();
    DescribedSequence::from_pairs(pairs).expect("corpus sequence")
}

fn shrinking_radius(rng: &mut CorpusRng) -> Formula {
    let k = rational(rng, 1, 3, 2);
    let j = rng.gen_range(0..3);
    let text = match rng.gen_range(0..3) {
        0 => format!("({k})/(n + {j})"),
        1 => format!("({k})*(1/2)^n"),
        _ => format!("({k})/(n*n + {j})"),
    };
    Formula::parse(&text).expect("corpus radius")
}

/// A generator about `center` that is admissible for both built-in ideals,
/// or only for the density ideal when it blows up on the squares.
pub fn generator(rng: &mut CorpusRng, center: &Rational) -> IntervalGenerator {
    let blow_up = rng.gen_bool(0.2);
    let parts = if blow_up {
        vec![IndexSet::powers(2).complement(), IndexSet::powers(2)]
    } else {
        partition(rng)
    };
    let patterns = parts
        .into_iter()
        .map(|index_set| {
            if blow_up && index_set == IndexSet::powers(2) {
                let n = Formula::n();
                return RadiusPattern { index_set, left: n.clone(), right: n };
            }
            let left = shrinking_radius(rng);
            let right = if rng.gen_bool(0.5) { left.clone() } else { shrinking_radius(rng) };
            RadiusPattern { index_set, left, right }
        })
        .collect();
    IntervalGenerator::new(center.clone(), patterns).expect("corpus generator")
}

/// Piecewise-affine function on a random partition of ℝ. Some functions
/// split an interval into its rational and irrational parts.
pub fn function(rng: &mut CorpusRng) -> PiecewiseFunction {
    let count = rng.gen_range(0..=4);
    let xs = sorted_points(rng, count, -3, 3, 4);
    let mut bounds = vec![Bound::NegInf];
    bounds.extend(xs.iter().cloned().map(Bound::Finite));
    bounds.push(Bound::PosInf);
    let small = |rng: &mut CorpusRng| rational(rng, -2, 2, 2);
    let mut pieces: Vec<(RationalBorelSet, RatFn)> = Vec::new();
    for w in bounds.windows(2) {
        let iv = Interval::new(w[0].clone(), w[1].clone(), false, false).expect("sorted");
        let line = RatFn::affine(small(rng), small(rng));
        if rng.gen_bool(0.15) {
            let q = RationalBorelSet::from_component(&iv, ComponentClass::RationalsOnly);
            let other = RatFn::constant(small(rng));
            pieces.push((RationalBorelSet::interval(&iv).difference(&q), line));
            pieces.push((q, other));
        } else {
            pieces.push((RationalBorelSet::interval(&iv), line));
        }
    }
    for x in &xs {
        // each breakpoint takes a neighbour's value or its own
        let point = RationalBorelSet::point(x.clone());
        let expr = match rng.gen_range(0..3) {
            0 => RatFn::constant(small(rng)),
            _ => pieces.choose(rng).expect("non-empty").1.clone(),
        };
        pieces.push((point, expr));
    }
    PiecewiseFunction::from_pairs(pieces).expect("corpus function")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..50 {
            assert_eq!(set(&mut a), set(&mut b));
            let f = natural_closed(&mut a);
            assert!(f.is_natural_closed());
            natural_closed(&mut b);
            assert_eq!(sequence(&mut a), sequence(&mut b));
            assert_eq!(function(&mut a), function(&mut b));
            let c = rational(&mut a, -1, 1, 4);
            rational(&mut b, -1, 1, 4);
            assert_eq!(generator(&mut a, &c), generator(&mut b, &c));
        }
    }
}
