//! Exact ideal limit superior / inferior of described sequences.
//!
//! Along a pattern outside the ideal the values converge to the rule's limit
//! `L`, so for any `b < L` the exceedance set `{k : x_k > b}` contains a
//! cofinite part of that pattern and escapes the ideal. Patterns inside the
//! ideal never matter, and a pattern with limit `L < b` contributes only
//! finitely many exceedances. Hence the limsup is the largest limit over
//! non-ideal patterns and the liminf the smallest.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::rational::Rational;
use crate::sequence::DescribedSequence;

/// Sorted, de-duplicated limits of the patterns that are not in the ideal.
pub fn pattern_limit_set(x: &DescribedSequence, ideal: &dyn Ideal) -> Result<Vec<Rational>> {
    let mut limits: Vec<Rational> = x
        .patterns()
        .iter()
        .filter(|p| !ideal.contains(&p.index_set))
        .map(|p| p.rule.limit().clone())
        .collect();
    limits.sort();
    limits.dedup();
    if limits.is_empty() {
        return Err(Error::Internal(format!(
            "every pattern lies in the ideal {}, which would make the ideal trivial",
            ideal.name()
        )));
    }
    Ok(limits)
}

pub fn i_limsup(x: &DescribedSequence, ideal: &dyn Ideal) -> Result<Rational> {
    Ok(pattern_limit_set(x, ideal)?.pop().expect("non-empty"))
}

pub fn i_liminf(x: &DescribedSequence, ideal: &dyn Ideal) -> Result<Rational> {
    Ok(pattern_limit_set(x, ideal)?.swap_remove(0))
}

/// The ideal limit, or `None` when limsup and liminf differ.
pub fn i_limit(x: &DescribedSequence, ideal: &dyn Ideal) -> Result<Option<Rational>> {
    let limits = pattern_limit_set(x, ideal)?;
    Ok((limits.len() == 1).then(|| limits[0].clone()))
}

/// Classical limsup: the largest limit over infinite patterns.
pub fn classical_limsup(x: &DescribedSequence) -> Rational {
    x.patterns()
        .iter()
        .filter(|p| !p.index_set.is_finite())
        .map(|p| p.rule.limit().clone())
        .max()
        .expect("a partition of ℕ has an infinite part")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{Fin, NatDensityZero};
    use crate::index_set::IndexSet;
    use crate::rational::int;
    use crate::sequence::ValueRule;

    fn example_2_3() -> DescribedSequence {
        DescribedSequence::from_pairs(vec![
            (IndexSet::powers(2).complement(), ValueRule::Constant(int(1))),
            (IndexSet::powers(2), ValueRule::parse("1/n", Some(int(0))).unwrap()),
        ])
        .unwrap()
    }

    #[test]
    fn example_2_3_limits() {
        let x = example_2_3();
        assert_eq!(pattern_limit_set(&x, &NatDensityZero).unwrap(), vec![int(1)]);
        assert_eq!(pattern_limit_set(&x, &Fin).unwrap(), vec![int(0), int(1)]);
        assert_eq!(i_limsup(&x, &NatDensityZero).unwrap(), int(1));
        assert_eq!(i_liminf(&x, &NatDensityZero).unwrap(), int(1));
        assert_eq!(i_limsup(&x, &Fin).unwrap(), int(1));
        assert_eq!(i_liminf(&x, &Fin).unwrap(), int(0));
        assert_eq!(i_limit(&x, &NatDensityZero).unwrap(), Some(int(1)));
        assert_eq!(i_limit(&x, &Fin).unwrap(), None);
        assert_eq!(i_limsup(&x.neg(), &NatDensityZero).unwrap(), int(-1));
    }

    #[test]
    fn constant_sequence() {
        let x = DescribedSequence::constant(int(7));
        for ideal in [&Fin as &dyn Ideal, &NatDensityZero] {
            assert_eq!(pattern_limit_set(&x, ideal).unwrap(), vec![int(7)]);
            assert_eq!(i_liminf(&x, ideal).unwrap(), int(7));
        }
    }

    #[test]
    fn finite_patterns_are_ignored_classically() {
        let x = DescribedSequence::from_pairs(vec![
            (IndexSet::finite([2, 3]), ValueRule::Constant(int(100))),
            (IndexSet::finite([2, 3]).complement(), ValueRule::Constant(int(5))),
        ])
        .unwrap();
        assert_eq!(classical_limsup(&x), int(5));
        assert_eq!(i_limsup(&x, &Fin).unwrap(), int(5));
    }
}
