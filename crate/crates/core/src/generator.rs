//! Interval generators `J_n = [p - a_n, p + b_n]` about a rational center.
//!
//! Radii are closed-form [`Formula`]s attached to the patterns of a partition
//! of ℕ. Because each radius converges monotonically (to a finite value or to
//! infinity), the endpoint `p + b_n` eventually stays inside a single gap of
//! the set's cell decomposition. From that index on, `m(J_n ∩ E)` is an
//! affine function of `a_n` and `b_n`, so the density quotient is itself a
//! closed-form formula; earlier indices are computed one by one.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::formula::{Formula, Limit};
use crate::ideal::Ideal;
use crate::index_set::IndexSet;
use crate::rational::Rational;
use crate::sequence::{validate_partition, DescribedSequence, Pattern, ValueRule};
use crate::sets::RationalBorelSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusPattern {
    pub index_set: IndexSet,
    pub left: Formula,
    pub right: Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Behavior {
    Shrinking,
    Expanding,
    Constant,
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Behavior::Shrinking => "shrinking",
            Behavior::Expanding => "expanding",
            Behavior::Constant => "constant",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalGenerator {
    center: Rational,
    patterns: Vec<RadiusPattern>,
}

/// One row of a density quotient table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub n: u64,
    pub m_j: Rational,
    pub m_je: Rational,
    pub quotient: Rational,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Eventual description of one endpoint relative to the set.
struct SideModel {
    /// `J_n ∩ E` on this side equals `E` up to `anchor` plus `rho * (radius - anchor)`.
    anchor: Rational,
    rho: bool,
    from: u64,
}

fn nonneg_on(f: &Formula, set: &IndexSet, what: &str) -> Result<()> {
    let (s, t) = f.eventual_sign();
    if s < 0 && !set.is_finite() {
        return Err(Error::InvalidGenerator(format!("{what} radius {f} is eventually negative")));
    }
    let last = if s < 0 { set.max_element().unwrap_or(0) + 1 } else { t };
    for n in (1..last).filter(|&n| set.contains(n)) {
        if f.eval(n)?.is_negative() {
            return Err(Error::InvalidGenerator(format!("{what} radius {f} is negative at n = {n}")));
        }
    }
    Ok(())
}

impl IntervalGenerator {
    pub fn new(center: Rational, patterns: Vec<RadiusPattern>) -> Result<Self> {
        let sets: Vec<&IndexSet> = patterns.iter().map(|p| &p.index_set).collect();
        validate_partition(&sets).map_err(|e| Error::InvalidGenerator(e.to_string()))?;
        for p in &patterns {
            for (f, what) in [(&p.left, "left"), (&p.right, "right")] {
                if f.limit() == Limit::NegInf {
                    return Err(Error::InvalidGenerator(format!("{what} radius {f} tends to -inf")));
                }
                nonneg_on(f, &p.index_set, what)?;
            }
            let total = p.left.add(&p.right);
            let (s, t) = total.eventual_sign();
            let last = if s <= 0 { p.index_set.max_element().map_or(t, |m| m + 1).max(t) } else { t };
            if s <= 0 && !p.index_set.is_finite() {
                let n = p.index_set.and(&IndexSet::from_index(t)).min_element().unwrap_or(t);
                return Err(Error::ZeroLengthInterval(n));
            }
            for n in (1..last).filter(|&n| p.index_set.contains(n)) {
                if !total.eval(n)?.is_positive() {
                    return Err(Error::ZeroLengthInterval(n));
                }
            }
        }
        Ok(IntervalGenerator { center, patterns })
    }

    /// The same radius on both sides for every index.
    pub fn symmetric(center: Rational, radius: Formula) -> Result<Self> {
        IntervalGenerator::new(
            center,
            vec![RadiusPattern { index_set: IndexSet::All, left: radius.clone(), right: radius }],
        )
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn patterns(&self) -> &[RadiusPattern] {
        &self.patterns
    }

    fn pattern_of(&self, n: u64) -> &RadiusPattern {
        self.patterns.iter().find(|p| p.index_set.contains(n)).expect("patterns partition ℕ")
    }

    /// Endpoints of `J_n`.
    pub fn interval(&self, n: u64) -> Result<(Rational, Rational)> {
        let p = self.pattern_of(n);
        Ok((&self.center - p.left.eval(n)?, &self.center + p.right.eval(n)?))
    }

    pub fn length(&self, n: u64) -> Result<Rational> {
        let (lo, hi) = self.interval(n)?;
        Ok(hi - lo)
    }

    pub fn behavior(pattern: &RadiusPattern) -> Behavior {
        match pattern.left.add(&pattern.right).limit() {
            Limit::Finite(v) if v.is_zero() => Behavior::Shrinking,
            Limit::Finite(_) => Behavior::Constant,
            _ => Behavior::Expanding,
        }
    }

    /// `lim b_n / (a_n + b_n)`.
    pub fn side_fraction(pattern: &RadiusPattern) -> Rational {
        let total = pattern.left.add(&pattern.right);
        let ratio = pattern.right.div(&total).expect("total radius is positive");
        ratio.limit().finite().cloned().expect("a fraction in [0, 1] has a finite limit")
    }

    /// `{n : 0 < m(J_n) < 1/n}`.
    pub fn s_set(&self) -> IndexSet {
        let mut parts = Vec::new();
        for p in &self.patterns {
            // 1 - n(a_n + b_n) > 0
            let f = Formula::constant(Rational::one()).sub(&Formula::n().mul(&p.left.add(&p.right)));
            let (s, t) = f.eventual_sign();
            let below: Vec<u64> = if s > 0 || !p.index_set.is_finite() {
                (1..t).filter(|&n| p.index_set.contains(n)).collect()
            } else {
                p.index_set.members_up_to(p.index_set.max_element().unwrap_or(0))
            };
            let hits: Vec<u64> =
                below.iter().copied().filter(|&n| f.eval(n).is_ok_and(|v| v.is_positive())).collect();
            if s > 0 && hits.len() == below.len() {
                parts.push(p.index_set.clone());
                continue;
            }
            if s > 0 {
                parts.push(p.index_set.and(&IndexSet::from_index(t)));
            }
            if !hits.is_empty() {
                parts.push(IndexSet::finite(hits));
            }
        }
        IndexSet::union(parts)
    }

    pub fn is_admissible(&self, ideal: &dyn Ideal) -> bool {
        ideal.in_filter(&self.s_set())
    }

    fn side_model(&self, set: &RationalBorelSet, radius: &Formula, side: Side) -> Result<SideModel> {
        let p = &self.center;
        match radius.limit() {
            Limit::Finite(r) => {
                let diff = radius.add_constant(&-&r);
                let (s, t) = diff.eventual_sign();
                if s == 0 {
                    return Ok(SideModel { anchor: r, rho: false, from: 1 });
                }
                let endpoint = match side {
                    Side::Right => p + &r,
                    Side::Left => p - &r,
                };
                // moving outward from the endpoint when the radius shrinks towards r
                let outward = s > 0;
                let look_right = outward == (side == Side::Right);
                let (rho, neighbour) = if look_right {
                    (set.gap_right_of(&endpoint).irrational, set.next_break_after(&endpoint).map(|b| b - &endpoint))
                } else {
                    (set.gap_left_of(&endpoint).irrational, set.prev_break_before(&endpoint).map(|b| &endpoint - b))
                };
                let mut from = t;
                if let Some(dist) = neighbour {
                    // |radius - r| < dist
                    let room = Formula::constant(dist).sub(&diff.scale(&Rational::from_integer(s.into())));
                    from = from.max(room.eventual_sign().1);
                }
                Ok(SideModel { anchor: r, rho, from })
            }
            Limit::PosInf => {
                let (endpoint, rho) = match side {
                    Side::Right => {
                        let e = set.breakpoints().last().filter(|b| *b > p).unwrap_or(p).clone();
                        (e.clone(), set.last_gap().irrational)
                    }
                    Side::Left => {
                        let e = set.breakpoints().first().filter(|b| *b < p).unwrap_or(p).clone();
                        (e.clone(), set.first_gap().irrational)
                    }
                };
                let anchor = (&endpoint - p).abs();
                let (_, from) = radius.add_constant(&-&anchor).eventual_sign();
                Ok(SideModel { anchor, rho, from })
            }
            Limit::NegInf => Err(Error::InvalidGenerator(format!("radius {radius} tends to -inf"))),
        }
    }

    /// Exact `m(J_n ∩ E) / m(J_n)` as a described sequence.
    pub fn quotient_sequence(&self, set: &RationalBorelSet) -> Result<DescribedSequence> {
        let p = &self.center;
        let mut patterns = Vec::new();
        for rp in &self.patterns {
            let left = self.side_model(set, &rp.left, Side::Left)?;
            let right = self.side_model(set, &rp.right, Side::Right)?;
            let from = left.from.max(right.from);
            let k = set.measure_within(&(p - &left.anchor), &(p + &right.anchor));
            let mut num = Formula::constant(k);
            for (model, radius) in [(&left, &rp.left), (&right, &rp.right)] {
                if model.rho {
                    num = num.add(&radius.add_constant(&-&model.anchor));
                }
            }
            let quotient = num.div(&rp.left.add(&rp.right))?;
            let tail = if from <= 1 { rp.index_set.clone() } else { rp.index_set.and(&IndexSet::from_index(from)) };
            if !tail.is_empty() {
                patterns.push(Pattern { index_set: tail, rule: ValueRule::formula(quotient, None)? });
            }
            for n in (1..from).filter(|&n| rp.index_set.contains(n)) {
                let row = self.quotient_row(set, n)?;
                patterns.push(Pattern { index_set: IndexSet::finite([n]), rule: ValueRule::Constant(row.quotient) });
            }
        }
        Ok(DescribedSequence::new_unchecked(patterns))
    }

    pub fn quotient_row(&self, set: &RationalBorelSet, n: u64) -> Result<QuotientRow> {
        let (lo, hi) = self.interval(n)?;
        let m_j = &hi - &lo;
        if !m_j.is_positive() {
            return Err(Error::ZeroLengthInterval(n));
        }
        let m_je = set.measure_within(&lo, &hi);
        let quotient = &m_je / &m_j;
        Ok(QuotientRow { n, m_j, m_je, quotient })
    }

    pub fn quotient_table(&self, set: &RationalBorelSet, rows: u64) -> Result<Vec<QuotientRow>> {
        (1..=rows).map(|n| self.quotient_row(set, n)).collect()
    }
}
