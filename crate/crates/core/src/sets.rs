//! The representable set algebra: finite unions of rational-endpoint
//! intervals, each restricted to all reals, the rationals, or the
//! irrationals, plus finitely many added or removed rational points.
//!
//! Internally a set is a cell decomposition of the line. Finitely many
//! rational breakpoints `b_0 < ... < b_{k-1}` split ℝ into `k` points and
//! `k + 1` open gaps. Each point is either in or out; each gap records
//! whether it contains its rationals and whether it contains its
//! irrationals. Boolean operations become cellwise boolean operations on a
//! common refinement, and canonical form (drop every breakpoint that does not
//! separate anything) makes structural equality coincide with set equality.
//!
//! The component/point view of the public contract ([`RationalBorelSet::components`],
//! [`RationalBorelSet::plus_points`], [`RationalBorelSet::minus_points`]) is
//! derived from the cells on demand.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// An extended-real endpoint. Infinite endpoints are always open.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::PosInf => f.write_str("inf"),
            Bound::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        let iv = Interval {
            lo_closed: lo_closed && matches!(lo, Bound::Finite(_)),
            hi_closed: hi_closed && matches!(hi, Bound::Finite(_)),
            lo,
            hi,
        };
        match iv.lo.cmp(&iv.hi) {
            Ordering::Greater => Err(Error::InvalidSet(format!("interval with lo {} > hi {}", iv.lo, iv.hi))),
            Ordering::Equal if !(iv.lo_closed && iv.hi_closed) => Err(Error::InvalidSet(format!(
                "degenerate interval at {} must be closed on both ends",
                iv.lo
            ))),
            _ => Ok(iv),
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval::new(Bound::Finite(lo), Bound::Finite(hi), true, true).expect("lo <= hi")
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        assert!(lo < hi, "open interval needs lo < hi");
        Interval::new(Bound::Finite(lo), Bound::Finite(hi), false, false).expect("lo < hi")
    }

    pub fn reals() -> Self {
        Interval::new(Bound::NegInf, Bound::PosInf, false, false).expect("valid")
    }

    /// `(-inf, x)` or `(-inf, x]`.
    pub fn below(x: Rational, closed: bool) -> Self {
        Interval::new(Bound::NegInf, Bound::Finite(x), false, closed).expect("valid ray")
    }

    /// `(x, inf)` or `[x, inf)`.
    pub fn above(x: Rational, closed: bool) -> Self {
        Interval::new(Bound::Finite(x), Bound::PosInf, closed, false).expect("valid ray")
    }

    /// `None` when unbounded.
    pub fn length(&self) -> Option<Rational> {
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => Some(b - a),
            _ => None,
        }
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;

    /// Parses interval notation such as `[0, 1/2)` or `(-inf, 3]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidSet(format!("bad interval {s:?}"));
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let (a, b) = t[1..t.len() - 1].split_once(',').ok_or_else(bad)?;
        let bound = |x: &str| -> Result<Bound> {
            match x.trim() {
                "-inf" => Ok(Bound::NegInf),
                "inf" | "+inf" => Ok(Bound::PosInf),
                other => crate::rational::parse_rational(other).map(Bound::Finite),
            }
        };
        Interval::new(bound(a)?, bound(b)?, lo_closed, hi_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentClass {
    Full,
    #[serde(alias = "rationals")]
    RationalsOnly,
    #[serde(alias = "irrationals")]
    IrrationalsOnly,
}

impl ComponentClass {
    fn cover(self) -> Cover {
        match self {
            ComponentClass::Full => Cover::FULL,
            ComponentClass::RationalsOnly => Cover::RATIONALS,
            ComponentClass::IrrationalsOnly => Cover::IRRATIONALS,
        }
    }
}

/// Which points of an open gap belong to the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Cover {
    pub rational: bool,
    pub irrational: bool,
}

impl Cover {
    pub const EMPTY: Cover = Cover { rational: false, irrational: false };
    pub const FULL: Cover = Cover { rational: true, irrational: true };
    pub const RATIONALS: Cover = Cover { rational: true, irrational: false };
    pub const IRRATIONALS: Cover = Cover { rational: false, irrational: true };

    fn class(self) -> Option<ComponentClass> {
        match (self.rational, self.irrational) {
            (true, true) => Some(ComponentClass::Full),
            (true, false) => Some(ComponentClass::RationalsOnly),
            (false, true) => Some(ComponentClass::IrrationalsOnly),
            (false, false) => None,
        }
    }
}

/// Lebesgue measure of a representable set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Measure {
    Finite(Rational),
    Infinite,
}

impl Measure {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Measure::Finite(q) => Some(q),
            Measure::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Measure::Finite(q) if q.is_zero())
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Finite(q) => f.write_str(&format_rational(q)),
            Measure::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalBorelSet {
    breaks: Vec<Rational>,
    points: Vec<bool>,
    gaps: Vec<Cover>,
}

impl Default for RationalBorelSet {
    fn default() -> Self {
        RationalBorelSet::empty()
    }
}

impl RationalBorelSet {
    pub fn empty() -> Self {
        RationalBorelSet {
            breaks: Vec::new(),
            points: Vec::new(),
            gaps: vec![Cover::EMPTY],
        }
    }

    pub fn reals() -> Self {
        RationalBorelSet {
            breaks: Vec::new(),
            points: Vec::new(),
            gaps: vec![Cover::FULL],
        }
    }

    pub fn rationals() -> Self {
        RationalBorelSet::from_component(&Interval::reals(), ComponentClass::RationalsOnly)
    }

    pub fn irrationals() -> Self {
        RationalBorelSet::from_component(&Interval::reals(), ComponentClass::IrrationalsOnly)
    }

    pub fn point(x: Rational) -> Self {
        RationalBorelSet {
            breaks: vec![x],
            points: vec![true],
            gaps: vec![Cover::EMPTY, Cover::EMPTY],
        }
    }

    pub fn points<I: IntoIterator<Item = Rational>>(xs: I) -> Self {
        xs.into_iter()
            .fold(RationalBorelSet::empty(), |acc, x| acc.union(&RationalBorelSet::point(x)))
    }

    pub fn from_component(iv: &Interval, class: ComponentClass) -> Self {
        let cover = class.cover();
        match (&iv.lo, &iv.hi) {
            (Bound::Finite(a), Bound::Finite(b)) if a == b => {
                if cover.rational {
                    RationalBorelSet::point(a.clone())
                } else {
                    RationalBorelSet::empty()
                }
            }
            _ => {
                let mut breaks = Vec::new();
                let mut points = Vec::new();
                let mut gaps = vec![Cover::EMPTY];
                if let Bound::Finite(a) = &iv.lo {
                    breaks.push(a.clone());
                    points.push(iv.lo_closed && cover.rational);
                    gaps.push(Cover::EMPTY);
                }
                // the gap just pushed (or the initial one) is the interior
                let interior = gaps.len() - 1;
                gaps[interior] = cover;
                if let Bound::Finite(b) = &iv.hi {
                    breaks.push(b.clone());
                    points.push(iv.hi_closed && cover.rational);
                    gaps.push(Cover::EMPTY);
                }
                RationalBorelSet { breaks, points, gaps }.canonical()
            }
        }
    }

    /// Full-class interval.
    pub fn interval(iv: &Interval) -> Self {
        RationalBorelSet::from_component(iv, ComponentClass::Full)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        RationalBorelSet::interval(&Interval::closed(lo, hi))
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        RationalBorelSet::interval(&Interval::open(lo, hi))
    }

    /// Builds a set from the public component/point description. Components
    /// are unioned, then `plus` points added, then `minus` points removed.
    pub fn from_parts(
        components: &[(Interval, ComponentClass)],
        plus: &[Rational],
        minus: &[Rational],
    ) -> Self {
        let mut s = components
            .iter()
            .fold(RationalBorelSet::empty(), |acc, (iv, c)| acc.union(&RationalBorelSet::from_component(iv, *c)));
        s = s.union(&RationalBorelSet::points(plus.iter().cloned()));
        s.difference(&RationalBorelSet::points(minus.iter().cloned()))
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn is_empty(&self) -> bool {
        self.breaks.is_empty() && self.gaps[0] == Cover::EMPTY
    }

    pub fn is_reals(&self) -> bool {
        self.breaks.is_empty() && self.gaps[0] == Cover::FULL
    }

    fn canonical(mut self) -> Self {
        let mut breaks = Vec::with_capacity(self.breaks.len());
        let mut points = Vec::with_capacity(self.points.len());
        let mut gaps = Vec::with_capacity(self.gaps.len());
        gaps.push(self.gaps[0]);
        for (i, b) in self.breaks.drain(..).enumerate() {
            let left = *gaps.last().expect("nonempty");
            let right = self.gaps[i + 1];
            let member = self.points[i];
            if left == right && member == left.rational {
                continue;
            }
            breaks.push(b);
            points.push(member);
            gaps.push(right);
        }
        RationalBorelSet { breaks, points, gaps }
    }

    /// Index of the gap containing the open interval immediately right of `x`
    /// and whether `x` itself is a breakpoint.
    fn locate(&self, x: &Rational) -> (usize, Option<usize>) {
        match self.breaks.binary_search(x) {
            Ok(i) => (i + 1, Some(i)),
            Err(i) => (i, None),
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self.locate(x) {
            (_, Some(i)) => self.points[i],
            (g, None) => self.gaps[g].rational,
        }
    }

    pub(crate) fn gap_right_of(&self, x: &Rational) -> Cover {
        self.gaps[self.locate(x).0]
    }

    pub(crate) fn gap_left_of(&self, x: &Rational) -> Cover {
        match self.locate(x) {
            (g, Some(_)) => self.gaps[g - 1],
            (g, None) => self.gaps[g],
        }
    }

    /// Whether a right-neighbourhood of `x` is full measure in the set.
    pub fn right_density_indicator(&self, x: &Rational) -> bool {
        self.gap_right_of(x).irrational
    }

    pub fn left_density_indicator(&self, x: &Rational) -> bool {
        self.gap_left_of(x).irrational
    }

    /// First breakpoint strictly greater than `x`.
    pub fn next_break_after(&self, x: &Rational) -> Option<&Rational> {
        let idx = match self.breaks.binary_search(x) {
            Ok(i) => i + 1,
            Err(i) => i,
        };
        self.breaks.get(idx)
    }

    /// Last breakpoint strictly less than `x`.
    pub fn prev_break_before(&self, x: &Rational) -> Option<&Rational> {
        let idx = match self.breaks.binary_search(x) {
            Ok(i) | Err(i) => i,
        };
        idx.checked_sub(1).map(|i| &self.breaks[i])
    }

    pub(crate) fn first_gap(&self) -> Cover {
        self.gaps[0]
    }

    pub(crate) fn last_gap(&self) -> Cover {
        *self.gaps.last().expect("at least one gap")
    }

    fn gap_bounds(&self, g: usize) -> (Bound, Bound) {
        let lo = if g == 0 { Bound::NegInf } else { Bound::Finite(self.breaks[g - 1].clone()) };
        let hi = self.breaks.get(g).map_or(Bound::PosInf, |b| Bound::Finite(b.clone()));
        (lo, hi)
    }

    /// The open gaps carrying positive measure, as `(lo, hi)` pairs.
    pub fn measure_runs(&self) -> Vec<(Bound, Bound)> {
        (0..self.gaps.len())
            .filter(|&g| self.gaps[g].irrational)
            .map(|g| self.gap_bounds(g))
            .collect()
    }

    pub fn measure(&self) -> Measure {
        let mut total = Rational::zero();
        for (lo, hi) in self.measure_runs() {
            match (lo, hi) {
                (Bound::Finite(a), Bound::Finite(b)) => total += b - a,
                _ => return Measure::Infinite,
            }
        }
        Measure::Finite(total)
    }

    /// Measure of the part of the set inside `[lo, hi]`.
    pub fn measure_within(&self, lo: &Rational, hi: &Rational) -> Rational {
        let mut total = Rational::zero();
        if lo >= hi {
            return total;
        }
        for (a, b) in self.measure_runs() {
            let a = match a {
                Bound::Finite(a) if &a > lo => a,
                _ => lo.clone(),
            };
            let b = match b {
                Bound::Finite(b) if &b < hi => b,
                _ => hi.clone(),
            };
            if a < b {
                total += b - a;
            }
        }
        total
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let mut breaks = Vec::with_capacity(self.breaks.len() + other.breaks.len());
        let mut points = Vec::with_capacity(breaks.capacity());
        let mut gaps = Vec::with_capacity(breaks.capacity() + 1);
        let cover = |a: Cover, b: Cover| Cover {
            rational: op(a.rational, b.rational),
            irrational: op(a.irrational, b.irrational),
        };
        let (mut i, mut j) = (0usize, 0usize);
        gaps.push(cover(self.gaps[0], other.gaps[0]));
        loop {
            let next = match (self.breaks.get(i), other.breaks.get(j)) {
                (None, None) => break,
                (Some(a), None) => (a.clone(), true, false),
                (None, Some(b)) => (b.clone(), false, true),
                (Some(a), Some(b)) => match a.cmp(b) {
                    Ordering::Less => (a.clone(), true, false),
                    Ordering::Greater => (b.clone(), false, true),
                    Ordering::Equal => (a.clone(), true, true),
                },
            };
            let (x, in_a, in_b) = next;
            let pa = if in_a { self.points[i] } else { self.gaps[i].rational };
            let pb = if in_b { other.points[j] } else { other.gaps[j].rational };
            if in_a {
                i += 1;
            }
            if in_b {
                j += 1;
            }
            breaks.push(x);
            points.push(op(pa, pb));
            gaps.push(cover(self.gaps[i], other.gaps[j]));
        }
        RationalBorelSet { breaks, points, gaps }.canonical()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a != b)
    }

    pub fn complement(&self) -> Self {
        RationalBorelSet {
            breaks: self.breaks.clone(),
            points: self.points.iter().map(|p| !p).collect(),
            gaps: self
                .gaps
                .iter()
                .map(|c| Cover { rational: !c.rational, irrational: !c.irrational })
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersect(other).is_empty()
    }

    /// Points with a neighbourhood contained in the set up to a null set.
    /// Always an open Full-class set.
    pub fn essential_interior(&self) -> Self {
        let gaps: Vec<Cover> = self
            .gaps
            .iter()
            .map(|c| if c.irrational { Cover::FULL } else { Cover::EMPTY })
            .collect();
        let points = (0..self.breaks.len())
            .map(|i| self.gaps[i].irrational && self.gaps[i + 1].irrational)
            .collect();
        RationalBorelSet { breaks: self.breaks.clone(), points, gaps }.canonical()
    }

    /// Topological interior in the usual topology of ℝ.
    pub fn natural_interior(&self) -> Self {
        let gaps: Vec<Cover> = self
            .gaps
            .iter()
            .map(|&c| if c == Cover::FULL { Cover::FULL } else { Cover::EMPTY })
            .collect();
        let points = (0..self.breaks.len())
            .map(|i| self.points[i] && gaps[i] == Cover::FULL && gaps[i + 1] == Cover::FULL)
            .collect();
        RationalBorelSet { breaks: self.breaks.clone(), points, gaps }.canonical()
    }

    pub fn natural_closure(&self) -> Self {
        self.complement().natural_interior().complement()
    }

    pub fn is_natural_open(&self) -> bool {
        *self == self.natural_interior()
    }

    pub fn is_natural_closed(&self) -> bool {
        self.complement().is_natural_open()
    }

    pub fn is_bounded(&self) -> bool {
        self.first_gap() == Cover::EMPTY && self.last_gap() == Cover::EMPTY
    }

    /// Smallest and largest breakpoint, if any.
    pub fn hull_breaks(&self) -> Option<(&Rational, &Rational)> {
        Some((self.breaks.first()?, self.breaks.last()?))
    }

    /// Maximal open intervals of a natural-open set. Panics if the set is
    /// not natural-open.
    pub fn open_components(&self) -> Vec<(Bound, Bound)> {
        debug_assert!(self.is_natural_open());
        let mut out: Vec<(Bound, Bound)> = Vec::new();
        let mut g = 0;
        while g < self.gaps.len() {
            if self.gaps[g] != Cover::FULL {
                g += 1;
                continue;
            }
            let (lo, _) = self.gap_bounds(g);
            let mut end = g;
            while end < self.breaks.len() && self.points[end] {
                end += 1;
            }
            let (_, hi) = self.gap_bounds(end);
            out.push((lo, hi));
            g = end + 1;
        }
        out
    }

    /// Distance from `x` to the complement, for natural-open sets; `None` when
    /// the set is all of ℝ.
    pub fn distance_to_complement(&self, x: &Rational) -> Option<Rational> {
        if self.is_reals() {
            return None;
        }
        if !self.contains(x) {
            return Some(Rational::zero());
        }
        let right = self.next_exit_right(x);
        let left = self.next_exit_left(x);
        match (left, right) {
            (Some(l), Some(r)) => Some((x - l).min(r - x)),
            (Some(l), None) => Some(x - l),
            (None, Some(r)) => Some(r - x),
            (None, None) => None,
        }
    }

    fn next_exit_right(&self, x: &Rational) -> Option<Rational> {
        let (mut g, _) = self.locate(x);
        loop {
            if self.gaps[g] != Cover::FULL {
                return self.breaks.get(g.checked_sub(1)?).cloned();
            }
            if g == self.breaks.len() {
                return None;
            }
            if !self.points[g] {
                return Some(self.breaks[g].clone());
            }
            g += 1;
        }
    }

    fn next_exit_left(&self, x: &Rational) -> Option<Rational> {
        let g = match self.locate(x) {
            (g, Some(_)) => g - 1,
            (g, None) => g,
        };
        let mut g = g;
        loop {
            if self.gaps[g] != Cover::FULL {
                return self.breaks.get(g).cloned();
            }
            if g == 0 {
                return None;
            }
            if !self.points[g - 1] {
                return Some(self.breaks[g - 1].clone());
            }
            g -= 1;
        }
    }

    /// Maximal runs as `(interval, class)` components, sorted and disjoint.
    pub fn components(&self) -> Vec<(Interval, ComponentClass)> {
        self.view().0
    }

    /// Rational points in the set outside every component.
    pub fn plus_points(&self) -> Vec<Rational> {
        self.view().1
    }

    /// Rational points inside a component's span that the set excludes.
    pub fn minus_points(&self) -> Vec<Rational> {
        self.view().2
    }

    pub fn view(&self) -> (Vec<(Interval, ComponentClass)>, Vec<Rational>, Vec<Rational>) {
        let mut comps = Vec::new();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        let k = self.breaks.len();
        // a member breakpoint between two different classes attaches to a
        // neighbour that admits rationals, preferring the rationals-only one
        let attach = |i: usize| -> Option<bool> {
            // Some(true) = left component, Some(false) = right component
            if !self.points[i] {
                return None;
            }
            let l = self.gaps[i].class();
            let r = self.gaps[i + 1].class();
            let admits = |c: Option<ComponentClass>| {
                matches!(c, Some(ComponentClass::Full) | Some(ComponentClass::RationalsOnly))
            };
            match (admits(l), admits(r)) {
                (true, true) => Some(r != Some(ComponentClass::RationalsOnly)),
                (true, false) => Some(true),
                (false, true) => Some(false),
                (false, false) => None,
            }
        };
        let mut g = 0;
        while g <= k {
            let Some(class) = self.gaps[g].class() else {
                if g < k && self.points[g] && attach(g).is_none() {
                    plus.push(self.breaks[g].clone());
                }
                g += 1;
                continue;
            };
            let start = g;
            let mut end = g;
            while end < k && self.gaps[end + 1].class() == Some(class) {
                // internal breakpoint: an exception point
                let b = self.breaks[end].clone();
                if class == ComponentClass::IrrationalsOnly {
                    plus.push(b);
                } else {
                    minus.push(b);
                }
                end += 1;
            }
            let (lo, _) = self.gap_bounds(start);
            let (_, hi) = self.gap_bounds(end);
            let lo_closed = start > 0 && attach(start - 1) == Some(false);
            let hi_closed = end < k && attach(end) == Some(true);
            comps.push((
                Interval::new(lo, hi, lo_closed, hi_closed).expect("gap bounds are ordered"),
                class,
            ));
            if end < k && self.points[end] && attach(end).is_none() {
                plus.push(self.breaks[end].clone());
            }
            g = end + 1;
        }
        plus.sort();
        minus.sort();
        (comps, plus, minus)
    }
}

impl fmt::Display for RationalBorelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (comps, plus, minus) = self.view();
        if comps.is_empty() && plus.is_empty() {
            return f.write_str("∅");
        }
        let mut parts: Vec<String> = comps
            .iter()
            .map(|(iv, c)| match c {
                ComponentClass::Full => iv.to_string(),
                ComponentClass::RationalsOnly => format!("{iv}∩Q"),
                ComponentClass::IrrationalsOnly => format!("{iv}∖Q"),
            })
            .collect();
        if !plus.is_empty() {
            parts.push(format!("{{{}}}", plus.iter().map(format_rational).collect::<Vec<_>>().join(", ")));
        }
        write!(f, "{}", parts.join(" ∪ "))?;
        if !minus.is_empty() {
            write!(f, " ∖ {{{}}}", minus.iter().map(format_rational).collect::<Vec<_>>().join(", "))?;
        }
        Ok(())
    }
}

/// Sample grid used by consistency checks: `lo, lo + step, ..., < hi`.
pub fn grid(lo: &Rational, hi: &Rational, step: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut x = lo.clone();
    while &x < hi {
        out.push(x.clone());
        x += step;
    }
    out
}

/// Convenience for the common unit interval.
pub fn unit_interval() -> RationalBorelSet {
    RationalBorelSet::closed(Rational::zero(), Rational::one())
}
