//! Urysohn-type functions for open hosts and the two-set separating function.
//!
//! For a host `H` open in the usual topology, `Q_β = {x ∈ H : dist(x, Hᶜ) >= r/β}`
//! is closed, increasing in `β`, exhausts `H`, and each `Q_β` lies in the
//! interior of every later one. Then `g(x) = 1 / inf{β >= 1 : x ∈ Q_β}`
//! equals `min(1, dist(x, Hᶜ) / r)`, a continuous piecewise-affine function.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::continuity::is_iac_at;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::piecewise::{Piece, PiecewiseFunction, RatFn};
use crate::rational::{int, Rational};
use crate::sets::{Bound, Interval, RationalBorelSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Urysohn {
    host: RationalBorelSet,
    r_max: Rational,
    function: PiecewiseFunction,
}

fn line_at(line: &RatFn, x: &Rational) -> Rational {
    line.eval(x).expect("polynomial")
}

impl Urysohn {
    pub fn new(host: &RationalBorelSet, r_max: Rational) -> Result<Self> {
        if !r_max.is_positive() {
            return Err(Error::HostNotSuitable("margin scale must be positive".into()));
        }
        if !host.is_natural_open() {
            return Err(Error::HostNotSuitable(
                "the host's complement is not closed, so distance to it does not vanish exactly off the host".into(),
            ));
        }
        let mut pieces = vec![Piece { set: host.complement(), expr: RatFn::constant(Rational::zero()) }];
        for (lo, hi) in host.open_components() {
            let mut lines = vec![RatFn::constant(Rational::one())];
            let inv = r_max.recip();
            if let Bound::Finite(a) = &lo {
                lines.push(RatFn::affine(inv.clone(), -a * &inv));
            }
            if let Bound::Finite(b) = &hi {
                lines.push(RatFn::affine(-&inv, b * &inv));
            }
            let inside = |x: &Rational| Bound::Finite(x.clone()) > lo && Bound::Finite(x.clone()) < hi;
            let mut cuts = BTreeSet::new();
            if let Bound::Finite(a) = &lo {
                cuts.insert(a + &r_max);
            }
            if let Bound::Finite(b) = &hi {
                cuts.insert(b - &r_max);
            }
            if let (Bound::Finite(a), Bound::Finite(b)) = (&lo, &hi) {
                cuts.insert((a + b) / int(2));
            }
            let cuts: Vec<Rational> = cuts.into_iter().filter(|c| inside(c)).collect();
            let mut ends: Vec<Bound> = vec![lo.clone()];
            ends.extend(cuts.iter().cloned().map(Bound::Finite));
            ends.push(hi.clone());
            for w in ends.windows(2) {
                let sample = match (&w[0], &w[1]) {
                    (Bound::Finite(a), Bound::Finite(b)) => (a + b) / int(2),
                    (Bound::Finite(a), _) => a + int(1),
                    (_, Bound::Finite(b)) => b - int(1),
                    _ => Rational::zero(),
                };
                let best = lines
                    .iter()
                    .min_by(|x, y| line_at(x, &sample).cmp(&line_at(y, &sample)))
                    .expect("non-empty")
                    .clone();
                let closed_hi = w[1] != hi;
                let iv = Interval::new(w[0].clone(), w[1].clone(), false, closed_hi)?;
                pieces.push(Piece { set: RationalBorelSet::interval(&iv), expr: best });
            }
        }
        let function = PiecewiseFunction::new(pieces)?;
        Ok(Urysohn { host: host.clone(), r_max, function })
    }

    pub fn host(&self) -> &RationalBorelSet {
        &self.host
    }

    pub fn r_max(&self) -> &Rational {
        &self.r_max
    }

    pub fn function(&self) -> &PiecewiseFunction {
        &self.function
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.function.eval(x)
    }

    /// `{x ∈ H : dist(x, Hᶜ) >= r_max / β}` for `β >= 1`.
    pub fn q_beta(&self, beta: &Rational) -> RationalBorelSet {
        let margin = &self.r_max / beta;
        let mut out = RationalBorelSet::empty();
        for (lo, hi) in self.host.open_components() {
            let a = match &lo {
                Bound::Finite(a) => Bound::Finite(a + &margin),
                other => other.clone(),
            };
            let b = match &hi {
                Bound::Finite(b) => Bound::Finite(b - &margin),
                other => other.clone(),
            };
            if a <= b {
                let iv = Interval::new(a, b, true, true).expect("ordered");
                out = out.union(&RationalBorelSet::interval(&iv));
            }
        }
        out
    }
}

pub fn urysohn(host: &RationalBorelSet, r_max: Rational) -> Result<Urysohn> {
    Urysohn::new(host, r_max)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingFunction {
    pub closed: RationalBorelSet,
    pub point: Rational,
    pub g1: Urysohn,
    pub g2: Urysohn,
    /// `g1 / (g1 + g2)`
    pub g: PiecewiseFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationSample {
    pub x: Rational,
    pub g1: Rational,
    pub g2: Rational,
    pub g: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparationReport {
    pub zero_on_closed: bool,
    pub one_at_point: bool,
    pub in_unit_range: bool,
    pub iac_everywhere: bool,
    /// Grid points where some check failed.
    pub failures: Vec<Rational>,
}

impl SeparationReport {
    pub fn ok(&self) -> bool {
        self.zero_on_closed && self.one_at_point && self.in_unit_range && self.iac_everywhere
    }
}

impl SeparatingFunction {
    pub fn new(closed: &RationalBorelSet, point: &Rational, r_max: Rational) -> Result<Self> {
        if !closed.is_natural_closed() {
            return Err(Error::HostNotSuitable("the set to separate from must be closed".into()));
        }
        if closed.contains(point) {
            return Err(Error::PointInClosedSet(crate::rational::format_rational(point)));
        }
        let g1 = Urysohn::new(&closed.complement(), r_max.clone())?;
        let g2 = Urysohn::new(&RationalBorelSet::point(point.clone()).complement(), r_max)?;
        let sum = g1.function().add(g2.function())?;
        let g = g1.function().div(&sum)?;
        Ok(SeparatingFunction { closed: closed.clone(), point: point.clone(), g1, g2, g })
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.g.eval(x)
    }

    pub fn sample(&self, xs: &[Rational]) -> Vec<SeparationSample> {
        xs.iter()
            .map(|x| SeparationSample { x: x.clone(), g1: self.g1.eval(x), g2: self.g2.eval(x), g: self.g.eval(x) })
            .collect()
    }

    /// Checks the defining properties on the given points, the point itself
    /// and every breakpoint of the closed set.
    pub fn verify(&self, grid: &[Rational], ideal: &dyn Ideal) -> SeparationReport {
        let mut points: BTreeSet<Rational> = grid.iter().cloned().collect();
        points.insert(self.point.clone());
        points.extend(self.closed.breakpoints().iter().cloned());
        let mut report =
            SeparationReport { zero_on_closed: true, one_at_point: true, in_unit_range: true, iac_everywhere: true, failures: vec![] };
        for x in &points {
            let v = self.eval(x);
            let mut bad = false;
            if v.is_negative() || v > Rational::one() {
                report.in_unit_range = false;
                bad = true;
            }
            if self.closed.contains(x) != v.is_zero() {
                report.zero_on_closed = false;
                bad = true;
            }
            if (*x == self.point) != v.is_one() {
                report.one_at_point = false;
                bad = true;
            }
            if !is_iac_at(&self.g, x, ideal).holds {
                report.iac_everywhere = false;
                bad = true;
            }
            if bad {
                report.failures.push(x.clone());
            }
        }
        report
    }
}

pub fn separating_function(closed: &RationalBorelSet, point: &Rational) -> Result<SeparatingFunction> {
    SeparatingFunction::new(closed, point, Rational::one())
}
