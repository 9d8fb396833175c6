//! Functions given piecewise over a partition of ℝ into representable sets.
//!
//! Each piece carries a rational function of `x`. Affine pieces are the main
//! model; products produce polynomials and the separating-function
//! construction produces quotients of affine functions.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};
use crate::sets::{Interval, RationalBorelSet};

/// `num(x) / den(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidFunction("zero denominator".into()));
        }
        let lead = den.lead().expect("nonzero").clone();
        let inv = lead.recip();
        Ok(RatFn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::constant(Rational::one()) }
    }

    pub fn constant(c: Rational) -> Self {
        RatFn::poly(Poly::constant(c))
    }

    /// `a*x + b`
    pub fn affine(a: Rational, b: Rational) -> Self {
        RatFn::poly(Poly::affine(a, b))
    }

    pub fn identity() -> Self {
        RatFn::poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.as_constant().is_some().then_some(&self.num)
    }

    /// `(slope, intercept)` for affine and constant pieces.
    pub fn as_affine(&self) -> Option<(Rational, Rational)> {
        let p = self.as_poly()?;
        (p.degree().unwrap_or(0) <= 1).then(|| (p.coeff(1), p.coeff(0)))
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(Poly::as_constant)
    }

    /// Both numerator and denominator of degree at most one.
    pub fn is_mobius(&self) -> bool {
        self.num.degree().unwrap_or(0) <= 1 && self.den.degree().unwrap_or(0) <= 1
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.den == other.den {
            return RatFn { num: &self.num + &other.num, den: self.den.clone() };
        }
        RatFn { num: &(&self.num * &other.den) + &(&other.num * &self.den), den: &self.den * &other.den }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        RatFn::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// `a * self + b`
    pub fn affine_after(&self, a: &Rational, b: &Rational) -> RatFn {
        RatFn { num: &self.num.scale(a) + &self.den.scale(b), den: self.den.clone() }
    }

    /// The open set `{x : self(x) < mu}` (or `<=` when `!strict`), for
    /// Möbius expressions; `None` otherwise.
    pub fn sublevel(&self, mu: &Rational, strict: bool) -> Option<RationalBorelSet> {
        if !self.is_mobius() {
            return None;
        }
        // num - mu*den compared with 0, on each sign region of den
        let diff = &self.num - &self.den.scale(mu);
        let linear_neg = |p: &Poly, flip: bool| -> RationalBorelSet {
            // {x : p(x) < 0}, or {x : p(x) > 0} when flip
            let (c, d) = (p.coeff(1), p.coeff(0));
            let (c, d) = if flip { (-c, -d) } else { (c, d) };
            if c.is_zero() {
                let holds = if strict { d.is_negative() } else { !d.is_positive() };
                return if holds { RationalBorelSet::reals() } else { RationalBorelSet::empty() };
            }
            let root = -&d / &c;
            let ray = if c.is_positive() { Interval::below(root, !strict) } else { Interval::above(root, !strict) };
            RationalBorelSet::interval(&ray)
        };
        let den_pos = linear_neg(&-&self.den, false);
        let den_neg = linear_neg(&self.den, false);
        Some(den_pos.intersect(&linear_neg(&diff, false)).union(&den_neg.intersect(&linear_neg(&diff, true))))
    }

    /// `{x : self(x) > mu}` (or `>=`).
    pub fn superlevel(&self, mu: &Rational, strict: bool) -> Option<RationalBorelSet> {
        let neg = RatFn { num: -&self.num, den: self.den.clone() };
        neg.sublevel(&-mu, strict)
    }

    /// `{x : self(x) = mu}` within the domain.
    pub fn level(&self, mu: &Rational) -> Option<RationalBorelSet> {
        let le = self.sublevel(mu, false)?;
        let lt = self.sublevel(mu, true)?;
        Some(le.difference(&lt))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_constant() {
            Some(c) if c.is_one() => write!(f, "{}", self.num),
            _ => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub set: RationalBorelSet,
    pub expr: RatFn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseFunction {
    pieces: Vec<Piece>,
}

impl PiecewiseFunction {
    /// Validates that the piece sets partition ℝ and that every expression
    /// is defined on its piece.
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let mut seen = RationalBorelSet::empty();
        for (i, p) in pieces.iter().enumerate() {
            if !seen.is_disjoint(&p.set) {
                return Err(Error::InvalidFunction(format!("piece {i} overlaps an earlier piece")));
            }
            seen = seen.union(&p.set);
            match p.expr.den.degree() {
                Some(0) => {}
                Some(1) => {
                    let root = -p.expr.den.coeff(0) / p.expr.den.coeff(1);
                    if p.set.contains(&root) {
                        return Err(Error::InvalidFunction(format!(
                            "piece {i}: denominator vanishes at {}",
                            format_rational(&root)
                        )));
                    }
                }
                _ => {
                    return Err(Error::Unsupported(format!(
                        "piece {i}: denominators of degree above one are not supported"
                    )))
                }
            }
        }
        if !seen.is_reals() {
            return Err(Error::InvalidFunction("pieces do not cover the real line".into()));
        }
        let pieces = pieces.into_iter().filter(|p| !p.set.is_empty()).collect();
        Ok(PiecewiseFunction { pieces })
    }

    pub fn constant(c: Rational) -> Self {
        PiecewiseFunction { pieces: vec![Piece { set: RationalBorelSet::reals(), expr: RatFn::constant(c) }] }
    }

    pub fn identity() -> Self {
        PiecewiseFunction { pieces: vec![Piece { set: RationalBorelSet::reals(), expr: RatFn::identity() }] }
    }

    pub fn from_pairs(pairs: Vec<(RationalBorelSet, RatFn)>) -> Result<Self> {
        PiecewiseFunction::new(pairs.into_iter().map(|(set, expr)| Piece { set, expr }).collect())
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece_at(&self, x: &Rational) -> &Piece {
        self.pieces.iter().find(|p| p.set.contains(x)).expect("pieces cover ℝ")
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.piece_at(x).expr.eval(x).expect("validated: defined on its piece")
    }

    pub fn is_affine(&self) -> bool {
        self.pieces.iter().all(|p| p.expr.as_affine().is_some())
    }

    /// All breakpoints of all piece sets, sorted and de-duplicated.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut all: Vec<Rational> = self.pieces.iter().flat_map(|p| p.set.breakpoints().iter().cloned()).collect();
        all.sort();
        all.dedup();
        all
    }

    fn combine(&self, other: &PiecewiseFunction, op: impl Fn(&RatFn, &RatFn) -> Result<RatFn>) -> Result<Self> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for q in &other.pieces {
                let set = p.set.intersect(&q.set);
                if !set.is_empty() {
                    pieces.push(Piece { set, expr: op(&p.expr, &q.expr)? });
                }
            }
        }
        PiecewiseFunction::new(pieces)
    }

    pub fn add(&self, other: &PiecewiseFunction) -> Result<Self> {
        self.combine(other, |a, b| Ok(a.add(b)))
    }

    pub fn mul(&self, other: &PiecewiseFunction) -> Result<Self> {
        self.combine(other, |a, b| Ok(a.mul(b)))
    }

    /// `self / other`, defined where `other` does not vanish on a piece.
    pub fn div(&self, other: &PiecewiseFunction) -> Result<Self> {
        self.combine(other, |a, b| a.div(b))
    }

    /// `x ↦ a * self(x) + b`
    pub fn post_affine(&self, a: &Rational, b: &Rational) -> Self {
        PiecewiseFunction {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece { set: p.set.clone(), expr: p.expr.affine_after(a, b) })
                .collect(),
        }
    }

    /// `{x : f(x) < mu}` and `{x : f(x) > mu}` for Möbius pieces.
    pub fn level_sets(&self, mu: &Rational) -> Result<(RationalBorelSet, RationalBorelSet)> {
        let mut below = RationalBorelSet::empty();
        let mut above = RationalBorelSet::empty();
        for p in &self.pieces {
            let unsupported = || Error::Unsupported(format!("level sets of the piece {}", p.expr));
            let lo = p.expr.sublevel(mu, true).ok_or_else(unsupported)?;
            let hi = p.expr.superlevel(mu, true).ok_or_else(unsupported)?;
            below = below.union(&p.set.intersect(&lo));
            above = above.union(&p.set.intersect(&hi));
        }
        Ok((below, above))
    }
}

impl fmt::Display for PiecewiseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} on {}", p.expr, p.set)?;
        }
        Ok(())
    }
}
