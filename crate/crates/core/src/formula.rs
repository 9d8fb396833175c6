//! Closed-form sequences `f(n)` with exact limits and certified eventual signs.
//!
//! A [`Formula`] is a quotient of two exponential polynomials
//! `Σ ρ^n · p_ρ(n)` with positive rational bases `ρ` and rational polynomial
//! coefficients `p_ρ`. The class contains every radius and value rule the
//! engine is fed (`1/(2n+1)`, `n`, `c/n^e`, `(1/2)^(n+1)`, ...) and is closed
//! under `+ - * /` and index shifts, which is what makes quotient sequences
//! and monotonicity checks symbolic.
//!
//! The leading term of an exponential polynomial is the one with the largest
//! base, ties broken by degree. It decides both the limit and the eventual
//! sign; [`ExpPoly::sign_threshold`] turns "eventually" into an explicit index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, int, parse_rational, pow_i, to_f64, Rational};

/// Limit of a sequence along `n → ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    PosInf,
    NegInf,
}

impl Limit {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Limit::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(v) => f.write_str(&format_rational(v)),
            Limit::PosInf => f.write_str("inf"),
            Limit::NegInf => f.write_str("-inf"),
        }
    }
}

/// `Σ ρ^n · p_ρ(n)` keyed by base.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    terms: BTreeMap<Rational, Poly>,
}

/// Leading behavior of a nonzero [`ExpPoly`].
#[derive(Clone, Debug, PartialEq, Eq)]
struct Lead {
    base: Rational,
    degree: usize,
    coeff: Rational,
}

impl Lead {
    fn growth_cmp(&self, other: &Lead) -> Ordering {
        self.base.cmp(&other.base).then(self.degree.cmp(&other.degree))
    }
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        ExpPoly::poly(Poly::constant(c))
    }

    pub fn poly(p: Poly) -> Self {
        ExpPoly::term(Rational::one(), p)
    }

    /// `ρ^n · p(n)`
    pub fn term(base: Rational, p: Poly) -> Self {
        assert!(base.is_positive(), "exponential base must be positive");
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(base, p);
        }
        ExpPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Poly)> {
        self.terms.iter()
    }

    /// `Some(p)` when no exponential factor other than `1^n` occurs.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => self.terms.get(&Rational::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    fn insert_add(&mut self, base: Rational, p: Poly) {
        let sum = match self.terms.remove(&base) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(base, sum);
        }
    }

    pub fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for (b, p) in &other.terms {
            out.insert_add(b.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(b, p)| (b.clone(), -p)).collect() }
    }

    pub fn sub(&self, other: &ExpPoly) -> ExpPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = ExpPoly::zero();
        for (b1, p1) in &self.terms {
            for (b2, p2) in &other.terms {
                out.insert_add(b1 * b2, p1 * p2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ExpPoly {
        if c.is_zero() {
            return ExpPoly::zero();
        }
        ExpPoly { terms: self.terms.iter().map(|(b, p)| (b.clone(), p.scale(c))).collect() }
    }

    /// `n ↦ self(n + k)`
    pub fn shift(&self, k: i64) -> ExpPoly {
        let kq = int(k);
        let mut out = ExpPoly::zero();
        for (b, p) in &self.terms {
            out.insert_add(b.clone(), p.shift(&kq).scale(&pow_i(b, k)));
        }
        out
    }

    pub fn eval(&self, n: u64) -> Rational {
        let nq = Rational::from_integer(n.into());
        self.terms
            .iter()
            .map(|(b, p)| p.eval(&nq) * num_traits::pow(b.clone(), n as usize))
            .sum()
    }

    /// `self(n) / scale^n` in floating point, robust for large `n`.
    fn lead(&self) -> Option<Lead> {
        self.terms.iter().next_back().map(|(b, p)| Lead {
            base: b.clone(),
            degree: p.degree().expect("stored polynomials are nonzero"),
            coeff: p.lead().expect("nonzero").clone(),
        })
    }

    /// Sign of the leading coefficient (0 for the zero polynomial).
    pub fn eventual_sign(&self) -> i8 {
        match self.lead() {
            None => 0,
            Some(l) if l.coeff.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// An index `T >= 1` such that `sign(self(n)) = eventual_sign()` for all `n >= T`.
    ///
    /// Dividing by the leading monomial leaves `c_L + R(n)` where every term of
    /// the remainder has `|c| n^e r^n` with `r < 1`, or `r = 1` and `e < 0`.
    /// Each such term decreases once `n > e/(1-r)`, so past that point `R` is
    /// monotone and the first `n` with `|R(n)| < |c_L|` certifies the sign.
    pub fn sign_threshold(&self) -> u64 {
        let Some(lead) = self.lead() else { return 1 };
        let mut rest: Vec<(Rational, i64, Rational)> = Vec::new();
        let mut n_dec = 1u64;
        for (b, p) in &self.terms {
            let r = b / &lead.base;
            for (k, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() || (b == &lead.base && k == lead.degree) {
                    continue;
                }
                let e = k as i64 - lead.degree as i64;
                if e > 0 && r < Rational::one() {
                    let bound = (Rational::from_integer(e.into()) / (Rational::one() - &r)).floor();
                    n_dec = n_dec.max(bound.to_integer().to_u64().unwrap_or(u64::MAX / 4) + 1);
                }
                rest.push((r.clone(), e, c.abs()));
            }
        }
        if rest.is_empty() {
            return 1;
        }
        let target = lead.coeff.abs();
        let remainder = |n: u64| -> Rational {
            let nq = Rational::from_integer(n.into());
            rest.iter()
                .map(|(r, e, c)| c * pow_i(&nq, *e) * num_traits::pow(r.clone(), n as usize))
                .sum()
        };
        let mut lo = n_dec;
        if remainder(lo) < target {
            return lo;
        }
        let mut hi = lo.saturating_mul(2);
        while remainder(hi) >= target {
            lo = hi;
            hi = hi.saturating_mul(2);
        }
        // remainder(lo) >= target > remainder(hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if remainder(mid) < target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (b, p) in self.terms.iter().rev() {
            if b.is_one() {
                parts.push(p.render("n"));
                continue;
            }
            let base = if b.is_integer() {
                format!("{}^n", b.numer())
            } else {
                format!("({})^n", format_rational(b))
            };
            let txt = match p.as_constant() {
                Some(c) if c.is_one() => base,
                Some(c) if (-&c).is_one() => format!("-{base}"),
                Some(c) if c.is_integer() => format!("{}*{base}", c.numer()),
                Some(c) if c.is_negative() => format!("-({})*{base}", format_rational(&-c)),
                Some(c) => format!("({})*{base}", format_rational(&c)),
                None => format!("({})*{base}", p.render("n")),
            };
            parts.push(txt);
        }
        let mut out = parts[0].clone();
        for part in &parts[1..] {
            match part.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(part);
                }
            }
        }
        out
    }
}

/// A quotient `num(n) / den(n)` of exponential polynomials.
#[derive(Clone, Debug)]
pub struct Formula {
    num: ExpPoly,
    den: ExpPoly,
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for Formula {}

impl Formula {
    pub fn new(num: ExpPoly, den: ExpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Formula { expr: num.render(), message: "division by zero".into() });
        }
        Ok(Formula { num, den }.normalized())
    }

    pub fn constant(c: Rational) -> Self {
        Formula { num: ExpPoly::constant(c), den: ExpPoly::constant(Rational::one()) }
    }

    pub fn from_exp_poly(e: ExpPoly) -> Self {
        Formula { num: e, den: ExpPoly::constant(Rational::one()) }
    }

    /// The identity sequence `n`.
    pub fn n() -> Self {
        Formula::from_exp_poly(ExpPoly::poly(Poly::x()))
    }

    /// `ρ^n`
    pub fn geometric(base: Rational) -> Self {
        Formula::from_exp_poly(ExpPoly::term(base, Poly::constant(Rational::one())))
    }

    pub fn numerator(&self) -> &ExpPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ExpPoly {
        &self.den
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return Formula::constant(Rational::zero());
        }
        // a single exponential base in the denominator divides out
        if self.den.terms.len() == 1 {
            let base = self.den.terms.keys().next().expect("one term").clone();
            if !base.is_one() {
                let div = |e: &ExpPoly| ExpPoly {
                    terms: e.terms.iter().map(|(b, p)| (b / &base, p.clone())).collect(),
                };
                self.num = div(&self.num);
                self.den = div(&self.den);
            }
        }
        if let (Some(p), Some(q)) = (self.num.as_poly(), self.den.as_poly()) {
            let g = p.gcd(&q);
            if g.degree().unwrap_or(0) > 0 {
                self.num = ExpPoly::poly(p.div_rem(&g).0);
                self.den = ExpPoly::poly(q.div_rem(&g).0);
            }
        }
        // primitive integer denominator with positive leading coefficient
        let coeffs: Vec<&Rational> = self.den.terms.values().flat_map(|p| p.coeffs()).collect();
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let mut factor = Rational::new(lcm, gcd);
        if self.den.eventual_sign() < 0 {
            factor = -factor;
        }
        self.num = self.num.scale(&factor);
        self.den = self.den.scale(&factor);
        self
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        let c = self.den.as_constant()?;
        self.num.as_constant().map(|n| n / c)
    }

    pub fn add(&self, other: &Formula) -> Formula {
        if self.den == other.den {
            return Formula { num: self.num.add(&other.num), den: self.den.clone() }.normalized();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Formula { num, den: self.den.mul(&other.den) }.normalized()
    }

    pub fn neg(&self) -> Formula {
        Formula { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Formula) -> Formula {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Formula) -> Formula {
        Formula { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }.normalized()
    }

    pub fn div(&self, other: &Formula) -> Result<Formula> {
        Formula::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn add_constant(&self, c: &Rational) -> Formula {
        self.add(&Formula::constant(c.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Formula {
        Formula { num: self.num.scale(c), den: self.den.clone() }.normalized()
    }

    pub fn powi(&self, k: i64) -> Result<Formula> {
        let mut acc = Formula::constant(Rational::one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(self);
        }
        if k < 0 {
            Formula::constant(Rational::one()).div(&acc)
        } else {
            Ok(acc)
        }
    }

    /// `n ↦ f(n + k)`
    pub fn shift(&self, k: i64) -> Formula {
        Formula { num: self.num.shift(k), den: self.den.shift(k) }.normalized()
    }

    /// Exact value at `n`, failing where the denominator vanishes.
    pub fn eval(&self, n: u64) -> Result<Rational> {
        let d = self.den.eval(n);
        if d.is_zero() {
            return Err(Error::Formula {
                expr: self.to_string(),
                message: format!("denominator vanishes at n = {n}"),
            });
        }
        Ok(self.num.eval(n) / d)
    }

    /// Floating-point value at `n`; both parts are scaled by the
    /// denominator's leading base so large `n` neither overflows nor underflows.
    pub fn eval_f64(&self, n: u64) -> f64 {
        self.compile().eval(n)
    }

    /// Floating-point evaluator with all conversions done up front.
    pub fn compile(&self) -> CompiledFormula {
        let scale = self.den.lead().map(|l| l.base).unwrap_or_else(Rational::one);
        let part = |e: &ExpPoly| -> Vec<(f64, Vec<f64>)> {
            e.terms
                .iter()
                .map(|(b, p)| (to_f64(&(b / &scale)).ln(), p.coeffs().iter().map(to_f64).collect()))
                .collect()
        };
        CompiledFormula { num: part(&self.num), den: part(&self.den) }
    }

    pub fn limit(&self) -> Limit {
        let (Some(nl), Some(dl)) = (self.num.lead(), self.den.lead()) else {
            return Limit::Finite(Rational::zero());
        };
        match nl.growth_cmp(&dl) {
            Ordering::Less => Limit::Finite(Rational::zero()),
            Ordering::Equal => Limit::Finite(&nl.coeff / &dl.coeff),
            Ordering::Greater if (&nl.coeff / &dl.coeff).is_positive() => Limit::PosInf,
            Ordering::Greater => Limit::NegInf,
        }
    }

    /// Sign of `f(n)` for all `n >= threshold`, together with that threshold.
    /// Zero only when the formula is identically zero.
    pub fn eventual_sign(&self) -> (i8, u64) {
        let s = self.num.eventual_sign() * self.den.eventual_sign();
        let t = self.num.sign_threshold().max(self.den.sign_threshold());
        (s, t)
    }

    /// First index from which the denominator never vanishes.
    pub fn defined_from(&self) -> u64 {
        self.den.sign_threshold()
    }

    /// Whether `|f(n) - limit|` is eventually non-increasing, together with an
    /// index from which it holds. `None` when the limit is infinite.
    pub fn eventually_monotone_to_limit(&self) -> Option<u64> {
        let l = self.limit().finite()?.clone();
        let g = self.add_constant(&-l);
        let h = g.sub(&g.shift(1));
        let (sg, tg) = g.eventual_sign();
        let (sh, th) = h.eventual_sign();
        (sg == 0 || sh == 0 || sg == sh).then(|| tg.max(th))
    }

    pub fn parse(text: &str) -> Result<Formula> {
        Parser::new(text)?.parse_all()
    }
}

fn wrap_unless_atomic(s: &str) -> String {
    let atomic = s.chars().all(|c| c.is_ascii_digit())
        || s == "n"
        || (s.starts_with("n^") && s[2..].chars().all(|c| c.is_ascii_digit()));
    if atomic {
        s.to_string()
    } else {
        format!("({s})")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.render();
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return f.write_str(&num);
        }
        let num = if num.contains(' ') { format!("({num})") } else { num };
        write!(f, "{num}/{}", wrap_unless_atomic(&self.den.render()))
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Formula::parse(s)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Formula::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(Rational),
    Var,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    text: String,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let err = |m: String| Error::Formula { expr: text.to_string(), message: m };
        let mut tokens = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' => {}
                '+' => tokens.push(Token::Plus),
                '-' => tokens.push(Token::Minus),
                '*' | '·' => tokens.push(Token::Star),
                '/' => tokens.push(Token::Slash),
                '^' => tokens.push(Token::Caret),
                '(' => tokens.push(Token::LParen),
                ')' => tokens.push(Token::RParen),
                'n' => tokens.push(Token::Var),
                d if d.is_ascii_digit() || d == '.' => {
                    let start = i;
                    while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '.') {
                        i += 1;
                    }
                    let lit: String = chars[start..=i].iter().collect();
                    tokens.push(Token::Num(parse_rational(&lit).map_err(|_| err(format!("bad number '{lit}'")))?));
                }
                other => return Err(err(format!("unexpected character '{other}'"))),
            }
            i += 1;
        }
        Ok(Parser { text: text.to_string(), tokens, pos: 0 })
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Formula { expr: self.text.clone(), message: message.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            _ => Err(self.err(format!("expected {t:?}"))),
        }
    }

    fn parse_all(mut self) -> Result<Formula> {
        if self.tokens.is_empty() {
            return Err(self.err("empty expression"));
        }
        let f = self.expr()?;
        if self.pos != self.tokens.len() {
            return Err(self.err("trailing input"));
        }
        Ok(f)
    }

    fn expr(&mut self) -> Result<Formula> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        // juxtaposition binds tighter than '/', so `1/2n` is `1/(2n)`
        let mut acc = self.power()?;
        while matches!(self.peek(), Some(Token::Num(_) | Token::Var | Token::LParen)) {
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Formula> {
        let base = self.primary()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exponent = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            self.primary()?.neg()
        } else {
            self.primary()?
        };
        let exp_poly = exponent
            .num
            .as_poly()
            .filter(|_| exponent.den.as_constant().is_some())
            .map(|p| p.scale(&exponent.den.as_constant().expect("checked").recip()))
            .filter(|p| p.degree().unwrap_or(0) <= 1 && p.coeffs().iter().all(|c| c.is_integer()))
            .ok_or_else(|| self.err("exponent must be an integer or an integer affine function of n"))?;
        let slope = exp_poly.coeff(1).to_integer().to_i64().ok_or_else(|| self.err("exponent too large"))?;
        let offset = exp_poly.coeff(0).to_integer().to_i64().ok_or_else(|| self.err("exponent too large"))?;
        if slope == 0 {
            return base.powi(offset).map_err(|_| self.err("zero raised to a negative power"));
        }
        let b = base
            .as_constant()
            .filter(|b| b.is_positive())
            .ok_or_else(|| self.err("a base raised to a power of n must be a positive constant"))?;
        Ok(Formula::geometric(pow_i(&b, slope)).scale(&pow_i(&b, offset)))
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.next() {
            Some(Token::Num(q)) => Ok(Formula::constant(q)),
            Some(Token::Var) => Ok(Formula::n()),
            Some(Token::LParen) => {
                let f = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(f)
            }
            _ => Err(self.err("expected a number, 'n' or '('")),
        }
    }
}

/// `num / den`, each a list of `(ln ratio, polynomial coefficients)` terms.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    num: Vec<(f64, Vec<f64>)>,
    den: Vec<(f64, Vec<f64>)>,
}

impl CompiledFormula {
    fn part(terms: &[(f64, Vec<f64>)], n: f64) -> f64 {
        terms
            .iter()
            .map(|(ln_ratio, coeffs)| {
                let factor = if *ln_ratio == 0.0 { 1.0 } else { (n * ln_ratio).exp() };
                if factor == 0.0 {
                    0.0
                } else {
                    coeffs.iter().rev().fold(0.0, |acc, c| acc * n + c) * factor
                }
            })
            .sum()
    }

    pub fn eval(&self, n: u64) -> f64 {
        let n = n as f64;
        Self::part(&self.num, n) / Self::part(&self.den, n)
    }
}
