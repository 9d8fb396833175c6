//! Decidable subsets of ℕ = {1, 2, 3, ...}.
//!
//! Atoms are finite lists, arithmetic progressions and perfect powers; the
//! grammar is closed under union, intersection and complement. For large `n`
//! membership depends only on the *type* of `n`: its residue modulo the lcm
//! `L` of all progression differences, and the set `T` of power exponents
//! for which `n` is a perfect power. That observation gives exact answers to
//! every question the engine asks:
//!
//! * natural density: perfect powers and finite sets are density zero, so the
//!   density is the fraction of residues mod `L` that satisfy the expression
//!   with all sparse atoms set to false;
//! * finiteness: a type `(r, T)` occurs infinitely often iff `r ≡ m^k (mod L)`
//!   for some `m`, where `k = lcm(T)`, and no exponent outside `T` divides `k`.
//!   The set is infinite iff some realisable type satisfies the expression.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndexSet {
    Empty,
    All,
    Finite { elems: BTreeSet<u64> },
    /// `{a + d*k : k >= 0} ∩ ℕ`
    Ap { a: u64, d: u64 },
    /// `{m^e : m >= 1}`
    Powers { e: u32 },
    Union { args: Vec<IndexSet> },
    Intersection { args: Vec<IndexSet> },
    Complement { of: Box<IndexSet> },
}

/// Largest `r` with `r^e <= n`.
pub fn integer_root(n: u64, e: u32) -> u64 {
    if n < 2 || e == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / e as f64).round() as u64;
    let pow_le = |r: u64| r.checked_pow(e).is_some_and(|p| p <= n);
    while r > 0 && !pow_le(r) {
        r -= 1;
    }
    while pow_le(r + 1) {
        r += 1;
    }
    r
}

pub fn is_perfect_power(n: u64, e: u32) -> bool {
    n >= 1 && integer_root(n, e).pow(e) == n
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u128;
    let mut b = (base % m) as u128;
    let mut e = exp;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

#[derive(Default)]
struct Atoms {
    modulus: u64,
    exponents: BTreeSet<u32>,
    bound: u64,
}

impl IndexSet {
    pub fn finite<I: IntoIterator<Item = u64>>(elems: I) -> Self {
        IndexSet::Finite { elems: elems.into_iter().collect() }
    }

    pub fn ap(a: u64, d: u64) -> Self {
        assert!(d >= 1, "progression difference must be positive");
        IndexSet::Ap { a, d }
    }

    pub fn powers(e: u32) -> Self {
        assert!(e >= 2, "power exponent must be at least 2");
        IndexSet::Powers { e }
    }

    /// `{n : n >= start}`
    pub fn from_index(start: u64) -> Self {
        if start <= 1 {
            IndexSet::All
        } else {
            IndexSet::ap(start, 1)
        }
    }

    pub fn union(args: Vec<IndexSet>) -> Self {
        let args: Vec<IndexSet> = args.into_iter().filter(|a| *a != IndexSet::Empty).collect();
        match args.len() {
            0 => IndexSet::Empty,
            1 => args.into_iter().next().expect("one element"),
            _ if args.contains(&IndexSet::All) => IndexSet::All,
            _ => IndexSet::Union { args },
        }
    }

    pub fn intersection(args: Vec<IndexSet>) -> Self {
        let args: Vec<IndexSet> = args.into_iter().filter(|a| *a != IndexSet::All).collect();
        match args.len() {
            0 => IndexSet::All,
            1 => args.into_iter().next().expect("one element"),
            _ if args.contains(&IndexSet::Empty) => IndexSet::Empty,
            _ => IndexSet::Intersection { args },
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            IndexSet::Empty => IndexSet::All,
            IndexSet::All => IndexSet::Empty,
            IndexSet::Complement { of } => (**of).clone(),
            other => IndexSet::Complement { of: Box::new(other.clone()) },
        }
    }

    pub fn and(&self, other: &IndexSet) -> Self {
        IndexSet::intersection(vec![self.clone(), other.clone()])
    }

    pub fn or(&self, other: &IndexSet) -> Self {
        IndexSet::union(vec![self.clone(), other.clone()])
    }

    pub fn minus(&self, other: &IndexSet) -> Self {
        self.and(&other.complement())
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match self {
            IndexSet::Empty => false,
            IndexSet::All => true,
            IndexSet::Finite { elems } => elems.contains(&n),
            IndexSet::Ap { a, d } => n >= *a && (n - a).is_multiple_of(*d),
            IndexSet::Powers { e } => is_perfect_power(n, *e),
            IndexSet::Union { args } => args.iter().any(|s| s.contains(n)),
            IndexSet::Intersection { args } => args.iter().all(|s| s.contains(n)),
            IndexSet::Complement { of } => !of.contains(n),
        }
    }

    fn collect_atoms(&self, acc: &mut Atoms) {
        match self {
            IndexSet::Empty | IndexSet::All => {}
            IndexSet::Finite { elems } => {
                if let Some(&m) = elems.iter().next_back() {
                    acc.bound = acc.bound.max(m);
                }
            }
            IndexSet::Ap { a, d } => {
                acc.modulus = acc.modulus.lcm(d);
                acc.bound = acc.bound.max(*a);
            }
            IndexSet::Powers { e } => {
                acc.exponents.insert(*e);
            }
            IndexSet::Union { args } | IndexSet::Intersection { args } => {
                args.iter().for_each(|s| s.collect_atoms(acc))
            }
            IndexSet::Complement { of } => of.collect_atoms(acc),
        }
    }

    fn atoms(&self) -> Atoms {
        let mut acc = Atoms { modulus: 1, ..Atoms::default() };
        self.collect_atoms(&mut acc);
        acc
    }

    /// Membership of a large index of the given type.
    fn eval_type(&self, residue: u64, powers: &BTreeSet<u32>) -> bool {
        match self {
            IndexSet::Empty => false,
            IndexSet::All => true,
            IndexSet::Finite { .. } => false,
            IndexSet::Ap { a, d } => residue % d == a % d,
            IndexSet::Powers { e } => powers.contains(e),
            IndexSet::Union { args } => args.iter().any(|s| s.eval_type(residue, powers)),
            IndexSet::Intersection { args } => args.iter().all(|s| s.eval_type(residue, powers)),
            IndexSet::Complement { of } => !of.eval_type(residue, powers),
        }
    }

    /// Exact natural density. Every expression in the grammar has one.
    pub fn natural_density(&self) -> Result<Rational> {
        let atoms = self.atoms();
        let none = BTreeSet::new();
        let hits = (0..atoms.modulus).filter(|&r| self.eval_type(r, &none)).count();
        Ok(Rational::new((hits as i64).into(), (atoms.modulus as i64).into()))
    }

    pub fn is_finite(&self) -> bool {
        let atoms = self.atoms();
        let exps: Vec<u32> = atoms.exponents.iter().copied().collect();
        for mask in 0u32..(1 << exps.len()) {
            let chosen: BTreeSet<u32> = exps
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let k = chosen.iter().fold(1u64, |acc, &e| acc.lcm(&(e as u64)));
            // n = m^k is an e-th power for every e dividing k
            if exps.iter().any(|e| !chosen.contains(e) && k % (*e as u64) == 0) {
                continue;
            }
            let mut residues = BTreeSet::new();
            for m in 0..atoms.modulus {
                residues.insert(pow_mod(m, k, atoms.modulus));
            }
            if residues.iter().any(|&r| self.eval_type(r, &chosen)) {
                return false;
            }
        }
        true
    }

    /// Every member of a finite set is at most this bound.
    pub fn finite_bound(&self) -> u64 {
        self.atoms().bound
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && (1..=self.finite_bound()).all(|n| !self.contains(n))
    }

    pub fn min_element(&self) -> Option<u64> {
        if self.is_finite() {
            (1..=self.finite_bound()).find(|&n| self.contains(n))
        } else {
            (1..).find(|&n| self.contains(n))
        }
    }

    /// Largest member of a finite set.
    pub fn max_element(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        (1..=self.finite_bound()).rev().find(|&n| self.contains(n))
    }

    pub fn members_up_to(&self, limit: u64) -> Vec<u64> {
        (1..=limit).filter(|&n| self.contains(n)).collect()
    }

    pub fn count_up_to(&self, limit: u64) -> usize {
        (1..=limit).filter(|&n| self.contains(n)).count()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.minus(other).is_empty()
    }

    /// Semantic equality.
    pub fn equivalent(&self, other: &IndexSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::Empty => f.write_str("∅"),
            IndexSet::All => f.write_str("ℕ"),
            IndexSet::Finite { elems } => {
                let items: Vec<String> = elems.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", items.join(","))
            }
            IndexSet::Ap { a, d } => write!(f, "AP({a},{d})"),
            IndexSet::Powers { e } => write!(f, "Pow({e})"),
            IndexSet::Union { args } => {
                let items: Vec<String> = args.iter().map(ToString::to_string).collect();
                write!(f, "({})", items.join(" ∪ "))
            }
            IndexSet::Intersection { args } => {
                let items: Vec<String> = args.iter().map(ToString::to_string).collect();
                write!(f, "({})", items.join(" ∩ "))
            }
            IndexSet::Complement { of } => write!(f, "¬{of}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn densities() {
        assert_eq!(IndexSet::ap(0, 2).natural_density().unwrap(), rat(1, 2));
        assert_eq!(IndexSet::powers(2).natural_density().unwrap(), int(0));
        assert_eq!(IndexSet::powers(2).complement().natural_density().unwrap(), int(1));
        let both = IndexSet::ap(1, 2).and(&IndexSet::ap(0, 3));
        assert_eq!(both.natural_density().unwrap(), rat(1, 6));
    }

    #[test]
    fn non_squares_counting_oracle() {
        let k = IndexSet::powers(2).complement();
        let n = 1_000_000u64;
        let count = n - integer_root(n, 2);
        assert_eq!(count, 999_000);
        let ratio = count as f64 / n as f64;
        assert!((ratio - 1.0).abs() < 1e-2);
        assert!(k.contains(2) && !k.contains(9));
    }

    #[test]
    fn finiteness() {
        assert!(IndexSet::finite([3, 5]).is_finite());
        assert!(!IndexSet::powers(2).is_finite());
        // squares are never 2 mod 3
        assert!(IndexSet::powers(2).and(&IndexSet::ap(2, 3)).is_empty());
        // squares that are not cubes
        assert!(!IndexSet::powers(2).minus(&IndexSet::powers(3)).is_finite());
        // fourth powers are squares
        assert!(IndexSet::powers(4).minus(&IndexSet::powers(2)).is_empty());
        assert!(IndexSet::ap(0, 2).and(&IndexSet::ap(1, 2)).is_empty());
        assert!(IndexSet::ap(5, 1).complement().is_finite());
    }

    #[test]
    fn members_and_min() {
        assert_eq!(IndexSet::powers(2).members_up_to(20), vec![1, 4, 9, 16]);
        assert_eq!(IndexSet::ap(0, 2).and(&IndexSet::powers(2)).min_element(), Some(4));
        assert_eq!(IndexSet::Empty.min_element(), None);
        assert_eq!(IndexSet::finite([3, 5]).max_element(), Some(5));
        assert!(!IndexSet::ap(0, 2).contains(0));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(26, 3), 2);
        assert_eq!(integer_root(27, 3), 3);
        assert_eq!(integer_root(u64::MAX, 2), 4_294_967_295);
        assert!(is_perfect_power(1, 5));
    }

    #[test]
    fn json_grammar() {
        let s: IndexSet = serde_json::from_str(r#"{"kind":"complement","of":{"kind":"powers","e":2}}"#).unwrap();
        assert_eq!(s, IndexSet::powers(2).complement());
        let u: IndexSet =
            serde_json::from_str(r#"{"kind":"union","args":[{"kind":"ap","a":0,"d":2},{"kind":"finite","elems":[3]}]}"#)
                .unwrap();
        assert!(u.contains(3) && u.contains(4) && !u.contains(5));
    }
}
