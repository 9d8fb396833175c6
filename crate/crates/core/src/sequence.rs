//! Real sequences described by a finite partition of ℕ into index patterns,
//! each carrying a closed-form value rule.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Formula, Limit};
use crate::index_set::IndexSet;
use crate::rational::{format_rational, to_f64, Rational};

/// Membership is cross-checked by brute force on `1..=SCAN_LIMIT`.
pub const SCAN_LIMIT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueRule {
    Constant(Rational),
    /// A formula with a finite limit it approaches monotonically.
    Formula { formula: Formula, limit: Rational },
}

impl ValueRule {
    /// Builds a formula rule, computing the limit and checking it against
    /// `declared` when given.
    pub fn formula(formula: Formula, declared: Option<Rational>) -> Result<Self> {
        let limit = match formula.limit() {
            Limit::Finite(v) => v,
            other => {
                return Err(Error::UnboundedSequence { pattern: formula.to_string(), limit: other.to_string() })
            }
        };
        if let Some(d) = declared {
            if d != limit {
                return Err(Error::LimitMismatch { declared: format_rational(&d), computed: format_rational(&limit) });
            }
        }
        if formula.eventually_monotone_to_limit().is_none() {
            return Err(Error::Formula {
                expr: formula.to_string(),
                message: "does not approach its limit monotonically".into(),
            });
        }
        Ok(match formula.as_constant() {
            Some(c) => ValueRule::Constant(c),
            None => ValueRule::Formula { formula, limit },
        })
    }

    pub fn parse(expr: &str, declared: Option<Rational>) -> Result<Self> {
        ValueRule::formula(Formula::parse(expr)?, declared)
    }

    pub fn limit(&self) -> &Rational {
        match self {
            ValueRule::Constant(v) => v,
            ValueRule::Formula { limit, .. } => limit,
        }
    }

    pub fn as_formula(&self) -> Formula {
        match self {
            ValueRule::Constant(v) => Formula::constant(v.clone()),
            ValueRule::Formula { formula, .. } => formula.clone(),
        }
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        match self {
            ValueRule::Constant(v) => Ok(v.clone()),
            ValueRule::Formula { formula, .. } => formula.eval(n),
        }
    }

    pub fn eval_f64(&self, n: u64) -> f64 {
        match self {
            ValueRule::Constant(v) => to_f64(v),
            ValueRule::Formula { formula, .. } => formula.eval_f64(n),
        }
    }

    fn from_formula_unchecked(f: Formula) -> Result<Self> {
        ValueRule::formula(f, None)
    }

    pub fn add(&self, other: &ValueRule) -> Result<ValueRule> {
        match (self, other) {
            (ValueRule::Constant(a), ValueRule::Constant(b)) => Ok(ValueRule::Constant(a + b)),
            _ => ValueRule::from_formula_unchecked(self.as_formula().add(&other.as_formula())),
        }
    }

    pub fn neg(&self) -> ValueRule {
        match self {
            ValueRule::Constant(v) => ValueRule::Constant(-v),
            ValueRule::Formula { formula, limit } => ValueRule::Formula { formula: formula.neg(), limit: -limit },
        }
    }

    pub fn add_constant(&self, c: &Rational) -> ValueRule {
        match self {
            ValueRule::Constant(v) => ValueRule::Constant(v + c),
            ValueRule::Formula { formula, limit } => {
                ValueRule::Formula { formula: formula.add_constant(c), limit: limit + c }
            }
        }
    }
}

impl fmt::Display for ValueRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueRule::Constant(v) => f.write_str(&format_rational(v)),
            ValueRule::Formula { formula, .. } => write!(f, "{formula}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub index_set: IndexSet,
    pub rule: ValueRule,
}

/// A bounded real sequence `x_n` given piecewise over a partition of ℕ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescribedSequence {
    patterns: Vec<Pattern>,
}

/// Checks that the index sets partition ℕ, structurally and by scan.
pub fn validate_partition(sets: &[&IndexSet]) -> Result<()> {
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if !a.and(b).is_empty() {
                let witness = a.and(b).min_element().unwrap_or(0);
                return Err(Error::InvalidPartition(format!(
                    "patterns {i} and {j} overlap (both contain {witness})"
                )));
            }
        }
    }
    let union = IndexSet::union(sets.iter().map(|s| (*s).clone()).collect());
    if let Some(missing) = union.complement().min_element() {
        return Err(Error::InvalidPartition(format!("index {missing} is not covered by any pattern")));
    }
    for n in 1..=SCAN_LIMIT {
        let hits = sets.iter().filter(|s| s.contains(n)).count();
        if hits != 1 {
            return Err(Error::InvalidPartition(format!("index {n} lies in {hits} patterns")));
        }
    }
    Ok(())
}

impl DescribedSequence {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        let sets: Vec<&IndexSet> = patterns.iter().map(|p| &p.index_set).collect();
        validate_partition(&sets)?;
        for p in &patterns {
            if let ValueRule::Formula { formula, .. } = &p.rule {
                let start = formula.defined_from();
                if let Some(bad) = (1..start).find(|&n| p.index_set.contains(n) && formula.eval(n).is_err()) {
                    return Err(Error::Formula {
                        expr: formula.to_string(),
                        message: format!("undefined at index {bad} of its pattern"),
                    });
                }
            }
        }
        Ok(DescribedSequence { patterns })
    }

    /// For partitions that are valid by construction.
    pub(crate) fn new_unchecked(patterns: Vec<Pattern>) -> Self {
        DescribedSequence { patterns }
    }

    pub fn constant(v: Rational) -> Self {
        DescribedSequence { patterns: vec![Pattern { index_set: IndexSet::All, rule: ValueRule::Constant(v) }] }
    }

    pub fn from_pairs(pairs: Vec<(IndexSet, ValueRule)>) -> Result<Self> {
        DescribedSequence::new(pairs.into_iter().map(|(index_set, rule)| Pattern { index_set, rule }).collect())
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn pattern_of(&self, n: u64) -> &Pattern {
        self.patterns
            .iter()
            .find(|p| p.index_set.contains(n))
            .expect("patterns partition ℕ")
    }

    pub fn value(&self, n: u64) -> Result<Rational> {
        self.pattern_of(n).rule.eval(n)
    }

    pub fn value_f64(&self, n: u64) -> f64 {
        self.pattern_of(n).rule.eval_f64(n)
    }

    /// `x_1..=x_limit` in floating point, compiling each rule once.
    pub fn values_f64(&self, limit: u64) -> Vec<f64> {
        let compiled: Vec<_> = self.patterns.iter().map(|p| p.rule.as_formula().compile()).collect();
        (1..=limit)
            .map(|n| {
                let i = self.patterns.iter().position(|p| p.index_set.contains(n)).expect("patterns partition ℕ");
                compiled[i].eval(n)
            })
            .collect()
    }

    /// Pointwise sum, realized on the common refinement of both partitions.
    pub fn pointwise_add(&self, other: &DescribedSequence) -> Result<Self> {
        let mut patterns = Vec::new();
        for p in &self.patterns {
            for q in &other.patterns {
                let index_set = p.index_set.and(&q.index_set);
                if index_set.is_empty() {
                    continue;
                }
                patterns.push(Pattern { index_set, rule: p.rule.add(&q.rule)? });
            }
        }
        DescribedSequence::new(patterns)
    }

    pub fn neg(&self) -> Self {
        self.map_rules(ValueRule::neg)
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        self.map_rules(|r| r.add_constant(c))
    }

    fn map_rules(&self, f: impl Fn(&ValueRule) -> ValueRule) -> Self {
        DescribedSequence {
            patterns: self
                .patterns
                .iter()
                .map(|p| Pattern { index_set: p.index_set.clone(), rule: f(&p.rule) })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    pub(crate) fn example_2_3() -> DescribedSequence {
        DescribedSequence::from_pairs(vec![
            (IndexSet::powers(2).complement(), ValueRule::Constant(int(1))),
            (IndexSet::powers(2), ValueRule::parse("1/n", Some(int(0))).unwrap()),
        ])
        .unwrap()
    }

    #[test]
    fn example_values() {
        let x = example_2_3();
        assert_eq!(x.value(3).unwrap(), int(1));
        assert_eq!(x.value(4).unwrap(), rat(1, 4));
        assert_eq!(x.value(9).unwrap(), rat(1, 9));
    }

    #[test]
    fn rejects_bad_partitions() {
        let overlap = DescribedSequence::from_pairs(vec![
            (IndexSet::All, ValueRule::Constant(int(1))),
            (IndexSet::powers(2), ValueRule::Constant(int(0))),
        ]);
        assert!(matches!(overlap, Err(Error::InvalidPartition(_))));
        let gap = DescribedSequence::from_pairs(vec![(IndexSet::ap(0, 2), ValueRule::Constant(int(1)))]);
        assert!(matches!(gap, Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn rejects_bad_rules() {
        assert!(matches!(ValueRule::parse("n", None), Err(Error::UnboundedSequence { .. })));
        assert!(matches!(ValueRule::parse("1/n", Some(int(1))), Err(Error::LimitMismatch { .. })));
        let undefined = DescribedSequence::from_pairs(vec![(IndexSet::All, ValueRule::parse("1/(n-2)", None).unwrap())]);
        assert!(undefined.is_err());
        let skipped = DescribedSequence::from_pairs(vec![
            (IndexSet::ap(1, 2), ValueRule::parse("1/(n-2)", None).unwrap()),
            (IndexSet::ap(2, 2), ValueRule::Constant(int(0))),
        ]);
        assert!(skipped.is_ok());
    }

    #[test]
    fn pointwise_sum_refines() {
        let x = example_2_3();
        let y = DescribedSequence::from_pairs(vec![
            (IndexSet::ap(1, 2), ValueRule::Constant(int(2))),
            (IndexSet::ap(2, 2), ValueRule::parse("1/(n+1)", None).unwrap()),
        ])
        .unwrap();
        let s = x.pointwise_add(&y).unwrap();
        for n in 1..200 {
            assert_eq!(s.value(n).unwrap(), x.value(n).unwrap() + y.value(n).unwrap());
        }
    }
}
