//! Registry of worked examples that the engine reproduces exactly.

use std::fmt;

use serde::Serialize;

use crate::density::{i_density_with_table, is_i_d_closed, is_i_d_open};
use crate::error::Result;
use crate::formula::Formula;
use crate::generator::{IntervalGenerator, QuotientRow, RadiusPattern};
use crate::ideal::{Fin, Ideal, NatDensityZero};
use crate::index_set::IndexSet;
use crate::rational::{format_decimal, format_rational, int, rat, Rational};
use crate::sets::{ComponentClass, Interval, RationalBorelSet};

pub const TABLE_ROWS: u64 = 20;
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn quotients(rows: &[QuotientRow]) -> Self {
        Table {
            header: ["n", "m_J", "m_JE", "quotient", "quotient_decimal"].map(String::from).to_vec(),
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        format_rational(&r.m_j),
                        format_rational(&r.m_je),
                        format_rational(&r.quotient),
                        format_decimal(&r.quotient, DECIMAL_DIGITS),
                    ]
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reproduction {
    pub id: String,
    pub title: String,
    /// `(label, value)` lines, printed as `label: value`; integers print bare.
    pub summary: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub table: Table,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub trait Example: Send + Sync {
    fn id(&self) -> &'static str;
    fn title(&self) -> &'static str;
    fn run(&self) -> Result<Reproduction>;
}

impl fmt::Debug for dyn Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Default)]
pub struct ExampleRegistry {
    entries: Vec<Box<dyn Example>>,
}

impl ExampleRegistry {
    pub fn builtin() -> Self {
        let mut r = ExampleRegistry::default();
        r.register(Box::new(SquaresGenerator));
        r.register(Box::new(NeitherOpenNorClosed));
        r
    }

    pub fn register(&mut self, example: Box<dyn Example>) {
        self.entries.retain(|e| e.id() != example.id());
        self.entries.push(example);
    }

    pub fn get(&self, id: &str) -> Option<&dyn Example> {
        self.entries.iter().find(|e| e.id().eq_ignore_ascii_case(id)).map(|e| e.as_ref())
    }

    pub fn list(&self) -> Vec<(&'static str, &'static str)> {
        self.entries.iter().map(|e| (e.id(), e.title())).collect()
    }
}

fn formula(s: &str) -> Formula {
    Formula::parse(s).expect("built-in formula")
}

fn verdict(r: &Option<Rational>) -> String {
    r.as_ref().map_or("does not exist".into(), |q| q.to_string())
}

/// Intervals `[-1/(2n+1), 1/(2n+1)]` except at squares, where they blow up to `[-n, n]`.
#[derive(Debug)]
pub struct SquaresGenerator;

impl SquaresGenerator {
    pub fn generator(center: Rational) -> IntervalGenerator {
        IntervalGenerator::new(
            center,
            vec![
                RadiusPattern {
                    index_set: IndexSet::powers(2).complement(),
                    left: formula("1/(2n+1)"),
                    right: formula("1/(2n+1)"),
                },
                RadiusPattern { index_set: IndexSet::powers(2), left: formula("n"), right: formula("n") },
            ],
        )
        .expect("valid generator")
    }

    pub fn set() -> RationalBorelSet {
        RationalBorelSet::open(int(-1), int(1))
    }

    /// `1` off the squares and `1/n` on them.
    pub fn expected_quotient(n: u64) -> Rational {
        if IndexSet::powers(2).contains(n) {
            rat(1, n as i64)
        } else {
            int(1)
        }
    }
}

impl Example for SquaresGenerator {
    fn id(&self) -> &'static str {
        "ex2.3"
    }

    fn title(&self) -> &'static str {
        "a density point along a generator that blows up on the squares"
    }

    fn run(&self) -> Result<Reproduction> {
        let g = Self::generator(int(0));
        let e = Self::set();
        let by_density = i_density_with_table(&e, &g, &NatDensityZero, TABLE_ROWS)?;
        let by_fin = i_density_with_table(&e, &g, &Fin, 0)?;
        let rows = by_density.quotient_table.clone().unwrap_or_default();
        let squares_out = IndexSet::powers(2).complement();
        let table_ok = rows.iter().all(|r| r.quotient == Self::expected_quotient(r.n));
        let checks = vec![
            Check::new("s_set is the complement of the squares", g.s_set().equivalent(&squares_out), g.s_set().to_string()),
            Check::new("generator admissible for natdens", by_density.admissible, ""),
            Check::new("natdens density equals 1", by_density.two_sided == Some(int(1)), verdict(&by_density.two_sided)),
            Check::new("generator inadmissible for fin", !by_fin.admissible, ""),
            Check::new(
                "fin density does not exist",
                by_fin.two_sided.is_none() && by_fin.lower == int(0) && by_fin.upper == int(1),
                format!("lower {}, upper {}", by_fin.lower, by_fin.upper),
            ),
            Check::new("quotients are 1 off squares and 1/n on squares", table_ok, format!("{} rows", rows.len())),
        ];
        Ok(Reproduction {
            id: self.id().into(),
            title: self.title().into(),
            summary: vec![
                ("S-set".into(), g.s_set().to_string()),
                ("I_d-density".into(), verdict(&by_density.two_sided)),
                ("Fin lower density".into(), by_fin.lower.to_string()),
                ("Fin upper density".into(), by_fin.upper.to_string()),
                ("Fin density".into(), verdict(&by_fin.two_sided)),
            ],
            checks,
            table: Table::quotients(&rows),
        })
    }
}

/// `I' = (x1, x2) ∖ (J ∩ irrationals)` with `J` the middle half of `(x1, x2)`.
#[derive(Debug)]
pub struct NeitherOpenNorClosed;

impl NeitherOpenNorClosed {
    pub fn set(x1: &Rational, x2: &Rational) -> RationalBorelSet {
        let b = (x1 + x2) / int(2);
        let w = (x2 - x1) / int(4);
        let core = RationalBorelSet::from_component(&Interval::closed(&b - &w, &b + &w), ComponentClass::IrrationalsOnly);
        RationalBorelSet::open(x1.clone(), x2.clone()).difference(&core)
    }

    /// `J_k = [c - 2^-(k+1), c + 2^-(k+1)]`
    pub fn generator(center: Rational) -> IntervalGenerator {
        IntervalGenerator::symmetric(center, formula("(1/2)^(n+1)")).expect("valid generator")
    }
}

impl Example for NeitherOpenNorClosed {
    fn id(&self) -> &'static str {
        "ex4.10"
    }

    fn title(&self) -> &'static str {
        "a set that is neither open nor closed in the density topology"
    }

    fn run(&self) -> Result<Reproduction> {
        let ideal: &dyn Ideal = &NatDensityZero;
        let (x1, x2) = (int(0), int(2));
        let b = (&x1 + &x2) / int(2);
        let set = Self::set(&x1, &x2);
        let at_b = i_density_with_table(&set, &Self::generator(b.clone()), ideal, 0)?;
        let g1 = Self::generator(x1.clone());
        let at_x1 = i_density_with_table(&set.complement(), &g1, ideal, TABLE_ROWS)?;
        let rows = at_x1.quotient_table.clone().unwrap_or_default();
        let tail = rows.iter().all(|r| r.quotient == rat(1, 2));
        let checks = vec![
            Check::new("upper density of I' at b is 0", at_b.upper == int(0), format_rational(&at_b.upper)),
            Check::new("I' is not open", !is_i_d_open(&set, ideal), ""),
            Check::new("s_set of J_k is all of N", g1.s_set().equivalent(&IndexSet::All), g1.s_set().to_string()),
            Check::new(
                "upper density of the complement at x1 is 1/2",
                at_x1.upper == rat(1, 2),
                format_rational(&at_x1.upper),
            ),
            Check::new("z_k = 1/2 on the table", tail, format!("{} rows", rows.len())),
            Check::new("I' is not closed", !is_i_d_closed(&set, ideal), ""),
        ];
        Ok(Reproduction {
            id: self.id().into(),
            title: self.title().into(),
            summary: vec![
                ("I'".into(), set.to_string()),
                ("upper density at b".into(), at_b.upper.to_string()),
                ("upper density of complement at x1".into(), at_x1.upper.to_string()),
                ("I_d-open".into(), is_i_d_open(&set, ideal).to_string()),
                ("I_d-closed".into(), is_i_d_closed(&set, ideal).to_string()),
            ],
            checks,
            table: Table::quotients(&rows),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_examples_pass() {
        let reg = ExampleRegistry::builtin();
        assert_eq!(reg.list().len(), 2);
        for (id, _) in reg.list() {
            let r = reg.get(id).unwrap().run().unwrap();
            assert!(r.passed(), "{id}: {:?}", r.checks);
        }
        let r = reg.get("EX2.3").unwrap().run().unwrap();
        let first: Vec<&str> = r.table.rows.iter().take(4).map(|row| row[3].as_str()).collect();
        assert_eq!(first, ["1/1", "1/1", "1/1", "1/4"]);
        assert!(r.summary.contains(&("I_d-density".into(), "1".into())));
        assert!(reg.get("ex9.9").is_none());
    }
}
