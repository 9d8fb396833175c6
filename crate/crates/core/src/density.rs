//! Ideal density of representable sets, density classification and the
//! ideal density topology.
//!
//! Along a single generator the density is the ideal limit of the exact
//! quotient sequence. Over *all* generators the answer depends only on the
//! two one-sided indicators of the set at the point: a shrinking generator
//! with side fraction `λ` sees `λ·ρ_right + (1-λ)·ρ_left`. Hence density 1
//! along every admissible generator is exactly membership in the essential
//! interior, and the ideal plays no further role for representable sets.

use serde::Serialize;

use crate::error::Result;
use crate::generator::{IntervalGenerator, QuotientRow};
use crate::ideal::Ideal;
use crate::index_set::IndexSet;
use crate::limits::{i_liminf, i_limsup};
use crate::rational::Rational;
use crate::sets::RationalBorelSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub lower: Rational,
    pub upper: Rational,
    pub two_sided: Option<Rational>,
    pub admissible: bool,
    pub s_set: IndexSet,
    pub quotient_table: Option<Vec<QuotientRow>>,
}

/// Lower and upper ideal density of `set` at the generator's center.
///
/// Inadmissible generators are still evaluated; the report flags them.
pub fn i_density_along(set: &RationalBorelSet, g: &IntervalGenerator, ideal: &dyn Ideal) -> Result<DensityReport> {
    let quotient = g.quotient_sequence(set)?;
    let lower = i_liminf(&quotient, ideal)?;
    let upper = i_limsup(&quotient, ideal)?;
    let two_sided = (lower == upper).then(|| lower.clone());
    let s_set = g.s_set();
    Ok(DensityReport { lower, upper, two_sided, admissible: ideal.in_filter(&s_set), s_set, quotient_table: None })
}

/// Same as [`i_density_along`] with the first `rows` quotients attached;
/// `rows == 0` attaches nothing.
pub fn i_density_with_table(
    set: &RationalBorelSet,
    g: &IntervalGenerator,
    ideal: &dyn Ideal,
    rows: u64,
) -> Result<DensityReport> {
    let mut report = i_density_along(set, g, ideal)?;
    if rows > 0 {
        report.quotient_table = Some(g.quotient_table(set, rows)?);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensityClass {
    AllGeneratorsOne,
    AllGeneratorsZero,
    GeneratorDependent { left: u8, right: u8 },
}

pub fn density_class(set: &RationalBorelSet, p: &Rational) -> DensityClass {
    let left = set.left_density_indicator(p);
    let right = set.right_density_indicator(p);
    match (left, right) {
        (true, true) => DensityClass::AllGeneratorsOne,
        (false, false) => DensityClass::AllGeneratorsZero,
        _ => DensityClass::GeneratorDependent { left: left as u8, right: right as u8 },
    }
}

/// Points where the set has ideal density 1 along every admissible generator.
pub fn theta(set: &RationalBorelSet, _ideal: &dyn Ideal) -> RationalBorelSet {
    set.essential_interior()
}

pub fn is_i_d_open(set: &RationalBorelSet, _ideal: &dyn Ideal) -> bool {
    set.is_subset(&set.essential_interior())
}

pub fn is_i_d_closed(set: &RationalBorelSet, ideal: &dyn Ideal) -> bool {
    is_i_d_open(&set.complement(), ideal)
}

/// Positive upper density along some generator about `x`.
pub fn is_i_d_limit_point(set: &RationalBorelSet, x: &Rational, _ideal: &dyn Ideal) -> bool {
    set.left_density_indicator(x) || set.right_density_indicator(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use crate::generator::RadiusPattern;
    use crate::ideal::{Fin, NatDensityZero};
    use crate::rational::{int, rat};
    use crate::sets::{ComponentClass, Interval};

    fn f(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    fn example_2_3() -> IntervalGenerator {
        IntervalGenerator::new(
            int(0),
            vec![
                RadiusPattern { index_set: IndexSet::powers(2).complement(), left: f("1/(2n+1)"), right: f("1/(2n+1)") },
                RadiusPattern { index_set: IndexSet::powers(2), left: f("n"), right: f("n") },
            ],
        )
        .unwrap()
    }

    /// `I' = (x1, x2) ∖ ([b-w, b+w] ∩ irrationals)` with `x1 = 0, x2 = 2, b = 1, w = 1/2`.
    fn example_4_10() -> RationalBorelSet {
        let outer = RationalBorelSet::open(int(0), int(2));
        let core = RationalBorelSet::from_component(&Interval::closed(rat(1, 2), rat(3, 2)), ComponentClass::IrrationalsOnly);
        outer.difference(&core)
    }

    #[test]
    fn example_2_3_densities() {
        let e = RationalBorelSet::open(int(-1), int(1));
        let g = example_2_3();
        let r = i_density_along(&e, &g, &NatDensityZero).unwrap();
        assert_eq!(r.two_sided, Some(int(1)));
        assert!(r.admissible);
        let r = i_density_along(&e, &g, &Fin).unwrap();
        assert_eq!((r.lower, r.upper, r.two_sided, r.admissible), (int(0), int(1), None, false));
    }

    #[test]
    fn example_4_10_densities() {
        let set = example_4_10();
        let at_b = IntervalGenerator::symmetric(int(1), f("(1/2)^(n+1)")).unwrap();
        let r = i_density_along(&set, &at_b, &NatDensityZero).unwrap();
        assert_eq!(r.two_sided, Some(int(0)));
        let at_x1 = IntervalGenerator::symmetric(int(0), f("(1/2)^(n+1)")).unwrap();
        let r = i_density_along(&set.complement(), &at_x1, &NatDensityZero).unwrap();
        assert_eq!(r.upper, rat(1, 2));
        assert!(!is_i_d_open(&set, &NatDensityZero));
        assert!(!is_i_d_closed(&set, &NatDensityZero));
    }

    #[test]
    fn classes() {
        let p0 = int(0);
        assert_eq!(density_class(&RationalBorelSet::open(int(-1), int(1)), &p0), DensityClass::AllGeneratorsOne);
        let null = RationalBorelSet::from_component(&Interval::open(int(0), int(1)), ComponentClass::RationalsOnly);
        assert_eq!(density_class(&null, &rat(1, 2)), DensityClass::AllGeneratorsZero);
        assert_eq!(
            density_class(&RationalBorelSet::closed(int(0), int(1)), &p0),
            DensityClass::GeneratorDependent { left: 0, right: 1 }
        );
        let sym = IntervalGenerator::symmetric(p0, f("1/n")).unwrap();
        let r = i_density_along(&RationalBorelSet::closed(int(0), int(1)), &sym, &NatDensityZero).unwrap();
        assert_eq!(r.two_sided, Some(rat(1, 2)));
    }

    #[test]
    fn topology_examples() {
        let ideal = NatDensityZero;
        assert!(is_i_d_open(&RationalBorelSet::open(int(-1), int(1)), &ideal));
        let punctured = RationalBorelSet::open(int(0), int(1)).difference(&RationalBorelSet::point(rat(1, 2)));
        assert!(is_i_d_open(&punctured, &ideal));
        let null = RationalBorelSet::from_component(&Interval::open(int(0), int(1)), ComponentClass::RationalsOnly);
        assert!(is_i_d_closed(&null, &ideal));
        assert!(is_i_d_closed(&RationalBorelSet::closed(int(0), int(1)), &ideal));
        assert!(!is_i_d_limit_point(&null, &rat(1, 2), &ideal));
        let unit = RationalBorelSet::open(int(0), int(1));
        assert!(is_i_d_limit_point(&unit, &int(0), &ideal));
        assert!(!is_i_d_limit_point(&unit, &int(2), &ideal));
    }

    #[test]
    fn theta_examples() {
        let ideal = Fin;
        assert_eq!(theta(&RationalBorelSet::closed(int(0), int(1)), &ideal), RationalBorelSet::open(int(0), int(1)));
        let split = RationalBorelSet::open(int(0), int(1)).union(&RationalBorelSet::open(int(1), int(2)));
        assert_eq!(theta(&split, &ideal), RationalBorelSet::open(int(0), int(2)));
        let null = RationalBorelSet::from_component(&Interval::open(int(-1), int(1)), ComponentClass::RationalsOnly);
        assert!(theta(&null, &ideal).is_empty());
    }
}
