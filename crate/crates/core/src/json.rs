//! JSON descriptions of engine inputs and reports.
//!
//! Rationals travel as `"p/q"` strings and unbounded endpoints as `"inf"` /
//! `"-inf"`. Every `*Dto` converts both ways; input errors carry a JSON path
//! like `$.patterns[1].rule.expr`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::continuity::{IacVerdict, Semicontinuity};
use crate::density::DensityReport;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::generator::{IntervalGenerator, QuotientRow, RadiusPattern};
use crate::index_set::IndexSet;
use crate::piecewise::{Piece, PiecewiseFunction, RatFn};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sequence::{DescribedSequence, ValueRule};
use crate::sets::{Bound, ComponentClass, Interval, RationalBorelSet};
use crate::urysohn::{SeparatingFunction, SeparationReport, SeparationSample};

/// Deserializes `text`, reporting structural errors with their JSON path.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "$".to_string() } else { format!("$.{path}") };
        Error::Parse { path, message: e.inner().to_string() }
    })
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("DTOs serialize")
}

fn rational_at(s: &str, path: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| Error::Parse { path: path.into(), message: format!("invalid rational {s:?}") })
}

fn bound_at(s: &str, path: &str) -> Result<Bound> {
    match s.trim() {
        "inf" | "+inf" => Ok(Bound::PosInf),
        "-inf" => Ok(Bound::NegInf),
        t => rational_at(t, path).map(Bound::Finite),
    }
}

fn formula_at(s: &str, path: &str) -> Result<Formula> {
    Formula::parse(s).map_err(|e| Error::Parse { path: path.into(), message: e.to_string() })
}

fn full() -> ComponentClass {
    ComponentClass::Full
}

fn is_full(c: &ComponentClass) -> bool {
    *c == ComponentClass::Full
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDto {
    pub lo: String,
    pub hi: String,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
    #[serde(default = "full", skip_serializing_if = "is_full")]
    pub class: ComponentClass,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDto {
    #[serde(default)]
    pub components: Vec<ComponentDto>,
    #[serde(default)]
    pub plus: Vec<String>,
    #[serde(default)]
    pub minus: Vec<String>,
}

impl SetDto {
    pub fn from_set(set: &RationalBorelSet) -> Self {
        let (comps, plus, minus) = set.view();
        SetDto {
            components: comps
                .iter()
                .map(|(iv, class)| ComponentDto {
                    lo: iv.lo.to_string(),
                    hi: iv.hi.to_string(),
                    lo_open: !iv.lo_closed,
                    hi_open: !iv.hi_closed,
                    class: *class,
                })
                .collect(),
            plus: plus.iter().map(format_rational).collect(),
            minus: minus.iter().map(format_rational).collect(),
        }
    }

    pub fn build(&self, path: &str) -> Result<RationalBorelSet> {
        let mut comps = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let here = format!("{path}.components[{i}]");
            let lo = bound_at(&c.lo, &format!("{here}.lo"))?;
            let hi = bound_at(&c.hi, &format!("{here}.hi"))?;
            let iv = Interval::new(lo, hi, !c.lo_open, !c.hi_open)
                .map_err(|e| Error::Parse { path: here.clone(), message: e.to_string() })?;
            comps.push((iv, c.class));
        }
        let points = |xs: &[String], name: &str| -> Result<Vec<Rational>> {
            xs.iter().enumerate().map(|(i, s)| rational_at(s, &format!("{path}.{name}[{i}]"))).collect()
        };
        Ok(RationalBorelSet::from_parts(&comps, &points(&self.plus, "plus")?, &points(&self.minus, "minus")?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RuleDto {
    Const { v: String },
    Formula {
        expr: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        limit: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequencePatternDto {
    pub index_set: IndexSet,
    pub rule: RuleDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceDto {
    pub patterns: Vec<SequencePatternDto>,
}

impl SequenceDto {
    pub fn from_sequence(x: &DescribedSequence) -> Self {
        SequenceDto {
            patterns: x
                .patterns()
                .iter()
                .map(|p| SequencePatternDto {
                    index_set: p.index_set.clone(),
                    rule: match &p.rule {
                        ValueRule::Constant(v) => RuleDto::Const { v: format_rational(v) },
                        ValueRule::Formula { formula, limit } => {
                            RuleDto::Formula { expr: formula.to_string(), limit: Some(format_rational(limit)) }
                        }
                    },
                })
                .collect(),
        }
    }

    pub fn build(&self, path: &str) -> Result<DescribedSequence> {
        let mut pairs = Vec::with_capacity(self.patterns.len());
        for (i, p) in self.patterns.iter().enumerate() {
            let here = format!("{path}.patterns[{i}].rule");
            let rule = match &p.rule {
                RuleDto::Const { v } => ValueRule::Constant(rational_at(v, &format!("{here}.v"))?),
                RuleDto::Formula { expr, limit } => {
                    let f = formula_at(expr, &format!("{here}.expr"))?;
                    let declared = limit.as_deref().map(|l| rational_at(l, &format!("{here}.limit"))).transpose()?;
                    ValueRule::formula(f, declared)?
                }
            };
            pairs.push((p.index_set.clone(), rule));
        }
        DescribedSequence::from_pairs(pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusPatternDto {
    pub index_set: IndexSet,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDto {
    pub center: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub patterns: Vec<RadiusPatternDto>,
    /// Shorthand for one symmetric pattern over all indices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<String>,
}

impl GeneratorDto {
    pub fn from_generator(g: &IntervalGenerator) -> Self {
        GeneratorDto {
            center: format_rational(g.center()),
            patterns: g
                .patterns()
                .iter()
                .map(|p| RadiusPatternDto {
                    index_set: p.index_set.clone(),
                    left: p.left.to_string(),
                    right: p.right.to_string(),
                })
                .collect(),
            radius: None,
        }
    }

    pub fn build(&self, path: &str) -> Result<IntervalGenerator> {
        let center = rational_at(&self.center, &format!("{path}.center"))?;
        match (&self.radius, self.patterns.is_empty()) {
            (Some(r), true) => IntervalGenerator::symmetric(center, formula_at(r, &format!("{path}.radius"))?),
            (None, false) => {
                let mut patterns = Vec::with_capacity(self.patterns.len());
                for (i, p) in self.patterns.iter().enumerate() {
                    let here = format!("{path}.patterns[{i}]");
                    patterns.push(RadiusPattern {
                        index_set: p.index_set.clone(),
                        left: formula_at(&p.left, &format!("{here}.left"))?,
                        right: formula_at(&p.right, &format!("{here}.right"))?,
                    });
                }
                IntervalGenerator::new(center, patterns)
            }
            _ => Err(Error::Parse { path: path.into(), message: "give exactly one of `patterns` or `radius`".into() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDto {
    pub a: String,
    pub b: String,
}

/// Coefficients from the constant term upwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalFnDto {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDto {
    pub set: SetDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine: Option<AffineDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<RationalFnDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionDto {
    pub pieces: Vec<PieceDto>,
}

fn coeffs(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

impl FunctionDto {
    pub fn from_function(f: &PiecewiseFunction) -> Self {
        FunctionDto {
            pieces: f
                .pieces()
                .iter()
                .map(|p| {
                    let (affine, rational) = match p.expr.as_affine() {
                        Some((a, b)) => (Some(AffineDto { a: format_rational(&a), b: format_rational(&b) }), None),
                        None => (None, Some(RationalFnDto { num: coeffs(p.expr.num()), den: coeffs(p.expr.den()) })),
                    };
                    PieceDto { set: SetDto::from_set(&p.set), affine, rational }
                })
                .collect(),
        }
    }

    pub fn build(&self, path: &str) -> Result<PiecewiseFunction> {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for (i, p) in self.pieces.iter().enumerate() {
            let here = format!("{path}.pieces[{i}]");
            let set = p.set.build(&format!("{here}.set"))?;
            let expr = match (&p.affine, &p.rational) {
                (Some(a), None) => RatFn::affine(
                    rational_at(&a.a, &format!("{here}.affine.a"))?,
                    rational_at(&a.b, &format!("{here}.affine.b"))?,
                ),
                (None, Some(r)) => {
                    let poly = |cs: &[String], name: &str| -> Result<Poly> {
                        let v: Result<Vec<Rational>> = cs
                            .iter()
                            .enumerate()
                            .map(|(k, c)| rational_at(c, &format!("{here}.rational.{name}[{k}]")))
                            .collect();
                        Ok(Poly::from_coeffs(v?))
                    };
                    RatFn::new(poly(&r.num, "num")?, poly(&r.den, "den")?)
                        .map_err(|e| Error::Parse { path: format!("{here}.rational"), message: e.to_string() })?
                }
                _ => {
                    return Err(Error::Parse { path: here, message: "give exactly one of `affine` or `rational`".into() })
                }
            };
            pieces.push(Piece { set, expr });
        }
        PiecewiseFunction::new(pieces)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientRowDto {
    pub n: u64,
    pub m_j: String,
    pub m_je: String,
    pub quotient: String,
}

impl QuotientRowDto {
    pub fn from_row(r: &QuotientRow) -> Self {
        QuotientRowDto {
            n: r.n,
            m_j: format_rational(&r.m_j),
            m_je: format_rational(&r.m_je),
            quotient: format_rational(&r.quotient),
        }
    }

    pub fn build(&self, path: &str) -> Result<QuotientRow> {
        Ok(QuotientRow {
            n: self.n,
            m_j: rational_at(&self.m_j, &format!("{path}.m_j"))?,
            m_je: rational_at(&self.m_je, &format!("{path}.m_je"))?,
            quotient: rational_at(&self.quotient, &format!("{path}.quotient"))?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReportDto {
    pub lower: String,
    pub upper: String,
    pub two_sided: Option<String>,
    pub admissible: bool,
    pub s_set: IndexSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_table: Option<Vec<QuotientRowDto>>,
}

impl DensityReportDto {
    pub fn from_report(r: &DensityReport) -> Self {
        DensityReportDto {
            lower: format_rational(&r.lower),
            upper: format_rational(&r.upper),
            two_sided: r.two_sided.as_ref().map(format_rational),
            admissible: r.admissible,
            s_set: r.s_set.clone(),
            quotient_table: r.quotient_table.as_ref().map(|t| t.iter().map(QuotientRowDto::from_row).collect()),
        }
    }

    pub fn build(&self, path: &str) -> Result<DensityReport> {
        let table = match &self.quotient_table {
            None => None,
            Some(rows) => Some(
                rows.iter()
                    .enumerate()
                    .map(|(i, r)| r.build(&format!("{path}.quotient_table[{i}]")))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(DensityReport {
            lower: rational_at(&self.lower, &format!("{path}.lower"))?,
            upper: rational_at(&self.upper, &format!("{path}.upper"))?,
            two_sided: self.two_sided.as_deref().map(|s| rational_at(s, &format!("{path}.two_sided"))).transpose()?,
            admissible: self.admissible,
            s_set: self.s_set.clone(),
            quotient_table: table,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDto {
    pub i_d_open: bool,
    pub i_d_closed: bool,
    pub measure: String,
    pub theta: SetDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitsDto {
    pub ideal: String,
    pub limsup: String,
    pub liminf: String,
    pub limit: Option<String>,
    pub classical_limsup: String,
    pub pattern_limits: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IacDto {
    pub point: String,
    pub value: String,
    pub holds: bool,
    pub witness: Option<SetDto>,
    pub upper_semicontinuous: bool,
    pub lower_semicontinuous: bool,
}

impl IacDto {
    pub fn new(p: &Rational, value: &Rational, v: &IacVerdict, s: &Semicontinuity) -> Self {
        IacDto {
            point: format_rational(p),
            value: format_rational(value),
            holds: v.holds,
            witness: v.witness.as_ref().map(SetDto::from_set),
            upper_semicontinuous: s.upper,
            lower_semicontinuous: s.lower,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalIacDto {
    pub level_set_route: bool,
    pub pointwise_route: bool,
    pub critical_thresholds: Vec<String>,
    pub points: Vec<IacDto>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleDto {
    pub ideal: String,
    pub horizon: u64,
    pub grid_step: String,
    pub delta: f64,
    pub engine_limsup: String,
    pub engine_liminf: String,
    pub oracle_limsup: String,
    pub oracle_liminf: String,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDto {
    pub x: String,
    pub g1: String,
    pub g2: String,
    pub g: String,
}

impl SampleDto {
    pub fn from_sample(s: &SeparationSample) -> Self {
        SampleDto {
            x: format_rational(&s.x),
            g1: format_rational(&s.g1),
            g2: format_rational(&s.g2),
            g: format_rational(&s.g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReportDto {
    pub ok: bool,
    pub zero_on_closed: bool,
    pub one_at_point: bool,
    pub in_unit_range: bool,
    pub iac_everywhere: bool,
    pub failures: Vec<String>,
}

impl SeparationReportDto {
    pub fn from_report(r: &SeparationReport) -> Self {
        SeparationReportDto {
            ok: r.ok(),
            zero_on_closed: r.zero_on_closed,
            one_at_point: r.one_at_point,
            in_unit_range: r.in_unit_range,
            iac_everywhere: r.iac_everywhere,
            failures: r.failures.iter().map(format_rational).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationDto {
    pub closed: SetDto,
    pub point: String,
    pub function: FunctionDto,
    pub report: SeparationReportDto,
    pub samples: Vec<SampleDto>,
}

impl SeparationDto {
    pub fn new(s: &SeparatingFunction, report: &SeparationReport, samples: &[SeparationSample]) -> Self {
        SeparationDto {
            closed: SetDto::from_set(&s.closed),
            point: format_rational(&s.point),
            function: FunctionDto::from_function(&s.g),
            report: SeparationReportDto::from_report(report),
            samples: samples.iter().map(SampleDto::from_sample).collect(),
        }
    }
}

pub fn parse_set(text: &str) -> Result<RationalBorelSet> {
    from_str::<SetDto>(text)?.build("$")
}

pub fn parse_index_set(text: &str) -> Result<IndexSet> {
    from_str(text)
}

pub fn parse_sequence(text: &str) -> Result<DescribedSequence> {
    from_str::<SequenceDto>(text)?.build("$")
}

pub fn parse_generator(text: &str) -> Result<IntervalGenerator> {
    from_str::<GeneratorDto>(text)?.build("$")
}

pub fn parse_function(text: &str) -> Result<PiecewiseFunction> {
    from_str::<FunctionDto>(text)?.build("$")
}

pub fn parse_point(text: &str) -> Result<Rational> {
    let t = text.trim();
    let t = t.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(t);
    rational_at(t, "$")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuity::{dirichlet, step_at_zero};
    use crate::rational::{int, rat};

    #[test]
    fn set_grammar() {
        let s = parse_set(
            r#"{"components":[{"lo":"-1/1","hi":"1/1","lo_open":true,"hi_open":true,"class":"full"}],"plus":[],"minus":[]}"#,
        )
        .unwrap();
        assert_eq!(s, RationalBorelSet::open(int(-1), int(1)));
        let ray = parse_set(r#"{"components":[{"lo":"-inf","hi":"3","hi_open":false}]}"#).unwrap();
        assert!(ray.contains(&int(3)) && ray.contains(&int(-1000)));
        let q = parse_set(r#"{"components":[{"lo":"0","hi":"1","lo_open":true,"hi_open":true,"class":"rationals_only"}]}"#)
            .unwrap();
        assert!(q.measure().is_zero() && q.contains(&rat(1, 2)));
    }

    #[test]
    fn errors_name_the_path() {
        let err = parse_set(r#"{"components":[{"lo":"0","hi":"x"}]}"#).unwrap_err();
        assert_eq!(err, Error::Parse { path: "$.components[0].hi".into(), message: "invalid rational \"x\"".into() });
        let err = parse_sequence(r#"{"patterns":[{"index_set":{"kind":"all"},"rule":{"kind":"formula","expr":"1/"}}]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path == "$.patterns[0].rule.expr"), "{err}");
        let err = parse_generator(r#"{"center":"0","patterns":[{"index_set":{"kind":"nope"}}]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref path, .. } if path.starts_with("$.patterns[0]")), "{err}");
    }

    #[test]
    fn generator_grammar() {
        let g = parse_generator(
            r#"{"center":"0/1","patterns":[
                {"index_set":{"kind":"complement","of":{"kind":"powers","e":2}},"left":"1/(2n+1)","right":"1/(2n+1)"},
                {"index_set":{"kind":"powers","e":2},"left":"n","right":"n"}]}"#,
        )
        .unwrap();
        assert_eq!(g.interval(4).unwrap(), (int(-4), int(4)));
        assert_eq!(g.interval(2).unwrap(), (rat(-1, 5), rat(1, 5)));
        let back = parse_generator(&to_string(&GeneratorDto::from_generator(&g))).unwrap();
        assert_eq!(back, g);
        let sym = parse_generator(r#"{"center":"1/2","radius":"1/n"}"#).unwrap();
        assert_eq!(sym.interval(2).unwrap(), (int(0), int(1)));
    }

    #[test]
    fn sequence_grammar() {
        let x = parse_sequence(
            r#"{"patterns":[{"index_set":{"kind":"ap","a":0,"d":2},"rule":{"kind":"const","v":"1/1"}},
                {"index_set":{"kind":"ap","a":1,"d":2},"rule":{"kind":"formula","expr":"1/n","limit":"0/1"}}]}"#,
        )
        .unwrap();
        assert_eq!(x.value(2).unwrap(), int(1));
        assert_eq!(x.value(3).unwrap(), rat(1, 3));
        let back = parse_sequence(&to_string(&SequenceDto::from_sequence(&x))).unwrap();
        assert_eq!(back, x);
        let err = parse_sequence(r#"{"patterns":[{"index_set":{"kind":"all"},"rule":{"kind":"formula","expr":"n"}}]}"#);
        assert!(matches!(err, Err(Error::UnboundedSequence { .. })));
    }

    #[test]
    fn function_round_trip() {
        for f in [dirichlet(), step_at_zero(), PiecewiseFunction::identity()] {
            let back = parse_function(&to_string(&FunctionDto::from_function(&f))).unwrap();
            assert_eq!(back, f);
        }
        let f = parse_function(
            r#"{"pieces":[{"set":{"components":[{"lo":"-inf","hi":"inf"}]},"affine":{"a":"0/1","b":"1/1"}}]}"#,
        )
        .unwrap();
        assert_eq!(f.eval(&int(7)), int(1));
        let s = crate::urysohn::separating_function(&RationalBorelSet::closed(int(0), int(1)), &int(2)).unwrap();
        let back = parse_function(&to_string(&FunctionDto::from_function(&s.g))).unwrap();
        assert_eq!(back.eval(&rat(3, 2)), s.eval(&rat(3, 2)));
    }

    #[test]
    fn point_literals() {
        assert_eq!(parse_point("\"-3/4\"").unwrap(), rat(-3, 4));
        assert_eq!(parse_point("0.25").unwrap(), rat(1, 4));
    }
}
