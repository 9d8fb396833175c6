//! Brute-force horizon oracle for ideal limits.
//!
//! Evaluates `x_1..x_N` numerically and scans a rational threshold grid,
//! accepting `b` when the exceedance set `{k <= N : x_k > b}` looks like it
//! escapes the ideal. Each ideal supplies its own escape proxy. This shares
//! nothing with the exact reduction in [`crate::limits`] beyond the sequence
//! description, which is what makes it useful as a cross-check.

use num_traits::ToPrimitive;

use crate::ideal::{HorizonHits, Ideal};
use crate::rational::{rat, Rational};
use crate::sequence::DescribedSequence;

pub const DEFAULT_HORIZON: u64 = 100_000;
pub const DEFAULT_DELTA: f64 = 1e-2;

pub fn default_grid_step() -> Rational {
    rat(1, 1000)
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub horizon: u64,
    pub grid_step: Rational,
    /// Density proxy for "not in I_d".
    pub delta: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { horizon: DEFAULT_HORIZON, grid_step: default_grid_step(), delta: DEFAULT_DELTA }
    }
}

/// Values `x_1..x_N`, sorted once for fast threshold counting.
#[derive(Clone, Debug)]
pub struct HorizonSample {
    horizon: u64,
    all: Vec<f64>,
    tail: Vec<f64>,
}

impl HorizonSample {
    pub fn new(x: &DescribedSequence, horizon: u64) -> Self {
        HorizonSample::from_values(x.values_f64(horizon))
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        let horizon = values.len() as u64;
        let cut = (horizon / 10) as usize;
        let mut tail = values[cut..].to_vec();
        let mut all = values;
        all.sort_by(f64::total_cmp);
        tail.sort_by(f64::total_cmp);
        HorizonSample { horizon, all, tail }
    }

    pub fn negated(&self) -> Self {
        let flip = |v: &[f64]| v.iter().rev().map(|x| -x).collect::<Vec<f64>>();
        HorizonSample { horizon: self.horizon, all: flip(&self.all), tail: flip(&self.tail) }
    }

    pub fn hits_above(&self, b: f64) -> HorizonHits {
        let above = |v: &[f64]| (v.len() - v.partition_point(|&x| x <= b)) as u64;
        HorizonHits { horizon: self.horizon, total: above(&self.all), tail: above(&self.tail) }
    }

    /// Grid estimate of `sup {b : {k : x_k > b} ∉ I}`: one step above the
    /// largest accepted grid threshold.
    pub fn limsup(&self, ideal: &dyn Ideal, cfg: &OracleConfig) -> Rational {
        let step = cfg.grid_step.to_f64().expect("finite step");
        let accepted = |k: i64| ideal.escapes_at_horizon(self.hits_above(k as f64 * step), cfg.delta);
        let min = self.all.first().copied().unwrap_or(0.0);
        let max = self.all.last().copied().unwrap_or(0.0);
        let mut lo = (min / step).floor() as i64 - 1;
        let mut hi = (max / step).ceil() as i64 + 1;
        if !accepted(lo) {
            return Rational::from_integer(lo.into()) * &cfg.grid_step;
        }
        // accepted(lo) holds and accepted(hi) fails; acceptance is monotone in b
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if accepted(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Rational::from_integer(hi.into()) * &cfg.grid_step
    }

    pub fn liminf(&self, ideal: &dyn Ideal, cfg: &OracleConfig) -> Rational {
        -self.negated().limsup(ideal, cfg)
    }
}

pub fn horizon_oracle_limsup(x: &DescribedSequence, ideal: &dyn Ideal, cfg: &OracleConfig) -> Rational {
    HorizonSample::new(x, cfg.horizon).limsup(ideal, cfg)
}

pub fn horizon_oracle_liminf(x: &DescribedSequence, ideal: &dyn Ideal, cfg: &OracleConfig) -> Rational {
    HorizonSample::new(x, cfg.horizon).liminf(ideal, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{Fin, NatDensityZero};
    use crate::index_set::IndexSet;
    use crate::rational::{int, to_f64};
    use crate::sequence::ValueRule;

    #[test]
    fn constant_is_exact_on_grid() {
        let x = DescribedSequence::constant(int(7));
        let cfg = OracleConfig { horizon: 1_000, ..OracleConfig::default() };
        assert_eq!(horizon_oracle_limsup(&x, &Fin, &cfg), int(7));
        assert_eq!(horizon_oracle_liminf(&x, &Fin, &cfg), int(7));
    }

    #[test]
    fn example_2_3_at_full_horizon() {
        let x = DescribedSequence::from_pairs(vec![
            (IndexSet::powers(2).complement(), ValueRule::Constant(int(1))),
            (IndexSet::powers(2), ValueRule::parse("1/n", None).unwrap()),
        ])
        .unwrap();
        let cfg = OracleConfig::default();
        let sample = HorizonSample::new(&x, cfg.horizon);
        for (ideal, inf) in [(&NatDensityZero as &dyn Ideal, 1.0), (&Fin, 0.0)] {
            assert!((to_f64(&sample.limsup(ideal, &cfg)) - 1.0).abs() <= 1e-2);
            assert!((to_f64(&sample.liminf(ideal, &cfg)) - inf).abs() <= 1e-2);
        }
    }
}
