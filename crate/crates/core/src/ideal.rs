//! Ideals on ℕ as interchangeable strategies.
//!
//! Every ideal answers membership for the [`IndexSet`] grammar and supplies
//! its own finite-horizon proxy for "this exceedance set escapes the ideal",
//! which the brute-force oracle uses. Ideals are looked up by name through
//! [`IdealRegistry`], so the CLI and reproductions select them at runtime.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::Arc;

use num_traits::Zero;

use crate::index_set::IndexSet;

/// Exceedance statistics gathered by the horizon oracle for one threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HorizonHits {
    /// Horizon `N`: indices `1..=N` were evaluated.
    pub horizon: u64,
    /// Hits among all of `1..=N`.
    pub total: u64,
    /// Hits among the tail window `(N/10, N]`.
    pub tail: u64,
}

pub trait Ideal: Debug + Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn contains(&self, set: &IndexSet) -> bool;

    /// Membership in the dual filter `{M : ℕ∖M ∈ I}`.
    fn in_filter(&self, set: &IndexSet) -> bool {
        self.contains(&set.complement())
    }

    /// Finite-horizon proxy for "the hit set is not in the ideal".
    fn escapes_at_horizon(&self, hits: HorizonHits, density_proxy: f64) -> bool;
}

/// The ideal of finite subsets.
#[derive(Debug, Clone, Copy, Default)]
pub struct Fin;

impl Ideal for Fin {
    fn name(&self) -> &'static str {
        "fin"
    }

    fn description(&self) -> &'static str {
        "finite subsets of ℕ"
    }

    fn contains(&self, set: &IndexSet) -> bool {
        set.is_finite()
    }

    fn escapes_at_horizon(&self, hits: HorizonHits, _density_proxy: f64) -> bool {
        // an unbounded hit count shows up as many hits late in the horizon
        hits.tail as f64 >= (hits.horizon as f64).ln()
    }
}

/// The ideal of natural-density-zero subsets.
#[derive(Debug, Clone, Copy, Default)]
pub struct NatDensityZero;

impl Ideal for NatDensityZero {
    fn name(&self) -> &'static str {
        "natdens"
    }

    fn description(&self) -> &'static str {
        "subsets of ℕ with natural density zero"
    }

    fn contains(&self, set: &IndexSet) -> bool {
        set.natural_density().is_ok_and(|d| d.is_zero())
    }

    fn escapes_at_horizon(&self, hits: HorizonHits, density_proxy: f64) -> bool {
        // measured on the tail window so a long but finite prefix of hits
        // does not pass for positive density
        let window = hits.horizon - hits.horizon / 10;
        window > 0 && hits.tail as f64 / window as f64 >= density_proxy
    }
}

#[derive(Debug, Clone, Default)]
pub struct IdealRegistry {
    entries: BTreeMap<String, Arc<dyn Ideal>>,
}

impl IdealRegistry {
    pub fn new() -> Self {
        IdealRegistry::default()
    }

    /// Registry with `fin` (alias `i_f`) and `natdens` (aliases `i_d`, `density`).
    pub fn builtin() -> Self {
        let mut reg = IdealRegistry::new();
        let fin: Arc<dyn Ideal> = Arc::new(Fin);
        let dens: Arc<dyn Ideal> = Arc::new(NatDensityZero);
        reg.register_as("fin", fin.clone());
        reg.register_as("i_f", fin);
        reg.register_as("natdens", dens.clone());
        reg.register_as("i_d", dens.clone());
        reg.register_as("density", dens);
        reg
    }

    pub fn register(&mut self, ideal: Arc<dyn Ideal>) {
        self.entries.insert(ideal.name().to_string(), ideal);
    }

    pub fn register_as(&mut self, name: &str, ideal: Arc<dyn Ideal>) {
        self.entries.insert(name.to_ascii_lowercase(), ideal);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Ideal>> {
        self.entries.get(&name.to_ascii_lowercase()).cloned()
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(String::as_str).collect()
    }

    /// The distinct ideals, one per canonical name.
    pub fn ideals(&self) -> Vec<Arc<dyn Ideal>> {
        let mut seen = BTreeMap::new();
        for ideal in self.entries.values() {
            seen.entry(ideal.name()).or_insert_with(|| ideal.clone());
        }
        seen.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_membership_examples() {
        let squares = IndexSet::powers(2);
        assert!(NatDensityZero.contains(&squares));
        assert!(!Fin.contains(&squares));
        assert!(!NatDensityZero.contains(&IndexSet::ap(1, 3)));
    }

    #[test]
    fn filter_examples() {
        assert!(NatDensityZero.in_filter(&IndexSet::powers(2).complement()));
        assert!(Fin.in_filter(&IndexSet::All));
        assert!(!NatDensityZero.in_filter(&IndexSet::ap(0, 2)));
    }

    #[test]
    fn admissible_and_nontrivial() {
        for ideal in IdealRegistry::builtin().ideals() {
            assert!(ideal.contains(&IndexSet::finite([7])));
            assert!(!ideal.contains(&IndexSet::All));
        }
    }

    #[test]
    fn registry_lookup() {
        let reg = IdealRegistry::builtin();
        assert_eq!(reg.get("NATDENS").unwrap().name(), "natdens");
        assert_eq!(reg.get("i_f").unwrap().name(), "fin");
        assert!(reg.get("summable").is_none());
        assert_eq!(reg.ideals().len(), 2);
    }
}
