//! Condition (J₂): glue a decreasing sequence of density-1 sets into one set
//! of density 1 by cutting a shrinking window out of each.
//!
//! With `δ_n = 2^-n`, radii `r_n` on which `G_n` is of full measure around
//! `x₀`, and index thresholds `k_n` after which every relevant interval of
//! the generator sits inside `(x₀ - r_n, x₀ + r_n)`, the set
//! `A = ⋃ (G_n ∖ (x₀ - s_n, x₀ + s_n))` has quotient at least `1 - 2δ_n`
//! along every interval `J_k` with `k_n <= k < k_{n+1}`.
//!
//! Only finitely many terms can be built. A depth-`N` union excludes a
//! neighbourhood of `x₀`, so its density there is 0; what is certified is the
//! band-by-band bound for the first `N` bands, which is exactly the part of
//! the infinite union's quotient sequence that the truncation determines.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::generator::{Behavior, IntervalGenerator};
use crate::ideal::Ideal;
use crate::index_set::IndexSet;
use crate::rational::{int, pow_i, Rational};
use crate::sets::RationalBorelSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct J2Band {
    pub n: usize,
    /// Generator indices `from..to` covered by this band.
    pub from: u64,
    pub to: u64,
    /// Smallest exact quotient `m(J_k ∩ A) / m(J_k)` over relevant indices in the band.
    pub min_quotient: Option<Rational>,
    /// `1 - 3 δ_n`
    pub bound: Rational,
}

impl J2Band {
    pub fn holds(&self) -> bool {
        self.min_quotient.as_ref().is_none_or(|q| q >= &self.bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct J2Construction {
    pub radii: Vec<Rational>,
    pub thresholds: Vec<u64>,
    pub windows: Vec<Rational>,
    pub approximant: RationalBorelSet,
    pub bands: Vec<J2Band>,
}

impl J2Construction {
    pub fn certified(&self) -> bool {
        self.bands.iter().all(J2Band::holds)
    }
}

struct Relevant<'a> {
    g: &'a IntervalGenerator,
    /// Indices of patterns outside the ideal.
    patterns: Vec<usize>,
    set: IndexSet,
}

impl Relevant<'_> {
    fn contains(&self, k: u64) -> bool {
        self.set.contains(k)
    }

    /// Smallest `k > after` such that every relevant `J_j` with `j >= k` lies
    /// strictly inside `(x₀ - r, x₀ + r)`.
    fn first_inside(&self, r: &Rational, after: u64) -> Result<u64> {
        let mut tail = after + 1;
        for &i in &self.patterns {
            let p = &self.g.patterns()[i];
            for radius in [&p.left, &p.right] {
                let room = radius.neg().add_constant(r);
                tail = tail.max(room.eventual_sign().1);
            }
        }
        let inside = |k: u64| -> Result<bool> {
            let (lo, hi) = self.g.interval(k)?;
            let c = self.g.center();
            Ok(c - &lo < *r && &hi - c < *r)
        };
        let mut k = tail;
        while k - 1 > after && (!self.contains(k - 1) || inside(k - 1)?) {
            k -= 1;
        }
        Ok(k)
    }
}

pub fn j2_construct(
    sets: &[RationalBorelSet],
    x0: &Rational,
    g: &IntervalGenerator,
    ideal: &dyn Ideal,
    depth: usize,
) -> Result<J2Construction> {
    if depth == 0 || depth > sets.len() {
        return Err(Error::PreconditionDensity(format!("depth {depth} needs 1..={} sets", sets.len())));
    }
    if g.center() != x0 {
        return Err(Error::InvalidGenerator("generator must be centered at the construction point".into()));
    }
    let sets = &sets[..depth];
    let mut radii = Vec::with_capacity(depth);
    for (i, s) in sets.iter().enumerate() {
        let core = s.essential_interior();
        if !core.contains(x0) {
            return Err(Error::PreconditionDensity(format!("set {} does not have density 1 at the point", i + 1)));
        }
        if i > 0 && !s.is_subset(&sets[i - 1]) {
            return Err(Error::PreconditionDensity(format!("set {} is not contained in set {i}", i + 1)));
        }
        radii.push(core.distance_to_complement(x0).map_or(Rational::one(), |d| d.min(Rational::one())));
    }
    let patterns: Vec<usize> =
        (0..g.patterns().len()).filter(|&i| !ideal.contains(&g.patterns()[i].index_set)).collect();
    for &i in &patterns {
        if IntervalGenerator::behavior(&g.patterns()[i]) != Behavior::Shrinking {
            return Err(Error::InvalidGenerator(format!(
                "pattern {i} lies outside the ideal but its intervals do not shrink"
            )));
        }
    }
    let set = IndexSet::union(patterns.iter().map(|&i| g.patterns()[i].index_set.clone()).collect());
    let relevant = Relevant { g, patterns, set };

    let mut thresholds = Vec::with_capacity(depth + 1);
    let mut prev = 0;
    for r in radii.iter().chain(std::iter::once(&(radii[depth - 1].clone() / int(2)))) {
        prev = relevant.first_inside(r, prev)?;
        thresholds.push(prev);
    }

    let mut windows = Vec::with_capacity(depth);
    let mut approximant = RationalBorelSet::empty();
    for n in 0..depth {
        let delta = pow_i(&int(2), -(n as i64 + 1));
        let (from, to) = (thresholds[n], thresholds[n + 1]);
        let next = relevant
            .set
            .and(&IndexSet::from_index(to))
            .min_element()
            .ok_or_else(|| Error::Internal("relevant indices are infinite".into()))?;
        let mut shortest = g.length(next)?;
        for k in (from..to).filter(|&k| relevant.contains(k)) {
            shortest = shortest.min(g.length(k)?);
        }
        let s = delta * shortest;
        let cut = RationalBorelSet::open(x0 - &s, x0 + &s);
        approximant = approximant.union(&sets[n].difference(&cut));
        windows.push(s);
    }

    let mut bands = Vec::with_capacity(depth);
    for n in 0..depth {
        let bound = Rational::one() - int(3) * pow_i(&int(2), -(n as i64 + 1));
        let (from, to) = (thresholds[n], thresholds[n + 1]);
        let mut min_quotient: Option<Rational> = None;
        for k in (from..to).filter(|&k| relevant.contains(k)) {
            let q = g.quotient_row(&approximant, k)?.quotient;
            if min_quotient.as_ref().is_none_or(|m| &q < m) {
                min_quotient = Some(q);
            }
        }
        bands.push(J2Band { n: n + 1, from, to, min_quotient, bound });
    }
    if bands.iter().any(|b| b.min_quotient.as_ref().is_some_and(|q| q.is_negative())) {
        return Err(Error::Internal("negative density quotient".into()));
    }
    Ok(J2Construction { radii, thresholds, windows, approximant, bands })
}
