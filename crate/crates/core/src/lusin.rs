//! Lusin–Menchoff interpolation for interval-representable sets: a closed
//! set `P` with `Z ⊆ P ⊆ H` such that every point of `Z` is a density point
//! of `P`.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::rational::{int, Rational};
use crate::sets::{Bound, Interval, RationalBorelSet};

/// Margin used on a side where the host component is unbounded.
pub const DEFAULT_MARGIN: i64 = 1;

/// Each component of the natural interior of `H` that meets `Z` contributes
/// the closed interval reaching halfway from `Z`'s extent to the component's
/// ends.
pub fn lusin_menchoff(host: &RationalBorelSet, closed: &RationalBorelSet, _ideal: &dyn Ideal) -> Result<RationalBorelSet> {
    if !closed.is_natural_closed() {
        return Err(Error::InvalidSet("the inner set must be closed".into()));
    }
    if !closed.is_subset(host) {
        return Err(Error::PreconditionDensity("the inner set is not contained in the host".into()));
    }
    if !closed.is_subset(&host.essential_interior()) {
        return Err(Error::PreconditionDensity("some inner point is not a density point of the host".into()));
    }
    let interior = host.natural_interior();
    if !closed.is_subset(&interior) {
        return Err(Error::Unsupported(
            "inner points on the boundary of the host's interior need infinitely many intervals".into(),
        ));
    }
    let mut result = RationalBorelSet::empty();
    for (lo, hi) in interior.open_components() {
        let comp = RationalBorelSet::interval(&Interval::new(lo.clone(), hi.clone(), false, false)?);
        let part = closed.intersect(&comp);
        if part.is_empty() {
            continue;
        }
        let z_lo = if part.first_gap().irrational { None } else { part.breakpoints().first().cloned() };
        let z_hi = if part.last_gap().irrational { None } else { part.breakpoints().last().cloned() };
        let p_lo = match (&z_lo, &lo) {
            (None, _) => Bound::NegInf,
            (Some(z), Bound::Finite(c)) => Bound::Finite(z - (z - c) / int(2)),
            (Some(z), _) => Bound::Finite(z - int(DEFAULT_MARGIN)),
        };
        let p_hi = match (&z_hi, &hi) {
            (None, _) => Bound::PosInf,
            (Some(z), Bound::Finite(c)) => Bound::Finite(z + (c - z) / int(2)),
            (Some(z), _) => Bound::Finite(z + int(DEFAULT_MARGIN)),
        };
        result = result.union(&RationalBorelSet::interval(&Interval::new(p_lo, p_hi, true, true)?));
    }
    let ok = closed.is_subset(&result)
        && result.is_subset(host)
        && result.is_natural_closed()
        && closed.is_subset(&result.natural_interior());
    if !ok {
        return Err(Error::Internal("interpolating set fails its postconditions".into()));
    }
    Ok(result)
}

/// Closed set whose membership test is used by callers that only hold a point.
pub fn point_set(x: &Rational) -> RationalBorelSet {
    RationalBorelSet::point(x.clone())
}
