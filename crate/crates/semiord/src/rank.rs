//! Measuring elements against a basepoint and embedding them as reals.
//!
//! Fix a backend and a non-identity basepoint `a`. The level-`n` rank of `x`
//! counts how many copies of `a` fit under `2^n` copies of `x` — an exact
//! integer, found by a budgeted doubling search. Ranks at successive levels
//! at most double-and-add-one, so `rank / 2^n` converges and the enclosures
//! `[rank/2^n, (rank+1)/2^n)` present `x` as a real number in basepoint
//! units.

use num_bigint::BigInt;
use num_traits::One;

use crate::backend::{Backend, BackendKind, Element, Payload};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::order::{sign, Budget, ComparisonOutcome, Sign};
use crate::real::{compare_reals, DyadicEnclosure, PointContext, PointStream, RealStream};

/// A backend paired with a fixed measurement basepoint.
///
/// Ranks are always taken in the orientation that makes the basepoint
/// positive: a basepoint that is negative in the backend's own order is
/// measured in the reversed order. Construction rejects backends whose
/// order admits anomalous pairs, since ranks there do not converge to a
/// single real.
#[derive(Debug, Clone)]
pub struct PointedBackend {
    backend: Backend,
    basepoint: Element,
    max_gallop: u32,
}

impl PointedBackend {
    pub fn new(backend: Backend, basepoint: Element) -> Result<Self> {
        if basepoint.backend() != &backend {
            return Err(Error::mismatch(&backend, basepoint.backend()));
        }
        if !backend.is_non_anomalous() {
            return Err(Error::Precondition(
                "rank measurements require a backend with no anomalous pairs".to_string(),
            ));
        }
        if sign(&basepoint) == Sign::Identity {
            return Err(Error::Precondition(
                "the basepoint must not be the identity".to_string(),
            ));
        }
        Ok(PointedBackend {
            backend,
            basepoint,
            max_gallop: Budget::default().max_gallop(),
        })
    }

    /// Replaces the doubling budget used by rank searches.
    pub fn with_max_gallop(mut self, max_gallop: u32) -> Self {
        self.max_gallop = max_gallop.max(1);
        self
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn basepoint(&self) -> &Element {
        &self.basepoint
    }

    /// True when ranks are taken in the reverse of the backend's stated
    /// order (the basepoint is negative there).
    pub fn is_reversed(&self) -> bool {
        self.backend.is_dual() ^ (sign(&self.basepoint) == Sign::Negative)
    }

    pub(crate) fn context(&self) -> PointContext {
        PointContext {
            kind: self.backend.kind().clone(),
            reversed: self.is_reversed(),
            base: self.basepoint.payload().clone(),
            max_gallop: self.max_gallop,
        }
    }

    fn check_member(&self, x: &Element) -> Result<()> {
        if x.backend() != &self.backend {
            return Err(Error::mismatch(&self.backend, x.backend()));
        }
        Ok(())
    }
}

/// The greatest integer `k` such that `k` basepoints sit at or below `2^level`
/// copies of `x`. Computed by a fresh doubling search at the requested level.
pub fn rank(level: u32, pointed: &PointedBackend, x: &Element) -> Result<BigInt> {
    pointed.check_member(x)?;
    let ctx = pointed.context();
    let scaled = ctx
        .kind
        .multiple_payload(&(BigInt::one() << level), x.payload());
    ctx.rank_search(&scaled)
}

/// The level-`level` enclosure `[rank/2^level, (rank+1)/2^level)` of `x` in
/// basepoint units. Its width is exactly `2^-level` and deeper levels nest.
pub fn embed(pointed: &PointedBackend, x: &Element, level: u32) -> Result<DyadicEnclosure> {
    let mantissa = rank(level, pointed, x)?;
    Ok(DyadicEnclosure::new(mantissa, level, BigInt::one()))
}

/// The element as a refinable real number in basepoint units. The stream
/// memoizes its refinement, so deep enclosures cost one extra search step
/// per level rather than a fresh search.
pub fn real_of(pointed: &PointedBackend, x: &Element) -> Result<RealStream> {
    pointed.check_member(x)?;
    Ok(RealStream::from_point(PointStream::new(
        pointed.context(),
        x.payload().clone(),
    )))
}

/// Approximates the value of `target` by an element of a dyadic backend:
/// the nearest multiple of `basepoint / 2^level`. Bisects the level-0
/// enclosure, comparing the target against exact dyadic midpoints, and
/// rounds the surviving interval's midpoint. A target indistinguishable
/// from a midpoint within the budget settles on that midpoint.
pub fn approximate_supremum(
    pointed: &PointedBackend,
    target: &RealStream,
    level: u32,
    budget: &Budget,
) -> Result<Element> {
    if pointed.backend.kind() != &BackendKind::Dyadic || pointed.is_reversed() {
        return Err(Error::Precondition(
            "supremum approximation needs a dyadic backend with a positive basepoint".to_string(),
        ));
    }
    let first = target.enclosure(0)?;
    let mut lo = first.lo_value();
    let mut hi = first.hi_value();
    let goal = DyadicRational::one().scale_exp(-(level as i64) - 2);
    let mut center = None;
    while hi.sub(&lo) > goal {
        let mid = lo.add(&hi).scale_exp(-1);
        let probe = RealStream::constant(mid.clone());
        match compare_reals(target, &probe, budget)? {
            ComparisonOutcome::Less => hi = mid,
            ComparisonOutcome::Greater => lo = mid,
            ComparisonOutcome::Equal | ComparisonOutcome::Indistinguishable(_) => {
                center = Some(mid);
                break;
            }
        }
    }
    let center = center.unwrap_or_else(|| lo.add(&hi).scale_exp(-1));
    let mantissa = center.round_at_level(level);
    let base_value = match pointed.basepoint.payload() {
        Payload::Dyadic(v) => v.clone(),
        _ => unreachable!("backend kind checked above"),
    };
    let value = base_value.mul(&DyadicRational::new(mantissa, -(level as i64)));
    pointed.backend.element_from_payload(Payload::Dyadic(value))
}
