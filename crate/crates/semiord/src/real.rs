//! Dyadic enclosures and refinable real-number streams.
//!
//! A stream stands for one real number. Asking it for level `n` produces a
//! half-open dyadic enclosure that contains the number; deeper levels are
//! nested inside shallower ones. Streams built directly from backend elements
//! emit enclosures of width exactly `2^-n`; streams built from formal sums
//! are wider by their term count; derived streams (sums, products,
//! reciprocals of other streams) refine their inputs until the output width
//! drops below `2^-n`, possibly emitting at a deeper dyadic level.
//!
//! Refinement state is memoized per stream instance behind a `RefCell`, so a
//! stream refines in place through `&self` but is not shareable across
//! threads while refining. Cloned streams carry a copy of the cache and
//! refine independently.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::backend::{eff_compare, payload_sign, BackendKind, Payload};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::order::{Budget, ComparisonOutcome, Sign};

/// The dyadic `mantissa / 2^level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicApproximant {
    mantissa: BigInt,
    level: u32,
}

impl DyadicApproximant {
    pub fn new(mantissa: BigInt, level: u32) -> Self {
        DyadicApproximant { mantissa, level }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn value(&self) -> DyadicRational {
        DyadicRational::new(self.mantissa.clone(), -(self.level as i64))
    }
}

/// Half-open interval `[lo, lo + ulps/2^level)` with dyadic endpoints.
///
/// An enclosure produced at level `n` from a single element always has
/// `ulps = 1` and therefore width exactly `2^-n`; wider enclosures appear for
/// formal sums and as conservative covers from interval arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicEnclosure {
    lo: DyadicApproximant,
    ulps: BigInt,
}

impl DyadicEnclosure {
    pub fn new(mantissa: BigInt, level: u32, ulps: BigInt) -> Self {
        debug_assert!(ulps >= BigInt::one());
        DyadicEnclosure {
            lo: DyadicApproximant::new(mantissa, level),
            ulps,
        }
    }

    pub fn lo(&self) -> &DyadicApproximant {
        &self.lo
    }

    pub fn level(&self) -> u32 {
        self.lo.level
    }

    pub fn ulps(&self) -> &BigInt {
        &self.ulps
    }

    pub fn lo_value(&self) -> DyadicRational {
        self.lo.value()
    }

    /// Exclusive upper endpoint.
    pub fn hi_value(&self) -> DyadicRational {
        DyadicRational::new(&self.lo.mantissa + &self.ulps, -(self.lo.level as i64))
    }

    pub fn width(&self) -> DyadicRational {
        DyadicRational::new(self.ulps.clone(), -(self.lo.level as i64))
    }

    pub fn contains_rational(&self, value: &BigRational) -> bool {
        &self.lo_value().to_rational() <= value && value < &self.hi_value().to_rational()
    }

    pub fn contains_dyadic(&self, value: &DyadicRational) -> bool {
        self.lo_value() <= *value && *value < self.hi_value()
    }

    /// True when every point of `self` lies strictly below every point of
    /// `other`, which is exactly `hi(self) <= lo(other)` for half-open
    /// intervals.
    pub fn entirely_below(&self, other: &DyadicEnclosure) -> bool {
        self.hi_value() <= other.lo_value()
    }

    /// True when `self` is contained in `outer`.
    pub fn is_within(&self, outer: &DyadicEnclosure) -> bool {
        outer.lo_value() <= self.lo_value() && self.hi_value() <= outer.hi_value()
    }

    pub fn overlaps(&self, other: &DyadicEnclosure) -> bool {
        !self.entirely_below(other) && !other.entirely_below(self)
    }

    /// The same interval re-expressed at a deeper level (exact).
    fn at_level(&self, level: u32) -> DyadicEnclosure {
        debug_assert!(level >= self.lo.level);
        let shift = (level - self.lo.level) as u64;
        DyadicEnclosure::new(&self.lo.mantissa << shift, level, &self.ulps << shift)
    }
}

impl fmt::Display for DyadicEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo_value(), self.hi_value())
    }
}

// The rank engine: measures a payload against a positive basepoint.

/// A backend kind together with the orientation that makes the basepoint
/// positive, plus the gallop budget for rank searches.
#[derive(Debug, Clone)]
pub(crate) struct PointContext {
    pub kind: BackendKind,
    pub reversed: bool,
    pub base: Payload,
    pub max_gallop: u32,
}

impl PointContext {
    fn cmp(&self, a: &Payload, b: &Payload) -> Ordering {
        eff_compare(&self.kind, self.reversed, a, b)
    }

    fn sign_of(&self, a: &Payload) -> Sign {
        payload_sign(&self.kind, self.reversed, a)
    }

    fn compose(&self, a: &Payload, b: &Payload) -> Payload {
        self.kind.compose_payload(a, b)
    }

    /// Is `k` basepoints at most `target`? Defined for every integer `k`:
    /// zero copies mean "target is positive or the identity", and a negative
    /// count asks whether attaching `-k` basepoints to `target` stays
    /// non-negative.
    fn count_le(&self, k: &BigInt, target: &Payload) -> bool {
        match k.sign() {
            num_bigint::Sign::Plus => {
                let stack = self.kind.multiple_payload(k, &self.base);
                self.cmp(&stack, target) != Ordering::Greater
            }
            num_bigint::Sign::NoSign => self.sign_of(target) != Sign::Negative,
            num_bigint::Sign::Minus => {
                let stack = self.kind.multiple_payload(&-k, &self.base);
                self.sign_of(&self.compose(&stack, target)) != Sign::Negative
            }
        }
    }

    /// The greatest integer `k` with `k` basepoints at most `target`: the
    /// floor of `target` in basepoint units. Gallops by doubling, then walks
    /// the doubling ladder down, so the cost is logarithmic in `|k|`.
    pub(crate) fn rank_search(&self, target: &Payload) -> Result<BigInt> {
        if self.sign_of(target) != Sign::Negative {
            if self.cmp(&self.base, target) == Ordering::Greater {
                return Ok(BigInt::zero());
            }
            // ladder[j] holds 2^j basepoints.
            let mut ladder = vec![self.base.clone()];
            let mut k = 0usize;
            loop {
                let next = self.compose(&ladder[k], &ladder[k]);
                if self.cmp(&next, target) == Ordering::Greater {
                    break;
                }
                ladder.push(next);
                k += 1;
                if k as u32 > self.max_gallop {
                    return Err(Error::BudgetExhausted {
                        what: "gallop doubling",
                        limit: self.max_gallop,
                    });
                }
            }
            let mut n = BigInt::one() << k;
            let mut acc = ladder[k].clone();
            for j in (0..k).rev() {
                let cand = self.compose(&acc, &ladder[j]);
                if self.cmp(&cand, target) != Ordering::Greater {
                    n += BigInt::one() << j;
                    acc = cand;
                }
            }
            Ok(n)
        } else {
            // target is negative: the answer is -(m+1) for the greatest m
            // with m basepoints attached to target still negative.
            let attached = self.compose(&self.base, target);
            if self.sign_of(&attached) != Sign::Negative {
                return Ok(BigInt::from(-1));
            }
            let mut ladder = vec![self.base.clone()];
            let mut k = 0usize;
            loop {
                let next = self.compose(&ladder[k], &ladder[k]);
                let att = self.compose(&next, target);
                ladder.push(next);
                if self.sign_of(&att) != Sign::Negative {
                    break;
                }
                k += 1;
                if k as u32 > self.max_gallop {
                    return Err(Error::BudgetExhausted {
                        what: "gallop doubling",
                        limit: self.max_gallop,
                    });
                }
            }
            let mut m = BigInt::one() << k;
            let mut acc = self.compose(&ladder[k], target);
            for j in (0..k).rev() {
                let cand = self.compose(&acc, &ladder[j]);
                if self.sign_of(&cand) == Sign::Negative {
                    m += BigInt::one() << j;
                    acc = cand;
                }
            }
            Ok(-(m + BigInt::one()))
        }
    }
}

#[derive(Debug, Clone, Default)]
struct PointCache {
    ranks: Vec<BigInt>,
    scaled: Option<Payload>,
}

/// One element measured against a basepoint, with per-level rank memoization.
/// Level 0 runs a full search; each deeper level doubles the element and
/// resolves the one remaining binary digit of the rank with a single count
/// test.
#[derive(Debug, Clone)]
pub(crate) struct PointStream {
    ctx: PointContext,
    value: Payload,
    cache: RefCell<PointCache>,
}

impl PointStream {
    pub(crate) fn new(ctx: PointContext, value: Payload) -> Self {
        PointStream {
            ctx,
            value,
            cache: RefCell::new(PointCache::default()),
        }
    }

    pub(crate) fn rank_at(&self, level: u32) -> Result<BigInt> {
        let mut cache = self.cache.borrow_mut();
        while cache.ranks.len() <= level as usize {
            if cache.ranks.is_empty() {
                let rank = self.ctx.rank_search(&self.value)?;
                cache.ranks.push(rank);
                cache.scaled = Some(self.value.clone());
            } else {
                let scaled = cache.scaled.take().expect("scaled value tracks ranks");
                let doubled = self.ctx.compose(&scaled, &scaled);
                let prev = cache.ranks.last().expect("nonempty").clone();
                let candidate = (&prev << 1) + BigInt::one();
                let rank = if self.ctx.count_le(&candidate, &doubled) {
                    candidate
                } else {
                    prev << 1
                };
                cache.ranks.push(rank);
                cache.scaled = Some(doubled);
            }
        }
        Ok(cache.ranks[level as usize].clone())
    }
}

/// Ranks summed across the terms of a formal sum. The enclosure at level `n`
/// spans `d + 1` units of last place, where `d` is the number of terms.
#[derive(Debug, Clone)]
pub(crate) struct SumStream {
    terms: Vec<PointStream>,
}

impl SumStream {
    pub(crate) fn new(terms: Vec<PointStream>) -> Self {
        debug_assert!(!terms.is_empty());
        SumStream { terms }
    }

    pub(crate) fn rank_sum_at(&self, level: u32) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for term in &self.terms {
            total += term.rank_at(level)?;
        }
        Ok(total)
    }
}

#[derive(Debug, Clone)]
enum Source {
    Point(PointStream),
    Sum(SumStream),
    Constant(DyadicRational),
    Add(Box<RealStream>, Box<RealStream>),
    Mul(Box<RealStream>, Box<RealStream>),
    Recip {
        inner: Box<RealStream>,
        max_level: u32,
    },
}

/// A real number presented as a producer of nested dyadic enclosures.
#[derive(Debug, Clone)]
pub struct RealStream {
    source: Source,
}

const MAX_DERIVED_RETRIES: u32 = 64;

impl RealStream {
    pub(crate) fn from_point(point: PointStream) -> Self {
        RealStream {
            source: Source::Point(point),
        }
    }

    pub(crate) fn from_sum(sum: SumStream) -> Self {
        RealStream {
            source: Source::Sum(sum),
        }
    }

    /// A stream that is exactly the given dyadic rational.
    pub fn constant(value: DyadicRational) -> Self {
        RealStream {
            source: Source::Constant(value),
        }
    }

    pub(crate) fn add_streams(a: RealStream, b: RealStream) -> Self {
        RealStream {
            source: Source::Add(Box::new(a), Box::new(b)),
        }
    }

    pub(crate) fn mul_streams(a: RealStream, b: RealStream) -> Self {
        RealStream {
            source: Source::Mul(Box::new(a), Box::new(b)),
        }
    }

    pub(crate) fn recip_stream(inner: RealStream, max_level: u32) -> Self {
        RealStream {
            source: Source::Recip {
                inner: Box::new(inner),
                max_level,
            },
        }
    }

    /// An enclosure of the number with width at most `2^-level` (exactly
    /// `2^-level` for element and constant streams, `(d+1)·2^-level` for
    /// formal-sum streams with `d` terms).
    pub fn enclosure(&self, level: u32) -> Result<DyadicEnclosure> {
        match &self.source {
            Source::Point(point) => {
                let rank = point.rank_at(level)?;
                Ok(DyadicEnclosure::new(rank, level, BigInt::one()))
            }
            Source::Sum(sum) => {
                let total = sum.rank_sum_at(level)?;
                let ulps = BigInt::from(sum.terms.len() as u64 + 1);
                Ok(DyadicEnclosure::new(total, level, ulps))
            }
            Source::Constant(value) => {
                let mantissa = value.floor_at_level(level);
                Ok(DyadicEnclosure::new(mantissa, level, BigInt::one()))
            }
            Source::Add(a, b) => add_enclosure(a, b, level),
            Source::Mul(a, b) => mul_enclosure(a, b, level),
            Source::Recip { inner, max_level } => recip_enclosure(inner, *max_level, level),
        }
    }
}

fn width_at_most(e: &DyadicEnclosure, level: u32) -> bool {
    e.width() <= DyadicRational::one().scale_exp(-(level as i64))
}

fn add_enclosure(a: &RealStream, b: &RealStream, level: u32) -> Result<DyadicEnclosure> {
    let mut k = level + 1;
    for _ in 0..MAX_DERIVED_RETRIES {
        let ea = a.enclosure(k)?;
        let eb = b.enclosure(k)?;
        let deep = ea.level().max(eb.level());
        let ea = ea.at_level(deep);
        let eb = eb.at_level(deep);
        let sum = DyadicEnclosure::new(
            ea.lo().mantissa() + eb.lo().mantissa(),
            deep,
            ea.ulps() + eb.ulps(),
        );
        if width_at_most(&sum, level) {
            return Ok(sum);
        }
        k += 2;
    }
    Err(Error::BudgetExhausted {
        what: "sum refinement",
        limit: MAX_DERIVED_RETRIES,
    })
}

/// `e` such that `2^e` strictly bounds `|d|`; zero maps to 0.
fn magnitude_exponent(d: &DyadicRational) -> i64 {
    if d.is_zero() {
        0
    } else {
        d.mantissa().bits() as i64 + d.exponent()
    }
}

/// Covers the closed interval `[m, m2]` by a half-open dyadic enclosure at
/// the given level.
fn cover(m: &DyadicRational, m2: &DyadicRational, level: u32) -> DyadicEnclosure {
    let lo = m.floor_at_level(level);
    let hi = m2.floor_at_level(level) + BigInt::one();
    let ulps = &hi - &lo;
    DyadicEnclosure::new(lo, level, ulps)
}

fn mul_enclosure(a: &RealStream, b: &RealStream, level: u32) -> Result<DyadicEnclosure> {
    let ea0 = a.enclosure(0)?;
    let eb0 = b.enclosure(0)?;
    let bits_a = magnitude_exponent(&ea0.lo_value())
        .max(magnitude_exponent(&ea0.hi_value()))
        .max(0);
    let bits_b = magnitude_exponent(&eb0.lo_value())
        .max(magnitude_exponent(&eb0.hi_value()))
        .max(0);
    let mut k = level as i64 + bits_a + bits_b + 4;
    for _ in 0..MAX_DERIVED_RETRIES {
        let depth = k.max(0) as u32;
        let ea = a.enclosure(depth)?;
        let eb = b.enclosure(depth)?;
        // Conservative closed-hull product of the two intervals.
        let corners = [
            ea.lo_value().mul(&eb.lo_value()),
            ea.lo_value().mul(&eb.hi_value()),
            ea.hi_value().mul(&eb.lo_value()),
            ea.hi_value().mul(&eb.hi_value()),
        ];
        let mut min = corners[0].clone();
        let mut max = corners[0].clone();
        for c in &corners[1..] {
            if *c < min {
                min = c.clone();
            }
            if *c > max {
                max = c.clone();
            }
        }
        if max.sub(&min) <= DyadicRational::one().scale_exp(-(level as i64) - 1) {
            let out = cover(&min, &max, level + 2);
            debug_assert!(width_at_most(&out, level));
            return Ok(out);
        }
        k += 4;
    }
    Err(Error::BudgetExhausted {
        what: "product refinement",
        limit: MAX_DERIVED_RETRIES,
    })
}

fn floor_rational_at_level(q: &BigRational, level: u32) -> BigInt {
    let scaled = q.numer() << level as u64;
    scaled.div_floor(q.denom())
}

fn recip_enclosure(inner: &RealStream, max_level: u32, level: u32) -> Result<DyadicEnclosure> {
    // Find a level at which the enclosure is strictly away from zero; a
    // stream that sits on zero exhausts the separation budget instead.
    let mut sep = None;
    for k in 0..=max_level {
        let e = inner.enclosure(k)?;
        if e.lo_value().signum() == Ordering::Greater
            || e.hi_value().signum() == Ordering::Less
        {
            sep = Some((k, e));
            break;
        }
    }
    let (sep_level, sep_enclosure) = match sep {
        Some(found) => found,
        None => return Err(Error::ZeroDivision { max_level }),
    };
    // |x| >= margin > 0 everywhere in the enclosure.
    let margin = if sep_enclosure.lo_value().signum() == Ordering::Greater {
        sep_enclosure.lo_value()
    } else {
        sep_enclosure.hi_value().neg()
    };
    // The reciprocal hull has width w / margin^2; refine the input until
    // that is at most half the requested width.
    let margin_floor = magnitude_exponent(&margin) - 1; // 2^margin_floor <= margin
    let mut k = (level as i64 + 1 - 2 * margin_floor + 2).max(sep_level as i64);
    for _ in 0..MAX_DERIVED_RETRIES {
        let depth = k.max(0) as u32;
        let e = inner.enclosure(depth)?;
        let (l, h) = (e.lo_value().to_rational(), e.hi_value().to_rational());
        // Nested refinement keeps the sign separation.
        debug_assert!(!l.is_zero() && !h.is_zero() && l.is_positive() == h.is_positive());
        let r_lo = h.recip();
        let r_hi = l.recip();
        let out_level = level + 2;
        let lo = floor_rational_at_level(&r_lo, out_level);
        let hi = floor_rational_at_level(&r_hi, out_level) + BigInt::one();
        let out = DyadicEnclosure::new(lo.clone(), out_level, &hi - &lo);
        if width_at_most(&out, level) {
            return Ok(out);
        }
        k += 4;
    }
    Err(Error::BudgetExhausted {
        what: "reciprocal refinement",
        limit: MAX_DERIVED_RETRIES,
    })
}

/// Compares two streams by refining both until their enclosures separate.
/// Distinct numbers separate at some finite level; equal numbers never do,
/// so the refinement budget bounds the scan and `Indistinguishable` reports
/// the level that was exhausted.
pub fn compare_reals(x: &RealStream, y: &RealStream, budget: &Budget) -> Result<ComparisonOutcome> {
    for level in 0..=budget.max_level() {
        let ex = x.enclosure(level)?;
        let ey = y.enclosure(level)?;
        if ex.entirely_below(&ey) {
            return Ok(ComparisonOutcome::Less);
        }
        if ey.entirely_below(&ex) {
            return Ok(ComparisonOutcome::Greater);
        }
    }
    Ok(ComparisonOutcome::Indistinguishable(budget.max_level()))
}
