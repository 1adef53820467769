//! Formal sums over a family of pointed backends and their weak order.
//!
//! A formal sum holds at most one element per family index. Its level-`n`
//! rank sum is the total of the member ranks, and the weak order compares
//! two sums by scanning levels until the rank sums separate by more than the
//! support-size slack. Singleton basepoint sums from different members never
//! separate — they all present the number one — which is why the order is
//! weak and incomparability verdicts carry the budget they exhausted.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::backend::{eff_compare, payload_sign, Element, Payload};
use crate::error::{Error, Result};
use crate::order::{compose, multiple, AnomalousVerdict, Budget, Sign};
use crate::rank::{rank, PointedBackend};
use crate::real::{PointStream, RealStream, SumStream};

/// An indexed family of pointed backends; formal sums draw one term per
/// index.
#[derive(Debug, Clone)]
pub struct PointedFamily {
    members: Vec<PointedBackend>,
}

impl PointedFamily {
    pub fn new(members: Vec<PointedBackend>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition(
                "a pointed family needs at least one member".to_string(),
            ));
        }
        Ok(PointedFamily { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, index: usize) -> Option<&PointedBackend> {
        self.members.get(index)
    }

    pub fn members(&self) -> &[PointedBackend] {
        &self.members
    }

    fn checked_member(&self, index: usize) -> Result<&PointedBackend> {
        self.members.get(index).ok_or_else(|| {
            Error::Precondition(format!(
                "family index {index} out of range (family has {} members)",
                self.members.len()
            ))
        })
    }
}

/// A finite formal sum: at most one element per family index, at least one
/// term overall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<usize, Element>,
}

impl FormalSum {
    /// Builds a sum from (index, element) pairs; duplicate indices compose.
    pub fn new(family: &PointedFamily, terms: Vec<(usize, Element)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Precondition(
                "a formal sum needs at least one term".to_string(),
            ));
        }
        let mut map: BTreeMap<usize, Element> = BTreeMap::new();
        for (index, element) in terms {
            let member = family.checked_member(index)?;
            if element.backend() != member.backend() {
                return Err(Error::mismatch(member.backend(), element.backend()));
            }
            match map.remove(&index) {
                Some(existing) => {
                    map.insert(index, compose(&existing, &element)?);
                }
                None => {
                    map.insert(index, element);
                }
            }
        }
        Ok(FormalSum { terms: map })
    }

    pub fn singleton(family: &PointedFamily, index: usize, element: Element) -> Result<Self> {
        FormalSum::new(family, vec![(index, element)])
    }

    /// The support size `d`: how many indices carry a term.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Element)> {
        self.terms.iter().map(|(i, e)| (*i, e))
    }

    pub fn term(&self, index: usize) -> Option<&Element> {
        self.terms.get(&index)
    }
}

/// Indexwise composition; indices present in only one operand carry over.
pub fn sum_add(family: &PointedFamily, x: &FormalSum, y: &FormalSum) -> Result<FormalSum> {
    let mut terms: Vec<(usize, Element)> = Vec::with_capacity(x.terms.len() + y.terms.len());
    for (i, e) in x.terms() {
        terms.push((i, e.clone()));
    }
    for (i, e) in y.terms() {
        terms.push((i, e.clone()));
    }
    FormalSum::new(family, terms)
}

fn sum_scale(family: &PointedFamily, n: &BigInt, x: &FormalSum) -> Result<FormalSum> {
    let mut terms = Vec::with_capacity(x.terms.len());
    for (i, e) in x.terms() {
        terms.push((i, multiple(n, e)?));
    }
    FormalSum::new(family, terms)
}

/// The level-`level` rank sum: the total of each term's rank against its own
/// member basepoint.
pub fn sum_rank(level: u32, family: &PointedFamily, x: &FormalSum) -> Result<BigInt> {
    let mut total = BigInt::from(0);
    for (index, element) in x.terms() {
        let member = family.checked_member(index)?;
        total += rank(level, member, element)?;
    }
    Ok(total)
}

pub(crate) fn sum_stream(family: &PointedFamily, x: &FormalSum) -> Result<SumStream> {
    let mut points = Vec::with_capacity(x.terms.len());
    for (index, element) in x.terms() {
        let member = family.checked_member(index)?;
        if element.backend() != member.backend() {
            return Err(Error::mismatch(member.backend(), element.backend()));
        }
        points.push(PointStream::new(member.context(), element.payload().clone()));
    }
    Ok(SumStream::new(points))
}

/// Verdict of the weak-order scan between two formal sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecedesVerdict {
    /// `x` sits strictly below `y`; the level is the least witness.
    Precedes(u32),
    /// `x` sits strictly above `y`; the level is the least witness.
    Succeeds(u32),
    /// No separation up to the budget level. Basepoint singletons from
    /// different members stay here forever; other pairs may separate later.
    IncomparableUpTo(u32),
}

/// Scans levels `0, 1, 2, …` until the rank sums separate by more than the
/// support slack: `x` precedes `y` once `sum_rank(n, x) + d(x) + 1 <=
/// sum_rank(n, y)`. Returns the least witnessing level.
pub fn precedes(
    family: &PointedFamily,
    x: &FormalSum,
    y: &FormalSum,
    budget: &Budget,
) -> Result<PrecedesVerdict> {
    let sx = sum_stream(family, x)?;
    let sy = sum_stream(family, y)?;
    let dx = BigInt::from(x.support_size() as u64);
    let dy = BigInt::from(y.support_size() as u64);
    for level in 0..=budget.max_level() {
        let gx = sx.rank_sum_at(level)?;
        let gy = sy.rank_sum_at(level)?;
        if &gx + &dx + BigInt::one() <= gy {
            return Ok(PrecedesVerdict::Precedes(level));
        }
        if &gy + &dy + BigInt::one() <= gx {
            return Ok(PrecedesVerdict::Succeeds(level));
        }
    }
    Ok(PrecedesVerdict::IncomparableUpTo(budget.max_level()))
}

/// Sign verdict for a formal sum, with the level that certified it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumSign {
    Positive(u32),
    Negative(u32),
    UndecidedUpTo(u32),
}

/// Certifies the sign of a sum's value: positive once the rank sum reaches
/// one, negative once it falls to `-d`. A sum whose value is exactly zero
/// never decides and reports the exhausted budget.
pub fn sum_sign(family: &PointedFamily, x: &FormalSum, budget: &Budget) -> Result<SumSign> {
    let stream = sum_stream(family, x)?;
    let d = BigInt::from(x.support_size() as u64);
    for level in 0..=budget.max_level() {
        let g = stream.rank_sum_at(level)?;
        if g >= BigInt::from(1) {
            return Ok(SumSign::Positive(level));
        }
        if g <= -&d {
            return Ok(SumSign::Negative(level));
        }
    }
    Ok(SumSign::UndecidedUpTo(budget.max_level()))
}

/// The sum's value as a real-number stream. The level-`n` enclosure is
/// `[g/2^n, (g + d + 1)/2^n)` where `g` is the rank sum, so its width is
/// `(d+1)·2^-n`.
pub fn sum_to_real(family: &PointedFamily, x: &FormalSum) -> Result<RealStream> {
    Ok(RealStream::from_sum(sum_stream(family, x)?))
}

/// The comparison table of two generators: entry `(m, n, p, q)` classifies
/// `m·a + n·b` against `p·a + q·b` as 0 (below), 1 (equal), or 2 (above).
/// Two generator pairs with equal tables generate order-isomorphic
/// sub-semigroups on the covered range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTable {
    bound: u32,
    values: Vec<u8>,
}

impl GeneratorTable {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    fn offset(&self, m: u32, n: u32, p: u32, q: u32) -> usize {
        let side = self.bound as usize + 1;
        (((m as usize * side + n as usize) * side + p as usize) * side) + q as usize
    }

    /// Table entry; coefficients must be at most the bound.
    pub fn get(&self, m: u32, n: u32, p: u32, q: u32) -> u8 {
        assert!(m <= self.bound && n <= self.bound && p <= self.bound && q <= self.bound);
        self.values[self.offset(m, n, p, q)]
    }

    /// Reflexivity (`f(m,n,m,n) = 1`) and antisymmetry
    /// (`f(m,n,p,q) = 2 - f(p,q,m,n)`) across the whole table.
    pub fn is_consistent(&self) -> bool {
        let side = self.bound + 1;
        for m in 0..side {
            for n in 0..side {
                if self.get(m, n, m, n) != 1 {
                    return false;
                }
                for p in 0..side {
                    for q in 0..side {
                        if self.get(m, n, p, q) != 2 - self.get(p, q, m, n) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The combination `m·a + n·b`, or `None` for the empty combination.
fn combination(pointed: &PointedBackend, b: &Element, m: u32, n: u32) -> Option<Payload> {
    let kind = pointed.backend().kind();
    let mut acc: Option<Payload> = None;
    if m > 0 {
        acc = Some(kind.multiple_payload(&BigInt::from(m), pointed.basepoint().payload()));
    }
    if n > 0 {
        let part = kind.multiple_payload(&BigInt::from(n), b.payload());
        acc = Some(match acc {
            Some(front) => kind.compose_payload(&front, &part),
            None => part,
        });
    }
    acc
}

/// Builds the comparison table for the basepoint of `pointed` and a second
/// generator `b`, over all coefficient vectors with entries at most `bound`.
/// The empty combination compares as the identity: against it, an element
/// classifies by its sign.
pub fn generator_table(
    pointed: &PointedBackend,
    b: &Element,
    bound: u32,
) -> Result<GeneratorTable> {
    if b.backend() != pointed.backend() {
        return Err(Error::mismatch(pointed.backend(), b.backend()));
    }
    let kind = pointed.backend().kind().clone();
    let reversed = pointed.is_reversed();
    let side = bound as usize + 1;
    let mut combos: Vec<Option<Payload>> = Vec::with_capacity(side * side);
    for m in 0..=bound {
        for n in 0..=bound {
            combos.push(combination(pointed, b, m, n));
        }
    }
    let mut values = vec![0u8; side * side * side * side];
    let mut at = 0usize;
    for left in &combos {
        for right in &combos {
            values[at] = match (left, right) {
                (Some(l), Some(r)) => match eff_compare(&kind, reversed, l, r) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => 1,
                    std::cmp::Ordering::Greater => 2,
                },
                (Some(l), None) => match payload_sign(&kind, reversed, l) {
                    Sign::Positive => 2,
                    Sign::Identity => 1,
                    Sign::Negative => 0,
                },
                (None, Some(r)) => match payload_sign(&kind, reversed, r) {
                    Sign::Positive => 0,
                    Sign::Identity => 1,
                    Sign::Negative => 2,
                },
                (None, None) => 1,
            };
            at += 1;
        }
    }
    Ok(GeneratorTable { bound, values })
}

/// Bounded anomalous-pair scan for an ordered pair of same-signed sums.
/// Orients the pair by `precedes`, then searches for the least multiplier
/// `n <= depth` at which `n` copies of the larger sum escape `n+1` copies of
/// the smaller; finding one certifies the pair is not anomalous.
pub fn sum_anomalous_pair_at_depth(
    family: &PointedFamily,
    x: &FormalSum,
    y: &FormalSum,
    depth: u32,
    budget: &Budget,
) -> Result<AnomalousVerdict> {
    if depth < 1 {
        return Err(Error::Precondition(
            "the scan depth must be at least 1".to_string(),
        ));
    }
    let direction = precedes(family, x, y, budget)?;
    let positive = match (
        sum_sign(family, x, budget)?,
        sum_sign(family, y, budget)?,
    ) {
        (SumSign::Positive(_), SumSign::Positive(_)) => true,
        (SumSign::Negative(_), SumSign::Negative(_)) => false,
        _ => {
            return Err(Error::Precondition(
                "both sums must have the same decided sign".to_string(),
            ))
        }
    };
    // The scan's "large" sum is the one of larger magnitude.
    let (big, small) = match direction {
        PrecedesVerdict::Precedes(_) => {
            if positive {
                (y, x)
            } else {
                (x, y)
            }
        }
        PrecedesVerdict::Succeeds(_) => {
            if positive {
                (x, y)
            } else {
                (y, x)
            }
        }
        PrecedesVerdict::IncomparableUpTo(level) => {
            return Err(Error::Precondition(format!(
                "the sums did not separate within budget level {level}"
            )));
        }
    };
    for n in 1..=depth {
        let big_scaled = sum_scale(family, &BigInt::from(n), big)?;
        let small_scaled = sum_scale(family, &BigInt::from(n + 1), small)?;
        // Anomalous pairs keep n big-copies inside n+1 small-copies.
        let holds = match precedes(family, &big_scaled, &small_scaled, budget)? {
            PrecedesVerdict::Precedes(_) => positive,
            PrecedesVerdict::Succeeds(_) => !positive,
            PrecedesVerdict::IncomparableUpTo(_) => false,
        };
        if !holds {
            return Ok(AnomalousVerdict::NotAnomalous(n));
        }
    }
    Ok(AnomalousVerdict::AnomalousUpTo(depth))
}
