//! Multiplication, reciprocals, and morphism scalars on embedded reals.
//!
//! A morphism between pointed backends is pinned down by the image of the
//! source basepoint. Dividing that image's real value by the source
//! basepoint's (which is one by construction) yields the morphism's scalar;
//! applying the morphism is scalar multiplication after embedding. Products
//! and reciprocals are interval arithmetic on streams, so every claimed
//! digit is certified.

use std::fmt;

use crate::backend::Element;
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::order::{sign, Budget, Sign};
use crate::rank::{real_of, PointedBackend};
use crate::real::{DyadicEnclosure, RealStream};

/// An order-embedding map between pointed backends, determined entirely by
/// where it sends the source basepoint.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: PointedBackend,
    target: PointedBackend,
    basepoint_image: Element,
}

impl Morphism {
    pub fn new(
        source: PointedBackend,
        target: PointedBackend,
        basepoint_image: Element,
    ) -> Result<Self> {
        if basepoint_image.backend() != target.backend() {
            return Err(Error::mismatch(target.backend(), basepoint_image.backend()));
        }
        if sign(&basepoint_image) == Sign::Identity {
            return Err(Error::Precondition(
                "the basepoint image must not be the identity".to_string(),
            ));
        }
        Ok(Morphism {
            source,
            target,
            basepoint_image,
        })
    }

    pub fn source(&self) -> &PointedBackend {
        &self.source
    }

    pub fn target(&self) -> &PointedBackend {
        &self.target
    }

    pub fn basepoint_image(&self) -> &Element {
        &self.basepoint_image
    }
}

/// The scalar that realizes a morphism on embedded reals.
#[derive(Debug, Clone)]
pub struct MorphismScalar {
    lambda: RealStream,
}

impl MorphismScalar {
    pub fn stream(&self) -> &RealStream {
        &self.lambda
    }
}

/// Pointwise sum of two streams.
pub fn stream_add(x: &RealStream, y: &RealStream) -> RealStream {
    RealStream::add_streams(x.clone(), y.clone())
}

/// Interval product of two streams. Emitting level `n` refines both inputs
/// past `n` by their magnitude bits, so output enclosures keep the `2^-n`
/// width contract.
pub fn multiply(x: &RealStream, y: &RealStream) -> RealStream {
    RealStream::mul_streams(x.clone(), y.clone())
}

/// Reciprocal stream. The budget's level limit bounds the initial search
/// for an enclosure separated from zero; a stream indistinguishable from
/// zero within that limit fails with `ZeroDivision` when refined.
pub fn reciprocal(x: &RealStream, budget: &Budget) -> RealStream {
    RealStream::recip_stream(x.clone(), budget.max_level())
}

/// Level-`level` enclosure of `1/x`.
pub fn invert(x: &RealStream, level: u32, budget: &Budget) -> Result<DyadicEnclosure> {
    reciprocal(x, budget).enclosure(level)
}

/// The morphism's scalar: the real value of the basepoint image divided by
/// the real value of the source basepoint. The divisor is exactly one, so
/// the quotient always separates from zero immediately; the division is
/// kept explicit so the scalar is the literal image/basepoint ratio.
pub fn morphism_scalar(m: &Morphism) -> Result<MorphismScalar> {
    let numerator = real_of(&m.target, &m.basepoint_image)?;
    let denominator = real_of(&m.source, m.source.basepoint())?;
    let budget = Budget::default();
    let lambda = multiply(&numerator, &reciprocal(&denominator, &budget));
    Ok(MorphismScalar { lambda })
}

/// The image of `x` under the morphism, as a real in target-basepoint
/// units: the scalar times the embedded value of `x`. Positive scalars
/// preserve order, negative scalars reverse it.
pub fn apply_morphism(m: &Morphism, x: &Element) -> Result<RealStream> {
    let scalar = morphism_scalar(m)?;
    let embedded = real_of(&m.source, x)?;
    Ok(multiply(scalar.stream(), &embedded))
}

/// The laws checked by [`check_field_laws`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldLaw {
    Associativity,
    Commutativity,
    Distributivity,
    UnitLaw,
    PositiveProduct,
}

impl fmt::Display for FieldLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldLaw::Associativity => write!(f, "associativity"),
            FieldLaw::Commutativity => write!(f, "commutativity"),
            FieldLaw::Distributivity => write!(f, "distributivity"),
            FieldLaw::UnitLaw => write!(f, "unit law"),
            FieldLaw::PositiveProduct => write!(f, "positive product"),
        }
    }
}

/// One failed law instance: which law, at which sample window, and the two
/// enclosures that should have overlapped (or the sign that was wrong).
#[derive(Debug, Clone)]
pub struct FieldLawViolation {
    pub law: FieldLaw,
    pub index: usize,
    pub detail: String,
}

/// Outcome of a law suite run.
#[derive(Debug, Clone)]
pub struct FieldLawReport {
    pub level: u32,
    pub samples: usize,
    pub checks: usize,
    pub violations: Vec<FieldLawViolation>,
}

impl FieldLawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn overlap_check(
    law: FieldLaw,
    index: usize,
    left: &RealStream,
    right: &RealStream,
    level: u32,
    report: &mut FieldLawReport,
) -> Result<()> {
    let el = left.enclosure(level)?;
    let er = right.enclosure(level)?;
    report.checks += 1;
    if !el.overlaps(&er) {
        report.violations.push(FieldLawViolation {
            law,
            index,
            detail: format!("{el} vs {er}"),
        });
    }
    Ok(())
}

/// Whether the stream certifies a strictly positive value by `level`.
fn separates_positive(x: &RealStream, level: u32) -> Result<bool> {
    for probe in 0..=level {
        let e = x.enclosure(probe)?;
        if e.lo_value().signum() == std::cmp::Ordering::Greater {
            return Ok(true);
        }
        if e.hi_value().signum() != std::cmp::Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(false)
}

/// Checks the ring/field laws on enclosures at the given level: unit laws
/// per sample, commutativity and sign of products per adjacent pair, and
/// associativity plus distributivity per adjacent triple. Two streams pass
/// an equational check when their enclosures overlap — the testable
/// surrogate for equality of the underlying reals.
pub fn check_field_laws(samples: &[RealStream], level: u32) -> Result<FieldLawReport> {
    let mut report = FieldLawReport {
        level,
        samples: samples.len(),
        checks: 0,
        violations: Vec::new(),
    };
    let unit = RealStream::constant(DyadicRational::one());
    for (i, x) in samples.iter().enumerate() {
        overlap_check(
            FieldLaw::UnitLaw,
            i,
            &multiply(x, &unit),
            x,
            level,
            &mut report,
        )?;
    }
    for (i, pair) in samples.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        overlap_check(
            FieldLaw::Commutativity,
            i,
            &multiply(a, b),
            &multiply(b, a),
            level,
            &mut report,
        )?;
        if separates_positive(a, level)? && separates_positive(b, level)? {
            report.checks += 1;
            if !separates_positive(&multiply(a, b), level)? {
                report.violations.push(FieldLawViolation {
                    law: FieldLaw::PositiveProduct,
                    index: i,
                    detail: "product of certified positives did not certify positive".to_string(),
                });
            }
        }
    }
    for (i, triple) in samples.windows(3).enumerate() {
        let (a, b, c) = (&triple[0], &triple[1], &triple[2]);
        overlap_check(
            FieldLaw::Associativity,
            i,
            &multiply(&multiply(a, b), c),
            &multiply(a, &multiply(b, c)),
            level,
            &mut report,
        )?;
        overlap_check(
            FieldLaw::Distributivity,
            i,
            &multiply(&stream_add(a, b), c),
            &stream_add(&multiply(a, c), &multiply(b, c)),
            level,
            &mut report,
        )?;
    }
    Ok(report)
}
