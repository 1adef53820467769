//! Order-theoretic algorithms over any backend.
//!
//! The central trick everywhere is that `n`-fold composition is monotone in
//! `n` once the element's sign is known, so searches over multiplicities can
//! gallop (double until overshoot) and then walk a precomputed doubling
//! ladder back down. Every search is budgeted: non-Archimedean inputs produce
//! a `BudgetExhausted` error instead of an unbounded loop.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::backend::{eff_compare, payload_sign, Backend, Element, Payload};
use crate::error::{Error, Result};

/// Sign of an element: positive means the square exceeds the element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Identity,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => write!(f, "Positive"),
            Sign::Negative => write!(f, "Negative"),
            Sign::Identity => write!(f, "Identity"),
        }
    }
}

/// Outcome of a comparison. Exact backends only ever produce the first three;
/// `Indistinguishable` comes from comparing refinable streams and records the
/// refinement level that was exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonOutcome {
    Less,
    Equal,
    Greater,
    Indistinguishable(u32),
}

impl fmt::Display for ComparisonOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComparisonOutcome::Less => write!(f, "Less"),
            ComparisonOutcome::Equal => write!(f, "Equal"),
            ComparisonOutcome::Greater => write!(f, "Greater"),
            ComparisonOutcome::Indistinguishable(level) => {
                write!(f, "Indistinguishable(level {level})")
            }
        }
    }
}

/// Resource limits for searches and stream refinement.
///
/// `max_level` bounds dyadic refinement depth; `max_gallop` bounds doubling
/// steps in multiplicity searches. Both are at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    max_level: u32,
    max_gallop: u32,
}

impl Budget {
    pub fn new(max_level: u32, max_gallop: u32) -> Result<Self> {
        if max_level < 1 || max_gallop < 1 {
            return Err(Error::Precondition(
                "budget limits must be at least 1".to_string(),
            ));
        }
        Ok(Budget {
            max_level,
            max_gallop,
        })
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn max_gallop(&self) -> u32 {
        self.max_gallop
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_level: 64,
            max_gallop: 128,
        }
    }
}

/// Verdict of a bounded anomalous-pair scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnomalousVerdict {
    /// Every multiplicity up to the depth satisfied the anomalous-pair
    /// inequalities; the pair may still separate deeper.
    AnomalousUpTo(u32),
    /// The least multiplicity at which the inequalities fail.
    NotAnomalous(u32),
}

fn require_same_backend(x: &Element, y: &Element) -> Result<()> {
    if x.backend() != y.backend() {
        return Err(Error::mismatch(x.backend(), y.backend()));
    }
    Ok(())
}

fn outcome_from_ordering(ord: Ordering) -> ComparisonOutcome {
    match ord {
        Ordering::Less => ComparisonOutcome::Less,
        Ordering::Equal => ComparisonOutcome::Equal,
        Ordering::Greater => ComparisonOutcome::Greater,
    }
}

/// Semigroup composition. The two elements must come from the same backend.
pub fn compose(x: &Element, y: &Element) -> Result<Element> {
    require_same_backend(x, y)?;
    let payload = x
        .backend()
        .kind()
        .compose_payload(x.payload(), y.payload());
    x.backend().element_from_payload(payload)
}

/// Total-order comparison. Exact for every shipped backend; the budget is
/// accepted for interface uniformity and not consumed here.
pub fn compare(x: &Element, y: &Element, _budget: &Budget) -> Result<ComparisonOutcome> {
    require_same_backend(x, y)?;
    Ok(outcome_from_ordering(eff_compare(
        x.backend().kind(),
        x.backend().is_dual(),
        x.payload(),
        y.payload(),
    )))
}

/// `n`-fold composition, `n >= 1`, by repeated squaring.
pub fn multiple(n: &BigInt, x: &Element) -> Result<Element> {
    if n < &BigInt::one() {
        return Err(Error::InvalidMultiplicity);
    }
    let payload = x.backend().kind().multiple_payload(n, x.payload());
    x.backend().element_from_payload(payload)
}

/// Sign via comparing the square against the element. In a dual backend all
/// signs flip.
pub fn sign(x: &Element) -> Sign {
    payload_sign(x.backend().kind(), x.backend().is_dual(), x.payload())
}

/// Reverses the order of a backend. Composition is untouched; signs flip.
pub fn dualize(backend: &Backend) -> Backend {
    backend.dual()
}

// Internal view used by the multiplicity searches: a backend kind plus an
// effective orientation.
struct Ordered<'a> {
    kind: &'a crate::backend::BackendKind,
    reversed: bool,
}

impl<'a> Ordered<'a> {
    fn of(backend: &'a Backend) -> Self {
        Ordered {
            kind: backend.kind(),
            reversed: backend.is_dual(),
        }
    }

    fn flipped(backend: &'a Backend) -> Self {
        Ordered {
            kind: backend.kind(),
            reversed: !backend.is_dual(),
        }
    }

    fn cmp(&self, a: &Payload, b: &Payload) -> Ordering {
        eff_compare(self.kind, self.reversed, a, b)
    }

    fn sign(&self, a: &Payload) -> Sign {
        payload_sign(self.kind, self.reversed, a)
    }

    fn compose(&self, a: &Payload, b: &Payload) -> Payload {
        self.kind.compose_payload(a, b)
    }
}

/// Greatest `n >= 1` with `n·y <= x`, i.e. the unique `n` with
/// `(n+1)·y > x >= n·y`. Requires `x` and `y` of one sign with `x >= y`; a
/// negative pair is handled in the dual order. Galloping doubles `n` until it
/// overshoots, then binary-searches along the doubling ladder, so the cost is
/// logarithmic in the answer.
pub fn archimedean_floor(x: &Element, y: &Element, budget: &Budget) -> Result<BigInt> {
    require_same_backend(x, y)?;
    let sx = sign(x);
    let sy = sign(y);
    if sx == Sign::Identity || sy == Sign::Identity || sx != sy {
        return Err(Error::Precondition(
            "archimedean floor needs two elements of the same nonzero sign".to_string(),
        ));
    }
    let view = if sx == Sign::Positive {
        Ordered::of(x.backend())
    } else {
        Ordered::flipped(x.backend())
    };
    if view.cmp(x.payload(), y.payload()) == Ordering::Less {
        return Err(Error::Precondition(
            "archimedean floor needs x >= y".to_string(),
        ));
    }
    // ladder[j] holds 2^j · y.
    let mut ladder: Vec<Payload> = vec![y.payload().clone()];
    let mut k = 0usize;
    loop {
        let next = view.compose(&ladder[k], &ladder[k]);
        if view.cmp(&next, x.payload()) == Ordering::Greater {
            break;
        }
        ladder.push(next);
        k += 1;
        if k as u32 > budget.max_gallop() {
            return Err(Error::BudgetExhausted {
                what: "gallop doubling",
                limit: budget.max_gallop(),
            });
        }
    }
    // 2^k·y <= x < 2^(k+1)·y; descend the ladder for the exact floor.
    let mut n = BigInt::one() << k;
    let mut acc = ladder[k].clone();
    for j in (0..k).rev() {
        let cand = view.compose(&acc, &ladder[j]);
        if view.cmp(&cand, x.payload()) != Ordering::Greater {
            n += BigInt::one() << j;
            acc = cand;
        }
    }
    Ok(n)
}

/// Least `n >= 0` such that `x` composed with `n` copies of the positive
/// element `a` is positive.
pub fn positivize(x: &Element, a: &Element, budget: &Budget) -> Result<BigInt> {
    require_same_backend(x, a)?;
    if sign(a) != Sign::Positive {
        return Err(Error::Precondition(
            "positivize needs a positive step element".to_string(),
        ));
    }
    if sign(x) == Sign::Positive {
        return Ok(BigInt::from(0));
    }
    let view = Ordered::of(x.backend());
    // ladder[j] holds 2^j · a; attached holds x · a^(2^k).
    let mut ladder: Vec<Payload> = vec![a.payload().clone()];
    let mut k = 0usize;
    let mut attached = view.compose(x.payload(), &ladder[0]);
    while view.sign(&attached) != Sign::Positive {
        k += 1;
        if k as u32 > budget.max_gallop() {
            return Err(Error::BudgetExhausted {
                what: "gallop doubling",
                limit: budget.max_gallop(),
            });
        }
        let next = view.compose(&ladder[k - 1], &ladder[k - 1]);
        ladder.push(next);
        attached = view.compose(x.payload(), &ladder[k]);
    }
    if k == 0 {
        return Ok(BigInt::one());
    }
    // x·a^(2^(k-1)) is not positive, x·a^(2^k) is. Find the greatest failing
    // multiplicity m; the answer is m + 1.
    let mut m = BigInt::one() << (k - 1);
    let mut acc = view.compose(x.payload(), &ladder[k - 1]);
    for j in (0..k - 1).rev() {
        let cand = view.compose(&acc, &ladder[j]);
        if view.sign(&cand) != Sign::Positive {
            m += BigInt::one() << j;
            acc = cand;
        }
    }
    Ok(m + BigInt::one())
}

/// Bounded scan for the anomalous-pair condition.
///
/// For a positive pair `x > y` the condition at multiplicity `n` is
/// `n·x < (n+1)·y`; for a negative pair it is `n·y > (n+1)·x`. If some
/// `n <= depth` violates the condition the pair provably separates and the
/// least such `n` is reported; otherwise the pair behaved anomalously for the
/// whole scan.
pub fn anomalous_pair_at_depth(
    x: &Element,
    y: &Element,
    depth: u32,
    _budget: &Budget,
) -> Result<AnomalousVerdict> {
    require_same_backend(x, y)?;
    let sx = sign(x);
    let sy = sign(y);
    if sx == Sign::Identity || sx != sy {
        return Err(Error::Precondition(
            "anomalous-pair scan needs two elements of the same nonzero sign".to_string(),
        ));
    }
    let view = Ordered::of(x.backend());
    if view.cmp(x.payload(), y.payload()) != Ordering::Greater {
        return Err(Error::Precondition(
            "anomalous-pair scan needs x > y".to_string(),
        ));
    }
    // Running powers keep every step constant-cost.
    let mut n_big = x.payload().clone(); // n · x
    let mut n1_small = view.compose(y.payload(), y.payload()); // (n+1) · y
    let mut n_small = y.payload().clone(); // n · y
    let mut n1_big = view.compose(x.payload(), x.payload()); // (n+1) · x
    for n in 1..=depth {
        let holds = match sx {
            Sign::Positive => view.cmp(&n_big, &n1_small) == Ordering::Less,
            _ => view.cmp(&n_small, &n1_big) == Ordering::Greater,
        };
        if !holds {
            return Ok(AnomalousVerdict::NotAnomalous(n));
        }
        if n < depth {
            n_big = view.compose(&n_big, x.payload());
            n1_small = view.compose(&n1_small, y.payload());
            n_small = view.compose(&n_small, y.payload());
            n1_big = view.compose(&n1_big, x.payload());
        }
    }
    Ok(AnomalousVerdict::AnomalousUpTo(depth))
}

/// For `x·y > y·x`, checks the interleaving of powers
/// `x^n·y^n >= (x·y)^n > (y·x)^n >= y^n·x^n`, where the outer comparisons are
/// equalities at `n = 1` and strict from `n = 2` on.
pub fn power_chain_holds(x: &Element, y: &Element, n: u32) -> Result<bool> {
    require_same_backend(x, y)?;
    if n < 1 {
        return Err(Error::Precondition(
            "power chain needs n >= 1".to_string(),
        ));
    }
    let view = Ordered::of(x.backend());
    let xy = view.compose(x.payload(), y.payload());
    let yx = view.compose(y.payload(), x.payload());
    if view.cmp(&xy, &yx) != Ordering::Greater {
        return Err(Error::Precondition(
            "power chain needs x·y > y·x".to_string(),
        ));
    }
    let n_big = BigInt::from(n);
    let kind = x.backend().kind();
    let xn = kind.multiple_payload(&n_big, x.payload());
    let yn = kind.multiple_payload(&n_big, y.payload());
    let xy_n = kind.multiple_payload(&n_big, &xy);
    let yx_n = kind.multiple_payload(&n_big, &yx);
    let left = view.compose(&xn, &yn);
    let right = view.compose(&yn, &xn);
    let middle = view.cmp(&xy_n, &yx_n) == Ordering::Greater;
    let (outer_left, outer_right) = if n == 1 {
        (
            view.cmp(&left, &xy_n) == Ordering::Equal,
            view.cmp(&yx_n, &right) == Ordering::Equal,
        )
    } else {
        (
            view.cmp(&left, &xy_n) == Ordering::Greater,
            view.cmp(&yx_n, &right) == Ordering::Greater,
        )
    };
    Ok(outer_left && middle && outer_right)
}

/// Which axiom a sampled counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Totality,
    Transitivity,
    Associativity,
    TranslationInvariance,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomKind::Totality => write!(f, "totality"),
            AxiomKind::Transitivity => write!(f, "transitivity"),
            AxiomKind::Associativity => write!(f, "associativity"),
            AxiomKind::TranslationInvariance => write!(f, "translation invariance"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: AxiomKind,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub elements: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_RECORDED_VIOLATIONS: usize = 64;

/// Checks the ordered-semigroup axioms over every pair and triple from the
/// sample, with caller-supplied composition and comparison. Taking the
/// operations as closures lets tests verify the checker by corrupting them.
pub fn check_axioms_with<E: Clone, C, O, D>(
    compose_fn: C,
    compare_fn: O,
    describe: D,
    sample: &[E],
) -> AxiomReport
where
    C: Fn(&E, &E) -> E,
    O: Fn(&E, &E) -> Ordering,
    D: Fn(&E) -> String,
{
    let mut violations = Vec::new();
    let mut record = |axiom: AxiomKind, description: String| {
        if violations.len() < MAX_RECORDED_VIOLATIONS {
            violations.push(AxiomViolation { axiom, description });
        }
    };
    let mut pairs = 0usize;
    for x in sample {
        if compare_fn(x, x) != Ordering::Equal {
            record(
                AxiomKind::Totality,
                format!("{} does not compare equal to itself", describe(x)),
            );
        }
    }
    for (i, x) in sample.iter().enumerate() {
        for y in &sample[i + 1..] {
            pairs += 1;
            if compare_fn(x, y) != compare_fn(y, x).reverse() {
                record(
                    AxiomKind::Totality,
                    format!(
                        "comparing {} with {} is not antisymmetric",
                        describe(x),
                        describe(y)
                    ),
                );
            }
        }
    }
    let mut triples = 0usize;
    for x in sample {
        for y in sample {
            for z in sample {
                triples += 1;
                if compare_fn(x, y) == Ordering::Less
                    && compare_fn(y, z) == Ordering::Less
                    && compare_fn(x, z) != Ordering::Less
                {
                    record(
                        AxiomKind::Transitivity,
                        format!(
                            "{} < {} < {} but the outer comparison disagrees",
                            describe(x),
                            describe(y),
                            describe(z)
                        ),
                    );
                }
                let left = compose_fn(&compose_fn(x, y), z);
                let right = compose_fn(x, &compose_fn(y, z));
                if compare_fn(&left, &right) != Ordering::Equal {
                    record(
                        AxiomKind::Associativity,
                        format!(
                            "({}·{})·{} differs from {}·({}·{})",
                            describe(x),
                            describe(y),
                            describe(z),
                            describe(x),
                            describe(y),
                            describe(z)
                        ),
                    );
                }
                let base = compare_fn(x, y);
                let right_translated = compare_fn(&compose_fn(x, z), &compose_fn(y, z));
                let left_translated = compare_fn(&compose_fn(z, x), &compose_fn(z, y));
                if right_translated != base || left_translated != base {
                    record(
                        AxiomKind::TranslationInvariance,
                        format!(
                            "translating {} and {} by {} changes their comparison",
                            describe(x),
                            describe(y),
                            describe(z)
                        ),
                    );
                }
            }
        }
    }
    AxiomReport {
        elements: sample.len(),
        pairs_checked: pairs,
        triples_checked: triples,
        violations,
    }
}

/// Axiom check over a backend's own operations. All sampled elements must
/// belong to the backend.
pub fn check_axioms_on_sample(backend: &Backend, sample: &[Element]) -> Result<AxiomReport> {
    for element in sample {
        if element.backend() != backend {
            return Err(Error::mismatch(backend, element.backend()));
        }
    }
    let kind = backend.kind().clone();
    let reversed = backend.is_dual();
    let payloads: Vec<Payload> = sample.iter().map(|e| e.payload().clone()).collect();
    let compose_fn = {
        let kind = kind.clone();
        move |a: &Payload, b: &Payload| kind.compose_payload(a, b)
    };
    let compare_fn = {
        let kind = kind.clone();
        move |a: &Payload, b: &Payload| eff_compare(&kind, reversed, a, b)
    };
    let describe = {
        let backend = backend.clone();
        move |p: &Payload| {
            backend
                .element_from_payload(p.clone())
                .map(|e| e.to_string())
                .unwrap_or_else(|_| format!("{p:?}"))
        }
    };
    Ok(check_axioms_with(compose_fn, compare_fn, describe, &payloads))
}
