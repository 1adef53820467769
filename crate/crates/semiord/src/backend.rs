//! Concrete totally ordered semigroups.
//!
//! Every backend composes and compares exactly; none of them ever answers
//! "indistinguishable". The shipped families:
//!
//! * `rational` — the additive rationals, or just the positive cone
//!   (`rational-positive`).
//! * `quadratic(p,q,d)` — combinations `m + n*λ` with `λ = p + q√d` a positive
//!   quadratic irrational and `m, n` non-negative integers, not both zero.
//! * `dyadic` — the additive group of `mantissa * 2^exponent`, the free group
//!   on a chain of repeated halvings.
//! * `lexz2` — `Z^2` under addition, ordered lexicographically. Archimedean
//!   in neither coordinate: the canonical source of anomalous pairs.
//! * `heisenberg` — integer triples with `(a,b,c)*(a',b',c') =
//!   (a+a', b+b', c+c'+a*b')`, ordered lexicographically. Noncommutative, yet
//!   both translations respect the order.
//! * `naturals` — positive integers under addition.
//!
//! A backend can be flipped with [`Backend::dual`]; the dual shares elements
//! and composition but reverses every comparison, which flips all signs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

/// A positive quadratic irrational `p + q√d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSlope {
    p: BigRational,
    q: BigRational,
    d: u64,
}

impl QuadraticSlope {
    /// Validates that `d` is square-free (and at least 2), that `q` is
    /// nonzero so the slope is irrational, and that the slope is positive.
    pub fn new(p: BigRational, q: BigRational, d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Descriptor(format!(
                "quadratic radicand must be at least 2, got {d}"
            )));
        }
        let root = integer_sqrt(d);
        if root * root == d {
            return Err(Error::Descriptor(format!(
                "quadratic radicand {d} is a perfect square"
            )));
        }
        let mut f = 2u64;
        while f <= root {
            if d % (f * f) == 0 {
                return Err(Error::Descriptor(format!(
                    "quadratic radicand {d} is divisible by {f}^2; use a square-free radicand"
                )));
            }
            f += 1;
        }
        if q.is_zero() {
            return Err(Error::Descriptor(
                "quadratic slope has q = 0; a rational slope belongs to the rational backend"
                    .to_string(),
            ));
        }
        if sign_with_radical(&p, &q, d) != Ordering::Greater {
            return Err(Error::Descriptor(format!(
                "quadratic slope {} + {}*sqrt({}) is not positive",
                p, q, d
            )));
        }
        Ok(QuadraticSlope { p, q, d })
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn d(&self) -> u64 {
        self.d
    }
}

fn integer_sqrt(value: u64) -> u64 {
    let mut root = (value as f64).sqrt() as u64;
    while root * root > value {
        root -= 1;
    }
    while (root + 1) * (root + 1) <= value {
        root += 1;
    }
    root
}

/// Sign of `u + v√d` for rational `u, v` and square-free `d >= 2`, decided by
/// isolating the radical and squaring. Exact; zero occurs only at `u = v = 0`.
fn sign_with_radical(u: &BigRational, v: &BigRational, d: u64) -> Ordering {
    let zero = BigRational::zero();
    if v.is_zero() {
        return u.cmp(&zero);
    }
    if u.is_zero() {
        return v.cmp(&zero);
    }
    match (u > &zero, v > &zero) {
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
        (true, false) => {
            // u > 0 > v: sign of u - |v|√d, i.e. of u^2 - v^2 d.
            let lhs = u * u;
            let rhs = v * v * BigRational::from_integer(BigInt::from(d));
            match lhs.cmp(&rhs) {
                Ordering::Equal => unreachable!("√d is irrational for square-free d"),
                other => other,
            }
        }
        (false, true) => {
            let lhs = v * v * BigRational::from_integer(BigInt::from(d));
            let rhs = u * u;
            match lhs.cmp(&rhs) {
                Ordering::Equal => unreachable!("√d is irrational for square-free d"),
                other => other,
            }
        }
    }
}

/// Sign of `m + n*λ` relative to zero, for integer coefficients over a
/// quadratic slope. This is the exact comparison that keeps the quadratic
/// backend decidable.
pub fn quadratic_sign(m: &BigInt, n: &BigInt, slope: &QuadraticSlope) -> Ordering {
    // m + n(p + q√d) = (m + n p) + (n q)√d.
    let n_rat = BigRational::from_integer(n.clone());
    let u = BigRational::from_integer(m.clone()) + &n_rat * slope.p();
    let v = n_rat * slope.q();
    sign_with_radical(&u, &v, slope.d())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendKind {
    Rational { positive_only: bool },
    Quadratic(QuadraticSlope),
    Dyadic,
    LexZ2,
    Heisenberg,
    Naturals,
}

/// A backend is a semigroup family plus an orientation. Elements remember
/// their backend; operations refuse to mix backends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Backend {
    kind: BackendKind,
    dual: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Rational(BigRational),
    Quadratic { unit: BigInt, slope: BigInt },
    Dyadic(DyadicRational),
    LexZ2(BigInt, BigInt),
    Heisenberg(BigInt, BigInt, BigInt),
    Natural(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    backend: Backend,
    payload: Payload,
}

impl Backend {
    pub fn rational() -> Self {
        Backend {
            kind: BackendKind::Rational {
                positive_only: false,
            },
            dual: false,
        }
    }

    pub fn rational_positive() -> Self {
        Backend {
            kind: BackendKind::Rational {
                positive_only: true,
            },
            dual: false,
        }
    }

    pub fn quadratic(p: BigRational, q: BigRational, d: u64) -> Result<Self> {
        Ok(Backend {
            kind: BackendKind::Quadratic(QuadraticSlope::new(p, q, d)?),
            dual: false,
        })
    }

    pub fn dyadic() -> Self {
        Backend {
            kind: BackendKind::Dyadic,
            dual: false,
        }
    }

    pub fn lex_z2() -> Self {
        Backend {
            kind: BackendKind::LexZ2,
            dual: false,
        }
    }

    pub fn heisenberg() -> Self {
        Backend {
            kind: BackendKind::Heisenberg,
            dual: false,
        }
    }

    pub fn naturals() -> Self {
        Backend {
            kind: BackendKind::Naturals,
            dual: false,
        }
    }

    pub fn kind(&self) -> &BackendKind {
        &self.kind
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// The same semigroup with every comparison reversed.
    pub fn dual(&self) -> Backend {
        Backend {
            kind: self.kind.clone(),
            dual: !self.dual,
        }
    }

    /// Whether the backend is known to contain no anomalous pair. Rank
    /// embeddings are only defined over these.
    pub fn is_non_anomalous(&self) -> bool {
        match self.kind {
            BackendKind::Rational { .. }
            | BackendKind::Quadratic(_)
            | BackendKind::Dyadic
            | BackendKind::Naturals => true,
            BackendKind::LexZ2 | BackendKind::Heisenberg => false,
        }
    }

    pub fn has_identity(&self) -> bool {
        match self.kind {
            BackendKind::Rational { positive_only } => !positive_only,
            BackendKind::Quadratic(_) | BackendKind::Naturals => false,
            BackendKind::Dyadic | BackendKind::LexZ2 | BackendKind::Heisenberg => true,
        }
    }

    pub fn is_commutative(&self) -> bool {
        !matches!(self.kind, BackendKind::Heisenberg)
    }

    pub(crate) fn element_from_payload(&self, payload: Payload) -> Result<Element> {
        self.validate_payload(&payload)?;
        Ok(Element {
            backend: self.clone(),
            payload,
        })
    }

    fn validate_payload(&self, payload: &Payload) -> Result<()> {
        let ok = match (&self.kind, payload) {
            (BackendKind::Rational { positive_only }, Payload::Rational(q)) => {
                !positive_only || q > &BigRational::zero()
            }
            (BackendKind::Quadratic(_), Payload::Quadratic { unit, slope }) => {
                !unit.is_negative()
                    && !slope.is_negative()
                    && !(unit.is_zero() && slope.is_zero())
            }
            (BackendKind::Dyadic, Payload::Dyadic(_)) => true,
            (BackendKind::LexZ2, Payload::LexZ2(..)) => true,
            (BackendKind::Heisenberg, Payload::Heisenberg(..)) => true,
            (BackendKind::Naturals, Payload::Natural(n)) => n >= &BigInt::one(),
            _ => {
                return Err(Error::Precondition(format!(
                    "payload does not belong to backend {self}"
                )))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "value lies outside backend {self}"
            )))
        }
    }
}

impl Element {
    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    /// The element's value as an exact rational, for backends whose elements
    /// are real numbers with rational values.
    pub fn rational_value(&self) -> Option<BigRational> {
        match &self.payload {
            Payload::Rational(q) => Some(q.clone()),
            Payload::Dyadic(d) => Some(d.to_rational()),
            Payload::Natural(n) => Some(BigRational::from_integer(n.clone())),
            Payload::Quadratic { unit, slope } if slope.is_zero() => {
                Some(BigRational::from_integer(unit.clone()))
            }
            _ => None,
        }
    }
}

// Payload-level operations. These assume the payloads belong to the kind;
// the public wrappers in `order` enforce that.

impl BackendKind {
    pub(crate) fn compose_payload(&self, a: &Payload, b: &Payload) -> Payload {
        match (self, a, b) {
            (BackendKind::Rational { .. }, Payload::Rational(x), Payload::Rational(y)) => {
                Payload::Rational(x + y)
            }
            (
                BackendKind::Quadratic(_),
                Payload::Quadratic { unit: m1, slope: n1 },
                Payload::Quadratic { unit: m2, slope: n2 },
            ) => Payload::Quadratic {
                unit: m1 + m2,
                slope: n1 + n2,
            },
            (BackendKind::Dyadic, Payload::Dyadic(x), Payload::Dyadic(y)) => {
                Payload::Dyadic(x.add(y))
            }
            (BackendKind::LexZ2, Payload::LexZ2(a1, b1), Payload::LexZ2(a2, b2)) => {
                Payload::LexZ2(a1 + a2, b1 + b2)
            }
            (
                BackendKind::Heisenberg,
                Payload::Heisenberg(a1, b1, c1),
                Payload::Heisenberg(a2, b2, c2),
            ) => Payload::Heisenberg(a1 + a2, b1 + b2, c1 + c2 + a1 * b2),
            (BackendKind::Naturals, Payload::Natural(x), Payload::Natural(y)) => {
                Payload::Natural(x + y)
            }
            _ => unreachable!("payload kind checked at element construction"),
        }
    }

    /// Comparison in the backend's native orientation.
    pub(crate) fn compare_payload(&self, a: &Payload, b: &Payload) -> Ordering {
        match (self, a, b) {
            (BackendKind::Rational { .. }, Payload::Rational(x), Payload::Rational(y)) => {
                x.cmp(y)
            }
            (
                BackendKind::Quadratic(slope),
                Payload::Quadratic { unit: m1, slope: n1 },
                Payload::Quadratic { unit: m2, slope: n2 },
            ) => quadratic_sign(&(m1 - m2), &(n1 - n2), slope),
            (BackendKind::Dyadic, Payload::Dyadic(x), Payload::Dyadic(y)) => x.compare(y),
            (BackendKind::LexZ2, Payload::LexZ2(a1, b1), Payload::LexZ2(a2, b2)) => {
                a1.cmp(a2).then_with(|| b1.cmp(b2))
            }
            (
                BackendKind::Heisenberg,
                Payload::Heisenberg(a1, b1, c1),
                Payload::Heisenberg(a2, b2, c2),
            ) => a1.cmp(a2).then_with(|| b1.cmp(b2)).then_with(|| c1.cmp(c2)),
            (BackendKind::Naturals, Payload::Natural(x), Payload::Natural(y)) => x.cmp(y),
            _ => unreachable!("payload kind checked at element construction"),
        }
    }

    /// `n`-fold composition by repeated squaring. Powers of one element
    /// commute with each other, so accumulation order is irrelevant even in
    /// noncommutative backends.
    pub(crate) fn multiple_payload(&self, n: &BigInt, x: &Payload) -> Payload {
        debug_assert!(n >= &BigInt::one());
        let mut remaining = n.clone();
        let mut square = x.clone();
        let mut acc: Option<Payload> = None;
        loop {
            if remaining.is_odd() {
                acc = Some(match acc {
                    None => square.clone(),
                    Some(prev) => self.compose_payload(&prev, &square),
                });
            }
            remaining >>= 1;
            if remaining.is_zero() {
                break;
            }
            square = self.compose_payload(&square, &square);
        }
        acc.expect("n >= 1")
    }
}

/// Effective comparison: the native order, reversed when `reversed` is set.
pub(crate) fn eff_compare(
    kind: &BackendKind,
    reversed: bool,
    a: &Payload,
    b: &Payload,
) -> Ordering {
    let plain = kind.compare_payload(a, b);
    if reversed {
        plain.reverse()
    } else {
        plain
    }
}

/// Sign of a payload under the effective order, computed by comparing the
/// square against the element.
pub(crate) fn payload_sign(kind: &BackendKind, reversed: bool, x: &Payload) -> crate::order::Sign {
    let square = kind.compose_payload(x, x);
    match eff_compare(kind, reversed, &square, x) {
        Ordering::Greater => crate::order::Sign::Positive,
        Ordering::Less => crate::order::Sign::Negative,
        Ordering::Equal => crate::order::Sign::Identity,
    }
}

// Descriptors.

/// A parsed, not-yet-validated description of a backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendDescriptor {
    Rational { positive_only: bool },
    Quadratic { p: BigRational, q: BigRational, d: u64 },
    Dyadic,
    LexZ2,
    Heisenberg,
    Naturals,
    Dual(Box<BackendDescriptor>),
}

/// Validates a descriptor and builds the backend.
pub fn make_backend(descriptor: &BackendDescriptor) -> Result<Backend> {
    match descriptor {
        BackendDescriptor::Rational { positive_only } => Ok(if *positive_only {
            Backend::rational_positive()
        } else {
            Backend::rational()
        }),
        BackendDescriptor::Quadratic { p, q, d } => {
            Backend::quadratic(p.clone(), q.clone(), *d)
        }
        BackendDescriptor::Dyadic => Ok(Backend::dyadic()),
        BackendDescriptor::LexZ2 => Ok(Backend::lex_z2()),
        BackendDescriptor::Heisenberg => Ok(Backend::heisenberg()),
        BackendDescriptor::Naturals => Ok(Backend::naturals()),
        BackendDescriptor::Dual(inner) => Ok(make_backend(inner)?.dual()),
    }
}

/// Parses a textual backend descriptor such as `rational`,
/// `quadratic(0,1,2)`, or `dual:lexz2`.
pub fn parse_backend_descriptor(text: &str) -> Result<BackendDescriptor> {
    let trimmed = text.trim();
    if let Some(rest) = trimmed.strip_prefix("dual:") {
        return Ok(BackendDescriptor::Dual(Box::new(parse_backend_descriptor(
            rest,
        )?)));
    }
    match trimmed {
        "rational" => return Ok(BackendDescriptor::Rational { positive_only: false }),
        "rational-positive" => {
            return Ok(BackendDescriptor::Rational { positive_only: true })
        }
        "dyadic" => return Ok(BackendDescriptor::Dyadic),
        "lexz2" => return Ok(BackendDescriptor::LexZ2),
        "heisenberg" => return Ok(BackendDescriptor::Heisenberg),
        "naturals" => return Ok(BackendDescriptor::Naturals),
        _ => {}
    }
    if let Some(args) = trimmed
        .strip_prefix("quadratic(")
        .and_then(|rest| rest.strip_suffix(')'))
    {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Descriptor(format!(
                "quadratic descriptor needs three arguments (p,q,d), got {}",
                parts.len()
            )));
        }
        let p = crate::parse::parse_rational_text(parts[0])
            .map_err(|e| Error::Descriptor(format!("bad p in quadratic descriptor: {e}")))?;
        let q = crate::parse::parse_rational_text(parts[1])
            .map_err(|e| Error::Descriptor(format!("bad q in quadratic descriptor: {e}")))?;
        let d: u64 = parts[2]
            .parse()
            .map_err(|_| Error::Descriptor(format!("bad d in quadratic descriptor: {}", parts[2])))?;
        return Ok(BackendDescriptor::Quadratic { p, q, d });
    }
    Err(Error::Descriptor(format!("unknown backend '{trimmed}'")))
}

/// Parses an element literal in the backend's grammar. See [`crate::parse`]
/// for the expression syntax.
pub fn parse_element(backend: &Backend, text: &str) -> Result<Element> {
    let payload = crate::parse::parse_payload(backend.kind(), text)?;
    backend.element_from_payload(payload)
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual {
            write!(f, "dual:")?;
        }
        match &self.kind {
            BackendKind::Rational { positive_only: false } => write!(f, "rational"),
            BackendKind::Rational { positive_only: true } => write!(f, "rational-positive"),
            BackendKind::Quadratic(s) => write!(f, "quadratic({},{},{})", s.p(), s.q(), s.d()),
            BackendKind::Dyadic => write!(f, "dyadic"),
            BackendKind::LexZ2 => write!(f, "lexz2"),
            BackendKind::Heisenberg => write!(f, "heisenberg"),
            BackendKind::Naturals => write!(f, "naturals"),
        }
    }
}

impl fmt::Display for Element {
    /// Renders in the same grammar [`parse_element`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            Payload::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Payload::Quadratic { unit, slope } => {
                if slope.is_zero() {
                    write!(f, "{unit}*a")
                } else if unit.is_zero() {
                    write!(f, "{slope}*b")
                } else {
                    write!(f, "{unit}*a + {slope}*b")
                }
            }
            Payload::Dyadic(d) => write!(f, "{d}"),
            Payload::LexZ2(a, b) => write!(f, "({a},{b})"),
            Payload::Heisenberg(a, b, c) => write!(f, "({a},{b},{c})"),
            Payload::Natural(n) => write!(f, "{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn quadratic_sign_agrees_with_high_precision_radical_oracle() {
        // Oracle: bracket √d between integer square roots at 2^-k precision
        // and widen until the sign is forced.
        fn oracle(m: i64, n: i64, p: &BigRational, q: &BigRational, d: u64) -> Ordering {
            for k in [16u32, 64, 256, 1024] {
                let scale = BigInt::one() << k;
                let lo = (BigInt::from(d) * &scale * &scale).sqrt();
                let hi = &lo + BigInt::one();
                // value = m + n p + n q √d
                let base = BigRational::from_integer(BigInt::from(m))
                    + BigRational::from_integer(BigInt::from(n)) * p;
                let coeff = BigRational::from_integer(BigInt::from(n)) * q;
                let scale_rat = BigRational::from_integer(scale.clone());
                let (end_a, end_b) = (
                    &base + &coeff * BigRational::new(lo.clone(), scale.clone()),
                    &base + &coeff * BigRational::new(hi.clone(), scale.clone()),
                );
                let _ = scale_rat;
                let lo_val = end_a.clone().min(end_b.clone());
                let hi_val = end_a.max(end_b);
                if lo_val > BigRational::zero() {
                    return Ordering::Greater;
                }
                if hi_val < BigRational::zero() {
                    return Ordering::Less;
                }
            }
            Ordering::Equal
        }

        let slopes = [
            QuadraticSlope::new(rat(0, 1), rat(1, 1), 2).unwrap(),
            QuadraticSlope::new(rat(0, 1), rat(1, 1), 3).unwrap(),
            QuadraticSlope::new(rat(1, 2), rat(1, 2), 5).unwrap(),
        ];
        let mut mismatches = 0;
        for slope in &slopes {
            for m in -25i64..=25 {
                for n in -25i64..=25 {
                    let got = quadratic_sign(&BigInt::from(m), &BigInt::from(n), slope);
                    let want = oracle(m, n, slope.p(), slope.q(), slope.d());
                    if got != want {
                        mismatches += 1;
                    }
                }
            }
        }
        assert_eq!(mismatches, 0);
    }

    #[test]
    fn quadratic_sign_examples() {
        let sqrt2 = QuadraticSlope::new(rat(0, 1), rat(1, 1), 2).unwrap();
        assert_eq!(
            quadratic_sign(&BigInt::from(1), &BigInt::from(1), &sqrt2),
            Ordering::Greater
        );
        // 2√2 = 2.828... < 3
        assert_eq!(
            quadratic_sign(&BigInt::from(-3), &BigInt::from(2), &sqrt2),
            Ordering::Less
        );
        assert_eq!(
            quadratic_sign(&BigInt::zero(), &BigInt::zero(), &sqrt2),
            Ordering::Equal
        );
    }

    #[test]
    fn rejects_bad_quadratic_descriptors() {
        assert!(matches!(
            QuadraticSlope::new(rat(0, 1), rat(1, 1), 4),
            Err(Error::Descriptor(_))
        ));
        assert!(matches!(
            QuadraticSlope::new(rat(0, 1), rat(1, 1), 12),
            Err(Error::Descriptor(_))
        ));
        assert!(matches!(
            QuadraticSlope::new(rat(0, 1), rat(0, 1), 2),
            Err(Error::Descriptor(_))
        ));
        // -3 + √2 < 0
        assert!(matches!(
            QuadraticSlope::new(rat(-3, 1), rat(1, 1), 2),
            Err(Error::Descriptor(_))
        ));
        // Golden ratio is fine.
        assert!(QuadraticSlope::new(rat(1, 2), rat(1, 2), 5).is_ok());
    }

    #[test]
    fn heisenberg_composition_and_power() {
        let kind = BackendKind::Heisenberg;
        let x = Payload::Heisenberg(BigInt::from(1), BigInt::zero(), BigInt::zero());
        let y = Payload::Heisenberg(BigInt::zero(), BigInt::from(1), BigInt::zero());
        assert_eq!(
            kind.compose_payload(&x, &y),
            Payload::Heisenberg(BigInt::from(1), BigInt::from(1), BigInt::from(1))
        );
        assert_eq!(
            kind.compose_payload(&y, &x),
            Payload::Heisenberg(BigInt::from(1), BigInt::from(1), BigInt::zero())
        );
        // (1,1,0)^2 = (2,2,1)
        let z = Payload::Heisenberg(BigInt::from(1), BigInt::from(1), BigInt::zero());
        assert_eq!(
            kind.multiple_payload(&BigInt::from(2), &z),
            Payload::Heisenberg(BigInt::from(2), BigInt::from(2), BigInt::from(1))
        );
        // Powers agree with iterated composition.
        let mut acc = z.clone();
        for _ in 1..7 {
            acc = kind.compose_payload(&acc, &z);
        }
        assert_eq!(kind.multiple_payload(&BigInt::from(7), &z), acc);
    }

    #[test]
    fn descriptor_round_trip() {
        for text in [
            "rational",
            "rational-positive",
            "dyadic",
            "lexz2",
            "heisenberg",
            "naturals",
            "quadratic(0,1,2)",
            "quadratic(1/2,1/2,5)",
            "dual:rational",
            "dual:quadratic(0,1,3)",
        ] {
            let backend = make_backend(&parse_backend_descriptor(text).unwrap()).unwrap();
            let reparsed =
                make_backend(&parse_backend_descriptor(&backend.to_string()).unwrap()).unwrap();
            assert_eq!(backend, reparsed, "{text}");
        }
        assert!(parse_backend_descriptor("quaternion").is_err());
        assert!(make_backend(&parse_backend_descriptor("quadratic(0,1,4)").unwrap()).is_err());
    }

    #[test]
    fn payload_validation_guards_cones() {
        let pos = Backend::rational_positive();
        assert!(pos
            .element_from_payload(Payload::Rational(rat(-1, 2)))
            .is_err());
        assert!(pos
            .element_from_payload(Payload::Rational(rat(1, 2)))
            .is_ok());
        let nat = Backend::naturals();
        assert!(nat
            .element_from_payload(Payload::Natural(BigInt::zero()))
            .is_err());
        let quad = Backend::quadratic(rat(0, 1), rat(1, 1), 2).unwrap();
        assert!(quad
            .element_from_payload(Payload::Quadratic {
                unit: BigInt::zero(),
                slope: BigInt::zero(),
            })
            .is_err());
        assert!(quad
            .element_from_payload(Payload::Quadratic {
                unit: BigInt::from(-1),
                slope: BigInt::from(2),
            })
            .is_err());
    }
}
