//! Exact computation in totally ordered semigroups.
//!
//! A totally ordered semigroup is a set with an associative operation and a
//! total order that both translations respect. Everything in this crate is
//! built from that one structure:
//!
//! * [`backend`] ships the concrete exemplar semigroups (rationals, quadratic
//!   slopes, dyadic chains, lexicographic planes, a Heisenberg group, the
//!   naturals), each with exact composition and comparison.
//! * [`order`] holds the order-theoretic algorithms that make sense in any
//!   backend: sign analysis, Archimedean floors, anomalous-pair detection,
//!   positivization, axiom checking.
//! * [`rank`] measures elements against a positive basepoint with dyadic rank
//!   functions and turns Archimedean elements into refinable real-number
//!   streams.
//! * [`coproduct`] glues pointed backends side by side as formal sums and
//!   orders them by eventual rank domination.
//! * [`field`] treats morphisms between pointed backends as scalars and
//!   recovers multiplication, reciprocals, and the field laws on streams.
//!
//! All arithmetic is arbitrary precision; no operation silently rounds. The
//! only partial answers are explicit: comparison of two streams may report
//! `Indistinguishable` at a refinement budget, and searches may stop with a
//! budget error instead of looping forever on non-Archimedean inputs.

pub mod backend;
pub mod coproduct;
pub mod dyadic;
pub mod error;
pub mod field;
pub mod order;
pub mod parse;
pub mod rank;
pub mod real;
pub mod sample;

pub use backend::{
    make_backend, parse_backend_descriptor, parse_element, quadratic_sign, Backend,
    BackendDescriptor, BackendKind, Element, QuadraticSlope,
};
pub use coproduct::{
    generator_table, precedes, sum_add, sum_anomalous_pair_at_depth, sum_rank, sum_sign,
    sum_to_real, FormalSum, GeneratorTable, PointedFamily, PrecedesVerdict, SumSign,
};
pub use dyadic::DyadicRational;
pub use error::{Error, ParseError, Result};
pub use field::{
    apply_morphism, check_field_laws, invert, morphism_scalar, multiply, reciprocal, stream_add,
    FieldLaw, FieldLawReport, FieldLawViolation, Morphism, MorphismScalar,
};
pub use order::{
    anomalous_pair_at_depth, archimedean_floor, check_axioms_on_sample, check_axioms_with,
    compare, compose, dualize, multiple, positivize, power_chain_holds, sign, AnomalousVerdict,
    AxiomKind, AxiomReport, AxiomViolation, Budget, ComparisonOutcome, Sign,
};
pub use rank::{approximate_supremum, embed, rank, real_of, PointedBackend};
pub use real::{compare_reals, DyadicApproximant, DyadicEnclosure, RealStream};
pub use sample::sample_elements;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
