//! End-to-end flows across module boundaries: descriptor text in, decided
//! comparisons and enclosures out. Everything here goes through the public
//! surface only.

use semiord::{
    anomalous_pair_at_depth, check_axioms_on_sample, compare, compare_reals, embed, invert,
    make_backend, multiply, parse_backend_descriptor, parse_element, precedes, real_of,
    sample_elements, sum_to_real, AnomalousVerdict, Backend, BigInt, BigRational, Budget,
    ComparisonOutcome, Element, Error, FormalSum, PointedBackend, PointedFamily, PrecedesVerdict,
};

fn backend(descriptor: &str) -> Backend {
    make_backend(&parse_backend_descriptor(descriptor).unwrap()).unwrap()
}

fn pointed(descriptor: &str, base: &str) -> PointedBackend {
    let b = backend(descriptor);
    let base = parse_element(&b, base).unwrap();
    PointedBackend::new(b, base).unwrap()
}

fn element(b: &Backend, text: &str) -> Element {
    parse_element(b, text).unwrap()
}

#[test]
fn descriptor_and_element_text_round_trips() {
    let budget = Budget::default();
    for descriptor in [
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
        let first = backend(descriptor);
        let second = backend(&first.to_string());
        assert_eq!(first.to_string(), second.to_string(), "{descriptor}");
        for x in sample_elements(&first, 40, 9) {
            let reparsed = element(&first, &x.to_string());
            assert_eq!(
                compare(&x, &reparsed, &budget).unwrap(),
                ComparisonOutcome::Equal,
                "{descriptor}: {x}"
            );
        }
    }
}

#[test]
fn descriptor_to_decided_real_comparison() {
    // From bare text to a decided comparison of irrationals: sqrt2 against
    // the best rational approximations on either side.
    let budget = Budget::default();
    let root = pointed("quadratic(0,1,2)", "a");
    let s = real_of(&root, &element(root.backend(), "b")).unwrap();
    let q = pointed("rational", "1");
    for (text, expected) in [("3/2", ComparisonOutcome::Less), ("7/5", ComparisonOutcome::Greater)]
    {
        let r = real_of(&q, &element(q.backend(), text)).unwrap();
        assert_eq!(compare_reals(&s, &r, &budget).unwrap(), expected, "{text}");
    }
    // And its square is 2, to 24 fractional bits.
    let square = multiply(&s, &s).enclosure(24).unwrap();
    assert!(square.contains_rational(&BigRational::from_integer(BigInt::from(2))));
}

#[test]
fn dual_backends_reverse_every_decision() {
    let budget = Budget::default();
    let plain = backend("rational");
    let dual = backend("dual:rational");
    let xs = sample_elements(&plain, 60, 17);
    let ys = sample_elements(&plain, 60, 18);
    for (x, y) in xs.iter().zip(&ys) {
        let forward = compare(x, y, &budget).unwrap();
        let backward = compare(
            &element(&dual, &x.to_string()),
            &element(&dual, &y.to_string()),
            &budget,
        )
        .unwrap();
        let expected = match forward {
            ComparisonOutcome::Less => ComparisonOutcome::Greater,
            ComparisonOutcome::Greater => ComparisonOutcome::Less,
            other => other,
        };
        assert_eq!(backward, expected);
    }
    // A negative basepoint measures against the reversed order, so the
    // embedding of -7/3 over base -1 matches that of 7/3 over base 1.
    let reversed = pointed("rational", "-1");
    let upright = pointed("rational", "1");
    let a = embed(&reversed, &element(reversed.backend(), "-7/3"), 4).unwrap();
    let b = embed(&upright, &element(upright.backend(), "7/3"), 4).unwrap();
    assert_eq!(a.lo().mantissa(), b.lo().mantissa());
}

#[test]
fn coproduct_sum_reads_back_as_its_rational_value() {
    let budget = Budget::default();
    let family = PointedFamily::new(vec![
        pointed("rational", "1"),
        pointed("rational", "1/2"),
    ])
    .unwrap();
    let b = family.member(0).unwrap().backend().clone();
    // 1/3 over base 1 plus 1/4 over base 1/2 measures 1/3 + 1/2 = 5/6.
    let x = FormalSum::new(
        &family,
        vec![(0, element(&b, "1/3")), (1, element(&b, "1/4"))],
    )
    .unwrap();
    let stream = sum_to_real(&family, &x).unwrap();
    let e = stream.enclosure(20).unwrap();
    assert!(e.contains_rational(&BigRational::new(BigInt::from(5), BigInt::from(6))));
    // The same total written directly in the first member compares equal-ish:
    // neither sum separates from the other within the budget.
    let y = FormalSum::new(&family, vec![(0, element(&b, "5/6"))]).unwrap();
    match precedes(&family, &x, &y, &budget).unwrap() {
        PrecedesVerdict::IncomparableUpTo(64) => {}
        verdict => panic!("equal-valued sums separated: {verdict:?}"),
    }
    // A genuinely smaller sum separates, and in the right direction.
    let z = FormalSum::new(&family, vec![(0, element(&b, "2/3"))]).unwrap();
    match precedes(&family, &z, &x, &budget).unwrap() {
        PrecedesVerdict::Precedes(_) => {}
        verdict => panic!("2/3 against 5/6: {verdict:?}"),
    }
}

#[test]
fn axioms_hold_on_every_builtin_backend() {
    for descriptor in [
        "rational",
        "rational-positive",
        "dyadic",
        "lexz2",
        "heisenberg",
        "naturals",
        "quadratic(0,1,2)",
        "dual:lexz2",
    ] {
        let b = backend(descriptor);
        let sample = sample_elements(&b, 14, 23);
        let report = check_axioms_on_sample(&b, &sample).unwrap();
        assert!(report.passed(), "{descriptor}: {:?}", report.violations);
    }
}

#[test]
fn budgets_cut_off_unbounded_searches() {
    // Gallop budget: ranking a huge element with one doubling step allowed.
    let tight = pointed("rational", "1").with_max_gallop(1);
    let big = element(tight.backend(), "10000");
    match real_of(&tight, &big).unwrap().enclosure(0) {
        Err(Error::BudgetExhausted { .. }) => {}
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
    // Level budget: an infinitesimal pair stays anomalous to any depth, and
    // inverting a zero stream runs out of refinement levels instead.
    let budget = Budget::new(8, 128).unwrap();
    let lex = backend("lexz2");
    let x = element(&lex, "(1,1)");
    let y = element(&lex, "(1,0)");
    assert_eq!(
        anomalous_pair_at_depth(&x, &y, 3, &budget).unwrap(),
        AnomalousVerdict::AnomalousUpTo(3)
    );
    let q = pointed("rational", "1");
    let zero = real_of(&q, &element(q.backend(), "0")).unwrap();
    match invert(&zero, 4, &budget) {
        Err(Error::ZeroDivision { max_level: 8 }) => {}
        other => panic!("expected zero-division cutoff, got {other:?}"),
    }
}
