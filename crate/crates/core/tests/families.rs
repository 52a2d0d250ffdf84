use pisum::bigreal::{agree_digits, PrecisionContext};
use pisum::catalog::{
    catalog, derivative_identity, verify_derivative, verify_derivative_link, verify_param, verify_specialization,
};
use pisum::exact::{rat, HarmonicState};
use pisum::series::ConvergenceClass;

fn digits_for(class: &ConvergenceClass) -> u32 {
    match class {
        ConvergenceClass::Geometric(_) => 40,
        _ => 25,
    }
}

#[test]
fn every_family_verifies_at_its_points() {
    for fam in &catalog().families {
        let d = digits_for(&fam.class());
        let ctx = PrecisionContext::new(d);
        assert_eq!(fam.points.len(), 3, "{}", fam.id);
        for p in &fam.points {
            let r = verify_param(fam.id, p, &ctx, d).unwrap();
            assert!(r.pass, "{} at {p}: {r:?}", fam.id);
        }
    }
}

#[test]
fn specializations_reduce_to_records() {
    let ctx = PrecisionContext::new(40);
    for fam in &catalog().families {
        for link in &fam.specializations {
            let r = verify_specialization(fam, link, &ctx, 40).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn derivative_links_reach_their_records() {
    let ctx = PrecisionContext::new(40);
    for fam in &catalog().families {
        if let Some(r) = verify_derivative_link(fam, &ctx, 40).unwrap() {
            assert!(r.pass, "{r:?}");
        }
    }
}

#[test]
fn derivative_series_match_digamma_right_hand_sides() {
    for fam in &catalog().families {
        let d = digits_for(&fam.class());
        let ctx = PrecisionContext::new(d);
        let p = &fam.points[1];
        let r = verify_derivative(fam.id, p, &ctx, d).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

/// Printed derivative weights against the generated ones, term by term.
#[test]
fn printed_derivative_weights() {
    let ctx = PrecisionContext::new(30);
    for fam in &catalog().families {
        let d = derivative_identity(fam.id).unwrap();
        for p in [rat(1, 5), rat(2, 7), rat(3, 11)] {
            let generated = fam.derivative_weight_at(&p).unwrap();
            let printed = fam.printed_derivative_weight_at(&p).unwrap();
            let refs: Vec<_> = generated
                .harmonic_refs()
                .into_iter()
                .chain(printed.harmonic_refs())
                .collect();
            let mut state = HarmonicState::new(refs);
            let mut same = true;
            for _ in 0..6 {
                state = state.advance().unwrap();
                same &= generated.eval(&state).unwrap() == printed.eval(&state).unwrap();
            }
            match fam.id {
                // the printed sign of the weight derivative is flipped
                "2b2" => assert!(!same, "{} at {p}", fam.id),
                _ => assert!(same, "{} at {p}", fam.id),
            }
        }
        let p = &fam.points[1];
        let lhs = d.lhs_at(p).unwrap().sum(&ctx, 30, None).unwrap().value;
        let rhs = d.rhs_at(p).unwrap().eval(&ctx).unwrap();
        assert!(agree_digits(&lhs, &rhs, 30) >= 25, "{}", fam.id);
    }
}

/// The printed k = 1 start of the 6e1 derivative sum drops a nonzero k = 0
/// term; only the k = 0 start matches the right-hand side.
#[test]
fn six_e_one_start_index() {
    let ctx = PrecisionContext::new(30);
    let fam = catalog().family("6e1").unwrap();
    let p = rat(1, 3);
    let rhs = fam.derivative_rhs_at(&p).unwrap().eval(&ctx).unwrap();
    let from_zero = fam.derivative_lhs_at(&p).unwrap().sum(&ctx, 30, None).unwrap().value;
    let from_one = fam
        .printed_derivative_lhs_at(&p)
        .unwrap()
        .sum(&ctx, 30, None)
        .unwrap()
        .value;
    assert!(agree_digits(&from_zero, &rhs, 30) >= 28);
    assert!(agree_digits(&from_one, &rhs, 30) < 5);
}

#[test]
fn two_b_two_printed_sign_misses_the_record() {
    let ctx = PrecisionContext::new(30);
    let fam = catalog().family("2b2").unwrap();
    let p = rat(1, 3);
    let rhs = fam.derivative_rhs_at(&p).unwrap().eval(&ctx).unwrap();
    let printed = fam
        .printed_derivative_lhs_at(&p)
        .unwrap()
        .sum(&ctx, 30, None)
        .unwrap()
        .value;
    assert!(agree_digits(&printed, &rhs, 30) < 5);
}
