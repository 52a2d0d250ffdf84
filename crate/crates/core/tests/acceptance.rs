//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use pisum::bigreal::{agree_digits, euler_gamma, log2, pi, BigReal, PrecisionContext};
use pisum::catalog::{
    catalog, central_difference_check, combination_check, perturbed_weights, verify, verify_param,
    verify_specialization,
};
use pisum::error::{Error, Result};
use pisum::exact::{harmonic_sum, int, pochhammer, rat, shifted_harmonic, Rational};
use pisum::series::ConvergenceClass;
use pisum::special::{digamma_rational, gamma_pos_rational, trigamma_rational};
use pisum::wz::{
    check_pair_relation, ddk_sum_check, derived_zero_series, eight_over_pi_report, g_matches_ra3, sum_g, sum_h,
    zero_series_value, HForm, WzPair, ZeroSeries,
};

/// Outcome of one criterion: failures collected as messages.
type Outcome = Result<Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(failures: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn verified_to(failures: &mut Vec<String>, id: &str, digits: u32) -> Result<()> {
    let r = verify(id, &PrecisionContext::new(digits), digits)?;
    require(
        failures,
        r.pass && r.digits_matched >= digits,
        format!("{id}: {} of {digits} digits", r.digits_matched),
    );
    Ok(())
}

fn classical_constants() -> Outcome {
    let mut f = Vec::new();
    for id in ["ra2", "ra3", "ra4"] {
        verified_to(&mut f, id, 50)?;
    }
    verified_to(&mut f, "ra1", 25)?;
    Ok(f)
}

fn theorem_suite() -> Outcome {
    let mut f = Vec::new();
    let fifty = [
        "thm-(1)",
        "thm-(2)",
        "thm-(3)",
        "thm-(H1)",
        "thm-(4)",
        "thm-(2H)",
        "gid1",
        "wei",
        "aux-(2b4)",
        "aux-(th6.4)",
        "aux-(th6.33)",
    ];
    for id in fifty {
        verified_to(&mut f, id, 50)?;
    }
    for id in ["thm-(5)", "guillera32"] {
        verified_to(&mut f, id, 25)?;
    }
    Ok(f)
}

fn auxiliary_two_path() -> Outcome {
    let mut f = Vec::new();
    let ctx = PrecisionContext::new(50);
    for id in ["aux-(3b3)", "aux-(4c3)", "aux-(5d3)", "aux-(6e3)"] {
        verified_to(&mut f, id, 40)?;
        let rec = catalog().record(id)?;
        let Some(psi) = &rec.psi_rhs else {
            f.push(format!("{id}: no digamma right-hand side"));
            continue;
        };
        let printed = rec.rhs.eval(&ctx)?;
        let from_psi = psi.eval(&ctx)?;
        let d = agree_digits(&printed, &from_psi, 50);
        require(&mut f, d >= 40, format!("{id}: digamma form agrees to {d} digits"));
    }
    Ok(f)
}

fn combinations() -> Outcome {
    let mut f = Vec::new();
    for r in combination_check(&PrecisionContext::new(40), 40)? {
        require(&mut f, r.pass, format!("{}: {} digits", r.id, r.digits_matched));
    }
    Ok(f)
}

fn special_functions() -> Outcome {
    let mut f = Vec::new();
    let ctx = PrecisionContext::new(60);
    let (g, p, l) = (euler_gamma(&ctx), pi(&ctx), log2(&ctx));
    let half_pi = p.mul_pow2(-1);
    let three_log2 = l.mul_rational(&int(3));
    let minus_g = BigReal::zero(ctx.working_bits) - g.clone();
    let pi2 = &p * &p;
    let table = [
        ("ψ(1)", digamma_rational(&int(1), &ctx)?, minus_g.clone()),
        ("ψ(1/2)", digamma_rational(&rat(1, 2), &ctx)?, &minus_g - &l.mul_pow2(1)),
        (
            "ψ(1/4)",
            digamma_rational(&rat(1, 4), &ctx)?,
            &(&minus_g - &half_pi) - &three_log2,
        ),
        (
            "ψ(3/4)",
            digamma_rational(&rat(3, 4), &ctx)?,
            &(&minus_g + &half_pi) - &three_log2,
        ),
        ("ψ′(1)", trigamma_rational(&int(1), &ctx)?, pi2.mul_rational(&rat(1, 6))),
        (
            "ψ′(1/2)",
            trigamma_rational(&rat(1, 2), &ctx)?,
            pi2.mul_rational(&rat(1, 2)),
        ),
    ];
    for (name, got, want) in &table {
        let d = agree_digits(got, want, 60);
        require(&mut f, d >= 50, format!("{name}: {d} digits"));
    }
    let ctx = PrecisionContext::new(40);
    for i in 1..=20i64 {
        let x = rat(7 * i * i % 97 + 1, (3 * i) % 13 + 1);
        let g0 = gamma_pos_rational(&x, &ctx)?;
        let g1 = gamma_pos_rational(&(&x + int(1)), &ctx)?;
        let d = agree_digits(&g1, &g0.mul_rational(&x), 40);
        require(&mut f, d >= 38, format!("Γ({x}+1) = {x}·Γ({x}): {d} digits"));
    }
    Ok(f)
}

fn families() -> Outcome {
    let mut f = Vec::new();
    for fam in &catalog().families {
        let digits = match fam.class() {
            ConvergenceClass::Geometric(_) => 40,
            _ => 25,
        };
        let ctx = PrecisionContext::new(digits);
        require(
            &mut f,
            fam.points.len() == 3,
            format!("{}: {} points", fam.id, fam.points.len()),
        );
        for p in &fam.points {
            let r = verify_param(fam.id, p, &ctx, digits)?;
            require(&mut f, r.pass, format!("{}: {} digits", r.id, r.digits_matched));
        }
        for link in &fam.specializations {
            let r = verify_specialization(fam, link, &PrecisionContext::new(40), 40)?;
            require(&mut f, r.pass, format!("{}: {} digits", r.id, r.digits_matched));
        }
    }
    Ok(f)
}

fn derivative_operator() -> Outcome {
    let ctx = PrecisionContext::new(60);
    let mut points: Vec<(&str, Rational)> = catalog()
        .families
        .iter()
        .map(|fam| (fam.id, fam.points[1].clone()))
        .collect();
    points.push(("1c2", rat(1, 2)));
    let reports: Vec<_> = points
        .par_iter()
        .map(|(id, p)| central_difference_check(id, p, &ctx).map(|r| (id.to_string(), p.clone(), r)))
        .collect::<Result<_>>()?;
    let mut f = Vec::new();
    for (id, p, r) in reports {
        require(
            &mut f,
            r.pass && r.digits_matched >= 15,
            format!("{id} at {p}: {} digits", r.digits_matched),
        );
    }
    Ok(f)
}

fn wz_certification() -> Outcome {
    let mut f = Vec::new();
    let started = Instant::now();
    let check = check_pair_relation(WzPair::default(), 100, 100)?;
    require(
        &mut f,
        check.holds(),
        format!("telescoping fails: {:?}", check.violations),
    );
    let ctx = PrecisionContext::new(40);
    for k in 0..=3 {
        let s = sum_g(k, &ctx, 40)?;
        let r = eight_over_pi_report(&format!("sum_G({k})"), &s, &ctx, 40, started.elapsed());
        require(&mut f, r.pass, format!("{}: {} digits", r.id, r.digits_matched));
    }
    let s = sum_h(HForm::Telescoped, 0, &ctx, 40)?;
    let r = eight_over_pi_report("sum_H(0)", &s, &ctx, 40, started.elapsed());
    require(&mut f, r.pass, format!("{}: {} digits", r.id, r.digits_matched));
    for which in [ZeroSeries::H1, ZeroSeries::T4] {
        let (v, _) = zero_series_value(which, &ctx, 40)?;
        let tiny = v.is_zero() || v.log2_abs() < -40.0 * std::f64::consts::LOG2_10;
        require(&mut f, tiny, format!("{which:?} zero series is {}", v.to_decimal(10)));
        for r in derived_zero_series(which, &ctx, 40)? {
            require(&mut f, r.pass, format!("{}: {} digits", r.id, r.digits_matched));
        }
    }
    for r in ddk_sum_check(&PrecisionContext::new(60))? {
        require(
            &mut f,
            r.pass && r.digits_matched >= 15,
            format!("{}: {} digits", r.id, r.digits_matched),
        );
    }
    let r = g_matches_ra3(50, 40)?;
    require(&mut f, r.pass, format!("{}: {}", r.id, r.rhs));
    Ok(f)
}

fn exact_properties() -> Outcome {
    let mut f = Vec::new();
    let zero = Rational::from_integer(0.into());
    let (mut h, mut h2, mut h4) = (zero.clone(), zero.clone(), zero.clone());
    let (mut q1, mut q3, mut half) = (zero.clone(), zero.clone(), zero.clone());
    for k in 0..=1000i64 {
        if k > 0 {
            h += rat(1, k);
            for j in 2 * k - 1..=2 * k {
                h2 += rat(1, j);
            }
            for j in 4 * k - 3..=4 * k {
                h4 += rat(1, j);
            }
            q1 += (rat(-1, 4) + int(k)).recip();
            q3 += (rat(-3, 4) + int(k)).recip();
            half += (rat(-1, 2) + int(k)).recip();
        }
        if &q1 + &q3 != &h4 * int(4) - &h2 * int(2) {
            f.push(format!("H_k(-1/4)+H_k(-3/4) at k = {k}"));
        }
        if half != &h2 * int(2) - &h {
            f.push(format!("H_k(-1/2) at k = {k}"));
        }
    }
    for k in [0u64, 1, 7, 100, 1000] {
        let direct = shifted_harmonic(&rat(-1, 2), k)?;
        let plain = &harmonic_sum(&zero, 2 * k, 1)? * int(2) - harmonic_sum(&zero, k, 1)?;
        require(&mut f, direct == plain, format!("shifted_harmonic(-1/2, {k})"));
    }
    let one = Rational::from_integer(1.into());
    for k in 0..=200u64 {
        let four_k = Rational::from_integer(BigInt::from(4).pow(k as u32));
        if pochhammer(&one, 2 * k) != four_k * pochhammer(&rat(1, 2), k) * pochhammer(&one, k) {
            f.push(format!("duplication at k = {k}"));
        }
        let x = rat(2 * k as i64 - 151, 37);
        let (m, n) = (k / 2, k - k / 2);
        if pochhammer(&x, k) != pochhammer(&x, m) * pochhammer(&(&x + int(m as i64)), n) {
            f.push(format!("splitting at x = {x}, m = {m}, n = {n}"));
        }
    }
    Ok(f)
}

fn negative_controls() -> Outcome {
    let mut f = Vec::new();
    let ctx = PrecisionContext::new(20);
    for rec in &catalog().records {
        let rhs = rec.rhs.eval(&ctx)?;
        for (what, w) in perturbed_weights(rec) {
            let caught = match rec.lhs.with_weight(w).sum(&ctx, 20, None) {
                Ok(s) => agree_digits(&s.value, &rhs, 20) < 20,
                Err(_) => true,
            };
            require(&mut f, caught, format!("{}: perturbing {what} went unnoticed", rec.id));
        }
    }
    match check_pair_relation(WzPair { g_coeff: 21 }, 100, 100) {
        Err(Error::Certification(_)) => {}
        Err(e) => f.push(format!("perturbed WZ pair: unexpected error {e}")),
        Ok(c) => f.push(format!("perturbed WZ pair certified under {}", c.convention)),
    }
    Ok(f)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("classical constants", classical_constants),
        ("theorem suite", theorem_suite),
        ("auxiliary right-hand sides, two paths", auxiliary_two_path),
        ("combination identities", combinations),
        ("special functions", special_functions),
        ("parametrized families", families),
        ("derivative operator", derivative_operator),
        ("WZ certification", wz_certification),
        ("exact-arithmetic properties", exact_properties),
        ("negative controls", negative_controls),
    ];
    let results: Vec<_> = criteria
        .par_iter()
        .map(|(_, run)| {
            let started = Instant::now();
            (run(), started.elapsed())
        })
        .collect();
    let mut all = true;
    for (i, ((name, _), (outcome, elapsed))) in criteria.iter().zip(results).enumerate() {
        let failures = outcome.unwrap_or_else(|e| vec![format!("error: {e}")]);
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        all &= failures.is_empty();
        println!("criterion {:>2} {status} {name} ({} ms)", i + 1, elapsed.as_millis());
        for msg in failures {
            println!("    {msg}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
