//! Linear relations between catalog entries, checked term by term where the
//! entries share a base and always at the level of summed values.

use std::time::Instant;

use super::{catalog, families::terms_proportional};
use crate::bigreal::{log2, BigReal, PrecisionContext};
use crate::closed_form::ClosedForm;
use crate::error::Result;
use crate::exact::{int, rat, Rational};
use crate::report::VerificationReport;
use crate::series::{SeriesSpec, WeightExpr};
use crate::wz::{zero_series_value, ZeroSeries};

/// Summed value of a record's series.
fn value(id: &str, ctx: &PrecisionContext, digits: u32) -> Result<(BigReal, usize)> {
    let r = catalog().record(id)?.lhs.sum(ctx, digits + 5, None)?;
    Ok((r.value, r.terms_used))
}

/// `sum c_i * record_i`, with the term count.
fn combination(parts: &[(i64, &str)], ctx: &PrecisionContext, digits: u32) -> Result<(BigReal, usize)> {
    let mut acc = BigReal::zero(ctx.working_bits);
    let mut terms = 0;
    for (c, id) in parts {
        let (v, n) = value(id, ctx, digits)?;
        acc = &acc + &v.mul_rational(&int(*c));
        terms += n;
    }
    Ok((acc, terms))
}

/// The same combination applied to the weights of records sharing one base.
fn combined_weight(parts: &[(i64, &str)]) -> Result<WeightExpr> {
    let mut w = WeightExpr::zero();
    for (c, id) in parts {
        w = &w + &catalog().record(id)?.lhs.weight.scale_rational(&int(*c));
    }
    Ok(w)
}

/// Whether two combinations over a common base agree term by term.
fn same_terms(left: &[(i64, &str)], right: &[(i64, &str)], kmax: u64) -> Result<bool> {
    let base = &catalog().record(left[0].1)?.lhs;
    let a = base.with_weight(combined_weight(left)?).starting_at(0);
    let b = base.with_weight(combined_weight(right)?).starting_at(0);
    terms_proportional(&a, &b, &Rational::from_integer(1.into()), kmax)
}

fn describe(parts: &[(i64, &str)]) -> String {
    let mut s = String::new();
    for (i, (c, id)) in parts.iter().enumerate() {
        let sign = if *c < 0 {
            "-"
        } else if i > 0 {
            "+"
        } else {
            ""
        };
        let mag = c.abs();
        if mag == 1 {
            s.push_str(&format!("{sign}[{id}]"));
        } else {
            s.push_str(&format!("{sign}{mag}·[{id}]"));
        }
    }
    s
}

const TERM_CHECK: u64 = 40;

fn relation(
    id: &str,
    anchor: &str,
    left: &[(i64, &str)],
    right: &[(i64, &str)],
    ctx: &PrecisionContext,
    digits: u32,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let (l, n1) = combination(left, ctx, digits)?;
    let (r, n2) = combination(right, ctx, digits)?;
    let mut rep = VerificationReport::compare(
        format!("{id}: {} = {}", describe(left), describe(right)),
        anchor,
        digits,
        ctx.target_digits,
        &l,
        &r,
        n1 + n2,
        "direct",
        started.elapsed(),
    );
    if !same_terms(left, right, TERM_CHECK)? {
        rep.pass = false;
        rep.digits_matched = 0;
    }
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn against(
    id: &str,
    anchor: &str,
    value: &BigReal,
    target: &ClosedForm,
    terms: usize,
    ctx: &PrecisionContext,
    digits: u32,
    started: Instant,
) -> Result<VerificationReport> {
    Ok(VerificationReport::compare(
        id,
        anchor,
        digits,
        ctx.target_digits,
        value,
        &target.eval(ctx)?,
        terms,
        "direct",
        started.elapsed(),
    ))
}

/// The relations (i)-(iv) between catalog entries.
pub fn combination_check(ctx: &PrecisionContext, digits: u32) -> Result<Vec<VerificationReport>> {
    let ctx = ctx.at_least(digits);
    let mut out = Vec::new();

    let quarter_left = [
        (1, "aux-(4c3)"),
        (-1, "aux-(3b3)"),
        (-1, "aux-(5d3)"),
        (-1, "aux-(6e3)"),
    ];
    let quarter_right = [(1, "thm-(3)"), (4, "ra3")];
    out.push(relation(
        "(i)",
        "(20k+3)(H_{2k}-3H_k)+12",
        &quarter_left,
        &quarter_right,
        &ctx,
        digits,
    )?);
    let started = Instant::now();
    let (v, n) = combination(&quarter_left, &ctx, digits)?;
    let target =
        ClosedForm::scaled(rat(56, 1), ClosedForm::log2()) / ClosedForm::pi() + ClosedForm::int(32) / ClosedForm::pi();
    out.push(against(
        "(i) value",
        "56log2/π + 32/π",
        &v,
        &target,
        n,
        &ctx,
        digits,
        started,
    )?);

    // (ii): 8·th6.4 + 3·th6.33 against 4 times the full (2H) summand
    let started = Instant::now();
    let two_h = &catalog().record("thm-(2H)")?.lhs;
    let full = two_h.clone().starting_at(0);
    let eleven = [(8, "aux-(th6.4)"), (3, "aux-(th6.33)")];
    let four_full = full.with_weight(two_h.weight.scale_rational(&int(4)));
    let exact = {
        let combo = full.with_weight(combined_weight(&eleven)?);
        terms_proportional(&combo, &four_full, &Rational::from_integer(1.into()), TERM_CHECK)?
    };
    let (v, n) = combination(&eleven, &ctx, digits)?;
    let mut rep = against(
        "(ii) 8·[aux-(th6.4)]+3·[aux-(th6.33)] = 4·Σ_{k≥0}[thm-(2H)]",
        r"23H_{2k}^{(2)}-7H_k^{(2)}",
        &v,
        &ClosedForm::rat(rat(352, 3)),
        n,
        &ctx,
        digits,
        started,
    )?;
    if !exact {
        rep.pass = false;
        rep.digits_matched = 0;
    }
    out.push(rep);
    out.push(full_and_tail(&full, &ctx, digits)?);

    // (iii)
    out.push(relation(
        "(iii)",
        "(6k+1)(H_{2k}-H_k)+1",
        &[(1, "gid1")],
        &[(1, "thm-(2)"), (-1, "thm-(1)")],
        &ctx,
        digits,
    )?);
    out.push(relation(
        "(iii)",
        "(6k+1)(3H_{2k}-2H_k)+1",
        &[(1, "aux-(2b4)")],
        &[(3, "thm-(2)"), (-2, "thm-(1)")],
        &ctx,
        digits,
    )?);

    // (iv): theorem = zero series ∓ 2log2·(classical series)
    for (which, sign) in [(ZeroSeries::H1, -1), (ZeroSeries::T4, 1)] {
        let started = Instant::now();
        let (thm, classical) = which.theorem();
        let (z, n0) = zero_series_value(which, &ctx, digits)?;
        let (c, n1) = value(classical, &ctx, digits)?;
        let (t, n2) = value(thm, &ctx, digits)?;
        let two_log2 = log2(&ctx).mul_pow2(1).mul_rational(&int(sign));
        let rebuilt = &z + &(&two_log2 * &c);
        let s = if sign < 0 { "-" } else { "+" };
        out.push(VerificationReport::compare(
            format!("(iv) [{thm}] = zero-series {s} 2log2·[{classical}]"),
            which.anchor(),
            digits,
            ctx.target_digits,
            &rebuilt,
            &t,
            n0 + n1 + n2,
            "direct",
            started.elapsed(),
        ));
    }
    Ok(out)
}

/// Σ_{k≥0} of the (2H) summand is 88/3, its k = 0 term 24 and Σ_{k≥1} 16/3.
fn full_and_tail(full: &SeriesSpec, ctx: &PrecisionContext, digits: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = full.sum(ctx, digits + 5, None)?;
    let first = full.terms().next().expect("series has a first term")?.value;
    let tail = &r.value - &BigReal::from_rational(&first, ctx.working_bits);
    let mut rep = against(
        "(ii) Σ_{k≥0}[thm-(2H)] = 88/3",
        r"23H_{2k}^{(2)}-7H_k^{(2)}",
        &r.value,
        &ClosedForm::rat(rat(88, 3)),
        r.terms_used,
        ctx,
        digits,
        started,
    )?;
    let tail_ok = VerificationReport::compare(
        "tail",
        "",
        digits,
        ctx.target_digits,
        &tail,
        &BigReal::from_rational(&rat(16, 3), ctx.working_bits),
        0,
        "direct",
        started.elapsed(),
    )
    .pass;
    if first != int(24) || !tail_ok {
        rep.pass = false;
        rep.digits_matched = 0;
    }
    Ok(rep)
}
