use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ConvergenceClass, SeriesSpec, SumMethod, SumResult};
use crate::bigreal::{BigReal, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::Rational;

const WINDOW: usize = 8;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

fn log2_abs(q: &Rational) -> f64 {
    let n = q.numer().abs();
    let d = q.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = 60;
    let ns = (&n >> (nb - shift).max(0) as usize).to_f64().unwrap_or(1.0);
    let ds = (d >> (db - shift).max(0) as usize).to_f64().unwrap_or(1.0);
    ns.log2() - ds.log2() + ((nb - shift).max(0) - (db - shift).max(0)) as f64
}

/// Direct summation for `|ratio| -> rho < 1` with the geometric tail bound
/// `|T_k| rho^/(1 - rho^)`, `rho^ = (1 + rho)/2`, once the observed ratio has
/// stayed below `rho^` for the last eight terms.
pub fn sum_direct(spec: &SeriesSpec, ctx: &PrecisionContext, digits: u32, max_terms: usize) -> Result<SumResult> {
    let rho = match &spec.class {
        ConvergenceClass::Geometric(r) => r.clone(),
        other => {
            return Err(Error::Domain(format!(
                "direct summation needs a geometric series with ratio < 1, got {other:?}"
            )))
        }
    };
    let start = spec.start_index;
    let terms = spec.terms().filter_map(move |t| match t {
        Ok(t) if t.k < start => None,
        Ok(t) if t.base.is_zero() => Some(Ok(None)),
        Ok(t) => Some(Ok(Some(t.value))),
        Err(e) => Some(Err(e)),
    });
    sum_geometric_terms(terms, &rho, ctx, digits, max_terms)
}

/// The same stopping rule over any stream of exact terms; `Ok(None)` marks
/// the end of a terminating series.
pub fn sum_geometric_terms<I>(
    terms: I,
    rho: &Rational,
    ctx: &PrecisionContext,
    digits: u32,
    max_terms: usize,
) -> Result<SumResult>
where
    I: IntoIterator<Item = Result<Option<Rational>>>,
{
    if rho >= &Rational::one() || rho.is_negative() {
        return Err(Error::Domain(format!(
            "geometric summation needs 0 <= rho < 1, got {rho}"
        )));
    }
    let rho_hat = (Rational::one() + rho) / Rational::from_integer(2.into());
    let tail_factor = &rho_hat / (Rational::one() - &rho_hat);
    let log2_rho_hat = log2_abs(&rho_hat);
    let log2_tail_factor = log2_abs(&tail_factor);
    let goal = -((digits + 2) as f64) * LOG2_10;
    let w = ctx.working_bits + 16;

    let mut sum = BigReal::zero(w);
    let mut used = 0usize;
    let mut streak = 0usize;
    let mut prev: Option<f64> = None;
    for item in terms {
        let value = match item? {
            Some(v) => v,
            // terminating series: everything further is exactly zero
            None => {
                return Ok(SumResult {
                    value: sum.with_prec(ctx.working_bits),
                    error_bound: rounding(used, w),
                    terms_used: used,
                    method: SumMethod::Direct,
                })
            }
        };
        used += 1;
        sum = &sum + &BigReal::from_rational(&value, w);
        let cur = if value.is_zero() { None } else { Some(log2_abs(&value)) };
        match (prev, cur) {
            (Some(p), Some(c)) if c - p <= log2_rho_hat + 1e-12 => streak += 1,
            _ => streak = 0,
        }
        prev = cur;
        if let Some(c) = cur {
            if streak >= WINDOW && c + log2_tail_factor < goal {
                let tail = BigReal::from_rational(&(value.abs() * &tail_factor), 64);
                return Ok(SumResult {
                    value: sum.with_prec(ctx.working_bits),
                    error_bound: &tail + &rounding(used, w),
                    terms_used: used,
                    method: SumMethod::Direct,
                });
            }
        }
        if used >= max_terms {
            return Err(Error::NonConvergence {
                terms: used,
                detail: format!(
                    "observed term ratio did not settle below {rho_hat} with tail under 10^-{}",
                    digits + 2
                ),
            });
        }
    }
    Err(Error::NonConvergence {
        terms: used,
        detail: "term stream ended before the tail bound was met".into(),
    })
}

/// Allowance for one rounding per accumulated term.
pub(super) fn rounding(terms: usize, bits: u64) -> BigReal {
    let t = (terms.max(1) as f64).log2().ceil() as i64 + 1;
    BigReal::from_int(1, 64).mul_pow2(t - bits as i64 + 4)
}
