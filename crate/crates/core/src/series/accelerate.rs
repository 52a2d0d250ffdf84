use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{ConvergenceClass, SeriesSpec, SumMethod, SumResult};
use crate::bigreal::{agree_digits, BigReal, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};

const SIGN_RUN: usize = 16;
const EXTRA_LEVELS: usize = 8;

/// Number of Chebyshev levels with `5.828^-n < 10^-(digits+2)`.
fn levels_for(digits: u32) -> usize {
    let per_level = (3.0 + 8f64.sqrt()).log10();
    ((digits + 2) as f64 / per_level).ceil() as usize
}

/// `sum_{i>=0} (-1)^i a_i` from `a_0..a_{n-1}` by the Cohen-Rodriguez
/// Villegas-Zagier Chebyshev weights.
fn cvz(a: &[Rational], n: usize, bits: u64) -> BigReal {
    let w = bits + 32 + 3 * n as u64;
    // d = ((3+sqrt 8)^n + (3-sqrt 8)^n)/2, an integer
    let (mut d0, mut d1) = (BigInt::from(1), BigInt::from(3));
    for _ in 0..n {
        let d2 = &d1 * 6 - &d0;
        d0 = d1;
        d1 = d2;
    }
    let d = d0;
    let nn = n as i64;
    let mut b = int(-1);
    let mut c = Rational::from_integer(-d.clone());
    let mut s = BigReal::zero(w);
    for (k, ak) in a.iter().take(n).enumerate() {
        let k = k as i64;
        c = &b - &c;
        s = &s + &BigReal::from_rational(&(&c * ak), w);
        b = b * int(2 * (k + nn) * (k - nn)) / int((2 * k + 1) * (k + 1));
    }
    (&s / &BigReal::from_int(d, w)).with_prec(bits)
}

/// Alternating-series acceleration. Leading terms are summed exactly until
/// the unsigned magnitudes keep one sign for 16 consecutive terms; the rest is
/// accelerated at two depths whose agreement is reported as the error.
pub fn sum_alternating_accelerated(
    spec: &SeriesSpec,
    ctx: &PrecisionContext,
    digits: u32,
    max_terms: usize,
) -> Result<SumResult> {
    if spec.class != ConvergenceClass::AlternatingSlow {
        return Err(Error::Domain(format!(
            "acceleration needs an alternating series, got {:?}",
            spec.class
        )));
    }
    let n1 = levels_for(digits);
    let n2 = n1 + EXTRA_LEVELS;
    // magnitudes a_j = (-1)^j T_{start+j}
    let mut a: Vec<Rational> = Vec::new();
    let mut split: Option<usize> = None;
    for item in spec.terms() {
        let t = item?;
        if t.k < spec.start_index {
            continue;
        }
        let j = a.len();
        a.push(if j.is_multiple_of(2) { t.value } else { -t.value });
        if split.is_none() && a.len() >= SIGN_RUN {
            let s0 = a.len() - SIGN_RUN;
            let run = &a[s0..];
            let pos = run.iter().all(|x| x.is_positive());
            let neg = run.iter().all(|x| x.is_negative());
            if pos || neg {
                split = Some(s0);
            }
        }
        if let Some(k0) = split {
            if a.len() >= k0 + n2 {
                break;
            }
        }
        if a.len() >= max_terms {
            return Err(Error::NonConvergence {
                terms: a.len(),
                detail: "term magnitudes never settled to one sign".into(),
            });
        }
    }
    let k0 = split.expect("loop exits only after the split is found");
    let mut head = Rational::zero();
    for (j, x) in a[..k0].iter().enumerate() {
        head += if j.is_multiple_of(2) { x.clone() } else { -x.clone() };
    }
    let rest = &a[k0..];
    let bits = ctx.working_bits + 16;
    let head_r = BigReal::from_rational(&head, bits);
    let level = |n: usize| {
        let t = cvz(rest, n, bits);
        let t = if k0.is_multiple_of(2) { t } else { -t };
        &head_r + &t
    };
    let v1 = level(n1);
    let v2 = level(n2);
    let agree = agree_digits(&v1, &v2, digits + 8);
    if agree < digits {
        return Err(Error::Instability {
            first: v1.to_decimal(digits as usize + 5),
            second: v2.to_decimal(digits as usize + 5),
            digits: agree,
        });
    }
    let diff = (&v1 - &v2).abs();
    let floor = BigReal::from_int(1, 64).mul_pow2(-(bits as i64) + 8);
    let error_bound = if diff.is_zero() { floor } else { diff };
    Ok(SumResult {
        value: v2.with_prec(ctx.working_bits),
        error_bound,
        terms_used: k0 + n2,
        method: SumMethod::Accelerated,
    })
}
