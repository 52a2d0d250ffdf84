//! Summation of fixed-sign hypergeometric series whose term ratio tends to 1.
//!
//! With `t_{k+1}/t_k = prod(k + alpha_i)/prod(k + beta_i)` and
//! `sigma = sum beta - sum alpha > 1`, the tail from N satisfies
//! `R(N) = T_N/t_N = 1 + rho(N) R(N+1)`. Writing `R(N) = N U(1/N)` turns this
//! into `U(x) = x + r(x)(1+x)U(x/(1+x))` with `r(x) = prod(1+alpha x)/prod(1+beta x)`,
//! whose formal power series `U = sum u_m x^m` obeys
//! `u_m (sigma + m - 1) = [m = 0] + sum_{n<m} u_n [x^{m+1-n}] (1+x)^{-n} q(x)`,
//! `q = r(x)(1+x)`. The series is asymptotic, so it is truncated at its
//! smallest term and the whole evaluation is repeated at a larger N.

use num_traits::{One, Zero};

use super::{SeriesSpec, SumMethod, SumResult};
use crate::bigreal::{agree_digits, BigReal, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{int, Rational};

const MAX_ORDER: usize = 120;

fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Linear factors of the term ratio: (upper, lower) shifts and leading constant.
fn linear_factors(spec: &SeriesSpec) -> (Vec<Rational>, Vec<Rational>, Rational) {
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    let mut lead = spec.base.z.clone();
    for f in &spec.base.factors {
        let m = int(f.mult as i64);
        for j in 0..f.mult {
            let shift = (&f.arg + int(j as i64)) / &m;
            for _ in 0..f.power.unsigned_abs() {
                if f.power > 0 {
                    upper.push(shift.clone());
                    lead *= &m;
                } else {
                    lower.push(shift.clone());
                    lead /= &m;
                }
            }
        }
    }
    (upper, lower, lead)
}

struct TailExpansion {
    /// `(1+x)^{-n} q(x)` for n = 0, 1, ...
    shifted: Vec<Vec<BigReal>>,
    u: Vec<BigReal>,
    sigma: Rational,
    bits: u64,
}

impl TailExpansion {
    fn new(upper: &[Rational], lower: &[Rational], bits: u64) -> Self {
        let len = MAX_ORDER + 2;
        let mut r = vec![Rational::zero(); len];
        r[0] = Rational::one();
        for a in upper {
            r = series_mul(&r, &[Rational::one(), a.clone()], len);
        }
        for b in lower {
            let mut inv = Vec::with_capacity(len);
            let mut p = Rational::one();
            for _ in 0..len {
                inv.push(p.clone());
                p *= -b;
            }
            r = series_mul(&r, &inv, len);
        }
        let q = series_mul(&r, &[Rational::one(), Rational::one()], len);
        let sigma: Rational = lower.iter().sum::<Rational>() - upper.iter().sum::<Rational>();
        let q0 = q.iter().map(|c| BigReal::from_rational(c, bits)).collect();
        TailExpansion {
            shifted: vec![q0],
            u: Vec::new(),
            sigma,
            bits,
        }
    }

    /// Computes `u_m` for the next m.
    fn extend(&mut self) {
        let m = self.u.len();
        while self.shifted.len() < m {
            // divide the previous series by (1 + x)
            let prev = self.shifted.last().expect("q is always present");
            let mut next: Vec<BigReal> = Vec::with_capacity(prev.len());
            for (i, c) in prev.iter().enumerate() {
                let v = if i == 0 { c.clone() } else { c - &next[i - 1] };
                next.push(v);
            }
            self.shifted.push(next);
        }
        let mut acc = if m == 0 {
            BigReal::from_int(1, self.bits)
        } else {
            BigReal::zero(self.bits)
        };
        for (n, un) in self.u.iter().enumerate() {
            acc = &acc + &(un * &self.shifted[n][m + 1 - n]);
        }
        let den = BigReal::from_rational(&(&self.sigma + int(m as i64 - 1)), self.bits);
        self.u.push(&acc / &den);
    }

    /// `R(N) = N sum u_m N^-m`, truncated once terms fall below `2^-bits`
    /// relative size; `None` if the terms start growing first.
    fn ratio_at(&mut self, n: u64) -> Option<BigReal> {
        let w = self.bits;
        let inv = BigReal::from_rational(&Rational::new(1.into(), n.into()), w);
        let mut power = BigReal::from_int(1, w);
        let mut sum = BigReal::zero(w);
        let mut last = f64::INFINITY;
        for m in 0..MAX_ORDER {
            if self.u.len() <= m {
                self.extend();
            }
            let term = &self.u[m] * &power;
            let size = term.log2_abs();
            if size > last + 1.0 {
                return None;
            }
            sum = &sum + &term;
            if !sum.is_zero() && size < sum.log2_abs() - w as f64 + 12.0 {
                return Some(sum.mul_rational(&int(n as i64)));
            }
            last = size.min(last);
            power = &power * &inv;
        }
        None
    }
}

/// Sums a positive-ratio, ratio-to-1 hypergeometric series with constant
/// weight by an exact head `k < N` plus the asymptotic tail `t_N R(N)`.
pub fn sum_asymptotic_tail(spec: &SeriesSpec, ctx: &PrecisionContext, digits: u32) -> Result<SumResult> {
    let weight = spec
        .weight
        .as_rf()
        .and_then(|r| r.as_constant())
        .ok_or_else(|| Error::Domain("asymptotic tail summation needs a constant weight".into()))?;
    let (upper, lower, lead) = linear_factors(spec);
    if upper.len() != lower.len() || !lead.is_one() {
        return Err(Error::Domain(format!(
            "asymptotic tail summation needs term ratio -> 1, got leading factor {lead} with degrees {}/{}",
            upper.len(),
            lower.len()
        )));
    }
    let sigma: Rational = lower.iter().sum::<Rational>() - upper.iter().sum::<Rational>();
    if sigma <= Rational::one() {
        return Err(Error::NonConvergence {
            terms: 0,
            detail: format!("terms decay like k^-({sigma}), which is not summable"),
        });
    }
    let bits = ctx.working_bits + 16;
    let mut expansion = TailExpansion::new(&upper, &lower, bits + 16);
    let n1 = 3 * digits as u64 + 20 + spec.start_index;
    let n2 = 4 * digits as u64 + 30 + spec.start_index;

    let mut head = Rational::zero();
    let mut at_n1: Option<BigReal> = None;
    let mut result: Option<BigReal> = None;
    for item in spec.terms() {
        let t = item?;
        if t.k == n1 || t.k == n2 {
            let r = expansion.ratio_at(t.k).ok_or_else(|| Error::NonConvergence {
                terms: t.k as usize,
                detail: "asymptotic tail expansion diverged before reaching the working precision".into(),
            })?;
            let tail = r.mul_rational(&(&t.base * &weight));
            let v = &BigReal::from_rational(&head, bits) + &tail;
            if t.k == n1 {
                at_n1 = Some(v);
            } else {
                result = Some(v);
                break;
            }
        }
        if t.k >= spec.start_index {
            head += t.value;
        }
        if t.base.is_zero() {
            let v = BigReal::from_rational(&head, bits);
            return Ok(SumResult {
                value: v.with_prec(ctx.working_bits),
                error_bound: BigReal::zero(64),
                terms_used: t.k as usize + 1,
                method: SumMethod::AsymptoticTail,
            });
        }
    }
    let v1 = at_n1.expect("n1 < n2");
    let v2 = result.expect("loop exits after n2");
    let agree = agree_digits(&v1, &v2, digits + 8);
    if agree < digits {
        return Err(Error::Instability {
            first: v1.to_decimal(digits as usize + 5),
            second: v2.to_decimal(digits as usize + 5),
            digits: agree,
        });
    }
    let diff = (&v1 - &v2).abs();
    let error_bound = if diff.is_zero() {
        BigReal::from_int(1, 64).mul_pow2(-(bits as i64) + 8)
    } else {
        diff
    };
    Ok(SumResult {
        value: v2.with_prec(ctx.working_bits),
        error_bound,
        terms_used: n2 as usize,
        method: SumMethod::AsymptoticTail,
    })
}
