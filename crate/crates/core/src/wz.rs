//! The WZ pair
//!
//! ```text
//! F(n,k) = 64/pi^3 * n^2/(4n-2k-1) * cos(pi k) G(2n-k+1/2) G(n+1/2)^3 G(k+1/2)^2 / ((-1)^n G(n+k+1) G(2n+1)^2)
//! G(n,k) = 1/pi^3 * (20n+2k+3)     * (same Gamma product)
//! ```
//!
//! On the integer lattice every `Gamma(m+1/2)` is `c(m) sqrt(pi)` with `c(m)`
//! rational, so both are exact rationals. Off the lattice the `n`-sums are
//! hypergeometric in `n` with a k-dependent prefactor.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::bigreal::{cos_pi, log2, pi, BigReal, PrecisionContext};
use crate::catalog::{catalog, verify};
use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, rat, Rational};
use crate::report::VerificationReport;
use crate::series::{sum_geometric_terms, ConvergenceClass, HyperTerm, PochFactor, SeriesSpec, SumResult, WeightExpr};
use crate::special::gamma_pos_rational;

/// The pair with `G`'s leading coefficient exposed, so that the certifier
/// can be shown to reject a perturbed pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WzPair {
    pub g_coeff: i64,
}

impl Default for WzPair {
    fn default() -> Self {
        WzPair { g_coeff: 20 }
    }
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Exact factors for a range of lattice points.
struct Lattice {
    c_min: i64,
    c: Vec<Rational>,
    fact: Vec<BigInt>,
}

impl Lattice {
    fn new(nmax: u64, kmax: u64) -> Self {
        let c_min = -(kmax as i64);
        let c_max = (2 * nmax).max(kmax) as i64;
        let mut up = vec![int(1)];
        for m in 0..c_max {
            let next = &up[m as usize] * (int(m) + rat(1, 2));
            up.push(next);
        }
        let mut down = vec![int(1)];
        for m in 0..-c_min {
            let next = &down[m as usize] / (int(-m) - rat(1, 2));
            down.push(next);
        }
        let c = down.into_iter().skip(1).rev().chain(up).collect();
        let top = (nmax + kmax).max(2 * nmax) as usize;
        let mut fact = vec![BigInt::one()];
        for i in 1..=top {
            let next = &fact[i - 1] * BigInt::from(i);
            fact.push(next);
        }
        Lattice { c_min, c, fact }
    }

    fn c(&self, m: i64) -> &Rational {
        &self.c[(m - self.c_min) as usize]
    }

    /// `(-1)^(k+n) c(2n-k) c(n)^3 c(k)^2 / ((n+k)! (2n)!^2)`.
    fn common(&self, n: u64, k: u64) -> Rational {
        let (ni, ki) = (n as i64, k as i64);
        let cn = self.c(ni);
        let ck = self.c(ki);
        let num = sign(ni + ki) * self.c(2 * ni - ki) * cn * cn * cn * ck * ck;
        let f2n = &self.fact[2 * n as usize];
        let den = &self.fact[(n + k) as usize] * f2n * f2n;
        num / Rational::from_integer(den)
    }

    fn f(&self, n: u64, k: u64) -> Rational {
        let (ni, ki) = (n as i64, k as i64);
        let pre = int(64 * ni * ni) / int(4 * ni - 2 * ki - 1);
        pre * self.common(n, k)
    }

    fn g(&self, pair: WzPair, n: u64, k: u64) -> Rational {
        let w = int(pair.g_coeff * n as i64 + 2 * k as i64 + 3);
        w * self.common(n, k)
    }
}

impl WzPair {
    pub fn f(&self, n: u64, k: u64) -> Rational {
        Lattice::new(n, k).f(n, k)
    }

    pub fn g(&self, n: u64, k: u64) -> Rational {
        Lattice::new(n, k).g(*self, n, k)
    }
}

#[allow(non_snake_case)]
pub fn wz_F(n: u64, k: u64) -> Rational {
    WzPair::default().f(n, k)
}

#[allow(non_snake_case)]
pub fn wz_G(n: u64, k: u64) -> Rational {
    WzPair::default().g(n, k)
}

/// A candidate telescoping relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k)`
    StepNInF,
    /// `F(n+1,k) - F(n,k) = G(n,k) - G(n,k+1)`
    StepNInFNegated,
    /// `F(n,k+1) - F(n,k) = G(n+1,k) - G(n,k)`
    StepKInF,
    /// `F(n,k+1) - F(n,k) = G(n,k) - G(n+1,k)`
    StepKInFNegated,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::StepNInF,
        Convention::StepNInFNegated,
        Convention::StepKInF,
        Convention::StepKInFNegated,
    ];

    fn holds(self, lat: &Lattice, pair: WzPair, n: u64, k: u64) -> bool {
        let (lhs, rhs) = match self {
            Convention::StepNInF | Convention::StepNInFNegated => {
                (lat.f(n + 1, k) - lat.f(n, k), lat.g(pair, n, k + 1) - lat.g(pair, n, k))
            }
            Convention::StepKInF | Convention::StepKInFNegated => {
                (lat.f(n, k + 1) - lat.f(n, k), lat.g(pair, n + 1, k) - lat.g(pair, n, k))
            }
        };
        match self {
            Convention::StepNInF | Convention::StepKInF => lhs == rhs,
            _ => lhs == -rhs,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::StepNInF => "F(n+1,k)-F(n,k) = G(n,k+1)-G(n,k)",
            Convention::StepNInFNegated => "F(n+1,k)-F(n,k) = G(n,k)-G(n,k+1)",
            Convention::StepKInF => "F(n,k+1)-F(n,k) = G(n+1,k)-G(n,k)",
            Convention::StepKInFNegated => "F(n,k+1)-F(n,k) = G(n,k)-G(n+1,k)",
        })
    }
}

/// Outcome of an exact lattice sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub convention: Convention,
    pub points: usize,
    pub violations: Vec<(u64, u64)>,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn report(&self, digits: u32, elapsed: std::time::Duration) -> VerificationReport {
        let shown: Vec<String> = self
            .violations
            .iter()
            .take(5)
            .map(|(n, k)| format!("({n},{k})"))
            .collect();
        VerificationReport::exact(
            "wz-pair",
            self.convention.to_string(),
            digits,
            format!("{} lattice points checked", self.points),
            format!("{} violations {}", self.violations.len(), shown.join(" ")),
            self.points,
            self.holds(),
            elapsed,
        )
    }
}

const PROBE: u64 = 4;

/// Identifies the telescoping convention on a small probe grid, then checks
/// it exactly for `0 <= n <= nmax`, `0 <= k <= kmax`.
pub fn check_pair_relation(pair: WzPair, nmax: u64, kmax: u64) -> Result<PairCheck> {
    if nmax < 1 || kmax < 1 {
        return Err(Error::Domain("nmax and kmax must be at least 1".into()));
    }
    let probe = Lattice::new(PROBE + 1, PROBE + 1);
    let found = Convention::ALL
        .into_iter()
        .find(|c| (0..=PROBE).all(|n| (0..=PROBE).all(|k| c.holds(&probe, pair, n, k))));
    let Some(convention) = found else {
        let mut detail = String::new();
        for c in Convention::ALL {
            let bad = (0..=PROBE)
                .flat_map(|n| (0..=PROBE).map(move |k| (n, k)))
                .find(|&(n, k)| !c.holds(&probe, pair, n, k))
                .expect("candidate fails somewhere");
            detail.push_str(&format!("\n  {c} fails at (n,k) = {bad:?}"));
        }
        return Err(Error::Certification(format!(
            "no telescoping relation holds on the {0}x{0} probe grid (G coefficient {1}):{detail}",
            PROBE + 1,
            pair.g_coeff
        )));
    };
    let lat = Lattice::new(nmax + 1, kmax + 1);
    let f: Vec<Vec<Rational>> = (0..=nmax + 1)
        .into_par_iter()
        .map(|n| (0..=kmax + 1).map(|k| lat.f(n, k)).collect())
        .collect();
    let g: Vec<Vec<Rational>> = (0..=nmax + 1)
        .into_par_iter()
        .map(|n| (0..=kmax + 1).map(|k| lat.g(pair, n, k)).collect())
        .collect();
    let (n_u, k_u) = (nmax as usize, kmax as usize);
    let mut violations: Vec<(u64, u64)> = (0..=n_u)
        .into_par_iter()
        .flat_map_iter(|n| {
            let (f, g) = (&f, &g);
            (0..=k_u).filter_map(move |k| {
                let (lhs, rhs) = match convention {
                    Convention::StepNInF | Convention::StepNInFNegated => {
                        (&f[n + 1][k] - &f[n][k], &g[n][k + 1] - &g[n][k])
                    }
                    _ => (&f[n][k + 1] - &f[n][k], &g[n + 1][k] - &g[n][k]),
                };
                let ok = match convention {
                    Convention::StepNInF | Convention::StepKInF => lhs == rhs,
                    _ => lhs == -rhs,
                };
                (!ok).then_some((n as u64, k as u64))
            })
        })
        .collect();
    violations.sort();
    Ok(PairCheck {
        convention,
        points: (n_u + 1) * (k_u + 1),
        violations,
    })
}

fn max_terms(digits: u32) -> usize {
    2 * digits as usize + 40
}

/// `sum_n G(n,k)` for integer k.
pub fn sum_g(k: u64, ctx: &PrecisionContext, digits: u32) -> Result<SumResult> {
    let ctx = ctx.at_least(digits);
    let cap = max_terms(digits) as u64;
    let lat = Lattice::new(cap, k);
    let pair = WzPair::default();
    let terms = (0..cap).map(|n| Ok(Some(lat.g(pair, n, k))));
    sum_geometric_terms(terms, &rat(1, 4), &ctx, digits, max_terms(digits))
}

/// `H(n,k) = F(n+1, n+k+1) + G(n, n+k)`, as printed.
pub fn wz_h_term(n: u64, k: u64) -> Rational {
    let lat = Lattice::new(n + 1, n + k + 1);
    lat.f(n + 1, n + k + 1) + lat.g(WzPair::default(), n, n + k)
}

/// `F(n+1, n+k) + G(n, n+k)`: the combination whose n-sum telescopes to
/// `sum_n G(n,k)` under the identified convention.
pub fn wz_h_term_telescoped(n: u64, k: u64) -> Rational {
    let lat = Lattice::new(n + 1, n + k + 1);
    lat.f(n + 1, n + k) + lat.g(WzPair::default(), n, n + k)
}

/// Which H combination to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HForm {
    /// `F(n+1, n+k+1) + G(n, n+k)`
    Printed,
    /// `F(n+1, n+k) + G(n, n+k)`
    Telescoped,
}

/// `sum_n H(n,k)` for integer k.
pub fn sum_h(form: HForm, k: u64, ctx: &PrecisionContext, digits: u32) -> Result<SumResult> {
    let ctx = ctx.at_least(digits);
    let cap = max_terms(digits) as u64;
    let lat = Lattice::new(cap + 1, 2 * cap + k + 1);
    let pair = WzPair::default();
    let shift = match form {
        HForm::Printed => 1,
        HForm::Telescoped => 0,
    };
    let terms = (0..cap).map(|n| Ok(Some(lat.f(n + 1, n + k + shift) + lat.g(pair, n, n + k))));
    sum_geometric_terms(terms, &rat(1, 64), &ctx, digits, max_terms(digits))
}

fn pi_cubed(ctx: &PrecisionContext) -> BigReal {
    pi(ctx).powi(3)
}

/// `G(n,k)` at rational k, from the printed Gamma form.
#[allow(non_snake_case)]
pub fn G_real(n: u64, k: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    let ni = int(n as i64);
    let half = rat(1, 2);
    let g = |x: Rational| gamma_pos_rational(&x, ctx);
    let w = int(20) * &ni + int(2) * k + int(3);
    let num = &(&g(int(2) * &ni - k + &half)? * &g(&ni + &half)?.powi(3)) * &g(k + &half)?.powi(2);
    let num = &num * &cos_pi(k, ctx);
    let den = &(&g(&ni + k + int(1))? * &g(int(2) * &ni + int(1))?.powi(2)) * &pi_cubed(ctx);
    let v = num.checked_div(&den)?.mul_rational(&(w * sign(n as i64)));
    Ok(v)
}

/// `cos(pi k) Gamma(1/2-k) Gamma(k+1/2)^2 / (pi^(3/2) Gamma(k+1))`, the
/// k-dependent prefactor shared by the n-sums of G and H.
fn prefactor(k: &Rational, ctx: &PrecisionContext) -> Result<BigReal> {
    let half = rat(1, 2);
    let g = |x: Rational| gamma_pos_rational(&x, ctx);
    let num = &(&cos_pi(k, ctx) * &g(&half - k)?) * &g(k + &half)?.powi(2);
    let sqrt_pi_cubed = crate::special::sqrt_pi(ctx).powi(3);
    num.checked_div(&(&sqrt_pi_cubed * &g(k + int(1))?))
}

fn g_sum_term(n: u64, k: &Rational) -> Rational {
    let ni = int(n as i64);
    let w = int(20) * &ni + int(2) * k + int(3);
    let half = rat(1, 2);
    let top = pochhammer(&(&half - k), 2 * n) * num_traits::pow(pochhammer(&half, n), 3);
    let f2n = Rational::from_integer(factorial(2 * n));
    let bottom = pochhammer(&(k + int(1)), n) * &f2n * &f2n;
    sign(n as i64) * w * top / bottom
}

fn h_sum_term(n: u64, k: &Rational) -> Rational {
    let ni = int(n as i64);
    let half = rat(1, 2);
    let a = &half - k;
    let b = k + &half;
    let kp1 = k + int(1);
    let g_part = {
        let w = int(22) * &ni + int(2) * k + int(3);
        let top = pochhammer(&a, n) * num_traits::pow(pochhammer(&half, n), 3) * num_traits::pow(pochhammer(&b, n), 2);
        let f = Rational::from_integer(factorial(2 * n));
        w * top / (pochhammer(&kp1, 2 * n) * &f * &f)
    };
    // F(n+1, n+k) = -K(k) 64(n+1)^2/(2n-2k+3) (1/2-k)_{n+2} (1/2)_{n+1}^3 (k+1/2)_n^2 / ((k+1)_{2n+1} (2n+2)!^2)
    let f_part = {
        let m = n + 1;
        let pre = int(-64) * &int(m as i64) * &int(m as i64) / (int(2) * &ni - int(2) * k + int(3));
        let top =
            pochhammer(&a, n + 2) * num_traits::pow(pochhammer(&half, m), 3) * num_traits::pow(pochhammer(&b, n), 2);
        let f = Rational::from_integer(factorial(2 * m));
        pre * top / (pochhammer(&kp1, 2 * n + 1) * &f * &f)
    };
    g_part + f_part
}

/// Which n-sum to extend off the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WzSum {
    G,
    H,
}

/// `sum_n G(n,k)` or `sum_n H(n,k)` at rational k near 0.
pub fn sum_real(which: WzSum, k: &Rational, ctx: &PrecisionContext, digits: u32) -> Result<SumResult> {
    let ctx = ctx.at_least(digits);
    let (rho, term): (Rational, fn(u64, &Rational) -> Rational) = match which {
        WzSum::G => (rat(1, 4), g_sum_term),
        WzSum::H => (rat(1, 64), h_sum_term),
    };
    let terms = (0..).map(|n| Ok(Some(term(n, k))));
    let mut r = sum_geometric_terms(terms, &rho, &ctx, digits, max_terms(digits))?;
    r.value = &r.value * &prefactor(k, &ctx)?;
    Ok(r)
}

/// Central difference in k at k = 0 of both n-sums, which are constant in k;
/// each must vanish to at least 15 digits.
pub fn ddk_sum_check(ctx: &PrecisionContext) -> Result<Vec<VerificationReport>> {
    let digits = ctx.target_digits.max(60);
    let work = ctx.at_least(digits);
    let h = Rational::new(BigInt::one(), BigInt::from(10).pow(10));
    let mut out = Vec::new();
    for (which, name, anchor) in [
        (
            WzSum::G,
            "d/dk sum_n G(n,k) at k=0",
            r"\sum_{n=0}^\infty G(n,k) = \frac{8}{\pi}",
        ),
        (
            WzSum::H,
            "d/dk sum_n H(n,k) at k=0",
            r"\sum_{n=0}^\infty H(n,k) = \frac{8}{\pi}",
        ),
    ] {
        let started = Instant::now();
        let hi = sum_real(which, &h, &work, digits)?;
        let lo = sum_real(which, &-h.clone(), &work, digits)?;
        let d = (&hi.value - &lo.value).mul_rational(&(&h * int(2)).recip());
        out.push(VerificationReport::compare(
            name,
            anchor,
            15,
            digits - 10,
            &d,
            &BigReal::zero(work.working_bits),
            hi.terms_used + lo.terms_used,
            "central_difference",
            started.elapsed(),
        ));
    }
    Ok(out)
}

/// The two k-derivative zero-sum series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSeries {
    /// `(-1)^n C(4n,2n) C(2n,n)^2 / 2^(10n) {(20n+3)(2H_{4n}-H_{2n}+H_n+2log2)-2}`
    H1,
    /// `C(2n,n)^3 / 2^(12n) {(42n+5)(H_{2n}-H_n-2log2)+7}`
    T4,
}

impl ZeroSeries {
    pub fn anchor(self) -> &'static str {
        match self {
            ZeroSeries::H1 => r"(20n+3)  (2 H_{4n} - H_{2n} +H_n + 2 \log 2) - 2",
            ZeroSeries::T4 => r"(42n+5) ( H_{2n} - H_n - 2 \log 2) + 7",
        }
    }

    /// The catalog theorem this series is equivalent to, with the
    /// classical record paired with its log 2 part.
    pub fn theorem(self) -> (&'static str, &'static str) {
        match self {
            ZeroSeries::H1 => ("thm-(H1)", "ra3"),
            ZeroSeries::T4 => ("thm-(4)", "ra4"),
        }
    }

    fn base(self) -> HyperTerm {
        match self {
            ZeroSeries::H1 => HyperTerm::new(
                int(1),
                rat(-1, 1024),
                vec![PochFactor::new(int(1), 4, 1), PochFactor::new(int(1), 1, -4)],
            ),
            ZeroSeries::T4 => HyperTerm::new(
                int(1),
                rat(1, 4096),
                vec![PochFactor::new(int(1), 2, 3), PochFactor::new(int(1), 1, -6)],
            ),
        }
    }

    /// The series split as `rational part + 2 log2 * linear part`.
    fn parts(self) -> (SeriesSpec, SeriesSpec) {
        let (rho, rational, linear) = match self {
            ZeroSeries::H1 => (rat(1, 4), "(20k+3)(2H[4k]-H[2k]+H[k])-2", "20k+3"),
            ZeroSeries::T4 => (rat(1, 64), "(42k+5)(H[2k]-H[k])+7", "-42k-5"),
        };
        let spec = |w: &str| {
            SeriesSpec::new(
                self.base(),
                WeightExpr::parse(w, &[]).expect("zero-series weights parse"),
                ConvergenceClass::Geometric(rho.clone()),
            )
        };
        (spec(rational), spec(linear))
    }
}

impl std::str::FromStr for ZeroSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h1" => Ok(ZeroSeries::H1),
            "t4" => Ok(ZeroSeries::T4),
            _ => Err(Error::Parse {
                input: s.into(),
                message: "expected h1 or t4".into(),
            }),
        }
    }
}

/// Value of a zero-sum series and the number of terms used.
pub fn zero_series_value(which: ZeroSeries, ctx: &PrecisionContext, digits: u32) -> Result<(BigReal, usize)> {
    let ctx = ctx.at_least(digits);
    let (rational, linear) = which.parts();
    let r = rational.sum(&ctx, digits + 5, None)?;
    let l = linear.sum(&ctx, digits + 5, None)?;
    let two_log2 = log2(&ctx).mul_pow2(1);
    Ok((&r.value + &(&two_log2 * &l.value), r.terms_used + l.terms_used))
}

/// Sums a zero-sum series and checks it vanishes to `digits`, then
/// verifies the catalog theorem it is equivalent to.
pub fn derived_zero_series(which: ZeroSeries, ctx: &PrecisionContext, digits: u32) -> Result<Vec<VerificationReport>> {
    let started = Instant::now();
    let work = ctx.at_least(digits);
    let (value, terms) = zero_series_value(which, &work, digits)?;
    let id = match which {
        ZeroSeries::H1 => "zero-(H1)",
        ZeroSeries::T4 => "zero-(4)",
    };
    let zero = BigReal::zero(work.working_bits);
    let report = VerificationReport::compare(
        id,
        which.anchor(),
        digits,
        work.target_digits,
        &value,
        &zero,
        terms,
        "direct",
        started.elapsed(),
    );
    let (thm, _) = which.theorem();
    Ok(vec![report, verify(thm, &work, digits)?])
}

/// `G(n,0)` equals the `n`-th full term of the 8/pi series, exactly.
pub fn g_matches_ra3(nmax: u64, digits: u32) -> Result<VerificationReport> {
    let started = Instant::now();
    let rec = catalog().record("ra3")?;
    let lat = Lattice::new(nmax, 0);
    let pair = WzPair::default();
    let mut bad = None;
    for t in rec.lhs.terms().take(nmax as usize + 1) {
        let t = t?;
        if lat.g(pair, t.k, 0) != t.value {
            bad = Some(t.k);
            break;
        }
    }
    Ok(VerificationReport::exact(
        "wz-G(n,0)=ra3",
        r"\sum_{n=0}^\infty G(n,k) = \frac{8}{\pi}",
        digits,
        format!("G(n,0) for n <= {nmax}"),
        match bad {
            None => "ra3 terms: identical".to_string(),
            Some(n) => format!("ra3 terms: differ at n = {n}"),
        },
        nmax as usize + 1,
        bad.is_none(),
        started.elapsed(),
    ))
}

/// Compares a sum against 8/pi.
pub fn eight_over_pi_report(
    id: &str,
    sum: &SumResult,
    ctx: &PrecisionContext,
    digits: u32,
    elapsed: std::time::Duration,
) -> VerificationReport {
    let target = pi(ctx).recip().mul_rational(&int(8));
    VerificationReport::compare(
        id,
        r"\frac{8}{\pi}",
        digits,
        ctx.target_digits.max(digits),
        &sum.value,
        &target,
        sum.terms_used,
        sum.method.to_string(),
        elapsed,
    )
}
