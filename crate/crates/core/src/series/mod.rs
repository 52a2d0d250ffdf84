//! Series specifications and the summation engines.
//!
//! A series is `sum_{k >= start} t_k * w_k` where the base term `t_k` is a
//! hypergeometric term with exact rational parameters and `w_k` a
//! [`WeightExpr`].

mod accelerate;
mod direct;
mod tail;
mod weight;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use accelerate::sum_alternating_accelerated;
pub use direct::{sum_direct, sum_geometric_terms};
pub use tail::sum_asymptotic_tail;
pub use weight::{Basis, WeightExpr};

use crate::bigreal::{BigReal, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{int, HarmonicState, Poly, Rational, RationalFunction, Var};

/// `(arg)_{mult*k}` raised to `power` (negative powers divide).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochFactor {
    pub arg: Rational,
    pub mult: u32,
    pub power: i32,
}

impl PochFactor {
    pub fn new(arg: Rational, mult: u32, power: i32) -> Self {
        PochFactor { arg, mult, power }
    }
}

impl fmt::Display for PochFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = if self.mult == 1 {
            "k".to_string()
        } else {
            format!("{}k", self.mult)
        };
        write!(f, "({})_{{{idx}}}", self.arg)?;
        if self.power.abs() != 1 {
            write!(f, "^{}", self.power.abs())?;
        }
        Ok(())
    }
}

/// `t_k = scale * z^k * prod (arg)_{mult k}^power`.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperTerm {
    pub scale: Rational,
    pub z: Rational,
    pub factors: Vec<PochFactor>,
}

impl HyperTerm {
    pub fn new(scale: Rational, z: Rational, factors: Vec<PochFactor>) -> Self {
        HyperTerm { scale, z, factors }
    }

    /// Exact `t_{k+1}/t_k`; zero once a numerator factor vanishes.
    pub fn ratio_at(&self, k: u64) -> Result<Rational> {
        let mut r = self.z.clone();
        for f in &self.factors {
            let m = f.mult as u64;
            for j in 0..m {
                let v = &f.arg + int((m * k + j) as i64);
                if f.power > 0 {
                    r *= num_traits::pow(v, f.power as usize);
                } else {
                    if v.is_zero() {
                        return Err(Error::Pole {
                            what: format!("denominator factor {f}"),
                            index: (m * k + j) as i64,
                        });
                    }
                    r /= num_traits::pow(v, f.power.unsigned_abs() as usize);
                }
            }
        }
        Ok(r)
    }

    /// Exact `t_k` by direct products.
    pub fn term(&self, k: u64) -> Result<Rational> {
        let mut t = self.scale.clone();
        for j in 0..k {
            t *= self.ratio_at(j)?;
        }
        Ok(t)
    }

    /// `t_{k+1}/t_k` as a rational function of k.
    pub fn ratio(&self) -> RationalFunction {
        let kp = Poly::var(Var::K);
        let mut num = Poly::constant(self.z.clone());
        let mut den = Poly::constant(Rational::one());
        for f in &self.factors {
            for j in 0..f.mult {
                let lin = &(&kp * &Poly::constant(int(f.mult as i64))) + &Poly::constant(&f.arg + int(j as i64));
                for _ in 0..f.power.unsigned_abs() {
                    if f.power > 0 {
                        num = &num * &lin;
                    } else {
                        den = &den * &lin;
                    }
                }
            }
        }
        RationalFunction::new(num, den).expect("factor denominators are nonzero polynomials")
    }

    /// `|t_{k+1}/t_k|` as k -> infinity, provided the degrees balance.
    pub fn ratio_limit(&self) -> Option<Rational> {
        let mut lead = self.z.abs();
        let mut degree = 0i64;
        for f in &self.factors {
            let m = int(f.mult as i64);
            let c = num_traits::pow(m.clone(), f.mult as usize);
            if f.power > 0 {
                lead *= num_traits::pow(c, f.power as usize);
            } else {
                lead /= num_traits::pow(c, f.power.unsigned_abs() as usize);
            }
            degree += f.mult as i64 * f.power as i64;
        }
        (degree == 0).then_some(lead)
    }
}

impl fmt::Display for HyperTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|p| p.power > 0)
            .map(|p| p.to_string())
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|p| p.power < 0)
            .map(|p| p.to_string())
            .collect();
        if !self.scale.is_one() {
            write!(f, "{}·", self.scale)?;
        }
        if !self.z.is_one() {
            write!(f, "({})^k·", self.z)?;
        }
        let n = if num.is_empty() { "1".to_string() } else { num.join("") };
        if den.is_empty() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{}", den.join(""))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConvergenceClass {
    /// `|ratio| -> rho < 1`.
    Geometric(Rational),
    /// Sign-alternating with `|ratio| -> 1`.
    AlternatingSlow,
    /// Fixed sign with `|ratio| -> 1` and algebraic decay.
    AlgebraicSlow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumMethod {
    Direct,
    Accelerated,
    AsymptoticTail,
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SumMethod::Direct => "direct",
            SumMethod::Accelerated => "accelerated",
            SumMethod::AsymptoticTail => "asymptotic_tail",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SumResult {
    pub value: BigReal,
    pub error_bound: BigReal,
    pub terms_used: usize,
    pub method: SumMethod,
}

#[derive(Debug, Clone)]
pub struct SeriesSpec {
    pub base: HyperTerm,
    pub weight: WeightExpr,
    pub class: ConvergenceClass,
    pub start_index: u64,
}

impl SeriesSpec {
    pub fn new(base: HyperTerm, weight: WeightExpr, class: ConvergenceClass) -> Self {
        SeriesSpec {
            base,
            weight,
            class,
            start_index: 0,
        }
    }

    pub fn starting_at(mut self, k: u64) -> Self {
        self.start_index = k;
        self
    }

    pub fn t0(&self) -> Rational {
        self.base.scale.clone()
    }

    pub fn ratio(&self) -> RationalFunction {
        self.base.ratio()
    }

    pub fn with_weight(&self, weight: WeightExpr) -> SeriesSpec {
        SeriesSpec { weight, ..self.clone() }
    }

    pub fn terms(&self) -> TermIter<'_> {
        TermIter {
            spec: self,
            k: 0,
            t: self.base.scale.clone(),
            state: Some(HarmonicState::new(self.weight.harmonic_refs())),
            pending: None,
        }
    }

    /// Exact partial sum over `start_index <= k < end`.
    pub fn partial_sum(&self, end: u64) -> Result<Rational> {
        let mut acc = Rational::zero();
        for item in self.terms() {
            let t = item?;
            if t.k >= end {
                break;
            }
            if t.k >= self.start_index {
                acc += t.value;
            }
        }
        Ok(acc)
    }

    /// Picks the engine matching the convergence class.
    pub fn sum(&self, ctx: &PrecisionContext, digits: u32, max_terms: Option<usize>) -> Result<SumResult> {
        let max_terms = max_terms.unwrap_or(100 * digits.max(1) as usize);
        match self.class {
            ConvergenceClass::Geometric(_) => sum_direct(self, ctx, digits, max_terms),
            ConvergenceClass::AlternatingSlow => sum_alternating_accelerated(self, ctx, digits, max_terms),
            ConvergenceClass::AlgebraicSlow => sum_asymptotic_tail(self, ctx, digits),
        }
    }
}

/// One exact term: index, base term `t_k` and full term `t_k w_k`.
#[derive(Debug, Clone)]
pub struct Term {
    pub k: u64,
    pub base: Rational,
    pub value: Rational,
}

/// Exact terms from k = 0.
pub struct TermIter<'a> {
    spec: &'a SeriesSpec,
    k: u64,
    t: Rational,
    state: Option<HarmonicState>,
    pending: Option<Error>,
}

impl Iterator for TermIter<'_> {
    type Item = Result<Term>;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(e) = self.pending.take() {
            return Some(Err(e));
        }
        let state = self.state.take()?;
        let k = self.k;
        let w = match self.spec.weight.eval(&state) {
            Ok(w) => w,
            Err(e) => return Some(Err(e)),
        };
        let term = Term {
            k,
            base: self.t.clone(),
            value: &self.t * &w,
        };
        let step = self.spec.base.ratio_at(k).and_then(|r| Ok((r, state.advance()?)));
        match step {
            Ok((r, next)) => {
                self.t *= r;
                self.state = Some(next);
                self.k += 1;
            }
            // the failure belongs to the next term; report it on the next call
            Err(e) => self.pending = Some(e),
        }
        Some(Ok(term))
    }
}

/// Exact full term at index `k` for a given state at that index.
pub fn term_at(spec: &SeriesSpec, k: u64, state: &HarmonicState) -> Result<Rational> {
    if state.k() != k {
        return Err(Error::Domain(format!("harmonic state is at {} not {k}", state.k())));
    }
    let t = spec.base.term(k)?;
    Ok(t * spec.weight.eval(state)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{agree_digits, log2, pi};
    use crate::exact::rat;

    fn half_cubed(z: Rational) -> HyperTerm {
        HyperTerm::new(
            int(1),
            z,
            vec![PochFactor::new(rat(1, 2), 1, 3), PochFactor::new(int(1), 1, -3)],
        )
    }

    fn weight(s: &str) -> WeightExpr {
        WeightExpr::parse(s, &[]).unwrap()
    }

    fn ra2() -> SeriesSpec {
        SeriesSpec::new(
            half_cubed(rat(1, 4)),
            weight("6k+1"),
            ConvergenceClass::Geometric(rat(1, 4)),
        )
    }

    #[test]
    fn ra2_direct() {
        let ctx = PrecisionContext::new(50);
        let r = ra2().sum(&ctx, 50, None).unwrap();
        let want = &BigReal::from_int(4, ctx.bits()) / &pi(&ctx);
        assert!(agree_digits(&r.value, &want, 50) >= 50);
        assert_eq!(r.method, SumMethod::Direct);
        assert!(r.error_bound.log2_abs() < -50.0 * 3.3);
    }

    #[test]
    fn ra2_partial_sum() {
        assert_eq!(ra2().partial_sum(3).unwrap(), int(1) + rat(7, 32) + rat(351, 8192));
        assert_eq!(ra2().ratio().eval_k(0).unwrap(), rat(1, 32));
        assert_eq!(ra2().t0(), int(1));
    }

    #[test]
    fn start_index_is_respected() {
        let wei_base = HyperTerm::new(
            int(1),
            rat(1, 16),
            vec![
                PochFactor::new(rat(1, 2), 1, 3),
                PochFactor::new(rat(1, 4), 1, 1),
                PochFactor::new(rat(3, 4), 1, 1),
                PochFactor::new(int(1), 1, -5),
            ],
        );
        let spec = SeriesSpec::new(
            wei_base,
            weight("(120k^2+34k+3)(23H2[2k]-7H2[k])+24"),
            ConvergenceClass::Geometric(rat(1, 16)),
        )
        .starting_at(1);
        let ctx = PrecisionContext::new(50);
        let r = spec.sum(&ctx, 50, None).unwrap();
        let want = BigReal::from_rational(&rat(16, 3), ctx.bits());
        assert!(agree_digits(&r.value, &want, 50) >= 50);
    }

    #[test]
    fn ra1_accelerated() {
        let spec = SeriesSpec::new(half_cubed(int(-1)), weight("4k+1"), ConvergenceClass::AlternatingSlow);
        let ctx = PrecisionContext::new(30);
        let r = spec.sum(&ctx, 30, None).unwrap();
        let want = &BigReal::from_int(2, ctx.bits()) / &pi(&ctx);
        assert!(agree_digits(&r.value, &want, 30) >= 30);
        assert_eq!(r.method, SumMethod::Accelerated);
    }

    #[test]
    fn harmonic_alternating_with_sign_change() {
        // 3(4k+1)H_k - 2 is negative only at k = 0
        let spec = SeriesSpec::new(
            half_cubed(int(-1)),
            weight("3(4k+1)H[k]-2"),
            ConvergenceClass::AlternatingSlow,
        );
        let ctx = PrecisionContext::new(25);
        let r = spec.sum(&ctx, 25, None).unwrap();
        let want = &log2(&ctx).mul_rational(&int(-12)) / &pi(&ctx);
        assert!(agree_digits(&r.value, &want, 25) >= 25);
        let spec = spec.with_weight(weight("(4k+1)H[2k]"));
        let r = spec.sum(&ctx, 25, None).unwrap();
        let want = &log2(&ctx).mul_rational(&int(-2)) / &pi(&ctx);
        assert!(agree_digits(&r.value, &want, 25) >= 25);
    }

    #[test]
    fn toy_alternating_series() {
        let ctx = PrecisionContext::new(40);
        let log_series = SeriesSpec::new(
            HyperTerm::new(
                int(1),
                int(-1),
                vec![PochFactor::new(int(1), 1, 1), PochFactor::new(int(2), 1, -1)],
            ),
            WeightExpr::one(),
            ConvergenceClass::AlternatingSlow,
        );
        let r = log_series.sum(&ctx, 40, None).unwrap();
        assert!(agree_digits(&r.value, &log2(&ctx), 40) >= 40);
        let leibniz = SeriesSpec::new(
            HyperTerm::new(
                int(1),
                int(-1),
                vec![PochFactor::new(rat(1, 2), 1, 1), PochFactor::new(rat(3, 2), 1, -1)],
            ),
            WeightExpr::one(),
            ConvergenceClass::AlternatingSlow,
        );
        let r = leibniz.sum(&ctx, 40, None).unwrap();
        assert!(agree_digits(&r.value, &pi(&ctx).mul_pow2(-2), 40) >= 40);
    }

    #[test]
    fn term_at_examples() {
        let spec = ra2().with_weight(weight("(6k+1)H[k]-2"));
        let s0 = HarmonicState::new(spec.weight.harmonic_refs());
        assert_eq!(term_at(&spec, 0, &s0).unwrap(), int(-2));
        let spec = ra2().with_weight(weight("(20k+3)(2H[4k]-H[2k]+H[k])-2"));
        assert_eq!(term_at(&spec, 0, &s0).unwrap(), int(-2));
        assert!(term_at(&spec, 1, &s0).is_err());
    }

    #[test]
    fn consecutive_terms_follow_ratio_and_weight() {
        let spec = ra2().with_weight(weight("(6k+1)(3H[2k]-2H[k])+1"));
        let ratio = spec.ratio();
        let terms: Vec<Term> = spec.terms().take(30).map(|t| t.unwrap()).collect();
        for k in 1..30u64 {
            let st0 = HarmonicState::at(k - 1, []).unwrap();
            let st1 = st0.advance().unwrap();
            let w0 = spec.weight.eval(&st0).unwrap();
            let w1 = spec.weight.eval(&st1).unwrap();
            let want = ratio.eval_k(k - 1).unwrap() * &w1 / &w0;
            assert_eq!(&terms[k as usize].value / &terms[k as usize - 1].value, want);
        }
    }

    #[test]
    fn dougall_tail() {
        // 5F4 with a = 1/2, b = c = d = 1/4
        let a = rat(1, 2);
        let q = rat(1, 4);
        let base = HyperTerm::new(
            int(1),
            int(1),
            vec![
                PochFactor::new(a.clone(), 1, 1),
                PochFactor::new(int(1) + &a / int(2), 1, 1),
                PochFactor::new(q.clone(), 1, 3),
                PochFactor::new(int(1), 1, -1),
                PochFactor::new(&a / int(2), 1, -1),
                PochFactor::new(int(1) + &a - &q, 1, -3),
            ],
        );
        let spec = SeriesSpec::new(base, WeightExpr::one(), ConvergenceClass::AlgebraicSlow);
        let ctx = PrecisionContext::new(30);
        let r = spec.sum(&ctx, 30, None).unwrap();
        assert_eq!(r.value.to_decimal(30), "1.02967959373171800359168503617");
        assert_eq!(r.method, SumMethod::AsymptoticTail);
    }

    #[test]
    fn divergent_and_misclassified_series_are_rejected() {
        let harmonic = SeriesSpec::new(
            HyperTerm::new(
                int(1),
                int(1),
                vec![PochFactor::new(int(1), 1, 1), PochFactor::new(int(2), 1, -1)],
            ),
            WeightExpr::one(),
            ConvergenceClass::AlgebraicSlow,
        );
        let ctx = PrecisionContext::new(20);
        assert!(matches!(
            harmonic.sum(&ctx, 20, None),
            Err(Error::NonConvergence { .. })
        ));
        let wrong = SeriesSpec {
            class: ConvergenceClass::Geometric(rat(1, 4)),
            ..harmonic
        };
        assert!(matches!(
            wrong.sum(&ctx, 20, Some(500)),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn pole_in_denominator_is_reported() {
        let spec = SeriesSpec::new(
            HyperTerm::new(int(1), rat(1, 4), vec![PochFactor::new(int(-2), 1, -1)]),
            WeightExpr::one(),
            ConvergenceClass::Geometric(rat(1, 4)),
        );
        let ctx = PrecisionContext::new(20);
        assert!(matches!(spec.sum(&ctx, 20, None), Err(Error::Pole { index: 2, .. })));
    }
}
