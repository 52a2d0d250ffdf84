//! Generic checkers for the two-sided transformations and the well-poised
//! 5F4 summation.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Signed, Zero};

use crate::bigreal::PrecisionContext;
use crate::closed_form::ClosedForm;
use crate::error::{Error, Result};
use crate::exact::{int, Rational, RationalFunction, Var};
use crate::report::VerificationReport;
use crate::series::{ConvergenceClass, HyperTerm, PochFactor, SeriesSpec, SumResult, WeightExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Chu,
    Chu14,
    Dougall,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::Chu => "chu",
            TransformKind::Chu14 => "chu14",
            TransformKind::Dougall => "dougall",
        })
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chu" => Ok(TransformKind::Chu),
            "chu14" => Ok(TransformKind::Chu14),
            "dougall" => Ok(TransformKind::Dougall),
            _ => Err(Error::Parse {
                input: s.into(),
                message: "expected chu, chu14 or dougall".into(),
            }),
        }
    }
}

const ALPHA: &str = "(1+2a-b-c-d+2k)(a-e+k)/(1+2a-b-c-d-e+k)\
    +(e+k)(1+a-b-c+k)(1+a-b-d+k)/((1+a-b+2k)(1+2a-b-c-d-e+k))";

const DELTA: &str = "(1+2a-b-c-d+3k)(a-e+k)/(1+2a-b-c-d-e+2k)\
    +(e+k)(2+2a-b-d-e+3k)/((1+a-b+2k)(1+a-d+2k))\
    *(1+a-b-c+k)(1+a-b-d+2k)(1+a-c-d+k)/((1+2a-b-c-d-e+2k)(2+2a-b-c-d-e+2k))";

const CHU_ANCHOR: &str = r"\alpha_k(a,b,c,d,e)=";
const CHU14_ANCHOR: &str = r"\delta_k(a,b,c,d,e)=";
const DOUGALL_ANCHOR: &str = r"a,1+\frac{a}{2},b,c,d";

struct Params([Rational; 5]);

impl Params {
    fn a(&self) -> &Rational {
        &self.0[0]
    }

    fn bindings(&self) -> Vec<(Var, Rational)> {
        [Var::A, Var::B, Var::C, Var::D, Var::E]
            .into_iter()
            .zip(self.0.iter().cloned())
            .collect()
    }

    /// Evaluates a linear combination written in a..e, e.g. `1+a-b-c`.
    fn lin(&self, text: &str) -> Rational {
        let rf = RationalFunction::parse(text).expect("parameter expressions parse");
        rf.eval(&self.bindings()).expect("linear forms have no poles")
    }

    fn weight(&self, text: &str) -> Result<WeightExpr> {
        let mut rf = RationalFunction::parse(text)?;
        for (v, x) in self.bindings() {
            rf = rf.substitute(v, &x)?;
        }
        Ok(WeightExpr::rf(rf))
    }

    fn factors(&self, spec: &[(&str, u32, i32)]) -> Vec<PochFactor> {
        spec.iter()
            .map(|(t, m, p)| PochFactor::new(self.lin(t), *m, *p))
            .collect()
    }
}

fn require_positive(what: &str, x: Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonConvergence {
            terms: 0,
            detail: format!("convergence condition {what} > 0 fails: it equals {x}"),
        })
    }
}

/// `(a+2k)` is carried as `a (1+a/2)_k / (a/2)_k`.
fn nonzero_a(p: &Params) -> Result<()> {
    if p.a().is_zero() {
        return Err(Error::Domain("a = 0 makes (1+a/2)_k/(a/2)_k singular".into()));
    }
    Ok(())
}

/// `sum (a+2k) (b)_k (c)_k (d)_k (e)_k / ((1+a-b)_k ... (1+a-e)_k)`.
fn well_poised_side(p: &Params) -> Result<SeriesSpec> {
    nonzero_a(p)?;
    let base = HyperTerm::new(
        p.a().clone(),
        int(1),
        p.factors(&[
            ("1+a/2", 1, 1),
            ("b", 1, 1),
            ("c", 1, 1),
            ("d", 1, 1),
            ("e", 1, 1),
            ("a/2", 1, -1),
            ("1+a-b", 1, -1),
            ("1+a-c", 1, -1),
            ("1+a-d", 1, -1),
            ("1+a-e", 1, -1),
        ]),
    );
    Ok(SeriesSpec::new(
        base,
        WeightExpr::one(),
        ConvergenceClass::AlgebraicSlow,
    ))
}

fn chu_side(p: &Params) -> Result<SeriesSpec> {
    let base = HyperTerm::new(
        int(1),
        int(-1),
        p.factors(&[
            ("c", 1, 1),
            ("d", 1, 1),
            ("e", 1, 1),
            ("1+a-b-c", 1, 1),
            ("1+a-b-d", 1, 1),
            ("1+a-b-e", 1, 1),
            ("1+a-c", 1, -1),
            ("1+a-d", 1, -1),
            ("1+a-e", 1, -1),
            ("1+2a-b-c-d-e", 1, -1),
            ("1+a-b", 2, -1),
        ]),
    );
    let class = geometric_or_fail(&base)?;
    Ok(SeriesSpec::new(base, p.weight(ALPHA)?, class))
}

fn chu14_side(p: &Params) -> Result<SeriesSpec> {
    let base = HyperTerm::new(
        int(1),
        int(1),
        p.factors(&[
            ("c", 1, 1),
            ("e", 1, 1),
            ("1+a-b-c", 1, 1),
            ("1+a-b-e", 1, 1),
            ("1+a-c-d", 1, 1),
            ("1+a-d-e", 1, 1),
            ("1+a-b-d", 2, 1),
            ("1+a-b", 2, -1),
            ("1+a-d", 2, -1),
            ("1+2a-b-c-d-e", 2, -1),
            ("1+a-c", 1, -1),
            ("1+a-e", 1, -1),
        ]),
    );
    let class = geometric_or_fail(&base)?;
    Ok(SeriesSpec::new(base, p.weight(DELTA)?, class))
}

fn geometric_or_fail(base: &HyperTerm) -> Result<ConvergenceClass> {
    match base.ratio_limit() {
        Some(r) if r < Rational::one() => Ok(ConvergenceClass::Geometric(r)),
        r => Err(Error::NonConvergence {
            terms: 0,
            detail: format!("term ratio tends to {r:?}, not below 1"),
        }),
    }
}

fn dougall_sides(p: &Params) -> Result<(SeriesSpec, ClosedForm)> {
    nonzero_a(p)?;
    let base = HyperTerm::new(
        int(1),
        int(1),
        p.factors(&[
            ("a", 1, 1),
            ("1+a/2", 1, 1),
            ("b", 1, 1),
            ("c", 1, 1),
            ("d", 1, 1),
            ("1", 1, -1),
            ("a/2", 1, -1),
            ("1+a-b", 1, -1),
            ("1+a-c", 1, -1),
            ("1+a-d", 1, -1),
        ]),
    );
    let weight = WeightExpr::one();
    let mut rhs = ClosedForm::int(1);
    for (t, e) in [
        ("1+a-b", 1),
        ("1+a-c", 1),
        ("1+a-d", 1),
        ("1+a-b-c-d", 1),
        ("1+a", -1),
        ("1+a-b-c", -1),
        ("1+a-b-d", -1),
        ("1+a-c-d", -1),
    ] {
        let x = p.lin(t);
        if !x.is_positive() {
            return Err(Error::Domain(format!("Γ({t}) has non-positive argument {x}")));
        }
        let g = ClosedForm::gamma(x);
        rhs = if e == 1 { rhs * g } else { rhs / g };
    }
    Ok((SeriesSpec::new(base, weight, ConvergenceClass::AlgebraicSlow), rhs))
}

fn sum_side(spec: &SeriesSpec, side: &str, ctx: &PrecisionContext, digits: u32) -> Result<SumResult> {
    spec.sum(ctx, digits, None)
        .map_err(|e| e.context(format!("{side} side")))
}

/// Sums both sides of a transformation (or the 5F4 side against its
/// Gamma product) and compares them. `e` is ignored for `Dougall`.
#[allow(clippy::too_many_arguments)]
pub fn verify_transformation(
    kind: TransformKind,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
    ctx: &PrecisionContext,
    digits: u32,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let ctx = ctx.at_least(digits);
    let p = Params([a.clone(), b.clone(), c.clone(), d.clone(), e.clone()]);
    let id = match kind {
        TransformKind::Dougall => format!("dougall({a},{b},{c},{d})"),
        _ => format!("{kind}({a},{b},{c},{d},{e})"),
    };
    let (anchor, lhs, rhs, terms, method) = match kind {
        TransformKind::Chu | TransformKind::Chu14 => {
            require_positive("1+2a-b-c-d-e", p.lin("1+2a-b-c-d-e"))?;
            let (left, anchor) = if kind == TransformKind::Chu {
                (chu_side(&p)?, CHU_ANCHOR)
            } else {
                (chu14_side(&p)?, CHU14_ANCHOR)
            };
            let l = sum_side(&left, "left", &ctx, digits)?;
            let r = sum_side(&well_poised_side(&p)?, "right", &ctx, digits)?;
            let method = format!("{}+{}", l.method, r.method);
            (anchor, l.value, r.value, l.terms_used + r.terms_used, method)
        }
        TransformKind::Dougall => {
            require_positive("1+a-b-c-d", p.lin("1+a-b-c-d"))?;
            let (series, gamma) = dougall_sides(&p)?;
            let l = sum_side(&series, "5F4", &ctx, digits)?;
            let r = gamma.eval(&ctx)?;
            (DOUGALL_ANCHOR, l.value, r, l.terms_used, l.method.to_string())
        }
    };
    Ok(VerificationReport::compare(
        id,
        anchor,
        digits,
        ctx.target_digits,
        &lhs,
        &rhs,
        terms,
        method,
        started.elapsed(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn h() -> Rational {
        rat(1, 2)
    }

    #[test]
    fn dougall_quarter_point() {
        let ctx = PrecisionContext::new(30);
        let q = rat(1, 4);
        let r = verify_transformation(TransformKind::Dougall, &h(), &q, &q, &q, &int(0), &ctx, 30).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.rhs.starts_with("1.02967959373171800359168503617"), "{}", r.rhs);
    }

    #[test]
    fn chu_sides_agree() {
        let ctx = PrecisionContext::new(30);
        for kind in [TransformKind::Chu, TransformKind::Chu14] {
            let r = verify_transformation(kind, &h(), &h(), &h(), &h(), &rat(1, 3), &ctx, 30).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.lhs.starts_with("0.89644078877676286423277090003"), "{}", r.lhs);
        }
    }

    #[test]
    fn condition_is_checked() {
        let ctx = PrecisionContext::new(20);
        let err =
            verify_transformation(TransformKind::Chu, &h(), &int(1), &int(1), &int(1), &int(1), &ctx, 20).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }), "{err}");
        let err = verify_transformation(TransformKind::Dougall, &h(), &h(), &h(), &h(), &int(0), &ctx, 20).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }), "{err}");
    }

    #[test]
    fn kind_parses() {
        assert_eq!("chu14".parse::<TransformKind>().unwrap(), TransformKind::Chu14);
        assert!("x".parse::<TransformKind>().is_err());
    }
}
