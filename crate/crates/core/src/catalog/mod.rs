//! The identity inventory: fixed series with closed-form right-hand sides,
//! one-parameter hypergeometric families, and the checks built on them.

mod combos;
mod families;
mod transform;

use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use combos::combination_check;
pub use families::{
    central_difference_check, derivative_identity, verify_derivative, verify_derivative_link, verify_param,
    verify_specialization, DerivativeIdentity, GammaProduct, Link, ParamFamily, ParamPoch, PrintedDerivative,
};
pub use transform::{verify_transformation, TransformKind};

use crate::bigreal::PrecisionContext;
use crate::closed_form::ClosedForm;
use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::report::VerificationReport;
use crate::series::{Basis, ConvergenceClass, HyperTerm, PochFactor, SeriesSpec, WeightExpr};

/// One fixed identity `sum_k t_k w_k = rhs`.
#[derive(Debug, Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub anchor: &'static str,
    pub weight_text: &'static str,
    pub lhs: SeriesSpec,
    pub rhs: ClosedForm,
    /// The right-hand side as printed in digamma form, where one exists.
    pub psi_rhs: Option<ClosedForm>,
    pub note: &'static str,
}

pub struct Catalog {
    pub records: Vec<IdentityRecord>,
    pub families: Vec<ParamFamily>,
}

impl Catalog {
    pub fn record(&self, id: &str) -> Result<&IdentityRecord> {
        self.records
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn family(&self, id: &str) -> Result<&ParamFamily> {
        self.families
            .iter()
            .find(|f| f.id == id)
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog {
        records: records(),
        families: families::families(),
    })
}

pub(crate) fn poch(arg: Rational, power: i32) -> PochFactor {
    PochFactor::new(arg, 1, power)
}

/// `(1/2)_k^3 / (1)_k^3 * z^k`.
pub(crate) fn half_cubed(z: Rational) -> HyperTerm {
    HyperTerm::new(int(1), z, vec![poch(rat(1, 2), 3), poch(int(1), -3)])
}

/// `(1/2)_k (1/4)_k (3/4)_k / ((-4)^k (1)_k^3)`.
pub(crate) fn quarter_base() -> HyperTerm {
    HyperTerm::new(
        int(1),
        rat(-1, 4),
        vec![
            poch(rat(1, 2), 1),
            poch(rat(1, 4), 1),
            poch(rat(3, 4), 1),
            poch(int(1), -3),
        ],
    )
}

/// `(1/2)_k^3 (1/4)_k (3/4)_k / (16^k (1)_k^5)`.
pub(crate) fn sixteen_base() -> HyperTerm {
    HyperTerm::new(
        int(1),
        rat(1, 16),
        vec![
            poch(rat(1, 2), 3),
            poch(rat(1, 4), 1),
            poch(rat(3, 4), 1),
            poch(int(1), -5),
        ],
    )
}

fn c_log2_over_pi(n: i64, d: i64) -> ClosedForm {
    ClosedForm::scaled(rat(n, d), ClosedForm::log2()) / ClosedForm::pi()
}

fn c_over_pi(n: i64) -> ClosedForm {
    ClosedForm::int(n) / ClosedForm::pi()
}

fn psi(n: i64, d: i64) -> ClosedForm {
    ClosedForm::Digamma(rat(n, d))
}

struct Row {
    id: &'static str,
    anchor: &'static str,
    base: HyperTerm,
    weight: &'static str,
    class: ConvergenceClass,
    start: u64,
    rhs: ClosedForm,
    psi_rhs: Option<ClosedForm>,
    note: &'static str,
}

fn build(row: Row) -> IdentityRecord {
    let weight = WeightExpr::parse(row.weight, &[]).expect("catalog weights parse");
    IdentityRecord {
        id: row.id,
        anchor: row.anchor,
        weight_text: row.weight,
        lhs: SeriesSpec::new(row.base, weight, row.class).starting_at(row.start),
        rhs: row.rhs,
        psi_rhs: row.psi_rhs,
        note: row.note,
    }
}

fn records() -> Vec<IdentityRecord> {
    use ConvergenceClass::{AlternatingSlow as Alt, Geometric as Geo};
    let q = || Geo(rat(1, 4));
    let sixteenth = || Geo(rat(1, 16));
    let row = |id, anchor, base, weight, class, rhs| Row {
        id,
        anchor,
        base,
        weight,
        class,
        start: 0,
        rhs,
        psi_rhs: None,
        note: "printed",
    };
    let rows = vec![
        row(
            "ra1",
            r"(4k+1)=\frac{2}{\pi}",
            half_cubed(int(-1)),
            "4k+1",
            Alt,
            c_over_pi(2),
        ),
        row(
            "ra2",
            r"(6k+1)=\frac{4}{\pi}",
            half_cubed(rat(1, 4)),
            "6k+1",
            q(),
            c_over_pi(4),
        ),
        row(
            "ra3",
            r"(20k+3)=\frac{8}{\pi}",
            quarter_base(),
            "20k+3",
            q(),
            c_over_pi(8),
        ),
        row(
            "ra4",
            r"(42k+5)=\frac{16}{\pi}",
            half_cubed(rat(1, 64)),
            "42k+5",
            Geo(rat(1, 64)),
            c_over_pi(16),
        ),
        row(
            "guillera32",
            r"\big\{3(4k+1)H_{k}-2\big\}=-\frac{12\log2}{\pi}",
            half_cubed(int(-1)),
            "3(4k+1)H[k]-2",
            Alt,
            c_log2_over_pi(-12, 1),
        ),
        row(
            "wei",
            r"(120k^2+34k+3)(H_{2k}-2H_k)+68k+9",
            sixteen_base(),
            "(120k^2+34k+3)(H[2k]-2H[k])+68k+9",
            sixteenth(),
            ClosedForm::int(128) * ClosedForm::log2() / ClosedForm::pi().powi(2),
        ),
        Row {
            note: "companion 32/π² series; the specialization target of th6.1 and th6.11",
            ..row(
                "guillera-pi2",
                r"(120k^2+34k+3)",
                sixteen_base(),
                "120k^2+34k+3",
                sixteenth(),
                ClosedForm::int(32) / ClosedForm::pi().powi(2),
            )
        },
        row(
            "thm-(5)",
            r"(4k+1)H_{2k}",
            half_cubed(int(-1)),
            "(4k+1)H[2k]",
            Alt,
            c_log2_over_pi(-2, 1),
        ),
        row(
            "thm-(1)",
            r"(6k+1)H_k-2",
            half_cubed(rat(1, 4)),
            "(6k+1)H[k]-2",
            q(),
            c_log2_over_pi(-8, 1),
        ),
        row(
            "thm-(2)",
            r"(6k+1)H_{2k}-1",
            half_cubed(rat(1, 4)),
            "(6k+1)H[2k]-1",
            q(),
            c_log2_over_pi(-8, 3),
        ),
        row(
            "thm-(3)",
            r"(20k+3)(H_{2k}-3H_k)+12",
            quarter_base(),
            "(20k+3)(H[2k]-3H[k])+12",
            q(),
            c_log2_over_pi(56, 1),
        ),
        row(
            "thm-(H1)",
            r"(20k+3)(2H_{4k}-H_{2k}+H_k)-2",
            quarter_base(),
            "(20k+3)(2H[4k]-H[2k]+H[k])-2",
            q(),
            c_log2_over_pi(-16, 1),
        ),
        row(
            "thm-(4)",
            r"(42k+5)(H_{2k}-H_k)+7",
            half_cubed(rat(1, 64)),
            "(42k+5)(H[2k]-H[k])+7",
            Geo(rat(1, 64)),
            c_log2_over_pi(32, 1),
        ),
        Row {
            start: 1,
            ..row(
                "thm-(2H)",
                r"23H_{2k}^{(2)}-7H_k^{(2)}",
                sixteen_base(),
                "(120k^2+34k+3)(23H2[2k]-7H2[k])+24",
                sixteenth(),
                ClosedForm::rat(rat(16, 3)),
            )
        },
        row(
            "gid1",
            r"(6k+1)(H_{2k}-H_k)+1",
            half_cubed(rat(1, 4)),
            "(6k+1)(H[2k]-H[k])+1",
            q(),
            c_log2_over_pi(16, 3),
        ),
        row(
            "aux-(2b4)",
            r"(6k+1)(3H_{2k}-2H_k)+1",
            half_cubed(rat(1, 4)),
            "(6k+1)(3H[2k]-2H[k])+1",
            q(),
            c_log2_over_pi(8, 1),
        ),
        Row {
            psi_rhs: Some(c_over_pi(8) * (psi(1, 4) + psi(3, 4) - ClosedForm::int(2) * psi(1, 1))),
            note: "right-hand side reduced with the digamma table",
            ..row(
                "aux-(3b3)",
                r"(20k+3)(H_{2k}+2H_k-4H_{4k})-14+\frac{1}{2k+1}",
                quarter_base(),
                "(20k+3)(H[2k]+2H[k]-4H[4k])-14+1/(2k+1)",
                q(),
                c_log2_over_pi(-48, 1),
            )
        },
        Row {
            psi_rhs: Some(c_over_pi(4) * (psi(1, 4) + psi(3, 4) - ClosedForm::int(2) * psi(1, 1))),
            note: "right-hand side reduced with the digamma table",
            ..row(
                "aux-(4c3)",
                r"(20k+3)H_k-6+\frac{1}{2k+1}",
                quarter_base(),
                "(20k+3)H[k]-6+1/(2k+1)",
                q(),
                c_log2_over_pi(-24, 1),
            )
        },
        Row {
            psi_rhs: Some(c_over_pi(8) * (psi(1, 2) + psi(3, 4) - psi(5, 4) - psi(1, 1))),
            note: "right-hand side reduced with the digamma table and ψ(5/4) = ψ(1/4) + 4",
            ..row(
                "aux-(5d3)",
                r"(20k+3)\big(2H_{k}(-\tfrac{3}{4})-H_k(-\tfrac{1}{4})+H_k-4\big)+8",
                quarter_base(),
                "(20k+3)(2H[k](-3/4)-H[k](-1/4)+H[k]-4)+8",
                q(),
                ClosedForm::int(8) - c_over_pi(32) - c_log2_over_pi(16, 1),
            )
        },
        Row {
            psi_rhs: Some(c_over_pi(8) * (psi(1, 4) + psi(1, 2) - psi(3, 4) - psi(1, 1))),
            note: "right-hand side reduced with the digamma table",
            ..row(
                "aux-(6e3)",
                r"(20k+3)\big(2H_{k}(-\tfrac{1}{4})-H_k(-\tfrac{3}{4})+H_k\big)-12",
                quarter_base(),
                "(20k+3)(2H[k](-1/4)-H[k](-3/4)+H[k])-12",
                q(),
                ClosedForm::int(-8) - c_log2_over_pi(16, 1),
            )
        },
        row(
            "aux-(th6.4)",
            r"(120k^2+34k+3)\big(7H_{2k}^{(2)}-2H_k^{(2)}\big)+18-\frac{9}{2k+1}",
            sixteen_base(),
            "(120k^2+34k+3)(7H2[2k]-2H2[k])+18-9/(2k+1)",
            sixteenth(),
            ClosedForm::rat(rat(32, 3)),
        ),
        row(
            "aux-(th6.33)",
            r"(120k^2+34k+3)\big(12H_{2k}^{(2)}-4H_k^{(2)}\big)-16+\frac{24}{2k+1}",
            sixteen_base(),
            "(120k^2+34k+3)(12H2[2k]-4H2[k])-16+24/(2k+1)",
            sixteenth(),
            ClosedForm::rat(rat(32, 3)),
        ),
    ];
    rows.into_iter().map(build).collect()
}

/// Verifies a fixed record by id.
pub fn verify(id: &str, ctx: &PrecisionContext, digits: u32) -> Result<VerificationReport> {
    verify_record(catalog().record(id)?, ctx, digits, None)
}

pub fn verify_record(
    rec: &IdentityRecord,
    ctx: &PrecisionContext,
    digits: u32,
    max_terms: Option<usize>,
) -> Result<VerificationReport> {
    verify_series(rec.id, rec.anchor, &rec.lhs, &rec.rhs, ctx, digits, max_terms)
}

pub(crate) fn verify_series(
    id: &str,
    anchor: &str,
    lhs: &SeriesSpec,
    rhs: &ClosedForm,
    ctx: &PrecisionContext,
    digits: u32,
    max_terms: Option<usize>,
) -> Result<VerificationReport> {
    let ctx = ctx.at_least(digits);
    let start = Instant::now();
    let sum = lhs
        .sum(&ctx, digits, max_terms)
        .map_err(|e| e.context(format!("left-hand side of {id}")))?;
    let rhs = rhs
        .eval(&ctx)
        .map_err(|e| e.context(format!("right-hand side of {id}")))?;
    Ok(VerificationReport::compare(
        id,
        anchor,
        digits,
        ctx.target_digits,
        &sum.value,
        &rhs,
        sum.terms_used,
        sum.method.to_string(),
        start.elapsed(),
    ))
}

/// Copies of the weight with 1 added to the coefficient of each basis
/// element in turn (negative controls).
pub fn perturbed_weights(rec: &IdentityRecord) -> Vec<(String, WeightExpr)> {
    let mut bases: Vec<Basis> = rec.lhs.weight.terms().map(|(b, _)| b.clone()).collect();
    if !bases.contains(&Basis::One) {
        bases.push(Basis::One);
    }
    bases
        .into_iter()
        .map(|b| {
            let bump = match &b {
                Basis::One => WeightExpr::one(),
                Basis::H(r) => WeightExpr::harmonic(r.clone()),
            };
            (b.to_string(), &rec.lhs.weight + &bump)
        })
        .collect()
}

/// Self-describing catalog entry, as emitted by `list --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDescription {
    pub id: String,
    pub kind: String,
    pub anchor: String,
    pub base: String,
    pub weight: String,
    pub rhs: String,
    pub start_index: u64,
    pub convergence: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
}

/// The `list --json` document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Listing {
    pub version: String,
    pub entries: Vec<EntryDescription>,
}

pub fn listing() -> Listing {
    Listing {
        version: crate::report::SCHEMA_VERSION.into(),
        entries: describe(),
    }
}

fn class_text(c: &ConvergenceClass) -> String {
    match c {
        ConvergenceClass::Geometric(r) => format!("geometric({r})"),
        ConvergenceClass::AlternatingSlow => "alternating_slow".into(),
        ConvergenceClass::AlgebraicSlow => "algebraic_slow".into(),
    }
}

pub fn describe() -> Vec<EntryDescription> {
    let cat = catalog();
    let fixed = cat.records.iter().map(|r| EntryDescription {
        id: r.id.into(),
        kind: "fixed".into(),
        anchor: r.anchor.into(),
        base: r.lhs.base.to_string(),
        weight: r.weight_text.into(),
        rhs: r.rhs.to_string(),
        start_index: r.lhs.start_index,
        convergence: class_text(&r.lhs.class),
        parameter: None,
    });
    let fams = cat.families.iter().map(|f| EntryDescription {
        id: f.id.into(),
        kind: "family".into(),
        anchor: f.anchor.into(),
        base: f.base_text(),
        weight: f.weight_text.into(),
        rhs: f.rhs_text(),
        start_index: 0,
        convergence: class_text(&f.class()),
        parameter: Some(format!("{} in ({}, {})", f.var, f.domain.0, f.domain.1)),
    });
    fixed.chain(fams).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::agree_digits;
    use crate::exact::HarmonicState;
    use crate::series::term_at;

    #[test]
    fn inventory() {
        let cat = catalog();
        assert!(cat.records.len() >= 20);
        assert_eq!(cat.records.len(), 22);
        assert_eq!(cat.families.len(), 9);
        let ra3 = cat.record("ra3").unwrap();
        assert_eq!(ra3.rhs.to_string(), "8/π");
        assert_eq!(cat.record("thm-(2H)").unwrap().lhs.start_index, 1);
        assert!(matches!(cat.record("nope"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn ids_are_unique() {
        let d = describe();
        let mut ids: Vec<_> = d.iter().map(|e| e.id.clone()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), d.len());
    }

    #[test]
    fn first_terms() {
        let cat = catalog();
        let at0 = |id: &str| {
            let spec = &cat.record(id).unwrap().lhs;
            term_at(spec, 0, &HarmonicState::new(spec.weight.harmonic_refs())).unwrap()
        };
        assert_eq!(at0("thm-(1)"), int(-2));
        assert_eq!(at0("aux-(th6.4)"), int(9));
        assert_eq!(at0("thm-(H1)"), int(-2));
        assert_eq!(at0("thm-(2H)"), int(24));
    }

    #[test]
    fn thm1_at_fifty_digits() {
        let ctx = PrecisionContext::new(50);
        let r = verify("thm-(1)", &ctx, 50).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.lhs.starts_with("-1.76508480122"));
    }

    #[test]
    fn derived_right_hand_sides_match_digamma_forms() {
        let ctx = PrecisionContext::new(40);
        for rec in catalog().records.iter().filter(|r| r.psi_rhs.is_some()) {
            let a = rec.rhs.eval(&ctx).unwrap();
            let b = rec.psi_rhs.as_ref().unwrap().eval(&ctx).unwrap();
            assert!(agree_digits(&a, &b, 40) >= 40, "{}", rec.id);
        }
    }

    #[test]
    fn perturbation_breaks_verification() {
        let ctx = PrecisionContext::new(20);
        let rec = catalog().record("thm-(3)").unwrap();
        for (what, w) in perturbed_weights(rec) {
            let spec = rec.lhs.with_weight(w);
            let r = verify_series(rec.id, rec.anchor, &spec, &rec.rhs, &ctx, 20, None).unwrap();
            assert!(!r.pass, "perturbing {what} went unnoticed");
        }
    }
}
