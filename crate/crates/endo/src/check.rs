use num_bigint::BigInt;
use permrep_extension::{extendible, Extendibility, DEFAULT_BUDGET};
use permrep_maps::RuleInjection;
use serde::Serialize;

use crate::table::rep_of_spec;
use crate::{compile, endo_spec, endo_table, EndoError, EndoSpec, MonomialExpr, Refutation};

#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub holds: bool,
    /// an index where the two sides differ
    pub witness: Option<BigInt>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub candidate: String,
    /// set when the candidate is not even a permutation of the basis
    pub compile_error: Option<String>,
    pub bijective: bool,
    /// Ũ S̃₂ = S̃₁
    pub first: Option<Relation>,
    /// S̃₂ Ũ = Ũ S̃₁
    pub second: Option<Relation>,
    pub passed: bool,
}

fn relation(lhs: &RuleInjection, rhs: &RuleInjection, window: u64) -> Result<Relation, EndoError> {
    if lhs.equals(rhs)? {
        return Ok(Relation { holds: true, witness: None });
    }
    let witness = match lhs.first_difference(rhs)? {
        Some(w) => Some(w),
        None => {
            let h = (window / 2) as i64;
            (-h..h).map(BigInt::from).find(|n| lhs.try_apply(n) != rhs.try_apply(n))
        }
    };
    Ok(Relation { holds: false, witness })
}

/// Exact check of the Q₂ relations for Ũ = compile(candidate) against the
/// images of s₁, s₂ under the named endomorphism.
pub fn check_candidate_u(candidate: &MonomialExpr, name: &str, window: u64) -> Result<CandidateReport, EndoError> {
    check_against(candidate, endo_spec(name)?, window)
}

fn check_against(candidate: &MonomialExpr, spec: &EndoSpec, window: u64) -> Result<CandidateReport, EndoError> {
    let s1 = compile(&spec.image(1)?)?;
    let s2 = compile(&spec.image(2)?)?;
    let mut report = CandidateReport {
        candidate: candidate.to_string(),
        compile_error: None,
        bijective: false,
        first: None,
        second: None,
        passed: false,
    };
    let u = match compile(candidate) {
        Ok(u) => u,
        Err(e) => {
            report.compile_error = Some(e.to_string());
            return Ok(report);
        }
    };
    report.bijective = u.validate().bijective;
    let first = relation(&u.compose(&s2)?, &s1, window)?;
    let second = relation(&s2.compose(&u)?, &u.compose(&s1)?, window)?;
    report.passed = report.bijective && first.holds && second.holds;
    report.first = Some(first);
    report.second = Some(second);
    Ok(report)
}

/// Which kind of fact settles a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictLevel {
    /// the orbit criterion fails for the representation: No, decided
    RepObstructed,
    /// the table's ρ(u) satisfies the relations: Yes, decided
    CandidateVerified,
    /// rep-level extendible and the natural candidate fails; the rest is analytic
    CandidateRefuted,
    /// rep-level extendible; only the table's word
    TableAsserted,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub name: &'static str,
    pub rep_extendible: Option<bool>,
    pub rep_detail: String,
    pub table_extendible: bool,
    pub refutation: Option<Refutation>,
    pub candidate: Option<CandidateReport>,
    pub refuted_candidate: Option<CandidateReport>,
    pub level: VerdictLevel,
    pub note: Option<String>,
    /// nothing checkable contradicts the table
    pub agrees: bool,
}

pub const MEMBERSHIP_NOTE: &str = "algebra-membership obstruction (out of scope to decide)";

pub fn row_report(spec: &EndoSpec, window: u64) -> Result<RowReport, EndoError> {
    let sys = rep_of_spec(spec)?;
    let (rep_extendible, rep_detail) = match extendible(&sys, DEFAULT_BUDGET) {
        Extendibility::Extendible { count, .. } => (Some(true), format!("extendible ({count:?} extensions)")),
        Extendibility::NotExtendible { mismatch_length, .. } => {
            (Some(false), format!("cores differ in the number of {mismatch_length}-cycles"))
        }
        Extendibility::Inconclusive(why) => (None, why),
    };
    let candidate = spec.u_formula()?.map(|u| check_against(&u, spec, window)).transpose()?;
    let refuted_candidate =
        spec.refuted_candidate.map(|c| check_against(&MonomialExpr::parse(c)?, spec, window)).transpose()?;
    let (level, agrees) = match (rep_extendible, &candidate, &refuted_candidate) {
        (Some(false), _, _) => (VerdictLevel::RepObstructed, !spec.extendible),
        (_, Some(c), _) => (VerdictLevel::CandidateVerified, c.passed && spec.extendible),
        (_, None, Some(c)) => (VerdictLevel::CandidateRefuted, !c.passed && !spec.extendible),
        _ => (VerdictLevel::TableAsserted, !spec.extendible),
    };
    let note = (rep_extendible == Some(true) && !spec.extendible).then(|| MEMBERSHIP_NOTE.to_string());
    Ok(RowReport {
        name: spec.name,
        rep_extendible,
        rep_detail,
        table_extendible: spec.extendible,
        refutation: spec.refutation,
        candidate,
        refuted_candidate,
        level,
        note,
        agrees,
    })
}

/// One report per table row.
pub fn endo_table_report(window: u64) -> Result<Vec<RowReport>, EndoError> {
    endo_table().iter().map(|s| row_report(s, window)).collect()
}
