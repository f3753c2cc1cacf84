use permrep_branching::{validate_branching, BranchingSystem};
use permrep_extension::Q2System;
use serde::Serialize;

use crate::{compile, EndoError, MonomialExpr};

/// How a "No" entry of the table is justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Refutation {
    /// point spectra of the two isometries differ
    Spectral,
    /// Ũ would have to lie outside the algebra
    Analytic,
}

/// One quadratic permutation endomorphism ρ_σ.
#[derive(Clone, Debug, Serialize)]
pub struct EndoSpec {
    pub name: &'static str,
    pub s1: &'static str,
    pub s2: &'static str,
    pub extendible: bool,
    /// ρ_σ(u) where the table gives it
    pub u: Option<&'static str>,
    pub refutation: Option<Refutation>,
    /// a candidate for ρ_σ(u) known to break the relations
    pub refuted_candidate: Option<&'static str>,
}

impl EndoSpec {
    pub fn image(&self, i: u8) -> Result<MonomialExpr, EndoError> {
        MonomialExpr::parse(if i == 1 { self.s1 } else { self.s2 })
    }

    pub fn u_formula(&self) -> Result<Option<MonomialExpr>, EndoError> {
        self.u.map(MonomialExpr::parse).transpose()
    }
}

const fn row(
    name: &'static str,
    s1: &'static str,
    s2: &'static str,
    extendible: bool,
    u: Option<&'static str>,
    refutation: Option<Refutation>,
) -> EndoSpec {
    EndoSpec { name, s1, s2, extendible, u, refutation, refuted_candidate: None }
}

use Refutation::{Analytic, Spectral};

static TABLE: [EndoSpec; 24] = [
    row("id", "s1", "s2", true, Some("u"), None),
    EndoSpec { refuted_candidate: Some("f"), ..row("12", "s_{12,1}+s_{11,2}", "s2", false, None, Some(Analytic)) },
    row("13", "s_{21,1}+s_{12,2}", "s_{11,1}+s_{22,2}", false, None, Some(Spectral)),
    row("14", "s_{22,1}+s_{12,2}", "s_{21,1}+s_{11,2}", true, Some("u^{-2}"), None),
    row("23", "s_{11,1}+s_{21,2}", "s_{12,1}+s_{22,2}", true, Some("u^2"), None),
    row("24", "s_{11,1}+s_{22,2}", "s_{21,1}+s_{12,2}", false, None, Some(Spectral)),
    row("34", "s1", "s_{22,1}+s_{21,2}", false, None, Some(Analytic)),
    row("123", "s_{12,1}+s_{21,2}", "s_{11,1}+s_{22,2}", true, Some("u^2 s2s2* + u^{-2} s1s1*"), None),
    row("132", "s_{21,1}+s_{11,2}", "s_{12,1}+s_{22,2}", false, None, Some(Spectral)),
    row("124", "s_{12,1}+s_{22,2}", "s_{21,1}+s_{11,2}", false, None, Some(Spectral)),
    row("142", "s_{22,1}+s_{11,2}", "s_{21,1}+s_{12,2}", false, None, Some(Analytic)),
    EndoSpec {
        refuted_candidate: Some("u^2 s2s2* + u^{-2} s1s1*"),
        ..row("134", "s_{21,1}+s_{12,2}", "s_{22,1}+s_{11,2}", false, None, Some(Analytic))
    },
    row("143", "s_{22,1}+s_{12,2}", "s_{11,1}+s_{21,2}", false, None, Some(Spectral)),
    row("234", "s_{11,1}+s_{21,2}", "s_{22,1}+s_{12,2}", false, None, Some(Spectral)),
    row("243", "s_{11,1}+s_{22,2}", "s_{12,1}+s_{21,2}", true, Some("u^{-2} s2s2* + u^2 s1s1*"), None),
    row("1234", "s_{12,1}+s_{21,2}", "s_{22,1}+s_{11,2}", false, None, Some(Spectral)),
    row("1243", "s_{12,1}+s_{22,2}", "s_{11,1}+s_{21,2}", true, Some("u^{-2}"), None),
    row("1324", "s2", "s_{12,1}+s_{11,2}", false, None, Some(Analytic)),
    row("1342", "s_{21,1}+s_{11,2}", "s_{22,1}+s_{12,2}", true, Some("u^2"), None),
    row("1423", "s_{22,1}+s_{21,2}", "s1", false, None, Some(Analytic)),
    row("1432", "s_{22,1}+s_{11,2}", "s_{12,1}+s_{21,2}", false, None, Some(Spectral)),
    row("(12)(34)", "s_{12,1}+s_{11,2}", "s_{22,1}+s_{21,2}", true, Some("f u* f"), None),
    row("(13)(24)", "s2", "s1", true, Some("u*"), None),
    row("(14)(23)", "s_{22,1}+s_{21,2}", "s_{12,1}+s_{11,2}", true, Some("f u f"), None),
];

/// All 24 rows in table order.
pub fn endo_table() -> &'static [EndoSpec] {
    &TABLE
}

/// Row by subscript: "23", "rho23", "ρ1243", "(12)(34)", "id".
pub fn endo_spec(name: &str) -> Result<&'static EndoSpec, EndoError> {
    let key = name.trim();
    let key = key.strip_prefix("rho").or_else(|| key.strip_prefix('ρ')).unwrap_or(key);
    let key = key.trim_start_matches('_');
    let key = match key {
        "" | "1" | "c" => "id",
        "f" | "lambda_f" => "(13)(24)",
        k => k,
    };
    TABLE.iter().find(|r| r.name == key).ok_or_else(|| EndoError::UnknownRow(name.to_string()))
}

/// Branching system of ρ_c∘ρ_σ on ℤ.
pub fn rep_of_endo(name: &str) -> Result<BranchingSystem, EndoError> {
    let spec = endo_spec(name)?;
    rep_of_spec(spec)
}

pub(crate) fn rep_of_spec(spec: &EndoSpec) -> Result<BranchingSystem, EndoError> {
    let sys = BranchingSystem::new(compile(&spec.image(1)?)?, compile(&spec.image(2)?)?)?;
    let report = validate_branching(&sys);
    if !report.valid {
        return Err(EndoError::NotPermutative(report.witness().unwrap_or_default()));
    }
    Ok(sys)
}

/// The extension of ρ_c∘ρ_σ given by the table's ρ_σ(u).
pub fn q2_of_endo(name: &str) -> Result<Q2System, EndoError> {
    let spec = endo_spec(name)?;
    let u = spec.u_formula()?.ok_or_else(|| EndoError::NotPermutative(format!("row {} has no ρ(u)", spec.name)))?;
    let sigma2 = compile(&spec.image(2)?)?;
    Ok(Q2System::from_rules(sigma2, compile(&u)?)?)
}
