//! The full dimension run: obtain systems, then check every closed form
//! against them and bound the rank of `U`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactq::fraction_string;
use crate::grassmann::SchemeInstance;
use crate::steiner::certificate::{rank_certificate, saturate, RankCertificate};
use crate::steiner::design::{enumerate_steiner, verify, Design};
use crate::steiner::gram::{
    check_intersect_counts, dimension_formula, empirical_coefficients, gram_check, gram_matrix, incidence_matrix,
    mu_eigenvalue, spectral_check, GramCoefficients, IntersectCheck, SpectralReport,
};
use crate::steiner::params::{ParamSet, ParamSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acquisition {
    /// Every labeled system, by exhaustive exact cover.
    Enumerate,
    /// Seeded sampling in batches of `batch` until the rank saturates.
    Sample { seed: u64, batch: usize },
}

/// Checks that need the whole family of systems.
#[derive(Clone, Debug, Serialize)]
pub struct FullFamilyChecks {
    pub empirical: GramCoefficients,
    pub closed_form: GramCoefficients,
    pub constant_on_relations: bool,
    pub coefficients_match: bool,
    pub gram_check: bool,
    pub spectral: SpectralReport,
    pub mu: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub params: ParamSummary,
    pub mode: &'static str,
    pub seed: Option<u64>,
    pub designs: usize,
    pub all_valid: bool,
    pub full_family: Option<FullFamilyChecks>,
    pub intersections: IntersectCheck,
    pub certificate: RankCertificate,
    pub dimension: String,
    pub passed: bool,
}

fn full_family_checks(params: &ParamSet, designs: &[Design]) -> Result<FullFamilyChecks> {
    let scheme = SchemeInstance::new(params.n(), params.k(), params.field().clone())?;
    let n_designs = designs.len() as u64;
    let emp = empirical_coefficients(params, designs, &scheme)?;
    let closed_form = GramCoefficients::closed_form(n_designs, params);
    let coefficients_match = emp.coefficients == closed_form;
    let u = incidence_matrix(params, designs)?;
    let gram_ok = gram_check(&u, &closed_form, &scheme)?;
    let spectral = spectral_check(params, &gram_matrix(params, designs)?, &closed_form.kappa)?;
    let mu = (0..=params.k())
        .map(|r| mu_eigenvalue(params, r, &closed_form.kappa).map(|m| fraction_string(&m)))
        .collect::<Result<_>>()?;
    Ok(FullFamilyChecks {
        empirical: emp.coefficients,
        closed_form,
        constant_on_relations: emp.constant && emp.high_relations_zero,
        coefficients_match,
        gram_check: gram_ok,
        spectral,
        mu,
    })
}

/// Runs the pipeline. Inadmissible parameters and `n < 2k` are errors, as is
/// enumeration past its guards.
pub fn run_dimension(params: &ParamSet, how: Acquisition) -> Result<DimensionReport> {
    params.require_pipeline()?;
    let (designs, mode, seed) = match how {
        Acquisition::Enumerate => (enumerate_steiner(params)?, "enumerate", None),
        Acquisition::Sample { seed, batch } => {
            let target: usize = dimension_formula(params)
                .try_into()
                .map_err(|_| Error::GuardExceeded(format!("{params}: dimension does not fit in memory")))?;
            let run = saturate(params, seed, target, batch.max(1), 10)?;
            (run.independent, "sample", Some(seed))
        }
    };
    let all_valid = designs.iter().map(verify).collect::<Result<Vec<_>>>()?.iter().all(|v| v.valid);
    let full_family = match how {
        Acquisition::Enumerate => Some(full_family_checks(params, &designs)?),
        Acquisition::Sample { .. } => None,
    };
    let intersections = check_intersect_counts(params, &designs)?;
    let certificate = rank_certificate(params, &designs)?;
    let family_ok = full_family.as_ref().is_none_or(|f| {
        f.constant_on_relations && f.coefficients_match && f.gram_check && f.spectral.passed
    });
    let nonempty = !designs.is_empty() && !certificate.lower_bound.is_zero();
    Ok(DimensionReport {
        params: params.into(),
        mode,
        seed,
        designs: designs.len(),
        all_valid,
        full_family,
        intersections: intersections.clone(),
        passed: nonempty && all_valid && family_ok && intersections.passed && certificate.meets,
        certificate,
        dimension: dimension_formula(params).to_string(),
    })
}
