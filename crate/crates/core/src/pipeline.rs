//! Staged numerical walk through the argument that a real seminorm with the
//! square property is submultiplicative, plus a randomized counterexample
//! search.
//!
//! [`verify_theorem`] records a residual for every stage; [`derive_verdict`]
//! recomputes the verdict from those recorded values alone, so a report can
//! never claim `pass` while one of its numbers is out of tolerance.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{basis_vector, FiniteDimRealAlgebra, Quotient};
use crate::characters::{self, Character};
use crate::corpus;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::rng::{self, SampleRng};
use crate::seminorm::{self, AxiomCheck, SeminormSpec};
use crate::spectral;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchPolicy {
    /// Branch on whether the quotient has a unit.
    #[default]
    Natural,
    /// Take the non-unital branch even if the quotient is unital.
    ForceUnitization,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub sample_count: usize,
    pub seed: u64,
    pub tol: f64,
    pub restarts: usize,
    pub max_square_iterates: usize,
    pub gelfand_squarings: usize,
    pub branch_policy: BranchPolicy,
    /// The characters of the quotient are known to be exhaustive, so the
    /// sampled sup-norm must equal the quotient norm, not just bound it.
    pub known_complete_characters: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            sample_count: 2000,
            seed: 0,
            tol: 1e-9,
            restarts: 50,
            max_square_iterates: 10,
            gelfand_squarings: spectral::DEFAULT_SQUARINGS,
            branch_policy: BranchPolicy::Natural,
            known_complete_characters: false,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sample_count == 0 {
            return Err(Error::invalid("samples", "must be positive"));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::invalid("tol", "must lie in (0, 1)"));
        }
        if self.restarts == 0 {
            return Err(Error::invalid("restarts", "must be positive"));
        }
        if self.max_square_iterates == 0 || self.max_square_iterates > 60 {
            return Err(Error::invalid("max_square_iterates", "must lie in 1..=60"));
        }
        if self.gelfand_squarings == 0 {
            return Err(Error::invalid("gelfand_squarings", "must be positive"));
        }
        Ok(())
    }

    fn stage_seed(&self, stage: u64) -> u64 {
        self.seed ^ stage.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }

    /// Samples used by the quotient stages, which are costlier per point.
    fn quotient_samples(&self) -> usize {
        self.sample_count.clamp(1, 200)
    }
}

/// Per-stage limits, all derived from `tol`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub square_property: f64,
    pub seminorm_axioms: f64,
    pub ideal: f64,
    pub kernel_value: f64,
    pub well_defined: f64,
    pub quotient_norm_floor: f64,
    pub normed_algebra: f64,
    pub scaled_square: f64,
    /// Stage 6 limit at `n` is `iterate_per_power * 2^n`.
    pub iterate_per_power: f64,
    pub radius: f64,
    pub spectrum: f64,
    pub unitization: f64,
    pub final_ratio: f64,
    /// Human-readable multipliers relative to `tol`.
    pub multipliers: Vec<String>,
}

impl Tolerances {
    pub fn from_tol(tol: f64) -> Self {
        Tolerances {
            square_property: tol,
            seminorm_axioms: tol,
            ideal: 10.0 * tol,
            kernel_value: 1e3 * tol,
            well_defined: 0.1 * tol,
            quotient_norm_floor: tol,
            normed_algebra: tol,
            scaled_square: tol,
            iterate_per_power: 10.0 * tol,
            radius: 1e3 * tol,
            spectrum: 1e3 * tol,
            unitization: tol,
            final_ratio: tol,
            multipliers: vec![
                "square property, seminorm axioms, normed algebra, scaled square, unitization, final ratio: 1 x tol".into(),
                "ideal: 10 x tol (scaled by 1 + max|c_ijk|)".into(),
                "kernel values, radius identity, spectra, sup-norm: 1e3 x tol".into(),
                "coset well-definedness: 0.1 x tol".into(),
                "iterate relation at n: 10 x tol x 2^n".into(),
            ],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Unital,
    NonUnital,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop31Summary {
    pub samples: usize,
    pub invertible_samples: usize,
    /// Every invertible sample has all character values nonzero.
    pub forward_ok: bool,
    pub min_invertible_modulus: f64,
    pub max_inclusion_distance: f64,
    /// Only asserted when the character set is known to be complete.
    pub max_equality_distance: f64,
    pub vanishing_witnesses: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterStage {
    pub character_count: usize,
    pub characters: Vec<Character>,
    pub prop31: Prop31Summary,
    /// `max (sup_x |x(b)| - |b|) / (1 + |b|)`, clamped at 0.
    pub sup_norm_excess: f64,
    /// `max |sup_x |x(b)| - |b|| / (1 + |b|)`.
    pub sup_norm_gap: f64,
}

/// Checks on `B_1 = R e + B` with `N(b + l e) = ||b|| + |l|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitizationChecks {
    pub unit_norm: f64,
    /// (i) `max N(xy) / (N(x) N(y))`.
    pub submultiplicative_ratio: f64,
    /// (iii) `max |N(b) - ||b|||` over `b` in `B`.
    pub equivalence_residual: f64,
    /// (ii) `max N(x) / (m^3 r(x))` over samples with `r(x) > 0`.
    pub property_ii_max_ratio: f64,
    pub property_ii_samples: usize,
    /// Samples with `N(x) > m^3 r(x)`, zero-radius ones included.
    pub property_ii_violations: usize,
    pub property_ii_witness: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub seminorm: String,
    pub dim: usize,
    pub config: PipelineConfig,
    pub tolerances: Tolerances,
    // stage 1
    pub square_property_residual: f64,
    pub square_witness: Vec<f64>,
    pub seminorm_axioms: AxiomCheck,
    // stage 2
    pub m_hat: Option<f64>,
    pub m_hat_pair: Option<(Vec<f64>, Vec<f64>)>,
    // stage 3
    pub kernel_dim: Option<usize>,
    pub kernel_basis: Option<Vec<Vec<f64>>>,
    pub kernel_max_value: Option<f64>,
    pub ideal_residual: Option<f64>,
    pub ideal_check: Option<bool>,
    // stage 4
    pub quotient_dim: Option<usize>,
    pub quotient_norm_well_defined_residual: Option<f64>,
    pub quotient_norm_min: Option<f64>,
    // stage 5
    pub normed_algebra_excess: Option<f64>,
    pub scaled_norm_square_residual: Option<f64>,
    // stage 6
    pub iterate_relation_residuals: Vec<f64>,
    // stage 7
    pub radius_match_residual: Option<f64>,
    pub radius_nonconvergent: usize,
    pub spectral_radius_agreement: Option<f64>,
    // stage 8
    pub branch: Option<Branch>,
    pub character_count: Option<usize>,
    pub character_stage: Option<CharacterStage>,
    pub unitization_checks: Option<UnitizationChecks>,
    // stage 9
    pub final_submultiplicativity_ratio: Option<f64>,
    pub final_witness: Option<(Vec<f64>, Vec<f64>)>,

    pub stopped_at_stage: Option<u8>,
    pub stage_errors: Vec<String>,
    pub findings: Vec<String>,
    pub failed_checks: Vec<String>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// One recorded value compared against its limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub stage: u8,
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub ok: bool,
}

fn outcome(stage: u8, name: &str, value: f64, limit: f64) -> CheckOutcome {
    CheckOutcome {
        stage,
        name: name.to_string(),
        value,
        limit,
        // NaN compares false, so it never passes
        ok: value <= limit,
    }
}

fn bool_outcome(stage: u8, name: &str, ok: bool) -> CheckOutcome {
    outcome(stage, name, if ok { 0.0 } else { 1.0 }, 0.0)
}

/// Hypothesis checks (stage 1) of a report.
pub fn hypothesis_checks(r: &VerificationReport) -> Vec<CheckOutcome> {
    let t = &r.tolerances;
    let ax = &r.seminorm_axioms;
    vec![
        outcome(1, "square_property_residual", r.square_property_residual, t.square_property),
        outcome(1, "homogeneity_residual", ax.homogeneity_residual, t.seminorm_axioms),
        outcome(1, "triangle_violation", ax.triangle_violation, t.seminorm_axioms),
        bool_outcome(1, "values_nonnegative_finite", !ax.invalid_value),
    ]
}

/// Every check of stages 2 to 9 that has a recorded value.
pub fn stage_checks(r: &VerificationReport) -> Vec<CheckOutcome> {
    let t = &r.tolerances;
    let mut out = Vec::new();
    if let Some(v) = r.kernel_max_value {
        out.push(outcome(3, "kernel_max_value", v, t.kernel_value));
    }
    if let Some(v) = r.ideal_residual {
        out.push(outcome(3, "ideal_residual", v, t.ideal));
    }
    if let Some(ok) = r.ideal_check {
        out.push(bool_outcome(3, "ideal_check", ok));
    }
    if let Some(v) = r.quotient_norm_well_defined_residual {
        out.push(outcome(4, "quotient_norm_well_defined_residual", v, t.well_defined));
    }
    if let Some(v) = r.quotient_norm_min {
        // a norm on the quotient must stay away from zero on unit vectors
        out.push(outcome(4, "quotient_norm_min_negated", -v, -t.quotient_norm_floor));
    }
    if let Some(v) = r.normed_algebra_excess {
        out.push(outcome(5, "normed_algebra_excess", v, t.normed_algebra));
    }
    if let Some(v) = r.scaled_norm_square_residual {
        out.push(outcome(5, "scaled_norm_square_residual", v, t.scaled_square));
    }
    for (i, &v) in r.iterate_relation_residuals.iter().enumerate() {
        let n = i as i32 + 1;
        out.push(outcome(
            6,
            &format!("iterate_relation_residual[n={n}]"),
            v,
            t.iterate_per_power * 2f64.powi(n),
        ));
    }
    if let Some(v) = r.radius_match_residual {
        out.push(outcome(7, "radius_match_residual", v, t.radius));
    }
    if r.radius_match_residual.is_some() {
        out.push(outcome(7, "radius_nonconvergent", r.radius_nonconvergent as f64, 0.0));
    }
    if let Some(v) = r.spectral_radius_agreement {
        out.push(outcome(7, "spectral_radius_agreement", v, t.spectrum));
    }
    if let Some(cs) = &r.character_stage {
        out.push(bool_outcome(8, "characters_found", cs.character_count > 0));
        out.push(bool_outcome(8, "prop31_forward", cs.prop31.forward_ok));
        out.push(outcome(8, "prop31_inclusion_distance", cs.prop31.max_inclusion_distance, t.spectrum));
        out.push(outcome(8, "sup_norm_excess", cs.sup_norm_excess, t.spectrum));
        // on B_1 the norm N lacks the square property, so only the bound applies
        if r.config.known_complete_characters && r.branch == Some(Branch::Unital) {
            out.push(outcome(8, "prop31_equality_distance", cs.prop31.max_equality_distance, t.spectrum));
            out.push(outcome(8, "sup_norm_gap", cs.sup_norm_gap, t.spectrum));
        }
    }
    if let Some(u) = &r.unitization_checks {
        out.push(outcome(8, "unitization_unit_norm", (u.unit_norm - 1.0).abs(), t.unitization));
        out.push(outcome(8, "unitization_submultiplicative", u.submultiplicative_ratio - 1.0, t.unitization));
        out.push(outcome(8, "unitization_equivalence", u.equivalence_residual, t.unitization));
    }
    if let Some(m) = r.m_hat {
        if r.final_submultiplicativity_ratio.is_some() {
            out.push(outcome(9, "m_hat_excess", m - 1.0, t.final_ratio));
        }
    }
    if let Some(v) = r.final_submultiplicativity_ratio {
        out.push(outcome(9, "final_ratio_excess", v - 1.0, t.final_ratio));
    }
    out
}

/// Verdict from the recorded values alone.
pub fn derive_verdict(r: &VerificationReport) -> Verdict {
    if hypothesis_checks(r).iter().any(|c| !c.ok) {
        return Verdict::HypothesisNotMet;
    }
    let incomplete = r.final_submultiplicativity_ratio.is_none() || r.m_hat.is_none();
    if !r.stage_errors.is_empty() || incomplete || stage_checks(r).iter().any(|c| !c.ok) {
        Verdict::Fail
    } else {
        Verdict::Pass
    }
}

fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else {
        f64::MAX
    }
}

const ITERATE_NOTE: &str = "Iterate relation checked as ||b^(2^n)|| = m^-(2^n - 1) ||b||^(2^n), the \
    induction from ||b^2|| = m^-1 ||b||^2; its 2^-n-th root is m^(2^-n - 1) ||b||, which tends to \
    m^-1 ||b|| = r(b). A version with m^(2^n - 1) ||b|| on the right does not follow from the \
    squaring identity and is not checked.";
const M_HAT_NOTE: &str = "m_hat is the largest sampled ratio p(ab)/(p(a)p(b)): a lower bound of the \
    best constant m, used as the working constant in stages 5 to 8.";

/// Runs stages 1 to 9 on `(alg, p)`.
pub fn verify_theorem(
    alg: &FiniteDimRealAlgebra,
    p: &SeminormSpec,
    cfg: &PipelineConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    if !p.is_structured() {
        return Err(Error::UnsupportedVariant(p.kind().to_string()));
    }
    p.validate(alg)?;
    let tol = Tolerances::from_tol(cfg.tol);

    // stage 1
    let sq = seminorm::check_square_property(p, alg, cfg.sample_count, cfg.stage_seed(1))?;
    let axioms = seminorm::check_seminorm_axioms(
        p,
        alg,
        cfg.sample_count.min(500),
        cfg.stage_seed(11),
    )?;
    let mut report = VerificationReport {
        algebra: alg.name().to_string(),
        seminorm: format!("{p:?}"),
        dim: alg.dim(),
        config: cfg.clone(),
        tolerances: tol.clone(),
        square_property_residual: finite(sq.max_residual),
        square_witness: sq.witness,
        seminorm_axioms: axioms,
        m_hat: None,
        m_hat_pair: None,
        kernel_dim: None,
        kernel_basis: None,
        kernel_max_value: None,
        ideal_residual: None,
        ideal_check: None,
        quotient_dim: None,
        quotient_norm_well_defined_residual: None,
        quotient_norm_min: None,
        normed_algebra_excess: None,
        scaled_norm_square_residual: None,
        iterate_relation_residuals: Vec::new(),
        radius_match_residual: None,
        radius_nonconvergent: 0,
        spectral_radius_agreement: None,
        branch: None,
        character_count: None,
        character_stage: None,
        unitization_checks: None,
        final_submultiplicativity_ratio: None,
        final_witness: None,
        stopped_at_stage: None,
        stage_errors: Vec::new(),
        findings: Vec::new(),
        failed_checks: Vec::new(),
        verdict: Verdict::Fail,
        notes: vec![ITERATE_NOTE.to_string(), M_HAT_NOTE.to_string()],
    };
    if hypothesis_checks(&report).iter().any(|c| !c.ok) {
        report.stopped_at_stage = Some(1);
        return Ok(finish(report));
    }

    // stage 2
    let m = seminorm::estimate_m(p, alg, cfg.sample_count, cfg.stage_seed(2))?;
    let m_hat = m.m_hat;
    report.m_hat = Some(m_hat);
    report.m_hat_pair = m.witness;

    // stage 3
    let kernel = p.kernel(alg)?;
    report.kernel_dim = Some(kernel.len());
    report.kernel_max_value = Some(finite(
        kernel
            .iter()
            .map(|k| p.eval_coords(alg, k))
            .fold(0.0, f64::max),
    ));
    // scaled by the size of the structure constants
    let ideal_residual = alg.ideal_residual(&kernel) / (1.0 + alg.max_abs_constant());
    report.ideal_residual = Some(finite(ideal_residual));
    report.ideal_check = Some(alg.subspace_is_two_sided_ideal(&kernel));
    report.kernel_basis = Some(kernel.clone());

    // stage 4
    let quotient = match alg.quotient(&kernel) {
        Ok(q) => Some(q),
        Err(Error::ZeroQuotient) => {
            report.findings.push(
                "p vanishes identically: the quotient is zero and stages 4 to 8 are vacuous".into(),
            );
            None
        }
        Err(e) => {
            report.stage_errors.push(format!("stage 4: {e}"));
            report.stopped_at_stage = Some(4);
            return Ok(finish(report));
        }
    };
    if let Some(q) = &quotient {
        if let Err(e) = quotient_stages(&mut report, alg, p, cfg, &kernel, q, m_hat) {
            report.stage_errors.push(e.to_string());
        }
    }

    // stage 9
    let fin = seminorm::check_submultiplicative(p, alg, cfg.sample_count, cfg.stage_seed(9))?;
    report.final_submultiplicativity_ratio = Some(finite(fin.max_ratio));
    report.final_witness = fin.witness;
    Ok(finish(report))
}

fn finish(mut report: VerificationReport) -> VerificationReport {
    report.failed_checks = hypothesis_checks(&report)
        .into_iter()
        .chain(if report.stopped_at_stage == Some(1) {
            Vec::new()
        } else {
            stage_checks(&report)
        })
        .filter(|c| !c.ok)
        .map(|c| format!("stage {} {}: {:e} > {:e}", c.stage, c.name, c.value, c.limit))
        .collect();
    report.verdict = derive_verdict(&report);
    report
}

fn gaussian_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| rng::gaussian_vec(&mut rng::stream(seed, i as u64), dim))
        .collect()
}

/// Stages 4 to 8, on the quotient by the kernel.
fn quotient_stages(
    report: &mut VerificationReport,
    alg: &FiniteDimRealAlgebra,
    p: &SeminormSpec,
    cfg: &PipelineConfig,
    kernel: &[Vec<f64>],
    quotient: &Quotient,
    m_hat: f64,
) -> Result<()> {
    let qalg = quotient.algebra.as_ref();
    let q = qalg.dim();
    let qn = |c: &[f64]| p.eval_coords(alg, &quotient.lift(c));
    let samples = cfg.quotient_samples();

    // stage 4: |a + Ker p| = p(a)
    report.quotient_dim = Some(q);
    report.stopped_at_stage = Some(4);
    report.quotient_norm_well_defined_residual = Some(finite(
        seminorm::quotient_well_defined_residual(p, alg, kernel, cfg.sample_count.min(1000), cfg.stage_seed(4))?,
    ));
    let mut unit_sphere: Vec<Vec<f64>> = (0..q).map(|i| basis_vector(q, i)).collect();
    unit_sphere.extend(gaussian_points(q, samples, cfg.stage_seed(41)).into_iter().map(|c| {
        let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        c.into_iter().map(|x| x / n).collect()
    }));
    report.quotient_norm_min = Some(
        unit_sphere
            .par_iter()
            .map(|c| qn(c))
            .reduce(|| f64::INFINITY, f64::min),
    );

    // stage 5: ||.|| = m_hat |.|
    report.stopped_at_stage = Some(5);
    let norm = |c: &[f64]| m_hat * qn(c);
    let pts = gaussian_points(q, 2 * samples, cfg.stage_seed(5));
    let (excess, sq_res) = pts
        .par_chunks(2)
        .map(|ab| {
            let (a, b) = (&ab[0], &ab[1]);
            let (na, nb) = (norm(a), norm(b));
            let nab = norm(&qalg.mul_coords(a, b));
            let excess = if na * nb > 0.0 { nab / (na * nb) - 1.0 } else { 0.0 };
            let na2 = norm(&qalg.mul_coords(a, a));
            let sq = (na2 - na * na / m_hat).abs() / (1.0 + na * na / m_hat);
            (excess.max(0.0), sq)
        })
        .reduce(|| (0.0, 0.0), |x, y| (x.0.max(y.0), x.1.max(y.1)));
    report.normed_algebra_excess = Some(finite(excess));
    report.scaled_norm_square_residual = Some(finite(sq_res));

    // stage 6: log ||b^(2^n)|| = -(2^n - 1) log m + 2^n log ||b||
    report.stopped_at_stage = Some(6);
    let iterates = cfg.max_square_iterates;
    let per_sample: Vec<Vec<f64>> = gaussian_points(q, samples, cfg.stage_seed(6))
        .par_iter()
        .map(|b| iterate_residuals(qalg, &norm, b, m_hat, iterates))
        .collect();
    report.iterate_relation_residuals = (0..iterates)
        .map(|n| finite(per_sample.iter().map(|r| r[n]).fold(0.0, f64::max)))
        .collect();

    // stage 7: ||b|| = m r(b)
    report.stopped_at_stage = Some(7);
    let radius: Vec<(Option<f64>, f64)> = gaussian_points(q, samples.max(100), cfg.stage_seed(7))
        .par_iter()
        .map(|b| {
            let nb = norm(b);
            let rs = spectral::spectral_radius_coords(qalg, b);
            let spec = (m_hat * rs - nb).abs() / (1.0 + nb);
            match spectral::gelfand_radius_coords(qalg, b, norm, cfg.gelfand_squarings) {
                Ok(g) => (Some((m_hat * g.radius - nb).abs() / (1.0 + nb)), spec),
                Err(_) => (None, spec),
            }
        })
        .collect();
    report.radius_nonconvergent = radius.iter().filter(|r| r.0.is_none()).count();
    report.radius_match_residual = Some(finite(
        radius.iter().filter_map(|r| r.0).fold(0.0, f64::max),
    ));
    report.spectral_radius_agreement = Some(finite(radius.iter().map(|r| r.1).fold(0.0, f64::max)));

    // stage 8
    report.stopped_at_stage = Some(8);
    let unital = qalg.is_unital() && cfg.branch_policy == BranchPolicy::Natural;
    if unital {
        report.branch = Some(Branch::Unital);
        let stage = character_stage(qalg, &|c: &[f64]| qn(c), cfg, samples)?;
        report.character_count = Some(stage.character_count);
        report.character_stage = Some(stage);
    } else {
        report.branch = Some(Branch::NonUnital);
        if qalg.is_unital() {
            report.findings.push(
                "quotient is unital; non-unital branch taken by policy (a fresh unit is adjoined)"
                    .into(),
            );
        }
        let b1 = qalg.unitize();
        let big_n = |x: &[f64]| x[0].abs() + norm(&x[1..]);
        let checks = unitization_checks(qalg, &b1, &norm, &big_n, m_hat, cfg, samples);
        if checks.property_ii_violations > 0 {
            report.findings.push(format!(
                "property (ii) N(x) <= m^3 r(x) fails on {} of {} samples (max ratio {:e})",
                checks.property_ii_violations, checks.property_ii_samples, checks.property_ii_max_ratio
            ));
        }
        report.unitization_checks = Some(checks);
        let stage = character_stage(&b1, &big_n, cfg, samples)?;
        report.character_count = Some(stage.character_count);
        report.character_stage = Some(stage);
    }
    report.stopped_at_stage = None;
    Ok(())
}

/// Log-domain residuals of the iterate relation for `n = 1..=iterates`.
///
/// Powers are renormalized after every squaring, with the log scale carried
/// separately, so `b^(2^n)` never overflows.
fn iterate_residuals<F: Fn(&[f64]) -> f64>(
    alg: &FiniteDimRealAlgebra,
    norm: &F,
    b: &[f64],
    m_hat: f64,
    iterates: usize,
) -> Vec<f64> {
    let nb = norm(b);
    if nb == 0.0 {
        return vec![0.0; iterates];
    }
    let log_m = m_hat.ln();
    let log_b = nb.ln();
    let mut x: Vec<f64> = b.iter().map(|c| c / nb).collect();
    let mut log_scale = log_b;
    let mut out = Vec::with_capacity(iterates);
    for n in 1..=iterates {
        let y = alg.mul_coords(&x, &x);
        let ny = norm(&y);
        if ny == 0.0 || !ny.is_finite() {
            out.extend(std::iter::repeat_n(f64::INFINITY, iterates + 1 - n));
            break;
        }
        // ||b^(2^n)|| = exp(2 log_scale) ||x^2||, with x = b^(2^(n-1)) / exp(log_scale)
        log_scale = 2.0 * log_scale + ny.ln();
        x = y.iter().map(|c| c / ny).collect();
        let p = 2f64.powi(n as i32);
        let predicted = -(p - 1.0) * log_m + p * log_b;
        out.push((log_scale - predicted).abs());
    }
    out
}

fn character_stage(
    alg: &FiniteDimRealAlgebra,
    norm: &(dyn Fn(&[f64]) -> f64 + Sync),
    cfg: &PipelineConfig,
    samples: usize,
) -> Result<CharacterStage> {
    let chars = characters::find_characters(alg, cfg.restarts, cfg.stage_seed(8));
    let n = alg.dim();
    let mut pts: Vec<Vec<f64>> = (0..n).map(|i| basis_vector(n, i)).collect();
    pts.extend(gaussian_points(n, samples, cfg.stage_seed(81)));
    if chars.is_empty() {
        return Ok(CharacterStage {
            character_count: 0,
            characters: chars,
            prop31: Prop31Summary {
                samples: 0,
                invertible_samples: 0,
                forward_ok: false,
                min_invertible_modulus: 0.0,
                max_inclusion_distance: 0.0,
                max_equality_distance: 0.0,
                vanishing_witnesses: 0,
            },
            sup_norm_excess: 0.0,
            sup_norm_gap: 0.0,
        });
    }
    let checks: Vec<(characters::Prop31Check, f64, f64)> = pts
        .par_iter()
        .map(|a| {
            let c = characters::check_prop31_coords(alg, a, &chars)?;
            let sup = characters::sampled_sup_norm_coords(a, &chars);
            let na = norm(a);
            let d = (sup - na) / (1.0 + na);
            Ok((c, d.max(0.0), d.abs()))
        })
        .collect::<Result<_>>()?;
    let inv: Vec<&characters::Prop31Check> = checks.iter().map(|c| &c.0).filter(|c| c.invertible).collect();
    Ok(CharacterStage {
        character_count: chars.len(),
        prop31: Prop31Summary {
            samples: checks.len(),
            invertible_samples: inv.len(),
            forward_ok: checks.iter().all(|c| c.0.forward_ok),
            min_invertible_modulus: finite(
                inv.iter().map(|c| c.min_character_modulus).fold(f64::INFINITY, f64::min),
            ),
            max_inclusion_distance: finite(
                checks.iter().map(|c| c.0.inclusion_distance).fold(0.0, f64::max),
            ),
            max_equality_distance: finite(
                checks.iter().map(|c| c.0.equality_distance).fold(0.0, f64::max),
            ),
            vanishing_witnesses: checks.iter().filter(|c| c.0.vanishing_witness).count(),
        },
        sup_norm_excess: finite(checks.iter().map(|c| c.1).fold(0.0, f64::max)),
        sup_norm_gap: finite(checks.iter().map(|c| c.2).fold(0.0, f64::max)),
        characters: chars,
    })
}

fn unitization_checks(
    b: &FiniteDimRealAlgebra,
    b1: &FiniteDimRealAlgebra,
    norm: &(dyn Fn(&[f64]) -> f64 + Sync),
    big_n: &(dyn Fn(&[f64]) -> f64 + Sync),
    m_hat: f64,
    cfg: &PipelineConfig,
    samples: usize,
) -> UnitizationChecks {
    let n1 = b1.dim();
    let e = basis_vector(n1, 0);
    let mut probes: Vec<Vec<f64>> = (0..n1).map(|i| basis_vector(n1, i)).collect();
    if let Some(u) = b.unit() {
        // e - u is a nonzero idempotent of B_1 orthogonal to B
        let mut x = vec![1.0];
        x.extend(u.iter().map(|c| -c));
        probes.push(x);
    }
    probes.extend(gaussian_points(n1, samples, cfg.stage_seed(82)));

    let pairs = gaussian_points(n1, 2 * samples, cfg.stage_seed(83));
    let mut ratio = pairs
        .par_chunks(2)
        .map(|xy| {
            let d = big_n(&xy[0]) * big_n(&xy[1]);
            if d > 0.0 {
                big_n(&b1.mul_coords(&xy[0], &xy[1])) / d
            } else {
                0.0
            }
        })
        .reduce(|| 0.0, f64::max);
    for x in &probes {
        for y in &probes[..n1] {
            let d = big_n(x) * big_n(y);
            if d > 0.0 {
                ratio = ratio.max(big_n(&b1.mul_coords(x, y)) / d);
            }
        }
    }

    let equivalence = gaussian_points(b.dim(), samples, cfg.stage_seed(84))
        .iter()
        .map(|v| {
            let mut x = vec![0.0];
            x.extend_from_slice(v);
            (big_n(&x) - norm(v)).abs()
        })
        .fold(0.0, f64::max);

    let m3 = m_hat.powi(3);
    let ii: Vec<(f64, bool)> = probes
        .par_iter()
        .map(|x| {
            let r = spectral::spectral_radius_coords(b1, x);
            let nx = big_n(x);
            let violated = nx > m3 * r * (1.0 + cfg.tol);
            let ratio = if r > 1e-12 { nx / (m3 * r) } else { 0.0 };
            (ratio, violated)
        })
        .collect();
    let worst = ii
        .iter()
        .enumerate()
        .filter(|(_, v)| v.1)
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0).then(b.0.cmp(&a.0)))
        .map(|(i, _)| probes[i].clone());
    UnitizationChecks {
        unit_norm: big_n(&e),
        submultiplicative_ratio: finite(ratio),
        equivalence_residual: finite(equivalence),
        property_ii_max_ratio: finite(ii.iter().map(|v| v.0).fold(0.0, f64::max)),
        property_ii_samples: ii.len(),
        property_ii_violations: ii.iter().filter(|v| v.1).count(),
        property_ii_witness: worst,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub iterations: usize,
    pub seed: u64,
    pub samples_per_instance: usize,
    pub tol: f64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            iterations: 10_000,
            seed: 42,
            samples_per_instance: 200,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzRecord {
    pub index: usize,
    pub algebra: String,
    pub seminorm: String,
    pub square_residual: f64,
    pub hypothesis_met: bool,
    pub ratio: f64,
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub config: FuzzConfig,
    pub instances_by_seminorm: BTreeMap<String, usize>,
    pub hypothesis_met: usize,
    pub hypothesis_not_met: usize,
    /// Largest final ratio among instances meeting the hypothesis.
    pub max_ratio_hypothesis_met: f64,
    pub worst_instance: Option<FuzzRecord>,
    pub counterexamples: Vec<FuzzRecord>,
}

/// A conjugation `x -> q x q^-1` of H by a random unit `q`.
fn random_h_character(r: &mut SampleRng) -> [Quaternion; 4] {
    let q = rng::unit_quaternion(r);
    let qi = q.conj();
    [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K].map(|e| q * e * qi)
}

/// An embedding `a + b i -> a + b u` of C for a random unit imaginary `u`.
fn random_c_character(r: &mut SampleRng) -> [Quaternion; 2] {
    [Quaternion::ONE, rng::unit_imaginary(r)]
}

/// Random direct sum of 1 to 3 components from {R, C, H} with a random
/// seminorm, drawn from substream `index`.
pub fn fuzz_instance(seed: u64, index: usize) -> (FiniteDimRealAlgebra, SeminormSpec) {
    let mut r = rng::stream(seed, index as u64);
    let count = r.random_range(1..=3usize);
    let kinds: Vec<u8> = (0..count).map(|_| r.random_range(0..3u8)).collect();
    let parts: Vec<FiniteDimRealAlgebra> = kinds
        .iter()
        .map(|k| match k {
            0 => corpus::reals(),
            1 => corpus::complexes(),
            _ => corpus::quaternions(),
        })
        .collect();
    let alg = corpus::direct_sum(&parts);
    let n = alg.dim();
    let p = match r.random_range(0..3u8) {
        0 => {
            let mut chosen: Vec<usize> = (0..count).filter(|_| r.random_bool(0.5)).collect();
            if chosen.is_empty() {
                chosen.push(r.random_range(0..count));
            }
            if r.random_bool(0.25) {
                chosen.push(r.random_range(0..count));
            }
            let offsets: Vec<usize> = parts
                .iter()
                .scan(0, |acc, a| {
                    let o = *acc;
                    *acc += a.dim();
                    Some(o)
                })
                .collect();
            let chars = chosen
                .iter()
                .map(|&c| {
                    let mut images = vec![Quaternion::ZERO; n];
                    let local: Vec<Quaternion> = match kinds[c] {
                        0 => vec![Quaternion::ONE],
                        1 => random_c_character(&mut r).to_vec(),
                        _ => random_h_character(&mut r).to_vec(),
                    };
                    images[offsets[c]..offsets[c] + local.len()].copy_from_slice(&local);
                    Character::new(&alg, images).expect("dimension matches")
                })
                .collect();
            SeminormSpec::CharacterSup(chars)
        }
        1 => SeminormSpec::SpectralRadius,
        _ => SeminormSpec::CoordinateMax(
            (0..n)
                .map(|_| if r.random_bool(0.5) { 1.0 } else { r.random_range(0.25..2.0) })
                .collect(),
        ),
    };
    (alg, p)
}

/// Stage 1 and stage 9 on `config.iterations` random instances.
///
/// A counterexample is an instance meeting the hypothesis (square residual
/// and seminorm axioms within `tol`) whose final ratio exceeds `1 + 10 tol`.
pub fn fuzz(config: &FuzzConfig) -> Result<FuzzSummary> {
    if config.iterations > 0 && config.samples_per_instance == 0 {
        return Err(Error::invalid("samples", "must be positive"));
    }
    if !(config.tol > 0.0 && config.tol < 1.0) {
        return Err(Error::invalid("tol", "must lie in (0, 1)"));
    }
    let records: Vec<FuzzRecord> = (0..config.iterations)
        .into_par_iter()
        .map(|i| {
            let (alg, p) = fuzz_instance(config.seed, i);
            let s = config.samples_per_instance;
            let inst_seed = config.seed ^ (i as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
            let sq = seminorm::check_square_property(&p, &alg, s, inst_seed)?;
            let ax = seminorm::check_seminorm_axioms(&p, &alg, s / 4 + 1, inst_seed ^ 1)?;
            let fin = seminorm::check_submultiplicative(&p, &alg, s, inst_seed ^ 9)?;
            Ok(FuzzRecord {
                index: i,
                algebra: alg.name().to_string(),
                seminorm: p.kind().to_string(),
                square_residual: finite(sq.max_residual),
                hypothesis_met: sq.max_residual <= config.tol && ax.holds(config.tol),
                ratio: finite(fin.max_ratio),
                witness: fin.witness,
            })
        })
        .collect::<Result<_>>()?;

    let mut by_kind = BTreeMap::new();
    for r in &records {
        *by_kind.entry(r.seminorm.clone()).or_insert(0) += 1;
    }
    let met: Vec<&FuzzRecord> = records.iter().filter(|r| r.hypothesis_met).collect();
    let worst = met
        .iter()
        .copied()
        .fold(None::<&FuzzRecord>, |best, r| match best {
            Some(b) if b.ratio >= r.ratio => Some(b),
            _ => Some(r),
        })
        .cloned();
    Ok(FuzzSummary {
        config: config.clone(),
        instances_by_seminorm: by_kind,
        hypothesis_met: met.len(),
        hypothesis_not_met: records.len() - met.len(),
        max_ratio_hypothesis_met: met.iter().map(|r| r.ratio).fold(0.0, f64::max),
        counterexamples: met
            .iter()
            .filter(|r| r.ratio > 1.0 + 10.0 * config.tol)
            .map(|r| (*r).clone())
            .collect(),
        worst_instance: worst,
    })
}
