//! Seminorms as structured records, with sampled checks of the square
//! property, submultiplicativity and the best constant `m` in
//! `p(ab) <= m p(a) p(b)`.
//!
//! Structured variants carry enough information for an exact kernel, which
//! the quotient stage of the pipeline needs. [`SeminormSpec::Opaque`] accepts
//! any closure but has no kernel.

use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{basis_vector, AlgebraElement, FiniteDimRealAlgebra};
use crate::characters::Character;
use crate::error::{Error, Result};
use crate::linalg;
use crate::quaternion::Quaternion;
use crate::rng;
use crate::spectral;

/// Floor for the estimated multiplicative constant.
pub const M_HAT_FLOOR: f64 = 1e-12;
/// Pairs with `p(a) p(b)` at or below this are skipped in ratio statistics.
pub const RATIO_SKIP: f64 = 1e-12;
/// Relative singular-value cutoff for kernels.
pub const KERNEL_REL_TOL: f64 = 1e-10;

// stream tags keep the sampling loops of different checks independent
const TAG_SQUARE: u64 = 1 << 40;
const TAG_RATIO: u64 = 2 << 40;
const TAG_AXIOMS: u64 = 3 << 40;
const TAG_KERNEL: u64 = 4 << 40;

pub type SeminormFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
pub enum SeminormSpec {
    /// `max_x |x(a)|` over the listed characters.
    CharacterSup(Vec<Character>),
    /// Max modulus of the spectrum.
    SpectralRadius,
    /// `max_i w_i |a_i|`.
    CoordinateMax(Vec<f64>),
    /// `sum_i w_i |a_i|`, the weighted l1 seminorm.
    CoordinateSum(Vec<f64>),
    /// Largest singular value of `L_a`.
    OperatorNorm,
    /// `max_{i in subset} |a_i|`; vanishes on the other coordinates.
    ComponentSup(Vec<usize>),
    /// Arbitrary evaluator. No kernel, so the quotient stages are unavailable.
    Opaque { name: String, eval: SeminormFn },
}

impl fmt::Debug for SeminormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeminormSpec::CharacterSup(c) => write!(f, "CharacterSup({} characters)", c.len()),
            SeminormSpec::SpectralRadius => write!(f, "SpectralRadius"),
            SeminormSpec::CoordinateMax(w) => write!(f, "CoordinateMax({w:?})"),
            SeminormSpec::CoordinateSum(w) => write!(f, "CoordinateSum({w:?})"),
            SeminormSpec::OperatorNorm => write!(f, "OperatorNorm"),
            SeminormSpec::ComponentSup(s) => write!(f, "ComponentSup({s:?})"),
            SeminormSpec::Opaque { name, .. } => write!(f, "Opaque({name})"),
        }
    }
}

impl SeminormSpec {
    /// Variant tag, as used in seminorm definition files.
    pub fn kind(&self) -> &str {
        match self {
            SeminormSpec::CharacterSup(_) => "character_sup",
            SeminormSpec::SpectralRadius => "spectral_radius",
            SeminormSpec::CoordinateMax(_) => "coordinate_max",
            SeminormSpec::CoordinateSum(_) => "coordinate_sum",
            SeminormSpec::OperatorNorm => "operator_norm",
            SeminormSpec::ComponentSup(_) => "component_sup",
            SeminormSpec::Opaque { .. } => "opaque",
        }
    }

    pub fn is_structured(&self) -> bool {
        !matches!(self, SeminormSpec::Opaque { .. })
    }

    /// Checks that the payload fits `alg`.
    pub fn validate(&self, alg: &FiniteDimRealAlgebra) -> Result<()> {
        let n = alg.dim();
        match self {
            SeminormSpec::CharacterSup(chars) => {
                if let Some(c) = chars.iter().find(|c| c.dim() != n) {
                    return Err(Error::PayloadMismatch(format!(
                        "character with {} images on a {n}-dimensional algebra",
                        c.dim()
                    )));
                }
            }
            SeminormSpec::CoordinateMax(w) | SeminormSpec::CoordinateSum(w) => {
                if w.len() != n {
                    return Err(Error::PayloadMismatch(format!(
                        "{} weights on a {n}-dimensional algebra",
                        w.len()
                    )));
                }
                if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                    return Err(Error::PayloadMismatch(
                        "weights must be finite and nonnegative".into(),
                    ));
                }
            }
            SeminormSpec::ComponentSup(subset) => {
                if let Some(i) = subset.iter().find(|&&i| i >= n) {
                    return Err(Error::PayloadMismatch(format!(
                        "subset index {i} out of range for dimension {n}"
                    )));
                }
            }
            SeminormSpec::SpectralRadius
            | SeminormSpec::OperatorNorm
            | SeminormSpec::Opaque { .. } => {}
        }
        Ok(())
    }

    /// Value on raw coordinates; the payload must already fit `alg`.
    pub fn eval_coords(&self, alg: &FiniteDimRealAlgebra, a: &[f64]) -> f64 {
        match self {
            SeminormSpec::CharacterSup(chars) => chars
                .iter()
                .map(|c| c.evaluate(a).norm())
                .fold(0.0, f64::max),
            SeminormSpec::SpectralRadius => spectral::spectral_radius_coords(alg, a),
            SeminormSpec::CoordinateMax(w) => w
                .iter()
                .zip(a)
                .map(|(w, x)| w * x.abs())
                .fold(0.0, f64::max),
            SeminormSpec::CoordinateSum(w) => w.iter().zip(a).map(|(w, x)| w * x.abs()).sum(),
            SeminormSpec::OperatorNorm => spectral::regular_operator_norm(alg, a),
            SeminormSpec::ComponentSup(subset) => {
                subset.iter().map(|&i| a[i].abs()).fold(0.0, f64::max)
            }
            SeminormSpec::Opaque { eval, .. } => eval(a),
        }
    }

    pub fn evaluate(&self, a: &AlgebraElement) -> Result<f64> {
        self.validate(a.algebra())?;
        Ok(self.eval_coords(a.algebra(), a.coords()))
    }

    /// Basis of `Ker(p)`, computed exactly from the payload.
    ///
    /// For the spectral radius the kernel is the radical of the trace form
    /// `(a, b) -> tr(L_a L_b)`: its elements are nilpotent, so `r` vanishes
    /// there, and whenever `r` is a seminorm its zero set is a nil ideal and
    /// therefore lies inside it.
    pub fn kernel(&self, alg: &FiniteDimRealAlgebra) -> Result<Vec<Vec<f64>>> {
        self.validate(alg)?;
        let n = alg.dim();
        let vecs = match self {
            SeminormSpec::CharacterSup(chars) => {
                let mut m = DMatrix::zeros(4 * chars.len(), n);
                for (c, ch) in chars.iter().enumerate() {
                    for (i, q) in ch.images.iter().enumerate() {
                        for (r, v) in q.to_array().into_iter().enumerate() {
                            m[(4 * c + r, i)] = v;
                        }
                    }
                }
                to_vecs(linalg::null_space(&m, KERNEL_REL_TOL))
            }
            SeminormSpec::ComponentSup(subset) => (0..n)
                .filter(|i| !subset.contains(i))
                .map(|i| basis_vector(n, i))
                .collect(),
            SeminormSpec::CoordinateMax(w) | SeminormSpec::CoordinateSum(w) => (0..n)
                .filter(|&i| w[i] == 0.0)
                .map(|i| basis_vector(n, i))
                .collect(),
            SeminormSpec::OperatorNorm => {
                // a -> L_a as an n^2 x n matrix
                let mut m = DMatrix::zeros(n * n, n);
                for c in alg.table() {
                    m[(c.k * n + c.j, c.i)] += c.value;
                }
                to_vecs(linalg::null_space(&m, KERNEL_REL_TOL))
            }
            SeminormSpec::SpectralRadius => {
                let ls: Vec<DMatrix<f64>> = (0..n)
                    .map(|i| alg.left_regular_coords(&basis_vector(n, i)))
                    .collect();
                let mut t = DMatrix::zeros(n, n);
                for i in 0..n {
                    for j in i..n {
                        let v = (&ls[i] * &ls[j]).trace();
                        t[(i, j)] = v;
                        t[(j, i)] = v;
                    }
                }
                to_vecs(linalg::null_space(&t, KERNEL_REL_TOL))
            }
            SeminormSpec::Opaque { .. } => {
                return Err(Error::UnsupportedVariant(self.kind().to_string()))
            }
        };
        Ok(vecs)
    }
}

/// On-disk form: `{"type": ..., "characters" | "weights" | "subset": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormDef {
    #[serde(rename = "type")]
    pub kind: String,
    /// One `n x 4` array of images per character.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characters: Option<Vec<Vec<[f64; 4]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
}

impl SeminormDef {
    fn bare(kind: &str) -> Self {
        SeminormDef {
            kind: kind.to_string(),
            characters: None,
            weights: None,
            subset: None,
        }
    }
}

impl SeminormSpec {
    pub fn to_def(&self) -> Result<SeminormDef> {
        let mut def = SeminormDef::bare(self.kind());
        match self {
            SeminormSpec::CharacterSup(chars) => {
                def.characters = Some(
                    chars
                        .iter()
                        .map(|c| c.images.iter().map(|q| q.to_array()).collect())
                        .collect(),
                )
            }
            SeminormSpec::CoordinateMax(w) | SeminormSpec::CoordinateSum(w) => {
                def.weights = Some(w.clone())
            }
            SeminormSpec::ComponentSup(s) => def.subset = Some(s.clone()),
            SeminormSpec::SpectralRadius | SeminormSpec::OperatorNorm => {}
            SeminormSpec::Opaque { .. } => {
                return Err(Error::UnsupportedVariant(self.kind().to_string()))
            }
        }
        Ok(def)
    }

    /// Builds and validates a seminorm for `alg`. Characters must be
    /// multiplicative within [`crate::characters::CHARACTER_TOL`].
    pub fn from_def(def: &SeminormDef, alg: &FiniteDimRealAlgebra) -> Result<Self> {
        let n = alg.dim();
        let spec = match def.kind.as_str() {
            "character_sup" => {
                let raw = def
                    .characters
                    .as_ref()
                    .ok_or_else(|| Error::invalid("characters", "required for character_sup"))?;
                let mut chars = Vec::with_capacity(raw.len());
                for (c, images) in raw.iter().enumerate() {
                    let field = format!("characters[{c}]");
                    if images.len() != n {
                        return Err(Error::invalid(
                            field,
                            format!("has {} images, algebra dimension is {n}", images.len()),
                        ));
                    }
                    if images.iter().flatten().any(|x| !x.is_finite()) {
                        return Err(Error::invalid(field, "non-finite image"));
                    }
                    let qs = images.iter().map(|a| Quaternion::from_array(*a)).collect();
                    let ch = Character::new(alg, qs)?;
                    if ch.residual > crate::characters::CHARACTER_TOL {
                        return Err(Error::invalid(
                            field,
                            format!("not multiplicative (residual {:e})", ch.residual),
                        ));
                    }
                    chars.push(ch);
                }
                SeminormSpec::CharacterSup(chars)
            }
            "spectral_radius" => SeminormSpec::SpectralRadius,
            "operator_norm" => SeminormSpec::OperatorNorm,
            "coordinate_max" | "coordinate_sum" => {
                let w = def
                    .weights
                    .clone()
                    .ok_or_else(|| Error::invalid("weights", format!("required for {}", def.kind)))?;
                if w.len() != n {
                    return Err(Error::invalid(
                        "weights",
                        format!("has {} entries, algebra dimension is {n}", w.len()),
                    ));
                }
                if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                    return Err(Error::invalid("weights", "entries must be finite and nonnegative"));
                }
                if def.kind == "coordinate_max" {
                    SeminormSpec::CoordinateMax(w)
                } else {
                    SeminormSpec::CoordinateSum(w)
                }
            }
            "component_sup" => {
                let s = def
                    .subset
                    .clone()
                    .ok_or_else(|| Error::invalid("subset", "required for component_sup"))?;
                if let Some(i) = s.iter().find(|&&i| i >= n) {
                    return Err(Error::invalid(
                        "subset",
                        format!("index {i} out of range for dimension {n}"),
                    ));
                }
                SeminormSpec::ComponentSup(s)
            }
            other => {
                return Err(Error::invalid("type", format!("unknown seminorm type {other:?}")))
            }
        };
        Ok(spec)
    }
}

fn to_vecs(vs: Vec<nalgebra::DVector<f64>>) -> Vec<Vec<f64>> {
    vs.into_iter()
        .map(|v| {
            v.iter()
                .map(|&x| if x.abs() < 1e-15 { 0.0 } else { x })
                .collect()
        })
        .collect()
}

/// Deterministic probe points: basis vectors, pairwise sums and differences,
/// and the unit when present.
fn sweep_points(alg: &FiniteDimRealAlgebra) -> Vec<Vec<f64>> {
    let n = alg.dim();
    let mut pts: Vec<Vec<f64>> = (0..n).map(|i| basis_vector(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut plus = vec![0.0; n];
            plus[i] = 1.0;
            plus[j] = 1.0;
            let mut minus = plus.clone();
            minus[j] = -1.0;
            pts.push(plus);
            pts.push(minus);
        }
    }
    if let Some(u) = alg.unit() {
        pts.push(u.to_vec());
    }
    pts
}

/// Max over `values` by first component, ties to the earliest entry.
fn argmax<T>(values: Vec<(f64, T)>) -> Option<(f64, T)> {
    let mut best: Option<(f64, T)> = None;
    for (v, t) in values {
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, t));
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SquareCheck {
    /// `max |p(a^2) - p(a)^2| / (1 + p(a)^2)`.
    pub max_residual: f64,
    pub witness: Vec<f64>,
    pub points: usize,
}

/// Square property on the deterministic sweep plus `samples` Gaussian points.
///
/// Points are not renormalized: the residual `|p(a^2) - p(a)^2| / (1 + p(a)^2)`
/// is not scale invariant, and larger points expose defects that unit-size
/// points hide.
pub fn check_square_property(
    p: &SeminormSpec,
    alg: &FiniteDimRealAlgebra,
    samples: usize,
    seed: u64,
) -> Result<SquareCheck> {
    p.validate(alg)?;
    let n = alg.dim();
    let mut points = sweep_points(alg);
    points.extend((0..samples).map(|i| rng::gaussian_vec(&mut rng::stream(seed, TAG_SQUARE | i as u64), n)));
    let residuals: Vec<(f64, Vec<f64>)> = points
        .par_iter()
        .map(|a| {
            let pa = p.eval_coords(alg, a);
            let pa2 = p.eval_coords(alg, &alg.mul_coords(a, a));
            ((pa2 - pa * pa).abs() / (1.0 + pa * pa), a.clone())
        })
        .collect();
    let count = residuals.len();
    let (max_residual, witness) = argmax(residuals).unwrap_or((0.0, vec![0.0; n]));
    Ok(SquareCheck {
        max_residual,
        witness,
        points: count,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioCheck {
    /// `max p(ab) / (p(a) p(b))` over evaluated pairs, 0 if none.
    pub max_ratio: f64,
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
    pub pairs_evaluated: usize,
    pub pairs_skipped: usize,
}

fn normalized(p: &SeminormSpec, alg: &FiniteDimRealAlgebra, a: Vec<f64>) -> Vec<f64> {
    let v = p.eval_coords(alg, &a);
    if v > RATIO_SKIP {
        a.into_iter().map(|x| x / v).collect()
    } else {
        a
    }
}

/// Ratio statistics of `p(ab) / (p(a) p(b))` over basis pairs, diagonal pairs
/// `(a, a)` of sweep points, unit pairs, and `samples` Gaussian pairs
/// normalized to `p = 1` where possible.
pub fn check_submultiplicative(
    p: &SeminormSpec,
    alg: &FiniteDimRealAlgebra,
    samples: usize,
    seed: u64,
) -> Result<RatioCheck> {
    p.validate(alg)?;
    let n = alg.dim();
    let sweep = sweep_points(alg);
    let basis: Vec<Vec<f64>> = (0..n).map(|i| basis_vector(n, i)).collect();
    let mut pairs: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for a in &basis {
        for b in &basis {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for a in &sweep {
        pairs.push((a.clone(), a.clone()));
    }
    if let Some(u) = alg.unit() {
        for b in &sweep {
            pairs.push((u.to_vec(), b.clone()));
            pairs.push((b.clone(), u.to_vec()));
        }
    }
    pairs.extend((0..samples).map(|i| {
        let mut r = rng::stream(seed, TAG_RATIO | i as u64);
        let a = normalized(p, alg, rng::gaussian_vec(&mut r, n));
        let b = normalized(p, alg, rng::gaussian_vec(&mut r, n));
        (a, b)
    }));
    let evaluated: Vec<Option<(f64, (Vec<f64>, Vec<f64>))>> = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let denom = p.eval_coords(alg, &a) * p.eval_coords(alg, &b);
            if denom <= RATIO_SKIP {
                return None;
            }
            let num = p.eval_coords(alg, &alg.mul_coords(&a, &b));
            Some((num / denom, (a, b)))
        })
        .collect();
    let total = evaluated.len();
    let kept: Vec<(f64, (Vec<f64>, Vec<f64>))> = evaluated.into_iter().flatten().collect();
    let pairs_evaluated = kept.len();
    let best = argmax(kept);
    Ok(RatioCheck {
        max_ratio: best.as_ref().map_or(0.0, |b| b.0),
        witness: best.map(|b| b.1),
        pairs_evaluated,
        pairs_skipped: total - pairs_evaluated,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MEstimate {
    /// Sampled lower bound of the best constant `m`, floored at [`M_HAT_FLOOR`].
    pub m_hat: f64,
    pub witness: Option<(Vec<f64>, Vec<f64>)>,
}

pub fn estimate_m(
    p: &SeminormSpec,
    alg: &FiniteDimRealAlgebra,
    samples: usize,
    seed: u64,
) -> Result<MEstimate> {
    let check = check_submultiplicative(p, alg, samples, seed)?;
    Ok(MEstimate {
        m_hat: check.max_ratio.max(M_HAT_FLOOR),
        witness: check.witness,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    /// `max |p(ka) - |k| p(a)| / (1 + |k| p(a))`.
    pub homogeneity_residual: f64,
    /// `max (p(a+b) - p(a) - p(b)) / (1 + p(a) + p(b))`, clamped at 0.
    pub triangle_violation: f64,
    /// Any negative or non-finite value seen.
    pub invalid_value: bool,
}

impl AxiomCheck {
    pub fn holds(&self, tol: f64) -> bool {
        !self.invalid_value && self.homogeneity_residual <= tol && self.triangle_violation <= tol
    }
}

/// Nonnegativity, absolute homogeneity and the triangle inequality on
/// sampled points and on pairs of basis vectors and the unit.
pub fn check_seminorm_axioms(
    p: &SeminormSpec,
    alg: &FiniteDimRealAlgebra,
    samples: usize,
    seed: u64,
) -> Result<AxiomCheck> {
    p.validate(alg)?;
    let n = alg.dim();
    let mut probes: Vec<Vec<f64>> = (0..n).map(|i| basis_vector(n, i)).collect();
    probes.extend(alg.unit().map(|u| u.to_vec()));
    let mut pairs: Vec<(Vec<f64>, Vec<f64>, f64)> = Vec::new();
    for a in &probes {
        for b in &probes {
            pairs.push((a.clone(), b.clone(), -2.5));
        }
    }
    pairs.extend((0..samples).map(|i| {
        let mut r = rng::stream(seed, TAG_AXIOMS | i as u64);
        let a = rng::gaussian_vec(&mut r, n);
        let b = rng::gaussian_vec(&mut r, n);
        let k = rng::gaussian_vec(&mut r, 1)[0] * 3.0;
        (a, b, k)
    }));
    let results: Vec<(f64, f64, bool)> = pairs
        .par_iter()
        .map(|(a, b, k)| {
            let pa = p.eval_coords(alg, a);
            let pb = p.eval_coords(alg, b);
            let sum: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let pab = p.eval_coords(alg, &sum);
            let scaled: Vec<f64> = a.iter().map(|x| k * x).collect();
            let pka = p.eval_coords(alg, &scaled);
            let invalid = [pa, pb, pab, pka].iter().any(|v| !v.is_finite() || *v < 0.0);
            let hom = (pka - k.abs() * pa).abs() / (1.0 + k.abs() * pa);
            let tri = ((pab - pa - pb) / (1.0 + pa + pb)).max(0.0);
            (hom, tri, invalid)
        })
        .collect();
    Ok(AxiomCheck {
        homogeneity_residual: results.iter().map(|r| r.0).fold(0.0, f64::max),
        triangle_violation: results.iter().map(|r| r.1).fold(0.0, f64::max),
        invalid_value: results.iter().any(|r| r.2),
    })
}

/// `max |p(a + k) - p(a)| / (1 + p(a))` over random `a` and random kernel
/// vectors `k`: the induced value on `A / Ker(p)` is well defined iff this
/// vanishes.
pub fn quotient_well_defined_residual(
    p: &SeminormSpec,
    alg: &FiniteDimRealAlgebra,
    kernel: &[Vec<f64>],
    samples: usize,
    seed: u64,
) -> Result<f64> {
    p.validate(alg)?;
    if kernel.is_empty() {
        return Ok(0.0);
    }
    let n = alg.dim();
    let worst = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::stream(seed, TAG_KERNEL | i as u64);
            let a = rng::gaussian_vec(&mut r, n);
            let coeffs = rng::gaussian_vec(&mut r, kernel.len());
            let scale = 10f64.powf(rng::gaussian_vec(&mut r, 1)[0].clamp(-2.0, 2.0));
            let mut shifted = a.clone();
            for (c, k) in coeffs.iter().zip(kernel) {
                for (s, kv) in shifted.iter_mut().zip(k) {
                    *s += scale * c * kv;
                }
            }
            let pa = p.eval_coords(alg, &a);
            (p.eval_coords(alg, &shifted) - pa).abs() / (1.0 + pa)
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn rr() -> FiniteDimRealAlgebra {
        corpus::direct_sum(&[corpus::reals(), corpus::reals()])
    }

    fn identity_character() -> Character {
        Character::new(
            &corpus::quaternions(),
            vec![Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K],
        )
        .unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let h = corpus::quaternions();
        let p = SeminormSpec::CharacterSup(vec![identity_character()]);
        assert_eq!(p.eval_coords(&h, &[1.0, 1.0, 1.0, 1.0]), 2.0);
        assert_eq!(SeminormSpec::ComponentSup(vec![0]).eval_coords(&rr(), &[0.0, 7.0]), 0.0);
        assert_eq!(
            SeminormSpec::CoordinateMax(vec![1.0, 1.0]).eval_coords(&rr(), &[2.0, -3.0]),
            3.0
        );
        assert!(matches!(
            SeminormSpec::CoordinateMax(vec![1.0]).validate(&rr()),
            Err(Error::PayloadMismatch(_))
        ));
        assert!(matches!(
            SeminormSpec::ComponentSup(vec![2]).validate(&rr()),
            Err(Error::PayloadMismatch(_))
        ));
        assert!(matches!(p.validate(&rr()), Err(Error::PayloadMismatch(_))));
    }

    #[test]
    fn square_property_examples() {
        let rrc = corpus::direct_sum(&[corpus::reals(), corpus::reals(), corpus::complexes()]);
        let sq = check_square_property(&SeminormSpec::SpectralRadius, &rrc, 500, 1).unwrap();
        assert!(sq.max_residual <= 1e-10, "{}", sq.max_residual);

        let h = corpus::quaternions();
        let p = SeminormSpec::CharacterSup(vec![identity_character()]);
        assert!(check_square_property(&p, &h, 500, 1).unwrap().max_residual <= 1e-12);

        // p((1+i)^2) = p(2i) = 2 while p(1+i)^2 = 4: residual 2 / 5
        let c = corpus::complexes();
        let l1 = SeminormSpec::CoordinateSum(vec![1.0, 1.0]);
        let pa = l1.eval_coords(&c, &[1.0, 1.0]);
        let pa2 = l1.eval_coords(&c, &c.mul_coords(&[1.0, 1.0], &[1.0, 1.0]));
        assert_eq!((pa, pa2), (2.0, 2.0));
        let sq = check_square_property(&l1, &c, 2000, 1).unwrap();
        assert!(sq.max_residual >= 0.4, "{}", sq.max_residual);
    }

    #[test]
    fn submultiplicativity_examples() {
        let h = corpus::quaternions();
        let p = SeminormSpec::CharacterSup(vec![identity_character()]);
        let r = check_submultiplicative(&p, &h, 1000, 2).unwrap();
        assert!((r.max_ratio - 1.0).abs() <= 1e-12);

        let r = check_submultiplicative(&SeminormSpec::SpectralRadius, &rr(), 1000, 2).unwrap();
        assert!(r.max_ratio <= 1.0 + 1e-12);

        let m2 = corpus::m2_reals();
        let r = check_submultiplicative(&SeminormSpec::OperatorNorm, &m2, 1000, 2).unwrap();
        assert!(r.max_ratio <= 1.0 + 1e-10);
    }

    #[test]
    fn m_estimates() {
        let c = corpus::complexes();
        let l1 = SeminormSpec::CoordinateSum(vec![1.0, 1.0]);
        assert!(estimate_m(&l1, &c, 1000, 3).unwrap().m_hat <= 1.0 + 1e-12);

        // 2 max|ab| <= 0.5 (2 max|a|)(2 max|b|), attained at basis pairs
        let scaled = SeminormSpec::CoordinateMax(vec![2.0, 2.0]);
        let m = estimate_m(&scaled, &rr(), 1000, 3).unwrap();
        assert!((m.m_hat - 0.5).abs() <= 1e-12);

        let zero = SeminormSpec::ComponentSup(vec![]);
        assert_eq!(estimate_m(&zero, &rr(), 10, 3).unwrap().m_hat, M_HAT_FLOOR);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            SeminormSpec::ComponentSup(vec![0]).kernel(&rr()).unwrap(),
            vec![vec![0.0, 1.0]]
        );
        let h = corpus::quaternions();
        let p = SeminormSpec::CharacterSup(vec![identity_character()]);
        assert!(p.kernel(&h).unwrap().is_empty());
        assert!(SeminormSpec::CoordinateMax(vec![1.0, 1.0]).kernel(&rr()).unwrap().is_empty());
        assert!(SeminormSpec::OperatorNorm.kernel(&corpus::m2_reals()).unwrap().is_empty());
        assert_eq!(
            SeminormSpec::OperatorNorm.kernel(&corpus::null_line()).unwrap(),
            vec![vec![1.0]]
        );
        let opaque = SeminormSpec::Opaque {
            name: "abs0".into(),
            eval: Arc::new(|a: &[f64]| a[0].abs()),
        };
        assert!(matches!(opaque.kernel(&rr()), Err(Error::UnsupportedVariant(_))));
    }

    #[test]
    fn spectral_radius_kernel_is_the_nil_part() {
        let en = corpus::extended_null();
        let k = SeminormSpec::SpectralRadius.kernel(&en).unwrap();
        assert_eq!(k, vec![vec![0.0, 0.0, 1.0]]);
        for alg in [
            corpus::direct_sum(&[corpus::reals(), corpus::reals(), corpus::complexes()]),
            corpus::quaternions(),
            corpus::m2_reals(),
        ] {
            assert!(SeminormSpec::SpectralRadius.kernel(&alg).unwrap().is_empty());
        }
    }

    #[test]
    fn axioms() {
        let a = check_seminorm_axioms(&SeminormSpec::SpectralRadius, &rr(), 200, 4).unwrap();
        assert!(a.holds(1e-10));
        // spectral radius on M2(R) breaks the triangle inequality at E12 + E21
        let a = check_seminorm_axioms(&SeminormSpec::SpectralRadius, &corpus::m2_reals(), 200, 4)
            .unwrap();
        assert!(a.triangle_violation > 0.1);
    }

    #[test]
    fn well_defined_on_kernel_cosets() {
        let p = SeminormSpec::ComponentSup(vec![0]);
        let k = p.kernel(&rr()).unwrap();
        assert_eq!(quotient_well_defined_residual(&p, &rr(), &k, 1000, 5).unwrap(), 0.0);
        let en = corpus::extended_null();
        let k = SeminormSpec::SpectralRadius.kernel(&en).unwrap();
        let r = quotient_well_defined_residual(&SeminormSpec::SpectralRadius, &en, &k, 1000, 5)
            .unwrap();
        assert!(r <= 1e-10, "{r}");
    }

    #[test]
    fn definition_round_trip() {
        let h = corpus::quaternions();
        for p in [
            SeminormSpec::CharacterSup(vec![identity_character()]),
            SeminormSpec::SpectralRadius,
            SeminormSpec::OperatorNorm,
            SeminormSpec::CoordinateMax(vec![1.0, 2.0, 0.0, 1.0]),
            SeminormSpec::CoordinateSum(vec![1.0; 4]),
            SeminormSpec::ComponentSup(vec![0, 3]),
        ] {
            let json = serde_json::to_string(&p.to_def().unwrap()).unwrap();
            let def: SeminormDef = serde_json::from_str(&json).unwrap();
            let back = SeminormSpec::from_def(&def, &h).unwrap();
            assert_eq!(format!("{back:?}"), format!("{p:?}"));
        }
    }

    #[test]
    fn malformed_definitions_name_the_field() {
        let rr = rr();
        let field_of = |json: &str| match SeminormSpec::from_def(&serde_json::from_str(json).unwrap(), &rr) {
            Err(Error::InvalidInput { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(field_of(r#"{"type":"nope"}"#), "type");
        assert_eq!(field_of(r#"{"type":"coordinate_max"}"#), "weights");
        assert_eq!(field_of(r#"{"type":"coordinate_max","weights":[1]}"#), "weights");
        assert_eq!(field_of(r#"{"type":"component_sup","subset":[5]}"#), "subset");
        assert_eq!(
            field_of(r#"{"type":"character_sup","characters":[[[1,0,0,0],[1,0,0,0]]]}"#),
            "characters[0]"
        );
    }
}
