//! Quaternion-valued characters: nonzero real-linear maps `x: A -> H` with
//! `x(ab) = x(a) x(b)`.
//!
//! A character is fixed by its images `q_i = x(e_i)` on the basis, and it is
//! multiplicative as soon as `q_i q_j = sum_k c_ijk q_k` for every basis pair.
//! The set of characters can be a continuum (for H it is the conjugation
//! orbit), so [`find_characters`] samples it with a damped Gauss-Newton
//! search from random starts and never claims to enumerate it.

use nalgebra::{Complex, DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, FiniteDimRealAlgebra};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::rng;
use crate::spectral;

/// Accepted characters have scaled residual at most this.
pub const CHARACTER_TOL: f64 = 1e-9;
/// The solver accepts a restart only below this residual.
pub const ACCEPT_RESIDUAL: f64 = 1e-11;
/// Images closer than this (max over basis) are the same character.
pub const DEDUP_DISTANCE: f64 = 1e-6;
/// Minimum `max_i |q_i|` for a nonzero character.
pub const NONZERO_TOL: f64 = 1e-6;
pub const MAX_SOLVER_ITERATIONS: usize = 500;
/// `|x(a)|` below this counts as vanishing.
pub const VANISHING_TOL: f64 = 1e-10;
/// Point tolerance for spectrum inclusion and equality.
pub const SPECTRUM_POINT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Character {
    /// `x(e_i)` for each basis element.
    pub images: Vec<Quaternion>,
    /// Scaled multiplicativity defect, see [`character_residual`].
    pub residual: f64,
}

impl Character {
    /// Wraps images, computing the residual. Does not reject non-characters.
    pub fn new(alg: &FiniteDimRealAlgebra, images: Vec<Quaternion>) -> Result<Self> {
        if images.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "character has {} images but {} has dimension {}",
                images.len(),
                alg.name(),
                alg.dim()
            )));
        }
        let residual = character_residual(alg, &images).scaled;
        Ok(Character { images, residual })
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    /// `x(a) = sum_i a_i q_i`.
    pub fn evaluate(&self, a: &[f64]) -> Quaternion {
        self.images
            .iter()
            .zip(a)
            .fold(Quaternion::ZERO, |acc, (q, &c)| acc + q.scale(c))
    }

    /// Residual within tolerance, unit sent to 1 when unital, and not zero.
    pub fn is_valid_for(&self, alg: &FiniteDimRealAlgebra) -> bool {
        if self.images.len() != alg.dim() || self.residual > CHARACTER_TOL {
            return false;
        }
        let max = self.images.iter().map(|q| q.norm()).fold(0.0, f64::max);
        if max < NONZERO_TOL {
            return false;
        }
        match alg.unit() {
            Some(u) => self.evaluate(u).max_abs_diff(Quaternion::ONE) <= CHARACTER_TOL,
            None => true,
        }
    }

    fn distance(&self, other: &Character) -> f64 {
        self.images
            .iter()
            .zip(&other.images)
            .map(|(p, q)| p.max_abs_diff(*q))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterResidual {
    /// `defect / (1 + max_i |q_i|^2)`.
    pub scaled: f64,
    /// `max_{i,j} |q_i q_j - sum_k c_ijk q_k|`.
    pub defect: f64,
    /// Basis pair attaining the defect.
    pub pair: (usize, usize),
}

pub fn character_residual(alg: &FiniteDimRealAlgebra, images: &[Quaternion]) -> CharacterResidual {
    let n = alg.dim();
    let mut defect = 0.0f64;
    let mut pair = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let mut lin = Quaternion::ZERO;
            for k in 0..n {
                let c = alg.constant(i, j, k);
                if c != 0.0 {
                    lin += images[k].scale(c);
                }
            }
            let d = (images[i] * images[j] - lin).norm();
            if d > defect {
                defect = d;
                pair = (i, j);
            }
        }
    }
    let max_sq = images.iter().map(|q| q.norm_sqr()).fold(0.0, f64::max);
    CharacterResidual {
        scaled: defect / (1.0 + max_sq),
        defect,
        pair,
    }
}

/// Matrix of `d -> q d`.
fn left_mul_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    [
        [q.w, -q.x, -q.y, -q.z],
        [q.x, q.w, -q.z, q.y],
        [q.y, q.z, q.w, -q.x],
        [q.z, -q.y, q.x, q.w],
    ]
}

/// Matrix of `d -> d q`.
fn right_mul_matrix(q: Quaternion) -> [[f64; 4]; 4] {
    [
        [q.w, -q.x, -q.y, -q.z],
        [q.x, q.w, q.z, -q.y],
        [q.y, -q.z, q.w, q.x],
        [q.z, q.y, -q.x, q.w],
    ]
}

/// Residual system for unital characters of `alg`: multiplicativity on all
/// basis pairs followed by `x(u) = 1`.
struct CharacterSystem<'a> {
    alg: &'a FiniteDimRealAlgebra,
    unit: &'a [f64],
    /// Row weight of the `x(u) = 1` equations.
    unit_weight: f64,
    /// Known solution removed by deflation: the residual is multiplied by
    /// `1 + 1/|theta - theta*|^2`, so the solver is repelled from `theta*`.
    deflated: Option<DVector<f64>>,
}

impl CharacterSystem<'_> {
    fn images(theta: &DVector<f64>) -> Vec<Quaternion> {
        theta
            .as_slice()
            .chunks(4)
            .map(|c| Quaternion::new(c[0], c[1], c[2], c[3]))
            .collect()
    }

    fn residuals(&self, theta: &DVector<f64>) -> DVector<f64> {
        let r = self.raw_residuals(theta);
        match &self.deflated {
            Some(root) => r * (1.0 + 1.0 / (theta - root).norm_squared()),
            None => r,
        }
    }

    fn jacobian(&self, theta: &DVector<f64>) -> DMatrix<f64> {
        let jac = self.raw_jacobian(theta);
        match &self.deflated {
            Some(root) => {
                // d(m r) = m dr + r dm^T with m = 1 + 1/|d|^2, dm = -2 d / |d|^4
                let d = theta - root;
                let d2 = d.norm_squared();
                let m = 1.0 + 1.0 / d2;
                let dm = d * (-2.0 / (d2 * d2));
                jac * m + self.raw_residuals(theta) * dm.transpose()
            }
            None => jac,
        }
    }

    fn raw_residuals(&self, theta: &DVector<f64>) -> DVector<f64> {
        let n = self.alg.dim();
        let q = Self::images(theta);
        let mut r = DVector::zeros(4 * n * n + 4);
        for i in 0..n {
            for j in 0..n {
                let mut v = q[i] * q[j];
                for k in 0..n {
                    let c = self.alg.constant(i, j, k);
                    if c != 0.0 {
                        v = v - q[k].scale(c);
                    }
                }
                let row = 4 * (i * n + j);
                r.rows_mut(row, 4).copy_from_slice(&v.to_array());
            }
        }
        let xu = q
            .iter()
            .zip(self.unit)
            .fold(Quaternion::ZERO, |acc, (qi, &u)| acc + qi.scale(u))
            - Quaternion::ONE;
        r.rows_mut(4 * n * n, 4)
            .copy_from_slice(&xu.scale(self.unit_weight).to_array());
        r
    }

    fn raw_jacobian(&self, theta: &DVector<f64>) -> DMatrix<f64> {
        let n = self.alg.dim();
        let q = Self::images(theta);
        let mut jac = DMatrix::zeros(4 * n * n + 4, 4 * n);
        for i in 0..n {
            for j in 0..n {
                let row = 4 * (i * n + j);
                // d(q_i q_j) = dq_i q_j + q_i dq_j
                let rq = right_mul_matrix(q[j]);
                let lq = left_mul_matrix(q[i]);
                for a in 0..4 {
                    for b in 0..4 {
                        jac[(row + a, 4 * i + b)] += rq[a][b];
                        jac[(row + a, 4 * j + b)] += lq[a][b];
                    }
                }
                for k in 0..n {
                    let c = self.alg.constant(i, j, k);
                    if c != 0.0 {
                        for a in 0..4 {
                            jac[(row + a, 4 * k + a)] -= c;
                        }
                    }
                }
            }
        }
        for (i, &u) in self.unit.iter().enumerate() {
            if u != 0.0 {
                for a in 0..4 {
                    jac[(4 * n * n + a, 4 * i + a)] += self.unit_weight * u;
                }
            }
        }
        jac
    }

    /// Levenberg-damped Gauss-Newton from `theta`. Returns the final point.
    fn solve(&self, mut theta: DVector<f64>) -> DVector<f64> {
        let mut r = self.residuals(&theta);
        let mut cost = r.norm_squared();
        let mut jac = self.jacobian(&theta);
        let mut jtj = jac.transpose() * &jac;
        let mut grad = jac.transpose() * &r;
        let mut lambda = 1e-3 * jtj.diagonal().max().max(1.0);
        for _ in 0..MAX_SOLVER_ITERATIONS {
            if r.amax() <= 1e-15 {
                break;
            }
            let mut damped = jtj.clone();
            for d in 0..damped.nrows() {
                damped[(d, d)] += lambda;
            }
            let Some(chol) = damped.cholesky() else {
                lambda *= 10.0;
                continue;
            };
            let step = chol.solve(&(-&grad));
            let candidate = &theta + &step;
            let r_new = self.residuals(&candidate);
            let cost_new = r_new.norm_squared();
            if cost_new < cost {
                theta = candidate;
                r = r_new;
                cost = cost_new;
                jac = self.jacobian(&theta);
                jtj = jac.transpose() * &jac;
                grad = jac.transpose() * &r;
                lambda = (lambda / 3.0).max(1e-15);
                if step.amax() <= 1e-16 * (1.0 + theta.amax()) {
                    break;
                }
            } else {
                lambda *= 4.0;
                if lambda > 1e16 {
                    break;
                }
            }
        }
        theta
    }
}

/// One damped least-squares restart; `Some` only if it reaches the acceptance
/// residual. Even restarts start from random unit quaternions, odd ones from
/// Gaussian images, which reach different basins.
fn unital_restart(
    alg: &FiniteDimRealAlgebra,
    unit: &[f64],
    deflated: Option<&DVector<f64>>,
    restart: usize,
    seed: u64,
) -> Option<Character> {
    let mut rng = rng::stream(seed, restart as u64);
    let n = alg.dim();
    let mut theta = DVector::zeros(4 * n);
    for i in 0..n {
        let q = if restart.is_multiple_of(2) {
            rng::unit_quaternion(&mut rng)
        } else {
            let g = rng::gaussian_vec(&mut rng, 4);
            Quaternion::new(g[0], g[1], g[2], g[3]).scale(0.7)
        };
        theta.rows_mut(4 * i, 4).copy_from_slice(&q.to_array());
    }
    let system = CharacterSystem {
        alg,
        unit,
        unit_weight: 10.0 * n as f64,
        deflated: deflated.cloned(),
    };
    let theta = system.solve(theta);
    let mut images = CharacterSystem::images(&theta);
    for q in &mut images {
        for c in [&mut q.w, &mut q.x, &mut q.y, &mut q.z] {
            if c.abs() < 1e-15 {
                *c = 0.0;
            }
        }
    }
    let ch = Character::new(alg, images).ok()?;
    let unit_defect = ch.evaluate(unit).max_abs_diff(Quaternion::ONE);
    (ch.residual <= ACCEPT_RESIDUAL && unit_defect <= ACCEPT_RESIDUAL).then_some(ch)
}

fn canonical_order(a: &Character, b: &Character) -> std::cmp::Ordering {
    let ka = a.images.iter().flat_map(|q| q.to_array());
    let kb = b.images.iter().flat_map(|q| q.to_array());
    for (x, y) in ka.zip(kb) {
        match x.total_cmp(&y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn dedup(mut found: Vec<Character>) -> Vec<Character> {
    found.sort_by(canonical_order);
    let mut kept: Vec<Character> = Vec::new();
    for ch in found {
        if kept.iter().all(|k| k.distance(&ch) > DEDUP_DISTANCE) {
            kept.push(ch);
        }
    }
    kept
}

/// Samples `X(A)` with `restarts` independent solver runs.
///
/// Unital algebras are solved with the constraint `x(u) = 1`, which every
/// nonzero character satisfies (`x(u)` is an idempotent of H). A non-unital
/// algebra is searched through its unitization: characters of `B` are exactly
/// the restrictions of unital characters of `B_1` that do not vanish on `B`.
///
/// Output order is canonical (sorted by image values, then deduplicated), so
/// it depends only on `seed` and not on thread scheduling.
pub fn find_characters(alg: &FiniteDimRealAlgebra, restarts: usize, seed: u64) -> Vec<Character> {
    match alg.unit() {
        Some(unit) => {
            let found: Vec<Character> = (0..restarts)
                .into_par_iter()
                .filter_map(|r| unital_restart(alg, unit, None, r, seed))
                .collect();
            dedup(found)
        }
        None => {
            let hull = alg.unitize();
            let unit = hull.unit().expect("unitization is unital").to_vec();
            // the character e -> 1, B -> 0 of the hull restricts to zero; deflate it
            let mut trivial = DVector::zeros(4 * hull.dim());
            trivial[0] = 1.0;
            let found: Vec<Character> = (0..restarts)
                .into_par_iter()
                .filter_map(|r| unital_restart(&hull, &unit, Some(&trivial), r, seed))
                .filter_map(|ch| {
                    let restricted = ch.images[1..].to_vec();
                    let max = restricted.iter().map(|q| q.norm()).fold(0.0, f64::max);
                    if max < NONZERO_TOL {
                        return None;
                    }
                    Character::new(alg, restricted).ok()
                })
                .collect();
            dedup(found)
        }
    }
}

fn check_dims(a: &AlgebraElement, chars: &[Character]) -> Result<()> {
    if chars.iter().any(|c| c.dim() != a.algebra().dim()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// `J(a) = (x(a))_x` over the given characters.
pub fn j_evaluate(a: &AlgebraElement, chars: &[Character]) -> Result<Vec<Quaternion>> {
    check_dims(a, chars)?;
    Ok(chars.iter().map(|c| c.evaluate(a.coords())).collect())
}

/// `max_x |x(a)|` over the sampled characters: a lower bound of the true
/// sup-norm of `J(a)`.
pub fn sampled_sup_norm(a: &AlgebraElement, chars: &[Character]) -> Result<f64> {
    if chars.is_empty() {
        return Err(Error::EmptyCharacterSet);
    }
    Ok(j_evaluate(a, chars)?
        .iter()
        .map(|q| q.norm())
        .fold(0.0, f64::max))
}

pub(crate) fn sampled_sup_norm_coords(a: &[f64], chars: &[Character]) -> f64 {
    chars
        .iter()
        .map(|c| c.evaluate(a).norm())
        .fold(0.0, f64::max)
}

/// Union over characters of the quaternion spectrum of `x(a)`.
pub fn character_spectrum_union(a: &[f64], chars: &[Character]) -> Vec<Complex<f64>> {
    chars
        .iter()
        .flat_map(|c| c.evaluate(a).spectrum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prop31Check {
    pub invertible: bool,
    /// `min_x |x(a)|`.
    pub min_character_modulus: f64,
    /// Invertible elements have nowhere-vanishing `J(a)`.
    pub forward_ok: bool,
    /// Max distance from a point of some `sp(x(a))` to `sp(a)`.
    pub inclusion_distance: f64,
    pub spectrum_inclusion_ok: bool,
    /// Hausdorff distance between `sp(a)` and the union of `sp(x(a))`.
    /// Only meaningful when the character set is known to be complete.
    pub equality_distance: f64,
    /// Non-invertible `a` with some vanishing `x(a)`.
    pub vanishing_witness: bool,
}

/// Checks the invertibility and spectrum transfer between `a` and `J(a)` on
/// the sampled characters.
pub fn check_prop31(a: &AlgebraElement, chars: &[Character]) -> Result<Prop31Check> {
    check_prop31_coords(a.algebra(), a.coords(), chars)
}

pub fn check_prop31_coords(
    alg: &FiniteDimRealAlgebra,
    a: &[f64],
    chars: &[Character],
) -> Result<Prop31Check> {
    if chars.iter().any(|c| c.dim() != alg.dim()) {
        return Err(Error::AlgebraMismatch);
    }
    let invertible = alg.is_invertible_coords(a)?;
    let min_character_modulus = chars
        .iter()
        .map(|c| c.evaluate(a).norm())
        .fold(f64::INFINITY, f64::min);
    let forward_ok = !invertible || min_character_modulus > VANISHING_TOL;
    let sp = spectral::spectrum_coords(alg, a);
    let union = character_spectrum_union(a, chars);
    let inclusion_distance = spectral::inclusion_distance(&union, &sp.points);
    let equality_distance = spectral::hausdorff_distance(&sp.points, &union);
    Ok(Prop31Check {
        invertible,
        min_character_modulus,
        forward_ok,
        inclusion_distance,
        spectrum_inclusion_ok: inclusion_distance <= SPECTRUM_POINT_TOL,
        equality_distance,
        vanishing_witness: !invertible && min_character_modulus <= VANISHING_TOL,
    })
}

/// A nonzero element with zero spectral radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NilpotentWitness {
    pub label: String,
    pub coords: Vec<f64>,
    pub spectral_radius: f64,
    pub note: String,
}

/// First basis element with vanishing spectral radius. Such an element rules
/// out any norm with `||a|| <= m r(a)`, and every character kills it.
pub fn nilpotent_witness(alg: &FiniteDimRealAlgebra) -> Option<NilpotentWitness> {
    (0..alg.dim()).find_map(|i| {
        let e = crate::algebra::basis_vector(alg.dim(), i);
        let r = spectral::spectral_radius_coords(alg, &e);
        (r <= 1e-8).then(|| NilpotentWitness {
            label: alg.labels()[i].clone(),
            coords: e,
            spectral_radius: r,
            note: format!(
                "{} is nonzero with r({}) = 0, so no norm satisfies ||a|| <= m r(a) on {}",
                alg.labels()[i],
                alg.labels()[i],
                alg.name()
            ),
        })
    })
}
