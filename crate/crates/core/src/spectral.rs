//! Spectra through the left regular representation and the Gelfand radius
//! through repeated squaring.
//!
//! For a real algebra, `s + it` lies in the spectrum of `a` iff
//! `(a - se)^2 + t^2 e` is not invertible. In the complexification that
//! element factors as `(a - (s+it)e)(a - (s-it)e)`, so the spectrum is the
//! (conjugate-closed) eigenvalue set of `L_a` computed in the unital hull.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, FiniteDimRealAlgebra};
use crate::error::{Error, Result};
use crate::linalg;

/// Default number of squarings for [`gelfand_radius`].
pub const DEFAULT_SQUARINGS: usize = 64;
/// Largest accepted change between the last two radius iterates.
pub const GELFAND_DELTA_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    /// Eigenvalues with multiplicity, sorted by `(re, im)`.
    pub points: Vec<Complex<f64>>,
    pub radius: f64,
}

impl SpectrumResult {
    fn from_points(points: Vec<Complex<f64>>) -> Self {
        let radius = points.iter().map(|c| c.norm()).fold(0.0, f64::max);
        SpectrumResult { points, radius }
    }

    /// Every point has its conjugate in the multiset (greedy matching).
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        let conj: Vec<Complex<f64>> = self.points.iter().map(|c| c.conj()).collect();
        multiset_distance(&self.points, &conj) <= tol
    }

    /// Distinct points after merging those within `tol`.
    pub fn distinct_points(&self, tol: f64) -> Vec<Complex<f64>> {
        let mut out: Vec<Complex<f64>> = Vec::new();
        for p in &self.points {
            if out.iter().all(|q| (p - q).norm() > tol) {
                out.push(*p);
            }
        }
        out
    }
}

/// Spectrum of coordinates `a` in `alg`. Non-unital algebras are unitized
/// first, so the result then carries the extra eigenvalue `0`.
pub fn spectrum_coords(alg: &FiniteDimRealAlgebra, a: &[f64]) -> SpectrumResult {
    let l = if alg.is_unital() {
        alg.left_regular_coords(a)
    } else {
        let hull = alg.unitize();
        hull.left_regular_coords(&FiniteDimRealAlgebra::embed_in_unitization(a))
    };
    SpectrumResult::from_points(linalg::eigenvalues(&l))
}

pub fn spectrum(a: &AlgebraElement) -> SpectrumResult {
    spectrum_coords(a.algebra(), a.coords())
}

pub fn spectral_radius_coords(alg: &FiniteDimRealAlgebra, a: &[f64]) -> f64 {
    spectrum_coords(alg, a).radius
}

pub fn spectral_radius(a: &AlgebraElement) -> f64 {
    spectrum(a).radius
}

/// Membership test straight from the definition: is `(a - se)^2 + t^2 e`
/// outside the group of invertibles?
pub fn in_spectrum_paper_def_coords(
    alg: &FiniteDimRealAlgebra,
    a: &[f64],
    s: f64,
    t: f64,
) -> Result<bool> {
    let e = alg.unit().ok_or(Error::NotUnital)?;
    let shifted: Vec<f64> = a.iter().zip(e).map(|(x, u)| x - s * u).collect();
    let mut m = alg.mul_coords(&shifted, &shifted);
    for (x, u) in m.iter_mut().zip(e) {
        *x += t * t * u;
    }
    // on the spectrum the two terms cancel, leaving only rounding noise
    let ls = linalg::operator_norm(&alg.left_regular_coords(&shifted));
    let scale = ls * ls + t * t * linalg::operator_norm(&alg.left_regular_coords(e));
    Ok(!linalg::is_nonsingular_at_scale(
        &alg.left_regular_coords(&m),
        crate::algebra::INVERTIBILITY_REL_TOL,
        scale,
    ))
}

pub fn in_spectrum_paper_def(a: &AlgebraElement, s: f64, t: f64) -> Result<bool> {
    in_spectrum_paper_def_coords(a.algebra(), a.coords(), s, t)
}

/// Operator norm of the left regular representation.
pub fn regular_operator_norm(alg: &FiniteDimRealAlgebra, a: &[f64]) -> f64 {
    linalg::operator_norm(&alg.left_regular_coords(a))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GelfandEstimate {
    pub radius: f64,
    /// `|r_k - r_{k-1}|` for the last two iterates.
    pub delta: f64,
    pub squarings: usize,
}

/// `lim ||a^n||^{1/n}` along `n = 2^k`.
///
/// Keeps the current power scaled to norm one and accumulates the log-norm,
/// so `||a^{2^k}|| = exp(log_acc)` never overflows.
pub fn gelfand_radius_coords<F>(
    alg: &FiniteDimRealAlgebra,
    a: &[f64],
    norm: F,
    squarings: usize,
) -> Result<GelfandEstimate>
where
    F: Fn(&[f64]) -> f64,
{
    let n0 = norm(a);
    if n0 == 0.0 {
        return Ok(GelfandEstimate {
            radius: 0.0,
            delta: 0.0,
            squarings: 0,
        });
    }
    let mut x: Vec<f64> = a.iter().map(|c| c / n0).collect();
    let mut log_acc = n0.ln();
    let mut prev = n0;
    let mut delta = f64::INFINITY;
    let mut radius = n0;
    for k in 1..=squarings {
        let y = alg.mul_coords(&x, &x);
        let ny = norm(&y);
        if ny == 0.0 {
            // nilpotent: some power vanishes exactly
            return Ok(GelfandEstimate {
                radius: 0.0,
                delta: prev,
                squarings: k,
            });
        }
        log_acc = 2.0 * log_acc + ny.ln();
        x = y.iter().map(|c| c / ny).collect();
        radius = (log_acc / 2f64.powi(k as i32)).exp();
        delta = (radius - prev).abs();
        prev = radius;
    }
    if delta > GELFAND_DELTA_TOL {
        return Err(Error::NonConvergence {
            delta,
            iterations: squarings,
        });
    }
    Ok(GelfandEstimate {
        radius,
        delta,
        squarings,
    })
}

pub fn gelfand_radius<F>(a: &AlgebraElement, norm: F, squarings: usize) -> Result<GelfandEstimate>
where
    F: Fn(&[f64]) -> f64,
{
    gelfand_radius_coords(a.algebra(), a.coords(), norm, squarings)
}

/// Greedy matching distance between two equal-length multisets of complex
/// numbers: max over matched pairs of `|p - q|`, infinite on length mismatch.
pub fn multiset_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for p in a {
        let mut best: Option<(usize, f64)> = None;
        for (idx, q) in b.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let d = (p - q).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((idx, d));
            }
        }
        let (idx, d) = best.expect("lengths match");
        used[idx] = true;
        worst = worst.max(d);
    }
    worst
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    fn one_sided(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
        a.iter()
            .map(|p| {
                b.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    one_sided(a, b).max(one_sided(b, a))
}

/// One-sided distance: how far the farthest point of `a` is from `b`.
pub fn inclusion_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    a.iter()
        .map(|p| {
            b.iter()
                .map(|q| (p - q).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::quaternion::Quaternion;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn max_abs(v: &[f64]) -> f64 {
        v.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    #[test]
    fn spectrum_examples() {
        let cc = corpus::complexes();
        let s = spectrum_coords(&cc, &[0.0, 1.0]);
        assert!(multiset_distance(&s.points, &[c(0.0, 1.0), c(0.0, -1.0)]) < 1e-14);
        assert!((s.radius - 1.0).abs() < 1e-14);

        let rr = corpus::direct_sum(&[corpus::reals(), corpus::reals()]);
        let s = spectrum_coords(&rr, &[2.0, -3.0]);
        assert_eq!(s.points, vec![c(-3.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(s.radius, 3.0);

        let h = corpus::quaternions();
        let s = spectrum_coords(&h, &[1.0, 1.0, 1.0, 1.0]);
        let q = Quaternion::new(1.0, 1.0, 1.0, 1.0);
        // L_q has each point of the quaternion spectrum with multiplicity 2
        let want: Vec<_> = q.spectrum().iter().flat_map(|p| [*p, *p]).collect();
        assert!(multiset_distance(&s.points, &want) < 1e-12);
        assert!((s.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn definition_membership_examples() {
        let cc = corpus::complexes();
        assert!(in_spectrum_paper_def_coords(&cc, &[0.0, 1.0], 0.0, 1.0).unwrap());
        assert!(!in_spectrum_paper_def_coords(&cc, &[0.0, 1.0], 0.0, 0.5).unwrap());
        let m2 = corpus::m2_reals();
        assert!(in_spectrum_paper_def_coords(&m2, &[0.0, 1.0, 0.0, 0.0], 0.0, 0.0).unwrap());
        assert_eq!(
            in_spectrum_paper_def_coords(&corpus::null_line(), &[1.0], 0.0, 0.0),
            Err(Error::NotUnital)
        );
    }

    #[test]
    fn definition_membership_survives_cancellation() {
        // (a - w)^2 + |v|^2 is zero up to rounding for a = w + v in H
        let h = corpus::quaternions();
        let a = [1.070893617279624, -0.3, 1.2, 0.8];
        let t = (0.3f64 * 0.3 + 1.2 * 1.2 + 0.8 * 0.8).sqrt();
        assert!(in_spectrum_paper_def_coords(&h, &a, a[0], t).unwrap());
        assert!(in_spectrum_paper_def_coords(&h, &a, a[0], -t).unwrap());
        assert!(!in_spectrum_paper_def_coords(&h, &a, a[0], t * 1.01).unwrap());
    }

    #[test]
    fn gelfand_examples() {
        let rr = corpus::direct_sum(&[corpus::reals(), corpus::reals()]);
        let g = gelfand_radius_coords(&rr, &[2.0, -3.0], max_abs, DEFAULT_SQUARINGS).unwrap();
        assert!((g.radius - 3.0).abs() < 1e-12);

        let m2 = corpus::m2_reals();
        let g = gelfand_radius_coords(
            &m2,
            &[0.0, 1.0, 0.0, 0.0],
            |x| regular_operator_norm(&m2, x),
            DEFAULT_SQUARINGS,
        )
        .unwrap();
        assert_eq!(g.radius, 0.0);

        let h = Arc::new(corpus::quaternions());
        let a = AlgebraElement::new(Arc::clone(&h), vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let g = gelfand_radius(&a, |x| Quaternion::from_array([x[0], x[1], x[2], x[3]]).norm(), 8)
            .unwrap();
        assert!((g.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_convergence_is_reported() {
        // a Jordan-type element converges like n^{1/n}; two squarings are not enough
        let m2 = corpus::m2_reals();
        let err = gelfand_radius_coords(
            &m2,
            &[1.0, 100.0, 0.0, 1.0],
            |x| regular_operator_norm(&m2, x),
            2,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn spectral_radius_examples() {
        let rr = corpus::direct_sum(&[corpus::reals(), corpus::reals()]);
        assert_eq!(spectral_radius_coords(&rr, &[2.0, -3.0]), 3.0);
        let m2 = corpus::m2_reals();
        assert!(spectral_radius_coords(&m2, &[0.0, 1.0, 0.0, 0.0]) < 1e-12);
        let cc = corpus::complexes();
        assert!((spectral_radius_coords(&cc, &[0.0, 1.0]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_unital_spectrum_includes_zero() {
        let n = corpus::extended_null();
        let s = spectrum_coords(&n, &[2.0, -1.0, 5.0]);
        assert_eq!(s.points.len(), 4);
        assert!((s.radius - 2.0).abs() < 1e-12);
    }
}
