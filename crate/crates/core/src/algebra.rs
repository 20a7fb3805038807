//! Finite-dimensional real associative algebras given by structure constants.
//!
//! `e_i * e_j = sum_k c_ijk e_k`. The sparse table is the source of truth; a
//! dense `n^3` copy is kept for the associativity and unit solves.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Relative singular-value cutoff for invertibility.
pub const INVERTIBILITY_REL_TOL: f64 = 1e-10;
/// Absolute tolerance factor for the associativity check, scaled by `(1 + max|c|)^2`.
pub const ASSOCIATIVITY_TOL: f64 = 1e-10;
/// Unit residual tolerance, scaled by `(1 + max|c|)`.
pub const UNIT_TOL: f64 = 1e-12;
/// Residual of `A V + V A` off `span(V)` accepted for an ideal.
pub const IDEAL_TOL: f64 = 1e-10;

/// One nonzero structure constant `c_ijk`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

impl StructureConstant {
    pub fn new(i: usize, j: usize, k: usize, value: f64) -> Self {
        StructureConstant { i, j, k, value }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDimRealAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<StructureConstant>,
    dense: Vec<f64>,
    unit: Option<Vec<f64>>,
}

impl FiniteDimRealAlgebra {
    /// Validates the table and the unit. When `unit` is `None` the unit is
    /// searched for with [`find_unit`](Self::find_unit).
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<StructureConstant>,
        unit: Option<Vec<f64>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::DimensionMismatch(
                "algebra dimension must be positive".into(),
            ));
        }
        let mut dense = vec![0.0; n * n * n];
        for (idx, c) in table.iter().enumerate() {
            if c.i >= n || c.j >= n || c.k >= n {
                return Err(Error::DimensionMismatch(format!(
                    "table entry {idx} ({}, {}, {}) out of range for dimension {n}",
                    c.i, c.j, c.k
                )));
            }
            if !c.value.is_finite() {
                return Err(Error::DimensionMismatch(format!(
                    "table entry {idx} is not finite"
                )));
            }
            dense[(c.i * n + c.j) * n + c.k] += c.value;
        }
        // canonical sparse form: sorted, merged, zeros dropped
        let mut sparse = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = dense[(i * n + j) * n + k];
                    if v != 0.0 {
                        sparse.push(StructureConstant::new(i, j, k, v));
                    }
                }
            }
        }
        let mut alg = FiniteDimRealAlgebra {
            name: name.into(),
            labels,
            table: sparse,
            dense,
            unit: None,
        };
        alg.check_associativity()?;
        alg.unit = match unit {
            Some(u) => {
                if u.len() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "unit has length {} but dimension is {n}",
                        u.len()
                    )));
                }
                let residual = alg.unit_residual(&u);
                if residual > UNIT_TOL * (1.0 + alg.max_abs_constant()) {
                    return Err(Error::BadUnit { residual });
                }
                Some(u)
            }
            None => alg.find_unit(),
        };
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[StructureConstant] {
        &self.table
    }

    pub fn unit(&self) -> Option<&[f64]> {
        self.unit.as_deref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.dim();
        self.dense[(i * n + j) * n + k]
    }

    pub fn max_abs_constant(&self) -> f64 {
        self.table.iter().map(|c| c.value.abs()).fold(0.0, f64::max)
    }

    /// Worst associativity defect; errors if above tolerance.
    fn check_associativity(&self) -> Result<()> {
        let n = self.dim();
        let tol = ASSOCIATIVITY_TOL * (1.0 + self.max_abs_constant()).powi(2);
        let mut worst = (0.0, 0, 0, 0, 0);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut lhs = 0.0;
                        let mut rhs = 0.0;
                        for m in 0..n {
                            lhs += self.constant(i, j, m) * self.constant(m, k, l);
                            rhs += self.constant(j, k, m) * self.constant(i, m, l);
                        }
                        let d = (lhs - rhs).abs();
                        if d > worst.0 {
                            worst = (d, i, j, k, l);
                        }
                    }
                }
            }
        }
        if worst.0 > tol {
            let (residual, i, j, k, l) = worst;
            return Err(Error::AssociativityViolation {
                i,
                j,
                k,
                l,
                residual,
            });
        }
        Ok(())
    }

    /// Max over basis `j` of `|u e_j - e_j|` and `|e_j u - e_j|` (sup norm).
    pub fn unit_residual(&self, u: &[f64]) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for j in 0..n {
            let e = basis_vector(n, j);
            let left = self.mul_coords(u, &e);
            let right = self.mul_coords(&e, u);
            for k in 0..n {
                let target = if k == j { 1.0 } else { 0.0 };
                worst = worst
                    .max((left[k] - target).abs())
                    .max((right[k] - target).abs());
            }
        }
        worst
    }

    /// Solves `u e_j = e_j = e_j u` for all `j` in the least-squares sense and
    /// returns `u` if it is an exact two-sided unit.
    pub fn find_unit(&self) -> Option<Vec<f64>> {
        let n = self.dim();
        // unknown u_i; equations sum_i u_i c_ijk = delta_jk and sum_i u_i c_jik = delta_jk
        let mut m = DMatrix::zeros(2 * n * n, n);
        let mut rhs = DVector::zeros(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                let row = j * n + k;
                for i in 0..n {
                    m[(row, i)] = self.constant(i, j, k);
                    m[(n * n + row, i)] = self.constant(j, i, k);
                }
                if j == k {
                    rhs[row] = 1.0;
                    rhs[n * n + row] = 1.0;
                }
            }
        }
        let sol = linalg::least_squares(&m, &rhs)?;
        let mut u: Vec<f64> = sol.iter().copied().collect();
        for x in &mut u {
            if x.abs() < 1e-14 {
                *x = 0.0;
            }
            let r = x.round();
            if (*x - r).abs() < 1e-14 {
                *x = r;
            }
        }
        if self.unit_residual(&u) <= UNIT_TOL * (1.0 + self.max_abs_constant()) {
            Some(u)
        } else {
            None
        }
    }

    /// `a * b` on coordinate vectors.
    pub fn mul_coords(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for c in &self.table {
            out[c.k] += a[c.i] * b[c.j] * c.value;
        }
        out
    }

    /// Matrix of `b -> a b` in the standard basis.
    pub fn left_regular_coords(&self, a: &[f64]) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for c in &self.table {
            m[(c.k, c.j)] += a[c.i] * c.value;
        }
        m
    }

    /// Matrix of `b -> b a` in the standard basis.
    pub fn right_regular_coords(&self, a: &[f64]) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for c in &self.table {
            m[(c.k, c.i)] += a[c.j] * c.value;
        }
        m
    }

    /// Invertibility through bijectivity of left multiplication. In a unital
    /// finite-dimensional algebra a bijective `L_a` gives `ab = e`, and then
    /// `ca = e` follows from the same argument on the right, so `b = c`.
    pub fn is_invertible_coords(&self, a: &[f64]) -> Result<bool> {
        if !self.is_unital() {
            return Err(Error::NotUnital);
        }
        Ok(linalg::is_nonsingular(
            &self.left_regular_coords(a),
            INVERTIBILITY_REL_TOL,
        ))
    }

    /// Max residual of `e_i v` and `v e_i` off `span(V)` for every basis `e_i`
    /// and every `v` in an orthonormal basis of `span(V)`.
    pub fn ideal_residual(&self, subspace: &[Vec<f64>]) -> f64 {
        let n = self.dim();
        let vs: Vec<DVector<f64>> = subspace
            .iter()
            .map(|v| DVector::from_column_slice(v))
            .collect();
        let basis = linalg::orthonormalize(&vs, 1e-12);
        let mut worst = 0.0f64;
        for v in &basis {
            let v = v.as_slice();
            for i in 0..n {
                let e = basis_vector(n, i);
                for w in [self.mul_coords(&e, v), self.mul_coords(v, &e)] {
                    let w = DVector::from_vec(w);
                    worst = worst.max(linalg::residual_off_span(&basis, &w));
                }
            }
        }
        worst
    }

    pub fn subspace_is_two_sided_ideal(&self, subspace: &[Vec<f64>]) -> bool {
        self.ideal_residual(subspace) <= IDEAL_TOL * (1.0 + self.max_abs_constant())
    }

    /// `A / span(V)` with structure constants induced on an orthonormal
    /// complement basis.
    ///
    /// The complement is built by projecting the standard basis onto `V^perp`
    /// and running pivoted Gram-Schmidt on the projections.
    pub fn quotient(&self, ideal: &[Vec<f64>]) -> Result<Quotient> {
        let n = self.dim();
        let residual = self.ideal_residual(ideal);
        if residual > IDEAL_TOL * (1.0 + self.max_abs_constant()) {
            return Err(Error::NotAnIdeal { residual });
        }
        let vs: Vec<DVector<f64>> = ideal
            .iter()
            .map(|v| DVector::from_column_slice(v))
            .collect();
        let ideal_basis = linalg::orthonormalize(&vs, 1e-12);
        let projected: Vec<DVector<f64>> = (0..n)
            .map(|i| {
                let mut e = DVector::from_vec(basis_vector(n, i));
                for _ in 0..2 {
                    for q in &ideal_basis {
                        let p = q.dot(&e);
                        e.axpy(-p, q, 1.0);
                    }
                }
                e
            })
            .collect();
        let complement = linalg::pivoted_gram_schmidt(&projected, 1e-10);
        let q = complement.len();
        if q == 0 {
            return Err(Error::ZeroQuotient);
        }
        let mut lift = DMatrix::zeros(n, q);
        for (c, v) in complement.iter().enumerate() {
            for r in 0..n {
                let x = v[r];
                lift[(r, c)] = if x.abs() < 1e-15 { 0.0 } else { x };
            }
        }
        let projection = lift.transpose();

        let mut table = Vec::new();
        for a in 0..q {
            for b in 0..q {
                let la: Vec<f64> = lift.column(a).iter().copied().collect();
                let lb: Vec<f64> = lift.column(b).iter().copied().collect();
                let prod = DVector::from_vec(self.mul_coords(&la, &lb));
                let coords = &projection * prod;
                for (k, &v) in coords.iter().enumerate() {
                    if v.abs() > 1e-14 {
                        table.push(StructureConstant::new(a, b, k, v));
                    }
                }
            }
        }
        let labels = (0..q)
            .map(|c| {
                let col = lift.column(c);
                let hits: Vec<usize> = (0..n).filter(|&r| col[r].abs() > 1e-12).collect();
                if hits.len() == 1 && (col[hits[0]] - 1.0).abs() < 1e-12 {
                    format!("[{}]", self.labels[hits[0]])
                } else {
                    format!("q{c}")
                }
            })
            .collect();
        let algebra = FiniteDimRealAlgebra::new(
            format!("{} / ideal(dim {})", self.name, n - q),
            labels,
            table,
            None,
        )?;
        Ok(Quotient {
            algebra: Arc::new(algebra),
            projection,
            lift,
        })
    }

    /// `B_1 = R e + B` with a fresh central unit `e` at coordinate 0.
    ///
    /// Always adjoins a new unit, even when `self` is already unital; the
    /// result is then a larger (still legitimate) algebra.
    pub fn unitize(&self) -> FiniteDimRealAlgebra {
        let n = self.dim();
        let mut table = vec![StructureConstant::new(0, 0, 0, 1.0)];
        for j in 0..n {
            table.push(StructureConstant::new(0, j + 1, j + 1, 1.0));
            table.push(StructureConstant::new(j + 1, 0, j + 1, 1.0));
        }
        table.extend(
            self.table
                .iter()
                .map(|c| StructureConstant::new(c.i + 1, c.j + 1, c.k + 1, c.value)),
        );
        let mut labels = vec!["e".to_string()];
        labels.extend(self.labels.iter().cloned());
        let mut unit = vec![0.0; n + 1];
        unit[0] = 1.0;
        FiniteDimRealAlgebra::new(format!("({})_1", self.name), labels, table, Some(unit))
            .expect("unitization of an associative algebra is associative")
    }

    /// Embeds `b` into the unitization as `0 e + b`.
    pub fn embed_in_unitization(b: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(b.len() + 1);
        out.push(0.0);
        out.extend_from_slice(b);
        out
    }
}

impl fmt::Display for FiniteDimRealAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

pub fn basis_vector(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// The quotient algebra together with the linear maps relating it to `A`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<FiniteDimRealAlgebra>,
    /// `q x n`, rows are the orthonormal complement basis.
    pub projection: DMatrix<f64>,
    /// `n x q`, the complement basis as columns.
    pub lift: DMatrix<f64>,
}

impl Quotient {
    pub fn project(&self, a: &[f64]) -> Vec<f64> {
        (&self.projection * DVector::from_column_slice(a))
            .iter()
            .copied()
            .collect()
    }

    pub fn lift(&self, c: &[f64]) -> Vec<f64> {
        (&self.lift * DVector::from_column_slice(c))
            .iter()
            .copied()
            .collect()
    }
}

/// An element of a specific algebra.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    algebra: Arc<FiniteDimRealAlgebra>,
    coords: Vec<f64>,
}

impl AlgebraElement {
    pub fn new(algebra: Arc<FiniteDimRealAlgebra>, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates but {} has dimension {}",
                coords.len(),
                algebra.name(),
                algebra.dim()
            )));
        }
        Ok(AlgebraElement { algebra, coords })
    }

    pub fn zero(algebra: &Arc<FiniteDimRealAlgebra>) -> Self {
        let n = algebra.dim();
        AlgebraElement {
            algebra: Arc::clone(algebra),
            coords: vec![0.0; n],
        }
    }

    pub fn basis(algebra: &Arc<FiniteDimRealAlgebra>, i: usize) -> Self {
        AlgebraElement {
            algebra: Arc::clone(algebra),
            coords: basis_vector(algebra.dim(), i),
        }
    }

    pub fn unit(algebra: &Arc<FiniteDimRealAlgebra>) -> Result<Self> {
        let u = algebra.unit().ok_or(Error::NotUnital)?.to_vec();
        Ok(AlgebraElement {
            algebra: Arc::clone(algebra),
            coords: u,
        })
    }

    pub fn algebra(&self) -> &Arc<FiniteDimRealAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn same_algebra(&self, other: &AlgebraElement) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_algebra(other)?;
        Ok(AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.mul_coords(&self.coords, &other.coords),
        })
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_algebra(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords,
        })
    }

    pub fn scale(&self, s: f64) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|x| x * s).collect(),
        }
    }

    pub fn square(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.mul_coords(&self.coords, &self.coords),
        }
    }

    pub fn left_regular_matrix(&self) -> DMatrix<f64> {
        self.algebra.left_regular_coords(&self.coords)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        self.algebra.is_invertible_coords(&self.coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn elem(alg: &Arc<FiniteDimRealAlgebra>, c: &[f64]) -> AlgebraElement {
        AlgebraElement::new(Arc::clone(alg), c.to_vec()).unwrap()
    }

    /// Matrix product oracle for M2(R) in the basis E11, E12, E21, E22.
    fn mat2_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
        vec![
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ]
    }

    #[test]
    fn complexes_are_accepted_with_detected_unit() {
        let c = corpus::complexes();
        assert_eq!(c.unit(), Some(&[1.0, 0.0][..]));
        let q = corpus::quaternions();
        assert_eq!(q.unit(), Some(&[1.0, 0.0, 0.0, 0.0][..]));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // e1 e1 = e2, e2 e1 = e1: (e1 e1) e1 = e1 but e1 (e1 e1) = e1 e2 = 0
        let err = FiniteDimRealAlgebra::new(
            "bad",
            vec!["e1".into(), "e2".into()],
            vec![
                StructureConstant::new(0, 0, 1, 1.0),
                StructureConstant::new(1, 0, 0, 1.0),
            ],
            None,
        )
        .unwrap_err();
        match err {
            Error::AssociativityViolation { residual, .. } => assert_eq!(residual, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_unit_and_bad_indices() {
        let err = FiniteDimRealAlgebra::new(
            "R",
            vec!["1".into()],
            vec![StructureConstant::new(0, 0, 0, 1.0)],
            Some(vec![2.0]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadUnit { .. }));
        let err = FiniteDimRealAlgebra::new(
            "R",
            vec!["1".into()],
            vec![StructureConstant::new(0, 1, 0, 1.0)],
            None,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)));
    }

    #[test]
    fn multiplication_examples() {
        let rr = Arc::new(corpus::direct_sum(&[corpus::reals(), corpus::reals()]));
        assert_eq!(elem(&rr, &[2.0, 3.0]).mul(&elem(&rr, &[5.0, 7.0])).unwrap().coords(), &[10.0, 21.0]);
        let c = Arc::new(corpus::complexes());
        assert_eq!(elem(&c, &[0.0, 1.0]).square().coords(), &[-1.0, 0.0]);
        let m2 = Arc::new(corpus::m2_reals());
        let e12 = AlgebraElement::basis(&m2, 1);
        let e21 = AlgebraElement::basis(&m2, 2);
        assert_eq!(e12.mul(&e21).unwrap().coords(), &[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(e12.mul(&elem(&rr, &[1.0, 1.0])), Err(Error::AlgebraMismatch)));
    }

    #[test]
    fn m2_agrees_with_matrix_product() {
        let m2 = corpus::m2_reals();
        let mut rng = crate::rng::stream(3, 0);
        for _ in 0..100 {
            let a = crate::rng::gaussian_vec(&mut rng, 4);
            let b = crate::rng::gaussian_vec(&mut rng, 4);
            let got = m2.mul_coords(&a, &b);
            let want = mat2_mul(&a, &b);
            for k in 0..4 {
                assert!((got[k] - want[k]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn regular_matrices() {
        let c = corpus::complexes();
        let l = c.left_regular_coords(&[0.0, 1.0]);
        assert_eq!(l, DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
        let rr = corpus::direct_sum(&[corpus::reals(), corpus::reals()]);
        assert_eq!(
            rr.left_regular_coords(&[2.0, 3.0]),
            DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0])
        );
        for alg in corpus::unital_algebras() {
            let u = alg.unit().unwrap().to_vec();
            assert_eq!(alg.left_regular_coords(&u), DMatrix::identity(alg.dim(), alg.dim()));
        }
    }

    #[test]
    fn invertibility() {
        let rr = corpus::direct_sum(&[corpus::reals(), corpus::reals()]);
        assert!(rr.is_invertible_coords(&[2.0, 3.0]).unwrap());
        assert!(!rr.is_invertible_coords(&[0.0, 3.0]).unwrap());
        let m2 = corpus::m2_reals();
        assert!(!m2.is_invertible_coords(&[0.0, 1.0, 0.0, 0.0]).unwrap());
        assert!(m2.is_invertible_coords(&[0.0, 1.0, 1.0, 0.0]).unwrap());
        let null = corpus::null_line();
        assert_eq!(null.is_invertible_coords(&[1.0]), Err(Error::NotUnital));
    }

    #[test]
    fn unit_search_and_unitization() {
        assert_eq!(corpus::null_line().find_unit(), None);
        let b1 = corpus::null_line().unitize();
        assert_eq!(b1.dim(), 2);
        assert_eq!(
            b1.table(),
            &[
                StructureConstant::new(0, 0, 0, 1.0),
                StructureConstant::new(0, 1, 1, 1.0),
                StructureConstant::new(1, 0, 1, 1.0),
            ]
        );
        assert_eq!(b1.find_unit(), Some(vec![1.0, 0.0]));
        assert_eq!(corpus::m2_reals().unit(), Some(&[1.0, 0.0, 0.0, 1.0][..]));
    }

    #[test]
    fn ideal_checks() {
        let rr = corpus::direct_sum(&[corpus::reals(), corpus::reals()]);
        assert!(rr.subspace_is_two_sided_ideal(&[vec![0.0, 1.0]]));
        assert!(rr.subspace_is_two_sided_ideal(&[vec![1.0, 0.0], vec![0.0, 1.0]]));
        assert!(rr.subspace_is_two_sided_ideal(&[]));
        assert!(!rr.subspace_is_two_sided_ideal(&[vec![1.0, 1.0]]));
        let m2 = corpus::m2_reals();
        // E21 E12 = E22 is not in span{E12}
        assert!(!m2.subspace_is_two_sided_ideal(&[vec![0.0, 1.0, 0.0, 0.0]]));
    }

    #[test]
    fn quotients() {
        let rr = corpus::direct_sum(&[corpus::reals(), corpus::reals()]);
        let q = rr.quotient(&[vec![0.0, 1.0]]).unwrap();
        assert_eq!(q.algebra.dim(), 1);
        assert_eq!(q.algebra.table(), &[StructureConstant::new(0, 0, 0, 1.0)]);
        assert_eq!(q.algebra.unit(), Some(&[1.0][..]));
        assert_eq!(q.project(&[2.0, 5.0]), vec![2.0]);

        let same = rr.quotient(&[]).unwrap();
        assert_eq!(same.algebra.table(), rr.table());

        let rrc = corpus::direct_sum(&[corpus::reals(), corpus::reals(), corpus::complexes()]);
        let q = rrc
            .quotient(&[vec![0.0, 0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]])
            .unwrap();
        assert_eq!(q.algebra.table(), rr.table());

        assert!(matches!(
            rr.quotient(&[vec![1.0, 1.0]]),
            Err(Error::NotAnIdeal { .. })
        ));
        assert!(matches!(
            rr.quotient(&[vec![1.0, 0.0], vec![0.0, 1.0]]),
            Err(Error::ZeroQuotient)
        ));
    }

    #[test]
    fn corpus_is_valid() {
        for alg in corpus::all_algebras() {
            if let Some(u) = alg.unit() {
                assert!(alg.unit_residual(u) <= 1e-12, "{}", alg.name());
            }
        }
        assert_eq!(corpus::direct_sum(&[corpus::reals(), corpus::complexes()]).dim(), 3);
        assert_eq!(corpus::function_algebra_h(2).dim(), 8);
    }
}
