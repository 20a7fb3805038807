//! Small dense helpers over `nalgebra` used across the crate.

use nalgebra::{Complex, DMatrix, DVector};

/// Singular values in decreasing order.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Largest singular value (operator 2-norm).
pub fn operator_norm(m: &DMatrix<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Square matrix nonsingular in the scale-free sense `sigma_min > rel_tol * sigma_max`.
pub fn is_nonsingular(m: &DMatrix<f64>, rel_tol: f64) -> bool {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&max), Some(&min)) => max > 0.0 && min > rel_tol * max,
        _ => false,
    }
}

/// Like [`is_nonsingular`], but the threshold is at least `rel_tol * scale`,
/// for matrices formed by cancellation of terms of size `scale`.
pub fn is_nonsingular_at_scale(m: &DMatrix<f64>, rel_tol: f64, scale: f64) -> bool {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&max), Some(&min)) => max > 0.0 && min > rel_tol * max.max(scale),
        _ => false,
    }
}

/// Orthonormal basis of the null space of `m`, as columns.
///
/// Right singular vectors whose singular value is at most
/// `rel_tol * max(sigma_max, 1)`.
pub fn null_space(m: &DMatrix<f64>, rel_tol: f64) -> Vec<DVector<f64>> {
    let n = m.ncols();
    if n == 0 {
        return Vec::new();
    }
    // pad to at least n rows so the SVD returns a full V
    let rows = m.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max).max(1.0);
    let mut out: Vec<DVector<f64>> = (0..sv.len())
        .filter(|&r| sv[r] <= rel_tol * max)
        .map(|r| v_t.row(r).transpose())
        .collect();
    for v in &mut out {
        canonical_sign(v);
    }
    orthonormalize(&out, 1e-12)
}

/// Pivoted Gram-Schmidt: picks, at each step, the remaining vector with the
/// largest residual norm (ties to the lowest index) and keeps it if the
/// residual exceeds `tol`. Deterministic given input order.
pub fn pivoted_gram_schmidt(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut residuals: Vec<DVector<f64>> = vectors.to_vec();
    let mut used = vec![false; residuals.len()];
    let mut basis: Vec<DVector<f64>> = Vec::new();
    loop {
        let mut best: Option<(usize, f64)> = None;
        for (idx, r) in residuals.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let nrm = r.norm();
            if best.is_none_or(|(_, b)| nrm > b * (1.0 + 1e-12)) {
                best = Some((idx, nrm));
            }
        }
        let Some((idx, nrm)) = best else { break };
        if nrm <= tol {
            break;
        }
        used[idx] = true;
        let q = &residuals[idx] / nrm;
        for (other, r) in residuals.iter_mut().enumerate() {
            if !used[other] {
                let proj = q.dot(r);
                r.axpy(-proj, &q, 1.0);
            }
        }
        basis.push(q);
    }
    basis
}

/// Orthonormal basis of the span of `vectors`, in input order (no pivoting).
pub fn orthonormalize(vectors: &[DVector<f64>], tol: f64) -> Vec<DVector<f64>> {
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        // two passes for stability
        for _ in 0..2 {
            for q in &basis {
                let proj = q.dot(&r);
                r.axpy(-proj, q, 1.0);
            }
        }
        let nrm = r.norm();
        if nrm > tol * v.norm().max(1.0) {
            basis.push(r / nrm);
        }
    }
    basis
}

/// Norm of the component of `w` orthogonal to the orthonormal set `basis`.
pub fn residual_off_span(basis: &[DVector<f64>], w: &DVector<f64>) -> f64 {
    let mut r = w.clone();
    for _ in 0..2 {
        for q in basis {
            let proj = q.dot(&r);
            r.axpy(-proj, q, 1.0);
        }
    }
    r.norm()
}

/// Flip sign so the largest-magnitude entry is positive.
fn canonical_sign(v: &mut DVector<f64>) {
    let mut best = 0.0f64;
    for &x in v.iter() {
        if x.abs() > best.abs() * (1.0 + 1e-9) {
            best = x;
        }
    }
    if best < 0.0 {
        v.neg_mut();
    }
}

/// Complex eigenvalues of a real square matrix, sorted by (re, im).
pub fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex<f64>> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<Complex<f64>> = m.clone().complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    ev
}

/// Least-squares solution of `m x = b` via SVD.
pub fn least_squares(m: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    let svd = m.clone().svd(true, true);
    svd.solve(b, 1e-14).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_rank_one() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&m, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!((m.clone() * v).norm() < 1e-14);
        }
    }

    #[test]
    fn pivoted_selection_is_deterministic() {
        let vs = vec![
            DVector::from_vec(vec![0.0, 0.0]),
            DVector::from_vec(vec![1.0, 0.0]),
            DVector::from_vec(vec![1.0, 1.0]),
        ];
        let b = pivoted_gram_schmidt(&vs, 1e-12);
        assert_eq!(b.len(), 2);
        // (1,1) has the largest norm and is picked first
        assert!((b[0][0] - b[0][1]).abs() < 1e-15);
    }

    #[test]
    fn rotation_eigenvalues() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let ev = eigenvalues(&m);
        assert!((ev[0] - Complex::new(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - Complex::new(0.0, 1.0)).norm() < 1e-14);
    }
}
