//! Small complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, column-major.
pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Singular value decomposition with singular values sorted in decreasing order.
///
/// `u` is `p x r`, `v` is `q x r` with `r = min(p, q)` unless built with
/// [`svd_full_right`].
#[derive(Debug, Clone)]
pub struct SortedSvd {
    pub u: CMat,
    pub singular_values: Vec<f64>,
    pub v: CMat,
}

impl SortedSvd {
    /// Numerical rank using the threshold `max(p, q) * eps * sigma_max`.
    pub fn rank(&self, rows: usize, cols: usize) -> usize {
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        if smax <= 0.0 {
            return 0;
        }
        let tol = rows.max(cols) as f64 * f64::EPSILON * smax;
        self.singular_values.iter().filter(|&&s| s > tol).count()
    }
}

/// Thin SVD, sorted.
pub fn svd(m: &CMat) -> Result<SortedSvd> {
    let (p, q) = m.shape();
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument(format!("svd of empty {p}x{q} matrix")));
    }
    let dec = nalgebra::SVD::try_new(m.clone(), true, true, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let u = dec.u.ok_or_else(|| Error::Numerical("SVD returned no U".into()))?;
    let v_t = dec.v_t.ok_or_else(|| Error::Numerical("SVD returned no V^H".into()))?;
    let v = v_t.adjoint();
    let sv: Vec<f64> = dec.singular_values.iter().copied().collect();

    let mut order: Vec<usize> = (0..sv.len()).collect();
    // stable: equal singular values keep the decomposition's order
    order.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));

    Ok(SortedSvd {
        u: u.select_columns(order.iter()),
        singular_values: order.iter().map(|&k| sv[k]).collect(),
        v: v.select_columns(order.iter()),
    })
}

/// SVD whose right factor is square (`q x q`), so that right singular vectors
/// of zero singular values are available even for wide matrices.
///
/// Wide inputs are padded with zero rows, which only appends zero singular
/// values. The returned `singular_values` has length `q`.
pub fn svd_full_right(m: &CMat) -> Result<SortedSvd> {
    let (p, q) = m.shape();
    if p >= q {
        return svd(m);
    }
    let mut padded = CMat::zeros(q, q);
    padded.view_mut((0, 0), (p, q)).copy_from(m);
    let mut out = svd(&padded)?;
    out.u = out.u.rows(0, p).into_owned();
    Ok(out)
}

/// Rotate each column so its largest-magnitude entry is real and positive.
pub fn normalize_column_phases(m: &mut CMat) {
    for mut col in m.column_iter_mut() {
        let pivot = col
            .iter()
            .copied()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap_or(Complex64::new(0.0, 0.0));
        let mag = pivot.norm();
        if mag > 0.0 {
            let rot = pivot.conj() / mag;
            col.iter_mut().for_each(|z| *z *= rot);
        }
    }
}

pub fn column_norms(m: &CMat) -> Vec<f64> {
    m.column_iter().map(|c| c.norm()).collect()
}

/// Scale every nonzero column to Euclidean norm `target`.
///
/// Returns the pre-scaling norms. Columns whose norm is at most `floor` are
/// zeroed rather than scaled.
pub fn scale_columns_to(m: &mut CMat, target: f64, floor: f64) -> Vec<f64> {
    let norms = column_norms(m);
    for (mut col, &n) in m.column_iter_mut().zip(&norms) {
        if n > floor {
            col *= Complex64::new(target / n, 0.0);
        } else {
            col.fill(Complex64::new(0.0, 0.0));
        }
    }
    norms
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Natural-log determinant of a Hermitian positive-definite matrix via Cholesky.
pub fn ln_det_hpd(m: &CMat) -> Result<f64> {
    let chol = nalgebra::Cholesky::new(hermitian_part(m))
        .ok_or_else(|| Error::Numerical("matrix is not positive definite".into()))?;
    let l = chol.l_dirty();
    Ok((0..l.nrows()).map(|k| 2.0 * l[(k, k)].re.ln()).sum())
}

pub fn frobenius(m: &CMat) -> f64 {
    m.norm()
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svd_sorted_and_reconstructs() {
        let m = CMat::from_fn(4, 6, |r, k| c((r * 7 + k * 3) as f64 % 5.0, (r + 2 * k) as f64 % 3.0));
        let s = svd(&m).unwrap();
        assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
        let sigma = CMat::from_diagonal(&CVec::from_iterator(
            s.singular_values.len(),
            s.singular_values.iter().map(|&x| real(x)),
        ));
        let back = &s.u * sigma * s.v.adjoint();
        assert!((back - &m).norm() < 1e-12 * m.norm());
    }

    #[test]
    fn full_right_factor_is_square_and_unitary() {
        let m = CMat::from_fn(2, 5, |r, k| c(r as f64 + 1.0, k as f64 - 2.0));
        let s = svd_full_right(&m).unwrap();
        assert_eq!(s.v.shape(), (5, 5));
        assert_eq!(s.singular_values.len(), 5);
        let gram = s.v.adjoint() * &s.v;
        assert!((gram - CMat::identity(5, 5)).norm() < 1e-12);
        assert_eq!(s.rank(2, 5), 2);
    }

    #[test]
    fn phase_normalization_makes_pivot_real_positive() {
        let mut m = CMat::from_column_slice(3, 1, &[c(0.1, 0.0), c(0.0, -2.0), c(0.5, 0.5)]);
        normalize_column_phases(&mut m);
        assert!((m[(1, 0)] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn ln_det_matches_diagonal() {
        let m = CMat::from_diagonal(&CVec::from_vec(vec![real(2.0), real(3.0)]));
        assert!((ln_det_hpd(&m).unwrap() - 6f64.ln()).abs() < 1e-14);
    }
}
