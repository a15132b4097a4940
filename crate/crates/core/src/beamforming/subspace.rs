use crate::error::Result;
use crate::linalg::{self, CMat};

/// Orthonormal basis (`q x d`) for the null space of `m` (`p x q`).
///
/// Singular values at or below `max(p, q) * eps * sigma_max` count as zero.
/// A full column rank `m` yields a `q x 0` basis.
pub fn null_space_basis(m: &CMat) -> Result<CMat> {
    let (p, q) = m.shape();
    if p == 0 {
        return Ok(CMat::identity(q, q));
    }
    let s = linalg::svd_full_right(m)?;
    let rank = s.rank(p, q);
    Ok(s.v.columns(rank, q - rank).into_owned())
}

/// Orthogonal projection `B B^H X` of the columns of `x` onto `span(B)` for
/// orthonormal `b`. An empty basis projects everything to zero.
pub fn project_onto(b: &CMat, x: &CMat) -> CMat {
    if b.ncols() == 0 {
        return CMat::zeros(x.nrows(), x.ncols());
    }
    b * (b.adjoint() * x)
}
