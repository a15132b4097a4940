//! Eigen-beamformers from the leading singular vectors of a link channel.

use crate::error::{Error, Result};
use crate::linalg::{self, normalize_column_phases, real, CMat};

/// Leading singular vectors of a channel.
#[derive(Debug, Clone)]
pub struct EigenBeams {
    pub matrix: CMat,
    /// Some requested stream sits on a numerically zero singular value.
    pub degenerate: bool,
}

fn leading(h: &CMat, ns: usize) -> Result<(linalg::SortedSvd, bool)> {
    let (nr, nt) = h.shape();
    if ns == 0 || ns > nr.min(nt) {
        return Err(Error::InvalidArgument(format!(
            "stream count {ns} must be in 1..=min(Nt, Nr) = {}",
            nr.min(nt)
        )));
    }
    let s = linalg::svd(h)?;
    let degenerate = s.rank(nr, nt) < ns;
    Ok((s, degenerate))
}

/// `Ns` leading right singular vectors of `h` (`Nr x Nt`), each scaled to norm `sqrt(Nt)`.
pub fn eigen_precoder(h: &CMat, ns: usize) -> Result<EigenBeams> {
    let (s, degenerate) = leading(h, ns)?;
    let mut f = s.v.columns(0, ns).into_owned();
    normalize_column_phases(&mut f);
    f *= real((h.ncols() as f64).sqrt());
    Ok(EigenBeams { matrix: f, degenerate })
}

/// `Ns` leading left singular vectors of `h`, orthonormal columns.
pub fn eigen_combiner(h: &CMat, ns: usize) -> Result<EigenBeams> {
    let (s, degenerate) = leading(h, ns)?;
    let mut w = s.u.columns(0, ns).into_owned();
    normalize_column_phases(&mut w);
    Ok(EigenBeams { matrix: w, degenerate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, CVec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn diag(vals: &[f64]) -> CMat {
        CMat::from_diagonal(&CVec::from_iterator(vals.len(), vals.iter().map(|&v| real(v))))
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, k: usize) -> CMat {
        CMat::from_fn(r, k, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
    }

    #[test]
    fn diagonal_precoder() {
        let f = eigen_precoder(&diag(&[3.0, 2.0, 1.0]), 2).unwrap();
        assert!(!f.degenerate);
        let m = f.matrix;
        let s3 = 3f64.sqrt();
        assert!((m[(0, 0)] - real(s3)).norm() < 1e-12);
        assert!((m[(1, 1)] - real(s3)).norm() < 1e-12);
        assert!(m[(2, 0)].norm() < 1e-12 && m[(2, 1)].norm() < 1e-12);
        assert!(m[(1, 0)].norm() < 1e-12 && m[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn identity_precoder_is_maximal() {
        let h = CMat::identity(4, 4);
        let f = eigen_precoder(&h, 1).unwrap().matrix;
        assert!((f.norm() - 2.0).abs() < 1e-12);
        // every unit vector gives gain 1 through the identity
        assert!(((&h * &f).norm() / f.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_precoder_beats_random_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let h = random_matrix(&mut rng, 8, 8);
        let f = eigen_precoder(&h, 1).unwrap().matrix;
        let gain = (&h * &f).norm() / f.norm();
        let mut best = 0.0f64;
        for _ in 0..10_000 {
            let v = random_matrix(&mut rng, 8, 1);
            best = best.max((&h * &v).norm() / v.norm());
        }
        assert!(gain >= best - 1e-12, "{gain} < {best}");
    }

    #[test]
    fn diagonal_combiner() {
        let w = eigen_combiner(&diag(&[3.0, 2.0, 1.0]), 1).unwrap().matrix;
        assert!((w[(0, 0)] - real(1.0)).norm() < 1e-12);
        assert!(w[(1, 0)].norm() < 1e-12 && w[(2, 0)].norm() < 1e-12);
    }

    #[test]
    fn combiner_orthonormal_and_decoupled() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let h = random_matrix(&mut rng, 6, 9);
            let w = eigen_combiner(&h, 3).unwrap().matrix;
            assert!((w.adjoint() * &w - CMat::identity(3, 3)).norm() < 1e-12);
            // discarded right singular directions
            let s = linalg::svd(&h).unwrap();
            let v_perp = s.v.columns(3, s.v.ncols() - 3).into_owned();
            assert!((w.adjoint() * &h * v_perp).norm() < 1e-12 * h.norm());
        }
    }

    #[test]
    fn rank_deficient_flagged() {
        let f = eigen_precoder(&diag(&[1.0, 0.0, 0.0]), 2).unwrap();
        assert!(f.degenerate);
        assert_eq!(f.matrix.ncols(), 2);
        assert!(eigen_precoder(&diag(&[1.0, 1.0]), 3).is_err());
        assert!(eigen_combiner(&diag(&[1.0, 1.0]), 0).is_err());
    }
}
