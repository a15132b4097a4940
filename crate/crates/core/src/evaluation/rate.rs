//! Closed-form spectral efficiency with Gaussian signaling.
//!
//! Symbols and noise are unit-covariance circular Gaussian, so the receiver
//! output `W^H y` carries colored noise `W^H W` plus, at the full-duplex node,
//! the self-interference covariance. Rates are the log-determinant of
//! `I + snr T^{-1} G G^H` with `G = W^H H F`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_part, ln_det_hpd, real, CMat};

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn check_dims(h: &CMat, f: &CMat, w: &CMat) -> Result<()> {
    if h.nrows() != w.nrows() || h.ncols() != f.nrows() {
        return Err(Error::InvalidArgument(format!(
            "channel {}x{} does not match precoder {}x{} and combiner {}x{}",
            h.nrows(),
            h.ncols(),
            f.nrows(),
            f.ncols(),
            w.nrows(),
            w.ncols()
        )));
    }
    Ok(())
}

/// `log2 det(I + snr T^{-1} G G^H)` for a given interference-plus-noise covariance `T`.
fn log_det_rate(gain: &CMat, t: &CMat, snr: f64) -> Result<f64> {
    if !(snr >= 0.0) {
        return Err(Error::InvalidArgument(format!("SNR must be non-negative, got {snr}")));
    }
    if snr == 0.0 {
        return Ok(0.0);
    }
    let chol = nalgebra::Cholesky::new(hermitian_part(t))
        .ok_or_else(|| Error::Numerical("combiner noise covariance is singular".into()))?;
    // whiten: K = L^{-1} G so that T^{-1} G G^H is similar to K K^H
    let whitened = chol
        .l()
        .solve_lower_triangular(gain)
        .ok_or_else(|| Error::Numerical("triangular solve failed".into()))?;
    let k = whitened.nrows();
    let m = CMat::identity(k, k) + &whitened * whitened.adjoint() * real(snr);
    let bits = ln_det_hpd(&m)? / std::f64::consts::LN_2;
    if !bits.is_finite() {
        return Err(Error::Numerical(format!("non-finite rate {bits}")));
    }
    Ok(bits.max(0.0))
}

/// Rate of a link whose receiver also sees self-interference through `H_ii F_self`.
///
/// SNR values are linear.
pub fn se_link_with_si(
    h_des: &CMat,
    f_des: &CMat,
    w: &CMat,
    h_ii: &CMat,
    f_self: &CMat,
    snr_des: f64,
    snr_si: f64,
) -> Result<f64> {
    check_dims(h_des, f_des, w)?;
    check_dims(h_ii, f_self, w)?;
    if !(snr_si >= 0.0) {
        return Err(Error::InvalidArgument(format!("SI SNR must be non-negative, got {snr_si}")));
    }
    let wh = w.adjoint();
    let gain = &wh * h_des * f_des;
    let mut t = &wh * w;
    if snr_si > 0.0 {
        let leak = &wh * h_ii * f_self;
        t += &leak * leak.adjoint() * real(snr_si);
    }
    log_det_rate(&gain, &t, snr_des)
}

/// Rate of an interference-free link.
pub fn se_link_no_si(h_des: &CMat, f_des: &CMat, w: &CMat, snr: f64) -> Result<f64> {
    check_dims(h_des, f_des, w)?;
    let wh = w.adjoint();
    let gain = &wh * h_des * f_des;
    log_det_rate(&gain, &(&wh * w), snr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scalar(z: f64) -> CMat {
        CMat::from_element(1, 1, real(z))
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, k: usize) -> CMat {
        CMat::from_fn(r, k, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
    }

    #[test]
    fn zero_snr_is_zero_rate() {
        let one = scalar(1.0);
        assert_eq!(se_link_with_si(&one, &one, &one, &one, &one, 0.0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn scalar_awgn() {
        let one = scalar(1.0);
        for snr in [0.1f64, 1.0, 10.0, 1000.0] {
            let want = (1.0 + snr).log2();
            assert!((se_link_no_si(&one, &one, &one, snr).unwrap() - want).abs() < 1e-14);
            assert!(
                (se_link_with_si(&one, &one, &one, &scalar(0.0), &one, snr, 1e12).unwrap() - want).abs()
                    < 1e-14
            );
        }
    }

    #[test]
    fn scalar_with_si_hand_value() {
        // snr_si * |W^H H_ii F|^2 = 9, desired SNR 10 -> log2(1 + 10 / 10) = 1
        let one = scalar(1.0);
        let se = se_link_with_si(&one, &one, &one, &scalar(3.0), &one, 10.0, 1.0).unwrap();
        assert!((se - 1.0).abs() < 1e-14);
    }

    #[test]
    fn no_si_matches_zero_si_snr() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let h = random_matrix(&mut rng, 6, 5);
            let f = random_matrix(&mut rng, 5, 2);
            let w = random_matrix(&mut rng, 6, 2);
            let h_ii = random_matrix(&mut rng, 6, 5);
            let a = se_link_no_si(&h, &f, &w, 3.0).unwrap();
            let b = se_link_with_si(&h, &f, &w, &h_ii, &f, 3.0, 0.0).unwrap();
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn monotone_in_snr() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = random_matrix(&mut rng, 8, 8);
        let f = random_matrix(&mut rng, 8, 3);
        let w = random_matrix(&mut rng, 8, 3);
        let mut prev = 0.0;
        for k in -20..=30 {
            let se = se_link_no_si(&h, &f, &w, db_to_linear(k as f64)).unwrap();
            assert!(se >= prev);
            prev = se;
        }
    }

    #[test]
    fn invariant_to_combiner_basis_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let h = random_matrix(&mut rng, 8, 8);
            let f = random_matrix(&mut rng, 8, 3);
            let w = random_matrix(&mut rng, 8, 3);
            let mix = random_matrix(&mut rng, 3, 3) + CMat::identity(3, 3) * real(2.0);
            let a = se_link_no_si(&h, &f, &w, 5.0).unwrap();
            let b = se_link_no_si(&h, &f, &(&w * mix), 5.0).unwrap();
            assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn rank_deficient_combiner_errors() {
        let h = CMat::identity(2, 2);
        let f = CMat::identity(2, 2);
        let w = CMat::zeros(2, 2);
        assert!(matches!(se_link_no_si(&h, &f, &w, 1.0), Err(Error::Numerical(_))));
    }

    #[test]
    fn dimension_mismatch_errors() {
        let h = CMat::identity(2, 3);
        assert!(se_link_no_si(&h, &CMat::identity(2, 1), &CMat::identity(2, 1), 1.0).is_err());
    }
}
