//! Transverse-slice integrals for potentials with singularities along a
//! divisor: with t the logarithm of the distance to the divisor, entropy
//! and energy reduce to one-dimensional integrals against chi''(t) dt.
//! The model assumes the slope of chi vanishes at -infinity.

use crate::error::{Error, Result};
use crate::quad::{self, IntegralVerdict, QuadConfig};
use crate::weights::Weight;

/// Verdict for the slice entropy integral of (-t) chi''(t) over (-inf, -1].
pub fn div_entropy(w: &Weight, cfg: &QuadConfig) -> Result<IntegralVerdict> {
    let cfg = cfg.clone().with_t_floor(w.t_floor());
    let f = |t: f64| (-t) * w.deriv_unchecked(t, 2).max(0.0);
    let hints = w.quad_hints();
    quad::integrate_halfline_with(&f, None, &hints, -1.0, &cfg)
}

/// Verdict for the slice energy integral of (-chi)^p chi'' over (-inf, -1].
pub fn div_energy(w: &Weight, p: f64, cfg: &QuadConfig) -> Result<IntegralVerdict> {
    if !(p > 0.0) {
        return Err(Error::InvalidInput(format!(
            "energy exponent must be positive, got {p}"
        )));
    }
    let cfg = cfg.clone().with_t_floor(w.t_floor());
    let f = |t: f64| (-w.eval_unchecked(t)).max(0.0).powf(p) * w.deriv_unchecked(t, 2).max(0.0);
    let hints = w.quad_hints();
    quad::integrate_halfline_with(&f, None, &hints, -1.0, &cfg)
}

/// Largest p with finite slice energy, from the fitted tail exponent.
pub fn div_critical_p(w: &Weight, cfg: &QuadConfig) -> Result<f64> {
    const P_LO: f64 = 0.05;
    const P_HI: f64 = 50.0;
    let cfg = cfg.clone().with_t_floor(w.t_floor());
    let beta = |p: f64| -> Result<f64> {
        let f = |t: f64| (-w.eval_unchecked(t)).max(0.0).powf(p) * w.deriv_unchecked(t, 2).max(0.0);
        let (wlo, whi) = cfg.tail_window;
        let window = (wlo.max(cfg.t_floor * 0.999), whi.min(-1.0));
        match quad::tail_exponent(&f, window, &cfg) {
            Ok(b) => Ok(b),
            Err(Error::Estimation(_)) => Ok(f64::NEG_INFINITY),
            Err(e) => Err(e),
        }
    };
    if beta(P_HI)? < -1.0 - cfg.delta_margin {
        return Ok(f64::INFINITY);
    }
    if beta(P_LO)? >= -1.0 {
        return Err(Error::Precondition(
            "slice energy diverges for every exponent".into(),
        ));
    }
    let mut a = P_LO;
    let mut b = P_HI;
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        if beta(mid)? < -1.0 {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-6 {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Weight;
    use approx::assert_relative_eq;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn bounded_weights_have_finite_slice_entropy() {
        // int (-t) e^t dt over (-inf,-1] = 2/e by parts
        let v = div_entropy(&Weight::exp(), &cfg()).unwrap();
        assert!(v.is_finite());
        assert_relative_eq!(
            v.value().unwrap(),
            2.0 / std::f64::consts::E,
            epsilon = 1e-8
        );

        let v = div_entropy(&Weight::softplus_kink(), &cfg()).unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn unbounded_weights_have_divergent_slice_entropy() {
        let v = div_entropy(&Weight::divisor_power(0.5).unwrap(), &cfg()).unwrap();
        assert!(v.is_divergent());
        // tail exponent r - 1
        assert_relative_eq!(v.tail_exponent.unwrap(), -0.5, epsilon = 0.02);

        let v = div_entropy(&Weight::power(0.45).unwrap(), &cfg()).unwrap();
        assert!(v.is_divergent());
    }

    #[test]
    fn flat_second_derivative_gives_zero() {
        let v = div_entropy(&Weight::linear(), &cfg()).unwrap();
        assert_eq!(v.value(), Some(0.0));
    }

    #[test]
    fn slice_energy_sharpness_examples() {
        // exponent r(p+1) - 2 against the critical value -1
        let w = Weight::divisor_power(0.4).unwrap();
        assert!(div_energy(&w, 1.0, &cfg()).unwrap().is_finite());

        let w = Weight::divisor_power(0.6).unwrap();
        assert!(div_energy(&w, 1.0, &cfg()).unwrap().is_divergent());

        let w = Weight::divisor_power(0.3).unwrap();
        let v = div_energy(&w, 2.0, &cfg()).unwrap();
        assert!(v.is_finite());
        assert_relative_eq!(v.tail_exponent.unwrap(), -1.1, epsilon = 0.02);
    }

    #[test]
    fn radial_critical_exceeds_slice_critical() {
        let c = cfg();
        for r in [0.3, 0.5, 0.7] {
            let w = Weight::divisor_power(r).unwrap();
            let slice = div_critical_p(&w, &c).unwrap();
            assert!(
                (slice - (1.0 - r) / r).abs() <= 0.1,
                "slice critical {slice} at r={r}"
            );
            for n in [2u32, 3] {
                let rp = crate::radial::RadialPotential::ball(w.clone(), n).unwrap();
                let radial = rp.critical_p(&c).unwrap();
                assert!(
                    radial > slice + 0.2,
                    "radial critical {radial} should exceed slice critical {slice} at n={n}"
                );
            }
        }
    }
}
