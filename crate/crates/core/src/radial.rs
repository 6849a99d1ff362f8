//! Radial reductions: a potential chi(log|z|) on the unit ball of C^n
//! turns every Monge-Ampere functional into a one-dimensional integral
//! over t = log|z|.
//!
//! Calibration: the Monge-Ampere mass of {log|z| < t} is chi'(t)^n, so the
//! pushforward density to the t-line is m(t) = n chi'(t)^{n-1} chi''(t)
//! with exact antiderivative chi'^n. Lebesgue measure pushes forward to
//! 2n sigma_{2n} e^{2nt} dt, where sigma_{2n} = pi^n / n! is the unit-ball
//! volume, which fixes the density entering the entropy.

use crate::error::{Error, Result};
use crate::quad::{self, IntegralVerdict, QuadConfig};
use crate::weights::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Unit ball with boundary value 0: the weight is shifted so chi(0) = 0.
    Ball,
    /// Potential on the chart ball of a compact model; no boundary shift.
    Projective,
}

/// Volume of the unit ball of C^n = R^{2n}.
pub fn ball_volume(n: u32) -> f64 {
    let mut v = 1.0;
    for k in 1..=n {
        v *= std::f64::consts::PI / k as f64;
    }
    v
}

/// A weight together with a complex dimension and a model choice.
#[derive(Debug, Clone)]
pub struct RadialPotential {
    weight: Weight,
    n: u32,
    model: Model,
    /// Subtracted from the raw weight; nonzero only in the ball model.
    boundary_shift: f64,
}

impl RadialPotential {
    pub fn new(weight: Weight, n: u32, model: Model) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let chi0 = weight.eval_unchecked(0.0);
        if !chi0.is_finite() {
            return Err(Error::InvalidInput(
                "weight has non-finite boundary value".into(),
            ));
        }
        let boundary_shift = match model {
            Model::Ball => chi0,
            Model::Projective => {
                if chi0 > 1e-12 {
                    return Err(Error::InvalidInput(format!(
                        "projective model needs chi(0) <= 0, got {chi0}"
                    )));
                }
                0.0
            }
        };
        Ok(Self {
            weight,
            n,
            model,
            boundary_shift,
        })
    }

    pub fn ball(weight: Weight, n: u32) -> Result<Self> {
        Self::new(weight, n, Model::Ball)
    }

    pub fn projective(weight: Weight, n: u32) -> Result<Self> {
        Self::new(weight, n, Model::Projective)
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Shift applied so that the ball model has chi(0) = 0.
    pub fn boundary_shift(&self) -> f64 {
        self.boundary_shift
    }

    pub fn t_floor(&self) -> f64 {
        self.weight.t_floor()
    }

    /// Effective weight value (after the boundary shift).
    pub fn chi(&self, t: f64) -> f64 {
        self.weight.eval_unchecked(t) - self.boundary_shift
    }

    pub fn chi_prime(&self, t: f64) -> f64 {
        self.weight.deriv_unchecked(t, 1)
    }

    pub fn chi_second(&self, t: f64) -> f64 {
        self.weight.deriv_unchecked(t, 2)
    }

    /// Pushforward density of the Monge-Ampere measure to the t-line.
    pub fn density(&self, t: f64) -> f64 {
        let n = self.n;
        let cp = self.chi_prime(t);
        let cs = self.chi_second(t);
        n as f64 * cp.powi(n as i32 - 1) * cs
    }

    pub fn ma_pushforward(&self) -> ReducedDensity {
        ReducedDensity { rp: self.clone() }
    }

    /// QuadConfig aligned with this potential's floor.
    fn cfg_for(&self, cfg: &QuadConfig) -> QuadConfig {
        cfg.clone().with_t_floor(self.weight.t_floor())
    }

    /// Slope mass left at the floor: lim chi'(t)^n as t goes to -infinity,
    /// with the limit recognized from the decay trend of chi' so that slowly
    /// vanishing slopes are not mistaken for genuine pole mass.
    pub fn pole_mass(&self) -> Result<f64> {
        let floor = self.weight.t_floor();
        let fracs = [1.0, 0.5, 0.25, 0.125, 0.0625];
        let mut vals = Vec::with_capacity(fracs.len());
        for &fr in &fracs {
            let s = self.chi_prime(floor * fr);
            if !s.is_finite() || s < -1e-12 {
                return Err(Error::Estimation(format!(
                    "slope not evaluable at t = {}",
                    floor * fr
                )));
            }
            vals.push(s.max(0.0));
        }
        // chi' is nondecreasing, so deeper samples must not exceed shallower ones
        for w in vals.windows(2) {
            if w[0] > w[1] * (1.0 + 1e-9) + 1e-300 {
                return Err(Error::Estimation("slope tail is not monotone".into()));
            }
        }
        if vals[0] == 0.0 {
            return Ok(0.0);
        }
        // log-log trend of chi' against -t over the sampled floors
        let xs: Vec<f64> = fracs.iter().map(|fr| (-floor * fr).ln()).collect();
        let ys: Vec<f64> = vals.iter().map(|v| v.max(1e-300).ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        if slope <= -1e-3 {
            Ok(0.0)
        } else {
            Ok(vals[0].powi(self.n as i32))
        }
    }

    /// Full-mass membership: no slope mass left at the pole.
    pub fn in_full_mass_class(&self) -> Result<bool> {
        Ok(self.pole_mass()? <= 1e-6)
    }

    /// Entropy of the Monge-Ampere density against normalized Lebesgue
    /// measure, together with the integration-by-parts criterion integral
    /// of (-t) chi'^{n-1} chi''. Their finiteness kinds must agree.
    pub fn entropy(&self, cfg: &QuadConfig) -> Result<EntropyVerdict> {
        let cfg = self.cfg_for(cfg);
        let nf = self.n as f64;
        let log_norm = (2.0 * nf * ball_volume(self.n)).ln();
        let exact_integrand = |t: f64| {
            let m = self.density(t).max(0.0);
            if m == 0.0 {
                0.0
            } else {
                m * (m.ln() - log_norm - 2.0 * nf * t)
            }
        };
        let hints = self.weight.quad_hints();
        let exact = quad::integrate_halfline_with(&exact_integrand, None, &hints, 0.0, &cfg)?;

        let criterion_integrand = |t: f64| {
            let cp = self.chi_prime(t);
            let cs = self.chi_second(t);
            (-t) * cp.powi(self.n as i32 - 1) * cs
        };
        let criterion =
            quad::integrate_halfline_with(&criterion_integrand, None, &hints, -1.0, &cfg)?;

        if !exact.kind_agrees_with(&criterion) {
            return Err(Error::Inconsistency(format!(
                "entropy verdict {} disagrees with criterion verdict {}",
                exact.kind_name(),
                criterion.kind_name()
            )));
        }
        Ok(EntropyVerdict { exact, criterion })
    }

    /// Weighted energy integral of (-chi)^p against the reduced density.
    pub fn energy(&self, p: f64, cfg: &QuadConfig) -> Result<IntegralVerdict> {
        if !(p > 0.0) {
            return Err(Error::InvalidInput(format!(
                "energy exponent must be positive, got {p}"
            )));
        }
        let cfg = self.cfg_for(cfg);
        let f = |t: f64| (-self.chi(t)).max(0.0).powf(p) * self.density(t).max(0.0);
        let hints = self.weight.quad_hints();
        quad::integrate_halfline_with(&f, None, &hints, 0.0, &cfg)
    }

    fn energy_tail_exponent(&self, p: f64, cfg: &QuadConfig) -> Result<Option<f64>> {
        let cfg = self.cfg_for(cfg);
        let f = |t: f64| (-self.chi(t)).max(0.0).powf(p) * self.density(t).max(0.0);
        let (wlo, whi) = cfg.tail_window;
        let window = (wlo.max(cfg.t_floor * 0.999), whi);
        match quad::tail_exponent(&f, window, &cfg) {
            Ok(b) => Ok(Some(b)),
            Err(Error::Estimation(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Largest p with finite energy, found by solving the fitted tail
    /// exponent for the critical decay; +infinity when the energy is still
    /// finite at p = 50 (bounded-potential regime).
    pub fn critical_p(&self, cfg: &QuadConfig) -> Result<f64> {
        const P_LO: f64 = 0.05;
        const P_HI: f64 = 50.0;
        // None marks an identically-vanishing tail, which decays like -inf
        let beta = |p: f64| -> Result<f64> {
            Ok(self
                .energy_tail_exponent(p, cfg)?
                .unwrap_or(f64::NEG_INFINITY))
        };
        let hi = beta(P_HI)?;
        if hi < -1.0 - cfg.delta_margin {
            return Ok(f64::INFINITY);
        }
        if beta(P_LO)? >= -1.0 {
            return Err(Error::Precondition(
                "energy is not finite for any small exponent".into(),
            ));
        }
        // bisect the fitted exponent against the critical value -1
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

    /// Exponential Moser-Trudinger-type integral with energy normalization:
    /// 2n sigma_{2n} int e^{2nt} exp(c E_p^{-1/n} (-chi)^{1+p/n}) dt.
    pub fn mt_integral(&self, p: f64, c: f64, cfg: &QuadConfig) -> Result<IntegralVerdict> {
        let (log_f, f, hints, cfg) = self.mt_parts(p, c, cfg)?;
        quad::integrate_halfline_with(&f, Some(&log_f), &hints, 0.0, &cfg)
    }

    /// Verdict kind of the Moser-Trudinger integral from the tail fit alone.
    pub fn mt_kind(&self, p: f64, c: f64, cfg: &QuadConfig) -> Result<&'static str> {
        let (log_f, _f, _hints, cfg) = self.mt_parts(p, c, cfg)?;
        let (wlo, whi) = cfg.tail_window;
        let window = (wlo.max(cfg.t_floor * 0.999), whi);
        let fit = quad::tail_fit(&log_f, window)?;
        Ok(match fit.behavior {
            quad::TailBehavior::Zero | quad::TailBehavior::SuperpolyDecay => "Finite",
            quad::TailBehavior::SuperpolyGrowth => "Divergent",
            quad::TailBehavior::Power(b) => {
                if b < -1.0 - cfg.delta_margin {
                    "Finite"
                } else if b > -1.0 + cfg.delta_margin {
                    "Divergent"
                } else {
                    "Inconclusive"
                }
            }
        })
    }

    #[allow(clippy::type_complexity)]
    fn mt_parts<'a>(
        &'a self,
        p: f64,
        c: f64,
        cfg: &QuadConfig,
    ) -> Result<(
        impl Fn(f64) -> f64 + 'a,
        impl Fn(f64) -> f64 + 'a,
        Vec<f64>,
        QuadConfig,
    )> {
        if !(c > 0.0) {
            return Err(Error::InvalidInput(format!(
                "mt constant must be positive, got {c}"
            )));
        }
        let e_p = match self.energy(p, cfg)?.value() {
            Some(v) => v,
            None => {
                return Err(Error::Precondition(
                    "moser-trudinger integral needs a finite energy".into(),
                ))
            }
        };
        if e_p <= 0.0 {
            return Err(Error::Precondition(
                "moser-trudinger integral needs a non-constant potential (positive energy)".into(),
            ));
        }
        let nf = self.n as f64;
        let log_norm = (2.0 * nf * ball_volume(self.n)).ln();
        let scale = c * e_p.powf(-1.0 / nf);
        let q = 1.0 + p / nf;
        let log_f = move |t: f64| log_norm + 2.0 * nf * t + scale * (-self.chi(t)).max(0.0).powf(q);
        let f = move |t: f64| log_f(t).exp();
        Ok((log_f, f, self.weight.quad_hints(), self.cfg_for(cfg)))
    }

    /// 2n sigma_{2n} int e^{2nt} e^{-k chi(t)} dt.
    pub fn exp_moment(&self, k: f64, cfg: &QuadConfig) -> Result<IntegralVerdict> {
        if !(k >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "moment order must be nonnegative, got {k}"
            )));
        }
        let cfg = self.cfg_for(cfg);
        let nf = self.n as f64;
        let log_norm = (2.0 * nf * ball_volume(self.n)).ln();
        let log_f = move |t: f64| log_norm + 2.0 * nf * t - k * self.chi(t);
        let f = move |t: f64| log_f(t).exp();
        let hints = self.weight.quad_hints();
        quad::integrate_halfline_with(&f, Some(&log_f), &hints, 0.0, &cfg)
    }

    fn sublevel_t(&self, s: f64) -> Result<f64> {
        if self.model != Model::Ball {
            return Err(Error::Precondition(
                "sublevel sets need the ball model".into(),
            ));
        }
        if !(s > 0.0) {
            return Err(Error::Domain(format!(
                "sublevel depth must be positive, got {s}"
            )));
        }
        let floor = self.weight.t_floor();
        let chi_floor = self.chi(floor);
        if !(s < -chi_floor) {
            return Err(Error::Domain(format!(
                "sublevel depth {s} out of range (floor value {chi_floor})"
            )));
        }
        let mut lo = floor;
        let mut hi = 0.0;
        // chi(lo) + s < 0 <= chi(hi) + s
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let v = self.chi(mid) + s;
            if v.abs() <= 1e-10 {
                lo = mid;
                hi = mid;
                break;
            }
            if v < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
                break;
            }
        }
        let t_s = 0.5 * (lo + hi);
        if self.chi(t_s) + s > 1e-8 || self.chi(t_s) + s < -1e-8 {
            // accept only when the residual is small unless chi is nearly flat
            let h = (t_s.abs() * 1e-6).max(1e-9);
            if self.chi(t_s + h) <= self.chi(t_s - h) {
                return Err(Error::Estimation(format!(
                    "weight is not strictly increasing near the sublevel solution t = {t_s}"
                )));
            }
        }
        if !(t_s < 0.0) {
            return Err(Error::Domain(format!(
                "degenerate sublevel solution t = {t_s}"
            )));
        }
        Ok(t_s)
    }

    /// Monge-Ampere capacity of the sublevel ball {chi(log|z|) <= -s}
    /// inside the unit ball: (-t_s)^{-n} with chi(t_s) = -s.
    pub fn capacity_sublevel(&self, s: f64) -> Result<f64> {
        let t_s = self.sublevel_t(s)?;
        Ok((-t_s).powi(-(self.n as i32)))
    }

    /// Lebesgue volume of the same sublevel ball.
    pub fn volume_sublevel(&self, s: f64) -> Result<f64> {
        let t_s = self.sublevel_t(s)?;
        Ok(ball_volume(self.n) * (2.0 * self.n as f64 * t_s).exp())
    }

    /// Two-sided pluripotential proxy for the energy distance:
    /// int |chi_1 - chi_2|^p (m_1 + m_2) dt.
    pub fn dp_proxy(&self, other: &RadialPotential, p: f64, cfg: &QuadConfig) -> Result<f64> {
        if self.n != other.n || self.model != other.model {
            return Err(Error::Precondition(
                "distance proxy needs matching dimension and model".into(),
            ));
        }
        if !(p > 0.0) {
            return Err(Error::InvalidInput(format!(
                "proxy exponent must be positive, got {p}"
            )));
        }
        for rp in [self, other] {
            if rp.energy(p, cfg)?.value().is_none() {
                return Err(Error::Precondition(
                    "distance proxy needs finite energies".into(),
                ));
            }
        }
        let mut cfg = self.cfg_for(cfg);
        cfg.t_floor = cfg.t_floor.min(other.weight.t_floor());
        let f = |t: f64| {
            (self.chi(t) - other.chi(t)).abs().powf(p)
                * (self.density(t).max(0.0) + other.density(t).max(0.0))
        };
        let mut hints = self.weight.quad_hints();
        hints.extend(other.weight.quad_hints());
        let v = quad::integrate_halfline_with(&f, None, &hints, 0.0, &cfg)?;
        v.value()
            .ok_or_else(|| Error::Inconsistency("distance proxy integral did not converge".into()))
    }
}

/// Pushforward density m(t) = n chi'^{n-1} chi'' with its exact antiderivative.
#[derive(Debug, Clone)]
pub struct ReducedDensity {
    rp: RadialPotential,
}

impl ReducedDensity {
    pub fn eval(&self, t: f64) -> f64 {
        self.rp.density(t)
    }

    pub fn dimension(&self) -> u32 {
        self.rp.dimension()
    }

    /// Exact mass between two levels: chi'(t1)^n - chi'(t0)^n.
    pub fn mass_between(&self, t0: f64, t1: f64) -> f64 {
        let n = self.rp.dimension() as i32;
        self.rp.chi_prime(t1).powi(n) - self.rp.chi_prime(t0).powi(n)
    }

    /// Mass over (floor, 0] by the antiderivative.
    pub fn total_mass(&self) -> f64 {
        self.mass_between(self.rp.t_floor(), 0.0)
    }

    /// Quadrature of m over (-inf, 0]; should match `total_mass` plus the
    /// extrapolated tail within tolerance.
    pub fn quadrature_mass(&self, cfg: &QuadConfig) -> Result<IntegralVerdict> {
        let cfg = cfg.clone().with_t_floor(self.rp.t_floor());
        let f = |t: f64| self.rp.density(t).max(0.0);
        let hints = self.rp.weight().quad_hints();
        quad::integrate_halfline_with(&f, None, &hints, 0.0, &cfg)
    }
}

/// Exact entropy verdict together with the criterion-integral verdict.
#[derive(Debug, Clone)]
pub struct EntropyVerdict {
    pub exact: IntegralVerdict,
    pub criterion: IntegralVerdict,
}

impl EntropyVerdict {
    pub fn is_finite(&self) -> bool {
        self.exact.is_finite()
    }

    pub fn kind_name(&self) -> &'static str {
        self.exact.kind_name()
    }

    /// Tail exponent of the criterion integrand (-t) chi'^{n-1} chi''.
    pub fn criterion_exponent(&self) -> Option<f64> {
        self.criterion.tail_exponent
    }
}
