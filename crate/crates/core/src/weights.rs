//! Convex nondecreasing weights t -> chi(t) on the negative half-line.
//!
//! A weight is the one-dimensional profile of a radial potential
//! chi(log|z|); convexity and monotonicity of chi encode plurisubharmonicity.
//! Each family below has closed-form value and first/second derivatives.
//! The power families use their closed form for t <= -1 and a quadratic
//! blend on (-1, 0] that matches value, slope and curvature at t = -1, so
//! chi stays convex nondecreasing with chi(0) <= 0 on the whole half-line.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// Default lower truncation standing in for -infinity in numerics.
pub const DEFAULT_T_FLOOR: f64 = -1e6;

#[derive(Debug, Clone)]
pub enum Family {
    /// chi(t) = -(-t)^alpha / alpha for t <= -1, alpha in (0,1).
    PowerAlpha { alpha: f64 },
    /// chi(t) = -(-t)^r for t <= -1, r in (0,1).
    DivisorPower { r: f64 },
    /// chi(t) = e^t - 1.
    Exp,
    /// chi(t) = log((1 + e^t)/2): flat near -infinity, asymptotically
    /// t - log 2 for large t, strictly convex in between.
    SoftplusKink,
    /// chi(t) = eps * base(t + shift) - eps * shift.
    TranslatedScaled {
        base: Box<Weight>,
        eps: f64,
        shift: f64,
    },
    /// Monotone-convex piecewise-quadratic interpolant of sampled data.
    Tabulated(Spline),
}

/// A convex nondecreasing weight with an effective integration floor.
#[derive(Debug, Clone)]
pub struct Weight {
    family: Family,
    t_floor: f64,
}

impl Weight {
    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidInput(format!(
                "power weight needs alpha in (0,1), got {alpha}"
            )));
        }
        Ok(Self::from_family(Family::PowerAlpha { alpha }))
    }

    pub fn divisor_power(r: f64) -> Result<Self> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidInput(format!(
                "divisor power weight needs r in (0,1), got {r}"
            )));
        }
        Ok(Self::from_family(Family::DivisorPower { r }))
    }

    pub fn exp() -> Self {
        Self::from_family(Family::Exp)
    }

    pub fn softplus_kink() -> Self {
        Self::from_family(Family::SoftplusKink)
    }

    /// eps * base(t + shift) - eps * shift. `shift = 0` reduces to pure scaling.
    pub fn translated_scaled(base: Weight, eps: f64, shift: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "translated-scaled weight needs eps > 0, got {eps}"
            )));
        }
        if !(shift >= 0.0 && shift.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "translated-scaled weight needs shift >= 0, got {shift}"
            )));
        }
        let t_floor = base.t_floor;
        Ok(Self {
            family: Family::TranslatedScaled {
                base: Box::new(base),
                eps,
                shift,
            },
            t_floor,
        })
    }

    pub fn tabulated(grid: GridFunction) -> Result<Self> {
        let spline = Spline::fit(grid)?;
        Ok(Self::from_family(Family::Tabulated(spline)))
    }

    /// chi(t) = t, realized as tabulated data with unit slope.
    pub fn linear() -> Self {
        let g = GridFunction::new(vec![DEFAULT_T_FLOOR, 0.0], vec![DEFAULT_T_FLOOR, 0.0]).unwrap();
        Self::tabulated(g).unwrap()
    }

    /// chi identically zero.
    pub fn zero() -> Self {
        let g = GridFunction::new(vec![DEFAULT_T_FLOOR, 0.0], vec![0.0, 0.0]).unwrap();
        Self::tabulated(g).unwrap()
    }

    fn from_family(family: Family) -> Self {
        Self {
            family,
            t_floor: DEFAULT_T_FLOOR,
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn t_floor(&self) -> f64 {
        self.t_floor
    }

    pub fn with_t_floor(mut self, t_floor: f64) -> Result<Self> {
        if !(t_floor < -1.0) || !t_floor.is_finite() {
            return Err(Error::InvalidInput(format!(
                "t_floor must be a finite value below -1, got {t_floor}"
            )));
        }
        self.t_floor = t_floor;
        Ok(self)
    }

    /// chi(t) for t <= 0.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t <= 0.0) {
            return Err(Error::Domain(format!("weight evaluated at t = {t} > 0")));
        }
        Ok(self.eval_unchecked(t))
    }

    /// chi'(t) or chi''(t) for t <= 0.
    pub fn deriv(&self, t: f64, order: u32) -> Result<f64> {
        if !(t <= 0.0) {
            return Err(Error::Domain(format!("weight derivative at t = {t} > 0")));
        }
        match order {
            1 | 2 => Ok(self.deriv_unchecked(t, order)),
            _ => Err(Error::InvalidInput(format!(
                "unsupported derivative order {order}"
            ))),
        }
    }

    /// Value on the analytic extension; used internally where a translate
    /// pushes the argument above 0 (the outer weight still lives on t <= 0).
    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        match &self.family {
            Family::PowerAlpha { alpha } => {
                if t <= -1.0 {
                    -(-t).powf(*alpha) / alpha
                } else {
                    let tau = t + 1.0;
                    -1.0 / alpha + tau + 0.5 * (1.0 - alpha) * tau * tau
                }
            }
            Family::DivisorPower { r } => {
                if t <= -1.0 {
                    -(-t).powf(*r)
                } else {
                    let tau = t + 1.0;
                    -1.0 + r * tau + 0.5 * r * (1.0 - r) * tau * tau
                }
            }
            Family::Exp => t.exp_m1(),
            Family::SoftplusKink => softplus(t) - std::f64::consts::LN_2,
            Family::TranslatedScaled { base, eps, shift } => {
                eps * base.eval_unchecked(t + shift) - eps * shift
            }
            Family::Tabulated(sp) => sp.eval(t),
        }
    }

    pub(crate) fn deriv_unchecked(&self, t: f64, order: u32) -> f64 {
        match &self.family {
            Family::PowerAlpha { alpha } => {
                if t <= -1.0 {
                    match order {
                        1 => (-t).powf(alpha - 1.0),
                        _ => (1.0 - alpha) * (-t).powf(alpha - 2.0),
                    }
                } else {
                    match order {
                        1 => 1.0 + (1.0 - alpha) * (t + 1.0),
                        _ => 1.0 - alpha,
                    }
                }
            }
            Family::DivisorPower { r } => {
                if t <= -1.0 {
                    match order {
                        1 => r * (-t).powf(r - 1.0),
                        _ => r * (1.0 - r) * (-t).powf(r - 2.0),
                    }
                } else {
                    match order {
                        1 => r + r * (1.0 - r) * (t + 1.0),
                        _ => r * (1.0 - r),
                    }
                }
            }
            Family::Exp => t.exp(),
            Family::SoftplusKink => {
                let s = sigmoid(t);
                match order {
                    1 => s,
                    _ => s * (1.0 - s),
                }
            }
            Family::TranslatedScaled { base, eps, shift } => {
                eps * base.deriv_unchecked(t + shift, order)
            }
            Family::Tabulated(sp) => sp.deriv(t, order),
        }
    }

    /// Samples of t -> -(-chi(t))^q, the pre-envelope obstacle for q > 1.
    /// Not claimed convex. Nodes where chi = 0 map to 0; chi > 0 is rejected.
    pub fn compose_power(&self, q: f64, ts: &[f64]) -> Result<GridFunction> {
        if !(q > 1.0) {
            return Err(Error::InvalidInput(format!(
                "compose_power needs q > 1, got {q}"
            )));
        }
        let mut vals = Vec::with_capacity(ts.len());
        for &t in ts {
            if !(t <= 0.0) {
                return Err(Error::Domain(format!("composition grid node t = {t} > 0")));
            }
            let c = self.eval_unchecked(t);
            if c > 1e-12 {
                return Err(Error::Pole(format!(
                    "chi({t}) = {c} > 0 inside composition grid"
                )));
            }
            vals.push(if c >= 0.0 { 0.0 } else { -(-c).powf(q) });
        }
        GridFunction::new(ts.to_vec(), vals)
    }

    /// t-values where the integrand structure concentrates; used to seed
    /// quadrature panels so that narrow features are not skipped over.
    pub fn quad_hints(&self) -> Vec<f64> {
        match &self.family {
            Family::PowerAlpha { .. } | Family::DivisorPower { .. } => vec![-1.0],
            Family::Exp | Family::SoftplusKink => vec![],
            Family::TranslatedScaled { base, shift, .. } => {
                let mut v: Vec<f64> = base.quad_hints().into_iter().map(|h| h - shift).collect();
                v.extend_from_slice(&[-shift - 50.0, -shift, -shift + 50.0]);
                v.retain(|h| h.is_finite() && *h < 0.0);
                v
            }
            Family::Tabulated(sp) => {
                let mut v = vec![sp.ts[0], *sp.ts.last().unwrap()];
                v.retain(|h| *h < 0.0);
                v
            }
        }
    }

    /// True when chi has a finite limit at -infinity, detected by comparing
    /// the value at the floor with the value at half the floor.
    pub fn bounded_below(&self, tol: f64) -> bool {
        let a = self.eval_unchecked(self.t_floor);
        let b = self.eval_unchecked(self.t_floor / 2.0);
        a.is_finite() && (a - b).abs() <= tol * (1.0 + a.abs())
    }
}

fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `family:param` weight specifications:
/// `power:0.45`, `divpower:0.5`, `exp`, `softplus`, `linear`, `zero`,
/// `ts:<base-spec>:<eps>:<shift>`.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty weight spec".into()));
        }
        match s {
            "exp" => return Ok(Weight::exp()),
            "softplus" => return Ok(Weight::softplus_kink()),
            "linear" => return Ok(Weight::linear()),
            "zero" => return Ok(Weight::zero()),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("power:") {
            let alpha = parse_num(rest, "alpha")?;
            return Weight::power(alpha);
        }
        if let Some(rest) = s.strip_prefix("divpower:") {
            let r = parse_num(rest, "r")?;
            return Weight::divisor_power(r);
        }
        if let Some(rest) = s.strip_prefix("ts:") {
            // the last two colon-separated tokens are eps and shift; the
            // remainder is itself a weight spec, so nesting is allowed
            let mut parts: Vec<&str> = rest.rsplitn(3, ':').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!(
                    "translated-scaled spec needs ts:<base>:<eps>:<shift>, got `{s}`"
                )));
            }
            parts.reverse();
            let base = Weight::from_str(parts[0])?;
            let eps = parse_num(parts[1], "eps")?;
            let shift = parse_num(parts[2], "shift")?;
            return Weight::translated_scaled(base, eps, shift);
        }
        Err(Error::Parse(format!("unknown weight spec `{s}`")))
    }
}

fn parse_num(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad {what} value `{s}`")))
        .and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse(format!("non-finite {what} value `{s}`")))
            }
        })
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::PowerAlpha { alpha } => write!(f, "power:{alpha}"),
            Family::DivisorPower { r } => write!(f, "divpower:{r}"),
            Family::Exp => write!(f, "exp"),
            Family::SoftplusKink => write!(f, "softplus"),
            Family::TranslatedScaled { base, eps, shift } => write!(f, "ts:{base}:{eps}:{shift}"),
            Family::Tabulated(sp) => write!(f, "tab[{} nodes]", sp.ts.len()),
        }
    }
}

/// Shape-preserving quadratic spline through convex nondecreasing data.
///
/// Each data interval carries at most two quadratic pieces joined at a knot,
/// with the knot placed so that value and slope match at the data nodes and
/// the second derivative stays nonnegative and piecewise constant. Outside
/// the data range the spline continues linearly with the boundary slopes.
#[derive(Debug, Clone)]
pub struct Spline {
    ts: Vec<f64>,
    vals: Vec<f64>,
    slopes: Vec<f64>,
    /// per interval: (knot position, slope at the knot)
    knots: Vec<(f64, f64)>,
}

impl Spline {
    fn fit(grid: GridFunction) -> Result<Self> {
        let (ts, vals) = grid.into_parts();
        let m = ts.len() - 1;
        let mut secants = Vec::with_capacity(m);
        for i in 0..m {
            secants.push((vals[i + 1] - vals[i]) / (ts[i + 1] - ts[i]));
        }
        let scale = secants.iter().fold(1.0_f64, |a, s| a.max(s.abs()));
        let tol = 1e-12 * scale;
        if secants.iter().any(|&d| d < -tol) {
            return Err(Error::InvalidInput(
                "tabulated weight data must be nondecreasing".into(),
            ));
        }
        if secants.windows(2).any(|w| w[1] < w[0] - tol) {
            return Err(Error::InvalidInput(
                "tabulated weight data must be convex".into(),
            ));
        }
        let mut slopes = Vec::with_capacity(ts.len());
        slopes.push(secants[0]);
        for i in 1..m {
            let dl = ts[i] - ts[i - 1];
            let dr = ts[i + 1] - ts[i];
            slopes.push((dr * secants[i - 1] + dl * secants[i]) / (dl + dr));
        }
        slopes.push(secants[m - 1]);

        let mut knots = Vec::with_capacity(m);
        for i in 0..m {
            let (t0, t1) = (ts[i], ts[i + 1]);
            let h = t1 - t0;
            let (s0, s1) = (slopes[i], slopes[i + 1]);
            let d = secants[i];
            let dev = s0 + s1 - 2.0 * d;
            if dev.abs() <= tol || (s1 - s0).abs() <= tol {
                // single quadratic piece
                knots.push((t1, s1));
            } else if dev < 0.0 {
                // left quadratic rising from s0 to s1, then linear
                let a = (2.0 * h * (s1 - d) / (s1 - s0)).clamp(0.0, h);
                knots.push((t0 + a, s1));
            } else {
                // linear at slope s0, then quadratic up to s1
                let b = (2.0 * h * (d - s0) / (s1 - s0)).clamp(0.0, h);
                knots.push((t1 - b, s0));
            }
        }
        let sp = Self {
            ts,
            vals,
            slopes,
            knots,
        };
        // the linear extension must stay nonpositive up to t = 0
        if sp.eval(0.0) > 1e-9 {
            return Err(Error::InvalidInput(
                "tabulated weight extends to a positive value at t = 0".into(),
            ));
        }
        Ok(sp)
    }

    fn interval(&self, t: f64) -> usize {
        match self.ts.binary_search_by(|x| x.total_cmp(&t)) {
            Ok(i) => i.min(self.ts.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.ts.len() - 2),
        }
    }

    fn eval(&self, t: f64) -> f64 {
        let n = self.ts.len();
        if t <= self.ts[0] {
            return self.vals[0] + self.slopes[0] * (t - self.ts[0]);
        }
        if t >= self.ts[n - 1] {
            return self.vals[n - 1] + self.slopes[n - 1] * (t - self.ts[n - 1]);
        }
        let i = self.interval(t);
        let (xi, sbar) = self.knots[i];
        let (t0, s0, v0) = (self.ts[i], self.slopes[i], self.vals[i]);
        if t <= xi {
            let a = xi - t0;
            let curv = if a > 0.0 { (sbar - s0) / a } else { 0.0 };
            let tau = t - t0;
            v0 + s0 * tau + 0.5 * curv * tau * tau
        } else {
            let a = xi - t0;
            let curv_l = if a > 0.0 { (sbar - s0) / a } else { 0.0 };
            let v_xi = v0 + s0 * a + 0.5 * curv_l * a * a;
            let b = self.ts[i + 1] - xi;
            let curv = if b > 0.0 {
                (self.slopes[i + 1] - sbar) / b
            } else {
                0.0
            };
            let tau = t - xi;
            v_xi + sbar * tau + 0.5 * curv * tau * tau
        }
    }

    fn deriv(&self, t: f64, order: u32) -> f64 {
        let n = self.ts.len();
        if t <= self.ts[0] {
            return if order == 1 { self.slopes[0] } else { 0.0 };
        }
        if t >= self.ts[n - 1] {
            return if order == 1 { self.slopes[n - 1] } else { 0.0 };
        }
        let i = self.interval(t);
        let (xi, sbar) = self.knots[i];
        let (t0, s0) = (self.ts[i], self.slopes[i]);
        if t <= xi {
            let a = xi - t0;
            let curv = if a > 0.0 { (sbar - s0) / a } else { 0.0 };
            match order {
                1 => s0 + curv * (t - t0),
                _ => curv,
            }
        } else {
            let b = self.ts[i + 1] - xi;
            let curv = if b > 0.0 {
                (self.slopes[i + 1] - sbar) / b
            } else {
                0.0
            };
            match order {
                1 => sbar + curv * (t - xi),
                _ => curv,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn power_closed_form() {
        let w = Weight::power(0.5).unwrap();
        assert_relative_eq!(w.eval(-4.0).unwrap(), -4.0, max_relative = 1e-14);
        assert_relative_eq!(w.deriv(-4.0, 1).unwrap(), 0.5, max_relative = 1e-14);
        // chi''(-4) = (1-alpha)(-t)^(alpha-2) = 0.5 * 4^{-1.5} = 1/16
        assert_relative_eq!(w.deriv(-4.0, 2).unwrap(), 1.0 / 16.0, max_relative = 1e-14);
    }

    #[test]
    fn divisor_power_closed_form() {
        let w = Weight::divisor_power(0.5).unwrap();
        assert_relative_eq!(w.eval(-9.0).unwrap(), -3.0, max_relative = 1e-14);
    }

    #[test]
    fn exp_and_softplus_values() {
        assert_eq!(Weight::exp().eval(0.0).unwrap(), 0.0);
        assert_relative_eq!(Weight::exp().deriv(0.0, 2).unwrap(), 1.0);
        let sp = Weight::softplus_kink();
        assert_relative_eq!(sp.deriv(0.0, 1).unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(sp.eval(0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert!(sp.eval(-30.0).unwrap() < 0.0);
    }

    #[test]
    fn domain_guard() {
        assert!(Weight::exp().eval(0.5).is_err());
        assert!(Weight::exp().deriv(0.5, 1).is_err());
        assert!(Weight::exp().deriv(-1.0, 3).is_err());
    }

    #[test]
    fn blend_is_c1_at_minus_one() {
        for w in [
            Weight::power(0.3).unwrap(),
            Weight::power(0.7).unwrap(),
            Weight::divisor_power(0.4).unwrap(),
        ] {
            let h = 1e-9;
            let dv = (w.eval(-1.0 + h).unwrap() - w.eval(-1.0 - h).unwrap()).abs();
            assert!(dv < 1e-8, "value jump {dv}");
            let ds = (w.deriv(-1.0 + h, 1).unwrap() - w.deriv(-1.0 - h, 1).unwrap()).abs();
            assert!(ds < 1e-8, "slope jump {ds}");
        }
    }

    #[test]
    fn translated_scaled_identity() {
        let base = Weight::softplus_kink();
        let w = Weight::translated_scaled(base.clone(), 0.25, 16.0).unwrap();
        for &t in &[-20.0, -17.0, -16.5] {
            let expect = 0.25 * base.eval(t + 16.0).unwrap() - 0.25 * 16.0;
            assert_relative_eq!(w.eval(t).unwrap(), expect, max_relative = 1e-14);
        }
        // chi(0) < 0: the shifted/scaled weight stays admissible up to the boundary
        assert!(w.eval(0.0).unwrap() < 0.0);
    }

    #[test]
    fn tabulated_identity_reproduces_linear_data() {
        let g = GridFunction::new(vec![-10.0, -7.0, -4.0, -1.0], vec![-10.0, -7.0, -4.0, -1.0])
            .unwrap();
        let w = Weight::tabulated(g).unwrap();
        assert_relative_eq!(w.eval(-4.0).unwrap(), -4.0, max_relative = 1e-14);
        assert_relative_eq!(w.eval(-5.5).unwrap(), -5.5, max_relative = 1e-14);
        // linear extension on both sides
        assert_relative_eq!(w.eval(-20.0).unwrap(), -20.0, max_relative = 1e-14);
        assert_relative_eq!(w.eval(-0.5).unwrap(), -0.5, max_relative = 1e-14);
        assert_relative_eq!(w.deriv(-3.0, 1).unwrap(), 1.0, max_relative = 1e-14);
        assert_eq!(w.deriv(-3.0, 2).unwrap(), 0.0);
    }

    #[test]
    fn tabulated_convex_data_stays_convex() {
        // samples of e^t - 1
        let ts: Vec<f64> = (0..30).map(|i| -6.0 + 0.2 * i as f64).collect();
        let vals: Vec<f64> = ts.iter().map(|t| t.exp_m1()).collect();
        let w = Weight::tabulated(GridFunction::new(ts.clone(), vals).unwrap()).unwrap();
        let probes: Vec<f64> = (0..190).map(|i| -5.9 + i as f64 * 0.03).collect();
        for &t in &probes {
            assert!(w.deriv(t, 1).unwrap() >= -1e-12);
            assert!(w.deriv(t, 2).unwrap() >= -1e-12);
        }
        // interpolation error of a shape-preserving quadratic on this grid
        for &t in &probes {
            assert_relative_eq!(w.eval(t).unwrap(), t.exp_m1(), epsilon = 6e-3);
        }
    }

    #[test]
    fn tabulated_rejects_bad_shapes() {
        let dec = GridFunction::new(vec![-3.0, -2.0, -1.0], vec![-1.0, -2.0, -3.0]).unwrap();
        assert!(Weight::tabulated(dec).is_err());
        let concave = GridFunction::new(vec![-3.0, -2.0, -1.0], vec![-9.0, -1.0, -0.5]).unwrap();
        assert!(Weight::tabulated(concave).is_err());
    }

    #[test]
    fn compose_power_examples() {
        // identity weight, q = 2: samples of -t^2
        let w = Weight::linear();
        let ts: Vec<f64> = (0..10).map(|i| -10.0 + i as f64).collect();
        let g = w.compose_power(2.0, &ts).unwrap();
        for (t, v) in g.ts().iter().zip(g.vals()) {
            assert_relative_eq!(*v, -t * t, max_relative = 1e-12);
        }
        // power alpha=0.5 at t=-4: chi = -4, composition -(-chi)^2 = -16
        let w = Weight::power(0.5).unwrap();
        let g = w.compose_power(2.0, &[-4.0, -2.0]).unwrap();
        assert_relative_eq!(g.vals()[0], -16.0, max_relative = 1e-14);
        // chi(0) = 0 maps to 0
        let g = Weight::exp().compose_power(1.5, &[-1.0, 0.0]).unwrap();
        assert_eq!(g.vals()[1], 0.0);
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "power:0.45",
            "divpower:0.5",
            "exp",
            "softplus",
            "linear",
            "zero",
            "ts:softplus:0.25:16",
        ] {
            let w: Weight = s.parse().unwrap();
            let _ = w.eval(-2.0).unwrap();
        }
        assert!("power:1.5".parse::<Weight>().is_err());
        assert!("power:".parse::<Weight>().is_err());
        assert!("ts:softplus:0.25".parse::<Weight>().is_err());
        assert!("frobnicate".parse::<Weight>().is_err());
        // nested translate of a power base
        let w: Weight = "ts:power:0.5:0.5:8".parse().unwrap();
        let base = Weight::power(0.5).unwrap();
        assert_relative_eq!(
            w.eval(-16.0).unwrap(),
            0.5 * base.eval(-8.0).unwrap() - 4.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn finite_difference_consistency() {
        let weights: Vec<Weight> = vec![
            Weight::power(0.45).unwrap(),
            Weight::power(0.7).unwrap(),
            Weight::divisor_power(0.3).unwrap(),
            Weight::exp(),
            Weight::softplus_kink(),
            Weight::translated_scaled(Weight::softplus_kink(), 0.25, 16.0).unwrap(),
        ];
        let probes = crate::grid::log_spaced(-1e5, -1e-3, 40).unwrap();
        for w in &weights {
            for &t in &probes {
                if (t + 1.0).abs() < 1e-2 || (t + 16.0).abs() < 1e-2 {
                    continue; // skip piece joints
                }
                let h = 1e-6 * (1.0 + t.abs());
                let fd = (w.eval_unchecked(t + h) - w.eval_unchecked(t - h)) / (2.0 * h);
                let d = w.deriv(t, 1).unwrap();
                assert!(
                    (d - fd).abs() / (1.0 + d.abs()) <= 1e-5,
                    "{w} at t={t}: deriv {d} vs fd {fd}"
                );
                let fd2 = (w.deriv_unchecked(t + h, 1) - w.deriv_unchecked(t - h, 1)) / (2.0 * h);
                let d2 = w.deriv(t, 2).unwrap();
                assert!(
                    (d2 - fd2).abs() / (1.0 + d2.abs()) <= 1e-5,
                    "{w} at t={t}: second deriv {d2} vs fd {fd2}"
                );
            }
        }
    }

    #[test]
    fn monotone_convex_on_probe_grid() {
        let weights: Vec<Weight> = vec![
            Weight::power(0.3).unwrap(),
            Weight::power(0.49).unwrap(),
            Weight::power(0.7).unwrap(),
            Weight::divisor_power(0.5).unwrap(),
            Weight::exp(),
            Weight::softplus_kink(),
            Weight::translated_scaled(Weight::softplus_kink(), 0.0625, 256.0).unwrap(),
            Weight::linear(),
            Weight::zero(),
        ];
        let probes = crate::grid::log_spaced(DEFAULT_T_FLOOR, -1e-3, 60).unwrap();
        for w in &weights {
            for &t in &probes {
                assert!(w.deriv(t, 1).unwrap() >= -1e-12, "{w} not monotone at {t}");
                assert!(w.deriv(t, 2).unwrap() >= -1e-12, "{w} not convex at {t}");
                assert!(w.eval(t).unwrap() <= 1e-12, "{w} positive at {t}");
            }
        }
    }

    #[test]
    fn boundedness_detection() {
        assert!(Weight::exp().bounded_below(1e-6));
        assert!(Weight::softplus_kink().bounded_below(1e-6));
        assert!(Weight::zero().bounded_below(1e-6));
        assert!(!Weight::power(0.5).unwrap().bounded_below(1e-6));
        assert!(!Weight::linear().bounded_below(1e-6));
    }
}
