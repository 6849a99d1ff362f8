//! Adaptive quadrature on half-lines (-inf, b] with tail classification.
//!
//! The integral is truncated at a configurable floor, evaluated with
//! adaptive Gauss-Kronrod panels (the far tail through the substitution
//! t = -e^u, which turns power tails into smooth exponentials), and the
//! part below the floor is recovered by extrapolating a fitted tail model.
//! The finiteness verdict comes from a log-log regression of the integrand
//! over a tail window: slope beta below -1 - delta means convergent, above
//! -1 + delta divergent, and the band in between is reported as
//! inconclusive rather than guessed.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Quadrature and classification parameters.
#[derive(Debug, Clone)]
pub struct QuadConfig {
    /// Relative tolerance for the truncated integral.
    pub rel_tol: f64,
    /// Lower truncation of the half-line.
    pub t_floor: f64,
    /// Window (lo, hi) used for the tail regression, lo < hi < 0.
    pub tail_window: (f64, f64),
    /// Half-width of the inconclusive band around the critical exponent -1.
    pub delta_margin: f64,
    /// Panel subdivision budget.
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            t_floor: -1e6,
            tail_window: (-1e5, -1e2),
            delta_margin: 0.05,
            max_subdivisions: 4000,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.tail_window;
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Config(format!(
                "rel_tol out of range: {}",
                self.rel_tol
            )));
        }
        if !(self.t_floor < -1.0 && self.t_floor.is_finite()) {
            return Err(Error::Config(format!(
                "t_floor must be finite and < -1: {}",
                self.t_floor
            )));
        }
        if !(self.t_floor < lo && lo < hi && hi < 0.0) {
            return Err(Error::Config(format!(
                "tail_window must satisfy t_floor < lo < hi < 0, got ({lo}, {hi})"
            )));
        }
        if !(self.delta_margin > 0.0 && self.delta_margin < 0.5) {
            return Err(Error::Config(format!(
                "delta_margin out of range: {}",
                self.delta_margin
            )));
        }
        if self.max_subdivisions < 8 {
            return Err(Error::Config("max_subdivisions must be at least 8".into()));
        }
        Ok(())
    }

    pub fn with_t_floor(mut self, t_floor: f64) -> Self {
        self.t_floor = t_floor;
        self
    }
}

/// Outcome of an improper integral over (-inf, upper].
#[derive(Debug, Clone, PartialEq)]
pub enum VerdictKind {
    Finite { value: f64, abs_err: f64 },
    Divergent { tail_exponent: f64 },
    Inconclusive { tail_exponent_estimate: f64 },
}

#[derive(Debug, Clone)]
pub struct IntegralVerdict {
    pub kind: VerdictKind,
    /// Fitted tail exponent when a power fit was made; -inf marks
    /// superpolynomial decay, +inf superpolynomial growth, None a tail
    /// that vanished identically on the window.
    pub tail_exponent: Option<f64>,
    /// Relative change of the (extrapolated) value when the floor is halved.
    pub floor_sensitivity: f64,
}

impl IntegralVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self.kind, VerdictKind::Finite { .. })
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self.kind, VerdictKind::Divergent { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.kind, VerdictKind::Inconclusive { .. })
    }

    pub fn value(&self) -> Option<f64> {
        match self.kind {
            VerdictKind::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn abs_err(&self) -> Option<f64> {
        match self.kind {
            VerdictKind::Finite { abs_err, .. } => Some(abs_err),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            VerdictKind::Finite { .. } => "Finite",
            VerdictKind::Divergent { .. } => "Divergent",
            VerdictKind::Inconclusive { .. } => "Inconclusive",
        }
    }

    /// Finite and Divergent agree with themselves; Inconclusive is
    /// compatible with everything.
    pub fn kind_agrees_with(&self, other: &IntegralVerdict) -> bool {
        if self.is_inconclusive() || other.is_inconclusive() {
            return true;
        }
        self.kind_name() == other.kind_name()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBehavior {
    /// f ~ C (-t)^beta near -infinity.
    Power(f64),
    /// Decay faster than any power (exponential-model fit wins).
    SuperpolyDecay,
    /// Growth faster than any power toward -infinity.
    SuperpolyGrowth,
    /// Every sample on the window vanished.
    Zero,
}

#[derive(Debug, Clone, Copy)]
pub struct TailFit {
    pub behavior: TailBehavior,
    /// rms residual of the winning model in log space.
    pub rms: f64,
    /// slope of the exponential model log f = a + b t.
    pub exp_slope: f64,
}

impl TailFit {
    fn exponent_sentinel(&self) -> f64 {
        match self.behavior {
            TailBehavior::Power(b) => b,
            TailBehavior::SuperpolyDecay | TailBehavior::Zero => f64::NEG_INFINITY,
            TailBehavior::SuperpolyGrowth => f64::INFINITY,
        }
    }
}

const TAIL_SAMPLES: usize = 64;
const MIN_TAIL_SAMPLES: usize = 8;

/// Least-squares slope of y against x with centering; returns (slope, rss).
fn lsq_slope(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let mut rss = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let r = (y - my) - slope * (x - mx);
        rss += r * r;
    }
    (slope, rss)
}

/// Fit the tail of `log_f` (natural log of the integrand) over `window`
/// on a log-spaced sample. Zeros of f appear as -inf in `log_f`.
pub fn tail_fit(log_f: &dyn Fn(f64) -> f64, window: (f64, f64)) -> Result<TailFit> {
    let (lo, hi) = window;
    if !(lo < hi && hi < 0.0) {
        return Err(Error::Config(format!("bad tail window ({lo}, {hi})")));
    }
    let ulo = (-hi).ln();
    let uhi = (-lo).ln();
    let mut ts = Vec::with_capacity(TAIL_SAMPLES);
    let mut ys = Vec::with_capacity(TAIL_SAMPLES);
    let mut zeros = 0usize;
    for i in 0..TAIL_SAMPLES {
        let u = ulo + (uhi - ulo) * (i as f64) / (TAIL_SAMPLES as f64 - 1.0);
        let t = -u.exp();
        let y = log_f(t);
        if y.is_nan() || y == f64::INFINITY {
            return Err(Error::Evaluation { t });
        }
        if y == f64::NEG_INFINITY {
            zeros += 1;
        } else {
            ts.push(t);
            ys.push(y);
        }
    }
    if ts.len() < MIN_TAIL_SAMPLES {
        // every discarded sample was an exact zero, so the window tail is
        // negligible; the few stragglers cannot support a regression
        debug_assert_eq!(zeros + ts.len(), TAIL_SAMPLES);
        return Ok(TailFit {
            behavior: TailBehavior::Zero,
            rms: 0.0,
            exp_slope: 0.0,
        });
    }
    let lxs: Vec<f64> = ts.iter().map(|t| (-t).ln()).collect();
    let (beta, rss_pow) = lsq_slope(&lxs, &ys);
    let (b_exp, rss_exp) = lsq_slope(&ts, &ys);
    let n = ts.len() as f64;
    let superpoly = rss_pow > 10.0 * rss_exp && rss_pow / n > 1e-6;
    if superpoly {
        let rms = (rss_exp / n).sqrt();
        if b_exp > 0.0 {
            Ok(TailFit {
                behavior: TailBehavior::SuperpolyDecay,
                rms,
                exp_slope: b_exp,
            })
        } else {
            Ok(TailFit {
                behavior: TailBehavior::SuperpolyGrowth,
                rms,
                exp_slope: b_exp,
            })
        }
    } else {
        Ok(TailFit {
            behavior: TailBehavior::Power(beta),
            rms: (rss_pow / n).sqrt(),
            exp_slope: b_exp,
        })
    }
}

/// Least-squares tail exponent of a positive integrand over `window`;
/// -inf signals superpolynomial decay, +inf superpolynomial growth.
pub fn tail_exponent(f: &dyn Fn(f64) -> f64, window: (f64, f64), _cfg: &QuadConfig) -> Result<f64> {
    let log_f = |t: f64| {
        let v = f(t);
        if v.is_nan() {
            f64::NAN
        } else if v <= 0.0 {
            // nonpositive samples are not usable for the fit
            if v == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::NAN
            }
        } else {
            v.ln()
        }
    };
    let fit = tail_fit(&log_f, window)?;
    match fit.behavior {
        TailBehavior::Zero => Err(Error::Estimation(
            "integrand vanishes on the tail window".into(),
        )),
        _ => Ok(fit.exponent_sentinel()),
    }
}

// 15-point Kronrod / 7-point Gauss pair (positive abscissae), kept at full
// table precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod panel; returns (integral, error estimate).
fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { t: x })
        }
    };
    let fc = eval(c)?;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = eval(c - x)?;
        let f2 = eval(c + x)?;
        let s = f1 + f2;
        resk += WGK[j] * s;
        if j % 2 == 1 {
            resg += WG[(j - 1) / 2] * s;
        }
    }
    Ok((resk * h, ((resk - resg) * h).abs()))
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    val: f64,
    err: f64,
    /// true when (lo, hi) live in u-space with t = -e^u
    uspace: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.lo == other.lo
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then(other.lo.total_cmp(&self.lo))
    }
}

fn eval_panel(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, uspace: bool) -> Result<Panel> {
    let (val, err) = if uspace {
        let g = |u: f64| {
            let eu = u.exp();
            f(-eu) * eu
        };
        gk15(&g, lo, hi).map_err(|e| match e {
            Error::Evaluation { t } => Error::Evaluation { t: -t.exp() },
            other => other,
        })?
    } else {
        gk15(f, lo, hi)?
    };
    Ok(Panel {
        lo,
        hi,
        val,
        err,
        uspace,
    })
}

/// Adaptive integral of f over [a, b] in t-space (b <= 0), with panels
/// seeded at `hints` and the far part (t <= -1) handled in u = ln(-t).
/// Returns (value, error, budget_exhausted).
fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    hints: &[f64],
    cfg: &QuadConfig,
    budget: &mut usize,
) -> Result<(f64, f64, bool)> {
    if a >= b {
        return Ok((0.0, 0.0, false));
    }
    let mut pts = vec![a, b];
    if a < -1.0 && b > -1.0 {
        pts.push(-1.0);
    }
    for &h in hints {
        if h > a && h < b {
            pts.push(h);
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * (1.0 + y.abs()));

    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut toterr = 0.0;
    for w in pts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let panel = if hi <= -1.0 + 1e-12 {
            // reversed orientation: t in [lo, hi] maps to u in [ln(-hi), ln(-lo)]
            eval_panel(f, (-hi).ln(), (-lo).ln(), true)?
        } else {
            eval_panel(f, lo, hi, false)?
        };
        total += panel.val;
        toterr += panel.err;
        heap.push(panel);
    }

    loop {
        let tol = (cfg.rel_tol * total.abs()).max(1e-14);
        if toterr <= tol {
            return Ok((total, toterr, false));
        }
        let worst = match heap.pop() {
            Some(p) => p,
            None => return Ok((total, toterr, false)),
        };
        if worst.err <= 0.0 {
            return Ok((total, toterr, false));
        }
        if *budget == 0 {
            return Ok((total, toterr, true));
        }
        *budget -= 1;
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // interval exhausted at machine precision
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        total -= worst.val;
        toterr -= worst.err;
        let left = eval_panel(f, worst.lo, mid, worst.uspace)?;
        let right = eval_panel(f, mid, worst.hi, worst.uspace)?;
        total += left.val + right.val;
        toterr += left.err + right.err;
        heap.push(left);
        heap.push(right);
    }
}

/// Mass of the fitted tail model below `a`.
fn tail_extrapolation(f: &dyn Fn(f64) -> f64, a: f64, fit: &TailFit) -> f64 {
    match fit.behavior {
        TailBehavior::Zero => 0.0,
        TailBehavior::SuperpolyDecay => {
            let fa = f(a);
            if fa.is_finite() && fa > 0.0 && fit.exp_slope > 0.0 {
                fa / fit.exp_slope
            } else {
                0.0
            }
        }
        TailBehavior::Power(beta) => {
            let fa = f(a);
            if fa.is_finite() && fa > 0.0 && beta < -1.0 {
                fa * (-a) / (-1.0 - beta)
            } else {
                0.0
            }
        }
        TailBehavior::SuperpolyGrowth => f64::INFINITY,
    }
}

pub fn integrate_halfline(
    f: &dyn Fn(f64) -> f64,
    upper: f64,
    cfg: &QuadConfig,
) -> Result<IntegralVerdict> {
    integrate_halfline_with(f, None, &[], upper, cfg)
}

/// Full verdict machinery. `log_f`, when supplied, must equal ln(f) and is
/// used for the tail fit so that integrands of the form exp(phi) can be
/// classified without overflowing. `hints` seed panel boundaries.
pub fn integrate_halfline_with(
    f: &dyn Fn(f64) -> f64,
    log_f: Option<&dyn Fn(f64) -> f64>,
    hints: &[f64],
    upper: f64,
    cfg: &QuadConfig,
) -> Result<IntegralVerdict> {
    cfg.validate()?;
    if !(upper <= 0.0) || !upper.is_finite() {
        return Err(Error::InvalidInput(format!(
            "upper limit must be <= 0, got {upper}"
        )));
    }
    if !(cfg.t_floor < upper) {
        return Err(Error::InvalidInput(format!(
            "t_floor {} must lie below the upper limit {upper}",
            cfg.t_floor
        )));
    }
    let fallback_log = |t: f64| {
        let v = f(t);
        if v.is_nan() || v < 0.0 {
            f64::NAN
        } else if v == 0.0 {
            f64::NEG_INFINITY
        } else {
            v.ln()
        }
    };
    let (wlo, whi) = cfg.tail_window;
    let window = (
        wlo.max(cfg.t_floor * 0.999),
        whi.min(if upper < 0.0 { upper } else { -1e-3 }),
    );
    if !(window.0 < window.1) {
        return Err(Error::Config(format!(
            "tail window ({}, {}) incompatible with domain ({}, {upper}]",
            wlo, whi, cfg.t_floor
        )));
    }
    let fit = match log_f {
        Some(lf) => tail_fit(lf, window)?,
        None => tail_fit(&fallback_log, window)?,
    };

    let delta = cfg.delta_margin;
    let half = cfg.t_floor / 2.0;
    let finite_channel = |fit: &TailFit| -> Result<IntegralVerdict> {
        let mut budget = cfg.max_subdivisions;
        let (va, ea, ba) = adaptive(f, cfg.t_floor, half, hints, cfg, &mut budget)?;
        let (vb, eb, bb) = adaptive(f, half, upper, hints, cfg, &mut budget)?;
        let tail_full = tail_extrapolation(f, cfg.t_floor, fit);
        let tail_half = tail_extrapolation(f, half, fit);
        let value = va + vb + tail_full;
        let value_half = vb + tail_half;
        let sens = (value - value_half).abs() / (1.0 + value.abs());
        if ba || bb {
            return Ok(IntegralVerdict {
                kind: VerdictKind::Inconclusive {
                    tail_exponent_estimate: fit.exponent_sentinel(),
                },
                tail_exponent: tail_exponent_of(fit),
                floor_sensitivity: sens,
            });
        }
        let tail_unc = tail_full.abs() * (10.0 * fit.rms).min(0.5);
        Ok(IntegralVerdict {
            kind: VerdictKind::Finite {
                value,
                abs_err: ea + eb + tail_unc,
            },
            tail_exponent: tail_exponent_of(fit),
            floor_sensitivity: sens,
        })
    };

    match fit.behavior {
        TailBehavior::Zero | TailBehavior::SuperpolyDecay => finite_channel(&fit),
        TailBehavior::SuperpolyGrowth => Ok(IntegralVerdict {
            kind: VerdictKind::Divergent {
                tail_exponent: f64::INFINITY,
            },
            tail_exponent: Some(f64::INFINITY),
            floor_sensitivity: f64::INFINITY,
        }),
        TailBehavior::Power(beta) => {
            if beta < -1.0 - delta {
                finite_channel(&fit)
            } else if beta > -1.0 + delta {
                Ok(IntegralVerdict {
                    kind: VerdictKind::Divergent {
                        tail_exponent: beta,
                    },
                    tail_exponent: Some(beta),
                    floor_sensitivity: f64::INFINITY,
                })
            } else {
                // inside the undecidable band; report the truncated trend
                let mut budget = cfg.max_subdivisions;
                let sens = match (
                    adaptive(f, cfg.t_floor, half, hints, cfg, &mut budget),
                    adaptive(f, half, upper, hints, cfg, &mut budget),
                ) {
                    (Ok((va, _, _)), Ok((vb, _, _))) => va.abs() / (1.0 + (va + vb).abs()),
                    _ => f64::INFINITY,
                };
                Ok(IntegralVerdict {
                    kind: VerdictKind::Inconclusive {
                        tail_exponent_estimate: beta,
                    },
                    tail_exponent: Some(beta),
                    floor_sensitivity: sens,
                })
            }
        }
    }
}

fn tail_exponent_of(fit: &TailFit) -> Option<f64> {
    match fit.behavior {
        TailBehavior::Power(b) => Some(b),
        TailBehavior::SuperpolyDecay => Some(f64::NEG_INFINITY),
        TailBehavior::SuperpolyGrowth => Some(f64::INFINITY),
        TailBehavior::Zero => None,
    }
}
