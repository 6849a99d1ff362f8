//! Executable inequality checkers, each producing a structured report.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::quad::QuadConfig;
use crate::radial::{Model, RadialPotential};
use crate::weights::Weight;

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds,
    Violated,
    Skipped(String),
}

impl Verdict {
    pub fn as_str(&self) -> &str {
        match self {
            Verdict::Holds => "Holds",
            Verdict::Violated => "Violated",
            Verdict::Skipped(_) => "Skipped",
        }
    }
}

/// One checked inequality: lhs <= rhs with margin rhs - lhs.
#[derive(Debug, Clone)]
pub struct InequalityReport {
    pub name: String,
    pub params: Map<String, Value>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

impl InequalityReport {
    pub fn check(name: impl Into<String>, params: Map<String, Value>, lhs: f64, rhs: f64) -> Self {
        let margin = rhs - lhs;
        let verdict = if margin >= -1e-9 * (1.0 + rhs.abs()) {
            Verdict::Holds
        } else {
            Verdict::Violated
        };
        Self {
            name: name.into(),
            params,
            lhs,
            rhs,
            margin,
            verdict,
        }
    }

    pub fn skipped(
        name: impl Into<String>,
        params: Map<String, Value>,
        reason: impl Into<String>,
    ) -> Self {
        Self {
            name: name.into(),
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            verdict: Verdict::Skipped(reason.into()),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

pub fn params(entries: &[(&str, Value)]) -> Map<String, Value> {
    let mut m = Map::new();
    for (k, v) in entries {
        m.insert((*k).to_string(), v.clone());
    }
    m
}

pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(format_non_finite(v)))
}

fn format_non_finite(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// st <= (s+1)log(s+1) - s + e^t - t - 1 for s, t > 0, with equality
/// at t = log(1+s).
pub fn young_pair(s: f64, t: f64) -> InequalityReport {
    let p = params(&[("s", num(s)), ("t", num(t))]);
    if !(s > 0.0 && t > 0.0) {
        return InequalityReport::skipped("young", p, "requires s, t > 0");
    }
    if t > 700.0 {
        return InequalityReport::skipped("young", p, "overflow guard for e^t");
    }
    let lhs = s * t;
    let rhs = (s + 1.0) * (s + 1.0).ln() - s + t.exp() - t - 1.0;
    InequalityReport::check("young", p, lhs, rhs)
}

/// Worst margin over a log-spaced grid of (s, t) pairs.
pub fn young_grid_worst(count: usize, lo: f64, hi: f64) -> InequalityReport {
    let pts = crate::grid::lin_spaced(lo.ln(), hi.ln(), count);
    let mut worst: Option<InequalityReport> = None;
    for &ls in &pts {
        for &lt in &pts {
            let r = young_pair(ls.exp(), lt.exp());
            let replace = match &worst {
                None => true,
                Some(w) => r.margin < w.margin,
            };
            if replace {
                worst = Some(r);
            }
        }
    }
    let mut w = worst.expect("grid is nonempty");
    w.name = "young-grid-worst".into();
    w.params.insert("grid".into(), num(count as f64));
    w
}

/// |st - chi(s) - chi*(t)| at the tangency t = log(1+s) must vanish.
pub fn young_equality_probes(count: usize) -> Vec<InequalityReport> {
    crate::grid::lin_spaced((1e-2_f64).ln(), (15.0_f64).ln(), count)
        .into_iter()
        .map(|ls| {
            let s = ls.exp();
            let t = (1.0 + s).ln();
            let lhs_val = s * t;
            let rhs_val = (s + 1.0) * (s + 1.0).ln() - s + t.exp() - t - 1.0;
            let gap = (lhs_val - rhs_val).abs();
            let tol = 1e-9 * (1.0 + rhs_val.abs());
            InequalityReport::check(
                "young-equality",
                params(&[("s", num(s)), ("t", num(t))]),
                gap,
                tol,
            )
        })
        .collect()
}

/// Outcome of a Moser-Trudinger sweep over exponential constants.
#[derive(Debug, Clone)]
pub struct MtSweep {
    pub reports: Vec<InequalityReport>,
    /// Largest constant from the sweep with a finite integral, and the
    /// integral value there.
    pub c_verified: Option<(f64, f64)>,
    /// Empirical divergence threshold (infinite when no tested constant diverges).
    pub c_star: f64,
    pub e_p: f64,
}

/// Finiteness of the energy-normalized exponential integral across a grid
/// of constants, the empirical divergence threshold, and the one-sided
/// range assertion: every c below 0.9 * 2n(n+1)/(n+p) must come out finite.
pub fn check_mt(rp: &RadialPotential, p: f64, c_grid: &[f64], cfg: &QuadConfig) -> Result<MtSweep> {
    let e_p = rp
        .energy(p, cfg)?
        .value()
        .ok_or_else(|| Error::Precondition("mt sweep needs finite energy".into()))?;
    if e_p <= 0.0 {
        return Err(Error::Precondition(
            "mt sweep needs a non-constant potential".into(),
        ));
    }
    let n = rp.dimension() as f64;
    let gamma_max = 2.0 * n * (n + 1.0) / (n + p);
    let required = 0.9 * gamma_max;

    let mut reports = Vec::new();
    let mut c_verified: Option<(f64, f64)> = None;
    let mut worst_failure_below_required: f64 = 0.0;
    for &c in c_grid {
        let v = rp.mt_integral(p, c, cfg)?;
        let pr = params(&[
            ("weight", Value::String(rp.weight().to_string())),
            ("n", num(n)),
            ("p", num(p)),
            ("c", num(c)),
        ]);
        let finite = v.is_finite();
        if finite {
            if c_verified.map(|(cv, _)| c > cv).unwrap_or(true) {
                c_verified = Some((c, v.value().unwrap()));
            }
        } else if c <= required {
            worst_failure_below_required = worst_failure_below_required.max(c);
        }
        let mut rep = InequalityReport::check("mt-finite", pr, if finite { 0.0 } else { 1.0 }, 0.0);
        if let Some(val) = v.value() {
            rep.params.insert("value".into(), num(val));
        }
        if let Some(b) = v.tail_exponent {
            rep.params.insert("tail_exponent".into(), num(b));
        }
        reports.push(rep);
    }

    // empirical divergence threshold by bisection on the verdict kind
    let c_star = {
        let probe_hi = 4.0 * gamma_max;
        if rp.mt_kind(p, probe_hi, cfg)? == "Finite" {
            f64::INFINITY
        } else {
            let mut lo = 1e-3 * gamma_max;
            if rp.mt_kind(p, lo, cfg)? != "Finite" {
                0.0
            } else {
                let mut hi = probe_hi;
                for _ in 0..30 {
                    let mid = 0.5 * (lo + hi);
                    if rp.mt_kind(p, mid, cfg)? == "Finite" {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    };

    reports.push(InequalityReport::check(
        "mt-range",
        params(&[
            ("weight", Value::String(rp.weight().to_string())),
            ("n", num(n)),
            ("p", num(p)),
            ("required_up_to", num(required)),
            ("c_star", num(c_star)),
        ]),
        worst_failure_below_required,
        0.0,
    ));

    Ok(MtSweep {
        reports,
        c_verified,
        c_star,
        e_p,
    })
}

/// Growth of the exponential moment in k, bounded through the verified
/// exponential-integral constant: log of the k-th moment stays below
/// A k^{1+n/p} E_p^{1/p} + B with A from the Young-splitting chain and
/// B the log of the verified bound.
pub fn check_aubin(
    rp: &RadialPotential,
    p: f64,
    k_list: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<InequalityReport>> {
    let n = rp.dimension() as f64;
    let gamma_max = 2.0 * n * (n + 1.0) / (n + p);
    let c_grid: Vec<f64> = crate::grid::lin_spaced(0.3 * gamma_max, 0.9 * gamma_max, 7);
    let sweep = check_mt(rp, p, &c_grid, cfg)?;
    let (c, bound) = sweep
        .c_verified
        .ok_or_else(|| Error::Precondition("no finite exponential integral on the sweep".into()))?;
    let log_bound = bound.ln();
    let a_const = p * n.powf(n / p) / (c.powf(n / p) * (n + p).powf(1.0 + n / p));
    let e_p = sweep.e_p;

    let mut reports = Vec::new();
    let mut slope_pts: Vec<(f64, f64)> = Vec::new();
    for &k in k_list {
        let pr = params(&[
            ("weight", Value::String(rp.weight().to_string())),
            ("n", num(n)),
            ("p", num(p)),
            ("k", num(k)),
            ("A", num(a_const)),
            ("B", num(log_bound)),
            ("c", num(c)),
        ]);
        if !(k > 0.0) {
            reports.push(InequalityReport::skipped(
                "aubin-bound",
                pr,
                "k must be positive",
            ));
            continue;
        }
        let moment = rp.exp_moment(k, cfg)?;
        let value = match moment.value() {
            Some(v) => v,
            None => {
                reports.push(InequalityReport::skipped(
                    "aubin-bound",
                    pr,
                    format!("moment verdict {}", moment.kind_name()),
                ));
                continue;
            }
        };
        let lhs = value.ln();
        let rhs = a_const * k.powf(1.0 + n / p) * e_p.powf(1.0 / p) + log_bound;
        reports.push(InequalityReport::check("aubin-bound", pr, lhs, rhs));
        if lhs > 0.0 {
            slope_pts.push((k.ln(), lhs.ln()));
        }
    }

    if slope_pts.len() >= 2 {
        let nn = slope_pts.len() as f64;
        let mx = slope_pts.iter().map(|(x, _)| x).sum::<f64>() / nn;
        let my = slope_pts.iter().map(|(_, y)| y).sum::<f64>() / nn;
        let sxx: f64 = slope_pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        let sxy: f64 = slope_pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        reports.push(InequalityReport::check(
            "aubin-slope",
            params(&[
                ("weight", Value::String(rp.weight().to_string())),
                ("n", num(n)),
                ("p", num(p)),
            ]),
            slope,
            1.0 + n / p + 0.1,
        ));
    }
    Ok(reports)
}

/// s^{n+p} Cap(chi <= -s) <= ((n+p)/(n+1))^n E_p for bounded ball-model
/// potentials vanishing on the boundary.
pub fn check_capacity_energy(
    rp: &RadialPotential,
    p: f64,
    s_list: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<InequalityReport>> {
    let n = rp.dimension() as f64;
    let base = params(&[
        ("weight", Value::String(rp.weight().to_string())),
        ("n", num(n)),
        ("p", num(p)),
    ]);
    if rp.model() != Model::Ball || !rp.weight().bounded_below(1e-6) {
        return Ok(vec![InequalityReport::skipped(
            "capacity-energy",
            base,
            "weight is not in the bounded boundary-zero model class",
        )]);
    }
    let e_p = rp
        .energy(p, cfg)?
        .value()
        .ok_or_else(|| Error::Precondition("capacity-energy needs finite energy".into()))?;
    let q = (n + p) / (n + 1.0);
    let rhs = q.powf(n) * e_p;
    let mut out = Vec::new();
    for &s in s_list {
        let mut pr = base.clone();
        pr.insert("s".into(), num(s));
        pr.insert("E_p".into(), num(e_p));
        match rp.capacity_sublevel(s) {
            Ok(cap) => {
                let lhs = s.powf(n + p) * cap;
                out.push(InequalityReport::check("capacity-energy", pr, lhs, rhs));
            }
            Err(e) => out.push(InequalityReport::skipped(
                "capacity-energy",
                pr,
                e.to_string(),
            )),
        }
    }
    Ok(out)
}

/// Volume decay against capacity: volume(s) * exp(beta Cap(s)^{-1/n}) must
/// stay bounded along s for every beta below 2n, asserted as a no-blow-up
/// comparison between the last and first quartile of the s-sweep.
pub fn check_volume_capacity(
    rp: &RadialPotential,
    beta: f64,
    s_list: &[f64],
) -> Result<InequalityReport> {
    let n = rp.dimension() as f64;
    let pr = params(&[
        ("weight", Value::String(rp.weight().to_string())),
        ("n", num(n)),
        ("beta", num(beta)),
    ]);
    if !(beta < 2.0 * n) {
        return Ok(InequalityReport::skipped(
            "volume-capacity",
            pr,
            format!("beta must be below 2n = {}", 2.0 * n),
        ));
    }
    let mut s_sorted = s_list.to_vec();
    s_sorted.sort_by(f64::total_cmp);
    if s_sorted.len() < 4 {
        return Err(Error::InvalidInput(
            "volume-capacity needs at least 4 levels".into(),
        ));
    }
    let mut ms = Vec::with_capacity(s_sorted.len());
    for &s in &s_sorted {
        let cap = rp.capacity_sublevel(s)?;
        let vol = rp.volume_sublevel(s)?;
        ms.push(vol * (beta * cap.powf(-1.0 / n)).exp());
    }
    let k = ms.len().div_ceil(4);
    let first = ms[..k].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let last = ms[ms.len() - k..]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(InequalityReport::check(
        "volume-capacity",
        pr,
        last,
        1.1 * first,
    ))
}

/// Scaling family along a sequence of shrinking bump potentials:
/// the distance proxy to zero scales like eps^{n+p-np}, stays bounded away
/// from zero and infinity at the critical exponent, and the entropies stay
/// uniformly bounded.
pub fn noncompact_scaling(
    n: u32,
    p: f64,
    j_list: &[u32],
    cfg: &QuadConfig,
) -> Result<Vec<InequalityReport>> {
    if j_list.len() < 3 {
        return Err(Error::Estimation(
            "scaling fit needs at least 3 members".into(),
        ));
    }
    let nf = n as f64;
    let j_max = *j_list.iter().max().unwrap();
    let floor = -(4.0 * 2f64.powi((n * j_max) as i32)).max(1e6);
    let zero = RadialPotential::ball(Weight::zero().with_t_floor(floor)?, n)?;

    let mut lnx = Vec::new();
    let mut lny = Vec::new();
    let mut i_vals = Vec::new();
    let mut entropies = Vec::new();
    let mut member_rows = Vec::new();
    for &j in j_list {
        let eps = 2f64.powi(-(j as i32));
        let shift = eps.powi(-(n as i32));
        let w =
            Weight::translated_scaled(Weight::softplus_kink(), eps, shift)?.with_t_floor(floor)?;
        let rp = RadialPotential::ball(w, n)?;
        let i_p = rp.dp_proxy(&zero, p, cfg)?;
        let ent = rp.entropy(cfg)?;
        let ent_val = ent
            .exact
            .value()
            .ok_or_else(|| Error::Estimation(format!("member entropy not finite at j = {j}")))?;
        lnx.push(eps.ln());
        lny.push(i_p.ln());
        i_vals.push(i_p);
        entropies.push(ent_val);
        member_rows.push(InequalityReport::check(
            "noncompact-member",
            params(&[
                ("n", num(nf)),
                ("p", num(p)),
                ("j", num(j as f64)),
                ("eps", num(eps)),
                ("proxy", num(i_p)),
                ("entropy", num(ent_val)),
            ]),
            0.0,
            0.0,
        ));
    }

    let m = lnx.len() as f64;
    let mx = lnx.iter().sum::<f64>() / m;
    let my = lny.iter().sum::<f64>() / m;
    let sxx: f64 = lnx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lnx.iter().zip(&lny).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let expected = nf + p - nf * p;

    let mut out = member_rows;
    out.push(InequalityReport::check(
        "noncompact-slope",
        params(&[
            ("n", num(nf)),
            ("p", num(p)),
            ("slope", num(slope)),
            ("expected", num(expected)),
        ]),
        (slope - expected).abs(),
        0.1,
    ));

    if expected.abs() < 0.05 {
        let max = i_vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = i_vals.iter().cloned().fold(f64::INFINITY, f64::min);
        out.push(InequalityReport::check(
            "noncompact-band",
            params(&[("n", num(nf)), ("p", num(p))]),
            max / min,
            10.0,
        ));
    }

    let ent_ref = entropies[0];
    let ent_max = entropies.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    out.push(InequalityReport::check(
        "noncompact-entropy-bound",
        params(&[
            ("n", num(nf)),
            ("p", num(p)),
            ("reference_j", num(j_list[0] as f64)),
        ]),
        ent_max,
        10.0 * ent_ref,
    ));
    Ok(out)
}

/// Finite entropy forces finite energy below the critical exponent
/// n/(n-1), and never a divergent energy at the critical exponent itself.
pub fn check_thm_a(rp: &RadialPotential, cfg: &QuadConfig) -> Result<Vec<InequalityReport>> {
    let n = rp.dimension() as f64;
    let base = params(&[
        ("weight", Value::String(rp.weight().to_string())),
        ("n", num(n)),
    ]);
    if rp.dimension() < 2 {
        return Ok(vec![InequalityReport::skipped(
            "entropy-energy",
            base,
            "critical exponent needs dimension at least 2",
        )]);
    }
    let ent = rp.entropy(cfg)?;
    if !ent.is_finite() {
        return Ok(vec![InequalityReport::skipped(
            "entropy-energy",
            base,
            format!("entropy verdict {}", ent.kind_name()),
        )]);
    }
    let p_crit = n / (n - 1.0);
    let mut out = Vec::new();
    for frac in [0.25, 0.5, 0.75, 1.0] {
        let p = frac * p_crit;
        let v = rp.energy(p, cfg)?;
        let mut pr = base.clone();
        pr.insert("p".into(), num(p));
        pr.insert("verdict".into(), Value::String(v.kind_name().into()));
        let rep = if frac < 1.0 {
            // strictly below critical: must be finite
            match v.kind_name() {
                "Finite" => InequalityReport::check("entropy-energy", pr, 0.0, 0.0),
                "Inconclusive" => {
                    InequalityReport::skipped("entropy-energy", pr, "inconclusive quadrature")
                }
                _ => InequalityReport::check("entropy-energy", pr, 1.0, 0.0),
            }
        } else {
            // at critical: anything but divergence
            match v.kind_name() {
                "Divergent" => InequalityReport::check("entropy-energy-critical", pr, 1.0, 0.0),
                _ => InequalityReport::check("entropy-energy-critical", pr, 0.0, 0.0),
            }
        };
        out.push(rep);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn young_basics() {
        // both sides vanish at the corner of the domain
        let r = young_pair(1e-12, 1e-12);
        assert!(matches!(r.verdict, Verdict::Skipped(_)) || r.holds());

        // equality at the tangency point t = log(1+s)
        let r = young_pair(3.0, 4.0_f64.ln());
        assert!(r.holds());
        assert!(r.margin.abs() <= 1e-9 * (1.0 + r.rhs.abs()));

        let r = young_pair(2.0, 5.0);
        assert!(r.holds());
        assert!(r.margin > 0.0);

        assert!(matches!(
            young_pair(1.0, 701.0).verdict,
            Verdict::Skipped(_)
        ));
    }

    #[test]
    fn young_grid_and_probes() {
        let worst = young_grid_worst(40, 1e-3, 20.0);
        assert!(worst.holds(), "worst margin {}", worst.margin);
        for r in young_equality_probes(20) {
            assert!(r.holds(), "equality gap {} at {:?}", r.lhs, r.params);
        }
    }

    #[test]
    fn capacity_energy_spot_values() {
        let rp = RadialPotential::ball(Weight::exp(), 2).unwrap();
        let reps = check_capacity_energy(&rp, 1.0, &[0.5], &cfg()).unwrap();
        assert_eq!(reps.len(), 1);
        let r = &reps[0];
        assert!(r.holds());
        // lhs = 0.125 / (log 2)^2, rhs = E_1 = 1/3
        assert_relative_eq!(
            r.lhs,
            0.125 / std::f64::consts::LN_2.powi(2),
            epsilon = 1e-4
        );
        assert_relative_eq!(r.rhs, 1.0 / 3.0, epsilon = 1e-6);

        // unbounded weight is outside the model class
        let rp = RadialPotential::ball(Weight::power(0.45).unwrap(), 2).unwrap();
        let reps = check_capacity_energy(&rp, 1.0, &[0.5], &cfg()).unwrap();
        assert!(matches!(reps[0].verdict, Verdict::Skipped(_)));
    }

    #[test]
    fn volume_capacity_closed_form() {
        let s: Vec<f64> = (1..=9).map(|i| i as f64 * 0.1).collect();
        let lin = RadialPotential::ball(Weight::linear(), 2).unwrap();
        let r = check_volume_capacity(&lin, 3.9, &s).unwrap();
        assert!(r.holds(), "margin {}", r.margin);
        let r = check_volume_capacity(&lin, 4.0, &s).unwrap();
        assert!(matches!(r.verdict, Verdict::Skipped(_)));

        let e = RadialPotential::ball(Weight::exp(), 2).unwrap();
        let r = check_volume_capacity(&e, 3.5, &s).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn mt_sweep_bounded_weight() {
        let rp = RadialPotential::ball(Weight::exp(), 2).unwrap();
        let sweep = check_mt(&rp, 1.0, &[0.5, 1.0, 2.0, 3.0], &cfg()).unwrap();
        assert!(sweep.reports.iter().all(|r| r.holds()));
        assert_eq!(sweep.c_star, f64::INFINITY);
    }

    #[test]
    fn aubin_chain_on_bounded_weight() {
        let rp = RadialPotential::ball(Weight::exp(), 2).unwrap();
        let reps = check_aubin(&rp, 1.0, &[0.0, 1.0, 2.0, 4.0, 8.0, 16.0], &cfg()).unwrap();
        let skipped = reps
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Skipped(_)))
            .count();
        assert_eq!(skipped, 1, "k = 0 must be skipped");
        for r in reps
            .iter()
            .filter(|r| !matches!(r.verdict, Verdict::Skipped(_)))
        {
            assert!(r.holds(), "{} lhs {} rhs {}", r.name, r.lhs, r.rhs);
        }
    }

    #[test]
    fn thm_a_pipeline_on_finite_entropy_weight() {
        let rp = RadialPotential::ball(Weight::power(0.4).unwrap(), 2).unwrap();
        let reps = check_thm_a(&rp, &cfg()).unwrap();
        assert!(reps
            .iter()
            .all(|r| r.holds() || matches!(r.verdict, Verdict::Skipped(_))));
        // entropy-divergent weights are skipped outright
        let rp = RadialPotential::ball(Weight::power(0.7).unwrap(), 2).unwrap();
        let reps = check_thm_a(&rp, &cfg()).unwrap();
        assert!(matches!(reps[0].verdict, Verdict::Skipped(_)));
    }
}
