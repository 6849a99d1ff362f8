//! Discrete envelopes: the largest convex nondecreasing minorant of grid
//! data, its contact set, and the discrete Monge-Ampere mass it carries.
//!
//! The minorant is the lower convex hull of the sample points, flattened to
//! the left of the hull minimizer; on the grid this is the pointwise-largest
//! convex nondecreasing function below the data. Slope jumps concentrate at
//! hull vertices, so the discrete mass vanishes off the contact set.

use crate::error::{Error, Result};
use crate::grid::{log_spaced, GridFunction};
use crate::radial::RadialPotential;

/// Relative tolerance deciding whether a node touches the obstacle.
const CONTACT_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct EnvelopeResult {
    pub env: GridFunction,
    /// Per node: does the envelope touch the input there?
    pub contact: Vec<bool>,
    /// Per interior node: discrete Monge-Ampere mass carried by the envelope.
    pub discrete_ma: Vec<f64>,
}

impl EnvelopeResult {
    pub fn total_mass(&self) -> f64 {
        self.discrete_ma.iter().sum()
    }

    /// Mass sitting at interior nodes where the envelope is strictly below
    /// the obstacle.
    pub fn off_contact_mass(&self) -> f64 {
        self.discrete_ma
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.contact[i + 1])
            .map(|(_, m)| m.abs())
            .sum()
    }
}

/// Largest convex nondecreasing minorant of the sampled data, with plain
/// second-difference mass at interior nodes.
pub fn convex_increasing_minorant(g: &GridFunction) -> Result<EnvelopeResult> {
    minorant_impl(g, None)
}

/// Same minorant, with the slope jump weighted by n * slope_left^{n-1} so
/// that summed mass matches the antiderivative slope^n.
pub fn convex_increasing_minorant_dim(g: &GridFunction, n: u32) -> Result<EnvelopeResult> {
    minorant_impl(g, Some(n))
}

fn minorant_impl(g: &GridFunction, dim: Option<u32>) -> Result<EnvelopeResult> {
    let ts = g.ts();
    let vals = g.vals();
    let k = ts.len();

    // lower convex hull by monotone chain; indices into the grid.
    // near-collinear points (relative to rounding scale) are dropped from
    // the vertex set, which makes re-enveloping an envelope reproduce it
    // bit for bit.
    let mut hull: Vec<usize> = Vec::with_capacity(k);
    for i in 0..k {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let lhs = (ts[b] - ts[a]) * (vals[i] - vals[a]);
            let rhs = (vals[b] - vals[a]) * (ts[i] - ts[a]);
            let cross = lhs - rhs;
            if cross <= 1e-12 * (lhs.abs() + rhs.abs()) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }

    // leftmost hull vertex from which the hull is nondecreasing
    let mut pivot = hull.len() - 1;
    for j in 0..hull.len() - 1 {
        let (a, b) = (hull[j], hull[j + 1]);
        if (vals[b] - vals[a]) / (ts[b] - ts[a]) >= 0.0 {
            pivot = j;
            break;
        }
    }
    let t_pivot = ts[hull[pivot]];
    let min_val = vals[hull[pivot]];

    let mut env = Vec::with_capacity(k);
    let mut seg = 0usize;
    for i in 0..k {
        if ts[i] <= t_pivot {
            env.push(min_val);
            continue;
        }
        while seg + 1 < hull.len() && ts[hull[seg + 1]] < ts[i] {
            seg += 1;
        }
        let (a, b) = (hull[seg], hull[seg + 1]);
        if i == b {
            env.push(vals[b]);
        } else {
            let lambda = (ts[i] - ts[a]) / (ts[b] - ts[a]);
            env.push(vals[a] + lambda * (vals[b] - vals[a]));
        }
    }

    let contact: Vec<bool> = (0..k)
        .map(|i| (env[i] - vals[i]).abs() <= CONTACT_TOL * (1.0 + vals[i].abs()))
        .collect();

    let mut discrete_ma = Vec::with_capacity(k.saturating_sub(2));
    for i in 1..k - 1 {
        let sl = (env[i] - env[i - 1]) / (ts[i] - ts[i - 1]);
        let sr = (env[i + 1] - env[i]) / (ts[i + 1] - ts[i]);
        let jump = sr - sl;
        let m = match dim {
            None => jump,
            Some(n) => n as f64 * sl.max(0.0).powi(n as i32 - 1) * jump,
        };
        discrete_ma.push(m);
    }

    Ok(EnvelopeResult {
        env: GridFunction::new(ts.to_vec(), env)?,
        contact,
        discrete_ma,
    })
}

/// Log-spaced grid specification for potential-power envelopes.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub nodes: usize,
}

impl Default for EnvelopeGrid {
    fn default() -> Self {
        // deep enough that a vanishing envelope slope at the left end is
        // distinguishable from the slow power-law decay of admissible data
        Self {
            t_min: -1e8,
            t_max: -1e-3,
            nodes: 4096,
        }
    }
}

impl EnvelopeGrid {
    pub fn build(&self) -> Result<Vec<f64>> {
        log_spaced(self.t_min, self.t_max, self.nodes)
    }
}

#[derive(Debug, Clone)]
pub struct PowerEnvelope {
    pub result: EnvelopeResult,
    /// Envelope slope on the leftmost interval, the pole-mass surrogate.
    pub left_slope: f64,
    /// True when the leftmost slope carries no Monge-Ampere mass at the
    /// pole: slope^n below 1e-4.
    pub full_mass: bool,
}

/// Envelope of t -> -(-chi(t))^q over a log-spaced grid, with the residual
/// pole-mass test on the left end slope.
pub fn envelope_power(rp: &RadialPotential, q: f64, grid: &EnvelopeGrid) -> Result<PowerEnvelope> {
    if !(q > 1.0) {
        return Err(Error::InvalidInput(format!(
            "envelope power needs q > 1, got {q}"
        )));
    }
    let ts = grid.build()?;
    let mut vals = Vec::with_capacity(ts.len());
    for &t in &ts {
        let c = rp.chi(t);
        if !(c < 0.0) {
            return Err(Error::Pole(format!(
                "potential vanishes at t = {t}; composition is degenerate on this grid"
            )));
        }
        vals.push(-(-c).powf(q));
    }
    let g = GridFunction::new(ts, vals)?;
    let result = convex_increasing_minorant_dim(&g, rp.dimension())?;
    let ets = result.env.ts();
    let evs = result.env.vals();
    let left_slope = (evs[1] - evs[0]) / (ets[1] - ets[0]);
    let full_mass = left_slope.max(0.0).powi(rp.dimension() as i32) <= 1e-4;
    Ok(PowerEnvelope {
        result,
        left_slope,
        full_mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Weight;
    use approx::assert_relative_eq;

    /// Brute-force largest convex nondecreasing minorant on a grid: the
    /// pointwise supremum of all nondecreasing affine functions below the
    /// data, using every pair slope and the flat line at the minimum.
    fn brute_force_minorant(ts: &[f64], vals: &[f64]) -> Vec<f64> {
        let k = ts.len();
        let mut candidates: Vec<(f64, f64)> = Vec::new(); // (slope, intercept)
        let vmin = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        candidates.push((0.0, vmin));
        for i in 0..k {
            for j in i + 1..k {
                let b = (vals[j] - vals[i]) / (ts[j] - ts[i]);
                if b < 0.0 {
                    continue;
                }
                let a = (0..k)
                    .map(|l| vals[l] - b * ts[l])
                    .fold(f64::INFINITY, f64::min);
                candidates.push((b, a));
            }
        }
        (0..k)
            .map(|l| {
                candidates
                    .iter()
                    .map(|(b, a)| a + b * ts[l])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect()
    }

    #[test]
    fn admissible_input_is_its_own_envelope() {
        let ts: Vec<f64> = (0..50).map(|i| -5.0 + 0.1 * i as f64).collect();
        let g = GridFunction::sample(ts, |t| t.exp_m1()).unwrap();
        let r = convex_increasing_minorant(&g).unwrap();
        for (e, v) in r.env.vals().iter().zip(g.vals()) {
            assert_relative_eq!(e, v, epsilon = 1e-12);
        }
        assert!(r.contact.iter().all(|&c| c));
        assert!(r.off_contact_mass() <= 1e-12 * r.total_mass().max(1.0));
    }

    #[test]
    fn concave_increasing_data_gets_the_chord() {
        // -t^2 is increasing and concave on [-10, -1]: envelope 11t + 10
        let ts: Vec<f64> = (0..91).map(|i| -10.0 + 0.1 * i as f64).collect();
        let g = GridFunction::sample(ts.clone(), |t| -t * t).unwrap();
        let r = convex_increasing_minorant(&g).unwrap();
        for (t, e) in ts.iter().zip(r.env.vals()) {
            assert_relative_eq!(*e, 11.0 * t + 10.0, epsilon = 1e-9);
        }
        assert!(r.contact[0] && r.contact[90]);
        assert!(!r.contact[45]);
        let brute = brute_force_minorant(g.ts(), g.vals());
        for (e, b) in r.env.vals().iter().zip(&brute) {
            assert_relative_eq!(e, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn dip_is_bridged_and_carries_no_mass() {
        // min of two convex curves has a non-convex dip near the crossover
        let ts: Vec<f64> = (0..240).map(|i| -6.0 + 0.025 * i as f64).collect();
        let g = GridFunction::sample(ts, |t| (t.exp_m1()).min((t + 2.0).exp() - 1.5)).unwrap();
        let r = convex_increasing_minorant(&g).unwrap();
        let brute = brute_force_minorant(r.env.ts(), g.vals());
        for (e, b) in r.env.vals().iter().zip(&brute) {
            assert_relative_eq!(e, b, epsilon = 1e-9);
        }
        assert!(
            !r.contact.iter().all(|&c| c),
            "the dip must leave the obstacle"
        );
        assert!(r.off_contact_mass() <= 1e-10 * r.total_mass());
        // envelope stays below the data and is convex nondecreasing
        for (e, v) in r.env.vals().iter().zip(g.vals()) {
            assert!(e <= &(v + 1e-12));
        }
        for w in r.env.vals().windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }

    #[test]
    fn flattening_handles_decreasing_heads() {
        // strictly decreasing then increasing data: flat region at the left
        let ts = vec![-4.0, -3.0, -2.0, -1.0, 0.0];
        let vals = vec![3.0, 1.0, 0.0, 0.5, 2.0];
        let g = GridFunction::new(ts, vals).unwrap();
        let r = convex_increasing_minorant(&g).unwrap();
        assert_eq!(r.env.vals()[0], 0.0);
        assert_eq!(r.env.vals()[1], 0.0);
        assert_eq!(r.env.vals()[2], 0.0);
        let brute = brute_force_minorant(r.env.ts(), g.vals());
        for (e, b) in r.env.vals().iter().zip(&brute) {
            assert_relative_eq!(e, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn idempotence() {
        let ts: Vec<f64> = (0..100).map(|i| -8.0 + 0.08 * i as f64).collect();
        let g = GridFunction::sample(ts, |t| (t * 1.3).sin() + t * 0.1).unwrap();
        let r1 = convex_increasing_minorant(&g).unwrap();
        let r2 = convex_increasing_minorant(&r1.env).unwrap();
        assert_eq!(r1.env.vals(), r2.env.vals());
    }

    #[test]
    fn envelope_power_cases() {
        let grid = EnvelopeGrid::default();

        let rp = RadialPotential::ball(Weight::power(0.45).unwrap(), 2).unwrap();
        let pe = envelope_power(&rp, 1.5, &grid).unwrap();
        assert!(pe.full_mass, "left slope {} keeps pole mass", pe.left_slope);

        let rp = RadialPotential::ball(Weight::linear(), 2).unwrap();
        let pe = envelope_power(&rp, 2.0, &grid).unwrap();
        assert!(!pe.full_mass, "log pole squared must lose full mass");

        let rp = RadialPotential::ball(Weight::exp(), 2).unwrap();
        let pe = envelope_power(&rp, 1.5, &grid).unwrap();
        assert!(pe.full_mass);

        // identically-zero potential is degenerate for the composition
        let rp = RadialPotential::ball(Weight::zero(), 2).unwrap();
        assert!(envelope_power(&rp, 1.5, &grid).is_err());
    }
}
