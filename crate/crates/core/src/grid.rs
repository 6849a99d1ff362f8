//! Sampled functions on ascending grids, plus grid builders.

use crate::error::{Error, Result};

/// A function sampled on a strictly increasing abscissa grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    ts: Vec<f64>,
    vals: Vec<f64>,
}

impl GridFunction {
    pub fn new(ts: Vec<f64>, vals: Vec<f64>) -> Result<Self> {
        if ts.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "grid needs at least 2 nodes, got {}",
                ts.len()
            )));
        }
        if ts.len() != vals.len() {
            return Err(Error::InvalidInput(format!(
                "grid/value length mismatch: {} vs {}",
                ts.len(),
                vals.len()
            )));
        }
        for w in ts.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidInput(format!(
                    "grid abscissae must be strictly increasing, found {} then {}",
                    w[0], w[1]
                )));
            }
        }
        if ts.iter().chain(vals.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "grid contains non-finite entries".into(),
            ));
        }
        Ok(Self { ts, vals })
    }

    /// Sample a closure on the given abscissae.
    pub fn sample(ts: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let vals = ts.iter().map(|&t| f(t)).collect();
        Self::new(ts, vals)
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn vals(&self) -> &[f64] {
        &self.vals
    }

    pub fn len(&self) -> usize {
        self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_parts(self) -> (Vec<f64>, Vec<f64>) {
        (self.ts, self.vals)
    }
}

/// Log-spaced grid of negative abscissae from `t_min` up to `t_max`
/// (both strictly negative, `t_min < t_max`), returned ascending.
pub fn log_spaced(t_min: f64, t_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(t_min < t_max && t_max < 0.0) || !t_min.is_finite() {
        return Err(Error::InvalidInput(format!(
            "log grid needs t_min < t_max < 0, got [{t_min}, {t_max}]"
        )));
    }
    if count < 2 {
        return Err(Error::InvalidInput(
            "log grid needs at least 2 nodes".into(),
        ));
    }
    let lo = (-t_min).ln();
    let hi = (-t_max).ln();
    let n = count as f64 - 1.0;
    let mut ts: Vec<f64> = (0..count)
        .map(|i| {
            let u = lo + (hi - lo) * (i as f64) / n;
            -u.exp()
        })
        .collect();
    // guard endpoints against rounding through exp(ln(.))
    ts[0] = t_min;
    ts[count - 1] = t_max;
    Ok(ts)
}

/// Linearly spaced values, inclusive of both endpoints.
pub fn lin_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let n = count as f64 - 1.0;
    (0..count)
        .map(|i| lo + (hi - lo) * (i as f64) / n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(GridFunction::new(vec![0.0], vec![0.0]).is_err());
        assert!(GridFunction::new(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(GridFunction::new(vec![1.0, 0.0], vec![1.0, 2.0]).is_err());
        assert!(GridFunction::new(vec![0.0, 1.0], vec![1.0, f64::NAN]).is_err());
        assert!(GridFunction::new(vec![0.0, 1.0], vec![1.0]).is_err());
    }

    #[test]
    fn log_grid_spans_range() {
        let ts = log_spaced(-1e6, -1e-3, 64).unwrap();
        assert_eq!(ts.len(), 64);
        assert_eq!(ts[0], -1e6);
        assert_eq!(ts[63], -1e-3);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
    }
}
