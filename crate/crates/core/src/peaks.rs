//! Peak location and half-maximum widths on sampled spectra.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    /// Vertex of the parabola through the sampled maximum and its neighbours.
    pub center: f64,
    pub height: f64,
    /// Full width at half of `height`, from linear interpolation of the
    /// two crossings. `NaN` when a crossing falls outside the grid.
    pub fwhm: f64,
}

/// Local maxima of `ys` above `min_fraction` of the global maximum, in grid
/// order. `xs` must be strictly increasing.
pub fn locate_peaks(xs: &[f64], ys: &[f64], min_fraction: f64) -> Vec<Peak> {
    assert_eq!(xs.len(), ys.len());
    let n = ys.len();
    if n < 3 {
        return Vec::new();
    }
    let global = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let floor = min_fraction * global;
    let mut peaks = Vec::new();
    for i in 1..n - 1 {
        if !(ys[i] > ys[i - 1] && ys[i] >= ys[i + 1] && ys[i] > floor) {
            continue;
        }
        let (center, height) = parabolic_vertex(
            (xs[i - 1], ys[i - 1]),
            (xs[i], ys[i]),
            (xs[i + 1], ys[i + 1]),
        );
        let half = height / 2.0;
        let left = (1..=i)
            .rev()
            .find(|&j| ys[j - 1] <= half)
            .map(|j| crossing(xs[j - 1], ys[j - 1], xs[j], ys[j], half));
        let right = (i..n - 1)
            .find(|&j| ys[j + 1] <= half)
            .map(|j| crossing(xs[j], ys[j], xs[j + 1], ys[j + 1], half));
        let fwhm = match (left, right) {
            (Some(l), Some(r)) => r - l,
            _ => f64::NAN,
        };
        peaks.push(Peak {
            center,
            height,
            fwhm,
        });
    }
    peaks
}

fn parabolic_vertex(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> (f64, f64) {
    let (x0, y0) = a;
    let (x1, y1) = b;
    let (x2, y2) = c;
    let d1 = (y1 - y0) / (x1 - x0);
    let d2 = (y2 - y1) / (x2 - x1);
    let curvature = (d2 - d1) / (x2 - x0);
    if curvature >= 0.0 {
        return b;
    }
    // y = y1 + s (x - x1) + curvature (x - x1)^2 with s the centered slope
    let slope = d1 + curvature * (x1 - x0);
    let dx = -slope / (2.0 * curvature);
    (x1 + dx, y1 + slope * dx + curvature * dx * dx)
}

fn crossing(x0: f64, y0: f64, x1: f64, y1: f64, level: f64) -> f64 {
    if y1 == y0 {
        return x0;
    }
    x0 + (level - y0) / (y1 - y0) * (x1 - x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lorentzian_center_and_width() {
        let (c, hw) = (0.3137, 0.55);
        let xs: Vec<f64> = (0..2001).map(|k| -10.0 + k as f64 * 0.01).collect();
        let ys: Vec<f64> = xs.iter().map(|x| hw / (hw * hw + (x - c) * (x - c))).collect();
        let peaks = locate_peaks(&xs, &ys, 0.1);
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].center - c).abs() < 1e-4);
        assert_relative_eq!(peaks[0].fwhm, 2.0 * hw, max_relative = 1e-3);
    }

    #[test]
    fn parabola_vertex_is_exact() {
        let f = |x: f64| 2.0 - 3.0 * (x - 0.37) * (x - 0.37);
        let (x, y) = parabolic_vertex((0.0, f(0.0)), (0.5, f(0.5)), (1.0, f(1.0)));
        assert_relative_eq!(x, 0.37, epsilon = 1e-14);
        assert_relative_eq!(y, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn truncated_peak_has_nan_width() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [0.9, 1.0, 0.95, 0.92];
        let peaks = locate_peaks(&xs, &ys, 0.0);
        assert_eq!(peaks.len(), 1);
        assert!(peaks[0].fwhm.is_nan());
    }
}
