//! Collapse/revival detection on a sampled inversion curve.

/// Swing `max − min` over the forward window `[gt_i, gt_i + width)` for every sample.
pub fn windowed_swing(gt: &[f64], values: &[f64], width: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(gt.len());
    let mut end = 0;
    for i in 0..gt.len() {
        end = end.max(i + 1);
        while end < gt.len() && gt[end] < gt[i] + width {
            end += 1;
        }
        let window = &values[i..end];
        let hi = window.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = window.iter().copied().fold(f64::INFINITY, f64::min);
        out.push(hi - lo);
    }
    out
}

/// Landmarks of the first collapse and revival.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseRevival {
    /// Swing of the first window.
    pub initial_swing: f64,
    /// First `gt` whose window swing drops below `collapse_fraction · initial_swing`.
    pub collapse_gt: f64,
    /// First `gt` after the collapse whose swing exceeds `revival_fraction · initial_swing`.
    pub revival_gt: f64,
    /// Sample range `[start, end)` of the collapsed stretch before the revival.
    pub plateau: (usize, usize),
}

pub const WINDOW_GT: f64 = 2.0;
pub const COLLAPSE_FRACTION: f64 = 0.1;
pub const REVIVAL_FRACTION: f64 = 0.25;

/// Finds the first collapse and the onset of the following revival, or `None`
/// if either is missing from the sampled range.
pub fn collapse_revival(gt: &[f64], inversion: &[f64]) -> Option<CollapseRevival> {
    let swing = windowed_swing(gt, inversion, WINDOW_GT);
    // Windows that run past the end of the data are incomplete.
    let end = *gt.last()?;
    let last_full = gt.iter().rposition(|&x| x + WINDOW_GT <= end)?;
    let initial_swing = *swing.first()?;
    let collapse = (0..=last_full).find(|&i| swing[i] < COLLAPSE_FRACTION * initial_swing)?;
    let revival = (collapse..=last_full).find(|&i| swing[i] > REVIVAL_FRACTION * initial_swing)?;
    let plateau_end = (collapse..revival).rev().find(|&i| swing[i] < COLLAPSE_FRACTION * initial_swing)? + 1;
    Some(CollapseRevival {
        initial_swing,
        collapse_gt: gt[collapse],
        revival_gt: gt[revival],
        plateau: (collapse, plateau_end),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swing_of_a_sine() {
        let gt: Vec<f64> = (0..1000).map(|i| i as f64 * 0.01).collect();
        let v: Vec<f64> = gt.iter().map(|t| (10.0 * t).sin()).collect();
        let s = windowed_swing(&gt, &v, 2.0);
        assert!((s[0] - 2.0).abs() < 1e-3);
    }

    #[test]
    fn detects_gaussian_bursts() {
        let gt: Vec<f64> = (0..4000).map(|i| i as f64 * 0.01).collect();
        let env = |t: f64| (-(t / 2.0).powi(2)).exp() + (-((t - 25.0) / 3.0).powi(2)).exp();
        let v: Vec<f64> = gt.iter().map(|&t| env(t) * (8.0 * t).cos()).collect();
        let cr = collapse_revival(&gt, &v).unwrap();
        assert!(cr.collapse_gt > 2.0 && cr.collapse_gt < 6.0, "{cr:?}");
        assert!(cr.revival_gt > 15.0 && cr.revival_gt < 25.0, "{cr:?}");
        assert!(cr.plateau.1 > cr.plateau.0);
    }

    #[test]
    fn no_revival_in_short_record() {
        let gt: Vec<f64> = (0..1000).map(|i| i as f64 * 0.01).collect();
        let v: Vec<f64> = gt.iter().map(|&t| (-(t / 2.0).powi(2)).exp() * (8.0 * t).cos()).collect();
        assert!(collapse_revival(&gt, &v).is_none());
    }
}
