use crate::error::{Error, Result};

/// Field frequency `ω`, atomic splitting `ω₀` and coupling `g` (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcmParams {
    pub omega: f64,
    pub omega0: f64,
    pub g: f64,
}

impl JcmParams {
    pub fn new(omega: f64, omega0: f64, g: f64) -> Result<Self> {
        if !(omega.is_finite() && omega0.is_finite() && g.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite parameters (ω={omega}, ω₀={omega0}, g={g})")));
        }
        if g < 0.0 {
            return Err(Error::InvalidParams(format!("coupling g must be non-negative, got {g}")));
        }
        Ok(Self { omega, omega0, g })
    }

    /// Parameters from a detuning ratio `Δω/g`, with `ω₀ = ω − Δω`.
    pub fn from_detuning_ratio(g: f64, ratio: f64, omega: f64) -> Result<Self> {
        Self::new(omega, omega - ratio * g, g)
    }

    /// `Δω = ω − ω₀`.
    pub fn delta_omega(&self) -> f64 {
        self.omega - self.omega0
    }

    pub fn half_detuning(&self) -> f64 {
        0.5 * self.delta_omega()
    }

    /// Rabi parameter `λ_n = √((Δω/2)² + g²(n+1))`.
    pub fn lambda(&self, n: usize) -> f64 {
        let d = self.half_detuning();
        (d * d + self.g * self.g * (n as f64 + 1.0)).sqrt()
    }

    /// `(sin 2θ_n, cos 2θ_n)` for the doublet `{|n,↑⟩, |n+1,↓⟩}`.
    ///
    /// `tan θ_n = g√(n+1)/(Δω/2 + λ_n)` is equivalent to
    /// `2θ_n = atan2(g√(n+1), Δω/2)` with `θ_n ∈ [0, π/2]`; the latter stays
    /// defined when `g = 0` and `Δω ≤ 0`.
    pub fn mixing(&self, n: usize) -> (f64, f64) {
        let two_theta = (self.g * (n as f64 + 1.0).sqrt()).atan2(self.half_detuning());
        two_theta.sin_cos()
    }

    /// Mixing angle `θ_n`.
    pub fn theta(&self, n: usize) -> f64 {
        0.5 * (self.g * (n as f64 + 1.0).sqrt()).atan2(self.half_detuning())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn detuning_is_exact_difference() {
        let p = JcmParams::new(3.5, 1.25, 0.5).unwrap();
        assert_eq!(p.delta_omega(), 3.5 - 1.25);
        let q = JcmParams::from_detuning_ratio(2.0, 7.5, 0.0).unwrap();
        assert_eq!(q.delta_omega(), 15.0);
    }

    #[test]
    fn negative_coupling_rejected() {
        assert!(JcmParams::new(1.0, 1.0, -0.1).is_err());
        assert!(JcmParams::new(f64::NAN, 1.0, 0.1).is_err());
    }

    #[test]
    fn resonance_gives_quarter_pi() {
        let p = JcmParams::new(2.0, 2.0, 0.3).unwrap();
        for n in 0..10 {
            assert!((p.theta(n) - FRAC_PI_4).abs() < 1e-15);
        }
    }

    #[test]
    fn theta_matches_tangent_form() {
        let p = JcmParams::new(1.0, -4.0, 0.7).unwrap();
        for n in 0..20 {
            let d = p.half_detuning();
            let tan = p.g * ((n + 1) as f64).sqrt() / (d + p.lambda(n));
            assert!((p.theta(n).tan() - tan).abs() < 1e-13);
        }
    }

    #[test]
    fn lambda_off_resonance() {
        // Δω/g = 20 at n = 0: λ_0/g = √(100 + 1).
        let p = JcmParams::from_detuning_ratio(1.0, 20.0, 0.0).unwrap();
        assert!((p.lambda(0) - 101f64.sqrt()).abs() < 1e-14);
        assert!((p.lambda(0) - 10.0499).abs() < 1e-4);
    }
}
