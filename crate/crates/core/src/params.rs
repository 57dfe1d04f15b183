use crate::error::{config, Result};

/// How the time step is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TimeStep {
    Fixed(f64),
    /// Courant number; the step is recomputed from the current wave speeds.
    Cfl(f64),
}

/// Physical and scheme constants shared by all models.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    /// Gas constant.
    pub r_gas: f64,
    /// Temperature (constant throughout).
    pub temperature: f64,
    /// Kinetic relaxation time. `f64::INFINITY` switches relaxation off.
    pub tau: f64,
    /// Coefficient of the hybrid model stress source.
    pub tau_hmm: f64,
    /// Viscosity scale of the Navier-Stokes model.
    pub eps_ns: f64,
    pub time_step: TimeStep,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            r_gas: 1.0,
            temperature: 1.0,
            tau: 0.0,
            tau_hmm: 0.0,
            eps_ns: 0.0,
            time_step: TimeStep::Fixed(6.25e-4),
        }
    }
}

impl ModelParams {
    /// `R T`, the squared isothermal sound speed.
    pub fn rt(&self) -> f64 {
        self.r_gas * self.temperature
    }

    pub fn sound_speed(&self) -> f64 {
        self.rt().sqrt()
    }

    /// Pressure law `p = rho R T`.
    pub fn pressure(&self, rho: f64) -> f64 {
        rho * self.rt()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_gas > 0.0 && self.r_gas.is_finite()) {
            return config(format!("gas constant must be positive, got {}", self.r_gas));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return config(format!("temperature must be positive, got {}", self.temperature));
        }
        if !(self.tau >= 0.0) {
            return config(format!("tau must be non-negative, got {}", self.tau));
        }
        if !(self.tau_hmm >= 0.0 && self.tau_hmm.is_finite()) {
            return config(format!("tau_hmm must be non-negative, got {}", self.tau_hmm));
        }
        if !(self.eps_ns >= 0.0 && self.eps_ns.is_finite()) {
            return config(format!("eps_ns must be non-negative, got {}", self.eps_ns));
        }
        match self.time_step {
            TimeStep::Fixed(dt) if !(dt > 0.0 && dt.is_finite()) => {
                config(format!("time step must be positive, got {dt}"))
            }
            TimeStep::Cfl(c) if !(c > 0.0 && c <= 1.0) => {
                config(format!("CFL number must lie in (0, 1], got {c}"))
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ModelParams::default().validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range() {
        let bad = [
            ModelParams { r_gas: 0.0, ..Default::default() },
            ModelParams { temperature: -1.0, ..Default::default() },
            ModelParams { tau: -1e-3, ..Default::default() },
            ModelParams { tau: f64::NAN, ..Default::default() },
            ModelParams { eps_ns: -1.0, ..Default::default() },
            ModelParams { time_step: TimeStep::Cfl(1.5), ..Default::default() },
            ModelParams { time_step: TimeStep::Fixed(0.0), ..Default::default() },
        ];
        for p in bad {
            assert!(p.validate().is_err(), "{p:?}");
        }
    }

    #[test]
    fn infinite_tau_allowed() {
        let p = ModelParams { tau: f64::INFINITY, ..Default::default() };
        p.validate().unwrap();
    }

    #[test]
    fn pressure_law() {
        let p = ModelParams { r_gas: 2.0, temperature: 1.5, ..Default::default() };
        assert_eq!(p.pressure(2.0), 6.0);
    }
}
