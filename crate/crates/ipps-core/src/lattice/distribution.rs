//! Exact state distributions and their observables.

use crate::error::LatticeError;
use crate::lattice::{MasterGenerator, OccupancyConfig};

/// Probability vector over the 2^N occupancy states of a window.
#[derive(Debug, Clone)]
pub struct StateDistribution {
    window: usize,
    probs: Vec<f64>,
}

impl StateDistribution {
    /// Point mass on one configuration.
    pub fn point_mass(config: &OccupancyConfig) -> Self {
        let window = config.len();
        let mut probs = vec![0.0; 1 << window];
        probs[config.to_index()] = 1.0;
        Self { window, probs }
    }

    /// Independent Bernoulli(θ_x) occupancy per site.
    pub fn product_bernoulli(thetas: &[f64]) -> Result<Self, LatticeError> {
        let window = thetas.len();
        for &t in thetas {
            if !(0.0..=1.0).contains(&t) {
                return Err(LatticeError::BadProbability(t));
            }
        }
        let mut probs = vec![0.0; 1 << window];
        for s in 0..probs.len() {
            let mut p = 1.0;
            for (x, &theta) in thetas.iter().enumerate() {
                p *= if s >> x & 1 == 1 { theta } else { 1.0 - theta };
            }
            probs[s] = p;
        }
        Ok(Self { window, probs })
    }

    pub fn from_probs(window: usize, probs: Vec<f64>) -> Self {
        assert_eq!(probs.len(), 1 << window);
        Self { window, probs }
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Probability that the interval [y, z) holds no particle. `y == z`
    /// is the empty interval and gives 1 exactly.
    pub fn empty_interval_prob(&self, y: usize, z: usize) -> Result<f64, LatticeError> {
        self.check_interval(y, z)?;
        if y == z {
            return Ok(1.0);
        }
        let mask = interval_mask(y, z);
        let p: f64 = self
            .probs
            .iter()
            .enumerate()
            .filter(|(s, _)| s & mask == 0)
            .map(|(_, &p)| p)
            .sum();
        Ok(p.clamp(0.0, 1.0))
    }

    /// E[(−1)^{η[y,z)}], in [−1, 1]; `y == z` gives 1 exactly.
    pub fn spin_parity(&self, y: usize, z: usize) -> Result<f64, LatticeError> {
        self.check_interval(y, z)?;
        if y == z {
            return Ok(1.0);
        }
        let mask = interval_mask(y, z);
        let mut total = 0.0;
        for (s, &p) in self.probs.iter().enumerate() {
            if (s & mask).count_ones() % 2 == 0 {
                total += p;
            } else {
                total -= p;
            }
        }
        Ok(total.clamp(-1.0, 1.0))
    }

    /// Joint occupation probability E[η(x₁)⋯η(xₙ)] at strictly increasing
    /// sites. The empty product is 1.
    pub fn intensity(&self, points: &[usize]) -> Result<f64, LatticeError> {
        if points.is_empty() {
            return Ok(1.0);
        }
        if !points.windows(2).all(|w| w[0] < w[1]) || *points.last().unwrap() >= self.window {
            return Err(LatticeError::BadPoints);
        }
        let mask: usize = points.iter().map(|&x| 1usize << x).sum();
        Ok(self
            .probs
            .iter()
            .enumerate()
            .filter(|(s, _)| s & mask == mask)
            .map(|(_, &p)| p)
            .sum())
    }

    /// Total variation distance to another distribution on the same window.
    pub fn total_variation(&self, other: &StateDistribution) -> f64 {
        assert_eq!(self.window, other.window);
        0.5 * self
            .probs
            .iter()
            .zip(other.probs.iter())
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    fn check_interval(&self, y: usize, z: usize) -> Result<(), LatticeError> {
        if y > z || z > self.window {
            return Err(LatticeError::BadInterval {
                y,
                z,
                grid: self.window,
            });
        }
        Ok(())
    }
}

fn interval_mask(y: usize, z: usize) -> usize {
    ((1usize << (z - y)) - 1) << y
}

/// Distribution at time `t` from `initial` under the master equation,
/// exp(t·Q̃)·π₀ by uniformization. Conserves probability to ~1e-13.
pub fn evolve_exact(
    gen: &MasterGenerator,
    initial: &StateDistribution,
    t: f64,
) -> Result<StateDistribution, LatticeError> {
    if t < 0.0 {
        return Err(LatticeError::NegativeTime(t));
    }
    assert_eq!(
        initial.window(),
        gen.window(),
        "distribution window must match the generator"
    );
    let probs = gen.matrix().expmv(t, initial.probs());
    Ok(StateDistribution::from_probs(gen.window(), probs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_generator, BcrwRates, ModelSpec};

    #[test]
    fn observables_on_product_measure() {
        let theta: f64 = 0.3;
        let dist = StateDistribution::product_bernoulli(&[theta; 6]).unwrap();
        assert!((dist.total_mass() - 1.0).abs() < 1e-14);
        // empty interval: (1-θ)^(z-y); spin parity: (1-2θ)^(z-y); n-point: θⁿ
        let e = dist.empty_interval_prob(1, 4).unwrap();
        assert!((e - (1.0 - theta).powi(3)).abs() < 1e-12);
        let s = dist.spin_parity(1, 4).unwrap();
        assert!((s - (1.0 - 2.0 * theta).powi(3)).abs() < 1e-12);
        let rho = dist.intensity(&[0, 2, 5]).unwrap();
        assert!((rho - theta.powi(3)).abs() < 1e-12);
        // trivial cases
        assert_eq!(dist.empty_interval_prob(3, 3).unwrap(), 1.0);
        assert_eq!(dist.spin_parity(3, 3).unwrap(), 1.0);
        assert_eq!(dist.intensity(&[]).unwrap(), 1.0);
        // deterministic full state
        let full = StateDistribution::point_mass(&OccupancyConfig::full(6));
        assert_eq!(full.empty_interval_prob(2, 4).unwrap(), 0.0);
        assert_eq!(full.intensity(&[0, 1, 2]).unwrap(), 1.0);
        // single particle inside the interval flips the parity sign
        let single = StateDistribution::point_mass(&OccupancyConfig::single(6, 3));
        assert_eq!(single.spin_parity(2, 5).unwrap(), -1.0);
        // interval errors
        assert!(dist.empty_interval_prob(4, 2).is_err());
        assert!(dist.empty_interval_prob(0, 7).is_err());
        assert!(dist.intensity(&[2, 2]).is_err());
    }

    #[test]
    fn t_zero_returns_initial() {
        let model = ModelSpec::Bcrw(BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap());
        let gen = build_generator(&model, 4).unwrap();
        let init = StateDistribution::point_mass(&OccupancyConfig::alternating(4));
        let out = evolve_exact(&gen, &init, 0.0).unwrap();
        assert_eq!(out.probs(), init.probs());
    }

    #[test]
    fn all_rates_zero_is_stationary() {
        let model = ModelSpec::Bcrw(BcrwRates::new(0.0, 0.0, 0.0, 0.0).unwrap());
        let gen = build_generator(&model, 4).unwrap();
        let init = StateDistribution::point_mass(&OccupancyConfig::alternating(4));
        let out = evolve_exact(&gen, &init, 2.5).unwrap();
        assert_eq!(out.probs(), init.probs());
    }

    #[test]
    fn empty_state_is_absorbing_for_bcrw() {
        let model = ModelSpec::Bcrw(BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap());
        let gen = build_generator(&model, 5).unwrap();
        let init = StateDistribution::point_mass(&OccupancyConfig::empty(5));
        let out = evolve_exact(&gen, &init, 1.0).unwrap();
        assert!((out.probs()[0] - 1.0).abs() < 1e-13);
    }
}
