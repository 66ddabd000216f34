//! Closed-form ARWPI equilibrium and the exponential convergence bound.

use crate::error::DualityError;
use crate::lattice::{ArwpiRates, ModelSpec};

use super::table::{initial_kernel_arwpi, InitialCondition, ScalarKernelTable};

/// Equilibrium constants of the homogeneous ARWPI model.
#[derive(Debug, Clone, Copy)]
pub struct EquilibriumTheta {
    /// Root in (0, 1] of θ + θ⁻¹ − 2 = 2m/(p+q); the kernel decay base.
    pub theta: f64,
    /// Site density (1 − θ)/2 of the product-Bernoulli equilibrium.
    pub density: f64,
}

/// Solve the equilibrium quadratic for homogeneous rates.
pub fn equilibrium_theta(m: f64, p: f64, q: f64) -> Result<EquilibriumTheta, DualityError> {
    if p + q <= 0.0 {
        return Err(DualityError::ZeroJumpRates);
    }
    let mu = m / (p + q);
    // θ² − 2(1+μ)θ + 1 = 0, smaller root
    let theta = if mu == 0.0 {
        1.0
    } else {
        (1.0 + mu) - (mu * mu + 2.0 * mu).sqrt()
    };
    let density = 0.5 * (1.0 - theta);
    debug_assert!({
        let alt = 0.5 * ((mu * mu + 2.0 * mu).sqrt() - mu);
        (density - alt).abs() <= 1e-12 * (1.0 + density.abs())
    });
    Ok(EquilibriumTheta { theta, density })
}

/// The K_∞(y,z) = θ^{z−y} equilibrium kernel table.
pub fn equilibrium_kernel_arwpi(theta: f64, grid: usize) -> ScalarKernelTable {
    ScalarKernelTable::from_fn(grid, f64::INFINITY, |y, z| theta.powi((z - y) as i32))
}

/// Worst slack in the bound |K_t − K_∞| ≤ 2e^{−2mt} over a time grid.
///
/// Returns max over the grid of (|K_t − K_∞| − 2e^{−2mt}); a nonpositive
/// value means the bound held everywhere it was checked. Pairs are
/// restricted to `margin` sites from the window edges: the bound is an
/// infinite-lattice statement, and on a truncated window the fixed points
/// of the frozen boundary dual would otherwise be compared against the
/// wrong equilibrium.
pub fn convergence_bound_check(
    p: f64,
    q: f64,
    m: f64,
    init: &InitialCondition,
    t_grid: &[f64],
    window: usize,
    margin: usize,
) -> Result<f64, DualityError> {
    if m <= 0.0 {
        return Err(DualityError::ZeroImmigration);
    }
    let eq = equilibrium_theta(m, p, q)?;
    let k_inf = equilibrium_kernel_arwpi(eq.theta, window);
    let rates = ArwpiRates::homogeneous(window, p, q, m)?;
    let model = ModelSpec::Arwpi(rates);
    let mut worst = f64::NEG_INFINITY;
    for &t in t_grid {
        let k_t = if window <= crate::lattice::EXACT_WINDOW_CAP {
            super::kernel_definitional(&model, init, t, window)?
        } else {
            let k0 = initial_kernel_arwpi(init)?;
            match &model {
                ModelSpec::Arwpi(r) => super::kernel_pair_pde_arwpi(r, &k0, t)?,
                _ => unreachable!(),
            }
        };
        let bound = 2.0 * (-2.0 * m * t).exp();
        let gap = k_t.max_abs_diff_interior(&k_inf, margin);
        worst = worst.max(gap - bound);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_immigration_gives_unit_theta() {
        let eq = equilibrium_theta(0.0, 1.0, 1.0).unwrap();
        assert_eq!(eq.theta, 1.0);
        assert_eq!(eq.density, 0.0);
    }

    #[test]
    fn unit_rates_reproduce_golden_ratio_value() {
        // m = p = q = 1: θ = (3 − √5)/2, density = (√5 − 1)/4
        let eq = equilibrium_theta(1.0, 1.0, 1.0).unwrap();
        assert!((eq.theta - 0.381_966_011_250_105_2).abs() < 1e-12);
        assert!((eq.density - 0.309_016_994_374_947_42).abs() < 1e-12);
        // solves the quadratic
        let resid = eq.theta + 1.0 / eq.theta - 2.0 - 2.0 * 1.0 / 2.0;
        assert!(resid.abs() < 1e-12);
    }

    #[test]
    fn huge_immigration_drives_theta_to_zero() {
        let eq = equilibrium_theta(1e9, 1.0, 1.0).unwrap();
        assert!(eq.theta < 1e-8);
        assert!((eq.density - 0.5).abs() < 1e-8);
    }

    #[test]
    fn zero_jump_rates_rejected() {
        assert!(equilibrium_theta(1.0, 0.0, 0.0).is_err());
    }
}
