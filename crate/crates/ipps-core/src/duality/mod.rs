//! The scalar duality kernel K_t(y, z) computed by two independent routes.
//!
//! Route one is definitional: evolve the master equation exactly and read off
//! empty-interval probabilities (BCRW, weighted by φ^{z−y}) or spin parities
//! (ARWPI). Route two solves the two-walker dual lattice PDE. The two agree
//! at solver precision because the pair PDE here is the exact dual of the
//! truncated-window generator; the theorem-level tests lean on that.

mod equilibrium;
mod pair_pde;
mod table;

pub use equilibrium::{
    convergence_bound_check, equilibrium_kernel_arwpi, equilibrium_theta, EquilibriumTheta,
};
pub use pair_pde::{kernel_pair_pde_arwpi, kernel_pair_pde_bcrw};
pub use table::{initial_kernel_arwpi, initial_kernel_bcrw, InitialCondition, ScalarKernelTable};

use crate::error::DualityError;
use crate::lattice::{build_generator, evolve_exact, ModelSpec, StateDistribution};

/// Kernel table straight from the definition, using the exact engine.
///
/// BCRW: K_t(y,z) = φ^{z−y} P[η_t[y,z) = 0]; ARWPI: K_t(y,z) = E[(−1)^{η_t[y,z)}].
/// The window is capped by the exact engine.
pub fn kernel_definitional(
    model: &ModelSpec,
    init: &InitialCondition,
    t: f64,
    window: usize,
) -> Result<ScalarKernelTable, DualityError> {
    let gen = build_generator(model, window)?;
    let initial = match init {
        InitialCondition::Deterministic(cfg) => {
            assert_eq!(cfg.len(), window, "initial condition must match the window");
            StateDistribution::point_mass(cfg)
        }
        InitialCondition::ProductBernoulli(thetas) => {
            assert_eq!(thetas.len(), window);
            StateDistribution::product_bernoulli(thetas)?
        }
    };
    let dist = evolve_exact(&gen, &initial, t)?;
    kernel_from_distribution(model, &dist, t)
}

/// Kernel table of an already-evolved distribution.
pub fn kernel_from_distribution(
    model: &ModelSpec,
    dist: &StateDistribution,
    t: f64,
) -> Result<ScalarKernelTable, DualityError> {
    let n = dist.window();
    let mut table = ScalarKernelTable::constant(n, t, 1.0);
    match model {
        ModelSpec::Bcrw(rates) => {
            let phi = rates.constants()?.phi;
            for y in 0..n {
                for z in (y + 1)..=n {
                    let p = dist.empty_interval_prob(y, z)?;
                    table.set(y, z, phi.powi((z - y) as i32) * p);
                }
            }
        }
        ModelSpec::Arwpi(_) => {
            for y in 0..n {
                for z in (y + 1)..=n {
                    table.set(y, z, dist.spin_parity(y, z)?);
                }
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{BcrwRates, OccupancyConfig};

    #[test]
    fn definitional_at_time_zero_matches_initial_kernel() {
        let rates = BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let phi = rates.constants().unwrap().phi;
        let init = InitialCondition::Deterministic(OccupancyConfig::alternating(6));
        let direct = initial_kernel_bcrw(&init, phi).unwrap();
        let via_engine =
            kernel_definitional(&ModelSpec::Bcrw(rates), &init, 0.0, 6).unwrap();
        for y in 0..=6 {
            for z in y..=6 {
                assert!((direct.get(y, z) - via_engine.get(y, z)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn bcrw_full_start_has_zero_offdiagonal_kernel() {
        let rates = BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let init = InitialCondition::Deterministic(OccupancyConfig::full(5));
        let k = kernel_definitional(&ModelSpec::Bcrw(rates), &init, 0.0, 5).unwrap();
        for y in 0..5 {
            for z in (y + 1)..=5 {
                assert_eq!(k.get(y, z), 0.0);
            }
        }
    }
}
