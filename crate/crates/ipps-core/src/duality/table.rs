//! The scalar kernel table K_t(y, z) on a window.
//!
//! Pairs live on the grid 0..=N of interval endpoints, so the longest
//! interval [0, N) spans the whole window of N sites. The diagonal is pinned
//! to 1 for both models: an empty interval of length zero, or the parity of
//! an empty sum.

use std::io::Write;

use crate::error::{DualityError, LatticeError};
use crate::lattice::OccupancyConfig;

/// Values K(y, z) for 0 ≤ y ≤ z ≤ grid, upper triangle stored flat.
#[derive(Debug, Clone)]
pub struct ScalarKernelTable {
    /// Largest endpoint; the window has `grid` sites 0..grid.
    grid: usize,
    t: f64,
    values: Vec<f64>,
}

impl ScalarKernelTable {
    /// Fresh table with K ≡ 1 (including the diagonal).
    pub fn constant(grid: usize, t: f64, value: f64) -> Self {
        let n = (grid + 1) * (grid + 2) / 2;
        let mut table = Self {
            grid,
            t,
            values: vec![value; n],
        };
        for y in 0..=grid {
            table.set(y, y, 1.0);
        }
        table
    }

    /// Build from a callback over off-diagonal pairs y < z; diagonal is 1.
    pub fn from_fn(grid: usize, t: f64, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut table = Self::constant(grid, t, 0.0);
        for y in 0..grid {
            for z in (y + 1)..=grid {
                let v = f(y, z);
                table.set(y, z, v);
            }
        }
        table
    }

    /// Endpoint grid bound N; sites run 0..N.
    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    #[inline]
    fn index(&self, y: usize, z: usize) -> usize {
        debug_assert!(y <= z && z <= self.grid);
        // row y holds the grid+1-y entries z = y..=grid
        y * (self.grid + 1) - y * (y.saturating_sub(1)) / 2 + (z - y)
    }

    pub fn get(&self, y: usize, z: usize) -> f64 {
        self.values[self.index(y, z)]
    }

    pub fn try_get(&self, y: usize, z: usize) -> Result<f64, DualityError> {
        if y > z || z > self.grid {
            return Err(DualityError::PairOutOfTable {
                y,
                z,
                grid: self.grid,
            });
        }
        Ok(self.get(y, z))
    }

    pub fn set(&mut self, y: usize, z: usize, v: f64) {
        let i = self.index(y, z);
        self.values[i] = v;
    }

    /// Forward difference in the second argument, K(y, z+1) − K(y, z).
    pub fn d2(&self, y: usize, z: usize) -> Result<f64, DualityError> {
        Ok(self.try_get(y, z + 1)? - self.try_get(y, z)?)
    }

    /// Maximum |K_self − K_other| over a pair range with the given margin
    /// from both window edges.
    pub fn max_abs_diff_interior(&self, other: &ScalarKernelTable, margin: usize) -> f64 {
        assert_eq!(self.grid, other.grid);
        let mut worst = 0.0f64;
        for y in margin..=(self.grid - margin) {
            for z in y..=(self.grid - margin) {
                worst = worst.max((self.get(y, z) - other.get(y, z)).abs());
            }
        }
        worst
    }

    /// CSV rows `y,z,K` over the upper triangle.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "y,z,K")?;
        for y in 0..=self.grid {
            for z in y..=self.grid {
                writeln!(w, "{},{},{:.17e}", y, z, self.get(y, z))?;
            }
        }
        Ok(())
    }
}

/// Initial data for the kernel evolution.
#[derive(Debug, Clone)]
pub enum InitialCondition {
    Deterministic(OccupancyConfig),
    /// Independent Bernoulli(θ_x) occupancy.
    ProductBernoulli(Vec<f64>),
}

impl InitialCondition {
    pub fn window(&self) -> usize {
        match self {
            InitialCondition::Deterministic(c) => c.len(),
            InitialCondition::ProductBernoulli(t) => t.len(),
        }
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        if let InitialCondition::ProductBernoulli(thetas) = self {
            for &t in thetas {
                if !(0.0..=1.0).contains(&t) {
                    return Err(LatticeError::BadProbability(t));
                }
            }
        }
        Ok(())
    }
}

/// K₀ table for the BCRW weighted kernel: φ^{z−y}·1(η[y,z) = 0) for a
/// deterministic start, or φ^{z−y}·Π_{k∈[y,z)}(1−θ_k) for product Bernoulli.
pub fn initial_kernel_bcrw(init: &InitialCondition, phi: f64) -> Result<ScalarKernelTable, LatticeError> {
    init.validate()?;
    let n = init.window();
    let mut table = ScalarKernelTable::constant(n, 0.0, 0.0);
    for y in 0..n {
        let mut prod = 1.0;
        for z in (y + 1)..=n {
            // extend the interval by site z-1
            prod *= match init {
                InitialCondition::Deterministic(cfg) => {
                    if cfg.get(z - 1) {
                        0.0
                    } else {
                        1.0
                    }
                }
                InitialCondition::ProductBernoulli(t) => 1.0 - t[z - 1],
            };
            table.set(y, z, phi.powi((z - y) as i32) * prod);
        }
    }
    Ok(table)
}

/// K₀ table for the ARWPI kernel: (−1)^{η[y,z)} deterministically, or
/// Π_{k∈[y,z)}(1−2θ_k) for product Bernoulli.
pub fn initial_kernel_arwpi(init: &InitialCondition) -> Result<ScalarKernelTable, LatticeError> {
    init.validate()?;
    let n = init.window();
    let mut table = ScalarKernelTable::constant(n, 0.0, 0.0);
    for y in 0..n {
        let mut prod = 1.0;
        for z in (y + 1)..=n {
            prod *= match init {
                InitialCondition::Deterministic(cfg) => {
                    if cfg.get(z - 1) {
                        -1.0
                    } else {
                        1.0
                    }
                }
                InitialCondition::ProductBernoulli(t) => 1.0 - 2.0 * t[z - 1],
            };
            table.set(y, z, prod);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_round_trip() {
        let mut t = ScalarKernelTable::constant(7, 0.0, 0.0);
        let mut v = 0.0;
        for y in 0..=7 {
            for z in y..=7 {
                t.set(y, z, v);
                v += 1.0;
            }
        }
        let mut expect = 0.0;
        for y in 0..=7 {
            for z in y..=7 {
                assert_eq!(t.get(y, z), expect);
                expect += 1.0;
            }
        }
        assert!(t.try_get(3, 2).is_err());
        assert!(t.try_get(0, 8).is_err());
    }

    #[test]
    fn bcrw_initial_kernel_full_state_vanishes() {
        let init = InitialCondition::Deterministic(OccupancyConfig::full(5));
        let table = initial_kernel_bcrw(&init, 2.0).unwrap();
        for y in 0..5 {
            for z in (y + 1)..=5 {
                assert_eq!(table.get(y, z), 0.0);
            }
            assert_eq!(table.get(y, y), 1.0);
        }
    }

    #[test]
    fn bernoulli_initial_kernels() {
        let phi = 2.0;
        let theta = 0.25;
        let init = InitialCondition::ProductBernoulli(vec![theta; 4]);
        let b = initial_kernel_bcrw(&init, phi).unwrap();
        assert!((b.get(1, 3) - phi.powi(2) * (1.0 - theta) * (1.0 - theta)).abs() < 1e-15);
        let a = initial_kernel_arwpi(&init).unwrap();
        assert!((a.get(0, 4) - (1.0 - 2.0 * theta).powi(4)).abs() < 1e-15);
    }

    #[test]
    fn arwpi_initial_kernel_signs() {
        let init = InitialCondition::Deterministic(OccupancyConfig::single(4, 2));
        let table = initial_kernel_arwpi(&init).unwrap();
        assert_eq!(table.get(0, 2), 1.0);
        assert_eq!(table.get(0, 3), -1.0);
        assert_eq!(table.get(2, 3), -1.0);
        assert_eq!(table.get(3, 4), 1.0);
    }
}
