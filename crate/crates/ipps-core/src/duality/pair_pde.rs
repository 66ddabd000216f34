//! Two-walker dual lattice PDE for the scalar kernel.
//!
//! Both models reduce their kernel to the same shape of problem: a function
//! u(y, z) on the endpoint triangle {0 ≤ y < z ≤ N} evolving under a
//! one-coordinate operator per endpoint,
//!
//!   d/dt u = (A_y + A_z) u,    A f(x) = up(x) D⁺f(x) + down(x) D⁻f(x) − pot(x) f(x),
//!
//! with Dirichlet value 1 on the diagonal and the same truncation rule as the
//! generator: a coordinate at the window edge simply loses the moves (and, for
//! ARWPI, the immigration potential) whose primal event would cross the
//! boundary. That masking makes this solver the *exact* dual of
//! [`crate::lattice::build_generator`] on the finite window, not merely an
//! interior approximation, which is what lets the kernel-route equivalence
//! tests demand agreement at solver precision everywhere.
//!
//! For BCRW the evolution runs on the unweighted empty-interval observable
//! (up q / down p+r on the left endpoint, up q+l / down p on the right) and
//! the phase weight φ^{z−y} is applied when the table is read back out. The
//! phase-changed form with potential 2c₀ quoted in the module docs is the
//! same equation after conjugation by the weight.

use crate::error::{DualityError, LatticeError};
use crate::expmv::SparseGenerator;
use crate::lattice::{ArwpiRates, BcrwRates};

use super::table::ScalarKernelTable;

/// Per-coordinate move rates and potential on the endpoint grid 0..=n.
struct CoordinateOperator {
    up: Vec<f64>,
    down: Vec<f64>,
    pot: Vec<f64>,
}

impl CoordinateOperator {
    /// Rates masked to zero wherever the primal event would leave the window:
    /// every term at endpoint 0 and endpoint N.
    fn masked(n: usize, up: impl Fn(usize) -> f64, down: impl Fn(usize) -> f64, pot: impl Fn(usize) -> f64) -> Self {
        let mut op = CoordinateOperator {
            up: vec![0.0; n + 1],
            down: vec![0.0; n + 1],
            pot: vec![0.0; n + 1],
        };
        for x in 1..n {
            op.up[x] = up(x);
            op.down[x] = down(x);
            op.pot[x] = pot(x);
        }
        op
    }
}

fn pair_index(n: usize, y: usize, z: usize) -> usize {
    debug_assert!(y < z && z <= n);
    // strict upper triangle of the (n+1)-point grid, row-major
    y * (2 * n + 1 - y) / 2 + (z - y - 1)
}

/// Evolve the strict triangle under (A_y + A_z) with diagonal value 1.
fn evolve_triangle(
    n: usize,
    y_op: &CoordinateOperator,
    z_op: &CoordinateOperator,
    initial: &ScalarKernelTable,
    t: f64,
) -> ScalarKernelTable {
    let pairs = (n + 1) * n / 2;
    // one extra slot holds the constant 1 feeding the diagonal boundary
    let dim = pairs + 1;
    let mut triplets: Vec<(u32, u32, f64)> = Vec::with_capacity(4 * pairs);
    let mut diag = vec![0.0; dim];
    let mut v = vec![0.0; dim];
    v[pairs] = 1.0;

    for y in 0..n {
        for z in (y + 1)..=n {
            let row = pair_index(n, y, z);
            v[row] = initial.get(y, z);
            let mut exit = y_op.pot[y] + z_op.pot[z];
            let mut push = |rate: f64, col: usize| {
                if rate > 0.0 {
                    triplets.push((row as u32, col as u32, rate));
                }
            };
            // y moves
            let r = y_op.up[y];
            if r > 0.0 {
                exit += r;
                if y + 1 == z {
                    push(r, pairs);
                } else {
                    push(r, pair_index(n, y + 1, z));
                }
            }
            let r = y_op.down[y];
            if r > 0.0 {
                exit += r;
                push(r, pair_index(n, y - 1, z));
            }
            // z moves
            let r = z_op.up[z];
            if r > 0.0 {
                exit += r;
                push(r, pair_index(n, y, z + 1));
            }
            let r = z_op.down[z];
            if r > 0.0 {
                exit += r;
                if z - 1 == y {
                    push(r, pairs);
                } else {
                    push(r, pair_index(n, y, z - 1));
                }
            }
            diag[row] = -exit;
        }
    }

    let matrix = SparseGenerator::from_triplets(dim, triplets, diag);
    let out = matrix.expmv(t, &v);
    let mut table = ScalarKernelTable::constant(n, initial.time() + t, 1.0);
    for y in 0..n {
        for z in (y + 1)..=n {
            table.set(y, z, out[pair_index(n, y, z)]);
        }
    }
    table
}

/// BCRW kernel by the pair PDE: takes the weighted K₀ table, runs the dual,
/// returns the weighted K_t table.
pub fn kernel_pair_pde_bcrw(
    rates: &BcrwRates,
    k0: &ScalarKernelTable,
    t: f64,
) -> Result<ScalarKernelTable, DualityError> {
    if t < 0.0 {
        return Err(LatticeError::NegativeTime(t).into());
    }
    let n = k0.grid();
    let phi = rates.constants()?.phi;
    let (p, q, l, r) = (
        rates.jump_right,
        rates.jump_left,
        rates.branch_left,
        rates.branch_right,
    );
    // unweight the initial data
    let g0 = ScalarKernelTable::from_fn(n, k0.time(), |y, z| {
        k0.get(y, z) * phi.powi(-((z - y) as i32))
    });
    let y_op = CoordinateOperator::masked(n, |_| q, |_| p + r, |_| 0.0);
    let z_op = CoordinateOperator::masked(n, |_| q + l, |_| p, |_| 0.0);
    let g = evolve_triangle(n, &y_op, &z_op, &g0, t);
    Ok(ScalarKernelTable::from_fn(n, g.time(), |y, z| {
        g.get(y, z) * phi.powi((z - y) as i32)
    }))
}

/// ARWPI kernel by the pair PDE with site-dependent rates and immigration
/// potential 2 m_x per endpoint.
pub fn kernel_pair_pde_arwpi(
    rates: &ArwpiRates,
    k0: &ScalarKernelTable,
    t: f64,
) -> Result<ScalarKernelTable, DualityError> {
    if t < 0.0 {
        return Err(LatticeError::NegativeTime(t).into());
    }
    let n = k0.grid();
    if rates.window() != n {
        return Err(DualityError::GridMismatch {
            want: n,
            got: rates.window(),
        });
    }
    let y_op = CoordinateOperator::masked(
        n,
        |x| rates.jump_left[x],
        |x| rates.jump_right[x],
        |x| 2.0 * rates.immigration[x],
    );
    let z_op = CoordinateOperator::masked(
        n,
        |x| rates.jump_left[x],
        |x| rates.jump_right[x],
        |x| 2.0 * rates.immigration[x],
    );
    Ok(evolve_triangle(n, &y_op, &z_op, k0, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::table::{initial_kernel_arwpi, initial_kernel_bcrw, InitialCondition};
    use crate::lattice::OccupancyConfig;

    #[test]
    fn pair_indexing_is_dense() {
        let n = 6;
        let mut seen = vec![false; n * (n + 1) / 2];
        for y in 0..n {
            for z in (y + 1)..=n {
                let i = pair_index(n, y, z);
                assert!(!seen[i], "collision at ({y},{z})");
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn t_zero_returns_initial_table() {
        let rates = BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let init = InitialCondition::Deterministic(OccupancyConfig::alternating(6));
        let k0 = initial_kernel_bcrw(&init, rates.constants().unwrap().phi).unwrap();
        let k = kernel_pair_pde_bcrw(&rates, &k0, 0.0).unwrap();
        for y in 0..=6 {
            for z in y..=6 {
                assert!((k.get(y, z) - k0.get(y, z)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn negative_time_rejected() {
        let rates = BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap();
        let k0 = ScalarKernelTable::constant(4, 0.0, 1.0);
        assert!(kernel_pair_pde_bcrw(&rates, &k0, -0.1).is_err());
        let arates = ArwpiRates::homogeneous(4, 1.0, 1.0, 0.5).unwrap();
        let k0 = initial_kernel_arwpi(&InitialCondition::Deterministic(OccupancyConfig::empty(4)))
            .unwrap();
        assert!(kernel_pair_pde_arwpi(&arates, &k0, -0.1).is_err());
    }

    #[test]
    fn arwpi_rate_window_must_match_table() {
        let arates = ArwpiRates::homogeneous(5, 1.0, 1.0, 0.5).unwrap();
        let k0 = ScalarKernelTable::constant(4, 0.0, 1.0);
        assert!(matches!(
            kernel_pair_pde_arwpi(&arates, &k0, 0.1),
            Err(DualityError::GridMismatch { .. })
        ));
    }

    #[test]
    fn diagonal_stays_pinned() {
        let arates = ArwpiRates::homogeneous(6, 1.0, 1.0, 0.5).unwrap();
        let init = InitialCondition::Deterministic(OccupancyConfig::single(6, 3));
        let k0 = initial_kernel_arwpi(&init).unwrap();
        let k = kernel_pair_pde_arwpi(&arates, &k0, 0.4).unwrap();
        for y in 0..=6 {
            assert_eq!(k.get(y, y), 1.0);
        }
    }
}
