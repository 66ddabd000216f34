//! Master-equation generator for small windows.
//!
//! States are occupancy bitmasks over the window, so the state space is 2^N.
//! Events crossing the window boundary are deleted (truncation); the
//! window-insensitivity checks in the test suite quantify what that does to
//! interior observables.

use crate::error::LatticeError;
use crate::expmv::SparseGenerator;
use crate::lattice::{ModelKind, ModelSpec, OccupancyConfig};

/// Hard cap on the exact engine's window (2^14 = 16384 states).
pub const EXACT_WINDOW_CAP: usize = 14;

/// Rate matrix of the truncated-window process, stored transposed so that it
/// acts directly on probability vectors: d/dt π = Q̃ π.
#[derive(Debug, Clone)]
pub struct MasterGenerator {
    window: usize,
    matrix: SparseGenerator,
}

impl MasterGenerator {
    pub fn window(&self) -> usize {
        self.window
    }

    pub fn n_states(&self) -> usize {
        self.matrix.dim
    }

    pub(crate) fn matrix(&self) -> &SparseGenerator {
        &self.matrix
    }

    /// Total rate out of `state`; the implicit diagonal is its negative.
    pub fn exit_rate(&self, state: usize) -> f64 {
        -self.matrix.diag[state]
    }

    /// Sum of the column of the (transposed) matrix for `state`, i.e. the row
    /// sum of the plain rate matrix. Zero for every state of a conservative
    /// generator; exposed for the invariant tests.
    pub fn row_sum(&self, state: usize) -> f64 {
        let mut s = self.matrix.diag[state];
        for i in 0..self.matrix.dim {
            for k in self.matrix.row_ptr[i]..self.matrix.row_ptr[i + 1] {
                if self.matrix.cols[k] as usize == state {
                    s += self.matrix.vals[k];
                }
            }
        }
        s
    }
}

/// Enumerate every in-window event from `config` as (target config, rate).
/// No-op events (branch onto an occupied site) are skipped: they cancel in
/// the generator.
pub fn events_from(
    model: &ModelSpec,
    config: &OccupancyConfig,
) -> Vec<(OccupancyConfig, f64)> {
    let n = config.len();
    let mut out = Vec::new();
    let mut push = |cfg: OccupancyConfig, rate: f64| {
        if rate > 0.0 && cfg != *config {
            out.push((cfg, rate));
        }
    };
    match model {
        ModelSpec::Bcrw(rates) => {
            for x in config.occupied_sites() {
                if x > 0 {
                    push(
                        config.apply_jump(ModelKind::Bcrw, x, x as isize - 1).unwrap(),
                        rates.jump_left,
                    );
                    push(config.apply_branch(x, x as isize - 1).unwrap(), rates.branch_left);
                }
                if x + 1 < n {
                    push(
                        config.apply_jump(ModelKind::Bcrw, x, x as isize + 1).unwrap(),
                        rates.jump_right,
                    );
                    push(config.apply_branch(x, x as isize + 1).unwrap(), rates.branch_right);
                }
            }
        }
        ModelSpec::Arwpi(rates) => {
            assert_eq!(rates.window(), n, "rate arrays must match the window");
            for x in config.occupied_sites() {
                if x > 0 {
                    push(
                        config.apply_jump(ModelKind::Arwpi, x, x as isize - 1).unwrap(),
                        rates.jump_left[x],
                    );
                }
                if x + 1 < n {
                    push(
                        config.apply_jump(ModelKind::Arwpi, x, x as isize + 1).unwrap(),
                        rates.jump_right[x + 1],
                    );
                }
            }
            for x in 1..n {
                push(config.apply_immigration(x).unwrap(), rates.immigration[x]);
            }
        }
    }
    out
}

/// Assemble the sparse 2^N × 2^N rate matrix of the truncated window.
pub fn build_generator(model: &ModelSpec, window: usize) -> Result<MasterGenerator, LatticeError> {
    if window > EXACT_WINDOW_CAP {
        return Err(LatticeError::WindowTooLarge {
            requested: window,
            cap: EXACT_WINDOW_CAP,
        });
    }
    if let ModelSpec::Arwpi(rates) = model {
        if rates.window() != window {
            return Err(LatticeError::RateArrayLength {
                window,
                got: rates.window(),
            });
        }
    }
    let n_states = 1usize << window;
    let mut triplets = Vec::new();
    let mut diag = vec![0.0; n_states];
    for s in 0..n_states {
        let cfg = OccupancyConfig::from_index(window, s);
        for (target, rate) in events_from(model, &cfg) {
            let t = target.to_index();
            // transposed entry: probability flows from column s into row t
            triplets.push((t as u32, s as u32, rate));
            diag[s] -= rate;
        }
    }
    Ok(MasterGenerator {
        window,
        matrix: SparseGenerator::from_triplets(n_states, triplets, diag),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ArwpiRates, BcrwRates};

    #[test]
    fn single_site_window_has_no_moves() {
        let model = ModelSpec::Bcrw(BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap());
        let gen = build_generator(&model, 1).unwrap();
        for s in 0..2 {
            assert_eq!(gen.exit_rate(s), 0.0);
        }
    }

    #[test]
    fn two_site_pure_immigration_couples_double_flips() {
        let m = 0.7;
        let model = ModelSpec::Arwpi(ArwpiRates::homogeneous(2, 0.0, 0.0, m).unwrap());
        let gen = build_generator(&model, 2).unwrap();
        // each state flips both bits at rate m: 00 <-> 11, 01 <-> 10
        for s in 0..4usize {
            assert!((gen.exit_rate(s) - m).abs() < 1e-15);
            let partner = s ^ 0b11;
            let cfg = OccupancyConfig::from_index(2, s);
            let ev = events_from(&model, &cfg);
            assert_eq!(ev.len(), 1);
            assert_eq!(ev[0].0.to_index(), partner);
        }
    }

    #[test]
    fn row_sums_vanish() {
        let model = ModelSpec::Bcrw(BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap());
        let gen = build_generator(&model, 3).unwrap();
        for s in 0..8 {
            assert!(gen.row_sum(s).abs() <= 1e-14);
        }
    }

    #[test]
    fn window_cap_enforced() {
        let model = ModelSpec::Bcrw(BcrwRates::new(1.0, 1.0, 0.0, 0.0).unwrap());
        let err = build_generator(&model, 20).unwrap_err();
        assert!(matches!(err, LatticeError::WindowTooLarge { .. }));
    }

    /// Exhaustive hand enumeration for N=3, p=q=1, l=r=3. Every occupied site
    /// contributes jump+branch events in each in-window direction.
    #[test]
    fn three_site_bcrw_matches_hand_enumeration() {
        let model = ModelSpec::Bcrw(BcrwRates::new(1.0, 1.0, 3.0, 3.0).unwrap());
        // state 0b011 = particles at 0 and 1
        let cfg = OccupancyConfig::from_index(3, 0b011);
        let mut sorted: Vec<(usize, f64)> = events_from(&model, &cfg)
            .into_iter()
            .map(|(c, r)| (c.to_index(), r))
            .collect();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // particle at 0: jump right -> 0b010 (coalesce, rate 1), branch right no-op.
        // particle at 1: jump left -> 0b001 rate 1; jump right -> 0b101 rate 1;
        //                branch left no-op; branch right -> 0b111 rate 3.
        assert_eq!(
            sorted,
            vec![(0b001, 1.0), (0b010, 1.0), (0b101, 1.0), (0b111, 3.0)]
        );
    }
}
