//! Model parameter sets for the two particle systems.

use crate::error::LatticeError;

/// Which interaction rule applies when a particle lands on an occupied site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// Branching-coalescing: arrivals merge.
    Bcrw,
    /// Annihilating with pairwise immigration: arrivals cancel.
    Arwpi,
}

/// BCRW rates: jumps right/left at p/q, branches left/right at l/r.
///
/// Construction enforces the kernel condition p·l = q·r (with p,q > 0), or
/// one of the two one-sided degenerate cases, so that the phase factor
/// φ = √(1+l/q) = √(1+r/p) is well defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcrwRates {
    pub jump_right: f64,
    pub jump_left: f64,
    pub branch_left: f64,
    pub branch_right: f64,
}

/// Derived constants of the phase-changed BCRW duality: the phase base φ and
/// the constant potential c₀ = (p+q)(φ−1)²/2 shared across dual coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcrwConstants {
    pub phi: f64,
    pub potential: f64,
}

impl BcrwRates {
    /// `new(p, q, l, r)` in the order jump-right, jump-left, branch-left,
    /// branch-right.
    pub fn new(p: f64, q: f64, l: f64, r: f64) -> Result<Self, LatticeError> {
        for v in [p, q, l, r] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(LatticeError::NegativeRate(v));
            }
        }
        let bad = || LatticeError::RateCondition { p, q, l, r };
        let generic = p > 0.0 && q > 0.0 && {
            let scale = (p * l).abs().max((q * r).abs()).max(1e-300);
            (p * l - q * r).abs() <= 1e-12 * scale
        };
        let left_only = p == 0.0 && r == 0.0 && q > 0.0 && l > 0.0;
        let right_only = q == 0.0 && l == 0.0 && p > 0.0 && r > 0.0;
        if !(generic || left_only || right_only) {
            return Err(bad());
        }
        Ok(Self {
            jump_right: p,
            jump_left: q,
            branch_left: l,
            branch_right: r,
        })
    }

    /// Skip the rate-condition check. The generator and Monte Carlo engines
    /// are fine with arbitrary nonnegative rates; the Pfaffian identities are
    /// not, which is the whole point of probing with this constructor.
    pub fn new_unchecked(p: f64, q: f64, l: f64, r: f64) -> Self {
        Self {
            jump_right: p,
            jump_left: q,
            branch_left: l,
            branch_right: r,
        }
    }

    /// Phase factor and potential of the balanced duality.
    pub fn constants(&self) -> Result<BcrwConstants, LatticeError> {
        let (p, q, l, r) = (
            self.jump_right,
            self.jump_left,
            self.branch_left,
            self.branch_right,
        );
        let phi = if q > 0.0 {
            (1.0 + l / q).sqrt()
        } else if p > 0.0 {
            (1.0 + r / p).sqrt()
        } else {
            return Err(LatticeError::RateCondition { p, q, l, r });
        };
        let potential = 0.5 * (p + q) * (phi - 1.0) * (phi - 1.0);
        Ok(BcrwConstants { phi, potential })
    }

    pub fn total_per_particle(&self) -> f64 {
        self.jump_right + self.jump_left + self.branch_left + self.branch_right
    }
}

/// ARWPI per-site rate arrays over a window of `len` sites.
///
/// Indexing follows the generator: `jump_left[x]` is the rate of the jump
/// x → x−1 (source-indexed), `jump_right[x]` the rate of x−1 → x
/// (target-indexed), and `immigration[x]` the rate of a pair landing on
/// {x−1, x}. Entries whose event would cross the window boundary are simply
/// never read.
#[derive(Debug, Clone, PartialEq)]
pub struct ArwpiRates {
    pub jump_right: Vec<f64>,
    pub jump_left: Vec<f64>,
    pub immigration: Vec<f64>,
}

impl ArwpiRates {
    pub fn new(
        window: usize,
        jump_right: Vec<f64>,
        jump_left: Vec<f64>,
        immigration: Vec<f64>,
    ) -> Result<Self, LatticeError> {
        for arr in [&jump_right, &jump_left, &immigration] {
            if arr.len() != window {
                return Err(LatticeError::RateArrayLength {
                    window,
                    got: arr.len(),
                });
            }
            if let Some(&v) = arr.iter().find(|v| !(**v >= 0.0) || !v.is_finite()) {
                return Err(LatticeError::NegativeRate(v));
            }
        }
        Ok(Self {
            jump_right,
            jump_left,
            immigration,
        })
    }

    pub fn homogeneous(window: usize, p: f64, q: f64, m: f64) -> Result<Self, LatticeError> {
        Self::new(
            window,
            vec![p; window],
            vec![q; window],
            vec![m; window],
        )
    }

    /// Homogeneous walks with immigration only at the pair {site−1, site}.
    pub fn point_immigration(
        window: usize,
        p: f64,
        q: f64,
        site: usize,
        m: f64,
    ) -> Result<Self, LatticeError> {
        let mut im = vec![0.0; window];
        if site >= window {
            return Err(LatticeError::SiteOutOfWindow {
                site,
                window,
            });
        }
        im[site] = m;
        Self::new(window, vec![p; window], vec![q; window], im)
    }

    pub fn window(&self) -> usize {
        self.jump_left.len()
    }
}

/// Tagged union of the two generators.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Bcrw(BcrwRates),
    Arwpi(ArwpiRates),
}

impl ModelSpec {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelSpec::Bcrw(_) => ModelKind::Bcrw,
            ModelSpec::Arwpi(_) => ModelKind::Arwpi,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_condition_enforced() {
        assert!(BcrwRates::new(1.0, 1.0, 3.0, 3.0).is_ok());
        assert!(BcrwRates::new(1.0, 2.0, 3.0, 1.5).is_ok());
        assert!(BcrwRates::new(1.0, 2.0, 1.5, 3.0).is_err());
        // degenerate one-sided cases
        assert!(BcrwRates::new(0.0, 1.0, 2.0, 0.0).is_ok());
        assert!(BcrwRates::new(1.0, 0.0, 0.0, 2.0).is_ok());
        assert!(BcrwRates::new(0.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn constants_match_both_expressions() {
        let rates = BcrwRates::new(1.0, 2.0, 3.0, 1.5).unwrap();
        let c = rates.constants().unwrap();
        assert!((c.phi - (1.0 + 3.0 / 2.0_f64).sqrt()).abs() < 1e-15);
        assert!((c.phi - (1.0 + 1.5 / 1.0_f64).sqrt()).abs() < 1e-12);
        // c0 = (r+l)/2 - (p+q)(phi-1) must equal (p+q)(phi-1)^2/2
        let alt = 0.5 * (1.5 + 3.0) - (1.0 + 2.0) * (c.phi - 1.0);
        assert!((c.potential - alt).abs() < 1e-12);
        assert!(c.potential >= 0.0);
    }

    #[test]
    fn pure_coalescing_has_unit_phase() {
        let rates = BcrwRates::new(1.0, 1.0, 0.0, 0.0).unwrap();
        let c = rates.constants().unwrap();
        assert_eq!(c.phi, 1.0);
        assert_eq!(c.potential, 0.0);
    }

    #[test]
    fn arwpi_array_validation() {
        assert!(ArwpiRates::homogeneous(5, 1.0, 1.0, 0.5).is_ok());
        assert!(ArwpiRates::new(5, vec![1.0; 4], vec![1.0; 5], vec![0.0; 5]).is_err());
        assert!(ArwpiRates::new(2, vec![1.0, -1.0], vec![1.0; 2], vec![0.0; 2]).is_err());
    }
}
