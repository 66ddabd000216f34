//! Particle configurations on a finite window of the integer lattice.

use crate::error::LatticeError;
use crate::lattice::ModelKind;

/// Bit-vector occupancy η on a window of `len` sites, indexed 0..len.
///
/// Windows up to ~10⁶ sites are practical; the exact engine only ever sees
/// small ones but the Monte Carlo engine shares this type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OccupancyConfig {
    len: usize,
    words: Vec<u64>,
}

impl OccupancyConfig {
    pub fn empty(len: usize) -> Self {
        assert!(len >= 1, "window needs at least one site");
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut c = Self::empty(len);
        for x in 0..len {
            c.set(x, true);
        }
        c
    }

    /// Single particle at `site`.
    pub fn single(len: usize, site: usize) -> Self {
        let mut c = Self::empty(len);
        c.set(site, true);
        c
    }

    /// Occupied on even offsets: 1,0,1,0,...
    pub fn alternating(len: usize) -> Self {
        let mut c = Self::empty(len);
        for x in (0..len).step_by(2) {
            c.set(x, true);
        }
        c
    }

    pub fn from_occupied(len: usize, sites: &[usize]) -> Self {
        let mut c = Self::empty(len);
        for &x in sites {
            c.set(x, true);
        }
        c
    }

    /// Decode a bitmask state index (site x = bit x). Window must fit in 63 bits.
    pub fn from_index(len: usize, index: usize) -> Self {
        assert!(len < 64);
        let mut c = Self::empty(len);
        for x in 0..len {
            if index >> x & 1 == 1 {
                c.set(x, true);
            }
        }
        c
    }

    /// Bitmask state index for the exact engine. Panics for windows ≥ 64 sites.
    pub fn to_index(&self) -> usize {
        assert!(self.len < 64, "state indexing only for small windows");
        self.words[0] as usize & ((1usize << self.len) - 1)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, x: usize) -> bool {
        debug_assert!(x < self.len);
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: usize, occupied: bool) {
        debug_assert!(x < self.len);
        let (w, b) = (x / 64, x % 64);
        if occupied {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    #[inline]
    pub fn toggle(&mut self, x: usize) {
        debug_assert!(x < self.len);
        self.words[x / 64] ^= 1 << (x % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of particles in the half-open interval [y, z).
    pub fn count_in(&self, y: usize, z: usize) -> usize {
        debug_assert!(y <= z && z <= self.len);
        (y..z).filter(|&x| self.get(x)).count()
    }

    pub fn occupied_sites(&self) -> Vec<usize> {
        (0..self.len).filter(|&x| self.get(x)).collect()
    }

    /// Rightmost occupied site, if any.
    pub fn rightmost(&self) -> Option<usize> {
        (0..self.len).rev().find(|&x| self.get(x))
    }

    /// Sitewise containment: every particle of `self` is present in `other`.
    pub fn is_subset_of(&self, other: &OccupancyConfig) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    fn check_site(&self, x: usize) -> Result<(), LatticeError> {
        if x >= self.len {
            Err(LatticeError::SiteOutOfWindow {
                site: x,
                window: self.len,
            })
        } else {
            Ok(())
        }
    }

    /// Nearest-neighbour jump of the particle at `from` onto `to`.
    ///
    /// BCRW coalesces on arrival (target set to 1), ARWPI annihilates
    /// (target toggled). A target outside the window is a truncated event:
    /// the configuration is returned unchanged.
    pub fn apply_jump(
        &self,
        kind: ModelKind,
        from: usize,
        to: isize,
    ) -> Result<OccupancyConfig, LatticeError> {
        self.check_site(from)?;
        if (to - from as isize).abs() != 1 {
            return Err(LatticeError::NotAdjacent {
                from,
                to: to.max(0) as usize,
            });
        }
        if !self.get(from) {
            return Err(LatticeError::SourceEmpty(from));
        }
        if to < 0 || to as usize >= self.len {
            return Ok(self.clone());
        }
        let to = to as usize;
        let mut next = self.clone();
        next.set(from, false);
        match kind {
            ModelKind::Bcrw => next.set(to, true),
            ModelKind::Arwpi => next.toggle(to),
        }
        Ok(next)
    }

    /// BCRW branch: the particle at `from` spawns a copy onto `to`;
    /// branching onto an occupied site coalesces immediately.
    pub fn apply_branch(&self, from: usize, to: isize) -> Result<OccupancyConfig, LatticeError> {
        self.check_site(from)?;
        if (to - from as isize).abs() != 1 {
            return Err(LatticeError::NotAdjacent {
                from,
                to: to.max(0) as usize,
            });
        }
        if !self.get(from) {
            return Err(LatticeError::SourceEmpty(from));
        }
        if to < 0 || to as usize >= self.len {
            return Ok(self.clone());
        }
        let mut next = self.clone();
        next.set(to as usize, true);
        Ok(next)
    }

    /// ARWPI pair immigration onto {x-1, x}: both sites toggle (arrivals
    /// annihilate whatever they land on).
    pub fn apply_immigration(&self, x: usize) -> Result<OccupancyConfig, LatticeError> {
        if x == 0 {
            return Err(LatticeError::SiteOutOfWindow {
                site: 0,
                window: self.len,
            });
        }
        self.check_site(x)?;
        let mut next = self.clone();
        next.toggle(x - 1);
        next.toggle(x);
        Ok(next)
    }
}
