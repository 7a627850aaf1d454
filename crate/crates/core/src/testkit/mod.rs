//! Independent oracles for the rest of the crate: exhaustive enumeration of
//! small lattices and posets, random closure systems, and congruences found
//! by filtering every set partition.

mod closure;
mod enumerate;
mod partitions;

pub use closure::random_closure_candidates;
pub use enumerate::{enumerate_lattices, enumerate_lattices_brute_force, enumerate_posets};
pub use partitions::congruences_by_partition_filter;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Largest lattice size the enumerator accepts.
pub const MAX_ENUM_ELEMENTS: usize = 10;

/// Which lattices an enumeration keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LatticeFilter {
    #[default]
    All,
    Semimodular,
    SlimSemimodular,
}

impl LatticeFilter {
    pub fn accepts(self, l: &Lattice) -> bool {
        match self {
            LatticeFilter::All => true,
            LatticeFilter::Semimodular => l.is_semimodular(),
            LatticeFilter::SlimSemimodular => l.is_semimodular() && l.is_slim(),
        }
    }
}

impl std::str::FromStr for LatticeFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(LatticeFilter::All),
            "semimodular" => Ok(LatticeFilter::Semimodular),
            "slim-semimodular" => Ok(LatticeFilter::SlimSemimodular),
            other => Err(Error::precondition(format!("unknown filter {other:?}"))),
        }
    }
}

/// Enumeration parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub max_elements: usize,
    pub filter: LatticeFilter,
    /// Seed for the randomized generators.
    pub seed: u64,
}

impl EnumConfig {
    pub fn new(max_elements: usize, filter: LatticeFilter) -> Self {
        EnumConfig {
            max_elements,
            filter,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_elements > MAX_ENUM_ELEMENTS {
            return Err(Error::BoundExceeded {
                requested: self.max_elements,
                limit: MAX_ENUM_ELEMENTS,
            });
        }
        Ok(())
    }
}
