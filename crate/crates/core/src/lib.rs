//! Exact cohomology of finite groups with finite coefficient modules.
//!
//! The crate computes classical group cohomology together with its symmetric
//! and exterior variants, compares the three theories through the induced
//! maps on cohomology, and classifies crossed extensions by the existence of
//! symmetric s-sections. Everything is exact integer arithmetic: groups are
//! multiplication tables, modules are invariant-factor tuples with explicit
//! action matrices, and all homological computations reduce to lattice
//! arithmetic over the integers.
//!
//! Layout:
//! - [`group`], [`gmodule`]: validated multiplication tables and G-modules.
//! - [`linalg`]: Smith normal form, modular solving, homology of complexes
//!   of finite abelian groups.
//! - [`cochain`]: cochain spaces, the coboundary, the transposition action
//!   and the four cochain flavors.
//! - [`cohomology`]: cohomology groups, comparison maps, coboundary
//!   decisions and the symmetry criteria for cocycles.
//! - [`crossed`]: crossed modules, crossed extensions, s-sections and the
//!   associated 3-cocycle.
//! - [`twogroup`]: the strict 2-group of a crossed module and the monoidal /
//!   symmetric section functors.
//! - [`oracle`]: brute-force enumeration used as independent ground truth.
//! - [`schema`]: the JSON description formats for groups, modules and
//!   crossed extensions.

pub mod cochain;
pub mod cohomology;
pub mod crossed;
pub mod error;
pub mod gmodule;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod schema;
pub mod twogroup;

pub use error::Error;
pub use gmodule::{GModule, ModuleElement};
pub use group::FiniteGroup;
pub use linalg::{AbGroupInvariants, IntMatrix, SnfResult};

/// Caps the number of coordinates a cochain-space computation may touch.
///
/// The cap applies to the largest cochain space involved in an operation
/// (for a degree-n coboundary that is `|G|^(n+1) * rank(M)`). Overridable
/// from the CLI via `--max-cells`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_cells: u64,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { max_cells: 2_000_000 }
    }
}

impl SizeGuard {
    pub fn new(max_cells: u64) -> Self {
        SizeGuard { max_cells }
    }

    pub fn check(&self, cells: u64) -> Result<(), Error> {
        if cells > self.max_cells {
            Err(Error::SizeGuard { needed: cells, cap: self.max_cells })
        } else {
            Ok(())
        }
    }
}

/// Highest degree the cohomology engine computes (`n = 4` needs degree-5
/// cochain spaces, which is where the fixture envelope ends).
pub const MAX_DEGREE: usize = 4;

/// Tiny deterministic PRNG (splitmix64). Used for reproducible sampling;
/// the stream is pinned forever so seeded reports stay byte-identical.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound >= 1`).
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound >= 1);
        // Rejection sampling keeps the distribution exactly uniform.
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}
