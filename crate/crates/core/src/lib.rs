//! Star operations on numerical semigroups.
//!
//! The crate computes the ideal theory of a numerical semigroup `S` inside a
//! finite window, builds the star operations generated by sets of ideals,
//! orders the nondivisorial ideals by the star order, counts star operations
//! exactly through valid antichains of that order, and checks the known lower
//! bounds on `|Star(S)|` against exact counts.
//!
//! ```
//! use starsemi::{Budget, NumericalSemigroup, StarContext};
//!
//! let s: NumericalSemigroup = "<4,5,6,7>".parse().unwrap();
//! let ctx = StarContext::new(&s, &Budget::default()).unwrap();
//! let census = starsemi::enumeration::enumerate_star_operations(&ctx, &Budget::default()).unwrap();
//! assert_eq!(census.count, 14);
//! ```

pub mod bitset;
pub mod bounds;
pub mod cli;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod ideal;
pub mod semigroup;
pub mod star;

pub use error::{IdealError, LimitExceeded, PosetError, SemigroupError};
pub use ideal::{Ideal, IdealSpace};
pub use semigroup::{enumerate_semigroups, NumericalSemigroup};
pub use star::{StarContext, StarOperation, StarPoset};

/// Environment variable holding the default for [`Budget::max_ideals`].
pub const BUDGET_ENV: &str = "STARSEMI_BUDGET";

/// Limits that turn runaway computations into [`LimitExceeded`] errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest genus accepted by the ideal enumeration.
    pub max_genus: u32,
    /// Largest accepted `|F₀(S)|`.
    pub max_ideals: u64,
    /// Largest number of star operations materialized or enumerated.
    pub max_star_operations: u64,
    /// Memoized subproblems allowed to the exact counter.
    pub max_counting_states: usize,
    /// Largest poset accepted by the generic antichain routines.
    pub max_poset_size: usize,
    /// Re-check the star axioms on every operation built.
    pub verify_axioms: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_genus: 20,
            max_ideals: 1 << 20,
            max_star_operations: 5_000_000,
            max_counting_states: 2_000_000,
            max_poset_size: 40,
            verify_axioms: cfg!(debug_assertions),
        }
    }
}

impl Budget {
    /// Defaults, with `max_ideals` taken from `STARSEMI_BUDGET` when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok()) {
            b.max_ideals = v;
        }
        b
    }
}
