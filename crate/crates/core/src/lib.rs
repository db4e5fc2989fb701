//! Finite permutation groups, their p-subgroup posets, and the topology of the
//! order complexes those posets span.
//!
//! The pipeline runs in four stages, one module each:
//!
//! * [`perm`] / [`group`]: permutations, stabilizer chains, orbits.
//! * [`subgroup`]: Sylow subgroups, normalizers, p-cores, conjugacy machinery.
//! * [`poset`]: the Quillen, Sp and Bouc posets, truncation, joins.
//! * [`complex`] / [`topology`]: order complexes, fundamental group
//!   presentations, Smith normal form homology.
//!
//! Everything is deterministic: the same inputs produce byte-identical
//! outputs regardless of thread count.

pub mod caps;
pub mod complex;
pub mod error;
pub mod group;
pub mod orbit;
pub mod perm;
pub mod poset;
pub mod subgroup;
pub mod topology;

pub use caps::Caps;
pub use error::Error;
pub use group::PermGroup;
pub use perm::Permutation;
