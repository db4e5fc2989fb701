//! Resource caps. Every potentially explosive enumeration checks one of
//! these and fails with a named cap error instead of eating the machine.

/// Limits for the expensive enumerations. All caps are inclusive: a run is
/// allowed to produce exactly `max_*` items.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest group order for which `elements` will stream the full group.
    pub max_elements: u64,
    /// Largest orbit the orbit enumerator will expand.
    pub max_orbit: usize,
    /// Largest number of maximal chains the order complex will collect.
    pub max_chains: usize,
    /// Largest number of nonzero entries a sparse matrix may reach during
    /// elimination.
    pub max_matrix_entries: usize,
    /// Largest subgroup that gets its element list materialized.
    pub max_subgroup_elements: usize,
    /// Largest p-group order accepted by the subgroup-of-p-group enumerator.
    pub max_pgroup_order: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_elements: 10_000_000,
            max_orbit: 1_000_000,
            max_chains: 10_000_000,
            max_matrix_entries: 100_000_000,
            max_subgroup_elements: 100_000,
            max_pgroup_order: 1024,
        }
    }
}

impl Caps {
    /// All caps must be positive; zero caps would reject even trivial work.
    pub fn validate(&self) -> Result<(), crate::Error> {
        let ok = self.max_elements > 0
            && self.max_orbit > 0
            && self.max_chains > 0
            && self.max_matrix_entries > 0
            && self.max_subgroup_elements > 0
            && self.max_pgroup_order > 0;
        if ok {
            Ok(())
        } else {
            Err(crate::Error::Invalid("caps must be positive".into()))
        }
    }
}
