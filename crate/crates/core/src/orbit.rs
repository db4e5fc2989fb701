//! Orbit and stabilizer computation for a group acting on arbitrary items.
//!
//! The engine works for any left action, i.e. any `act` with
//! act(a ∘ b, x) = act(a, act(b, x)). Point application is a left action
//! under our composition order; conjugation becomes one as
//! act(g, H) = g H g⁻¹.
//!
//! Orbits are explored level by level. Each level's images may be computed
//! in parallel, but they are merged sequentially in generator-list order, so
//! the discovered orbit, the representatives and the stabilizer generators
//! do not depend on the thread count.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{CapKind, Error};
use crate::group::StabilizerChain;
use crate::perm::Permutation;

pub struct OrbitStabilizer<T> {
    /// Orbit items in discovery order; `items[0]` is the seed.
    pub items: Vec<T>,
    /// `reps[i]` maps the seed to `items[i]` under the action.
    pub reps: Vec<Permutation>,
    /// Schreier generators of the seed stabilizer, filtered so that each one
    /// enlarges the group generated by its predecessors.
    pub stabilizer_gens: Vec<Permutation>,
    /// Chain for the stabilizer, built from `stabilizer_gens`.
    pub stabilizer_chain: StabilizerChain,
}

/// Computes the orbit of `seed` under the group generated by `gens`, together
/// with coset representatives and stabilizer generators.
///
/// `act(i, x)` must apply `gens[i]` to `x`; callers capture whatever
/// precomputed data the action needs (typically generator inverses).
/// `key_of` projects an item to the hashable key used for deduplication;
/// distinct items must have distinct keys.
pub fn orbit_stabilizer<T, K, A, KF>(
    degree: usize,
    gens: &[Permutation],
    seed: T,
    act: A,
    key_of: KF,
    max_orbit: usize,
) -> Result<OrbitStabilizer<T>, Error>
where
    T: Send + Sync,
    K: Eq + Hash,
    A: Fn(usize, &T) -> T + Sync,
    KF: Fn(&T) -> K,
{
    let mut visited: HashMap<K, usize> = HashMap::new();
    visited.insert(key_of(&seed), 0);
    let mut items = vec![seed];
    let mut reps = vec![Permutation::identity(degree)];
    let mut stabilizer_gens: Vec<Permutation> = Vec::new();
    let mut stabilizer_chain = StabilizerChain::new_trivial(degree);

    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        // Expand the whole level first; the borrow of `items` ends once the
        // batch is materialized, and the sequential merge below keeps the
        // result order independent of how the batch was computed.
        let batch: Vec<(usize, Vec<T>)> = if frontier.len() * gens.len() >= 64 {
            frontier
                .par_iter()
                .map(|&src| {
                    let images = (0..gens.len()).map(|gi| act(gi, &items[src])).collect();
                    (src, images)
                })
                .collect()
        } else {
            frontier
                .iter()
                .map(|&src| {
                    let images = (0..gens.len()).map(|gi| act(gi, &items[src])).collect();
                    (src, images)
                })
                .collect()
        };

        let mut next = Vec::new();
        for (src, images) in batch {
            for (gi, img) in images.into_iter().enumerate() {
                match visited.entry(key_of(&img)) {
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        let idx = items.len();
                        if idx >= max_orbit {
                            return Err(Error::cap(CapKind::Orbit, max_orbit as u64));
                        }
                        slot.insert(idx);
                        items.push(img);
                        let rep = gens[gi].compose(&reps[src]);
                        reps.push(rep);
                        next.push(idx);
                    }
                    std::collections::hash_map::Entry::Occupied(slot) => {
                        let tgt = *slot.get();
                        let schreier = reps[tgt].inverse().compose(&gens[gi]).compose(&reps[src]);
                        if !schreier.is_identity() && !stabilizer_chain.contains(&schreier) {
                            stabilizer_chain.insert_generator(schreier.clone());
                            stabilizer_gens.push(schreier);
                        }
                    }
                }
            }
        }
        frontier = next;
    }

    Ok(OrbitStabilizer {
        items,
        reps,
        stabilizer_gens,
        stabilizer_chain,
    })
}

/// Orbit of a 0-based point, in discovery order.
pub fn point_orbit(degree: usize, gens: &[Permutation], seed: usize) -> Vec<usize> {
    let res = orbit_stabilizer(degree, gens, seed, |gi, &x| gens[gi].apply(x), |&x| x, degree + 1)
        .expect("point orbits are bounded by the degree");
    res.items
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::group::PermGroup;
    use num_bigint::BigUint;

    fn point_orbit_stabilizer(g: &PermGroup, seed: usize) -> OrbitStabilizer<usize> {
        let gens = g.generators().to_vec();
        orbit_stabilizer(
            g.degree(),
            g.generators(),
            seed,
            move |gi, &x| gens[gi].apply(x),
            |&x| x,
            usize::MAX,
        )
        .unwrap()
    }

    #[test]
    fn point_orbit_of_symmetric_group_is_everything() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let orbit = point_orbit(4, s4.generators(), 0);
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn orbit_times_stabilizer_is_group_order() {
        let groups = [
            PermGroup::symmetric(5).unwrap(),
            PermGroup::alternating(5).unwrap(),
            PermGroup::dihedral(12).unwrap(),
            PermGroup::cyclic(9).unwrap(),
            PermGroup::direct_product(
                &PermGroup::symmetric(3).unwrap(),
                &PermGroup::cyclic(4).unwrap(),
            )
            .unwrap(),
        ];
        for g in &groups {
            for seed in 0..g.degree() {
                let res = point_orbit_stabilizer(g, seed);
                let product = BigUint::from(res.items.len()) * res.stabilizer_chain.order();
                assert_eq!(product, *g.order());
            }
        }
    }

    #[test]
    fn stabilizer_generators_fix_the_seed() {
        let a5 = PermGroup::alternating(5).unwrap();
        let res = point_orbit_stabilizer(&a5, 2);
        assert!(!res.stabilizer_gens.is_empty());
        for s in &res.stabilizer_gens {
            assert_eq!(s.apply(2), 2);
        }
    }

    #[test]
    fn stabilizer_matches_brute_force_filter() {
        let caps = Caps::default();
        let groups = [
            PermGroup::symmetric(4).unwrap(),
            PermGroup::alternating(5).unwrap(),
            PermGroup::dihedral(8).unwrap(),
        ];
        for g in &groups {
            let fixing = g
                .elements(&caps)
                .unwrap()
                .filter(|e| e.apply(0) == 0)
                .count();
            let res = point_orbit_stabilizer(g, 0);
            assert_eq!(BigUint::from(fixing), res.stabilizer_chain.order());
            for e in g.elements(&caps).unwrap() {
                if e.apply(0) == 0 {
                    assert!(res.stabilizer_chain.contains(&e));
                }
            }
        }
    }

    #[test]
    fn representatives_map_seed_to_items() {
        let s5 = PermGroup::symmetric(5).unwrap();
        let res = point_orbit_stabilizer(&s5, 1);
        for (item, rep) in res.items.iter().zip(&res.reps) {
            assert_eq!(rep.apply(1), *item);
        }
    }

    #[test]
    fn conjugation_orbit_of_a_transposition_subgroup() {
        // The six subgroups generated by one transposition of S4 form a
        // single conjugacy class; each has a normalizer of order 4.
        let s4 = PermGroup::symmetric(4).unwrap();
        let t = crate::perm::Permutation::from_cycles(4, &[&[1, 2]]).unwrap();
        let seed: Vec<crate::perm::Permutation> = vec![t];
        let gens = s4.generators().to_vec();
        let inverses: Vec<_> = gens.iter().map(|g| g.inverse()).collect();
        let res = orbit_stabilizer(
            4,
            s4.generators(),
            seed,
            move |gi, hs: &Vec<crate::perm::Permutation>| {
                // act(g, H) = g H g⁻¹, elementwise, kept sorted.
                let mut out: Vec<_> = hs
                    .iter()
                    .map(|h| h.conjugate_by(&inverses[gi], &gens[gi]))
                    .collect();
                out.sort_unstable();
                out
            },
            |hs| hs.clone(),
            usize::MAX,
        )
        .unwrap();
        assert_eq!(res.items.len(), 6);
        assert_eq!(res.stabilizer_chain.order(), BigUint::from(4u32));
    }

    #[test]
    fn orbit_cap_is_enforced() {
        let s5 = PermGroup::symmetric(5).unwrap();
        let gens = s5.generators().to_vec();
        match orbit_stabilizer(5, s5.generators(), 0usize, |gi, &x| gens[gi].apply(x), |&x| x, 3) {
            Err(err) => assert!(err.is_cap()),
            Ok(_) => panic!("expected the orbit cap to trip"),
        }
    }
}
