//! Posets of nontrivial p-subgroups ordered by inclusion.
//!
//! Three flavors are built from the same ingredients: `quillen` keeps the
//! elementary abelian subgroups, `sp` keeps every nontrivial p-subgroup, and
//! `bouc` keeps the p-radical ones (R equal to the p-core of its normalizer).
//! Node ids are assigned by sorting element-set fingerprints, so every
//! downstream artifact is deterministic regardless of thread count.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::Error;
use crate::group::GroupRef;
use crate::perm::Permutation;
use crate::subgroup::{
    all_subgroups_of_p_group, dedupe_by_conjugacy, elementary_abelian_subgroups, expand_conjugates,
    is_p_radical, is_prime, sylow, Subgroup, SubgroupKey,
};

/// Which family of p-subgroups a poset holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PosetKind {
    Quillen,
    Sp,
    Bouc,
}

impl fmt::Display for PosetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PosetKind::Quillen => "quillen",
            PosetKind::Sp => "sp",
            PosetKind::Bouc => "bouc",
        };
        f.write_str(name)
    }
}

impl FromStr for PosetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<PosetKind, Error> {
        match s {
            "quillen" => Ok(PosetKind::Quillen),
            "sp" => Ok(PosetKind::Sp),
            "bouc" => Ok(PosetKind::Bouc),
            other => Err(Error::Invalid(format!(
                "unknown poset kind `{other}` (expected quillen, sp, or bouc)"
            ))),
        }
    }
}

/// A finite poset of nontrivial p-subgroups of a fixed parent group, ordered
/// by inclusion. `pairs` lists every comparable pair `(i, j)` with node `i` a
/// proper subgroup of node `j`, sorted lexicographically.
pub struct SubgroupPoset {
    kind: PosetKind,
    prime: u64,
    parent: GroupRef,
    nodes: Vec<Subgroup>,
    pairs: Vec<(u32, u32)>,
    truncation: Option<u32>,
}

impl SubgroupPoset {
    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn node(&self, id: u32) -> &Subgroup {
        &self.nodes[id as usize]
    }

    /// Comparable pairs `(i, j)` with node `i` strictly below node `j`.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    /// Forget the subgroups, keep the comparability structure.
    pub fn abstract_poset(&self) -> AbstractPoset {
        AbstractPoset {
            size: self.nodes.len(),
            pairs: self.pairs.clone(),
        }
    }

    /// Serializable snapshot: node orders and generator images plus the full
    /// relation, suitable for external tools.
    pub fn export(&self, group_spec: &str) -> PosetJson {
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, node)| PosetNodeJson {
                id: id as u32,
                order: node
                    .order_u64()
                    .expect("p-subgroup node orders stay within u64 under the p-group cap"),
                generator_images: node
                    .generators()
                    .iter()
                    .map(Permutation::images_one_based)
                    .collect(),
            })
            .collect();
        PosetJson {
            kind: self.kind,
            prime: self.prime,
            group_spec: group_spec.to_string(),
            nodes,
            relations: self.pairs.clone(),
        }
    }
}

impl fmt::Debug for SubgroupPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupPoset")
            .field("kind", &self.kind)
            .field("prime", &self.prime)
            .field("nodes", &self.nodes.len())
            .field("pairs", &self.pairs.len())
            .field("truncation", &self.truncation)
            .finish()
    }
}

/// JSON shape for a poset: `{kind, prime, group_spec, nodes, relations}`.
#[derive(Serialize)]
pub struct PosetJson {
    pub kind: PosetKind,
    pub prime: u64,
    pub group_spec: String,
    pub nodes: Vec<PosetNodeJson>,
    pub relations: Vec<(u32, u32)>,
}

#[derive(Serialize)]
pub struct PosetNodeJson {
    pub id: u32,
    pub order: u64,
    pub generator_images: Vec<Vec<usize>>,
}

/// A bare finite poset: element count plus the strict comparability relation.
/// Used for constructions (join, truncation images) whose elements are no
/// longer subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractPoset {
    size: usize,
    pairs: Vec<(u32, u32)>,
}

impl AbstractPoset {
    /// Build from an explicit relation, rejecting anything that is not a
    /// strict partial order.
    pub fn new(size: usize, mut pairs: Vec<(u32, u32)>) -> Result<AbstractPoset, Error> {
        pairs.sort_unstable();
        pairs.dedup();
        let set: HashSet<(u32, u32)> = pairs.iter().copied().collect();
        let mut above: Vec<Vec<u32>> = vec![Vec::new(); size];
        for &(a, b) in &pairs {
            if (a as usize) >= size || (b as usize) >= size {
                return Err(Error::Invalid(format!(
                    "poset pair ({a}, {b}) out of range for {size} elements"
                )));
            }
            if a == b {
                return Err(Error::Invalid(format!("poset relation is reflexive at {a}")));
            }
            if set.contains(&(b, a)) {
                return Err(Error::Invalid(format!(
                    "poset relation has a 2-cycle between {a} and {b}"
                )));
            }
            above[a as usize].push(b);
        }
        for &(a, b) in &pairs {
            for &c in &above[b as usize] {
                if !set.contains(&(a, c)) {
                    return Err(Error::Invalid(format!(
                        "poset relation is not transitive: {a} < {b} < {c} but not {a} < {c}"
                    )));
                }
            }
        }
        Ok(AbstractPoset { size, pairs })
    }

    /// `size` pairwise incomparable elements.
    pub fn antichain(size: usize) -> AbstractPoset {
        AbstractPoset {
            size,
            pairs: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }
}

impl From<&SubgroupPoset> for AbstractPoset {
    fn from(poset: &SubgroupPoset) -> AbstractPoset {
        poset.abstract_poset()
    }
}

/// Join of two posets: disjoint union with every element of `x` below every
/// element of `y`, internal orders kept.
pub fn poset_join(x: &AbstractPoset, y: &AbstractPoset) -> AbstractPoset {
    let offset = x.size as u32;
    let mut pairs = x.pairs.clone();
    pairs.extend(y.pairs.iter().map(|&(a, b)| (a + offset, b + offset)));
    for i in 0..x.size as u32 {
        for j in 0..y.size as u32 {
            pairs.push((i, offset + j));
        }
    }
    pairs.sort_unstable();
    AbstractPoset {
        size: x.size + y.size,
        pairs,
    }
}

/// Poset of nontrivial elementary abelian p-subgroups.
pub fn build_quillen(parent: &GroupRef, p: u64, caps: &Caps) -> Result<SubgroupPoset, Error> {
    require_p_divides(parent, p)?;
    let nodes = elementary_abelian_subgroups(parent, p, caps)?;
    assemble(PosetKind::Quillen, parent, p, nodes)
}

/// Poset of all nontrivial p-subgroups: every subgroup of one Sylow,
/// deduped by conjugacy and re-expanded across the whole group.
pub fn build_sp(parent: &GroupRef, p: u64, caps: &Caps) -> Result<SubgroupPoset, Error> {
    require_p_divides(parent, p)?;
    let nodes = spread_sylow_subgroups(parent, p, caps, |_| Ok(true))?;
    assemble(PosetKind::Sp, parent, p, nodes)
}

/// Poset of nontrivial p-radical subgroups: the sp pipeline with class
/// representatives filtered by R = O_p(N_G(R)) before expansion. The filter
/// commutes with conjugation, so filtering representatives first and
/// conjugates afterward select the same node set.
pub fn build_bouc(parent: &GroupRef, p: u64, caps: &Caps) -> Result<SubgroupPoset, Error> {
    require_p_divides(parent, p)?;
    let nodes = spread_sylow_subgroups(parent, p, caps, |rep| is_p_radical(parent, rep, p, caps))?;
    assemble(PosetKind::Bouc, parent, p, nodes)
}

/// Keep exactly the nodes of order at most p^(n+1), with the relation
/// restricted. Node ids are reassigned but stay in fingerprint order.
pub fn truncate(poset: &SubgroupPoset, n: u32) -> SubgroupPoset {
    let keep_all = u64::from(n) + 1 >= poset.parent.order().bits();
    let limit = if keep_all {
        None
    } else {
        Some(BigUint::from(poset.prime).pow(n + 1))
    };
    let mut new_id: Vec<Option<u32>> = vec![None; poset.nodes.len()];
    let mut nodes = Vec::new();
    for (i, node) in poset.nodes.iter().enumerate() {
        let keep = match &limit {
            None => true,
            Some(limit) => node.order() <= limit,
        };
        if keep {
            new_id[i] = Some(nodes.len() as u32);
            nodes.push(node.clone());
        }
    }
    let pairs = poset
        .pairs
        .iter()
        .filter_map(|&(a, b)| match (new_id[a as usize], new_id[b as usize]) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        })
        .collect();
    SubgroupPoset {
        kind: poset.kind,
        prime: poset.prime,
        parent: poset.parent.clone(),
        nodes,
        pairs,
        truncation: Some(n),
    }
}

/// Re-derive every structural promise of a finished poset: nodes are
/// nontrivial p-groups, the relation is a strict partial order matching
/// inclusion, kind-specific membership holds for every node (not just the
/// class representatives), and conjugation by each parent generator is an
/// automorphism. Intended for desk-scale runs; cost grows with node count
/// times normalizer work for bouc posets.
pub fn check_invariants(poset: &SubgroupPoset, caps: &Caps) -> Result<(), Error> {
    let fail = |msg: String| Err(Error::Invalid(msg));
    let mut key_to_id: HashMap<SubgroupKey, u32> = HashMap::new();
    for (i, node) in poset.nodes.iter().enumerate() {
        if node.is_trivial() {
            return fail(format!("node {i} is the trivial subgroup"));
        }
        if !node.is_p_group(poset.prime) {
            return fail(format!("node {i} is not a {}-group", poset.prime));
        }
        match poset.kind {
            PosetKind::Quillen => {
                if !node.is_elementary_abelian(poset.prime) {
                    return fail(format!("quillen node {i} is not elementary abelian"));
                }
            }
            PosetKind::Bouc => {
                if !is_p_radical(&poset.parent, node, poset.prime, caps)? {
                    return fail(format!("bouc node {i} fails the radical recheck"));
                }
            }
            PosetKind::Sp => {}
        }
        let key = node
            .key()
            .ok_or_else(|| Error::Invalid(format!("node {i} has no materialized elements")))?;
        if key_to_id.insert(key.clone(), i as u32).is_some() {
            return fail(format!("node {i} duplicates an earlier node"));
        }
    }

    let pair_set: HashSet<(u32, u32)> = poset.pairs.iter().copied().collect();
    let mut above: Vec<Vec<u32>> = vec![Vec::new(); poset.nodes.len()];
    for &(a, b) in &poset.pairs {
        let small = &poset.nodes[a as usize];
        let big = &poset.nodes[b as usize];
        if small.order() >= big.order() || !big.contains_subgroup(small) {
            return fail(format!("pair ({a}, {b}) is not a proper inclusion"));
        }
        above[a as usize].push(b);
    }
    for &(a, b) in &poset.pairs {
        for &c in &above[b as usize] {
            if !pair_set.contains(&(a, c)) {
                return fail(format!("relation not transitive at {a} < {b} < {c}"));
            }
        }
    }

    for g in poset.parent.generators() {
        let g_inv = g.inverse();
        let mut image: Vec<u32> = Vec::with_capacity(poset.nodes.len());
        for (i, node) in poset.nodes.iter().enumerate() {
            let conj = node.conjugated(g, &g_inv);
            let key = conj.key().expect("conjugate of materialized node");
            match key_to_id.get(key) {
                Some(&j) => image.push(j),
                None => {
                    return fail(format!(
                        "conjugating node {i} by a generator leaves the node set"
                    ))
                }
            }
        }
        for &(a, b) in &poset.pairs {
            let mapped = (image[a as usize], image[b as usize]);
            if !pair_set.contains(&mapped) {
                return fail(format!(
                    "conjugation maps pair ({a}, {b}) outside the relation"
                ));
            }
        }
    }
    Ok(())
}

fn require_p_divides(parent: &GroupRef, p: u64) -> Result<(), Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    if parent.order_p_part(p).is_one() {
        return Err(Error::PrimeDoesNotDivide {
            prime: p,
            order: parent.order().to_string(),
        });
    }
    Ok(())
}

/// Shared sp/bouc pipeline: enumerate the subgroups of one Sylow p-subgroup,
/// dedupe them by conjugacy in the parent, keep the class representatives
/// accepted by `keep`, and expand each kept class across its full conjugation
/// orbit.
fn spread_sylow_subgroups(
    parent: &GroupRef,
    p: u64,
    caps: &Caps,
    mut keep: impl FnMut(&Subgroup) -> Result<bool, Error>,
) -> Result<Vec<Subgroup>, Error> {
    let s = sylow(parent, p, caps)?;
    let inside = all_subgroups_of_p_group(&s, caps)?;
    let reps = dedupe_by_conjugacy(parent, &inside, caps)?;
    let mut nodes = Vec::new();
    for rep in &reps {
        if keep(rep)? {
            nodes.extend(expand_conjugates(parent, rep, caps)?);
        }
    }
    Ok(nodes)
}

fn assemble(
    kind: PosetKind,
    parent: &GroupRef,
    prime: u64,
    nodes: Vec<Subgroup>,
) -> Result<SubgroupPoset, Error> {
    let mut keyed: Vec<(SubgroupKey, Subgroup)> = nodes
        .into_iter()
        .map(|node| {
            let key = node
                .key()
                .cloned()
                .ok_or_else(|| Error::Invalid("poset nodes need materialized elements".into()))?;
            Ok((key, node))
        })
        .collect::<Result<_, Error>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    debug_assert!(
        keyed.windows(2).all(|w| w[0].0 != w[1].0),
        "poset builders must not produce duplicate nodes"
    );
    let nodes: Vec<Subgroup> = keyed.into_iter().map(|(_, node)| node).collect();
    let pairs = comparability_pairs(&nodes);
    Ok(SubgroupPoset {
        kind,
        prime,
        parent: parent.clone(),
        nodes,
        pairs,
        truncation: None,
    })
}

/// All strict inclusions among the nodes. Candidates for "subgroup of node j"
/// are found by looking up each non-identity element of node j as a minimal
/// element of some smaller node, so each comparable pair is tested exactly
/// once; the test itself only checks that the generators of the candidate
/// land in node j's sorted element list.
fn comparability_pairs(nodes: &[Subgroup]) -> Vec<(u32, u32)> {
    let mut by_min_element: HashMap<&Permutation, Vec<u32>> = HashMap::new();
    for (i, node) in nodes.iter().enumerate() {
        let min = node
            .min_non_identity()
            .expect("poset nodes are nontrivial");
        by_min_element.entry(min).or_default().push(i as u32);
    }
    let per_node: Vec<Vec<(u32, u32)>> = nodes
        .par_iter()
        .enumerate()
        .map(|(j, big)| {
            let elements = big.elements().expect("poset nodes are materialized");
            let mut found = Vec::new();
            for e in &elements[1..] {
                let Some(candidates) = by_min_element.get(e) else {
                    continue;
                };
                for &i in candidates {
                    if i as usize == j {
                        continue;
                    }
                    let small = &nodes[i as usize];
                    if small.order() >= big.order()
                        || !(big.order() % small.order()).is_zero()
                    {
                        continue;
                    }
                    if small.generators().iter().all(|g| big.contains(g)) {
                        found.push((i, j as u32));
                    }
                }
            }
            found.sort_unstable();
            found
        })
        .collect();
    let mut pairs: Vec<(u32, u32)> = per_node.into_iter().flatten().collect();
    pairs.sort_unstable();
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn arc(g: PermGroup) -> GroupRef {
        Arc::new(g)
    }

    fn group_elements(g: &GroupRef) -> Vec<Permutation> {
        let mut v: Vec<Permutation> = g.elements(&Caps::default()).unwrap().collect();
        v.sort_unstable();
        v
    }

    fn close(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        seen.insert(Permutation::identity(degree));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn is_p_power(mut n: usize, p: usize) -> bool {
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Every nontrivial p-subgroup of `g`, as sorted element lists, by brute
    /// force over one- and two-generated closures. Sufficient for the corpus
    /// here, where every p-subgroup has order at most p^3 and is therefore
    /// generated by two elements.
    fn all_p_subgroups_oracle(g: &GroupRef, p: usize) -> Vec<Vec<Permutation>> {
        let elements = group_elements(g);
        let p_power_elements: Vec<&Permutation> = elements
            .iter()
            .filter(|e| !e.is_identity() && is_p_power(e.order().unwrap() as usize, p))
            .collect();
        let mut out: BTreeSet<Vec<Permutation>> = BTreeSet::new();
        for a in &p_power_elements {
            let cyc = close(g.degree(), &[(*a).clone()]);
            if is_p_power(cyc.len(), p) {
                out.insert(cyc);
            }
            for b in &p_power_elements {
                let sub = close(g.degree(), &[(*a).clone(), (*b).clone()]);
                if is_p_power(sub.len(), p) {
                    out.insert(sub);
                }
            }
        }
        out.into_iter().collect()
    }

    fn conjugate_set(sub: &[Permutation], g: &Permutation, g_inv: &Permutation) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = sub.iter().map(|x| x.conjugate_by(g_inv, g)).collect();
        out.sort_unstable();
        out
    }

    fn contains_all(big: &[Permutation], small: &[Permutation]) -> bool {
        small.iter().all(|x| big.binary_search(x).is_ok())
    }

    /// Radical test straight from the definition: compute N = N_G(sub) by a
    /// linear scan, then take the largest p-subgroup of N that is normal in N
    /// and compare it with sub.
    fn is_radical_oracle(
        g: &GroupRef,
        sub: &[Permutation],
        all_p_subs: &[Vec<Permutation>],
    ) -> bool {
        let elements = group_elements(g);
        let normalizer: Vec<Permutation> = elements
            .iter()
            .filter(|x| conjugate_set(sub, x, &x.inverse()) == sub)
            .cloned()
            .collect();
        let mut core: &[Permutation] = &[];
        for q in all_p_subs {
            if q.len() <= core.len() || !contains_all(&normalizer, q) {
                continue;
            }
            let normal = normalizer
                .iter()
                .all(|n| conjugate_set(q, n, &n.inverse()) == *q);
            if normal {
                core = q;
            }
        }
        core == sub
    }

    fn key_set(poset: &SubgroupPoset) -> BTreeSet<Vec<u8>> {
        poset
            .nodes()
            .iter()
            .map(|n| n.key().unwrap().as_bytes().to_vec())
            .collect()
    }

    fn oracle_key_set(subs: &[Vec<Permutation>]) -> BTreeSet<Vec<u8>> {
        subs.iter()
            .map(|s| SubgroupKey::from_sorted_elements(s).as_bytes().to_vec())
            .collect()
    }

    #[test]
    fn quillen_a5_counts() {
        let g = arc(PermGroup::alternating(5).unwrap());
        let poset = build_quillen(&g, 2, &Caps::default()).unwrap();
        assert_eq!(poset.len(), 20);
        assert_eq!(poset.pairs().len(), 15);
        let order2 = poset.nodes().iter().filter(|n| n.order_u64() == Some(2)).count();
        let order4 = poset.nodes().iter().filter(|n| n.order_u64() == Some(4)).count();
        assert_eq!((order2, order4), (15, 5));
        // Each rank-2 node sits above exactly 3 rank-1 nodes.
        for (j, node) in poset.nodes().iter().enumerate() {
            let below = poset.pairs().iter().filter(|&&(_, b)| b as usize == j).count();
            let expected = if node.order_u64() == Some(4) { 3 } else { 0 };
            assert_eq!(below, expected);
        }
    }

    #[test]
    fn quillen_of_cyclic_prime_is_one_node() {
        let g = arc(PermGroup::cyclic(5).unwrap());
        let poset = build_quillen(&g, 5, &Caps::default()).unwrap();
        assert_eq!(poset.len(), 1);
        assert!(poset.pairs().is_empty());
        assert_eq!(poset.node(0).order_u64(), Some(5));
    }

    #[test]
    fn quillen_s4_matches_brute_force_elementary_abelians() {
        let g = arc(PermGroup::symmetric(4).unwrap());
        let oracle = all_p_subgroups_oracle(&g, 2);
        assert_eq!(oracle.len(), 19, "S4 has 19 nontrivial 2-subgroups");
        let ea: Vec<Vec<Permutation>> = oracle
            .iter()
            .filter(|s| {
                s.iter().all(|x| x.is_identity() || x.order().unwrap() == 2)
                    && s.iter().all(|x| s.iter().all(|y| x.commutes_with(y)))
            })
            .cloned()
            .collect();
        let poset = build_quillen(&g, 2, &Caps::default()).unwrap();
        assert_eq!(poset.len(), 13);
        assert_eq!(key_set(&poset), oracle_key_set(&ea));
        assert!(poset
            .nodes()
            .iter()
            .all(|n| matches!(n.order_u64(), Some(2) | Some(4))));
    }

    #[test]
    fn sp_s4_matches_brute_force() {
        let g = arc(PermGroup::symmetric(4).unwrap());
        let oracle = all_p_subgroups_oracle(&g, 2);
        let poset = build_sp(&g, 2, &Caps::default()).unwrap();
        assert_eq!(poset.len(), 19);
        assert_eq!(key_set(&poset), oracle_key_set(&oracle));
        let quillen = build_quillen(&g, 2, &Caps::default()).unwrap();
        assert!(poset.len() > quillen.len());
    }

    #[test]
    fn sp_c9_is_a_two_chain() {
        let g = arc(PermGroup::cyclic(9).unwrap());
        let poset = build_sp(&g, 3, &Caps::default()).unwrap();
        assert_eq!(poset.len(), 2);
        let orders: BTreeSet<u64> = poset.nodes().iter().map(|n| n.order_u64().unwrap()).collect();
        assert_eq!(orders, BTreeSet::from([3, 9]));
        let &[(a, b)] = poset.pairs() else {
            panic!("expected a single comparable pair");
        };
        assert_eq!(poset.node(a).order_u64(), Some(3));
        assert_eq!(poset.node(b).order_u64(), Some(9));
    }

    #[test]
    fn sp_a5_has_the_same_nodes_as_quillen() {
        let g = arc(PermGroup::alternating(5).unwrap());
        let sp = build_sp(&g, 2, &Caps::default()).unwrap();
        let quillen = build_quillen(&g, 2, &Caps::default()).unwrap();
        assert_eq!(key_set(&sp), key_set(&quillen));
        assert_eq!(sp.pairs(), quillen.pairs());
    }

    #[test]
    fn bouc_a5_is_five_order_four_nodes() {
        let g = arc(PermGroup::alternating(5).unwrap());
        let poset = build_bouc(&g, 2, &Caps::default()).unwrap();
        assert_eq!(poset.len(), 5);
        assert!(poset.pairs().is_empty());
        assert!(poset.nodes().iter().all(|n| n.order_u64() == Some(4)));

        let oracle = all_p_subgroups_oracle(&g, 2);
        assert_eq!(oracle.len(), 20);
        let radical: Vec<Vec<Permutation>> = oracle
            .iter()
            .filter(|s| is_radical_oracle(&g, s, &oracle))
            .cloned()
            .collect();
        assert_eq!(key_set(&poset), oracle_key_set(&radical));
    }

    #[test]
    fn bouc_s4_matches_brute_force() {
        let g = arc(PermGroup::symmetric(4).unwrap());
        let poset = build_bouc(&g, 2, &Caps::default()).unwrap();
        let oracle = all_p_subgroups_oracle(&g, 2);
        let radical: Vec<Vec<Permutation>> = oracle
            .iter()
            .filter(|s| is_radical_oracle(&g, s, &oracle))
            .cloned()
            .collect();
        assert_eq!(key_set(&poset), oracle_key_set(&radical));
        // The normal V4 below the three dihedral Sylows.
        assert_eq!(poset.len(), 4);
        assert_eq!(poset.pairs().len(), 3);
        let orders: Vec<u64> = poset.nodes().iter().map(|n| n.order_u64().unwrap()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 1);
        assert_eq!(orders.iter().filter(|&&o| o == 8).count(), 3);
    }

    #[test]
    fn bouc_of_a_p_group_is_the_whole_group() {
        let g = arc(PermGroup::dihedral(8).unwrap());
        let poset = build_bouc(&g, 2, &Caps::default()).unwrap();
        assert_eq!(poset.len(), 1);
        assert_eq!(poset.node(0).order_u64(), Some(8));
        assert!(poset.pairs().is_empty());
    }

    #[test]
    fn bouc_nodes_lie_in_sp_and_stay_radical() {
        for g in [
            arc(PermGroup::symmetric(4).unwrap()),
            arc(PermGroup::alternating(5).unwrap()),
        ] {
            let caps = Caps::default();
            let bouc = build_bouc(&g, 2, &caps).unwrap();
            let sp = build_sp(&g, 2, &caps).unwrap();
            assert!(key_set(&bouc).is_subset(&key_set(&sp)));
            for node in bouc.nodes() {
                assert!(is_p_radical(&g, node, 2, &caps).unwrap());
            }
        }
    }

    #[test]
    fn truncation_filters_by_order() {
        let g = arc(PermGroup::alternating(5).unwrap());
        let poset = build_quillen(&g, 2, &Caps::default()).unwrap();

        let level0 = truncate(&poset, 0);
        assert_eq!(level0.len(), 15);
        assert!(level0.pairs().is_empty());
        assert_eq!(level0.truncation(), Some(0));
        assert!(level0.nodes().iter().all(|n| n.order_u64() == Some(2)));

        let level1 = truncate(&poset, 1);
        assert_eq!(level1.len(), poset.len());
        assert_eq!(level1.pairs(), poset.pairs());

        let huge = truncate(&poset, 40);
        assert_eq!(huge.len(), poset.len());
    }

    #[test]
    fn truncated_sp_of_s4_restricts_the_relation() {
        let g = arc(PermGroup::symmetric(4).unwrap());
        let sp = build_sp(&g, 2, &Caps::default()).unwrap();
        let cut = truncate(&sp, 1);
        assert_eq!(cut.len(), 16);
        // 3 cyclic C4 nodes above one C2 each, 4 V4 nodes above three C2s each.
        assert_eq!(cut.pairs().len(), 15);
        check_invariants(&cut, &Caps::default()).unwrap();
    }

    #[test]
    fn join_of_points_is_a_chain() {
        let two_chain = poset_join(&AbstractPoset::antichain(1), &AbstractPoset::antichain(1));
        assert_eq!(two_chain.size(), 2);
        assert_eq!(two_chain.pairs(), &[(0, 1)]);
        AbstractPoset::new(2, two_chain.pairs().to_vec()).unwrap();
    }

    #[test]
    fn join_of_antichains_is_complete_bipartite() {
        let x = AbstractPoset::antichain(3);
        let y = AbstractPoset::antichain(4);
        let join = poset_join(&x, &y);
        assert_eq!(join.size(), 7);
        assert_eq!(join.pairs().len(), 12);
        assert!(join.pairs().iter().all(|&(a, b)| a < 3 && b >= 3));
        AbstractPoset::new(join.size(), join.pairs().to_vec()).unwrap();
    }

    #[test]
    fn join_keeps_internal_orders() {
        let chain = AbstractPoset::new(2, vec![(0, 1)]).unwrap();
        let join = poset_join(&chain, &chain);
        assert_eq!(join.size(), 4);
        assert_eq!(join.pairs(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        AbstractPoset::new(join.size(), join.pairs().to_vec()).unwrap();
    }

    #[test]
    fn abstract_poset_rejects_broken_relations() {
        assert!(AbstractPoset::new(2, vec![(0, 0)]).is_err());
        assert!(AbstractPoset::new(2, vec![(0, 1), (1, 0)]).is_err());
        assert!(AbstractPoset::new(3, vec![(0, 1), (1, 2)]).is_err());
        assert!(AbstractPoset::new(1, vec![(0, 1)]).is_err());
        AbstractPoset::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    }

    #[test]
    fn invariant_checks_pass_on_the_corpus() {
        let caps = Caps::default();
        for g in [
            arc(PermGroup::symmetric(4).unwrap()),
            arc(PermGroup::alternating(5).unwrap()),
        ] {
            check_invariants(&build_quillen(&g, 2, &caps).unwrap(), &caps).unwrap();
            check_invariants(&build_sp(&g, 2, &caps).unwrap(), &caps).unwrap();
            check_invariants(&build_bouc(&g, 2, &caps).unwrap(), &caps).unwrap();
        }
        let s5 = arc(PermGroup::symmetric(5).unwrap());
        check_invariants(&build_quillen(&s5, 5, &caps).unwrap(), &caps).unwrap();
    }

    #[test]
    fn bad_primes_are_hard_errors() {
        let g = arc(PermGroup::alternating(5).unwrap());
        let caps = Caps::default();
        assert!(matches!(
            build_quillen(&g, 7, &caps),
            Err(Error::PrimeDoesNotDivide { prime: 7, .. })
        ));
        assert!(matches!(
            build_sp(&g, 7, &caps),
            Err(Error::PrimeDoesNotDivide { prime: 7, .. })
        ));
        assert!(matches!(
            build_bouc(&g, 7, &caps),
            Err(Error::PrimeDoesNotDivide { prime: 7, .. })
        ));
        assert!(matches!(
            build_quillen(&g, 4, &caps),
            Err(Error::NotPrime { value: 4 })
        ));
    }

    #[test]
    fn export_is_deterministic_and_well_formed() {
        let g = arc(PermGroup::symmetric(4).unwrap());
        let caps = Caps::default();
        let poset = build_quillen(&g, 2, &caps).unwrap();
        let json = serde_json::to_string(&poset.export("symmetric:4")).unwrap();

        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["kind"], "quillen");
        assert_eq!(value["prime"], 2);
        assert_eq!(value["group_spec"], "symmetric:4");
        let nodes = value["nodes"].as_array().unwrap();
        assert_eq!(nodes.len(), 13);
        for (i, node) in nodes.iter().enumerate() {
            assert_eq!(node["id"], i as u64);
            for image in node["generator_images"].as_array().unwrap() {
                assert_eq!(image.as_array().unwrap().len(), 4);
            }
        }

        let single_thread = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| {
                let poset = build_quillen(&g, 2, &caps).unwrap();
                serde_json::to_string(&poset.export("symmetric:4")).unwrap()
            });
        assert_eq!(json, single_thread);
    }
}
