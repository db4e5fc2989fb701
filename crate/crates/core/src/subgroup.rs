//! Subgroup machinery: canonical keys, Sylow subgroups, normalizers, p-cores,
//! conjugacy deduplication and expansion, and full subgroup enumeration
//! inside p-groups.
//!
//! A subgroup of order up to `Caps::max_subgroup_elements` carries its full
//! sorted element list and a canonical byte key; key equality is therefore
//! exact subgroup equality. Larger subgroups fall back to a stabilizer chain
//! and have no key.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::caps::Caps;
use crate::error::{CapKind, Error};
use crate::group::{GroupRef, PermGroup, StabilizerChain};
use crate::orbit::orbit_stabilizer;
use crate::perm::Permutation;

/// Canonical fingerprint of a subgroup: the concatenation of the encoded
/// image tables of all elements, in sorted order. Two subgroups of the same
/// parent are equal exactly when their keys are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupKey(Vec<u8>);

impl SubgroupKey {
    pub(crate) fn from_sorted_elements(elements: &[Permutation]) -> SubgroupKey {
        let degree = elements.first().map_or(0, |e| e.degree());
        let mut buf = Vec::with_capacity(elements.len() * degree * 2);
        for e in elements {
            e.encode_into(&mut buf);
        }
        SubgroupKey(buf)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Debug for SubgroupKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubgroupKey({} bytes)", self.0.len())
    }
}

/// A subgroup of a fixed parent permutation group.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    generators: Vec<Permutation>,
    /// Sorted element list; present exactly when the order fits the cap.
    elements: Option<Vec<Permutation>>,
    order: BigUint,
    key: Option<SubgroupKey>,
    /// Membership backend for subgroups too large to materialize.
    chain: Option<Arc<StabilizerChain>>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order.to_string())
            .field("generators", &self.generators)
            .finish()
    }
}

impl Subgroup {
    /// Closes the generators into a full element list, falling back to a
    /// stabilizer chain when the closure exceeds the materialization cap.
    pub fn from_generators(
        parent: GroupRef,
        generators: Vec<Permutation>,
        caps: &Caps,
    ) -> Result<Subgroup, Error> {
        let degree = parent.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        match close_generators(degree, &generators, caps.max_subgroup_elements) {
            Some(elements) => Ok(Subgroup::from_sorted_elements(parent, elements, generators)),
            None => {
                let chain = StabilizerChain::build(degree, &generators);
                let order = chain.order();
                Ok(Subgroup {
                    parent,
                    generators,
                    elements: None,
                    order,
                    key: None,
                    chain: Some(Arc::new(chain)),
                })
            }
        }
    }

    /// Wraps an already-closed, sorted element list. The caller guarantees
    /// closure; the identity must be present.
    fn from_sorted_elements(
        parent: GroupRef,
        elements: Vec<Permutation>,
        generators: Vec<Permutation>,
    ) -> Subgroup {
        debug_assert!(elements.first().is_some_and(|e| e.is_identity()));
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let order = BigUint::from(elements.len());
        let key = SubgroupKey::from_sorted_elements(&elements);
        Subgroup {
            parent,
            generators,
            elements: Some(elements),
            order,
            key: Some(key),
            chain: None,
        }
    }

    /// Builds a subgroup from an explicit element set (it must be closed
    /// under the group operations). Generators are chosen greedily.
    pub fn from_elements(parent: GroupRef, mut elements: Vec<Permutation>) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let generators = generating_subset(parent.degree(), &elements);
        Subgroup::from_sorted_elements(parent, elements, generators)
    }

    pub fn trivial(parent: GroupRef) -> Subgroup {
        let id = Permutation::identity(parent.degree());
        Subgroup::from_sorted_elements(parent, vec![id], Vec::new())
    }

    /// The parent group viewed as a subgroup of itself.
    pub fn whole_group(parent: GroupRef, caps: &Caps) -> Result<Subgroup, Error> {
        let gens = parent.generators().to_vec();
        Subgroup::from_generators(parent, gens, caps)
    }

    fn from_stabilizer(
        parent: GroupRef,
        generators: Vec<Permutation>,
        chain: StabilizerChain,
        caps: &Caps,
    ) -> Subgroup {
        let order = chain.order();
        if order <= BigUint::from(caps.max_subgroup_elements) {
            let mut elements: Vec<Permutation> = chain.stream_elements().collect();
            elements.sort_unstable();
            Subgroup::from_sorted_elements(parent, elements, generators)
        } else {
            Subgroup {
                parent,
                generators,
                elements: None,
                order,
                key: None,
                chain: Some(Arc::new(chain)),
            }
        }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn degree(&self) -> usize {
        self.parent.degree()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Sorted element list, present when the subgroup is small enough.
    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    /// Canonical key; present exactly when the elements are materialized.
    pub fn key(&self) -> Option<&SubgroupKey> {
        self.key.as_ref()
    }

    /// Smallest non-identity element; the sort order puts the identity
    /// first, so this is `elements[1]`.
    pub fn min_non_identity(&self) -> Option<&Permutation> {
        self.elements.as_ref().and_then(|e| e.get(1))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        match (&self.elements, &self.chain) {
            (Some(elements), _) => elements.binary_search(g).is_ok(),
            (None, Some(chain)) => chain.contains(g),
            (None, None) => unreachable!("subgroup without elements or chain"),
        }
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// True when every generator has order `p` and the generators commute
    /// pairwise; for a finite group that is exactly "abelian of exponent p".
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        for (i, a) in self.generators.iter().enumerate() {
            if a.is_identity() {
                continue;
            }
            match a.order() {
                Ok(o) if o == u128::from(p) => {}
                _ => return false,
            }
            for b in &self.generators[i + 1..] {
                if !a.commutes_with(b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        let p = BigUint::from(p);
        let mut rest = self.order.clone();
        while (&rest % &p) == BigUint::from(0u32) {
            rest /= &p;
        }
        rest.is_one()
    }

    /// The conjugate g·H·g⁻¹ (callers pass the inverse they already hold).
    pub fn conjugated(&self, g: &Permutation, g_inv: &Permutation) -> Subgroup {
        let generators: Vec<Permutation> = self
            .generators
            .iter()
            .map(|h| h.conjugate_by(g_inv, g))
            .collect();
        match &self.elements {
            Some(elements) => {
                let mut mapped: Vec<Permutation> =
                    elements.iter().map(|h| h.conjugate_by(g_inv, g)).collect();
                mapped.sort_unstable();
                Subgroup::from_sorted_elements(self.parent.clone(), mapped, generators)
            }
            None => {
                let chain = StabilizerChain::build(self.degree(), &generators);
                let order = chain.order();
                Subgroup {
                    parent: self.parent.clone(),
                    generators,
                    elements: None,
                    order,
                    key: None,
                    chain: Some(Arc::new(chain)),
                }
            }
        }
    }

    /// Rebuilds the subgroup as a standalone group (fresh stabilizer chain).
    pub fn to_group(&self) -> Result<PermGroup, Error> {
        PermGroup::from_generators(self.degree(), self.generators.clone())
    }
}

/// Breadth-first closure of a generating set; `None` when the closure
/// exceeds `cap` elements. The result is sorted.
fn close_generators(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Option<Vec<Permutation>> {
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(w) = queue.pop_front() {
        for g in generators {
            let next = w.compose(g);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Some(elements)
}

/// Greedy generating subset of a closed element list: walk the sorted
/// elements and keep each one that enlarges the group generated so far.
pub fn generating_subset(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut chain = StabilizerChain::new_trivial(degree);
    let mut gens = Vec::new();
    for e in elements {
        if e.is_identity() || chain.contains(e) {
            continue;
        }
        chain.insert_generator(e.clone());
        gens.push(e.clone());
    }
    gens
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    // These witnesses decide primality for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Applies `pred` to the group's elements in a deterministic order until it
/// produces a value. Groups above the element cap are walked breadth-first
/// through generator words instead of through the chain stream.
fn find_element<F>(group: &PermGroup, caps: &Caps, mut pred: F) -> Result<Option<Permutation>, Error>
where
    F: FnMut(&Permutation) -> Result<Option<Permutation>, Error>,
{
    if *group.order() <= BigUint::from(caps.max_elements) {
        for e in group.elements(caps)? {
            if let Some(found) = pred(&e)? {
                return Ok(Some(found));
            }
        }
        return Ok(None);
    }
    let identity = Permutation::identity(group.degree());
    if let Some(found) = pred(&identity)? {
        return Ok(Some(found));
    }
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = VecDeque::from([identity]);
    while let Some(w) = queue.pop_front() {
        for g in group.generators() {
            let next = w.compose(g);
            if seen.contains(&next) {
                continue;
            }
            if let Some(found) = pred(&next)? {
                return Ok(Some(found));
            }
            if seen.len() as u64 >= caps.max_elements {
                return Err(Error::cap(CapKind::Elements, caps.max_elements));
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(None)
}

fn p_adic_valuation(mut n: u128, p: u64) -> u32 {
    let p = u128::from(p);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// A Sylow p-subgroup of `parent`: start from one element of order p, then
/// repeatedly adjoin a p-element of the normalizer that falls outside the
/// current subgroup. Each step multiplies the order by at least p, and the
/// normalizer always supplies such an element below full p-part.
pub fn sylow(parent: &GroupRef, p: u64, caps: &Caps) -> Result<Subgroup, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    let p_part = parent.order_p_part(p);
    if p_part.is_one() {
        return Err(Error::PrimeDoesNotDivide {
            prime: p,
            order: parent.order().to_string(),
        });
    }
    let seed = find_element(parent, caps, |e| {
        let ord = e.order()?;
        if ord % u128::from(p) == 0 {
            Ok(Some(e.power(ord / u128::from(p))))
        } else {
            Ok(None)
        }
    })?
    .expect("a group whose order p divides has an element of order p");

    let mut current = Subgroup::from_generators(parent.clone(), vec![seed], caps)?;
    while *current.order() < p_part {
        let normalizer = normalizer(parent, &current, caps)?;
        let normalizer_group = normalizer.to_group()?;
        let extension = find_element(&normalizer_group, caps, |e| {
            let ord = e.order()?;
            let v = p_adic_valuation(ord, p);
            if v == 0 {
                return Ok(None);
            }
            let p_elt = e.power(ord / u128::from(p).pow(v));
            if current.contains(&p_elt) {
                Ok(None)
            } else {
                Ok(Some(p_elt))
            }
        })?
        .expect("the normalizer of a non-Sylow p-subgroup has a p-element outside it");
        let mut gens = current.generators().to_vec();
        gens.push(extension);
        current = Subgroup::from_generators(parent.clone(), gens, caps)?;
    }
    debug_assert_eq!(*current.order(), p_part);
    Ok(current)
}

fn conjugate_sorted(
    elements: &[Permutation],
    g: &Permutation,
    g_inv: &Permutation,
) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = elements.iter().map(|h| h.conjugate_by(g_inv, g)).collect();
    out.sort_unstable();
    out
}

/// The normalizer N_G(H), computed from the conjugation orbit of H: the
/// Schreier generators of the orbit stabilizer generate N.
pub fn normalizer(parent: &GroupRef, h: &Subgroup, caps: &Caps) -> Result<Subgroup, Error> {
    if h.is_trivial() {
        return Subgroup::whole_group(parent.clone(), caps);
    }
    let elements = h
        .elements()
        .ok_or_else(|| Error::Invalid("normalizer needs a materialized subgroup".into()))?
        .to_vec();
    debug_assert!(h.generators().iter().all(|g| parent.contains(g)));
    let gens = parent.generators().to_vec();
    let inverses: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
    let orbit = orbit_stabilizer(
        parent.degree(),
        parent.generators(),
        elements,
        move |gi, items: &Vec<Permutation>| conjugate_sorted(items, &gens[gi], &inverses[gi]),
        |items| SubgroupKey::from_sorted_elements(items),
        caps.max_orbit,
    )?;
    let result = Subgroup::from_stabilizer(
        parent.clone(),
        orbit.stabilizer_gens,
        orbit.stabilizer_chain,
        caps,
    );
    // Orbit-stabilizer identity, asserted on every call.
    assert_eq!(
        BigUint::from(orbit.items.len()) * result.order(),
        *parent.order(),
        "normalizer orbit-stabilizer identity failed"
    );
    Ok(result)
}

/// Walks the conjugation orbit of a Sylow subgroup, intersecting element
/// sets as it goes. `floor` is a known lower bound on the final
/// intersection's size: reaching it stops the walk early.
fn intersect_sylow_conjugates(
    group: &PermGroup,
    sylow_elements: &[Permutation],
    floor: Option<usize>,
    caps: &Caps,
) -> Result<Vec<Permutation>, Error> {
    let mut intersection = sylow_elements.to_vec();
    let gens = group.generators();
    let inverses: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
    let mut seen: HashSet<SubgroupKey> = HashSet::new();
    seen.insert(SubgroupKey::from_sorted_elements(sylow_elements));
    let mut queue = VecDeque::from([sylow_elements.to_vec()]);
    let done = |current: &[Permutation]| match floor {
        Some(f) => current.len() == f,
        None => current.len() == 1,
    };
    if done(&intersection) {
        return Ok(intersection);
    }
    while let Some(items) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let conj = conjugate_sorted(&items, g, &inverses[gi]);
            let key = SubgroupKey::from_sorted_elements(&conj);
            if seen.contains(&key) {
                continue;
            }
            if seen.len() >= caps.max_orbit {
                return Err(Error::cap(CapKind::Orbit, caps.max_orbit as u64));
            }
            intersection = intersect_sorted(&intersection, &conj);
            if done(&intersection) {
                return Ok(intersection);
            }
            seen.insert(key);
            queue.push_back(conj);
        }
    }
    Ok(intersection)
}

fn intersect_sorted(a: &[Permutation], b: &[Permutation]) -> Vec<Permutation> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// O_p(G), the largest normal p-subgroup: the intersection of the full
/// conjugation orbit of one Sylow p-subgroup.
pub fn p_core(parent: &GroupRef, p: u64, caps: &Caps) -> Result<Subgroup, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    let p_part = parent.order_p_part(p);
    if p_part.is_one() {
        return Ok(Subgroup::trivial(parent.clone()));
    }
    if p_part == *parent.order() {
        return Subgroup::whole_group(parent.clone(), caps);
    }
    let s = sylow(parent, p, caps)?;
    let elements = s
        .elements()
        .ok_or_else(|| Error::Invalid("p-core needs a materialized Sylow subgroup".into()))?;
    let intersection = intersect_sylow_conjugates(parent, elements, None, caps)?;
    Ok(Subgroup::from_elements(parent.clone(), intersection))
}

/// Whether l = O_p(N_G(l)). Since l is always contained in O_p(N), the
/// Sylow-conjugate intersection inside N can stop as soon as it shrinks to
/// |l|; if the p-part of |N| already equals |l|, l is the normal Sylow of N
/// and no walk is needed.
pub fn is_p_radical(parent: &GroupRef, l: &Subgroup, p: u64, caps: &Caps) -> Result<bool, Error> {
    debug_assert!(l.is_p_group(p) && !l.is_trivial());
    let l_order = l
        .order_u64()
        .ok_or_else(|| Error::Invalid("radical check needs a small p-subgroup".into()))? as usize;
    let n = normalizer(parent, l, caps)?;
    let n_group = Arc::new(n.to_group()?);
    let p_part = n_group.order_p_part(p);
    if p_part == *l.order() {
        return Ok(true);
    }
    let s = sylow(&n_group, p, caps)?;
    let s_elements = s
        .elements()
        .ok_or_else(|| Error::Invalid("radical check needs a materialized Sylow subgroup".into()))?;
    debug_assert!(l.generators().iter().all(|g| s.contains(g)));
    let intersection = intersect_sylow_conjugates(&n_group, s_elements, Some(l_order), caps)?;
    debug_assert!(l.generators().iter().all(|g| intersection.binary_search(g).is_ok()));
    Ok(intersection.len() == l_order)
}

/// Every non-trivial subgroup of a p-group, each exactly once.
///
/// Layered construction: the order-p subgroups come from the order-p
/// elements, and every subgroup of order p^(k+1) is M·⟨g⟩ for some already
/// known M of order p^k and some g in N_S(M) − M with g^p in M (take M
/// maximal in the target: it is normal there, and any g outside it works).
pub fn all_subgroups_of_p_group(s: &Subgroup, caps: &Caps) -> Result<Vec<Subgroup>, Error> {
    if s.is_trivial() {
        return Ok(Vec::new());
    }
    let order = s
        .order_u64()
        .filter(|&o| o <= caps.max_pgroup_order)
        .ok_or(Error::cap(CapKind::PGroupOrder, caps.max_pgroup_order))?;
    let elements = s
        .elements()
        .ok_or_else(|| Error::Invalid("p-group enumeration needs materialized elements".into()))?;
    let p = smallest_prime_factor(order);
    if !s.is_p_group(p) {
        return Err(Error::Invalid(format!(
            "subgroup of order {order} is not a p-group"
        )));
    }
    let element_inverses: Vec<Permutation> = elements.iter().map(|e| e.inverse()).collect();

    let mut all: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<SubgroupKey> = HashSet::new();
    let mut layer: Vec<Subgroup> = Vec::new();

    // Rank the bottom layer: cyclic subgroups of order p.
    for x in elements {
        if x.is_identity() || x.order()? != u128::from(p) {
            continue;
        }
        let mut cyc: Vec<Permutation> = (0..p).map(|i| x.power(u128::from(i))).collect();
        cyc.sort_unstable();
        let sub =
            Subgroup::from_sorted_elements(s.parent().clone(), cyc, vec![x.clone()]);
        let key = sub.key().expect("materialized").clone();
        if seen.insert(key) {
            layer.push(sub);
        }
    }

    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next: Vec<Subgroup> = Vec::new();
        for m in &layer {
            let m_elements = m.elements().expect("materialized");
            if m_elements.len() as u64 == order {
                continue;
            }
            for (g, g_inv) in elements.iter().zip(&element_inverses) {
                if m_elements.binary_search(g).is_ok() {
                    continue;
                }
                let normalizes = m
                    .generators()
                    .iter()
                    .all(|h| m_elements.binary_search(&h.conjugate_by(g, g_inv)).is_ok());
                if !normalizes {
                    continue;
                }
                if m_elements.binary_search(&g.power(u128::from(p))).is_err() {
                    continue;
                }
                let g_powers: Vec<Permutation> =
                    (0..p).map(|i| g.power(u128::from(i))).collect();
                let mut extended = Vec::with_capacity(m_elements.len() * p as usize);
                for e in m_elements {
                    for gp in &g_powers {
                        extended.push(e.compose(gp));
                    }
                }
                extended.sort_unstable();
                extended.dedup();
                debug_assert_eq!(extended.len(), m_elements.len() * p as usize);
                let mut gens = m.generators().to_vec();
                gens.push(g.clone());
                let sub = Subgroup::from_sorted_elements(s.parent().clone(), extended, gens);
                let key = sub.key().expect("materialized").clone();
                if seen.insert(key) {
                    next.push(sub);
                }
            }
        }
        layer = next;
    }
    Ok(all)
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

/// Every non-trivial elementary abelian p-subgroup of the parent group.
///
/// Rank 1 comes from the elements of order p; each higher rank extends a
/// known subgroup by a commuting order-p element outside it.
pub fn elementary_abelian_subgroups(
    parent: &GroupRef,
    p: u64,
    caps: &Caps,
) -> Result<Vec<Subgroup>, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    if parent.order_p_part(p).is_one() {
        return Ok(Vec::new());
    }
    let mut order_p: Vec<Permutation> = Vec::new();
    find_element(parent, caps, |e| {
        if !e.is_identity() && e.order()? == u128::from(p) {
            order_p.push(e.clone());
        }
        Ok(None::<Permutation>)
    })?;

    let mut all: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<SubgroupKey> = HashSet::new();
    let mut layer: Vec<Subgroup> = Vec::new();
    for x in &order_p {
        let mut cyc: Vec<Permutation> = (0..p).map(|i| x.power(u128::from(i))).collect();
        cyc.sort_unstable();
        let sub = Subgroup::from_sorted_elements(parent.clone(), cyc, vec![x.clone()]);
        let key = sub.key().expect("materialized").clone();
        if seen.insert(key) {
            layer.push(sub);
        }
    }

    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        let mut next: Vec<Subgroup> = Vec::new();
        for a in &layer {
            let a_elements = a.elements().expect("materialized");
            for y in &order_p {
                if a_elements.binary_search(y).is_ok() {
                    continue;
                }
                if !a.generators().iter().all(|g| g.commutes_with(y)) {
                    continue;
                }
                let y_powers: Vec<Permutation> =
                    (0..p).map(|i| y.power(u128::from(i))).collect();
                let mut extended = Vec::with_capacity(a_elements.len() * p as usize);
                for e in a_elements {
                    for yp in &y_powers {
                        extended.push(e.compose(yp));
                    }
                }
                extended.sort_unstable();
                debug_assert_eq!(extended.len(), a_elements.len() * p as usize);
                let mut gens = a.generators().to_vec();
                gens.push(y.clone());
                let sub = Subgroup::from_sorted_elements(parent.clone(), extended, gens);
                let key = sub.key().expect("materialized").clone();
                if seen.insert(key) {
                    next.push(sub);
                }
            }
        }
        layer = next;
    }
    Ok(all)
}

/// One representative per conjugacy class, each the first class member seen
/// in input order. Inputs must carry keys.
pub fn dedupe_by_conjugacy(
    parent: &GroupRef,
    subs: &[Subgroup],
    caps: &Caps,
) -> Result<Vec<Subgroup>, Error> {
    let mut input_index: HashMap<SubgroupKey, Vec<usize>> = HashMap::new();
    for (i, sub) in subs.iter().enumerate() {
        let key = sub
            .key()
            .ok_or_else(|| Error::Invalid("conjugacy dedupe needs materialized subgroups".into()))?
            .clone();
        input_index.entry(key).or_default().push(i);
    }
    let gens = parent.generators().to_vec();
    let inverses: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();

    let mut assigned = vec![false; subs.len()];
    let mut reps: Vec<Subgroup> = Vec::new();
    for i in 0..subs.len() {
        if assigned[i] {
            continue;
        }
        // Walk the conjugation orbit, marking any input subgroups it hits.
        // Only the keys are retained; the element lists are transient.
        let seed = subs[i].elements().expect("checked above").to_vec();
        let seed_key = SubgroupKey::from_sorted_elements(&seed);
        if let Some(hits) = input_index.get(&seed_key) {
            for &j in hits {
                assigned[j] = true;
            }
        }
        let mut seen: HashSet<SubgroupKey> = HashSet::new();
        seen.insert(seed_key);
        let mut queue = VecDeque::from([seed]);
        while let Some(items) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let conj = conjugate_sorted(&items, g, &inverses[gi]);
                let key = SubgroupKey::from_sorted_elements(&conj);
                if seen.contains(&key) {
                    continue;
                }
                if seen.len() >= caps.max_orbit {
                    return Err(Error::cap(CapKind::Orbit, caps.max_orbit as u64));
                }
                if let Some(hits) = input_index.get(&key) {
                    for &j in hits {
                        assigned[j] = true;
                    }
                }
                seen.insert(key);
                queue.push_back(conj);
            }
        }
        reps.push(subs[i].clone());
    }
    Ok(reps)
}

/// The full conjugation orbit of `rep`, in deterministic breadth-first
/// order starting at `rep` itself.
pub fn expand_conjugates(
    parent: &GroupRef,
    rep: &Subgroup,
    caps: &Caps,
) -> Result<Vec<Subgroup>, Error> {
    let elements = rep
        .elements()
        .ok_or_else(|| Error::Invalid("conjugate expansion needs a materialized subgroup".into()))?
        .to_vec();
    let gens = parent.generators().to_vec();
    let inverses: Vec<Permutation> = gens.iter().map(|g| g.inverse()).collect();
    let orbit = orbit_stabilizer(
        parent.degree(),
        parent.generators(),
        elements,
        move |gi, items: &Vec<Permutation>| conjugate_sorted(items, &gens[gi], &inverses[gi]),
        |items| SubgroupKey::from_sorted_elements(items),
        caps.max_orbit,
    )?;
    // Orbit-stabilizer identity: |orbit| · |N_G(rep)| = |G|.
    assert_eq!(
        BigUint::from(orbit.items.len()) * orbit.stabilizer_chain.order(),
        *parent.order(),
        "conjugate expansion orbit-stabilizer identity failed"
    );
    let out = orbit
        .items
        .into_iter()
        .zip(orbit.reps.iter())
        .map(|(items, path)| {
            let path_inv = path.inverse();
            let generators: Vec<Permutation> = rep
                .generators()
                .iter()
                .map(|g| g.conjugate_by(&path_inv, path))
                .collect();
            Subgroup::from_sorted_elements(parent.clone(), items, generators)
        })
        .collect();
    Ok(out)
}
