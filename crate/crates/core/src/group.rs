//! Permutation groups backed by stabilizer chains.
//!
//! The chain is built by the deterministic Schreier-Sims procedure: base
//! points are the smallest moved points encountered, generators are inserted
//! in list order, and orbits are explored breadth-first with generators in
//! list order. Identical generator lists therefore produce identical chains.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::caps::Caps;
use crate::error::{CapKind, Error};
use crate::perm::Permutation;

struct ChainLevel {
    base: usize,
    /// Strong generators placed at this level. The generating set actually
    /// used at level i is cumulative: everything placed at levels i and
    /// deeper (all of which fix the first i base points).
    placed: Vec<Permutation>,
    /// transversal[p] maps the base point to p; present exactly for orbit points.
    transversal: Vec<Option<Permutation>>,
    /// Orbit in breadth-first discovery order.
    orbit: Vec<usize>,
}

impl ChainLevel {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        ChainLevel {
            base,
            placed: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }
}

pub struct StabilizerChain {
    degree: usize,
    levels: Vec<ChainLevel>,
}

impl StabilizerChain {
    /// Builds the chain for the group generated by `gens`.
    pub fn build(degree: usize, gens: &[Permutation]) -> StabilizerChain {
        StabilizerChain::build_with_base_hint(degree, gens, &[])
    }

    /// Like `build`, but seeds the base with the given points (used to carve
    /// out point stabilizers). Later levels fall back to smallest-moved-point
    /// selection.
    pub fn build_with_base_hint(
        degree: usize,
        gens: &[Permutation],
        hint: &[usize],
    ) -> StabilizerChain {
        let mut chain = StabilizerChain {
            degree,
            levels: hint
                .iter()
                .map(|&b| {
                    assert!(b < degree, "base hint out of range");
                    ChainLevel::new(degree, b)
                })
                .collect(),
        };
        for g in gens {
            assert_eq!(g.degree(), degree, "degree mismatch in chain build");
            chain.insert_generator(g.clone());
        }
        chain
    }

    pub fn new_trivial(degree: usize) -> StabilizerChain {
        StabilizerChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Adds a generator to the group, extending the chain as needed. After
    /// this returns the chain is complete again: every Schreier generator at
    /// every level sifts to the identity.
    pub fn insert_generator(&mut self, g: Permutation) {
        assert_eq!(g.degree(), self.degree);
        let (residue, level) = self.sift_from(&g, 0);
        if residue.is_identity() {
            return;
        }
        self.place(residue, level);
        self.complete_from(level);
    }

    /// Records a sifted residue as a strong generator at `level`, growing the
    /// chain by one level when the residue survived every existing one.
    fn place(&mut self, residue: Permutation, level: usize) {
        if level == self.levels.len() {
            let base = residue
                .smallest_moved_point()
                .expect("non-identity moves a point");
            self.levels.push(ChainLevel::new(self.degree, base));
        }
        self.levels[level].placed.push(residue);
    }

    /// Cumulative generating set at `level`: everything placed there or
    /// deeper, in a fixed order.
    fn level_gens(&self, level: usize) -> Vec<Permutation> {
        self.levels[level..]
            .iter()
            .flat_map(|l| l.placed.iter().cloned())
            .collect()
    }

    fn recompute_orbit(&mut self, level: usize) {
        let gens = self.level_gens(level);
        let lvl = &mut self.levels[level];
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[lvl.base] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![lvl.base];
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for g in &gens {
                let target = g.apply(pt);
                if transversal[target].is_none() {
                    let u = transversal[pt].as_ref().expect("orbit point has a representative");
                    transversal[target] = Some(g.compose(u));
                    orbit.push(target);
                }
            }
        }
        lvl.orbit = orbit;
        lvl.transversal = transversal;
    }

    /// Re-establishes chain completeness starting at `start` and walking back
    /// to the top. Whenever a Schreier generator fails to sift, its residue
    /// is placed and verification resumes at the level it landed on.
    fn complete_from(&mut self, start: usize) {
        let mut level = start as isize;
        while level >= 0 {
            let i = level as usize;
            self.recompute_orbit(i);
            match self.first_unsifted_schreier(i) {
                Some((residue, j)) => {
                    self.place(residue, j);
                    level = j as isize;
                }
                None => level -= 1,
            }
        }
    }

    /// Scans the Schreier generators of `level` in deterministic order and
    /// returns the first whose sift residue is nontrivial, with the level the
    /// residue belongs to.
    fn first_unsifted_schreier(&self, level: usize) -> Option<(Permutation, usize)> {
        let gens = self.level_gens(level);
        let lvl = &self.levels[level];
        for &pt in &lvl.orbit {
            let u = lvl.transversal[pt].as_ref().expect("orbit point has a representative");
            for g in &gens {
                let target = g.apply(pt);
                let u_t = lvl.transversal[target]
                    .as_ref()
                    .expect("orbit is closed under the generators");
                let schreier = u_t.inverse().compose(g).compose(u);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, stuck) = self.sift_from(&schreier, level + 1);
                if !residue.is_identity() {
                    return Some((residue, stuck));
                }
            }
        }
        None
    }

    fn sift_from(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut residue = g.clone();
        for (i, lvl) in self.levels.iter().enumerate().skip(from) {
            if residue.is_identity() {
                return (residue, i);
            }
            let image = residue.apply(lvl.base);
            match &lvl.transversal[image] {
                Some(u) => residue = u.inverse().compose(&residue),
                None => return (residue, i),
            }
        }
        (residue, self.levels.len())
    }

    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::one();
        for lvl in &self.levels {
            ord *= BigUint::from(lvl.orbit.len());
        }
        ord
    }

    /// Strips `g` through the chain; the result is the identity exactly when
    /// `g` is a member.
    pub fn sift(&self, g: &Permutation) -> Permutation {
        self.sift_from(g, 0).0
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "degree mismatch in membership test");
        self.sift(g).is_identity()
    }

    /// Generators of the stabilizer of the first `k` base points: the strong
    /// generators placed at levels >= k.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        self.level_gens(k.min(self.levels.len()))
    }

    /// Streams the chain's group elements; callers are responsible for any
    /// size checks.
    pub(crate) fn stream_elements(&self) -> ElementsIter<'_> {
        ElementsIter::new(self)
    }

    fn sorted_orbits(&self) -> Vec<Vec<usize>> {
        self.levels
            .iter()
            .map(|l| {
                let mut pts = l.orbit.clone();
                pts.sort_unstable();
                pts
            })
            .collect()
    }
}

/// Streams every group element exactly once, as products of transversal
/// representatives taken over sorted orbit points level by level.
pub struct ElementsIter<'a> {
    chain: &'a StabilizerChain,
    points: Vec<Vec<usize>>,
    index: Vec<usize>,
    prefix: Vec<Permutation>,
    done: bool,
}

impl<'a> ElementsIter<'a> {
    fn new(chain: &'a StabilizerChain) -> Self {
        let points = chain.sorted_orbits();
        let index = vec![0; points.len()];
        ElementsIter {
            chain,
            points,
            index,
            prefix: Vec::new(),
            done: false,
        }
    }

    fn rep(&self, level: usize, slot: usize) -> &Permutation {
        let pt = self.points[level][slot];
        self.chain.levels[level].transversal[pt]
            .as_ref()
            .expect("orbit point has a representative")
    }

    fn rebuild_prefix_from(&mut self, level: usize) {
        self.prefix.truncate(level);
        for lvl in level..self.points.len() {
            let rep = self.rep(lvl, self.index[lvl]).clone();
            let next = match self.prefix.last() {
                Some(p) => p.compose(&rep),
                None => rep,
            };
            self.prefix.push(next);
        }
    }
}

impl<'a> Iterator for ElementsIter<'a> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.points.is_empty() {
            self.done = true;
            return Some(Permutation::identity(self.chain.degree));
        }
        if self.prefix.is_empty() {
            self.rebuild_prefix_from(0);
        }
        let current = self.prefix.last().cloned();
        // Advance the mixed-radix counter from the deepest level.
        let mut lvl = self.points.len();
        loop {
            if lvl == 0 {
                self.done = true;
                break;
            }
            lvl -= 1;
            if self.index[lvl] + 1 < self.points[lvl].len() {
                self.index[lvl] += 1;
                for deeper in lvl + 1..self.points.len() {
                    self.index[deeper] = 0;
                }
                self.rebuild_prefix_from(lvl);
                break;
            }
        }
        current
    }
}

/// A finite permutation group: generators plus the stabilizer chain built
/// from them. Immutable after construction.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabilizerChain,
    order: BigUint,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, Error> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let chain = StabilizerChain::build(degree, &generators);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    /// Streams the elements in a deterministic order, each exactly once.
    pub fn elements(&self, caps: &Caps) -> Result<ElementsIter<'_>, Error> {
        if self.order > BigUint::from(caps.max_elements) {
            return Err(Error::cap(CapKind::Elements, caps.max_elements));
        }
        Ok(ElementsIter::new(&self.chain))
    }

    /// Largest power of p dividing the group order.
    pub fn order_p_part(&self, p: u64) -> BigUint {
        let p = BigUint::from(p);
        let mut rest = self.order.clone();
        let mut part = BigUint::one();
        while (&rest % &p).is_zero() {
            rest /= &p;
            part *= &p;
        }
        part
    }

    // Named constructors for the standard families.

    /// Symmetric group on n points.
    pub fn symmetric(n: usize) -> Result<PermGroup, Error> {
        if n == 0 {
            return Err(Error::Invalid("symmetric group needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[1, 2]])?);
        }
        if n >= 3 {
            let full: Vec<usize> = (1..=n).collect();
            gens.push(Permutation::from_cycles(n, &[&full])?);
        }
        PermGroup::from_generators(n, gens)
    }

    /// Alternating group on n points.
    pub fn alternating(n: usize) -> Result<PermGroup, Error> {
        if n == 0 {
            return Err(Error::Invalid("alternating group needs n >= 1".into()));
        }
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Permutation::from_cycles(n, &[&[1, 2, 3]])?);
        }
        if n >= 4 {
            let cycle: Vec<usize> = if n % 2 == 1 {
                (1..=n).collect()
            } else {
                (2..=n).collect()
            };
            gens.push(Permutation::from_cycles(n, &[&cycle])?);
        }
        PermGroup::from_generators(n, gens)
    }

    /// Cyclic group of order n in its regular action.
    pub fn cyclic(n: usize) -> Result<PermGroup, Error> {
        if n == 0 {
            return Err(Error::Invalid("cyclic group needs n >= 1".into()));
        }
        if n == 1 {
            return Ok(PermGroup::trivial(1));
        }
        let full: Vec<usize> = (1..=n).collect();
        let g = Permutation::from_cycles(n, &[&full])?;
        PermGroup::from_generators(n, vec![g])
    }

    /// Dihedral group of order m (m even). For m >= 6 this is the symmetry
    /// group of the (m/2)-gon; the two degenerate orders get disjoint
    /// transpositions.
    pub fn dihedral(order: usize) -> Result<PermGroup, Error> {
        if order < 2 || !order.is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "dihedral order must be even and >= 2, got {order}"
            )));
        }
        match order {
            2 => PermGroup::from_generators(2, vec![Permutation::from_cycles(2, &[&[1, 2]])?]),
            4 => PermGroup::from_generators(
                4,
                vec![
                    Permutation::from_cycles(4, &[&[1, 2]])?,
                    Permutation::from_cycles(4, &[&[3, 4]])?,
                ],
            ),
            _ => {
                let n = order / 2;
                let rotation: Vec<usize> = (1..=n).collect();
                let reflect: Vec<usize> = (1..=n).map(|x| n + 1 - x).collect();
                let rot = Permutation::from_cycles(n, &[&rotation])?;
                let refl = Permutation::from_one_based(&reflect)?;
                PermGroup::from_generators(n, vec![rot, refl])
            }
        }
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup, Error> {
        let degree = a.degree + b.degree;
        let mut gens = Vec::new();
        for g in &a.generators {
            let mut images: Vec<usize> = g.images_one_based();
            images.extend(a.degree + 1..=degree);
            gens.push(Permutation::from_one_based(&images)?);
        }
        for g in &b.generators {
            let mut images: Vec<usize> = (1..=a.degree).collect();
            images.extend(g.images_one_based().iter().map(|&x| x + a.degree));
            gens.push(Permutation::from_one_based(&images)?);
        }
        PermGroup::from_generators(degree, gens)
    }

    /// Wreath product with C2 in its imprimitive action on doubled points:
    /// two copies of the base group plus the block swap.
    pub fn wreath_c2(a: &PermGroup) -> Result<PermGroup, Error> {
        let n = a.degree;
        let degree = 2 * n;
        let mut gens = Vec::new();
        for g in &a.generators {
            let mut images: Vec<usize> = g.images_one_based();
            images.extend(n + 1..=degree);
            gens.push(Permutation::from_one_based(&images)?);
        }
        for g in &a.generators {
            let mut images: Vec<usize> = (1..=n).collect();
            images.extend(g.images_one_based().iter().map(|&x| x + n));
            gens.push(Permutation::from_one_based(&images)?);
        }
        let swap: Vec<usize> = (1..=degree)
            .map(|x| if x <= n { x + n } else { x - n })
            .collect();
        gens.push(Permutation::from_one_based(&swap)?);
        PermGroup::from_generators(degree, gens)
    }
}

/// Parses the plain generator file format: first non-comment line is the
/// degree, every further non-empty line is one generator as n space-separated
/// 1-based images. Lines starting with '#' are ignored.
pub fn parse_generator_file(text: &str) -> Result<PermGroup, Error> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = lineno + 1;
        match degree {
            None => {
                let n: usize = line.parse().map_err(|_| Error::GeneratorFile {
                    line: lineno,
                    reason: format!("expected the degree, found {line:?}"),
                })?;
                if n == 0 || n > u16::MAX as usize + 1 {
                    return Err(Error::GeneratorFile {
                        line: lineno,
                        reason: format!("degree {n} out of range"),
                    });
                }
                degree = Some(n);
            }
            Some(n) => {
                let mut images = Vec::with_capacity(n);
                for tok in line.split_whitespace() {
                    let im: usize = tok.parse().map_err(|_| Error::GeneratorFile {
                        line: lineno,
                        reason: format!("bad image {tok:?}"),
                    })?;
                    images.push(im);
                }
                if images.len() != n {
                    return Err(Error::GeneratorFile {
                        line: lineno,
                        reason: format!("expected {n} images, found {}", images.len()),
                    });
                }
                let g = Permutation::from_one_based(&images).map_err(|e| Error::GeneratorFile {
                    line: lineno,
                    reason: e.to_string(),
                })?;
                gens.push(g);
            }
        }
    }
    match degree {
        Some(n) => PermGroup::from_generators(n, gens),
        None => Err(Error::GeneratorFile {
            line: 0,
            reason: "empty file".into(),
        }),
    }
}

/// Shared handle used by the subgroup and poset layers.
pub type GroupRef = Arc<PermGroup>;

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(*PermGroup::symmetric(4).unwrap().order(), big(24));
        assert_eq!(*PermGroup::symmetric(1).unwrap().order(), big(1));
        assert_eq!(*PermGroup::symmetric(7).unwrap().order(), big(5040));
    }

    #[test]
    fn alternating_orders() {
        assert_eq!(*PermGroup::alternating(5).unwrap().order(), big(60));
        assert_eq!(*PermGroup::alternating(6).unwrap().order(), big(360));
        assert_eq!(*PermGroup::alternating(10).unwrap().order(), big(1_814_400));
    }

    #[test]
    fn cyclic_and_dihedral_orders() {
        assert_eq!(*PermGroup::cyclic(9).unwrap().order(), big(9));
        assert_eq!(*PermGroup::dihedral(2).unwrap().order(), big(2));
        assert_eq!(*PermGroup::dihedral(4).unwrap().order(), big(4));
        assert_eq!(*PermGroup::dihedral(8).unwrap().order(), big(8));
        assert_eq!(*PermGroup::dihedral(12).unwrap().order(), big(12));
        assert!(PermGroup::dihedral(7).is_err());
    }

    #[test]
    fn membership_by_sifting() {
        let c5 = PermGroup::cyclic(5).unwrap();
        let three_cycle = Permutation::from_cycles(5, &[&[1, 2, 3]]).unwrap();
        assert!(!c5.contains(&three_cycle));

        let a4 = PermGroup::alternating(4).unwrap();
        assert!(!a4.contains(&Permutation::from_cycles(4, &[&[1, 2]]).unwrap()));
        assert!(a4.contains(&Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap()));
        assert!(a4.contains(&Permutation::identity(4)));
    }

    #[test]
    fn elements_stream_counts_and_involutions() {
        let caps = Caps::default();
        let a5 = PermGroup::alternating(5).unwrap();
        let elements: Vec<_> = a5.elements(&caps).unwrap().collect();
        assert_eq!(elements.len(), 60);
        let involutions = elements
            .iter()
            .filter(|g| g.order().unwrap() == 2)
            .count();
        assert_eq!(involutions, 15);

        let c3 = PermGroup::cyclic(3).unwrap();
        assert_eq!(c3.elements(&caps).unwrap().count(), 3);
    }

    #[test]
    fn elements_stream_has_no_duplicates() {
        let caps = Caps::default();
        let s5 = PermGroup::symmetric(5).unwrap();
        let elements: Vec<_> = s5.elements(&caps).unwrap().collect();
        assert_eq!(elements.len(), 120);
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 120);
    }

    #[test]
    fn element_cap_is_enforced() {
        let caps = Caps {
            max_elements: 100,
            ..Caps::default()
        };
        let s5 = PermGroup::symmetric(5).unwrap();
        match s5.elements(&caps) {
            Err(err) => assert!(err.is_cap(), "expected a cap error, got {err}"),
            Ok(_) => panic!("expected the element cap to trip"),
        }
    }

    #[test]
    fn order_matches_element_count_on_corpus() {
        let caps = Caps::default();
        let corpus: Vec<PermGroup> = vec![
            PermGroup::symmetric(3).unwrap(),
            PermGroup::symmetric(4).unwrap(),
            PermGroup::symmetric(5).unwrap(),
            PermGroup::symmetric(6).unwrap(),
            PermGroup::alternating(4).unwrap(),
            PermGroup::alternating(5).unwrap(),
            PermGroup::alternating(6).unwrap(),
            PermGroup::cyclic(9).unwrap(),
            PermGroup::dihedral(8).unwrap(),
            PermGroup::dihedral(12).unwrap(),
            PermGroup::wreath_c2(&PermGroup::alternating(5).unwrap()).unwrap(),
        ];
        for g in &corpus {
            let count = g.elements(&caps).unwrap().count();
            assert_eq!(BigUint::from(count), *g.order());
        }
    }

    #[test]
    fn contains_agrees_with_linear_search() {
        let caps = Caps::default();
        let groups = [
            PermGroup::alternating(5).unwrap(),
            PermGroup::dihedral(12).unwrap(),
            PermGroup::symmetric(4).unwrap(),
        ];
        for g in &groups {
            let elements: Vec<_> = g.elements(&caps).unwrap().collect();
            let all: Vec<_> = PermGroup::symmetric(g.degree())
                .unwrap()
                .elements(&caps)
                .unwrap()
                .collect();
            for candidate in &all {
                let linear = elements.contains(candidate);
                assert_eq!(g.contains(candidate), linear, "disagreement on {candidate}");
            }
        }
    }

    #[test]
    fn chain_is_deterministic() {
        let gens = vec![
            Permutation::from_cycles(6, &[&[1, 2, 3, 4, 5, 6]]).unwrap(),
            Permutation::from_cycles(6, &[&[1, 2]]).unwrap(),
        ];
        let a = StabilizerChain::build(6, &gens);
        let b = StabilizerChain::build(6, &gens);
        assert_eq!(a.base(), b.base());
        assert_eq!(a.order(), b.order());
    }

    #[test]
    fn order_is_invariant_under_base_reordering() {
        let gens = vec![
            Permutation::from_cycles(7, &[&[1, 2, 3, 4, 5, 6, 7]]).unwrap(),
            Permutation::from_cycles(7, &[&[1, 2, 3]]).unwrap(),
        ];
        let plain = StabilizerChain::build(7, &gens);
        for hint in [&[3usize, 0][..], &[6, 5, 4][..], &[0, 1, 2, 3][..]] {
            let hinted = StabilizerChain::build_with_base_hint(7, &gens, hint);
            assert_eq!(plain.order(), hinted.order());
        }
    }

    #[test]
    fn direct_product_and_wreath_shapes() {
        let a5 = PermGroup::alternating(5).unwrap();
        let prod = PermGroup::direct_product(&a5, &a5).unwrap();
        assert_eq!(prod.degree(), 10);
        assert_eq!(*prod.order(), big(3600));

        let wr = PermGroup::wreath_c2(&a5).unwrap();
        assert_eq!(wr.degree(), 10);
        assert_eq!(*wr.order(), big(7200));
    }

    #[test]
    fn generator_file_round_trip() {
        let text = "# a comment\n4\n2 1 3 4\n\n2 3 4 1\n";
        let g = parse_generator_file(text).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(*g.order(), big(24));

        assert!(parse_generator_file("3\n1 2\n").is_err());
        assert!(parse_generator_file("").is_err());
        assert!(parse_generator_file("3\n1 1 2\n").is_err());
    }

    #[test]
    fn stabilizer_generators_fix_base_prefix() {
        let m = PermGroup::symmetric(6).unwrap();
        let chain = StabilizerChain::build_with_base_hint(6, m.generators(), &[0]);
        let stab = chain.stabilizer_generators(1);
        assert!(!stab.is_empty());
        for g in &stab {
            assert_eq!(g.apply(0), 0);
        }
        let sub = PermGroup::from_generators(6, stab).unwrap();
        assert_eq!(*sub.order(), big(120));
    }
}
