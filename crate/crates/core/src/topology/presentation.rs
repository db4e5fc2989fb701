//! Finitely presented groups. Words are sequences of nonzero signed
//! generator indices (1-based; negative means inverse). Simplification is a
//! pinned, deterministic Tietze loop so that reported statistics are
//! reproducible run to run.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use num_bigint::BigInt;

use crate::caps::Caps;
use crate::error::Error;
use crate::topology::snf::{smith_normal_form, SparseIntMatrix};

/// Relators longer than this are never used to eliminate a generator; they
/// still receive substitutions. Guards against runaway word growth.
pub const DEFAULT_TIETZE_LIMIT: usize = 10_000;

/// A group presentation. Every stored relator is freely and cyclically
/// reduced and nonempty; generator indices run 1..=generator_count inside
/// words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generator_count: usize,
    relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn new(
        generator_count: usize,
        relators: Vec<Vec<i32>>,
    ) -> Result<GroupPresentation, Error> {
        if generator_count > i32::MAX as usize {
            return Err(Error::Invalid("too many generators".into()));
        }
        let mut normalized = Vec::with_capacity(relators.len());
        for word in relators {
            for &letter in &word {
                if letter == 0 || letter.unsigned_abs() as usize > generator_count {
                    return Err(Error::Invalid(format!(
                        "relator letter {letter} outside 1..={generator_count}"
                    )));
                }
            }
            let reduced = cyclic_reduce(free_reduce(&word));
            if !reduced.is_empty() {
                normalized.push(reduced);
            }
        }
        Ok(GroupPresentation {
            generator_count,
            relators: normalized,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }

    pub fn total_relator_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }
}

/// Outcome of certifying a simplified presentation. Never claims
/// non-freeness: `Presented` only means no certificate was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Trivial,
    Free(usize),
    Presented,
}

/// Zero generators certify the trivial group; zero relators certify a free
/// group of the full rank. Anything else stays `Presented`.
pub fn certify(p: &GroupPresentation) -> Certification {
    if p.generator_count == 0 {
        Certification::Trivial
    } else if p.relators.is_empty() {
        Certification::Free(p.generator_count)
    } else {
        Certification::Presented
    }
}

pub fn tietze_simplify(p: &GroupPresentation) -> GroupPresentation {
    tietze_simplify_with_limit(p, DEFAULT_TIETZE_LIMIT)
}

/// Deterministic simplification loop. Until a fixpoint:
/// relators are kept freely and cyclically reduced; empty relators and
/// duplicates (up to rotation and inversion) are dropped; any generator
/// occurring exactly once in a relator of length <= `limit` is eliminated by
/// solving that relator for it. Among eligible (relator, generator) pairs the
/// shortest relator wins, then the lowest generator index, then the lowest
/// relator index. Surviving generators are renumbered in ascending order and
/// relators are sorted by (length, lexicographic).
pub fn tietze_simplify_with_limit(p: &GroupPresentation, limit: usize) -> GroupPresentation {
    let mut state = TietzeState::new(p, limit);
    while let Some(Reverse((_, gen, idx, version))) = state.heap.pop() {
        if state.words[idx].is_none() || state.versions[idx] != version {
            continue;
        }
        state.eliminate(gen, idx);
    }
    state.finish(p.generator_count)
}

struct TietzeState {
    limit: usize,
    words: Vec<Option<Vec<i32>>>,
    versions: Vec<u64>,
    /// canonical word -> index of the live relator holding it
    canon: HashMap<Vec<i32>, usize>,
    /// generator -> indices of live relators containing it
    occurrence: Vec<BTreeSet<usize>>,
    /// (relator length, generator, relator index, version at push time)
    heap: BinaryHeap<Reverse<(usize, u32, usize, u64)>>,
    alive: Vec<bool>,
}

impl TietzeState {
    fn new(p: &GroupPresentation, limit: usize) -> TietzeState {
        let mut state = TietzeState {
            limit,
            words: Vec::with_capacity(p.relators.len()),
            versions: vec![0; p.relators.len()],
            canon: HashMap::new(),
            occurrence: vec![BTreeSet::new(); p.generator_count + 1],
            heap: BinaryHeap::new(),
            alive: vec![true; p.generator_count + 1],
        };
        for word in &p.relators {
            let idx = state.words.len();
            state.words.push(None);
            state.install(idx, word.clone());
        }
        state
    }

    /// Stores a normalized word at slot `idx` unless it is empty or a
    /// duplicate, wiring up the dedup map, occurrence sets, and candidates.
    fn install(&mut self, idx: usize, word: Vec<i32>) {
        debug_assert!(self.words[idx].is_none());
        if word.is_empty() {
            return;
        }
        let key = canonical(&word);
        if self.canon.contains_key(&key) {
            return;
        }
        self.canon.insert(key, idx);
        for g in generators_of(&word) {
            self.occurrence[g as usize].insert(idx);
        }
        if word.len() <= self.limit {
            let mut counts: HashMap<u32, u32> = HashMap::new();
            for &letter in &word {
                *counts.entry(letter.unsigned_abs()).or_insert(0) += 1;
            }
            let mut singles: Vec<u32> = counts
                .into_iter()
                .filter_map(|(g, n)| (n == 1).then_some(g))
                .collect();
            singles.sort_unstable();
            for g in singles {
                self.heap
                    .push(Reverse((word.len(), g, idx, self.versions[idx])));
            }
        }
        self.words[idx] = Some(word);
    }

    /// Detaches the word at `idx` from all indices and returns it.
    fn remove(&mut self, idx: usize) -> Vec<i32> {
        let word = self.words[idx].take().expect("removing a live relator");
        self.versions[idx] += 1;
        self.canon.remove(&canonical(&word));
        for g in generators_of(&word) {
            self.occurrence[g as usize].remove(&idx);
        }
        word
    }

    /// Eliminates generator `gen` using the live relator at `idx`, which
    /// contains it exactly once.
    fn eliminate(&mut self, gen: u32, idx: usize) {
        let word = self.remove(idx);
        debug_assert!(self.alive[gen as usize]);
        debug_assert_eq!(
            word.iter().filter(|l| l.unsigned_abs() == gen).count(),
            1,
            "stale elimination candidate"
        );
        // Rotate the single occurrence of gen to the front: word ~ g^e rest,
        // so g^e = rest^-1.
        let pos = word
            .iter()
            .position(|l| l.unsigned_abs() == gen)
            .expect("candidate generator present");
        let mut rest: Vec<i32> = Vec::with_capacity(word.len() - 1);
        rest.extend_from_slice(&word[pos + 1..]);
        rest.extend_from_slice(&word[..pos]);
        // Replacement for the positive letter +gen.
        let positive = if word[pos] > 0 { invert(&rest) } else { rest };

        let targets: Vec<usize> = self.occurrence[gen as usize].iter().copied().collect();
        for target in targets {
            let old = self.remove(target);
            let substituted = substitute(&old, gen, &positive);
            let normalized = cyclic_reduce(free_reduce(&substituted));
            self.install(target, normalized);
        }
        self.alive[gen as usize] = false;
    }

    /// Renumbers surviving generators and returns the final presentation with
    /// relators sorted by (length, lexicographic order).
    fn finish(self, original_generators: usize) -> GroupPresentation {
        let mut mapping = vec![0i32; original_generators + 1];
        let mut next = 0;
        for (g, slot) in mapping.iter_mut().enumerate().skip(1) {
            if self.alive[g] {
                next += 1;
                *slot = next;
            }
        }
        let mut relators: Vec<Vec<i32>> = self
            .words
            .into_iter()
            .flatten()
            .map(|word| {
                word.iter()
                    .map(|&l| {
                        let mapped = mapping[l.unsigned_abs() as usize];
                        debug_assert!(mapped != 0, "relator mentions an eliminated generator");
                        if l > 0 {
                            mapped
                        } else {
                            -mapped
                        }
                    })
                    .collect()
            })
            .collect();
        relators.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        GroupPresentation {
            generator_count: next as usize,
            relators,
        }
    }
}

/// Splits off the generators that occur in no relator: the presentation is
/// the free product of a free group of the returned rank and the residual
/// presentation (generators re-indexed, order preserved).
pub fn split_free_factor(p: &GroupPresentation) -> (usize, GroupPresentation) {
    let mut used = vec![false; p.generator_count + 1];
    for word in &p.relators {
        for &l in word {
            used[l.unsigned_abs() as usize] = true;
        }
    }
    let mut mapping = vec![0i32; p.generator_count + 1];
    let mut kept = 0;
    for g in 1..=p.generator_count {
        if used[g] {
            kept += 1;
            mapping[g] = kept;
        }
    }
    let free_rank = p.generator_count - kept as usize;
    let relators = p
        .relators
        .iter()
        .map(|word| {
            word.iter()
                .map(|&l| {
                    let mapped = mapping[l.unsigned_abs() as usize];
                    if l > 0 {
                        mapped
                    } else {
                        -mapped
                    }
                })
                .collect()
        })
        .collect();
    (
        free_rank,
        GroupPresentation {
            generator_count: kept as usize,
            relators,
        },
    )
}

/// Abelianization invariants: (free rank, torsion coefficients) of the
/// quotient by all commutators, via the Smith normal form of the exponent-sum
/// matrix.
pub fn abelianization(
    p: &GroupPresentation,
    caps: &Caps,
) -> Result<(usize, Vec<BigInt>), Error> {
    let mut matrix = SparseIntMatrix::new(p.relators.len(), p.generator_count);
    for (i, word) in p.relators.iter().enumerate() {
        for &l in word {
            let g = l.unsigned_abs() as usize - 1;
            matrix.add(i, g, if l > 0 { 1 } else { -1 });
        }
    }
    let snf = smith_normal_form(matrix, caps)?;
    let rank = p.generator_count - snf.rank();
    Ok((rank, snf.torsion()))
}

pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(word.len());
    for &letter in word {
        if out.last() == Some(&-letter) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    out
}

pub fn cyclic_reduce(mut word: Vec<i32>) -> Vec<i32> {
    let mut start = 0;
    while word.len() - start >= 2 && word[start] == -word[word.len() - 1] {
        word.pop();
        start += 1;
    }
    word.drain(..start);
    word
}

fn invert(word: &[i32]) -> Vec<i32> {
    word.iter().rev().map(|&l| -l).collect()
}

fn generators_of(word: &[i32]) -> BTreeSet<u32> {
    word.iter().map(|l| l.unsigned_abs()).collect()
}

fn substitute(word: &[i32], gen: u32, positive: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(word.len() + positive.len());
    for &l in word {
        if l.unsigned_abs() == gen {
            if l > 0 {
                out.extend_from_slice(positive);
            } else {
                out.extend(positive.iter().rev().map(|&x| -x));
            }
        } else {
            out.push(l);
        }
    }
    out
}

/// Canonical representative of a relator up to rotation and inversion: the
/// lexicographically least rotation of the word and of its inverse.
fn canonical(word: &[i32]) -> Vec<i32> {
    if word.is_empty() {
        return Vec::new();
    }
    let a = least_rotation(word);
    let inv = invert(word);
    let b = least_rotation(&inv);
    a.min(b)
}

/// Booth-style least rotation in linear time.
fn least_rotation(word: &[i32]) -> Vec<i32> {
    let n = word.len();
    let at = |i: usize| word[i % n];
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (a, b) = (at(i + k), at(j + k));
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i = i + k + 1;
        } else {
            j = j + k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    let s = i.min(j);
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&word[s..]);
    out.extend_from_slice(&word[..s]);
    out
}
