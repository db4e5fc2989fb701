//! Order complexes: the simplicial complex whose simplices are the nonempty
//! chains of a finite poset. Maximal simplices are maximal chains, found by
//! depth-first descent from the maximal elements over the covering relation.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{CapKind, Error};
use crate::poset::AbstractPoset;

/// A finite simplicial complex presented by its maximal simplices. Vertex ids
/// run over `0..vertex_count`, every simplex is strictly increasing, and no
/// maximal simplex contains another. Skeleta are derived on demand and cached
/// per dimension.
pub struct SimplicialComplex {
    vertex_count: usize,
    maximal_simplices: Vec<Vec<u32>>,
    skeleta: Mutex<BTreeMap<usize, Arc<Vec<Vec<u32>>>>>,
}

impl SimplicialComplex {
    /// Build from an arbitrary family of simplices: each is sorted, faces of
    /// other listed simplices are dropped, and every vertex must be covered.
    pub fn from_maximal(
        vertex_count: usize,
        simplices: Vec<Vec<u32>>,
    ) -> Result<SimplicialComplex, Error> {
        let mut cleaned: Vec<Vec<u32>> = Vec::with_capacity(simplices.len());
        for mut s in simplices {
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid("simplex repeats a vertex".into()));
            }
            if s.iter().any(|&v| (v as usize) >= vertex_count) {
                return Err(Error::Invalid(format!(
                    "simplex vertex out of range for {vertex_count} vertices"
                )));
            }
            if !s.is_empty() {
                cleaned.push(s);
            }
        }
        cleaned.sort_unstable();
        cleaned.dedup();
        let maximal: Vec<Vec<u32>> = cleaned
            .iter()
            .filter(|s| {
                !cleaned
                    .iter()
                    .any(|t| t.len() > s.len() && is_subset(s, t))
            })
            .cloned()
            .collect();
        if maximal.is_empty() {
            return Err(Error::Invalid("complex needs at least one simplex".into()));
        }
        let mut covered = vec![false; vertex_count];
        for s in &maximal {
            for &v in s {
                covered[v as usize] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(Error::Invalid(format!(
                "vertex {v} lies in no simplex; drop it or list it as a 0-simplex"
            )));
        }
        Ok(SimplicialComplex::from_maximal_unchecked(
            vertex_count,
            maximal,
        ))
    }

    fn from_maximal_unchecked(
        vertex_count: usize,
        maximal_simplices: Vec<Vec<u32>>,
    ) -> SimplicialComplex {
        debug_assert!(!maximal_simplices.is_empty());
        debug_assert!(maximal_simplices
            .iter()
            .all(|s| s.windows(2).all(|w| w[0] < w[1])));
        debug_assert!(maximal_simplices.windows(2).all(|w| w[0] < w[1]));
        SimplicialComplex {
            vertex_count,
            maximal_simplices,
            skeleta: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Maximal simplices, sorted lexicographically.
    pub fn maximal_simplices(&self) -> &[Vec<u32>] {
        &self.maximal_simplices
    }

    pub fn dimension(&self) -> usize {
        self.maximal_simplices
            .iter()
            .map(|s| s.len() - 1)
            .max()
            .expect("a complex holds at least one simplex")
    }

    /// All k-simplices: the (k+1)-subsets of maximal simplices, deduplicated
    /// and sorted lexicographically. Empty above the dimension.
    pub fn skeleton(&self, k: usize) -> Arc<Vec<Vec<u32>>> {
        if let Some(cached) = self.skeleta.lock().unwrap().get(&k) {
            return Arc::clone(cached);
        }
        let size = k + 1;
        let sets: Vec<HashSet<Vec<u32>>> = self
            .maximal_simplices
            .par_iter()
            .fold(HashSet::new, |mut acc: HashSet<Vec<u32>>, simplex| {
                if simplex.len() >= size {
                    each_subset(simplex, size, &mut |face| {
                        acc.insert(face);
                    });
                }
                acc
            })
            .collect();
        let mut merged: HashSet<Vec<u32>> = HashSet::new();
        for set in sets {
            merged.extend(set);
        }
        let mut faces: Vec<Vec<u32>> = merged.into_iter().collect();
        faces.sort_unstable();
        let faces = Arc::new(faces);
        let mut cache = self.skeleta.lock().unwrap();
        Arc::clone(cache.entry(k).or_insert_with(|| Arc::clone(&faces)))
    }

    /// Simplex counts per dimension, `counts[k]` = number of k-simplices.
    pub fn simplex_counts(&self) -> Vec<usize> {
        (0..=self.dimension())
            .map(|k| self.skeleton(k).len())
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplex_counts()
            .iter()
            .enumerate()
            .map(|(k, &count)| {
                let signed = count as i64;
                if k % 2 == 0 {
                    signed
                } else {
                    -signed
                }
            })
            .sum()
    }

    pub fn export(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertex_count,
            maximal_simplices: self.maximal_simplices.clone(),
        }
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertex_count)
            .field("maximal_simplices", &self.maximal_simplices.len())
            .field("dimension", &self.dimension())
            .finish()
    }
}

/// JSON shape for a complex: `{vertices, maximal_simplices}`.
#[derive(Serialize)]
pub struct ComplexJson {
    pub vertices: usize,
    pub maximal_simplices: Vec<Vec<u32>>,
}

/// The order complex of a poset: maximal simplices are the maximal chains.
/// Chains are found by descending the covering relation (the transitive
/// reduction of the stored comparability relation) from each maximal element.
pub fn order_complex(poset: &AbstractPoset, caps: &Caps) -> Result<SimplicialComplex, Error> {
    if poset.is_empty() {
        return Err(Error::EmptyPoset);
    }
    let n = poset.size();
    let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut down: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(a, b) in poset.pairs() {
        up[a as usize].push(b);
        down[b as usize].push(a);
    }

    // (a, b) is a cover when no c sits strictly between them.
    let covers: Vec<&(u32, u32)> = poset
        .pairs()
        .par_iter()
        .filter(|&&(a, b)| !intersects(&up[a as usize], &down[b as usize]))
        .collect();
    let mut down_covers: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &&(a, b) in &covers {
        down_covers[b as usize].push(a);
    }

    let maximal: Vec<u32> = (0..n as u32)
        .filter(|&v| up[v as usize].is_empty())
        .collect();

    let chain_count = AtomicU64::new(0);
    let per_root: Vec<Vec<Vec<u32>>> = maximal
        .par_iter()
        .map(|&root| descend(root, &down_covers, &chain_count, caps.max_chains))
        .collect::<Result<_, Error>>()?;

    let mut simplices: Vec<Vec<u32>> = per_root.into_iter().flatten().collect();
    simplices.sort_unstable();
    debug_assert!(simplices.windows(2).all(|w| w[0] != w[1]));
    Ok(SimplicialComplex::from_maximal_unchecked(n, simplices))
}

/// All maximal chains through `root`, each emitted as a sorted vertex list.
/// Distinct maximal chains are never subsets of one another, and chains from
/// different maximal elements differ in their top, so the union over roots
/// needs no containment pruning.
fn descend(
    root: u32,
    down_covers: &[Vec<u32>],
    chain_count: &AtomicU64,
    max_chains: usize,
) -> Result<Vec<Vec<u32>>, Error> {
    let mut out = Vec::new();
    let mut path: Vec<u32> = vec![root];
    // Per-level iteration state: the index of the next cover to try.
    let mut cursor: Vec<usize> = vec![0];
    loop {
        let current = *path.last().unwrap() as usize;
        let next = cursor.last_mut().unwrap();
        if down_covers[current].is_empty() {
            if chain_count.fetch_add(1, Ordering::Relaxed) >= max_chains as u64 {
                return Err(Error::cap(CapKind::Chains, max_chains as u64));
            }
            let mut chain = path.clone();
            chain.sort_unstable();
            out.push(chain);
        } else if *next < down_covers[current].len() {
            let child = down_covers[current][*next];
            *next += 1;
            path.push(child);
            cursor.push(0);
            continue;
        }
        // Exhausted this node (or emitted a minimal one): backtrack.
        path.pop();
        cursor.pop();
        if path.is_empty() {
            return Ok(out);
        }
    }
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

fn intersects(xs: &[u32], ys: &[u32]) -> bool {
    if xs.len() > ys.len() {
        return intersects(ys, xs);
    }
    xs.iter().any(|x| ys.binary_search(x).is_ok())
}

/// Calls `emit` with every `size`-subset of `simplex`, in lexicographic order.
fn each_subset(simplex: &[u32], size: usize, emit: &mut impl FnMut(Vec<u32>)) {
    debug_assert!(size >= 1 && size <= simplex.len());
    let n = simplex.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        emit(idx.iter().map(|&i| simplex[i]).collect());
        // Advance the rightmost index that still has room.
        let mut i = size;
        while i > 0 && idx[i - 1] == i - 1 + n - size {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
