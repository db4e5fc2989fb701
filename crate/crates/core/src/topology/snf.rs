//! Smith normal form of sparse integer matrices, used for abelianizations
//! and integer homology. Exact arithmetic throughout; entries are unbounded
//! integers. Pivoting prefers units and low fill (Markowitz cost), and a
//! rounding-division gcd cascade shrinks non-unit pivots.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::caps::Caps;
use crate::error::{CapKind, Error};

/// Row-major sparse integer matrix. Zero entries are never stored.
pub struct SparseIntMatrix {
    row_count: usize,
    col_count: usize,
    rows: Vec<BTreeMap<u32, BigInt>>,
    nnz: usize,
}

impl SparseIntMatrix {
    pub fn new(row_count: usize, col_count: usize) -> SparseIntMatrix {
        assert!(col_count <= u32::MAX as usize, "column index overflow");
        SparseIntMatrix {
            row_count,
            col_count,
            rows: vec![BTreeMap::new(); row_count],
            nnz: 0,
        }
    }

    /// Adds `v` to the entry at (r, c).
    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.add_big(r, c, BigInt::from(v));
    }

    pub fn add_big(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.row_count && c < self.col_count);
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        let c = c as u32;
        match row.remove(&c) {
            None => {
                row.insert(c, v);
                self.nnz += 1;
            }
            Some(old) => {
                let sum = old + v;
                if sum.is_zero() {
                    self.nnz -= 1;
                } else {
                    row.insert(c, sum);
                }
            }
        }
    }

    pub fn row_count(&self) -> usize {
        self.row_count
    }

    pub fn col_count(&self) -> usize {
        self.col_count
    }

    pub fn nnz(&self) -> usize {
        self.nnz
    }
}

/// The invariant factors d_1 | d_2 | ... | d_r of an integer matrix, each
/// positive; r is the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The invariant factors greater than 1, i.e. the torsion coefficients of
    /// the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
            let one = BigInt::one();
        self.invariant_factors
            .iter()
            .filter(|d| **d != one)
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(
    matrix: SparseIntMatrix,
    caps: &Caps,
) -> Result<SmithNormalForm, Error> {
    let mut worker = Worker::new(matrix, caps.max_matrix_entries)?;
    worker.run()?;
    Ok(SmithNormalForm {
        invariant_factors: fix_divisibility(worker.factors),
    })
}

/// Heap key: (saturated |value|, Markowitz cost, row, col). Entries are lazy;
/// staleness is detected on pop by re-reading the matrix.
type PivotKey = Reverse<(u64, u64, u32, u32)>;

struct Worker {
    rows: Vec<BTreeMap<u32, BigInt>>,
    cols: Vec<BTreeSet<u32>>,
    nnz: usize,
    max_nnz: usize,
    heap: BinaryHeap<PivotKey>,
    factors: Vec<BigInt>,
}

impl Worker {
    fn new(matrix: SparseIntMatrix, max_nnz: usize) -> Result<Worker, Error> {
        assert!(matrix.row_count <= u32::MAX as usize, "row index overflow");
        if matrix.nnz > max_nnz {
            return Err(Error::cap(CapKind::Matrix, max_nnz as u64));
        }
        let mut cols: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); matrix.col_count];
        let mut heap = BinaryHeap::with_capacity(matrix.nnz);
        for (r, row) in matrix.rows.iter().enumerate() {
            for (&c, v) in row {
                cols[c as usize].insert(r as u32);
                heap.push(Reverse((sat_abs(v), 0, r as u32, c)));
            }
        }
        Ok(Worker {
            rows: matrix.rows,
            cols,
            nnz: matrix.nnz,
            max_nnz,
            heap,
            factors: Vec::new(),
        })
    }

    fn markowitz(&self, r: u32, c: u32) -> u64 {
        let fill_r = self.rows[r as usize].len().saturating_sub(1) as u64;
        let fill_c = self.cols[c as usize].len().saturating_sub(1) as u64;
        fill_r * fill_c
    }

    /// Writes entry (r, c), maintaining the column index, the nonzero count,
    /// and the pivot heap.
    fn set(&mut self, r: u32, c: u32, v: BigInt) -> Result<(), Error> {
        let row = &mut self.rows[r as usize];
        if v.is_zero() {
            if row.remove(&c).is_some() {
                self.cols[c as usize].remove(&r);
                self.nnz -= 1;
            }
            return Ok(());
        }
        let abs = sat_abs(&v);
        if row.insert(c, v).is_none() {
            self.cols[c as usize].insert(r);
            self.nnz += 1;
            if self.nnz > self.max_nnz {
                return Err(Error::cap(CapKind::Matrix, self.max_nnz as u64));
            }
        }
        let cost = self.markowitz(r, c);
        self.heap.push(Reverse((abs, cost, r, c)));
        Ok(())
    }

    /// row_target += coef * row_source. The source row is left untouched.
    fn row_axpy(&mut self, target: u32, source: u32, coef: &BigInt) -> Result<(), Error> {
        let source_entries: Vec<(u32, BigInt)> = self.rows[source as usize]
            .iter()
            .map(|(&c, v)| (c, v.clone()))
            .collect();
        for (c, v) in source_entries {
            let current = self.rows[target as usize]
                .get(&c)
                .cloned()
                .unwrap_or_else(BigInt::zero);
            self.set(target, c, current + coef * v)?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<(), Error> {
        while let Some(Reverse((abs, cost, r, c))) = self.heap.pop() {
            match self.rows[r as usize].get(&c) {
                Some(v) if sat_abs(v) == abs => {}
                _ => continue,
            }
            let cost_now = self.markowitz(r, c);
            if cost_now > cost {
                self.heap.push(Reverse((abs, cost_now, r, c)));
                continue;
            }
            self.eliminate(r, c)?;
            // The cascade inside eliminate may have retired a different
            // entry as the pivot. The starting entry then still needs a
            // candidate: the pop above consumed its only one.
            if let Some(v) = self.rows[r as usize].get(&c) {
                let key = (sat_abs(v), self.markowitz(r, c), r, c);
                self.heap.push(Reverse(key));
            }
        }
        Ok(())
    }

    /// Isolates a pivot starting at (r, c), shrinking it by a gcd cascade
    /// whenever a remainder survives, then retires its row and column.
    fn eliminate(&mut self, mut r: u32, mut c: u32) -> Result<(), Error> {
        'pivot: loop {
            let p = self.rows[r as usize][&c].clone();
            // Clear the pivot column with row operations. A nonzero
            // remainder is strictly smaller than |p| and becomes the pivot.
            let others: Vec<u32> = self.cols[c as usize]
                .iter()
                .copied()
                .filter(|&k| k != r)
                .collect();
            for k in others {
                let a = self.rows[k as usize][&c].clone();
                let q = div_round(&a, &p);
                if !q.is_zero() {
                    self.row_axpy(k, r, &(-q))?;
                }
                if self.rows[k as usize].contains_key(&c) {
                    r = k;
                    continue 'pivot;
                }
            }
            // The column now holds only the pivot, so clearing the pivot row
            // with column operations touches no other row.
            let row_entries: Vec<(u32, BigInt)> = self.rows[r as usize]
                .iter()
                .filter(|&(&l, _)| l != c)
                .map(|(&l, v)| (l, v.clone()))
                .collect();
            let mut smallest: Option<(u64, u32)> = None;
            for (l, b) in row_entries {
                let q = div_round(&b, &p);
                let rem = &b - &q * &p;
                if !q.is_zero() {
                    self.set(r, l, rem.clone())?;
                }
                if !rem.is_zero() {
                    let key = (sat_abs(&rem), l);
                    if smallest.is_none_or(|s| key < s) {
                        smallest = Some(key);
                    }
                }
            }
            if let Some((_, l)) = smallest {
                c = l;
                continue 'pivot;
            }
            // Pivot is alone in its row and column.
            self.factors.push(p.abs());
            self.set(r, c, BigInt::zero())?;
            debug_assert!(self.rows[r as usize].is_empty());
            debug_assert!(self.cols[c as usize].is_empty());
            return Ok(());
        }
    }
}

/// Nearest-integer division: returns q with 2|a - q*p| <= |p|.
fn div_round(a: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(p);
    if BigInt::from(2) * r.abs() > p.abs() {
        // Truncation left a remainder past the midpoint; one step of p in the
        // remainder's direction shrinks it to |p| - |r| < |p| / 2.
        if r.sign() == p.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Rewrites a list of positive diagonal entries into invariant-factor order:
/// each entry divides the next. Entries equal to 1 are untouched in front.
fn fix_divisibility(mut diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let one = BigInt::one();
    let ones = diagonal.iter().filter(|d| **d == one).count();
    let mut rest: Vec<BigInt> = diagonal.drain(..).filter(|d| *d != one).collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if (&rest[j] % &rest[i]).is_zero() {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = vec![one; ones];
    out.extend(rest);
    out
}

fn sat_abs(v: &BigInt) -> u64 {
    use num_traits::ToPrimitive;
    v.abs().to_u64().unwrap_or(u64::MAX)
}
