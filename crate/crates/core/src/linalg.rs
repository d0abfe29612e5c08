//! Sparse incremental Gaussian elimination over a `Scalar` field.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

/// Sparse vector keyed by coordinate index.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// `a += c·b`, dropping cancelled entries.
pub fn axpy<F: Scalar>(a: &mut SparseVec<F>, c: &F, b: &SparseVec<F>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in b {
        let s = match a.remove(k) {
            Some(old) => old + c.clone() * v.clone(),
            None => c.clone() * v.clone(),
        };
        if !s.is_zero() {
            a.insert(*k, s);
        }
    }
}

struct Row<F> {
    v: SparseVec<F>,
    combo: SparseVec<F>,
}

/// Row-echelon form built one vector at a time. Each stored row has a
/// distinct leading (smallest) key with coefficient 1.
pub struct Echelon<F> {
    rows: BTreeMap<usize, Row<F>>,
    track: bool,
    inserted: usize,
}

impl<F: Scalar> Echelon<F> {
    /// With `track`, rows remember which inserted vectors they combine,
    /// so `solve` can return witnesses.
    pub fn new(track: bool) -> Self {
        Echelon { rows: BTreeMap::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Leading keys of the stored rows.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduce `v` against the stored rows; returns the remainder and the
    /// combination `c` with `v = remainder + Σ c_i·(inserted_i)`.
    fn reduce_tracked(&self, mut v: SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let Some((&k, c)) = v.range(cursor..).next() else {
                break;
            };
            if let Some(row) = self.rows.get(&k) {
                let c = c.clone();
                axpy(&mut v, &-c.clone(), &row.v);
                if self.track {
                    axpy(&mut combo, &c, &row.combo);
                }
            }
            cursor = k + 1;
        }
        (v, combo)
    }

    pub fn reduce(&self, v: SparseVec<F>) -> SparseVec<F> {
        self.reduce_tracked(v).0
    }

    /// Insert a vector; returns true when it was independent.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce_tracked(v);
        let Some((&lead, c)) = rem.iter().next() else {
            return false;
        };
        let inv = c.inv().expect("nonzero pivot");
        let v: SparseVec<F> = rem.iter().map(|(k, x)| (*k, x.clone() * inv.clone())).collect();
        let combo = if self.track {
            let mut own = SparseVec::new();
            own.insert(idx, F::one());
            axpy(&mut own, &-F::one(), &combo);
            own.into_iter().map(|(k, x)| (k, x * inv.clone())).collect()
        } else {
            SparseVec::new()
        };
        self.rows.insert(lead, Row { v, combo });
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Coefficients `c` with `v = Σ c_i·(inserted_i)`, when `v` lies in the span.
    pub fn solve(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        assert!(self.track, "solve needs a tracking echelon");
        let (rem, combo) = self.reduce_tracked(v.clone());
        rem.is_empty().then_some(combo)
    }
}

/// Rank of a set of sparse vectors.
pub fn rank<F: Scalar>(vectors: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new(false);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rational};

    fn sv(entries: &[(usize, i64)]) -> SparseVec<Rational> {
        entries.iter().filter(|(_, c)| *c != 0).map(|(k, c)| (*k, int(*c))).collect()
    }

    #[test]
    fn rank_of_dependent_set() {
        let vs = vec![sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(2, 1)])];
        assert_eq!(rank(vs), 2);
    }

    #[test]
    fn solve_returns_witness() {
        let vs = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (2, -1)])];
        let mut e = Echelon::new(true);
        for v in &vs {
            e.insert(v.clone());
        }
        assert_eq!(e.rank(), 2);
        let target = sv(&[(0, 2), (1, 3), (2, 1)]);
        let c = e.solve(&target).unwrap();
        let mut acc = SparseVec::new();
        for (i, ci) in &c {
            axpy(&mut acc, ci, &vs[*i]);
        }
        assert_eq!(acc, target);
        assert!(e.solve(&sv(&[(0, 1)])).is_none());
    }
}
