use super::Coeff;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse vector indexed by an ordered key (a monomial, a basis element).
pub type SparseVec<K> = BTreeMap<K, Coeff>;

/// Incrementally built row-echelon basis of a span of sparse vectors.
///
/// Each stored row is monic at its smallest key, and no two rows share that
/// key. Suited to spans with few independent vectors over a large
/// coordinate set, where [`super::ExactMatrix`] would be mostly zeros.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    pivots: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { pivots: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `v` to the span; returns whether it was independent of the rows
    /// already present.
    pub fn insert(&mut self, mut v: SparseVec<K>) -> bool {
        v.retain(|_, c| !c.is_zero());
        loop {
            let Some((lead, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(row) => {
                    for (k, x) in row {
                        let slot = v.entry(k.clone()).or_insert_with(Coeff::zero);
                        *slot -= &c * x;
                        if slot.is_zero() {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    if !c.is_one() {
                        let inv = c.recip();
                        for x in v.values_mut() {
                            *x *= &inv;
                        }
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        let mut probe = self.clone();
        !probe.insert(v.clone())
    }
}

/// Rank over the rationals of a family of sparse vectors.
pub fn sparse_rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut ech = SparseEchelon::new();
    for v in vectors {
        ech.insert(v);
    }
    ech.rank()
}
