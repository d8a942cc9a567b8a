//! Sparse exact linear algebra over the rationals.
//!
//! Vectors are maps from an ordered key type to rational coefficients, so
//! callers can index coordinates by whatever is natural (monomials, pairs
//! of slot and monomial, matrix positions) without flattening first.
//!
//! [`Elim`] maintains a reduced row-echelon basis of everything inserted
//! so far and remembers, for every row, the combination of the *attempted*
//! vectors that produced it. That one structure answers rank, membership,
//! coordinate expression, and kernel questions incrementally.

use crate::rat::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;

pub type SparseVec<K> = BTreeMap<K, Rat>;

/// a += c·b, dropping explicit zeros.
pub fn sv_add_scaled<K: Ord + Clone>(a: &mut SparseVec<K>, b: &SparseVec<K>, c: &Rat) {
    if c.is_zero() {
        return;
    }
    for (k, v) in b {
        let entry = a.entry(k.clone()).or_insert_with(Rat::zero);
        *entry = entry.clone() + v * c;
        if entry.is_zero() {
            a.remove(k);
        }
    }
}

pub fn sv_scale<K: Ord + Clone>(a: &mut SparseVec<K>, c: &Rat) {
    if c.is_zero() {
        a.clear();
        return;
    }
    for v in a.values_mut() {
        *v = v.clone() * c;
    }
}

struct Row<K> {
    lead: K,
    vec: SparseVec<K>,
    /// Combination of attempted vectors equal to `vec`.
    comb: SparseVec<usize>,
}

/// Outcome of inserting a vector into an [`Elim`].
pub enum Inserted {
    /// The vector enlarged the span (its attempt index is recorded).
    Independent,
    /// The vector already lay in the span: `v = Σ comb[t] · attempt_t`.
    Dependent(SparseVec<usize>),
}

pub struct Elim<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    attempts: usize,
}

impl<K: Ord + Clone> Default for Elim<K> {
    fn default() -> Self {
        Elim::new()
    }
}

impl<K: Ord + Clone> Elim<K> {
    pub fn new() -> Elim<K> {
        Elim {
            rows: Vec::new(),
            attempts: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn attempts(&self) -> usize {
        self.attempts
    }

    /// Remainder of `v` modulo the current span, plus the combination of
    /// attempted vectors that was subtracted: `v = rem + Σ used[t]·attempt_t`.
    fn reduce_tracked(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used: SparseVec<usize> = BTreeMap::new();
        for row in &self.rows {
            let Some(coef) = v.get(&row.lead).cloned() else {
                continue;
            };
            let neg = -coef.clone();
            sv_add_scaled(&mut v, &row.vec, &neg);
            sv_add_scaled(&mut used, &row.comb, &coef);
        }
        (v, used)
    }

    pub fn reduce(&self, v: SparseVec<K>) -> SparseVec<K> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Coordinates of `v` over the attempted vectors, if `v` is in the span.
    pub fn express(&self, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce_tracked(v);
        rem.is_empty().then_some(used)
    }

    /// Insert a vector, keeping the row basis fully reduced.
    pub fn insert(&mut self, v: SparseVec<K>) -> Inserted {
        let idx = self.attempts;
        self.attempts += 1;
        let (rem, used) = self.reduce_tracked(v);
        if rem.is_empty() {
            return Inserted::Dependent(used);
        }
        // v = rem + Σ used·attempts  ⇒  rem = v − Σ used·attempts
        let lead = rem.keys().next().cloned().expect("nonzero remainder");
        let pivot = rem[&lead].clone();
        let inv = Rat::new(pivot.denom().clone(), pivot.numer().clone());
        let mut vec = rem;
        sv_scale(&mut vec, &inv);
        let mut comb: SparseVec<usize> = BTreeMap::new();
        comb.insert(idx, inv.clone());
        let minus_inv = -inv;
        sv_add_scaled(&mut comb, &used, &minus_inv);
        // eliminate the new pivot from all existing rows
        for row in &mut self.rows {
            if let Some(c) = row.vec.get(&lead).cloned() {
                let neg = -c;
                sv_add_scaled(&mut row.vec, &vec, &neg);
                sv_add_scaled(&mut row.comb, &comb, &neg);
            }
        }
        self.rows.push(Row { lead, vec, comb });
        Inserted::Independent
    }
}

/// Kernel of a linear map, built by offering the images of domain basis
/// vectors one at a time. Whenever an image is dependent on the earlier
/// ones, the corresponding combination of domain indices (with this
/// vector's coefficient 1) is recorded as a kernel element.
pub struct KernelBuilder<K: Ord + Clone> {
    elim: Elim<K>,
    kernel: Vec<SparseVec<usize>>,
}

impl<K: Ord + Clone> Default for KernelBuilder<K> {
    fn default() -> Self {
        KernelBuilder::new()
    }
}

impl<K: Ord + Clone> KernelBuilder<K> {
    pub fn new() -> KernelBuilder<K> {
        KernelBuilder {
            elim: Elim::new(),
            kernel: Vec::new(),
        }
    }

    pub fn offer(&mut self, image: SparseVec<K>) {
        let idx = self.elim.attempts();
        match self.elim.insert(image) {
            Inserted::Independent => {}
            Inserted::Dependent(used) => {
                let mut combo: SparseVec<usize> = BTreeMap::new();
                combo.insert(idx, Rat::from_integer(1.into()));
                let minus_one = -Rat::from_integer(1.into());
                sv_add_scaled(&mut combo, &used, &minus_one);
                self.kernel.push(combo);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.elim.rank()
    }

    pub fn kernel(&self) -> &[SparseVec<usize>] {
        &self.kernel
    }

    pub fn into_kernel(self) -> Vec<SparseVec<usize>> {
        self.kernel
    }
}
