//! Exact sparse linear algebra over Q and over rational-function fields.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::poly::{Rational, RationalFunction};

/// Field operations needed by the elimination routines.
pub trait FieldElem: Clone + Debug {
    fn is_zero(&self) -> bool;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on division by zero; elimination only divides by pivots.
    fn div(&self, o: &Self) -> Self;
    /// A rational constant in the same field as `self`.
    fn embed_rational(&self, c: &Rational) -> Self;
    /// Hook for canonicalizing intermediate results.
    fn normalized(self) -> Self {
        self
    }
}

impl FieldElem for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn embed_rational(&self, c: &Rational) -> Self {
        c.clone()
    }
}

impl FieldElem for RationalFunction {
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.nvars())
    }
    fn add(&self, o: &Self) -> Self {
        RationalFunction::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RationalFunction::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RationalFunction::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        RationalFunction::div(self, o).expect("pivot is nonzero")
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
    fn embed_rational(&self, c: &Rational) -> Self {
        RationalFunction::constant(self.nvars(), c.clone())
    }
    fn normalized(self) -> Self {
        self.reduce()
    }
}

/// Sparse vector: column index → nonzero entry.
pub type SparseVec<T> = BTreeMap<usize, T>;

fn axpy<T: FieldElem>(target: &mut SparseVec<T>, factor: &T, row: &SparseVec<T>) {
    // target -= factor * row
    for (&c, v) in row {
        let delta = factor.mul(v);
        match target.get_mut(&c) {
            Some(cur) => {
                let next = cur.sub(&delta).normalized();
                if next.is_zero() {
                    target.remove(&c);
                } else {
                    *cur = next;
                }
            }
            None => {
                let neg = delta.neg().normalized();
                if !neg.is_zero() {
                    target.insert(c, neg);
                }
            }
        }
    }
}

fn scale<T: FieldElem>(v: &mut SparseVec<T>, factor: &T) {
    for x in v.values_mut() {
        *x = x.mul(factor).normalized();
    }
}

/// Row space kept in reduced row echelon form. Every stored row has a 1 at
/// its pivot (its smallest column) and zeros at every other pivot column.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    rows: BTreeMap<usize, SparseVec<T>>,
}

impl<T: FieldElem> Default for EchelonBasis<T> {
    fn default() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
        }
    }
}

impl<T: FieldElem> EchelonBasis<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors(vs: impl IntoIterator<Item = SparseVec<T>>) -> Self {
        let mut b = Self::new();
        for v in vs {
            b.insert(v);
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against every pivot row.
    pub fn reduce(&self, mut v: SparseVec<T>) -> SparseVec<T> {
        let cols: Vec<usize> = v
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        for c in cols {
            if let Some(coef) = v.get(&c).cloned() {
                axpy(&mut v, &coef, &self.rows[&c]);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<T>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: SparseVec<T>) -> bool {
        let mut v = self.reduce(v);
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.one_like().div(lead);
        scale(&mut v, &inv);
        for row in self.rows.values_mut() {
            if let Some(coef) = row.get(&pivot).cloned() {
                axpy(row, &coef, &v);
            }
        }
        self.rows.insert(pivot, v);
        true
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<T>> {
        self.rows.values()
    }

    pub fn into_rows(self) -> Vec<SparseVec<T>> {
        self.rows.into_values().collect()
    }

    pub fn is_subspace_of(&self, other: &EchelonBasis<T>) -> bool {
        self.rows.values().all(|r| other.contains(r))
    }
}

/// Basis of the kernel of the linear map sending unit vector `j` to
/// `images[j]`; `one` is the unit of the field. Each kernel vector has its
/// largest nonzero index at a distinct `j` with entry one there.
pub fn kernel<T: FieldElem>(images: &[SparseVec<T>], one: &T) -> Vec<SparseVec<T>> {
    // pivot column in image space -> (reduced image row, preimage combination)
    let mut pivots: BTreeMap<usize, (SparseVec<T>, SparseVec<T>)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo: SparseVec<T> = SparseVec::from([(j, one.clone())]);
        loop {
            let lead = v
                .iter()
                .find(|(c, _)| pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, coef)) = lead else { break };
            let (row, row_combo) = &pivots[&c];
            axpy(&mut v, &coef, row);
            axpy(&mut combo, &coef, row_combo);
        }
        match v.iter().next().map(|(c, x)| (*c, x.clone())) {
            None => out.push(combo),
            Some((c, lead)) => {
                let inv = one.div(&lead);
                scale(&mut v, &inv);
                scale(&mut combo, &inv);
                pivots.insert(c, (v, combo));
            }
        }
    }
    out
}

pub fn kernel_rational(images: &[SparseVec<Rational>]) -> Vec<SparseVec<Rational>> {
    kernel(images, &Rational::one())
}
