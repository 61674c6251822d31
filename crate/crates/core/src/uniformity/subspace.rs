use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::diffops::DiffOp;
use crate::error::{Error, Result};
use crate::groebner::IdealHandle;
use crate::linalg::{kernel_rational, EchelonBasis, SparseVec};
use crate::poly::{monomials_up_to, Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Debug)]
struct Columns {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// A linear subspace of the polynomials of degree at most `D`, stored as a
/// reduced row echelon basis over the monomials of degree at most `D` in
/// decreasing grevlex order.
#[derive(Clone)]
pub struct TruncatedSubspace {
    nvars: usize,
    degree: u32,
    columns: Arc<Columns>,
    basis: EchelonBasis<Rational>,
}

impl TruncatedSubspace {
    fn columns(nvars: usize, degree: u32) -> Arc<Columns> {
        let mut monomials = monomials_up_to(nvars, degree);
        monomials.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Arc::new(Columns { monomials, index })
    }

    pub fn empty(nvars: usize, degree: u32) -> Self {
        TruncatedSubspace {
            nvars,
            degree,
            columns: Self::columns(nvars, degree),
            basis: EchelonBasis::new(),
        }
    }

    /// All polynomials of degree at most `degree`.
    pub fn full(nvars: usize, degree: u32) -> Self {
        let mut s = Self::empty(nvars, degree);
        for i in 0..s.columns.monomials.len() {
            s.basis
                .insert(SparseVec::from([(i, Rational::from_integer(1.into()))]));
        }
        s
    }

    pub fn spanned_by(nvars: usize, degree: u32, polys: &[Polynomial]) -> Result<Self> {
        let mut s = Self::empty(nvars, degree);
        for p in polys {
            let v = s.to_vector(p).ok_or_else(|| {
                Error::InvalidArgument(format!("polynomial of degree above the bound {degree}"))
            })?;
            s.basis.insert(v);
        }
        Ok(s)
    }

    /// `{f : deg f ≤ degree, NF(δ(f), target) = 0 for every δ}`.
    pub fn operator_kernel(ops: &[DiffOp], target: &IdealHandle, degree: u32) -> Result<Self> {
        let nvars = target.nvars();
        let mut s = Self::empty(nvars, degree);
        let mut out_index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut images: Vec<SparseVec<Rational>> = Vec::with_capacity(s.columns.monomials.len());
        for m in &s.columns.monomials {
            let f = Polynomial::monomial(m.clone());
            let mut img = SparseVec::new();
            for (i, op) in ops.iter().enumerate() {
                let r = target.normal_form(&op.apply(&f)?);
                for (mono, c) in r.terms() {
                    let next = out_index.len();
                    let row = *out_index.entry((i, mono.clone())).or_insert(next);
                    img.insert(row, c.clone());
                }
            }
            images.push(img);
        }
        for v in kernel_rational(&images) {
            s.basis.insert(v);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rank() == 0
    }

    /// Number of monomials of degree at most the bound.
    pub fn ambient_dim(&self) -> usize {
        self.columns.monomials.len()
    }

    fn to_vector(&self, f: &Polynomial) -> Option<SparseVec<Rational>> {
        let mut v = SparseVec::new();
        for (m, c) in f.terms() {
            v.insert(*self.columns.index.get(m)?, c.clone());
        }
        Some(v)
    }

    fn to_polynomial(&self, v: &SparseVec<Rational>) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            v.iter()
                .map(|(&i, c)| (self.columns.monomials[i].clone(), c.clone())),
        )
    }

    /// False for polynomials of degree above the bound.
    pub fn contains(&self, f: &Polynomial) -> bool {
        match self.to_vector(f) {
            Some(v) => self.basis.contains(&v),
            None => false,
        }
    }

    /// Basis in increasing order of leading monomial.
    pub fn basis(&self) -> Vec<Polynomial> {
        let mut rows: Vec<Polynomial> = self.basis.rows().map(|r| self.to_polynomial(r)).collect();
        rows.reverse();
        rows
    }

    pub fn is_subspace_of(&self, other: &TruncatedSubspace) -> bool {
        if self.degree > other.degree {
            return self.basis().iter().all(|f| other.contains(f));
        }
        self.basis
            .rows()
            .all(|r| other.contains(&self.to_polynomial(r)))
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }
}

impl fmt::Debug for TruncatedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedSubspace(D={}, dim={})",
            self.degree,
            self.dim()
        )
    }
}

impl PartialEq for TruncatedSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.is_subspace_of(other) && other.is_subspace_of(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn spans_and_membership() {
        let v = ["x", "y"];
        let p = |s: &str| parse_polynomial(s, &v).unwrap();
        let s = TruncatedSubspace::spanned_by(2, 2, &[p("x + y"), p("x - y"), p("2*x")]).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&p("y")));
        assert!(!s.contains(&p("x*y")));
        assert!(!s.contains(&p("x^3")));
        assert_eq!(s.basis(), vec![p("y"), p("x")]);
        assert!(TruncatedSubspace::full(2, 2).dim() == 6);
        assert!(s.is_subspace_of(&TruncatedSubspace::full(2, 2)));
        assert!(TruncatedSubspace::spanned_by(2, 1, &[p("x^2")]).is_err());
    }
}
