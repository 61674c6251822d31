use std::cmp::Ordering;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Order used inside one block of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Grevlex,
    Lex,
}

impl BlockKind {
    fn cmp_on(self, a: &[u32], b: &[u32], idx: &[usize]) -> Ordering {
        match self {
            BlockKind::Lex => {
                for &i in idx {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            BlockKind::Grevlex => {
                let da: u64 = idx.iter().map(|&i| a[i] as u64).sum();
                let db: u64 = idx.iter().map(|&i| b[i] as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &i in idx.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        // smaller exponent in the last differing variable wins
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A monomial order on a fixed number of variables.
///
/// `Block` compares the `eliminate` variables first (with `first`), and breaks
/// ties on the remaining variables (with `rest`); it is an elimination order
/// for the `eliminate` block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Block {
        eliminate: Vec<usize>,
        keep: Vec<usize>,
        first: BlockKind,
        rest: BlockKind,
    },
}

impl MonomialOrder {
    /// Elimination order with grevlex inside both blocks.
    pub fn elimination(nvars: usize, eliminate: Vec<usize>) -> Self {
        Self::block(nvars, eliminate, BlockKind::Grevlex, BlockKind::Grevlex)
    }

    pub fn block(nvars: usize, eliminate: Vec<usize>, first: BlockKind, rest: BlockKind) -> Self {
        let keep = (0..nvars).filter(|i| !eliminate.contains(i)).collect();
        MonomialOrder::Block {
            eliminate,
            keep,
            first,
            rest,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        debug_assert_eq!(ea.len(), eb.len());
        match self {
            MonomialOrder::Grevlex => grevlex(ea, eb),
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::Block {
                eliminate,
                keep,
                first,
                rest,
            } => match first.cmp_on(ea, eb, eliminate) {
                Ordering::Equal => rest.cmp_on(ea, eb, keep),
                o => o,
            },
        }
    }

    /// Checked comparison: rejects exponent vectors of different lengths.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::VariableMismatch {
                expected: a.nvars(),
                found: b.nvars(),
            });
        }
        Ok(self.cmp(a, b))
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
