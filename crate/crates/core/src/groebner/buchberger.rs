//! Buchberger's algorithm with the product and chain criteria.
//!
//! Internally a polynomial is a vector of terms sorted in increasing order
//! under the active monomial order, so the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational};

pub(crate) type Terms = Vec<(Monomial, Rational)>;

pub(crate) fn to_terms(p: &Polynomial, ord: &MonomialOrder) -> Terms {
    let mut v: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    v.sort_by(|a, b| ord.cmp(&a.0, &b.0));
    v
}

pub(crate) fn from_terms(nvars: usize, t: Terms) -> Polynomial {
    Polynomial::from_terms(nvars, t)
}

/// `a - coef * shift * b`, both inputs sorted increasingly.
fn sub_scaled(
    a: &[(Monomial, Rational)],
    coef: &Rational,
    shift: &Monomial,
    b: &[(Monomial, Rational)],
    ord: &MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |k: usize| b[k].0.mul(shift);
    let mut next_b = if b.is_empty() { None } else { Some(shifted(0)) };
    while i < a.len() || next_b.is_some() {
        let take = match (&next_b, a.get(i)) {
            (None, _) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(mb), Some((ma, _))) => ord.cmp(ma, mb),
        };
        match take {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let m = next_b.take().expect("present");
                out.push((m, -(coef * &b[j].1)));
                j += 1;
                next_b = if j < b.len() { Some(shifted(j)) } else { None };
            }
            Ordering::Equal => {
                let c = &a[i].1 - coef * &b[j].1;
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                next_b = if j < b.len() { Some(shifted(j)) } else { None };
            }
        }
    }
    out
}

/// Full reduction of `f` by `basis` (every term, not only the leading one).
pub(crate) fn reduce(f: Terms, basis: &[Terms], ord: &MonomialOrder) -> Terms {
    let mut p = f;
    let mut rem_desc: Terms = Vec::new();
    while let Some((m, c)) = p.last() {
        let divisor = basis
            .iter()
            .find(|g| g.last().is_some_and(|(lm, _)| lm.divides(m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.last().expect("nonempty");
                let shift = lm.quotient_of(m).expect("divides");
                let coef = c / lc;
                p = sub_scaled(&p, &coef, &shift, g, ord);
            }
            None => {
                rem_desc.push(p.pop().expect("nonempty"));
            }
        }
    }
    rem_desc.reverse();
    rem_desc
}

fn make_monic(mut t: Terms) -> Terms {
    if let Some((_, lc)) = t.last() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
    t
}

fn spoly(f: &Terms, g: &Terms, ord: &MonomialOrder) -> Terms {
    let (lf, _) = f.last().expect("nonempty");
    let (lg, _) = g.last().expect("nonempty");
    let l = lf.lcm(lg);
    let sf = lf.quotient_of(&l).expect("divides");
    let sg = lg.quotient_of(&l).expect("divides");
    // both monic
    let scaled_f: Terms = f.iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
    sub_scaled(&scaled_f, &Rational::one(), &sg, g, ord)
}

fn pair_key(g: &[Terms], i: usize, j: usize) -> Monomial {
    g[i].last()
        .expect("nonempty")
        .0
        .lcm(&g[j].last().expect("nonempty").0)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
///
/// Pairs are selected by minimal lcm degree, ties broken by the lcm under
/// `ord` and then by index, so the output is deterministic. The result is
/// sorted by increasing leading monomial and every element is monic.
pub(crate) fn groebner_terms(gens: &[Polynomial], ord: &MonomialOrder) -> Vec<Terms> {
    let mut g: Vec<Terms> = Vec::new();
    for p in gens {
        if p.is_zero() {
            continue;
        }
        let t = make_monic(to_terms(p, ord));
        if !g.contains(&t) {
            g.push(t);
        }
    }
    if g.iter().any(|t| t.len() == 1 && t[0].0.is_one()) {
        return vec![vec![(Monomial::one(gens[0].nvars()), Rational::one())]];
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while !pairs.is_empty() {
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                let la = pair_key(&g, a.0, a.1);
                let lb = pair_key(&g, b.0, b.1);
                la.degree()
                    .cmp(&lb.degree())
                    .then_with(|| ord.cmp(&la, &lb))
                    .then_with(|| a.cmp(b))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        let li = &g[i].last().expect("nonempty").0;
        let lj = &g[j].last().expect("nonempty").0;
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k].last().expect("nonempty").0.divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly(&g[i], &g[j], ord);
        let h = reduce(s, &g, ord);
        if h.is_empty() {
            continue;
        }
        let h = make_monic(h);
        if h.len() == 1 && h[0].0.is_one() {
            return vec![h];
        }
        let n = g.len();
        g.push(h);
        for k in 0..n {
            pairs.insert((k, n));
        }
    }
    interreduce(g, ord)
}

fn interreduce(g: Vec<Terms>, ord: &MonomialOrder) -> Vec<Terms> {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Terms> = Vec::new();
    for (idx, t) in g.iter().enumerate() {
        let lm = &t.last().expect("nonempty").0;
        let redundant = g.iter().enumerate().any(|(k, o)| {
            let lo = &o.last().expect("nonempty").0;
            k != idx && lo.divides(lm) && (lo != lm || k < idx)
        });
        if !redundant {
            minimal.push(t.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, t)| t.clone())
            .collect();
        let mut t = minimal[idx].clone();
        let lead = t.pop().expect("nonempty");
        let mut tail = reduce(t, &others, ord);
        tail.push(lead);
        out.push(make_monic(tail));
    }
    out.sort_by(|a, b| {
        ord.cmp(
            &a.last().expect("nonempty").0,
            &b.last().expect("nonempty").0,
        )
    });
    out
}

/// Reduced Gröbner basis of `gens` under `ord`; the zero ideal has an empty basis.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let n = first.nvars();
    groebner_terms(gens, ord)
        .into_iter()
        .map(|t| from_terms(n, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ps(v: &[&str]) -> Vec<Polynomial> {
        v.iter()
            .map(|s| parse_polynomial(s, &["x", "y"]).unwrap())
            .collect()
    }

    #[test]
    fn examples() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(buchberger(&ps(&["x"]), &o), ps(&["x"]));
        assert_eq!(
            buchberger(&ps(&["x^2 + y^2 - 1", "x - y"]), &o),
            ps(&["x - y", "y^2 - 1/2"])
        );
        let mon = buchberger(&ps(&["x^2", "x*y", "y^2"]), &o);
        assert_eq!(mon.len(), 3);
        for p in ps(&["x^2", "x*y", "y^2"]) {
            assert!(mon.contains(&p));
        }
        assert!(buchberger(&ps(&["0"]), &o).is_empty());
        assert!(buchberger(&[], &o).is_empty());
        assert_eq!(buchberger(&ps(&["x", "x + 1"]), &o), ps(&["1"]));
    }

    #[test]
    fn lex_triangular() {
        let g = buchberger(&ps(&["x^2 + y^2 - 1", "x - y"]), &MonomialOrder::Lex);
        assert_eq!(g, ps(&["y^2 - 1/2", "x - y"]));
    }
}
