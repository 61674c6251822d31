//! Integral closures of powers of monomial ideals through Newton
//! polyhedra, symbolic powers by saturation, and the constant searches
//! that feed them to the differential colon.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::diffops::OperatorSet;
use crate::error::{Error, Result};
use crate::groebner::{IdealHandle, RingSpec};
use crate::linalg::{kernel_rational, SparseVec};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::uniformity::{find_min_c_with, ConstantReport, SearchBounds};

/// Inequality `normal · e ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

/// `conv(points) + R^d_{≥0}`, described by its facets with positive offset.
#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    dim: usize,
    points: Vec<Vec<u32>>,
    facets: Vec<Facet>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn dot(w: &[Rational], e: &[u32]) -> Rational {
    w.iter().zip(e).fold(Rational::zero(), |acc, (a, &b)| {
        acc + a * Rational::from_integer(b.into())
    })
}

/// Scales `w` to a primitive integer vector.
fn primitive_normal(w: Vec<Rational>) -> Vec<Rational> {
    use num_integer::Integer;
    let den = w
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = w
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter()
        .map(|c| Rational::from_integer(c / &g))
        .collect()
}

impl NewtonPolyhedron {
    /// Facets come from hyperplanes through `d - k` of the points that
    /// contain `k` coordinate directions.
    pub fn new(dim: usize, points: Vec<Vec<u32>>) -> Self {
        let pts = minimal_exponents(points);
        let mut facets = BTreeSet::new();
        for k in 0..dim {
            for rays in combinations(dim, k) {
                for chosen in combinations(pts.len(), dim - k) {
                    let base = &pts[chosen[0]];
                    let mut rows: Vec<Vec<Rational>> = chosen[1..]
                        .iter()
                        .map(|&j| {
                            (0..dim)
                                .map(|i| {
                                    Rational::from_integer(pts[j][i].into())
                                        - Rational::from_integer(base[i].into())
                                })
                                .collect()
                        })
                        .collect();
                    for &r in &rays {
                        rows.push(
                            (0..dim)
                                .map(|i| {
                                    if i == r {
                                        Rational::one()
                                    } else {
                                        Rational::zero()
                                    }
                                })
                                .collect(),
                        );
                    }
                    let images: Vec<SparseVec<Rational>> = (0..dim)
                        .map(|col| {
                            rows.iter()
                                .enumerate()
                                .filter(|(_, r)| !r[col].is_zero())
                                .map(|(i, r)| (i, r[col].clone()))
                                .collect()
                        })
                        .collect();
                    let null = kernel_rational(&images);
                    if null.len() != 1 {
                        continue;
                    }
                    let mut w: Vec<Rational> = (0..dim)
                        .map(|i| null[0].get(&i).cloned().unwrap_or_else(Rational::zero))
                        .collect();
                    if w.iter().all(|c| !c.is_positive()) {
                        w = w.into_iter().map(|c| -c).collect();
                    }
                    if w.iter().any(|c| c.is_negative()) {
                        continue;
                    }
                    let w = primitive_normal(w);
                    let offset = dot(&w, base);
                    if !offset.is_positive() || pts.iter().any(|p| dot(&w, p) < offset) {
                        continue;
                    }
                    facets.insert(Facet { normal: w, offset });
                }
            }
        }
        NewtonPolyhedron {
            dim,
            points: pts,
            facets: facets.into_iter().collect(),
        }
    }

    /// Polyhedron of a monomial ideal.
    pub fn of_ideal(i: &IdealHandle) -> Result<Self> {
        let exps = monomial_exponents(i)?;
        Ok(Self::new(i.nvars(), exps))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal generating exponents.
    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Membership of the lattice point `e` in `m` times the polyhedron.
    pub fn contains_scaled(&self, e: &[u32], m: u32) -> bool {
        if self.points.is_empty() {
            return false;
        }
        let m = Rational::from_integer(m.into());
        self.facets
            .iter()
            .all(|f| dot(&f.normal, e) >= &f.offset * &m)
    }
}

fn monomial_exponents(i: &IdealHandle) -> Result<Vec<Vec<u32>>> {
    i.generators()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let mut terms = g.terms();
            match (terms.next(), terms.next()) {
                (Some((m, _)), None) => Ok(m.exponents().to_vec()),
                _ => Err(Error::NonMonomial(format!(
                    "generator {k} has {} terms",
                    g.len()
                ))),
            }
        })
        .collect()
}

fn monomial_ideal(nvars: usize, mut exps: Vec<Vec<u32>>) -> IdealHandle {
    exps.sort_by(|a, b| b.cmp(a));
    IdealHandle::new(
        nvars,
        exps.into_iter()
            .map(|e| Polynomial::monomial(Monomial::from_exponents(e)))
            .collect(),
    )
}

/// `\overline{I^m}` for a monomial ideal `I`: the minimal lattice points of
/// `m` times its Newton polyhedron, listed in decreasing lex order.
pub fn monomial_integral_closure(i: &IdealHandle, m: u32) -> Result<IdealHandle> {
    if m == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let n = i.nvars();
    let poly = NewtonPolyhedron::of_ideal(i)?;
    if poly.points().is_empty() {
        return Ok(IdealHandle::zero(n));
    }
    let bound: Vec<u32> = (0..n)
        .map(|v| poly.points().iter().map(|p| p[v] * m).max().unwrap_or(0))
        .collect();
    let mut minimal = Vec::new();
    let mut e = vec![0u32; n];
    loop {
        if poly.contains_scaled(&e, m) {
            let is_min = (0..n).filter(|&v| e[v] > 0).all(|v| {
                let mut f = e.clone();
                f[v] -= 1;
                !poly.contains_scaled(&f, m)
            });
            if is_min {
                minimal.push(e.clone());
            }
        }
        let mut v = 0;
        loop {
            if v == n {
                return Ok(monomial_ideal(n, minimal));
            }
            e[v] += 1;
            if e[v] <= bound[v] {
                break;
            }
            e[v] = 0;
            v += 1;
        }
    }
}

/// Exponents not dominating another one.
fn minimal_exponents(mut exps: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    exps.sort();
    exps.dedup();
    let all = exps.clone();
    exps.retain(|p| {
        !all.iter()
            .any(|q| q != p && q.iter().zip(p).all(|(a, b)| a <= b))
    });
    exps
}

/// Independent membership test: `x^a ∈ \overline{I}` iff `x^{ka} ∈ I^k`
/// for some `k`; tries `k ≤ k_max`.
pub fn monomial_closure_bruteforce_oracle(
    i: &IdealHandle,
    candidate: &Monomial,
    k_max: u32,
) -> Result<bool> {
    let gens = minimal_exponents(monomial_exponents(i)?);
    let mut power: Vec<Vec<u32>> = vec![vec![0; i.nvars()]];
    for k in 1..=k_max {
        let mut next = Vec::with_capacity(power.len() * gens.len());
        for p in &power {
            for g in &gens {
                next.push(p.iter().zip(g).map(|(a, b)| a + b).collect());
            }
        }
        power = minimal_exponents(next);
        let target = candidate.pow(k);
        if power
            .iter()
            .any(|p| p.iter().zip(target.exponents()).all(|(a, b)| a <= b))
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `p^n : witness^∞`, which is the symbolic power `p^(n)` when `witness`
/// lies outside `p` and in every embedded component of `p^n`.
pub fn symbolic_power(p: &IdealHandle, n: u32, witness: &Polynomial) -> Result<IdealHandle> {
    if p.contains(witness) {
        return Err(Error::WitnessInPrime);
    }
    let power = p.power(n);
    if witness.is_constant() {
        return Ok(power);
    }
    power.saturate(witness)
}

/// True when the radical of the ring is generated by variables, so that the
/// reduced ring is a polynomial ring in the remaining ones.
fn radical_is_coordinate(ring: &RingSpec) -> bool {
    ring.radical().groebner_basis().iter().all(|g| {
        let mut t = g.terms();
        matches!((t.next(), t.next()), (Some((m, _)), None) if m.degree() == 1)
    })
}

/// `\overline{I^{n+c}}`.
pub fn closure_schedule(i: &IdealHandle, n: u32, c: u32) -> Result<IdealHandle> {
    monomial_integral_closure(i, n + c)
}

/// The closure search needs a reduced ring that is a polynomial ring in
/// some of the variables and a monomial image of `J` there.
pub fn check_closure_input(j: &IdealHandle, ring: &RingSpec) -> Result<()> {
    if !radical_is_coordinate(ring) {
        return Err(Error::InvalidArgument(
            "the radical must be generated by variables".into(),
        ));
    }
    monomial_exponents(&ring.image_in_reduced(j)).map(|_| ())
}

/// Constant search with `\overline{I^{n+c}}` in place of `I^{n+c}`, for `J`
/// whose image `I` is a monomial ideal of a reduced ring that is a
/// polynomial ring.
pub fn bs_harness(
    j: &IdealHandle,
    ops: &OperatorSet,
    ring: &RingSpec,
    bounds: SearchBounds,
) -> Result<ConstantReport> {
    check_closure_input(j, ring)?;
    find_min_c_with(j, ops, ring, bounds, &closure_schedule)
}

/// Symbolic power `(I + rad)^(n·d + c)`. `witnesses[m - 1]` saturates the
/// `m`-th power, the last entry covering all larger powers; an empty list
/// means the witness 1.
pub fn symbolic_schedule<'a>(
    ring: &'a RingSpec,
    dimension: u32,
    witnesses: &'a [Polynomial],
) -> impl Fn(&IdealHandle, u32, u32) -> Result<IdealHandle> + Sync + 'a {
    move |i: &IdealHandle, k: u32, c: u32| {
        let m = k * dimension + c;
        let prime = i.sum(ring.radical())?;
        match witnesses.len() {
            0 => symbolic_power(&prime, m, &Polynomial::one(ring.nvars())),
            len => symbolic_power(&prime, m, &witnesses[(m.max(1) as usize).min(len) - 1]),
        }
    }
}

/// Constant search with the symbolic power `I^(n·d + c)` of the prime
/// `I + rad` in place of `I^{n+c}`; see [`symbolic_schedule`].
pub fn symb_harness(
    j: &IdealHandle,
    ops: &OperatorSet,
    ring: &RingSpec,
    dimension: u32,
    witnesses: &[Polynomial],
    bounds: SearchBounds,
) -> Result<ConstantReport> {
    find_min_c_with(
        j,
        ops,
        ring,
        bounds,
        &symbolic_schedule(ring, dimension, witnesses),
    )
}
