//! Exact division and multivariate gcd over Q via recursive primitive
//! pseudo-remainder sequences.

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::polynomial::Polynomial;

/// `a / b` if `b` divides `a` exactly.
pub fn exact_div(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    if b.is_zero() {
        return None;
    }
    let ord = MonomialOrder::Lex;
    let (lb, cb) = b.leading_term(&ord).map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rem = a.clone();
    let mut quo = Polynomial::zero(a.nvars());
    while let Some((lr, cr)) = rem.leading_term(&ord).map(|(m, c)| (m.clone(), c.clone())) {
        let q = lb.quotient_of(&lr)?;
        let t = Polynomial::term(q, cr / &cb);
        rem = rem - &t * b;
        quo = quo + t;
    }
    Some(quo)
}

fn highest_var(p: &Polynomial) -> Option<usize> {
    (0..p.nvars()).rev().find(|&v| p.uses_var(v))
}

/// Content with respect to `var`: gcd of the coefficients of powers of `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.nvars());
    for k in 0..=p.degree_in(var) {
        let c = p.coefficient_in(var, k);
        if !c.is_zero() {
            g = gcd(&g, &c);
            if g.is_constant() {
                break;
            }
        }
    }
    g
}

fn primitive_part_in(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    exact_div(p, &c).expect("content divides")
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = b.degree_in(var);
    let lb = b.coefficient_in(var, n);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= n {
        let d = r.degree_in(var);
        let lr = r.coefficient_in(var, d);
        let shift = Monomial::var(r.nvars(), var).pow(d - n);
        r = &(&lb * &r) - &(&lr * &b.mul_monomial(&shift));
    }
    r
}

/// Greatest common divisor, normalized to be monic under grevlex.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let ord = MonomialOrder::Grevlex;
    if a.is_zero() {
        return b.monic(&ord);
    }
    if b.is_zero() {
        return a.monic(&ord);
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.nvars());
    }
    let va = highest_var(a).expect("nonconstant");
    let vb = highest_var(b).expect("nonconstant");
    let var = va.max(vb);
    if !a.uses_var(var) {
        return gcd(a, &content_in(b, var));
    }
    if !b.uses_var(var) {
        return gcd(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let cont = gcd(&ca, &cb);
    let mut x = exact_div(a, &ca).expect("content divides");
    let mut y = exact_div(b, &cb).expect("content divides");
    if x.degree_in(var) < y.degree_in(var) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = pseudo_remainder(&x, &y, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            y = Polynomial::one(a.nvars());
            break;
        }
        x = y;
        y = primitive_part_in(&r, var);
    }
    (&cont * &y).monic(&ord)
}

/// Least common multiple, monic under grevlex.
pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(a.nvars());
    }
    let g = gcd(a, b);
    exact_div(&(a * b), &g)
        .expect("gcd divides")
        .monic(&MonomialOrder::Grevlex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn exact_division() {
        assert_eq!(exact_div(&p("x^2 - y^2"), &p("x - y")).unwrap(), p("x + y"));
        assert!(exact_div(&p("x^2 + 1"), &p("x - y")).is_none());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("x^2 - y^2"), &p("x^2 + 2*x*y + y^2")), p("x + y"));
        assert_eq!(gcd(&p("2*x*y*z"), &p("4*x^2*z")), p("x*z"));
        assert_eq!(gcd(&p("x + 1"), &p("y")), p("1"));
        let f = p("(x - y*z)*(x + z^2)^2");
        let g = p("(x + z^2)*(y - 3)");
        assert_eq!(gcd(&f, &g), p("x + z^2"));
        assert_eq!(lcm(&p("x*y"), &p("y*z")), p("x*y*z"));
    }
}
