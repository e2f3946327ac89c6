//! Multivariate polynomial gcd over a field.
//!
//! Recursive primitive-PRS: pick a main variable, split off contents
//! (gcds of coefficients in the remaining variables, computed recursively)
//! and run a pseudo-remainder sequence on the primitive parts.

use std::collections::BTreeMap;

use super::monomial::Var;
use super::poly::Poly;
use crate::scalar::Field;

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    // Monomial fast path: gcd with a monomial is a monomial.
    if let Some(ma) = single_term(a) {
        return monomial_gcd_with(&ma, b);
    }
    if let Some(mb) = single_term(b) {
        return monomial_gcd_with(&mb, a);
    }
    let (va, vb) = (a.vars(), b.vars());
    // a common divisor only involves variables that occur in both
    let Some(&v) = va.iter().find(|v| vb.contains(v)) else {
        return Poly::one();
    };
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 && db == 0 {
        unreachable!("main variable occurs in one of the inputs");
    }
    if da == 0 {
        return gcd(a, &content(b, v));
    }
    if db == 0 {
        return gcd(&content(a, v), b);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g_content = gcd(&ca, &cb);
    let g_prim = primitive_prs(pa, pb, v);
    (&g_content * &g_prim).monic()
}

fn single_term<F: Field>(p: &Poly<F>) -> Option<super::monomial::Monomial> {
    (p.len() == 1).then(|| p.leading().unwrap().0.clone())
}

fn monomial_gcd_with<F: Field>(m: &super::monomial::Monomial, p: &Poly<F>) -> Poly<F> {
    let pairs = m.pairs().iter().map(|&(v, e)| (v, e.min(p.min_exponent(v)))).collect();
    Poly::monomial(super::monomial::Monomial::from_pairs(pairs))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content<F: Field>(p: &Poly<F>, v: Var) -> Poly<F> {
    let mut g = Poly::zero();
    for c in p.coefficients_in(v).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_prs<F: Field>(a: Poly<F>, b: Poly<F>, v: Var) -> Poly<F> {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        let pr = r.div_exact(&content(&r, v)).expect("content divides");
        a = b;
        b = pr;
    }
    let c = content(&b, v);
    b.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn pseudo_rem<F: Field>(a: &Poly<F>, b: &Poly<F>, v: Var) -> Poly<F> {
    let bc = b.coefficients_in(v);
    let db = *bc.keys().next_back().unwrap();
    let lb = bc[&db].clone();
    let mut r: BTreeMap<u32, Poly<F>> = a.coefficients_in(v);
    while let Some((&dr, _)) = r.iter().rev().find(|(_, c)| !c.is_zero()) {
        if dr < db {
            break;
        }
        let lr = r[&dr].clone();
        // r := lb * r - lr * v^(dr-db) * b
        let mut next: BTreeMap<u32, Poly<F>> = BTreeMap::new();
        for (&e, c) in &r {
            let t = &lb * c;
            if !t.is_zero() {
                next.insert(e, t);
            }
        }
        for (&e, c) in &bc {
            let key = e + dr - db;
            let t = &lr * c;
            let entry = next.entry(key).or_insert_with(Poly::zero);
            *entry = &*entry - &t;
        }
        next.retain(|_, c| !c.is_zero());
        r = next;
    }
    Poly::from_coefficients_in(v, &r)
}
