use std::collections::BTreeMap;
use std::fmt;

use super::monomial::Var;
use super::poly::Poly;
use super::ratfun::RatFun;
use crate::scalar::Field;

/// Maximum number of coordinates a form may involve.
pub const MAX_VARS: usize = 32;

/// A wedge monomial of the generators `dz_i`, `dz̄_i`.
///
/// Bit `i` is `dz̄_i`, bit `32 + i` is `dz_i`; the canonical product order is
/// ascending bit order, i.e. all `dz̄` factors by index, then all `dz`
/// factors by index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormKey(pub u64);

impl FormKey {
    pub const EMPTY: FormKey = FormKey(0);

    pub fn bit(v: Var) -> u64 {
        assert!(v.idx() < MAX_VARS, "at most {MAX_VARS} variables");
        if v.conj {
            1 << v.idx()
        } else {
            1 << (32 + v.idx())
        }
    }

    pub fn single(v: Var) -> Self {
        FormKey(Self::bit(v))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & Self::bit(v) != 0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    /// Number of `dz̄` generators.
    pub fn anti_degree(self) -> u32 {
        (self.0 & 0xffff_ffff).count_ones()
    }

    pub fn holo_degree(self) -> u32 {
        (self.0 >> 32).count_ones()
    }

    /// Generators in canonical order.
    pub fn gens(self) -> Vec<Var> {
        (0..64)
            .filter(|b| self.0 & (1u64 << b) != 0)
            .map(|b| if b < 32 { Var::bar(b) } else { Var::z(b - 32) })
            .collect()
    }

    /// `self ∧ other` as `(sign is negative, key)`, or `None` if they share a generator.
    pub fn wedge(self, other: FormKey) -> Option<(bool, FormKey)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            // generators of `self` sitting above bit b must hop over it
            let above = if b == 63 { 0 } else { self.0 >> (b + 1) };
            swaps += above.count_ones();
            rest &= rest - 1;
        }
        Some((swaps % 2 == 1, FormKey(self.0 | other.0)))
    }

    pub fn render(self, names: &[String]) -> String {
        self.gens()
            .into_iter()
            .map(|v| {
                let name = Var::z(v.idx()).render(names);
                if v.conj {
                    format!("dbar({name})")
                } else {
                    format!("d({name})")
                }
            })
            .collect::<Vec<_>>()
            .join("^")
    }
}

/// Differential form with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form<F> {
    terms: BTreeMap<FormKey, RatFun<F>>,
}

impl<F: Field> Form<F> {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::function(RatFun::one())
    }

    pub fn function(r: RatFun<F>) -> Self {
        Self::term(r, FormKey::EMPTY)
    }

    pub fn poly(p: Poly<F>) -> Self {
        Self::function(RatFun::from_poly(p))
    }

    pub fn term(r: RatFun<F>, key: FormKey) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(key, r);
        }
        Form { terms }
    }

    /// The generator `dz_i` (or `dz̄_i` for a conjugate variable).
    pub fn d_var(v: Var) -> Self {
        Self::term(RatFun::one(), FormKey::single(v))
    }

    pub fn add_term(&mut self, key: FormKey, r: RatFun<F>) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e = e.add(&r);
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, r);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormKey, &RatFun<F>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common total degree, `None` for zero or inhomogeneous forms.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Homogeneous component of degree `d`.
    pub fn part(&self, d: u32) -> Self {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .map(|(k, r)| (*k, r.clone()))
                .collect(),
        }
    }

    /// The coefficient function of a degree-zero form.
    pub fn as_function(&self) -> Option<RatFun<F>> {
        match self.terms.len() {
            0 => Some(RatFun::zero()),
            1 => self.terms.get(&FormKey::EMPTY).cloned(),
            _ => None,
        }
    }

    pub fn coefficient(&self, key: FormKey) -> RatFun<F> {
        self.terms.get(&key).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, r) in &other.terms {
            out.add_term(*k, r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Form {
            terms: self.terms.iter().map(|(k, r)| (*k, r.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (k, r) in &self.terms {
            out.add_term(*k, r.scale(c));
        }
        out
    }

    pub fn mul_function(&self, f: &RatFun<F>) -> Self {
        let mut out = Self::zero();
        for (k, r) in &self.terms {
            out.add_term(*k, r.mul(f));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ka, ra) in &self.terms {
            for (kb, rb) in &other.terms {
                if let Some((neg, k)) = ka.wedge(*kb) {
                    let r = ra.mul(rb);
                    out.add_term(k, if neg { r.neg() } else { r });
                }
            }
        }
        out
    }

    /// `(∂f, ∂̄f)`: the holomorphic and antiholomorphic parts of `df`.
    pub fn exterior_d(&self) -> (Self, Self) {
        let mut holo = Self::zero();
        let mut anti = Self::zero();
        for (k, r) in &self.terms {
            for v in r.vars() {
                let dr = r.derivative(v);
                if dr.is_zero() {
                    continue;
                }
                let Some((neg, key)) = FormKey::single(v).wedge(*k) else {
                    continue;
                };
                let dr = if neg { dr.neg() } else { dr };
                if v.conj {
                    anti.add_term(key, dr);
                } else {
                    holo.add_term(key, dr);
                }
            }
        }
        (holo, anti)
    }

    pub fn d(&self) -> Self {
        let (h, a) = self.exterior_d();
        h.add(&a)
    }

    pub fn dbar(&self) -> Self {
        self.exterior_d().1
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, r)| render_coeff_times(r, &k.render(names), names))
            .collect();
        join_signed(parts)
    }
}

/// Renders `r * rest` in the case-file grammar.
pub(crate) fn render_coeff_times<F: Field>(r: &RatFun<F>, rest: &str, names: &[String]) -> String {
    if rest.is_empty() {
        let s = r.render(names);
        return if r.num().len() > 1 && r.den().is_one() {
            format!("({s})")
        } else {
            s
        };
    }
    if r.is_one() {
        return rest.to_string();
    }
    if r.neg().is_one() {
        return format!("-{rest}");
    }
    let s = r.render(names);
    let simple = r.den().is_one() && r.num().len() == 1;
    if simple {
        format!("{s}*{rest}")
    } else {
        format!("({s})*{rest}")
    }
}

pub(crate) fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

impl<F: Field> fmt::Debug for Form<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({})", self.render(&[]))
    }
}

impl<F: Field> From<Poly<F>> for Form<F> {
    fn from(p: Poly<F>) -> Self {
        Form::poly(p)
    }
}

/// `a ∧ b`.
pub fn wedge<F: Field>(a: &Form<F>, b: &Form<F>) -> Form<F> {
    a.wedge(b)
}

/// `(∂f, ∂̄f)`.
pub fn exterior_d<F: Field>(f: &Form<F>) -> (Form<F>, Form<F>) {
    f.exterior_d()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;
    type Fm = Form<BigRational>;

    fn v(i: usize) -> P {
        P::var(Var::z(i))
    }
    fn dz(i: usize) -> Fm {
        Fm::d_var(Var::z(i))
    }

    #[test]
    fn anticommutation() {
        assert_eq!(dz(0).wedge(&dz(1)), dz(1).wedge(&dz(0)).neg());
        let dxb = Fm::d_var(Var::bar(0));
        assert!(dxb.wedge(&dxb).is_zero());
    }

    #[test]
    fn bilinearity() {
        // (z dx + x dz) ∧ (−dy) = −z dx∧dy − x dz∧dy
        let (x, z) = (v(0), v(2));
        let a = Fm::poly(z.clone())
            .wedge(&dz(0))
            .add(&Fm::poly(x.clone()).wedge(&dz(2)));
        let lhs = a.wedge(&dz(1).neg());
        let rhs = Fm::poly(z)
            .wedge(&dz(0))
            .wedge(&dz(1))
            .neg()
            .sub(&Fm::poly(x).wedge(&dz(2)).wedge(&dz(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_of_product() {
        let (x, z) = (v(0), v(2));
        let (h, a) = Fm::poly(&x * &z).exterior_d();
        assert_eq!(h, Fm::poly(z).wedge(&dz(0)).add(&Fm::poly(x).wedge(&dz(2))));
        assert!(a.is_zero());
    }

    #[test]
    fn dbar_of_conjugate() {
        let (h, a) = Fm::poly(P::var(Var::bar(0))).exterior_d();
        assert!(h.is_zero());
        assert_eq!(a, Fm::d_var(Var::bar(0)));
    }

    #[test]
    fn power_rule() {
        let k = 4;
        let (h, _) = Fm::poly(v(1).pow(k)).exterior_d();
        let expect = Fm::poly(v(1).pow(k - 1).scale(&BigRational::from_integer(4.into()))).wedge(&dz(1));
        assert_eq!(h, expect);
    }

    #[test]
    fn canonical_order_puts_conjugates_first() {
        let k = FormKey::single(Var::z(0)).wedge(FormKey::single(Var::bar(1))).unwrap();
        // dx ∧ dȳ = −dȳ ∧ dx in canonical order
        assert!(k.0);
        assert_eq!(k.1.gens(), vec![Var::bar(1), Var::z(0)]);
    }
}
