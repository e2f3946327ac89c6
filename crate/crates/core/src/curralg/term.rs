use std::collections::BTreeMap;
use std::fmt;

use super::rewrite::{rewrite_all, Factor, Odd, RawTerm, Schedule};
use crate::cycles::VarSet;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::symalg::{join_signed, render_coeff_times, Form, FormKey, Poly, RatFun, Var};

/// A named current known only through its bidegree and support.
///
/// Used for correction terms whose value is never computed but whose
/// vanishing follows from the dimension principle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Opaque {
    pub name: String,
    /// Antiholomorphic degree.
    pub q: u32,
    /// Support, as a union of coordinate subspaces `V(S)`.
    pub support: Vec<VarSet>,
}

/// Shape of a normalized term, everything except its smooth coefficient.
///
/// The term denotes `(2πi)^tpi · r · forms ∧ res_1 ∧ … ∧ res_k ∧ opaque · Π pv`
/// with residue factors in ascending variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub tpi: i32,
    pub forms: FormKey,
    /// `∂̄(1/z_v^a)` factors, ascending in `v`.
    pub res: Vec<(u16, u32)>,
    /// `pv(1/z_v^a)` factors, ascending in `v`.
    pub pv: Vec<(u16, u32)>,
    pub opaque: Option<Opaque>,
}

impl Atom {
    pub fn res_vars(&self) -> VarSet {
        VarSet::from_indices(self.res.iter().map(|&(v, _)| v as usize))
    }

    /// Antiholomorphic degree.
    pub fn q(&self) -> u32 {
        self.res.len() as u32 + self.forms.anti_degree() + self.opaque.as_ref().map_or(0, |o| o.q)
    }

    /// Total degree of the term.
    pub fn degree(&self) -> u32 {
        self.forms.degree() + self.res.len() as u32 + self.opaque.as_ref().map_or(0, |o| o.q)
    }

    /// Odd factors in written order.
    pub(crate) fn odd(&self) -> Vec<Odd> {
        let mut out: Vec<Odd> = self.forms.gens().into_iter().map(Odd::D).collect();
        out.extend(self.res.iter().map(|&(v, a)| Odd::Res(v, a)));
        out
    }

    /// Support as a union of coordinate subspaces.
    pub fn support(&self) -> Vec<VarSet> {
        let t = self.res_vars();
        match &self.opaque {
            Some(o) => o.support.iter().map(|s| s.union(t)).collect(),
            None => vec![t],
        }
    }

    fn render(&self, r: &RatFun<impl Field>, names: &[String]) -> String {
        let name = |v: u16| Var::z(v as usize).render(names);
        let pow = |v: u16, a: u32| if a == 1 { name(v) } else { format!("{}^{a}", name(v)) };
        let mut odd: Vec<String> = Vec::new();
        if self.forms != FormKey::EMPTY {
            odd.push(self.forms.render(names));
        }
        odd.extend(self.res.iter().map(|&(v, a)| format!("res(1/{})", pow(v, a))));
        if let Some(o) = &self.opaque {
            odd.push(o.name.clone());
        }
        let mut rest: Vec<String> = Vec::new();
        if self.tpi != 0 {
            rest.push(if self.tpi == 1 {
                "(2πi)".into()
            } else {
                format!("(2πi)^{}", self.tpi)
            });
        }
        rest.extend(self.pv.iter().map(|&(v, a)| format!("pv(1/{})", pow(v, a))));
        if !odd.is_empty() {
            rest.push(odd.join("^"));
        }
        render_coeff_times(r, &rest.join("*"), names)
    }
}

/// Public view of one normalized term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentTerm<F: Field> {
    pub coef: Scalar<F>,
    /// Smooth form part (a single wedge monomial with its coefficient).
    pub smooth: Form<F>,
    pub pv: Vec<(usize, u32)>,
    pub res: Vec<(usize, u32)>,
    pub opaque: Option<Opaque>,
}

/// Finite sum of current terms, kept in rewriting normal form with like
/// terms merged.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurrentSum<F> {
    terms: BTreeMap<Atom, RatFun<F>>,
}

impl<F: Field> Default for CurrentSum<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> CurrentSum<F> {
    pub fn zero() -> Self {
        CurrentSum { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_form(&Form::one())
    }

    /// Smooth forms are already in normal form unless their coefficients
    /// carry monomial poles, which become principal values.
    pub fn from_form(f: &Form<F>) -> Self {
        let mut raws = Vec::new();
        for (k, r) in f.terms() {
            let mut factors = vec![Factor::Smooth(r.clone())];
            factors.extend(k.gens().into_iter().map(Factor::D));
            raws.push(RawTerm::from_factors(F::one(), 0, factors));
        }
        Self::from_raw(raws, Schedule::Canonical, &[]).expect("smooth forms stay in the fragment")
    }

    pub fn scalar(c: Scalar<F>) -> Self {
        let mut s = Self::zero();
        s.insert(
            Atom {
                tpi: c.tpi,
                ..Self::unit_atom()
            },
            RatFun::constant(c.rat),
        );
        s
    }

    fn unit_atom() -> Atom {
        Atom {
            tpi: 0,
            forms: FormKey::EMPTY,
            res: vec![],
            pv: vec![],
            opaque: None,
        }
    }

    /// `∂̄(1/z_i^a)`.
    pub fn res_atom(i: usize, a: u32) -> Self {
        Self::product(vec![Factor::Res(i, a)]).expect("single residue factor")
    }

    /// `pv(1/z_i^a)`.
    pub fn pv_atom(i: usize, a: u32) -> Self {
        Self::product(vec![Factor::Pv(i, a)]).expect("single principal value")
    }

    /// A named current of antiholomorphic degree `q` supported on the union
    /// of the given coordinate subspaces.
    pub fn opaque(name: &str, q: u32, support: Vec<VarSet>) -> Self {
        let mut s = Self::zero();
        let opaque = Opaque {
            name: name.to_string(),
            q,
            support,
        };
        s.insert(
            Atom {
                opaque: Some(opaque),
                ..Self::unit_atom()
            },
            RatFun::one(),
        );
        s
    }

    /// Normalizes an ordered product of factors.
    pub fn product(factors: Vec<Factor<F>>) -> Result<Self> {
        Self::product_with(F::one(), factors, Schedule::Canonical)
    }

    pub fn product_with(coef: F, factors: Vec<Factor<F>>, schedule: Schedule) -> Result<Self> {
        Self::from_raw(vec![RawTerm::from_factors(coef, 0, factors)], schedule, &[])
    }

    pub(crate) fn from_raw(raws: Vec<RawTerm<F>>, schedule: Schedule, names: &[String]) -> Result<Self> {
        let mut s = Self::zero();
        for (atom, r) in rewrite_all(raws, schedule, names)? {
            s.insert(atom, r);
        }
        Ok(s)
    }

    pub(crate) fn insert(&mut self, atom: Atom, r: RatFun<F>) {
        if r.is_zero() {
            return;
        }
        match self.terms.remove(&atom) {
            Some(old) => {
                let sum = old.add(&r);
                if !sum.is_zero() {
                    self.terms.insert(atom, sum);
                }
            }
            None => {
                self.terms.insert(atom, r);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, &RatFun<F>)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> Vec<CurrentTerm<F>> {
        self.terms
            .iter()
            .map(|(a, r)| CurrentTerm {
                coef: Scalar::two_pi_i(a.tpi),
                smooth: Form::term(r.clone(), a.forms),
                pv: a.pv.iter().map(|&(v, e)| (v as usize, e)).collect(),
                res: a.res.iter().map(|&(v, e)| (v as usize, e)).collect(),
                opaque: a.opaque.clone(),
            })
            .collect()
    }

    /// Common total degree, if homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Atom::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn filter(&self, keep: impl Fn(&Atom) -> bool) -> Self {
        CurrentSum {
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, r)| (a.clone(), r.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, r) in &other.terms {
            out.insert(a.clone(), r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CurrentSum {
            terms: self.terms.iter().map(|(a, r)| (a.clone(), r.scale(c))).collect(),
        }
    }

    pub fn scale_scalar(&self, c: &Scalar<F>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CurrentSum {
            terms: self
                .terms
                .iter()
                .map(|(a, r)| {
                    (
                        Atom {
                            tpi: a.tpi + c.tpi,
                            ..a.clone()
                        },
                        r.scale(&c.rat),
                    )
                })
                .collect(),
        }
    }

    /// Left multiplication by a function; may trigger absorption rules.
    pub fn mul_function(&self, f: &RatFun<F>) -> Result<Self> {
        current_mul(&Self::from_form(&Form::function(f.clone())), self)
    }

    /// The smooth form this sum denotes, with principal values folded back
    /// into monomial denominators; `None` if residues or opaque terms occur.
    pub fn as_form(&self) -> Option<Form<F>> {
        let mut f = Form::zero();
        for (a, r) in &self.terms {
            if !a.res.is_empty() || a.opaque.is_some() || a.tpi != 0 {
                return None;
            }
            let den =
                a.pv.iter()
                    .fold(Poly::one(), |acc, &(v, e)| acc * Poly::z_pow(v as usize, e));
            let r = r.div(&RatFun::from_poly(den)).expect("monomial is nonzero");
            f = f.add(&Form::term(r, a.forms));
        }
        Some(f)
    }

    pub fn as_ratfun(&self) -> Option<RatFun<F>> {
        let f = self.as_form()?;
        if f.is_zero() {
            return Some(RatFun::zero());
        }
        f.as_function()
    }

    pub fn as_poly(&self) -> Option<Poly<F>> {
        self.as_ratfun()?.as_poly().cloned()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        join_signed(self.terms.iter().map(|(a, r)| a.render(r, names)).collect())
    }

    /// Raw form of one term, for re-normalization after an operation.
    pub(crate) fn raw(atom: &Atom, r: &RatFun<F>) -> RawTerm<F> {
        RawTerm {
            coef: F::one(),
            tpi: atom.tpi,
            smooth: vec![r.clone()],
            pv: atom.pv.clone(),
            odd: atom.odd(),
            opaque: atom.opaque.clone(),
        }
    }
}

impl<F: Field> fmt::Debug for CurrentSum<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurrentSum({})", self.render(&[]))
    }
}

impl<F: Field> From<Form<F>> for CurrentSum<F> {
    fn from(f: Form<F>) -> Self {
        CurrentSum::from_form(&f)
    }
}

/// Product `a · b`, normalized. At most one factor may carry an opaque
/// current, and that factor's partner must be free of residues and
/// principal values.
pub fn current_mul<F: Field>(a: &CurrentSum<F>, b: &CurrentSum<F>) -> Result<CurrentSum<F>> {
    current_mul_with(a, b, Schedule::Canonical)
}

pub fn current_mul_with<F: Field>(a: &CurrentSum<F>, b: &CurrentSum<F>, schedule: Schedule) -> Result<CurrentSum<F>> {
    let mut raws = Vec::new();
    for (aa, ra) in a.atoms() {
        for (ab, rb) in b.atoms() {
            let mut t = CurrentSum::raw(aa, ra);
            t.tpi += ab.tpi;
            t.smooth.push(rb.clone());
            t.pv.extend(ab.pv.iter().cloned());
            let plain = |x: &Atom| x.res.is_empty() && x.pv.is_empty() && x.opaque.is_none();
            match (&aa.opaque, &ab.opaque) {
                (Some(_), Some(_)) => return Err(Error::Fragment("product of two opaque currents".into())),
                (Some(o), None) => {
                    if !plain(ab) {
                        return Err(Error::Fragment(format!("{} times a singular current", o.name)));
                    }
                    // move the right smooth form past the opaque factor
                    if (o.q * ab.forms.degree()) % 2 == 1 {
                        t.coef = -t.coef;
                    }
                }
                (None, Some(o)) => {
                    if !aa.res.is_empty() || !aa.pv.is_empty() {
                        return Err(Error::Fragment(format!("singular current times {}", o.name)));
                    }
                    t.opaque = Some(o.clone());
                }
                (None, None) => {}
            }
            t.odd.extend(ab.odd());
            raws.push(t);
        }
    }
    CurrentSum::from_raw(raws, schedule, &[])
}
