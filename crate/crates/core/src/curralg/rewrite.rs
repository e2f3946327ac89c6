//! Rewriting of raw products into the canonical term shape.
//!
//! A raw term is `coef · (2πi)^tpi · Π smooth · Π pv · odd_1 ∧ … ∧ odd_n ∧ opaque`.
//! Rules fire one at a time until none applies; the surviving term is read
//! off as an [`Atom`] with a single smooth coefficient.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::term::{Atom, Opaque};
use crate::error::{Error, Result};
use crate::scalar::{factorial, Field};
use crate::symalg::{ratfun_normalize, FormKey, Poly, RatFun, Var};

/// One factor of a product handed to the normalizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor<F: Field> {
    Smooth(RatFun<F>),
    /// The generator `dz_i` or `dz̄_i`.
    D(Var),
    /// Principal value `pv(1/z_i^a)`.
    Pv(usize, u32),
    /// Residue factor `∂̄(1/z_i^a)`.
    Res(usize, u32),
}

/// The rewriting rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `z^k · pv(1/z^a)` absorbs into a lower principal value or a polynomial.
    AbsorbPv,
    /// `z^k · ∂̄(1/z^a)` lowers the residue exponent or vanishes.
    AbsorbRes,
    /// Conjugates of a residue variable restrict to zero.
    KillConj,
    /// `dz̄_i ∧ ∂̄(1/z_i^a) = 0`.
    KillDbarRes,
    /// Graded reordering of odd factors.
    Reorder,
    /// Merging and normalizing smooth factors, pulling monomial poles into `pv`.
    MergeSmooth,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::MergeSmooth,
        Rule::AbsorbPv,
        Rule::KillConj,
        Rule::AbsorbRes,
        Rule::KillDbarRes,
        Rule::Reorder,
    ];
}

/// Order in which rules are tried on each term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Canonical,
    /// Rule order reshuffled before every step, and the work list processed
    /// in random order.
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Odd {
    D(Var),
    Res(u16, u32),
}

impl Odd {
    fn key(&self) -> (u8, u64) {
        match self {
            Odd::D(v) => (0, FormKey::bit(*v).trailing_zeros() as u64),
            Odd::Res(v, _) => (1, *v as u64),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct RawTerm<F: Field> {
    pub coef: F,
    pub tpi: i32,
    pub smooth: Vec<RatFun<F>>,
    pub pv: Vec<(u16, u32)>,
    pub odd: Vec<Odd>,
    pub opaque: Option<Opaque>,
}

impl<F: Field> RawTerm<F> {
    pub fn from_factors(coef: F, tpi: i32, factors: Vec<Factor<F>>) -> Self {
        let mut t = RawTerm {
            coef,
            tpi,
            smooth: vec![],
            pv: vec![],
            odd: vec![],
            opaque: None,
        };
        for f in factors {
            match f {
                Factor::Smooth(r) => t.smooth.push(r),
                Factor::D(v) => t.odd.push(Odd::D(v)),
                Factor::Pv(i, a) => t.pv.push((i as u16, a)),
                Factor::Res(i, a) => t.odd.push(Odd::Res(i as u16, a)),
            }
        }
        t
    }

    fn res_vars(&self) -> impl Iterator<Item = u16> + '_ {
        self.odd.iter().filter_map(|o| match o {
            Odd::Res(v, _) => Some(*v),
            Odd::D(_) => None,
        })
    }

    fn has_res(&self, v: u16) -> bool {
        self.res_vars().any(|w| w == v)
    }

    /// Same-variable `pv·res` and `res·res` products leave the fragment.
    fn check_fragment(&self, names: &[String]) -> Result<()> {
        let name = |v: u16| Var::z(v as usize).render(names);
        let mut seen = Vec::new();
        for v in self.res_vars() {
            if seen.contains(&v) {
                return Err(Error::Fragment(format!("res·res collision in variable {}", name(v))));
            }
            seen.push(v);
        }
        for &(v, _) in &self.pv {
            if seen.contains(&v) {
                return Err(Error::Fragment(format!("pv·res collision in variable {}", name(v))));
            }
        }
        Ok(())
    }

    fn with_smooth(&self, s: RatFun<F>) -> Self {
        RawTerm {
            smooth: vec![s],
            ..self.clone()
        }
    }
}

type Step<F> = Result<Option<Vec<RawTerm<F>>>>;

fn single_smooth<F: Field>(t: &RawTerm<F>) -> Option<&RatFun<F>> {
    match t.smooth.as_slice() {
        [s] => Some(s),
        _ => None,
    }
}

fn apply<F: Field>(rule: Rule, t: &RawTerm<F>) -> Step<F> {
    match rule {
        Rule::MergeSmooth => merge_smooth(t),
        Rule::AbsorbPv => absorb_pv(t),
        Rule::KillConj => kill_conj(t),
        Rule::AbsorbRes => absorb_res(t),
        Rule::KillDbarRes => Ok(kill_dbar_res(t)),
        Rule::Reorder => Ok(reorder(t)),
    }
}

fn merge_smooth<F: Field>(t: &RawTerm<F>) -> Step<F> {
    if t.coef.is_zero() {
        return Ok(Some(vec![]));
    }
    if t.smooth.len() >= 2 {
        let mut u = t.clone();
        let a = u.smooth.remove(0);
        let b = u.smooth.remove(0);
        u.smooth.insert(0, a.mul(&b));
        return Ok(Some(vec![u]));
    }
    let Some(s) = single_smooth(t) else { return Ok(None) };
    if s.is_zero() {
        return Ok(Some(vec![]));
    }
    if let Some(c) = s.constant_value() {
        let mut u = t.clone();
        u.smooth.clear();
        u.coef = u.coef * c;
        return Ok(Some(vec![u]));
    }
    for v in s.den().vars() {
        let e = s.den_power(v);
        if e == 0 {
            continue;
        }
        if v.conj {
            return Err(Error::Fragment(format!(
                "smooth denominator has a monomial pole in a conjugate variable (bar z{})",
                v.index
            )));
        }
        let mut u = t.with_smooth(s.clear_den_power(v, e));
        u.pv.push((v.index, e));
        return Ok(Some(vec![u]));
    }
    Ok(None)
}

fn absorb_pv<F: Field>(t: &RawTerm<F>) -> Step<F> {
    for i in 0..t.pv.len() {
        for j in i + 1..t.pv.len() {
            if t.pv[i].0 == t.pv[j].0 {
                let mut u = t.clone();
                let (_, b) = u.pv.remove(j);
                u.pv[i].1 += b;
                return Ok(Some(vec![u]));
            }
        }
    }
    let Some(s) = single_smooth(t) else { return Ok(None) };
    for (pos, &(v, a)) in t.pv.iter().enumerate() {
        let z = Var::z(v as usize);
        if !s.num().depends_on(z) || s.den().depends_on(z) {
            continue;
        }
        let mut out = Vec::new();
        for (k, nk) in s.num().coefficients_in(z) {
            let mut u = t.clone();
            if k < a {
                u.pv[pos].1 = a - k;
                u.smooth = vec![ratfun_normalize(nk, s.den().clone())];
            } else {
                u.pv.remove(pos);
                let num = nk * Poly::z_pow(v as usize, k - a);
                u.smooth = vec![ratfun_normalize(num, s.den().clone())];
            }
            out.push(u);
        }
        return Ok(Some(out));
    }
    Ok(None)
}

fn kill_conj<F: Field>(t: &RawTerm<F>) -> Step<F> {
    let Some(s) = single_smooth(t) else { return Ok(None) };
    for v in t.res_vars() {
        let zb = Var::bar(v as usize);
        if s.depends_on(zb) {
            let r = s
                .subs(zb, &F::zero())
                .map_err(|_| Error::Fragment(format!("smooth factor is singular along the residue support of z{v}")))?;
            return Ok(Some(vec![t.with_smooth(r)]));
        }
    }
    Ok(None)
}

fn absorb_res<F: Field>(t: &RawTerm<F>) -> Step<F> {
    let Some(s) = single_smooth(t) else { return Ok(None) };
    for (pos, o) in t.odd.iter().enumerate() {
        let Odd::Res(v, a) = *o else { continue };
        let z = Var::z(v as usize);
        if !s.depends_on(z) || s.den_power(z) > 0 || s.depends_on(Var::bar(v as usize)) {
            continue;
        }
        // Taylor jet of the smooth factor in z up to order a-1
        let mut out = Vec::new();
        let push = |out: &mut Vec<RawTerm<F>>, k: u32, c: RatFun<F>| {
            if c.is_zero() {
                return;
            }
            let mut u = t.with_smooth(c);
            u.odd[pos] = Odd::Res(v, a - k);
            out.push(u);
        };
        if !s.den().depends_on(z) {
            for (k, nk) in s.num().coefficients_in(z) {
                if k < a {
                    push(&mut out, k, ratfun_normalize(nk, s.den().clone()));
                }
            }
        } else {
            let mut deriv = s.clone();
            for k in 0..a {
                let at0 = deriv.subs(z, &F::zero())?;
                push(&mut out, k, at0.scale(&(F::one() / factorial::<F>(k as usize))));
                deriv = deriv.derivative(z);
            }
        }
        return Ok(Some(out));
    }
    Ok(None)
}

fn kill_dbar_res<F: Field>(t: &RawTerm<F>) -> Option<Vec<RawTerm<F>>> {
    for o in &t.odd {
        if let Odd::D(v) = o {
            if v.conj && t.has_res(v.index) {
                return Some(vec![]);
            }
        }
    }
    None
}

fn reorder<F: Field>(t: &RawTerm<F>) -> Option<Vec<RawTerm<F>>> {
    for i in 0..t.odd.len().saturating_sub(1) {
        let (a, b) = (t.odd[i].key(), t.odd[i + 1].key());
        if a == b {
            // repeated generator; a repeated residue variable was rejected earlier
            return Some(vec![]);
        }
        if a > b {
            let mut u = t.clone();
            u.odd.swap(i, i + 1);
            u.coef = -u.coef;
            return Some(vec![u]);
        }
    }
    None
}

/// Reads off the canonical term once no rule applies.
fn finalize<F: Field>(t: RawTerm<F>, names: &[String]) -> Result<(Atom, RatFun<F>)> {
    let s = match t.smooth.as_slice() {
        [] => RatFun::constant(t.coef.clone()),
        [s] => s.scale(&t.coef),
        _ => unreachable!("smooth factors merge before finalizing"),
    };
    let mut pv = t.pv.clone();
    pv.sort();
    for &(v, _) in &pv {
        if s.den().depends_on(Var::z(v as usize)) {
            return Err(Error::Fragment(format!(
                "principal value in {} multiplies a smooth factor whose denominator depends on it",
                Var::z(v as usize).render(names)
            )));
        }
    }
    let mut forms = FormKey::EMPTY;
    let mut res = Vec::new();
    for o in &t.odd {
        match *o {
            Odd::D(v) => forms = FormKey(forms.0 | FormKey::bit(v)),
            Odd::Res(v, a) => res.push((v, a)),
        }
    }
    Ok((
        Atom {
            tpi: t.tpi,
            forms,
            res,
            pv,
            opaque: t.opaque,
        },
        s,
    ))
}

/// Rewrites raw terms to normal form, returning `(atom, coefficient)` pairs
/// (not yet merged).
pub(crate) fn rewrite_all<F: Field>(
    terms: Vec<RawTerm<F>>,
    schedule: Schedule,
    names: &[String],
) -> Result<Vec<(Atom, RatFun<F>)>> {
    let mut rng = match schedule {
        Schedule::Canonical => None,
        Schedule::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    for t in &terms {
        t.check_fragment(names)?;
    }
    let mut work = terms;
    let mut done = Vec::new();
    let mut rules = Rule::ALL;
    while !work.is_empty() {
        let t = match rng.as_mut() {
            Some(rng) => {
                let i = (0..work.len()).collect::<Vec<_>>().choose(rng).copied().unwrap_or(0);
                work.swap_remove(i)
            }
            None => work.pop().expect("non-empty"),
        };
        if let Some(rng) = rng.as_mut() {
            rules.shuffle(rng);
        }
        let mut fired = false;
        for rule in rules {
            if let Some(next) = apply(rule, &t)? {
                for u in &next {
                    u.check_fragment(names)?;
                }
                work.extend(next);
                fired = true;
                break;
            }
        }
        if !fired {
            done.push(finalize(t, names)?);
        }
    }
    Ok(done)
}
