use super::rewrite::{Odd, Schedule};
use super::term::{Atom, CurrentSum};
use crate::cycles::{Cycle, VarSet};
use crate::error::{Error, Result};
use crate::scalar::{sign, Field, Scalar};
use crate::symalg::{Poly, RatFun, Var};

/// `∂̄` as a graded derivation: differentiates smooth coefficients, turns
/// principal values into residues, kills residues.
pub fn dbar<F: Field>(c: &CurrentSum<F>) -> Result<CurrentSum<F>> {
    dbar_with(c, Schedule::Canonical)
}

pub fn dbar_with<F: Field>(c: &CurrentSum<F>, schedule: Schedule) -> Result<CurrentSum<F>> {
    let mut raws = Vec::new();
    for (atom, r) in c.atoms() {
        if let Some(o) = &atom.opaque {
            return Err(Error::Fragment(format!("dbar of the opaque current {}", o.name)));
        }
        let base = CurrentSum::raw(atom, r);
        // the smooth coefficient and principal values are even and sit leftmost
        for v in r.vars().into_iter().filter(|v| v.conj) {
            let mut t = base.clone();
            t.smooth = vec![r.derivative(v)];
            t.odd.insert(0, Odd::D(v));
            raws.push(t);
        }
        for (i, &(v, a)) in atom.pv.iter().enumerate() {
            let mut t = base.clone();
            t.pv.remove(i);
            t.odd.insert(0, Odd::Res(v, a));
            raws.push(t);
        }
    }
    CurrentSum::from_raw(raws, schedule, &[])
}

/// Norm-square polynomial `Σ_{i∈A} z_i z̄_i`.
fn norm_square<F: Field>(a: VarSet) -> Poly<F> {
    a.iter().fold(Poly::zero(), |acc, i| {
        acc + Poly::var(Var::z(i)) * Poly::var(Var::bar(i))
    })
}

/// Zero set of a smooth coefficient's denominator, as coordinate subspaces.
///
/// Denominators must be products of norm squares `Σ_{i∈A} |z_i|²`; anything
/// else is outside the fragment.
pub fn singular_support<F: Field>(r: &RatFun<F>) -> Option<Vec<VarSet>> {
    let mut den = r.den().clone();
    let idx = VarSet::from_indices(den.vars().into_iter().map(|v| v.idx()));
    let mut subsets: Vec<VarSet> = (1..1u64 << idx.len())
        .map(|mask| {
            let all: Vec<usize> = idx.iter().collect();
            VarSet::from_indices(
                all.iter()
                    .enumerate()
                    .filter(|(j, _)| mask & (1 << j) != 0)
                    .map(|(_, &i)| i),
            )
        })
        .collect();
    subsets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut comps = Vec::new();
    'outer: while !den.is_constant() {
        for &a in &subsets {
            if let Some(q) = den.div_exact(&norm_square(a)) {
                den = q;
                if !comps.contains(&a) {
                    comps.push(a);
                }
                continue 'outer;
            }
        }
        return None;
    }
    Some(comps)
}

/// Restriction `1_W c` to `W = V(s)`.
///
/// A term whose support lies in `W` is kept. Otherwise the residue part
/// restricts to zero and what is left lives on `W ∩ V(res) ∩ singsupp`; the
/// term is dropped when that has codimension above its antiholomorphic
/// degree. Anything else is reported as undecidable.
pub fn restrict<F: Field>(s: VarSet, c: &CurrentSum<F>) -> Result<CurrentSum<F>> {
    let mut out = CurrentSum::zero();
    for (atom, r) in c.atoms() {
        if keep_under_restriction(s, atom, r)? {
            out.insert(atom.clone(), r.clone());
        }
    }
    Ok(out)
}

fn keep_under_restriction<F: Field>(s: VarSet, atom: &Atom, r: &RatFun<F>) -> Result<bool> {
    let support = atom.support();
    if support.iter().all(|c| s.is_subset(*c)) {
        return Ok(true);
    }
    let q = atom.q() as usize;
    let undecidable = |why: &str| Err(Error::RestrictionUndecidable(why.to_string()));
    if atom.opaque.is_some() {
        let codim = support.iter().map(|c| c.union(s).len()).min().unwrap_or(usize::MAX);
        return if codim > q {
            Ok(false)
        } else {
            undecidable("opaque current meets W in low codimension")
        };
    }
    let t = atom.res_vars();
    let Some(mut sing) = singular_support(r) else {
        return undecidable("unrecognized smooth denominator");
    };
    sing.extend(atom.pv.iter().map(|&(v, _)| VarSet::singleton(v as usize)));
    let codim = sing.iter().map(|a| a.union(s).union(t).len()).min();
    match codim {
        None => Ok(false),
        Some(c) if c > q => Ok(false),
        Some(_) => undecidable("smooth part singular along W in codimension ≤ q"),
    }
}

/// Restriction to a union of coordinate subspaces, by inclusion–exclusion.
pub fn restrict_union<F: Field>(components: &[VarSet], c: &CurrentSum<F>) -> Result<CurrentSum<F>> {
    let n = components.len();
    let mut out = CurrentSum::zero();
    for mask in 1u64..(1 << n) {
        let inter = (0..n)
            .filter(|j| mask & (1 << j) != 0)
            .fold(VarSet::EMPTY, |acc, j| acc.union(components[j]));
        let part = restrict(inter, c)?;
        out = if mask.count_ones() % 2 == 1 {
            out.add(&part)
        } else {
            out.sub(&part)
        };
    }
    Ok(out)
}

/// Drops every term supported in codimension larger than its
/// antiholomorphic degree.
pub fn dimension_principle_reduce<F: Field>(c: &CurrentSum<F>) -> CurrentSum<F> {
    c.filter(|a| {
        let codim = a.support().iter().map(|s| s.len()).min().unwrap_or(0);
        codim <= a.q() as usize
    })
}

/// `(−1)^{p(p−1)/2 + p²}`.
pub fn c_sign(p: usize) -> bool {
    (p * (p.saturating_sub(1)) / 2 + p * p) % 2 == 1
}

/// Matches terms against `∂̄(1/z_{s_p})∧⋯∧∂̄(1/z_{s_1})∧dz_{s_1}∧⋯∧dz_{s_p} = (2πi)^p [V(S)]`.
///
/// Returns the matched cycle and the unmatched remainder.
pub fn normalize_to_cycle<F: Field>(c: &CurrentSum<F>) -> (Cycle<F>, CurrentSum<F>) {
    let mut cycle = Cycle::zero();
    let mut rest = CurrentSum::zero();
    for (atom, r) in c.atoms() {
        match match_atom(atom, r) {
            Some((s, m)) => cycle.add_mass(s, m),
            None => rest.insert(atom.clone(), r.clone()),
        }
    }
    (cycle, rest)
}

fn match_atom<F: Field>(atom: &Atom, r: &RatFun<F>) -> Option<(VarSet, Scalar<F>)> {
    let c = r.constant_value()?;
    let s = atom.res_vars();
    let ok = atom.opaque.is_none()
        && atom.pv.is_empty()
        && !s.is_empty()
        && atom.res.iter().all(|&(_, a)| a == 1)
        && atom.forms.anti_degree() == 0
        && atom.forms.gens().iter().map(|v| v.idx()).eq(s.iter());
    if !ok {
        return None;
    }
    // stored as dz_S ∧ res_S (both ascending); reordering costs C_p
    let p = s.len();
    let mass = Scalar::new(c * sign::<F>(c_sign(p)), atom.tpi + p as i32);
    Some((s, mass))
}
