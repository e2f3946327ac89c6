use std::collections::BTreeMap;
use std::time::Instant;

use super::case::{Case, Currents, Mode, Report};
use crate::curralg::{
    ch_product, current_mul, dimension_principle_reduce, normalize_to_cycle, restrict, restrict_union, CurrentSum,
};
use crate::cycles::{
    fundamental_cycle, length_along, minimal_primes, multiplicity_along, Cycle, MonomialIdeal, VarSet,
};
use crate::error::{Error, Result};
use crate::expr::parse_current;
use crate::scalar::{factorial, sign, Field, Scalar};
use crate::superhom::{
    dphi_product, koszul_complex, lift_chain_map, staircase_gens, staircase_resolution, super_mul, super_trace,
    universal_resolution, verify_complex, FreeComplex, Matrix, SuperMatrix,
};
use crate::symalg::{Form, FormKey, Poly, RatFun, Var};

/// `(1/((2πi)^p p!)) · S`, read off as a cycle.
fn trace_to_cycle<F: Field>(s: &CurrentSum<F>, p: usize) -> (Cycle<F>, CurrentSum<F>) {
    let (cycle, rest) = normalize_to_cycle(s);
    let pre = Scalar::new(F::one() / factorial::<F>(p), -(p as i32));
    (cycle.scale(&pre), rest)
}

/// Pure powers `z_i^{a_i}` of distinct variables, if the polynomials are such.
pub fn pure_powers<F: Field>(f: &[Poly<F>]) -> Option<Vec<(usize, u32)>> {
    let mut out: Vec<(usize, u32)> = Vec::new();
    for p in f {
        let m = p.as_monomial()?;
        if !p.leading_coeff().is_one() || !p.is_holomorphic() {
            return None;
        }
        match m.pairs() {
            [(v, a)] if !out.iter().any(|&(w, _)| w == v.idx()) => out.push((v.idx(), *a)),
            _ => return None,
        }
    }
    Some(out)
}

/// Generators of `J` as a pure-power tuple, when `J` is such a complete intersection.
pub fn ideal_pure_powers(j: &MonomialIdeal) -> Option<Vec<(usize, u32)>> {
    let mut out = Vec::new();
    for g in j.gens() {
        let nz: Vec<(usize, u32)> = g
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        match nz.as_slice() {
            [one] => out.push(*one),
            _ => return None,
        }
    }
    Some(out)
}

fn z_powers<F: Field>(f: &[(usize, u32)]) -> Vec<Poly<F>> {
    f.iter().map(|&(v, a)| Poly::z_pow(v, a)).collect()
}

fn ideal_of(names: &[String], f: &[(usize, u32)]) -> Result<MonomialIdeal> {
    let gens = f
        .iter()
        .map(|&(v, a)| {
            let mut e = vec![0; names.len()];
            e[v] = a;
            e
        })
        .collect();
    MonomialIdeal::new(names.to_vec(), gens)
}

/// `tr(Dφ_1⋯Dφ_k · R)` for a 1×1 block `R : E_0 → E_k`.
fn trace_against<F: Field>(e: &FreeComplex<F>, k: usize, r: &SuperMatrix<CurrentSum<F>>) -> Result<CurrentSum<F>> {
    let prod = dphi_product(e, k)?;
    super_trace(&super_mul(&prod, r)?)
}

/// Complete intersection of pure powers through the Koszul complex and the
/// Coleff–Herrera product.
pub fn verify_ci<F: Field>(names: &[String], f: &[(usize, u32)]) -> Result<Report<F>> {
    let t0 = Instant::now();
    let p = f.len();
    if p == 0 {
        return Err(Error::Precondition("empty tuple".into()));
    }
    let mut rep = Report::new("ci", names);
    let e = koszul_complex(&z_powers::<F>(f))?;
    let r = ch_product::<F>(f)?;
    let prod = dphi_product(&e, p)?;
    rep.intermediate("Dφ_1⋯Dφ_p", prod.render(names));
    rep.intermediate("R^E_p", r.render(names));
    let s = super_trace(&super_mul(&prod, &r)?)?;
    rep.intermediate("tr(Dφ_1⋯Dφ_p R^E_p)", s.render(names));
    let (cycle, rest) = trace_to_cycle(&s, p);
    rep.computed = cycle;
    rep.remainder = rest;
    rep.oracle = fundamental_cycle(&ideal_of(names, f)?)?;
    rep.timings.push(("ci".into(), t0.elapsed()));
    Ok(rep)
}

fn codim(j: &MonomialIdeal) -> Result<usize> {
    Ok(minimal_primes(j)?.iter().map(|s| s.len()).min().unwrap_or(0))
}

/// Comparison with the Koszul complex of a pure-power complete intersection
/// inside `J`, for a resolution of length `codim J`.
pub fn verify_cm<F: Field>(
    j: &MonomialIdeal,
    e: &FreeComplex<F>,
    f: &[Poly<F>],
    lift_bound: Option<u32>,
    seed: u64,
) -> Result<Report<F>> {
    let t0 = Instant::now();
    let names = j.variables();
    let mut rep = Report::new("cm", names);
    let p = codim(j)?;
    if e.rank(0) != 1 {
        return Err(Error::Precondition("rank E_0 must be 1".into()));
    }
    let Some(ci) = pure_powers(f) else {
        return Err(Error::Unsupported(
            "unsupported CI tuple: need pure powers of distinct variables".into(),
        ));
    };
    for &(v, a) in &ci {
        let mut ex = vec![0; names.len()];
        ex[v] = a;
        if !j.contains(&ex) {
            return Err(Error::Precondition(format!(
                "{} is not in J",
                Poly::<F>::z_pow(v, a).render(names)
            )));
        }
    }
    if e.length() != p {
        return Err(Error::NotCohenMacaulay(format!(
            "resolution has length {} but codim J = {p}",
            e.length()
        )));
    }
    if ci.len() != p {
        return Err(Error::Unsupported(format!(
            "unsupported CI tuple: need {p} pure powers"
        )));
    }
    rep.check("E_0 has rank 1 (trace equals the τ-conjugated form)", true);
    let complex_ok = match verify_complex(e, seed) {
        Ok(()) => true,
        Err(Error::NotAComplex { level, reason }) => {
            rep.note(format!("resolution check failed at level {level}: {reason}"));
            false
        }
        Err(other) => return Err(other),
    };
    rep.check("E is a complex, generically exact", complex_ok);
    rep.oracle = fundamental_cycle(j)?;
    if !complex_ok {
        return Ok(rep);
    }
    let fk = koszul_complex(f)?;
    let a = lift_chain_map(&fk, e, Matrix::identity(1), lift_bound)?;
    for (k, m) in a.maps.iter().enumerate() {
        rep.intermediate(format!("a_{k}"), m.render(names));
    }
    let rf = ch_product::<F>(&ci)?;
    let ap = SuperMatrix::with_degree(p, p, 0, a.a(p).to_forms())?;
    // R^E_p a_0 − a_p R^F_p = ±∂̄M_p, with M_p of bidegree (0, p−1) on V(f)
    let m = CurrentSum::<F>::opaque(
        "M_p",
        (p - 1) as u32,
        vec![VarSet::from_indices(ci.iter().map(|c| c.0))],
    );
    let m_red = dimension_principle_reduce(&m);
    rep.check("M_p vanishes by the dimension principle", m_red.is_zero());
    rep.note(format!(
        "M_p: bidegree (0,{}), support codim {p} > {} ⇒ 0",
        p - 1,
        p - 1
    ));
    let re = super_mul(&ap, &rf)?;
    rep.intermediate("R^E_p = a_p R^F_p", re.render(names));
    let s = trace_against(e, p, &re)?;
    rep.intermediate("tr(Dφ_1⋯Dφ_p R^E_p)", s.render(names));
    let (cycle, rest) = trace_to_cycle(&s, p);
    rep.computed = cycle;
    rep.remainder = rest;
    rep.timings.push(("cm".into(), t0.elapsed()));
    Ok(rep)
}

/// Local verification along a minimal prime through the universal resolution.
pub fn verify_universal<F: Field>(j: &MonomialIdeal, w: VarSet) -> Result<Report<F>> {
    let t0 = Instant::now();
    let names = j.variables();
    let mut rep = Report::new("universal", names);
    let u = universal_resolution::<F>(j, w)?;
    let (p, m) = (u.p(), u.m());
    rep.intermediate("basis", u.render_basis(names));
    rep.intermediate("β", format!("{:?}", u.beta));
    rep.check(
        "chain map c satisfies φc = cψ",
        u.c.check(&u.koszul, &u.complex).is_ok(),
    );
    let upper = u
        .mult
        .iter()
        .all(|mi| (0..m).all(|r| (0..=r).all(|c| mi.get(r, c).is_zero())));
    rep.check("multiplication matrices strictly upper triangular", upper);

    let prod = dphi_product(&u.complex, p)?;
    let bt = SuperMatrix::with_degree(p, p, 0, u.btilde().to_forms())?;
    let b = super_mul(&prod, &bt)?;
    let tr_b = b.matrix().trace()?;
    let dz = FormKey(w.iter().fold(0, |acc, i| acc | FormKey::bit(Var::z(i))));
    let coeff = factorial::<F>(p) * F::from_int(m as i64);
    let expect = Form::term(RatFun::from_poly(u.z_beta_minus_one().scale(&coeff)), dz);
    rep.intermediate("tr B", tr_b.render(names));
    rep.check("tr B = p!·m·z^{β−1} dz", tr_b == expect);

    let powers: Vec<(usize, u32)> = u.vars.iter().copied().zip(u.beta.iter().copied()).collect();
    let rl = ch_product::<F>(&powers)?;
    let rl_entry = rl.entry(0, 0).clone();
    let cp = u.c.a(p);
    let mut rk = Matrix::<CurrentSum<F>>::zeros(m, m);
    for (i, alpha) in u.basis.iter().enumerate() {
        let col = u.mult_power(alpha).mul(cp)?;
        for r in 0..m {
            let c = col.get(r, 0);
            if !c.is_zero() {
                rk.set(
                    r,
                    i,
                    current_mul(&CurrentSum::from_form(&Form::poly(c.clone())), &rl_entry)?,
                );
            }
        }
    }
    let rk = SuperMatrix::with_degree(0, p, p as u32, rk)?;
    let full = super_mul(&prod, &rk)?.matrix().trace()?;
    let shortcut = current_mul(&CurrentSum::from_form(&tr_b), &rl_entry)?.scale(&sign::<F>(p * p % 2 == 1));
    rep.intermediate("tr(Dφ_1⋯Dφ_p R^K_p)", full.render(names));
    rep.check("full trace equals (tr B)·(−1)^{p²}·R^L_p", full == shortcut);
    let (cycle, rest) = trace_to_cycle(&full, p);
    rep.computed = cycle;
    rep.remainder = rest;
    rep.oracle = Cycle::single(w, Scalar::int(multiplicity_along(j, w)? as i64));
    rep.timings
        .push((format!("universal {}", w.render(names)), t0.elapsed()));
    Ok(rep)
}

/// Runs [`verify_universal`] along every minimal prime and adds up.
pub fn verify_universal_all<F: Field>(j: &MonomialIdeal) -> Result<Report<F>> {
    let mut rep = Report::new("universal", j.variables());
    for w in minimal_primes(j)? {
        rep.absorb(verify_universal(j, w)?, &w.render(j.variables()));
    }
    Ok(rep)
}

/// Roles `(x, y, z)` when `J = (xz, yz)` up to renaming.
fn nonpure_roles(j: &MonomialIdeal) -> Option<(usize, usize, usize)> {
    let gens = j.gens();
    if gens.len() != 2 {
        return None;
    }
    let supp = |g: &Vec<u32>| -> Vec<usize> { (0..g.len()).filter(|&i| g[i] > 0).collect() };
    let (a, b) = (supp(&gens[0]), supp(&gens[1]));
    if a.len() != 2 || b.len() != 2 || gens.iter().flatten().any(|&e| e > 1) {
        return None;
    }
    let z = *a.iter().find(|i| b.contains(i))?;
    let x = *a.iter().find(|&&i| i != z)?;
    let y = *b.iter().find(|&&i| i != z)?;
    (x != y).then_some(if x < y { (x, y, z) } else { (y, x, z) })
}

/// The resolution `φ_1 = [xz, yz]`, `φ_2 = [−y; x]` with its closed-form
/// residue current.
pub fn builtin_nonpure<F: Field>(
    names: &[String],
    (x, y, z): (usize, usize, usize),
) -> Result<(FreeComplex<F>, Currents<F>)> {
    let (xn, yn, zn) = (&names[x], &names[y], &names[z]);
    let xv = Poly::z_pow(x, 1);
    let yv = Poly::z_pow(y, 1);
    let zv = Poly::z_pow(z, 1);
    let e = FreeComplex::from_diffs(vec![
        Matrix::from_rows(vec![vec![&xv * &zv, &yv * &zv]])?,
        Matrix::from_rows(vec![vec![-yv.clone()], vec![xv.clone()]])?,
    ])?;
    let n = format!("({xn}*bar({xn}) + {yn}*bar({yn}))");
    let r1 = vec![
        vec![parse_current(&format!("bar({xn})/{n}*res(1/{zn})"), names)?],
        vec![parse_current(&format!("bar({yn})/{n}*res(1/{zn})"), names)?],
    ];
    let mu = parse_current(
        &format!("(dbar(-bar({yn})/{n})*bar({xn})/{n} + dbar(bar({xn})/{n})*bar({yn})/{n})^res(1/{zn})"),
        names,
    )?;
    let r2 = parse_current::<F>(&format!("1/{zn}*res(1/{yn})^res(1/{xn})"), names)?.add(&mu);
    let mut currents = BTreeMap::new();
    currents.insert(1, Matrix::from_rows(r1)?);
    currents.insert(2, Matrix::from_rows(vec![vec![r2]])?);
    Ok((e, currents))
}

/// `Σ_k (1/((2πi)^k k!)) tr(Dφ_1⋯Dφ_k 1_{W_k} R^E_k)` against the oracle.
pub fn verify_nonpure<F: Field>(case: &Case<F>) -> Result<Report<F>> {
    let t0 = Instant::now();
    let j = &case.ideal;
    let names = &case.variables;
    let mut rep = Report::new("nonpure", names);
    let roles = nonpure_roles(j);
    let (e, currents) = match (&case.resolution, &case.currents, roles) {
        (Some(e), Some(c), _) => (e.clone(), c.clone()),
        (None, None, Some(roles)) => {
            rep.note("using the built-in resolution and closed-form R^E for (xz, yz)");
            builtin_nonpure(names, roles)?
        }
        (None, None, None) => match ideal_pure_powers(j) {
            Some(f) => {
                let e = koszul_complex(&z_powers::<F>(&f))?;
                let mut c = BTreeMap::new();
                c.insert(f.len(), ch_product::<F>(&f)?.into_matrix());
                (e, c)
            }
            None => {
                return Err(Error::Unsupported(
                    "nonpure mode needs a resolution with injected currents for this ideal".into(),
                ))
            }
        },
        _ => {
            return Err(Error::Precondition(
                "nonpure mode needs both a resolution and currents".into(),
            ))
        }
    };
    if e.rank(0) != 1 {
        return Err(Error::Precondition("rank E_0 must be 1".into()));
    }
    rep.check("E_0 has rank 1 (trace equals the τ-conjugated form)", true);
    let complex_ok = verify_complex(&e, case.options.seed).is_ok();
    rep.check("E is a complex, generically exact", complex_ok);
    let primes = minimal_primes(j)?;
    let mut total = CurrentSum::zero();
    for k in 1..=e.length() {
        let wk: Vec<VarSet> = primes.iter().copied().filter(|p| p.len() == k).collect();
        let Some(rk) = currents.get(&k) else { continue };
        if rk.rows() != e.rank(k) || rk.cols() != 1 {
            return Err(Error::Shape(format!("R^E_{k} must be {}×1", e.rank(k))));
        }
        if wk.is_empty() {
            rep.note(format!("W_{k} is empty, so R_[{k}] = 0"));
            continue;
        }
        let restricted = rk.try_map(|c| restrict_union(&wk, c))?;
        let rk_sup = SuperMatrix::with_degree(0, k, k as u32, restricted)?;
        rep.intermediate(format!("R_[{k}] = 1_W{k} R^E_{k}"), rk_sup.render(names));
        let s = trace_against(&e, k, &rk_sup)?;
        rep.intermediate(format!("tr(Dφ_1⋯Dφ_{k} R_[{k}])"), s.render(names));
        let (cycle, rest) = trace_to_cycle(&s, k);
        rep.computed = rep.computed.add(&cycle);
        total = total.add(&rest);
    }
    rep.remainder = total;
    if let Some((x, y, z)) = roles.filter(|_| case.currents.is_none()) {
        let w2 = VarSet::from_indices([x, y]);
        let dbar_z = CurrentSum::<F>::res_atom(z, 1);
        rep.check("1_{x=y=0} ∂̄(1/z) = 0", restrict(w2, &dbar_z)?.is_zero());
        let (_, cur) = builtin_nonpure::<F>(names, (x, y, z))?;
        let r2 = cur[&2].get(0, 0).clone();
        let mu = r2.sub(&parse_current(
            &format!("1/{}*res(1/{})^res(1/{})", names[z], names[y], names[x]),
            names,
        )?);
        rep.intermediate("μ", mu.render(names));
        rep.check("1_{x=y=0} μ = 0", restrict(w2, &mu)?.is_zero());
    }
    rep.oracle = fundamental_cycle(j)?;
    rep.timings.push(("nonpure".into(), t0.elapsed()));
    Ok(rep)
}

/// The embedded-prime example `J = (y^k, x^ℓ y^m)` in variables `(x, y)`.
pub fn demo_embedded<F: Field>(k: u32, l: u32, m: u32) -> Result<Report<F>> {
    if !(1 <= m && m < k && l >= 1) {
        return Err(Error::Precondition(format!(
            "need 1 ≤ m < k and ℓ ≥ 1, got k={k}, ℓ={l}, m={m}"
        )));
    }
    let t0 = Instant::now();
    let names: Vec<String> = vec!["x".into(), "y".into()];
    let (x, y) = (0, 1);
    let mut rep = Report::new("demo ex-embedded", &names);
    let j = MonomialIdeal::new(names.clone(), vec![vec![0, k], vec![l, m]])?;
    let e = staircase_resolution::<F>(&staircase_gens(&j, x, y)?, x, y)?;
    rep.check("E is a complex, generically exact", verify_complex(&e, 0).is_ok());
    rep.intermediate("E", e.render(&names));
    let prod = dphi_product(&e, 2)?;
    rep.intermediate("Dφ_1 Dφ_2", prod.render(&names));
    let c = F::from_int(l as i64 * (2 * k as i64 - m as i64));

    // Dφ_1Dφ_2 = (−C dx∧dy) · a_0 with a_0 = x^{ℓ−1} y^{k−1}
    let a0 = Poly::z_pow(x, l - 1) * Poly::z_pow(y, k - 1);
    let dxdy = FormKey(FormKey::bit(Var::z(x)) | FormKey::bit(Var::z(y)));
    let factor = Form::term(RatFun::constant(-c.clone()), dxdy);
    rep.check(
        "Dφ_1Dφ_2 = −ℓ(2k−m) x^{ℓ−1}y^{k−1} dx∧dy",
        *prod.entry(0, 0) == factor.mul_function(&RatFun::from_poly(a0.clone())),
    );

    let f = koszul_complex(&[Poly::z_pow(y, 1), Poly::z_pow(x, 1)])?;
    let a = lift_chain_map(&f, &e, Matrix::from_fn(1, 1, |_, _| a0.clone()), None)?;
    for (i, mat) in a.maps.iter().enumerate() {
        rep.intermediate(format!("a_{i}"), mat.render(&names));
    }
    let closed_form = crate::superhom::ChainMap {
        maps: vec![
            Matrix::from_fn(1, 1, |_, _| a0.clone()),
            Matrix::from_rows(vec![
                vec![Poly::z_pow(x, l - 1), Poly::zero()],
                vec![Poly::zero(), Poly::z_pow(y, k - m - 1)],
            ])?,
            Matrix::identity(1),
        ],
    };
    rep.check(
        "closed-form a_1, a_2 form a chain map",
        closed_form.check(&f, &e).is_ok(),
    );

    let rf = ch_product::<F>(&[(y, 1), (x, 1)])?;
    rep.intermediate("R^F_2", rf.render(&names));
    let m2 = CurrentSum::<F>::opaque("M_2", 1, vec![VarSet::from_indices([x, y])]);
    rep.check(
        "M_2 vanishes by the dimension principle",
        dimension_principle_reduce(&m2).is_zero(),
    );
    rep.note("M_2: bidegree (0,1), support {x=y=0} of codim 2 > 1 ⇒ 0; hence R^E_2 a_0 = a_2 R^F_2");
    let ap = SuperMatrix::with_degree(2, 2, 0, a.a(2).to_forms())?;
    let re_a0 = super_mul(&ap, &rf)?;
    let factor_sm = SuperMatrix::with_degree(2, 0, 2, Matrix::from_fn(1, 1, |_, _| factor.clone()))?;
    let current = super_trace(&super_mul(&factor_sm, &re_a0)?)?;
    rep.intermediate("Dφ_1Dφ_2 R^E_2", current.render(&names));
    let (mass_cycle, rest) = normalize_to_cycle(&current);
    let origin = VarSet::from_indices([x, y]);
    rep.intermediate("Dφ_1Dφ_2 R^E_2 as a cycle", mass_cycle.render(&names));
    rep.check(
        "Dφ_1Dφ_2 R^E_2 = (2πi)²·ℓ(2k−m)·[0]",
        rest.is_zero() && mass_cycle == Cycle::single(origin, Scalar::new(c.clone(), 2)),
    );
    let len = length_along(&j, origin)?;
    rep.note(format!("Dφ_1Dφ_2 R^E_2 = (2πi)²·{c}·[0]; length along (x,y) = {len}"));
    rep.intermediate("length along (x,y)", len.to_string());
    rep.check("length along (x,y) = ℓ(k−m)", len == (l * (k - m)) as u64);

    let uni = verify_universal::<F>(&j, VarSet::singleton(y))?;
    rep.absorb(uni, "universal");
    rep.timings.push(("demo".into(), t0.elapsed()));
    Ok(rep)
}

/// Recognizes `(y^k, x^ℓ y^m)` in two variables.
pub fn embedded_params(j: &MonomialIdeal) -> Option<(u32, u32, u32)> {
    if j.nvars() != 2 {
        return None;
    }
    let [a, b] = j.gens() else { return None };
    [(a, b), (b, a)]
        .into_iter()
        .find(|(a, b)| a[0] == 0 && b[0] > 0 && b[1] > 0 && a[1] > b[1])
        .map(|(a, b)| (a[1], b[0], b[1]))
}

fn default_ci_tuple<F: Field>(j: &MonomialIdeal) -> Result<Vec<Poly<F>>> {
    let p = codim(j)?;
    let primes = minimal_primes(j)?;
    let Some(&w) = primes.iter().find(|s| s.len() == p) else {
        return Err(Error::Unsupported("no prime of maximal codimension".into()));
    };
    // pure powers must lie in J itself, not only in its localization
    let mut out = Vec::new();
    for v in w.iter() {
        let a = j
            .gens()
            .iter()
            .filter(|g| g.iter().enumerate().all(|(i, &e)| i == v || e == 0))
            .map(|g| g[v])
            .min()
            .ok_or_else(|| Error::Unsupported("unsupported CI tuple: J has no pure power of some variable".into()))?;
        out.push(Poly::z_pow(v, a));
    }
    Ok(out)
}

fn default_resolution<F: Field>(j: &MonomialIdeal) -> Result<FreeComplex<F>> {
    if let Some(f) = ideal_pure_powers(j) {
        return koszul_complex(&z_powers(&f));
    }
    let used: Vec<usize> = (0..j.nvars()).filter(|&i| j.gens().iter().any(|g| g[i] > 0)).collect();
    match used.as_slice() {
        [x, y] => staircase_resolution(&staircase_gens(j, *x, *y)?, *x, *y),
        _ => Err(Error::Unsupported("no built-in resolution; supply one".into())),
    }
}

/// Dispatches a case to its pipeline.
pub fn run_case<F: Field>(case: &Case<F>) -> Result<Report<F>> {
    let j = &case.ideal;
    let names = &case.variables;
    let ci = || {
        ideal_pure_powers(j)
            .ok_or_else(|| Error::Unsupported("ideal is not a complete intersection of pure powers".into()))
    };
    match case.mode {
        Mode::Auto => match ideal_pure_powers(j) {
            Some(f) => verify_ci(names, &f),
            None => verify_universal_all(j),
        },
        Mode::Ci => verify_ci(names, &ci()?),
        Mode::Universal => verify_universal_all(j),
        Mode::Cm => {
            let e = match &case.resolution {
                Some(e) => e.clone(),
                None => default_resolution(j)?,
            };
            let f = match &case.ci_tuple {
                Some(f) => f.clone(),
                None => default_ci_tuple(j)?,
            };
            verify_cm(j, &e, &f, case.options.lift_bound, case.options.seed)
        }
        Mode::Nonpure => verify_nonpure(case),
        Mode::Demo => {
            if let Some((k, l, m)) = embedded_params(j) {
                let mut rep = demo_embedded::<F>(k, l, m)?;
                rep.variables = names.clone();
                Ok(rep)
            } else if nonpure_roles(j).is_some() {
                verify_nonpure(&Case {
                    mode: Mode::Nonpure,
                    ..case.clone()
                })
            } else {
                Err(Error::Unsupported(
                    "demo mode knows (y^k, x^l y^m) and (xz, yz) only".into(),
                ))
            }
        }
    }
}
