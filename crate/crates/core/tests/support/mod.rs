#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};
use rescycle::curralg::{c_sign, ch_product, current_mul, dbar, normalize_to_cycle, CurrentSum, Factor, Schedule};
use rescycle::cycles::{
    fundamental_cycle, length_along, minimal_primes, multiplicity_along, Cycle, MonomialIdeal, VarSet,
};
use rescycle::scalar::Scalar;
use rescycle::superhom::{
    koszul_complex, lift_chain_map, shift_identity, staircase_gens, staircase_resolution, super_mul, super_trace,
    FreeComplex, Matrix, SuperMatrix,
};
use rescycle::symalg::{Form, FormKey, Monomial, Poly, RatFun, Var};
use rescycle::Q;

pub type P = Poly<Q>;
pub type C = CurrentSum<Q>;
pub type PropResult = Result<(), TestCaseError>;

pub const SEED: u64 = 0x5eed_2026;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(config(cases))
}

pub fn names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w", "u", "v"][..n]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn rational() -> impl Strategy<Value = Q> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| Q::new(a.into(), b.into()))
}

fn monomial(nvars: usize, conj: bool) -> impl Strategy<Value = Monomial> {
    let hi = if conj { 2 * nvars } else { nvars };
    prop::collection::vec((0..hi, 1u32..=2), 0..=2).prop_map(move |pairs| {
        Monomial::from_pairs(
            pairs
                .into_iter()
                .map(|(i, e)| (if i < nvars { Var::z(i) } else { Var::bar(i - nvars) }, e))
                .collect(),
        )
    })
}

pub fn poly(nvars: usize, conj: bool) -> impl Strategy<Value = P> {
    prop::collection::vec((monomial(nvars, conj), rational()), 0..=3).prop_map(P::from_terms)
}

pub fn ratfun(nvars: usize) -> impl Strategy<Value = RatFun<Q>> {
    let dens = vec![
        P::one(),
        P::z_pow(0, 1) + P::int(1),
        P::var(Var::z(0)) * P::var(Var::bar(0)) + P::var(Var::z(1)) * P::var(Var::bar(1)),
    ];
    (poly(nvars, true), prop::sample::select(dens)).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

fn form_generators(nvars: usize) -> Vec<Var> {
    (0..nvars).flat_map(|i| [Var::z(i), Var::bar(i)]).collect()
}

pub fn form_key(nvars: usize, degree: usize) -> impl Strategy<Value = FormKey> {
    subsequence(form_generators(nvars), degree)
        .prop_map(|gens| FormKey(gens.into_iter().fold(0, |acc, v| acc | FormKey::bit(v))))
}

pub fn homogeneous_form(nvars: usize, degree: usize) -> impl Strategy<Value = Form<Q>> {
    prop::collection::vec((ratfun(nvars), form_key(nvars, degree)), 0..=2).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Form::zero(), |acc, (r, k)| acc.add(&Form::term(r, k)))
    })
}

/// Homogeneous forms with polynomial coefficients.
pub fn poly_form(nvars: usize, degree: usize) -> impl Strategy<Value = Form<Q>> {
    prop::collection::vec((poly(nvars, true), form_key(nvars, degree)), 0..=2).prop_map(|terms| {
        terms.into_iter().fold(Form::zero(), |acc, (c, k)| {
            acc.add(&Form::term(RatFun::from_poly(c), k))
        })
    })
}

pub fn graded_poly_form(nvars: usize) -> impl Strategy<Value = (usize, Form<Q>)> {
    (0..=3usize).prop_flat_map(move |d| poly_form(nvars, d).prop_map(move |f| (d, f)))
}

pub fn form(nvars: usize) -> impl Strategy<Value = Form<Q>> {
    (0..=2 * nvars).prop_flat_map(move |d| homogeneous_form(nvars, d))
}

pub fn graded_form(nvars: usize) -> impl Strategy<Value = (usize, Form<Q>)> {
    (0..=3usize).prop_flat_map(move |d| homogeneous_form(nvars, d).prop_map(move |f| (d, f)))
}

// ---- symbolic algebra ----

pub fn ring_axioms((a, b, c): (P, P, P)) -> PropResult {
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert!((&a + &(-&a)).is_zero());
    prop_assert_eq!(&a * &P::one(), a.clone());
    Ok(())
}

pub fn ratfun_normal_form((a, b): (RatFun<Q>, RatFun<Q>)) -> PropResult {
    let again = RatFun::new(a.num().clone(), a.den().clone()).unwrap();
    prop_assert_eq!(&again, &a);
    if !b.is_zero() {
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
    }
    prop_assert_eq!(a.add(&b).sub(&b), a);
    Ok(())
}

pub fn d_squared(f: Form<Q>) -> PropResult {
    prop_assert!(f.d().d().is_zero());
    prop_assert!(f.dbar().dbar().is_zero());
    let (del, delbar) = f.exterior_d();
    prop_assert!(del.dbar().add(&delbar.d()).is_zero());
    Ok(())
}

pub fn wedge_graded_commutative(((da, a), (db, b)): ((usize, Form<Q>), (usize, Form<Q>))) -> PropResult {
    let ab = a.wedge(&b);
    let ba = b.wedge(&a);
    let expected = if da * db % 2 == 1 { ba.neg() } else { ba };
    prop_assert_eq!(ab, expected);
    Ok(())
}

pub fn leibniz((da, a): (usize, Form<Q>), (db, b): (usize, Form<Q>)) -> PropResult {
    let lhs = a.wedge(&b).d();
    let sign = if da % 2 == 1 { b.d().neg() } else { b.d() };
    prop_assert_eq!(lhs, a.d().wedge(&b).add(&a.wedge(&sign)));
    let _ = db;
    Ok(())
}

// ---- residue currents ----

/// The reference current `∂̄(1/z_{s_p})∧⋯∧∂̄(1/z_{s_1})∧dz_{s_1}∧⋯∧dz_{s_p}` has mass `(2πi)^p` on `V(S)`,
/// and the ascending arrangement `dz_S ∧ ∂̄(1/z_S)` differs from it by `C_p`.
pub fn c_p_identity(s: Vec<usize>) -> PropResult {
    let p = s.len();
    let explicit = (p * (p.saturating_sub(1)) / 2 + p * p) % 2 == 1;
    prop_assert_eq!(c_sign(p), explicit);
    let mut reference: Vec<Factor<Q>> = s.iter().rev().map(|&i| Factor::Res(i, 1)).collect();
    reference.extend(s.iter().map(|&i| Factor::D(Var::z(i))));
    let r = C::product(reference).unwrap();
    let (cycle, rest) = normalize_to_cycle(&r);
    prop_assert!(rest.is_zero());
    prop_assert_eq!(
        cycle,
        Cycle::single(VarSet::from_indices(s.iter().copied()), Scalar::two_pi_i(p as i32))
    );
    let mut ascending: Vec<Factor<Q>> = s.iter().map(|&i| Factor::D(Var::z(i))).collect();
    ascending.extend(s.iter().map(|&i| Factor::Res(i, 1)));
    let a = C::product(ascending).unwrap();
    let expected = if c_sign(p) { r.neg() } else { r };
    prop_assert_eq!(a, expected);
    Ok(())
}

pub fn c_p_sets() -> impl Strategy<Value = Vec<usize>> {
    (1..=4usize)
        .prop_flat_map(|p| subsequence((0..5).collect::<Vec<_>>(), p))
        .prop_shuffle()
}

pub fn factor() -> impl Strategy<Value = Factor<Q>> {
    prop_oneof![
        ratfun(3).prop_map(Factor::Smooth),
        ((0..3usize), any::<bool>()).prop_map(|(i, c)| Factor::D(if c { Var::bar(i) } else { Var::z(i) })),
        ((0..3usize), 1u32..=3).prop_map(|(i, a)| Factor::Pv(i, a)),
        ((0..3usize), 1u32..=3).prop_map(|(i, a)| Factor::Res(i, a)),
    ]
}

pub fn confluence((coef, factors, seed): (Q, Vec<Factor<Q>>, u64)) -> PropResult {
    let canonical = C::product_with(coef.clone(), factors.clone(), Schedule::Canonical);
    let shuffled = C::product_with(coef, factors, Schedule::Shuffled(seed));
    match (canonical, shuffled) {
        (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
        (Err(_), Err(_)) => {}
        (a, b) => prop_assert!(false, "schedules disagree: {:?} vs {:?}", a, b),
    }
    Ok(())
}

pub fn confluence_input() -> impl Strategy<Value = (Q, Vec<Factor<Q>>, u64)> {
    (rational(), prop::collection::vec(factor(), 1..=5), any::<u64>())
}

/// A graded form and the principal values it multiplies.
pub type DbarInput = ((usize, Form<Q>), Vec<(usize, u32)>);

/// `∂̄²T = 0` and the graded Leibniz rule for `ω ∧ T`.
pub fn dbar_squared(((dw, w), pv): DbarInput) -> PropResult {
    let t = pv
        .iter()
        .try_fold(C::one(), |acc, &(i, a)| current_mul(&acc, &C::pv_atom(i, a)))
        .unwrap();
    let Ok(dt) = dbar(&t) else { return Ok(()) };
    prop_assert!(dbar(&dt).unwrap().is_zero());
    let wc = C::from_form(&w);
    let lhs = dbar(&current_mul(&wc, &t).unwrap()).unwrap();
    let first = current_mul(&C::from_form(&w.dbar()), &t).unwrap();
    let second = current_mul(&wc, &dt).unwrap();
    let rhs = first.add(&if dw % 2 == 1 { second.neg() } else { second });
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn dbar_input() -> impl Strategy<Value = DbarInput> {
    let pv = subsequence(vec![0usize, 1, 2], 0..=2)
        .prop_flat_map(|vs| vs.into_iter().map(|i| (Just(i), 1u32..=3)).collect::<Vec<_>>());
    (
        (0..=2usize).prop_flat_map(|d| holo_form(d).prop_map(move |f| (d, f))),
        pv,
    )
}

/// Forms whose coefficients are polynomials in `z_0, z_1, z̄_0` only.
fn holo_form(degree: usize) -> impl Strategy<Value = Form<Q>> {
    let coeff = prop::collection::vec(((0u32..=2), (0u32..=2), (0u32..=1), rational()), 0..=3).prop_map(|ts| {
        P::from_terms(ts.into_iter().map(|(a, b, c, k)| {
            (
                Monomial::from_pairs(vec![(Var::z(0), a), (Var::z(1), b), (Var::bar(0), c)]),
                k,
            )
        }))
    });
    prop::collection::vec((coeff, form_key(2, degree)), 0..=2).prop_map(|ts| {
        ts.into_iter().fold(Form::zero(), |acc, (c, k)| {
            acc.add(&Form::term(RatFun::from_poly(c), k))
        })
    })
}

/// `g · ∂̄(1/z_{s_1}^{a_1})∧⋯ = 0` exactly when some `z_{s_i}^{a_i}` divides `g`.
pub fn duality((powers, g): (Vec<(usize, u32)>, Vec<u32>)) -> PropResult {
    let ch = ch_product::<Q>(&powers).unwrap();
    let gp = P::monomial(Monomial::from_exponents(&g));
    let prod = current_mul(&C::from_form(&Form::poly(gp)), ch.entry(0, 0)).unwrap();
    let divisible = powers.iter().any(|&(v, a)| g[v] >= a);
    prop_assert_eq!(prod.is_zero(), divisible);
    Ok(())
}

pub fn pure_power_tuple(nvars: usize, max_p: usize, max_e: u32) -> impl Strategy<Value = Vec<(usize, u32)>> {
    subsequence((0..nvars).collect::<Vec<_>>(), 1..=max_p)
        .prop_shuffle()
        .prop_flat_map(move |vs| vs.into_iter().map(|v| (Just(v), 1..=max_e)).collect::<Vec<_>>())
}

pub fn duality_input() -> impl Strategy<Value = (Vec<(usize, u32)>, Vec<u32>)> {
    (pure_power_tuple(3, 3, 3), prop::collection::vec(0u32..=4, 3))
}

// ---- graded super-matrices ----

#[derive(Clone, Debug)]
pub struct Pair {
    pub beta: SuperMatrix<Form<Q>>,
    pub gamma: SuperMatrix<Form<Q>>,
}

fn form_matrix(rows: usize, cols: usize, degree: usize) -> impl Strategy<Value = Matrix<Form<Q>>> {
    prop::collection::vec(poly_form(2, degree), rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

/// `γ : E_s → E_t` and `β : E_t → E_s` with homogeneous form entries.
pub fn super_pair() -> impl Strategy<Value = Pair> {
    (1..=2usize, 1..=2usize, 0..=3usize, 0..=3usize, 0..=2usize, 0..=2usize).prop_flat_map(|(rs, rt, s, t, db, dg)| {
        (form_matrix(rs, rt, db), form_matrix(rt, rs, dg)).prop_map(move |(b, g)| Pair {
            beta: SuperMatrix::with_degree(t, s, db as u32, b).unwrap(),
            gamma: SuperMatrix::with_degree(s, t, dg as u32, g).unwrap(),
        })
    })
}

pub fn trace_cyclicity(pair: Pair) -> PropResult {
    let (b, g) = (&pair.beta, &pair.gamma);
    let bg: SuperMatrix<Form<Q>> = super_mul(b, g).unwrap();
    let gb: SuperMatrix<Form<Q>> = super_mul(g, b).unwrap();
    let lhs = super_trace(&bg).unwrap();
    let rhs = super_trace(&gb).unwrap();
    let negative = (b.deg() * g.deg_f() + g.deg_e() * b.deg_f()) % 2 == 1;
    prop_assert_eq!(lhs, if negative { rhs.neg() } else { rhs });
    Ok(())
}

// ---- complexes and chain maps ----

/// A minimal `(x, y)`-primary staircase `x^{a_i} y^{b_i}` with `k` corners.
pub fn staircase(max_gens: usize, max_e: u32) -> impl Strategy<Value = Vec<(u32, u32)>> {
    (2..=max_gens).prop_flat_map(move |k| {
        let pool: Vec<u32> = (1..=max_e).collect();
        (subsequence(pool.clone(), k - 1), subsequence(pool, k - 1)).prop_map(|(xs, mut ys)| {
            ys.reverse();
            let a = std::iter::once(0).chain(xs);
            let b = ys.into_iter().chain(std::iter::once(0));
            a.zip(b).collect()
        })
    })
}

pub fn staircase_ideal(gens: &[(u32, u32)]) -> MonomialIdeal {
    MonomialIdeal::new(names(2), gens.iter().map(|&(a, b)| vec![a, b]).collect()).unwrap()
}

pub fn staircase_count(gens: &[(u32, u32)]) -> u64 {
    gens.windows(2).map(|w| ((w[1].0 - w[0].0) * w[0].1) as u64).sum()
}

pub fn shift_identities(gens: Vec<(u32, u32)>) -> PropResult {
    let j = staircase_ideal(&gens);
    let e = staircase_resolution::<Q>(&staircase_gens(&j, 0, 1).unwrap(), 0, 1).unwrap();
    let ax = gens.last().unwrap().0;
    let by = gens[0].1;
    let k = koszul_complex(&[P::z_pow(0, ax), P::z_pow(1, by), P::z_pow(2, 1)]).unwrap();
    for c in [&e, &k] {
        for l in 1..c.length() {
            prop_assert!(shift_identity(c, l).unwrap());
        }
    }
    Ok(())
}

pub fn lifted_chain_maps((gens, extra): (Vec<(u32, u32)>, (u32, u32))) -> PropResult {
    let j = staircase_ideal(&gens);
    let e = staircase_resolution::<Q>(&staircase_gens(&j, 0, 1).unwrap(), 0, 1).unwrap();
    let f = koszul_complex(&[
        P::z_pow(0, gens.last().unwrap().0 + extra.0),
        P::z_pow(1, gens[0].1 + extra.1),
    ])
    .unwrap();
    let a = lift_chain_map(&f, &e, Matrix::identity(1), None).unwrap();
    prop_assert!(a.check(&f, &e).is_ok());
    prop_assert_eq!(a.maps.len(), 3);
    Ok(())
}

pub fn chain_map_input() -> impl Strategy<Value = (Vec<(u32, u32)>, (u32, u32))> {
    (staircase(4, 4), (0u32..=1, 0u32..=1))
}

// ---- oracle ----

pub fn oracle_invariants(gens: Vec<(u32, u32)>) -> PropResult {
    let j = staircase_ideal(&gens);
    let origin = VarSet::from_indices([0, 1]);
    let n = staircase_count(&gens);
    prop_assert_eq!(minimal_primes(&j).unwrap(), vec![origin]);
    prop_assert_eq!(multiplicity_along(&j, origin).unwrap(), n);
    prop_assert_eq!(length_along(&j, origin).unwrap(), n);
    prop_assert_eq!(j.standard_monomials(origin).unwrap().len() as u64, n);
    let cycle = fundamental_cycle::<Q>(&j).unwrap();
    prop_assert_eq!(cycle, Cycle::single(origin, Scalar::int(n as i64)));
    Ok(())
}

pub fn oracle_components(powers: Vec<(usize, u32)>) -> PropResult {
    let names = names(4);
    let gens = powers
        .iter()
        .map(|&(v, a)| {
            let mut e = vec![0; 4];
            e[v] = a;
            e
        })
        .collect();
    let j = MonomialIdeal::new(names, gens).unwrap();
    let s = VarSet::from_indices(powers.iter().map(|p| p.0));
    let product: u32 = powers.iter().map(|p| p.1).product();
    prop_assert_eq!(minimal_primes(&j).unwrap(), vec![s]);
    prop_assert_eq!(multiplicity_along(&j, s).unwrap(), product as u64);
    let c = fundamental_cycle::<Q>(&j).unwrap();
    prop_assert!(c.is_effective_integral());
    prop_assert_eq!(c, Cycle::single(s, Scalar::int(product as i64)));
    Ok(())
}

/// Runs `f` over `cases` inputs drawn deterministically from `strategy`.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    f: impl Fn(S::Value) -> PropResult,
) -> std::result::Result<(), String> {
    runner(cases).run(&strategy, f).map_err(|e| e.to_string())
}

/// Draws `n` deterministic samples from `strategy`.
pub fn samples<S: Strategy>(n: usize, strategy: S) -> Vec<S::Value> {
    let mut r = runner(n as u32);
    (0..n).map(|_| strategy.new_tree(&mut r).unwrap().current()).collect()
}

pub fn complex_of(diffs: Vec<Matrix<P>>) -> FreeComplex<Q> {
    FreeComplex::from_diffs(diffs).unwrap()
}
