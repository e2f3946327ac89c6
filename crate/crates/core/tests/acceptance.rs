mod support;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use rescycle::curralg::ch_product;
use rescycle::cycles::{length_along, multiplicity_along, Cycle, MonomialIdeal, VarSet};
use rescycle::engine::{
    builtin_nonpure, demo_embedded, run_case, verify_ci, verify_cm, verify_nonpure, verify_universal, Case, Mode,
    Report,
};
use rescycle::expr::parse_current;
use rescycle::scalar::Scalar;
use rescycle::superhom::{koszul_complex, staircase_gens, staircase_resolution, FreeComplex, Matrix};
use rescycle::Q;
use support::*;

const TIME_LIMIT: Duration = Duration::from_secs(10);

struct Outcome {
    cases: usize,
    failures: Vec<String>,
    slowest: Duration,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            cases: 0,
            failures: Vec::new(),
            slowest: Duration::ZERO,
        }
    }

    fn record(&mut self, label: impl Into<String>, f: impl FnOnce() -> Result<(), String>) {
        let t0 = Instant::now();
        let res = f();
        let dt = t0.elapsed();
        self.cases += 1;
        self.slowest = self.slowest.max(dt);
        let label = label.into();
        match res {
            Ok(()) if dt <= TIME_LIMIT => {}
            Ok(()) => self.failures.push(format!("{label}: took {dt:?}")),
            Err(e) => self.failures.push(format!("{label}: {e}")),
        }
    }
}

fn expect_match(rep: &Report<Q>) -> Result<(), String> {
    if rep.matched() {
        return Ok(());
    }
    let failed: Vec<&str> = rep.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    Err(format!(
        "computed {} vs oracle {}; remainder {}; failed checks {failed:?}",
        rep.computed.render(&rep.variables),
        rep.oracle.render(&rep.variables),
        rep.remainder.render(&rep.variables),
    ))
}

fn expect_cycle(rep: &Report<Q>, expected: &Cycle<Q>) -> Result<(), String> {
    expect_match(rep)?;
    if &rep.computed != expected {
        return Err(format!(
            "expected {}, got {}",
            expected.render(&rep.variables),
            rep.computed.render(&rep.variables)
        ));
    }
    Ok(())
}

/// A perturbed run must come out as a mismatch or an error.
fn expect_flip(res: rescycle::Result<Report<Q>>) -> Result<(), String> {
    match res {
        Ok(rep) if rep.matched() => Err("perturbed run still matches".into()),
        _ => Ok(()),
    }
}

fn ideal(names: &[String], gens: &[(usize, u32)]) -> MonomialIdeal {
    let gens = gens
        .iter()
        .map(|&(v, a)| {
            let mut e = vec![0; names.len()];
            e[v] = a;
            e
        })
        .collect();
    MonomialIdeal::new(names.to_vec(), gens).unwrap()
}

fn ordered_tuples(n: usize, p: usize, max_e: u32) -> Vec<Vec<(usize, u32)>> {
    if p == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for head in ordered_tuples(n, p - 1, max_e) {
        for v in (0..n).filter(|v| head.iter().all(|h| h.0 != *v)) {
            for a in 1..=max_e {
                let mut t = head.clone();
                t.push((v, a));
                out.push(t);
            }
        }
    }
    out
}

fn complete_intersections() -> Outcome {
    let mut out = Outcome::new();
    for n in 1..=4 {
        let names = names(n);
        for p in 1..=n.min(3) {
            for f in ordered_tuples(n, p, 4) {
                out.record(format!("{f:?} in {n} variables"), || {
                    let rep = verify_ci::<Q>(&names, &f).map_err(|e| e.to_string())?;
                    let mass: u32 = f.iter().map(|t| t.1).product();
                    let s = VarSet::from_indices(f.iter().map(|t| t.0));
                    expect_cycle(&rep, &Cycle::single(s, Scalar::int(mass as i64)))
                });
            }
        }
    }
    out
}

fn nonpure_example() -> Outcome {
    let mut out = Outcome::new();
    out.record("(xz, yz)", || {
        let names = names(3);
        let j = MonomialIdeal::new(names.clone(), vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let rep = verify_nonpure(&Case::<Q>::new(j, Mode::Nonpure)).map_err(|e| e.to_string())?;
        let expected = Cycle::single(VarSet::singleton(2), Scalar::int(1))
            .add(&Cycle::single(VarSet::from_indices([0, 1]), Scalar::int(1)));
        expect_cycle(&rep, &expected)?;
        if rep.computed.render(&names) != "[z=0] + [x=y=0]" {
            return Err(format!("rendered as {}", rep.computed.render(&names)));
        }
        for fact in ["1_{x=y=0} ∂̄(1/z) = 0", "1_{x=y=0} μ = 0"] {
            if !rep.checks.iter().any(|(name, ok)| name == fact && *ok) {
                return Err(format!("missing intermediate fact {fact}"));
            }
        }
        Ok(())
    });
    out
}

fn embedded_family() -> Outcome {
    let mut out = Outcome::new();
    let names = names(2);
    for k in 2..=4u32 {
        for m in 1..k {
            for l in 1..=3u32 {
                out.record(format!("(k,ℓ,m) = ({k},{l},{m})"), || {
                    let rep = demo_embedded::<Q>(k, l, m).map_err(|e| e.to_string())?;
                    expect_cycle(&rep, &Cycle::single(VarSet::singleton(1), Scalar::int(m as i64)))?;
                    let mass = rep
                        .checks
                        .iter()
                        .any(|(name, ok)| name.starts_with("Dφ_1Dφ_2 R^E_2 =") && *ok);
                    if !mass {
                        return Err("mass ℓ(2k−m) at [0] not reproduced".into());
                    }
                    let j = MonomialIdeal::new(names.clone(), vec![vec![0, k], vec![l, m]]).unwrap();
                    let len = length_along(&j, VarSet::from_indices([0, 1])).map_err(|e| e.to_string())?;
                    if len != (l * (k - m)) as u64 {
                        return Err(format!("length {len} ≠ ℓ(k−m)"));
                    }
                    let uni = verify_universal::<Q>(&j, VarSet::singleton(1)).map_err(|e| e.to_string())?;
                    let oracle = multiplicity_along(&j, VarSet::singleton(1)).map_err(|e| e.to_string())?;
                    if oracle != m as u64 {
                        return Err(format!("localization oracle gives {oracle}"));
                    }
                    expect_cycle(&uni, &Cycle::single(VarSet::singleton(1), Scalar::int(m as i64)))
                });
            }
        }
    }
    out
}

fn run_cm(gens: &[(u32, u32)]) -> rescycle::Result<Report<Q>> {
    let j = staircase_ideal(gens);
    let e = staircase_resolution::<Q>(&staircase_gens(&j, 0, 1)?, 0, 1)?;
    run_cm_with(&j, &e)
}

fn run_cm_with(j: &MonomialIdeal, e: &FreeComplex<Q>) -> rescycle::Result<Report<Q>> {
    let sg = staircase_gens(j, 0, 1)?;
    let f = vec![P::z_pow(0, sg.last().unwrap().0), P::z_pow(1, sg[0].1)];
    verify_cm(j, e, &f, None, SEED)
}

fn cohen_macaulay() -> Outcome {
    let mut out = Outcome::new();
    let mut family = vec![vec![(0, 3), (1, 1), (2, 0)]];
    family.extend(samples(20, staircase(5, 6)));
    for (i, gens) in family.iter().enumerate() {
        let label = if i == 0 {
            "anchor (x², xy, y³)".to_string()
        } else {
            format!("staircase {gens:?}")
        };
        out.record(label, || {
            let rep = run_cm(gens).map_err(|e| e.to_string())?;
            let n = staircase_count(gens);
            if i == 0 && n != 4 {
                return Err(format!("anchor counts {n} standard monomials"));
            }
            expect_cycle(
                &rep,
                &Cycle::single(VarSet::from_indices([0, 1]), Scalar::int(n as i64)),
            )
        });
    }
    out
}

/// Ideals with `p ≤ 2` and local multiplicity `m ≤ 6` along `W`, padded with
/// a unit factor outside `W`.
fn universal_ideals() -> impl Strategy<Value = (MonomialIdeal, VarSet)> {
    let codim_one = (1u32..=6, 0u32..=2, 1u32..=2, 0u32..=2).prop_map(|(a, c, e, d)| {
        let j = MonomialIdeal::new(names(3), vec![vec![a, c, 0], vec![a + e, 0, d]]).unwrap();
        (j, VarSet::singleton(0))
    });
    let codim_two = (
        staircase(3, 3).prop_filter("m ≤ 6", |g| staircase_count(g) <= 6),
        prop::collection::vec(0u32..=2, 3),
    )
        .prop_map(|(gens, pads)| {
            let g = gens
                .iter()
                .zip(pads.iter().cycle())
                .map(|(&(a, b), &c)| vec![a, b, c])
                .collect();
            (MonomialIdeal::new(names(3), g).unwrap(), VarSet::from_indices([0, 1]))
        });
    prop_oneof![codim_one, codim_two]
}

fn trace_identity() -> Outcome {
    let mut out = Outcome::new();
    for (j, w) in samples(10, universal_ideals()) {
        out.record(format!("{:?} along {}", j.gens(), w.render(j.variables())), || {
            let rep = verify_universal::<Q>(&j, w).map_err(|e| e.to_string())?;
            let m = multiplicity_along(&j, w).map_err(|e| e.to_string())?;
            if m > 6 || w.len() > 2 {
                return Err(format!("out of range: p = {}, m = {m}", w.len()));
            }
            match rep.checks.iter().find(|c| c.0.starts_with("tr B =")) {
                Some((_, true)) => expect_match(&rep),
                Some((_, false)) => Err("tr B ≠ p!·m·z^{β−1} dz".into()),
                None => Err("tr B was not checked".into()),
            }
        });
    }
    out
}

fn property_suites() -> Outcome {
    let mut out = Outcome::new();
    let cases = 64;
    out.record("C_p sign identity, p ≤ 4", || run(cases, c_p_sets(), c_p_identity));
    out.record("graded trace cyclicity", || run(cases, super_pair(), trace_cyclicity));
    out.record("shift identity", || run(cases, staircase(4, 4), shift_identities));
    out.record("duality", || run(cases, duality_input(), duality));
    out.record("d² = 0", || run(cases, form(2), d_squared));
    out.record("∂̄² = 0 on currents", || run(cases, dbar_input(), dbar_squared));
    out.record("rewriting confluence", || run(cases, confluence_input(), confluence));
    out.record("chain maps", || run(cases, chain_map_input(), lifted_chain_maps));
    out.record("ring axioms", || {
        run(cases, (poly(3, true), poly(3, true), poly(3, true)), ring_axioms)
    });
    out.record("oracle invariants", || run(cases, staircase(5, 6), oracle_invariants));
    out
}

fn scaled_entry(e: &FreeComplex<Q>, level: usize, r: usize, c: usize, by: &P) -> FreeComplex<Q> {
    let diffs: Vec<Matrix<P>> = e
        .diffs()
        .iter()
        .enumerate()
        .map(|(k, d)| {
            if k + 1 != level {
                return d.clone();
            }
            let mut d = d.clone();
            d.set(r, c, d.get(r, c) * by);
            d
        })
        .collect();
    complex_of(diffs)
}

fn negative_controls() -> Outcome {
    let mut out = Outcome::new();

    // differentials: every nonzero entry of the anchor staircase, scaled or shifted
    let anchor = vec![(0, 3), (1, 1), (2, 0)];
    let j = staircase_ideal(&anchor);
    let e = staircase_resolution::<Q>(&anchor, 0, 1).unwrap();
    for level in 1..=e.length() {
        let d = e.phi(level);
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if d.get(r, c).is_zero() {
                    continue;
                }
                for by in [P::int(2), P::z_pow(0, 1)] {
                    let bad = scaled_entry(&e, level, r, c, &by);
                    out.record(format!("φ_{level}[{r},{c}] · {by}"), || {
                        expect_flip(run_cm_with(&j, &bad))
                    });
                }
            }
        }
    }

    // residue exponents: a complete intersection fed a wrong Coleff–Herrera product
    let names3 = names(3);
    for f in [vec![(0, 2), (1, 3)], vec![(2, 1), (0, 2), (1, 1)], vec![(1, 4)]] {
        let polys: Vec<P> = f.iter().map(|&(v, a)| P::z_pow(v, a)).collect();
        for i in 0..f.len() {
            let mut g = f.clone();
            g[i].1 += 1;
            out.record(format!("residue exponents {g:?} for {f:?}"), || {
                let mut case = Case::<Q>::new(ideal(&names3, &f), Mode::Nonpure);
                case.resolution = Some(koszul_complex(&polys).unwrap());
                let mut cur = BTreeMap::new();
                cur.insert(f.len(), ch_product::<Q>(&g).unwrap().into_matrix());
                case.currents = Some(cur);
                expect_flip(verify_nonpure(&case))
            });
        }
    }
    out.record("residue exponent in R^E_1 of (xz, yz)", || {
        let j = MonomialIdeal::new(names3.clone(), vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let (e, mut cur) = builtin_nonpure::<Q>(&names3, (0, 1, 2)).unwrap();
        let r1 = Matrix::from_rows(vec![
            vec![parse_current("bar(x)/(x*bar(x) + y*bar(y))*res(1/z^2)", &names3).unwrap()],
            vec![parse_current("bar(y)/(x*bar(x) + y*bar(y))*res(1/z^2)", &names3).unwrap()],
        ])
        .unwrap();
        cur.insert(1, r1);
        let mut case = Case::<Q>::new(j, Mode::Nonpure);
        case.resolution = Some(e);
        case.currents = Some(cur);
        expect_flip(verify_nonpure(&case))
    });

    // oracle multiplicities
    let mut reports: Vec<(String, rescycle::Result<Report<Q>>)> = vec![
        ("anchor".into(), run_cm(&anchor)),
        ("(x², y³)".into(), verify_ci::<Q>(&names(2), &[(0, 2), (1, 3)])),
        ("embedded (3,2,1)".into(), demo_embedded::<Q>(3, 2, 1)),
    ];
    let xzyz = MonomialIdeal::new(names3.clone(), vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
    reports.push(("(xz, yz)".into(), run_case(&Case::<Q>::new(xzyz, Mode::Nonpure))));
    for (label, rep) in reports {
        let rep = rep.unwrap();
        for (s, mass) in rep.oracle.iter().collect::<Vec<_>>() {
            for delta in [-1, 1] {
                let mut bad = rep.clone();
                bad.oracle = rep.oracle.add(&Cycle::single(s, Scalar::int(delta)));
                out.record(
                    format!(
                        "{label}: oracle mass {mass} on {} shifted by {delta}",
                        s.render(&rep.variables)
                    ),
                    || {
                        if rep.matched() && !bad.matched() {
                            Ok(())
                        } else {
                            Err("oracle perturbation not detected".into())
                        }
                    },
                );
            }
        }
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("complete intersections, exhaustive sweep", complete_intersections),
        ("(xz, yz) with the built-in residue current", nonpure_example),
        ("embedded family (y^k, x^ℓ y^m)", embedded_family),
        ("Cohen–Macaulay comparison on staircases", cohen_macaulay),
        ("tr B = p!·m·z^{β−1} dz on universal data", trace_identity),
        ("property suites", property_suites),
        ("negative controls", negative_controls),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let verdict = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        all &= outcome.failures.is_empty();
        println!(
            "{verdict} criterion {}: {name} ({} runs, slowest {:.1?}, total {:.1?})",
            i + 1,
            outcome.cases,
            outcome.slowest,
            t0.elapsed()
        );
        for f in outcome.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
