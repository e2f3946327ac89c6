use super::cycle::Cycle;
use super::varset::VarSet;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::symalg::{Monomial, Poly, Var};

/// Monomial ideal given by exponent vectors, reduced to minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    variables: Vec<String>,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|g| (g.iter().sum::<u32>(), g.clone()));
    gens.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

impl MonomialIdeal {
    pub fn new(variables: Vec<String>, gens: Vec<Vec<u32>>) -> Result<Self> {
        let n = variables.len();
        if gens.iter().any(|g| g.len() != n) {
            return Err(Error::Shape(format!("exponent vectors must have length {n}")));
        }
        Ok(MonomialIdeal {
            variables,
            gens: minimalize(gens),
        })
    }

    /// Reads generators from polynomials, each of which must be a single
    /// holomorphic term.
    pub fn from_polys<F: Field>(variables: Vec<String>, polys: &[Poly<F>]) -> Result<Self> {
        let n = variables.len();
        let mut gens = Vec::new();
        for p in polys {
            let m = match p.as_monomial() {
                Some(m) if p.is_holomorphic() => m,
                _ => return Err(Error::NonMonomial(p.render(&variables))),
            };
            gens.push((0..n).map(|i| m.exponent(Var::z(i))).collect());
        }
        Self::new(variables, gens)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn gen_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| Monomial::from_exponents(g)).collect()
    }

    pub fn contains(&self, exps: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, exps))
    }

    /// `J ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    fn check_proper(&self) -> Result<()> {
        if self.gens.is_empty() || self.gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return Err(Error::TrivialIdeal);
        }
        Ok(())
    }

    fn support(g: &[u32]) -> VarSet {
        VarSet::from_indices(g.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
    }

    /// Generators with every variable outside `p` set to 1.
    pub fn localize(&self, p: VarSet) -> Vec<Vec<u32>> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .map(|(i, &e)| if p.contains(i) { e } else { 0 })
                    .collect()
            })
            .collect();
        minimalize(gens)
    }

    /// Pure power exponents `β_i` of the localization at `p`, if all exist.
    pub fn pure_powers(&self, p: VarSet) -> Option<Vec<(usize, u32)>> {
        let loc = self.localize(p);
        p.iter()
            .map(|i| {
                loc.iter()
                    .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                    .map(|g| g[i])
                    .min()
                    .map(|b| (i, b))
            })
            .collect()
    }

    /// Standard monomials of the localization at a minimal prime `p`.
    pub fn standard_monomials(&self, p: VarSet) -> Result<Vec<Vec<u32>>> {
        let loc = self.localize(p);
        let box_ = self
            .pure_powers(p)
            .ok_or_else(|| Error::NotMinimalPrime(p.render(&self.variables)))?;
        let contained = |e: &[u32]| loc.iter().any(|g| divides(g, e));
        Ok(box_points(self.nvars(), &box_)
            .into_iter()
            .filter(|e| !contained(e))
            .collect())
    }
}

/// All exponent vectors with `e_i < b_i` on the listed coordinates and 0 elsewhere.
fn box_points(n: usize, bounds: &[(usize, u32)]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n]];
    for &(i, b) in bounds {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..b).map(move |k| {
                    let mut f = e.clone();
                    f[i] = k;
                    f
                })
            })
            .collect();
    }
    out
}

/// Minimal primes, as the minimal sets of variables meeting every
/// generator's support. Ordered by size, then by variable order.
pub fn minimal_primes(j: &MonomialIdeal) -> Result<Vec<VarSet>> {
    j.check_proper()?;
    let n = j.nvars();
    let supports: Vec<VarSet> = j.gens.iter().map(|g| MonomialIdeal::support(g)).collect();
    let mut cands: Vec<VarSet> = (0..1u64 << n).map(VarSet).collect();
    cands.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
    let mut out: Vec<VarSet> = Vec::new();
    for s in cands {
        if supports.iter().all(|g| !g.intersection(s).is_empty()) && !out.iter().any(|p| p.is_subset(s)) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Geometric multiplicity along a minimal prime: the number of standard
/// monomials after inverting the variables off `p`.
pub fn multiplicity_along(j: &MonomialIdeal, p: VarSet) -> Result<u64> {
    if !minimal_primes(j)?.contains(&p) {
        return Err(Error::NotMinimalPrime(p.render(&j.variables)));
    }
    Ok(j.standard_monomials(p)?.len() as u64)
}

/// `Σ m_P [V(P)]` over the minimal primes.
pub fn fundamental_cycle<F: Field>(j: &MonomialIdeal) -> Result<Cycle<F>> {
    let mut c = Cycle::zero();
    for p in minimal_primes(j)? {
        c.add_mass(p, Scalar::int(multiplicity_along(j, p)? as i64));
    }
    Ok(c)
}

/// Length of `(J : 𝔪^∞)/J` after localizing at `p`, where `𝔪` is generated
/// by the variables of `p`. Zero when `p` is not associated.
pub fn length_along(j: &MonomialIdeal, p: VarSet) -> Result<u64> {
    j.check_proper()?;
    if p.is_empty() || p.iter().any(|i| i >= j.nvars()) {
        return Err(Error::Unsupported(format!("length along {}", p.render(&j.variables))));
    }
    let loc = j.localize(p);
    if loc.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Ok(0);
    }
    // J : 𝔪^∞ is the intersection of the saturations J : z_i^∞
    let sat: Vec<Vec<Vec<u32>>> = p
        .iter()
        .map(|i| {
            minimalize(
                loc.iter()
                    .map(|g| {
                        let mut h = g.clone();
                        h[i] = 0;
                        h
                    })
                    .collect(),
            )
        })
        .collect();
    let in_sat = |e: &[u32]| sat.iter().all(|s| s.iter().any(|g| divides(g, e)));
    let in_j = |e: &[u32]| loc.iter().any(|g| divides(g, e));
    // a monomial of the saturation outside J has every exponent below the
    // largest one among the generators
    let bounds: Vec<(usize, u32)> = p
        .iter()
        .map(|i| (i, loc.iter().map(|g| g[i]).max().unwrap_or(0)))
        .collect();
    Ok(box_points(j.nvars(), &bounds)
        .into_iter()
        .filter(|e| in_sat(e) && !in_j(e))
        .count() as u64)
}
