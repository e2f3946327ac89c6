use std::collections::HashMap;

use super::complex::{ChainMap, FreeComplex};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::linalg::LinearSystem;
use crate::scalar::Field;
use crate::symalg::{Monomial, Poly};

/// Holomorphic monomials of degree `≤ d` in `n` variables.
fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![vec![0u32; n]];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|e| {
                let used: u32 = e.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut f = e.clone();
                    f[i] = k;
                    f
                })
            })
            .collect();
    }
    out.iter().map(|e| Monomial::from_exponents(e)).collect()
}

/// Sparse row `Σ coef·u_index` and its right-hand side.
type Equation<F> = (Vec<(usize, F)>, F);

/// Solves `φ u = rhs` for a column `u` of polynomials of degree `≤ bound`.
fn solve_column<F: Field>(phi: &Matrix<Poly<F>>, rhs: &[Poly<F>], n: usize, bound: u32) -> Option<Vec<Poly<F>>> {
    let monos = monomials_up_to(n, bound);
    let nm = monos.len();
    let unknowns = phi.cols() * nm;
    let mut eqs: HashMap<(usize, Monomial), Equation<F>> = HashMap::new();
    for (r, rhs_r) in rhs.iter().enumerate().take(phi.rows()) {
        for (m, c) in rhs_r.terms() {
            eqs.entry((r, m.clone())).or_insert_with(|| (vec![], F::zero())).1 = c.clone();
        }
        for i in 0..phi.cols() {
            for (pm, pc) in phi.get(r, i).terms() {
                for (t, mu) in monos.iter().enumerate() {
                    let key = (r, pm.mul(mu));
                    eqs.entry(key)
                        .or_insert_with(|| (vec![], F::zero()))
                        .0
                        .push((i * nm + t, pc.clone()));
                }
            }
        }
    }
    let mut sys = LinearSystem::new(unknowns);
    let mut rows: Vec<_> = eqs.into_iter().collect();
    // deterministic row order
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, (entries, rhs)) in rows {
        sys.push(entries, rhs);
    }
    let x = sys.solve()?;
    Some(
        (0..phi.cols())
            .map(|i| Poly::from_terms((0..nm).map(|t| (monos[t].clone(), x[i * nm + t].clone()))))
            .collect(),
    )
}

/// Extends `a_0 : F_0 → E_0` to a morphism of complexes `F → E` by exact
/// linear algebra on bounded-degree coefficient vectors.
///
/// With no explicit bound, level `k` starts from the degree of
/// `a_{k−1}ψ_k` plus the largest entry degree of `φ_k`, doubling on failure
/// up to four times.
pub fn lift_chain_map<F: Field>(
    source: &FreeComplex<F>,
    target: &FreeComplex<F>,
    a0: Matrix<Poly<F>>,
    bound: Option<u32>,
) -> Result<ChainMap<F>> {
    if a0.rows() != target.rank(0) || a0.cols() != source.rank(0) {
        return Err(Error::Shape(format!(
            "a_0 must be {}×{}, got {}×{}",
            target.rank(0),
            source.rank(0),
            a0.rows(),
            a0.cols()
        )));
    }
    let n = source.nvars().max(target.nvars()).max(
        a0.entries()
            .flat_map(|p| p.vars())
            .map(|v| v.idx() + 1)
            .max()
            .unwrap_or(0),
    );
    let mut maps = vec![a0];
    for k in 1..=source.length().min(target.length()) {
        let rhs = maps[k - 1].mul(source.phi(k))?;
        let phi = target.phi(k);
        let base = bound.unwrap_or_else(|| rhs.max_degree() + phi.max_degree()).max(1);
        let tries: Vec<u32> = if bound.is_some() {
            vec![base]
        } else {
            (0..5).map(|t| base << t).collect()
        };
        let mut found = None;
        for &b in &tries {
            let cols: Option<Vec<Vec<Poly<F>>>> = (0..rhs.cols())
                .map(|j| solve_column(phi, &rhs.column(j), n, b))
                .collect();
            if let Some(cols) = cols {
                found = Some(Matrix::from_fn(phi.cols(), rhs.cols(), |i, j| cols[j][i].clone()));
                break;
            }
        }
        match found {
            Some(a) => maps.push(a),
            None => {
                return Err(Error::LiftFailed {
                    level: k,
                    bound: *tries.last().expect("nonempty"),
                })
            }
        }
    }
    let c = ChainMap { maps };
    c.check(source, target)?;
    Ok(c)
}
