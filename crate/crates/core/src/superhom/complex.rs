use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{Matrix, SuperMatrix};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::scalar::Field;
use crate::symalg::{Form, Poly};

/// Ranks of `E_0, E_1, …, E_ν`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedFreeModule {
    pub ranks: Vec<usize>,
}

/// `0 → E_ν → ⋯ → E_1 → E_0` with holomorphic polynomial differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex<F: Field> {
    pub modules: GradedFreeModule,
    /// `diffs[k-1]` is `φ_k : E_k → E_{k-1}`.
    diffs: Vec<Matrix<Poly<F>>>,
}

impl<F: Field> FreeComplex<F> {
    /// Builds a complex from `φ_1, φ_2, …`; ranks are read off the shapes.
    pub fn from_diffs(diffs: Vec<Matrix<Poly<F>>>) -> Result<Self> {
        let Some(first) = diffs.first() else {
            return Err(Error::Shape("a complex needs at least one differential".into()));
        };
        let mut ranks = vec![first.rows()];
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] {
                return Err(Error::Shape(format!(
                    "φ_{} has {} rows but E_{} has rank {}",
                    k + 1,
                    d.rows(),
                    k,
                    ranks[k]
                )));
            }
            if d.entries().any(|p| !p.is_holomorphic()) {
                return Err(Error::Shape(format!("φ_{} has non-holomorphic entries", k + 1)));
            }
            ranks.push(d.cols());
        }
        if ranks.last() == Some(&0) {
            return Err(Error::Shape("top module has rank 0".into()));
        }
        Ok(FreeComplex {
            modules: GradedFreeModule { ranks },
            diffs,
        })
    }

    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.modules.ranks.get(k).copied().unwrap_or(0)
    }

    /// `φ_k` for `1 ≤ k ≤ length`.
    pub fn phi(&self, k: usize) -> &Matrix<Poly<F>> {
        &self.diffs[k - 1]
    }

    pub fn diffs(&self) -> &[Matrix<Poly<F>>] {
        &self.diffs
    }

    /// `φ_k` as a form-valued block `E_k → E_{k-1}`.
    pub fn phi_super(&self, k: usize) -> SuperMatrix<Form<F>> {
        SuperMatrix::with_degree(k, k - 1, 0, self.phi(k).to_forms()).expect("polynomials have degree 0")
    }

    /// Number of variables the differentials may involve.
    pub fn nvars(&self) -> usize {
        self.diffs
            .iter()
            .flat_map(|d| d.entries())
            .flat_map(|p| p.vars())
            .map(|v| v.idx() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self, names: &[String]) -> String {
        (1..=self.length())
            .map(|k| format!("φ_{k} = {}", self.phi(k).render(names)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Maps `a_k : F_k → E_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F: Field> {
    pub maps: Vec<Matrix<Poly<F>>>,
}

impl<F: Field> ChainMap<F> {
    pub fn a(&self, k: usize) -> &Matrix<Poly<F>> {
        &self.maps[k]
    }

    /// Checks `φ_k a_k = a_{k-1} ψ_k` for every level present.
    pub fn check(&self, source: &FreeComplex<F>, target: &FreeComplex<F>) -> Result<()> {
        for k in 1..self.maps.len() {
            if k > source.length() || k > target.length() {
                break;
            }
            let lhs = target.phi(k).mul(&self.maps[k])?;
            let rhs = self.maps[k - 1].mul(source.phi(k))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap { level: k });
            }
        }
        Ok(())
    }
}

fn random_point<F: Field>(rng: &mut ChaCha8Rng, n: usize) -> Vec<F> {
    (0..n)
        .map(|_| {
            let num = loop {
                let v: i64 = rng.gen_range(-60..=60);
                if v != 0 {
                    break v;
                }
            };
            let den: i64 = rng.gen_range(1..=7);
            F::from_int(num) / F::from_int(den)
        })
        .collect()
}

fn eval_matrix<F: Field>(m: &Matrix<Poly<F>>, pt: &[F]) -> Vec<Vec<F>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|p| p.eval(|v| pt[v.idx()].clone())).collect())
        .collect()
}

/// Checks `φ_k φ_{k+1} = 0` exactly and, at a random rational point, that
/// `rank E_k = rank φ_k + rank φ_{k+1}` for every `k`.
///
/// The rank test is generic: it is retried at fresh points before failing.
pub fn verify_complex<F: Field>(e: &FreeComplex<F>, seed: u64) -> Result<()> {
    for k in 1..e.length() {
        let prod = e.phi(k).mul(e.phi(k + 1))?;
        if !prod.is_zero() {
            return Err(Error::NotAComplex {
                level: k,
                reason: format!("φ_{}φ_{} ≠ 0", k, k + 1),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = e.nvars();
    let mut last = None;
    for _ in 0..4 {
        let pt = random_point::<F>(&mut rng, n);
        let ranks: Vec<usize> = (1..=e.length()).map(|k| rank(&eval_matrix(e.phi(k), &pt))).collect();
        let rk = |k: usize| if k == 0 || k > e.length() { 0 } else { ranks[k - 1] };
        match (0..=e.length()).find(|&k| e.rank(k) != rk(k) + rk(k + 1)) {
            None => return Ok(()),
            Some(k) => last = Some(k),
        }
    }
    let level = last.expect("at least one attempt");
    Err(Error::NotAComplex {
        level,
        reason: "not generically exact".into(),
    })
}
