use super::complex::{ChainMap, FreeComplex};
use super::matrix::Matrix;
use crate::cycles::{minimal_primes, MonomialIdeal, VarSet};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::symalg::{Monomial, Poly};

/// `k`-subsets of `0..p` in lexicographic order.
pub fn subsets(p: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, p: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..p {
            cur.push(i);
            go(i + 1, p, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, p, k, &mut Vec::new(), &mut out);
    out
}

/// Koszul complex over `A = O^m` of commuting `m×m` matrices `g_1,…,g_p`:
/// `e_I ↦ Σ_j (−1)^{j−1} g_{I_j} e_{I∖I_j}` with blocks indexed by subsets
/// in lexicographic order.
pub fn koszul_blocks<F: Field>(gs: &[Matrix<Poly<F>>]) -> Result<FreeComplex<F>> {
    let p = gs.len();
    if p == 0 {
        return Err(Error::Precondition("Koszul complex of an empty tuple".into()));
    }
    let m = gs[0].rows();
    if gs.iter().any(|g| g.rows() != m || g.cols() != m) {
        return Err(Error::Shape("Koszul blocks must be square of equal size".into()));
    }
    let mut diffs = Vec::with_capacity(p);
    for k in 1..=p {
        let rows = subsets(p, k - 1);
        let cols = subsets(p, k);
        let mut d = Matrix::zeros(rows.len() * m, cols.len() * m);
        for (cj, big) in cols.iter().enumerate() {
            for (j, &i) in big.iter().enumerate() {
                let small: Vec<usize> = big.iter().copied().filter(|&x| x != i).collect();
                let ri = rows.iter().position(|s| *s == small).expect("face is a subset");
                for a in 0..m {
                    for b in 0..m {
                        let v = gs[i].get(a, b);
                        let v = if j % 2 == 0 { v.clone() } else { -v };
                        d.set(ri * m + a, cj * m + b, v);
                    }
                }
            }
        }
        diffs.push(d);
    }
    FreeComplex::from_diffs(diffs)
}

/// Koszul complex of a tuple of polynomials.
pub fn koszul_complex<F: Field>(f: &[Poly<F>]) -> Result<FreeComplex<F>> {
    let gs: Vec<Matrix<Poly<F>>> = f.iter().map(|p| Matrix::from_fn(1, 1, |_, _| p.clone())).collect();
    koszul_blocks(&gs)
}

/// Minimal generators `x^a y^b` of a monomial ideal in the two given
/// variables, sorted by increasing `a`.
pub fn staircase_gens(j: &MonomialIdeal, x: usize, y: usize) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for g in j.gens() {
        if g.iter().enumerate().any(|(i, &e)| e > 0 && i != x && i != y) {
            return Err(Error::Precondition("staircase ideals live in two variables".into()));
        }
        out.push((g[x], g[y]));
    }
    out.sort();
    Ok(out)
}

/// Resolution `0 → O^{r−1} → O^r → O` of `(x^{a_1}y^{b_1}, …, x^{a_r}y^{b_r})`
/// with `a` strictly increasing and `b` strictly decreasing; syzygy `i` is
/// `y^{b_i−b_{i+1}} e_{i+1} − x^{a_{i+1}−a_i} e_i`.
pub fn staircase_resolution<F: Field>(gens: &[(u32, u32)], x: usize, y: usize) -> Result<FreeComplex<F>> {
    if gens.is_empty() {
        return Err(Error::Precondition("no generators".into()));
    }
    if gens.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 <= w[1].1) {
        return Err(Error::Precondition(
            "staircase generators must be minimal and sorted by increasing x-exponent".into(),
        ));
    }
    let mono = |a: u32, b: u32| Poly::z_pow(x, a) * Poly::z_pow(y, b);
    let r = gens.len();
    let phi1 = Matrix::from_fn(1, r, |_, j| mono(gens[j].0, gens[j].1));
    if r == 1 {
        return FreeComplex::from_diffs(vec![phi1]);
    }
    let phi2 = Matrix::from_fn(r, r - 1, |i, c| {
        if i == c {
            -Poly::z_pow(x, gens[c + 1].0 - gens[c].0)
        } else if i == c + 1 {
            Poly::z_pow(y, gens[c].1 - gens[c + 1].1)
        } else {
            Poly::zero()
        }
    });
    FreeComplex::from_diffs(vec![phi1, phi2])
}

/// Data of the universal resolution along a minimal prime `W`.
#[derive(Clone, Debug)]
pub struct UniversalResolution<F: Field> {
    /// Variables cutting out `W`, ascending.
    pub vars: Vec<usize>,
    /// Standard monomials of the localization, degree descending; `[1]` is last.
    pub basis: Vec<Vec<u32>>,
    /// Multiplication by `[z_i]` on the basis, one per variable of `W`.
    pub mult: Vec<Matrix<Poly<F>>>,
    /// Pure power exponents `β`.
    pub beta: Vec<u32>,
    /// Koszul complex over the basis of the `z_i − [z_i]`.
    pub complex: FreeComplex<F>,
    /// Koszul complex of `(z_i^{β_i})`.
    pub koszul: FreeComplex<F>,
    /// Chain map from `koszul` to `complex`.
    pub c: ChainMap<F>,
}

fn mat_mul<F: Field>(a: &Matrix<Poly<F>>, b: &Matrix<Poly<F>>) -> Matrix<Poly<F>> {
    a.mul(b).expect("square matrices of equal size")
}

impl<F: Field> UniversalResolution<F> {
    pub fn m(&self) -> usize {
        self.basis.len()
    }

    pub fn p(&self) -> usize {
        self.vars.len()
    }

    /// `M^α = Π M_i^{α_i}` for an exponent vector in the ambient variables.
    pub fn mult_power(&self, alpha: &[u32]) -> Matrix<Poly<F>> {
        let mut acc = Matrix::identity(self.m());
        for (t, &v) in self.vars.iter().enumerate() {
            for _ in 0..alpha[v] {
                acc = mat_mul(&acc, &self.mult[t]);
            }
        }
        acc
    }

    /// `B̃_i = Σ_{γ<β_i} z_i^{β_i−γ−1} M_i^γ`.
    pub fn btilde_factor(&self, t: usize) -> Matrix<Poly<F>> {
        let m = self.m();
        let z = self.vars[t];
        let mut power = Matrix::identity(m);
        let mut acc = Matrix::zeros(m, m);
        for g in 0..self.beta[t] {
            let coeff = Poly::z_pow(z, self.beta[t] - g - 1);
            acc = acc.add(&power.map(|e| e * &coeff)).expect("same shape");
            power = mat_mul(&power, &self.mult[t]);
        }
        acc
    }

    /// `B̃ = Π_i B̃_i`.
    pub fn btilde(&self) -> Matrix<Poly<F>> {
        (0..self.p()).fold(Matrix::identity(self.m()), |acc, t| {
            mat_mul(&acc, &self.btilde_factor(t))
        })
    }

    /// `z^{β−1}` in the ambient variables.
    pub fn z_beta_minus_one(&self) -> Poly<F> {
        self.vars
            .iter()
            .zip(&self.beta)
            .fold(Poly::one(), |acc, (&v, &b)| acc * Poly::z_pow(v, b - 1))
    }

    pub fn render_basis(&self, names: &[String]) -> String {
        let items: Vec<String> = self
            .basis
            .iter()
            .map(|a| {
                let m = Monomial::from_exponents(a);
                if m.is_one() {
                    "[1]".to_string()
                } else {
                    format!("[{}]", m.render(names))
                }
            })
            .collect();
        items.join(", ")
    }
}

/// Builds the universal resolution of `J` along the minimal prime `W = V(w)`.
pub fn universal_resolution<F: Field>(j: &MonomialIdeal, w: VarSet) -> Result<UniversalResolution<F>> {
    if !minimal_primes(j)?.contains(&w) {
        return Err(Error::NotMinimalPrime(w.render(j.variables())));
    }
    let vars: Vec<usize> = w.iter().collect();
    let beta: Vec<u32> = j
        .pure_powers(w)
        .ok_or_else(|| Error::NotMinimalPrime(w.render(j.variables())))?
        .into_iter()
        .map(|(_, b)| b)
        .collect();
    let mut basis = j.standard_monomials(w)?;
    basis.sort_by(|a, b| {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    let m = basis.len();
    let mult: Vec<Matrix<Poly<F>>> = vars
        .iter()
        .map(|&v| {
            let mut mat = Matrix::zeros(m, m);
            for (col, a) in basis.iter().enumerate() {
                let mut up = a.clone();
                up[v] += 1;
                if let Some(row) = basis.iter().position(|b| *b == up) {
                    mat.set(row, col, Poly::one());
                }
            }
            mat
        })
        .collect();
    let gs: Vec<Matrix<Poly<F>>> = vars
        .iter()
        .zip(&mult)
        .map(|(&v, mi)| {
            Matrix::from_fn(m, m, |a, b| {
                let diag = if a == b { Poly::z_pow(v, 1) } else { Poly::zero() };
                diag - mi.get(a, b).clone()
            })
        })
        .collect();
    let complex = koszul_blocks(&gs)?;
    let powers: Vec<Poly<F>> = vars.iter().zip(&beta).map(|(&v, &b)| Poly::z_pow(v, b)).collect();
    let koszul = koszul_complex(&powers)?;
    let mut u = UniversalResolution {
        vars,
        basis,
        mult,
        beta,
        complex,
        koszul,
        c: ChainMap { maps: vec![] },
    };
    u.c = universal_chain_map(&u);
    u.c.check(&u.koszul, &u.complex)?;
    Ok(u)
}

/// `c_k(ε_I) = Π_{i∈I} B̃_i [1] ⊗ e_I`.
fn universal_chain_map<F: Field>(u: &UniversalResolution<F>) -> ChainMap<F> {
    let (m, p) = (u.m(), u.p());
    let factors: Vec<Matrix<Poly<F>>> = (0..p).map(|t| u.btilde_factor(t)).collect();
    let mut maps = Vec::with_capacity(p + 1);
    for k in 0..=p {
        let subs = subsets(p, k);
        let mut c = Matrix::zeros(subs.len() * m, subs.len());
        for (s, set) in subs.iter().enumerate() {
            let prod = set
                .iter()
                .fold(Matrix::identity(m), |acc, &t| mat_mul(&acc, &factors[t]));
            for r in 0..m {
                c.set(s * m + r, s, prod.get(r, m - 1).clone());
            }
        }
        maps.push(c);
    }
    ChainMap { maps }
}
