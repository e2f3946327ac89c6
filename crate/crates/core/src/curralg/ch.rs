use super::rewrite::Factor;
use super::term::CurrentSum;
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::superhom::{Matrix, SuperMatrix};

/// `∂̄(1/z_{i_p}^{a_p}) ∧ ⋯ ∧ ∂̄(1/z_{i_1}^{a_1})` as the single entry of a
/// block `E_0 → E_p` of the Koszul complex.
pub fn ch_product<F: Field>(powers: &[(usize, u32)]) -> Result<SuperMatrix<CurrentSum<F>>> {
    for (n, &(v, a)) in powers.iter().enumerate() {
        if a == 0 {
            return Err(Error::Precondition("residue exponents must be positive".into()));
        }
        if powers[..n].iter().any(|&(w, _)| w == v) {
            return Err(Error::Precondition(format!(
                "repeated variable z{v} in residue product"
            )));
        }
    }
    let factors = powers.iter().rev().map(|&(v, a)| Factor::Res(v, a)).collect();
    let entry = CurrentSum::product(factors)?;
    let p = powers.len();
    SuperMatrix::with_degree(0, p, p as u32, Matrix::from_fn(1, 1, |_, _| entry.clone()))
}
