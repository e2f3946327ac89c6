use super::complex::FreeComplex;
use super::matrix::{super_mul, Matrix, SuperMatrix};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::symalg::Form;

/// Entrywise exterior derivative of a differential in a trivial frame.
pub fn dphi<F: Field>(phi: &SuperMatrix<Form<F>>) -> Result<SuperMatrix<Form<F>>> {
    if phi.deg_f() != 0 {
        return Err(Error::Precondition("Dφ needs form-degree 0 entries".into()));
    }
    let m = phi.matrix().map(Form::d);
    SuperMatrix::with_degree(phi.src, phi.tgt, 1, m)
}

/// `Dφ_1 ⋯ Dφ_k : E_k → E_0` (the identity of `E_0` for `k = 0`).
pub fn dphi_product<F: Field>(e: &FreeComplex<F>, k: usize) -> Result<SuperMatrix<Form<F>>> {
    if k > e.length() {
        return Err(Error::Precondition(format!(
            "level {k} exceeds the length {}",
            e.length()
        )));
    }
    if k == 0 {
        return SuperMatrix::with_degree(0, 0, 0, Matrix::identity(e.rank(0)).to_forms());
    }
    let mut acc = dphi(&e.phi_super(k))?;
    for l in (1..k).rev() {
        acc = super_mul(&dphi(&e.phi_super(l))?, &acc)?;
    }
    Ok(acc)
}

/// `φ_ℓ Dφ_{ℓ+1} = Dφ_ℓ φ_{ℓ+1}`.
pub fn shift_identity<F: Field>(e: &FreeComplex<F>, l: usize) -> Result<bool> {
    let lhs = super_mul(&e.phi_super(l), &dphi(&e.phi_super(l + 1))?)?;
    let rhs = super_mul(&dphi(&e.phi_super(l))?, &e.phi_super(l + 1))?;
    Ok(lhs.matrix() == rhs.matrix())
}
