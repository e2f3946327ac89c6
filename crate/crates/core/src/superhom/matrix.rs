use std::fmt;

use crate::curralg::{current_mul, CurrentSum};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::symalg::{Form, Poly};

/// Values that can sit in a graded matrix.
pub trait Entry: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Total degree if homogeneous and nonzero.
    fn degree(&self) -> Option<u32>;
    fn render(&self, names: &[String]) -> String;
}

/// Graded product of entries.
pub trait Wedge<Rhs> {
    type Output: Entry;
    fn wedge(&self, rhs: &Rhs) -> Result<Self::Output>;
}

impl<F: Field> Entry for Poly<F> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn degree(&self) -> Option<u32> {
        (!Poly::is_zero(self)).then_some(0)
    }
    fn render(&self, names: &[String]) -> String {
        Poly::render(self, names)
    }
}

impl<F: Field> Entry for Form<F> {
    fn zero() -> Self {
        Form::zero()
    }
    fn is_zero(&self) -> bool {
        Form::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Form::add(self, other)
    }
    fn neg(&self) -> Self {
        Form::neg(self)
    }
    fn degree(&self) -> Option<u32> {
        Form::degree(self)
    }
    fn render(&self, names: &[String]) -> String {
        Form::render(self, names)
    }
}

impl<F: Field> Entry for CurrentSum<F> {
    fn zero() -> Self {
        CurrentSum::zero()
    }
    fn is_zero(&self) -> bool {
        CurrentSum::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        CurrentSum::add(self, other)
    }
    fn neg(&self) -> Self {
        CurrentSum::neg(self)
    }
    fn degree(&self) -> Option<u32> {
        CurrentSum::degree(self)
    }
    fn render(&self, names: &[String]) -> String {
        CurrentSum::render(self, names)
    }
}

impl<F: Field> Wedge<Poly<F>> for Poly<F> {
    type Output = Poly<F>;
    fn wedge(&self, rhs: &Poly<F>) -> Result<Poly<F>> {
        Ok(self * rhs)
    }
}

impl<F: Field> Wedge<Form<F>> for Form<F> {
    type Output = Form<F>;
    fn wedge(&self, rhs: &Form<F>) -> Result<Form<F>> {
        Ok(Form::wedge(self, rhs))
    }
}

impl<F: Field> Wedge<CurrentSum<F>> for Form<F> {
    type Output = CurrentSum<F>;
    fn wedge(&self, rhs: &CurrentSum<F>) -> Result<CurrentSum<F>> {
        current_mul(&CurrentSum::from_form(self), rhs)
    }
}

impl<F: Field> Wedge<Form<F>> for CurrentSum<F> {
    type Output = CurrentSum<F>;
    fn wedge(&self, rhs: &Form<F>) -> Result<CurrentSum<F>> {
        current_mul(self, &CurrentSum::from_form(rhs))
    }
}

impl<F: Field> Wedge<CurrentSum<F>> for CurrentSum<F> {
    type Output = CurrentSum<F>;
    fn wedge(&self, rhs: &CurrentSum<F>) -> Result<CurrentSum<F>> {
        current_mul(self, rhs)
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Clone>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T: Entry> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        }))
    }

    pub fn neg(&self) -> Self {
        self.map(Entry::neg)
    }

    /// Ordinary matrix product with entries multiplied by [`Wedge`].
    pub fn mul<U, O>(&self, other: &Matrix<U>) -> Result<Matrix<O>>
    where
        T: Wedge<U, Output = O>,
        U: Entry,
        O: Entry,
    {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = O::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.wedge(b)?);
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Diagonal sum of a square matrix.
    pub fn trace(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).fold(T::zero(), |acc, i| acc.add(self.get(i, i))))
    }

    pub fn render(&self, names: &[String]) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.render(names))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

impl<F: Field> Matrix<Poly<F>> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn to_forms(&self) -> Matrix<Form<F>> {
        self.map(|p| Form::poly(p.clone()))
    }

    pub fn max_degree(&self) -> u32 {
        self.data.iter().filter_map(Poly::total_degree).max().unwrap_or(0)
    }
}

impl<T: Entry> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

/// A block `E_src → E_tgt` of a graded endomorphism, with entries of a
/// common form degree.
#[derive(Clone, PartialEq)]
pub struct SuperMatrix<T> {
    pub src: usize,
    pub tgt: usize,
    deg_f: u32,
    m: Matrix<T>,
}

impl<T: Entry> SuperMatrix<T> {
    /// Infers the form degree; entries must share it.
    pub fn new(src: usize, tgt: usize, m: Matrix<T>) -> Result<Self> {
        let mut deg = None;
        for e in m.entries().filter(|e| !e.is_zero()) {
            let d = e.degree().ok_or(Error::Inhomogeneous)?;
            if deg.is_some_and(|x| x != d) {
                return Err(Error::Inhomogeneous);
            }
            deg = Some(d);
        }
        Ok(SuperMatrix {
            src,
            tgt,
            deg_f: deg.unwrap_or(0),
            m,
        })
    }

    /// Like [`SuperMatrix::new`] but with the degree declared, which matters
    /// for zero matrices.
    pub fn with_degree(src: usize, tgt: usize, deg_f: u32, m: Matrix<T>) -> Result<Self> {
        let s = Self::new(src, tgt, m)?;
        if !s.m.is_zero() && s.deg_f != deg_f {
            return Err(Error::Inhomogeneous);
        }
        Ok(SuperMatrix { deg_f, ..s })
    }

    /// Endomorphism parity.
    pub fn deg_e(&self) -> u32 {
        ((self.src + self.tgt) % 2) as u32
    }

    /// Form degree.
    pub fn deg_f(&self) -> u32 {
        self.deg_f
    }

    /// Total parity.
    pub fn deg(&self) -> u32 {
        (self.deg_e() + self.deg_f) % 2
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        self.m.get(i, j)
    }

    pub fn scale_sign(&self, negative: bool) -> Self {
        if negative {
            SuperMatrix {
                m: self.m.neg(),
                ..self.clone()
            }
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.src, self.tgt) != (other.src, other.tgt) {
            return Err(Error::Shape("sum of blocks between different levels".into()));
        }
        let deg = if self.m.is_zero() { other.deg_f } else { self.deg_f };
        Self::with_degree(self.src, self.tgt, deg, self.m.add(&other.m)?)
    }

    pub fn render(&self, names: &[String]) -> String {
        self.m.render(names)
    }
}

impl<T: Entry> fmt::Debug for SuperMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SuperMatrix({}→{}, deg_f {}, {:?})",
            self.src, self.tgt, self.deg_f, self.m
        )
    }
}

/// `{βγ} = (−1)^{deg_e β · deg_f γ} {β}{γ}`.
pub fn super_mul<A, B, O>(beta: &SuperMatrix<A>, gamma: &SuperMatrix<B>) -> Result<SuperMatrix<O>>
where
    A: Entry + Wedge<B, Output = O>,
    B: Entry,
    O: Entry,
{
    if beta.src != gamma.tgt {
        return Err(Error::Shape(format!(
            "composition of blocks {}→{} after {}→{}",
            beta.src, beta.tgt, gamma.src, gamma.tgt
        )));
    }
    let mut m = beta.m.mul(&gamma.m)?;
    if beta.deg_e() * gamma.deg_f % 2 == 1 {
        m = m.neg();
    }
    SuperMatrix::with_degree(gamma.src, beta.tgt, beta.deg_f + gamma.deg_f, m)
}

/// Sum of the diagonal entries of a square block.
pub fn super_trace<T: Entry>(gamma: &SuperMatrix<T>) -> Result<T> {
    if gamma.src != gamma.tgt || gamma.m.rows() != gamma.m.cols() {
        return Err(Error::Shape("trace of a non-square block".into()));
    }
    gamma.m.trace()
}
