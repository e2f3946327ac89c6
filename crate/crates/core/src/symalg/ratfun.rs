use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::monomial::{Monomial, Var};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Rational function `num / den` in lowest terms with a monic denominator.
///
/// Equality is structural because the representative is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(ratfun_normalize(num, den))
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<F> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.num.depends_on(v) || self.den.depends_on(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den.vars());
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return ratfun_normalize(&self.num + &other.num, self.den.clone());
        }
        ratfun_normalize(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(&self.num * &other.num);
        }
        ratfun_normalize(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn scale(&self, c: &F) -> Self {
        RatFun {
            num: self.num.scale(c),
            den: if c.is_zero() { Poly::one() } else { self.den.clone() },
        }
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFun {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        if self.den.is_constant() {
            return ratfun_normalize(self.num.derivative(v), self.den.clone());
        }
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        ratfun_normalize(n, self.den.pow(2))
    }

    /// Substitutes a constant; fails if the denominator vanishes identically.
    pub fn subs(&self, v: Var, value: &F) -> Result<Self> {
        Self::new(self.num.subs(v, value), self.den.subs(v, value))
    }

    pub fn eval(&self, value: impl Fn(Var) -> F + Copy) -> Result<F> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(value) / d)
    }

    /// Largest power of `v` dividing the denominator.
    pub fn den_power(&self, v: Var) -> u32 {
        self.den.min_exponent(v)
    }

    /// Removes `v^e` from the denominator (multiplying by `v^e`).
    pub fn clear_den_power(&self, v: Var, e: u32) -> Self {
        let m = Monomial::var(v, e);
        RatFun {
            num: self.num.clone(),
            den: self
                .den
                .div_exact(&Poly::monomial(m))
                .expect("power divides denominator"),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.den.is_one() {
            return self.num.render(names);
        }
        let wrap = |p: &Poly<F>, s: String| if p.len() > 1 { format!("({s})") } else { s };
        format!(
            "{}/{}",
            wrap(&self.num, self.num.render(names)),
            wrap(&self.den, self.den.render(names))
        )
    }
}

/// Canonical representative: gcd-reduced, denominator monic, `0/1` for zero.
pub fn ratfun_normalize<F: Field>(num: Poly<F>, den: Poly<F>) -> RatFun<F> {
    assert!(!den.is_zero(), "ratfun_normalize called with zero denominator");
    if num.is_zero() {
        return RatFun { num, den: Poly::one() };
    }
    let (num, den) = if den.is_constant() {
        (num, den)
    } else {
        let g = gcd(&num, &den);
        if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        }
    };
    let lc = den.leading_coeff();
    if lc.is_one() {
        RatFun { num, den }
    } else {
        let inv = F::one() / lc;
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl<F: Field> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self.render(&[]))
    }
}

impl<F: Field> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl<F: Field> From<Poly<F>> for RatFun<F> {
    fn from(p: Poly<F>) -> Self {
        Self::from_poly(p)
    }
}

impl<F: Field> Default for RatFun<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Zero for RatFun<F> {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl<F: Field> std::ops::Add for RatFun<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        RatFun::add(&self, &rhs)
    }
}

impl<F: Field> std::ops::Mul for RatFun<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RatFun::mul(&self, &rhs)
    }
}

impl<F: Field> One for RatFun<F> {
    fn one() -> Self {
        RatFun::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;
    type R = RatFun<BigRational>;

    fn v(i: usize) -> P {
        P::var(Var::z(i))
    }
    fn vb(i: usize) -> P {
        P::var(Var::bar(i))
    }

    fn norm2() -> P {
        &(&v(0) * &vb(0)) + &(&v(1) * &vb(1))
    }

    #[test]
    fn norm_over_norm_is_one() {
        let r = R::new(norm2(), norm2()).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn cancels_common_factor() {
        let (x, y) = (v(0), v(1));
        let r = R::new(&x.pow(2) - &y.pow(2), &x - &y).unwrap();
        assert_eq!(r, R::from_poly(&x + &y));
    }

    #[test]
    fn zero_numerator() {
        let r = R::new(P::zero(), norm2()).unwrap();
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(R::new(P::one(), P::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn denominator_is_monic() {
        let r = R::new(v(0), v(1).scale(&BigRational::from_integer(4.into()))).unwrap();
        assert!(r.den().leading_coeff().is_one());
        assert_eq!(r.num(), &v(0).scale(&BigRational::new(1.into(), 4.into())));
    }

    #[test]
    fn quotient_rule() {
        // d/dx̄ of x̄ / (x x̄ + y ȳ) = y ȳ / N^2
        let r = R::new(vb(0), norm2()).unwrap();
        let d = r.derivative(Var::bar(0));
        assert_eq!(d, R::new(&v(1) * &vb(1), norm2().pow(2)).unwrap());
    }
}
