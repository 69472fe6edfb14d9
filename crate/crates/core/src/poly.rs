//! Univariate polynomials with coefficients in a [`Ring`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Ring};

/// Polynomial with coefficients stored in ascending degree order.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient list. `one` records the coefficient ring so that the
/// zero polynomial still knows where it lives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
    one: R,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, one: R) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, one }
    }

    pub fn zero(one: R) -> Self {
        Poly { coeffs: Vec::new(), one }
    }

    pub fn constant(c: R) -> Self {
        let one = c.one_like();
        Poly::new(vec![c], one)
    }

    /// The indeterminate `X`.
    pub fn x(one: R) -> Self {
        Poly::new(vec![one.zero_like(), one.clone()], one)
    }

    /// `c * X^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let one = c.one_like();
        let mut coeffs = vec![one.zero_like(); k];
        coeffs.push(c);
        Poly::new(coeffs, one)
    }

    /// `X - a`.
    pub fn linear_root(a: &R) -> Self {
        Poly::new(vec![-a.clone(), a.one_like()], a.one_like())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn one_scalar(&self) -> &R {
        &self.one
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.one.zero_like())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(), self.one.clone())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.one.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<R>) -> Result<Matrix<R>> {
        if !m.is_square() {
            return Err(Error::NonSquare(m.rows(), m.cols()));
        }
        let n = m.rows();
        let mut acc = Matrix::zero(n, n, m.one().clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&Matrix::identity(n, m.one().clone()).scale(c))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.clone() * c.int_like(i as i64)).collect();
        Poly::new(coeffs, self.one.clone())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Poly::constant(self.one.clone());
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map<S: Ring>(&self, one: S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), one)
    }

    /// Formats the polynomial using `var` as the indeterminate, highest degree first.
    pub fn format_with(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            let compound = text.chars().skip(1).any(|ch| ch == '+' || ch == '-' || ch == '/') && i > 0;
            let negative = !compound && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if compound {
                text = format!("({text})");
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let unit = text == "1";
            match i {
                0 => out.push_str(&text),
                _ => {
                    if !unit {
                        out.push_str(&text);
                    }
                    out.push_str(var);
                    if i > 1 {
                        out.push('^');
                        out.push_str(&i.to_string());
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division: returns `(q, r)` with `self = q * d + r`, `deg r < deg d`.
    pub fn divrem(&self, d: &Poly<F>) -> Result<(Poly<F>, Poly<F>)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().expect("nonzero").try_inv()?;
        let mut rem = self.coeffs.clone();
        let zero = self.one.zero_like();
        let mut quot = vec![zero.clone(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone() * lead_inv.clone();
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].clone() - c.clone() * dc.clone();
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        Ok((Poly::new(quot, self.one.clone()), Poly::new(rem, self.one.clone())))
    }

    pub fn rem(&self, d: &Poly<F>) -> Result<Poly<F>> {
        Ok(self.divrem(d)?.1)
    }

    /// Scales to a monic polynomial; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Result<Poly<F>> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(c) => Ok(self.scale(&c.try_inv()?)),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly<F>) -> Result<Poly<F>> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly<F>) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
        let one = self.one.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(one.clone()), Poly::zero(one.clone()));
        let (mut t0, mut t1) = (Poly::zero(one.clone()), Poly::constant(one.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0 - q.clone() * s1.clone();
            let t2 = t0 - q * t1.clone();
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.leading().cloned() {
            None => Ok((r0, s0, t0)),
            Some(c) => {
                let inv = c.try_inv()?;
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Poly<F>) -> Result<Poly<F>> {
        let (g, s, _) = self.ext_gcd(m)?;
        if g.degree() != Some(0) {
            return Err(Error::NonInvertible(format!("{self} mod {m}")));
        }
        s.rem(m)
    }

    /// True when `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("X"))
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Poly::new(coeffs, self.one)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::new(coeffs, self.one)
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.one);
        }
        let zero = self.one.zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs, self.one)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect(), self.one)
    }
}

/// Polynomials over a ring form a ring, which lets determinant code run on
/// matrices with polynomial entries.
impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.one.clone())
    }
    fn one_like(&self) -> Self {
        Poly::constant(self.one.clone())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn int_like(&self, n: i64) -> Self {
        Poly::constant(self.one.int_like(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn p(cs: &[i64]) -> Poly<BigRational> {
        Poly::new(cs.iter().map(|&c| q(c)).collect(), q(1))
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 1]);
        let g = p(&[1, 1]);
        let (quot, r) = f.divrem(&g).unwrap();
        assert_eq!(quot, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert!(f.is_squarefree().unwrap());
        assert!(!p(&[1, 2, 1]).is_squarefree().unwrap());
    }

    #[test]
    fn extended_gcd_identity() {
        let f = p(&[1, 0, 1]);
        let g = p(&[-2, 1]);
        let (d, s, t) = f.ext_gcd(&g).unwrap();
        assert_eq!(d, p(&[1]));
        assert_eq!(s * f + t * g, p(&[1]));
    }

    #[test]
    fn formatting() {
        assert_eq!(p(&[1, 0, 1]).to_string(), "X^2+1");
        assert_eq!(p(&[-3, 1]).to_string(), "X-3");
        assert_eq!(p(&[0, -1, 2]).to_string(), "2X^2-X");
        assert_eq!(p(&[]).to_string(), "0");
    }
}
