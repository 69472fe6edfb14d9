//! Semisimple/nilpotent/unipotent predicates and the additive and
//! multiplicative Jordan-Chevalley decompositions.
//!
//! The semisimple part is produced as a polynomial in the input: `p(X)` is
//! found by the Chinese remainder theorem with `p = alpha mod (X - alpha)^k`
//! for every eigenvalue `alpha` of multiplicity `k` in the minimal
//! polynomial, and `p = 0 mod X` when `0` is not an eigenvalue.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldScalar};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub semisimple: bool,
    pub nilpotent: bool,
    pub unipotent: bool,
}

pub fn is_nilpotent<F: Field>(m: &Matrix<F>) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NonSquare(m.rows(), m.cols()));
    }
    Ok(m.pow(m.rows() as u64)?.is_zero())
}

/// Semisimple over the algebraic closure: the minimal polynomial is separable.
pub fn is_semisimple<F: Field>(m: &Matrix<F>) -> Result<bool> {
    m.min_poly()?.is_squarefree()
}

pub fn classify<F: Field>(m: &Matrix<F>) -> Result<Classification> {
    let nilpotent = is_nilpotent(m)?;
    let shifted = m.sub(&Matrix::identity(m.rows(), m.one().clone()))?;
    Ok(Classification { semisimple: is_semisimple(m)?, nilpotent, unipotent: is_nilpotent(&shifted)? })
}

/// Additive (and, for invertible input, multiplicative) Jordan-Chevalley data.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanDecomposition<F> {
    pub s: Matrix<F>,
    pub n: Matrix<F>,
    /// `S = p(M)`.
    pub p_poly: Poly<F>,
    /// `N = q(M)`.
    pub q_poly: Poly<F>,
    /// `U = I + S^-1 N`, present when the input is invertible.
    pub u: Option<Matrix<F>>,
    /// `S^-1 = r(M)`, present when the input is invertible.
    pub s_inv_poly: Option<Poly<F>>,
}

/// Jordan-Chevalley decomposition given the distinct eigenvalues of `m` with
/// their multiplicities in the minimal polynomial.
pub fn jordan_from_roots<F: Field>(m: &Matrix<F>, roots: &[(F, usize)]) -> Result<JordanDecomposition<F>> {
    let dim = m.rows();
    let one = m.one().clone();
    let x = Poly::x(one.clone());
    let mut moduli: Vec<(Poly<F>, Poly<F>)> =
        roots.iter().map(|(alpha, k)| (Poly::linear_root(alpha).pow(*k), Poly::constant(alpha.clone()))).collect();
    if !roots.iter().any(|(alpha, _)| alpha.is_zero()) {
        moduli.push((x.clone(), Poly::zero(one.clone())));
    }
    let modulus = moduli.iter().fold(Poly::constant(one.clone()), |acc, (mi, _)| acc * mi.clone());
    let mut p = Poly::zero(one.clone());
    for (mi, ri) in &moduli {
        let rest = modulus.divrem(mi)?.0;
        let e = rest.inverse_mod(mi)?;
        p = p + ri.clone() * rest * e;
    }
    let p = p.rem(&modulus)?;
    let s = p.eval_matrix(m)?;
    let n = m.sub(&s)?;
    let q = x - p.clone();
    let (u, s_inv_poly) = if m.det()?.is_zero() {
        (None, None)
    } else {
        let min = m.min_poly()?;
        let r = p.inverse_mod(&min)?;
        let s_inv = r.eval_matrix(m)?;
        let u = Matrix::identity(dim, one).add(&s_inv.mul(&n)?)?;
        (Some(u), Some(r))
    };
    Ok(JordanDecomposition { s, n, p_poly: p, q_poly: q, u, s_inv_poly })
}

/// Jordan-Chevalley decomposition over the matrix's own field.
///
/// Eigenvalues are found by scanning all elements of a finite field, or by
/// the rational root test over `Q`. Fails with [`Error::NonSplitCharPoly`]
/// when the minimal polynomial does not split into linear factors.
pub fn jordan_decompose(m: &Matrix<FieldScalar>) -> Result<JordanDecomposition<FieldScalar>> {
    if !m.is_square() {
        return Err(Error::NonSquare(m.rows(), m.cols()));
    }
    let min = m.min_poly()?;
    let roots = split_roots(&min)?;
    jordan_from_roots(m, &roots)
}

/// Roots with multiplicities of a polynomial that splits over its field.
pub fn split_roots(f: &Poly<FieldScalar>) -> Result<Vec<(FieldScalar, usize)>> {
    let domain = f.one_scalar().domain().clone();
    let candidates = match &*domain {
        FieldDescriptor::Rationals => rational_root_candidates(f)?,
        _ if domain.size().is_some() => FieldScalar::elements(&domain)?,
        _ => {
            return Err(Error::UnsupportedDomain(format!("eigenvalue search over {domain}")));
        }
    };
    let mut rest = f.clone();
    let mut roots = Vec::new();
    for alpha in candidates {
        let lin = Poly::linear_root(&alpha);
        let mut k = 0;
        loop {
            let (quot, r) = rest.divrem(&lin)?;
            if !r.is_zero() {
                break;
            }
            rest = quot;
            k += 1;
        }
        if k > 0 {
            roots.push((alpha, k));
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::NonSplitCharPoly);
    }
    Ok(roots)
}

/// `0` and all `±r/s` with `r` dividing the lowest nonzero coefficient and
/// `s` dividing the leading one, after clearing denominators.
fn rational_root_candidates(f: &Poly<FieldScalar>) -> Result<Vec<FieldScalar>> {
    let domain = f.one_scalar().domain().clone();
    let coeffs: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| c.as_rational().cloned().ok_or_else(|| Error::DomainMismatch("expected rationals".into())))
        .collect::<Result<_>>()?;
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut out = vec![FieldScalar::zero(&domain)];
    let Some(low) = ints.iter().find(|c| !c.is_zero()) else { return Ok(out) };
    let high = ints.last().expect("nonzero polynomial");
    for r in divisors(&low.abs()) {
        for s in divisors(&high.abs()) {
            for sign in [1, -1] {
                let q = BigRational::new(BigInt::from(sign) * r.clone(), s.clone());
                let x = FieldScalar::rational(q);
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
