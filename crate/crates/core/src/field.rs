//! Exact scalar domains: prime fields, the rationals, rational function
//! fields `F_p(t)`, and quadratic étale algebras `k[w]/(w^2 - a)` over any of
//! those.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{rational_sqrt, Field, Ring};

/// Description of a scalar domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    /// `F_p` for a prime `p`.
    Prime(BigInt),
    /// `Q`.
    Rationals,
    /// `F_p(t)`.
    RationalFunctions(BigInt),
    /// `base[w]/(w^2 - a)` with `a` a nonzero element of `base`.
    QuadraticEtale { base: Arc<FieldDescriptor>, a: FieldScalar },
}

/// Shared handle to a domain; scalars hold one of these.
pub type Domain = Arc<FieldDescriptor>;

pub(crate) fn is_prime(p: &BigInt) -> bool {
    if p < &BigInt::from(2) {
        return false;
    }
    if let Some(small) = p.to_u64() {
        if small < 4 {
            return true;
        }
        if small % 2 == 0 {
            return false;
        }
        let mut d = 3u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                return false;
            }
            d += 2;
        }
        return true;
    }
    // Deterministic Miller-Rabin bases are not valid beyond 64 bits; a
    // large random base set keeps the error probability negligible.
    miller_rabin(p)
}

fn miller_rabin(n: &BigInt) -> bool {
    let one = BigInt::one();
    let n1 = n - &one;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl FieldDescriptor {
    /// `F_p`; fails with [`Error::NotPrime`] when `p` is not prime.
    pub fn prime(p: impl Into<BigInt>) -> Result<Domain> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Arc::new(FieldDescriptor::Prime(p)))
    }

    pub fn rationals() -> Domain {
        Arc::new(FieldDescriptor::Rationals)
    }

    /// `F_p(t)`.
    pub fn rational_functions(p: impl Into<BigInt>) -> Result<Domain> {
        let p = p.into();
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Arc::new(FieldDescriptor::RationalFunctions(p)))
    }

    /// `base[w]/(w^2 - a)`. Nesting is limited to depth one and `a` must be nonzero.
    pub fn etale(base: &Domain, a: FieldScalar) -> Result<Domain> {
        if matches!(**base, FieldDescriptor::QuadraticEtale { .. }) {
            return Err(Error::InvalidField("quadratic extensions may not be nested".into()));
        }
        if a.domain() != base {
            return Err(Error::DomainMismatch(format!("parameter {a} is not in {base}")));
        }
        if a.is_zero() {
            return Err(Error::InvalidField("the square class parameter must be nonzero".into()));
        }
        Ok(Arc::new(FieldDescriptor::QuadraticEtale { base: base.clone(), a }))
    }

    /// Parses `q`, `fp:P`, `ratfn:P` or `etale:<base>:<a>`.
    pub fn parse(text: &str) -> Result<Domain> {
        let text = text.trim();
        let bad = || Error::InvalidField(text.to_string());
        if text == "q" || text == "Q" {
            return Ok(FieldDescriptor::rationals());
        }
        if let Some(rest) = text.strip_prefix("fp:") {
            let p: BigInt = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::prime(p);
        }
        if let Some(rest) = text.strip_prefix("ratfn:") {
            let p: BigInt = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::rational_functions(p);
        }
        if let Some(rest) = text.strip_prefix("etale:") {
            let (base, a) = rest.rsplit_once(':').ok_or_else(bad)?;
            let base = FieldDescriptor::parse(base)?;
            let a = FieldScalar::parse(a, &base)?;
            return FieldDescriptor::etale(&base, a);
        }
        Err(bad())
    }

    /// Characteristic of the domain (zero for `Q` and its extensions).
    pub fn characteristic(&self) -> BigInt {
        match self {
            FieldDescriptor::Prime(p) | FieldDescriptor::RationalFunctions(p) => p.clone(),
            FieldDescriptor::Rationals => BigInt::zero(),
            FieldDescriptor::QuadraticEtale { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<BigInt> {
        match self {
            FieldDescriptor::Prime(p) => Some(p.clone()),
            FieldDescriptor::QuadraticEtale { base, .. } => base.size().map(|s| &s * &s),
            _ => None,
        }
    }

    /// True when the domain is a field (a quadratic étale algebra is a field
    /// exactly when it does not split).
    pub fn is_field(&self) -> bool {
        match self {
            FieldDescriptor::QuadraticEtale { .. } => !self.is_split().unwrap_or(false),
            _ => true,
        }
    }

    /// For a quadratic étale algebra, whether the parameter `a` is a square in
    /// the base, i.e. whether the algebra is isomorphic to `k x k`.
    pub fn is_split(&self) -> Result<bool> {
        match self {
            FieldDescriptor::QuadraticEtale { a, .. } => a.is_square_in_domain(),
            other => Err(Error::DomainMismatch(format!("{other} is not a quadratic étale algebra"))),
        }
    }

    /// The base domain of a quadratic étale algebra.
    pub fn etale_base(&self) -> Option<&Domain> {
        match self {
            FieldDescriptor::QuadraticEtale { base, .. } => Some(base),
            _ => None,
        }
    }

    /// The parameter `a` with `w^2 = a`.
    pub fn etale_param(&self) -> Option<&FieldScalar> {
        match self {
            FieldDescriptor::QuadraticEtale { a, .. } => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime(p) => write!(f, "fp:{p}"),
            FieldDescriptor::Rationals => write!(f, "q"),
            FieldDescriptor::RationalFunctions(p) => write!(f, "ratfn:{p}"),
            FieldDescriptor::QuadraticEtale { base, a } => write!(f, "etale:{base}:{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Residue(BigInt),
    Rational(BigRational),
    /// Reduced fraction with monic denominator; polynomials over `F_p`.
    RatFunc(Box<(Poly<FieldScalar>, Poly<FieldScalar>)>),
    /// `x0 + x1 w`.
    Pair(Box<(FieldScalar, FieldScalar)>),
}

/// An element of one of the exact domains, always stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    domain: Domain,
    repr: Repr,
}

fn prime_of(domain: &FieldDescriptor) -> &BigInt {
    match domain {
        FieldDescriptor::Prime(p) | FieldDescriptor::RationalFunctions(p) => p,
        _ => unreachable!("not a characteristic p domain"),
    }
}

impl FieldScalar {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// The image of an integer.
    pub fn from_int(domain: &Domain, n: impl Into<BigInt>) -> FieldScalar {
        let n = n.into();
        let repr = match &**domain {
            FieldDescriptor::Prime(p) => Repr::Residue(n.mod_floor(p)),
            FieldDescriptor::Rationals => Repr::Rational(BigRational::from_integer(n)),
            FieldDescriptor::RationalFunctions(p) => {
                let base = FieldDescriptor::prime(p.clone()).expect("validated prime");
                let one = FieldScalar::from_int(&base, 1);
                let num = Poly::constant(FieldScalar::from_int(&base, n));
                Repr::RatFunc(Box::new((num, Poly::constant(one))))
            }
            FieldDescriptor::QuadraticEtale { base, .. } => {
                Repr::Pair(Box::new((FieldScalar::from_int(base, n), FieldScalar::from_int(base, 0))))
            }
        };
        FieldScalar { domain: domain.clone(), repr }
    }

    pub fn zero(domain: &Domain) -> FieldScalar {
        FieldScalar::from_int(domain, 0)
    }

    pub fn one(domain: &Domain) -> FieldScalar {
        FieldScalar::from_int(domain, 1)
    }

    /// `num / den` as an element of the domain.
    pub fn from_ratio(domain: &Domain, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<FieldScalar> {
        FieldScalar::from_int(domain, num).try_div(&FieldScalar::from_int(domain, den))
    }

    /// A rational number as an element of `Q`.
    pub fn rational(q: BigRational) -> FieldScalar {
        FieldScalar { domain: FieldDescriptor::rationals(), repr: Repr::Rational(q) }
    }

    /// `x0 + x1 w` in a quadratic étale algebra.
    pub fn etale(domain: &Domain, x0: FieldScalar, x1: FieldScalar) -> Result<FieldScalar> {
        let base = domain
            .etale_base()
            .ok_or_else(|| Error::DomainMismatch(format!("{domain} is not a quadratic étale algebra")))?;
        if x0.domain() != base || x1.domain() != base {
            return Err(Error::DomainMismatch(format!("components must lie in {base}")));
        }
        Ok(FieldScalar { domain: domain.clone(), repr: Repr::Pair(Box::new((x0, x1))) })
    }

    /// The distinguished generator: `w` in an étale algebra, `t` in `F_p(t)`.
    pub fn generator(domain: &Domain) -> Result<FieldScalar> {
        match &**domain {
            FieldDescriptor::QuadraticEtale { base, .. } => {
                FieldScalar::etale(domain, FieldScalar::zero(base), FieldScalar::one(base))
            }
            FieldDescriptor::RationalFunctions(p) => {
                let base = FieldDescriptor::prime(p.clone())?;
                let one = FieldScalar::one(&base);
                Ok(FieldScalar {
                    domain: domain.clone(),
                    repr: Repr::RatFunc(Box::new((Poly::x(one.clone()), Poly::constant(one)))),
                })
            }
            _ => Err(Error::DomainMismatch(format!("{domain} has no distinguished generator"))),
        }
    }

    /// Builds `num / den` in `F_p(t)` from polynomials over `F_p`.
    pub fn ratfunc(domain: &Domain, num: Poly<FieldScalar>, den: Poly<FieldScalar>) -> Result<FieldScalar> {
        let p = match &**domain {
            FieldDescriptor::RationalFunctions(p) => p,
            _ => return Err(Error::DomainMismatch(format!("{domain} is not a rational function field"))),
        };
        let base = FieldDescriptor::prime(p.clone())?;
        for c in num.coeffs().iter().chain(den.coeffs()) {
            if c.domain() != &base {
                return Err(Error::DomainMismatch("polynomial coefficients must lie in F_p".into()));
            }
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let one = FieldScalar::one(&base);
        let num = Poly::new(num.coeffs().to_vec(), one.clone());
        let den = Poly::new(den.coeffs().to_vec(), one);
        Ok(FieldScalar { domain: domain.clone(), repr: normalize_ratfunc(num, den) })
    }

    /// Least nonnegative residue, for prime field elements.
    pub fn residue(&self) -> Option<&BigInt> {
        match &self.repr {
            Repr::Residue(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Components `(x0, x1)` of an étale element `x0 + x1 w`.
    pub fn components(&self) -> Option<(&FieldScalar, &FieldScalar)> {
        match &self.repr {
            Repr::Pair(pair) => Some((&pair.0, &pair.1)),
            _ => None,
        }
    }

    /// Numerator and monic denominator of a rational function.
    pub fn ratfunc_parts(&self) -> Option<(&Poly<FieldScalar>, &Poly<FieldScalar>)> {
        match &self.repr {
            Repr::RatFunc(nd) => Some((&nd.0, &nd.1)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Residue(r) => r.is_zero(),
            Repr::Rational(q) => Zero::is_zero(q),
            Repr::RatFunc(nd) => nd.0.is_zero(),
            Repr::Pair(pair) => pair.0.is_zero() && pair.1.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == FieldScalar::one(&self.domain)
    }

    fn same_domain(&self, rhs: &FieldScalar) -> Result<()> {
        if Arc::ptr_eq(&self.domain, &rhs.domain) || self.domain == rhs.domain {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!("{} vs {}", self.domain, rhs.domain)))
        }
    }

    fn with_repr(&self, repr: Repr) -> FieldScalar {
        FieldScalar { domain: self.domain.clone(), repr }
    }

    pub fn try_add(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.same_domain(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => Repr::Residue((a + b).mod_floor(prime_of(&self.domain))),
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::RatFunc(x), Repr::RatFunc(y)) => {
                normalize_ratfunc(x.0.clone() * y.1.clone() + y.0.clone() * x.1.clone(), x.1.clone() * y.1.clone())
            }
            (Repr::Pair(x), Repr::Pair(y)) => Repr::Pair(Box::new((&x.0 + &y.0, &x.1 + &y.1))),
            _ => unreachable!("domain check guarantees matching representations"),
        };
        Ok(self.with_repr(repr))
    }

    pub fn try_neg(&self) -> FieldScalar {
        let repr = match &self.repr {
            Repr::Residue(a) => Repr::Residue((-a).mod_floor(prime_of(&self.domain))),
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::RatFunc(nd) => Repr::RatFunc(Box::new((-nd.0.clone(), nd.1.clone()))),
            Repr::Pair(x) => Repr::Pair(Box::new((-&x.0, -&x.1))),
        };
        self.with_repr(repr)
    }

    pub fn try_sub(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.try_add(&rhs.try_neg())
    }

    pub fn try_mul(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.same_domain(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => Repr::Residue((a * b).mod_floor(prime_of(&self.domain))),
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::RatFunc(x), Repr::RatFunc(y)) => {
                normalize_ratfunc(x.0.clone() * y.0.clone(), x.1.clone() * y.1.clone())
            }
            (Repr::Pair(x), Repr::Pair(y)) => {
                let a = self.domain.etale_param().expect("étale domain");
                let x0y0 = &x.0 * &y.0;
                let x1y1 = &x.1 * &y.1;
                let c0 = &x0y0 + &(a * &x1y1);
                let c1 = &(&x.0 * &y.1) + &(&x.1 * &y.0);
                Repr::Pair(Box::new((c0, c1)))
            }
            _ => unreachable!("domain check guarantees matching representations"),
        };
        Ok(self.with_repr(repr))
    }

    pub fn try_inv(&self) -> Result<FieldScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Residue(a) => {
                let p = prime_of(&self.domain);
                Repr::Residue(a.modpow(&(p - BigInt::from(2)), p))
            }
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::RatFunc(nd) => normalize_ratfunc(nd.1.clone(), nd.0.clone()),
            Repr::Pair(_) => {
                let (conj, norm, _) = etale_conj_norm(self)?;
                if norm.is_zero() {
                    return Err(Error::NonInvertible(self.to_string()));
                }
                let inv = norm.try_inv()?;
                let (c0, c1) = conj.components().expect("pair");
                Repr::Pair(Box::new((c0 * &inv, c1 * &inv)))
            }
        };
        Ok(self.with_repr(repr))
    }

    pub fn try_div(&self, rhs: &FieldScalar) -> Result<FieldScalar> {
        self.same_domain(rhs)?;
        self.try_mul(&rhs.try_inv()?)
    }

    pub fn pow(&self, mut e: u64) -> FieldScalar {
        let mut base = self.clone();
        let mut acc = FieldScalar::one(&self.domain);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn pow_big(&self, e: &BigInt) -> FieldScalar {
        let mut acc = FieldScalar::one(&self.domain);
        let mut base = self.clone();
        let mut e = e.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                acc = &acc * &base;
            }
            base = &base * &base;
            e /= &two;
        }
        acc
    }

    /// Whether `self` is a square in its own domain.
    pub(crate) fn is_square_in_domain(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        match &self.repr {
            Repr::Residue(_) => is_square(self),
            Repr::Rational(q) => Ok(rational_sqrt(q).is_some()),
            Repr::RatFunc(nd) => {
                let prod = nd.0.clone() * nd.1.clone();
                let lead = prod.leading().expect("nonzero").clone();
                if !is_square(&lead)? {
                    return Ok(false);
                }
                let monic = prod.scale(&lead.try_inv()?);
                Ok(poly_sqrt_monic(&monic).is_some())
            }
            Repr::Pair(_) => Err(Error::UnsupportedDomain("square test in an étale algebra".into())),
        }
    }

    /// Enumerates the elements of a finite domain in lexicographic order.
    pub fn elements(domain: &Domain) -> Result<Vec<FieldScalar>> {
        match &**domain {
            FieldDescriptor::Prime(p) => {
                let p = p.to_u64().ok_or_else(|| Error::TooLarge(p.to_string(), u64::MAX))?;
                Ok((0..p).map(|i| FieldScalar::from_int(domain, i)).collect())
            }
            FieldDescriptor::QuadraticEtale { base, .. } if base.size().is_some() => {
                let base_elems = FieldScalar::elements(base)?;
                let mut out = Vec::with_capacity(base_elems.len() * base_elems.len());
                for x0 in &base_elems {
                    for x1 in &base_elems {
                        out.push(FieldScalar::etale(domain, x0.clone(), x1.clone())?);
                    }
                }
                Ok(out)
            }
            _ => Err(Error::UnsupportedDomain(format!("{domain} is infinite"))),
        }
    }

    /// Parses the textual form of an element of `domain`.
    ///
    /// Accepted forms: integers `-3`, fractions `2/7`, étale elements `3+2w`,
    /// and rational functions `(t^2+1)/(t)`.
    pub fn parse(text: &str, domain: &Domain) -> Result<FieldScalar> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        match &**domain {
            FieldDescriptor::Prime(_) | FieldDescriptor::Rationals => parse_fraction(&text, domain),
            FieldDescriptor::RationalFunctions(_) => parse_ratfunc(&text, domain),
            FieldDescriptor::QuadraticEtale { base, .. } => {
                let Some(body) = text.strip_suffix('w') else {
                    let x0 = FieldScalar::parse(&text, base)?;
                    return FieldScalar::etale(domain, x0, FieldScalar::zero(base));
                };
                let split = top_level_sign_split(body);
                let (x0_text, x1_text) = match split {
                    Some(i) => (&body[..i], &body[i..]),
                    None => ("0", body),
                };
                let x1_text = x1_text.strip_prefix('+').unwrap_or(x1_text);
                let x1 = match x1_text {
                    "" => FieldScalar::one(base),
                    "-" => -&FieldScalar::one(base),
                    t => FieldScalar::parse(t, base)?,
                };
                let x0 = FieldScalar::parse(x0_text, base)?;
                FieldScalar::etale(domain, x0, x1)
            }
        }
    }
}

/// Position of the last `+`/`-` at parenthesis depth zero that is not the
/// leading sign.
fn top_level_sign_split(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => found = Some(i),
            _ => {}
        }
    }
    found
}

fn parse_int(text: &str) -> Result<BigInt> {
    text.parse::<BigInt>().map_err(|_| Error::Parse(format!("invalid integer '{text}'")))
}

fn parse_fraction(text: &str, domain: &Domain) -> Result<FieldScalar> {
    match text.split_once('/') {
        None => Ok(FieldScalar::from_int(domain, parse_int(text)?)),
        Some((n, d)) => FieldScalar::from_ratio(domain, parse_int(n)?, parse_int(d)?),
    }
}

fn parse_poly_t(text: &str, base: &Domain) -> Result<Poly<FieldScalar>> {
    let one = FieldScalar::one(base);
    let mut result = Poly::zero(one.clone());
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if (c == '+' || c == '-') && i > 0 && !text[..i].ends_with('^') {
            terms.push(&text[start..i]);
            start = i;
        }
    }
    terms.push(&text[start..]);
    for term in terms {
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let (coef, deg) = match body.find('t') {
            None => (parse_int(body)?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let coef = if c.is_empty() { BigInt::one() } else { parse_int(c)? };
                let rest = &body[pos + 1..];
                let deg = if rest.is_empty() {
                    1
                } else {
                    let e = rest.strip_prefix('^').ok_or_else(|| Error::Parse(format!("invalid term '{term}'")))?;
                    e.parse::<usize>().map_err(|_| Error::Parse(format!("invalid exponent '{e}'")))?
                };
                (coef, deg)
            }
        };
        let coef = if neg { -coef } else { coef };
        result = result + Poly::monomial(FieldScalar::from_int(base, coef), deg);
    }
    Ok(result)
}

fn strip_parens(text: &str) -> &str {
    if text.starts_with('(') && text.ends_with(')') {
        let inner = &text[1..text.len() - 1];
        let mut depth = 0i32;
        for c in inner.chars() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth < 0 {
                        return text;
                    }
                }
                _ => {}
            }
        }
        if depth == 0 {
            return inner;
        }
    }
    text
}

fn parse_ratfunc(text: &str, domain: &Domain) -> Result<FieldScalar> {
    let base = FieldDescriptor::prime(prime_of(domain).clone())?;
    let mut depth = 0i32;
    let mut slash = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => slash = Some(i),
            _ => {}
        }
    }
    let (num_text, den_text) = match slash {
        Some(i) => (&text[..i], Some(&text[i + 1..])),
        None => (text, None),
    };
    let num = parse_poly_t(strip_parens(num_text), &base)?;
    let den = match den_text {
        Some(d) => parse_poly_t(strip_parens(d), &base)?,
        None => Poly::constant(FieldScalar::one(&base)),
    };
    FieldScalar::ratfunc(domain, num, den)
}

fn normalize_ratfunc(num: Poly<FieldScalar>, den: Poly<FieldScalar>) -> Repr {
    let one = den.one_scalar().clone();
    if num.is_zero() {
        return Repr::RatFunc(Box::new((num, Poly::constant(one))));
    }
    let g = num.gcd(&den).expect("F_p polynomial gcd");
    let num = num.divrem(&g).expect("nonzero gcd").0;
    let den = den.divrem(&g).expect("nonzero gcd").0;
    let lead_inv = den.leading().expect("nonzero").try_inv().expect("field");
    Repr::RatFunc(Box::new((num.scale(&lead_inv), den.scale(&lead_inv))))
}

/// Square root of a monic polynomial over `F_p`, when one exists.
fn poly_sqrt_monic(f: &Poly<FieldScalar>) -> Option<Poly<FieldScalar>> {
    let deg = f.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    let one = f.one_scalar().clone();
    let p = prime_of(one.domain()).clone();
    if p == BigInt::from(2) {
        // In characteristic 2 squaring is additive, and every element of F_2 is a square.
        let coeffs: Vec<_> = (0..=deg / 2).map(|i| f.coeff(2 * i)).collect();
        let g = Poly::new(coeffs, one);
        return (g.clone() * g.clone() == *f).then_some(g);
    }
    let d = deg / 2;
    let two_inv = one.int_like(2).try_inv().ok()?;
    let mut g = vec![one.zero_like(); d + 1];
    g[d] = one.clone();
    for k in 1..=d {
        // Coefficient of t^(2d-k) in g^2 is 2 g_d g_{d-k} plus terms already known.
        let mut known = one.zero_like();
        for i in (d - k + 1)..=d {
            let j = 2 * d - k - i;
            if j > d - k && j <= d {
                known = &known + &(&g[i] * &g[j]);
            }
        }
        g[d - k] = &(&f.coeff(2 * d - k) - &known) * &two_inv;
    }
    let g = Poly::new(g, one);
    (g.clone() * g.clone() == *f).then_some(g)
}

/// Quadratic residue test in `F_p` by Euler's criterion.
pub fn is_square(x: &FieldScalar) -> Result<bool> {
    let p = match &**x.domain() {
        FieldDescriptor::Prime(p) => p,
        other => return Err(Error::DomainMismatch(format!("is_square needs a prime field, got {other}"))),
    };
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if *p == BigInt::from(2) {
        return Ok(true);
    }
    let e = (p - BigInt::one()) / BigInt::from(2);
    Ok(x.pow_big(&e).residue() == Some(&BigInt::one()))
}

/// A square root in `F_p` (Tonelli-Shanks), or `None` for non-residues.
pub fn sqrt_fp(x: &FieldScalar) -> Result<Option<FieldScalar>> {
    let p = match &**x.domain() {
        FieldDescriptor::Prime(p) => p.clone(),
        other => return Err(Error::DomainMismatch(format!("sqrt_fp needs a prime field, got {other}"))),
    };
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    if !is_square(x)? {
        return Ok(None);
    }
    if p == BigInt::from(2) {
        return Ok(Some(x.clone()));
    }
    let domain = x.domain().clone();
    let one = BigInt::one();
    let mut q = &p - &one;
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = FieldScalar::from_int(&domain, 2);
    while is_square(&z)? {
        z = &z + &FieldScalar::one(&domain);
    }
    let mut m = s;
    let mut c = z.pow_big(&q);
    let mut t = x.pow_big(&q);
    let mut r = x.pow_big(&((&q + &one) / BigInt::from(2)));
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = &t2 * &t2;
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = &b * &b;
        }
        m = i;
        c = &b * &b;
        t = &t * &c;
        r = &r * &b;
    }
    Ok(Some(r))
}

/// Conjugate, norm and trace of an étale element `x0 + x1 w`:
/// `conj = x0 - x1 w`, `norm = x0^2 - a x1^2`, `trace = 2 x0`.
pub fn etale_conj_norm(x: &FieldScalar) -> Result<(FieldScalar, FieldScalar, FieldScalar)> {
    let (x0, x1) = x
        .components()
        .ok_or_else(|| Error::DomainMismatch(format!("{} is not a quadratic étale algebra", x.domain())))?;
    let a = x.domain().etale_param().expect("étale domain");
    let conj = FieldScalar::etale(x.domain(), x0.clone(), -x1)?;
    let norm = &(x0 * x0) - &(a * &(x1 * x1));
    let trace = x0 + x0;
    Ok((conj, norm, trace))
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::RatFunc(nd) => {
                let (n, d) = (&nd.0, &nd.1);
                write!(f, "({})", n.format_with("t"))?;
                if d.degree() != Some(0) {
                    write!(f, "/({})", d.format_with("t"))?;
                }
                Ok(())
            }
            Repr::Pair(pair) => {
                let x1 = pair.1.to_string();
                if x1.starts_with('-') {
                    write!(f, "{}{}w", pair.0, x1)
                } else {
                    write!(f, "{}+{}w", pair.0, x1)
                }
            }
        }
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            /// Panics when the operands live in different domains; use the
            /// `try_` methods for a fallible version.
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        self.try_neg()
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        self.try_neg()
    }
}

impl Ring for FieldScalar {
    fn zero_like(&self) -> Self {
        FieldScalar::zero(&self.domain)
    }
    fn one_like(&self) -> Self {
        FieldScalar::one(&self.domain)
    }
    fn is_zero(&self) -> bool {
        FieldScalar::is_zero(self)
    }
    fn int_like(&self, n: i64) -> Self {
        FieldScalar::from_int(&self.domain, n)
    }
}

impl Field for FieldScalar {
    fn try_inv(&self) -> Result<Self> {
        FieldScalar::try_inv(self)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self> {
        FieldScalar::try_div(self, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> Domain {
        FieldDescriptor::prime(p).unwrap()
    }

    #[test]
    fn prime_arithmetic() {
        let f5 = fp(5);
        let three = FieldScalar::from_int(&f5, 3);
        let four = FieldScalar::from_int(&f5, 4);
        assert_eq!((&three + &four).residue(), Some(&BigInt::from(2)));
        assert_eq!(three.try_inv().unwrap().residue(), Some(&BigInt::from(2)));
        assert_eq!(FieldScalar::from_int(&f5, -1).residue(), Some(&BigInt::from(4)));
        assert_eq!(FieldScalar::zero(&f5).try_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(FieldDescriptor::prime(6), Err(Error::NotPrime(_))));
        let q = FieldDescriptor::rationals();
        assert!(FieldDescriptor::etale(&q, FieldScalar::zero(&q)).is_err());
        let k = FieldDescriptor::etale(&q, FieldScalar::from_int(&q, 2)).unwrap();
        assert!(FieldDescriptor::etale(&k, FieldScalar::one(&k)).is_err());
    }

    #[test]
    fn domain_mismatch_is_reported() {
        let a = FieldScalar::one(&fp(5));
        let b = FieldScalar::one(&fp(7));
        assert!(matches!(a.try_add(&b), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn squares() {
        let f5 = fp(5);
        assert!(!is_square(&FieldScalar::from_int(&f5, 3)).unwrap());
        assert!(is_square(&FieldScalar::from_int(&f5, 4)).unwrap());
        assert_eq!(is_square(&FieldScalar::zero(&f5)), Err(Error::ZeroInput));
        let f7 = fp(7);
        let count = (1..7).filter(|&i| is_square(&FieldScalar::from_int(&f7, i)).unwrap()).count();
        assert_eq!(count, 3);
        assert!(matches!(is_square(&FieldScalar::one(&FieldDescriptor::rationals())), Err(Error::DomainMismatch(_))));
        for p in [3u64, 7, 13, 41] {
            let d = fp(p);
            for i in 1..p {
                let x = FieldScalar::from_int(&d, i);
                match sqrt_fp(&x).unwrap() {
                    Some(r) => assert_eq!(&r * &r, x),
                    None => assert!(!is_square(&x).unwrap()),
                }
            }
        }
    }

    #[test]
    fn split_etale_has_zero_divisors() {
        let q = FieldDescriptor::rationals();
        let k = FieldDescriptor::etale(&q, FieldScalar::one(&q)).unwrap();
        let x = FieldScalar::parse("1+1w", &k).unwrap();
        assert!(matches!(x.try_inv(), Err(Error::NonInvertible(_))));
        assert!(k.is_split().unwrap());
    }

    #[test]
    fn conj_norm_trace() {
        let q = FieldDescriptor::rationals();
        let k = FieldDescriptor::etale(&q, FieldScalar::from_int(&q, 2)).unwrap();
        let x = FieldScalar::parse("3+2w", &k).unwrap();
        let (conj, norm, trace) = etale_conj_norm(&x).unwrap();
        assert_eq!(conj.to_string(), "3-2w");
        assert_eq!(norm, FieldScalar::one(&q));
        assert_eq!(trace, FieldScalar::from_int(&q, 6));
        assert_eq!(&x * &conj, FieldScalar::one(&k));
    }

    #[test]
    fn rational_functions_reduce() {
        let k = FieldDescriptor::rational_functions(2).unwrap();
        let x = FieldScalar::parse("(t^2+1)/(t+1)", &k).unwrap();
        assert_eq!(x.to_string(), "(t+1)");
        let y = FieldScalar::parse("(t^2+1)/(t)", &k).unwrap();
        assert_eq!(y.to_string(), "(t^2+1)/(t)");
        let t = FieldScalar::generator(&k).unwrap();
        assert_eq!(&y * &t, FieldScalar::parse("t^2+1", &k).unwrap());
        assert!(!t.is_square_in_domain().unwrap());
        assert!(FieldScalar::parse("t^2", &k).unwrap().is_square_in_domain().unwrap());
        let k5 = FieldDescriptor::rational_functions(5).unwrap();
        let sq = FieldScalar::parse("(t^2+2t+1)/(4t^2)", &k5).unwrap();
        assert!(sq.is_square_in_domain().unwrap());
        assert!(!FieldScalar::parse("t^2+2", &k5).unwrap().is_square_in_domain().unwrap());
    }

    #[test]
    fn text_round_trip() {
        let q = FieldDescriptor::rationals();
        let f7 = fp(7);
        let cases: Vec<(Domain, &str)> = vec![
            (q.clone(), "-3"),
            (q.clone(), "2/7"),
            (f7.clone(), "5"),
            (FieldDescriptor::etale(&f7, FieldScalar::from_int(&f7, 3)).unwrap(), "3+2w"),
            (FieldDescriptor::etale(&q, FieldScalar::from_int(&q, 2)).unwrap(), "-1/2-3/4w"),
            (FieldDescriptor::rational_functions(3).unwrap(), "(t^2+1)/(t)"),
            (FieldDescriptor::parse("etale:ratfn:2:(t)").unwrap(), "(t)+(1)w"),
        ];
        for (d, text) in cases {
            let x = FieldScalar::parse(text, &d).unwrap();
            assert_eq!(x.to_string(), text);
            assert_eq!(FieldScalar::parse(&x.to_string(), &d).unwrap(), x);
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for text in ["q", "fp:13", "ratfn:2", "etale:fp:7:3", "etale:q:-1", "etale:ratfn:2:(t)"] {
            let d = FieldDescriptor::parse(text).unwrap();
            assert_eq!(d.to_string(), text);
        }
        assert!(FieldDescriptor::parse("fp:9").is_err());
        assert!(FieldDescriptor::parse("zz").is_err());
    }
}
