//! Quaternion algebras `(a,b/k)` with basis `1, i, j, ij`, where `i² = a`,
//! `j² = b` and `ij = -ji`.
//!
//! Besides the multiplication table, the algebra can be built as a graded
//! tensor product, by doubling, as a Clifford algebra, as a cyclic algebra
//! and from a cross product on the pure part; all give the same structure
//! constants. Hamilton's quaternions over floats provide the maps to `SO_3`
//! and `SU_2`.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{Float, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{sqrt_fp, Domain, FieldDescriptor, FieldScalar};
use crate::matrix::Matrix;
use crate::scalar::{rational_sqrt, Field};

#[derive(Clone, Debug, PartialEq)]
pub struct QuaternionAlgebra<F> {
    a: F,
    b: F,
}

impl<F: Field> QuaternionAlgebra<F> {
    pub fn new(a: F, b: F) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidParameters("a and b must be nonzero".into()));
        }
        let one = a.one_like();
        if (one.clone() + one).is_zero() {
            return Err(Error::InvalidParameters("characteristic 2 is not supported".into()));
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn element(&self, coords: [F; 4]) -> Quaternion<F> {
        Quaternion { alg: self.clone(), c: coords }
    }

    pub fn scalar(&self, x: F) -> Quaternion<F> {
        let z = x.zero_like();
        self.element([x, z.clone(), z.clone(), z])
    }

    /// Basis element `1, i, j, ij` for `k = 0..4`.
    pub fn basis(&self, k: usize) -> Quaternion<F> {
        let z = self.a.zero_like();
        let mut c = [z.clone(), z.clone(), z.clone(), z];
        c[k] = self.a.one_like();
        self.element(c)
    }

    /// Structure constants of the multiplication table.
    pub fn structure_constants(&self) -> StructureConstants<F> {
        StructureConstants::from_products(|r, s| (self.basis(r) * self.basis(s)).c)
    }
}

impl<F: Field> fmt::Display for QuaternionAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `x0 + x1 i + x2 j + x3 ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<F> {
    alg: QuaternionAlgebra<F>,
    c: [F; 4],
}

impl<F: Field> Quaternion<F> {
    pub fn algebra(&self) -> &QuaternionAlgebra<F> {
        &self.alg
    }

    pub fn coords(&self) -> &[F; 4] {
        &self.c
    }

    fn same_algebra(&self, rhs: &Self) -> Result<()> {
        if self.alg != rhs.alg {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.same_algebra(rhs)?;
        Ok(self.alg.element(std::array::from_fn(|k| self.c[k].clone() + rhs.c[k].clone())))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.same_algebra(rhs)?;
        Ok(self.alg.element(std::array::from_fn(|k| self.c[k].clone() - rhs.c[k].clone())))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.same_algebra(rhs)?;
        let (a, b) = (&self.alg.a, &self.alg.b);
        let [x0, x1, x2, x3] = self.c.clone();
        let [y0, y1, y2, y3] = rhs.c.clone();
        let ab = a.clone() * b.clone();
        let c0 = x0.clone() * y0.clone() + a.clone() * x1.clone() * y1.clone() + b.clone() * x2.clone() * y2.clone()
            - ab * x3.clone() * y3.clone();
        let c1 = x0.clone() * y1.clone() + x1.clone() * y0.clone() - b.clone() * x2.clone() * y3.clone()
            + b.clone() * x3.clone() * y2.clone();
        let c2 = x0.clone() * y2.clone() + x2.clone() * y0.clone() + a.clone() * x1.clone() * y3.clone()
            - a.clone() * x3.clone() * y1.clone();
        let c3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
        Ok(self.alg.element([c0, c1, c2, c3]))
    }

    pub fn scale(&self, s: &F) -> Self {
        self.alg.element(std::array::from_fn(|k| s.clone() * self.c[k].clone()))
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = self.c.clone();
        self.alg.element([x0, -x1, -x2, -x3])
    }

    /// `x0² - a x1² - b x2² + ab x3²`.
    pub fn norm(&self) -> F {
        let (a, b) = (&self.alg.a, &self.alg.b);
        let [x0, x1, x2, x3] = self.c.clone();
        x0.clone() * x0 - a.clone() * x1.clone() * x1 - b.clone() * x2.clone() * x2
            + a.clone() * b.clone() * x3.clone() * x3
    }

    pub fn trace(&self) -> F {
        self.c[0].clone() + self.c[0].clone()
    }

    pub fn try_inv(&self) -> Result<Self> {
        let n = self.norm().try_inv()?;
        Ok(self.conj().scale(&n))
    }

    pub fn is_pure(&self) -> bool {
        self.c[0].is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    /// Pure part `x1 i + x2 j + x3 ij`.
    pub fn pure_part(&self) -> Self {
        let mut c = self.c.clone();
        c[0] = c[0].zero_like();
        self.alg.element(c)
    }
}

macro_rules! quaternion_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<F: Field> std::ops::$trait for Quaternion<F> {
            type Output = Quaternion<F>;
            fn $method(self, rhs: Quaternion<F>) -> Quaternion<F> {
                self.$try(&rhs).expect("quaternions from different algebras")
            }
        }
        impl<'a, F: Field> std::ops::$trait<&'a Quaternion<F>> for &'a Quaternion<F> {
            type Output = Quaternion<F>;
            fn $method(self, rhs: &'a Quaternion<F>) -> Quaternion<F> {
                self.$try(rhs).expect("quaternions from different algebras")
            }
        }
    };
}

quaternion_op!(Add, add, try_add);
quaternion_op!(Sub, sub, try_sub);
quaternion_op!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for Quaternion<F> {
    type Output = Quaternion<F>;
    fn neg(self) -> Quaternion<F> {
        let c = self.c.clone().map(|x| -x);
        self.alg.element(c)
    }
}

impl<F: Field> fmt::Display for Quaternion<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x0, x1, x2, x3] = &self.c;
        write!(f, "{x0} + ({x1})i + ({x2})j + ({x3})ij")
    }
}

/// `N0(v, w) = -a v1 w1 - b v2 w2 + ab v3 w3`, so that the scalar part of
/// `vw` is `-N0(v, w)` for pure `v`, `w`.
pub fn pure_bilinear<F: Field>(v: &Quaternion<F>, w: &Quaternion<F>) -> Result<F> {
    v.same_algebra(w)?;
    let (a, b) = (&v.alg.a, &v.alg.b);
    Ok(-(a.clone() * v.c[1].clone() * w.c[1].clone()) - b.clone() * v.c[2].clone() * w.c[2].clone()
        + a.clone() * b.clone() * v.c[3].clone() * w.c[3].clone())
}

/// Cross product on pure quaternions: the pure part of `vw`.
pub fn cross_product<F: Field>(v: &Quaternion<F>, w: &Quaternion<F>) -> Result<Quaternion<F>> {
    v.same_algebra(w)?;
    if !v.is_pure() || !w.is_pure() {
        return Err(Error::NotPure);
    }
    let (a, b) = (&v.alg.a, &v.alg.b);
    let [_, x1, x2, x3] = v.c.clone();
    let [_, y1, y2, y3] = w.c.clone();
    let z = a.zero_like();
    Ok(v.alg.element([
        z,
        -(b.clone() * (x2.clone() * y3.clone() - x3.clone() * y2.clone())),
        a.clone() * (x1.clone() * y3 - x3 * y1.clone()),
        x1 * y2 - x2 * y1,
    ]))
}

/// Coordinates `c[r][s][t]` of `basis_r · basis_s` on basis `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<F> {
    c: Vec<F>,
}

impl<F: Field> StructureConstants<F> {
    pub fn from_products(mut product: impl FnMut(usize, usize) -> [F; 4]) -> Self {
        let mut c = Vec::with_capacity(64);
        for r in 0..4 {
            for s in 0..4 {
                c.extend(product(r, s));
            }
        }
        StructureConstants { c }
    }

    pub fn get(&self, r: usize, s: usize, t: usize) -> &F {
        &self.c[16 * r + 4 * s + t]
    }

    pub fn product(&self, r: usize, s: usize) -> &[F] {
        &self.c[16 * r + 4 * s..16 * r + 4 * s + 4]
    }

    fn multiply(&self, x: &[F; 4], y: &[F; 4]) -> [F; 4] {
        let z = x[0].zero_like();
        let mut out = [z.clone(), z.clone(), z.clone(), z];
        for (r, xr) in x.iter().enumerate() {
            for (s, ys) in y.iter().enumerate() {
                let coeff = xr.clone() * ys.clone();
                for (t, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + coeff.clone() * self.get(r, s, t).clone();
                }
            }
        }
        out
    }

    /// Checks associativity on the basis.
    pub fn is_associative(&self) -> bool {
        let one = self.c[0].one_like();
        let e = |k: usize| -> [F; 4] { std::array::from_fn(|t| if t == k { one.clone() } else { one.zero_like() }) };
        (0..4).all(|r| {
            (0..4).all(|s| {
                (0..4).all(|t| {
                    self.multiply(&self.multiply(&e(r), &e(s)), &e(t))
                        == self.multiply(&e(r), &self.multiply(&e(s), &e(t)))
                })
            })
        })
    }

    /// Checks that basis element `0` is a two-sided identity.
    pub fn has_identity(&self) -> bool {
        (0..4).all(|s| {
            (0..4).all(|t| {
                let expected = if s == t { self.c[0].one_like() } else { self.c[0].zero_like() };
                *self.get(0, s, t) == expected && *self.get(s, 0, t) == expected
            })
        })
    }
}

/// The ways of building `(a,b/k)` from smaller pieces.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction<F> {
    /// The multiplication table.
    Canonical,
    /// `k[α] ⊗ k[β]` with `α`, `β` odd and the Koszul sign rule.
    GradedTensor,
    /// Pairs over `K = k[α]` with `(x1,y1)(x2,y2) = (x1x2 + b y1 ȳ2, x1y2 + x̄2 y1)`.
    Doubling,
    /// Clifford algebra of the plane with the diagonal form `<a, b>`.
    Clifford,
    /// `K ⊕ Ke` with `e β = σ(β) e` and `e² = b`.
    Cyclic,
    /// `k ⊕ Q0` with product `(x0,v)(y0,w) = (x0y0 - N0(v,w), x0w + y0v + v×w)`,
    /// where `N0(u, v×w) = c det(u,v,w)` and `c² = (ab)²` is required.
    CrossProduct { c: F },
}

impl<F> Construction<F> {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::Canonical => "canonical",
            Construction::GradedTensor => "graded_tensor",
            Construction::Doubling => "doubling",
            Construction::Clifford => "clifford",
            Construction::Cyclic => "cyclic",
            Construction::CrossProduct { .. } => "cross_product",
        }
    }
}

/// `x + y α` in `k[α]`, `α² = p`.
#[derive(Clone, Debug, PartialEq)]
struct Quad<F> {
    x: F,
    y: F,
}

impl<F: Field> Quad<F> {
    fn mul(&self, rhs: &Self, p: &F) -> Self {
        Quad {
            x: self.x.clone() * rhs.x.clone() + p.clone() * self.y.clone() * rhs.y.clone(),
            y: self.x.clone() * rhs.y.clone() + self.y.clone() * rhs.x.clone(),
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        Quad { x: self.x.clone() + rhs.x.clone(), y: self.y.clone() + rhs.y.clone() }
    }

    fn scale(&self, s: &F) -> Self {
        Quad { x: s.clone() * self.x.clone(), y: s.clone() * self.y.clone() }
    }

    fn conj(&self) -> Self {
        Quad { x: self.x.clone(), y: -self.y.clone() }
    }
}

/// Sign and weight of the product of the monomials `u^S`, `u^T` (bitmasks over
/// two generators) when generators anticommute and square to `squares[k]`.
fn monomial_product<F: Field>(
    s: usize,
    t: usize,
    squares: &[F; 2],
    odd_sign: impl Fn(usize, usize) -> usize,
) -> (F, usize) {
    let mut coeff = squares[0].one_like();
    if odd_sign(s, t) % 2 == 1 {
        coeff = -coeff;
    }
    for (k, sq) in squares.iter().enumerate() {
        if s & t & (1 << k) != 0 {
            coeff = coeff * sq.clone();
        }
    }
    (coeff, s ^ t)
}

/// Structure constants of `(a,b/k)` on the basis `1, i, j, ij` as produced by
/// the given construction.
pub fn construct<F: Field>(method: &Construction<F>, a: &F, b: &F) -> Result<StructureConstants<F>> {
    let alg = QuaternionAlgebra::new(a.clone(), b.clone())?;
    let zero = a.zero_like();
    let one = a.one_like();
    let e = |k: usize| -> [F; 4] { std::array::from_fn(|t| if t == k { one.clone() } else { zero.clone() }) };
    let constants = match method {
        Construction::Canonical => alg.structure_constants(),
        Construction::GradedTensor => {
            // Basis α^p ⊗ β^q at index p + 2q; i = α⊗1, j = 1⊗β, ij = α⊗β.
            let squares = [a.clone(), b.clone()];
            StructureConstants::from_products(|r, s| {
                let q = r >> 1;
                let r_alpha = s & 1;
                let (coeff, t) = monomial_product(r, s, &squares, |_, _| q * r_alpha);
                let mut out = e(t);
                out[t] = coeff;
                out
            })
        }
        Construction::Clifford => {
            // Monomials in the orthogonal basis u1, u2 with u_k² = q(u_k).
            let squares = [a.clone(), b.clone()];
            let inversions = |s: usize, t: usize| {
                let mut count = 0;
                for hi in 0..2 {
                    for lo in 0..hi {
                        if s & (1 << hi) != 0 && t & (1 << lo) != 0 {
                            count += 1;
                        }
                    }
                }
                count
            };
            StructureConstants::from_products(|r, s| {
                let (coeff, t) = monomial_product(r, s, &squares, inversions);
                let mut out = e(t);
                out[t] = coeff;
                out
            })
        }
        Construction::Doubling => {
            let to_pair = |c: [F; 4]| {
                let [x0, x1, x2, x3] = c;
                (Quad { x: x0, y: x1 }, Quad { x: x2, y: x3 })
            };
            StructureConstants::from_products(|r, s| {
                let (x1, y1) = to_pair(e(r));
                let (x2, y2) = to_pair(e(s));
                let first = x1.mul(&x2, a).add(&y1.mul(&y2.conj(), a).scale(b));
                let second = x1.mul(&y2, a).add(&x2.conj().mul(&y1, a));
                [first.x, first.y, second.x, second.y]
            })
        }
        Construction::Cyclic => {
            let sigma = |z: &Quad<F>| z.conj();
            StructureConstants::from_products(|r, s| {
                let [p0, p1, p2, p3] = e(r);
                let [q0, q1, q2, q3] = e(s);
                let (x1, y1) = (Quad { x: p0, y: p1 }, Quad { x: p2, y: p3 });
                let (x2, y2) = (Quad { x: q0, y: q1 }, Quad { x: q2, y: q3 });
                let first = x1.mul(&x2, a).add(&y1.mul(&sigma(&y2), a).scale(b));
                let second = x1.mul(&y2, a).add(&y1.mul(&sigma(&x2), a));
                [first.x, first.y, second.x, second.y]
            })
        }
        Construction::CrossProduct { c } => {
            let ab = a.clone() * b.clone();
            if c.clone() * c.clone() != ab.clone() * ab.clone() {
                return Err(Error::InvalidParameters("the orientation c must satisfy c² = (ab)²".into()));
            }
            // Gram matrix of N0 on (i, j, ij) is diag(-a, -b, ab).
            let gram = [-a.clone(), -b.clone(), ab.clone()];
            let cross = |v: &[F; 3], w: &[F; 3]| -> Result<[F; 3]> {
                let cof = [
                    v[1].clone() * w[2].clone() - v[2].clone() * w[1].clone(),
                    v[2].clone() * w[0].clone() - v[0].clone() * w[2].clone(),
                    v[0].clone() * w[1].clone() - v[1].clone() * w[0].clone(),
                ];
                let mut out = [zero.clone(), zero.clone(), zero.clone()];
                for k in 0..3 {
                    out[k] = (c.clone() * cof[k].clone()).try_div(&gram[k])?;
                }
                Ok(out)
            };
            let n0 = |v: &[F; 3], w: &[F; 3]| {
                (0..3).fold(zero.clone(), |acc, k| acc + gram[k].clone() * v[k].clone() * w[k].clone())
            };
            // With c = -ab the product is the opposite algebra, identified
            // with the canonical one through the basis (1, -i, -j, -ij).
            let eps = c.try_div(&ab)?;
            let basis = |k: usize| -> [F; 4] {
                let mut v = e(k);
                if k > 0 {
                    v[k] = eps.clone();
                }
                v
            };
            let mut failure = None;
            let constants = StructureConstants::from_products(|r, s| {
                let (x, y) = (basis(r), basis(s));
                let v = [x[1].clone(), x[2].clone(), x[3].clone()];
                let w = [y[1].clone(), y[2].clone(), y[3].clone()];
                let vw = match cross(&v, &w) {
                    Ok(vw) => vw,
                    Err(err) => {
                        failure = Some(err);
                        return e(0);
                    }
                };
                let scalar = x[0].clone() * y[0].clone() - n0(&v, &w);
                let pure: [F; 3] =
                    std::array::from_fn(|k| x[0].clone() * w[k].clone() + y[0].clone() * v[k].clone() + vw[k].clone());
                // Back to the reported basis, whose pure vectors are eps times the standard ones.
                [scalar, pure[0].clone() * eps.clone(), pure[1].clone() * eps.clone(), pure[2].clone() * eps.clone()]
            });
            if let Some(err) = failure {
                return Err(err);
            }
            constants
        }
    };
    Ok(constants)
}

/// Outcome of the conic test for `a x² + b y² = z²`.
#[derive(Clone, Debug, PartialEq)]
pub enum SplitResult<F> {
    /// A nonzero point `(x, y, z)` on the conic.
    Split {
        x: F,
        y: F,
        z: F,
    },
    Division,
    /// No point up to the search bound (rationals only).
    Unknown,
}

/// Default height bound for the rational conic search.
pub const DEFAULT_SPLIT_SEARCH_BOUND: i64 = 100;

fn square_root(x: &FieldScalar) -> Result<Option<FieldScalar>> {
    match &**x.domain() {
        FieldDescriptor::Prime(p) => Ok(sqrt_fp(x)?.map(|r| {
            let v = r.residue().expect("prime field").clone();
            let other = p - &v;
            FieldScalar::from_int(x.domain(), if other < v { other } else { v })
        })),
        FieldDescriptor::Rationals => Ok(rational_sqrt(x.as_rational().expect("rational")).map(FieldScalar::rational)),
        other => Err(Error::UnsupportedBase(other.to_string())),
    }
}

/// Decides splitting over `F_p` by exhausting the conic, and searches
/// integer points of height at most `bound` over `Q`.
pub fn is_split(alg: &QuaternionAlgebra<FieldScalar>, bound: Option<i64>) -> Result<SplitResult<FieldScalar>> {
    let domain = alg.a.domain().clone();
    let (xs, ys): (Vec<FieldScalar>, Vec<FieldScalar>) = match &*domain {
        FieldDescriptor::Prime(_) => {
            let all = FieldScalar::elements(&domain)?;
            (all.clone(), all)
        }
        FieldDescriptor::Rationals => {
            let h = bound.unwrap_or(DEFAULT_SPLIT_SEARCH_BOUND);
            let range: Vec<FieldScalar> = (0..=h).map(|n| FieldScalar::from_int(&domain, n)).collect();
            (range.clone(), range)
        }
        other => return Err(Error::UnsupportedBase(other.to_string())),
    };
    let zero = FieldScalar::zero(&domain);
    let one = FieldScalar::one(&domain);
    if let Some(z) = square_root(&alg.a)? {
        return Ok(SplitResult::Split { x: one, y: zero, z });
    }
    if let Some(z) = square_root(&alg.b)? {
        return Ok(SplitResult::Split { x: zero, y: one, z });
    }
    for x in &xs {
        for y in &ys {
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let v = alg.a.clone() * x.clone() * x.clone() + alg.b.clone() * y.clone() * y.clone();
            if let Some(z) = square_root(&v)? {
                return Ok(SplitResult::Split { x: x.clone(), y: y.clone(), z });
            }
        }
    }
    Ok(if matches!(&*domain, FieldDescriptor::Prime(_)) { SplitResult::Division } else { SplitResult::Unknown })
}

/// The nonzero element `z + x i + y j` of norm zero attached to a conic point.
pub fn zero_divisor<F: Field>(alg: &QuaternionAlgebra<F>, x: &F, y: &F, z: &F) -> Quaternion<F> {
    alg.element([z.clone(), x.clone(), y.clone(), x.zero_like()])
}

/// The quadratic étale algebra `K = k[α]`, `α² = a`, used by [`embed_m2k`].
pub fn embedding_field(alg: &QuaternionAlgebra<FieldScalar>) -> Result<Domain> {
    FieldDescriptor::etale(alg.a.domain(), alg.a.clone())
}

/// `z1 + z2 j ↦ [[z1, b z2], [z̄2, z̄1]]` with `z1 = x0 + x1 α`, `z2 = x2 + x3 α`.
pub fn embed_m2k(x: &Quaternion<FieldScalar>) -> Result<Matrix<FieldScalar>> {
    let k = embedding_field(&x.alg)?;
    let [x0, x1, x2, x3] = x.c.clone();
    let z1 = FieldScalar::etale(&k, x0.clone(), x1.clone())?;
    let z2 = FieldScalar::etale(&k, x2.clone(), x3.clone())?;
    let z1c = FieldScalar::etale(&k, x0, -x1)?;
    let z2c = FieldScalar::etale(&k, x2, -x3)?;
    let b = FieldScalar::etale(&k, x.alg.b.clone(), FieldScalar::zero(x.alg.b.domain()))?;
    Matrix::from_rows(vec![vec![z1, b * z2], vec![z2c, z1c]], FieldScalar::one(&k))
}

/// Quadratic residues `x² mod p ↦ x` for `0 ≤ x ≤ (p-1)/2`.
fn square_roots_mod(p: u64) -> std::collections::HashMap<u64, u64> {
    (0..=(p - 1) / 2).map(|x| (((x as u128 * x as u128) % p as u128) as u64, x)).collect()
}

/// `(l, m)` with `p | 1 + l² + m²` and `0 ≤ l, m ≤ (p-1)/2`: the smallest `m`
/// for which `-1 - m²` is a square `l²`.
pub fn find_lm(p: u64) -> Result<(u64, u64)> {
    if p < 3 || !crate::field::is_prime(&BigInt::from(p)) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    let roots = square_roots_mod(p);
    for m in 0..=(p - 1) / 2 {
        let target = (p - 1 - ((m as u128 * m as u128) % p as u128) as u64) % p;
        if let Some(&l) = roots.get(&target) {
            return Ok((l, m));
        }
    }
    unreachable!("the sets {{x²}} and {{-1-y²}} always meet")
}

type Four = [i128; 4];

/// `(a1²+a2²+a3²+a4²)(b1²+b2²+b3²+b4²)` as a sum of four squares.
pub fn four_square_identity(x: &Four, y: &Four) -> Four {
    let [a1, a2, a3, a4] = *x;
    let [b1, b2, b3, b4] = *y;
    [
        a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
        a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
    ]
}

fn centered(x: i128, m: i128) -> i128 {
    let r = x.rem_euclid(m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

/// Four squares summing to the prime `p`, by descent from `1 + l² + m² = kp`.
fn prime_four_square(p: u64) -> Four {
    if p == 2 {
        return [1, 1, 0, 0];
    }
    let (l, m0) = find_lm(p).expect("odd prime");
    let p = p as i128;
    let mut t: Four = [l as i128, m0 as i128, 1, 0];
    let mut m = t.iter().map(|x| x * x).sum::<i128>() / p;
    while m > 1 {
        if m % 2 == 0 {
            let mut sorted = t;
            sorted.sort_by_key(|x| x.rem_euclid(2));
            let [a, b, c, d] = sorted;
            t = [(a + b) / 2, (a - b) / 2, (c + d) / 2, (c - d) / 2];
            m /= 2;
        } else {
            let [a, b, c, d] = t;
            let [w, x, y, z] = t.map(|v| centered(v, m));
            let r = (w * w + x * x + y * y + z * z) / m;
            let next = [
                a * w + b * x + c * y + d * z,
                -a * x + b * w - c * z + d * y,
                -a * y + b * z + c * w - d * x,
                -a * z - b * y + c * x + d * w,
            ];
            debug_assert!(next.iter().all(|v| v % m == 0));
            t = next.map(|v| v / m);
            m = r;
        }
    }
    t
}

/// `(a, b, c, d)` with `a² + b² + c² + d² = n`, sorted in decreasing order.
pub fn four_square(n: u64) -> [u64; 4] {
    if n == 0 {
        return [0; 4];
    }
    let mut acc: Four = [1, 0, 0, 0];
    let mut rest = n;
    let mut d = 2u64;
    while d * d <= rest {
        while rest.is_multiple_of(d) {
            acc = four_square_identity(&acc, &prime_four_square(d));
            rest /= d;
        }
        d += 1;
    }
    if rest > 1 {
        acc = four_square_identity(&acc, &prime_four_square(rest));
    }
    let mut out = acc.map(|x| x.unsigned_abs().to_u64().expect("bounded by sqrt(n)"));
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

/// Hamilton's quaternions `(-1,-1)` over a float type.
pub fn hamilton<T: Field + Float>() -> QuaternionAlgebra<T> {
    QuaternionAlgebra::new(-T::one(), -T::one()).expect("nonzero parameters")
}

/// Tolerance for the unit condition `|N(a) - 1|`.
pub const UNIT_TOLERANCE: f64 = 1e-9;

fn check_unit<T: Field + Float>(q: &Quaternion<T>) -> Result<()> {
    if q.alg != hamilton() {
        return Err(Error::AlgebraMismatch);
    }
    let n = q.norm();
    if (n - T::one()).abs() > T::from(UNIT_TOLERANCE).expect("float") {
        return Err(Error::NotUnit(format!("norm {n}")));
    }
    Ok(())
}

/// Matrix of `v ↦ a v a⁻¹` on the pure quaternions in the basis `i, j, k`.
pub fn unit_quat_rotation<T: Field + Float>(a: &Quaternion<T>) -> Result<[[T; 3]; 3]> {
    check_unit(a)?;
    let inv = a.conj();
    let mut m = [[T::zero(); 3]; 3];
    for col in 0..3 {
        let image = &(a * &a.alg.basis(col + 1)) * &inv;
        for (row, line) in m.iter_mut().enumerate() {
            line[col] = image.c[row + 1];
        }
    }
    Ok(m)
}

/// `w + z j ↦ [[w, -z], [z̄, w̄]]` with `w = x0 + x1 i`, `z = x2 + x3 i`.
pub fn unit_quat_to_su2<T: Field + Float>(a: &Quaternion<T>) -> Result<[[Complex<T>; 2]; 2]> {
    check_unit(a)?;
    let [x0, x1, x2, x3] = a.c;
    let w = Complex::new(x0, x1);
    let z = Complex::new(x2, x3);
    Ok([[w, -z], [z.conj(), w.conj()]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(p: u64, a: i64, b: i64) -> QuaternionAlgebra<FieldScalar> {
        let d = FieldDescriptor::prime(p).unwrap();
        QuaternionAlgebra::new(FieldScalar::from_int(&d, a), FieldScalar::from_int(&d, b)).unwrap()
    }

    #[test]
    fn hamilton_relations() {
        let h = hamilton::<f64>();
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -k.clone());
        assert_eq!(&k * &k, -h.basis(0));
    }

    #[test]
    fn find_lm_examples() {
        assert_eq!(find_lm(3).unwrap(), (1, 1));
        assert_eq!(find_lm(7).unwrap(), (3, 2));
        assert_eq!(find_lm(5).unwrap(), (2, 0));
        assert!(matches!(find_lm(2), Err(Error::NotOddPrime(_))));
        assert!(matches!(find_lm(9), Err(Error::NotOddPrime(_))));
    }

    #[test]
    fn four_square_examples() {
        assert_eq!(four_square(0), [0, 0, 0, 0]);
        assert_eq!(four_square(2), [1, 1, 0, 0]);
        assert_eq!(four_square(7), [2, 1, 1, 1]);
    }

    #[test]
    fn split_witness_for_a_one() {
        let q = alg(7, 1, 3);
        let zero = FieldScalar::zero(q.a().domain());
        let one = FieldScalar::one(q.a().domain());
        assert_eq!(is_split(&q, None).unwrap(), SplitResult::Split { x: one.clone(), y: zero, z: one });
    }

    #[test]
    fn embedding_of_j() {
        let q = alg(7, 3, 5);
        let m = embed_m2k(&q.basis(2)).unwrap();
        let k = m.domain().clone();
        assert_eq!(m, Matrix::from_ints(&[&[0, 5], &[1, 0]], &k).unwrap());
    }
}
