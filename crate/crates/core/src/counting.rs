//! Closed-form counts over `F_q` and the brute-force enumerations that check
//! them: group orders, Grassmannians, Sylow subgroups, conjugacy classes and
//! centralizers of tori.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldDescriptor, FieldScalar};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Default cap on the number of group elements an enumeration may visit.
pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;

/// Enumeration cap: `CHEVALLEY_MAX_ENUM` if set to a positive integer, else
/// [`DEFAULT_MAX_ENUM`].
pub fn enumeration_cap() -> u64 {
    std::env::var("CHEVALLEY_MAX_ENUM")
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_MAX_ENUM)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    GL,
    SL,
}

/// `GL_n(F_q)` or `SL_n(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub q: u64,
}

impl GroupSpec {
    pub fn gl(n: usize, q: u64) -> Self {
        GroupSpec { family: Family::GL, n, q }
    }

    pub fn sl(n: usize, q: u64) -> Self {
        GroupSpec { family: Family::SL, n, q }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.q < 2 {
            return Err(Error::InvalidSpec(format!("need n >= 1 and q >= 2, got n = {}, q = {}", self.n, self.q)));
        }
        Ok(())
    }
}

/// `|GL_n(F_q)| = prod (q^n - q^i)`, and `|SL_n| = |GL_n| / (q - 1)`.
///
/// `q` is treated as an opaque integer (any prime power is accepted).
pub fn order_formula(spec: &GroupSpec) -> Result<BigUint> {
    spec.validate()?;
    let q = BigUint::from(spec.q);
    let qn = num_traits::pow(q.clone(), spec.n);
    let mut order = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..spec.n {
        order *= &qn - &qi;
        qi *= &q;
    }
    if spec.family == Family::SL {
        order /= BigUint::from(spec.q - 1);
    }
    Ok(order)
}

/// Order of the center: `q - 1` for `GL_n`, `gcd(n, q - 1)` for `SL_n`.
pub fn center_order(spec: &GroupSpec) -> Result<u64> {
    spec.validate()?;
    Ok(match spec.family {
        Family::GL => spec.q - 1,
        Family::SL => (spec.n as u64).gcd(&(spec.q - 1)),
    })
}

/// Order of the quotient by the center (`PGL_n` or `PSL_n`).
pub fn projective_order(spec: &GroupSpec) -> Result<BigUint> {
    Ok(order_formula(spec)? / BigUint::from(center_order(spec)?))
}

/// Number of `r`-dimensional subspaces of `F_q^n` (Gaussian binomial).
pub fn grassmann_count(n: usize, r: usize, q: u64) -> Result<BigUint> {
    if r > n || q < 2 {
        return Err(Error::InvalidSpec(format!("need 0 <= r <= n and q >= 2, got n = {n}, r = {r}, q = {q}")));
    }
    let q = BigUint::from(q);
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..r {
        num *= num_traits::pow(q.clone(), n) - num_traits::pow(q.clone(), i);
        den *= num_traits::pow(q.clone(), r) - num_traits::pow(q.clone(), i);
    }
    Ok(num / den)
}

/// The Gaussian binomial as a polynomial in `q`.
pub fn grassmann_polynomial(n: usize, r: usize) -> Result<Poly<BigRational>> {
    if r > n {
        return Err(Error::InvalidSpec(format!("r = {r} exceeds n = {n}")));
    }
    let one = BigRational::one();
    let q_pow_minus_one = |k: usize| Poly::monomial(one.clone(), k) - Poly::constant(one.clone());
    let mut num = Poly::constant(one.clone());
    let mut den = Poly::constant(one.clone());
    for i in 0..r {
        num = num * q_pow_minus_one(n - i);
        den = den * q_pow_minus_one(i + 1);
    }
    let (quot, rem) = num.divrem(&den)?;
    debug_assert!(rem.is_zero());
    Ok(quot)
}

/// Number of Sylow `p`-subgroups of `GL_n(F_p)`: `prod_{k=1}^{n-1} (1 + p + ... + p^k)`.
pub fn sylow_p_count(n: usize, p: u64) -> Result<BigUint> {
    if !is_prime(&BigInt::from(p)) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let p = BigUint::from(p);
    let mut out = BigUint::one();
    for k in 1..n {
        let mut s = BigUint::zero();
        let mut pk = BigUint::one();
        for _ in 0..=k {
            s += &pk;
            pk *= &p;
        }
        out *= s;
    }
    Ok(out)
}

/// Largest matrix size supported by the enumeration routines.
const MAX_N: usize = 6;

/// Compact matrix over a small prime field used by the enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct SmallMat {
    n: u8,
    e: [u16; MAX_N * MAX_N],
}

impl SmallMat {
    fn zero(n: usize) -> Self {
        SmallMat { n: n as u8, e: [0; MAX_N * MAX_N] }
    }

    fn identity(n: usize) -> Self {
        let mut m = SmallMat::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    fn n(&self) -> usize {
        self.n as usize
    }

    fn get(&self, i: usize, j: usize) -> u64 {
        self.e[i * MAX_N + j] as u64
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.e[i * MAX_N + j] = v as u16;
    }

    fn mul(&self, rhs: &SmallMat, p: u64) -> SmallMat {
        let n = self.n();
        let mut out = SmallMat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let s: u64 = (0..n).map(|k| self.get(i, k) * rhs.get(k, j)).sum();
                out.set(i, j, s % p);
            }
        }
        out
    }

    /// Determinant and inverse by Gauss-Jordan elimination mod `p`.
    fn det_inv(&self, p: u64) -> (u64, Option<SmallMat>) {
        let n = self.n();
        let mut a = *self;
        let mut inv = SmallMat::identity(n);
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a.get(r, c) != 0) else {
                return (0, None);
            };
            if r != c {
                for j in 0..n {
                    a.e.swap(r * MAX_N + j, c * MAX_N + j);
                    inv.e.swap(r * MAX_N + j, c * MAX_N + j);
                }
                det = (p - det) % p;
            }
            let piv = a.get(c, c);
            det = det * piv % p;
            let pinv = mod_pow(piv, p - 2, p);
            for j in 0..n {
                a.set(c, j, a.get(c, j) * pinv % p);
                inv.set(c, j, inv.get(c, j) * pinv % p);
            }
            for i in 0..n {
                let f = a.get(i, c);
                if i != c && f != 0 {
                    for j in 0..n {
                        a.set(i, j, (a.get(i, j) + (p - f) * a.get(c, j)) % p);
                        inv.set(i, j, (inv.get(i, j) + (p - f) * inv.get(c, j)) % p);
                    }
                }
            }
        }
        (det, Some(inv))
    }

    fn to_exact(self, domain: &crate::field::Domain) -> Matrix<FieldScalar> {
        let n = self.n();
        let rows = (0..n).map(|i| (0..n).map(|j| FieldScalar::from_int(domain, self.get(i, j))).collect()).collect();
        Matrix::from_rows(rows, FieldScalar::one(domain)).expect("square")
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn require_prime(q: u64) -> Result<()> {
    if is_prime(&BigInt::from(q)) {
        Ok(())
    } else {
        Err(Error::NotPrime(format!("{q} (enumeration needs a prime field)")))
    }
}

fn check_cap(spec: &GroupSpec, cap: u64) -> Result<()> {
    if spec.n > MAX_N {
        return Err(Error::TooLarge(format!("{}x{} matrices", spec.n, spec.n), cap));
    }
    let order = order_formula(spec)?;
    if order > BigUint::from(cap) {
        return Err(Error::TooLarge(format!("{order}"), cap));
    }
    Ok(())
}

/// All vectors of `F_q^n` in lexicographic order.
fn all_vectors(n: usize, q: u64) -> Vec<Vec<u64>> {
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = idx % q;
                idx /= q;
            }
            v
        })
        .collect()
}

/// Elements of `GL_n(F_q)` or `SL_n(F_q)` in row-major lexicographic order,
/// built row by row from vectors outside the span of the previous rows.
pub(crate) fn enumerate(spec: &GroupSpec, cap: u64) -> Result<Vec<SmallMat>> {
    spec.validate()?;
    require_prime(spec.q)?;
    check_cap(spec, cap)?;
    let (n, q) = (spec.n, spec.q);
    let vectors = all_vectors(n, q);
    let mut out = Vec::new();
    let mut current = SmallMat::zero(n);
    let mut spans: Vec<HashSet<Vec<u64>>> = vec![HashSet::from([vec![0; n]])];
    fill_rows(0, n, q, &vectors, &mut current, &mut spans, &mut out);
    if spec.family == Family::SL {
        out.retain(|m| m.det_inv(q).0 == 1);
    }
    Ok(out)
}

fn fill_rows(
    row: usize,
    n: usize,
    q: u64,
    vectors: &[Vec<u64>],
    current: &mut SmallMat,
    spans: &mut Vec<HashSet<Vec<u64>>>,
    out: &mut Vec<SmallMat>,
) {
    if row == n {
        out.push(*current);
        return;
    }
    for v in vectors {
        let span = spans.last().expect("nonempty");
        if span.contains(v) {
            continue;
        }
        let mut next = HashSet::with_capacity(span.len() * q as usize);
        for s in span {
            for c in 0..q {
                next.insert(s.iter().zip(v).map(|(a, b)| (a + c * b) % q).collect::<Vec<u64>>());
            }
        }
        for (j, &x) in v.iter().enumerate() {
            current.set(row, j, x);
        }
        spans.push(next);
        fill_rows(row + 1, n, q, vectors, current, spans, out);
        spans.pop();
    }
}

/// Number of elements found by enumeration (checks [`order_formula`]).
pub fn order_bruteforce(spec: &GroupSpec) -> Result<u64> {
    Ok(enumerate(spec, enumeration_cap())?.len() as u64)
}

/// Counts invertible matrices by scanning every matrix and testing the
/// determinant; independent of the row-by-row generator above.
pub fn order_by_determinant_scan(spec: &GroupSpec) -> Result<u64> {
    spec.validate()?;
    require_prime(spec.q)?;
    check_cap(spec, enumeration_cap())?;
    let (n, q) = (spec.n, spec.q);
    let total = q.pow((n * n) as u32);
    let mut count = 0;
    for mut idx in 0..total {
        let mut m = SmallMat::zero(n);
        for k in (0..n * n).rev() {
            m.set(k / n, k % n, idx % q);
            idx /= q;
        }
        let det = m.det_inv(q).0;
        let member = match spec.family {
            Family::GL => det != 0,
            Family::SL => det == 1,
        };
        if member {
            count += 1;
        }
    }
    Ok(count)
}

/// Number of `r`-dimensional subspaces found by growing subspaces one vector
/// at a time and deduplicating by their element sets.
pub fn grassmann_bruteforce(n: usize, r: usize, q: u64) -> Result<u64> {
    require_prime(q)?;
    if r > n {
        return Err(Error::InvalidSpec(format!("r = {r} exceeds n = {n}")));
    }
    let vectors = all_vectors(n, q);
    let mut level: HashSet<Vec<Vec<u64>>> = HashSet::from([vec![vec![0; n]]]);
    for _ in 0..r {
        let mut next = HashSet::new();
        for space in &level {
            let members: HashSet<&Vec<u64>> = space.iter().collect();
            for v in &vectors {
                if members.contains(v) {
                    continue;
                }
                let mut grown: Vec<Vec<u64>> = space
                    .iter()
                    .flat_map(|s| (0..q).map(move |c| s.iter().zip(v).map(|(a, b)| (a + c * b) % q).collect()))
                    .collect();
                grown.sort();
                grown.dedup();
                next.insert(grown);
            }
        }
        level = next;
    }
    Ok(level.len() as u64)
}

/// Number of distinct conjugates of the upper unitriangular group in
/// `GL_n(F_p)`, which by Sylow's theorem is the number of Sylow `p`-subgroups.
pub fn sylow_bruteforce(n: usize, p: u64) -> Result<u64> {
    let spec = GroupSpec::gl(n, p);
    let group = enumerate(&spec, enumeration_cap())?;
    let unip: Vec<SmallMat> = group
        .iter()
        .filter(|m| (0..n).all(|i| m.get(i, i) == 1 && (0..i).all(|j| m.get(i, j) == 0)))
        .copied()
        .collect();
    let mut conjugates: HashSet<Vec<SmallMat>> = HashSet::new();
    for g in &group {
        let g_inv = g.det_inv(p).1.expect("invertible");
        let mut set: Vec<SmallMat> = unip.iter().map(|u| g.mul(u, p).mul(&g_inv, p)).collect();
        set.sort();
        conjugates.insert(set);
    }
    Ok(conjugates.len() as u64)
}

/// Number of subgroups of order `p` in `GL_2(F_p)`, counted from elements of
/// order `p` (each such subgroup contains `p - 1` of them).
pub fn order_p_subgroups_gl2(p: u64) -> Result<u64> {
    let group = enumerate(&GroupSpec::gl(2, p), enumeration_cap())?;
    let id = SmallMat::identity(2);
    let mut count = 0;
    for g in &group {
        if *g == id {
            continue;
        }
        let mut x = *g;
        for _ in 1..p {
            x = x.mul(g, p);
        }
        if x == id {
            count += 1;
        }
    }
    Ok(count / (p - 1))
}

/// One conjugacy class: lexicographically smallest member and class size.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjClass {
    pub rep: Matrix<FieldScalar>,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjClassTable {
    pub classes: Vec<ConjClass>,
    pub order: u64,
}

/// Conjugacy classes by orbit computation, using [`enumeration_cap`].
pub fn conj_classes(spec: &GroupSpec) -> Result<ConjClassTable> {
    conj_classes_capped(spec, enumeration_cap())
}

pub fn conj_classes_capped(spec: &GroupSpec, cap: u64) -> Result<ConjClassTable> {
    let group = enumerate(spec, cap)?;
    let q = spec.q;
    let inverses: Vec<SmallMat> = group.iter().map(|g| g.det_inv(q).1.expect("invertible")).collect();
    let domain = FieldDescriptor::prime(q)?;
    let mut seen: HashSet<SmallMat> = HashSet::with_capacity(group.len());
    let mut classes = Vec::new();
    for x in &group {
        if seen.contains(x) {
            continue;
        }
        let mut orbit = HashSet::new();
        for (g, g_inv) in group.iter().zip(&inverses) {
            orbit.insert(g.mul(x, q).mul(g_inv, q));
        }
        classes.push(ConjClass { rep: x.to_exact(&domain), size: orbit.len() as u64 });
        seen.extend(orbit);
    }
    Ok(ConjClassTable { classes, order: group.len() as u64 })
}

/// Centralizer, normalizer and Weyl group orders of a block-scalar torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusCounts {
    pub centralizer: u64,
    pub normalizer: u64,
    pub weyl: u64,
}

/// Brute-force centralizer and normalizer in `GL_n(F_q)` of the torus
/// `T = {diag(l_1 I_{n_1}, ..., l_r I_{n_r})}`.
///
/// `T` is treated as an algebraic torus: `g` centralizes it when it commutes
/// with every block idempotent, and normalizes it when conjugation preserves
/// the algebra of block-scalar matrices. Over `F_q` with `q >= 3` this agrees
/// with using the finite group `T(F_q)`; over `F_2` that group is trivial, so
/// it would not detect the block structure.
pub fn torus_centralizer_normalizer(partition: &[usize], q: u64) -> Result<TorusCounts> {
    if partition.is_empty() || partition.contains(&0) {
        return Err(Error::InvalidSpec(format!("{partition:?} is not a composition")));
    }
    let n: usize = partition.iter().sum();
    let group = enumerate(&GroupSpec::gl(n, q), enumeration_cap())?;
    let blocks: Vec<usize> = partition.iter().enumerate().flat_map(|(b, &len)| std::iter::repeat_n(b, len)).collect();
    let idempotents: Vec<SmallMat> = (0..partition.len())
        .map(|b| {
            let mut e = SmallMat::zero(n);
            for (i, &bi) in blocks.iter().enumerate() {
                if bi == b {
                    e.set(i, i, 1);
                }
            }
            e
        })
        .collect();
    let block_scalar = |m: &SmallMat| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    (0..n).all(|k| blocks[k] != blocks[i] || m.get(k, k) == m.get(i, i))
                } else {
                    m.get(i, j) == 0
                }
            })
        })
    };
    let (mut centralizer, mut normalizer) = (0u64, 0u64);
    for g in &group {
        let g_inv = g.det_inv(q).1.expect("invertible");
        if idempotents.iter().all(|e| g.mul(e, q) == e.mul(g, q)) {
            centralizer += 1;
        }
        if idempotents.iter().all(|e| block_scalar(&g.mul(e, q).mul(&g_inv, q))) {
            normalizer += 1;
        }
    }
    Ok(TorusCounts { centralizer, normalizer, weyl: normalizer / centralizer })
}

/// Same as [`torus_centralizer_normalizer`] but using the finite group
/// `T(F_q)` of block-scalar matrices directly.
pub fn torus_point_group_counts(partition: &[usize], q: u64) -> Result<TorusCounts> {
    let n: usize = partition.iter().sum();
    let group = enumerate(&GroupSpec::gl(n, q), enumeration_cap())?;
    let blocks: Vec<usize> = partition.iter().enumerate().flat_map(|(b, &len)| std::iter::repeat_n(b, len)).collect();
    let mut torus: Vec<SmallMat> = Vec::new();
    let r = partition.len() as u32;
    for mut idx in 0..(q - 1).pow(r) {
        let mut scalars = vec![0; partition.len()];
        for s in scalars.iter_mut() {
            *s = idx % (q - 1) + 1;
            idx /= q - 1;
        }
        let mut t = SmallMat::zero(n);
        for (i, &b) in blocks.iter().enumerate() {
            t.set(i, i, scalars[b]);
        }
        torus.push(t);
    }
    let torus_set: HashSet<SmallMat> = torus.iter().copied().collect();
    let (mut centralizer, mut normalizer) = (0u64, 0u64);
    for g in &group {
        let g_inv = g.det_inv(q).1.expect("invertible");
        if torus.iter().all(|t| g.mul(t, q) == t.mul(g, q)) {
            centralizer += 1;
        }
        if torus.iter().all(|t| torus_set.contains(&g.mul(t, q).mul(&g_inv, q))) {
            normalizer += 1;
        }
    }
    Ok(TorusCounts { centralizer, normalizer, weyl: normalizer / centralizer })
}

/// Number of orbits of `GL_n(F_q)` on `F_q^n`.
pub fn gl_orbits_on_vectors(n: usize, q: u64) -> Result<usize> {
    let group = enumerate(&GroupSpec::gl(n, q), enumeration_cap())?;
    let vectors = all_vectors(n, q);
    let mut orbit_of: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut orbits = 0;
    for v in &vectors {
        if orbit_of.contains_key(v) {
            continue;
        }
        for g in &group {
            let image: Vec<u64> = (0..n).map(|i| (0..n).map(|j| g.get(i, j) * v[j]).sum::<u64>() % q).collect();
            orbit_of.insert(image, orbits);
        }
        orbits += 1;
    }
    Ok(orbits)
}

/// Points of `P^1(F_q)` as normalized vectors: `(1, x)` and `(0, 1)`.
fn projective_line(q: u64) -> Vec<[u64; 2]> {
    let mut pts: Vec<[u64; 2]> = (0..q).map(|x| [1, x]).collect();
    pts.push([0, 1]);
    pts
}

fn normalize_point(v: [u64; 2], q: u64) -> [u64; 2] {
    let lead = if v[0] != 0 { v[0] } else { v[1] };
    let inv = mod_pow(lead, q - 2, q);
    [v[0] * inv % q, v[1] * inv % q]
}

/// Whether `PGL_2(F_q)` acts `k`-transitively on `P^1(F_q)`, by brute force
/// over all ordered `k`-tuples of distinct points.
pub fn pgl2_is_k_transitive(q: u64, k: usize) -> Result<bool> {
    let group = enumerate(&GroupSpec::gl(2, q), enumeration_cap())?;
    let pts = projective_line(q);
    let act = |g: &SmallMat, v: [u64; 2]| {
        normalize_point(
            [(g.get(0, 0) * v[0] + g.get(0, 1) * v[1]) % q, (g.get(1, 0) * v[0] + g.get(1, 1) * v[1]) % q],
            q,
        )
    };
    let mut tuples: Vec<Vec<[u64; 2]>> = vec![Vec::new()];
    for _ in 0..k {
        let mut longer = Vec::new();
        for t in &tuples {
            for p in pts.iter().filter(|p| !t.contains(p)) {
                let mut t2 = t.clone();
                t2.push(*p);
                longer.push(t2);
            }
        }
        tuples = longer;
    }
    let Some(base) = tuples.first().cloned() else { return Ok(true) };
    let reached: HashSet<Vec<[u64; 2]>> = group.iter().map(|g| base.iter().map(|&v| act(g, v)).collect()).collect();
    Ok(tuples.iter().all(|t| reached.contains(t)))
}

/// Converts an exact count to `u64` when it fits.
pub fn to_u64(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
