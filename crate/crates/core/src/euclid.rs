//! Euclidean geometry in floating point: orthogonal matrices, affine
//! isometries `x ↦ Ax + a`, the decomposition `A = PS` by Gram-Schmidt, the
//! two components of `O_2`, and the Platonic solids.

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Tolerance for orthogonality and reconstruction checks.
pub const TOLERANCE: f64 = 1e-9;
/// Threshold below which a determinant counts as zero.
pub const SINGULAR_THRESHOLD: f64 = 1e-12;

/// Scalar types usable in this module.
pub trait Real: Field + Float {}

impl<T: Field + Float> Real for T {}

fn tol<T: Real>(x: f64) -> T {
    T::from(x).expect("representable tolerance")
}

pub fn max_abs_diff<T: Real>(a: &Matrix<T>, b: &Matrix<T>) -> T {
    a.entries().iter().zip(b.entries()).fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()))
}

/// `max |ᵗAA - I|`.
pub fn orthogonality_defect<T: Real>(a: &Matrix<T>) -> Result<T> {
    if !a.is_square() {
        return Err(Error::NonSquare(a.rows(), a.cols()));
    }
    let id = Matrix::identity(a.rows(), T::one());
    Ok(max_abs_diff(&a.transpose().mul(a)?, &id))
}

pub fn is_orthogonal<T: Real>(a: &Matrix<T>) -> bool {
    orthogonality_defect(a).map(|d| d <= tol(TOLERANCE)).unwrap_or(false)
}

pub fn approx_eq<T: Real>(a: &Matrix<T>, b: &Matrix<T>, eps: f64) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol(eps)
}

/// `x ↦ Ax + a` with `A` orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineIsometry<T> {
    a: Matrix<T>,
    t: Vec<T>,
}

impl<T: Real> AffineIsometry<T> {
    pub fn new(a: Matrix<T>, t: Vec<T>) -> Result<Self> {
        if !a.is_square() || a.rows() != t.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix with a vector of length {}",
                a.rows(),
                a.cols(),
                t.len()
            )));
        }
        if !is_orthogonal(&a) {
            return Err(Error::NotOrthogonal);
        }
        Ok(AffineIsometry { a, t })
    }

    pub fn identity(n: usize) -> Self {
        AffineIsometry { a: Matrix::identity(n, T::one()), t: vec![T::zero(); n] }
    }

    /// `τ_b`.
    pub fn translation(b: Vec<T>) -> Self {
        AffineIsometry { a: Matrix::identity(b.len(), T::one()), t: b }
    }

    pub fn linear(a: Matrix<T>) -> Result<Self> {
        let n = a.rows();
        Self::new(a, vec![T::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn translation_part(&self) -> &[T] {
        &self.t
    }

    pub fn is_translation(&self, eps: f64) -> bool {
        approx_eq(&self.a, &Matrix::identity(self.dim(), T::one()), eps)
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("point of length {} in dimension {}", x.len(), self.dim())));
        }
        Ok(self.a.apply(x)?.into_iter().zip(&self.t).map(|(y, t)| y + *t).collect())
    }

    /// `(f∘g)(x) = AA'x + (Aa' + a)`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.dim() != g.dim() {
            return Err(Error::DimensionMismatch(format!("dimensions {} and {}", self.dim(), g.dim())));
        }
        let t = self.a.apply(&g.t)?.into_iter().zip(&self.t).map(|(x, y)| x + *y).collect();
        Ok(AffineIsometry { a: self.a.mul(&g.a)?, t })
    }

    /// `f⁻¹(x) = A⁻¹x - A⁻¹a`, with `A⁻¹ = ᵗA`.
    pub fn inverse(&self) -> Self {
        let inv = self.a.transpose();
        let t = inv.apply(&self.t).expect("square").into_iter().map(|x| -x).collect();
        AffineIsometry { a: inv, t }
    }

    /// `f τ_b f⁻¹`, which is the translation `τ_{Ab}`.
    pub fn conjugate_translation(&self, b: &[T]) -> Result<Self> {
        self.compose(&Self::translation(b.to_vec()))?.compose(&self.inverse())
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        approx_eq(&self.a, &other.a, eps)
            && self.t.len() == other.t.len()
            && self.t.iter().zip(&other.t).all(|(x, y)| (*x - *y).abs() <= tol(eps))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Iwasawa<T> {
    /// Upper triangular with positive diagonal.
    pub p: Matrix<T>,
    /// Orthogonal.
    pub s: Matrix<T>,
}

fn dot<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).fold(T::zero(), |acc, (a, b)| acc + *a * *b)
}

/// `A = PS` with `P` upper triangular, positive diagonal, and `S` orthogonal.
///
/// Classical Gram-Schmidt on the rows of `A`, starting from the last row: row
/// `i` is orthogonalized against the already computed rows `i+1..n` of `S`,
/// so that `A_i = Σ_{j ≥ i} P_ij S_j`.
pub fn iwasawa<T: Real>(a: &Matrix<T>) -> Result<Iwasawa<T>> {
    if !a.is_square() {
        return Err(Error::NonSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let mut s_rows: Vec<Vec<T>> = vec![Vec::new(); n];
    let mut p = Matrix::zero(n, n, T::one());
    let mut volume = T::one();
    for i in (0..n).rev() {
        let row = a.row(i);
        let mut u = row.to_vec();
        for j in (i + 1)..n {
            let c = dot(row, &s_rows[j]);
            p[(i, j)] = c;
            for (uk, sk) in u.iter_mut().zip(&s_rows[j]) {
                *uk = *uk - c * *sk;
            }
        }
        let norm = dot(&u, &u).sqrt();
        volume = volume * norm;
        if norm <= tol(SINGULAR_THRESHOLD) || volume <= tol(SINGULAR_THRESHOLD) {
            return Err(Error::Singular);
        }
        p[(i, i)] = norm;
        s_rows[i] = u.into_iter().map(|x| x / norm).collect();
    }
    let s = Matrix::from_rows(s_rows, T::one())?;
    Ok(Iwasawa { p, s })
}

/// `r_v(x) = x - 2 <x,v>/|v|² v`.
pub fn reflection<T: Real>(v: &[T]) -> Result<Matrix<T>> {
    let n2 = dot(v, v);
    if n2 <= T::zero() {
        return Err(Error::ZeroVector);
    }
    let n = v.len();
    let two = T::one() + T::one();
    let mut m = Matrix::identity(n, T::one());
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = m[(i, j)] - two * v[i] * v[j] / n2;
        }
    }
    Ok(m)
}

/// `[[cos θ, -sin θ], [sin θ, cos θ]]`.
pub fn rotation2<T: Real>(theta: T) -> Matrix<T> {
    let (s, c) = theta.sin_cos();
    Matrix::from_rows(vec![vec![c, -s], vec![s, c]], T::one()).expect("2x2")
}

/// Rotation in the plane of `e_l, e_{l+1}` (1-based `l`) sending
/// `e_l ↦ cos θ e_l - sin θ e_{l+1}` and `e_{l+1} ↦ sin θ e_l + cos θ e_{l+1}`.
pub fn rotate_plane<T: Real>(l: usize, theta: T, n: usize) -> Result<Matrix<T>> {
    if l < 1 || l + 1 > n {
        return Err(Error::IndexError(format!("plane index {l} needs 1 <= l <= n-1 with n = {n}")));
    }
    let (s, c) = theta.sin_cos();
    let mut m = Matrix::identity(n, T::one());
    let (i, j) = (l - 1, l);
    m[(i, i)] = c;
    m[(j, i)] = -s;
    m[(i, j)] = s;
    m[(j, j)] = c;
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "angle", rename_all = "snake_case")]
pub enum O2Class<T> {
    /// Rotation by `θ ∈ (-π, π]`.
    Rotation(T),
    /// Reflection fixing the line at angle `φ ∈ [0, π)`.
    Reflection(T),
}

impl<T: Real> O2Class<T> {
    pub fn matrix(&self) -> Matrix<T> {
        match *self {
            O2Class::Rotation(theta) => rotation2(theta),
            O2Class::Reflection(phi) => {
                let (s, c) = (phi + phi).sin_cos();
                Matrix::from_rows(vec![vec![c, s], vec![s, -c]], T::one()).expect("2x2")
            }
        }
    }
}

pub fn classify_o2<T: Real>(a: &Matrix<T>) -> Result<O2Class<T>> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch(format!("expected 2x2, got {}x{}", a.rows(), a.cols())));
    }
    if !is_orthogonal(a) {
        return Err(Error::NotOrthogonal);
    }
    let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let angle = a[(1, 0)].atan2(a[(0, 0)]);
    if det > T::zero() {
        Ok(O2Class::Rotation(angle))
    } else {
        let pi = T::from(std::f64::consts::PI).expect("float");
        let mut phi = angle / (T::one() + T::one());
        if phi < T::zero() {
            phi = phi + pi;
        }
        Ok(O2Class::Reflection(phi))
    }
}

/// Regular polyhedron with `n`-gon faces, `m` faces at each vertex, and
/// `v` vertices, `e` edges, `f` faces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlatonicSolid {
    pub n: u32,
    pub m: u32,
    pub v: u32,
    pub e: u32,
    pub f: u32,
}

/// All `(n, m)` with `n, m ≥ 3` and `1/n + 1/m > 1/2`, with `v, e, f` from
/// `nf = 2e = mv` and Euler's relation `v - e + f = 2`, ordered by `(e, n)`.
pub fn platonic_enumerate() -> Vec<PlatonicSolid> {
    let mut out = Vec::new();
    // 1/n + 1/m > 1/2 forces min(n, m) = 3 and max(n, m) < 6.
    for n in 3..6u32 {
        for m in 3..6u32 {
            if 2 * (n + m) <= n * m {
                continue;
            }
            let e = 2 * m * n / (2 * m + 2 * n - m * n);
            out.push(PlatonicSolid { n, m, v: 2 * e / m, e, f: 2 * e / n });
        }
    }
    out.sort_by_key(|s| (s.e, s.n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_iwasawa() {
        let a = Matrix::diagonal(&[2.0, 3.0], 1.0);
        let d = iwasawa(&a).unwrap();
        assert!(approx_eq(&d.p, &a, 1e-15));
        assert!(approx_eq(&d.s, &Matrix::identity(2, 1.0), 1e-15));
        let singular = Matrix::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]], 1.0).unwrap();
        assert_eq!(iwasawa(&singular), Err(Error::Singular));
    }

    #[test]
    fn reflection_of_e1() {
        let r = reflection(&[1.0, 0.0]).unwrap();
        assert_eq!(r, Matrix::diagonal(&[-1.0, 1.0], 1.0));
        assert_eq!(reflection::<f64>(&[0.0, 0.0]), Err(Error::ZeroVector));
    }

    #[test]
    fn o2_examples() {
        assert_eq!(classify_o2(&Matrix::identity(2, 1.0)).unwrap(), O2Class::Rotation(0.0));
        assert_eq!(classify_o2(&Matrix::diagonal(&[1.0, -1.0], 1.0)).unwrap(), O2Class::Reflection(0.0));
        let bad = Matrix::diagonal(&[2.0, 1.0], 1.0);
        assert_eq!(classify_o2(&bad), Err(Error::NotOrthogonal));
    }

    #[test]
    fn platonic_list() {
        let pairs: Vec<(u32, u32)> = platonic_enumerate().iter().map(|s| (s.n, s.m)).collect();
        assert_eq!(pairs, vec![(3, 3), (3, 4), (4, 3), (3, 5), (5, 3)]);
        assert!(platonic_enumerate().contains(&PlatonicSolid { n: 4, m: 3, v: 8, e: 12, f: 6 }));
    }
}
