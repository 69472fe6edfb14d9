//! Dense matrices over a [`Ring`], plus the field-specific algorithms
//! (elimination, minimal polynomials, nilpotent exponentials) and the
//! representations attached to quadratic extensions.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Domain, FieldScalar};
use crate::poly::Poly;
use crate::scalar::{Field, Ring};

/// Row-major dense matrix.
///
/// `one` is the multiplicative identity of the entry ring, so that empty and
/// zero matrices still carry their domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    one: R,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>, one: R) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data, one })
    }

    pub fn from_rows(rows: Vec<Vec<R>>, one: R) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect(), one)
    }

    pub fn zero(rows: usize, cols: usize, one: R) -> Self {
        Matrix { rows, cols, data: vec![one.zero_like(); rows * cols], one }
    }

    pub fn identity(n: usize, one: R) -> Self {
        let mut m = Matrix::zero(n, n, one.clone());
        for i in 0..n {
            m[(i, i)] = one.clone();
        }
        m
    }

    pub fn diagonal(entries: &[R], one: R) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(n, n, one);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// `I + t e_ij` (zero-based indices).
    pub fn elementary(n: usize, i: usize, j: usize, t: &R) -> Self {
        let mut m = Matrix::identity(n, t.one_like());
        m[(i, j)] = m[(i, j)].clone() + t.clone();
        m
    }

    /// The matrix unit `e_ij` scaled by `t`.
    pub fn unit(n: usize, i: usize, j: usize, t: &R) -> Self {
        let mut m = Matrix::zero(n, n, t.one_like());
        m[(i, j)] = t.clone();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn one(&self) -> &R {
        &self.one
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare(self.rows, self.cols))
        }
    }

    fn require_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows == rhs.rows && self.cols == rhs.cols {
            Ok(())
        } else {
            Err(Error::SizeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)))
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.require_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.require_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, rhs.cols, self.one.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(self.one.zero_like(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| -a.clone()).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data, one: self.one.clone() }
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(n, self.one.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<R> {
        let n = self.require_square()?;
        Ok((0..n).fold(self.one.zero_like(), |acc, i| acc + self[(i, i)].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows, self.one.clone())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn commutes_with(&self, rhs: &Self) -> Result<bool> {
        Ok(self.mul(rhs)? == rhs.mul(self)?)
    }

    pub fn map<S: Ring>(&self, one: S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), one }
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: rows.len(), cols: cols.len(), data, one: self.one.clone() }
    }

    /// Block diagonal sum of square blocks.
    pub fn block_diag(blocks: &[Matrix<R>], one: R) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(n, m, one);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Determinant by cofactor expansion along the first row.
    ///
    /// Division free, so it works over any commutative ring; the cost is
    /// factorial, which is fine for the small sizes (n <= 4) it is meant for.
    pub fn det_cofactor(&self) -> Result<R> {
        let n = self.require_square()?;
        let idx: Vec<usize> = (0..n).collect();
        Ok(self.cofactor_rec(0, &idx))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> R {
        if cols.is_empty() {
            return self.one.clone();
        }
        let mut acc = self.one.zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let a = &self[(row, c)];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.clone() * self.cofactor_rec(row + 1, &rest);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    /// Characteristic polynomial `det(X I - M)` by Berkowitz's division-free
    /// algorithm; valid over any commutative ring.
    pub fn char_poly(&self) -> Result<Poly<R>> {
        let n = self.require_square()?;
        let one = self.one.clone();
        if n == 0 {
            return Ok(Poly::constant(one));
        }
        // Coefficients in descending degree order.
        let mut c: Vec<R> = vec![one.clone(), -self[(0, 0)].clone()];
        for r in 1..n {
            let idx: Vec<usize> = (0..r).collect();
            let s = self.submatrix(&idx, &idx);
            let col: Vec<R> = (0..r).map(|i| self[(i, r)].clone()).collect();
            let row: Vec<R> = (0..r).map(|j| self[(r, j)].clone()).collect();
            let dot =
                |u: &[R], v: &[R]| u.iter().zip(v).fold(one.zero_like(), |acc, (a, b)| acc + a.clone() * b.clone());
            let mut toeplitz = vec![one.clone(), -self[(r, r)].clone()];
            let mut v = col;
            for _ in 0..r {
                toeplitz.push(-dot(&row, &v));
                v = s.apply(&v)?;
            }
            let mut next = vec![one.zero_like(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j {
                        *slot = slot.clone() + toeplitz[i - j].clone() * cj.clone();
                    }
                }
            }
            c = next;
        }
        c.reverse();
        Ok(Poly::new(c, one))
    }
}

/// Result of [`Matrix::det_inverse_rank`].
#[derive(Clone, Debug, PartialEq)]
pub struct DetInverseRank<F> {
    pub det: F,
    pub inverse: Option<Matrix<F>>,
    pub rank: usize,
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> Result<(Matrix<F>, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].try_inv()?;
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let v = m[(r, j)].clone();
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Determinant by Gaussian elimination (first nonzero pivot in each column).
    ///
    /// Over a split étale algebra a pivot may be a zero divisor; the
    /// division-free route is used in that case.
    pub fn det(&self) -> Result<F> {
        let n = self.require_square()?;
        match self.det_elimination(n) {
            Err(Error::NonInvertible(_)) => {
                let c0 = self.char_poly()?.coeff(0);
                Ok(if n % 2 == 0 { c0 } else { -c0 })
            }
            other => other,
        }
    }

    fn det_elimination(&self, n: usize) -> Result<F> {
        let mut m = self.clone();
        let mut det = self.one.clone();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(self.one.zero_like());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            let inv = piv.try_inv()?;
            det = det * piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..n {
                    let v = m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * v;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix<F>> {
        let n = self.require_square()?;
        let mut aug = Matrix::zero(n, 2 * n, self.one.clone());
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.one.clone();
        }
        let (r, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    pub fn det_inverse_rank(&self) -> Result<DetInverseRank<F>> {
        let det = self.det()?;
        let inverse = if det.is_zero() { None } else { Some(self.inverse()?) };
        let rank = self.rank()?;
        Ok(DetInverseRank { det, inverse, rank })
    }

    /// One solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::SizeMismatch("right-hand side length".into()));
        }
        let mut aug = Matrix::zero(self.rows, self.cols + 1, self.one.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.one.zero_like(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Minimal polynomial: the first linear dependency among
    /// `vec(I), vec(M), vec(M^2), ...` (Krylov sequence in the matrix space).
    pub fn min_poly(&self) -> Result<Poly<F>> {
        let n = self.require_square()?;
        let one = self.one.clone();
        let zero = one.zero_like();
        // Each basis entry: reduced vector, its pivot, and the combination of
        // powers of M it represents.
        let mut basis: Vec<(Vec<F>, usize, Vec<F>)> = Vec::new();
        let mut power = Matrix::identity(n, one.clone());
        for k in 0..=n * n {
            let mut v = power.data.clone();
            let mut combo = vec![zero.clone(); k + 1];
            combo[k] = one.clone();
            for (b, p, bc) in &basis {
                if v[*p].is_zero() {
                    continue;
                }
                let f = v[*p].try_div(&b[*p])?;
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = vi.clone() - f.clone() * bi.clone();
                }
                for (ci, bci) in combo.iter_mut().zip(bc) {
                    *ci = ci.clone() - f.clone() * bci.clone();
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return Ok(Poly::new(combo, one)),
                Some(p) => basis.push((v, p, combo)),
            }
            power = power.mul(self)?;
        }
        unreachable!("a dependency appears by degree n (Cayley-Hamilton)")
    }

    /// `exp(N) = sum N^r / r!` for nilpotent `N`.
    pub fn exp_nilpotent(&self) -> Result<Matrix<F>> {
        let n = self.require_square()?;
        let mut powers = vec![Matrix::identity(n, self.one.clone())];
        loop {
            let last = powers.last().expect("nonempty");
            if last.is_zero() {
                powers.pop();
                break;
            }
            if powers.len() > n {
                return Err(Error::NotNilpotent);
            }
            let next = last.mul(self)?;
            powers.push(next);
        }
        let mut acc = Matrix::zero(n, n, self.one.clone());
        let mut fact = self.one.clone();
        for (r, p) in powers.iter().enumerate() {
            if r > 0 {
                let rr = self.one.int_like(r as i64);
                if rr.is_zero() {
                    return Err(Error::CharacteristicTooSmall(format!(
                        "N^{r} is nonzero but {r} vanishes in the base field"
                    )));
                }
                fact = fact * rr;
            }
            acc = acc.add(&p.scale(&fact.try_inv()?))?;
        }
        Ok(acc)
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Splits a nested-list literal such as `[[1,2],[0,3]]` into entry strings.
pub fn split_matrix_literal(text: &str) -> Result<Vec<Vec<String>>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("matrix literal must be [[...],...]: '{text}'")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut rows = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut row: Vec<String> = Vec::new();
    for c in inner.chars() {
        match c {
            '[' if depth == 0 => {
                depth = 1;
                current.clear();
                row.clear();
            }
            ']' if depth == 1 => {
                depth = 0;
                row.push(std::mem::take(&mut current));
                rows.push(std::mem::take(&mut row));
            }
            ',' if depth == 1 => row.push(std::mem::take(&mut current)),
            ',' if depth == 0 => {}
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth -= 1;
                current.push(c);
            }
            _ if depth >= 1 => current.push(c),
            _ => return Err(Error::Parse(format!("unexpected '{c}' in matrix literal"))),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets in matrix literal".into()));
    }
    Ok(rows)
}

impl<R: Ring> Matrix<R> {
    /// Parses a nested-list literal with a caller-supplied entry parser.
    pub fn parse_with(text: &str, one: R, parse: impl Fn(&str) -> Result<R>) -> Result<Self> {
        let rows = split_matrix_literal(text)?;
        let parsed: Vec<Vec<R>> =
            rows.iter().map(|row| row.iter().map(|e| parse(e)).collect::<Result<Vec<R>>>()).collect::<Result<_>>()?;
        Matrix::from_rows(parsed, one)
    }

    /// JSON-friendly form with entries rendered as text.
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

impl Matrix<FieldScalar> {
    /// Parses `[[1,2],[0,3]]` with entries in `domain`.
    pub fn parse(text: &str, domain: &Domain) -> Result<Self> {
        Matrix::parse_with(text, FieldScalar::one(domain), |s| FieldScalar::parse(s, domain))
    }

    pub fn from_ints(rows: &[&[i64]], domain: &Domain) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| FieldScalar::from_int(domain, x)).collect()).collect();
        Matrix::from_rows(rows, FieldScalar::one(domain))
    }

    pub fn domain(&self) -> &Domain {
        self.one.domain()
    }

    pub fn from_json(json: &MatrixJson, domain: &Domain) -> Result<Self> {
        let rows = json
            .entries
            .iter()
            .map(|r| r.iter().map(|e| FieldScalar::parse(e, domain)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(rows, FieldScalar::one(domain))?;
        if m.rows != json.rows || m.cols != json.cols {
            return Err(Error::SizeMismatch("declared shape does not match entries".into()));
        }
        Ok(m)
    }
}

/// Serialized matrix: `{"rows": r, "cols": c, "entries": [["1","2"],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

/// Matrix of multiplication by `alpha = x0 + x1 w` on the basis `(1, w)` of
/// its quadratic étale algebra: `[[x0, a x1], [x1, x0]]`.
pub fn regular_rep(alpha: &FieldScalar) -> Result<Matrix<FieldScalar>> {
    let domain = alpha.domain();
    let (x0, x1) = alpha
        .components()
        .ok_or_else(|| Error::DomainMismatch(format!("{domain} is not a quadratic étale algebra")))?;
    let a = domain.etale_param().expect("étale");
    let base_one = FieldScalar::one(domain.etale_base().expect("étale"));
    Matrix::from_rows(vec![vec![x0.clone(), a * x1], vec![x1.clone(), x0.clone()]], base_one)
}

/// Gram matrix of the trace form `(x, y) -> Tr(l_x l_y)` on the basis `(1, w)`.
pub fn trace_form_gram(domain: &Domain) -> Result<Matrix<FieldScalar>> {
    let base = domain
        .etale_base()
        .ok_or_else(|| Error::DomainMismatch(format!("{domain} is not a quadratic étale algebra")))?;
    let basis = [FieldScalar::one(domain), FieldScalar::generator(domain)?];
    let reps: Vec<Matrix<FieldScalar>> = basis.iter().map(regular_rep).collect::<Result<_>>()?;
    let mut g = Matrix::zero(2, 2, FieldScalar::one(base));
    for i in 0..2 {
        for j in 0..2 {
            g[(i, j)] = reps[i].mul(&reps[j])?.trace()?;
        }
    }
    Ok(g)
}

/// Action of `g = [[a,b],[c,d]]` on homogeneous degree-`n` polynomials in
/// `x, y`, where `g.x = a x + c y` and `g.y = b x + d y`, on the basis
/// `x^n, x^(n-1) y, ..., y^n`.
pub fn sym_power_rep<F: Field>(g: &Matrix<F>, n: usize) -> Result<Matrix<F>> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::SizeMismatch("symmetric powers need a 2x2 matrix".into()));
    }
    if g.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let one = g.one().clone();
    let zero = one.zero_like();
    // Homogeneous polynomials as coefficient vectors indexed by the power of y.
    let gx = vec![g[(0, 0)].clone(), g[(1, 0)].clone()];
    let gy = vec![g[(0, 1)].clone(), g[(1, 1)].clone()];
    let mul = |p: &[F], q: &[F]| {
        let mut out = vec![zero.clone(); p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    };
    let mut out = Matrix::zero(n + 1, n + 1, one.clone());
    for k in 0..=n {
        let mut poly = vec![one.clone()];
        for _ in 0..n - k {
            poly = mul(&poly, &gx);
        }
        for _ in 0..k {
            poly = mul(&poly, &gy);
        }
        for (i, c) in poly.into_iter().enumerate() {
            out[(i, k)] = c;
        }
    }
    Ok(out)
}

/// Jordan block `J_r(lambda)` (upper triangular).
pub fn jordan_block<R: Ring>(r: usize, lambda: &R) -> Matrix<R> {
    let mut m = Matrix::identity(r, lambda.one_like()).scale(lambda);
    for i in 0..r.saturating_sub(1) {
        m[(i, i + 1)] = lambda.one_like();
    }
    m
}
