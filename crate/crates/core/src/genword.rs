//! Words in the Chevalley generators of `GL_n`, Gaussian elimination into such
//! words, the Bruhat decomposition, parabolic subgroups and flags, and the
//! standard automorphisms of `SL_2`.
//!
//! Indices are zero-based in the API and one-based in the text form
//! (`x(1,2;3)` is `x_{12}(3)`).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{etale_conj_norm, Domain, FieldScalar};
use crate::matrix::Matrix;
use crate::scalar::{Field, Ring};

/// One Chevalley generator.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorToken<F> {
    /// `x_ij(t) = I + t e_ij`.
    Elem { i: usize, j: usize, t: F },
    /// `n_ij(t) = x_ij(t) x_ji(-1/t) x_ij(t)`.
    Monomial { i: usize, j: usize, t: F },
    /// `h_ij(t) = n_ij(t) n_ij(-1)`, the diagonal matrix with `t` at `i` and `1/t` at `j`.
    Torus { i: usize, j: usize, t: F },
    /// Permutation matrix sending `e_j` to `e_{sigma[j]}`.
    Perm(Vec<usize>),
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if i == j || i >= n || j >= n {
        return Err(Error::IndexError(format!("generator indices ({},{}) for n = {n}", i + 1, j + 1)));
    }
    Ok(())
}

/// Permutation matrix with ones at `(sigma[j], j)`.
pub fn perm_matrix<R: Ring>(sigma: &[usize], one: R) -> Result<Matrix<R>> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::InvalidSpec(format!("{sigma:?} is not a permutation")));
        }
        seen[s] = true;
    }
    let mut m = Matrix::zero(n, n, one.clone());
    for (j, &s) in sigma.iter().enumerate() {
        m[(s, j)] = one.clone();
    }
    Ok(m)
}

impl<F: Field> GeneratorToken<F> {
    pub fn matrix(&self, n: usize, one: &F) -> Result<Matrix<F>> {
        match self {
            GeneratorToken::Elem { i, j, t } => {
                check_pair(n, *i, *j)?;
                Ok(Matrix::elementary(n, *i, *j, t))
            }
            GeneratorToken::Monomial { i, j, t } => {
                check_pair(n, *i, *j)?;
                let s = -t.try_inv()?;
                let x = Matrix::elementary(n, *i, *j, t);
                x.mul(&Matrix::elementary(n, *j, *i, &s))?.mul(&x)
            }
            GeneratorToken::Torus { i, j, t } => {
                check_pair(n, *i, *j)?;
                let a = GeneratorToken::Monomial { i: *i, j: *j, t: t.clone() }.matrix(n, one)?;
                let b = GeneratorToken::Monomial { i: *i, j: *j, t: -one.clone() }.matrix(n, one)?;
                a.mul(&b)
            }
            GeneratorToken::Perm(sigma) => {
                if sigma.len() != n {
                    return Err(Error::SizeMismatch(format!("permutation of length {} for n = {n}", sigma.len())));
                }
                perm_matrix(sigma, one.clone())
            }
        }
    }

    pub fn inverse(&self) -> Result<GeneratorToken<F>> {
        Ok(match self {
            GeneratorToken::Elem { i, j, t } => GeneratorToken::Elem { i: *i, j: *j, t: -t.clone() },
            GeneratorToken::Monomial { i, j, t } => GeneratorToken::Monomial { i: *i, j: *j, t: -t.clone() },
            GeneratorToken::Torus { i, j, t } => GeneratorToken::Torus { i: *i, j: *j, t: t.try_inv()? },
            GeneratorToken::Perm(sigma) => {
                let mut inv = vec![0; sigma.len()];
                for (j, &s) in sigma.iter().enumerate() {
                    inv[s] = j;
                }
                GeneratorToken::Perm(inv)
            }
        })
    }
}

impl<F: fmt::Display> fmt::Display for GeneratorToken<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorToken::Elem { i, j, t } => write!(f, "x({},{};{t})", i + 1, j + 1),
            GeneratorToken::Monomial { i, j, t } => write!(f, "n({},{};{t})", i + 1, j + 1),
            GeneratorToken::Torus { i, j, t } => write!(f, "h({},{};{t})", i + 1, j + 1),
            GeneratorToken::Perm(sigma) => {
                let parts: Vec<String> = sigma.iter().map(|s| (s + 1).to_string()).collect();
                write!(f, "p({})", parts.join(" "))
            }
        }
    }
}

/// An ordered product of generators; the empty word is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorWord<F> {
    n: usize,
    tokens: Vec<GeneratorToken<F>>,
    one: F,
}

impl<F: Field> GeneratorWord<F> {
    pub fn new(n: usize, tokens: Vec<GeneratorToken<F>>, one: F) -> Self {
        GeneratorWord { n, tokens, one }
    }

    pub fn empty(n: usize, one: F) -> Self {
        GeneratorWord { n, tokens: Vec::new(), one }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tokens(&self) -> &[GeneratorToken<F>] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Product of the token matrices, left to right.
    pub fn eval(&self) -> Result<Matrix<F>> {
        let mut acc = Matrix::identity(self.n, self.one.clone());
        for tok in &self.tokens {
            acc = acc.mul(&tok.matrix(self.n, &self.one)?)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<GeneratorWord<F>> {
        let tokens = self.tokens.iter().rev().map(GeneratorToken::inverse).collect::<Result<_>>()?;
        Ok(GeneratorWord { n: self.n, tokens, one: self.one.clone() })
    }
}

impl<F: fmt::Display> fmt::Display for GeneratorWord<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tokens.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl GeneratorWord<FieldScalar> {
    /// Parses `x(1,2;3) n(1,2;1) h(1,2;2) p(2 1 3)`.
    pub fn parse(text: &str, n: usize, domain: &Domain) -> Result<Self> {
        let one = FieldScalar::one(domain);
        let mut tokens = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| Error::Parse(format!("expected '(' in '{rest}'")))?;
            let close = rest.find(')').ok_or_else(|| Error::Parse(format!("expected ')' in '{rest}'")))?;
            if close < open {
                return Err(Error::Parse(format!("misplaced ')' in '{rest}'")));
            }
            let kind = rest[..open].trim();
            let body = &rest[open + 1..close];
            rest = rest[close + 1..].trim_start();
            let index = |s: &str| -> Result<usize> {
                let v: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad index '{s}'")))?;
                v.checked_sub(1).ok_or_else(|| Error::IndexError("indices start at 1".into()))
            };
            if kind == "p" {
                let sigma = body.split_whitespace().map(index).collect::<Result<Vec<_>>>()?;
                tokens.push(GeneratorToken::Perm(sigma));
                continue;
            }
            let (ij, t) = body.split_once(';').ok_or_else(|| Error::Parse(format!("expected ';' in '{body}'")))?;
            let (i, j) = ij.split_once(',').ok_or_else(|| Error::Parse(format!("expected 'i,j' in '{ij}'")))?;
            let (i, j) = (index(i)?, index(j)?);
            let t = FieldScalar::parse(t, domain)?;
            tokens.push(match kind {
                "x" => GeneratorToken::Elem { i, j, t },
                "n" => GeneratorToken::Monomial { i, j, t },
                "h" => GeneratorToken::Torus { i, j, t },
                other => return Err(Error::Parse(format!("unknown generator '{other}'"))),
            });
        }
        let word = GeneratorWord { n, tokens, one };
        for tok in &word.tokens {
            tok.matrix(n, &word.one)?;
        }
        Ok(word)
    }
}

fn require_square<F: Field>(m: &Matrix<F>) -> Result<usize> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(Error::NonSquare(m.rows(), m.cols()))
    }
}

/// Writes `m` as a word in elementary matrices `x_ij(t)`; requires `det m = 1`.
pub fn elem_decompose<F: Field>(m: &Matrix<F>) -> Result<GeneratorWord<F>> {
    let n = require_square(m)?;
    let one = m.one().clone();
    let det = m.det()?;
    if !det.is_one() {
        return Err(Error::DeterminantNotOne(det.to_string()));
    }
    if m.is_identity() {
        return Ok(GeneratorWord::empty(n, one));
    }
    if n == 2 {
        let elem = |i, j, t| GeneratorToken::Elem { i, j, t };
        let c = m[(1, 0)].clone();
        if !c.is_zero() {
            return Ok(GeneratorWord::new(n, sl2_three_factor(m)?, one));
        }
        // c = 0: x21(1) m has lower-left entry a != 0.
        let shifted = Matrix::elementary(2, 1, 0, &one).mul(m)?;
        let mut tokens = vec![elem(1, 0, -one.clone())];
        tokens.extend(sl2_three_factor(&shifted)?);
        return Ok(GeneratorWord::new(n, tokens, one));
    }
    let mut work = m.clone();
    let mut ops: Vec<GeneratorToken<F>> = Vec::new();
    let mut apply = |work: &mut Matrix<F>, i: usize, j: usize, t: F| -> Result<()> {
        if t.is_zero() {
            return Ok(());
        }
        *work = Matrix::elementary(n, i, j, &t).mul(work)?;
        ops.push(GeneratorToken::Elem { i, j, t });
        Ok(())
    };
    for k in 0..n {
        if work[(k, k)].is_zero() {
            let r = (k + 1..n).find(|&i| !work[(i, k)].is_zero()).ok_or(Error::Singular)?;
            apply(&mut work, k, r, one.clone())?;
        }
        let p = work[(k, k)].clone();
        if !p.is_one() && k + 1 < n {
            // Make row k+1 carry 1 - p in column k, then add it to row k.
            let s = work[(k + 1, k)].clone();
            let c = (one.clone() - p.clone() - s).try_div(&p)?;
            apply(&mut work, k + 1, k, c)?;
            apply(&mut work, k, k + 1, one.clone())?;
        }
        let piv_inv = work[(k, k)].try_inv()?;
        for i in 0..n {
            if i != k && !work[(i, k)].is_zero() {
                let t = -(work[(i, k)].clone() * piv_inv.clone());
                apply(&mut work, i, k, t)?;
            }
        }
    }
    debug_assert!(work.is_identity());
    // ops applied on the left: E_m ... E_1 m = I, so m = E_1^-1 ... E_m^-1.
    let tokens = ops.iter().map(GeneratorToken::inverse).collect::<Result<_>>()?;
    Ok(GeneratorWord::new(n, tokens, one))
}

/// `[[a,b],[c,d]] = x12((a-1)/c) x21(c) x12((d-1)/c)` for `c != 0`, det 1.
fn sl2_three_factor<F: Field>(m: &Matrix<F>) -> Result<Vec<GeneratorToken<F>>> {
    let one = m.one().clone();
    let (a, c, d) = (m[(0, 0)].clone(), m[(1, 0)].clone(), m[(1, 1)].clone());
    let c_inv = c.try_inv()?;
    Ok(vec![
        GeneratorToken::Elem { i: 0, j: 1, t: (a - one.clone()) * c_inv.clone() },
        GeneratorToken::Elem { i: 1, j: 0, t: c },
        GeneratorToken::Elem { i: 0, j: 1, t: (d - one) * c_inv },
    ])
}

/// Output of [`gauss_reduce`]: `left.eval() * M * right.eval() = diag`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussReduction<F> {
    pub left: GeneratorWord<F>,
    pub right: GeneratorWord<F>,
    pub diag: Matrix<F>,
}

/// Reduces `m` with row and column operations of types `x_ij`, `n_ij`, `h_ij`
/// to `diag(1,...,1,det m)` (invertible input) or `diag(1,...,1,0,...,0)`.
///
/// For invertible input only row operations are used, so `right` is empty.
pub fn gauss_reduce<F: Field>(m: &Matrix<F>) -> Result<GaussReduction<F>> {
    let n = require_square(m)?;
    let one = m.one().clone();
    let mut work = m.clone();
    let mut left: Vec<GeneratorToken<F>> = Vec::new();
    let mut right: Vec<GeneratorToken<F>> = Vec::new();
    let mut rank = 0;
    for k in 0..n {
        let found = (k..n).flat_map(|j| (k..n).map(move |i| (i, j))).find(|&(i, j)| !work[(i, j)].is_zero());
        let Some((pi, pj)) = found else { break };
        rank += 1;
        if pi != k {
            let tok = GeneratorToken::Monomial { i: k, j: pi, t: one.clone() };
            work = tok.matrix(n, &one)?.mul(&work)?;
            left.insert(0, tok);
        }
        if pj != k {
            let tok = GeneratorToken::Monomial { i: pj, j: k, t: one.clone() };
            work = work.mul(&tok.matrix(n, &one)?)?;
            right.push(tok);
        }
        let p = work[(k, k)].clone();
        if !p.is_one() && k + 1 < n {
            let tok = GeneratorToken::Torus { i: k, j: k + 1, t: p.try_inv()? };
            work = tok.matrix(n, &one)?.mul(&work)?;
            left.insert(0, tok);
        }
        let piv_inv = work[(k, k)].try_inv()?;
        for i in 0..n {
            if i != k && !work[(i, k)].is_zero() {
                let tok = GeneratorToken::Elem { i, j: k, t: -(work[(i, k)].clone() * piv_inv.clone()) };
                work = tok.matrix(n, &one)?.mul(&work)?;
                left.insert(0, tok);
            }
        }
    }
    // Singular input: clear what remains to the right of the pivots.
    for k in 0..rank {
        let piv_inv = work[(k, k)].try_inv()?;
        for j in rank..n {
            if !work[(k, j)].is_zero() {
                let tok = GeneratorToken::Elem { i: k, j, t: -(work[(k, j)].clone() * piv_inv.clone()) };
                work = work.mul(&tok.matrix(n, &one)?)?;
                right.push(tok);
            }
        }
    }
    Ok(GaussReduction {
        left: GeneratorWord::new(n, left, one.clone()),
        right: GeneratorWord::new(n, right, one),
        diag: work,
    })
}

/// `M = b1 * P_w * b2` with `b1`, `b2` upper triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct Bruhat<F> {
    pub b1: Matrix<F>,
    /// Zero-based permutation: `P_w e_j = e_{w[j]}`.
    pub w: Vec<usize>,
    pub b2: Matrix<F>,
}

impl<F: Field> Bruhat<F> {
    pub fn perm_matrix(&self) -> Result<Matrix<F>> {
        perm_matrix(&self.w, self.b1.one().clone())
    }

    pub fn reconstruct(&self) -> Result<Matrix<F>> {
        self.b1.mul(&self.perm_matrix()?)?.mul(&self.b2)
    }
}

/// Bruhat decomposition of an invertible matrix.
///
/// Rows are processed bottom-up. In each row the pivot is the first nonzero
/// entry among the columns not yet used; entries above it are cleared by
/// adding multiples of the pivot row to higher rows (left multiplication by
/// upper unitriangular `x_ij`, `i < j`), and entries to its right by adding
/// multiples of the pivot column to later columns (right multiplication by
/// upper unitriangular `x_ij`). What remains is a monomial matrix `D P_w`,
/// and `D` is absorbed into `b1`.
pub fn bruhat<F: Field>(m: &Matrix<F>) -> Result<Bruhat<F>> {
    let n = require_square(m)?;
    let one = m.one().clone();
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let mut work = m.clone();
    // Invariant: m = l_inv * work * r_inv.
    let mut l_inv = Matrix::identity(n, one.clone());
    let mut r_inv = Matrix::identity(n, one.clone());
    let mut used = vec![false; n];
    let mut w = vec![0; n];
    for i in (0..n).rev() {
        let j =
            (0..n).find(|&j| !used[j] && !work[(i, j)].is_zero()).expect("invertible matrix has a pivot in every row");
        used[j] = true;
        w[j] = i;
        let piv_inv = work[(i, j)].try_inv()?;
        for r in 0..i {
            if !work[(r, j)].is_zero() {
                let t = work[(r, j)].clone() * piv_inv.clone();
                work = Matrix::elementary(n, r, i, &-t.clone()).mul(&work)?;
                l_inv = l_inv.mul(&Matrix::elementary(n, r, i, &t))?;
            }
        }
        for c in j + 1..n {
            if !work[(i, c)].is_zero() {
                let t = work[(i, c)].clone() * piv_inv.clone();
                work = work.mul(&Matrix::elementary(n, j, c, &-t.clone()))?;
                r_inv = Matrix::elementary(n, j, c, &t).mul(&r_inv)?;
            }
        }
    }
    let mut d = Matrix::zero(n, n, one.clone());
    for (j, &i) in w.iter().enumerate() {
        d[(i, i)] = work[(i, j)].clone();
    }
    Ok(Bruhat { b1: l_inv.mul(&d)?, w, b2: r_inv })
}

/// A flag of type `partition` in `k^n`: `V_i` is spanned by the first
/// `n_1 + ... + n_i` columns of `basis` (the identity for the standard flag).
#[derive(Clone, Debug, PartialEq)]
pub struct Flag<F> {
    pub partition: Vec<usize>,
    pub basis: Option<Matrix<F>>,
}

impl<F: Field> Flag<F> {
    pub fn standard(partition: Vec<usize>) -> Result<Self> {
        validate_partition(&partition)?;
        Ok(Flag { partition, basis: None })
    }

    pub fn with_basis(partition: Vec<usize>, basis: Matrix<F>) -> Result<Self> {
        validate_partition(&partition)?;
        let n: usize = partition.iter().sum();
        if basis.rows() != n || basis.cols() != n {
            return Err(Error::SizeMismatch(format!("basis must be {n}x{n}")));
        }
        if basis.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Flag { partition, basis: Some(basis) })
    }

    pub fn dim(&self) -> usize {
        self.partition.iter().sum()
    }

    /// The image flag `g F`.
    pub fn act(&self, g: &Matrix<F>) -> Result<Flag<F>> {
        let basis = match &self.basis {
            Some(b) => g.mul(b)?,
            None => g.clone(),
        };
        Flag::with_basis(self.partition.clone(), basis)
    }

    /// Spanning columns for each `V_i`.
    pub fn subspaces(&self, one: &F) -> Vec<Matrix<F>> {
        let n = self.dim();
        let basis = self.basis.clone().unwrap_or_else(|| Matrix::identity(n, one.clone()));
        let rows: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        let mut upto = 0;
        for &ni in &self.partition {
            upto += ni;
            let cols: Vec<usize> = (0..upto).collect();
            out.push(basis.submatrix(&rows, &cols));
        }
        out
    }
}

fn validate_partition(partition: &[usize]) -> Result<()> {
    if partition.is_empty() || partition.contains(&0) {
        return Err(Error::InvalidSpec(format!("{partition:?} is not a composition")));
    }
    Ok(())
}

/// The composition classifying the `GL_n` orbit of a flag, read off from the
/// dimensions of its subspaces.
pub fn flag_orbit_type<F: Field>(flag: &Flag<F>, one: &F) -> Result<Vec<usize>> {
    let mut prev = 0;
    let mut out = Vec::new();
    for v in flag.subspaces(one) {
        let d = v.rank()?;
        out.push(d - prev);
        prev = d;
    }
    Ok(out)
}

/// All ordered compositions of `n`, in lexicographic order.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn block_of(partition: &[usize]) -> Vec<usize> {
    partition.iter().enumerate().flat_map(|(b, &len)| std::iter::repeat_n(b, len)).collect()
}

/// Whether `m` stabilizes every subspace of the flag.
pub fn parabolic_membership<F: Field>(m: &Matrix<F>, flag: &Flag<F>) -> Result<bool> {
    let n = require_square(m)?;
    if n != flag.dim() {
        return Err(Error::SizeMismatch(format!("{n}x{n} matrix for a flag in dimension {}", flag.dim())));
    }
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let local = match &flag.basis {
        Some(b) => b.inverse()?.mul(m)?.mul(b)?,
        None => m.clone(),
    };
    let block = block_of(&flag.partition);
    Ok((0..n).all(|i| (0..n).all(|j| block[i] <= block[j] || local[(i, j)].is_zero())))
}

/// `m = levi * unip` for `m` in the standard parabolic of `flag`.
pub fn levi_split<F: Field>(m: &Matrix<F>, flag: &Flag<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    if flag.basis.is_some() {
        return Err(Error::InvalidSpec("levi_split expects a standard flag".into()));
    }
    if !parabolic_membership(m, flag)? {
        return Err(Error::NonMember("matrix does not preserve the flag".into()));
    }
    let n = m.rows();
    let block = block_of(&flag.partition);
    let mut levi = Matrix::zero(n, n, m.one().clone());
    for i in 0..n {
        for j in 0..n {
            if block[i] == block[j] {
                levi[(i, j)] = m[(i, j)].clone();
            }
        }
    }
    let unip = levi.inverse()?.mul(m)?;
    Ok((levi, unip))
}

/// Supported field automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldAutomorphism {
    Identity,
    /// `x0 + x1 w -> x0 - x1 w` on a quadratic étale algebra.
    EtaleConjugation,
}

impl FieldAutomorphism {
    pub fn apply(&self, x: &FieldScalar) -> Result<FieldScalar> {
        match self {
            FieldAutomorphism::Identity => Ok(x.clone()),
            FieldAutomorphism::EtaleConjugation => Ok(etale_conj_norm(x)?.0),
        }
    }
}

/// Automorphisms of `SL_2(k)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Sl2Automorphism {
    /// `M -> g M g^-1`.
    Inner(Matrix<FieldScalar>),
    /// `M -> (M^t)^-1`.
    Graph,
    /// Entrywise application of a field automorphism.
    Field(FieldAutomorphism),
}

pub fn sl2_automorphism(kind: &Sl2Automorphism, m: &Matrix<FieldScalar>) -> Result<Matrix<FieldScalar>> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::SizeMismatch("SL_2 automorphisms act on 2x2 matrices".into()));
    }
    let det = m.det()?;
    if !det.is_one() {
        return Err(Error::DeterminantNotOne(det.to_string()));
    }
    match kind {
        Sl2Automorphism::Inner(g) => g.mul(m)?.mul(&g.inverse()?),
        Sl2Automorphism::Graph => m.transpose().inverse(),
        Sl2Automorphism::Field(sigma) => {
            let rows = m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| sigma.apply(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(rows, m.one().clone())
        }
    }
}
