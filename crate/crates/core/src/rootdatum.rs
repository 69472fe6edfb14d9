//! Root data realized on `X = Y = Z^rank` with the dot-product pairing.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classical::{FormFamily, FormSpec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Largest Weyl group enumerated by [`weyl_closure`].
pub const WEYL_CLOSURE_BOUND: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    SL2,
    PGL2,
    GL(usize),
    Sp(usize),
    SOeven(usize),
    SOodd(usize),
}

impl RootType {
    /// Parses `sl2`, `pgl2`, `gl`, `sp`, `soeven`, `soodd`; `n` is the matrix
    /// size for `gl` and the rank `l` for the others.
    pub fn parse(name: &str, n: Option<usize>) -> Result<Self> {
        let need = || n.ok_or_else(|| Error::InvalidRank(format!("type '{name}' needs a rank")));
        match name.to_ascii_lowercase().as_str() {
            "sl2" => Ok(RootType::SL2),
            "pgl2" => Ok(RootType::PGL2),
            "gl" | "gln" => Ok(RootType::GL(need()?)),
            "sp" => Ok(RootType::Sp(need()?)),
            "soeven" => Ok(RootType::SOeven(need()?)),
            "soodd" => Ok(RootType::SOodd(need()?)),
            _ => Err(Error::Parse(format!("unknown root datum type '{name}'"))),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::SL2 => write!(f, "SL2"),
            RootType::PGL2 => write!(f, "PGL2"),
            RootType::GL(n) => write!(f, "GL{n}"),
            RootType::Sp(l) => write!(f, "Sp{}", 2 * l),
            RootType::SOeven(l) => write!(f, "SO{}", 2 * l),
            RootType::SOodd(l) => write!(f, "SO{}", 2 * l + 1),
        }
    }
}

/// `(X, R, Y, R∨)` with `roots[i]` paired to `coroots[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
}

pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn unit(rank: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = c;
    v
}

fn combo(rank: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; rank];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

impl RootDatum {
    /// Checks that the lists are paired and every vector has length `rank`.
    pub fn new(rank: usize, roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(Error::InvalidSpec(format!("{} roots but {} coroots", roots.len(), coroots.len())));
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != rank) {
            return Err(Error::InvalidSpec(format!("every vector must have length {rank}")));
        }
        Ok(RootDatum { rank, roots, coroots })
    }

    pub fn build(ty: RootType) -> Result<Self> {
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut push = |r: Vec<i64>, c: Vec<i64>| {
            roots.push(r);
            coroots.push(c);
        };
        let rank = match ty {
            RootType::SL2 => {
                push(vec![2], vec![1]);
                push(vec![-2], vec![-1]);
                1
            }
            RootType::PGL2 => {
                push(vec![1], vec![2]);
                push(vec![-1], vec![-2]);
                1
            }
            RootType::GL(n) => {
                if n < 2 {
                    return Err(Error::InvalidRank(format!("GL_n needs n >= 2, got {n}")));
                }
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let v = combo(n, &[(i, 1), (j, -1)]);
                            push(v.clone(), v);
                        }
                    }
                }
                n
            }
            RootType::Sp(l) | RootType::SOeven(l) | RootType::SOodd(l) => {
                if l < 1 {
                    return Err(Error::InvalidRank(format!("rank l must be at least 1, got {l}")));
                }
                for i in 0..l {
                    for j in 0..l {
                        if i != j {
                            let v = combo(l, &[(i, 1), (j, -1)]);
                            push(v.clone(), v);
                        }
                    }
                }
                for i in 0..l {
                    for j in (i + 1)..l {
                        for s in [1, -1] {
                            let v = combo(l, &[(i, s), (j, s)]);
                            push(v.clone(), v);
                        }
                    }
                }
                for i in 0..l {
                    for s in [1, -1] {
                        match ty {
                            RootType::Sp(_) => push(unit(l, i, 2 * s), unit(l, i, s)),
                            RootType::SOodd(_) => push(unit(l, i, s), unit(l, i, 2 * s)),
                            _ => {}
                        }
                    }
                }
                l
            }
        };
        Ok(RootDatum { rank, roots, coroots })
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == root)
    }

    /// `s_α(x) = x - <x, α∨> α`.
    pub fn reflect(&self, k: usize, x: &[i64]) -> Vec<i64> {
        let c = pairing(x, &self.coroots[k]);
        x.iter().zip(&self.roots[k]).map(|(xi, ai)| xi - c * ai).collect()
    }

    /// `s_α∨(y) = y - <α, y> α∨`.
    pub fn coreflect(&self, k: usize, y: &[i64]) -> Vec<i64> {
        let c = pairing(&self.roots[k], y);
        y.iter().zip(&self.coroots[k]).map(|(yi, ai)| yi - c * ai).collect()
    }

    /// Matrix of `s_α` on `X`, acting on column vectors: `I - α α∨ᵀ`.
    pub fn reflection(&self, k: usize) -> WeylElement {
        let r = self.rank;
        let mut m = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                m[i * r + j] = i64::from(i == j) - self.roots[k][i] * self.coroots[k][j];
            }
        }
        WeylElement { rank: r, matrix: m }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroRoot { index: usize },
    DuplicateRoot { index: usize, root: Vec<i64> },
    PairingNotTwo { index: usize, root: Vec<i64>, coroot: Vec<i64>, value: i64 },
    RootsNotStable { reflection: usize, root: Vec<i64>, image: Vec<i64> },
    CorootsNotStable { reflection: usize, coroot: Vec<i64>, image: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// First violation found, with its witness.
    pub violation: Option<Violation>,
}

/// Checks the root datum axioms, stopping at the first violation.
pub fn validate(d: &RootDatum) -> ValidationReport {
    let fail = |v| ValidationReport { valid: false, violation: Some(v) };
    let mut seen = HashSet::new();
    for (k, root) in d.roots.iter().enumerate() {
        if root.iter().all(|&c| c == 0) {
            return fail(Violation::ZeroRoot { index: k });
        }
        if !seen.insert(root.clone()) {
            return fail(Violation::DuplicateRoot { index: k, root: root.clone() });
        }
        let value = pairing(root, &d.coroots[k]);
        if value != 2 {
            return fail(Violation::PairingNotTwo {
                index: k,
                root: root.clone(),
                coroot: d.coroots[k].clone(),
                value,
            });
        }
    }
    let coroot_set: HashSet<&Vec<i64>> = d.coroots.iter().collect();
    for k in 0..d.roots.len() {
        for root in &d.roots {
            let image = d.reflect(k, root);
            if !seen.contains(&image) {
                return fail(Violation::RootsNotStable { reflection: k, root: root.clone(), image });
            }
        }
        for coroot in &d.coroots {
            let image = d.coreflect(k, coroot);
            if !coroot_set.contains(&image) {
                return fail(Violation::CorootsNotStable { reflection: k, coroot: coroot.clone(), image });
            }
        }
    }
    ValidationReport { valid: true, violation: None }
}

/// Integer matrix acting on `X` (row-major, column-vector convention).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    pub rank: usize,
    pub matrix: Vec<i64>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        WeylElement { rank, matrix }
    }

    pub fn compose(&self, rhs: &WeylElement) -> WeylElement {
        let r = self.rank;
        let mut m = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.matrix[i * r + k];
                if a != 0 {
                    for j in 0..r {
                        m[i * r + j] += a * rhs.matrix[k * r + j];
                    }
                }
            }
        }
        WeylElement { rank: r, matrix: m }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let r = self.rank;
        (0..r).map(|i| (0..r).map(|j| self.matrix[i * r + j] * x[j]).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    pub order: usize,
}

pub fn weyl_closure(d: &RootDatum) -> Result<WeylGroup> {
    weyl_closure_bounded(d, WEYL_CLOSURE_BOUND)
}

/// Breadth-first closure of the simple reflections of every root. Elements are
/// listed by generation and lexicographically within a generation.
pub fn weyl_closure_bounded(d: &RootDatum, bound: usize) -> Result<WeylGroup> {
    let mut gens: Vec<WeylElement> = (0..d.roots.len()).map(|k| d.reflection(k)).collect();
    gens.sort();
    gens.dedup();
    let id = WeylElement::identity(d.rank);
    let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
    let mut elements = vec![id.clone()];
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &gens {
                let ws = w.compose(s);
                if seen.insert(ws.clone()) {
                    if seen.len() > bound {
                        return Err(Error::ClosureBoundExceeded(bound));
                    }
                    next.push(ws);
                }
            }
        }
        next.sort();
        elements.extend(next.iter().cloned());
        frontier = next;
    }
    let order = elements.len();
    Ok(WeylGroup { elements, order })
}

fn to_rational_matrix(cols: &[&Vec<i64>], rank: usize) -> Matrix<BigRational> {
    let one = BigRational::one();
    let mut m = Matrix::zero(rank, cols.len(), one);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..rank {
            m[(i, j)] = BigRational::from_integer(BigInt::from(col[i]));
        }
    }
    m
}

/// Coefficients of every root in the given simple roots, or
/// [`Error::NotSimpleSystem`] if some root has mixed signs or lies outside
/// their span.
pub fn simple_coordinates(d: &RootDatum, simple: &[usize]) -> Result<Vec<Vec<i64>>> {
    if simple.iter().any(|&k| k >= d.roots.len()) {
        return Err(Error::IndexError(format!("root index out of range (have {})", d.roots.len())));
    }
    let cols: Vec<&Vec<i64>> = simple.iter().map(|&k| &d.roots[k]).collect();
    let a = to_rational_matrix(&cols, d.rank);
    if a.rank()? != simple.len() {
        return Err(Error::NotSimpleSystem("simple roots are linearly dependent".into()));
    }
    let mut out = Vec::new();
    for root in &d.roots {
        let b: Vec<BigRational> = root.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let Some(c) = a.solve(&b)? else {
            return Err(Error::NotSimpleSystem(format!("root {root:?} is outside the span")));
        };
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotSimpleSystem(format!("root {root:?} has non-integral coordinates")));
        }
        let nonneg = c.iter().all(|x| !x.is_negative());
        let nonpos = c.iter().all(|x| !x.is_positive());
        if !nonneg && !nonpos {
            return Err(Error::NotSimpleSystem(format!("root {root:?} mixes signs")));
        }
        out.push(c.iter().map(|x| x.to_integer().to_i64().expect("small coefficient")).collect());
    }
    Ok(out)
}

/// `C[i][j] = <α_i, α_j∨>` for the given simple roots.
pub fn cartan_matrix(d: &RootDatum, simple: &[usize]) -> Result<Vec<Vec<i64>>> {
    simple_coordinates(d, simple)?;
    Ok(simple.iter().map(|&i| simple.iter().map(|&j| pairing(&d.roots[i], &d.coroots[j])).collect()).collect())
}

/// Simple roots for the positive system cut out by a lexicographic
/// functional, ordered by decreasing height under that functional.
pub fn default_simple_roots(d: &RootDatum) -> Vec<usize> {
    let base = 2 * d.roots.iter().flatten().map(|c| c.abs()).max().unwrap_or(0) as i128 + 1;
    let height = |v: &[i64]| v.iter().fold(0i128, |acc, &c| acc * base + c as i128);
    let positive: Vec<usize> = (0..d.roots.len()).filter(|&k| height(&d.roots[k]) > 0).collect();
    let positive_set: HashSet<&Vec<i64>> = positive.iter().map(|&k| &d.roots[k]).collect();
    let mut simple: Vec<usize> = positive
        .iter()
        .copied()
        .filter(|&k| {
            !positive.iter().any(|&a| {
                let rest: Vec<i64> = d.roots[k].iter().zip(&d.roots[a]).map(|(x, y)| x - y).collect();
                positive_set.contains(&rest)
            })
        })
        .collect();
    simple.sort_by_key(|&k| std::cmp::Reverse(height(&d.roots[k])));
    simple
}

type TorusModel = (Vec<Vec<i64>>, Vec<(String, Matrix<BigRational>)>);

/// Weights of `X` attached to each row of the natural representation, and the
/// labelled Lie algebra basis used by [`ad_weights`].
fn torus_model(ty: RootType) -> Result<TorusModel> {
    let one = BigRational::one();
    match ty {
        RootType::SL2 => {
            let unit = |i, j| Matrix::unit(2, i, j, &one);
            let h = unit(0, 0).sub(&unit(1, 1))?;
            Ok((vec![vec![1], vec![-1]], vec![("h".into(), h), ("e12".into(), unit(0, 1)), ("e21".into(), unit(1, 0))]))
        }
        RootType::PGL2 => {
            let unit = |i, j| Matrix::unit(2, i, j, &one);
            Ok((
                vec![vec![1], vec![0]],
                vec![("e11".into(), unit(0, 0)), ("e12".into(), unit(0, 1)), ("e21".into(), unit(1, 0))],
            ))
        }
        RootType::GL(n) => {
            let rows = (0..n).map(|i| unit(n, i, 1)).collect();
            let mut basis = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    basis.push((format!("e{}{}", i + 1, j + 1), Matrix::unit(n, i, j, &one)));
                }
            }
            Ok((rows, basis))
        }
        RootType::Sp(l) | RootType::SOeven(l) | RootType::SOodd(l) => {
            let family = match ty {
                RootType::Sp(_) => FormFamily::Sp2l,
                RootType::SOeven(_) => FormFamily::SOeven,
                _ => FormFamily::SOodd,
            };
            let form = FormSpec::new(family, l, one)?;
            let mut rows = vec![vec![0; l]; form.size()];
            for i in 1..=l as i64 {
                rows[form.row(i)?] = unit(l, i as usize - 1, 1);
                rows[form.row(-i)?] = unit(l, i as usize - 1, -1);
            }
            Ok((rows, form.lie_basis_labeled()))
        }
    }
}

const PRIMES: [u32; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

/// Weights of the adjoint action on a Lie algebra basis, found by conjugating
/// with a torus element built from distinct primes and factoring the scalar.
pub fn ad_weights(ty: RootType) -> Result<Vec<(String, Vec<i64>)>> {
    let rank = RootDatum::build(ty)?.rank;
    if rank > PRIMES.len() {
        return Err(Error::TooLarge("torus rank".into(), PRIMES.len() as u64));
    }
    let (row_weights, basis) = torus_model(ty)?;
    let prime_power = |w: &[i64]| {
        w.iter().zip(PRIMES).fold(BigRational::one(), |acc, (&e, p)| {
            let p = BigRational::from_integer(BigInt::from(p));
            acc * if e >= 0 { p.pow(e as i32) } else { p.recip().pow((-e) as i32) }
        })
    };
    let diag: Vec<BigRational> = row_weights.iter().map(|w| prime_power(w)).collect();
    let t = Matrix::diagonal(&diag, BigRational::one());
    let t_inv = t.inverse()?;
    let mut out = Vec::new();
    for (label, x) in basis {
        let conj = t.mul(&x)?.mul(&t_inv)?;
        let (r, c) = (0..x.rows())
            .flat_map(|r| (0..x.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !Zero::is_zero(&x[(r, c)]))
            .ok_or_else(|| Error::WeightExtractionFailure(format!("basis vector {label} is zero")))?;
        let scalar = conj[(r, c)].try_div(&x[(r, c)])?;
        if conj != x.scale(&scalar) {
            return Err(Error::WeightExtractionFailure(format!("{label} is not an eigenvector of the torus")));
        }
        out.push((
            label.clone(),
            factor_exponents(&scalar, rank).ok_or_else(|| {
                Error::WeightExtractionFailure(format!(
                    "scalar {scalar} for {label} is not a product of the torus primes"
                ))
            })?,
        ));
    }
    Ok(out)
}

fn factor_exponents(q: &BigRational, rank: usize) -> Option<Vec<i64>> {
    let mut num = q.numer().abs();
    let mut den = q.denom().clone();
    if q.is_negative() {
        return None;
    }
    let mut exps = vec![0; rank];
    for (k, p) in PRIMES.iter().take(rank).enumerate() {
        let p = BigInt::from(*p);
        while (&num % &p).is_zero() {
            num /= &p;
            exps[k] += 1;
        }
        while (&den % &p).is_zero() {
            den /= &p;
            exps[k] -= 1;
        }
    }
    (num.is_one() && den.is_one()).then_some(exps)
}

/// Multiset of nonzero weights, as counts per weight.
pub fn weight_multiset<'a>(weights: impl IntoIterator<Item = &'a Vec<i64>>) -> HashMap<Vec<i64>, usize> {
    let mut counts = HashMap::new();
    for w in weights {
        if w.iter().any(|&c| c != 0) {
            *counts.entry(w.clone()).or_insert(0) += 1;
        }
    }
    counts
}

/// Summary emitted by the command-line tool.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumSummary {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub weyl_order: usize,
    pub cartan: Vec<Vec<i64>>,
}

pub fn summarize(ty: RootType) -> Result<RootDatumSummary> {
    let d = RootDatum::build(ty)?;
    let weyl_order = weyl_closure(&d)?.order;
    let cartan = cartan_matrix(&d, &default_simple_roots(&d))?;
    Ok(RootDatumSummary { rank: d.rank, roots: d.roots, coroots: d.coroots, weyl_order, cartan })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_and_pgl2_are_dual() {
        let sl2 = RootDatum::build(RootType::SL2).unwrap();
        let pgl2 = RootDatum::build(RootType::PGL2).unwrap();
        assert_eq!(sl2.roots, pgl2.coroots);
        assert_eq!(sl2.coroots, pgl2.roots);
    }

    #[test]
    fn invalid_data_report_witnesses() {
        let d = RootDatum::new(1, vec![vec![1]], vec![vec![2]]).unwrap();
        let report = validate(&d);
        assert!(!report.valid);
        assert!(matches!(report.violation, Some(Violation::RootsNotStable { image, .. }) if image == vec![-1]));
        let d = RootDatum::new(1, vec![vec![1], vec![-1]], vec![vec![1], vec![-1]]).unwrap();
        assert!(matches!(validate(&d).violation, Some(Violation::PairingNotTwo { value: 1, .. })));
    }

    #[test]
    fn cartan_examples() {
        let sp2 = RootDatum::build(RootType::Sp(2)).unwrap();
        let simple = default_simple_roots(&sp2);
        assert_eq!(sp2.roots[simple[0]], vec![1, -1]);
        assert_eq!(sp2.roots[simple[1]], vec![0, 2]);
        assert_eq!(cartan_matrix(&sp2, &simple).unwrap(), vec![vec![2, -1], vec![-2, 2]]);
        let bad = [sp2.root_index(&[1, -1]).unwrap(), sp2.root_index(&[1, 1]).unwrap()];
        assert!(matches!(cartan_matrix(&sp2, &bad), Err(Error::NotSimpleSystem(_))));
    }

    #[test]
    fn sl2_adjoint_weight() {
        let w = ad_weights(RootType::SL2).unwrap();
        assert_eq!(w, vec![("h".into(), vec![0]), ("e12".into(), vec![2]), ("e21".into(), vec![-2])]);
    }

    #[test]
    fn closure_bound_is_enforced() {
        let d = RootDatum::build(RootType::GL(4)).unwrap();
        assert_eq!(weyl_closure_bounded(&d, 10), Err(Error::ClosureBoundExceeded(10)));
    }
}
