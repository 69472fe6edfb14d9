//! Symplectic and split orthogonal groups defined by a fixed form matrix.
//!
//! Indices follow the signed convention `1..l, -1..-l` (plus `0` for odd
//! orthogonal groups), mapped to rows `e_1..e_l, e_-1..e_-l`; the odd case
//! puts index `0` first.
//!
//! The generators `x_{i,-j}(t) = I + t(e_{i,-j} + e_{j,-i})` and their
//! transposes were checked against `J = [[0, I], [-I, 0]]` with no sign
//! change needed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormFamily {
    Sp2l,
    SOeven,
    SOodd,
}

impl FormFamily {
    pub fn parse(text: &str) -> Result<Self> {
        match text.to_ascii_lowercase().as_str() {
            "sp" | "sp2l" => Ok(FormFamily::Sp2l),
            "soeven" | "so_even" | "so2l" => Ok(FormFamily::SOeven),
            "soodd" | "so_odd" | "so2l+1" => Ok(FormFamily::SOodd),
            _ => Err(Error::Parse(format!("unknown form family '{text}'"))),
        }
    }
}

impl fmt::Display for FormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormFamily::Sp2l => "sp",
            FormFamily::SOeven => "soeven",
            FormFamily::SOodd => "soodd",
        })
    }
}

/// A classical group given by its rank and the Gram matrix of its form.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSpec<F> {
    family: FormFamily,
    l: usize,
    j: Matrix<F>,
    char_two: bool,
}

impl<F: Field> FormSpec<F> {
    /// Orthogonal families require characteristic other than 2; symplectic
    /// groups over characteristic 2 are allowed and flagged.
    pub fn new(family: FormFamily, l: usize, one: F) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidRank("l must be at least 1".into()));
        }
        let char_two = (one.clone() + one.clone()).is_zero();
        if char_two && family != FormFamily::Sp2l {
            return Err(Error::CharacteristicTooSmall("orthogonal groups need characteristic other than 2".into()));
        }
        let zero = one.zero_like();
        let offset = usize::from(family == FormFamily::SOodd);
        let n = 2 * l + offset;
        let mut j = Matrix::zero(n, n, one.clone());
        if offset == 1 {
            j[(0, 0)] = one.clone();
        }
        for i in 0..l {
            j[(offset + i, offset + l + i)] = one.clone();
            j[(offset + l + i, offset + i)] = match family {
                FormFamily::Sp2l => zero.clone() - one.clone(),
                _ => one.clone(),
            };
        }
        Ok(FormSpec { family, l, j, char_two })
    }

    pub fn sp(l: usize, one: F) -> Result<Self> {
        Self::new(FormFamily::Sp2l, l, one)
    }

    pub fn family(&self) -> FormFamily {
        self.family
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn j(&self) -> &Matrix<F> {
        &self.j
    }

    /// Set for symplectic forms over a field of characteristic 2.
    pub fn char_two_warning(&self) -> bool {
        self.char_two
    }

    pub fn size(&self) -> usize {
        self.j.rows()
    }

    fn one(&self) -> &F {
        self.j.one()
    }

    /// Row of a signed index.
    pub fn row(&self, index: i64) -> Result<usize> {
        let l = self.l as i64;
        let offset = usize::from(self.family == FormFamily::SOodd);
        match index {
            0 if offset == 1 => Ok(0),
            i if (1..=l).contains(&i) => Ok(offset + (i - 1) as usize),
            i if (-l..=-1).contains(&i) => Ok(offset + self.l + (-i - 1) as usize),
            _ => {
                Err(Error::IndexError(format!("index {index} outside the range of {} with l={}", self.family, self.l)))
            }
        }
    }

    /// Matrix unit `e_{i,j}` in signed indices.
    pub fn e(&self, i: i64, j: i64) -> Result<Matrix<F>> {
        Ok(Matrix::unit(self.size(), self.row(i)?, self.row(j)?, self.one()))
    }

    fn check_size(&self, m: &Matrix<F>) -> Result<()> {
        if m.rows() != self.size() || m.cols() != self.size() {
            return Err(Error::SizeMismatch(format!(
                "expected {0}x{0} for {1} with l={2}, got {3}x{4}",
                self.size(),
                self.family,
                self.l,
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    /// `ᵗM J M = J`.
    pub fn group_member(&self, m: &Matrix<F>) -> Result<bool> {
        self.check_size(m)?;
        Ok(m.transpose().mul(&self.j)?.mul(m)? == self.j)
    }

    /// `ᵗX J = -J X`.
    pub fn lie_member(&self, x: &Matrix<F>) -> Result<bool> {
        self.check_size(x)?;
        Ok(x.transpose().mul(&self.j)? == self.j.mul(x)?.neg())
    }

    /// A basis of the Lie algebra in a fixed order: the `e_{i,j} - e_{-j,-i}`
    /// family, the off-diagonal block families, then (odd case) the vectors
    /// through index `0`, and finally the Cartan diagonals.
    pub fn lie_basis(&self) -> Vec<Matrix<F>> {
        self.lie_basis_labeled().into_iter().map(|(_, m)| m).collect()
    }

    /// [`lie_basis`](Self::lie_basis) with a text label per vector.
    pub fn lie_basis_labeled(&self) -> Vec<(String, Matrix<F>)> {
        let l = self.l as i64;
        let sp = self.family == FormFamily::Sp2l;
        let e = |i: i64, j: i64| self.e(i, j).expect("index in range");
        let sign = if sp { "+" } else { "-" };
        let combine =
            |a: Matrix<F>, b: Matrix<F>| if sp { a.add(&b).expect("same size") } else { a.sub(&b).expect("same size") };
        let mut out = Vec::new();
        for i in 1..=l {
            for j in 1..=l {
                if i != j {
                    out.push((format!("e[{i},{j}]-e[{},{}]", -j, -i), e(i, j).sub(&e(-j, -i)).expect("same size")));
                }
            }
        }
        for i in 1..=l {
            for j in (i + 1)..=l {
                out.push((format!("e[{i},{}]{sign}e[{j},{}]", -j, -i), combine(e(i, -j), e(j, -i))));
                out.push((format!("e[{},{j}]{sign}e[{},{i}]", -i, -j), combine(e(-i, j), e(-j, i))));
            }
        }
        if sp {
            for i in 1..=l {
                out.push((format!("e[{i},{}]", -i), e(i, -i)));
                out.push((format!("e[{},{i}]", -i), e(-i, i)));
            }
        }
        if self.family == FormFamily::SOodd {
            for i in 1..=l {
                out.push((format!("e[{i},0]-e[0,{}]", -i), e(i, 0).sub(&e(0, -i)).expect("same size")));
                out.push((format!("e[0,{i}]-e[{},0]", -i), e(0, i).sub(&e(-i, 0)).expect("same size")));
            }
        }
        for i in 1..=l {
            out.push((format!("e[{i},{i}]-e[{},{}]", -i, -i), e(i, i).sub(&e(-i, -i)).expect("same size")));
        }
        out
    }

    /// Expected Lie algebra dimension.
    pub fn lie_dimension(&self) -> usize {
        let l = self.l;
        match self.family {
            FormFamily::Sp2l | FormFamily::SOodd => 2 * l * l + l,
            FormFamily::SOeven => 2 * l * l - l,
        }
    }

    /// `λ` with `ᵗM J M = λ J`.
    pub fn similitude_factor(&self, m: &Matrix<F>) -> Result<F> {
        self.check_size(m)?;
        let lhs = m.transpose().mul(&self.j)?.mul(m)?;
        let (r, c) = (self.row(1)?, self.row(-1)?);
        let lambda = lhs[(r, c)].try_div(&self.j[(r, c)])?;
        if lhs == self.j.scale(&lambda) {
            Ok(lambda)
        } else {
            Err(Error::NotSimilitude)
        }
    }
}

/// The five kinds of symplectic Chevalley generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpGenerator {
    /// `I + t(e_{i,j} - e_{-j,-i})`, `i != j`.
    LongIj,
    /// `I + t(e_{i,-j} + e_{j,-i})`, `i < j`.
    ShortPlusIj,
    /// `I + t(e_{-i,j} + e_{-j,i})`, `i < j`.
    ShortMinusIj,
    /// `I + t e_{i,-i}`.
    DiagIPos,
    /// `I + t e_{-i,i}`.
    DiagINeg,
}

impl SpGenerator {
    pub const ALL: [SpGenerator; 5] = [
        SpGenerator::LongIj,
        SpGenerator::ShortPlusIj,
        SpGenerator::ShortMinusIj,
        SpGenerator::DiagIPos,
        SpGenerator::DiagINeg,
    ];

    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "long_ij" => Ok(SpGenerator::LongIj),
            "short_plus_ij" => Ok(SpGenerator::ShortPlusIj),
            "short_minus_ij" => Ok(SpGenerator::ShortMinusIj),
            "diag_i_pos" => Ok(SpGenerator::DiagIPos),
            "diag_i_neg" => Ok(SpGenerator::DiagINeg),
            _ => Err(Error::Parse(format!("unknown generator kind '{text}'"))),
        }
    }

    /// Whether the generator lies in the upper triangular Borel subgroup.
    pub fn is_upper(&self, i: usize, j: usize) -> bool {
        match self {
            SpGenerator::LongIj => i < j,
            SpGenerator::ShortPlusIj | SpGenerator::DiagIPos => true,
            SpGenerator::ShortMinusIj | SpGenerator::DiagINeg => false,
        }
    }
}

/// Symplectic Chevalley generator with 1-based indices `i`, `j` in `1..=l`.
/// `j` is ignored for the diagonal kinds.
pub fn sp_chevalley<F: Field>(form: &FormSpec<F>, kind: SpGenerator, i: usize, j: usize, t: &F) -> Result<Matrix<F>> {
    if form.family != FormFamily::Sp2l {
        return Err(Error::InvalidSpec("symplectic generators need a symplectic form".into()));
    }
    let l = form.l;
    let in_range = |k: usize| (1..=l).contains(&k);
    let ok = match kind {
        SpGenerator::LongIj => in_range(i) && in_range(j) && i != j,
        SpGenerator::ShortPlusIj | SpGenerator::ShortMinusIj => in_range(i) && in_range(j) && i < j,
        SpGenerator::DiagIPos | SpGenerator::DiagINeg => in_range(i),
    };
    if !ok {
        return Err(Error::IndexError(format!("indices ({i},{j}) invalid for {kind:?} with l={l}")));
    }
    let (i, j) = (i as i64, j as i64);
    let x = match kind {
        SpGenerator::LongIj => form.e(i, j)?.sub(&form.e(-j, -i)?)?,
        SpGenerator::ShortPlusIj => form.e(i, -j)?.add(&form.e(j, -i)?)?,
        SpGenerator::ShortMinusIj => form.e(-i, j)?.add(&form.e(-j, i)?)?,
        SpGenerator::DiagIPos => form.e(i, -i)?,
        SpGenerator::DiagINeg => form.e(-i, i)?,
    };
    Matrix::identity(form.size(), form.one().clone()).add(&x.scale(t))
}

/// `diag(A, ᵗA⁻¹)`, the Levi embedding of `GL_l` into `Sp_2l`.
pub fn levi_embedding<F: Field>(a: &Matrix<F>) -> Result<Matrix<F>> {
    let inv_t = a.inverse()?.transpose();
    Ok(Matrix::block_diag(&[a.clone(), inv_t], a.one().clone()))
}
