//! `SL_2(Z)` as words in `S = [[0,-1],[1,0]]` and `U = [[1,1],[0,1]]`, and
//! reduction of rational points of the upper half plane to the standard
//! fundamental domain.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::split_matrix_literal;

/// Integer matrix `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl IntMatrix2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = IntMatrix2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        let det = &m.a * &m.d - &m.b * &m.c;
        if !det.is_one() {
            return Err(Error::DeterminantNotOne(det.to_string()));
        }
        Ok(m)
    }

    fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        IntMatrix2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn s() -> Self {
        Self::raw(BigInt::zero(), -BigInt::one(), BigInt::one(), BigInt::zero())
    }

    pub fn u() -> Self {
        Self::u_pow(&BigInt::one())
    }

    /// `T = S U = [[0,-1],[1,1]]`.
    pub fn t() -> Self {
        Self::s().mul(&Self::u())
    }

    pub fn u_pow(k: &BigInt) -> Self {
        Self::raw(BigInt::one(), k.clone(), BigInt::zero(), BigInt::one())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::raw(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    pub fn neg(&self) -> Self {
        Self::raw(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        self.is_identity() || self.neg().is_identity()
    }

    /// Parses `[[a,b],[c,d]]`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = split_matrix_literal(text)?;
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            return Err(Error::Parse(format!("expected a 2x2 matrix, got '{text}'")));
        }
        let int = |s: &str| s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("'{s}' is not an integer")));
        Self::new(int(&rows[0][0])?, int(&rows[0][1])?, int(&rows[1][0])?, int(&rows[1][1])?)
    }

    /// Möbius action `z ↦ (az + b)/(cz + d)` on a point of the upper half plane.
    pub fn act(&self, z: &RationalPoint) -> RationalPoint {
        let q = |n: &BigInt| BigRational::from_integer(n.clone());
        // (az+b)/(cz+d) = (az+b)(c z̄+d)/|cz+d|².
        let (x, y) = (&z.x, &z.y);
        let (a, b, c, d) = (q(&self.a), q(&self.b), q(&self.c), q(&self.d));
        let re_den = &c * x + &d;
        let im_den = &c * y;
        let den = &re_den * &re_den + &im_den * &im_den;
        let re_num = &a * x + &b;
        let im_num = &a * y;
        let re = (&re_num * &re_den + &im_num * &im_den) / &den;
        let im = (&im_num * &re_den - &re_num * &im_den) / &den;
        RationalPoint { x: re, y: im }
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    S,
    /// `U^k`, `k != 0`.
    U(BigInt),
}

/// `±` a product of syllables, read left to right as a matrix product.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SlWord {
    pub syllables: Vec<Syllable>,
    /// Whether the product is multiplied by `-I`.
    pub negate: bool,
}

impl SlWord {
    pub fn eval(&self) -> IntMatrix2 {
        let m = self.syllables.iter().fold(IntMatrix2::identity(), |acc, s| match s {
            Syllable::S => acc.mul(&IntMatrix2::s()),
            Syllable::U(k) => acc.mul(&IntMatrix2::u_pow(k)),
        });
        if self.negate {
            m.neg()
        } else {
            m
        }
    }

    /// Appends a syllable, merging powers of `U` and replacing `S S` by `-I`.
    pub fn push(&mut self, s: Syllable) {
        match (self.syllables.last_mut(), s) {
            (Some(Syllable::U(k)), Syllable::U(m)) => {
                *k += m;
                if k.is_zero() {
                    self.syllables.pop();
                }
            }
            (Some(Syllable::S), Syllable::S) => {
                self.syllables.pop();
                self.negate = !self.negate;
            }
            (_, Syllable::U(m)) if m.is_zero() => {}
            (_, s) => self.syllables.push(s),
        }
    }

    /// Number of `S` and `U^{±1}` letters.
    pub fn letter_count(&self) -> BigInt {
        self.syllables
            .iter()
            .map(|s| match s {
                Syllable::S => BigInt::one(),
                Syllable::U(k) => k.abs(),
            })
            .sum()
    }

    /// Parses whitespace-separated tokens `S`, `U`, `U^k`, `S^k`, `T`, `T^k`
    /// (with `T = SU`) and `-I`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut word = SlWord::default();
        for token in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if token == "-I" || token == "-1" {
                word.negate = !word.negate;
                continue;
            }
            if token == "I" || token == "1" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim_start_matches('(').trim_end_matches(')');
                    (b, e.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad exponent in '{token}'")))?)
                }
                None => (token, BigInt::one()),
            };
            match base {
                "U" => word.push(Syllable::U(exp)),
                "S" | "T" => {
                    // S has order 4 and T = SU has order 6.
                    let order = if base == "S" { 4 } else { 6 };
                    let e = exp.mod_floor(&BigInt::from(order));
                    let count: u32 = e.try_into().expect("small exponent");
                    for _ in 0..count {
                        word.push(Syllable::S);
                        if base == "T" {
                            word.push(Syllable::U(BigInt::one()));
                        }
                    }
                }
                _ => return Err(Error::Parse(format!("unknown generator '{token}'"))),
            }
        }
        Ok(word)
    }
}

impl fmt::Display for SlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.negate {
            parts.push("-I".to_string());
        }
        for s in &self.syllables {
            parts.push(match s {
                Syllable::S => "S".to_string(),
                Syllable::U(k) if k.is_one() => "U".to_string(),
                Syllable::U(k) => format!("U^{k}"),
            });
        }
        if parts.is_empty() {
            return f.write_str("I");
        }
        f.write_str(&parts.join(" "))
    }
}

/// Word in `S`, `U` evaluating to `m`.
///
/// Runs Euclid's algorithm on the first column: `U^{-q}` reduces `a` below
/// `|c|`, and `S⁻¹ = -S` swaps the entries. The quotient is `⌊|a|/|c|⌋` with
/// the sign of `a/c`, so the magnitudes follow the classical Euclidean
/// remainder sequence (a plain `⌊a/c⌋` can shrink `|c|` by one per step when
/// `a` and `c` have opposite signs). Once `c = 0` the matrix is `±U^k`.
pub fn su_decompose(m: &IntMatrix2) -> Result<SlWord> {
    let mut cur = IntMatrix2::new(m.a.clone(), m.b.clone(), m.c.clone(), m.d.clone())?;
    let mut word = SlWord::default();
    let s_inv = IntMatrix2::s().neg();
    while !cur.c.is_zero() {
        let q = &cur.a / &cur.c;
        cur = IntMatrix2::u_pow(&-&q).mul(&cur);
        word.push(Syllable::U(q));
        cur = s_inv.mul(&cur);
        word.push(Syllable::S);
    }
    // Now a = d = ±1 and cur = a U^{ab}.
    let sign = cur.a.clone();
    word.push(Syllable::U(&cur.b * &sign));
    if sign.is_negative() {
        word.negate = !word.negate;
    }
    Ok(word)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub s_squared_is_minus_identity: bool,
    pub su_cubed_is_minus_identity: bool,
    pub s_fourth_is_identity: bool,
    /// Largest `n` checked for `(SUS)^n` and `(USU)^n`.
    pub max_power: u32,
    /// `(SUS)^n` and `(USU)^n` are not `±I` for `1 ≤ n ≤ max_power`.
    pub infinite_order_powers: bool,
}

impl RelationsReport {
    pub fn all_hold(&self) -> bool {
        self.s_squared_is_minus_identity
            && self.su_cubed_is_minus_identity
            && self.s_fourth_is_identity
            && self.infinite_order_powers
    }
}

pub fn relations_check() -> RelationsReport {
    let s = IntMatrix2::s();
    let u = IntMatrix2::u();
    let minus_id = IntMatrix2::identity().neg();
    let sus = s.mul(&u).mul(&s);
    let usu = u.mul(&s).mul(&u);
    let max_power = 50;
    let mut infinite = true;
    let (mut p, mut q) = (IntMatrix2::identity(), IntMatrix2::identity());
    for _ in 1..=max_power {
        p = p.mul(&sus);
        q = q.mul(&usu);
        infinite &= !p.is_plus_minus_identity() && !q.is_plus_minus_identity();
    }
    RelationsReport {
        s_squared_is_minus_identity: s.pow(2) == minus_id,
        su_cubed_is_minus_identity: s.mul(&u).pow(3) == minus_id,
        s_fourth_is_identity: s.pow(4).is_identity(),
        max_power,
        infinite_order_powers: infinite,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeProductReport {
    pub words_checked: usize,
    /// First alternating word found to be `±I`.
    pub counterexample: Option<String>,
}

/// Evaluates every nonempty alternating word in `s` and `r^{±1}`, `r = SU`,
/// with at most `max_syllables` syllables and records any that is `±I`.
pub fn free_product_check(max_syllables: usize) -> FreeProductReport {
    let s = IntMatrix2::s();
    let r = IntMatrix2::t();
    let r_inv = r.inverse();
    let mut checked = 0;
    // Each entry: (matrix, text, last syllable was s).
    let mut layer: Vec<(IntMatrix2, String, bool)> =
        vec![(s.clone(), "s".into(), true), (r.clone(), "r".into(), false), (r_inv.clone(), "r^-1".into(), false)];
    for len in 1..=max_syllables {
        for (m, text, _) in &layer {
            checked += 1;
            if m.is_plus_minus_identity() {
                return FreeProductReport { words_checked: checked, counterexample: Some(text.clone()) };
            }
        }
        if len == max_syllables {
            break;
        }
        let mut next = Vec::new();
        for (m, text, last_s) in &layer {
            if *last_s {
                next.push((m.mul(&r), format!("{text} r"), false));
                next.push((m.mul(&r_inv), format!("{text} r^-1"), false));
            } else {
                next.push((m.mul(&s), format!("{text} s"), true));
            }
        }
        layer = next;
    }
    FreeProductReport { words_checked: checked, counterexample: None }
}

/// `x + iy` with rational coordinates and `y > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Result<Self> {
        if !y.is_positive() {
            return Err(Error::NotUpperHalfPlane);
        }
        Ok(RationalPoint { x, y })
    }

    pub fn abs_squared(&self) -> BigRational {
        &self.x * &self.x + &self.y * &self.y
    }

    /// `|x| ≤ 1/2` and `|z|² ≥ 1`.
    pub fn in_fundamental_domain(&self) -> bool {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        self.x.abs() <= half && self.abs_squared() >= BigRational::one()
    }

    /// `z ↦ z + k`.
    pub fn translate(&self, k: &BigInt) -> Self {
        RationalPoint { x: &self.x + BigRational::from_integer(k.clone()), y: self.y.clone() }
    }

    /// `z ↦ -1/z`.
    pub fn invert(&self) -> Self {
        let n = self.abs_squared();
        RationalPoint { x: -&self.x / &n, y: &self.y / &n }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// `z ↦ z + k` (the matrix `U^k`).
    Translate(BigInt),
    /// `z ↦ -1/z` (the matrix `S`).
    Invert,
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::Translate(k) => write!(f, "U^{k}"),
            ReductionStep::Invert => f.write_str("S"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub point: RationalPoint,
    /// Steps in the order they are applied.
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    /// Applies the steps to `z` one by one.
    pub fn replay(&self, z: &RationalPoint) -> RationalPoint {
        self.steps.iter().fold(z.clone(), |p, step| match step {
            ReductionStep::Translate(k) => p.translate(k),
            ReductionStep::Invert => p.invert(),
        })
    }

    /// The matrix `g` with `g·z = z'`.
    pub fn matrix(&self) -> IntMatrix2 {
        self.steps.iter().fold(IntMatrix2::identity(), |g, step| match step {
            ReductionStep::Translate(k) => IntMatrix2::u_pow(k).mul(&g),
            ReductionStep::Invert => IntMatrix2::s().mul(&g),
        })
    }
}

/// Alternately translates into `|x| ≤ 1/2` and inverts while `|z| < 1`.
/// Each inversion strictly increases the imaginary part.
pub fn reduce_to_fundamental_domain(z: &RationalPoint) -> Result<Reduction> {
    if !z.y.is_positive() {
        return Err(Error::NotUpperHalfPlane);
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut p = z.clone();
    let mut steps = Vec::new();
    loop {
        if p.x.abs() > half {
            let k = -(&p.x + &half).floor().to_integer();
            p = p.translate(&k);
            steps.push(ReductionStep::Translate(k));
        }
        if p.abs_squared() < BigRational::one() {
            p = p.invert();
            steps.push(ReductionStep::Invert);
        } else {
            break;
        }
    }
    Ok(Reduction { point: p, steps })
}
