//! Exact integer linear algebra for the parabolic subgroup `ℤ² ⋊ SL(2, ℤ)`.
//!
//! An [`AffineElement`] `(v, A)` is the 3×3 block matrix `[A v; 0 1]`; it acts on
//! column vectors by `x ↦ A·x + v` and multiplies by `(v, A)(v', A') = (v + A·v', A·A')`.
//! All entries are arbitrary-precision: evaluating a word of length ~25
//! already overflows 64-bit entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::word::{enumerate_reduced, Generator, Letter, Word};

/// A point of `ℤ²`, or of `(ℤ/qℤ)²` when `modulus` is set. Residues are kept
/// in `[0, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub x: BigInt,
    pub y: BigInt,
    modulus: Option<u64>,
}

impl Vec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Vec2 {
            x: x.into(),
            y: y.into(),
            modulus: None,
        }
    }

    /// Residue pair mod `q`. Panics if `q < 2`.
    pub fn residue(x: impl Into<BigInt>, y: impl Into<BigInt>, q: u64) -> Self {
        Vec2::new(x, y).reduce(q)
    }

    pub fn zero() -> Self {
        Vec2::new(0, 0)
    }

    pub fn e1() -> Self {
        Vec2::new(1, 0)
    }

    pub fn e2() -> Self {
        Vec2::new(0, 1)
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Reduces into `[0, q)²` and tags the modulus.
    pub fn reduce(&self, q: u64) -> Vec2 {
        assert!(q >= 2, "modulus must be at least 2");
        if let Some(existing) = self.modulus {
            assert_eq!(existing, q, "mixing moduli {existing} and {q}");
        }
        let m = BigInt::from(q);
        Vec2 {
            x: self.x.mod_floor(&m),
            y: self.y.mod_floor(&m),
            modulus: Some(q),
        }
    }

    /// Drops the modulus tag, keeping the representatives.
    pub fn lift(&self) -> Vec2 {
        Vec2::new(self.x.clone(), self.y.clone())
    }

    fn combine_modulus(a: Option<u64>, b: Option<u64>) -> Option<u64> {
        match (a, b) {
            (Some(p), Some(q)) => {
                assert_eq!(p, q, "mixing moduli {p} and {q}");
                Some(p)
            }
            (m, None) | (None, m) => m,
        }
    }

    pub fn add(&self, other: &Vec2) -> Vec2 {
        let sum = Vec2::new(&self.x + &other.x, &self.y + &other.y);
        match Vec2::combine_modulus(self.modulus, other.modulus) {
            Some(q) => sum.reduce(q),
            None => sum,
        }
    }

    pub fn neg(&self) -> Vec2 {
        let n = Vec2::new(-&self.x, -&self.y);
        match self.modulus {
            Some(q) => n.reduce(q),
            None => n,
        }
    }

    /// Membership in `qℤ²`.
    pub fn is_divisible_by(&self, q: u64) -> bool {
        let m = BigInt::from(q);
        self.x.is_multiple_of(&m) && self.y.is_multiple_of(&m)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A 2×2 integer matrix `[a b; c d]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// `U = [1 2; 0 1]`.
    pub fn sanov_u() -> Self {
        Mat2::new(1, 2, 0, 1)
    }

    /// `V = [1 0; 2 1]`.
    pub fn sanov_v() -> Self {
        Mat2::new(1, 0, 2, 1)
    }

    pub fn of_letter(letter: Letter) -> Self {
        let m = match letter.generator {
            Generator::U => Mat2::sanov_u(),
            Generator::V => Mat2::sanov_v(),
        };
        if letter.inverted {
            m.inverse()
        } else {
            m
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_one()
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// `A·v`, reduced when `v` carries a modulus.
    pub fn mul_vec(&self, v: &Vec2) -> Vec2 {
        let r = Vec2::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y);
        match v.modulus {
            Some(q) => r.reduce(q),
            None => r,
        }
    }

    /// Inverse of a determinant-one matrix. Panics otherwise.
    pub fn inverse(&self) -> Mat2 {
        assert!(self.det().is_one(), "inverse of a matrix outside SL(2, Z)");
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn minus_identity(&self) -> Mat2 {
        Mat2 {
            a: &self.a - 1,
            b: self.b.clone(),
            c: self.c.clone(),
            d: &self.d - 1,
        }
    }

    /// Largest absolute entry, used in reports about coefficient growth.
    pub fn max_abs_entry(&self) -> BigInt {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// Element `(translation, linear)` of `ℤ² ⋊ SL(2, ℤ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub translation: Vec2,
    pub linear: Mat2,
}

impl AffineElement {
    pub fn new(translation: Vec2, linear: Mat2) -> Self {
        assert!(translation.modulus.is_none(), "affine translations are exact");
        AffineElement {
            translation,
            linear,
        }
    }

    pub fn identity() -> Self {
        AffineElement::new(Vec2::zero(), Mat2::identity())
    }

    /// Purely linear element `(0, A)`; with `U`, `V` these generate `H`.
    pub fn linear_only(linear: Mat2) -> Self {
        AffineElement::new(Vec2::zero(), linear)
    }

    /// Pure translation `(v, I)`.
    pub fn translation_only(v: Vec2) -> Self {
        AffineElement::new(v, Mat2::identity())
    }

    /// `û = (e₂, U)`, acting as `(x, y) ↦ (x + 2y, y + 1)`.
    pub fn u_hat() -> Self {
        AffineElement::new(Vec2::e2(), Mat2::sanov_u())
    }

    /// `v̂ = (e₁, V)`, acting as `(x, y) ↦ (x + 1, 2x + y)`.
    pub fn v_hat() -> Self {
        AffineElement::new(Vec2::e1(), Mat2::sanov_v())
    }

    pub fn of_letter(letter: Letter) -> Self {
        let g = match letter.generator {
            Generator::U => AffineElement::u_hat(),
            Generator::V => AffineElement::v_hat(),
        };
        if letter.inverted {
            g.inverse()
        } else {
            g
        }
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.linear.is_identity()
    }

    pub fn compose(&self, h: &AffineElement) -> AffineElement {
        AffineElement {
            translation: self.translation.add(&self.linear.mul_vec(&h.translation)),
            linear: self.linear.mul(&h.linear),
        }
    }

    /// `A·p + v`, reduced mod `q` when `p` lives in `(ℤ/qℤ)²`.
    pub fn apply(&self, p: &Vec2) -> Vec2 {
        let image = self.linear.mul_vec(&p.lift()).add(&self.translation);
        match p.modulus {
            Some(q) => image.reduce(q),
            None => image,
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let inv = self.linear.inverse();
        let t = inv.mul_vec(&self.translation).neg();
        AffineElement {
            translation: t,
            linear: inv,
        }
    }

    pub fn to_matrix3(&self) -> Matrix3 {
        let l = &self.linear;
        let t = &self.translation;
        let z = BigInt::zero;
        Matrix3 {
            rows: [
                [l.a.clone(), l.b.clone(), t.x.clone()],
                [l.c.clone(), l.d.clone(), t.y.clone()],
                [z(), z(), BigInt::one()],
            ],
        }
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_matrix3())
    }
}

/// A 3×3 integer matrix; used for the block form of parabolic elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix3 {
    pub rows: [[BigInt; 3]; 3],
}

impl Matrix3 {
    pub fn identity() -> Self {
        let e = |i: usize, j: usize| BigInt::from((i == j) as i32);
        Matrix3 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| e(i, j))),
        }
    }

    pub fn mul(&self, o: &Matrix3) -> Matrix3 {
        Matrix3 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..3).map(|k| &self.rows[i][k] * &o.rows[k][j]).sum())
            }),
        }
    }

    /// Bottom row equals `(0, 0, 1)`.
    pub fn is_parabolic(&self) -> bool {
        self.rows[2][0].is_zero() && self.rows[2][1].is_zero() && self.rows[2][2].is_one()
    }

    /// Reads back `(v, A)` from `[A v; 0 1]`, or `None` off the parabolic subgroup.
    pub fn to_affine(&self) -> Option<AffineElement> {
        if !self.is_parabolic() {
            return None;
        }
        let r = &self.rows;
        Some(AffineElement::new(
            Vec2::new(r[0][2].clone(), r[1][2].clone()),
            Mat2::new(r[0][0].clone(), r[0][1].clone(), r[1][0].clone(), r[1][1].clone()),
        ))
    }
}

impl fmt::Display for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("{} {} {}", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Image of `w` under `U ↦ [1 2; 0 1]`, `V ↦ [1 0; 2 1]`, leftmost letter as
/// leftmost factor.
pub fn eval_linear(w: &Word) -> Mat2 {
    w.letters()
        .iter()
        .fold(Mat2::identity(), |acc, l| acc.mul(&Mat2::of_letter(*l)))
}

/// Image of `w` in `K = ⟨û, v̂⟩`, computed with the semidirect product law.
pub fn eval_affine(w: &Word) -> AffineElement {
    w.letters()
        .iter()
        .fold(AffineElement::identity(), |acc, l| {
            acc.compose(&AffineElement::of_letter(*l))
        })
}

/// Image of `w` in `K` as a product of 3×3 block matrices.
pub fn eval_parabolic(w: &Word) -> Matrix3 {
    w.letters().iter().fold(Matrix3::identity(), |acc, l| {
        acc.mul(&AffineElement::of_letter(*l).to_matrix3())
    })
}

/// Translation part `c(w)` of the element of `K` with linear part `w`.
pub fn cocycle(w: &Word) -> Vec2 {
    eval_affine(w).translation
}

/// `c(w)` via `c(w·x) = c(w) + w·c(x)` with `c(U) = e₂`, `c(V) = e₁`,
/// `c(U⁻¹) = -U⁻¹e₂` and `c(V⁻¹) = -V⁻¹e₁`. Kept apart from [`cocycle`] so
/// the two can be cross-checked.
pub fn cocycle_by_recursion(w: &Word) -> Vec2 {
    fn letter_cocycle(l: Letter) -> Vec2 {
        let base = match l.generator {
            Generator::U => Vec2::e2(),
            Generator::V => Vec2::e1(),
        };
        if l.inverted {
            Mat2::of_letter(l).mul_vec(&base).neg()
        } else {
            base
        }
    }
    let mut linear = Mat2::identity();
    let mut c = Vec2::zero();
    for l in w.letters() {
        c = c.add(&linear.mul_vec(&letter_cocycle(*l)));
        linear = linear.mul(&Mat2::of_letter(*l));
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreenessVerdict {
    /// No nonempty reduced word up to the bound evaluates to the identity.
    Pass { checked: u64 },
    /// First offending word in canonical order.
    Counterexample(Word),
}

impl FreenessVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, FreenessVerdict::Pass { .. })
    }
}

/// Checks that every nonempty reduced word of length `1..=max_len` has a
/// non-identity image in `SL(2, ℤ)`.
pub fn freeness_sweep(max_len: usize) -> FreenessVerdict {
    // Level k holds (last letter rank, matrix) for each reduced word of length
    // k in canonical order; the words themselves are rebuilt only on failure.
    let generators: Vec<Mat2> = Letter::ALL.iter().map(|l| Mat2::of_letter(*l)).collect();
    let mut level: Vec<(Option<usize>, Mat2)> = vec![(None, Mat2::identity())];
    let mut parents: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut checked = 0u64;
    for depth in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * 3);
        let mut links = Vec::with_capacity(level.len() * 3);
        for (pi, (last, m)) in level.iter().enumerate() {
            for (rank, g) in generators.iter().enumerate() {
                if last.is_some_and(|r| (r + 2) % 4 == rank) {
                    continue;
                }
                let prod = m.mul(g);
                checked += 1;
                if prod.is_identity() {
                    links.push((pi, rank));
                    parents.push(links);
                    return FreenessVerdict::Counterexample(rebuild(&parents, depth));
                }
                links.push((pi, rank));
                next.push((Some(rank), prod));
            }
        }
        parents.push(links);
        level = next;
    }
    FreenessVerdict::Pass { checked }
}

fn rebuild(parents: &[Vec<(usize, usize)>], depth: usize) -> Word {
    let mut ranks = Vec::with_capacity(depth + 1);
    let mut idx = parents[depth].len() - 1;
    for d in (0..=depth).rev() {
        let (parent, rank) = parents[d][idx];
        ranks.push(rank);
        idx = parent;
    }
    Word::from_letters(ranks.into_iter().rev().map(|r| Letter::ALL[r]))
}

/// Reference enumeration for [`freeness_sweep`]: evaluates every word from scratch.
pub fn freeness_sweep_naive(max_len: usize) -> FreenessVerdict {
    let mut checked = 0;
    for w in enumerate_reduced(max_len).skip(1) {
        checked += 1;
        if eval_linear(&w).is_identity() {
            return FreenessVerdict::Counterexample(w);
        }
    }
    FreenessVerdict::Pass { checked }
}
