//! Rank computations for the stabilizers `N = Stab(0,0)` in `ℤ²` and
//! `N_q = Stab(0,0)` in `(ℤ/qℤ)²`, and for `H_q = L_q ⋊ F` with `L_q = qℤ²`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::OrbitalGraph;
use crate::linear::{eval_parabolic, AffineElement, Mat2, Vec2};
use crate::word::{Letter, Word};

fn check_modulus(q: u64) -> Result<()> {
    if q < 2 {
        Err(Error::InvalidModulus(q as i64))
    } else {
        Ok(())
    }
}

/// `[F : N_q]`, the size of the orbit of the origin in `(ℤ/qℤ)²`.
pub fn stabilizer_index(q: u64) -> Result<u64> {
    Ok(OrbitalGraph::build_mod_q(q)?.vertex_count() as u64)
}

/// Rank of an index-`index` subgroup of a free group of rank `ambient_rank`.
pub fn nielsen_schreier_rank(index: u64, ambient_rank: u64) -> u64 {
    assert!(index >= 1 && ambient_rank >= 1);
    index * (ambient_rank - 1) + 1
}

/// `c(w) = 0` when `q` is `None` (membership in `N ≅ H ∩ K`), otherwise
/// `c(w) ∈ qℤ²` (membership in `N_q`).
pub fn membership(w: &Word, q: Option<u64>) -> Result<bool> {
    let c = crate::linear::cocycle(w);
    match q {
        None => Ok(c.is_zero()),
        Some(q) => {
            check_modulus(q)?;
            Ok(c.is_divisible_by(q))
        }
    }
}

/// First nonempty word in canonical order whose cocycle vanishes, searching
/// lengths `1..=max_len` by iterative deepening.
pub fn shortest_n_element(max_len: usize) -> Option<Word> {
    let gens: Vec<AffineElement> = Letter::ALL.iter().map(|l| AffineElement::of_letter(*l)).collect();
    for len in 1..=max_len {
        let mut ranks: Vec<usize> = Vec::with_capacity(len);
        let mut stack: Vec<AffineElement> = vec![AffineElement::identity()];
        if let Some(found) = search(&gens, len, &mut ranks, &mut stack) {
            let m = eval_parabolic(&found);
            let affine = m.to_affine().expect("parabolic");
            assert!(affine.translation.is_zero() && !affine.linear.is_identity());
            return Some(found);
        }
    }
    None
}

fn search(
    gens: &[AffineElement],
    len: usize,
    ranks: &mut Vec<usize>,
    stack: &mut Vec<AffineElement>,
) -> Option<Word> {
    if ranks.len() == len {
        let top = stack.last().expect("nonempty");
        return top
            .translation
            .is_zero()
            .then(|| Word::from_letters(ranks.iter().map(|r| Letter::ALL[*r])));
    }
    for rank in 0..4 {
        if ranks.last().is_some_and(|r| (r + 2) % 4 == rank) {
            continue;
        }
        let next = stack.last().expect("nonempty").compose(&gens[rank]);
        ranks.push(rank);
        stack.push(next);
        let found = search(gens, len, ranks, stack);
        ranks.pop();
        stack.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Parameter("matrix dimensions must be positive".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::Parameter(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged matrix rows".into()));
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        IntegerMatrix::new(rows.len(), cols, entries)
    }

    /// Rows separated by `;`, entries by whitespace or commas: `"0 2 0 0; 0 0 2 0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for row in text.split(';') {
            let mut entries = Vec::new();
            let mut pos = offset;
            for token in row.split(|c: char| c.is_whitespace() || c == ',') {
                if !token.is_empty() {
                    let at = pos + row[pos - offset..].find(token).unwrap_or(0);
                    let value: BigInt = token
                        .parse()
                        .map_err(|_| Error::parse(at, format!("bad matrix entry {token:?}")))?;
                    entries.push(value);
                    pos = at + token.len();
                }
            }
            rows.push(entries);
            offset += row.len() + 1;
        }
        IntegerMatrix::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor * row[source]`.
    fn add_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let delta = factor * self.get(source, j);
            *self.at(target, j) += delta;
        }
    }

    fn add_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let delta = factor * self.get(i, source);
            *self.at(i, target) += delta;
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Nonzero invariant factors `d₁ | d₂ | …` of `m`, all positive.
///
/// Pivots on the smallest nonzero absolute entry of the remaining block,
/// clears its row and column by division with remainder, and repairs
/// divisibility by folding an offending row into the pivot row.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by_key(|&(i, j)| a.get(i, j).abs());
            let Some((pi, pj)) = pivot else {
                return factors;
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let quotient = a.get(i, t).div_floor(&p);
                if !quotient.is_zero() {
                    a.add_row(i, t, &-quotient);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let quotient = a.get(t, j).div_floor(&p);
                if !quotient.is_zero() {
                    a.add_col(j, t, &-quotient);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offending {
                Some(i) => a.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
    }
    factors
}

/// `ℤ^free_rank ⊕ ⊕ ℤ/dᵢ` with `d₁ | d₂ | …`, each `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroupDescriptor {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

impl AbelianGroupDescriptor {
    /// Cokernel of a relation matrix on `generators` free generators, plus
    /// `extra_free` further free summands.
    pub fn from_relations(
        generators: usize,
        relations: &IntegerMatrix,
        extra_free: usize,
    ) -> AbelianGroupDescriptor {
        let factors = smith_normal_form(relations);
        let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
        AbelianGroupDescriptor {
            free_rank: extra_free + generators - factors.len(),
            torsion,
        }
    }

    /// Minimum number of generators of the group.
    pub fn min_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn divisibility_chain_holds(&self) -> bool {
        self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
            && self.torsion.iter().all(|d| *d >= BigInt::from(2))
    }
}

impl fmt::Display for AbelianGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Relation matrix of `L_q / ((U − I)L_q + (V − I)L_q)` in the basis
/// `(q·e₁, q·e₂)` of `L_q`; columns are the images of the basis under
/// `U − I` then `V − I`.
pub fn hq_relation_matrix(q: u64) -> Result<IntegerMatrix> {
    check_modulus(q)?;
    let qb = BigInt::from(q);
    let basis = [Vec2::new(q, 0), Vec2::new(0, q)];
    let mut columns = Vec::new();
    for m in [Mat2::sanov_u(), Mat2::sanov_v()] {
        let d = m.minus_identity();
        for b in &basis {
            let image = d.mul_vec(b);
            // the image lies in L_q, so its coordinates divide exactly
            let (x, rx) = image.x.div_rem(&qb);
            let (y, ry) = image.y.div_rem(&qb);
            assert!(rx.is_zero() && ry.is_zero());
            columns.push([x, y]);
        }
    }
    let entries = (0..2)
        .flat_map(|i| columns.iter().map(move |c| c[i].clone()))
        .collect();
    IntegerMatrix::new(2, columns.len(), entries)
}

/// `(H_q)_ab ≅ F_ab ⊕ L_q/((U − I)L_q + (V − I)L_q)` with `F_ab ≅ ℤ²`.
pub fn abelianization_hq(q: u64) -> Result<AbelianGroupDescriptor> {
    let relations = hq_relation_matrix(q)?;
    Ok(AbelianGroupDescriptor::from_relations(2, &relations, 2))
}

/// `rank(H_q ∩ K_q) ≥ rank(N_q) = [F : N_q] + 1`, using that `H_q ∩ K_q`
/// projects onto `N_q`.
pub fn intersection_rank_lower_bound(q: u64) -> Result<u64> {
    Ok(nielsen_schreier_rank(stabilizer_index(q)?, 2))
}
