//! The affine action of `F = ⟨U, V⟩` on `ℤ²` (and on `(ℤ/qℤ)²`):
//!
//! ```text
//! α(x, y) = (x + 2y, y + 1)      α = action of û
//! β(x, y) = (x + 1, 2x + y)      β = action of v̂
//! ```
//!
//! Words act as left actions, rightmost letter first, so `act(w, p)` equals
//! `eval_affine(w).apply(p)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linear::Vec2;
use crate::word::{Generator, Letter, Word};

/// One application of a letter, straight from the defining formulas.
pub fn step(letter: Letter, p: &Vec2) -> Vec2 {
    let (x, y) = (&p.x, &p.y);
    let image = match (letter.generator, letter.inverted) {
        (Generator::U, false) => Vec2::new(x + 2 * y, y + 1),
        (Generator::U, true) => Vec2::new(x - 2 * y + 2, y - 1),
        (Generator::V, false) => Vec2::new(x + 1, 2 * x + y),
        (Generator::V, true) => Vec2::new(x - 1, y - 2 * x + 2),
    };
    match p.modulus() {
        Some(q) => image.reduce(q),
        None => image,
    }
}

/// Closed form for `αᵐ` or `βᵐ`, any sign of `m`:
/// `αᵐ(x, y) = (x + 2my + m(m−1), y + m)` and `βᵐ(x, y) = (x + m, y + 2mx + m(m−1))`.
pub fn generator_power(generator: Generator, m: i64, p: &Vec2) -> Vec2 {
    let m = BigInt::from(m);
    let shift = &m * (&m - 1);
    let (x, y) = (&p.x, &p.y);
    let image = match generator {
        Generator::U => Vec2::new(x + 2 * &m * y + shift, y + &m),
        Generator::V => Vec2::new(x + &m, y + 2 * &m * x + shift),
    };
    match p.modulus() {
        Some(q) => image.reduce(q),
        None => image,
    }
}

/// Acts by `w`, applying maximal letter runs with the closed-form powers.
pub fn act(w: &Word, p: &Vec2) -> Vec2 {
    w.runs().rev().fold(p.clone(), |acc, (letter, k)| {
        let m = k as i64;
        generator_power(letter.generator, if letter.inverted { -m } else { m }, &acc)
    })
}

/// Point `Pₙ = (n, 1 − n)` on the line `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoint {
    pub n: i64,
    pub point: Vec2,
}

pub fn point_p(n: i64) -> MarkedPoint {
    MarkedPoint {
        n,
        point: Vec2::new(n, 1 - n),
    }
}

/// A word moving the origin to `Pₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSchedule {
    pub n: i64,
    pub word: Word,
    /// Recurrence powers prepended to the seed word, outermost first.
    pub powers: Vec<(Generator, i64)>,
}

/// Witness for `Pₙ`, checked by evaluation before it is returned.
pub fn witness_word(n: i64) -> WitnessSchedule {
    let schedule = build_witness(n);
    assert_eq!(
        act(&schedule.word, &Vec2::zero()),
        point_p(n).point,
        "witness for P_{n} is wrong"
    );
    schedule
}

/// Builds the witness for `Pₙ` from the seeds `α(0,0) = P₀`, `β(0,0) = P₁`
/// and the recurrences `β^{-2m}(Pₘ) = P₋ₘ`, `α^{-2m-2}(P₋ₘ) = P_{m+2}` (m ≥ 0),
/// without checking it.
pub fn build_witness(n: i64) -> WitnessSchedule {
    let mut powers = Vec::new();
    let mut k = n;
    let seed = loop {
        match k {
            0 => break Letter::U,
            1 => break Letter::V,
            k2 if k2 >= 2 => {
                // P_k = α^{-(2k-2)}(P_{2-k})
                powers.push((Generator::U, -(2 * k2 - 2)));
                k = 2 - k2;
            }
            neg => {
                // P_{-m} = β^{-2m}(P_m)
                powers.push((Generator::V, 2 * neg));
                k = -neg;
            }
        }
    };
    let runs = powers
        .iter()
        .map(|&(g, m)| (Letter::new(g, m < 0), m.unsigned_abs() as usize))
        .chain(std::iter::once((seed, 1)));
    let word = Word::from_runs(runs);
    WitnessSchedule { n, word, powers }
}

/// The word `U⁻¹V`, which swaps `Pₙ` and `P_{1−n}`.
pub fn swap_word() -> Word {
    Word::from_letters([Letter::U_INV, Letter::V])
}

/// Whether the nonempty word `w` fixes `p`.
pub fn loop_check(w: &Word, p: &Vec2) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWitness);
    }
    Ok(act(w, p) == *p)
}
