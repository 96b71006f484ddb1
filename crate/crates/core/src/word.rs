//! Freely reduced words in the free group on `U` and `V`.
//!
//! Words are explicit letter sequences. Every constructor reduces, so a
//! [`Word`] value is always freely reduced and the empty word is the identity.

use std::fmt;

use crate::error::{Error, Result};

/// Exponents in the string syntax are capped so a typo cannot allocate gigabytes.
pub const MAX_EXPONENT: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    U,
    V,
}

impl Generator {
    pub const ALL: [Generator; 2] = [Generator::U, Generator::V];

    pub fn index(self) -> usize {
        match self {
            Generator::U => 0,
            Generator::V => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::U => "U",
            Generator::V => "V",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverted: bool,
}

impl Letter {
    pub const U: Letter = Letter::new(Generator::U, false);
    pub const V: Letter = Letter::new(Generator::V, false);
    pub const U_INV: Letter = Letter::new(Generator::U, true);
    pub const V_INV: Letter = Letter::new(Generator::V, true);

    /// Canonical letter order `U < V < U⁻¹ < V⁻¹`.
    pub const ALL: [Letter; 4] = [Letter::U, Letter::V, Letter::U_INV, Letter::V_INV];

    pub const fn new(generator: Generator, inverted: bool) -> Self {
        Letter {
            generator,
            inverted,
        }
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, !self.inverted)
    }

    /// Position in the canonical letter order.
    pub fn rank(self) -> usize {
        self.generator.index() + if self.inverted { 2 } else { 0 }
    }

    fn from_rank(rank: usize) -> Self {
        Letter::ALL[rank]
    }

    pub fn as_char(self) -> char {
        match (self.generator, self.inverted) {
            (Generator::U, false) => 'U',
            (Generator::V, false) => 'V',
            (Generator::U, true) => 'u',
            (Generator::V, true) => 'v',
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(letter: Letter) -> Self {
        Word {
            letters: vec![letter],
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out = Word::identity();
        for l in letters {
            out.push(l);
        }
        out
    }

    /// Appends on the right, cancelling against the last letter.
    fn push(&mut self, letter: Letter) {
        if self.letters.last() == Some(&letter.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    /// Appends `letter^count` on the right.
    fn push_run(&mut self, letter: Letter, mut count: usize) {
        while count > 0 && self.letters.last() == Some(&letter.inverse()) {
            self.letters.pop();
            count -= 1;
        }
        self.letters.extend(std::iter::repeat(letter).take(count));
    }

    /// Freely reduces a product of letter powers `l₁^k₁ l₂^k₂ …`.
    pub fn from_runs<I: IntoIterator<Item = (Letter, usize)>>(runs: I) -> Self {
        let mut out = Word::identity();
        for (l, k) in runs {
            out.push_run(l, k);
        }
        out
    }

    /// `gen^m` as a word.
    pub fn generator_power(generator: Generator, m: i64) -> Self {
        let letter = Letter::new(generator, m < 0);
        Word {
            letters: vec![letter; m.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(letters: &[Letter]) -> bool {
        letters.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Reduced and the first letter is not the inverse of the last.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) if self.letters.len() > 1 => *a != b.inverse(),
            _ => true,
        }
    }

    /// Group product `self · other`; cancellation happens only at the junction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut keep = self.letters.len();
        let mut skip = 0;
        while keep > 0
            && skip < other.letters.len()
            && self.letters[keep - 1] == other.letters[skip].inverse()
        {
            keep -= 1;
            skip += 1;
        }
        let mut letters = Vec::with_capacity(keep + other.letters.len() - skip);
        letters.extend_from_slice(&self.letters[..keep]);
        letters.extend_from_slice(&other.letters[skip..]);
        Word { letters }
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn power(&self, m: i64) -> Word {
        let base = if m < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..m.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Maximal runs of equal letters, left to right, as `(letter, run length)`.
    pub fn runs(&self) -> impl DoubleEndedIterator<Item = (Letter, usize)> + '_ {
        self.letters.chunk_by(|a, b| a == b).map(|c| (c[0], c.len()))
    }

    /// Run-length form such as `u^6 v^4 u`, accepted by [`Word::parse`].
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self
            .runs()
            .map(|(l, k)| {
                if k == 1 {
                    l.to_string()
                } else {
                    format!("{l}^{k}")
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Parses the compact syntax: `U`, `V` for the generators, `u`, `v` for
    /// their inverses, each optionally followed by `^k` with a signed integer
    /// `k`. Whitespace is ignored. The result is freely reduced.
    pub fn parse(text: &str) -> Result<Word> {
        let bytes = text.as_bytes();
        let mut out = Word::identity();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let letter = match c {
                b'U' => Letter::U,
                b'V' => Letter::V,
                b'u' => Letter::U_INV,
                b'v' => Letter::V_INV,
                _ => {
                    let ch = text[i..].chars().next().unwrap_or('?');
                    return Err(Error::parse(i, format!("unexpected token {ch:?}")));
                }
            };
            i += 1;
            let mut exponent: i64 = 1;
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            if j < bytes.len() && bytes[j] == b'^' {
                let caret = j;
                j += 1;
                while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                    j += 1;
                }
                let mut negative = false;
                if j < bytes.len() && (bytes[j] == b'-' || bytes[j] == b'+') {
                    negative = bytes[j] == b'-';
                    j += 1;
                }
                let digits_start = j;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if digits_start == j {
                    return Err(Error::parse(caret, "exponent needs digits after '^'"));
                }
                let magnitude: u64 = text[digits_start..j]
                    .parse()
                    .ok()
                    .filter(|m| *m <= MAX_EXPONENT)
                    .ok_or_else(|| {
                        Error::parse(digits_start, format!("exponent exceeds {MAX_EXPONENT}"))
                    })?;
                exponent = if negative {
                    -(magnitude as i64)
                } else {
                    magnitude as i64
                };
                i = j;
            }
            let letter = if exponent < 0 { letter.inverse() } else { letter };
            out.push_run(letter, exponent.unsigned_abs() as usize);
        }
        Ok(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

/// The loop word `(U⁻¹V)²`.
pub fn loop_word() -> Word {
    Word::from_letters([Letter::U_INV, Letter::V, Letter::U_INV, Letter::V])
}

/// Every reduced word of length at most `max_len`, ordered by length and then
/// lexicographically in the canonical letter order.
pub fn enumerate_reduced(max_len: usize) -> ReducedWords {
    ReducedWords {
        max_len,
        current: Some(Vec::new()),
    }
}

/// Iterator returned by [`enumerate_reduced`].
#[derive(Debug, Clone)]
pub struct ReducedWords {
    max_len: usize,
    current: Option<Vec<usize>>,
}

/// Smallest letter rank allowed after `prev`.
fn first_after(prev: Option<usize>) -> usize {
    match prev.map(forbidden_after) {
        Some(0) => 1,
        _ => 0,
    }
}

fn forbidden_after(prev: usize) -> usize {
    (prev + 2) % 4
}

impl ReducedWords {
    fn advance(&self, cur: &[usize]) -> Option<Vec<usize>> {
        let mut next = cur.to_vec();
        for i in (0..next.len()).rev() {
            let prev = if i == 0 { None } else { Some(next[i - 1]) };
            let mut candidate = next[i] + 1;
            if prev.map(forbidden_after) == Some(candidate) {
                candidate += 1;
            }
            if candidate < 4 {
                next[i] = candidate;
                for k in i + 1..next.len() {
                    next[k] = first_after(Some(next[k - 1]));
                }
                return Some(next);
            }
        }
        let len = cur.len() + 1;
        if len > self.max_len {
            return None;
        }
        let mut fresh = Vec::with_capacity(len);
        for k in 0..len {
            fresh.push(first_after(if k == 0 { None } else { Some(fresh[k - 1]) }));
        }
        Some(fresh)
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        self.current = self.advance(&cur);
        Some(Word {
            letters: cur.into_iter().map(Letter::from_rank).collect(),
        })
    }
}

/// Number of reduced words of length at most `max_len`: `1 + Σ 4·3^(k-1)`.
pub fn reduced_word_count(max_len: u32) -> u64 {
    1 + (1..=max_len).map(|k| 4 * 3u64.pow(k - 1)).sum::<u64>()
}
