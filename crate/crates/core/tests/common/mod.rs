//! Reference computations that share no code with the library.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;

/// Orbit size of (0,0) in (Z/qZ)^2 by plain BFS on machine integers.
pub fn orbit_size_mod_q(q: i64) -> usize {
    let r = |v: i64| v.rem_euclid(q);
    let moves = |(x, y): (i64, i64)| {
        [
            (r(x + 2 * y), r(y + 1)),
            (r(x + 1), r(2 * x + y)),
            (r(x - 2 * y + 2), r(y - 1)),
            (r(x - 1), r(y - 2 * x + 2)),
        ]
    };
    let mut seen = HashSet::from([(0, 0)]);
    let mut queue = VecDeque::from([(0, 0)]);
    while let Some(p) = queue.pop_front() {
        for n in moves(p) {
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen.len()
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: D_k is the gcd of all k×k
/// minors and d_k = D_k / D_(k-1), stopping at the first vanishing D_k.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m[0].len();
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                    .collect();
                d = gcd(d, det(&sub));
            }
        }
        if d == 0 {
            break;
        }
        out.push(BigInt::from(d / prev));
        prev = d;
    }
    out
}

/// 3x3 parabolic product over i128 for the compact word syntax without exponents.
pub fn parabolic_i128(word: &str) -> [[i128; 3]; 3] {
    let table = |c: char| -> [[i128; 3]; 3] {
        match c {
            'U' => [[1, 2, 0], [0, 1, 1], [0, 0, 1]],
            'V' => [[1, 0, 1], [2, 1, 0], [0, 0, 1]],
            'u' => [[1, -2, 2], [0, 1, -1], [0, 0, 1]],
            'v' => [[1, 0, -1], [-2, 1, 2], [0, 0, 1]],
            _ => panic!("bad letter {c}"),
        }
    };
    let mut acc = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for c in word.chars() {
        let m = table(c);
        let mut next = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                next[i][j] = (0..3).map(|k| acc[i][k] * m[k][j]).sum();
            }
        }
        acc = next;
    }
    acc
}
