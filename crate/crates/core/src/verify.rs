//! The `verify-paper` scenario: re-derives every finitely checkable claim of
//! the construction and collects the outcomes in a [`VerificationReport`].
//!
//! Checks run in a fixed order and use a fixed RNG seed, so two runs with the
//! same parameters serialize to identical JSON.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{act, build_witness, generator_power, loop_check, point_p, step, swap_word};
use crate::error::{Error, Result};
use crate::graph::{OrbitalGraph, MAX_BALL_DEPTH};
use crate::linear::{cocycle, cocycle_by_recursion, eval_parabolic, freeness_sweep, Vec2};
use crate::rank::{
    abelianization_hq, membership, nielsen_schreier_rank, shortest_n_element, stabilizer_index,
};
use crate::word::{enumerate_reduced, loop_word, reduced_word_count, Generator, Letter, Word};

pub const SCHEMA_VERSION: u32 = 1;
const SEED: u64 = 0x5eed_2026;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    pub n_max: i64,
    pub q_max: u64,
    pub depth: usize,
    pub sweep_len: usize,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            n_max: 1000,
            q_max: 200,
            depth: 10,
            sweep_len: 10,
        }
    }
}

impl VerifyParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 || self.q_max < 1 || self.depth < 1 || self.sweep_len < 1 {
            return Err(Error::Parameter("all bounds must be at least 1".into()));
        }
        if self.depth > MAX_BALL_DEPTH {
            return Err(Error::DepthTooLarge {
                depth: self.depth,
                limit: MAX_BALL_DEPTH,
            });
        }
        // words of length 13 already number 3.2 million
        if self.sweep_len > 13 {
            return Err(Error::Parameter(format!(
                "sweep length {} exceeds the limit of 13",
                self.sweep_len
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub paper_anchor: String,
    pub status: Status,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankBoundEntry {
    pub q: u64,
    pub index: u64,
    pub rank_lower_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreGrowthEntry {
    pub depth: usize,
    pub vertices: usize,
    pub complete_vertices: usize,
    pub certified: usize,
    pub contains_p0: bool,
    pub contains_p1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub parameters: VerifyParams,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub core_growth: Vec<CoreGrowthEntry>,
    pub rank_bounds: Vec<RankBoundEntry>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.parameters;
        let _ = writeln!(
            s,
            "verify-paper  n_max={} q_max={} depth={} sweep_len={}",
            p.n_max, p.q_max, p.depth, p.sweep_len
        );
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(s, "[{tag}] {:<28} {}", c.id, c.claim);
            let _ = writeln!(s, "       {} | {}", c.paper_anchor, c.details);
        }
        let _ = writeln!(
            s,
            "{} checks: {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        s
    }
}

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn record(&mut self, id: &str, claim: &str, anchor: &str, ok: bool, details: String) {
        self.checks.push(Check {
            id: id.into(),
            claim: claim.into(),
            paper_anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            details,
        });
    }
}

/// A reduced word of length at most `max_len` drawn from `rng`.
pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::ALL[rng.gen_range(0..4)];
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::from_letters(letters)
}

pub fn run(params: &VerifyParams) -> Result<VerificationReport> {
    params.validate()?;
    let mut r = Runner { checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    // freeness of F = <U, V>
    let verdict = freeness_sweep(params.sweep_len);
    let expected = reduced_word_count(params.sweep_len as u32) - 1;
    let details = match &verdict {
        crate::linear::FreenessVerdict::Pass { checked } => {
            format!("{checked} nonempty reduced words of length <= {}", params.sweep_len)
        }
        crate::linear::FreenessVerdict::Counterexample(w) => format!("{w} evaluates to I"),
    };
    let ok = verdict == crate::linear::FreenessVerdict::Pass { checked: expected };
    r.record(
        "freeness-sweep",
        "U and V satisfy no relation of bounded length",
        "Sanov generators freely generate F",
        ok,
        details,
    );

    // orbit of the origin contains every P_n
    let origin = Vec2::zero();
    let mut bad = Vec::new();
    let mut longest = 0;
    for n in -params.n_max..=params.n_max {
        let s = build_witness(n);
        longest = longest.max(s.word.len());
        let len_ok = (s.word.len() as i64) <= 4 * n * n + 10;
        if act(&s.word, &origin) != point_p(n).point || !len_ok {
            bad.push(n);
        }
    }
    r.record(
        "orbit-witnesses",
        "a witness word sends (0,0) to P_n = (n, 1-n)",
        "orbit lemma: the orbit of (0,0) contains all P_n",
        bad.is_empty(),
        summarize_failures(&bad, params.n_max, &format!("longest witness {longest} letters")),
    );

    let swap = swap_word();
    let bad: Vec<i64> = (-params.n_max..=params.n_max)
        .filter(|&n| act(&swap, &point_p(n).point) != point_p(1 - n).point)
        .collect();
    r.record(
        "swap-lemma",
        "U^-1 V sends P_n to P_(1-n)",
        "loop lemma: alpha^-1 beta (P_n) = P_(1-n)",
        bad.is_empty(),
        summarize_failures(&bad, params.n_max, "exact"),
    );

    let rw = loop_word();
    let bad: Vec<i64> = (-params.n_max..=params.n_max)
        .filter(|&n| !loop_check(&rw, &point_p(n).point).unwrap_or(false))
        .collect();
    r.record(
        "loop-lemma",
        "r = (U^-1 V)^2 fixes every P_n",
        "loop lemma: every P_n lies on a nontrivial reduced closed path",
        bad.is_empty(),
        summarize_failures(&bad, params.n_max, "exact"),
    );

    // closed-form powers against iteration
    let mut mismatches = 0usize;
    let mut compared = 0usize;
    for _ in 0..1000 {
        let p = Vec2::new(
            rng.gen_range(-1_000_000i64..=1_000_000),
            rng.gen_range(-1_000_000i64..=1_000_000),
        );
        for g in Generator::ALL {
            for m in -30i64..=30 {
                let letter = Letter::new(g, m < 0);
                let iterated =
                    (0..m.unsigned_abs()).fold(p.clone(), |acc, _| step(letter, &acc));
                compared += 1;
                if generator_power(g, m, &p) != iterated {
                    mismatches += 1;
                }
            }
        }
    }
    r.record(
        "closed-form-powers",
        "closed forms for alpha^m and beta^m agree with iteration, |m| <= 30",
        "closed-form powers of alpha and beta",
        mismatches == 0,
        format!("{compared} comparisons on 1000 seeded points, {mismatches} mismatches"),
    );

    // certified core growth in balls of Z^2
    let mut core_growth = Vec::new();
    let mut sound = true;
    for d in 1..=params.depth {
        let ball = OrbitalGraph::build_ball(d)?;
        let core = ball.certified_core(&rw)?;
        let has = |n: i64| {
            ball.index_of(&point_p(n).point)
                .is_some_and(|v| core.core_vertices.contains(&v))
        };
        sound &= core
            .core_vertices
            .iter()
            .all(|&v| act(&rw, ball.vertex(v)) == *ball.vertex(v));
        core_growth.push(CoreGrowthEntry {
            depth: d,
            vertices: ball.vertex_count(),
            complete_vertices: ball.vertex_count() - ball.incomplete_count(),
            certified: core.len(),
            contains_p0: has(0),
            contains_p1: has(1),
        });
    }
    let monotone = core_growth.windows(2).all(|w| w[0].certified <= w[1].certified);
    let positive = core_growth.iter().filter(|e| e.depth >= 4).all(|e| e.certified > 0);
    let marked = core_growth
        .iter()
        .filter(|e| e.depth >= 5)
        .all(|e| e.contains_p0 && e.contains_p1);
    let counts: Vec<String> = core_growth
        .iter()
        .map(|e| format!("{}:{}", e.depth, e.certified))
        .collect();
    r.record(
        "certified-core-growth",
        "certified core vertices grow with the explored ball and contain P_0, P_1",
        "core of the orbital Schreier graph is infinite, so N is not finitely generated",
        monotone && positive && marked && sound,
        format!("depth:certified {}", counts.join(" ")),
    );

    // a concrete nontrivial element of H ∩ K
    let element = shortest_n_element(8);
    let ok = element.as_ref().is_some_and(|w| {
        let m = eval_parabolic(w).to_affine();
        m.is_some_and(|a| a.translation.is_zero() && !a.linear.is_identity())
    });
    r.record(
        "intersection-element",
        "a nontrivial word w with c(w) = 0 exists, giving an element of H and K",
        "H and K intersect in the stabilizer N of (0,0)",
        ok,
        element.map_or("none up to length 8".into(), |w| format!("shortest: {w}")),
    );

    // cocycle: semidirect product, recursion and 3x3 products agree
    let mut disagreements = 0;
    let mut words = 0;
    for w in enumerate_reduced(6) {
        words += 1;
        let a = cocycle(&w);
        let b = cocycle_by_recursion(&w);
        let c = eval_parabolic(&w).to_affine().map(|e| e.translation);
        if a != b || Some(&a) != c.as_ref() || act(&w, &origin) != a {
            disagreements += 1;
        }
    }
    r.record(
        "cocycle-routes",
        "c(w) from 3x3 products, the cocycle recursion and the action all agree",
        "translation part c(w) of the element of K with linear part w",
        disagreements == 0,
        format!("{words} words of length <= 6, {disagreements} disagreements"),
    );

    // abelianization of H_q
    let q_ab = params.q_max.min(50);
    let bad: Vec<u64> = (2..=q_ab)
        .filter(|&q| {
            abelianization_hq(q).map_or(true, |ab| {
                ab.free_rank != 2
                    || ab.torsion != vec![2.into(), 2.into()]
                    || ab.min_generators() != 4
            })
        })
        .collect();
    r.record(
        "abelianization-rank-four",
        "(H_q)_ab = Z^2 + (Z/2)^2 needs four generators",
        "rank(H_q) = rank(K_q) = 4 via the abelianization",
        bad.is_empty(),
        format!("q in [2, {q_ab}], failures {bad:?}"),
    );

    // index, Nielsen-Schreier rank and the intersection bound
    let mut rank_bounds = Vec::new();
    let mut index_cache = Vec::new();
    let mut bad = Vec::new();
    for q in 2..=params.q_max {
        let index = stabilizer_index(q)?;
        let bound = nielsen_schreier_rank(index, 2);
        if index < q || bound != index + 1 || bound < q + 1 {
            bad.push(q);
        }
        index_cache.push((q, index));
        rank_bounds.push(RankBoundEntry {
            q,
            index,
            rank_lower_bound: bound,
        });
    }
    let largest = rank_bounds.last().map_or(String::new(), |e| {
        format!(", q = {}: index {}, rank >= {}", e.q, e.index, e.rank_lower_bound)
    });
    r.record(
        "rank-bound",
        "[F : N_q] >= q and rank(H_q meet K_q) >= [F : N_q] + 1 >= q + 1",
        "intersection rank theorem: rank(H_q meet K_q) >= q + 1",
        bad.is_empty(),
        format!("q in [2, {}], failures {bad:?}{largest}", params.q_max),
    );

    // Schreier generators
    let mut bad = Vec::new();
    for &(q, index) in index_cache.iter().take_while(|(q, _)| *q <= q_ab) {
        let graph = OrbitalGraph::build_mod_q(q)?;
        let gens = graph.spanning_tree_generators()?;
        let members = gens.iter().all(|w| membership(w, Some(q)).unwrap_or(false));
        if gens.len() as u64 != index + 1 || !members {
            bad.push(q);
        }
    }
    r.record(
        "schreier-generators",
        "spanning-tree generator count equals index + 1 and each lies in N_q",
        "Nielsen-Schreier formula rank(N_q) = [F : N_q] + 1",
        bad.is_empty(),
        format!("q in [2, {q_ab}], failures {bad:?}"),
    );

    // graph loops against cocycle membership
    let mut disagreements = 0;
    let mut compared = 0;
    for q in [2u64, 3, 4, 5, 10] {
        let graph = OrbitalGraph::build_mod_q(q)?;
        for _ in 0..1000 {
            let w = random_word(&mut rng, 20);
            compared += 1;
            if graph.is_loop_at_base(&w)? != membership(&w, Some(q))? {
                disagreements += 1;
            }
        }
    }
    r.record(
        "membership-cross-check",
        "w labels a loop at the base of the mod-q graph iff c(w) = 0 mod q",
        "words labelling loops at the base vertex are exactly the subgroup",
        disagreements == 0,
        format!("{compared} seeded words over q in {{2,3,4,5,10}}, {disagreements} disagreements"),
    );

    let passed = r.checks.iter().filter(|c| c.status == Status::Pass).count();
    let total = r.checks.len();
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        parameters: *params,
        summary: Summary {
            total,
            passed,
            failed: total - passed,
        },
        checks: r.checks,
        core_growth,
        rank_bounds,
    })
}

fn summarize_failures(bad: &[i64], n_max: i64, note: &str) -> String {
    if bad.is_empty() {
        format!("all n in [-{n_max}, {n_max}], {note}")
    } else {
        let shown: Vec<String> = bad.iter().take(10).map(|n| n.to_string()).collect();
        format!("{} failures, first: {}", bad.len(), shown.join(", "))
    }
}
