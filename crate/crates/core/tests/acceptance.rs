//! Acceptance suite. Every criterion is exact; each prints one PASS/FAIL line
//! and the process exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use howson::action::{act, build_witness, generator_power, point_p, swap_word};
use howson::graph::OrbitalGraph;
use howson::linear::{cocycle, cocycle_by_recursion, freeness_sweep, FreenessVerdict};
use howson::rank::{
    abelianization_hq, hq_relation_matrix, intersection_rank_lower_bound, membership,
    smith_normal_form, stabilizer_index,
};
use howson::verify::{random_word, run, VerifyParams};
use howson::word::{loop_word, Generator};
use howson::Vec2;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn witnesses() -> Outcome {
    let mut longest = 0;
    for n in -1000..=1000 {
        let w = build_witness(n).word;
        longest = longest.max(w.len());
        ensure(act(&w, &Vec2::zero()) == point_p(n).point, || {
            format!("witness for P_{n} misses")
        })?;
    }
    Ok(format!("2001 witnesses, longest {longest} letters"))
}

fn swap_and_loop() -> Outcome {
    let (s, r) = (swap_word(), loop_word());
    for n in -1000..=1000 {
        let p = point_p(n).point;
        ensure(act(&s, &p) == point_p(1 - n).point, || format!("swap fails at P_{n}"))?;
        ensure(act(&r, &p) == p, || format!("loop moves P_{n}"))?;
    }
    Ok("2001 points".into())
}

fn certified_core_growth() -> Outcome {
    let mut prev = 0;
    let mut counts = Vec::new();
    for depth in 4..=10 {
        let g = OrbitalGraph::build_ball(depth).map_err(|e| e.to_string())?;
        let core = g.certified_core(&loop_word()).map_err(|e| e.to_string())?;
        ensure(core.len() > 0 && core.len() >= prev, || {
            format!("count {} at depth {depth} after {prev}", core.len())
        })?;
        if depth >= 5 {
            for n in [0, 1] {
                let v = g.index_of(&point_p(n).point);
                ensure(v.is_some_and(|v| core.core_vertices.contains(&v)), || {
                    format!("P_{n} missing at depth {depth}")
                })?;
            }
        }
        prev = core.len();
        if depth % 2 == 0 {
            counts.push(format!("{depth}:{prev}"));
        }
    }
    Ok(format!("counts {}", counts.join(" ")))
}

fn alpha_i128((x, y): (i128, i128), inverse: bool) -> (i128, i128) {
    if inverse {
        (x - 2 * y + 2, y - 1)
    } else {
        (x + 2 * y, y + 1)
    }
}

fn beta_i128((x, y): (i128, i128), inverse: bool) -> (i128, i128) {
    if inverse {
        (x - 1, y - 2 * x + 2)
    } else {
        (x + 1, 2 * x + y)
    }
}

fn closed_form_powers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let start: (i128, i128) = (rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        for (gen, f) in [
            (Generator::U, alpha_i128 as fn(_, _) -> _),
            (Generator::V, beta_i128),
        ] {
            for m in -30i64..=30 {
                let mut p = start;
                for _ in 0..m.unsigned_abs() {
                    p = f(p, m < 0);
                }
                let got = generator_power(gen, m, &Vec2::new(start.0, start.1));
                ensure(got == Vec2::new(p.0, p.1), || {
                    format!("{}^{m} at {start:?}", gen.name())
                })?;
            }
        }
    }
    Ok("1000 points, |m| <= 30".into())
}

fn freeness() -> Outcome {
    match freeness_sweep(10) {
        FreenessVerdict::Pass { checked } => {
            ensure(checked == 118_096, || format!("checked {checked} words"))?;
            Ok(format!("{checked} words"))
        }
        FreenessVerdict::Counterexample(w) => Err(format!("{w} is trivial")),
    }
}

fn rank_bounds() -> Outcome {
    for q in 2..=200u64 {
        let index = stabilizer_index(q).map_err(|e| e.to_string())?;
        ensure(index as usize == common::orbit_size_mod_q(q as i64), || {
            format!("index mismatch at q = {q}")
        })?;
        ensure(index >= q, || format!("index {index} < {q}"))?;
        let bound = intersection_rank_lower_bound(q).map_err(|e| e.to_string())?;
        ensure(bound == index + 1 && bound > q, || format!("bound {bound} at q = {q}"))?;
    }
    Ok("q in [2, 200]".into())
}

fn abelianization() -> Outcome {
    let two = BigInt::from(2);
    for q in 2..=50 {
        let ab = abelianization_hq(q).map_err(|e| e.to_string())?;
        ensure(ab.free_rank == 2 && ab.torsion == [two.clone(), two.clone()], || {
            format!("got {ab} at q = {q}")
        })?;
        ensure(ab.min_generators() == 4, || format!("rank at q = {q}"))?;
        let m = hq_relation_matrix(q).map_err(|e| e.to_string())?;
        let rows: Vec<Vec<i64>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| i64::try_from(m.get(i, j)).unwrap()).collect())
            .collect();
        ensure(smith_normal_form(&m) == common::invariant_factors_by_minors(&rows), || {
            format!("invariant factors at q = {q}")
        })?;
    }
    Ok("Z^2 + Z/2 + Z/2 for q in [2, 50]".into())
}

fn schreier_generators() -> Outcome {
    let mut total = 0;
    for q in 2..=50u64 {
        let g = OrbitalGraph::build_mod_q(q).map_err(|e| e.to_string())?;
        let gens = g.spanning_tree_generators().map_err(|e| e.to_string())?;
        ensure(gens.len() == g.vertex_count() + 1, || format!("count at q = {q}"))?;
        for w in &gens {
            ensure(membership(w, Some(q)).map_err(|e| e.to_string())?, || {
                format!("{w} not in N_{q}")
            })?;
        }
        total += gens.len();
    }
    Ok(format!("{total} generators for q in [2, 50]"))
}

fn oracle_equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let graphs: Vec<_> = [2u64, 3, 4, 5, 10]
        .iter()
        .map(|&q| OrbitalGraph::build_mod_q(q).unwrap())
        .collect();
    for _ in 0..1000 {
        let w = random_word(&mut rng, 16);
        let c = cocycle(&w);
        ensure(c == cocycle_by_recursion(&w), || format!("recursion differs on {w}"))?;
        let m = common::parabolic_i128(&w.to_string());
        ensure(c == Vec2::new(m[0][2], m[1][2]), || format!("3x3 product differs on {w}"))?;
        ensure(act(&w, &Vec2::zero()) == c, || format!("orbit of origin differs on {w}"))?;
        for g in &graphs {
            let q = g.modulus().unwrap();
            ensure(
                membership(&w, Some(q)).unwrap() == g.is_loop_at_base(&w).unwrap(),
                || format!("membership differs on {w} mod {q}"),
            )?;
        }
    }
    Ok("1000 words".into())
}

fn deterministic_report() -> Outcome {
    let params = VerifyParams::default();
    let a = run(&params).map_err(|e| e.to_string())?;
    let b = run(&params).map_err(|e| e.to_string())?;
    ensure(a.all_passed(), || {
        let failed: Vec<_> = a
            .checks
            .iter()
            .filter(|c| c.status != howson::verify::Status::Pass)
            .map(|c| c.id.as_str())
            .collect();
        format!("failed checks: {}", failed.join(", "))
    })?;
    ensure(a.to_json() == b.to_json(), || "reports differ".into())?;
    Ok(format!("{} checks, identical JSON", a.checks.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("orbit witnesses for |n| <= 1000", witnesses),
        ("swap and loop words for |n| <= 1000", swap_and_loop),
        ("certified core growth at depths 4..10", certified_core_growth),
        ("closed-form generator powers", closed_form_powers),
        ("freeness sweep to length 10", freeness),
        ("index and rank bound for q in [2, 200]", rank_bounds),
        ("abelianization for q in [2, 50]", abelianization),
        ("Schreier generators for q in [2, 50]", schreier_generators),
        ("oracle equivalences", oracle_equivalences),
        ("deterministic default report", deterministic_report),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
