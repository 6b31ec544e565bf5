//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every line is printed; exits nonzero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use fialg::algebra::{FinSeries, IncidenceAlgebra};
use fialg::error::Error;
use fialg::jordan::{
    conjugate_by_unit, decompose, from_order_map, near_sum_build, random_jordan_iso, verify_paper_identities,
    Decomposition, IdentityOptions, JordanEngine, NearSumSplit, Side,
};
use fialg::linmap::LinMap;
use fialg::poset::{order_isomorphisms, Poset};
use fialg::random::{random_series, random_unit_series};
use fialg::ring::{RingSpec, RingValue};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Corpus = Vec<(String, IncidenceAlgebra, LinMap, Decomposition)>;

static CORPUS: OnceLock<Corpus> = OnceLock::new();

/// Named posets plus 25 random 6-element posets, over each ring.
fn build_corpus() -> Corpus {
    let mut posets = named_posets();
    for seed in 0..25 {
        posets.push((format!("random6 seed {seed}"), random_poset(6, seed)));
    }
    let mut out = Vec::new();
    for (name, p) in posets {
        for ring in RINGS {
            let a = fi(p.clone(), ring);
            let seed = out.len() as u64;
            let phi = corpus_map(&a, seed);
            let d = decompose(&a, &phi, false).unwrap_or_else(|e| panic!("{name} over {ring}: {e}"));
            out.push((format!("{name} over {ring}"), a, phi, d));
        }
    }
    out
}

fn corpus() -> &'static Corpus {
    CORPUS.get_or_init(build_corpus)
}

fn near_sum_suite() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    let secs = start.elapsed().as_secs_f64();
    let bad: Vec<&str> = corpus
        .iter()
        .filter(|(_, _, _, d)| !(d.report.all_pass() && d.report.checks.len() == 5))
        .map(|(n, ..)| n.as_str())
        .collect();
    let mixed = corpus
        .iter()
        .filter(|(_, _, phi, _)| !phi.check_homomorphism(false).all_pass() && !phi.check_homomorphism(true).all_pass())
        .count();
    outcome(
        bad.is_empty() && secs < 60.0,
        format!(
            "{} decompositions, {} failing {bad:?}, {mixed} neither hom nor anti, {secs:.1}s",
            corpus.len(),
            bad.len()
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut posets = named_posets();
    posets.push(("random5 seed 1".into(), random_poset(5, 1)));
    posets.push(("random5 seed 2".into(), random_poset(5, 2)));
    let mut pairs = 0;
    let mut compared = 0;
    let mut bad = Vec::new();
    for (name, p) in posets {
        for ring in RINGS {
            let a = fi(p.clone(), ring);
            let engine = JordanEngine::new(&a, corpus_map(&a, 17), false).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(pairs);
            pairs += 1;
            for k in 0..100 {
                let f = random_series(&a, &mut rng, 2, 3);
                let coords = a.coord_vec(&f).unwrap();
                for side in [Side::Psi, Side::Theta] {
                    let oracle = engine.extend_via_inverse(&f, side).unwrap();
                    compared += 1;
                    if oracle.coords() != engine.side_map(side).apply_vec(&coords) {
                        bad.push(format!("{name} over {ring} series {k} {side:?}"));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{pairs} (poset, ring) pairs, {compared} comparisons, {} mismatches {bad:?}",
            bad.len()
        ),
    )
}

fn identity_suite() -> Outcome {
    let opts = IdentityOptions {
        seed: 9,
        samples: 3,
        w_samples: 2,
        quintuples: 12,
    };
    let mut posets = named_posets();
    posets.push(("random5 seed 3".into(), random_poset(5, 3)));
    let mut runs = 0;
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut corrupted = 0;
    let mut caught = 0;
    for (name, p) in posets {
        for ring in RINGS {
            let a = fi(p.clone(), ring);
            for seed in [1, 2] {
                let phi = corpus_map(&a, seed);
                let r = verify_paper_identities(&a, &phi, false, &opts).unwrap();
                runs += 1;
                checks += r.checks.len();
                bad.extend(
                    r.failing()
                        .map(|c| format!("{name} over {ring} seed {seed}: {}", c.name)),
                );
            }
            if p.len() > 1 {
                let phi = corpus_map(&a, 3);
                let broken = corrupt(&phi, runs as u64);
                let r = verify_paper_identities(&a, &broken, false, &opts).unwrap();
                corrupted += 1;
                if !r.all_pass() && r.witness_count() > 0 {
                    caught += 1;
                }
            }
        }
    }
    outcome(
        bad.is_empty() && caught == corrupted,
        format!("{runs} maps x 25 identities ({checks} checks), {} failing {bad:?}; corrupted maps caught {caught}/{corrupted}", bad.len()),
    )
}

/// `phi` with one column replaced by itself plus another. The shear is
/// unimodular, so the result stays invertible, and it is never Jordan.
fn corrupt(phi: &LinMap, seed: u64) -> LinMap {
    let dim = phi.domain().dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let i = rng.gen_range(0..dim);
    let j = (i + rng.gen_range(1..dim)) % dim;
    let mut cols = phi.columns();
    let add: Vec<RingValue> = cols[j].iter().zip(&cols[i]).map(|(a, b)| a + b).collect();
    cols[j] = add;
    LinMap::new(phi.domain().clone(), phi.codomain().clone(), &cols).unwrap()
}

fn algebra_kernel() -> Outcome {
    let mut units = 0;
    let mut triples = 0;
    let mut subsets = 0;
    let mut bad = Vec::new();
    let q = RingSpec::Rationals;
    for (name, p) in small_posets() {
        let p = Arc::new(p);
        let n = p.len();
        let basis: Vec<FinSeries> = fialg::algebra::AlgBasis::new(&p)
            .pairs()
            .iter()
            .map(|&(x, y)| FinSeries::unit_series(p.clone(), q, x, y).unwrap())
            .collect();
        let pairs: Vec<(usize, usize)> = fialg::algebra::AlgBasis::new(&p).pairs().to_vec();
        for (i, &(x, y)) in pairs.iter().enumerate() {
            for (j, &(u, v)) in pairs.iter().enumerate() {
                units += 1;
                let expected = if y == u {
                    basis[pairs.iter().position(|&pq| pq == (x, v)).unwrap()].clone()
                } else {
                    FinSeries::zero(p.clone(), q)
                };
                if basis[i].convolve(&basis[j]).unwrap() != expected {
                    bad.push(format!("{name}: unit product {i}*{j}"));
                }
            }
        }
        let delta = FinSeries::delta(p.clone(), q);
        for a in &basis {
            if &delta.convolve(a).unwrap() != a || &a.convolve(&delta).unwrap() != a {
                bad.push(format!("{name}: delta identity"));
            }
            for b in &basis {
                let ab = a.convolve(b).unwrap();
                for c in &basis {
                    triples += 1;
                    if ab.convolve(c).unwrap() != a.convolve(&b.convolve(c).unwrap()).unwrap() {
                        bad.push(format!("{name}: associativity"));
                    }
                }
            }
        }
        let all: Vec<Vec<usize>> = (0..1usize << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        for y in &all {
            for z in &all {
                subsets += 1;
                let inter: Vec<usize> = y.iter().copied().filter(|i| z.contains(i)).collect();
                let lhs = FinSeries::subset_idempotent(p.clone(), q, y)
                    .convolve(&FinSeries::subset_idempotent(p.clone(), q, z))
                    .unwrap();
                if lhs != FinSeries::subset_idempotent(p.clone(), q, &inter) {
                    bad.push(format!("{name}: idempotents {y:?} {z:?}"));
                }
            }
        }
    }
    let mut random = 0;
    for (k, p) in [Poset::chain(8), random_poset(8, 0), random_poset(8, 1)]
        .into_iter()
        .enumerate()
    {
        for ring in RINGS {
            let a = fi(p.clone(), ring);
            let delta = FinSeries::delta(a.poset().clone(), ring);
            let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
            for _ in 0..1000 / 9 + 1 {
                let [f, g, h] = [0; 3].map(|_| random_series(&a, &mut rng, 1, 2));
                random += 1;
                let fg = f.convolve(&g).unwrap();
                if fg != brute_convolve(&f, &g)
                    || fg.convolve(&h).unwrap() != f.convolve(&g.convolve(&h).unwrap()).unwrap()
                    || delta.convolve(&f).unwrap() != f
                    || f.convolve(&delta).unwrap() != f
                {
                    bad.push(format!("8-element poset {k} over {ring}"));
                }
            }
        }
    }
    outcome(
        bad.is_empty() && random >= 1000,
        format!("{units} unit products, {triples} basis triples, {subsets} idempotent pairs, {random} random 8-element triples; {} failures", bad.len()),
    )
}

fn recognizer_soundness() -> Outcome {
    // (name, map, expected homomorphism flag: Some(anti) or None for Jordan only)
    let mut built: Vec<(String, LinMap, Option<bool>)> = Vec::new();
    let mut posets = named_posets();
    posets.push((
        "N".into(),
        small_posets().into_iter().find(|(n, _)| n == "N").unwrap().1,
    ));
    for (name, p) in &posets {
        for ring in RINGS {
            let a = fi(p.clone(), ring);
            for rev in [false, true] {
                for m in order_isomorphisms(a.poset(), a.poset(), rev).unwrap() {
                    built.push((
                        format!("{name} {ring} order map rev={rev}"),
                        from_order_map(&m, &a, &a).unwrap(),
                        Some(rev),
                    ));
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let u = random_unit_series(&a, &mut rng);
            built.push((
                format!("{name} {ring} conjugation"),
                conjugate_by_unit(&u, &a).unwrap(),
                Some(false),
            ));
            built.push((
                format!("{name} {ring} random Jordan"),
                random_jordan_iso(&a, 5).unwrap(),
                None,
            ));
        }
    }
    let a = fi(two_chains(), RingSpec::Rationals);
    built.push(("two 2-chains hand-built near-sum".into(), hand_mixed(&a), None));

    let mut rejected_good = Vec::new();
    for (name, m, flag) in &built {
        let hom_ok = flag.is_none_or(|anti| m.check_homomorphism_unital(anti).all_pass());
        if !hom_ok || !m.check_jordan(false).unwrap().all_pass() {
            rejected_good.push(name.clone());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let candidates: Vec<&(String, LinMap, Option<bool>)> =
        built.iter().filter(|(_, m, _)| m.domain().dim() > 1).collect();
    let mut missed = Vec::new();
    for case in 0..20 {
        let (name, m, flag) = candidates[rng.gen_range(0..candidates.len())];
        let d = m.domain().dim();
        let (row, col) = (rng.gen_range(0..d), rng.gen_range(0..d));
        let ring = m.ring();
        let mutant = m.perturbed(row, col, &ring.one());
        let jordan = m_report(&mutant);
        let hom_caught = flag.is_none_or(|anti| mutant.check_homomorphism(anti).witness_count() > 0);
        if jordan == 0 || !hom_caught {
            missed.push(format!("case {case}: {name} entry ({row},{col})"));
        }
    }
    outcome(
        rejected_good.is_empty() && missed.is_empty(),
        format!(
            "{} generator maps accepted ({} wrongly rejected {rejected_good:?}), 20 mutants, {} missed {missed:?}",
            built.len() - rejected_good.len(),
            rejected_good.len(),
            missed.len()
        ),
    )
}

fn m_report(m: &LinMap) -> usize {
    m.check_jordan(false).unwrap().witness_count()
}

/// Identity on {1<2}, transpose on {3<4}, assembled by hand.
fn hand_mixed(a: &IncidenceAlgebra) -> LinMap {
    let alg = a.algebra();
    let b = a.basis();
    let unit = |x, y| alg.basis_vec(b.index_of(x, y).unwrap());
    let zero = alg.zero_vec();
    let swap = |x: usize| if x >= 2 { 5 - x } else { x };
    let mut psi = Vec::new();
    let mut theta = Vec::new();
    for &(x, y) in b.pairs() {
        if x == y {
            psi.push(unit(swap(x), swap(x)));
            theta.push(unit(swap(x), swap(x)));
        } else if x < 2 {
            psi.push(unit(x, y));
            theta.push(zero.clone());
        } else {
            psi.push(zero.clone());
            theta.push(unit(swap(y), swap(x)));
        }
    }
    let psi = LinMap::new(alg.clone(), alg.clone(), &psi).unwrap();
    let theta = LinMap::new(alg.clone(), alg.clone(), &theta).unwrap();
    near_sum_build(&psi, &theta, &NearSumSplit::for_incidence(a)).unwrap()
}

fn ring_gate() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=50u64 {
        let ring = RingSpec::modular(n).unwrap();
        let torsion = (0..n as i64)
            .map(|a| RingValue::from_i64(ring, a))
            .any(|a| !a.is_zero() && (&a + &a).is_zero());
        if ring.is_two_torsionfree() == torsion || ring.is_two_torsionfree() != (n % 2 == 1) {
            bad.push(n);
        }
    }
    let a = fi(Poset::chain(2), RingSpec::Modular(6));
    let id = LinMap::identity(a.algebra().clone());
    let refused = matches!(
        decompose(&a, &id, false),
        Err(Error::TorsionRefused(RingSpec::Modular(6)))
    );
    let overridden = decompose(&a, &id, true).map(|d| d.report.all_pass()).unwrap_or(false);
    let cli = Command::new(env!("CARGO_BIN_EXE_fialg"))
        .args([
            "decompose",
            "--poset",
            &fixture("posets", "chain2"),
            "--ring",
            &fixture("rings", "mod6"),
        ])
        .args(["--map", &fixture("maps", "chain2_identity")])
        .output()
        .expect("binary runs");
    let cli_refused = cli.status.code() == Some(2) && String::from_utf8_lossy(&cli.stderr).contains("TorsionRefused");
    outcome(
        bad.is_empty() && refused && overridden && cli_refused,
        format!(
            "moduli 2..=50 scanned, {} disagreements {bad:?}; modular(6) refused: {refused}, cli exit 2: {cli_refused}, with override: {overridden}",
            bad.len()
        ),
    )
}

fn recomposition() -> Outcome {
    let corpus = corpus();
    let bad: Vec<&str> = corpus
        .iter()
        .filter(|(_, _, phi, d)| near_sum_build(&d.psi_tilde, &d.theta_tilde, &d.split).ok().as_ref() != Some(phi))
        .map(|(n, ..)| n.as_str())
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} decompositions, {} not recomposed {bad:?}", corpus.len(), bad.len()),
    )
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(kind: &str, name: &str) -> String {
    fixtures().join(kind).join(format!("{name}.json")).display().to_string()
}

fn run_cli(args: &[String], threads: Option<&str>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fialg"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("FIALG_THREADS", t),
        None => cmd.env_remove("FIALG_THREADS"),
    };
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Subcommand, poset, ring, map, extra flags, exit code.
type MapCase<'a> = (&'a str, &'a str, &'a str, &'a str, &'a [&'a str], i32);

/// Every bundled fixture with the documented exit code.
fn cli_cases() -> Vec<(Vec<String>, i32)> {
    let f = fixtures();
    let poset = |n: &str| f.join("posets").join(format!("{n}.json")).display().to_string();
    let ring = |n: &str| f.join("rings").join(format!("{n}.json")).display().to_string();
    let map = |n: &str| f.join("maps").join(format!("{n}.json")).display().to_string();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut cases = Vec::new();
    for p in ["singleton", "chain2", "chain3", "diamond", "antichain2", "two_chains"] {
        cases.push((s(&["validate-poset", &poset(p)]), 0));
        for r in ["rationals", "integers", "mod9"] {
            cases.push((
                s(&["gen-jordan", "--poset", &poset(p), "--ring", &ring(r), "--seed", "3"]),
                0,
            ));
        }
        cases.push((
            s(&[
                "gen-jordan",
                "--poset",
                &poset(p),
                "--ring",
                &ring("mod6"),
                "--seed",
                "3",
            ]),
            2,
        ));
    }
    cases.push((s(&["validate-poset", &poset("cycle")]), 2));
    cases.push((s(&["gen-poset", "--n", "6", "--p", "1/3", "--seed", "5"]), 0));
    let with = |cmd: &str, p: &str, r: &str, m: &str, extra: &[&str]| {
        let mut v = s(&[cmd, "--poset", &poset(p), "--ring", &ring(r), "--map", &map(m)]);
        v.extend(s(extra));
        v
    };
    let table: &[MapCase] = &[
        ("check-map", "chain2", "rationals", "chain2_identity", &[], 0),
        ("check-map", "chain2", "rationals", "chain2_identity", &["--anti"], 1),
        ("check-map", "chain2", "rationals", "chain2_identity", &["--jordan"], 0),
        ("check-map", "chain2", "rationals", "chain2_perturbed", &["--jordan"], 1),
        ("check-map", "chain2", "rationals", "chain2_reversing", &[], 1),
        ("check-map", "chain2", "rationals", "chain2_reversing", &["--anti"], 0),
        ("check-map", "two_chains", "rationals", "two_chains_mixed", &[], 1),
        (
            "check-map",
            "two_chains",
            "rationals",
            "two_chains_mixed",
            &["--anti"],
            1,
        ),
        (
            "check-map",
            "two_chains",
            "rationals",
            "two_chains_mixed",
            &["--jordan"],
            0,
        ),
        ("check-map", "diamond", "mod9", "diamond_jordan_mod9", &["--jordan"], 0),
        ("check-map", "chain3", "integers", "chain3_jordan_int", &["--jordan"], 0),
        ("check-map", "chain2", "mod6", "chain2_identity", &["--jordan"], 2),
        ("decompose", "chain2", "rationals", "chain2_identity", &[], 0),
        ("decompose", "chain2", "rationals", "chain2_reversing", &[], 0),
        ("decompose", "two_chains", "rationals", "two_chains_mixed", &[], 0),
        ("decompose", "diamond", "mod9", "diamond_jordan_mod9", &[], 0),
        ("decompose", "chain3", "integers", "chain3_jordan_int", &[], 0),
        ("decompose", "chain2", "rationals", "chain2_perturbed", &[], 2),
        ("decompose", "chain2", "integers", "chain2_singular", &[], 2),
        ("decompose", "chain2", "mod6", "chain2_identity", &[], 2),
        (
            "decompose",
            "chain2",
            "mod6",
            "chain2_identity",
            &["--allow-torsion"],
            0,
        ),
        ("decompose", "chain3", "rationals", "chain2_identity", &[], 2),
        ("verify", "two_chains", "rationals", "two_chains_mixed", &[], 0),
        (
            "verify",
            "two_chains",
            "rationals",
            "two_chains_mixed",
            &["--identities"],
            0,
        ),
        ("verify", "diamond", "mod9", "diamond_jordan_mod9", &["--identities"], 0),
        (
            "verify",
            "chain3",
            "integers",
            "chain3_jordan_int",
            &["--identities", "--seed", "4"],
            0,
        ),
        ("verify", "chain2", "mod6", "chain2_identity", &["--identities"], 2),
    ];
    for &(cmd, p, r, m, extra, code) in table {
        cases.push((with(cmd, p, r, m, extra), code));
    }
    cases
}

fn cli_determinism() -> Outcome {
    let cases = cli_cases();
    let mut bad = Vec::new();
    for (args, expected) in &cases {
        let (code, first) = run_cli(args, None);
        let (code2, second) = run_cli(args, Some("1"));
        let (code3, third) = run_cli(args, Some("3"));
        if code != *expected || code2 != code || code3 != code || first != second || first != third {
            bad.push(format!("{} -> {code} (expected {expected})", args[..2].join(" ")));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} invocations x 3 runs, {} mismatches {bad:?}", cases.len(), bad.len()),
    )
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("near-sum suite", near_sum_suite),
        ("oracle equivalence", oracle_equivalence),
        ("identity suite", identity_suite),
        ("algebra kernel", algebra_kernel),
        ("recognizer soundness", recognizer_soundness),
        ("ring gate", ring_gate),
        ("recomposition", recomposition),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(criterion))
            .unwrap_or_else(|p| outcome(false, format!("panicked: {}", panic_text(&p))));
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {} {:<24} {} [{:.1}s] {}",
            i + 1,
            name,
            if result.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default()
}
