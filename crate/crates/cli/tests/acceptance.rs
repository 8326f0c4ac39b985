//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use mukai_cli::{run, ClaimReport, Command, FormsAction, RunConfig, Status};
use mukai_core::forms::{count_similarity_classes, hilbert_symbol, Family, Place};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 20240607;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn claim<'a>(report: &'a ClaimReport, id: &str) -> &'a ClaimReport {
    report.find(id).unwrap_or_else(|| panic!("claim {id} missing"))
}

fn ms(c: &ClaimReport) -> Duration {
    Duration::from_millis(c.wall_clock_ms.parse().expect("decimal milliseconds"))
}

fn s(v: &Value) -> &str {
    v.as_str().unwrap_or_else(|| panic!("expected a string, got {v}"))
}

fn num(v: &Value) -> u64 {
    s(v).parse().expect("decimal string")
}

/// Rank over `F_2` of bit-packed vectors.
fn gf2_rank(vs: &[u64]) -> usize {
    let mut rows = vs.to_vec();
    let mut rank = 0;
    for bit in (0..64).rev() {
        if let Some(k) = (rank..rows.len()).find(|&k| rows[k] >> bit & 1 == 1) {
            rows.swap(rank, k);
            for j in 0..rows.len() {
                if j != rank && rows[j] >> bit & 1 == 1 {
                    rows[j] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Whether `a x^2 + b y^2 = z^2` is solvable modulo `p^k` with a primitive solution.
fn brute_force_symbol(a: i64, b: i64, p: u64, k: u32) -> i32 {
    let m = p.pow(k) as i64;
    let pi = p as i64;
    let mut unit_square = vec![false; m as usize];
    let mut any_square = vec![false; m as usize];
    for z in 0..m {
        let r = (z * z % m) as usize;
        any_square[r] = true;
        if z % pi != 0 {
            unit_square[r] = true;
        }
    }
    let (a, b) = (a.rem_euclid(m), b.rem_euclid(m));
    for x in 0..m {
        for y in 0..m {
            let r = ((a * (x * x % m) + b * (y * y % m)) % m) as usize;
            if ((x % pi != 0 || y % pi != 0) && any_square[r]) || unit_square[r] {
                return 1;
            }
        }
    }
    -1
}

fn squarefree_part(mut n: i64) -> i64 {
    let mut k = 2;
    while k * k <= n.abs() {
        while n % (k * k) == 0 {
            n /= k * k;
        }
        k += 1;
    }
    n
}

fn criterion_1(all: &ClaimReport) -> Outcome {
    let c = claim(all, "quadric-derivation");
    let systems = c.artifacts["systems"].as_array().unwrap();
    let dims_ok = systems.iter().all(|x| num(&x["quadric_space_dim"]) == 10);
    let spans_ok = systems.iter().all(|x| x["matches_clifford_span"] == Value::Bool(true));
    let mod2_ok = systems.iter().all(|x| num(&x["reduction_span_rank"]) == 10 && s(&x["reduction_field"]) == "F_2");
    ok(
        c.status == Status::Pass && dims_ok && spans_ok && mod2_ok && ms(c) < Duration::from_secs(30),
        format!("dim 10 for both parities, Clifford span equal, mod-2 rank 10 ({} ms)", c.wall_clock_ms),
    )
}

fn criterion_2(all: &ClaimReport) -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    for (q, limit) in [(2u64, Duration::from_secs(1)), (3, Duration::from_secs(300))] {
        let c = claim(all, &format!("sigma-count-f{q}"));
        let expected = (1 + q) * (1 + q * q) * (1 + q.pow(3)) * (1 + q.pow(4));
        let r = &c.artifacts["report"];
        let total = num(&r["total"]);
        pass &= total == expected && num(&r["singular"]) == 0 && num(&r["smooth"]) == total && ms(c) < limit;
        detail.push(format!("#Σ(F_{q}) = {total} (expected {expected}, {} ms)", c.wall_clock_ms));
    }
    ok(pass, detail.join("; "))
}

fn criterion_3(all: &ClaimReport) -> Outcome {
    let c = claim(all, "sigma-degree-f3");
    let m: Vec<u64> = c.artifacts["multiplicities"].as_array().unwrap().iter().map(num).collect();
    ok(
        m.len() == 20 && m.iter().all(|&x| x == 12) && ms(c) < Duration::from_secs(120),
        format!("{} transverse P^5-slices over F_3, multiplicities {:?}", m.len(), m.iter().collect::<std::collections::BTreeSet<_>>()),
    )
}

fn criterion_4(all: &ClaimReport) -> Outcome {
    let c = claim(all, "distinguished-relation");
    let a = &c.artifacts;
    let hasse_empty = a["profile"]["hasse_minus"].as_array().is_some_and(Vec::is_empty);
    ok(
        num(&a["relation_space_dim"]) == 1
            && num(&a["rank"]) == 10
            && s(&a["profile"]["disc"]) == "1"
            && hasse_empty
            && ms(c) < Duration::from_secs(120),
        format!("relation space 1, rank {}, disc {}, Hasse support empty: {hasse_empty}", s(&a["rank"]), s(&a["profile"]["disc"])),
    )
}

fn criterion_5(audit: &ClaimReport, elapsed: Duration) -> Outcome {
    let emptiness = (1..=5).all(|i| claim(audit, &format!("z-model-emptiness-v{i}")).status == Status::Pass);
    let all_primes_covered = (1..=5).all(|i| {
        let fields: Vec<&str> = claim(audit, &format!("z-model-emptiness-v{i}")).artifacts["primes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| s(&c["field"]))
            .collect();
        [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47].iter().all(|p| fields.contains(&format!("F_{p}").as_str()))
    });
    let mut dims_ok = true;
    let mut smooth_ok = true;
    let mut seen = 0;
    for i in 1..=5u64 {
        let c = claim(audit, &format!("z-model-X{}", 10 - i));
        for sec in c.artifacts["sections"].as_array().unwrap() {
            seen += 1;
            dims_ok &= num(&sec["dimension"]) == 10 - i;
            smooth_ok &= sec["audits"].as_array().unwrap().iter().all(|a| num(&a["singular"]) == 0 && num(&a["points"]) > 0);
        }
    }
    ok(
        emptiness && all_primes_covered && dims_ok && smooth_ok && seen == 20 && elapsed < Duration::from_secs(900),
        format!("emptiness over Q and all p <= 50 for i = 1..5; dim X_i = 10 - i and audited points smooth for {seen} (i, p) pairs"),
    )
}

fn criterion_6(all: &ClaimReport) -> Outcome {
    let lemma = claim(all, "f2-lemma-8");
    let witness: Vec<u64> = lemma.artifacts["witness"].as_array().unwrap().iter().map(num).collect();
    let mut four_subsets = 0;
    let mut independent = 0;
    for a in 0..witness.len() {
        for b in a + 1..witness.len() {
            for c in b + 1..witness.len() {
                for d in c + 1..witness.len() {
                    four_subsets += 1;
                    if gf2_rank(&[witness[a], witness[b], witness[c], witness[d]]) == 4 {
                        independent += 1;
                    }
                }
            }
        }
    }
    let secant = claim(all, "f2-secant-bound");
    let a = &secant.artifacts;
    let max_count = num(&a["max_count"]);
    let zero_dim = num(&a["zero_dimensional"]);
    let time = ms(lemma) + ms(secant);
    ok(
        num(&lemma.artifacts["maximum"]) == 8
            && witness.len() == 8
            && four_subsets == 70
            && independent == 70
            && num(&lemma.artifacts["stats"]["deepest_dead_end"]) == 8
            && num(&a["trials"]) == 10_000
            && zero_dim > 0
            && max_count <= 8
            && time < Duration::from_secs(120),
        format!("maximum 8, 70/70 four-subsets independent; {zero_dim} zero-dimensional sections, max {max_count} points"),
    )
}

fn criterion_7(all: &ClaimReport) -> Outcome {
    let c = claim(all, "spinor-duality");
    let a = &c.artifacts;
    ok(
        num(&a["p"]) == 101 && num(&a["trials"]) == 100 && num(&a["passes"]) == 100 && ms(c) < Duration::from_secs(60),
        format!("{}/{} transports land on Σ_- at p = {}", s(&a["passes"]), s(&a["trials"]), s(&a["p"])),
    )
}

fn criterion_8(all: &ClaimReport) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut agree = 0;
    for _ in 0..500 {
        let pick = |rng: &mut ChaCha8Rng| loop {
            let a: i64 = rng.gen_range(-40..=40);
            if a != 0 {
                break a;
            }
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let k = if p == 2 { 6 } else { 4 };
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        if hilbert_symbol(&q(a), &q(b), Place::Prime(p)) == brute_force_symbol(squarefree_part(a), squarefree_part(b), p, k) {
            agree += 1;
        }
    }
    let props = claim(all, "forms-local-global");
    let recip_ok = num(&props.artifacts["reciprocity_trials"]) == 200
        && props.artifacts["reciprocity_failures"].as_array().unwrap().is_empty();
    let scaling_ok = num(&props.artifacts["scaling_trials"]) == 500
        && props.artifacts["scaling_failures"].as_array().unwrap().is_empty();
    let over_q = [Family::TenfoldO1, Family::Ninefold].iter().all(|&f| {
        let c = count_similarity_classes(f, 1).unwrap();
        c.orbits == 2 && c.representatives.len() == 2 && c.representatives_pairwise_non_similar == Some(true)
    });
    let abstract_counts = ["tenfold-2r", "ninefold-2r"].iter().all(|id| {
        let counts = claim(all, id).artifacts["counts"].as_array().unwrap().clone();
        counts.len() == 10 && counts.iter().all(|c| num(&c["orbits"]) == 1 << num(&c["r"]))
    });
    let family = claim(all, "qs-family-infinite");
    let family_ok = family.status == Status::Pass && family.artifacts["forms"].as_array().unwrap().len() == 10;
    let classify_cli = run(&RunConfig::new(Command::Forms {
        action: FormsAction::Classify { family: "ninefold".into(), r: 1 },
    }))
    .map(|r| num(&claim(&r, "ninefold-2r").artifacts["counts"][0]["orbits"]) == 2)
    .unwrap_or(false);
    let time = start.elapsed() + ms(props) + ms(family);
    ok(
        agree == 500 && recip_ok && scaling_ok && over_q && abstract_counts && family_ok && classify_cli && time < Duration::from_secs(60),
        format!(
            "oracle agreement {agree}/500, reciprocity {recip_ok}, scaling {scaling_ok}, counts over Q {over_q}, 2^r for r <= 10 {abstract_counts}, q_S family non-similar {family_ok}"
        ),
    )
}

fn criterion_9(all: &ClaimReport) -> Outcome {
    let c = claim(all, "dimension-audit");
    let values: Vec<u64> = c.artifacts["entries"].as_array().unwrap().iter().map(|e| num(&e["value"])).collect();
    let mut sorted = values.clone();
    sorted.sort();
    ok(
        sorted == vec![10, 45, 46, 48] && c.artifacts["spin_below_grassmannian"] == Value::Bool(true),
        format!("values {values:?}, 45 < 48 flagged"),
    )
}

fn criterion_10(first: &ClaimReport, second: &ClaimReport) -> Outcome {
    ok(first.without_timing() == second.without_timing(), "two run(all) reports agree modulo wall-clock")
}

fn main() {
    let config = RunConfig::new(Command::All).with_seed(SEED);
    let t = Instant::now();
    let first = run(&config).expect("run(all)");
    let first_elapsed = t.elapsed();
    let second = run(&config).expect("run(all) again");
    let audit_elapsed = claim(&first, "audit-z-models").leaves().iter().map(|c| ms(c)).sum::<Duration>();

    let outcomes = [
        ("quadric derivation", criterion_1(&first)),
        ("point counts", criterion_2(&first)),
        ("degree on slices", criterion_3(&first)),
        ("distinguished relation", criterion_4(&first)),
        ("integral models", criterion_5(claim(&first, "audit-z-models"), audit_elapsed)),
        ("F_2 lemma", criterion_6(&first)),
        ("duality", criterion_7(&first)),
        ("quadratic forms", criterion_8(&first)),
        ("dimension audit", criterion_9(&first)),
        ("reproducibility", criterion_10(&first, &second)),
    ];
    println!("acceptance: run(all) took {} ms", first_elapsed.as_millis());
    let mut failed = 0;
    for (k, (name, o)) in outcomes.iter().enumerate() {
        println!("criterion {:>2} {:<24} {}  {}", k + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
