//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qtdeg::charpair::{cohomology_form, identify_manifold, validate_pair, Identification};
use qtdeg::classify::{
    block_sum_certificates, degree_set, mirror_domain, quaternion_matrix, realize, stabilize_certificate,
};
use qtdeg::numtheory::is_sum_of_two_squares;
use qtdeg::obstructions::run_all;
use qtdeg::quadform::Parity;
use qtdeg::search::{default_box_bound, find_certificate, verify_certificate, Budget, SearchOutcome};
use qtdeg::{IntMatrix, QuasitoricSum};

type Outcome = Result<String, String>;

fn t(a: u32, b: u32, c: u32) -> QuasitoricSum {
    QuasitoricSum::new(a, b, c).expect("valid triple")
}

/// Complete or bounded search; `Some(true)` only with a verified certificate.
fn search(m: &QuasitoricSum, n: &QuasitoricSum, k: i64, bound: u64) -> Option<bool> {
    match find_certificate(m, n, k, bound, &Budget::default()).expect("valid search") {
        SearchOutcome::Found(c) => Some(verify_certificate(c.matrix(), m, n, k).expect("shape")),
        SearchOutcome::NoneExists(_) => Some(false),
        SearchOutcome::Unknown(_) => None,
    }
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail} ({:.2}s)", took.as_secs_f64()))
    } else {
        Err(format!("{detail}, but took {:.2}s > {}s", took.as_secs_f64(), limit.as_secs()))
    }
}

fn self_maps_of_six() -> Outcome {
    let start = Instant::now();
    let m = t(6, 0, 0);
    let mut missing = Vec::new();
    let mut bad = Vec::new();
    for k in 0..=19 {
        match (search(&m, &m, k, 1), is_sum_of_two_squares(k)) {
            (Some(true), true) | (Some(false), false) => {}
            (Some(true), false) => bad.push(k),
            (_, true) => missing.push(k),
            (None, false) => bad.push(k),
        }
    }
    if !missing.is_empty() || !bad.is_empty() {
        return Err(format!("two-square members not realized {missing:?}; wrongly realized {bad:?}"));
    }
    within(start, Duration::from_secs(10), "degrees 3,7,11,15,19 excluded, every two-square k <= 19 realized".into())
}

fn two_square_law() -> Outcome {
    let start = Instant::now();
    let (m, n) = (t(2, 0, 0), t(1, 0, 0));
    let mut found = Vec::new();
    for k in -30..=30 {
        match search(&m, &n, k, 1) {
            Some(true) => found.push(k),
            Some(false) => {}
            None => return Err(format!("definite search inconclusive at {k}")),
        }
    }
    let expect = vec![0, 1, 2, 4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25, 26, 29];
    if found != expect {
        return Err(format!("search found {found:?}"));
    }
    within(start, Duration::from_secs(1), format!("{} members in [-30,30], none negative", found.len()))
}

fn three_square_law() -> Outcome {
    let start = Instant::now();
    let (m, n) = (t(3, 0, 0), t(1, 0, 0));
    let mut excluded = Vec::new();
    for k in 0..=100 {
        match search(&m, &n, k, 1) {
            Some(true) => {}
            Some(false) => excluded.push(k),
            None => return Err(format!("definite search inconclusive at {k}")),
        }
    }
    let expect = vec![7, 15, 23, 28, 31, 39, 47, 55, 60, 63, 71, 79, 87, 92, 95];
    if excluded != expect {
        return Err(format!("excluded {excluded:?}"));
    }
    within(start, Duration::from_secs(30), format!("excluded set {excluded:?}"))
}

fn quaternion_template() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let [a, b, c, d]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-50..=50));
        let q = quaternion_matrix(a, b, c, d);
        let norm = BigInt::from(a * a + b * b + c * c + d * d);
        if q.transpose().mul(&q).expect("4x4") != IntMatrix::identity(4).scale(&norm) {
            return Err(format!("template fails at ({a},{b},{c},{d})"));
        }
    }
    Ok("500 random quadruples satisfy PᵗP = (a²+b²+c²+d²)·I₄".into())
}

fn mixed_self_maps() -> Outcome {
    let m = t(1, 1, 0);
    let answer = degree_set(&m, &m);
    if !answer.is_exact() {
        return Err("degree set is not exact".into());
    }
    let mut members = Vec::new();
    for k in -20..=20 {
        match realize(&m, &m, k) {
            SearchOutcome::Found(c) if verify_certificate(c.matrix(), &m, &m, k).unwrap() => members.push(k),
            SearchOutcome::Found(_) => return Err(format!("unverified certificate at {k}")),
            SearchOutcome::NoneExists(_) => {}
            SearchOutcome::Unknown(why) => return Err(format!("unknown at {k}: {why}")),
        }
    }
    let expect: Vec<i64> = (-20..=20).filter(|k: &i64| k.rem_euclid(4) != 2).collect();
    if members != expect {
        return Err(format!("members {members:?}"));
    }
    for k in [2, 6, 10, 14, 18, -2, -6] {
        if search(&m, &m, k, 12) == Some(true) {
            return Err(format!("bounded search realized {k}"));
        }
    }
    Ok("members are exactly k ≢ 2 mod 4; box-12 search finds none at 2 mod 4".into())
}

fn small_triples(max_rank: usize) -> Vec<QuasitoricSum> {
    let mut v = Vec::new();
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=2 {
                if let Ok(x) = QuasitoricSum::new(a, b, c) {
                    if x.rank() <= max_rank {
                        v.push(x);
                    }
                }
            }
        }
    }
    v
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut wrong = Vec::new();
    for m in small_triples(4) {
        for n in small_triples(2) {
            let answer = degree_set(&m, &n);
            if !answer.is_exact() {
                continue;
            }
            for k in -12..=12 {
                checked += 1;
                let member = answer.contains(k);
                let agrees = if m.is_definite() {
                    search(&m, &n, k, 1) == Some(member)
                } else if member {
                    matches!(realize(&m, &n, k), SearchOutcome::Found(c)
                        if verify_certificate(c.matrix(), &m, &n, k).unwrap())
                } else {
                    search(&m, &n, k, default_box_bound(k)) != Some(true)
                };
                if !agrees {
                    wrong.push(format!("{m} -> {n} at {k}"));
                }
            }
        }
    }
    if !wrong.is_empty() {
        return Err(format!("{} disagreements: {}", wrong.len(), wrong.join("; ")));
    }
    within(start, Duration::from_secs(300), format!("{checked} exact (M,N,k) cases agree"))
}

fn certificate_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let domains = small_triples(4);
    let targets = small_triples(2);
    let mut instances = 0;
    let mut tries = 0;
    while instances < 1000 {
        tries += 1;
        if tries > 20_000 {
            return Err(format!("only {instances} instances generated"));
        }
        let m = domains[rng.gen_range(0..domains.len())];
        let n = targets[rng.gen_range(0..targets.len())];
        let members = degree_set(&m, &n).set.members_in(-9, 9);
        let k = members[rng.gen_range(0..members.len())];
        let SearchOutcome::Found(c) = realize(&m, &n, k) else { continue };
        let extra = domains[rng.gen_range(0..domains.len())];
        let mut derived = vec![stabilize_certificate(&c, &extra), mirror_domain(&c)];
        let self_members = degree_set(&n, &n).set.members_in(-5, 5);
        let l = self_members[rng.gen_range(0..self_members.len())];
        if let SearchOutcome::Found(s) = realize(&n, &n, l) {
            derived.push(c.compose(&s).map_err(|e| e.to_string())?);
        }
        let n2 = targets[rng.gen_range(0..targets.len())];
        let m2 = domains[rng.gen_range(0..domains.len())];
        if let SearchOutcome::Found(d) = realize(&m2, &n2, k) {
            derived.push(block_sum_certificates(&c, &d).map_err(|e| e.to_string())?);
        }
        for d in &derived {
            if !verify_certificate(d.matrix(), &d.domain(), &d.target(), d.degree()).unwrap() {
                return Err(format!("derived certificate fails for {} -> {}", d.domain(), d.target()));
            }
        }
        instances += 1;
    }
    Ok(format!("{instances} generated instances; composition, stabilization, block sum and mirror all verify"))
}

fn charpair() -> Outcome {
    for k in -10..=10i64 {
        let pair = validate_pair(4, &[(1, 0), (0, 1), (-1, k), (0, -1)]).map_err(|e| e.to_string())?;
        let q = cohomology_form(&pair);
        let parity = if k % 2 == 0 { Parity::Even } else { Parity::Odd };
        if q.determinant() != BigInt::from(-1) || q.signature() != 0 || q.parity() != parity {
            return Err(format!("Hirzebruch k={k}: form {q}"));
        }
        let expect = if k % 2 == 0 { t(0, 0, 1) } else { t(1, 1, 0) };
        if identify_manifold(&pair) != Identification::Manifold(expect) {
            return Err(format!("Hirzebruch k={k} identified as {}", identify_manifold(&pair)));
        }
    }
    let tri = validate_pair(3, &[(1, 0), (0, 1), (-1, -1)]).map_err(|e| e.to_string())?;
    let q = cohomology_form(&tri);
    if q.order() != 1 || q.determinant().magnitude() != &1u32.into() {
        return Err(format!("triangle form {q}"));
    }
    Ok("Hirzebruch k in [-10,10] and the triangle match".into())
}

fn obstruction_soundness() -> Outcome {
    let mut found = 0;
    let mut keys = BTreeSet::new();
    for m in small_triples(4) {
        for n in small_triples(2) {
            for k in -12..=12 {
                let bound = if m.is_definite() { 1 } else { default_box_bound(k) };
                if search(&m, &n, k, bound) == Some(true) {
                    found += 1;
                    for o in run_all(&m, &n, k) {
                        keys.insert(format!("{m} -> {n} at {k}: {:?}", o.kind));
                    }
                }
            }
        }
    }
    if keys.is_empty() {
        Ok(format!("{found} found certificates, no obstruction fires on any"))
    } else {
        Err(keys.into_iter().collect::<Vec<_>>().join("; "))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 self-maps of (CP2)#6: complete search", self_maps_of_six),
        ("2 (CP2)#2 -> CP2: two-square law", two_square_law),
        ("3 (CP2)#3 -> CP2: three-square law", three_square_law),
        ("4 quaternion template", quaternion_template),
        ("5 CP2#anti-CP2 self-maps: k not 2 mod 4", mixed_self_maps),
        ("6 exact degree sets agree with search", oracle_agreement),
        ("7 certificate algebra", certificate_algebra),
        ("8 characteristic pairs", charpair),
        ("9 obstruction soundness", obstruction_soundness),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
