//! Acceptance suite: one test per criterion, each exact (zero tolerance).
//!
//! Run with `cargo test -p qspace-core --test acceptance -- --nocapture` to
//! see one PASS line per criterion.

mod common;

use common::{
    complement_family, gf, random_subspace, random_subspace_avoiding, rng, search_witnesses,
    subspace_corpus, triangle_f2,
};

use qspace_core::bounds::{bollobas_sum, lemma21_check, thm18_lhs, thm19_cap, tuza_sum};
use qspace_core::counting::{
    check_family_disjointness, extension_count_bruteforce, extension_count_formula, family_f,
    family_size_formula, ExtensionCountParams,
};
use qspace_core::exactnum::{q_binomial, ExactScalar};
use qspace_core::extremal::{
    lift_set_system, search_max_set_system, search_max_weak_uv, SearchConfig,
};
use qspace_core::pairsystems::{verify_uniform, verify_weak_isp, verify_weak_uv};
use qspace_core::subspace::enumerate_subspaces;

fn pass(n: u32, what: &str) {
    println!("PASS criterion {n:2}: {what}");
}

/// Criterion 1: enumeration cardinality equals the Gaussian coefficient for
/// all n <= 5, 0 <= j <= n, q in {2, 3}.
#[test]
fn criterion_01_qbinomial_oracle_equivalence() {
    for q in [2u64, 3] {
        let field = gf(q);
        for n in 0..=5usize {
            for j in 0..=n {
                let count = enumerate_subspaces(&field, n, j).unwrap().count() as u64;
                assert_eq!(
                    ExactScalar::from_int(count),
                    q_binomial(n, j, q).unwrap(),
                    "count mismatch at n={n} j={j} q={q}"
                );
            }
        }
    }
    pass(
        1,
        "enumerate_subspaces cardinality = q_binomial, n <= 5, q in {2,3}",
    );
}

/// Criterion 2: the extension-count formula equals brute force for every
/// valid (n, d, l1, l2) with n <= 4, q in {2, 3}, with at least 3 random
/// witness choices each; the count is invariant across witnesses.
#[test]
fn criterion_02_extension_count_formula_vs_bruteforce() {
    let mut generator = rng(200);
    let mut configurations = 0u32;
    for q in [2u64, 3] {
        let field = gf(q);
        for n in 0..=4usize {
            for d in 0..=n {
                for l1 in 0..=d {
                    for l2 in l1..=n {
                        let params = ExtensionCountParams::new(n, d, l1, l2, q).unwrap();
                        let formula = extension_count_formula(&params).unwrap();
                        let mut counts = Vec::new();
                        for _ in 0..3 {
                            let k_space = random_subspace(&mut generator, &field, n, n - d);
                            let u1 =
                                random_subspace_avoiding(&mut generator, &field, n, l1, &k_space);
                            counts
                                .push(extension_count_bruteforce(&params, &k_space, &u1).unwrap());
                        }
                        assert!(
                            counts.windows(2).all(|w| w[0] == w[1]),
                            "count depends on witness at n={n} d={d} l1={l1} l2={l2} q={q}"
                        );
                        assert_eq!(
                            counts[0], formula,
                            "formula mismatch at n={n} d={d} l1={l1} l2={l2} q={q}"
                        );
                        configurations += 1;
                    }
                }
            }
        }
    }
    pass(
        2,
        "extension-count formula = brute force, witness-invariant, n <= 4, q in {2,3}",
    );
    println!("      ({configurations} configurations x 3 witnesses)");
}

/// Criterion 3: |F(i, j)| equals the closed formula on every corpus system,
/// every pair, every j.
#[test]
fn criterion_03_family_size_formula_vs_enumeration() {
    let corpus = subspace_corpus();
    assert!(corpus.len() >= 20);
    for entry in &corpus {
        let s = &entry.system;
        let n = s.ambient_dim();
        for i in 0..s.len() {
            let (u, v) = s.dims(i).unwrap();
            for j in 0..=n {
                let enumerated = family_f(s, i, j).unwrap().count() as u64;
                let formula = family_size_formula(n, u, v, j, s.q()).unwrap();
                assert_eq!(
                    ExactScalar::from_int(enumerated),
                    formula,
                    "family size mismatch in {} at i={i} j={j}",
                    entry.name
                );
            }
        }
    }
    pass(
        3,
        "family size formula = filtered enumeration on all corpus systems (>= 20), all j",
    );
}

/// Criterion 4: families are pairwise disjoint with the union bound on
/// every corpus system and every j; the triangle at j = 1 is tight.
#[test]
fn criterion_04_family_disjointness_and_union_bound() {
    for entry in &subspace_corpus() {
        let s = &entry.system;
        for j in 0..=s.ambient_dim() {
            let report = check_family_disjointness(s, j).unwrap();
            assert!(
                report.report.passed && report.union_bound_holds,
                "disjointness failed in {} at j={j}",
                entry.name
            );
        }
    }
    let tight = check_family_disjointness(&triangle_f2(), 1).unwrap();
    assert_eq!(tight.union_size, 3);
    assert_eq!(tight.ambient_total, ExactScalar::from_int(3));
    pass(
        4,
        "families pairwise disjoint + union bound on all corpus systems; triangle tight at j=1",
    );
}

/// Criterion 5: the weighted sum is at most 1 on every corpus system and
/// every j, and exactly 1 for the triangle at j = 1.
#[test]
fn criterion_05_weighted_sum_at_most_one() {
    for entry in &subspace_corpus() {
        let s = &entry.system;
        for j in 0..=s.ambient_dim() {
            let r = thm18_lhs(s, j).unwrap();
            assert!(
                r.holds,
                "sum exceeded 1 in {} at j={j}: {}",
                entry.name,
                r.lhs.as_ratio_string()
            );
        }
    }
    let tight = thm18_lhs(&triangle_f2(), 1).unwrap();
    assert_eq!(tight.lhs, ExactScalar::one(), "triangle is tight at j=1");
    pass(
        5,
        "weighted sum <= 1 on all corpus systems, all j; triangle = 1 at j=1",
    );
}

/// Criterion 6: for every uniform corpus system, the chain
/// m q^{-uv} ((q-1)/q)^n <= sum(j = n-v) <= 1 holds exactly.
#[test]
fn criterion_06_uniform_cap_chain_replay() {
    let mut replayed = 0u32;
    for entry in &subspace_corpus() {
        let Some((u, v)) = entry.uv else { continue };
        let s = &entry.system;
        let n = s.ambient_dim();
        let q = s.q();
        let j = n - v;
        let sum = thm18_lhs(s, j).unwrap();
        let m = ExactScalar::from_int(s.len() as u64);
        let shrink = ExactScalar::from_ratio(q - 1, q).unwrap().pow(n as i32);
        let lower = m * ExactScalar::from_int(q).pow(-((u * v) as i32)) * shrink;
        assert!(
            lower <= sum.lhs && sum.holds,
            "chain failed on {}: {} <= {} <= 1",
            entry.name,
            lower.as_ratio_string(),
            sum.lhs.as_ratio_string()
        );
        replayed += 1;
    }
    assert!(replayed >= 10, "corpus must contain enough uniform systems");
    pass(
        6,
        "size-cap chain replays exactly on every uniform corpus system",
    );
    println!("      ({replayed} uniform systems)");
}

/// Criterion 7: the Gaussian-coefficient cap holds for all n <= 10,
/// j <= n, q in {2, 3, 4, 5}.
#[test]
fn criterion_07_gaussian_cap_sweep() {
    for q in [2u64, 3, 4, 5] {
        for n in 0..=10usize {
            for j in 0..=n {
                assert!(
                    lemma21_check(n, j, q).unwrap().holds,
                    "cap failed at n={n} j={j} q={q}"
                );
            }
        }
    }
    pass(
        7,
        "Gaussian-coefficient cap holds for all n <= 10, q in {2,3,4,5}",
    );
}

/// Criterion 8: set search reproduces the closed-form extremal sizes
/// m(1,1) = 3 at ground 3 and m(2,1) = 5 at ground 5.
#[test]
fn criterion_08_set_search_closed_forms() {
    let cfg = SearchConfig::default();
    let r = search_max_set_system(3, 1, 1, &cfg).unwrap();
    assert!(r.exhausted);
    assert_eq!(r.best_size, 3);
    let r = search_max_set_system(5, 2, 1, &cfg).unwrap();
    assert!(r.exhausted);
    assert_eq!(r.best_size, 5);
    pass(
        8,
        "set search: best = 3 at (ground 3, a=1, b=1); best = 5 at (ground 5, a=2, b=1)",
    );
}

/// Criterion 9: subspace search over F_2^2 with u = v = 1 is exhausted at
/// best size 3, under the cap value 8.
#[test]
fn criterion_09_subspace_search_sandwich() {
    let cfg = SearchConfig::default();
    let r = search_max_weak_uv(2, 2, 1, 1, &cfg).unwrap();
    assert!(r.exhausted);
    assert_eq!(r.best_size, 3);
    let cap = thm19_cap(2, 1, 1, 2).unwrap();
    assert_eq!(cap, ExactScalar::from_int(8));
    assert!(ExactScalar::from_int(r.best_size as u64) <= cap);
    pass(
        9,
        "subspace search: best = 3 exhausted over F_2^2, within the cap 8",
    );
}

/// Criterion 10: every search witness lifts (n = ground) to a verified
/// weak ISP-system; uniform ones verify as weak (u,v)-systems.
#[test]
fn criterion_10_lift_soundness() {
    let witnesses = search_witnesses();
    assert!(!witnesses.is_empty());
    for (name, ground, a, b, witness) in witnesses {
        let lifted = lift_set_system(&witness, ground, 2).unwrap();
        assert!(
            verify_weak_isp(&lifted).passed,
            "lift of {name} fails weak ISP"
        );
        if verify_uniform(&witness, a, b).passed {
            assert!(
                verify_weak_uv(&lifted, a, b).passed,
                "uniform lift of {name} fails weak ({a},{b})"
            );
        }
    }
    pass(
        10,
        "every search witness lifts to a verified weak ISP / weak (u,v)-system",
    );
}

/// Criterion 11: the reciprocal-binomial sum is at most 1 on every verified
/// both-direction system (tight on the complement family over {1,2,3}),
/// and the weighted set sum is at most 1 at p in {1/4, 1/2, 3/4} on every
/// verified one-direction system.
#[test]
fn criterion_11_set_sums() {
    for (name, system) in common::bollobas_corpus() {
        let r = bollobas_sum(&system);
        assert!(
            r.holds,
            "sum exceeded 1 on {name}: {}",
            r.lhs.as_ratio_string()
        );
    }
    let tight = bollobas_sum(&complement_family(1, 2));
    assert_eq!(
        tight.lhs,
        ExactScalar::one(),
        "complement family over 3 points is tight"
    );

    let weights = [
        ExactScalar::from_ratio(1, 4).unwrap(),
        ExactScalar::from_ratio(1, 2).unwrap(),
        ExactScalar::from_ratio(3, 4).unwrap(),
    ];
    for (name, system) in common::tuza_corpus() {
        for p in &weights {
            let r = tuza_sum(&system, p).unwrap();
            assert!(
                r.holds,
                "weighted sum exceeded 1 on {name} at p={}: {}",
                p.as_ratio_string(),
                r.lhs.as_ratio_string()
            );
        }
    }
    pass(
        11,
        "set sums <= 1 across both corpora; complement family over {1,2,3} tight",
    );
}

/// Criterion 12: the searches of criteria 8 and 9 are deterministic: the
/// witness JSON is byte-identical across repeated runs and thread counts.
#[test]
fn criterion_12_search_determinism() {
    let mut uv_blobs = Vec::new();
    let mut set_blobs = Vec::new();
    for threads in [1usize, 1, 2, 4] {
        let cfg = SearchConfig {
            threads,
            ..SearchConfig::default()
        };
        let uv = search_max_weak_uv(2, 2, 1, 1, &cfg).unwrap();
        uv_blobs.push(serde_json::to_string(&uv.witness.unwrap()).unwrap());
        let sets = search_max_set_system(5, 2, 1, &cfg).unwrap();
        set_blobs.push(serde_json::to_string(&sets.witness.unwrap()).unwrap());
    }
    assert!(
        uv_blobs.windows(2).all(|w| w[0] == w[1]),
        "uv witnesses differ"
    );
    assert!(
        set_blobs.windows(2).all(|w| w[0] == w[1]),
        "set witnesses differ"
    );
    pass(
        12,
        "witness JSON byte-identical across repeats and threads 1, 2, 4",
    );
}
