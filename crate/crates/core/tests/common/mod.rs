//! Shared corpus of verified pair systems for the integration suites.
//!
//! Everything here is deterministic: random generation is seeded, searches
//! are exhaustive, and every system is re-verified before it is handed out.

// each test binary uses its own slice of this module
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qspace_core::extremal::{lift_set_system, search_max_set_system, SearchConfig};
use qspace_core::gfq::{make_field, FieldTable};
use qspace_core::pairsystems::{
    verify_bollobas, verify_tuza_sets, verify_weak_isp, verify_weak_uv, SetPairSystem,
    SubspacePairSystem,
};
use qspace_core::subspace::{enumerate_subspaces, rref, Subspace};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf(q: u64) -> Arc<FieldTable> {
    make_field(q).unwrap()
}

/// Uniformly-ish random subspace of the requested dimension, by rejection
/// on random spanning sets.
pub fn random_subspace(
    rng: &mut ChaCha8Rng,
    field: &Arc<FieldTable>,
    n: usize,
    dim: usize,
) -> Subspace {
    let q = field.q() as u8;
    loop {
        let rows: Vec<Vec<u8>> = (0..dim)
            .map(|_| (0..n).map(|_| rng.random_range(0..q)).collect())
            .collect();
        let s = rref(field, n, &rows).unwrap();
        if s.dim() == dim {
            return s;
        }
    }
}

/// Random subspace of the requested dimension meeting `avoid` trivially.
pub fn random_subspace_avoiding(
    rng: &mut ChaCha8Rng,
    field: &Arc<FieldTable>,
    n: usize,
    dim: usize,
    avoid: &Subspace,
) -> Subspace {
    loop {
        let s = random_subspace(rng, field, n, dim);
        if s.is_trivial_intersection(avoid).unwrap() {
            return s;
        }
    }
}

/// One corpus entry: a verified weak ISP-system, with its uniform
/// dimensions when it has them.
pub struct CorpusSystem {
    pub name: String,
    pub system: SubspacePairSystem,
    pub uv: Option<(usize, usize)>,
}

fn line(field: &Arc<FieldTable>, v: &[u8]) -> Subspace {
    rref(field, v.len(), &[v.to_vec()]).unwrap()
}

/// The tight three-pair weak (1,1)-system over F_2^2.
pub fn triangle_f2() -> SubspacePairSystem {
    let f = gf(2);
    let a = line(&f, &[1, 0]);
    let b = line(&f, &[0, 1]);
    let c = line(&f, &[1, 1]);
    SubspacePairSystem::new(&f, 2, vec![(a.clone(), b.clone()), (b, c.clone()), (c, a)]).unwrap()
}

/// All (A, B) with |A| = a, |B| = b, A ∩ B = ∅ inside {1..ground}, paired
/// against a greedy pass in seeded-random order: yields a maximal system
/// satisfying the one-direction cross condition by construction.
fn greedy_tuza_system(ground: u32, a: usize, b: usize, seed: u64) -> SetPairSystem {
    let elements: Vec<u32> = (1..=ground).collect();
    let mut candidates: Vec<(BTreeSet<u32>, BTreeSet<u32>)> = Vec::new();
    for a_set in subsets(&elements, a) {
        for b_set in subsets(&elements, b) {
            if a_set.intersection(&b_set).next().is_none() {
                candidates.push((a_set.clone(), b_set));
            }
        }
    }
    let mut order = candidates;
    order.shuffle(&mut rng(seed));
    let mut chosen: Vec<(BTreeSet<u32>, BTreeSet<u32>)> = Vec::new();
    for cand in order {
        let ok = chosen.iter().all(|c| {
            c.0.intersection(&cand.1).next().is_some() || cand.0.intersection(&c.1).next().is_some()
        });
        if ok {
            chosen.push(cand);
        }
    }
    SetPairSystem::new(chosen)
}

fn subsets(elements: &[u32], size: usize) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::new();
    if size > elements.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| elements[i]).collect());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < elements.len() - size + i {
                idx[i] += 1;
                for t in i + 1..size {
                    idx[t] = idx[t - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Greedy maximal weak ISP-system drawn from a candidate pool in
/// seeded-random order. `dims` limits which (dim U, dim V) pairs enter the
/// pool; `None` admits every combination with du, dv >= 1, du + dv <= n.
fn greedy_isp_system(
    n: usize,
    q: u64,
    dims: Option<(usize, usize)>,
    seed: u64,
) -> SubspacePairSystem {
    let field = gf(q);
    let dim_pairs: Vec<(usize, usize)> = match dims {
        Some(uv) => vec![uv],
        None => {
            let mut ps = Vec::new();
            for du in 1..n {
                for dv in 1..n {
                    if du + dv <= n {
                        ps.push((du, dv));
                    }
                }
            }
            ps
        }
    };
    let mut candidates: Vec<(Subspace, Subspace)> = Vec::new();
    for (du, dv) in dim_pairs {
        let us: Vec<Subspace> = enumerate_subspaces(&field, n, du).unwrap().collect();
        let vs: Vec<Subspace> = enumerate_subspaces(&field, n, dv).unwrap().collect();
        for u in &us {
            for v in &vs {
                if u.is_trivial_intersection(v).unwrap() {
                    candidates.push((u.clone(), v.clone()));
                }
            }
        }
    }
    candidates.shuffle(&mut rng(seed));
    let mut chosen: Vec<(Subspace, Subspace)> = Vec::new();
    for cand in candidates {
        let ok = chosen.iter().all(|c| {
            !c.0.is_trivial_intersection(&cand.1).unwrap()
                || !cand.0.is_trivial_intersection(&c.1).unwrap()
        });
        if ok {
            chosen.push(cand);
        }
    }
    SubspacePairSystem::new(&field, n, chosen).unwrap()
}

/// The set-system search parameters whose witnesses seed the corpus.
/// Grounds stay at 4 or below so the lifted systems satisfy n <= 4.
pub const CORPUS_SEARCHES: [(usize, usize, usize); 8] = [
    (2, 1, 1),
    (3, 1, 1),
    (4, 1, 1),
    (3, 2, 1),
    (4, 2, 1),
    (4, 1, 2),
    (4, 2, 2),
    (3, 1, 2),
];

/// Exhausted search witnesses for [`CORPUS_SEARCHES`].
pub fn search_witnesses() -> Vec<(String, usize, usize, usize, SetPairSystem)> {
    let cfg = SearchConfig::default();
    CORPUS_SEARCHES
        .iter()
        .map(|&(ground, a, b)| {
            let r = search_max_set_system(ground, a, b, &cfg).unwrap();
            assert!(r.exhausted, "corpus searches are desk scale");
            let witness = r.witness.unwrap();
            assert!(verify_tuza_sets(&witness).passed);
            (format!("search-g{ground}-a{a}-b{b}"), ground, a, b, witness)
        })
        .collect()
}

/// The full subspace corpus: lifted search witnesses plus seeded random
/// weak ISP-systems, all over GF(2) with n <= 4, all re-verified here.
pub fn subspace_corpus() -> Vec<CorpusSystem> {
    let mut out = Vec::new();

    out.push(CorpusSystem {
        name: "triangle-f2".into(),
        system: triangle_f2(),
        uv: Some((1, 1)),
    });

    let f2 = gf(2);
    out.push(CorpusSystem {
        name: "empty-n2".into(),
        system: SubspacePairSystem::new(&f2, 2, vec![]).unwrap(),
        uv: None,
    });

    let plane = rref(&f2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    let axis = line(&f2, &[0, 0, 1]);
    out.push(CorpusSystem {
        name: "singleton-n3".into(),
        system: SubspacePairSystem::new(&f2, 3, vec![(plane, axis)]).unwrap(),
        uv: Some((2, 1)),
    });

    for (name, ground, a, b, witness) in search_witnesses() {
        let lifted = lift_set_system(&witness, ground, 2).unwrap();
        out.push(CorpusSystem {
            name: format!("lift-{name}"),
            system: lifted,
            uv: Some((a, b)),
        });
    }

    for (n, seed) in [(2usize, 11u64), (3, 12), (3, 13), (4, 14), (4, 15), (4, 16)] {
        out.push(CorpusSystem {
            name: format!("random-mixed-n{n}-s{seed}"),
            system: greedy_isp_system(n, 2, None, seed),
            uv: None,
        });
    }

    for (n, u, v, seed) in [
        (2usize, 1usize, 1usize, 21u64),
        (3, 1, 1, 22),
        (3, 1, 2, 23),
        (3, 2, 1, 24),
        (4, 1, 1, 25),
        (4, 2, 2, 26),
    ] {
        out.push(CorpusSystem {
            name: format!("random-uv{u}{v}-n{n}-s{seed}"),
            system: greedy_isp_system(n, 2, Some((u, v)), seed),
            uv: Some((u, v)),
        });
    }

    for entry in &out {
        assert!(
            verify_weak_isp(&entry.system).passed,
            "corpus system {} must verify",
            entry.name
        );
        if let Some((u, v)) = entry.uv {
            assert!(
                verify_weak_uv(&entry.system, u, v).passed,
                "corpus system {} must be ({u},{v})-uniform",
                entry.name
            );
        }
    }
    assert!(out.len() >= 20, "corpus must hold at least 20 systems");
    out
}

/// Complement family: every r-subset of {1..r+s} paired with its
/// complement. Verifies the both-direction condition and is tight for the
/// reciprocal-binomial sum.
pub fn complement_family(r: usize, s: usize) -> SetPairSystem {
    let ground: Vec<u32> = (1..=(r + s) as u32).collect();
    let pairs = subsets(&ground, r)
        .into_iter()
        .map(|a| {
            let b: BTreeSet<u32> = ground.iter().copied().filter(|e| !a.contains(e)).collect();
            (a, b)
        })
        .collect();
    SetPairSystem::new(pairs)
}

/// Set-pair systems passing the both-direction condition: constructed
/// families plus seeded random systems kept only when they verify.
pub fn bollobas_corpus() -> Vec<(String, SetPairSystem)> {
    let mut out: Vec<(String, SetPairSystem)> = Vec::new();
    for (r, s) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2), (1, 3)] {
        out.push((format!("complement-{r}-{s}"), complement_family(r, s)));
    }
    out.push(("empty".into(), SetPairSystem::empty()));
    out.push(("single".into(), SetPairSystem::from_slices(&[(&[1], &[2])])));

    // random systems, filtered by the verifier
    let mut generator = rng(31);
    let mut found = 0;
    for attempt in 0..400 {
        if found >= 5 {
            break;
        }
        let m = generator.random_range(2..=3);
        let pairs: Vec<(BTreeSet<u32>, BTreeSet<u32>)> = (0..m)
            .map(|_| {
                let a: BTreeSet<u32> = (0..generator.random_range(1..=2))
                    .map(|_| generator.random_range(1..=4))
                    .collect();
                let b: BTreeSet<u32> = (0..generator.random_range(1..=2))
                    .map(|_| generator.random_range(1..=4))
                    .collect();
                (a, b)
            })
            .collect();
        let system = SetPairSystem::new(pairs);
        if verify_bollobas(&system).passed {
            out.push((format!("random-bollobas-{attempt}"), system));
            found += 1;
        }
    }
    assert!(
        found >= 3,
        "seeded generation must land some verified systems"
    );

    for (name, system) in &out {
        assert!(verify_bollobas(system).passed, "{name} must verify");
    }
    out
}

/// Set-pair systems passing the one-direction condition: every
/// both-direction system, the 3-cycle, search witnesses, and greedy random
/// systems.
pub fn tuza_corpus() -> Vec<(String, SetPairSystem)> {
    let mut out = bollobas_corpus();
    out.push((
        "cycle-3".into(),
        SetPairSystem::from_slices(&[(&[1], &[2]), (&[2], &[3]), (&[3], &[1])]),
    ));
    for (name, _, _, _, witness) in search_witnesses() {
        out.push((name, witness));
    }
    for (ground, a, b, seed) in [(4u32, 1usize, 1usize, 41u64), (5, 2, 1, 42), (5, 1, 2, 43)] {
        out.push((
            format!("greedy-g{ground}-a{a}-b{b}"),
            greedy_tuza_system(ground, a, b, seed),
        ));
    }
    for (name, system) in &out {
        assert!(verify_tuza_sets(system).passed, "{name} must verify");
    }
    out
}
