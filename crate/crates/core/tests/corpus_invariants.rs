//! Cross-module invariants over the shared corpus: independent evaluation
//! routes must agree exactly.

mod common;

use common::{subspace_corpus, tuza_corpus};

use qspace_core::bounds::thm18_lhs;
use qspace_core::counting::family_size_formula;
use qspace_core::exactnum::{q_binomial, ExactScalar};
use qspace_core::extremal::lift_set_system;
use qspace_core::pairsystems::{verify_bollobas, verify_tuza_sets, verify_weak_isp};

/// Summing the unsimplified family-size formula over the pairs and dividing
/// by the total subspace count reproduces the weighted sum exactly; the two
/// evaluation routes share no code path for the numerator.
#[test]
fn weighted_sum_has_two_agreeing_routes() {
    for entry in &subspace_corpus() {
        let s = &entry.system;
        let n = s.ambient_dim();
        let q = s.q();
        for j in 0..=n {
            let total = q_binomial(n, j, q).unwrap();
            let mut by_families = ExactScalar::zero();
            for i in 0..s.len() {
                let (u, v) = s.dims(i).unwrap();
                by_families += &family_size_formula(n, u, v, j, q).unwrap() / &total;
            }
            let direct = thm18_lhs(s, j).unwrap().lhs;
            assert_eq!(
                by_families, direct,
                "evaluation routes disagree on {} at j={j}",
                entry.name
            );
        }
    }
}

/// At j = n - v every term of a uniform system's weighted sum collapses to
/// q^{(n-v-u)v} / [n choose v]_q, so the sum is m times that value.
#[test]
fn uniform_sum_collapses_at_j_equals_n_minus_v() {
    let mut checked = 0;
    for entry in &subspace_corpus() {
        let Some((u, v)) = entry.uv else { continue };
        let s = &entry.system;
        if s.is_empty() {
            continue;
        }
        let n = s.ambient_dim();
        let q = s.q();
        let term = ExactScalar::from_int(q).pow(((n - v - u) * v) as i32);
        let expected =
            &(ExactScalar::from_int(s.len() as u64) * term) / &q_binomial(n, v, q).unwrap();
        let actual = thm18_lhs(s, n - v).unwrap().lhs;
        assert_eq!(
            actual, expected,
            "collapsed form mismatch on {}",
            entry.name
        );
        checked += 1;
    }
    assert!(checked >= 10);
}

/// Every one-direction set system in the corpus lifts to a verified weak
/// ISP-system over F_2 with the ambient sized by its largest element.
#[test]
fn every_tuza_corpus_system_lifts_soundly() {
    for (name, system) in tuza_corpus() {
        let n = system.max_element().unwrap_or(1) as usize;
        let lifted = lift_set_system(&system, n, 2).unwrap();
        assert!(
            verify_weak_isp(&lifted).passed,
            "lift of {name} fails weak ISP"
        );
    }
}

/// The both-direction corpus is contained in the one-direction condition.
#[test]
fn bollobas_corpus_satisfies_tuza() {
    for (name, system) in common::bollobas_corpus() {
        assert!(verify_bollobas(&system).passed, "{name}");
        assert!(verify_tuza_sets(&system).passed, "{name}");
    }
}
