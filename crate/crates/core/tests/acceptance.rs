//! Acceptance battery: one test per criterion, each printing a pass/fail
//! line. Exact checks tolerate nothing; numeric checks carry their pinned
//! tolerances inline.

use graded_tl::basis_change::{verify_homomorphism, verify_inverse, verify_isometry};
use graded_tl::graded::verify_star_algebra;
use graded_tl::numeric::{verify_gram, verify_moments};
use graded_tl::pairing::{catalan, DiagramFilter, Pairing};
use graded_tl::report::Report;
use graded_tl::tower::{
    verify_commutator, verify_cup_action, verify_jones, verify_spanning, verify_vn_orthogonality,
};

const SEED: u64 = 7;

fn conclude(id: usize, name: &str, report: &Report) {
    println!(
        "[acceptance] criterion {id:2} ({name}): {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
    assert!(report.passed(), "criterion {id} failed:\n{report}");
}

#[test]
fn criterion_01_xy_inverse() {
    let start = std::time::Instant::now();
    let r = verify_inverse(5, 2);
    conclude(1, "XY = YX = 1, grade ≤ 5, k ≤ 2", &r);
    assert!(
        start.elapsed().as_secs() < 60,
        "criterion 1 exceeded its 60 s budget"
    );
}

#[test]
fn criterion_02_homomorphism() {
    let r = verify_homomorphism(4, 2);
    conclude(2, "X(a•b) = X(a)⋆X(b), grade sum ≤ 4, k ≤ 2", &r);
}

#[test]
fn criterion_03_isometry() {
    let r = verify_isometry(4, 2);
    conclude(3, "⟨⟨a,b⟩⟩ = ⟨X(a),X(b)⟩, grade sum ≤ 4, k ≤ 2", &r);
}

#[test]
fn criterion_04_associativity() {
    let r = verify_star_algebra(4, 1, 100, SEED);
    conclude(4, "⋆ associativity, exhaustive + 100 random", &r);
}

#[test]
fn criterion_05_star_identities() {
    // The same suite carries the 100 seeded random checks of
    // ⟨a,b⟩ = tr(a⋆b*) and (a⋆b)* = b*⋆a*.
    let r = verify_star_algebra(0, 0, 100, SEED);
    conclude(5, "⟨a,b⟩ = tr(a⋆b*) and (a⋆b)* = b*⋆a*", &r);
}

#[test]
fn criterion_06_vpq_orthogonality_and_cup_action() {
    let mut r = verify_vn_orthogonality(1, 1, 3);
    r.absorb(verify_cup_action(1, 1, 3, 3));
    conclude(6, "v_pq orthogonality and ∪-recursion, V_1 at k=1", &r);
}

#[test]
fn criterion_07_spanning() {
    let r = verify_spanning(3, 2);
    conclude(7, "rank{v_pq} = Catalan(n+k), n ≤ 3, k ≤ 2", &r);
}

#[test]
fn criterion_08_jones_structure() {
    let r = verify_jones(4, SEED);
    conclude(8, "Jones projections and expectations, contexts ≤ 4", &r);
}

#[test]
fn criterion_09_moments() {
    let r = verify_moments(8, 2);
    conclude(9, "tr(∪^⋆m) = Motzkin oracle, m ≤ 8, k ≤ 2", &r);
}

#[test]
fn criterion_10_commutator_gram() {
    let r = verify_commutator(4, 0);
    conclude(10, "commutator Gram matrix is tridiagonal", &r);
}

#[test]
fn criterion_11_positivity() {
    let r = verify_gram(4, 3, 1, &[2f64.sqrt(), 3f64.sqrt()]);
    conclude(11, "Gram positivity at δ=2,3 and jux/X agreement", &r);
}

#[test]
fn criterion_12_combinatorial_counts() {
    let mut r = Report::new("combinatorics");
    for p in 0..=6 {
        let count = Pairing::enumerate(2 * p, 0, DiagramFilter::All)
            .unwrap()
            .len();
        r.check_eq(format!("|matchings({})|", 2 * p), &count, &catalan(p));
    }
    for i in 0..=6usize {
        for j in 0..=6usize {
            if i + j > 6 {
                continue;
            }
            let all = Pairing::enumerate(2 * i, 2 * j, DiagramFilter::All).unwrap();
            let epi = Pairing::enumerate(2 * i, 2 * j, DiagramFilter::Epi).unwrap();
            let nne = Pairing::enumerate(2 * i, 2 * j, DiagramFilter::NonNestedEpi).unwrap();
            r.check_eq(
                format!("epi count 2{i}→2{j}"),
                &epi.len(),
                &all.iter().filter(|d| d.classify().is_epi).count(),
            );
            r.check_eq(
                format!("non-nested epi count 2{i}→2{j}"),
                &nne.len(),
                &all.iter().filter(|d| d.classify().is_non_nested_epi).count(),
            );
        }
    }
    for total in (2..=12usize).step_by(2) {
        for bottom in 0..=total {
            let top = total - bottom;
            for d in Pairing::enumerate(bottom, top, DiagramFilter::All).unwrap() {
                let (epi, monic) = d.factorize();
                let class_e = epi.classify();
                let class_m = monic.classify();
                let (back, loops) = epi.compose(&monic).unwrap();
                r.record(
                    class_e.is_epi && class_m.is_monic && back == d && loops == 0,
                    format!("factorize round-trip {d}"),
                    format!("({epi}, {monic})"),
                    "epi·monic with no loops",
                );
            }
        }
    }
    conclude(12, "Catalan counts, filtrations, factorisation", &r);
}
