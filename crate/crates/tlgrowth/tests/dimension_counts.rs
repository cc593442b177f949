//! Cross-checks graded dimensions computed through completion against an
//! independent word-combinatorics count.
//!
//! For a diagram whose edges all carry label 3, the algebra has a basis
//! of words counted as follows: letters joined by an edge do not commute,
//! letters with no edge commute, and a word is admissible when no
//! commutation-equivalent rearrangement contains `s s` (the idempotent
//! relation would shorten it) or `s t s` with `s`, `t` adjacent (the
//! length-3 rewrite would). The count below builds these words layer by
//! layer in a canonical stacked form, so each commutation class is seen
//! exactly once, and grades them by length.
//!
//! That count shares no code with the rewriting engine — it never forms a
//! polynomial — so agreement pins down the graded dimensions from two
//! independent directions. The fork diagrams with arm profile `(1, 2, k)`
//! are the interesting cases: their dimensions leave the range where
//! closed forms are available, and the rank-9 fork is pinned here at the
//! value both methods agree on.

use std::collections::HashSet;

use num_bigint::BigUint;

use tlgrowth::coxeter::{preset, CoxGraph, FamilyId, Label};
use tlgrowth::groebner::{complete, CompletionStrategy};
use tlgrowth::growth::{NormalWordAutomaton, TotalDimension};

/// Stacked canonical form: each element of a commutation class places its
/// letters into the earliest layer not blocked by an equal or adjacent
/// letter below, and layers are kept sorted. Two words are
/// commutation-equivalent exactly when they stack identically.
fn stack(word: &[u8], adj: &[Vec<bool>]) -> Vec<Vec<u8>> {
    let mut layers: Vec<Vec<u8>> = Vec::new();
    for &c in word {
        let mut place = 0usize;
        for (i, layer) in layers.iter().enumerate() {
            if layer
                .iter()
                .any(|&x| x == c || adj[usize::from(c)][usize::from(x)])
            {
                place = i + 1;
            }
        }
        if place == layers.len() {
            layers.push(vec![c]);
        } else {
            let pos = layers[place].binary_search(&c).unwrap_err();
            layers[place].insert(pos, c);
        }
    }
    layers
}

/// Number of admissible words of each length for a diagram whose labels
/// are all 3, by breadth-first growth of canonical stacked forms.
///
/// Appending `s` to an admissible word is allowed when at least two
/// letters adjacent to `s` occur after its previous occurrence: zero
/// means the two copies of `s` meet (an `s s` pattern), one means they
/// form `s t s`. Which letters follow the last `s` is the same in every
/// member of a commutation class (neighbors of `s` cannot commute past
/// it), so the test may be made on any representative.
fn graded_word_counts(g: &CoxGraph) -> Vec<u64> {
    let n = g.n_vertices();
    let mut adj = vec![vec![false; usize::from(n) + 1]; usize::from(n) + 1];
    for (a, b, label) in g.edges() {
        assert_eq!(label, Label::Finite(3), "count applies to label-3 diagrams");
        adj[usize::from(a)][usize::from(b)] = true;
        adj[usize::from(b)][usize::from(a)] = true;
    }

    let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::new();
    let mut frontier: Vec<Vec<u8>> = vec![Vec::new()];
    seen.insert(Vec::new());
    let mut counts = vec![1u64];
    loop {
        let mut next: Vec<Vec<u8>> = Vec::new();
        for w in &frontier {
            for s in 1..=n {
                let mut blockers = 0usize;
                let mut saw_s = false;
                for &c in w.iter().rev() {
                    if c == s {
                        saw_s = true;
                        break;
                    }
                    if adj[usize::from(s)][usize::from(c)] {
                        blockers += 1;
                    }
                }
                if saw_s && blockers < 2 {
                    continue;
                }
                let mut extended = w.clone();
                extended.push(s);
                let layers = stack(&extended, &adj);
                if seen.insert(layers.clone()) {
                    next.push(layers.concat());
                }
            }
        }
        if next.is_empty() {
            return counts;
        }
        counts.push(next.len() as u64);
        frontier = next;
    }
}

fn catalan(k: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= 2 * k - i;
        den *= i + 1;
    }
    num / den / (k + 1)
}

/// Graded dimensions from the completion engine, with the basis required
/// to be complete at the given cap.
fn graded_engine_counts(g: &CoxGraph, cap: usize, max_degree: usize) -> Vec<BigUint> {
    let basis = complete(
        &g.relations(),
        &g.monomial_order(),
        cap,
        CompletionStrategy::default(),
    )
    .expect("presentation completes");
    assert!(basis.is_complete(), "cap {cap} suffices");
    let automaton = NormalWordAutomaton::from_basis(&basis).expect("automaton builds");
    automaton.graded_counts(max_degree)
}

fn assert_counts_match(g: &CoxGraph, cap: usize, name: &str) -> u64 {
    let by_words = graded_word_counts(g);
    let by_engine = graded_engine_counts(g, cap, by_words.len() - 1);
    let as_big: Vec<BigUint> = by_words.iter().map(|&c| BigUint::from(c)).collect();
    assert_eq!(as_big, by_engine, "{name}: graded counts differ");
    by_words.iter().sum()
}

#[test]
fn word_count_matches_closed_forms_on_paths_and_forks() {
    // Paths: Catalan numbers.
    for n in 1..=6u8 {
        let g = preset(&FamilyId::A { n }).unwrap();
        let total: u64 = graded_word_counts(&g).iter().sum();
        assert_eq!(total, catalan(u64::from(n) + 1), "path on {n} vertices");
    }
    // Short-armed forks: (n + 3) * Catalan(n) / 2 - 1.
    for n in 4..=6u8 {
        let g = preset(&FamilyId::D { n }).unwrap();
        let total: u64 = graded_word_counts(&g).iter().sum();
        let expected = (u64::from(n) + 3) * catalan(u64::from(n)) / 2 - 1;
        assert_eq!(total, expected, "fork on {n} vertices");
    }
}

#[test]
fn engine_agrees_with_word_count_degree_by_degree() {
    let cases: [(FamilyId, usize, u64); 5] = [
        (FamilyId::D { n: 4 }, 10, 48),
        (FamilyId::D { n: 5 }, 12, 167),
        (FamilyId::E { n: 6 }, 10, 662),
        (FamilyId::E { n: 7 }, 16, 2670),
        (FamilyId::E { n: 8 }, 18, 10846),
    ];
    for (family, cap, expected) in cases {
        let g = preset(&family).unwrap();
        let total = assert_counts_match(&g, cap, &family.to_string());
        assert_eq!(total, expected, "{family}");
    }
}

#[test]
fn rank_nine_fork_dimension_is_pinned_by_both_methods() {
    let g = preset(&FamilyId::E { n: 9 }).unwrap();
    let by_words = graded_word_counts(&g);
    assert_eq!(by_words.iter().sum::<u64>(), 44199);

    let basis = complete(
        &g.relations(),
        &g.monomial_order(),
        24,
        CompletionStrategy::default(),
    )
    .unwrap();
    assert!(basis.is_complete(), "cap 24 suffices for the rank-9 fork");
    let automaton = NormalWordAutomaton::from_basis(&basis).unwrap();
    let as_big: Vec<BigUint> = by_words.iter().map(|&c| BigUint::from(c)).collect();
    assert_eq!(
        automaton.graded_counts(by_words.len() - 1),
        as_big,
        "graded counts differ at some degree"
    );
    assert_eq!(
        automaton.total_dimension(),
        TotalDimension::Finite(BigUint::from(44199u32))
    );
}
