//! Growth classification: structural prediction, direct computation, and
//! cross-checking.
//!
//! The structural side ([`classify_by_theorem`]) matches a connected
//! diagram against the known trichotomy:
//!
//! * **finite-dimensional** — paths (`A`), paths with one terminal edge
//!   labeled 4 (`B`) or 5 (`H`) or one next-to-terminal 4 (`F`), forks
//!   with arm profile `(1,1,k)` (`D`) or `(1,2,k)` (`E`), and the
//!   two-vertex diagrams with any finite label (dimension `2m − 1`);
//! * **linear growth** — cycles (`tilde-A`), double forks (`tilde-D`),
//!   the arm profiles `(2,2,2)` (`tilde-E6`) and `(1,3,3)` (`tilde-E7`),
//!   the two-vertex unlabeled-`inf` diagram (`tilde-A1`), the six-vertex
//!   path with a centered 4 (`tilde-F6`), forks with a 4 on the tail's
//!   last edge (`tilde-B`), paths with 4s on both terminal edges
//!   (`tilde-C`), and three-vertex paths with one terminal label ≥ 6
//!   (`l3`);
//! * **exponential growth** — everything else.
//!
//! The computational side ([`classify_by_computation`]) completes the
//! presentation once at the given degree cap. From a complete basis the
//! growth class is read off the normal-word automaton's cycle structure.
//! When completion is cut short by the cap, the diagram is checked
//! against the bundled free-pair examples: if it is a relabeling of one
//! of those diagrams, the example's pair is translated, reduced, and
//! re-verified, and a success classifies the diagram as exponential with
//! the certificate attached. Otherwise the result is `Inconclusive`.
//!
//! Both entry points require a connected diagram; [`cross_check`] runs
//! both and compares, and [`sweep`] cross-checks every small connected
//! diagram up to isomorphism.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::One;
use thiserror::Error;

use crate::coeffs::ParamScalar;
use crate::coxeter::{witness_fixtures, CoxGraph, FamilyId, Label};
use crate::freealg::{NCPoly, Word};
use crate::groebner::{complete, CompletionStrategy, GroebnerBasis, GroebnerError};
use crate::growth::{GrowthClass, NormalWordAutomaton, TotalDimension};
use crate::witness::{verify_free_pair, FreePairCertificate};

/// Errors from the classification entry points.
#[derive(Debug, Error)]
pub enum ClassifyError {
    /// Classification is defined for connected diagrams only.
    #[error("the diagram is disconnected; classify each component separately")]
    Disconnected,
    /// Completion failed before any classification could be attempted.
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// The growth trichotomy, as predicted from diagram shape alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremClass {
    /// The algebra is finite-dimensional.
    FiniteDimensional,
    /// Graded dimensions grow like `degree`-th powers (1 = linear).
    Polynomial {
        /// Degree of the polynomial bound.
        degree: usize,
    },
    /// Graded dimensions grow exponentially.
    Exponential,
}

impl fmt::Display for TheoremClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremClass::FiniteDimensional => f.write_str("finite-dimensional"),
            TheoremClass::Polynomial { degree: 1 } => f.write_str("linear growth"),
            TheoremClass::Polynomial { degree } => {
                write!(f, "polynomial growth of degree {degree}")
            }
            TheoremClass::Exponential => f.write_str("exponential growth"),
        }
    }
}

/// Structural classification of a connected diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    /// The growth class.
    pub class: TheoremClass,
    /// The named family the diagram matches, if any.
    pub family: Option<FamilyId>,
    /// Closed-form or tabulated dimension, when the class is
    /// finite-dimensional and the family's dimension is known.
    pub expected_dimension: Option<BigUint>,
}

impl TheoremVerdict {
    /// The matched family's name, or `unrecognized`.
    pub fn family_summary(&self) -> String {
        match &self.family {
            Some(f) => f.to_string(),
            None => "unrecognized".to_string(),
        }
    }
}

fn catalan(k: u64) -> BigUint {
    binomial(BigUint::from(2 * k), BigUint::from(k)) / BigUint::from(k + 1)
}

fn table(entries: &[(u8, u64)], n: u8) -> Option<BigUint> {
    entries
        .iter()
        .find(|&&(rank, _)| rank == n)
        .map(|&(_, dim)| BigUint::from(dim))
}

/// Known dimension for a finite-dimensional family, when a closed form or
/// tabulated value exists.
///
/// The `E` entries beyond rank 8 come from running the completion here at
/// a sufficient cap and cross-checking the graded counts against an
/// independent word-combinatorics count; see the regression tests.
pub fn known_dimension(family: &FamilyId) -> Option<BigUint> {
    match family {
        FamilyId::A { n } => Some(catalan(u64::from(*n) + 1)),
        FamilyId::B { n } => table(&[(2, 7), (3, 24), (4, 83), (5, 293)], *n),
        FamilyId::D { n } => {
            let num = BigUint::from(u64::from(*n) + 3) * catalan(u64::from(*n));
            Some(num / BigUint::from(2u32) - BigUint::one())
        }
        FamilyId::E { n } => table(&[(6, 662), (7, 2670), (8, 10846), (9, 44199)], *n),
        FamilyId::F { n } => table(&[(4, 106), (5, 464), (6, 2003)], *n),
        FamilyId::H { n } => table(&[(2, 9), (3, 44), (4, 195), (5, 804)], *n),
        FamilyId::L2 { p } => Some(BigUint::from(2 * u64::from(*p) - 1)),
        FamilyId::TildeG2 => Some(BigUint::from(11u32)),
        _ => None,
    }
}

/// Structurally classify a connected diagram by matching it against the
/// named families.
///
/// # Errors
/// [`ClassifyError::Disconnected`] when the diagram is not connected.
pub fn classify_by_theorem(g: &CoxGraph) -> Result<TheoremVerdict, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let (family, class) = match_connected(g);
    let expected_dimension = match (&class, &family) {
        (TheoremClass::FiniteDimensional, Some(f)) => known_dimension(f),
        _ => None,
    };
    Ok(TheoremVerdict {
        class,
        family,
        expected_dimension,
    })
}

const LINEAR: TheoremClass = TheoremClass::Polynomial { degree: 1 };

/// Match one connected diagram. Returns the family (None when
/// unrecognized) and its growth class.
fn match_connected(g: &CoxGraph) -> (Option<FamilyId>, TheoremClass) {
    let n = g.n_vertices();
    if n == 1 {
        return (Some(FamilyId::A { n: 1 }), TheoremClass::FiniteDimensional);
    }
    if n == 2 {
        return match g.label(1, 2).expect("connected on two vertices") {
            Label::Infinite => (Some(FamilyId::TildeA1), LINEAR),
            Label::Finite(3) => (Some(FamilyId::A { n: 2 }), TheoremClass::FiniteDimensional),
            Label::Finite(4) => (Some(FamilyId::B { n: 2 }), TheoremClass::FiniteDimensional),
            Label::Finite(5) => (Some(FamilyId::H { n: 2 }), TheoremClass::FiniteDimensional),
            Label::Finite(6) => (Some(FamilyId::TildeG2), TheoremClass::FiniteDimensional),
            Label::Finite(p) => (Some(FamilyId::L2 { p }), TheoremClass::FiniteDimensional),
        };
    }

    // Three or more vertices: an unbounded label fits no family.
    if g.edges().any(|(_, _, l)| l == Label::Infinite) {
        return (None, TheoremClass::Exponential);
    }
    let high: Vec<(u8, u8, u32)> = g
        .edges()
        .filter_map(|(i, j, l)| match l {
            Label::Finite(m) if m >= 4 => Some((i, j, m)),
            _ => None,
        })
        .collect();

    let n_edges = g.n_edges();
    let is_tree = n_edges == usize::from(n) - 1;

    match high.as_slice() {
        [] => {
            if is_tree {
                match_plain_tree(g)
            } else if n_edges == usize::from(n) && (1..=n).all(|v| g.degree(v) == 2) {
                (Some(FamilyId::TildeA { n }), LINEAR)
            } else {
                (None, TheoremClass::Exponential)
            }
        }
        [(i, j, 4)] if is_tree => match_single_four(g, *i, *j),
        [(i1, j1, 4), (i2, j2, 4)] if is_tree => {
            match_double_four(g, (*i1, *j1), (*i2, *j2))
        }
        [(i, j, m)] if is_tree && *m >= 5 => match_single_high(g, *i, *j, *m),
        _ => (None, TheoremClass::Exponential),
    }
}

/// Trees whose edges are all plain (label 3).
fn match_plain_tree(g: &CoxGraph) -> (Option<FamilyId>, TheoremClass) {
    let n = g.n_vertices();
    let branches: Vec<u8> = (1..=n).filter(|&v| g.degree(v) >= 3).collect();
    match branches.as_slice() {
        [] => (Some(FamilyId::A { n }), TheoremClass::FiniteDimensional),
        [b] => {
            let mut arms = arm_lengths(g, *b);
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => (Some(FamilyId::D { n }), TheoremClass::FiniteDimensional),
                [1, 2, k] if *k >= 2 => {
                    (Some(FamilyId::E { n }), TheoremClass::FiniteDimensional)
                }
                [2, 2, 2] => (Some(FamilyId::TildeE6), LINEAR),
                [1, 3, 3] => (Some(FamilyId::TildeE7), LINEAR),
                [1, 1, 1, 1] => (Some(FamilyId::TildeD { n: 4 }), LINEAR),
                _ => (None, TheoremClass::Exponential),
            }
        }
        [u, v] => {
            let double_fork = [*u, *v].iter().all(|&b| {
                g.degree(b) == 3
                    && g.neighbors(b)
                        .iter()
                        .filter(|&&(w, _)| g.degree(w) == 1)
                        .count()
                        == 2
            });
            if double_fork {
                (Some(FamilyId::TildeD { n: n - 1 }), LINEAR)
            } else {
                (None, TheoremClass::Exponential)
            }
        }
        _ => (None, TheoremClass::Exponential),
    }
}

/// Trees with exactly one label-4 edge `{i, j}`, all other edges plain.
fn match_single_four(g: &CoxGraph, i: u8, j: u8) -> (Option<FamilyId>, TheoremClass) {
    let n = g.n_vertices();
    if let Some(order) = path_order(g) {
        let (lo, hi) = side_counts(&order, i, j);
        return match (lo, hi) {
            (0, _) => (Some(FamilyId::B { n }), TheoremClass::FiniteDimensional),
            (1, _) => (Some(FamilyId::F { n }), TheoremClass::FiniteDimensional),
            (2, 2) => (Some(FamilyId::TildeF { n: 6 }), LINEAR),
            _ => (None, TheoremClass::Exponential),
        };
    }
    // Fork with arm profile (1, 1, k) and the 4 on the far end of a
    // longest arm.
    let branches: Vec<u8> = (1..=n).filter(|&v| g.degree(v) >= 3).collect();
    if let [b] = branches.as_slice() {
        let mut arms = arm_lengths(g, *b);
        arms.sort_unstable();
        if let [1, 1, k] = arms.as_slice() {
            let leaf_end = (g.degree(i) == 1 && dist_from(g, *b, i) == *k)
                || (g.degree(j) == 1 && dist_from(g, *b, j) == *k);
            if leaf_end {
                return (Some(FamilyId::TildeB { n }), LINEAR);
            }
        }
    }
    (None, TheoremClass::Exponential)
}

/// Trees with exactly two label-4 edges, all other edges plain.
fn match_double_four(
    g: &CoxGraph,
    e1: (u8, u8),
    e2: (u8, u8),
) -> (Option<FamilyId>, TheoremClass) {
    if let Some(order) = path_order(g) {
        let both_terminal = [e1, e2].iter().all(|&(i, j)| {
            let (lo, _) = side_counts(&order, i, j);
            lo == 0
        });
        if both_terminal {
            return (Some(FamilyId::TildeC { n: g.n_vertices() - 1 }), LINEAR);
        }
    }
    (None, TheoremClass::Exponential)
}

/// Trees with exactly one edge labeled `m ≥ 5`, all other edges plain.
fn match_single_high(g: &CoxGraph, i: u8, j: u8, m: u32) -> (Option<FamilyId>, TheoremClass) {
    let n = g.n_vertices();
    if let Some(order) = path_order(g) {
        let (lo, _) = side_counts(&order, i, j);
        if lo == 0 {
            if m == 5 {
                return (Some(FamilyId::H { n }), TheoremClass::FiniteDimensional);
            }
            if n == 3 {
                return (Some(FamilyId::L3 { s: m }), LINEAR);
            }
        }
    }
    (None, TheoremClass::Exponential)
}

/// Arm lengths (in edges) from a branch vertex, unsorted. Walks each
/// neighbor direction until a leaf; a second branch vertex on the way
/// yields a sentinel length `0` so no profile can match.
fn arm_lengths(g: &CoxGraph, b: u8) -> Vec<usize> {
    g.neighbors(b)
        .iter()
        .map(|&(first, _)| {
            let mut prev = b;
            let mut at = first;
            let mut len = 1usize;
            loop {
                let deg = g.degree(at);
                if deg == 1 {
                    return len;
                }
                if deg >= 3 {
                    return 0;
                }
                let next = g
                    .neighbors(at)
                    .iter()
                    .map(|&(w, _)| w)
                    .find(|&w| w != prev)
                    .expect("degree-2 vertex has a forward neighbor");
                prev = at;
                at = next;
                len += 1;
            }
        })
        .collect()
}

/// Graph distance from `from` to `to` along the unique tree path.
fn dist_from(g: &CoxGraph, from: u8, to: u8) -> usize {
    let mut frontier = vec![from];
    let mut seen = vec![false; usize::from(g.n_vertices()) + 1];
    seen[usize::from(from)] = true;
    let mut dist = 0usize;
    while !frontier.is_empty() {
        if frontier.contains(&to) {
            return dist;
        }
        let mut next = Vec::new();
        for v in frontier {
            for (w, _) in g.neighbors(v) {
                if !seen[usize::from(w)] {
                    seen[usize::from(w)] = true;
                    next.push(w);
                }
            }
        }
        frontier = next;
        dist += 1;
    }
    unreachable!("connected diagram");
}

/// Vertices in path order, when the diagram is a path (n ≥ 2).
fn path_order(g: &CoxGraph) -> Option<Vec<u8>> {
    let n = g.n_vertices();
    if g.n_edges() != usize::from(n) - 1 || (1..=n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (1..=n).find(|&v| g.degree(v) == 1)?;
    let mut order = vec![start];
    let mut prev = 0u8;
    let mut at = start;
    while order.len() < usize::from(n) {
        let next = g
            .neighbors(at)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| w != prev)?;
        order.push(next);
        prev = at;
        at = next;
    }
    Some(order)
}

/// Vertex counts strictly on each side of the edge `{i, j}` of a path,
/// sorted ascending.
fn side_counts(order: &[u8], i: u8, j: u8) -> (usize, usize) {
    let pos = |v: u8| order.iter().position(|&w| w == v).expect("vertex on path");
    let (a, b) = (pos(i).min(pos(j)), pos(i).max(pos(j)));
    debug_assert_eq!(a + 1, b, "labeled pair is a path edge");
    let (lo, hi) = (a, order.len() - b - 1);
    (lo.min(hi), lo.max(hi))
}

// ---------------------------------------------------------------------------
// Classification by computation
// ---------------------------------------------------------------------------

/// A free pair transported from a bundled example onto the classified
/// diagram.
#[derive(Clone, Debug)]
pub struct WitnessEvidence {
    /// Tag of the bundled example whose pair transferred.
    pub fixture_tag: String,
    /// The verified certificate over the classified diagram's basis.
    pub certificate: FreePairCertificate,
}

/// Result of classifying a diagram by completing its presentation.
#[derive(Clone, Debug)]
pub struct ComputedClass {
    /// The growth class: read off the normal-word automaton when the
    /// basis is complete, `Exponential` when a bundled free pair
    /// transfers to a capped basis, `Inconclusive` otherwise.
    pub class: GrowthClass,
    /// The degree cap the completion ran at.
    pub cap_used: usize,
    /// The basis the classification was read from.
    pub basis: GroebnerBasis,
    /// The transported free pair, when the class came from one.
    pub witness: Option<WitnessEvidence>,
}

/// Complete the diagram's presentation at the given degree cap and
/// classify its growth.
///
/// A complete basis yields the exact class (and dimension, when finite)
/// from the normal-word automaton. A capped basis understates the
/// forbidden-word list, so no class is read off its automaton; instead
/// the diagram is compared against the bundled free-pair examples. If it
/// is a relabeling of one of those diagrams, the algebra is isomorphic to
/// one of exponential growth, and the example's pair — translated along
/// the relabeling and reduced to normal form — is re-verified against the
/// capped basis as a consistency check. Success classifies the diagram
/// as exponential with the certificate attached; otherwise the result is
/// `Inconclusive` at the cap.
///
/// # Errors
/// [`ClassifyError::Disconnected`] for disconnected diagrams, or any
/// completion failure (empty input, cap below an input's degree, …).
pub fn classify_by_computation(
    g: &CoxGraph,
    cap: usize,
) -> Result<ComputedClass, ClassifyError> {
    classify_relations(g, &g.relations(), cap)
}

/// Like [`classify_by_computation`], but from an explicit relation list —
/// typically the diagram's relations with parameters specialized. The
/// diagram still supplies the generator count, the order, and the shape
/// used for the capped-basis fallback.
pub fn classify_relations(
    g: &CoxGraph,
    relations: &[NCPoly],
    cap: usize,
) -> Result<ComputedClass, ClassifyError> {
    if !g.is_connected() {
        return Err(ClassifyError::Disconnected);
    }
    let order = g.monomial_order();
    let basis = complete(relations, &order, cap, CompletionStrategy::default())?;
    if basis.is_complete() {
        let automaton =
            NormalWordAutomaton::from_basis(&basis).expect("complete bases yield automata");
        return Ok(ComputedClass {
            class: automaton.classify(),
            cap_used: cap,
            basis,
            witness: None,
        });
    }
    let witness = transported_witness(g, &basis);
    let class = match &witness {
        Some(_) => GrowthClass::Exponential,
        None => GrowthClass::Inconclusive { cap },
    };
    Ok(ComputedClass {
        class,
        cap_used: cap,
        basis,
        witness,
    })
}

/// Search the bundled examples for one whose diagram is a relabeling of
/// `g` and whose free pair, translated along the relabeling, verifies
/// against `basis`.
fn transported_witness(g: &CoxGraph, basis: &GroebnerBasis) -> Option<WitnessEvidence> {
    for fx in witness_fixtures() {
        for iso in fx.graph.isomorphisms_onto(g) {
            let q1 = match normal_candidate(basis, &fx.q1.map_letters(&iso)) {
                Some(w) => w,
                None => continue,
            };
            let q2 = match normal_candidate(basis, &fx.q2.map_letters(&iso)) {
                Some(w) => w,
                None => continue,
            };
            if let Ok(certificate) = verify_free_pair(basis, &q1, &q2) {
                return Some(WitnessEvidence {
                    fixture_tag: fx.tag.clone(),
                    certificate,
                });
            }
        }
    }
    None
}

/// Normal form of a translated candidate word. Scalars are invertible,
/// so a candidate that reduces to a nonzero scalar multiple of a single
/// nonempty word generates the same subalgebra as that word; anything
/// else (a sum, a constant, zero) is unusable as a pair member.
fn normal_candidate(basis: &GroebnerBasis, w: &Word) -> Option<Word> {
    let reduced = basis.reduce(&NCPoly::from_term(w.clone(), ParamScalar::one()));
    let mut terms = reduced.terms();
    let (word, _) = terms.next()?;
    if terms.next().is_some() || word.is_empty() {
        return None;
    }
    Some(word.clone())
}

// ---------------------------------------------------------------------------
// Cross-checking
// ---------------------------------------------------------------------------

/// Whether structure and computation told the same story.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// Same class (and same dimension, where both sides know one).
    Agree,
    /// Conflicting classes or dimensions.
    Disagree {
        /// What differed.
        detail: String,
    },
    /// Computation stayed capped, so there is nothing to compare.
    Inconclusive,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agreement::Agree => f.write_str("agree"),
            Agreement::Disagree { detail } => write!(f, "DISAGREE: {detail}"),
            Agreement::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// Compare a structural verdict with a computed growth class.
pub fn compare(theorem: &TheoremVerdict, computed: &GrowthClass) -> Agreement {
    let disagree = || Agreement::Disagree {
        detail: format!(
            "structure predicts {} ({}) but computation found {}",
            theorem.class,
            theorem.family_summary(),
            computed
        ),
    };
    match (&theorem.class, computed) {
        (_, GrowthClass::Inconclusive { .. }) => Agreement::Inconclusive,
        (TheoremClass::FiniteDimensional, GrowthClass::FiniteDimensional { dimension }) => {
            match &theorem.expected_dimension {
                Some(expected) if expected != dimension => Agreement::Disagree {
                    detail: format!(
                        "structure predicts dimension {expected} ({}) but computation found {dimension}",
                        theorem.family_summary()
                    ),
                },
                _ => Agreement::Agree,
            }
        }
        (TheoremClass::Polynomial { degree }, GrowthClass::PolynomialGrowth { degree: d })
            if degree == d =>
        {
            Agreement::Agree
        }
        (TheoremClass::Exponential, GrowthClass::Exponential) => Agreement::Agree,
        _ => disagree(),
    }
}

/// A structural verdict, a computed class, and their comparison.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    /// The structural prediction.
    pub theorem: TheoremVerdict,
    /// The computed classification (including the basis and any
    /// transported witness pair).
    pub computed: ComputedClass,
    /// The comparison.
    pub agreement: Agreement,
}

/// Classify both ways and compare.
///
/// # Errors
/// Same conditions as [`classify_by_computation`].
pub fn cross_check(g: &CoxGraph, cap: usize) -> Result<ClassificationReport, ClassifyError> {
    let theorem = classify_by_theorem(g)?;
    let computed = classify_by_computation(g, cap)?;
    let agreement = compare(&theorem, &computed.class);
    Ok(ClassificationReport {
        theorem,
        computed,
        agreement,
    })
}

// ---------------------------------------------------------------------------
// Exhaustive small-diagram sweep
// ---------------------------------------------------------------------------

/// One cross-checked diagram in a sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    /// Number of vertices.
    pub n_vertices: u8,
    /// Canonical edge-list encoding, e.g. `1-2:3;1-3:4`.
    pub key: String,
    /// Structural verdict.
    pub theorem: TheoremVerdict,
    /// Computed class.
    pub computed: GrowthClass,
    /// Comparison outcome.
    pub agreement: Agreement,
}

impl SweepRow {
    /// Header line matching [`SweepRow::csv_line`].
    pub const CSV_HEADER: &'static str =
        "vertices,edges,structural,families,computed,dimension,agreement";

    /// This row as one CSV record (no trailing newline). The `dimension`
    /// field is filled when the computed class is finite-dimensional.
    pub fn csv_line(&self) -> String {
        let dimension = match &self.computed {
            GrowthClass::FiniteDimensional { dimension } => dimension.to_string(),
            _ => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{}",
            self.n_vertices,
            self.key,
            self.theorem.class,
            self.theorem.family_summary().replace(',', ";"),
            self.computed,
            dimension,
            self.agreement,
        )
    }
}

/// Every diagram cross-checked by [`sweep`], with summary accessors.
#[derive(Clone, Debug)]
pub struct SweepReport {
    /// One row per isomorphism class.
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Rows where structure and computation conflict.
    pub fn disagreements(&self) -> Vec<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.agreement, Agreement::Disagree { .. }))
            .collect()
    }

    /// Rows where computation stayed capped.
    pub fn inconclusive(&self) -> Vec<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.agreement, Agreement::Inconclusive))
            .collect()
    }

    /// CSV rendering: one row per diagram. The `dimension` column is
    /// filled when the computed class is finite-dimensional.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SweepRow::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }
}

fn permutations(n: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::new();
    let mut used = vec![false; usize::from(n) + 1];
    fn rec(n: u8, current: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if current.len() == usize::from(n) {
            out.push(current.clone());
            return;
        }
        for v in 1..=n {
            if !used[usize::from(v)] {
                used[usize::from(v)] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[usize::from(v)] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

fn edge_key(edges: &[(u8, u8, u32)]) -> String {
    if edges.is_empty() {
        return "-".to_string();
    }
    edges
        .iter()
        .map(|&(i, j, m)| format!("{i}-{j}:{m}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Canonical form of an edge list under vertex renumbering: the
/// lexicographically smallest encoding over all permutations.
fn canonical_key(edges: &[(u8, u8, u32)], perms: &[Vec<u8>]) -> String {
    let mut best: Option<String> = None;
    for perm in perms {
        let mut relabeled: Vec<(u8, u8, u32)> = edges
            .iter()
            .map(|&(i, j, m)| {
                let (a, b) = (
                    perm[usize::from(i) - 1],
                    perm[usize::from(j) - 1],
                );
                (a.min(b), a.max(b), m)
            })
            .collect();
        relabeled.sort_unstable();
        let key = edge_key(&relabeled);
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("at least the identity permutation")
}

/// Connected diagrams with at most `max_vertices` vertices and edge
/// labels from `labels`, one representative per isomorphism class, in
/// canonical order (vertex count, then canonical edge key).
///
/// # Panics
/// If `max_vertices` is 0 or exceeds 6, or `labels` contains a value < 3.
pub fn connected_diagrams(max_vertices: u8, labels: &[u32]) -> Vec<(String, CoxGraph)> {
    assert!(
        (1..=6).contains(&max_vertices),
        "sweep supports 1 through 6 vertices"
    );
    assert!(
        labels.iter().all(|&m| m >= 3),
        "edge labels start at 3"
    );
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let perms = permutations(n);
        let pairs: Vec<(u8, u8)> = (1..n)
            .flat_map(|i| ((i + 1)..=n).map(move |j| (i, j)))
            .collect();
        let mut batch: Vec<(String, CoxGraph)> = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        // Each pair slot is either absent (0) or one of the labels.
        let mut choice = vec![0usize; pairs.len()];
        loop {
            let edges: Vec<(u8, u8, u32)> = pairs
                .iter()
                .zip(&choice)
                .filter(|&(_, &c)| c > 0)
                .map(|(&(i, j), &c)| (i, j, labels[c - 1]))
                .collect();
            let key = canonical_key(&edges, &perms);
            if seen.insert(key.clone()) {
                let labeled: Vec<(u8, u8, Label)> = edges
                    .iter()
                    .map(|&(i, j, m)| (i, j, Label::Finite(m)))
                    .collect();
                let graph =
                    CoxGraph::with_edges(n, &labeled).expect("enumerated edges are valid");
                if graph.is_connected() {
                    batch.push((key, graph));
                }
            }
            // Advance the mixed-radix counter.
            let mut idx = 0;
            loop {
                if idx == choice.len() {
                    break;
                }
                choice[idx] += 1;
                if choice[idx] <= labels.len() {
                    break;
                }
                choice[idx] = 0;
                idx += 1;
            }
            if idx == choice.len() {
                break;
            }
        }
        batch.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(batch);
    }
    out
}

/// Cross-check every connected diagram with at most `max_vertices`
/// vertices whose edge labels come from `labels`, one representative per
/// isomorphism class, in canonical order.
///
/// # Panics
/// As for [`connected_diagrams`].
///
/// # Errors
/// Any completion failure is propagated.
pub fn sweep(
    max_vertices: u8,
    labels: &[u32],
    cap: usize,
) -> Result<SweepReport, ClassifyError> {
    let mut rows = Vec::new();
    for (key, graph) in connected_diagrams(max_vertices, labels) {
        let report = cross_check(&graph, cap)?;
        rows.push(SweepRow {
            n_vertices: graph.n_vertices(),
            key,
            theorem: report.theorem,
            computed: report.computed.class,
            agreement: report.agreement,
        });
    }
    Ok(SweepReport { rows })
}

/// Total dimension of the algebra for a complete basis, as a convenience
/// for reports.
pub fn total_dimension_of(basis: &GroebnerBasis) -> Option<TotalDimension> {
    if !basis.is_complete() {
        return None;
    }
    let automaton = NormalWordAutomaton::from_basis(basis).ok()?;
    Some(automaton.total_dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::preset;

    fn fam(name: &str, arg: Option<&str>) -> CoxGraph {
        preset(&FamilyId::from_cli(name, arg).expect("family parses")).expect("preset builds")
    }

    fn dim(v: u64) -> Option<BigUint> {
        Some(BigUint::from(v))
    }

    fn theorem(g: &CoxGraph) -> TheoremVerdict {
        classify_by_theorem(g).expect("connected diagram")
    }

    #[test]
    fn finite_families_match_with_dimensions() {
        let cases: Vec<(&str, Option<&str>, u64)> = vec![
            ("A", Some("1"), 2),
            ("A", Some("5"), 132),
            ("A", Some("7"), 1430),
            ("B", Some("2"), 7),
            ("B", Some("4"), 83),
            ("D", Some("4"), 48),
            ("D", Some("6"), 593),
            ("D", Some("7"), 2144),
            ("E", Some("6"), 662),
            ("E", Some("9"), 44199),
            ("F", Some("5"), 464),
            ("H", Some("4"), 195),
            ("l2", Some("9"), 17),
            ("l3", Some("5"), 44),
            ("tilde-G2", None, 11),
        ];
        for (name, arg, expected) in cases {
            let verdict = theorem(&fam(name, arg));
            assert_eq!(
                verdict.class,
                TheoremClass::FiniteDimensional,
                "{name} {arg:?}"
            );
            assert_eq!(verdict.expected_dimension, dim(expected), "{name} {arg:?}");
        }
        // l3(5) is the three-vertex diagram with a terminal 5: same as H3.
        let verdict = theorem(&fam("l3", Some("5")));
        assert_eq!(verdict.family, Some(FamilyId::H { n: 3 }));
    }

    #[test]
    fn finite_families_beyond_the_tables_have_no_expected_dimension() {
        for (name, arg) in [("E", "10"), ("B", "7"), ("F", "8"), ("H", "6")] {
            let verdict = theorem(&fam(name, Some(arg)));
            assert_eq!(verdict.class, TheoremClass::FiniteDimensional, "{name}{arg}");
            assert_eq!(verdict.expected_dimension, None, "{name}{arg}");
        }
        // A and D have closed forms at every rank.
        assert_eq!(
            theorem(&fam("A", Some("10"))).expected_dimension,
            dim(58786),
        );
        assert_eq!(
            theorem(&fam("D", Some("10"))).expected_dimension,
            dim(u64::from(13u32) * 16796 / 2 - 1),
        );
    }

    #[test]
    fn linear_families_match() {
        for (name, arg) in [
            ("tilde-A", Some("3")),
            ("tilde-A", Some("6")),
            ("tilde-B", Some("4")),
            ("tilde-B", Some("5")),
            ("tilde-C", Some("2")),
            ("tilde-C", Some("5")),
            ("tilde-D", Some("4")),
            ("tilde-D", Some("6")),
            ("tilde-E6", None),
            ("tilde-E7", None),
            ("tilde-F", Some("6")),
            ("tilde-A1", None),
            ("l3", Some("6")),
            ("l3", Some("9")),
        ] {
            let verdict = theorem(&fam(name, arg));
            assert_eq!(
                verdict.class,
                TheoremClass::Polynomial { degree: 1 },
                "{name} {arg:?}"
            );
        }
    }

    #[test]
    fn off_family_diagrams_are_exponential() {
        // Star with five leaves; a path with a 4 two steps from one end
        // and three from the other; a triangle with or without a high
        // label; a four-edge path of 4s; a double-ended 5.
        for g in [
            fam("star", Some("6")),
            fam("tilde-F", Some("7")),
            fam("fig", Some("4.6")),
            fam("fig", Some("4.14")),
            fam("fig", Some("4.22")),
            fam("fig", Some("4.13")),
            fam("fig", Some("4.16")),
        ] {
            let verdict = theorem(&g);
            assert_eq!(verdict.class, TheoremClass::Exponential, "{g:?}");
            assert_eq!(verdict.expected_dimension, None);
        }
        // A cycle with a chord or a pendant is no longer a plain cycle.
        let chord = fam("tilde-A", Some("4")).add_edge(1, 3, Label::Finite(3)).unwrap();
        assert_eq!(theorem(&chord).class, TheoremClass::Exponential);
        let pendant = fam("tilde-A", Some("3")).add_leaf(1, Label::Finite(3)).unwrap();
        assert_eq!(theorem(&pendant).class, TheoremClass::Exponential);
        // An unbounded label on three or more vertices fits no family.
        let inf_path = fam("A", Some("3")).add_leaf(3, Label::Infinite).unwrap();
        assert_eq!(theorem(&inf_path).class, TheoremClass::Exponential);
    }

    #[test]
    fn matching_ignores_vertex_numbering() {
        // D5 with scrambled numbering.
        let scrambled = CoxGraph::with_edges(
            5,
            &[
                (3, 4, Label::Finite(3)),
                (2, 3, Label::Finite(3)),
                (1, 3, Label::Finite(3)),
                (1, 5, Label::Finite(3)),
            ],
        )
        .unwrap();
        let verdict = theorem(&scrambled);
        assert_eq!(verdict.family, Some(FamilyId::D { n: 5 }));
        assert_eq!(verdict.expected_dimension, dim(167));

        // tilde-B with the 4 on the tail's last edge, renumbered.
        let renumbered = CoxGraph::with_edges(
            5,
            &[
                (5, 2, Label::Finite(3)),
                (4, 2, Label::Finite(3)),
                (2, 1, Label::Finite(3)),
                (1, 3, Label::Finite(4)),
            ],
        )
        .unwrap();
        let verdict = theorem(&renumbered);
        assert_eq!(verdict.family, Some(FamilyId::TildeB { n: 5 }));
        assert_eq!(verdict.class, TheoremClass::Polynomial { degree: 1 });

        // The same shape with the 4 moved off the tail end is exponential.
        let off_end = CoxGraph::with_edges(
            5,
            &[
                (5, 2, Label::Finite(3)),
                (4, 2, Label::Finite(3)),
                (2, 1, Label::Finite(4)),
                (1, 3, Label::Finite(3)),
            ],
        )
        .unwrap();
        assert_eq!(theorem(&off_end).class, TheoremClass::Exponential);
    }

    #[test]
    fn disconnected_diagrams_are_rejected() {
        let two_edges = CoxGraph::with_edges(
            4,
            &[(1, 2, Label::Finite(3)), (3, 4, Label::Finite(3))],
        )
        .unwrap();
        assert!(matches!(
            classify_by_theorem(&two_edges),
            Err(ClassifyError::Disconnected)
        ));
        assert!(matches!(
            classify_by_computation(&two_edges, 8),
            Err(ClassifyError::Disconnected)
        ));
        assert!(matches!(
            cross_check(&two_edges, 8),
            Err(ClassifyError::Disconnected)
        ));
    }

    #[test]
    fn computation_classifies_small_diagrams() {
        let a2 = classify_by_computation(&fam("A", Some("2")), 8).unwrap();
        assert_eq!(
            a2.class,
            GrowthClass::FiniteDimensional {
                dimension: BigUint::from(5u32)
            }
        );
        assert_eq!(a2.cap_used, 8);
        assert!(a2.witness.is_none());

        let a1_tilde = classify_by_computation(&fam("tilde-A1", None), 8).unwrap();
        assert_eq!(a1_tilde.class, GrowthClass::PolynomialGrowth { degree: 1 });

        let triangle = classify_by_computation(&fam("tilde-A", Some("3")), 8).unwrap();
        assert_eq!(triangle.class, GrowthClass::PolynomialGrowth { degree: 1 });
    }

    #[test]
    fn capped_completions_fall_back_to_transported_witnesses() {
        // The six-leaf star capped below what completion needs still
        // classifies as exponential through a bundled pair.
        let star = classify_by_computation(&fam("star", Some("6")), 4).unwrap();
        assert!(!star.basis.is_complete());
        assert_eq!(star.class, GrowthClass::Exponential);
        let evidence = star.witness.expect("bundled pair transfers");
        assert_eq!(evidence.fixture_tag, "4.1");

        // The same diagram with the hub renumbered to 3: the pair must
        // transfer through a relabeling (and re-reduction) to verify.
        let edges: Vec<(u8, u8, Label)> = [1u8, 2, 4, 5, 6]
            .iter()
            .map(|&leaf| (3u8.min(leaf), 3u8.max(leaf), Label::Finite(3)))
            .collect();
        let scrambled = CoxGraph::with_edges(6, &edges).unwrap();
        let out = classify_by_computation(&scrambled, 4).unwrap();
        assert!(!out.basis.is_complete());
        assert_eq!(out.class, GrowthClass::Exponential);
        assert_eq!(out.witness.expect("pair transfers").fixture_tag, "4.1");
    }

    #[test]
    fn capped_completions_without_a_transferable_pair_stay_inconclusive() {
        // A seven-leaf star capped at 4 is exponential in truth, but no
        // bundled example has seven vertices, so nothing transfers.
        let stuck = classify_by_computation(&fam("star", Some("7")), 4).unwrap();
        assert!(!stuck.basis.is_complete());
        assert_eq!(stuck.class, GrowthClass::Inconclusive { cap: 4 });
        assert!(stuck.witness.is_none());

        // A finite-dimensional diagram capped too low is also honestly
        // inconclusive: its shape matches no bundled (exponential) example.
        let e6 = classify_by_computation(&fam("E", Some("6")), 8).unwrap();
        assert!(!e6.basis.is_complete());
        assert_eq!(e6.class, GrowthClass::Inconclusive { cap: 8 });

        // A cap below the input degree is an error, not a capped basis.
        assert!(matches!(
            classify_by_computation(&fam("l2", Some("12")), 3),
            Err(ClassifyError::Groebner(GroebnerError::CapTooSmall { .. }))
        ));
    }

    #[test]
    fn cross_check_agrees_on_known_diagrams() {
        for (name, arg, cap) in [
            ("A", Some("3"), 8),
            ("B", Some("3"), 12),
            ("D", Some("4"), 10),
            ("tilde-C", Some("2"), 12),
            ("tilde-A", Some("4"), 10),
            ("star", Some("6"), 10),
            ("l3", Some("6"), 16),
        ] {
            let report = cross_check(&fam(name, arg), cap).unwrap();
            assert_eq!(report.agreement, Agreement::Agree, "{name} {arg:?}");
        }
    }

    #[test]
    fn compare_flags_dimension_conflicts() {
        let verdict = theorem(&fam("A", Some("2")));
        let wrong = GrowthClass::FiniteDimensional {
            dimension: BigUint::from(6u32),
        };
        assert!(matches!(
            compare(&verdict, &wrong),
            Agreement::Disagree { .. }
        ));
        let right = GrowthClass::FiniteDimensional {
            dimension: BigUint::from(5u32),
        };
        assert_eq!(compare(&verdict, &right), Agreement::Agree);
        assert_eq!(
            compare(&verdict, &GrowthClass::Inconclusive { cap: 4 }),
            Agreement::Inconclusive
        );
    }

    #[test]
    fn small_sweep_has_no_disagreements() {
        // Connected diagrams up to isomorphism: 1 on one vertex, 2 on
        // two, and 7 on three (paths with label pairs {33, 34, 44},
        // triangles with label multisets {333, 334, 344, 444}).
        let report = sweep(3, &[3, 4], 12).unwrap();
        assert_eq!(report.rows.len(), 1 + 2 + 7);
        assert!(report.disagreements().is_empty());
        assert!(report.inconclusive().is_empty());
        let csv = report.to_csv();
        assert!(csv
            .starts_with("vertices,edges,structural,families,computed,dimension,agreement\n"));
        assert_eq!(csv.lines().count(), 11);
        assert!(csv.contains("1-2:4;1-3:4"));
    }

    #[test]
    fn canonical_keys_identify_isomorphic_diagrams() {
        let perms = permutations(3);
        let a = canonical_key(&[(1, 2, 3), (2, 3, 4)], &perms);
        let b = canonical_key(&[(2, 3, 3), (1, 3, 4)], &perms);
        let c = canonical_key(&[(1, 2, 4), (2, 3, 3)], &perms);
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = canonical_key(&[(1, 2, 4), (2, 3, 4)], &perms);
        assert_ne!(a, d);
    }
}
