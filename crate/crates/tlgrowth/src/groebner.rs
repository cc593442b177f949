//! Noncommutative Gröbner-basis completion for two-sided ideals of the free
//! algebra, specialized to a degree-capped critical-pair procedure.
//!
//! Relations are oriented into rewrite rules (largest word becomes the
//! left-hand side, made monic). The engine keeps the rule set *tip-reduced*:
//! no left-hand side contains another as a subword, and every right-hand
//! side is in normal form. Under that invariant the only ambiguities are
//! proper overlaps (a suffix of one left-hand side equals a prefix of
//! another), and resolving all of them certifies confluence.
//!
//! Completion is degree-capped: ambiguities whose overlap word exceeds the
//! cap are skipped and the result is marked as truncated rather than
//! complete. Because every new rule extracted from an overlap of degree `d`
//! lives in degree `< d`, a run that never skips an ambiguity has examined
//! everything, and a final verification pass re-checks every overlap of the
//! finished system before it is declared complete. Completed bases are fully
//! inter-reduced, hence canonical for the given order — independent of
//! relation order and pair-selection strategy.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::coeffs::Param;
use crate::freealg::{MonomialOrder, NCPoly, RewriteRule, RewriteSystem, Word, WordTrie};

/// Errors from orientation and completion.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    /// No relations were given.
    #[error("no relations given")]
    EmptyInput,
    /// An input relation is identically zero.
    #[error("relation #{index} is identically zero")]
    ZeroRelation {
        /// Zero-based index into the input list.
        index: usize,
    },
    /// A relation reduced to a nonzero constant, so the presented algebra
    /// is trivial.
    #[error("a relation reduces to a nonzero constant; the presentation is inconsistent")]
    ConstantRelation,
    /// The degree cap is below the degree of an input relation.
    #[error("degree cap {cap} is below an input relation of degree {needed}")]
    CapTooSmall {
        /// Smallest cap that could accommodate the input.
        needed: usize,
        /// The cap that was given.
        cap: usize,
    },
    /// A specialization that collapses the rewriting structure.
    #[error(
        "specializing {parameter} to 0 collapses the rewriting structure \
         (rule right-hand sides vanish); enable the degenerate override to proceed"
    )]
    DegenerateSpecialization {
        /// The offending parameter.
        parameter: String,
    },
}

/// Outcome of a completion run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionStatus {
    /// Every ambiguity was examined and resolved; the basis is a Gröbner
    /// basis and normal forms are canonical.
    Complete,
    /// Ambiguities above the degree cap were skipped; the rule set is
    /// correct but possibly not confluent beyond this degree.
    Capped {
        /// The degree cap in force when truncation happened.
        at_degree: usize,
    },
}

impl CompletionStatus {
    /// Whether the run examined every ambiguity.
    pub fn is_complete(&self) -> bool {
        matches!(self, CompletionStatus::Complete)
    }
}

impl fmt::Display for CompletionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompletionStatus::Complete => f.write_str("complete"),
            CompletionStatus::Capped { at_degree } => {
                write!(f, "capped at degree {at_degree}")
            }
        }
    }
}

/// Pair-selection strategy: ambiguities are always processed in order of
/// increasing overlap degree; the strategy breaks ties within a degree.
///
/// Completed bases are canonical, so the strategy never changes the final
/// answer — it exists to make that claim testable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CompletionStrategy {
    /// Within a degree, oldest ambiguity first.
    #[default]
    DegreeThenFifo,
    /// Within a degree, newest ambiguity first.
    DegreeThenLifo,
}

/// One ambiguity between two rules: a word that both can rewrite, plus the
/// difference of the two one-step rewrites. Reducing every difference to
/// zero certifies confluence.
#[derive(Clone, Debug)]
pub struct Composition {
    /// The overlap word.
    pub ambiguity: Word,
    /// Difference of the two one-step rewrites of the overlap word.
    pub difference: NCPoly,
}

/// All compositions where a suffix of `a`'s left-hand side equals a prefix
/// of `b`'s (call with the arguments swapped for the other direction;
/// `a == b` yields self-overlaps).
pub fn compositions(a: &RewriteRule, b: &RewriteRule) -> Vec<Composition> {
    let la = a.lhs().len();
    let lb = b.lhs().len();
    let mut out = Vec::new();
    for k in overlap_lengths(a.lhs().letters(), b.lhs().letters()) {
        let mut word = a.lhs().letters().to_vec();
        word.extend_from_slice(&b.lhs().letters()[k..]);
        let left = a.rhs().pad(&[], &b.lhs().letters()[k..]);
        let right = b.rhs().pad(&a.lhs().letters()[..la - k], &[]);
        debug_assert!(k < la && k < lb);
        out.push(Composition {
            ambiguity: Word::new(word),
            difference: left.sub(&right),
        });
    }
    out
}

/// Proper overlap lengths `k`: the last `k` letters of `a` equal the first
/// `k` letters of `b`, with `k` strictly shorter than both words.
fn overlap_lengths(a: &[u8], b: &[u8]) -> Vec<usize> {
    let max_k = a.len().min(b.len()).saturating_sub(1);
    (1..=max_k)
        .filter(|&k| a[a.len() - k..] == b[..k])
        .collect()
}

fn contains_subword(haystack: &[u8], needle: &[u8]) -> bool {
    !needle.is_empty()
        && haystack.len() >= needle.len()
        && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Orient a nonzero relation into a monic rewrite rule: the largest word
/// becomes the left-hand side and the rest, negated and divided by its
/// coefficient, the right-hand side.
pub fn normalize(p: &NCPoly, order: &MonomialOrder) -> Result<RewriteRule, GroebnerError> {
    let mut rest = p.clone();
    let Some((lhs, c)) = rest.take_leading(order) else {
        return Err(GroebnerError::ZeroRelation { index: 0 });
    };
    if lhs.is_empty() {
        return Err(GroebnerError::ConstantRelation);
    }
    let inv = c.inverse().expect("leading coefficient is nonzero");
    let rhs = rest.neg().scale(&inv);
    Ok(RewriteRule::new(lhs, rhs, order).expect("orientation is valid by construction"))
}

/// Reject specializations that collapse the rewriting structure unless the
/// caller explicitly allows them. Setting `t = 0` zeroes the right-hand
/// sides of the braid-derived rules, which changes the normal-word language
/// rather than merely specializing coefficients.
pub fn validate_specialization(
    assignment: &BTreeMap<Param, BigRational>,
    allow_degenerate: bool,
) -> Result<(), GroebnerError> {
    if allow_degenerate {
        return Ok(());
    }
    if let Some(v) = assignment.get(&Param::T) {
        if v.is_zero() {
            return Err(GroebnerError::DegenerateSpecialization {
                parameter: Param::T.name().to_string(),
            });
        }
    }
    Ok(())
}

/// A finished (complete or degree-capped) rewriting system for a two-sided
/// ideal: monic rules, tip-reduced, right-hand sides in normal form, sorted
/// by (degree, letters).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    rules: Vec<RewriteRule>,
    order: MonomialOrder,
    status: CompletionStatus,
}

impl GroebnerBasis {
    /// Assemble a basis from parts (rules are re-sorted; intended for tests
    /// and deserialized data).
    pub fn from_parts(
        mut rules: Vec<RewriteRule>,
        order: MonomialOrder,
        status: CompletionStatus,
    ) -> GroebnerBasis {
        sort_rules(&mut rules);
        GroebnerBasis {
            rules,
            order,
            status,
        }
    }

    /// The rules, sorted by (degree, letters).
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// The monomial order the basis was completed under.
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Completion outcome.
    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    /// Whether every ambiguity was examined.
    pub fn is_complete(&self) -> bool {
        self.status.is_complete()
    }

    /// The rule left-hand sides, in rule order. For a complete basis these
    /// are exactly the forbidden subwords of normal words.
    pub fn leading_words(&self) -> Vec<Word> {
        self.rules.iter().map(|r| r.lhs().clone()).collect()
    }

    /// A matching/reduction view over the rules.
    pub fn to_rewrite_system(&self) -> RewriteSystem {
        RewriteSystem::new(self.rules.clone())
    }

    /// Reduce a polynomial to normal form modulo the basis.
    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        self.to_rewrite_system().reduce(p, &self.order)
    }

    /// One rule per line, `lhs -> rhs`, in rule order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            out.push_str(&rule.to_string());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn sort_rules(rules: &mut [RewriteRule]) {
    rules.sort_by(|a, b| {
        a.lhs()
            .len()
            .cmp(&b.lhs().len())
            .then_with(|| a.lhs().letters().cmp(b.lhs().letters()))
    });
}

/// Default degree cap for completing the given relations: twice the
/// largest term length plus two, enough to examine every overlap of two
/// longest inputs with room for one further degree of consequences. The
/// short presentations this crate produces typically finish within it;
/// callers can always pass a larger cap to [`complete`].
pub fn default_degree_cap(relations: &[NCPoly]) -> usize {
    let longest = relations
        .iter()
        .flat_map(|p| p.terms().map(|(w, _)| w.len()))
        .max()
        .unwrap_or(0);
    2 * longest + 2
}

/// Complete a relation list into a Gröbner basis under `order`, examining
/// ambiguities of degree at most `cap`.
///
/// # Errors
/// * [`GroebnerError::EmptyInput`] — no relations.
/// * [`GroebnerError::ZeroRelation`] — an input is identically zero.
/// * [`GroebnerError::CapTooSmall`] — an input relation lives above the cap.
/// * [`GroebnerError::ConstantRelation`] — the ideal contains a nonzero
///   constant.
pub fn complete(
    relations: &[NCPoly],
    order: &MonomialOrder,
    cap: usize,
    strategy: CompletionStrategy,
) -> Result<GroebnerBasis, GroebnerError> {
    if relations.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    let mut engine = Completion::new(order.clone(), cap, strategy);
    // Absorb every input before processing any ambiguity: quiescing after
    // each input would complete a partial presentation, whose intermediate
    // rule set can dwarf the final one (short relations arriving late
    // retire whole swathes of it).
    for (index, relation) in relations.iter().enumerate() {
        if relation.is_zero() {
            return Err(GroebnerError::ZeroRelation { index });
        }
        engine.absorb(relation.clone(), true)?;
    }
    engine.run_to_quiescence()?;
    let status = engine.certify()?;
    Ok(engine.into_basis(status))
}

/// A queued ambiguity: rules `i`, `j` with overlap length `k`. Processed in
/// order of increasing overlap degree, ties broken by `seq` (negated for
/// LIFO selection).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pending {
    degree: usize,
    seq: i64,
    i: usize,
    j: usize,
    k: usize,
}

#[derive(Clone, Debug)]
struct EngineRule {
    lhs: Word,
    rhs: NCPoly,
    alive: bool,
}

impl EngineRule {
    fn as_poly(&self) -> NCPoly {
        let mut p = self.rhs.neg();
        p.add_term(self.lhs.clone(), crate::coeffs::ParamScalar::one());
        p
    }
}

struct Completion {
    order: MonomialOrder,
    cap: usize,
    strategy: CompletionStrategy,
    rules: Vec<EngineRule>,
    trie: WordTrie,
    pending: BinaryHeap<Reverse<Pending>>,
    redo: VecDeque<NCPoly>,
    seq: i64,
}

impl Completion {
    fn new(order: MonomialOrder, cap: usize, strategy: CompletionStrategy) -> Completion {
        Completion {
            order,
            cap,
            strategy,
            rules: Vec::new(),
            trie: WordTrie::new(),
            pending: BinaryHeap::new(),
            redo: VecDeque::new(),
            seq: 0,
        }
    }

    /// Reduce to normal form against the live rules (leftmost-largest).
    fn reduce(&self, p: &NCPoly) -> NCPoly {
        let mut work = p.clone();
        let mut out = NCPoly::zero();
        while let Some((w, c)) = work.take_leading(&self.order) {
            match self.trie.leftmost_match(w.letters(), &|_| true) {
                None => out.add_term(w, c),
                Some((start, len, id)) => {
                    let rule = &self.rules[id as usize];
                    debug_assert!(rule.alive, "dead rules are removed from the trie");
                    let prefix = &w.letters()[..start];
                    let suffix = &w.letters()[start + len..];
                    work = work.add(&rule.rhs.pad(prefix, suffix).scale(&c));
                }
            }
        }
        out
    }

    /// Reduce a relation and, if it survives, orient and install it.
    /// `is_input` distinguishes user relations (which may legitimately
    /// exceed the cap, and must then error) from derived ones (which cannot).
    fn absorb(&mut self, relation: NCPoly, is_input: bool) -> Result<(), GroebnerError> {
        let mut reduced = self.reduce(&relation);
        let Some((lhs, c)) = reduced.take_leading(&self.order) else {
            return Ok(());
        };
        if lhs.is_empty() {
            return Err(GroebnerError::ConstantRelation);
        }
        if lhs.len() > self.cap {
            debug_assert!(is_input, "derived rules stay under the cap");
            let _ = is_input;
            return Err(GroebnerError::CapTooSmall {
                needed: lhs.len(),
                cap: self.cap,
            });
        }
        let inv = c.inverse().expect("leading coefficient is nonzero");
        let rhs = reduced.neg().scale(&inv);
        self.install(lhs, rhs);
        Ok(())
    }

    /// Install a monic, fully reduced rule; maintain tip-reduction and
    /// normal-form right-hand sides; queue the new ambiguities.
    fn install(&mut self, lhs: Word, rhs: NCPoly) {
        let id = self.rules.len();
        let new_lhs: Vec<u8> = lhs.letters().to_vec();
        self.trie.insert(&new_lhs, id as u32);
        self.rules.push(EngineRule {
            lhs,
            rhs,
            alive: true,
        });

        // Retire rules whose left-hand side now contains the new one; their
        // relations re-enter the pipeline to be re-oriented lower down.
        for s in 0..id {
            if self.rules[s].alive && contains_subword(self.rules[s].lhs.letters(), &new_lhs) {
                self.rules[s].alive = false;
                let letters = self.rules[s].lhs.letters().to_vec();
                self.trie.remove(&letters);
                self.redo.push_back(self.rules[s].as_poly());
            }
        }

        // Keep right-hand sides in normal form.
        for s in 0..id {
            if !self.rules[s].alive {
                continue;
            }
            let mentions = self.rules[s]
                .rhs
                .terms()
                .any(|(w, _)| contains_subword(w.letters(), &new_lhs));
            if mentions {
                let taken = self.rules[s].rhs.clone();
                self.rules[s].rhs = self.reduce(&taken);
            }
        }

        // Queue overlaps of the new rule with every live rule (both
        // directions; `s == id` contributes the self-overlaps once).
        for s in 0..=id {
            if !self.rules[s].alive {
                continue;
            }
            self.enqueue_overlaps(s, id);
            if s != id {
                self.enqueue_overlaps(id, s);
            }
        }
    }

    fn enqueue_overlaps(&mut self, i: usize, j: usize) {
        let a = self.rules[i].lhs.letters().to_vec();
        let b = self.rules[j].lhs.letters().to_vec();
        for k in overlap_lengths(&a, &b) {
            let degree = a.len() + b.len() - k;
            self.seq += 1;
            let seq = match self.strategy {
                CompletionStrategy::DegreeThenFifo => self.seq,
                CompletionStrategy::DegreeThenLifo => -self.seq,
            };
            self.pending.push(Reverse(Pending {
                degree,
                seq,
                i,
                j,
                k,
            }));
        }
    }

    /// The difference of the two one-step rewrites of the overlap word of
    /// rules `i` and `j` with overlap length `k`.
    fn spoly(&self, i: usize, j: usize, k: usize) -> NCPoly {
        let a = &self.rules[i];
        let b = &self.rules[j];
        let la = a.lhs.len();
        let left = a.rhs.pad(&[], &b.lhs.letters()[k..]);
        let right = b.rhs.pad(&a.lhs.letters()[..la - k], &[]);
        left.sub(&right)
    }

    /// Drain the redo queue, then the ambiguity queue up to the degree
    /// cap. The queue pops in degree order, so once one ambiguity exceeds
    /// the cap the rest do too and the queue can be dropped; anything
    /// discarded here is re-derived by [`Completion::certify`] from the
    /// finished rule set.
    fn run_to_quiescence(&mut self) -> Result<(), GroebnerError> {
        loop {
            if let Some(poly) = self.redo.pop_front() {
                self.absorb(poly, false)?;
                continue;
            }
            let Some(Reverse(p)) = self.pending.pop() else {
                return Ok(());
            };
            if !self.rules[p.i].alive || !self.rules[p.j].alive {
                continue;
            }
            if p.degree > self.cap {
                self.pending.clear();
                return Ok(());
            }
            let s = self.spoly(p.i, p.j, p.k);
            self.absorb(s, false)?;
        }
    }

    /// Decide the completion status from the finished rule set alone:
    /// re-examine every overlap at every degree, absorb consequences that
    /// fit under the cap, and repeat until either a pass is clean
    /// (complete — by the diamond lemma, all ambiguities of the final
    /// system resolve) or the only outstanding consequences need rules
    /// beyond the cap (capped).
    fn certify(&mut self) -> Result<CompletionStatus, GroebnerError> {
        loop {
            let live: Vec<usize> = (0..self.rules.len())
                .filter(|&i| self.rules[i].alive)
                .collect();
            let mut violations = Vec::new();
            for &i in &live {
                for &j in &live {
                    let a = self.rules[i].lhs.letters().to_vec();
                    let b = self.rules[j].lhs.letters().to_vec();
                    for k in overlap_lengths(&a, &b) {
                        let red = self.reduce(&self.spoly(i, j, k));
                        if !red.is_zero() {
                            violations.push(red);
                        }
                    }
                }
            }
            if violations.is_empty() {
                return Ok(CompletionStatus::Complete);
            }
            let mut progressed = false;
            for v in violations {
                let fits = v
                    .leading(&self.order)
                    .is_some_and(|(w, _)| w.len() <= self.cap);
                if fits {
                    self.redo.push_back(v);
                    progressed = true;
                }
            }
            if !progressed {
                return Ok(CompletionStatus::Capped {
                    at_degree: self.cap,
                });
            }
            self.run_to_quiescence()?;
        }
    }

    fn into_basis(self, status: CompletionStatus) -> GroebnerBasis {
        let mut rules: Vec<RewriteRule> = self
            .rules
            .iter()
            .filter(|r| r.alive)
            .map(|r| {
                RewriteRule::new(r.lhs.clone(), r.rhs.clone(), &self.order)
                    .expect("engine rules are oriented")
            })
            .collect();
        sort_rules(&mut rules);
        GroebnerBasis {
            rules,
            order: self.order,
            status,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> NCPoly {
        s.parse().expect("poly parses")
    }

    fn polys(texts: &[&str]) -> Vec<NCPoly> {
        texts.iter().map(|t| poly(t)).collect()
    }

    /// Two generators joined by an edge that imposes the length-3
    /// alternating relations.
    fn two_vertex_braid_relations() -> Vec<NCPoly> {
        polys(&[
            "p1*p1 - p1",
            "p2*p2 - p2",
            "p1*p2*p1 - t*p1",
            "p2*p1*p2 - t*p2",
        ])
    }

    /// Path on three vertices: edges {1,2} and {2,3}, non-edge {1,3}.
    fn three_path_relations() -> Vec<NCPoly> {
        polys(&[
            "p1*p1 - p1",
            "p2*p2 - p2",
            "p3*p3 - p3",
            "p1*p2*p1 - t*p1",
            "p2*p1*p2 - t*p2",
            "p2*p3*p2 - t*p2",
            "p3*p2*p3 - t*p3",
            "p3*p1 - p1*p3",
        ])
    }

    #[test]
    fn two_vertex_system_is_already_complete() {
        let order = MonomialOrder::natural(2);
        let basis = complete(
            &two_vertex_braid_relations(),
            &order,
            10,
            CompletionStrategy::default(),
        )
        .unwrap();
        assert!(basis.is_complete());
        assert_eq!(
            basis.to_text(),
            "p1*p1 -> p1\n\
             p2*p2 -> p2\n\
             p1*p2*p1 -> t*p1\n\
             p2*p1*p2 -> t*p2\n"
        );
    }

    #[test]
    fn three_path_completion_derives_two_extra_rules() {
        // Worked by hand: the overlap of p3*p2*p3 -> t*p3 with
        // p3*p1 -> p1*p3 at the shared p3 yields p3*p2*p1*p3 -> t*p1*p3,
        // and the overlap of p3*p1 -> p1*p3 with p1*p2*p1 -> t*p1 yields
        // p1*p3*p2*p1 -> t*p1*p3. Everything else resolves.
        let order = MonomialOrder::natural(3);
        let basis = complete(
            &three_path_relations(),
            &order,
            12,
            CompletionStrategy::default(),
        )
        .unwrap();
        assert!(basis.is_complete());
        assert_eq!(
            basis.to_text(),
            "p1*p1 -> p1\n\
             p2*p2 -> p2\n\
             p3*p1 -> p1*p3\n\
             p3*p3 -> p3\n\
             p1*p2*p1 -> t*p1\n\
             p2*p1*p2 -> t*p2\n\
             p2*p3*p2 -> t*p2\n\
             p3*p2*p3 -> t*p3\n\
             p1*p3*p2*p1 -> t*p1*p3\n\
             p3*p2*p1*p3 -> t*p1*p3\n"
        );
    }

    #[test]
    fn completion_is_strategy_independent() {
        let order = MonomialOrder::natural(3);
        let fifo = complete(
            &three_path_relations(),
            &order,
            12,
            CompletionStrategy::DegreeThenFifo,
        )
        .unwrap();
        let lifo = complete(
            &three_path_relations(),
            &order,
            12,
            CompletionStrategy::DegreeThenLifo,
        )
        .unwrap();
        assert_eq!(fifo.to_text(), lifo.to_text());
    }

    #[test]
    fn cap_skips_high_degree_ambiguities() {
        let order = MonomialOrder::natural(3);
        let basis = complete(
            &three_path_relations(),
            &order,
            3,
            CompletionStrategy::default(),
        )
        .unwrap();
        assert_eq!(basis.status(), CompletionStatus::Capped { at_degree: 3 });
        // The degree-4 consequences were not derived.
        assert!(basis
            .leading_words()
            .iter()
            .all(|w| w.len() <= 3));
    }

    #[test]
    fn cap_below_input_degree_is_an_error() {
        let order = MonomialOrder::natural(3);
        let err = complete(
            &three_path_relations(),
            &order,
            2,
            CompletionStrategy::default(),
        )
        .unwrap_err();
        assert_eq!(err, GroebnerError::CapTooSmall { needed: 3, cap: 2 });
    }

    #[test]
    fn empty_and_zero_inputs_are_rejected() {
        let order = MonomialOrder::natural(2);
        assert_eq!(
            complete(&[], &order, 10, CompletionStrategy::default()).unwrap_err(),
            GroebnerError::EmptyInput
        );
        let err = complete(
            &[poly("p1*p1 - p1"), NCPoly::zero()],
            &order,
            10,
            CompletionStrategy::default(),
        )
        .unwrap_err();
        assert_eq!(err, GroebnerError::ZeroRelation { index: 1 });
    }

    #[test]
    fn inconsistent_presentation_is_detected() {
        let order = MonomialOrder::natural(1);
        // p1 = 0 and p1 = 1 together force 1 = 0.
        let err = complete(
            &[poly("p1"), poly("p1 - 1")],
            &order,
            10,
            CompletionStrategy::default(),
        )
        .unwrap_err();
        assert_eq!(err, GroebnerError::ConstantRelation);
    }

    #[test]
    fn duplicate_relations_are_harmless() {
        let order = MonomialOrder::natural(2);
        let mut relations = two_vertex_braid_relations();
        relations.extend(two_vertex_braid_relations());
        let basis = complete(&relations, &order, 10, CompletionStrategy::default()).unwrap();
        assert_eq!(basis.rules().len(), 4);
    }

    #[test]
    fn normalize_orients_and_scales() {
        let order = MonomialOrder::natural(2);
        let rule = normalize(&poly("2*p1*p2*p1 - t*p1 + p2*p1"), &order).unwrap();
        assert_eq!(rule.to_string(), "p1*p2*p1 -> -1/2*p2*p1 + 1/2*t*p1");
    }

    #[test]
    fn compositions_report_overlaps() {
        let order = MonomialOrder::natural(2);
        let braid = normalize(&poly("p1*p2*p1 - t*p1"), &order).unwrap();
        let comps = compositions(&braid, &braid);
        // Self-overlap at the shared p1: 12121.
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].ambiguity, "1,2,1,2,1".parse().unwrap());
        // Both rewrites give t·p1p2p1; the difference reduces to zero under
        // the braid rule itself.
        let sys = RewriteSystem::new(vec![braid]);
        assert!(sys.reduce(&comps[0].difference, &order).is_zero());
    }

    #[test]
    fn basis_reduces_polynomials() {
        let order = MonomialOrder::natural(3);
        let basis = complete(
            &three_path_relations(),
            &order,
            12,
            CompletionStrategy::default(),
        )
        .unwrap();
        assert_eq!(basis.reduce(&poly("p3*p2*p1*p3")), poly("t*p1*p3"));
        assert_eq!(basis.reduce(&poly("p1*p1*p1")), poly("p1"));
    }

    #[test]
    fn leading_words_are_sorted() {
        let order = MonomialOrder::natural(3);
        let basis = complete(
            &three_path_relations(),
            &order,
            12,
            CompletionStrategy::default(),
        )
        .unwrap();
        let words: Vec<String> = basis.leading_words().iter().map(Word::to_string).collect();
        assert_eq!(
            words,
            vec![
                "1,1", "2,2", "3,1", "3,3", "1,2,1", "2,1,2", "2,3,2", "3,2,3", "1,3,2,1",
                "3,2,1,3"
            ]
        );
    }

    #[test]
    fn zero_t_specialization_is_guarded() {
        let mut assignment = BTreeMap::new();
        assignment.insert(Param::T, BigRational::zero());
        assert!(matches!(
            validate_specialization(&assignment, false),
            Err(GroebnerError::DegenerateSpecialization { .. })
        ));
        assert!(validate_specialization(&assignment, true).is_ok());

        let mut fine = BTreeMap::new();
        fine.insert(Param::T, BigRational::new(1.into(), 2.into()));
        assert!(validate_specialization(&fine, false).is_ok());
    }
}
