//! Dimension and growth of the quotient algebra, read off the language of
//! normal words.
//!
//! Once a (complete) rewriting system is known, the normal words — words
//! avoiding every rule left-hand side as a subword — form a basis of the
//! quotient. That language is recognized by a finite automaton whose states
//! are the proper prefixes of forbidden words (the longest suffix of the
//! input that could still grow into a forbidden word). Everything else
//! follows from the automaton's structure:
//!
//! * graded dimensions are path counts from the start state,
//! * total dimension is finite iff the live part is acyclic,
//! * growth is exponential iff some strongly connected component is not a
//!   simple cycle, and otherwise polynomial of degree equal to the largest
//!   number of cyclic components threaded by a single path,
//! * the overlap graph on normal words of a fixed length recasts the same
//!   counts as walks, which is the form used for drawing and for
//!   independent cross-checks.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::freealg::Word;
use crate::groebner::GroebnerBasis;

/// Errors from automaton construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GrowthError {
    /// Forbidden words must be nonempty (an empty forbidden word would
    /// forbid everything, including the empty word).
    #[error("forbidden word #{index} is empty")]
    EmptyForbiddenWord {
        /// Zero-based index into the forbidden list.
        index: usize,
    },
    /// A forbidden word uses a letter outside the alphabet.
    #[error("letter {letter} outside the alphabet 1..={max}")]
    LetterOutOfRange {
        /// The offending letter.
        letter: u8,
        /// Number of generators.
        max: u8,
    },
}

/// Total dimension of the quotient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TotalDimension {
    /// Finitely many normal words, counted exactly.
    Finite(BigUint),
    /// The normal-word language is infinite.
    Infinite,
}

/// Growth class of the quotient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    /// Finitely many normal words; the dimension is exact.
    FiniteDimensional {
        /// Number of normal words.
        dimension: BigUint,
    },
    /// Graded dimensions grow polynomially; cumulative dimension up to
    /// degree `n` grows like `n^degree`. Degree 1 is linear growth
    /// (eventually constant graded dimensions).
    PolynomialGrowth {
        /// The polynomial degree (≥ 1).
        degree: usize,
    },
    /// Graded dimensions grow exponentially.
    Exponential,
    /// The rewriting system was degree-capped, so the normal-word language
    /// is only an over-approximation and no claim is made.
    Inconclusive {
        /// The cap that truncated completion.
        cap: usize,
    },
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::FiniteDimensional { dimension } => {
                write!(f, "finite-dimensional (dimension {dimension})")
            }
            GrowthClass::PolynomialGrowth { degree } => {
                if *degree == 1 {
                    f.write_str("linear growth")
                } else {
                    write!(f, "polynomial growth of degree {degree}")
                }
            }
            GrowthClass::Exponential => f.write_str("exponential growth"),
            GrowthClass::Inconclusive { cap } => {
                write!(f, "inconclusive (degree cap {cap})")
            }
        }
    }
}

/// The finite automaton recognizing normal words.
///
/// State 0 is the start state (empty suffix); a state's word is the longest
/// suffix of the input read so far that is a proper prefix of some
/// forbidden word. Transitions are per letter; `None` means the letter
/// completes a forbidden word.
#[derive(Clone, Debug)]
pub struct NormalWordAutomaton {
    n_generators: u8,
    max_forbidden_len: usize,
    states: Vec<Vec<u8>>,
    transitions: Vec<Vec<Option<u32>>>,
}

/// Build the normal-word automaton for `forbidden` over `1..=n_generators`.
pub fn build_automaton(
    n_generators: u8,
    forbidden: &[Word],
) -> Result<NormalWordAutomaton, GrowthError> {
    for (index, f) in forbidden.iter().enumerate() {
        if f.is_empty() {
            return Err(GrowthError::EmptyForbiddenWord { index });
        }
        if let Some(&letter) = f.letters().iter().find(|&&l| l == 0 || l > n_generators) {
            return Err(GrowthError::LetterOutOfRange {
                letter,
                max: n_generators,
            });
        }
    }
    let forb: HashSet<&[u8]> = forbidden.iter().map(Word::letters).collect();
    let prefixes: HashSet<&[u8]> = forbidden
        .iter()
        .flat_map(|w| (0..w.len()).map(move |k| &w.letters()[..k]))
        .collect();
    let max_forbidden_len = forbidden.iter().map(Word::len).max().unwrap_or(0);

    let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
    let mut states: Vec<Vec<u8>> = vec![Vec::new()];
    index.insert(Vec::new(), 0);
    let mut transitions: Vec<Vec<Option<u32>>> = Vec::new();

    let mut head = 0;
    while head < states.len() {
        let u = states[head].clone();
        let mut row = Vec::with_capacity(n_generators as usize);
        for a in 1..=n_generators {
            let mut w = u.clone();
            w.push(a);
            let dead = (1..=w.len()).any(|l| forb.contains(&w[w.len() - l..]));
            if dead {
                row.push(None);
                continue;
            }
            let longest = max_forbidden_len.saturating_sub(1).min(w.len());
            let mut next: &[u8] = &[];
            for l in (0..=longest).rev() {
                if prefixes.contains(&w[w.len() - l..]) {
                    next = &w[w.len() - l..];
                    break;
                }
            }
            let id = match index.get(next) {
                Some(&id) => id,
                None => {
                    let id = states.len() as u32;
                    index.insert(next.to_vec(), id);
                    states.push(next.to_vec());
                    id
                }
            };
            row.push(Some(id));
        }
        transitions.push(row);
        head += 1;
    }

    Ok(NormalWordAutomaton {
        n_generators,
        max_forbidden_len,
        states,
        transitions,
    })
}

impl NormalWordAutomaton {
    /// Build from a rewriting system's leading words. The basis may be
    /// degree-capped; the automaton then recognizes a superset of the true
    /// normal words, which is the caller's concern.
    pub fn from_basis(basis: &GroebnerBasis) -> Result<NormalWordAutomaton, GrowthError> {
        build_automaton(basis.order().n_generators(), &basis.leading_words())
    }

    /// Number of generators.
    pub fn n_generators(&self) -> u8 {
        self.n_generators
    }

    /// Number of live states.
    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    /// Run the automaton; `true` iff no forbidden word occurs in `letters`.
    ///
    /// # Panics
    /// If a letter lies outside `1..=n_generators`.
    pub fn is_normal(&self, letters: &[u8]) -> bool {
        let mut state = 0usize;
        for &a in letters {
            assert!(
                a >= 1 && a <= self.n_generators,
                "letter {a} outside the alphabet"
            );
            match self.transitions[state][(a - 1) as usize] {
                Some(next) => state = next as usize,
                None => return false,
            }
        }
        true
    }

    /// Numbers of normal words of each length `0..=max_degree`.
    pub fn graded_counts(&self, max_degree: usize) -> Vec<BigUint> {
        let n = self.states.len();
        let mut current = vec![BigUint::zero(); n];
        current[0] = BigUint::one();
        let mut counts = Vec::with_capacity(max_degree + 1);
        counts.push(BigUint::one());
        for _ in 1..=max_degree {
            let mut next = vec![BigUint::zero(); n];
            for (row, count) in self.transitions.iter().zip(&current) {
                if count.is_zero() {
                    continue;
                }
                for t in row.iter().flatten() {
                    next[*t as usize] += count;
                }
            }
            counts.push(next.iter().sum());
            current = next;
        }
        counts
    }

    /// Raw adjacency (one entry per live letter-transition; duplicates
    /// preserved, since parallel edges mean distinct extensions).
    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.transitions
            .iter()
            .map(|row| row.iter().flatten().map(|&t| t as usize).collect())
            .collect()
    }

    /// Exact dimension if the language is finite.
    pub fn total_dimension(&self) -> TotalDimension {
        let adj = self.adjacency();
        let (_, comps) = strongly_connected_components(&adj);
        if comps.iter().any(|comp| is_cyclic_component(comp, &adj)) {
            return TotalDimension::Infinite;
        }
        TotalDimension::Finite(self.count_dag(&adj, &comps))
    }

    /// Number of normal words when the automaton is acyclic: every state
    /// contributes the empty continuation plus everything its successors
    /// reach. Components arrive children-first, so successors are done.
    fn count_dag(&self, adj: &[Vec<usize>], comps: &[Vec<usize>]) -> BigUint {
        let mut f = vec![BigUint::zero(); self.states.len()];
        for comp in comps {
            debug_assert_eq!(comp.len(), 1, "acyclic automaton has singleton components");
            let s = comp[0];
            let mut total = BigUint::one();
            for &t in &adj[s] {
                total += &f[t];
            }
            f[s] = total;
        }
        f[0].clone()
    }

    /// Classify growth from the component structure.
    pub fn classify(&self) -> GrowthClass {
        let adj = self.adjacency();
        let (comp_of, comps) = strongly_connected_components(&adj);
        let cyclic: Vec<bool> = comps
            .iter()
            .map(|comp| is_cyclic_component(comp, &adj))
            .collect();

        // Two distinct in-component continuations from one state give
        // exponentially many interleavings.
        for s in 0..adj.len() {
            let within = adj[s].iter().filter(|&&t| comp_of[t] == comp_of[s]).count();
            if within >= 2 {
                return GrowthClass::Exponential;
            }
        }

        if !cyclic.iter().any(|&c| c) {
            return GrowthClass::FiniteDimensional {
                dimension: self.count_dag(&adj, &comps),
            };
        }

        // Polynomial: the degree is the largest number of cyclic components
        // on a path from the start state. Components arrive children-first.
        let mut g = vec![0usize; comps.len()];
        for (cid, comp) in comps.iter().enumerate() {
            let mut best = 0;
            for &s in comp {
                for &t in &adj[s] {
                    let d = comp_of[t];
                    if d != cid {
                        best = best.max(g[d]);
                    }
                }
            }
            g[cid] = best + usize::from(cyclic[cid]);
        }
        GrowthClass::PolynomialGrowth {
            degree: g[comp_of[0]],
        }
    }

    /// All normal words of the given length, in lexicographic order.
    pub fn normal_words_of_length(&self, len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut letters = Vec::with_capacity(len);
        self.collect_words(0, len, &mut letters, &mut out);
        out
    }

    fn collect_words(
        &self,
        state: usize,
        remaining: usize,
        letters: &mut Vec<u8>,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            out.push(Word::new(letters.clone()));
            return;
        }
        for a in 1..=self.n_generators {
            if let Some(next) = self.transitions[state][(a - 1) as usize] {
                letters.push(a);
                self.collect_words(next as usize, remaining - 1, letters, out);
                letters.pop();
            }
        }
    }

    /// The overlap graph on normal words of length `max(ℓ, 2) − 1`, where
    /// `ℓ` is the longest forbidden word: an edge `u → v` whenever `u` and
    /// `v` overlap in all but one letter and the glued word is normal.
    /// Walks of length `k` correspond to normal words of length
    /// `vertex_len + k`.
    pub fn growth_graph(&self) -> GrowthGraph {
        let ell_eff = self.max_forbidden_len.max(2);
        let vertex_len = ell_eff - 1;
        let vertices = self.normal_words_of_length(vertex_len);
        let index: HashMap<&[u8], u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters(), i as u32))
            .collect();
        let mut edges = Vec::new();
        for (i, u) in vertices.iter().enumerate() {
            for a in 1..=self.n_generators {
                let mut glued = u.letters().to_vec();
                glued.push(a);
                if self.is_normal(&glued) {
                    let j = *index
                        .get(&glued[1..])
                        .expect("suffix of a normal word is normal");
                    edges.push((i as u32, j));
                }
            }
        }
        edges.sort_unstable();
        GrowthGraph {
            vertex_len,
            vertices,
            edges,
        }
    }
}

/// The overlap graph on fixed-length normal words (see
/// [`NormalWordAutomaton::growth_graph`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthGraph {
    vertex_len: usize,
    vertices: Vec<Word>,
    edges: Vec<(u32, u32)>,
}

impl GrowthGraph {
    /// Length of the words at the vertices.
    pub fn vertex_len(&self) -> usize {
        self.vertex_len
    }

    /// The vertex words, in lexicographic order.
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    /// Edges as index pairs into [`Self::vertices`], sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Numbers of walks with `0..=steps` edges (from any start vertex);
    /// entry `k` equals the number of normal words of length
    /// `vertex_len + k`.
    pub fn walk_counts(&self, steps: usize) -> Vec<BigUint> {
        let n = self.vertices.len();
        let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            incoming[v as usize].push(u as usize);
        }
        let mut current = vec![BigUint::one(); n];
        let mut counts = Vec::with_capacity(steps + 1);
        counts.push(current.iter().sum());
        for _ in 1..=steps {
            let next: Vec<BigUint> = (0..n)
                .map(|v| incoming[v].iter().map(|&u| &current[u]).sum())
                .collect();
            counts.push(next.iter().sum());
            current = next;
        }
        counts
    }

    /// One `u -> v` line per edge, vertices in comma syntax, sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&format!(
                "{} -> {}\n",
                self.vertices[u as usize], self.vertices[v as usize]
            ));
        }
        out
    }
}

/// CSV rendering of graded dimensions: a `degree,count` header then one
/// row per degree.
pub fn graded_counts_csv(counts: &[BigUint]) -> String {
    let mut out = String::from("degree,count\n");
    for (degree, count) in counts.iter().enumerate() {
        out.push_str(&format!("{degree},{count}\n"));
    }
    out
}

/// Reference implementation for cross-checking: count normal words by
/// depth-first extension, without building the automaton.
pub fn brute_force_graded_counts(
    n_generators: u8,
    forbidden: &[Word],
    max_degree: usize,
) -> Vec<BigUint> {
    let forb: HashSet<&[u8]> = forbidden.iter().map(Word::letters).collect();
    let max_len = forbidden.iter().map(Word::len).max().unwrap_or(0);
    let mut counts = vec![BigUint::zero(); max_degree + 1];
    let mut word: Vec<u8> = Vec::new();
    extend(
        n_generators,
        &forb,
        max_len,
        max_degree,
        &mut word,
        &mut counts,
    );
    counts
}

fn extend(
    n: u8,
    forb: &HashSet<&[u8]>,
    max_len: usize,
    max_degree: usize,
    word: &mut Vec<u8>,
    counts: &mut [BigUint],
) {
    counts[word.len()] += BigUint::one();
    if word.len() == max_degree {
        return;
    }
    for a in 1..=n {
        word.push(a);
        let ok = (1..=max_len.min(word.len()))
            .all(|l| !forb.contains(&word[word.len() - l..]));
        if ok {
            extend(n, forb, max_len, max_degree, word, counts);
        }
        word.pop();
    }
}

fn is_cyclic_component(comp: &[usize], adj: &[Vec<usize>]) -> bool {
    if comp.len() >= 2 {
        return true;
    }
    let s = comp[0];
    adj[s].contains(&s)
}

/// Iterative Tarjan strongly-connected components. Returns the component id
/// of each vertex and the components in emission order, which is
/// children-first: every component is listed before any component that can
/// reach it.
fn strongly_connected_components(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0usize;

    // Explicit DFS frames: (vertex, next child position).
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        frames.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut child)) = frames.last_mut() {
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let cid = comps.len();
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("root is on the stack");
                        on_stack[w] = false;
                        comp_of[w] = cid;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    (comp_of, comps)
}

/// Convenience: counts keyed by degree (used by textual reports).
pub fn counts_as_map(counts: &[BigUint]) -> BTreeMap<usize, BigUint> {
    counts.iter().cloned().enumerate().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(texts: &[&str]) -> Vec<Word> {
        texts.iter().map(|t| t.parse().expect("word parses")).collect()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    /// Leading words of the completed two-generator single-edge system.
    fn two_vertex_forbidden() -> Vec<Word> {
        words(&["1,1", "2,2", "1,2,1", "2,1,2"])
    }

    /// Leading words of the completed three-vertex path system (worked by
    /// hand in the completion tests).
    fn three_path_forbidden() -> Vec<Word> {
        words(&[
            "1,1", "2,2", "3,1", "3,3", "1,2,1", "2,1,2", "2,3,2", "3,2,3", "1,3,2,1", "3,2,1,3",
        ])
    }

    #[test]
    fn two_vertex_language_has_five_words() {
        let a = build_automaton(2, &two_vertex_forbidden()).unwrap();
        assert_eq!(a.graded_counts(4), vec![big(1), big(2), big(2), big(0), big(0)]);
        assert_eq!(a.total_dimension(), TotalDimension::Finite(big(5)));
        assert_eq!(
            a.classify(),
            GrowthClass::FiniteDimensional { dimension: big(5) }
        );
    }

    #[test]
    fn three_path_language_has_fourteen_words() {
        // 1 + 3 + 5 + 4 + 1 normal words, counted by hand.
        let a = build_automaton(3, &three_path_forbidden()).unwrap();
        assert_eq!(
            a.graded_counts(5),
            vec![big(1), big(3), big(5), big(4), big(1), big(0)]
        );
        assert_eq!(a.total_dimension(), TotalDimension::Finite(big(14)));
    }

    #[test]
    fn free_algebra_grows_exponentially() {
        let a = build_automaton(2, &[]).unwrap();
        assert_eq!(a.classify(), GrowthClass::Exponential);
        assert_eq!(a.total_dimension(), TotalDimension::Infinite);
        assert_eq!(a.graded_counts(3), vec![big(1), big(2), big(4), big(8)]);
    }

    #[test]
    fn one_generator_grows_linearly() {
        let a = build_automaton(1, &[]).unwrap();
        assert_eq!(a.classify(), GrowthClass::PolynomialGrowth { degree: 1 });
    }

    #[test]
    fn alternating_words_grow_linearly() {
        // Forbid 11 and 22: normal words alternate, two per length.
        let a = build_automaton(2, &words(&["1,1", "2,2"])).unwrap();
        assert_eq!(a.classify(), GrowthClass::PolynomialGrowth { degree: 1 });
        assert_eq!(a.graded_counts(4), vec![big(1), big(2), big(2), big(2), big(2)]);
    }

    #[test]
    fn staircase_words_grow_quadratically() {
        // Forbid 21: normal words are 1^a 2^b, n+1 of each length n.
        let a = build_automaton(2, &words(&["2,1"])).unwrap();
        assert_eq!(a.classify(), GrowthClass::PolynomialGrowth { degree: 2 });
        assert_eq!(a.graded_counts(4), vec![big(1), big(2), big(3), big(4), big(5)]);
    }

    #[test]
    fn automaton_membership_matches_the_definition() {
        let a = build_automaton(3, &three_path_forbidden()).unwrap();
        assert!(a.is_normal(&[2, 1, 3, 2]));
        assert!(!a.is_normal(&[1, 3, 2, 1]));
        assert!(!a.is_normal(&[2, 1, 2]));
        assert!(a.is_normal(&[]));
    }

    #[test]
    fn graded_counts_match_brute_force() {
        for (n, forbidden) in [
            (2u8, two_vertex_forbidden()),
            (3u8, three_path_forbidden()),
            (2u8, words(&["2,1"])),
            (2u8, vec![]),
        ] {
            let a = build_automaton(n, &forbidden).unwrap();
            assert_eq!(
                a.graded_counts(7),
                brute_force_graded_counts(n, &forbidden, 7),
                "mismatch for forbidden set {forbidden:?}"
            );
        }
    }

    #[test]
    fn normal_word_enumeration_is_lexicographic() {
        let a = build_automaton(2, &words(&["1,1", "2,2"])).unwrap();
        let ws = a.normal_words_of_length(3);
        assert_eq!(
            ws,
            words(&["1,2,1", "2,1,2"]),
            "alternating words of length 3"
        );
    }

    #[test]
    fn growth_graph_of_alternating_words_is_a_two_cycle() {
        let a = build_automaton(2, &words(&["1,1", "2,2"])).unwrap();
        let g = a.growth_graph();
        assert_eq!(g.vertex_len(), 1);
        assert_eq!(g.vertices(), words(&["1", "2"]).as_slice());
        assert_eq!(g.edges(), &[(0, 1), (1, 0)]);
        assert_eq!(g.to_text(), "1 -> 2\n2 -> 1\n");
        assert_eq!(g.walk_counts(3), vec![big(2), big(2), big(2), big(2)]);
    }

    #[test]
    fn growth_graph_walks_match_graded_counts() {
        let a = build_automaton(3, &three_path_forbidden()).unwrap();
        let g = a.growth_graph();
        let counts = a.graded_counts(g.vertex_len() + 5);
        let walks = g.walk_counts(5);
        for k in 0..=5 {
            assert_eq!(walks[k], counts[g.vertex_len() + k], "length {k} offset");
        }
    }

    #[test]
    fn empty_forbidden_word_is_rejected() {
        assert_eq!(
            build_automaton(2, &[Word::empty()]).unwrap_err(),
            GrowthError::EmptyForbiddenWord { index: 0 }
        );
    }

    #[test]
    fn out_of_alphabet_letters_are_rejected() {
        assert_eq!(
            build_automaton(2, &words(&["1,3"])).unwrap_err(),
            GrowthError::LetterOutOfRange { letter: 3, max: 2 }
        );
    }

    #[test]
    fn csv_rendering() {
        assert_eq!(
            graded_counts_csv(&[big(1), big(3), big(5)]),
            "degree,count\n0,1\n1,3\n2,5\n"
        );
    }
}
