//! Free-pair witnesses: machine-checkable certificates of exponential
//! growth.
//!
//! Two normal words `q1`, `q2` witness exponential growth when the
//! subalgebra they generate is free on them. That holds as soon as
//!
//! 1. `q1 q2` and `q2 q1` differ as plain words (two words that commute
//!    are powers of a common word, and conversely non-commuting words
//!    generate a free subsemigroup, so all factor sequences spell
//!    distinct words), and
//! 2. every concatenation of `w` consecutive factors drawn from
//!    `{q1, q2}` is a normal word, where the window `w` is wide enough
//!    that any potential forbidden subword fits inside some window:
//!    `w = ceil((L − 1) / min(|q1|, |q2|)) + 1` with `L` the longest
//!    forbidden word.
//!
//! Together these place `2^k` distinct normal words inside the span of
//! the `k`-fold products, so the graded dimensions grow exponentially.
//!
//! The certificate is always relative to the supplied basis. Against a
//! *complete* basis it is a proof. Against a capped basis the normal-word
//! language is an over-approximation (rules past the cap may be missing),
//! so a certificate is strong evidence rather than proof; callers that
//! need the distinction should inspect [`GroebnerBasis::status`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::freealg::Word;
use crate::groebner::GroebnerBasis;
use crate::growth::NormalWordAutomaton;

/// Widest supported window; `2^w` concatenations are checked.
const MAX_WINDOW: usize = 24;

/// Why a candidate pair failed verification.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    /// Candidate words must be nonempty.
    #[error("candidate word {which} is empty")]
    EmptyWord {
        /// 1 or 2.
        which: u8,
    },
    /// Candidate letters must name generators of the basis.
    #[error("candidate word {which} uses letter {letter}, but the basis has {max} generators")]
    LetterOutOfRange {
        /// 1 or 2.
        which: u8,
        /// The offending letter.
        letter: u8,
        /// Number of generators.
        max: u8,
    },
    /// Candidates must themselves be normal words.
    #[error("candidate word {which} ({word}) is not a normal word")]
    NotNormal {
        /// 1 or 2.
        which: u8,
        /// The candidate.
        word: Word,
    },
    /// Words that commute generate a commutative (hence non-free)
    /// subalgebra.
    #[error("the candidate words commute: both products spell {product}")]
    WordsCommute {
        /// The common value of `q1 q2` and `q2 q1`.
        product: Word,
    },
    /// Some window of consecutive factors reduces, so products of the
    /// candidates do not stay in the normal-word basis.
    #[error("the factor sequence {pattern} spells {word}, which is not normal")]
    BlockNotNormal {
        /// Which factors were concatenated, e.g. `q1 q2 q2`.
        pattern: String,
        /// The concatenation.
        word: Word,
    },
    /// The window math asks for more concatenations than is reasonable
    /// to check.
    #[error("verification window {window} exceeds the supported maximum {max}")]
    WindowTooLarge {
        /// Required window.
        window: usize,
        /// Supported maximum.
        max: usize,
    },
}

/// A verified free pair: proof that the algebra's growth is exponential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePairCertificate {
    /// First factor.
    pub q1: Word,
    /// Second factor.
    pub q2: Word,
    /// Window width used for the concatenation checks.
    pub window: usize,
    /// Number of concatenations checked (`2^window`).
    pub checked_count: u64,
}

impl fmt::Display for FreePairCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "free pair ({}, {}): all {} window-{} concatenations are normal",
            self.q1.to_product_string(),
            self.q2.to_product_string(),
            self.checked_count,
            self.window
        )
    }
}

/// Check that `q1`, `q2` generate a free subalgebra over the normal-word
/// language of the given basis (see the module docs for what the
/// certificate means when the basis is capped).
pub fn verify_free_pair(
    basis: &GroebnerBasis,
    q1: &Word,
    q2: &Word,
) -> Result<FreePairCertificate, WitnessError> {
    let max = basis.order().n_generators();
    for (which, q) in [(1u8, q1), (2u8, q2)] {
        if q.is_empty() {
            return Err(WitnessError::EmptyWord { which });
        }
        if let Some(&letter) = q.letters().iter().find(|&&l| l == 0 || l > max) {
            return Err(WitnessError::LetterOutOfRange { which, letter, max });
        }
    }

    let automaton =
        NormalWordAutomaton::from_basis(basis).expect("validated generators yield an automaton");
    for (which, q) in [(1u8, q1), (2u8, q2)] {
        if !automaton.is_normal(q.letters()) {
            return Err(WitnessError::NotNormal {
                which,
                word: q.clone(),
            });
        }
    }

    if q1.concat(q2) == q2.concat(q1) {
        return Err(WitnessError::WordsCommute {
            product: q1.concat(q2),
        });
    }

    let longest_forbidden = basis
        .rules()
        .iter()
        .map(|r| r.lhs().len())
        .max()
        .unwrap_or(1);
    let shortest_factor = q1.len().min(q2.len());
    let window = (longest_forbidden - 1).div_ceil(shortest_factor) + 1;
    if window > MAX_WINDOW {
        return Err(WitnessError::WindowTooLarge {
            window,
            max: MAX_WINDOW,
        });
    }

    for mask in 0u64..(1u64 << window) {
        let mut letters = Vec::new();
        let mut pattern = String::new();
        for slot in 0..window {
            let q = if mask >> slot & 1 == 0 { q1 } else { q2 };
            letters.extend_from_slice(q.letters());
            if !pattern.is_empty() {
                pattern.push(' ');
            }
            pattern.push_str(if mask >> slot & 1 == 0 { "q1" } else { "q2" });
        }
        if !automaton.is_normal(&letters) {
            return Err(WitnessError::BlockNotNormal {
                pattern,
                word: Word::new(letters),
            });
        }
    }

    Ok(FreePairCertificate {
        q1: q1.clone(),
        q2: q2.clone(),
        window,
        checked_count: 1u64 << window,
    })
}

/// Number of products of the certified factors of each total length,
/// `0..=max_degree`.
///
/// Entry `d` counts factor sequences whose concatenation has length `d`
/// (entry 0 counts the empty product); each is a distinct normal word, so
/// these are lower bounds for the graded dimensions.
pub fn exponential_lower_bound(cert: &FreePairCertificate, max_degree: usize) -> Vec<BigUint> {
    let (a, b) = (cert.q1.len(), cert.q2.len());
    let mut ways = vec![BigUint::zero(); max_degree + 1];
    ways[0] = BigUint::one();
    for d in 1..=max_degree {
        let mut total = BigUint::zero();
        if d >= a {
            total += &ways[d - a];
        }
        if d >= b {
            total += &ways[d - b];
        }
        ways[d] = total;
    }
    ways
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{MonomialOrder, NCPoly};
    use crate::groebner::{complete, CompletionStatus, CompletionStrategy};

    fn basis_from(relations: &[&str], n: u8, cap: usize) -> GroebnerBasis {
        let polys: Vec<NCPoly> = relations.iter().map(|s| s.parse().unwrap()).collect();
        complete(
            &polys,
            &MonomialOrder::natural(n),
            cap,
            CompletionStrategy::default(),
        )
        .unwrap()
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn non_repeating_words_on_three_letters_are_free() {
        let basis = basis_from(
            &["p1*p1 - p1", "p2*p2 - p2", "p3*p3 - p3"],
            3,
            10,
        );
        let cert = verify_free_pair(&basis, &word("1,2"), &word("1,3")).unwrap();
        assert_eq!(cert.window, 2, "forbidden words have length 2");
        assert_eq!(cert.checked_count, 4);
        assert_eq!(
            cert.to_string(),
            "free pair (p1*p2, p1*p3): all 4 window-2 concatenations are normal"
        );

        let counts = exponential_lower_bound(&cert, 8);
        let expect: Vec<u64> = vec![1, 0, 2, 0, 4, 0, 8, 0, 16];
        assert_eq!(counts, expect.into_iter().map(BigUint::from).collect::<Vec<_>>());
    }

    #[test]
    fn alternating_language_rejects_all_pairs() {
        // Forbidden {11, 22}: the only normal words alternate, so products
        // of any two candidates leave the language.
        let basis = basis_from(&["p1*p1 - p1", "p2*p2 - p2"], 2, 10);
        let err = verify_free_pair(&basis, &word("1,2"), &word("2,1")).unwrap_err();
        assert_eq!(
            err,
            WitnessError::BlockNotNormal {
                pattern: "q2 q1".to_string(),
                word: word("2,1,1,2"),
            }
        );
    }

    #[test]
    fn commuting_candidates_are_rejected() {
        let basis = basis_from(
            &["p1*p1 - p1", "p2*p2 - p2", "p3*p3 - p3"],
            3,
            10,
        );
        // 12 and 1212 are powers-compatible: their products coincide.
        let err = verify_free_pair(&basis, &word("1,2"), &word("1,2,1,2")).unwrap_err();
        assert_eq!(
            err,
            WitnessError::WordsCommute {
                product: word("1,2,1,2,1,2"),
            }
        );
    }

    #[test]
    fn candidates_must_be_normal_and_in_range() {
        let basis = basis_from(&["p1*p1 - p1", "p2*p2 - p2", "p3*p3 - p3"], 3, 10);
        assert_eq!(
            verify_free_pair(&basis, &word("1,1"), &word("1,3")).unwrap_err(),
            WitnessError::NotNormal {
                which: 1,
                word: word("1,1"),
            }
        );
        assert_eq!(
            verify_free_pair(&basis, &word("1,2"), &word("4")).unwrap_err(),
            WitnessError::LetterOutOfRange {
                which: 2,
                letter: 4,
                max: 3,
            }
        );
        assert_eq!(
            verify_free_pair(&basis, &Word::empty(), &word("1")).unwrap_err(),
            WitnessError::EmptyWord { which: 1 },
        );
    }

    #[test]
    fn capped_bases_are_checked_relative_to_their_language() {
        // A capped basis over-approximates the language; verification runs
        // anyway and the certificate is relative to it. On the 6-vertex
        // star (genuinely exponential), the bundled pair already verifies
        // at cap 3, long before completion at cap 8.
        let fx = crate::coxeter::witness_fixture("4.1").expect("bundled fixture");
        let basis = complete(
            &fx.graph.relations(),
            &fx.graph.monomial_order(),
            3,
            CompletionStrategy::default(),
        )
        .unwrap();
        assert!(!basis.is_complete());
        let cert = verify_free_pair(&basis, &fx.q1, &fx.q2).unwrap();
        assert_eq!(cert.window, 2);
        assert_eq!(cert.checked_count, 4);

        // Against a capped basis of a *finite-dimensional* algebra the
        // check still rejects pairs whose blocks the partial rules reach:
        // the three-vertex path capped at 3 keeps the braid rules, which
        // forbid all repeated-factor blocks here.
        let path = basis_from(
            &[
                "p1*p1 - p1",
                "p2*p2 - p2",
                "p3*p3 - p3",
                "p1*p2*p1 - t*p1",
                "p2*p1*p2 - t*p2",
                "p2*p3*p2 - t*p2",
                "p3*p2*p3 - t*p3",
                "p3*p1 - p1*p3",
            ],
            3,
            3,
        );
        assert!(!path.is_complete());
        assert!(matches!(
            verify_free_pair(&path, &word("1,2"), &word("1,3")),
            Err(WitnessError::BlockNotNormal { .. })
        ));
    }

    #[test]
    fn window_covers_long_forbidden_words() {
        // Single forbidden word 2121 as a monomial rule (rhs zero), which
        // is complete on its own. Factors 1 and 22 never spell it, and the
        // window must stretch to 4 single-letter factors.
        let order = MonomialOrder::natural(2);
        let rule =
            crate::freealg::RewriteRule::new(word("2,1,2,1"), NCPoly::zero(), &order).unwrap();
        let basis = GroebnerBasis::from_parts(vec![rule], order, CompletionStatus::Complete);
        let cert = verify_free_pair(&basis, &word("1"), &word("2,2")).unwrap();
        assert_eq!(cert.window, 4);
        assert_eq!(cert.checked_count, 16);

        // With factor 2 instead, the all-q2 window spells 2121 itself.
        let err = verify_free_pair(&basis, &word("1"), &word("2,1")).unwrap_err();
        assert!(matches!(err, WitnessError::BlockNotNormal { .. }));
    }

    #[test]
    fn lower_bound_handles_unequal_lengths() {
        let cert = FreePairCertificate {
            q1: word("1"),
            q2: word("2,2"),
            window: 4,
            checked_count: 16,
        };
        // Compositions of 1 and 2: Fibonacci numbers.
        let counts = exponential_lower_bound(&cert, 7);
        let expect: Vec<u64> = vec![1, 1, 2, 3, 5, 8, 13, 21];
        assert_eq!(counts, expect.into_iter().map(BigUint::from).collect::<Vec<_>>());
    }
}
