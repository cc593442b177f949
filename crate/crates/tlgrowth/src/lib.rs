//! Dimension and growth of generalized Temperley–Lieb algebras.
//!
//! A generalized Temperley–Lieb algebra is presented by a finite simple graph
//! whose edges carry labels m ∈ {3, 4, 5, …} ∪ {∞}. Each vertex contributes an
//! idempotent generator `p_i`; a missing edge makes the two generators commute;
//! an edge with label m imposes a pair of relations that rewrite the
//! alternating word of length m into lower terms. The coefficient field is the
//! field of rational functions ℚ(t, t1, t2) in the deformation parameters.
//!
//! The pipeline implemented here:
//!
//! 1. [`coxeter`] — the edge-labeled graph model, named presets for the
//!    classical families (A, B, D, E, F, H, the affine/tilde families, stars,
//!    two- and three-vertex one-parameter families), the defining relations,
//!    and the three graph surgeries (add a leaf, add an edge, split a vertex).
//! 2. [`coeffs`] + [`freealg`] — exact scalar arithmetic and noncommutative
//!    polynomials over it, with a degree-lexicographic monomial order.
//! 3. [`groebner`] — completion of the defining relations into a
//!    noncommutative Gröbner basis (normalization, reduction, overlap
//!    compositions), optionally truncated at a degree cap.
//! 4. [`growth`] — the deterministic automaton of normal words (words avoiding
//!    every leading word as a subword), exact graded counts by
//!    transfer-matrix path counting, total dimension, the growth graph on
//!    normal words of length ℓ−1, and the growth classification
//!    (finite-dimensional / polynomial of degree d / exponential).
//! 5. [`witness`] — verification of free-subalgebra certificates: two normal,
//!    non-commuting words all of whose concatenations stay normal span a free
//!    subalgebra on two generators, which forces exponential growth.
//! 6. [`classify`] — a pattern-matching classifier over the known family
//!    lists, the full computational classifier, their cross-check, and an
//!    exhaustive small-graph sweep.
//!
//! Everything is exact: arbitrary-precision rationals for coefficients,
//! arbitrary-precision integers for counting. No floating point is used
//! anywhere, and every public operation is deterministic.

pub mod classify;
pub mod coeffs;
pub mod coxeter;
pub mod freealg;
pub mod groebner;
pub mod growth;
pub mod witness;
