//! The free associative algebra on generators `p1, …, pn` over the scalar
//! field, together with the rewriting machinery the completion procedure is
//! built on: words, degree-lexicographic monomial orders, noncommutative
//! polynomials, rewrite rules, and a rule set that reduces polynomials to
//! normal form.
//!
//! Reduction uses the leftmost-largest strategy: at each step the largest
//! remaining term is rewritten at its leftmost reducible position, using the
//! longest rule left-hand side that matches there. With all rule right-hand
//! sides smaller than their left-hand sides this terminates, and the choice
//! of strategy is pinned so reduced forms are reproducible.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeffs::{ParamScalar, ScalarError};

/// Errors from parsing and rule construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FreeAlgError {
    /// The textual form could not be parsed.
    #[error("parse error at byte {position}: {message}")]
    Parse {
        /// Byte offset into the input.
        position: usize,
        /// What went wrong.
        message: String,
    },
    /// A generator index outside `1..=255`.
    #[error("generator index {index} outside 1..=255")]
    IndexOutOfRange {
        /// The offending index.
        index: u64,
    },
    /// Rewrite rules need a nonempty left-hand side.
    #[error("rewrite rule needs a nonempty left-hand side")]
    EmptyLhs,
    /// A right-hand side term at least as large as the left-hand side.
    #[error("right-hand side term {term} is not smaller than the left-hand side {lhs}")]
    RhsNotSmaller {
        /// The left-hand side word, rendered as a product.
        lhs: String,
        /// The offending right-hand side word, rendered as a product.
        term: String,
    },
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// A word in the free monoid on generators `1..=n`.
///
/// The derived `Ord` is storage order (length-insensitive lexicographic) and
/// is only used for deterministic container keys; semantic comparisons go
/// through a [`MonomialOrder`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    /// The empty word (the identity of the monoid).
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// A word from explicit letters. Letters must be ≥ 1.
    pub fn new(letters: Vec<u8>) -> Word {
        assert!(
            letters.iter().all(|&l| l >= 1),
            "letters are 1-based generator indices"
        );
        Word(letters)
    }

    /// The one-letter word for generator `i`.
    pub fn single(i: u8) -> Word {
        Word::new(vec![i])
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether this is the empty word.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The letters as a slice.
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Rename letters through `image`, whose entry `k-1` is the new name of
    /// letter `k` (the shape returned by vertex-bijection enumeration).
    pub fn map_letters(&self, image: &[u8]) -> Word {
        Word(self.0.iter().map(|&l| image[usize::from(l) - 1]).collect())
    }

    /// Render as a product of generators, e.g. `p1*p2*p1`; the empty word
    /// renders as `1`.
    pub fn to_product_string(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| format!("p{l}"))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Word {
        Word::new(letters.to_vec())
    }
}

impl fmt::Display for Word {
    /// Comma-separated letter indices, e.g. `2,3,4,2,1,5`. The empty word
    /// renders as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = FreeAlgError;

    /// Parse the comma-separated form, e.g. `2,3,4,2,1,5`. Whitespace
    /// around entries is ignored; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        let mut offset = 0usize;
        for piece in trimmed.split(',') {
            let entry = piece.trim();
            let index: u64 = entry.parse().map_err(|_| FreeAlgError::Parse {
                position: offset,
                message: format!("expected a generator index, found {entry:?}"),
            })?;
            if index == 0 || index > 255 {
                return Err(FreeAlgError::IndexOutOfRange { index });
            }
            letters.push(index as u8);
            offset += piece.len() + 1;
        }
        Ok(Word(letters))
    }
}

// ---------------------------------------------------------------------------
// Monomial orders
// ---------------------------------------------------------------------------

/// A degree-lexicographic order on words: shorter words are smaller, and
/// equal-length words are compared letter by letter from the left using a
/// precedence on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    /// `rank[i]` is the precedence of generator `i` (index 0 unused);
    /// larger rank means larger generator.
    rank: Vec<u32>,
}

impl MonomialOrder {
    /// The natural order on `n` generators: `p1 < p2 < … < pn`.
    pub fn natural(n: u8) -> MonomialOrder {
        MonomialOrder {
            rank: (0..=u32::from(n)).collect(),
        }
    }

    /// An order given by an explicit precedence list, smallest generator
    /// first. The list must mention each generator `1..=n` exactly once.
    pub fn from_precedence(order: &[u8]) -> MonomialOrder {
        let n = order.len();
        let mut rank = vec![u32::MAX; n + 1];
        for (pos, &letter) in order.iter().enumerate() {
            assert!(
                (1..=n).contains(&(letter as usize)),
                "precedence list must cover 1..={n}"
            );
            assert!(
                rank[letter as usize] == u32::MAX,
                "duplicate generator {letter} in precedence list"
            );
            rank[letter as usize] = pos as u32 + 1;
        }
        MonomialOrder { rank }
    }

    /// Number of generators covered by the order.
    pub fn n_generators(&self) -> u8 {
        (self.rank.len() - 1) as u8
    }

    fn rank(&self, letter: u8) -> u32 {
        self.rank[letter as usize]
    }

    /// Compare two words (degree first, then leftmost difference by
    /// precedence).
    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        self.compare_slices(a.letters(), b.letters())
    }

    /// [`Self::compare`] on raw letter slices.
    pub fn compare_slices(&self, a: &[u8], b: &[u8]) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (&x, &y) in a.iter().zip(b.iter()) {
                let c = self.rank(x).cmp(&self.rank(y));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

// ---------------------------------------------------------------------------
// Noncommutative polynomials
// ---------------------------------------------------------------------------

/// A noncommutative polynomial: a finite scalar combination of words.
///
/// Invariant: no stored coefficient is zero, so structural equality is
/// semantic equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, ParamScalar>,
}

impl NCPoly {
    /// The zero polynomial.
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    /// The unit polynomial (the empty word).
    pub fn one() -> NCPoly {
        NCPoly::constant(ParamScalar::one())
    }

    /// A scalar as a polynomial.
    pub fn constant(c: ParamScalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(Word::empty(), c);
        p
    }

    /// The generator `p_i` as a polynomial.
    pub fn generator(i: u8) -> NCPoly {
        NCPoly::from_term(Word::single(i), ParamScalar::one())
    }

    /// A single scalar multiple of a word.
    pub fn from_term(w: Word, c: ParamScalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over (word, coefficient) pairs in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &ParamScalar)> {
        self.terms.iter()
    }

    /// The coefficient of a word (zero if absent).
    pub fn coeff(&self, w: &Word) -> ParamScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Add `c·w`, keeping the no-zero-coefficients invariant.
    pub fn add_term(&mut self, w: Word, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The largest term under `order`, if any.
    pub fn leading<'a>(&'a self, order: &MonomialOrder) -> Option<(&'a Word, &'a ParamScalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Remove and return the largest term under `order`.
    pub fn take_leading(&mut self, order: &MonomialOrder) -> Option<(Word, ParamScalar)> {
        let key = self.leading(order)?.0.clone();
        let coeff = self.terms.remove(&key).expect("key just found");
        Some((key, coeff))
    }

    /// Length of the longest word occurring, if any.
    pub fn max_word_len(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Sum.
    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c))
                .collect(),
        }
    }

    /// Noncommutative product.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ParamScalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k * c))
                .collect(),
        }
    }

    /// The two-sided padding `prefix · self · suffix` by fixed words.
    pub fn pad(&self, prefix: &[u8], suffix: &[u8]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut letters = Vec::with_capacity(prefix.len() + w.len() + suffix.len());
            letters.extend_from_slice(prefix);
            letters.extend_from_slice(w.letters());
            letters.extend_from_slice(suffix);
            out.add_term(Word(letters), c.clone());
        }
        out
    }

    /// Substitute parameters by rational values in every coefficient.
    ///
    /// # Errors
    /// Propagates [`ScalarError::Pole`] from any coefficient whose
    /// denominator vanishes.
    pub fn specialize(
        &self,
        assignment: &std::collections::BTreeMap<crate::coeffs::Param, num_rational::BigRational>,
    ) -> Result<NCPoly, ScalarError> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.specialize(assignment)?);
        }
        Ok(out)
    }

    /// Terms sorted descending by degree then letterwise numeric order
    /// (the natural degree-lexicographic order), largest first. Used for
    /// stable rendering.
    pub fn sorted_terms_desc(&self) -> Vec<(&Word, &ParamScalar)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            b.0.len()
                .cmp(&a.0.len())
                .then_with(|| b.0.letters().cmp(a.0.letters()))
        });
        terms
    }
}

impl fmt::Display for NCPoly {
    /// Renders in the generator syntax, e.g. `p1*p2*p1 - t*p1`, with terms
    /// in descending natural degree-lexicographic order. The output parses
    /// back losslessly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.sorted_terms_desc().into_iter().enumerate() {
            let neg = c.leading_coeff_is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                if abs.is_product_atom() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            } else if abs.is_one() {
                f.write_str(&w.to_product_string())?;
            } else if abs.is_product_atom() {
                write!(f, "{abs}*{}", w.to_product_string())?;
            } else {
                write!(f, "({abs})*{}", w.to_product_string())?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Polynomial parsing
// ---------------------------------------------------------------------------

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str) -> Self {
        PolyParser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> FreeAlgError {
        FreeAlgError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse_expr(&mut self) -> Result<NCPoly, FreeAlgError> {
        let mut acc = self.parse_term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                b'-' => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<NCPoly, FreeAlgError> {
        let mut acc = self.parse_factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.bump();
                    acc = acc.mul(&self.parse_factor()?);
                }
                b'/' => {
                    self.bump();
                    let rhs = self.parse_factor()?;
                    let scalar = as_scalar(&rhs)
                        .ok_or_else(|| self.error("division is only defined by scalars"))?;
                    let inv = scalar.inverse().map_err(|e| match e {
                        ScalarError::DivisionByZero => self.error("division by zero"),
                        other => self.error(other.to_string()),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<NCPoly, FreeAlgError> {
        let mut negate = false;
        while let Some(c) = self.peek() {
            match c {
                b'-' => {
                    self.bump();
                    negate = !negate;
                }
                b'+' => {
                    self.bump();
                }
                _ => break,
            }
        }
        let mut atom = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let exp = self.parse_uint()?;
            let base = atom.clone();
            atom = NCPoly::one();
            for _ in 0..exp {
                atom = atom.mul(&base);
            }
        }
        Ok(if negate { atom.neg() } else { atom })
    }

    fn parse_atom(&mut self) -> Result<NCPoly, FreeAlgError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint_str()?;
                let scalar: ParamScalar = n.parse().expect("digits form a scalar");
                Ok(NCPoly::constant(scalar))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.parse_ident();
                match ident.as_str() {
                    "t" => Ok(NCPoly::constant(ParamScalar::t())),
                    "t1" => Ok(NCPoly::constant(ParamScalar::t1())),
                    "t2" => Ok(NCPoly::constant(ParamScalar::t2())),
                    other => {
                        if let Some(rest) = other.strip_prefix('p') {
                            let index: u64 = rest.parse().map_err(|_| {
                                self.error(format!("unknown identifier '{other}'"))
                            })?;
                            if index == 0 || index > 255 {
                                return Err(FreeAlgError::IndexOutOfRange { index });
                            }
                            Ok(NCPoly::generator(index as u8))
                        } else {
                            Err(self.error(format!("unknown identifier '{other}'")))
                        }
                    }
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn parse_ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn parse_uint(&mut self) -> Result<u32, FreeAlgError> {
        let text = self.parse_uint_str()?;
        text.parse().map_err(|_| self.error("exponent too large"))
    }

    fn parse_uint_str(&mut self) -> Result<String, FreeAlgError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn finish(&mut self) -> Result<(), FreeAlgError> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("trailing input"));
        }
        Ok(())
    }
}

/// The scalar value of a polynomial supported on the empty word only.
fn as_scalar(p: &NCPoly) -> Option<ParamScalar> {
    if p.is_zero() {
        return Some(ParamScalar::zero());
    }
    if p.num_terms() == 1 {
        let (w, c) = p.terms().next().expect("one term");
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}

impl FromStr for NCPoly {
    type Err = FreeAlgError;

    /// Parse the generator syntax, e.g. `p1*p2*p1 - t*p1`. Scalars follow
    /// the scalar grammar; `^` is repeated multiplication; `/` divides by a
    /// scalar.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = PolyParser::new(s);
        let value = p.parse_expr()?;
        p.finish()?;
        Ok(value)
    }
}

// ---------------------------------------------------------------------------
// Rewrite rules and reduction
// ---------------------------------------------------------------------------

/// A rewrite rule `lhs → rhs` with `lhs` a nonempty word and every `rhs`
/// term strictly smaller than `lhs` under the governing order.
///
/// The rule stands for the relation `lhs − rhs = 0`, oriented so rewriting
/// strictly decreases terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Word,
    rhs: NCPoly,
}

impl RewriteRule {
    /// Build a rule, validating the orientation against `order`.
    pub fn new(lhs: Word, rhs: NCPoly, order: &MonomialOrder) -> Result<RewriteRule, FreeAlgError> {
        if lhs.is_empty() {
            return Err(FreeAlgError::EmptyLhs);
        }
        for (w, _) in rhs.terms() {
            if order.compare(w, &lhs) != Ordering::Less {
                return Err(FreeAlgError::RhsNotSmaller {
                    lhs: lhs.to_product_string(),
                    term: w.to_product_string(),
                });
            }
        }
        Ok(RewriteRule { lhs, rhs })
    }

    /// The left-hand side word.
    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    /// The right-hand side polynomial.
    pub fn rhs(&self) -> &NCPoly {
        &self.rhs
    }

    /// The relation `lhs − rhs` as a polynomial.
    pub fn as_poly(&self) -> NCPoly {
        let mut p = self.rhs.neg();
        p.add_term(self.lhs.clone(), ParamScalar::one());
        p
    }
}

impl fmt::Display for RewriteRule {
    /// Renders as `lhs -> rhs` in generator syntax, e.g. `p1*p2*p1 -> t*p1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs.to_product_string(), self.rhs)
    }
}

/// A prefix trie over words, mapping inserted words to numeric ids.
///
/// This is the matching structure behind reduction: scanning a text from a
/// position walks the trie letter by letter, so finding the longest inserted
/// word starting there costs at most the maximum inserted length.
#[derive(Clone, Debug, Default)]
pub(crate) struct WordTrie {
    nodes: Vec<TrieNode>,
}

#[derive(Clone, Debug, Default)]
struct TrieNode {
    children: BTreeMap<u8, u32>,
    terminal: Option<u32>,
}

impl WordTrie {
    pub(crate) fn new() -> WordTrie {
        WordTrie {
            nodes: vec![TrieNode::default()],
        }
    }

    /// Insert a word with an id, replacing any previous id for that word.
    pub(crate) fn insert(&mut self, word: &[u8], id: u32) {
        let mut node = 0usize;
        for &letter in word {
            let next = match self.nodes[node].children.get(&letter) {
                Some(&n) => n as usize,
                None => {
                    let n = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[node].children.insert(letter, n as u32);
                    n
                }
            };
            node = next;
        }
        self.nodes[node].terminal = Some(id);
    }

    /// Remove a word's id (nodes stay in place; absent words are a no-op).
    pub(crate) fn remove(&mut self, word: &[u8]) {
        let mut node = 0usize;
        for &letter in word {
            match self.nodes[node].children.get(&letter) {
                Some(&n) => node = n as usize,
                None => return,
            }
        }
        self.nodes[node].terminal = None;
    }

    /// The longest inserted word (satisfying `alive`) that begins at
    /// `start` in `text`, as `(length, id)`.
    pub(crate) fn longest_match_at(
        &self,
        text: &[u8],
        start: usize,
        alive: &dyn Fn(u32) -> bool,
    ) -> Option<(usize, u32)> {
        let mut node = 0usize;
        let mut best: Option<(usize, u32)> = None;
        for (offset, &letter) in text[start..].iter().enumerate() {
            match self.nodes[node].children.get(&letter) {
                Some(&n) => node = n as usize,
                None => break,
            }
            if let Some(id) = self.nodes[node].terminal {
                if alive(id) {
                    best = Some((offset + 1, id));
                }
            }
        }
        best
    }

    /// The leftmost (then longest) match anywhere in `text`, as
    /// `(start, length, id)`.
    pub(crate) fn leftmost_match(
        &self,
        text: &[u8],
        alive: &dyn Fn(u32) -> bool,
    ) -> Option<(usize, usize, u32)> {
        for start in 0..text.len() {
            if let Some((len, id)) = self.longest_match_at(text, start, alive) {
                return Some((start, len, id));
            }
        }
        None
    }

    /// Whether any inserted word satisfying `alive` occurs in `text`.
    pub(crate) fn contains_match(&self, text: &[u8], alive: &dyn Fn(u32) -> bool) -> bool {
        self.leftmost_match(text, alive).is_some()
    }
}

/// An immutable set of rewrite rules with trie-backed matching, providing
/// reduction to normal form and normality tests.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
    trie: WordTrie,
}

impl RewriteSystem {
    /// Build from a list of rules.
    pub fn new(rules: Vec<RewriteRule>) -> RewriteSystem {
        let mut trie = WordTrie::new();
        for (i, rule) in rules.iter().enumerate() {
            trie.insert(rule.lhs().letters(), i as u32);
        }
        RewriteSystem { rules, trie }
    }

    /// The rules.
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Whether no rule left-hand side occurs as a subword of `w`.
    pub fn is_normal(&self, w: &[u8]) -> bool {
        !self.trie.contains_match(w, &|_| true)
    }

    /// Reduce a single word to normal form.
    pub fn reduce_word(&self, w: &Word, order: &MonomialOrder) -> NCPoly {
        self.reduce(&NCPoly::from_term(w.clone(), ParamScalar::one()), order)
    }

    /// Reduce a polynomial to normal form under the leftmost-largest
    /// strategy: repeatedly take the largest unprocessed term and rewrite
    /// its leftmost reducible position with the longest matching rule.
    pub fn reduce(&self, p: &NCPoly, order: &MonomialOrder) -> NCPoly {
        let mut work = p.clone();
        let mut out = NCPoly::zero();
        while let Some((w, c)) = work.take_leading(order) {
            match self.trie.leftmost_match(w.letters(), &|_| true) {
                None => out.add_term(w, c),
                Some((start, len, id)) => {
                    let rule = &self.rules[id as usize];
                    let prefix = &w.letters()[..start];
                    let suffix = &w.letters()[start + len..];
                    let replacement = rule.rhs().pad(prefix, suffix).scale(&c);
                    work = work.add(&replacement);
                }
            }
        }
        out
    }
}
