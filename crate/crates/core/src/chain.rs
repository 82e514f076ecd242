//! Group specifications and chains of cyclic words.
//!
//! A group is a free product of cyclic factors, each given by a lowercase
//! generator symbol and an order (0 = infinite). A chain is a formal sum of
//! cyclic words over the generators. Before any enumeration happens the words
//! are rewritten into the canonical internal form: cyclically reduced, with
//! every finite-factor generator appearing only with positive powers (an
//! inverse `A` in a factor of order `o` becomes `a^{o-1}`), finite abelian
//! loops and identity words dropped.

use std::fmt;

use thiserror::Error;

/// Input-validation failures for group specs and chains.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("empty group spec")]
    EmptyGroupSpec,
    #[error("malformed group spec near '{0}': expected (letter digits)+")]
    MalformedGroupSpec(String),
    #[error("duplicate generator '{0}' in group spec")]
    DuplicateSymbol(char),
    #[error("generator '{0}' has order 1; trivial factors are not allowed")]
    OrderOne(char),
    #[error("unknown symbol '{0}' in word")]
    UnknownSymbol(char),
    #[error("nonzero exponent sum {sum} for infinite-order generator '{symbol}'")]
    HomologyViolation { symbol: char, sum: i64 },
}

/// One cyclic factor of the free product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub symbol: char,
    /// 0 means infinite order; otherwise the order is >= 2.
    pub order: u32,
}

impl Factor {
    pub fn is_finite(&self) -> bool {
        self.order != 0
    }
}

/// An ordered list of cyclic factors, e.g. parsed from "a3b0".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    factors: Vec<Factor>,
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>) -> Result<Self, ChainError> {
        if factors.is_empty() {
            return Err(ChainError::EmptyGroupSpec);
        }
        for (i, f) in factors.iter().enumerate() {
            if !f.symbol.is_ascii_lowercase() {
                return Err(ChainError::MalformedGroupSpec(f.symbol.to_string()));
            }
            if f.order == 1 {
                return Err(ChainError::OrderOne(f.symbol));
            }
            if factors[..i].iter().any(|g| g.symbol == f.symbol) {
                return Err(ChainError::DuplicateSymbol(f.symbol));
            }
        }
        Ok(Self { factors })
    }

    /// Parses the `(letter digits)+` grammar, e.g. "a3b2" or "a0b0".
    pub fn parse(spec: &str) -> Result<Self, ChainError> {
        let s = spec.trim();
        if s.is_empty() {
            return Err(ChainError::EmptyGroupSpec);
        }
        let mut factors = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if !c.is_ascii_lowercase() {
                return Err(ChainError::MalformedGroupSpec(c.to_string()));
            }
            let mut digits = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(*d);
                chars.next();
            }
            if digits.is_empty() {
                return Err(ChainError::MalformedGroupSpec(c.to_string()));
            }
            let order: u32 = digits
                .parse()
                .map_err(|_| ChainError::MalformedGroupSpec(digits.clone()))?;
            factors.push(Factor { symbol: c, order });
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_index(&self, symbol: char) -> Option<usize> {
        self.factors.iter().position(|f| f.symbol == symbol)
    }

    pub fn order(&self, factor: usize) -> u32 {
        self.factors[factor].order
    }

    pub fn symbol(&self, factor: usize) -> char {
        self.factors[factor].symbol
    }

    /// The same generators with every order set to 0 (the free cover).
    pub fn free_cover(&self) -> GroupSpec {
        GroupSpec {
            factors: self
                .factors
                .iter()
                .map(|f| Factor {
                    symbol: f.symbol,
                    order: 0,
                })
                .collect(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fac in &self.factors {
            write!(f, "{}{}", fac.symbol, fac.order)?;
        }
        Ok(())
    }
}

/// Index of a letter in a chain's flat letter table.
pub type LetterId = usize;

/// A single occurrence of a generator at a position in a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub word: usize,
    pub pos: usize,
    pub factor: usize,
    /// +1 or -1; -1 occurs only in infinite factors after normalization.
    pub sign: i8,
}

#[derive(Debug, Clone, Copy)]
struct WordSpan {
    start: usize,
    len: usize,
}

/// A normalized chain: the group plus the flat table of letters.
#[derive(Debug, Clone)]
pub struct Chain {
    group: GroupSpec,
    spans: Vec<WordSpan>,
    letters: Vec<Letter>,
    factor_counts: Vec<usize>,
}

/// Intermediate syllable form used during normalization: (factor, exponent).
type Syllable = (usize, i64);

fn fold_exponent(group: &GroupSpec, factor: usize, e: i64) -> i64 {
    let o = group.order(factor) as i64;
    if o == 0 {
        e
    } else {
        e.rem_euclid(o)
    }
}

/// Merges adjacent (and cyclically adjacent) same-factor syllables until
/// stable, dropping syllables whose folded exponent is zero.
fn reduce_syllables(group: &GroupSpec, raw: Vec<Syllable>) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::with_capacity(raw.len());
    let push = |out: &mut Vec<Syllable>, f: usize, e: i64| {
        let mut e = fold_exponent(group, f, e);
        loop {
            if e == 0 {
                return;
            }
            match out.last() {
                Some(&(lf, le)) if lf == f => {
                    out.pop();
                    e = fold_exponent(group, f, le + e);
                }
                _ => {
                    out.push((f, e));
                    return;
                }
            }
        }
    };
    for (f, e) in raw {
        push(&mut out, f, e);
    }
    // Cyclic seam: keep merging the last syllable into the front.
    while out.len() >= 2 && out.first().map(|s| s.0) == out.last().map(|s| s.0) {
        let (f, e_last) = out.pop().unwrap();
        let (_, e_first) = out.remove(0);
        let e = fold_exponent(group, f, e_last + e_first);
        if e != 0 {
            out.insert(0, (f, e));
            break;
        }
        // Dropped entirely; newly adjacent seam syllables may merge further,
        // which the stack pass below handles.
        let rest = std::mem::take(&mut out);
        for (f, e) in rest {
            push(&mut out, f, e);
        }
    }
    out
}

impl Chain {
    /// Parses and normalizes a chain given as one word per string.
    pub fn parse<S: AsRef<str>>(group: &GroupSpec, words: &[S]) -> Result<Self, ChainError> {
        let mut syllable_words = Vec::new();
        for w in words {
            let mut raw: Vec<Syllable> = Vec::new();
            for c in w.as_ref().chars() {
                if c.is_whitespace() {
                    continue;
                }
                let lower = c.to_ascii_lowercase();
                let factor = group
                    .factor_index(lower)
                    .ok_or(ChainError::UnknownSymbol(c))?;
                let e = if c.is_ascii_lowercase() { 1 } else { -1 };
                raw.push((factor, e));
            }
            let reduced = reduce_syllables(group, raw);
            match reduced.len() {
                0 => {} // identity word, dropped
                1 => {
                    let (f, _) = reduced[0];
                    if group.factors()[f].is_finite() {
                        // finite abelian loop, dropped
                    } else {
                        syllable_words.push(reduced);
                    }
                }
                _ => syllable_words.push(reduced),
            }
        }

        // Homology check on the surviving words: every infinite factor must
        // have exponent sum zero across the whole chain.
        for (fi, fac) in group.factors().iter().enumerate() {
            if fac.is_finite() {
                continue;
            }
            let sum: i64 = syllable_words
                .iter()
                .flatten()
                .filter(|(f, _)| *f == fi)
                .map(|(_, e)| *e)
                .sum();
            if sum != 0 {
                return Err(ChainError::HomologyViolation {
                    symbol: fac.symbol,
                    sum,
                });
            }
        }

        let mut letters = Vec::new();
        let mut spans = Vec::new();
        for (wi, syls) in syllable_words.iter().enumerate() {
            let start = letters.len();
            let mut pos = 0;
            for &(f, e) in syls {
                let sign: i8 = if e >= 0 { 1 } else { -1 };
                for _ in 0..e.unsigned_abs() {
                    letters.push(Letter {
                        word: wi,
                        pos,
                        factor: f,
                        sign,
                    });
                    pos += 1;
                }
            }
            spans.push(WordSpan {
                start,
                len: pos,
            });
        }

        let mut factor_counts = vec![0usize; group.len()];
        for l in &letters {
            factor_counts[l.factor] += 1;
        }

        Ok(Chain {
            group: group.clone(),
            spans,
            letters,
            factor_counts,
        })
    }

    /// Parses a single '+'-separated chain string, e.g. "abAABB+ab".
    pub fn parse_joined(group: &GroupSpec, chain: &str) -> Result<Self, ChainError> {
        let words: Vec<&str> = chain.split('+').map(str::trim).collect();
        Self::parse(group, &words)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn num_words(&self) -> usize {
        self.spans.len()
    }

    pub fn word_len(&self, word: usize) -> usize {
        self.spans[word].len
    }

    /// Total letter count |Γ|.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters lying in the given factor.
    pub fn factor_count(&self, factor: usize) -> usize {
        self.factor_counts[factor]
    }

    pub fn letters(&self) -> impl Iterator<Item = LetterId> {
        0..self.letters.len()
    }

    pub fn letter(&self, id: LetterId) -> &Letter {
        &self.letters[id]
    }

    pub fn letter_at(&self, word: usize, pos: usize) -> LetterId {
        let span = &self.spans[word];
        debug_assert!(pos < span.len);
        span.start + pos
    }

    /// First letter of a word (position 0).
    pub fn first_letter(&self, word: usize) -> LetterId {
        self.letter_at(word, 0)
    }

    /// Cyclic successor within the letter's word.
    pub fn next(&self, id: LetterId) -> LetterId {
        let l = &self.letters[id];
        let span = &self.spans[l.word];
        span.start + (l.pos + 1) % span.len
    }

    /// Cyclic predecessor within the letter's word.
    pub fn prev(&self, id: LetterId) -> LetterId {
        let l = &self.letters[id];
        let span = &self.spans[l.word];
        span.start + (l.pos + span.len - 1) % span.len
    }

    /// True when the two letters are inverse occurrences in the same factor.
    /// Only infinite factors carry sign -1, so this never holds in a finite
    /// factor after normalization.
    pub fn are_inverse(&self, a: LetterId, b: LetterId) -> bool {
        let (la, lb) = (&self.letters[a], &self.letters[b]);
        la.factor == lb.factor && la.sign * lb.sign == -1
    }

    /// Renders a letter like `a(0,2)`, uppercase when the sign is -1.
    pub fn letter_token(&self, id: LetterId) -> String {
        let l = &self.letters[id];
        let sym = self.group.symbol(l.factor);
        let sym = if l.sign < 0 {
            sym.to_ascii_uppercase()
        } else {
            sym
        };
        format!("{}({},{})", sym, l.word, l.pos)
    }

    /// The normalized words rendered back to text.
    pub fn word_strings(&self) -> Vec<String> {
        self.spans
            .iter()
            .map(|span| {
                (span.start..span.start + span.len)
                    .map(|id| {
                        let l = &self.letters[id];
                        let sym = self.group.symbol(l.factor);
                        if l.sign < 0 {
                            sym.to_ascii_uppercase()
                        } else {
                            sym
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty chain)");
        }
        write!(f, "{}", self.word_strings().join("+"))
    }
}
