//! Alphabets, morphisms, codings and the streams they generate.
//!
//! Letters are dense indices into an [`Alphabet`]; display symbols only show
//! up when reading or writing spec documents.

mod document;
mod stream;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub use document::SpecDocument;
pub use stream::{prefix, CodedStream, FixedPointStream, LiteralStream, Origin, PredicateStream, WordStream};

/// A letter, stored as its index in the owning alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(index: usize) -> Letter {
        Letter(u16::try_from(index).expect("alphabet larger than u16::MAX letters"))
    }
}

/// Ordered list of distinct display symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    lookup: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Alphabet> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidSpec("alphabet is empty".into()));
        }
        if symbols.len() > u16::MAX as usize {
            return Err(Error::InvalidSpec("alphabet too large".into()));
        }
        let mut lookup = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::InvalidSpec("empty symbol".into()));
            }
            if lookup.insert(s.clone(), Letter::from_index(i)).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate symbol {s:?}")));
            }
        }
        Ok(Alphabet { symbols, lookup })
    }

    /// The alphabet `{0, 1, ..., n-1}` with decimal symbols.
    pub fn digits(n: usize) -> Alphabet {
        Alphabet::new((0..n).map(|i| i.to_string())).expect("nonempty digit alphabet")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter.index()]
    }

    pub fn letter(&self, symbol: &str) -> Option<Letter> {
        self.lookup.get(symbol).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.len()).map(Letter::from_index)
    }

    /// True when every symbol is a single character, so words can be
    /// printed without separators.
    pub fn is_single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parse a word written either as space-separated symbols or, for
    /// single-character alphabets, as a concatenated string.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = if text.contains(char::is_whitespace) || !self.is_single_char() {
            text.split_whitespace().collect()
        } else {
            text.char_indices().map(|(i, c)| &text[i..i + c.len_utf8()]).collect()
        };
        tokens
            .into_iter()
            .map(|t| {
                self.letter(t)
                    .ok_or_else(|| Error::InvalidSpec(format!("unknown symbol {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, letters: &[Letter], concat: bool) -> String {
        let sep = if concat { "" } else { " " };
        letters.iter().map(|&l| self.symbol(l)).collect::<Vec<_>>().join(sep)
    }
}

/// Finite word over letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn from_indices(indices: &[usize]) -> Word {
        Word(indices.iter().map(|&i| Letter::from_index(i)).collect())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

/// A nonerasing endomorphism of the free monoid over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    rules: Vec<Word>,
    max_image_len: usize,
    uniform_width: Option<usize>,
}

impl Morphism {
    /// Build a morphism from one image per letter, in alphabet order.
    ///
    /// Erasing rules and out-of-alphabet letters are rejected.
    pub fn new(alphabet: Alphabet, rules: Vec<Word>) -> Result<Morphism> {
        if rules.len() != alphabet.len() {
            return Err(Error::InvalidMorphism(format!(
                "{} rules for an alphabet of {} letters",
                rules.len(),
                alphabet.len()
            )));
        }
        for (a, rule) in rules.iter().enumerate() {
            if rule.is_empty() {
                return Err(Error::InvalidMorphism(format!(
                    "erasing rule for {:?}",
                    alphabet.symbols()[a]
                )));
            }
            if let Some(bad) = rule.iter().find(|l| l.index() >= alphabet.len()) {
                return Err(Error::InvalidMorphism(format!(
                    "rule for {:?} uses letter index {} outside the alphabet",
                    alphabet.symbols()[a],
                    bad.index()
                )));
            }
        }
        let max_image_len = rules.iter().map(|r| r.len()).max().unwrap_or(0);
        let first = rules[0].len();
        let uniform_width = rules.iter().all(|r| r.len() == first).then_some(first);
        Ok(Morphism {
            alphabet,
            rules,
            max_image_len,
            uniform_width,
        })
    }

    /// Convenience constructor from index lists, over a digit alphabet.
    pub fn from_indices(rules: &[&[usize]]) -> Result<Morphism> {
        let alphabet = Alphabet::digits(rules.len());
        Morphism::new(alphabet, rules.iter().map(|r| Word::from_indices(r)).collect())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rules(&self) -> &[Word] {
        &self.rules
    }

    pub fn rule(&self, a: Letter) -> &Word {
        &self.rules[a.index()]
    }

    /// `M = max |h(a)|`.
    pub fn max_image_len(&self) -> usize {
        self.max_image_len
    }

    pub fn uniform_width(&self) -> Option<usize> {
        self.uniform_width
    }

    /// Always true for a constructed morphism; erasing rules are rejected.
    pub fn is_nonerasing(&self) -> bool {
        self.rules.iter().all(|r| !r.is_empty())
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(word.len() * self.max_image_len);
        for &l in word {
            out.extend_from_slice(&self.rules[l.index()]);
        }
        Word(out)
    }

    /// `h^t` by `t`-fold substitution.
    pub fn power(&self, t: usize) -> Result<Morphism> {
        if t == 0 {
            return Err(Error::InvalidParams("morphism power must be >= 1".into()));
        }
        let mut rules = self.rules.clone();
        for _ in 1..t {
            rules = rules.iter().map(|r| self.apply(r)).collect();
        }
        Morphism::new(self.alphabet.clone(), rules)
    }

    /// `h^k(word)` by repeated substitution.
    pub fn iterate(&self, word: &[Letter], k: usize) -> Word {
        let mut w = Word(word.to_vec());
        for _ in 0..k {
            w = self.apply(&w);
        }
        w
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let concat = self.alphabet.is_single_char();
        for (i, r) in self.rules.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", self.alphabet.symbols()[i], self.alphabet.render(r, concat))?;
        }
        Ok(())
    }
}

/// Total letter-to-letter map between two alphabets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coding {
    target: Alphabet,
    map: Vec<Letter>,
}

impl Coding {
    pub fn new(source_len: usize, target: Alphabet, map: Vec<Letter>) -> Result<Coding> {
        if map.len() != source_len {
            return Err(Error::InvalidSpec(format!(
                "coding defined on {} of {} letters",
                map.len(),
                source_len
            )));
        }
        if map.iter().any(|l| l.index() >= target.len()) {
            return Err(Error::InvalidSpec("coding image outside target alphabet".into()));
        }
        Ok(Coding { target, map })
    }

    pub fn identity(alphabet: &Alphabet) -> Coding {
        Coding {
            target: alphabet.clone(),
            map: alphabet.letters().collect(),
        }
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn map(&self) -> &[Letter] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: Letter) -> Letter {
        self.map[a.index()]
    }

    /// Source letters mapped into `targets`, as a membership mask.
    pub fn preimage_mask(&self, targets: &[bool]) -> Vec<bool> {
        self.map.iter().map(|l| targets[l.index()]).collect()
    }
}

/// Morphism, seed letter and optional coding: the generator of a morphic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphicSpec {
    morphism: Morphism,
    seed: Letter,
    coding: Option<Coding>,
}

impl MorphicSpec {
    /// Validate prolongability: `h(seed) = seed·x` with `x` nonempty.
    pub fn new(morphism: Morphism, seed: Letter, coding: Option<Coding>) -> Result<MorphicSpec> {
        if seed.index() >= morphism.len() {
            return Err(Error::InvalidSpec("seed outside alphabet".into()));
        }
        let rule = morphism.rule(seed);
        if rule[0] != seed || rule.len() < 2 {
            return Err(Error::NotProlongable(format!(
                "rule for {:?} must start with it and have length >= 2",
                morphism.alphabet().symbol(seed)
            )));
        }
        if let Some(c) = &coding {
            if c.map().len() != morphism.len() {
                return Err(Error::InvalidSpec("coding does not cover the alphabet".into()));
            }
        }
        Ok(MorphicSpec { morphism, seed, coding })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn seed(&self) -> Letter {
        self.seed
    }

    pub fn coding(&self) -> Option<&Coding> {
        self.coding.as_ref()
    }

    /// The alphabet of the generated (coded) word.
    pub fn output_alphabet(&self) -> &Alphabet {
        match &self.coding {
            Some(c) => c.target(),
            None => self.morphism.alphabet(),
        }
    }

    /// Same seed and coding with the morphism replaced by `h^t`.
    pub fn with_power(&self, t: usize) -> Result<MorphicSpec> {
        MorphicSpec::new(self.morphism.power(t)?, self.seed, self.coding.clone())
    }

    /// The pure fixed point `h^ω(seed)`.
    pub fn fixed_point(&self) -> FixedPointStream {
        FixedPointStream::new(self)
    }

    /// The generated word, coded when a coding is present.
    pub fn stream(&self) -> Box<dyn WordStream> {
        let fp = self.fixed_point();
        match &self.coding {
            Some(c) => Box::new(CodedStream::new(fp, c.clone())),
            None => Box::new(fp),
        }
    }
}
