use super::{Alphabet, Coding, Letter, MorphicSpec, Morphism};

/// Where a stream's letters come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    FixedPoint,
    Coded,
    Literal,
    Predicate,
    Transformed,
}

/// A demand-driven, position-stable sequence of letters.
///
/// `letter(p)` returns `None` only past the end of a finite stream.
pub trait WordStream {
    fn letter(&mut self, p: usize) -> Option<Letter>;
    fn alphabet(&self) -> &Alphabet;
    fn origin(&self) -> Origin;
}

impl<S: WordStream + ?Sized> WordStream for Box<S> {
    fn letter(&mut self, p: usize) -> Option<Letter> {
        (**self).letter(p)
    }

    fn alphabet(&self) -> &Alphabet {
        (**self).alphabet()
    }

    fn origin(&self) -> Origin {
        (**self).origin()
    }
}

/// First `n` letters, fewer if the stream ends.
pub fn prefix<S: WordStream + ?Sized>(stream: &mut S, n: usize) -> Vec<Letter> {
    (0..n).map_while(|p| stream.letter(p)).collect()
}

/// The fixed point `h^ω(a)`, grown by appending `h(w_q)` for `q = 1, 2, ...`.
///
/// Because `w = h(w)`, the image of `w_q` starts at `starts[q]`; the same
/// table answers [`image_interval`](Self::image_interval) and
/// [`inverse_image`](Self::inverse_image).
#[derive(Clone, Debug)]
pub struct FixedPointStream {
    morphism: Morphism,
    buffer: Vec<Letter>,
    // starts[q] is the first position of h(w_q); has cursor + 1 entries
    starts: Vec<usize>,
    cursor: usize,
}

impl FixedPointStream {
    pub fn new(spec: &MorphicSpec) -> FixedPointStream {
        let morphism = spec.morphism().clone();
        let buffer = morphism.rule(spec.seed()).to_vec();
        let starts = vec![0, buffer.len()];
        FixedPointStream {
            morphism,
            buffer,
            starts,
            cursor: 1,
        }
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    /// Letters materialized so far.
    pub fn buffered(&self) -> &[Letter] {
        &self.buffer
    }

    fn expand(&mut self) {
        let l = self.buffer[self.cursor];
        let rule = self.morphism.rule(l);
        self.buffer.extend_from_slice(rule);
        self.cursor += 1;
        self.starts.push(self.buffer.len());
    }

    fn ensure_len(&mut self, n: usize) {
        while self.buffer.len() < n {
            self.expand();
        }
    }

    fn ensure_images(&mut self, q: usize) {
        while self.cursor <= q {
            self.expand();
        }
    }

    /// Positions `(start, end)` occupied by `h(w_q)`.
    pub fn image_interval(&mut self, q: usize) -> (usize, usize) {
        self.ensure_images(q);
        (self.starts[q], self.starts[q + 1] - 1)
    }

    /// Smallest `(i, j)` whose image covers positions `r..=s`.
    pub fn inverse_image(&mut self, r: usize, s: usize) -> (usize, usize) {
        assert!(r <= s, "inverse_image needs r <= s");
        while *self.starts.last().expect("nonempty") <= s {
            self.expand();
        }
        let covered = &self.starts[..=self.cursor];
        // i = max{q : start(q) <= r}
        let i = covered.partition_point(|&x| x <= r) - 1;
        // j = min{q : start(q + 1) > s}
        let j = covered.partition_point(|&x| x <= s) - 1;
        (i, j)
    }

    /// The `q` whose image contains position `p`.
    pub fn preimage_of(&mut self, p: usize) -> usize {
        self.inverse_image(p, p).0
    }
}

impl WordStream for FixedPointStream {
    fn letter(&mut self, p: usize) -> Option<Letter> {
        self.ensure_len(p + 1);
        Some(self.buffer[p])
    }

    fn alphabet(&self) -> &Alphabet {
        self.morphism.alphabet()
    }

    fn origin(&self) -> Origin {
        Origin::FixedPoint
    }
}

/// Pointwise image of a stream under a coding.
pub struct CodedStream<S> {
    inner: S,
    coding: Coding,
}

impl<S: WordStream> CodedStream<S> {
    pub fn new(inner: S, coding: Coding) -> CodedStream<S> {
        CodedStream { inner, coding }
    }

    pub fn inner_mut(&mut self) -> &mut S {
        &mut self.inner
    }
}

impl<S: WordStream> WordStream for CodedStream<S> {
    fn letter(&mut self, p: usize) -> Option<Letter> {
        self.inner.letter(p).map(|l| self.coding.apply(l))
    }

    fn alphabet(&self) -> &Alphabet {
        self.coding.target()
    }

    fn origin(&self) -> Origin {
        Origin::Coded
    }
}

/// A finite word read as a stream.
#[derive(Clone, Debug)]
pub struct LiteralStream {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl LiteralStream {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> LiteralStream {
        LiteralStream { alphabet, letters }
    }

    /// Literal over the symbols that occur in `text`, one character per symbol,
    /// ordered by first occurrence.
    pub fn from_chars(text: &str) -> crate::Result<LiteralStream> {
        let mut symbols: Vec<String> = Vec::new();
        for c in text.chars() {
            let s = c.to_string();
            if !symbols.contains(&s) {
                symbols.push(s);
            }
        }
        let alphabet = Alphabet::new(symbols)?;
        let word = alphabet.parse_word(text)?;
        Ok(LiteralStream::new(alphabet, word.0))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl WordStream for LiteralStream {
    fn letter(&mut self, p: usize) -> Option<Letter> {
        self.letters.get(p).copied()
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn origin(&self) -> Origin {
        Origin::Literal
    }
}

/// An infinite word given by a position predicate.
pub struct PredicateStream {
    alphabet: Alphabet,
    rule: Box<dyn Fn(usize) -> Letter + Send + Sync>,
}

impl PredicateStream {
    pub fn new(alphabet: Alphabet, rule: impl Fn(usize) -> Letter + Send + Sync + 'static) -> Self {
        PredicateStream {
            alphabet,
            rule: Box::new(rule),
        }
    }

    /// Binary word over `{"0","1"}` with ones where `is_one` holds.
    pub fn binary(is_one: impl Fn(usize) -> bool + Send + Sync + 'static) -> Self {
        PredicateStream::new(Alphabet::digits(2), move |n| Letter(is_one(n) as u16))
    }
}

impl WordStream for PredicateStream {
    fn letter(&mut self, p: usize) -> Option<Letter> {
        Some((self.rule)(p))
    }

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn origin(&self) -> Origin {
        Origin::Predicate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Alphabet, Morphism};

    fn spec(rules: &[&[usize]]) -> MorphicSpec {
        MorphicSpec::new(Morphism::from_indices(rules).unwrap(), Letter(0), None).unwrap()
    }

    fn render(letters: &[Letter]) -> String {
        letters.iter().map(|l| l.0.to_string()).collect()
    }

    #[test]
    fn thue_morse_prefix() {
        let mut s = spec(&[&[0, 1], &[1, 0]]).fixed_point();
        assert_eq!(render(&prefix(&mut s, 8)), "01101001");
    }

    #[test]
    fn eventually_constant_fixed_point() {
        let mut s = spec(&[&[0, 1], &[1]]).fixed_point();
        assert_eq!(render(&prefix(&mut s, 5)), "01111");
    }

    #[test]
    fn powers_of_two_prefix() {
        let mut s = spec(&[&[0, 1], &[1, 2], &[2, 2]]).fixed_point();
        assert_eq!(render(&prefix(&mut s, 9)), "011212221");
    }

    #[test]
    fn coded_thue_morse() {
        let tm = spec(&[&[0, 1], &[1, 0]]);
        let coding = Coding::new(2, Alphabet::new(["0", "1"]).unwrap(), vec![Letter(0), Letter(1)]).unwrap();
        let mut s = CodedStream::new(tm.fixed_point(), coding);
        assert_eq!(render(&prefix(&mut s, 16)), "0110100110010110");
    }

    #[test]
    fn image_intervals() {
        let mut tm = spec(&[&[0, 1], &[1, 0]]).fixed_point();
        assert_eq!(tm.image_interval(3), (6, 7));
        let mut p2 = spec(&[&[0, 1], &[1, 2], &[2, 2]]).fixed_point();
        assert_eq!(p2.image_interval(5), (10, 11));
        let mut fib = spec(&[&[0, 1], &[0]]).fixed_point();
        assert_eq!(fib.image_interval(2), (3, 4));
    }

    #[test]
    fn inverse_images() {
        let mut p2 = spec(&[&[0, 1], &[1, 2], &[2, 2]]).fixed_point();
        assert_eq!(p2.inverse_image(5, 7), (2, 3));
        assert_eq!(p2.inverse_image(4, 5), (2, 2));
        let mut fib = spec(&[&[0, 1], &[0]]).fixed_point();
        assert_eq!(fib.inverse_image(1, 2), (0, 1));
    }

    #[test]
    fn literal_ends() {
        let mut s = LiteralStream::from_chars("0100").unwrap();
        assert_eq!(s.letter(3), Some(Letter(0)));
        assert_eq!(s.letter(4), None);
        assert_eq!(prefix(&mut s, 10).len(), 4);
    }

    #[test]
    fn predicate_stream() {
        let mut s = PredicateStream::binary(|n| n.is_power_of_two());
        assert_eq!(render(&prefix(&mut s, 9)), "011010001");
    }
}
