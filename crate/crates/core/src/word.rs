//! Crossing words over the gaps of the equator.
//!
//! The equator passes through the obstacles `v0, v1, ..., vn`; gap `i` lies
//! between `v_i` and `v_{i+1}` (indices mod `n + 1`). The basepoint `v = v1`
//! is treated as a degenerate gap `V`, which puts the gap points in the
//! cyclic order `0, V, 1, 2, ..., n`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the equator that a loop can pass through: a gap or the basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GapPoint {
    Gap(u16),
    V,
}

impl GapPoint {
    /// Rank of the point in the cyclic equator order `0, V, 1, ..., n`.
    pub fn cyclic_rank(self) -> u32 {
        match self {
            GapPoint::Gap(0) => 0,
            GapPoint::V => 1,
            GapPoint::Gap(i) => i as u32 + 1,
        }
    }

    pub fn token(self) -> String {
        match self {
            GapPoint::Gap(i) => i.to_string(),
            GapPoint::V => "v".to_string(),
        }
    }

    pub fn parse(token: &str) -> Result<Self> {
        if token == "v" || token == "V" {
            return Ok(GapPoint::V);
        }
        token.parse::<u16>().map(GapPoint::Gap).map_err(|_| Error::UnknownToken(token.to_string()))
    }
}

impl Serialize for GapPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.token())
    }
}

impl<'de> Deserialize<'de> for GapPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = String::deserialize(d)?;
        GapPoint::parse(&t).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for GapPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// Gap labels `0..=n`, optionally with the basepoint label `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapAlphabet {
    n: u16,
    basepoint: bool,
}

impl GapAlphabet {
    pub fn new(n: u16, basepoint: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        Ok(Self { n, basepoint })
    }

    /// Alphabet for `n` punctures with `V` allowed at word ends.
    pub fn with_basepoint(n: u16) -> Result<Self> {
        Self::new(n, true)
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn has_basepoint(&self) -> bool {
        self.basepoint
    }

    pub fn labels(&self) -> impl Iterator<Item = u16> {
        0..=self.n
    }

    /// Gap points in equator order.
    pub fn cyclic_points(&self) -> Vec<GapPoint> {
        let mut pts = vec![GapPoint::Gap(0)];
        if self.basepoint {
            pts.push(GapPoint::V);
        }
        pts.extend((1..=self.n).map(GapPoint::Gap));
        pts
    }

    pub fn validate(&self, word: &Word) -> Result<()> {
        if word.kind == WordKind::V && !self.basepoint {
            return Err(Error::BasepointNotAllowed);
        }
        for &l in &word.letters {
            if l > self.n {
                return Err(Error::LabelOutOfRange { label: l, n: self.n });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WordKind {
    /// Induced by a loop based at a point off the equator and off the obstacles.
    #[serde(rename = "x")]
    X,
    /// Induced by a loop based at the obstacle `v`; written with `V` at both ends.
    #[serde(rename = "v")]
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Hemisphere {
    #[serde(rename = "N")]
    North,
    #[serde(rename = "S")]
    South,
}

impl Hemisphere {
    pub fn flip(self) -> Self {
        match self {
            Hemisphere::North => Hemisphere::South,
            Hemisphere::South => Hemisphere::North,
        }
    }

    /// Flip when `odd` is set.
    pub fn flipped_if(self, odd: bool) -> Self {
        if odd {
            self.flip()
        } else {
            self
        }
    }

    pub fn index(self) -> usize {
        match self {
            Hemisphere::North => 0,
            Hemisphere::South => 1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "N" | "n" | "north" | "North" => Ok(Hemisphere::North),
            "S" | "s" | "south" | "South" => Ok(Hemisphere::South),
            _ => Err(Error::UnknownToken(s.to_string())),
        }
    }
}

impl fmt::Display for Hemisphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hemisphere::North => "N",
            Hemisphere::South => "S",
        })
    }
}

/// A word induced by a loop.
///
/// For v-words `letters` holds the inner word; the two `V`s are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    kind: WordKind,
    letters: Vec<u16>,
}

impl Word {
    pub fn x(letters: Vec<u16>) -> Result<Self> {
        if letters.len() % 2 == 1 {
            return Err(Error::OddLength(letters.len()));
        }
        Ok(Self { kind: WordKind::X, letters })
    }

    pub fn v(letters: Vec<u16>) -> Self {
        Self { kind: WordKind::V, letters }
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn is_v(&self) -> bool {
        self.kind == WordKind::V
    }

    /// Inner letters (without the `V` ends of a v-word).
    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Full sequence of gap points, including `V` ends for v-words.
    pub fn points(&self) -> Vec<GapPoint> {
        let mut pts = Vec::with_capacity(self.letters.len() + 2);
        if self.is_v() {
            pts.push(GapPoint::V);
        }
        pts.extend(self.letters.iter().map(|&l| GapPoint::Gap(l)));
        if self.is_v() {
            pts.push(GapPoint::V);
        }
        pts
    }

    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self { kind: self.kind, letters }
    }

    pub fn max_label(&self) -> Option<u16> {
        self.letters.iter().copied().max()
    }

    pub fn is_aa_free(&self) -> bool {
        is_aa_free(&self.letters)
    }

    /// Parse a sequence of already split tokens, without an alphabet bound.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let pts = tokens.iter().map(|t| GapPoint::parse(t.as_ref())).collect::<Result<Vec<_>>>()?;
        let v_count = pts.iter().filter(|p| **p == GapPoint::V).count();
        if v_count == 0 {
            let letters = pts.iter().map(|p| gap_label(*p)).collect();
            return Word::x(letters);
        }
        let first = pts.first() == Some(&GapPoint::V);
        let last = pts.last() == Some(&GapPoint::V);
        if v_count != 2 || !first || !last || pts.len() < 2 {
            return Err(Error::MisplacedBasepoint);
        }
        let letters = pts[1..pts.len() - 1].iter().map(|p| gap_label(*p)).collect();
        Ok(Word::v(letters))
    }

    pub fn tokens(&self) -> Vec<String> {
        self.points().into_iter().map(GapPoint::token).collect()
    }

    /// Canonical key used for caching: the lexicographically smaller of the
    /// word and its reverse, with a flag telling whether the reverse was taken.
    pub fn canonical_orientation(&self) -> (Word, bool) {
        let rev = self.reversed();
        if rev.letters < self.letters {
            (rev, true)
        } else {
            (self.clone(), false)
        }
    }
}

fn gap_label(p: GapPoint) -> u16 {
    match p {
        GapPoint::Gap(i) => i,
        GapPoint::V => unreachable!("V filtered before"),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    kind: WordKind,
    letters: Vec<String>,
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordRepr { kind: self.kind, letters: self.tokens() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WordRepr::deserialize(d)?;
        let w = Word::from_tokens(&repr.letters).map_err(serde::de::Error::custom)?;
        if w.kind != repr.kind {
            return Err(serde::de::Error::custom("word kind does not match its letters"));
        }
        Ok(w)
    }
}

/// Parse the whitespace- or dot-separated word notation, e.g. `v 2 1 0 2 v`
/// or `0.1.2.0`.
pub fn parse_word(text: &str, alphabet: &GapAlphabet) -> Result<Word> {
    let tokens: Vec<&str> = text.split(|c: char| c.is_whitespace() || c == '.').filter(|t| !t.is_empty()).collect();
    let w = Word::from_tokens(&tokens)?;
    alphabet.validate(&w)?;
    Ok(w)
}

pub fn is_aa_free(letters: &[u16]) -> bool {
    letters.windows(2).all(|p| p[0] != p[1])
}

fn matches_pattern(sub: &[u16], pattern: &[char]) -> bool {
    for i in 0..sub.len() {
        for j in 0..i {
            if (sub[i] == sub[j]) != (pattern[i] == pattern[j]) {
                return false;
            }
        }
    }
    true
}

/// True iff no contiguous subword of the inner word matches `pattern`
/// (equal letters exactly where the pattern has equal symbols).
pub fn is_pattern_free(word: &Word, pattern: &str) -> bool {
    let pat: Vec<char> = pattern.chars().collect();
    if pat.is_empty() {
        return false;
    }
    if pat.len() > word.letters.len() {
        return true;
    }
    !word.letters.windows(pat.len()).any(|sub| matches_pattern(sub, &pat))
}

/// Result of reducing a word to its αα-free normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduced {
    pub word: Word,
    /// Parity of the number of leading letters stripped from a v-word.
    pub stripped_prefix_parity: u8,
}

/// Delete adjacent equal pairs until none remain.
pub fn free_reduce(letters: &[u16]) -> Vec<u16> {
    let mut out: Vec<u16> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// αα-free normal form. For v-words, letters `0` and `1` are also stripped
/// from both ends of the inner word (they wind around `v` itself).
pub fn reduce_word(word: &Word) -> Reduced {
    let mut letters = free_reduce(&word.letters);
    if word.kind == WordKind::X {
        return Reduced { word: Word { kind: WordKind::X, letters }, stripped_prefix_parity: 0 };
    }
    // Stripping cannot create new adjacent pairs, so one pass suffices.
    let lead = letters.iter().take_while(|&&l| l <= 1).count();
    letters.drain(..lead);
    let trail = letters.iter().rev().take_while(|&&l| l <= 1).count();
    letters.truncate(letters.len() - trail);
    Reduced { word: Word::v(letters), stripped_prefix_parity: (lead % 2) as u8 }
}

/// Orientation of three distinct gap points along the equator.
pub fn orientation(a: GapPoint, b: GapPoint, c: GapPoint) -> Result<i8> {
    if a == b || b == c || a == c {
        return Err(Error::DegenerateTriple);
    }
    let (pa, pb, pc) = (a.cyclic_rank(), b.cyclic_rank(), c.cyclic_rank());
    let ccw = (pa < pb && pb < pc) || (pb < pc && pc < pa) || (pc < pa && pa < pb);
    Ok(if ccw { 1 } else { -1 })
}

/// Inclusive span of letter positions (0-based, inner word).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Maximal subwords using exactly the letters `a` and `b`.
pub fn maximal_two_letter_words(letters: &[u16], a: u16, b: u16) -> Vec<Span> {
    let mut spans = Vec::new();
    let inside = |l: u16| l == a || l == b;
    let mut i = 0;
    while i < letters.len() {
        if !inside(letters[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < letters.len() && inside(letters[i + 1]) && letters[i + 1] != letters[i] {
            i += 1;
        }
        if i > start {
            spans.push(Span { start, end: i });
        }
        i += 1;
    }
    spans
}

/// Maximal two-letter subword together with its (sorted) letter pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairSpan {
    pub pair: (u16, u16),
    pub span: Span,
}

/// All maximal two-letter subwords of an αα-free word, ordered by start.
/// Consecutive ones overlap in exactly one letter.
pub fn all_maximal_two_letter_words(letters: &[u16]) -> Vec<PairSpan> {
    let mut out = Vec::new();
    if letters.len() < 2 {
        return out;
    }
    let mut start = 0;
    while start + 1 < letters.len() {
        let (a, b) = (letters[start], letters[start + 1]);
        let mut end = start + 1;
        while end + 1 < letters.len() && letters[end + 1] == letters[end - 1] {
            end += 1;
        }
        out.push(PairSpan { pair: (a.min(b), a.max(b)), span: Span { start, end } });
        start = end;
    }
    out
}

/// A contiguous piece of a word viewed as a segment of the loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentSlice {
    pub start: usize,
    pub end: usize,
    /// Hemisphere of the first arc.
    pub polarity: Hemisphere,
}

impl SegmentSlice {
    pub fn new(start: usize, end: usize, polarity: Hemisphere) -> Result<Self> {
        if end <= start {
            return Err(Error::Precondition("a segment needs at least two letters".into()));
        }
        Ok(Self { start, end, polarity })
    }

    pub fn letter_count(&self) -> usize {
        self.end - self.start + 1
    }

    /// Hemisphere of the `i`-th arc of the slice.
    pub fn arc_hemisphere(&self, i: usize) -> Hemisphere {
        self.polarity.flipped_if(i % 2 == 1)
    }

    /// The same segment traversed backwards.
    pub fn reversed(&self) -> Self {
        let arcs = self.letter_count() - 1;
        Self { start: self.start, end: self.end, polarity: self.arc_hemisphere(arcs - 1) }
    }

    pub fn letters<'a>(&self, word: &'a Word) -> &'a [u16] {
        &word.letters()[self.start..=self.end]
    }
}
