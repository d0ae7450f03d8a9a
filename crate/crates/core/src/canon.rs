//! Canonical homotopy-class descriptors for x-loops and v-loops, and the
//! bijection between reduced x-words and reduced words in the free group
//! `π1(R² minus n points) = F(g1, ..., gn)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{free_reduce, reduce_word, Hemisphere, Word, WordKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct XLoopClass {
    pub reduced_word: Word,
}

/// A v-loop class: reduced inner word plus the hemisphere of its first arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VLoopClass {
    #[serde(with = "core_letters")]
    pub core: Vec<u16>,
    #[serde(rename = "startHemisphere")]
    pub start_hemisphere: Hemisphere,
}

mod core_letters {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[u16], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|l| l.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u16>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|t| t.parse::<u16>().map_err(serde::de::Error::custom)).collect()
    }
}

impl VLoopClass {
    /// Hemisphere of the last arc; a core of length `t` has `t + 1` arcs.
    pub fn end_hemisphere(&self) -> Hemisphere {
        self.start_hemisphere.flipped_if(self.core.len() % 2 == 1)
    }

    pub fn word(&self) -> Word {
        Word::v(self.core.clone())
    }
}

impl fmt::Display for VLoopClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.word(), self.start_hemisphere)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LoopClass {
    X(XLoopClass),
    V(VLoopClass),
}

impl LoopClass {
    pub fn word(&self) -> Word {
        match self {
            LoopClass::X(c) => c.reduced_word.clone(),
            LoopClass::V(c) => c.word(),
        }
    }

    pub fn kind(&self) -> WordKind {
        match self {
            LoopClass::X(_) => WordKind::X,
            LoopClass::V(_) => WordKind::V,
        }
    }

    /// Hemisphere of the first arc of the canonical representative. For
    /// x-classes this is the basepoint's hemisphere, fixed to North.
    pub fn start_hemisphere(&self) -> Hemisphere {
        match self {
            LoopClass::X(_) => Hemisphere::North,
            LoopClass::V(c) => c.start_hemisphere,
        }
    }
}

impl fmt::Display for LoopClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopClass::X(c) => write!(f, "[{}]", c.reduced_word),
            LoopClass::V(c) => c.fmt(f),
        }
    }
}

pub fn canon_x(word: &Word) -> Result<XLoopClass> {
    if word.kind() != WordKind::X {
        return Err(Error::WrongKind { expected: "x" });
    }
    Ok(XLoopClass { reduced_word: reduce_word(word).word })
}

/// Canonical class of a v-loop whose first arc lies in `first_arc`.
/// Every stripped leading letter moves the first arc to the other hemisphere.
pub fn canon_v(word: &Word, first_arc: Hemisphere) -> Result<VLoopClass> {
    if word.kind() != WordKind::V {
        return Err(Error::WrongKind { expected: "v" });
    }
    let r = reduce_word(word);
    Ok(VLoopClass {
        core: r.word.letters().to_vec(),
        start_hemisphere: first_arc.flipped_if(r.stripped_prefix_parity == 1),
    })
}

pub fn equivalent(a: &LoopClass, b: &LoopClass) -> Result<bool> {
    match (a, b) {
        (LoopClass::X(x), LoopClass::X(y)) => Ok(x == y),
        (LoopClass::V(x), LoopClass::V(y)) => Ok(x == y),
        _ => Err(Error::KindMismatch),
    }
}

/// `g_i^{±1}` with `i` in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub index: u16,
    pub inverse: bool,
}

impl Generator {
    pub fn inv(self) -> Self {
        Self { index: self.index, inverse: !self.inverse }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "g{}^-1", self.index)
        } else {
            write!(f, "g{}", self.index)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorString(pub Vec<Generator>);

impl GeneratorString {
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    /// Free reduction of the concatenation `self · other`.
    pub fn product(&self, other: &GeneratorString) -> GeneratorString {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len() + other.0.len());
        for &g in self.0.iter().chain(other.0.iter()) {
            if out.last() == Some(&g.inv()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        GeneratorString(out)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for tok in text.split_whitespace() {
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let index = body
                .strip_prefix('g')
                .and_then(|d| d.parse::<u16>().ok())
                .ok_or_else(|| Error::UnknownToken(tok.to_string()))?;
            if index == 0 {
                return Err(Error::GeneratorOutOfRange(0));
            }
            gens.push(Generator { index, inverse });
        }
        Ok(GeneratorString(gens))
    }
}

impl fmt::Display for GeneratorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `g_{i,j}`: the class of any loop inducing the two-letter word `i j`.
fn block(i: u16, j: u16) -> impl Iterator<Item = Generator> {
    let (lo, hi, inverse) = if i < j { (i + 1, j, false) } else { (j + 1, i, true) };
    let range: Box<dyn Iterator<Item = u16>> = if inverse { Box::new((lo..=hi).rev()) } else { Box::new(lo..=hi) };
    range.map(move |index| Generator { index, inverse })
}

/// Split an even-length αα-free x-word into letter pairs and substitute
/// `g_{i,j}` for each pair.
pub fn to_free_group(word: &Word) -> Result<GeneratorString> {
    if word.kind() != WordKind::X {
        return Err(Error::WrongKind { expected: "x" });
    }
    if word.len() % 2 == 1 {
        return Err(Error::OddLength(word.len()));
    }
    if !word.is_aa_free() {
        return Err(Error::NotReduced);
    }
    let gens = word.letters().chunks(2).flat_map(|p| block(p[0], p[1])).collect();
    Ok(GeneratorString(gens))
}

/// Inverse of [`to_free_group`]: concatenate the words `(i-1) i` of the
/// elementary loops and cancel adjacent equal letters.
pub fn from_free_group(s: &GeneratorString) -> Result<Word> {
    if !s.is_reduced() {
        return Err(Error::UnreducedGenerators);
    }
    let mut letters = Vec::with_capacity(2 * s.0.len());
    for g in &s.0 {
        if g.index == 0 {
            return Err(Error::GeneratorOutOfRange(0));
        }
        if g.inverse {
            letters.extend([g.index, g.index - 1]);
        } else {
            letters.extend([g.index - 1, g.index]);
        }
    }
    Word::x(free_reduce(&letters))
}
