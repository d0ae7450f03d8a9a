//! Expansion calculus: splitting an αα-free word into an αβαβ-free core plus
//! per-pair repetition vectors, and counting vectors with a small winding
//! bound.

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{all_maximal_two_letter_words, maximal_two_letter_words, Word, WordKind};

/// Repetition counts for the maximal `{a, b}`-words of a core, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVector {
    pub pair: (u16, u16),
    pub s: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionDecomposition {
    pub core: Word,
    /// One entry per letter pair with a maximal word in the core, ordered by pair.
    pub vectors: Vec<PairVector>,
}

impl ExpansionDecomposition {
    /// Apply every pair's expansion to the core.
    pub fn expand(&self) -> Result<Word> {
        let mut w = self.core.clone();
        for v in &self.vectors {
            w = apply_expansion(&w, v.pair, &v.s)?;
        }
        Ok(w)
    }
}

/// Collapse every maximal two-letter word to length 2 or 3 (keeping parity).
pub fn decompose(word: &Word) -> Result<ExpansionDecomposition> {
    if !word.is_aa_free() {
        return Err(Error::NotReduced);
    }
    let letters = word.letters();
    if word.kind() == WordKind::V {
        let bad_end = |l: Option<&u16>| matches!(l, Some(0) | Some(1));
        if bad_end(letters.first()) || bad_end(letters.last()) {
            return Err(Error::Precondition("inner word must not start or end in 0 or 1".into()));
        }
    }
    let spans = all_maximal_two_letter_words(letters);
    let mut drop = vec![false; letters.len()];
    let mut by_pair: std::collections::BTreeMap<(u16, u16), Vec<u32>> = Default::default();
    for ps in &spans {
        let len = ps.span.len();
        let s = (len - 2) / 2;
        for d in &mut drop[ps.span.start + 1..=ps.span.start + 2 * s] {
            *d = true;
        }
        by_pair.entry(ps.pair).or_default().push(s as u32);
    }
    let core_letters: Vec<u16> = letters.iter().zip(&drop).filter(|(_, &d)| !d).map(|(&l, _)| l).collect();
    let core = match word.kind() {
        WordKind::X => Word::x(core_letters)?,
        WordKind::V => Word::v(core_letters),
    };
    let vectors = by_pair.into_iter().map(|(pair, s)| PairVector { pair, s }).collect();
    Ok(ExpansionDecomposition { core, vectors })
}

/// Replace the leading two letters of the `j`-th maximal `{a, b}`-word of
/// `core` by their `(s_j + 1)`-th power.
pub fn apply_expansion(core: &Word, pair: (u16, u16), s: &[u32]) -> Result<Word> {
    let (a, b) = pair;
    let letters = core.letters();
    let spans = maximal_two_letter_words(letters, a, b);
    if spans.len() != s.len() {
        return Err(Error::LengthMismatch { expected: spans.len(), got: s.len() });
    }
    let mut out = Vec::with_capacity(letters.len());
    let mut next = 0;
    for (span, &reps) in spans.iter().zip(s) {
        out.extend_from_slice(&letters[next..span.start]);
        let (x, y) = (letters[span.start], letters[span.start + 1]);
        for _ in 0..reps {
            out.extend([x, y]);
        }
        next = span.start;
    }
    out.extend_from_slice(&letters[next..]);
    match core.kind() {
        WordKind::X => Word::x(out),
        WordKind::V => Ok(Word::v(out)),
    }
}

/// `Σ s_i + 2 Σ_{i<j} min(s_i, s_j)`.
pub fn expansion_lb(s: &[u32]) -> u64 {
    let mut sorted: Vec<u64> = s.iter().map(|&x| x as u64).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.iter().enumerate().map(|(j, &x)| x * (2 * j as u64 + 1)).sum()
}

/// Multiplicities `m_0..m_k` of the values of a vector, plus their tails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub m: Vec<u64>,
}

impl MultiplicityProfile {
    /// Profile of `s` over the values `0..=k`; larger values are an error.
    pub fn of(s: &[u32], k: usize) -> Result<Self> {
        let mut m = vec![0u64; k + 1];
        for &x in s {
            *m.get_mut(x as usize).ok_or_else(|| Error::Infeasible(format!("value {x} exceeds {k}")))? += 1;
        }
        Ok(Self { m })
    }

    /// `m_{>=α}` for `α = 0..=k`.
    pub fn tails(&self) -> Vec<u64> {
        let mut t = self.m.clone();
        for i in (0..t.len().saturating_sub(1)).rev() {
            t[i] += t[i + 1];
        }
        t
    }

    /// Whether `m_{>=0} = ℓ` and `m_{>=α} <= sqrt(k/α)` for `α = 1..=k`.
    pub fn is_feasible(&self, l: u64, k: u64) -> bool {
        let t = self.tails();
        t.len() as u64 == k + 1 && t[0] == l && t.iter().enumerate().skip(1).all(|(a, &x)| x * x * a as u64 <= k)
    }
}

fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of `s` in `Z_{>=0}^ℓ` with `expansion_lb(s) < k`.
///
/// Uses `expansion_lb(s) = Σ_{α>=1} m_{>=α}(s)^2`: walk `α = 1, 2, ..` choosing
/// the tail `M_α <= M_{α-1}` (with `M_0 = ℓ`), paying `M_α^2` and placing the
/// entries that reach `α` among those reaching `α - 1`.
#[allow(clippy::needless_range_loop)]
pub fn count_vectors_exact(l: u64, k: u64) -> BigUint {
    // ways[M][c]: tail M at the current level, accumulated cost c.
    let kk = k as usize;
    let mut ways = vec![vec![BigUint::zero(); kk]; l as usize + 1];
    if kk == 0 {
        return BigUint::zero();
    }
    ways[l as usize][0] = BigUint::one();
    let mut total = BigUint::zero();
    loop {
        let mut next = vec![vec![BigUint::zero(); kk]; l as usize + 1];
        let mut any = false;
        for (prev, row) in ways.iter().enumerate() {
            for (c, w) in row.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                // Every remaining entry stays below the current level.
                total += w;
                for m in 1..=prev {
                    let cost = c + m * m;
                    if cost >= kk {
                        break;
                    }
                    next[m][cost] += w * binomial(prev as u64, m as u64);
                    any = true;
                }
            }
        }
        if !any {
            return total;
        }
        ways = next;
    }
}

/// `z_0 = ℓ - ⌊√k⌋`, `z_i = ⌊√(k/i)⌋ - ⌊√(k/(i+1))⌋` for `i = 1..=k`.
pub fn z_vector(l: u64, k: u64) -> Result<Vec<u64>> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let root = |i: u64| (k / i).sqrt();
    if l + root(2) < 2 * root(1) {
        return Err(Error::Precondition(format!("l = {l} is below 2⌊√k⌋ - ⌊√(k/2)⌋ = {}", 2 * root(1) - root(2))));
    }
    let mut z = vec![l - root(1)];
    z.extend((1..=k).map(|i| root(i) - if i < k { root(i + 1) } else { 0 }));
    Ok(z)
}

/// `ℓ! / Π parts_i!`.
pub fn multinomial(l: u64, parts: &[u64]) -> Result<BigUint> {
    let sum: u64 = parts.iter().sum();
    if sum != l {
        return Err(Error::SumMismatch { expected: l, got: sum });
    }
    let mut acc = BigUint::one();
    let mut left = l;
    for &p in parts {
        acc *= binomial(left, p);
        left -= p;
    }
    Ok(acc)
}

/// Whether `multinomial(ℓ; m) <= multinomial(ℓ; z(ℓ, k))` for a feasible profile.
pub fn prop3_check(m: &MultiplicityProfile, l: u64, k: u64) -> Result<bool> {
    if !m.is_feasible(l, k) {
        return Err(Error::Infeasible(format!("{:?} for l = {l}, k = {k}", m.m)));
    }
    let z = z_vector(l, k)?;
    Ok(multinomial(l, &m.m)? <= multinomial(l, &z)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVectorCount {
    pub exact: BigUint,
    /// `k^β (ℓ+1)^β` with `β = ⌈k^(1/3)⌉`.
    pub cap: BigUint,
}

/// Number of feasible multiplicity profiles, i.e. chains
/// `ℓ = M_0 >= M_1 >= .. >= M_k >= 0` with `α M_α^2 <= k`.
pub fn m_vector_count(l: u64, k: u64) -> MVectorCount {
    let mut ways = vec![BigUint::zero(); l as usize + 1];
    ways[l as usize] = BigUint::one();
    for a in 1..=k {
        let mut next = vec![BigUint::zero(); l as usize + 1];
        let mut acc = BigUint::zero();
        // next[m] = Σ_{prev >= m} ways[prev], restricted to feasible m.
        for m in (0..=l as usize).rev() {
            acc += &ways[m];
            if (m as u64) * (m as u64) * a <= k {
                next[m] = acc.clone();
            }
        }
        ways = next;
    }
    let exact = ways.iter().sum();
    let mut beta = k.cbrt();
    if beta * beta * beta < k {
        beta += 1;
    }
    let cap = num_traits::pow(BigUint::from(k), beta as usize) * num_traits::pow(BigUint::from(l + 1), beta as usize);
    MVectorCount { exact, cap }
}

/// One row of the expansion counting sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CountRow {
    pub l: u64,
    pub k: u64,
    pub exact_count: String,
    /// `mVectorCount × multinomial(ℓ; z)` when `z` is defined.
    pub cap_count: Option<String>,
    pub multinomial_z: Option<String>,
}

pub fn count_row(l: u64, k: u64) -> CountRow {
    let exact = count_vectors_exact(l, k);
    let mz = z_vector(l, k).ok().map(|z| multinomial(l, &z).expect("z sums to l"));
    let cap = mz.as_ref().map(|mz| m_vector_count(l, k).exact * mz);
    CountRow {
        l,
        k,
        exact_count: exact.to_string(),
        cap_count: cap.map(|c| c.to_string()),
        multinomial_z: mz.map(|m| m.to_string()),
    }
}

/// Whether `count <= 4√k`.
pub fn within_pair_word_bound(count: u64, k: u64) -> bool {
    count * count <= 16 * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, GapAlphabet};

    fn w(text: &str) -> Word {
        parse_word(text, &GapAlphabet::with_basepoint(3).unwrap()).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(&w("v 2 0 1 0 1 0 1 2 v")).unwrap();
        assert_eq!(d.core, w("v 2 0 1 2 v"));
        assert_eq!(d.vectors.iter().find(|v| v.pair == (0, 1)).unwrap().s, vec![2]);
        assert_eq!(d.expand().unwrap(), w("v 2 0 1 0 1 0 1 2 v"));
        let d = decompose(&w("v 2 0 1 0 2 1 2 v")).unwrap();
        assert_eq!(d.core, w("v 2 0 1 0 2 1 2 v"));
        assert!(d.vectors.iter().all(|v| v.s.iter().all(|&x| x == 0)));
        let d = decompose(&w("0 1 0 1")).unwrap();
        assert_eq!(d.core, w("0 1"));
        assert_eq!(d.vectors, vec![PairVector { pair: (0, 1), s: vec![1] }]);
        assert!(decompose(&w("v 0 2 v")).is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apply_expansion(&w("v 2 0 1 2 v"), (0, 1), &[2]).unwrap(), w("v 2 0 1 0 1 0 1 2 v"));
        assert_eq!(apply_expansion(&w("v 2 0 1 2 v"), (0, 1), &[0]).unwrap(), w("v 2 0 1 2 v"));
        assert_eq!(apply_expansion(&w("0 1"), (0, 1), &[1]).unwrap(), w("0 1 0 1"));
        assert_eq!(apply_expansion(&w("0 1"), (0, 1), &[1, 2]), Err(Error::LengthMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn lb_values() {
        assert_eq!(expansion_lb(&[1, 1]), 4);
        assert_eq!(expansion_lb(&[2, 1]), 5);
        assert_eq!(expansion_lb(&[0, 0, 0]), 0);
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_vectors_exact(2, 3), 5u32.into());
        assert_eq!(count_vectors_exact(1, 3), 3u32.into());
        assert_eq!(count_vectors_exact(0, 7), 1u32.into());
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_vector(8, 9).unwrap(), vec![5, 1, 1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(z_vector(4, 9).unwrap()[0], 1);
        assert_eq!(z_vector(4, 9).unwrap().iter().sum::<u64>(), 4);
        assert_eq!(z_vector(2, 1).unwrap(), vec![1, 1]);
        assert!(z_vector(3, 9).is_err());
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), 12u32.into());
        assert_eq!(multinomial(5, &[5]).unwrap(), 1u32.into());
        assert_eq!(multinomial(3, &[1, 1, 1]).unwrap(), 6u32.into());
        assert_eq!(multinomial(3, &[1, 1]), Err(Error::SumMismatch { expected: 3, got: 2 }));
    }

    #[test]
    fn majorization_examples() {
        let z = MultiplicityProfile { m: z_vector(8, 9).unwrap() };
        assert!(prop3_check(&z, 8, 9).unwrap());
        let mut m = vec![0; 10];
        m[0] = 3;
        m[1] = 1;
        assert!(prop3_check(&MultiplicityProfile { m }, 4, 9).unwrap());
        let mut bad = vec![0; 10];
        bad[1] = 4;
        assert!(prop3_check(&MultiplicityProfile { m: bad }, 4, 9).is_err());
    }

    #[test]
    fn m_vectors() {
        let c = m_vector_count(2, 1);
        assert_eq!(c.exact, 2u32.into());
        assert_eq!(c.cap, 3u32.into());
        assert_eq!(m_vector_count(0, 5).exact, 1u32.into());
    }

    #[test]
    fn pair_word_bound() {
        assert!(within_pair_word_bound(4, 1));
        assert!(!within_pair_word_bound(5, 1));
        assert!(within_pair_word_bound(5, 2));
        assert!(!within_pair_word_bound(6, 2));
    }
}
