//! Exhaustive enumeration of loop classes with few self-intersections,
//! pairwise compatibility graphs and clique bounds on family sizes.

use num_integer::Roots;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{analytic_bounds, winding_self_lb};
use crate::canon::{canon_v, canon_x, LoopClass};
use crate::error::{Error, Result};
use crate::oracle::{minimize_curves_below, pair_intersection_below, CountMode, Curve, Drawing, Search};
use crate::word::{GapPoint, Hemisphere, Word, WordKind};

/// Upper bound on the length of a reduced word with fewer than `k`
/// self-intersections.
///
/// For `n = 2` a core word has at most `⌊4√k⌋` maximal words per letter pair,
/// hence at most `6⌊4√k⌋ + 1` letters; expansions add two letters per unit of
/// each pair's vector, and a vector's entries sum to at most
/// `min(k - 1, Σ_α ⌊√(k/α)⌋)`. For `n = 1` the class with winding number `m`
/// has word length `2|m|` and `|m| - 1` self-intersections; one extra period is
/// allowed so the enumeration sees the first excluded length.
pub fn length_cap(k: u64, n: u16) -> Result<usize> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    match n {
        1 => Ok(2 * k as usize + 2),
        2 => {
            let per_pair = (16 * k).sqrt();
            let tails: u64 = (1..=k).map(|a| (k / a).sqrt()).sum();
            let extra = (k - 1).min(tails);
            Ok((6 * per_pair + 1 + 3 * 2 * extra) as usize)
        }
        _ => Err(Error::Unsupported(format!("enumeration is implemented for n = 1 and n = 2, not {n}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub class: LoopClass,
    pub selfint: u32,
    pub witness: Drawing,
}

impl CatalogEntry {
    pub fn word(&self) -> Word {
        self.class.word()
    }

    pub fn polarity(&self) -> Option<Hemisphere> {
        match &self.class {
            LoopClass::X(_) => None,
            LoopClass::V(v) => Some(v.start_hemisphere),
        }
    }
}

/// One JSON-lines record of a catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogLine {
    pub word: String,
    pub polarity: Option<Hemisphere>,
    pub selfint: u32,
    pub witness: Drawing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassCatalog {
    pub n: u16,
    pub k: u64,
    pub length_cap: usize,
    pub entries: Vec<CatalogEntry>,
}

impl ClassCatalog {
    pub fn class_count(&self) -> usize {
        self.entries.len()
    }

    /// Lower end of the count band: the two polarities of the empty v-word
    /// may describe a single class.
    pub fn class_count_low(&self) -> usize {
        let empty_v = self.entries.iter().filter(|e| e.class.kind() == WordKind::V && e.word().is_empty()).count();
        self.entries.len() - empty_v.saturating_sub(1)
    }

    pub fn lines(&self) -> Vec<CatalogLine> {
        self.entries
            .iter()
            .map(|e| CatalogLine {
                word: e.word().to_string(),
                polarity: e.polarity(),
                selfint: e.selfint,
                witness: e.witness.clone(),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerationConfig {
    pub budget: u64,
    pub length_cap: Option<usize>,
}

struct Walk {
    kind: WordKind,
    n: u16,
    k: u32,
    cap: usize,
    budget: u64,
}

impl Walk {
    fn open_points(&self, prefix: &[u16]) -> Vec<GapPoint> {
        let inner = prefix.iter().map(|&l| GapPoint::Gap(l));
        match self.kind {
            WordKind::V => std::iter::once(GapPoint::V).chain(inner).collect(),
            WordKind::X => inner.collect(),
        }
    }

    /// Whether some drawing of the open path has fewer than `k` crossings.
    fn prefix_alive(&self, prefix: &[u16]) -> Result<bool> {
        let curve = Curve::segment(self.open_points(prefix), Hemisphere::North);
        match minimize_curves_below(&[curve], CountMode::All, self.budget, self.k) {
            Search::AtLeast(_) => Ok(false),
            Search::Exact(..) | Search::Inexact(..) => Ok(true),
            Search::Unknown => Err(Error::BudgetExhausted(self.budget)),
        }
    }

    fn word(&self, prefix: &[u16]) -> Option<Word> {
        match self.kind {
            WordKind::V => (prefix.last().is_some_and(|&l| l >= 2)).then(|| Word::v(prefix.to_vec())),
            WordKind::X => Word::x(prefix.to_vec()).ok(),
        }
    }

    fn accept(&self, word: &Word) -> Result<Option<(u32, Drawing)>> {
        if winding_self_lb(word, self.n) >= self.k as u64 {
            return Ok(None);
        }
        let curve = Curve::from_word(word, Hemisphere::North);
        match minimize_curves_below(&[curve], CountMode::All, self.budget, self.k) {
            Search::AtLeast(_) => Ok(None),
            Search::Exact(v, d) => Ok(Some((v, d))),
            Search::Inexact(..) | Search::Unknown => Err(Error::BudgetExhausted(self.budget)),
        }
    }

    fn dfs(&self, prefix: &mut Vec<u16>, out: &mut Vec<(Word, u32, Drawing)>) -> Result<()> {
        if let Some(word) = self.word(prefix) {
            if let Some((v, d)) = self.accept(&word)? {
                out.push((word, v, d));
            }
        }
        if prefix.len() >= self.cap {
            return Ok(());
        }
        for l in 0..=self.n {
            if prefix.last() == Some(&l) {
                continue;
            }
            prefix.push(l);
            if self.prefix_alive(prefix)? {
                self.dfs(prefix, out)?;
            }
            prefix.pop();
        }
        Ok(())
    }

    fn first_letters(&self) -> Vec<u16> {
        match self.kind {
            WordKind::V => (2..=self.n).collect(),
            WordKind::X => (0..=self.n).collect(),
        }
    }
}

/// All classes with exact self-intersection number below `k` and reduced
/// word length at most the length cap: x-classes for `n = 1`, v-classes of
/// both polarities for `n = 2`.
pub fn enumerate_classes(n: u16, k: u64, config: EnumerationConfig) -> Result<ClassCatalog> {
    let cap = match config.length_cap {
        Some(c) => c,
        None => length_cap(k, n)?,
    };
    let kind = match n {
        1 => WordKind::X,
        2 => WordKind::V,
        _ => return Err(Error::Unsupported(format!("enumeration is implemented for n = 1 and n = 2, not {n}"))),
    };
    let walk = Walk { kind, n, k: k.min(u32::MAX as u64) as u32, cap, budget: config.budget };
    // Split at the second letter so subtrees can run in parallel.
    let mut roots = Vec::new();
    let mut found: Vec<(Word, u32, Drawing)> = Vec::new();
    if k >= 1 {
        let empty = match kind {
            WordKind::V => Word::v(vec![]),
            WordKind::X => Word::x(vec![])?,
        };
        found.push((empty, 0, Drawing::default()));
    }
    if cap >= 1 {
        for first in walk.first_letters() {
            if !walk.prefix_alive(&[first])? {
                continue;
            }
            if let Some(word) = walk.word(&[first]) {
                if let Some((v, d)) = walk.accept(&word)? {
                    found.push((word, v, d));
                }
            }
            if cap >= 2 {
                roots.extend((0..=n).filter(|&l| l != first).map(|l| vec![first, l]));
            }
        }
    }
    let subtrees: Vec<Result<Vec<(Word, u32, Drawing)>>> = roots
        .into_par_iter()
        .map(|mut prefix| {
            let mut out = Vec::new();
            if walk.prefix_alive(&prefix)? {
                walk.dfs(&mut prefix, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    for s in subtrees {
        found.extend(s?);
    }
    found.sort_by(|a, b| (a.0.len(), a.0.letters()).cmp(&(b.0.len(), b.0.letters())));
    let mut entries = Vec::new();
    for (word, selfint, witness) in found {
        match kind {
            WordKind::X => entries.push(CatalogEntry { class: LoopClass::X(canon_x(&word)?), selfint, witness }),
            WordKind::V => {
                for h in [Hemisphere::North, Hemisphere::South] {
                    let class = LoopClass::V(canon_v(&word, h)?);
                    entries.push(CatalogEntry { class, selfint, witness: witness.clone() });
                }
            }
        }
    }
    Ok(ClassCatalog { n, k, length_cap: cap, entries })
}

/// Pairwise value as far as the compatibility cutoff needs it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum PairValue {
    /// Exact minimum, below the cutoff.
    Below { value: u32 },
    /// Every joint drawing has at least `cutoff` crossings.
    AtLeast { cutoff: u32 },
    /// The search budget ran out; `upper` is the best drawing seen, if any
    /// was below the cutoff.
    Unknown { upper: Option<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatibilityGraph {
    pub k: u64,
    pub vertices: usize,
    /// `(i, j, value)` for `i < j`, in lexicographic order.
    pub pairs: Vec<(usize, usize, PairValue)>,
}

impl CompatibilityGraph {
    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        matches!(self.value(i, j), Some(PairValue::Below { .. }))
    }

    pub fn value(&self, i: usize, j: usize) -> Option<PairValue> {
        let (i, j) = (i.min(j), i.max(j));
        self.pairs.binary_search_by(|p| (p.0, p.1).cmp(&(i, j))).ok().map(|at| self.pairs[at].2)
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.iter().filter(|p| matches!(p.2, PairValue::Below { .. })).count()
    }

    pub fn exact(&self) -> bool {
        !self.pairs.iter().any(|p| matches!(p.2, PairValue::Unknown { .. }))
    }

    fn adjacency(&self, include_unknown: bool) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.vertices]; self.vertices];
        for &(i, j, v) in &self.pairs {
            let e = match v {
                PairValue::Below { .. } => true,
                PairValue::Unknown { .. } => include_unknown,
                PairValue::AtLeast { .. } => false,
            };
            adj[i][j] = e;
            adj[j][i] = e;
        }
        adj
    }
}

/// Edge `(i, j)` iff the classes can be drawn with fewer than `k` crossings
/// between them.
pub fn compatibility_graph(catalog: &ClassCatalog, budget: u64) -> Result<CompatibilityGraph> {
    let classes: Vec<&LoopClass> = catalog.entries.iter().map(|e| &e.class).collect();
    let k = catalog.k.min(u32::MAX as u64) as u32;
    let idx: Vec<(usize, usize)> =
        (0..classes.len()).flat_map(|i| (i + 1..classes.len()).map(move |j| (i, j))).collect();
    let pairs: Result<Vec<(usize, usize, PairValue)>> = idx
        .into_par_iter()
        .map(|(i, j)| {
            let v = match pair_intersection_below(classes[i], classes[j], budget, k)? {
                Search::Exact(value, _) => PairValue::Below { value },
                Search::AtLeast(cutoff) => PairValue::AtLeast { cutoff },
                Search::Inexact(v, _) => PairValue::Unknown { upper: Some(v) },
                Search::Unknown => PairValue::Unknown { upper: None },
            };
            Ok((i, j, v))
        })
        .collect();
    Ok(CompatibilityGraph { k: catalog.k, vertices: classes.len(), pairs: pairs? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyBounds {
    /// Size of a clique over certain edges.
    pub clique_found: usize,
    /// Clique number over certain and undecided edges, when the exact search
    /// finished.
    pub clique_upper: Option<usize>,
    pub members: Vec<usize>,
    pub exact: bool,
}

struct CliqueSearch<'a> {
    adj: &'a [Vec<bool>],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, candidates: Vec<usize>) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if candidates.is_empty() {
            if current.len() > self.best.len() {
                self.best = current.clone();
            }
            return true;
        }
        // Greedy colouring bound.
        let mut colours: Vec<Vec<usize>> = Vec::new();
        let mut bound_at = Vec::with_capacity(candidates.len());
        for &v in &candidates {
            let slot = colours.iter().position(|c| c.iter().all(|&u| !self.adj[u][v]));
            match slot {
                Some(s) => colours[s].push(v),
                None => colours.push(vec![v]),
            }
            bound_at.push(colours.len());
        }
        for pos in (0..candidates.len()).rev() {
            if current.len() + bound_at[pos] <= self.best.len() {
                return true;
            }
            let v = candidates[pos];
            let next: Vec<usize> = candidates[..pos].iter().copied().filter(|&u| self.adj[v][u]).collect();
            current.push(v);
            let ok = self.expand(current, next);
            current.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

fn greedy_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].iter().filter(|&&e| e).count()));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
        }
    }
    clique.sort_unstable();
    clique
}

fn max_clique(adj: &[Vec<bool>], budget: u64) -> (Vec<usize>, bool) {
    let mut s = CliqueSearch { adj, best: greedy_clique(adj), nodes: 0, budget };
    let done = s.expand(&mut Vec::new(), (0..adj.len()).collect());
    let mut best = s.best;
    best.sort_unstable();
    (best, done)
}

pub const CLIQUE_BUDGET: u64 = 10_000_000;

/// Clique bounds for the compatibility graph.
pub fn family_bounds(graph: &CompatibilityGraph, budget: u64) -> FamilyBounds {
    let (found, found_done) = max_clique(&graph.adjacency(false), budget);
    let (upper, upper_done) = if graph.exact() {
        (found.len(), found_done)
    } else {
        let (u, d) = max_clique(&graph.adjacency(true), budget);
        (u.len(), d)
    };
    FamilyBounds {
        clique_found: found.len(),
        clique_upper: upper_done.then_some(upper),
        members: found,
        exact: found_done && upper_done && graph.exact(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GrowthRow {
    pub k: u64,
    pub class_count_n2: usize,
    pub class_count_n2_low: usize,
    pub ln_count_over_sqrt_k: f64,
    pub class_count_n1: usize,
    pub f_upper_n1: String,
    pub ptt_upper_exponent_n2: String,
    pub ptt_lower_exponent_n2: f64,
    pub exact: bool,
}

/// Class counts for `k = 1..=kmax` next to the closed-form bounds. This is a
/// consistency report only; nothing asymptotic is asserted.
pub fn growth_report(kmax: u64, config: EnumerationConfig) -> Result<Vec<GrowthRow>> {
    let mut rows = Vec::new();
    for k in 1..=kmax {
        let two = enumerate_classes(2, k, EnumerationConfig { length_cap: None, ..config })?;
        let one = enumerate_classes(1, k, EnumerationConfig { length_cap: None, ..config })?;
        let b2 = analytic_bounds(2, k)?;
        let b1 = analytic_bounds(1, k)?;
        let count = two.class_count();
        rows.push(GrowthRow {
            k,
            class_count_n2: count,
            class_count_n2_low: two.class_count_low(),
            ln_count_over_sqrt_k: (count as f64).ln() / (k as f64).sqrt(),
            class_count_n1: one.class_count(),
            f_upper_n1: b1.f_upper_n1.unwrap_or_default(),
            ptt_upper_exponent_n2: b2.ptt_upper.exponent,
            ptt_lower_exponent_n2: b2.ptt_lower_case1.map(|c| c.approx_exponent).unwrap_or(0.0),
            exact: true,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_BUDGET;

    fn cfg() -> EnumerationConfig {
        EnumerationConfig { budget: DEFAULT_BUDGET, length_cap: None }
    }

    #[test]
    fn caps() {
        assert_eq!(length_cap(1, 2).unwrap(), 25);
        assert_eq!(length_cap(2, 2).unwrap(), 37);
        assert_eq!(length_cap(3, 2).unwrap(), 49);
        assert_eq!(length_cap(1, 1).unwrap(), 4);
        assert!(length_cap(1, 3).is_err());
    }

    #[test]
    fn n1_counts() {
        assert_eq!(enumerate_classes(1, 1, cfg()).unwrap().class_count(), 3);
        assert_eq!(enumerate_classes(1, 2, cfg()).unwrap().class_count(), 5);
    }

    #[test]
    fn n2_k1() {
        let c = enumerate_classes(2, 1, cfg()).unwrap();
        let words: Vec<String> = c.entries.iter().map(|e| e.word().to_string()).collect();
        assert!(words.contains(&"v v".to_string()));
        assert!(words.contains(&"v 2 v".to_string()));
    }

    #[test]
    fn cliques() {
        let complete = vec![vec![true, true, true], vec![true, true, true], vec![true, true, true]];
        let mut adj = complete.clone();
        for (i, row) in adj.iter_mut().enumerate() {
            row[i] = false;
        }
        assert_eq!(max_clique(&adj, CLIQUE_BUDGET).0.len(), 3);
        let empty = vec![vec![false; 4]; 4];
        assert_eq!(max_clique(&empty, CLIQUE_BUDGET).0.len(), 1);
    }
}
