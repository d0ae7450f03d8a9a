//! Report records emitted by the command-line tool. Every record carries an
//! `exact` flag; big integers are decimal strings.

use serde::Serialize;

use crate::bounds::{analytic_bounds, BoundsReport};
use crate::cache::Oracle;
use crate::canon::{canon_v, canon_x, equivalent, LoopClass};
use crate::error::{Error, Result};
use crate::expansion::{count_row, count_vectors_exact, decompose, CountRow, PairVector};
use crate::extremal::{
    compatibility_graph, enumerate_classes, family_bounds, growth_report, CatalogLine, EnumerationConfig, GrowthRow,
    PairValue, CLIQUE_BUDGET,
};
use crate::oracle::{pair_intersection_number, Drawing};
use crate::word::{parse_word, reduce_word, GapAlphabet, Hemisphere, Word, WordKind};

pub fn parse(text: &str, n: u16) -> Result<Word> {
    let alphabet = GapAlphabet::with_basepoint(n)?;
    let w = parse_word(text, &alphabet)?;
    alphabet.validate(&w)?;
    Ok(w)
}

pub fn class_of(word: &Word, hemisphere: Hemisphere) -> Result<LoopClass> {
    Ok(match word.kind() {
        WordKind::X => LoopClass::X(canon_x(word)?),
        WordKind::V => LoopClass::V(canon_v(word, hemisphere)?),
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReduceReport {
    pub input: String,
    pub reduced: String,
    pub stripped_prefix_parity: u8,
    pub exact: bool,
}

pub fn reduce(text: &str, n: u16) -> Result<ReduceReport> {
    let w = parse(text, n)?;
    let r = reduce_word(&w);
    Ok(ReduceReport {
        input: w.to_string(),
        reduced: r.word.to_string(),
        stripped_prefix_parity: r.stripped_prefix_parity,
        exact: true,
    })
}

#[derive(Serialize)]
pub struct CanonReport {
    pub word: String,
    pub class: LoopClass,
    pub exact: bool,
}

pub fn canon(text: &str, n: u16, hemisphere: Hemisphere) -> Result<CanonReport> {
    let w = parse(text, n)?;
    let class = class_of(&w, hemisphere)?;
    Ok(CanonReport { word: class.word().to_string(), class, exact: true })
}

#[derive(Serialize)]
pub struct EquivReport {
    pub first: LoopClass,
    pub second: LoopClass,
    pub equivalent: bool,
    pub exact: bool,
}

pub fn equiv(a: &str, ha: Hemisphere, b: &str, hb: Hemisphere, n: u16) -> Result<EquivReport> {
    let first = class_of(&parse(a, n)?, ha)?;
    let second = class_of(&parse(b, n)?, hb)?;
    let equivalent = equivalent(&first, &second)?;
    Ok(EquivReport { first, second, equivalent, exact: true })
}

#[derive(Serialize)]
pub struct CrossingReport {
    pub word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<String>,
    pub value: u32,
    pub exact: bool,
    pub witness: Drawing,
}

pub fn selfint(text: &str, n: u16, oracle: &Oracle) -> Result<CrossingReport> {
    let w = parse(text, n)?;
    let r = oracle.self_intersection(&w)?;
    Ok(CrossingReport { word: w.to_string(), other: None, value: r.value, exact: r.exact, witness: r.witness })
}

pub fn pairint(a: &str, ha: Hemisphere, b: &str, hb: Hemisphere, n: u16, budget: u64) -> Result<CrossingReport> {
    let first = class_of(&parse(a, n)?, ha)?;
    let second = class_of(&parse(b, n)?, hb)?;
    let r = pair_intersection_number(&first, &second, budget)?;
    Ok(CrossingReport {
        word: first.word().to_string(),
        other: Some(second.word().to_string()),
        value: r.value,
        exact: r.exact,
        witness: r.witness,
    })
}

pub fn bounds(n: u64, k: u64) -> Result<BoundsReport> {
    analytic_bounds(n, k)
}

#[derive(Serialize)]
pub struct DecomposeReport {
    pub word: String,
    pub core: String,
    pub vectors: Vec<PairVector>,
    pub exact: bool,
}

pub fn decompose_word(text: &str, n: u16) -> Result<DecomposeReport> {
    let w = parse(text, n)?;
    let d = decompose(&w)?;
    Ok(DecomposeReport { word: w.to_string(), core: d.core.to_string(), vectors: d.vectors, exact: true })
}

#[derive(Serialize)]
pub struct CountReport {
    pub l: u64,
    pub k: u64,
    pub count: String,
    pub exact: bool,
}

pub fn count_expansions(l: u64, k: u64) -> Result<CountReport> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(CountReport { l, k, count: count_vectors_exact(l, k).to_string(), exact: true })
}

/// Rows for every `ℓ' <= l`, `k' <= k`.
pub fn count_sweep(l: u64, k: u64) -> Result<Vec<CountRow>> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok((0..=l).flat_map(|a| (1..=k).map(move |b| count_row(a, b))).collect())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerateReport {
    pub n: u16,
    pub k: u64,
    pub length_cap: usize,
    pub class_count: usize,
    pub class_count_low: usize,
    pub classes: Vec<CatalogLine>,
    pub exact: bool,
}

pub fn enumerate(n: u16, k: u64, config: EnumerationConfig) -> Result<EnumerateReport> {
    let c = enumerate_classes(n, k, config)?;
    Ok(EnumerateReport {
        n,
        k,
        length_cap: c.length_cap,
        class_count: c.class_count(),
        class_count_low: c.class_count_low(),
        classes: c.lines(),
        exact: true,
    })
}

#[derive(Serialize)]
pub struct PairLine {
    pub first: String,
    pub second: String,
    #[serde(flatten)]
    pub value: PairValue,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphReport {
    pub n: u16,
    pub k: u64,
    pub vertices: Vec<String>,
    pub edge_count: usize,
    pub pairs: Vec<PairLine>,
    pub clique_found: usize,
    pub clique_upper: Option<usize>,
    pub clique: Vec<String>,
    pub exact: bool,
}

fn vertex_label(line: &CatalogLine) -> String {
    match line.polarity {
        Some(h) => format!("{} {h}", line.word),
        None => line.word.clone(),
    }
}

pub fn graph(n: u16, k: u64, config: EnumerationConfig) -> Result<GraphReport> {
    let catalog = enumerate_classes(n, k, config)?;
    let g = compatibility_graph(&catalog, config.budget)?;
    let fb = family_bounds(&g, CLIQUE_BUDGET);
    let labels: Vec<String> = catalog.lines().iter().map(vertex_label).collect();
    Ok(GraphReport {
        n,
        k,
        edge_count: g.edge_count(),
        pairs: g
            .pairs
            .iter()
            .map(|&(i, j, value)| PairLine { first: labels[i].clone(), second: labels[j].clone(), value })
            .collect(),
        clique_found: fb.clique_found,
        clique_upper: fb.clique_upper,
        clique: fb.members.iter().map(|&i| labels[i].clone()).collect(),
        exact: fb.exact,
        vertices: labels,
    })
}

pub fn growth(kmax: u64, config: EnumerationConfig) -> Result<Vec<GrowthRow>> {
    growth_report(kmax, config)
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub kind: &'static str,
    pub message: String,
}

impl ErrorReport {
    pub fn from_error(e: &Error) -> Self {
        let kind = match e {
            Error::BudgetExhausted(_) => "budget",
            Error::Io(_) => "io",
            _ => "precondition",
        };
        ErrorReport { error: ErrorBody { kind, message: e.to_string() }, exact: false }
    }
}
