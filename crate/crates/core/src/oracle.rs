//! Exact minimal (self-)intersection numbers by exhaustive search over
//! chord-diagram drawings.
//!
//! Cutting the sphere along the equator leaves two disks. A drawing of a set
//! of curves is fixed by the linear order of the crossing points inside each
//! gap; every arc becomes a straight chord of the disk of its hemisphere, and
//! two chords of one disk cross (exactly once) iff their endpoints interleave
//! on the boundary circle. Chords meeting at the basepoint `V` never count,
//! and neither do the closing chords of two x-loops, which meet only at their
//! common basepoint.

use serde::{Deserialize, Serialize};

use crate::canon::LoopClass;
use crate::error::{Error, Result};
use crate::word::{GapPoint, Hemisphere, Word, WordKind};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A (possibly open) curve given by the gap points it visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub points: Vec<GapPoint>,
    /// Hemisphere of the chord between `points[0]` and `points[1]`.
    pub polarity: Hemisphere,
    /// Adds a chord from the last point back to the first (x-loops).
    pub closed: bool,
}

impl Curve {
    /// The curve of a loop inducing `word` whose first arc lies in `first_arc`.
    /// For x-words, `first_arc` is the basepoint's hemisphere.
    pub fn from_word(word: &Word, first_arc: Hemisphere) -> Self {
        match word.kind() {
            WordKind::V => Curve { points: word.points(), polarity: first_arc, closed: false },
            WordKind::X => Curve { points: word.points(), polarity: first_arc.flip(), closed: true },
        }
    }

    /// An open segment through `points` with first arc in `polarity`.
    pub fn segment(points: Vec<GapPoint>, polarity: Hemisphere) -> Self {
        Curve { points, polarity, closed: false }
    }

    fn chords(&self) -> Vec<(usize, usize, Hemisphere, bool)> {
        let m = self.points.len();
        let mut out = Vec::new();
        for j in 0..m.saturating_sub(1) {
            out.push((j, j + 1, self.polarity.flipped_if(j % 2 == 1), false));
        }
        if self.closed && m >= 2 {
            out.push((m - 1, 0, self.polarity.flipped_if((m - 1) % 2 == 1), true));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CountMode {
    /// Every crossing, including those of a curve with itself.
    All,
    /// Only crossings between different curves.
    Between,
}

/// A crossing point: curve id and index into that curve's point sequence
/// (for v-words the sequence is `v w1 ... wt v`).
pub type PointRef = (u16, u16);

/// Linear order of the crossing points inside each gap, indexed by gap label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Drawing {
    pub gaps: Vec<Vec<PointRef>>,
}

impl Drawing {
    /// Relabel the points of curve `curve` for the reversed traversal.
    pub fn reverse_curve(&self, curve: u16, len: u16) -> Drawing {
        let gaps = self
            .gaps
            .iter()
            .map(|g| g.iter().map(|&(c, i)| if c == curve { (c, len - 1 - i) } else { (c, i) }).collect())
            .collect();
        Drawing { gaps }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingCount {
    pub value: u32,
    /// False when the search budget ran out; `value` is then an upper bound.
    pub exact: bool,
    pub witness: Drawing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    V,
    P(u16),
}

#[derive(Clone, Copy, Debug)]
struct Chord {
    a: End,
    b: End,
    hemi: Hemisphere,
    curve: u16,
    closing: bool,
}

impl Chord {
    fn touches_v(&self) -> bool {
        self.a == End::V || self.b == End::V
    }
}

fn exempt(c: &Chord, d: &Chord) -> bool {
    (c.touches_v() && d.touches_v()) || (c.closing && d.closing && c.curve != d.curve)
}

fn counted(mode: CountMode, c: &Chord, d: &Chord) -> bool {
    c.hemi == d.hemi && !exempt(c, d) && (mode == CountMode::All || c.curve != d.curve)
}

/// Boundary coordinates: placed point at global index `i` sits at `4i + 4`,
/// `V` at `4 * len(gap 0) + 2`.
pub(crate) struct Coords {
    pub(crate) of_point: Vec<u32>,
    pub(crate) v: u32,
}

#[inline]
fn coord(c: &Coords, e: End) -> u32 {
    match e {
        End::V => c.v,
        End::P(id) => c.of_point[id as usize],
    }
}

#[inline]
fn interleave(a1: u32, a2: u32, b1: u32, b2: u32) -> bool {
    if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
        return false;
    }
    let (lo, hi) = if a1 < a2 { (a1, a2) } else { (a2, a1) };
    ((lo < b1) && (b1 < hi)) != ((lo < b2) && (b2 < hi))
}

/// Placement of points: concatenated gap orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Arrangement {
    pub(crate) order: Vec<u16>,
    pub(crate) gap_len: Vec<u16>,
}

impl Arrangement {
    pub(crate) fn new(gaps: usize) -> Self {
        Self { order: Vec::new(), gap_len: vec![0; gaps] }
    }

    pub(crate) fn gap_start(&self, g: usize) -> usize {
        self.gap_len[..g].iter().map(|&l| l as usize).sum()
    }

    pub(crate) fn coords(&self, n_points: usize) -> Coords {
        let mut of_point = vec![0; n_points];
        for (i, &id) in self.order.iter().enumerate() {
            of_point[id as usize] = 4 * i as u32 + 4;
        }
        let v = 4 * self.gap_len.first().copied().unwrap_or(0) as u32 + 2;
        Coords { of_point, v }
    }

    /// Coordinate a new point would get at `slot` of gap `g`.
    pub(crate) fn slot_coord(&self, g: usize, slot: usize) -> u32 {
        let idx = (self.gap_start(g) + slot) as u32;
        if g == 0 {
            4 * idx + 1
        } else {
            4 * idx + 3
        }
    }

    pub(crate) fn insert(&mut self, g: usize, slot: usize, id: u16) {
        let at = self.gap_start(g) + slot;
        self.order.insert(at, id);
        self.gap_len[g] += 1;
    }

    pub(crate) fn remove(&mut self, g: usize, slot: usize) {
        let at = self.gap_start(g) + slot;
        self.order.remove(at);
        self.gap_len[g] -= 1;
    }
}

/// New chord at a step paired with the earlier chords it may cross.
struct StepPairs {
    new: Vec<(Chord, Vec<Chord>)>,
}

/// Precomputed search problem for a fixed list of curves.
pub(crate) struct Instance {
    /// (curve, index in curve, gap) for every point that lives in a gap.
    points: Vec<(u16, u16, u16)>,
    /// Placement order (point ids).
    order: Vec<u16>,
    steps: Vec<StepPairs>,
    gaps: usize,
}

impl Instance {
    pub(crate) fn new(curves: &[Curve], mode: CountMode) -> Self {
        let mut points = Vec::new();
        let mut ids: Vec<Vec<End>> = Vec::new();
        let mut gaps = 0usize;
        for (ci, c) in curves.iter().enumerate() {
            let mut row = Vec::new();
            for (pi, p) in c.points.iter().enumerate() {
                match p {
                    GapPoint::V => row.push(End::V),
                    GapPoint::Gap(g) => {
                        row.push(End::P(points.len() as u16));
                        points.push((ci as u16, pi as u16, *g));
                        gaps = gaps.max(*g as usize + 1);
                    }
                }
            }
            ids.push(row);
        }
        // Round-robin over curves in traversal order.
        let mut order = Vec::with_capacity(points.len());
        let longest = ids.iter().map(|r| r.len()).max().unwrap_or(0);
        for j in 0..longest {
            for row in &ids {
                if let Some(End::P(id)) = row.get(j) {
                    order.push(*id);
                }
            }
        }
        let mut step_of = vec![0usize; points.len()];
        for (s, &id) in order.iter().enumerate() {
            step_of[id as usize] = s;
        }
        let mut chords = Vec::new();
        for (ci, c) in curves.iter().enumerate() {
            for (a, b, hemi, closing) in c.chords() {
                let (ea, eb) = (ids[ci][a], ids[ci][b]);
                if ea == End::V && eb == End::V {
                    continue;
                }
                chords.push(Chord { a: ea, b: eb, hemi, curve: ci as u16, closing });
            }
        }
        let ready = |c: &Chord| -> usize {
            let s = |e: End| match e {
                End::V => 0,
                End::P(id) => step_of[id as usize],
            };
            s(c.a).max(s(c.b))
        };
        let mut steps: Vec<StepPairs> = (0..order.len()).map(|_| StepPairs { new: vec![] }).collect();
        for c in &chords {
            let sc = ready(c);
            let earlier: Vec<Chord> = chords.iter().filter(|d| ready(d) < sc && counted(mode, c, d)).copied().collect();
            steps[sc].new.push((*c, earlier));
        }
        // Chords that become ready together touch the same new point, so they
        // sit in different hemispheres or share V; none of them cross.
        Instance { points, order, steps, gaps }
    }

    fn delta(&self, step: usize, arr: &Arrangement, coords: &mut Coords, slot: usize) -> u32 {
        let id = self.order[step];
        let g = self.points[id as usize].2 as usize;
        coords.of_point[id as usize] = arr.slot_coord(g, slot);
        let mut d = 0;
        for (c, others) in &self.steps[step].new {
            let (c1, c2) = (coord(coords, c.a), coord(coords, c.b));
            for o in others {
                if interleave(c1, c2, coord(coords, o.a), coord(coords, o.b)) {
                    d += 1;
                }
            }
        }
        d
    }

    /// Costs of every slot for the point placed at `step`.
    pub(crate) fn slot_costs(&self, step: usize, arr: &Arrangement) -> Vec<u32> {
        let id = self.order[step];
        let g = self.points[id as usize].2 as usize;
        let mut coords = arr.coords(self.points.len());
        (0..=arr.gap_len[g] as usize).map(|s| self.delta(step, arr, &mut coords, s)).collect()
    }

    pub(crate) fn gap_of_step(&self, step: usize) -> usize {
        self.points[self.order[step] as usize].2 as usize
    }

    pub(crate) fn id_of_step(&self, step: usize) -> u16 {
        self.order[step]
    }

    pub(crate) fn steps(&self) -> usize {
        self.order.len()
    }

    pub(crate) fn drawing(&self, arr: &Arrangement) -> Drawing {
        let mut gaps: Vec<Vec<PointRef>> = vec![Vec::new(); self.gaps];
        let mut at = 0;
        for (g, &len) in arr.gap_len.iter().enumerate() {
            for &id in &arr.order[at..at + len as usize] {
                let (c, i, _) = self.points[id as usize];
                gaps[g].push((c, i));
            }
            at += len as usize;
        }
        Drawing { gaps }
    }

    /// Total crossing count of a complete arrangement.
    pub(crate) fn total(&self, arr: &Arrangement) -> u32 {
        let coords = arr.coords(self.points.len());
        let mut total = 0;
        for st in &self.steps {
            for (c, others) in &st.new {
                let (c1, c2) = (coord(&coords, c.a), coord(&coords, c.b));
                total += others.iter().filter(|o| interleave(c1, c2, coord(&coords, o.a), coord(&coords, o.b))).count()
                    as u32;
            }
        }
        total
    }
}

/// Result of a bounded minimisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    /// The exact minimum with a witness.
    Exact(u32, Drawing),
    /// Every drawing has at least `cutoff` crossings.
    AtLeast(u32),
    /// Budget ran out; best drawing found so far.
    Inexact(u32, Drawing),
    /// Budget ran out before any drawing below the cutoff was seen.
    Unknown,
}

struct Searcher<'a> {
    inst: &'a Instance,
    arr: Arrangement,
    best: u32,
    best_arr: Option<Arrangement>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Searcher<'_> {
    fn dfs(&mut self, step: usize, cost: u32) {
        if step == self.inst.steps() {
            if cost < self.best {
                self.best = cost;
                self.best_arr = Some(self.arr.clone());
            }
            return;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let g = self.inst.gap_of_step(step);
        let id = self.inst.id_of_step(step);
        let costs = self.inst.slot_costs(step, &self.arr);
        let mut slots: Vec<(u32, usize)> = costs.into_iter().zip(0..).collect();
        slots.sort();
        for (d, s) in slots {
            if cost + d >= self.best || self.exhausted {
                break;
            }
            self.arr.insert(g, s, id);
            self.dfs(step + 1, cost + d);
            self.arr.remove(g, s);
        }
    }

    fn greedy(&mut self) {
        let mut arr = Arrangement::new(self.inst.gaps);
        let mut cost = 0;
        for step in 0..self.inst.steps() {
            let costs = self.inst.slot_costs(step, &arr);
            let (s, d) = costs.iter().enumerate().min_by_key(|(_, &d)| d).map(|(s, &d)| (s, d)).unwrap();
            arr.insert(self.inst.gap_of_step(step), s, self.inst.id_of_step(step));
            cost += d;
        }
        if cost < self.best {
            self.best = cost;
            self.best_arr = Some(arr);
        }
    }
}

pub(crate) fn minimize(inst: &Instance, budget: u64, cutoff: Option<u32>) -> Search {
    let mut s = Searcher {
        inst,
        arr: Arrangement::new(inst.gaps),
        best: cutoff.unwrap_or(u32::MAX),
        best_arr: None,
        nodes: 0,
        budget,
        exhausted: false,
    };
    s.greedy();
    s.dfs(0, 0);
    match (s.best_arr, s.exhausted) {
        (Some(a), false) => Search::Exact(s.best, inst.drawing(&a)),
        (Some(a), true) => Search::Inexact(s.best, inst.drawing(&a)),
        (None, false) => Search::AtLeast(cutoff.unwrap_or(0)),
        (None, true) => Search::Unknown,
    }
}

/// Minimum crossing count over all drawings of `curves`.
pub fn minimize_curves(curves: &[Curve], mode: CountMode, budget: u64) -> CrossingCount {
    let inst = Instance::new(curves, mode);
    match minimize(&inst, budget, None) {
        Search::Exact(value, witness) => CrossingCount { value, exact: true, witness },
        Search::Inexact(value, witness) => CrossingCount { value, exact: false, witness },
        Search::AtLeast(_) | Search::Unknown => unreachable!("greedy always yields a drawing"),
    }
}

/// Whether every drawing of `curves` has at least `cutoff` crossings; if not,
/// the exact minimum.
pub fn minimize_curves_below(curves: &[Curve], mode: CountMode, budget: u64, cutoff: u32) -> Search {
    minimize(&Instance::new(curves, mode), budget, Some(cutoff))
}

/// Number of crossings of a fixed drawing.
pub fn count_crossings(curves: &[Curve], drawing: &Drawing, mode: CountMode) -> Result<u32> {
    let inst = Instance::new(curves, mode);
    let mut lookup = std::collections::HashMap::new();
    for (id, &(c, i, g)) in inst.points.iter().enumerate() {
        lookup.insert((c, i), (id as u16, g));
    }
    let mut arr = Arrangement::new(inst.gaps);
    let mut seen = vec![false; inst.points.len()];
    for (g, order) in drawing.gaps.iter().enumerate() {
        for &pr in order {
            let (id, pg) = *lookup.get(&pr).ok_or_else(|| Error::MalformedDrawing(format!("unknown point {pr:?}")))?;
            if pg as usize != g {
                return Err(Error::MalformedDrawing(format!("point {pr:?} placed in gap {g}")));
            }
            if std::mem::replace(&mut seen[id as usize], true) {
                return Err(Error::MalformedDrawing(format!("point {pr:?} placed twice")));
            }
            arr.order.push(id);
            if g < arr.gap_len.len() {
                arr.gap_len[g] += 1;
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::MalformedDrawing("some points are not placed".into()));
    }
    Ok(inst.total(&arr))
}

/// Minimal self-intersection number of a loop inducing `word`.
///
/// The value does not depend on the hemisphere of the first arc (swapping the
/// disks keeps every interleaving), and it is invariant under reversal; the
/// search always runs on the lexicographically smaller orientation so that a
/// word and its reverse get the same witness up to relabelling.
pub fn self_intersection_number(word: &Word, budget: u64) -> CrossingCount {
    let (canon, reversed) = word.canonical_orientation();
    let r = minimize_curves(&[Curve::from_word(&canon, Hemisphere::North)], CountMode::All, budget);
    if reversed {
        let len = canon.points().len() as u16;
        CrossingCount { witness: r.witness.reverse_curve(0, len), ..r }
    } else {
        r
    }
}

fn pair_curves(c1: &LoopClass, c2: &LoopClass) -> Result<Vec<[Curve; 2]>> {
    if c1.kind() != c2.kind() {
        return Err(Error::KindMismatch);
    }
    let first = Curve::from_word(&c1.word(), c1.start_hemisphere());
    Ok(match c1.kind() {
        WordKind::V => vec![[first, Curve::from_word(&c2.word(), c2.start_hemisphere())]],
        WordKind::X => [Hemisphere::North, Hemisphere::South]
            .into_iter()
            .map(|h| [first.clone(), Curve::from_word(&c2.word(), h)])
            .collect(),
    })
}

/// Minimal number of crossings between loops of the two classes, drawn on the
/// canonical (reduced) words. For x-classes the basepoint hemisphere of the
/// second loop is free as well.
pub fn pair_intersection_number(c1: &LoopClass, c2: &LoopClass, budget: u64) -> Result<CrossingCount> {
    let mut best: Option<CrossingCount> = None;
    for curves in pair_curves(c1, c2)? {
        let r = minimize_curves(&curves, CountMode::Between, budget);
        best = match best {
            Some(b) if (b.value, !b.exact) <= (r.value, !r.exact) => Some(b),
            _ => Some(r),
        };
    }
    Ok(best.expect("at least one configuration"))
}

/// Like [`pair_intersection_number`] but stops at `cutoff`.
pub fn pair_intersection_below(c1: &LoopClass, c2: &LoopClass, budget: u64, cutoff: u32) -> Result<Search> {
    let mut best = Search::AtLeast(cutoff);
    let mut unknown = false;
    let mut inexact = false;
    for curves in pair_curves(c1, c2)? {
        let bound = match &best {
            Search::Exact(v, _) | Search::Inexact(v, _) => *v,
            _ => cutoff,
        };
        match minimize_curves_below(&curves, CountMode::Between, budget, bound) {
            Search::AtLeast(_) => {}
            Search::Unknown => unknown = true,
            r @ Search::Exact(..) => best = r,
            r @ Search::Inexact(..) => {
                inexact = true;
                best = r
            }
        }
    }
    if let (true, Search::Exact(v, d)) = (inexact || unknown, &best) {
        best = Search::Inexact(*v, d.clone());
    }
    if unknown && matches!(best, Search::AtLeast(_)) {
        best = Search::Unknown;
    }
    Ok(best)
}
