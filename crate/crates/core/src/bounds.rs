//! Computable lower bounds on intersection numbers (windings, snails, forced
//! arc crossings) and evaluators for closed-form bounds on family sizes.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{maximal_two_letter_words, orientation, GapPoint, Hemisphere, Span, Word, WordKind};

/// Whether two same-polarity segments `a0 a1 .. a_{k+1}` and `b0 b1 .. b_{k+1}`
/// that agree in the middle letters are forced to cross.
pub fn forced_arc_intersection(a: &[GapPoint], b: &[GapPoint], same_polarity: bool) -> Result<bool> {
    if !same_polarity {
        return Err(Error::Hypothesis("segments must have the same polarity".into()));
    }
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::Hypothesis("segments must have equal length at least 2".into()));
    }
    if !points_aa_free(a) || !points_aa_free(b) {
        return Err(Error::NotReduced);
    }
    let k = a.len() - 2;
    if a[1..=k] != b[1..=k] {
        return Err(Error::Hypothesis("middle letters differ".into()));
    }
    if a[0] == b[0] || a[k + 1] == b[k + 1] {
        return Err(Error::Hypothesis("end letters coincide".into()));
    }
    let start = orientation(a[0], b[0], a[1]);
    let end = orientation(a[k], b[k + 1], a[k + 1]);
    match (start, end) {
        (Ok(s), Ok(e)) => Ok(if k.is_multiple_of(2) { s != e } else { s == e }),
        // A degenerate triple (an end letter repeating a middle one) leaves
        // the orientation undefined; nothing is forced.
        _ => Ok(false),
    }
}

fn points_aa_free(p: &[GapPoint]) -> bool {
    p.windows(2).all(|w| w[0] != w[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WindingForm {
    /// `(ab)^s a`
    AbA,
    /// `(ba)^s b`
    BaB,
    /// `(ab)^(s+1)`
    AbAb,
    /// `(ba)^(s+1)`
    BaBa,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Winding {
    /// Obstacle index; 0 is the point at infinity.
    pub obstacle: u16,
    pub s: u32,
    /// Span of the alternating block in the inner letters.
    pub span: Span,
    pub form: WindingForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snail {
    /// Signed depth: positive for `(01)^s`, negative for `(10)^|s|`.
    pub s: i32,
    /// Tail of the alternating block: one of `0`, `1`, `01`, `10`.
    pub tail: Vec<u16>,
    /// Exit letter, outside `{0, 1}`.
    pub exit: GapPoint,
    pub polarity: Hemisphere,
}

impl Snail {
    pub fn new(s: i32, tail: Vec<u16>, exit: GapPoint, polarity: Hemisphere) -> Result<Self> {
        let ok_tail = matches!(tail.as_slice(), [0] | [1] | [0, 1] | [1, 0]);
        if !ok_tail || matches!(exit, GapPoint::Gap(0) | GapPoint::Gap(1)) {
            return Err(Error::Hypothesis("snail tail or exit letter out of shape".into()));
        }
        let snail = Snail { s, tail, exit, polarity };
        if !points_aa_free(&snail.points()) {
            return Err(Error::NotReduced);
        }
        Ok(snail)
    }

    /// `v (01)^s tail exit`
    pub fn points(&self) -> Vec<GapPoint> {
        let pair = if self.s >= 0 { [0, 1] } else { [1, 0] };
        let mut p = vec![GapPoint::V];
        for _ in 0..self.s.unsigned_abs() {
            p.extend(pair.iter().map(|&l| GapPoint::Gap(l)));
        }
        p.extend(self.tail.iter().map(|&l| GapPoint::Gap(l)));
        p.push(self.exit);
        p
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Windings {
    pub windings: Vec<Winding>,
    pub snails: Vec<Snail>,
}

/// Gap pairs adjacent to each obstacle: `v_i` sits between gaps `i-1` and `i`,
/// the point at infinity between `n` and `0`.
pub fn obstacle_pairs(n: u16) -> Vec<(u16, u16, u16)> {
    let mut out: Vec<(u16, u16, u16)> = (1..=n).map(|i| (i, i - 1, i)).collect();
    if n >= 2 {
        out.push((0, 0, n));
    }
    out
}

fn snail_from(letters: &[u16], exit: GapPoint, polarity: Hemisphere) -> Snail {
    let j = letters.len();
    let depth = ((j - 1) / 2) as i32;
    let s = if letters[0] == 0 { depth } else { -depth };
    Snail { s, tail: letters[2 * depth as usize..].to_vec(), exit, polarity }
}

/// All windings of an αα-free word over `n` punctures, plus the snails at the
/// ends of a v-word (polarities taken with the first arc in the north).
pub fn find_windings(word: &Word, n: u16) -> Windings {
    let letters = word.letters();
    let last = letters.len().saturating_sub(1);
    let mut out = Windings::default();
    for (obstacle, a, b) in obstacle_pairs(n) {
        for span in maximal_two_letter_words(letters, a, b) {
            let touches_start = span.start == 0;
            let touches_end = span.end == last;
            if word.kind() == WordKind::V && obstacle == 1 && (touches_start || touches_end) {
                if touches_start && touches_end {
                    continue;
                }
                if touches_start {
                    out.snails.push(snail_from(
                        &letters[..=span.end],
                        GapPoint::Gap(letters[span.end + 1]),
                        Hemisphere::North,
                    ));
                } else {
                    let rev: Vec<u16> = letters[span.start..].iter().rev().copied().collect();
                    let polarity = Hemisphere::North.flipped_if(letters.len() % 2 == 1);
                    out.snails.push(snail_from(&rev, GapPoint::Gap(letters[span.start - 1]), polarity));
                }
                continue;
            }
            if word.kind() == WordKind::X && (touches_start || touches_end) {
                continue;
            }
            let len = span.len();
            if len < 3 {
                continue;
            }
            let s = ((len - 1) / 2) as u32;
            let first_is_a = letters[span.start] == a;
            let form = match (first_is_a, len % 2 == 1) {
                (true, true) => WindingForm::AbA,
                (false, true) => WindingForm::BaB,
                (true, false) => WindingForm::AbAb,
                (false, false) => WindingForm::BaBa,
            };
            out.windings.push(Winding { obstacle, s, span, form });
        }
    }
    out
}

/// `Σ s_i + 2 Σ_{i<j} min(s_i, s_j)` for one obstacle.
pub fn winding_sum(depths: &[u32]) -> u64 {
    let mut sorted: Vec<u64> = depths.iter().map(|&d| d as u64).collect();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.iter().enumerate().map(|(j, &s)| s * (2 * j as u64 + 1)).sum()
}

/// Per-obstacle winding bounds `(obstacle, Σ s_i + 2 Σ min(s_i, s_j))`.
pub fn winding_bounds_by_obstacle(word: &Word, n: u16) -> Vec<(u16, u64)> {
    let found = find_windings(word, n);
    let mut obstacles: Vec<u16> = found.windings.iter().map(|w| w.obstacle).collect();
    obstacles.sort_unstable();
    obstacles.dedup();
    obstacles
        .into_iter()
        .map(|o| {
            let depths: Vec<u32> = found.windings.iter().filter(|w| w.obstacle == o).map(|w| w.s).collect();
            (o, winding_sum(&depths))
        })
        .collect()
}

/// Lower bound on the self-intersection number from the windings of `word`:
/// the largest per-obstacle bound. Windings around different obstacles may
/// share arcs (`2 0 2 1 2` holds one around the point at infinity and one
/// around `v2`), so their bounds do not add up in general.
pub fn winding_self_lb(word: &Word, n: u16) -> u64 {
    winding_bounds_by_obstacle(word, n).into_iter().map(|(_, b)| b).max().unwrap_or(0)
}

/// Guaranteed number of crossings between two same-polarity snails.
pub fn snail_pair_lb(s1: &Snail, s2: &Snail) -> Result<u32> {
    if s1.polarity != s2.polarity {
        return Err(Error::Hypothesis("snails must have the same polarity".into()));
    }
    let (s, t) = (s1.s as i64, s2.s as i64);
    Ok(if s * t < 0 {
        s.abs().min(t.abs()) as u32
    } else if s * t > 0 && s1.exit != GapPoint::V && s2.exit != GapPoint::V {
        ((s - t).abs() - 1).max(0) as u32
    } else {
        0
    })
}

/// Size above which a same-polarity family of snail-shaped v-loops must
/// contain a pair with at least `k` crossings: `4(2k+1)^2`.
pub fn family_bound_snails(k: u64) -> Result<u64> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(4 * (2 * k + 1) * (2 * k + 1))
}

/// `2^exponent`, with the value spelled out only when it stays printable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PowerOfTwo {
    pub exponent: String,
    pub value: Option<String>,
}

/// `2^(sqrt(radicand) / divisor)`; `exponent` is the exact rational when the
/// radicand is a perfect square.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RootExponentPower {
    pub radicand: u64,
    pub divisor: u64,
    pub exponent: Option<String>,
    pub approx_exponent: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyRelation {
    /// f(n,k) <= multiplier * g(n, g_k)
    pub multiplier: String,
    pub g_k: u64,
    pub snail_threshold: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundsReport {
    pub n: u64,
    pub k: u64,
    /// g(n,k) <= f(n,k) <= g(n+1,k)
    pub sandwich: String,
    pub f_upper_n1: Option<String>,
    pub ptt_upper: PowerOfTwo,
    pub ptt_lower_case1: Option<RootExponentPower>,
    pub ptt_lower_case2: Option<String>,
    pub family_relation: FamilyRelation,
    pub exact: bool,
}

const MAX_PRINTED_EXPONENT: u64 = 4096;

fn reduced_fraction(num: BigUint, den: BigUint) -> String {
    let g = num.gcd(&den);
    let (num, den) = (num / &g, den / &g);
    if den.is_one() {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

/// Closed-form bounds on family sizes for the given parameters.
pub fn analytic_bounds(n: u64, k: u64) -> Result<BoundsReport> {
    if n < 1 || k < 1 {
        return Err(Error::Precondition("n and k must be at least 1".into()));
    }
    let exponent: BigUint = Pow::pow(BigUint::from(2 * k), 2 * n);
    let value = (exponent <= BigUint::from(MAX_PRINTED_EXPONENT)).then(|| {
        let e: u64 = exponent.iter_u64_digits().next().unwrap_or(0);
        (BigUint::one() << e).to_string()
    });
    let case1 = (n <= 2 * k).then(|| {
        let radicand = n * k;
        let root = radicand.sqrt();
        RootExponentPower {
            radicand,
            divisor: 3,
            exponent: (root * root == radicand).then(|| reduced_fraction(root.into(), 3u64.into())),
            approx_exponent: (radicand as f64).sqrt() / 3.0,
        }
    });
    let case2 = (n >= 2 * k).then(|| {
        let e = (k - 1) as u32;
        reduced_fraction(Pow::pow(BigUint::from(n), e), Pow::pow(BigUint::from(k), e))
    });
    Ok(BoundsReport {
        n,
        k,
        sandwich: format!("g({n},{k}) <= f({n},{k}) <= g({},{k})", n + 1),
        f_upper_n1: (n == 1).then(|| (2 * k + 1).to_string()),
        ptt_upper: PowerOfTwo { exponent: exponent.to_string(), value },
        ptt_lower_case1: case1,
        ptt_lower_case2: case2,
        family_relation: FamilyRelation {
            multiplier: (484 * k as u128 * k as u128).to_string(),
            g_k: 5 * k,
            snail_threshold: family_bound_snails(5 * k)?.to_string(),
        },
        exact: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, GapAlphabet};
    use GapPoint::{Gap, V};

    fn w(text: &str) -> Word {
        parse_word(text, &GapAlphabet::with_basepoint(3).unwrap()).unwrap()
    }

    #[test]
    fn forced_arcs() {
        assert!(forced_arc_intersection(&[Gap(0), Gap(1)], &[V, Gap(2)], true).unwrap());
        assert!(!forced_arc_intersection(&[Gap(0), Gap(1)], &[Gap(1), Gap(2)], true).unwrap());
        assert!(forced_arc_intersection(&[Gap(0), Gap(1)], &[Gap(2), Gap(1)], true).is_err());
        assert!(forced_arc_intersection(&[Gap(0), Gap(2)], &[Gap(1), Gap(2)], true).is_err());
        assert!(forced_arc_intersection(&[Gap(0), Gap(1)], &[V, Gap(2)], false).is_err());
        assert!(forced_arc_intersection(&[Gap(0), Gap(1), Gap(2)], &[Gap(2), Gap(0), Gap(2)], true).is_err());
    }

    #[test]
    fn windings_of_examples() {
        let found = find_windings(&w("v 2 0 1 0 2 1 2 v"), 2);
        // 212 at the end is bordered by 0 and v: a winding around v2.
        assert_eq!(found.windings.len(), 2);
        assert_eq!((found.windings[1].obstacle, found.windings[1].s), (2, 1));
        assert_eq!(found.windings[0].obstacle, 1);
        assert_eq!(found.windings[0].s, 1);
        assert_eq!(found.windings[0].form, WindingForm::AbA);
        let deep = find_windings(&w("v 2 0 1 0 1 0 1 2 v"), 2);
        assert_eq!(deep.windings.len(), 1);
        assert_eq!(deep.windings[0].s, 2);
        assert_eq!(deep.windings[0].form, WindingForm::AbAb);
        assert!(find_windings(&w("v 2 1 0 2 v"), 2).windings.is_empty());
        assert_eq!(find_windings(&w("v 2 0 2 v"), 2).windings[0].obstacle, 0);
        assert!(find_windings(&w("0 1 0 1"), 1).windings.is_empty());
    }

    #[test]
    fn snails_at_the_ends() {
        let found = find_windings(&w("v 0 1 0 2 1 0 1 v"), 2);
        assert_eq!(found.windings.len(), 0);
        assert_eq!(found.snails.len(), 2);
        assert_eq!(found.snails[0].s, 1);
        assert_eq!(found.snails[0].tail, vec![0]);
        assert_eq!(found.snails[0].exit, Gap(2));
        assert_eq!(found.snails[1].s, -1);
        assert_eq!(found.snails[1].tail, vec![1]);
        assert_eq!(found.snails[1].polarity, Hemisphere::South);
    }

    #[test]
    fn winding_sums() {
        assert_eq!(winding_sum(&[1]), 1);
        assert_eq!(winding_sum(&[1, 1]), 4);
        assert_eq!(winding_sum(&[]), 0);
        assert_eq!(winding_sum(&[2, 1]), 5);
        // Two 1-windings around v1 and 020 around the point at infinity.
        assert_eq!(winding_bounds_by_obstacle(&w("v 2 0 1 0 2 0 1 0 2 v"), 2), vec![(0, 1), (1, 4)]);
        assert_eq!(winding_self_lb(&w("v 2 0 1 0 2 0 1 0 2 v"), 2), 4);
    }

    #[test]
    fn snail_pairs() {
        let mk = |s, exit| Snail::new(s, vec![if s >= 0 { 0 } else { 1 }], exit, Hemisphere::North).unwrap();
        assert_eq!(snail_pair_lb(&mk(2, Gap(2)), &mk(-1, Gap(2))).unwrap(), 1);
        assert_eq!(snail_pair_lb(&mk(5, Gap(2)), &mk(2, Gap(2))).unwrap(), 2);
        assert_eq!(snail_pair_lb(&mk(0, Gap(2)), &mk(3, Gap(2))).unwrap(), 0);
        assert_eq!(snail_pair_lb(&mk(5, V), &mk(2, Gap(2))).unwrap(), 0);
        let south = Snail::new(1, vec![0], Gap(2), Hemisphere::South).unwrap();
        assert!(snail_pair_lb(&mk(1, Gap(2)), &south).is_err());
    }

    #[test]
    fn snail_family_threshold() {
        assert_eq!(family_bound_snails(1).unwrap(), 36);
        assert_eq!(family_bound_snails(2).unwrap(), 100);
        assert_eq!(family_bound_snails(5).unwrap(), 484);
        assert!(family_bound_snails(0).is_err());
    }

    #[test]
    fn closed_forms() {
        let r = analytic_bounds(1, 3).unwrap();
        assert_eq!(r.f_upper_n1.as_deref(), Some("7"));
        let r = analytic_bounds(2, 1).unwrap();
        assert_eq!(r.ptt_upper.exponent, "16");
        assert_eq!(r.ptt_upper.value.as_deref(), Some("65536"));
        assert_eq!(r.ptt_lower_case2.as_deref(), Some("1"));
        let r = analytic_bounds(2, 8).unwrap();
        assert_eq!(r.ptt_lower_case1.unwrap().exponent.as_deref(), Some("4/3"));
        assert_eq!(r.ptt_upper.value, None);
        assert_eq!(r.ptt_upper.exponent, "65536");
        let r = analytic_bounds(6, 2).unwrap();
        assert_eq!(r.ptt_lower_case2.as_deref(), Some("3"));
        assert_eq!(r.family_relation.multiplier, "1936");
        assert_eq!(r.family_relation.snail_threshold, "1764");
    }
}
