use loopforge::canon::{
    canon_v, canon_x, equivalent, from_free_group, to_free_group, Generator, GeneratorString, LoopClass,
};
use loopforge::word::{
    all_maximal_two_letter_words, free_reduce, maximal_two_letter_words, parse_word, reduce_word, GapAlphabet,
    Hemisphere, Word,
};
use loopforge::Error;
use proptest::prelude::*;

fn letters(n: u16, max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    proptest::collection::vec(0..=n, 0..=max_len)
}

fn aa_free(n: u16, max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    letters(n, max_len).prop_map(|w| free_reduce(&w))
}

fn hemisphere() -> impl Strategy<Value = Hemisphere> {
    prop_oneof![Just(Hemisphere::North), Just(Hemisphere::South)]
}

fn generators(n: u16, max_len: usize) -> impl Strategy<Value = GeneratorString> {
    proptest::collection::vec((1..=n, any::<bool>()), 0..=max_len).prop_map(|gs| {
        let raw = GeneratorString(gs.into_iter().map(|(index, inverse)| Generator { index, inverse }).collect());
        GeneratorString::default().product(&raw)
    })
}

/// Cancels one adjacent pair at a position picked by `pick`, until none remain.
fn reduce_in_random_order(mut w: Vec<u16>, picks: &[usize]) -> Vec<u16> {
    let mut step = 0;
    loop {
        let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] == w[i + 1]).collect();
        if spots.is_empty() {
            return w;
        }
        let i = spots[picks.get(step).copied().unwrap_or(0) % spots.len()];
        w.drain(i..i + 2);
        step += 1;
    }
}

#[test]
fn parses_both_notations() {
    let alphabet = GapAlphabet::with_basepoint(2).unwrap();
    let a = parse_word("v 2 1 0 2 v", &alphabet).unwrap();
    let b = parse_word("v.2.1.0.2.v", &alphabet).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.letters(), &[2, 1, 0, 2]);
    assert_eq!(a.to_string(), "v 2 1 0 2 v");
    assert!(parse_word("0 1 2 0", &alphabet).unwrap().kind() == loopforge::word::WordKind::X);
}

#[test]
fn rejects_bad_words() {
    let alphabet = GapAlphabet::with_basepoint(2).unwrap();
    assert!(matches!(parse_word("0 1 2", &alphabet), Err(Error::OddLength(3))));
    assert!(matches!(parse_word("v 0 v 1 v", &alphabet), Err(Error::MisplacedBasepoint)));
    assert!(matches!(parse_word("0 3", &alphabet), Err(Error::LabelOutOfRange { .. })));
    assert!(matches!(parse_word("0 x", &alphabet), Err(Error::UnknownToken(_))));
}

#[test]
fn reduction_examples() {
    let r = reduce_word(&Word::v(vec![0, 1, 1, 2, 1, 0, 2, 0]));
    assert_eq!(r.word, Word::v(vec![2, 1, 0, 2]));
    assert_eq!(r.stripped_prefix_parity, 1);
    let x = reduce_word(&Word::x(vec![0, 1, 1, 0]).unwrap());
    assert!(x.word.is_empty());
}

#[test]
fn canonical_v_class_tracks_hemisphere() {
    let a = canon_v(&Word::v(vec![0, 2, 1, 2]), Hemisphere::North).unwrap();
    let b = canon_v(&Word::v(vec![2, 1, 2]), Hemisphere::South).unwrap();
    assert_eq!(a, b);
    let c = canon_v(&Word::v(vec![2, 1, 2]), Hemisphere::North).unwrap();
    assert!(!equivalent(&LoopClass::V(a), &LoopClass::V(c)).unwrap());
}

#[test]
fn maximal_subwords() {
    let spans = maximal_two_letter_words(&[2, 0, 1, 0, 2, 1, 0, 1, 2], 0, 1);
    assert_eq!(spans.len(), 2);
    assert_eq!((spans[0].start, spans[0].end), (1, 3));
    assert_eq!((spans[1].start, spans[1].end), (5, 7));
    assert!(maximal_two_letter_words(&[2, 1, 2], 0, 1).is_empty());
    assert!(all_maximal_two_letter_words(&[]).is_empty());
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in letters(4, 24), v in any::<bool>()) {
        let word = if v { Word::v(w) } else { Word::x(if w.len() % 2 == 0 { w } else { w[1..].to_vec() }).unwrap() };
        let once = reduce_word(&word);
        prop_assert!(once.word.is_aa_free());
        let twice = reduce_word(&once.word);
        prop_assert_eq!(&twice.word, &once.word);
        prop_assert_eq!(twice.stripped_prefix_parity, 0);
        if v {
            let inner = once.word.letters();
            prop_assert!(inner.first().is_none_or(|&l| l > 1));
            prop_assert!(inner.last().is_none_or(|&l| l > 1));
        }
    }

    #[test]
    fn cancellation_order_does_not_matter(w in letters(3, 24), picks in proptest::collection::vec(any::<usize>(), 12)) {
        prop_assert_eq!(reduce_in_random_order(w.clone(), &picks), free_reduce(&w));
    }

    #[test]
    fn free_group_round_trip_from_generators(g in generators(4, 10)) {
        let w = from_free_group(&g).unwrap();
        prop_assert!(w.is_aa_free());
        prop_assert_eq!(to_free_group(&w).unwrap(), g);
    }

    #[test]
    fn free_group_round_trip_from_words(w in aa_free(4, 20).prop_filter("even", |w| w.len() % 2 == 0)) {
        let word = Word::x(w).unwrap();
        let g = to_free_group(&word).unwrap();
        prop_assert!(g.is_reduced());
        prop_assert_eq!(from_free_group(&g).unwrap(), word);
    }

    #[test]
    fn concatenation_is_the_group_product(
        a in aa_free(3, 12).prop_filter("even", |w| w.len() % 2 == 0),
        b in aa_free(3, 12).prop_filter("even", |w| w.len() % 2 == 0),
    ) {
        let (wa, wb) = (Word::x(a.clone()).unwrap(), Word::x(b.clone()).unwrap());
        let joined = reduce_word(&Word::x([a, b].concat()).unwrap()).word;
        let product = to_free_group(&wa).unwrap().product(&to_free_group(&wb).unwrap());
        prop_assert_eq!(to_free_group(&joined).unwrap(), product);
    }

    #[test]
    fn canon_v_ignores_cancellable_letters(w in letters(3, 16), h in hemisphere()) {
        let word = Word::v(w);
        let r = reduce_word(&word);
        let direct = canon_v(&word, h).unwrap();
        let via_reduced = canon_v(&r.word, h.flipped_if(r.stripped_prefix_parity == 1)).unwrap();
        prop_assert_eq!(&direct, &via_reduced);
        prop_assert_eq!(direct.word(), r.word);
    }

    #[test]
    fn canon_x_is_a_class_invariant(w in aa_free(3, 10), i in 0usize..12, l in 0u16..=3) {
        prop_assume!(w.len() % 2 == 0);
        let mut padded = w.clone();
        let at = i.min(padded.len());
        padded.splice(at..at, [l, l]);
        let a = canon_x(&Word::x(w).unwrap()).unwrap();
        let b = canon_x(&Word::x(padded).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn display_round_trips(w in letters(5, 12), v in any::<bool>()) {
        prop_assume!(v || w.len() % 2 == 0);
        let word = if v { Word::v(w) } else { Word::x(w).unwrap() };
        let alphabet = GapAlphabet::with_basepoint(5).unwrap();
        prop_assert_eq!(parse_word(&word.to_string(), &alphabet).unwrap(), word.clone());
        let json = serde_json::to_string(&word).unwrap();
        prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), word);
    }
}
