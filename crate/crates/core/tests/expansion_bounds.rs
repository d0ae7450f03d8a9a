use loopforge::bounds::{
    analytic_bounds, family_bound_snails, find_windings, forced_arc_intersection, snail_pair_lb, winding_self_lb,
    winding_sum, Snail, WindingForm,
};
use loopforge::expansion::{
    apply_expansion, count_vectors_exact, decompose, expansion_lb, m_vector_count, multinomial, z_vector,
    MultiplicityProfile,
};
use loopforge::oracle::{self_intersection_number, DEFAULT_BUDGET};
use loopforge::word::{all_maximal_two_letter_words, free_reduce, GapPoint, Hemisphere, Word};
use num_bigint::BigUint;
use proptest::prelude::*;

fn pairwise_formula(s: &[u32]) -> u64 {
    let mut total: u64 = s.iter().map(|&x| x as u64).sum();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            total += 2 * s[i].min(s[j]) as u64;
        }
    }
    total
}

fn v_inner(n: u16, max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    proptest::collection::vec(0..=n, 0..=max_len).prop_map(move |w| {
        let mut w = free_reduce(&w);
        while w.first().is_some_and(|&l| l <= 1) {
            w.remove(0);
        }
        while w.last().is_some_and(|&l| l <= 1) {
            w.pop();
        }
        w
    })
}

fn brute_vectors(l: usize, k: u64) -> u64 {
    let mut s = vec![0u32; l];
    let mut count = 0;
    loop {
        if pairwise_formula(&s) < k {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == l {
                return count;
            }
            s[i] += 1;
            if s[i] as u64 <= k {
                break;
            }
            s[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn decompose_examples() {
    let w = Word::v(vec![2, 0, 1, 0, 1, 0, 1, 2]);
    let d = decompose(&w).unwrap();
    assert_eq!(d.core, Word::v(vec![2, 0, 1, 2]));
    let zero_one = d.vectors.iter().find(|v| v.pair == (0, 1)).unwrap();
    assert_eq!(zero_one.s, vec![2]);
    assert_eq!(d.expand().unwrap(), w);
    assert!(decompose(&Word::v(vec![0, 2])).is_err());
    assert!(decompose(&Word::v(vec![2, 2])).is_err());
}

#[test]
fn apply_expansion_checks_vector_length() {
    let core = Word::v(vec![2, 0, 1, 2]);
    assert!(apply_expansion(&core, (0, 1), &[1, 1]).is_err());
    assert_eq!(apply_expansion(&core, (0, 1), &[1]).unwrap(), Word::v(vec![2, 0, 1, 0, 1, 2]));
}

#[test]
fn counts_match_brute_force() {
    for l in 0..=3 {
        for k in 1..=8 {
            assert_eq!(count_vectors_exact(l as u64, k), BigUint::from(brute_vectors(l, k)), "l={l} k={k}");
        }
    }
    assert_eq!(count_vectors_exact(2, 3), BigUint::from(5u32));
    assert_eq!(count_vectors_exact(8, 16), BigUint::from(3285u32));
}

#[test]
fn m_vector_count_matches_enumeration() {
    for l in 0..=5u64 {
        for k in 1..=6u64 {
            let mut feasible = 0u64;
            let mut stack = vec![vec![]];
            while let Some(m) = stack.pop() {
                let used: u64 = m.iter().sum();
                if m.len() == k as usize {
                    let mut full = m.clone();
                    full.push(l - used);
                    if (MultiplicityProfile { m: full }).is_feasible(l, k) {
                        feasible += 1;
                    }
                    continue;
                }
                for x in 0..=l - used {
                    let mut next = m.clone();
                    next.push(x);
                    stack.push(next);
                }
            }
            assert_eq!(m_vector_count(l, k).exact, BigUint::from(feasible), "l={l} k={k}");
        }
    }
}

#[test]
fn multinomial_values() {
    assert_eq!(multinomial(4, &[2, 2]).unwrap(), BigUint::from(6u32));
    assert_eq!(multinomial(5, &[1, 1, 3]).unwrap(), BigUint::from(20u32));
    assert!(multinomial(5, &[1, 1]).is_err());
    assert_eq!(z_vector(8, 16).unwrap().iter().sum::<u64>(), 8);
}

#[test]
fn winding_examples() {
    let w = find_windings(&Word::v(vec![2, 0, 1, 0, 2, 1, 2]), 2);
    let v1: Vec<_> = w.windings.iter().filter(|x| x.obstacle == 1).collect();
    assert_eq!(v1.len(), 1);
    assert_eq!((v1[0].s, v1[0].form), (1, WindingForm::AbA));

    let w = find_windings(&Word::v(vec![2, 0, 1, 0, 1, 0, 1, 2]), 2);
    let v1: Vec<_> = w.windings.iter().filter(|x| x.obstacle == 1).collect();
    assert_eq!(v1[0].s, 2);
    assert!(find_windings(&Word::v(vec![2]), 2).windings.is_empty());

    assert_eq!(winding_sum(&[1]), 1);
    assert_eq!(winding_sum(&[1, 1]), 4);
    assert_eq!(winding_sum(&[]), 0);
}

#[test]
fn snail_examples() {
    let n = Hemisphere::North;
    let snail = |s, tail: Vec<u16>, exit| Snail::new(s, tail, exit, n).unwrap();
    let two = snail(2, vec![0], GapPoint::Gap(2));
    let minus_one = snail(-1, vec![1], GapPoint::Gap(2));
    let five = snail(5, vec![0], GapPoint::Gap(2));
    let zero = snail(0, vec![1], GapPoint::Gap(2));
    let three = snail(3, vec![0], GapPoint::Gap(2));
    assert_eq!(snail_pair_lb(&two, &minus_one).unwrap(), 1);
    assert_eq!(snail_pair_lb(&five, &two).unwrap(), 2);
    assert_eq!(snail_pair_lb(&zero, &three).unwrap(), 0);
    assert_eq!(snail_pair_lb(&two, &two).unwrap(), 0);
    let south = Snail::new(1, vec![0], GapPoint::V, Hemisphere::South).unwrap();
    assert!(snail_pair_lb(&two, &south).is_err());
    assert!(Snail::new(1, vec![1], GapPoint::Gap(2), n).is_err());
    assert_eq!(
        two.points(),
        [
            GapPoint::V,
            GapPoint::Gap(0),
            GapPoint::Gap(1),
            GapPoint::Gap(0),
            GapPoint::Gap(1),
            GapPoint::Gap(0),
            GapPoint::Gap(2)
        ]
    );
}

#[test]
fn forced_arc_examples() {
    use GapPoint::{Gap, V};
    assert!(forced_arc_intersection(&[Gap(0), Gap(1)], &[V, Gap(2)], true).unwrap());
    assert!(forced_arc_intersection(&[Gap(0), Gap(1)], &[Gap(2), Gap(1)], true).is_err());
    assert!(forced_arc_intersection(&[Gap(0), Gap(2)], &[Gap(1), Gap(2)], true).is_err());
}

#[test]
fn closed_form_bounds() {
    assert_eq!(family_bound_snails(1).unwrap(), 36);
    assert_eq!(family_bound_snails(2).unwrap(), 100);
    assert_eq!(family_bound_snails(5).unwrap(), 484);
    assert!(family_bound_snails(0).is_err());

    assert_eq!(analytic_bounds(1, 3).unwrap().f_upper_n1.as_deref(), Some("7"));
    let r = analytic_bounds(2, 1).unwrap();
    assert_eq!(r.ptt_upper.exponent, "16");
    assert_eq!(r.ptt_upper.value.as_deref(), Some("65536"));
    assert_eq!(r.ptt_lower_case2.as_deref(), Some("1"));
    let r = analytic_bounds(2, 8).unwrap();
    assert_eq!(r.ptt_lower_case1.unwrap().exponent.as_deref(), Some("4/3"));
    assert_eq!(r.family_relation.multiplier, (484 * 64).to_string());
    assert!(r.ptt_upper.value.is_none());
    assert!(analytic_bounds(0, 1).is_err());
}

proptest! {
    #[test]
    fn decompose_then_expand_is_identity(inner in v_inner(4, 30)) {
        let w = Word::v(inner);
        let d = decompose(&w).unwrap();
        prop_assert!(all_maximal_two_letter_words(d.core.letters()).iter().all(|p| p.span.len() <= 3));
        prop_assert_eq!(d.expand().unwrap(), w);
    }

    #[test]
    fn expansion_of_a_core_decomposes_back(inner in v_inner(3, 14), reps in proptest::collection::vec(0u32..4, 8)) {
        let core = decompose(&Word::v(inner)).unwrap().core;
        let mut d = decompose(&core).unwrap();
        let mut r = reps.iter().cycle();
        for v in &mut d.vectors {
            for s in &mut v.s {
                *s = *r.next().unwrap();
            }
        }
        let expanded = d.expand().unwrap();
        prop_assert_eq!(decompose(&expanded).unwrap(), d);
    }

    #[test]
    fn lower_bound_matches_pairwise_formula(s in proptest::collection::vec(0u32..20, 0..12)) {
        prop_assert_eq!(expansion_lb(&s), pairwise_formula(&s));
        let k = 20;
        let tails = MultiplicityProfile::of(&s, k).unwrap().tails();
        prop_assert_eq!(tails.iter().skip(1).map(|t| t * t).sum::<u64>(), pairwise_formula(&s));
    }

    #[test]
    fn counts_grow_with_k(l in 0u64..6, k in 1u64..20) {
        prop_assert!(count_vectors_exact(l, k) <= count_vectors_exact(l, k + 1));
    }

    #[test]
    fn winding_bound_below_oracle_three_punctures(inner in v_inner(3, 7)) {
        let w = Word::v(inner);
        let r = self_intersection_number(&w, DEFAULT_BUDGET);
        prop_assert!(r.exact);
        prop_assert!(winding_self_lb(&w, 3) <= r.value as u64, "{}", w);
    }
}
