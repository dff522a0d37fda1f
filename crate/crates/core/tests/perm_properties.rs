use num_bigint::BigInt;
use proptest::prelude::*;
use runlab::permcore::{
    alternating_runs, count_sn, distribution, interior_peaks, interior_valleys, left_peaks,
    longest_alt_subseq, Permutation, Stat,
};

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

/// Longest alternating subsequence by trying every subset of positions.
fn exhaustive_alt(p: &Permutation) -> usize {
    let v = p.values();
    let n = v.len();
    (1u32..1 << n)
        .filter_map(|mask| {
            let sub: Vec<usize> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| v[i])
                .collect();
            let ok =
                sub.windows(2)
                    .enumerate()
                    .all(|(i, w)| if i % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] });
            ok.then_some(sub.len())
        })
        .max()
        .unwrap_or(0)
}

proptest! {
    #[test]
    fn alt_subseq_matches_exhaustive_search(p in permutation(10)) {
        prop_assert_eq!(longest_alt_subseq(&p), exhaustive_alt(&p));
    }

    #[test]
    fn left_peaks_bracket_peaks(p in permutation(12)) {
        let (pk, lpk) = (interior_peaks(&p), left_peaks(&p));
        prop_assert!(pk <= lpk && lpk <= pk + 1);
    }

    #[test]
    fn runs_range_and_symmetries(p in permutation(12)) {
        let n = p.len();
        let r = alternating_runs(&p);
        if n >= 2 {
            prop_assert!((1..n).contains(&r));
        }
        prop_assert_eq!(r, alternating_runs(&p.reverse()));
        prop_assert_eq!(r, alternating_runs(&p.complement()));
    }

    #[test]
    fn complement_swaps_peaks_and_valleys(p in permutation(12)) {
        prop_assert_eq!(interior_peaks(&p), interior_valleys(&p.complement()));
    }

    #[test]
    fn alt_subseq_relates_to_runs(p in permutation(12)) {
        // Each run contributes one turning point, plus the ends.
        let a = longest_alt_subseq(&p);
        let r = alternating_runs(&p);
        prop_assert!(a == r || a == r + 1 || p.len() == 1);
    }

    #[test]
    fn parse_display_round_trip(p in permutation(12)) {
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }
}

#[test]
fn distributions_sum_to_factorial() {
    for stat in Stat::ALL {
        for n in 1..=7 {
            let d = distribution(stat, n).unwrap();
            assert_eq!(d.total(), count_sn(n), "{stat:?} n={n}");
        }
    }
    assert_eq!(count_sn(8), BigInt::from(40320));
}

#[test]
fn named_examples() {
    let p: Permutation = "21435".parse().unwrap();
    assert_eq!(interior_peaks(&p), 1);
    assert_eq!(left_peaks(&p), 2);
    assert_eq!(alternating_runs(&p), 4);
    assert_eq!(longest_alt_subseq(&p), 5);
}
