//! μ̄-invariants of random pure braids against facts that hold for every link.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;

use surgeq::milnor::{artin_longitudes, MilnorData};
use surgeq::presentation::{BraidWord, FramedLink, Framing};

/// Word of the standard pure generator `A_ij` (one-based, `i < j`) raised to `±1`:
/// `σ_{j−1}…σ_{i+1} σ_i² σ_{i+1}⁻¹…σ_{j−1}⁻¹`.
fn pure_generator(i: usize, j: usize, sign: i8) -> Vec<String> {
    let s = |g: usize, e: i8| if e > 0 { format!("s{g}") } else { format!("s{g}^-1") };
    let mut w: Vec<String> = (i + 1..j).rev().map(|g| s(g, 1)).collect();
    w.push(s(i, sign));
    w.push(s(i, sign));
    w.extend((i + 1..j).map(|g| s(g, -1)));
    w
}

/// A product of pure generators, as `(i, j, sign)` factors.
fn pure_factors(strands: usize, len: usize) -> impl Strategy<Value = Vec<(usize, usize, i8)>> {
    let pair = (1..strands).prop_flat_map(move |i| (Just(i), i + 1..=strands));
    proptest::collection::vec((pair, prop_oneof![Just(1i8), Just(-1i8)]), 0..=len)
        .prop_map(|v| v.into_iter().map(|((i, j), s)| (i, j, s)).collect())
}

fn braid(strands: usize, factors: &[(usize, usize, i8)]) -> BraidWord {
    let words: Vec<String> = factors.iter().flat_map(|&(i, j, s)| pure_generator(i, j, s)).collect();
    BraidWord::parse(strands, &words.join(" ")).expect("valid braid word")
}

fn inverse_factors(factors: &[(usize, usize, i8)]) -> Vec<(usize, usize, i8)> {
    factors.iter().rev().map(|&(i, j, s)| (i, j, -s)).collect()
}

fn data(b: &BraidWord, degree: usize) -> MilnorData {
    MilnorData::from_longitudes(artin_longitudes(b).expect("pure"), degree)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn length_two_is_linking_number(factors in pure_factors(4, 8)) {
        let b = braid(4, &factors);
        let lk = b.linking_numbers().unwrap();
        let mut d = data(&b, 2);
        for i in 1..=4usize {
            for j in 1..=4usize {
                if i == j {
                    continue;
                }
                // Each A_ij^{±1} links strands i and j once with that sign.
                let expected: i64 = factors
                    .iter()
                    .filter(|&&(a, c, _)| (a, c) == (i.min(j), i.max(j)))
                    .map(|&(_, _, s)| i64::from(s))
                    .sum();
                prop_assert_eq!(&lk[(i - 1, j - 1)], &BigInt::from(expected));
                prop_assert_eq!(d.mu_bar(&[i, j]).unwrap().value, BigInt::from(expected));
            }
        }
    }

    #[test]
    fn invariant_under_pure_conjugation(
        beta in pure_factors(3, 6),
        gamma in pure_factors(3, 4),
    ) {
        let conj: Vec<_> = gamma.iter().chain(&beta).chain(&inverse_factors(&gamma)).copied().collect();
        let (mut d1, mut d2) = (data(&braid(3, &beta), 3), data(&braid(3, &conj), 3));
        for idx in [[1usize, 2, 3], [2, 3, 1], [1, 1, 2], [3, 2, 2]] {
            let (a, b) = (d1.mu_bar(&idx).unwrap(), d2.mu_bar(&idx).unwrap());
            prop_assert_eq!(&a.modulus, &b.modulus);
            prop_assert_eq!(a.value, b.value, "index {:?}", idx);
        }
    }

    #[test]
    fn cyclic_symmetry_of_length_three(factors in pure_factors(3, 6)) {
        let mut d = data(&braid(3, &factors), 3);
        let base = d.mu_bar(&[1, 2, 3]).unwrap();
        for idx in [[2usize, 3, 1], [3, 1, 2]] {
            let other = d.mu_bar(&idx).unwrap();
            prop_assert_eq!(&other.modulus, &base.modulus);
            prop_assert_eq!(&other.value, &base.value);
        }
        // Swapping two indices negates the value modulo the indeterminacy.
        let swapped = d.mu_bar(&[2, 1, 3]).unwrap();
        let sum = &swapped.value + &base.value;
        if base.modulus.is_zero() {
            prop_assert!(sum.is_zero());
        } else {
            prop_assert!(sum.is_multiple_of(&base.modulus));
        }
    }

    #[test]
    fn mirror_sign_alternates_with_length(factors in pure_factors(3, 6)) {
        let link = FramedLink::from_braid(vec![Framing::integral(0); 3], braid(3, &factors)).unwrap();
        let mirror = link.mirror();
        let mut d1 = MilnorData::new(&link, 4).unwrap();
        let mut d2 = MilnorData::new(&mirror, 4).unwrap();
        // Reflection sends μ̄(I) to (−1)^{|I|−1} μ̄(I).
        for idx in [vec![1usize, 2], vec![2, 3], vec![1, 2, 3], vec![1, 1, 2], vec![1, 1, 2, 2], vec![1, 2, 3, 3]] {
            let (a, b) = (d1.mu_bar(&idx).unwrap(), d2.mu_bar(&idx).unwrap());
            prop_assert_eq!(&a.modulus, &b.modulus);
            let diff = if idx.len() % 2 == 0 { &a.value + &b.value } else { &a.value - &b.value };
            let agrees = if a.modulus.is_zero() { diff.is_zero() } else { diff.is_multiple_of(&a.modulus) };
            prop_assert!(agrees, "index {:?}: {} vs {}", idx, a.value, b.value);
        }
    }
}

#[test]
fn iterated_borromean_has_triple_number_n() {
    let word = "s1 s2^-1 s1 s2^-1 s1 s2^-1";
    for n in 1..=4usize {
        let b = BraidWord::parse(3, &vec![word; n].join(" ")).unwrap();
        let mut d = data(&b, 3);
        let mu = d.mu_bar(&[1, 2, 3]).unwrap();
        assert!(mu.modulus.is_zero());
        assert_eq!(mu.value.magnitude(), &num_bigint::BigUint::from(n));
    }
}
