//! Shipped fixtures and the verdict engine run over them.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

use surgeq::format::{parse_presentation, write_presentation};
use surgeq::homology::first_homology;
use surgeq::milnor::{artin_longitudes, MilnorData};
use surgeq::presentation::{FramedLink, Framing};
use surgeq::verdict::{compare_integral_2, compare_rational_2, lens_compare, Options, Status, Verdict};

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(sub)
}

fn load(path: &Path) -> FramedLink {
    let text = std::fs::read_to_string(path).unwrap();
    parse_presentation(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn fixtures_in(sub: &str) -> Vec<(String, FramedLink)> {
    let mut out: Vec<(String, FramedLink)> = std::fs::read_dir(dir(sub))
        .unwrap()
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), load(&p)))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

fn fixture(name: &str) -> FramedLink {
    load(&dir(name))
}

/// `NotEquivalent` must cite an invariant whose two values differ.
fn check_certificate(v: &Verdict, what: &str) {
    if v.status == Status::NotEquivalent {
        assert_ne!(v.certificate.a, v.certificate.b, "{what}: {}", v.certificate.tag);
    }
}

#[test]
fn every_fixture_round_trips() {
    for (name, link) in fixtures_in("").into_iter().chain(fixtures_in("lens")) {
        for variant in [link.clone(), link.mirror(), link.expand_to_integral()] {
            let again = parse_presentation(&write_presentation(&variant)).unwrap();
            assert_eq!(again, variant, "{name}");
        }
    }
}

#[test]
fn lens_fixtures_match_lens_compare() {
    let lens = fixtures_in("lens");
    assert!(lens.len() > 40);
    let params = |link: &FramedLink| -> (i64, i64) {
        let f = &link.framings()[0];
        (i64::try_from(f.p()).unwrap(), i64::try_from(f.q()).unwrap())
    };
    let opts = Options::default();
    for (na, a) in &lens {
        for (nb, b) in &lens {
            let ((n, q), (n2, q2)) = (params(a), params(b));
            let direct = lens_compare(n, q, n2, q2).unwrap();
            let v = compare_integral_2(a, b, &opts);
            assert_eq!(v.status, direct.status, "{na} vs {nb}");
            check_certificate(&v, &format!("{na} vs {nb}"));
        }
    }
}

#[test]
fn lens_compare_matches_presentations_up_to_30() {
    let opts = Options::default();
    for n in 2..=30i64 {
        let units: Vec<i64> = (1..n).filter(|q| q.gcd(&n) == 1).collect();
        let links: Vec<FramedLink> = units.iter().map(|&q| FramedLink::unknot(n, q).unwrap()).collect();
        for (i, &q) in units.iter().enumerate() {
            for (j, &q2) in units.iter().enumerate() {
                let v = compare_integral_2(&links[i], &links[j], &opts);
                assert_eq!(v.status, lens_compare(n, q, n, q2).unwrap().status, "L({n},{q}) vs L({n},{q2})");
            }
        }
    }
}

#[test]
fn fixture_verdicts_are_reflexive_symmetric_and_certified() {
    let all = fixtures_in("");
    let opts = Options::default();
    for (na, a) in &all {
        for (nb, b) in &all {
            for (rel, v, w) in [
                ("integral2", compare_integral_2(a, b, &opts), compare_integral_2(b, a, &opts)),
                ("rational2", compare_rational_2(a, b, &opts), compare_rational_2(b, a, &opts)),
            ] {
                let what = format!("{na} vs {nb} under {rel}");
                assert_eq!(v.status, w.status, "{what} is not symmetric");
                check_certificate(&v, &what);
                if na == nb {
                    // Trivial, cyclic or Z×cyclic torsion is a classified case.
                    let h = first_homology(&a.expand_to_integral().presentation_matrix());
                    if h.factors.len() <= 1 {
                        assert_eq!(v.status, Status::Equivalent, "{what}");
                    } else {
                        assert_ne!(v.status, Status::NotEquivalent, "{what}");
                    }
                }
            }
        }
    }
}

#[test]
fn expansion_never_changes_a_verdict() {
    let opts = Options::default();
    let all: Vec<_> = fixtures_in("").into_iter().chain(fixtures_in("lens")).collect();
    for (name, link) in &all {
        let expanded = link.expand_to_integral();
        let v = compare_integral_2(link, &expanded, &opts);
        assert_ne!(v.status, Status::NotEquivalent, "{name}");
        if !link.is_integral() {
            // Both sides have a torsion linking form or are classified by H1.
            assert_eq!(v.status, Status::Equivalent, "{name}");
        }
    }
    for (na, a) in &all {
        let ea = a.expand_to_integral();
        for (nb, b) in &all {
            let eb = b.expand_to_integral();
            for cmp in [compare_integral_2, compare_rational_2] {
                let base = cmp(a, b, &opts).status;
                assert_eq!(cmp(&ea, b, &opts).status, base, "{na} expanded vs {nb}");
                assert_eq!(cmp(a, &eb, &opts).status, base, "{na} vs {nb} expanded");
            }
        }
    }
}

#[test]
fn z_times_cyclic_cases_are_classified() {
    let opts = Options::default();
    let (a, b) = (fixture("s1xs2_sum_L5_1.json"), fixture("s1xs2_sum_L5_2.json"));
    assert_eq!(compare_integral_2(&a, &a, &opts).status, Status::Equivalent);
    assert_eq!(compare_integral_2(&a, &b, &opts).status, Status::NotEquivalent);
}

#[test]
fn nested_commutator_longitudes_come_from_the_braid() {
    let words = fixture("nested_commutator4.json");
    let braid = fixture("nested_commutator4_braid.json");
    let from_braid = artin_longitudes(braid.braid().unwrap()).unwrap();
    assert_eq!(words.longitudes().unwrap(), &from_braid[..]);

    let mut d = MilnorData::new(&words, 4).unwrap();
    let first = d.first_nonvanishing(4).unwrap();
    assert_eq!(first.index, vec![1, 2, 3, 4]);
    assert!(first.value.abs().is_one());
    assert!(d.nonzero_table(3).is_empty());
    assert!(surgeq::trilinear::TrilinearForm::from_mu_triple(&words).unwrap().is_zero());
}

#[test]
fn fixture_families_have_expected_homology() {
    for n in [1, 2, 3, -2] {
        let link = fixture(&format!("borromean_power_{n}.json"));
        let h = first_homology(&link.presentation_matrix());
        assert_eq!((h.betti, h.factors.len()), (3, 0));
        let mu = surgeq::milnor::mu_bar(&link, &[1, 2, 3]).unwrap();
        assert_eq!(mu.value.abs(), BigInt::from(n.abs()));
    }
    for (name, link) in fixtures_in("") {
        if name.starts_with("sphere_") {
            let h = first_homology(&link.expand_to_integral().presentation_matrix());
            assert!(h.is_trivial(), "{name}: {h}");
        }
    }
}

fn rational_link() -> impl Strategy<Value = FramedLink> {
    (1usize..=3)
        .prop_flat_map(|m| {
            (
                proptest::collection::vec((-9i64..=9, 1i64..=9), m),
                proptest::collection::vec(-2i64..=2, m * (m - 1) / 2),
            )
        })
        .prop_map(|(fs, upper)| {
            let m = fs.len();
            let framings = fs
                .into_iter()
                .map(|(p, q)| {
                    let g = p.gcd(&q);
                    Framing::new(p / g, q / g).unwrap()
                })
                .collect();
            let mut lk = vec![vec![0i64; m]; m];
            let mut it = upper.into_iter();
            for i in 0..m {
                for j in i + 1..m {
                    let v = it.next().unwrap();
                    lk[i][j] = v;
                    lk[j][i] = v;
                }
            }
            FramedLink::new(framings, surgeq::linalg::IntMatrix::from_rows(&lk), None, None).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn presentations_round_trip(link in rational_link()) {
        let again = parse_presentation(&write_presentation(&link)).unwrap();
        prop_assert_eq!(&again, &link);
    }

    #[test]
    fn verdicts_are_reflexive_and_mirror_stable_in_h1(link in rational_link()) {
        let opts = Options::default();
        let v = compare_integral_2(&link, &link, &opts);
        prop_assert_ne!(v.status, Status::NotEquivalent);
        let h = first_homology(&link.presentation_matrix());
        let hm = first_homology(&link.mirror().presentation_matrix());
        prop_assert_eq!(h, hm);
    }

    #[test]
    fn expansion_is_verdict_neutral(link in rational_link()) {
        let opts = Options::default();
        let v = compare_integral_2(&link, &link.expand_to_integral(), &opts);
        prop_assert_ne!(v.status, Status::NotEquivalent);
        check_certificate(&v, "expansion");
    }
}
