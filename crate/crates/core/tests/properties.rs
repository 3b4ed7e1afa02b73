mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lsmu::arrays::*;
use lsmu::designcore::*;
use lsmu::hdesign::{h_feasible, lh_from_ls, verify_h, verify_lh};
use lsmu::io::{parse_str, parse_str_lenient, to_text, Artifact};
use lsmu::lsops::*;
use lsmu::paperdata::*;
use lsmu::recursion::*;
use lsmu::search::{enumerate_sqs8, exact_multicover_with_budget};
use lsmu::{Design, Error, LargeSet, Point};

fn sqs4_ls(mu: usize) -> LargeSet {
    LargeSet::new(3, 4, 4, mu as u64, vec![sqs4(); mu]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn configuration_ignores_point_order(
        base in 2usize..9,
        parts in 1usize..6,
        raw in prop::collection::vec((0u16..9, 0u16..6), 1..7),
        seed in any::<u64>(),
    ) {
        let pts: Vec<ProductPoint> = raw.iter().map(|&(b, l)| ProductPoint::new(b % base as u16, l % parts as u16)).collect();
        let mut shuffled = pts.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
        let a = classify_configuration(&pts, parts).unwrap();
        prop_assert_eq!(a.total(), pts.len());
        prop_assert_eq!(a, classify_configuration(&shuffled, parts).unwrap());
    }

    #[test]
    fn relabeled_steiner_systems_stay_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<Point> = (0..11).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let s = s_4_5_11();
        let out = apply_perms(&s, &[perm]).unwrap();
        prop_assert_eq!(out[0].num_blocks(), 66);
        prop_assert!(verify_steiner(&out[0]).is_ok());
    }

    #[test]
    fn derived_designs_verify(p in 0u16..11) {
        let d = derived_design(&s_4_5_11(), p).unwrap();
        prop_assert_eq!((d.t(), d.k(), d.n(), d.num_blocks()), (3, 4, 10, 30));
        prop_assert!(verify_steiner(&d).is_ok());
    }

    #[test]
    fn union_coverage_adds(a in 1usize..4, b in 0usize..3) {
        let x = ls_3_4_10_3().unwrap();
        let y = ls_3_4_10_2().unwrap();
        let mut u = x.clone();
        for _ in 1..a {
            u = union_ls(&u, &x).unwrap();
        }
        for _ in 0..b {
            u = union_ls(&u, &y).unwrap();
        }
        let table = coverage(&u.systems).unwrap();
        prop_assert!(table.counts().iter().all(|&c| c as u64 == u.mu));
        prop_assert_eq!(u.mu, 3 * a as u64 + 2 * b as u64);
        prop_assert!(verify_ls(&u).is_ok());
    }

    #[test]
    fn oa_partitions_cover_every_word(t in 2usize..5, g in 2usize..4) {
        let oa = zero_sum_oa(t, g).unwrap();
        prop_assert!(verify_array(&oa).is_ok());
        let parts = loa_from_oa(&oa).unwrap();
        let mut words = BTreeSet::new();
        let mut total = 0;
        for p in &parts {
            prop_assert!(verify_array(p).is_ok());
            for r in p.row_iter() {
                words.insert(r.to_vec());
                total += 1;
            }
        }
        prop_assert_eq!(total, g.pow(t as u32));
        prop_assert_eq!(words.len(), total);
    }

    #[test]
    fn io_round_trips_designs(
        n in 4usize..11,
        k in 2usize..5,
        picks in prop::collection::btree_set(any::<u64>(), 1..20),
    ) {
        prop_assume!(k < n);
        let count = binomial(n as u64, k as u64);
        let blocks: BTreeSet<Vec<Point>> = picks.iter().map(|&r| unrank_subset(r % count, k, n).unwrap()).collect();
        let d = Design::new(k - 1, k, n, &blocks).unwrap();
        let a = Artifact::Design(d.clone());
        prop_assert_eq!(parse_str(&to_text(&a)).unwrap(), a);
        let ls = Artifact::LargeSet(LargeSet::new(k - 1, k, n, 2, vec![d.clone(), d]).unwrap());
        prop_assert_eq!(parse_str(&to_text(&ls)).unwrap(), ls);
    }

    #[test]
    fn io_round_trips_arrays(v in 2usize..9, cols in 1usize..6, cells in prop::collection::vec(0u16..100, 1..40)) {
        let rows = cells.len() / cols;
        prop_assume!(rows > 0);
        let cells: Vec<Point> = cells[..rows * cols].iter().map(|x| x % v as u16).collect();
        for kind in [ArrayKind::Oa { strength: 2 }, ArrayKind::Pa { lambda: 3, strength: 2 }, ArrayKind::Od { lambda: 1, strength: 3 }, ArrayKind::Latin] {
            let a = Artifact::Array(CodeArray::new(kind, v, cols, cells.clone()).unwrap());
            prop_assert_eq!(parse_str(&to_text(&a)).unwrap(), a);
        }
    }

    #[test]
    fn io_round_trips_factorizations(half in 1usize..12) {
        let f = Artifact::Factorization(circle_one_factorization(2 * half).unwrap());
        prop_assert_eq!(parse_str(&to_text(&f)).unwrap(), f);
    }

    #[test]
    fn truncation_is_left_to_the_verifier(keep in 1usize..60) {
        let text = to_text(&Artifact::LargeSet(ls_3_4_10_3().unwrap()));
        let cut: String = text.lines().take(keep + 1).map(|l| format!("{l}\n")).collect();
        prop_assert!(parse_str(&cut).is_err());
        let Artifact::LargeSet(ls) = parse_str_lenient(&cut).unwrap() else { unreachable!() };
        prop_assert!(verify_ls(&ls).is_err());
    }

    #[test]
    fn multicover_output_verifies(mask in any::<u32>(), mu in 1u64..4) {
        let pool: Vec<Design> = enumerate_sqs8().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, d)| d.clone()).collect();
        prop_assume!(!pool.is_empty());
        match exact_multicover_with_budget(&pool, mu, 200_000) {
            Ok(ls) => prop_assert!(verify_ls(&ls).is_ok()),
            Err(Error::Infeasible(_)) | Err(Error::SearchFailed { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tampered_steiner_system_is_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bad = common::tamper_design(&s_4_5_11(), &mut rng);
        let v = verify_steiner(&bad).unwrap_err();
        prop_assert!(common::has_witness(&v), "{v}");
    }

    #[test]
    fn tampered_h_design_is_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = h_6_3().to_grouped().unwrap();
        let v = verify_h(&common::tamper_h(&h, &mut rng)).unwrap_err();
        prop_assert!(common::has_witness(&v), "{v}");
    }

    #[test]
    fn tampered_large_sets_are_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = verify_ls(&common::tamper_ls(&ls_3_4_10_3().unwrap(), &mut rng)).unwrap_err();
        prop_assert!(common::has_witness(&v), "{v}");
        let v = verify_lh(&common::tamper_lh(&lh_6_3().unwrap(), &mut rng)).unwrap_err();
        prop_assert!(common::has_witness(&v), "{v}");
    }

    #[test]
    fn tampered_factorizations_are_rejected(seed in any::<u64>(), half in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = common::tampered_factorization_violation(&circle_one_factorization(2 * half).unwrap(), &mut rng);
        prop_assert!(common::has_witness(&v), "{v}");
    }

    #[test]
    fn tampered_arrays_are_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for a in [zero_sum_oa(3, 3).unwrap(), agl_pa(7).unwrap(), cyclic_latin(7).unwrap()] {
            let v = verify_array(&common::tamper_array(&a, &mut rng)).unwrap_err();
            prop_assert!(common::has_witness(&v), "{v}");
        }
    }
}

#[test]
fn pa_columns_are_balanced() {
    let arrays =
        [agl_pa(4).unwrap(), agl_pa(5).unwrap(), agl_pa(8).unwrap(), half_agl_pa(7).unwrap(), half_agl_pa(11).unwrap()];
    for a in arrays {
        let ArrayKind::Pa { lambda, .. } = a.kind else { unreachable!() };
        assert!(verify_array(&a).is_ok());
        let want = lambda as usize * (a.v - 1) / 2;
        for c in 0..a.cols {
            let mut counts = vec![0; a.v];
            for r in 0..a.rows {
                counts[a.get(r, c) as usize] += 1;
            }
            assert!(counts.iter().all(|&x| x == want), "column {c} of a PA over {}", a.v);
        }
    }
}

#[test]
fn affine_arrays_are_ordered_designs() {
    for q in [3, 4, 5, 7, 8, 9] {
        let pa = agl_pa(q).unwrap();
        let od = CodeArray { kind: ArrayKind::Od { lambda: 1, strength: 2 }, ..pa.clone() };
        assert!(verify_array(&od).is_ok());
        assert!(verify_array(&pa).is_ok());
    }
}

#[test]
fn extension_and_census() {
    let s12 = extend_complement(&s_4_5_11()).unwrap();
    assert!(verify_steiner(&s12).is_ok());
    let census = config_census(&s12, &[6, 6]).unwrap();
    assert_eq!(census.values().sum::<u64>(), s12.num_blocks() as u64);
    for (c, &count) in &census {
        let rev = Configuration(c.0.iter().rev().copied().collect());
        assert_eq!(census.get(&rev).copied().unwrap_or(0), count, "{c}");
    }
}

#[test]
fn quadrupling_splits_coverage_between_types() {
    let (ls, p) = (sqs4_ls(3), agl_pa(4).unwrap());
    let f = circle_one_factorization(4).unwrap();
    let quad = quad_ls(&ls, &p, &f, &cyclic_latin(3).unwrap()).unwrap();
    let (n, mu, gamma) = (4usize, 3u32, 2u32);
    let (a, b) = quad.systems.split_at(3 * n * mu as usize);
    let ca = coverage_by_configuration(a, n, 4).unwrap();
    let cb = coverage_by_configuration(b, n, 4).unwrap();
    for (cfg, &(lo, hi)) in &ca {
        let (blo, bhi) = cb[cfg];
        match config_group(cfg).unwrap() {
            1 => assert_eq!((lo, hi, blo, bhi), (0, 0, mu, mu), "{cfg}"),
            2 | 4 => assert_eq!((lo, hi, blo, bhi), (mu, mu, 0, 0), "{cfg}"),
            3 => assert_eq!((lo, hi, blo, bhi), (gamma, gamma, mu - gamma, mu - gamma), "{cfg}"),
            _ => {}
        }
    }
    let all = coverage_by_configuration(&quad.systems, n, 4).unwrap();
    assert!(all.values().all(|&(lo, hi)| (lo, hi) == (mu, mu)));
}

#[test]
fn constructions_are_byte_deterministic() {
    let (ls, p) = (sqs4_ls(3), agl_pa(4).unwrap());
    let a = to_text(&Artifact::LargeSet(rec4n_driver(&ls, &p, 2).unwrap()));
    let b = to_text(&Artifact::LargeSet(rec4n_driver(&ls, &p, 2).unwrap()));
    assert_eq!(a, b);
}

#[test]
fn large_sets_of_h_designs_partition_transversals() {
    let lh = lh_from_ls(&ls_3_4_10_2().unwrap(), &zero_sum_oa(4, 2).unwrap()).unwrap();
    assert!(verify_lh(&lh).is_ok());
    let blocks: u64 = lh.systems.iter().map(|s| s.num_blocks() as u64).sum();
    assert_eq!(blocks, binomial(10, 4) * 2u64.pow(4));
    for (n, s) in [(5, lh_5_4()), (6, lh_6_3()), (7, lh_7_2())] {
        let s = s.unwrap();
        assert!(h_feasible(n, s.g as u64));
        assert!(s.systems.iter().all(|h| verify_h(h).is_ok()));
    }
    assert!(h_feasible(10, 2));
}

#[test]
fn sqs8_enumeration_is_lexicographic() {
    let all = enumerate_sqs8();
    assert!(all.windows(2).all(|w| w[0].flat() < w[1].flat()));
}
