use std::collections::BTreeSet;

use lsmu::arrays::{agl_pa, circle_one_factorization, cyclic_latin};
use lsmu::designcore::Configuration;
use lsmu::lsops::{union_ls, verify_ls};
use lsmu::paperdata::sqs4;
use lsmu::recursion::*;
use lsmu::LargeSet;

fn ls4() -> LargeSet {
    let one = LargeSet::new(3, 4, 4, 1, vec![sqs4()]).unwrap();
    union_ls(&union_ls(&one, &one).unwrap(), &one).unwrap()
}

#[test]
fn stages_over_four_points() {
    let (ls, p) = (ls4(), agl_pa(4).unwrap());
    for (m, systems) in [(1, 15), (2, 39), (3, 87)] {
        let out = rec4n_driver(&ls, &p, m).unwrap();
        assert_eq!((out.n, out.mu, out.systems.len()), (4 << m, 3, systems));
        assert!(verify_ls(&out).is_ok());
    }
}

#[test]
fn doubled_systems_cover_by_configuration() {
    let p = agl_pa(4).unwrap();
    let r = dls(&sqs4(), &p).unwrap();
    assert_eq!(r.len(), 12);
    let census = coverage_by_configuration(&r, 4, 2).unwrap();
    // γ = 2, n = 4
    check_configuration_coverage(&census, |c| match c.0.as_slice() {
        [3, 1] | [1, 3] => 3,
        [2, 2] => 2,
        _ => 0,
    })
    .unwrap();
}

#[test]
fn banded_systems_cover_by_configuration() {
    let f = circle_one_factorization(4).unwrap();
    let m = cyclic_latin(3).unwrap();
    let out = db(&ls4(), &f, &f, &m).unwrap();
    assert_eq!(out.len(), 3);
    let census = coverage_by_configuration(&out, 4, 2).unwrap();
    // g = 1
    check_configuration_coverage(&census, |c| match c.0.as_slice() {
        [4, 0] | [0, 4] => 3,
        [2, 2] => 1,
        _ => 0,
    })
    .unwrap();
    assert_eq!(census[&Configuration(vec![3, 1])], (0, 0));
}

/// First-family blocks of quadrupled system (i, j) written out directly.
fn first_family_oracle(r: &lsmu::Design, i: usize, j: usize, n: usize) -> BTreeSet<Vec<u16>> {
    let f = circle_one_factorization(n).unwrap();
    let q = |a: usize, l: usize| (l * n + a % n) as u16;
    let mut out = BTreeSet::new();
    let mut push = |mut b: Vec<u16>| {
        b.sort();
        out.insert(b);
    };
    for b in r.blocks() {
        for (lo, hi) in [(0, 1), (2, 3)] {
            push(b.iter().map(|&p| q(p as usize % n, if (p as usize) < n { lo } else { hi })).collect());
        }
    }
    for r in 0..n - 1 {
        for &(a, b) in f.factor(r) {
            let (a, b) = (a as usize, b as usize);
            for c in 0..n {
                push(vec![q(a, 0), q(b, 0), q(c, 2), q(c + i + r + j, 3)]);
                push(vec![q(a, 1), q(b, 1), q(c, 2), q(c + i + r + j, 3)]);
                push(vec![q(a, 2), q(b, 2), q(c, 0), q(c + i + r, 1)]);
                push(vec![q(a, 3), q(b, 3), q(c, 0), q(c + i + r, 1)]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            push(vec![q(a, 0), q(a + i + n - 1, 1), q(b, 2), q(b + i + n - 1 + j, 3)]);
        }
    }
    out
}

#[test]
fn quadrupled_first_family_matches_direct_formulas() {
    let (ls, p) = (ls4(), agl_pa(4).unwrap());
    let f = circle_one_factorization(4).unwrap();
    let quad = quad_ls(&ls, &p, &f, &cyclic_latin(3).unwrap()).unwrap();
    let r = dls(&sqs4(), &p).unwrap();
    let mu = 3;
    for i in 1..=4 {
        for j in 0..mu {
            let want = first_family_oracle(&r[(i - 1) * mu + j], i, j, 4);
            let got: BTreeSet<Vec<u16>> = quad.systems[(i - 1) * mu + j].blocks().map(|b| b.to_vec()).collect();
            assert_eq!(got, want, "system ({i},{j})");
        }
    }
}

#[test]
fn quad_rejects_wrong_relation() {
    let one = LargeSet::new(3, 4, 4, 1, vec![sqs4()]).unwrap();
    assert!(rec4n_driver(&one, &agl_pa(4).unwrap(), 2).is_err());
    assert!(pow2_ls(&ls4(), &agl_pa(4).unwrap(), &circle_one_factorization(4).unwrap(), &cyclic_latin(3).unwrap(), 2)
        .is_err());
}
