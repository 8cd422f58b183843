use std::collections::BTreeMap;

use num_traits::One;
use qchar::bailey::*;
use qchar::partitions::MultiIndex;
use qchar::qseries::{qf, qi, Q};
use qchar::rational::{rng, rpoch, RationalSource};

fn mi(v: &[i64]) -> MultiIndex {
    MultiIndex(v.to_vec())
}

fn vals(v: &[Q]) -> Vec<Param> {
    v.iter().cloned().map(Param::Val).collect()
}

#[test]
fn empty_index_gives_one() {
    let p = Point { q: qf(2, 7), x: vec![qf(3, 5), qf(-4, 3)] };
    let (l, r) = andrews_sides(&p, 1, &mi(&[0, 0]), &vals(&[qi(3), qf(1, 2)]), &vals(&[qi(-2), qf(5, 3)])).unwrap();
    assert_eq!((l, r), (Q::one(), Q::one()));
}

#[test]
fn rank_one_reduces_to_classical_relation() {
    let mut g = rng(11);
    for _ in 0..4 {
        let p = random_point(&mut g, 1, 20);
        let alpha = random_alpha(&mut g, &mi(&[3]), 20);
        let pair = BaileyPair::from_alpha(p.clone(), mi(&[3]), alpha.clone()).unwrap();
        let a: Vec<Q> = (0..=3).map(|k| alpha[&mi(&[k])].clone()).collect();
        for k in 0..=3 {
            assert_eq!(pair.beta[&mi(&[k])], classical_beta(&p.q, &p.x[0], &a, k).unwrap());
        }
    }
}

#[test]
fn inversion_roundtrip_on_boxes() {
    let mut g = rng(5);
    for bound in [mi(&[2]), mi(&[1, 1]), mi(&[2, 1]), mi(&[2, 2])] {
        let mut done = 0;
        while done < 5 {
            let p = random_point(&mut g, bound.len(), 50);
            let alpha = random_alpha(&mut g, &bound, 50);
            match inversion_roundtrip(&p, &alpha, &bound) {
                Ok(ok) => {
                    assert!(ok, "roundtrip failed at {:?} on {}", p, bound);
                    done += 1;
                }
                Err(qchar::Error::Singular(_)) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn unit_pair_satisfies_relation() {
    let mut g = rng(3);
    let p = random_point(&mut g, 2, 30);
    let pair: BaileyPair<Q> = BaileyPair::unit(p, mi(&[2, 2])).unwrap();
    assert_eq!(pair.check_relation().unwrap(), None);
}

#[test]
fn step_preserves_relation() {
    let mut g = rng(17);
    let mut done = 0;
    while done < 3 {
        let p = random_point(&mut g, 2, 30);
        let (b, c) = (g.generic(30), g.generic(30));
        let run = || -> qchar::Result<Option<MultiIndex>> {
            let alpha = random_alpha(&mut rng(1), &mi(&[1, 1]), 30);
            let pair = BaileyPair::from_alpha(p.clone(), mi(&[1, 1]), alpha)?;
            bailey_step(&pair, &b, &c)?.check_relation()
        };
        match run() {
            Ok(bad) => {
                assert_eq!(bad, None);
                done += 1;
            }
            Err(qchar::Error::Singular(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn jackson_sum_closed_form() {
    // m = 0, n = 1: (qx^2, q/bc)_N / (qx/b, qx/c)_N
    let mut g = rng(23);
    for nn in 0..4 {
        let p = random_point(&mut g, 1, 30);
        let (b, c) = (g.generic(30), g.generic(30));
        let (q, x) = (&p.q, &p.x[0]);
        let (l, r) = andrews_sides(&p, 0, &mi(&[nn]), &vals(std::slice::from_ref(&b)), &vals(std::slice::from_ref(&c))).unwrap();
        let want = rpoch(&(q * x * x), q, nn).unwrap() * rpoch(&(q / (&b * &c)), q, nn).unwrap()
            / (rpoch(&(q * x / &b), q, nn).unwrap() * rpoch(&(q * x / &c), q, nn).unwrap());
        assert_eq!(l, want);
        assert_eq!(r, want);
    }
}

#[test]
fn andrews_transformation_grid() {
    let mut g = rng(29);
    for n in 1..=2usize {
        for m in 0..=2usize {
            let boxes: Vec<MultiIndex> = if n == 1 {
                vec![mi(&[1]), mi(&[2])]
            } else {
                MultiIndex::boxed(&[0, 0], &[2, 1])
            };
            for nn in boxes {
                let mut done = 0;
                while done < 3 {
                    let p = random_point(&mut g, n, 50);
                    let b: Vec<Q> = (0..=m).map(|_| g.generic(50)).collect();
                    let c: Vec<Q> = (0..=m).map(|_| g.generic(50)).collect();
                    match andrews_sides(&p, m, &nn, &vals(&b), &vals(&c)) {
                        Ok((l, r)) => {
                            assert_eq!(l, r, "n={n} m={m} N={nn}");
                            done += 1;
                        }
                        Err(qchar::Error::Singular(_)) => continue,
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn iterated_lemma_reproduces_transformation() {
    let mut g = rng(31);
    for (m, nn) in [(0, mi(&[1, 1])), (1, mi(&[1, 1])), (1, mi(&[2, 1])), (2, mi(&[1, 0]))] {
        let mut done = 0;
        while done < 2 {
            let p = random_point(&mut g, 2, 30);
            let b: Vec<Q> = (0..=m).map(|_| g.generic(30)).collect();
            let c: Vec<Q> = (0..=m).map(|_| g.generic(30)).collect();
            match iterated_pair_check(&p, m, &nn, &b, &c) {
                Ok(ok) => {
                    assert!(ok, "m={m} N={nn}");
                    done += 1;
                }
                Err(qchar::Error::Singular(_)) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn infinite_parameters_by_limit() {
    let mut g = rng(37);
    let mut done = 0;
    while done < 3 {
        let p = random_point(&mut g, 2, 20);
        let c = g.generic(20);
        let bs = vec![Param::Inf, Param::Inf];
        let cs = vec![Param::Val(c), Param::Inf];
        match andrews_sides(&p, 1, &mi(&[1, 1]), &bs, &cs) {
            Ok((l, r)) => {
                assert_eq!(l, r);
                done += 1;
            }
            Err(qchar::Error::Singular(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn step_multiplier_limit_closed_form() {
    let mut g = rng(41);
    for nn in [mi(&[1]), mi(&[2, 1]), mi(&[0, 3])] {
        let p = random_point(&mut g, nn.len(), 20);
        assert_eq!(step_multiplier_limit(&p, &nn).unwrap(), step_multiplier_closed(&p, &nn));
    }
}

#[test]
fn singular_specialization_is_reported() {
    // x_1 = x_2 kills the inversion kernel
    let p = Point { q: qf(1, 3), x: vec![qi(2), qi(2)] };
    let alpha: BTreeMap<MultiIndex, Q> = random_alpha(&mut rng(0), &mi(&[1, 1]), 5);
    assert!(matches!(inversion_roundtrip(&p, &alpha, &mi(&[1, 1])), Err(qchar::Error::Singular(_))));
}
