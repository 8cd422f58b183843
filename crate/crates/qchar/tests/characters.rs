use qchar::bailey::{andrews_lhs, Param, Point};
use qchar::characters::*;
use qchar::partitions::{MultiIndex, Partition};
use qchar::qseries::{qf, qi, QSeries, Q};
use qchar::rational::{rng, RationalSource};

fn cross(spec: CharSpec, kind: CombKind, two_m: i64, x: XSpec, order: i64) {
    let l = char_lattice(&spec, &x, order).unwrap();
    let c = char_combinatorial(kind, two_m, &x, order).unwrap();
    assert_eq!(l.first_mismatch(&c), None, "{:?} {:?}\nlattice {}\ncomb {}", spec, x, l, c);
}

fn grid(f: impl Fn(i64, usize, XSpec)) {
    let mut g = rng(101);
    for m in 0..=2 {
        f(m, 1, XSpec::Formal(1));
        for _ in 0..3 {
            f(m, 2, XSpec::Point(sample_point(&mut g, 2, 9)));
        }
    }
}

#[test]
fn cn_character_formula() {
    grid(|m, n, x| {
        let spec = CharSpec::new(Algebra::C1, m, Partition::empty(), n).unwrap();
        cross(spec, CombKind::CnEven, 2 * m, x, 16);
    });
}

#[test]
fn a2_first_character_formula() {
    grid(|m, n, x| {
        let spec = CharSpec::new(Algebra::A2EvenI, 2 * m, Partition::empty(), n).unwrap();
        cross(spec, CombKind::A2All, 2 * m, x, 16);
    });
}

#[test]
fn a2_second_character_formula() {
    grid(|m, n, x| {
        let spec = CharSpec::new(Algebra::A2EvenII, m, Partition::empty(), n).unwrap();
        cross(spec, CombKind::A2Shifted, 2 * m, x, 16);
    });
}

#[test]
fn a2_formal_rank_two() {
    let spec = CharSpec::new(Algebra::A2EvenI, 2, Partition::empty(), 2).unwrap();
    cross(spec, CombKind::A2All, 2, XSpec::Formal(2), 8);
}

#[test]
fn twisted_d_conjecture() {
    let mut g = rng(7);
    for n in 2..=3 {
        for m in 0..=2 {
            let x = XSpec::Point(sample_point(&mut g, n, 9));
            let spec = CharSpec::new(Algebra::D2, 2 * m, Partition::empty(), n).unwrap();
            cross(spec, CombKind::DTwisted, 2 * m, x, 12);
        }
    }
}

#[test]
fn half_integer_m() {
    let mut g = rng(8);
    for two_m in [1, 3] {
        let x = XSpec::Point(sample_point(&mut g, 2, 9));
        let spec = CharSpec::new(Algebra::A2EvenI, two_m, Partition::empty(), 2).unwrap();
        cross(spec, CombKind::A2All, two_m, x.clone(), 12);
        let spec = CharSpec::new(Algebra::D2, two_m, Partition::empty(), 2).unwrap();
        cross(spec, CombKind::DTwisted, two_m, x, 12);
    }
}

#[test]
fn level_one_cn() {
    let mut g = rng(9);
    let spec = CharSpec::new(Algebra::C1, 0, Partition::new(&[1]), 2).unwrap();
    for x in [XSpec::Formal(2), XSpec::Point(sample_point(&mut g, 2, 9))] {
        let l = char_lattice(&spec, &x, 10).unwrap();
        let c = level_one_combinatorial(&x, 10).unwrap();
        assert_eq!(l.first_mismatch(&c), None);
    }
}

#[test]
fn lattice_rejects_rank_mismatch() {
    let spec = CharSpec::new(Algebra::C1, 1, Partition::empty(), 2).unwrap();
    assert!(char_lattice(&spec, &XSpec::Formal(1), 4).is_err());
    assert!(CharSpec::new(Algebra::C1, 0, Partition::new(&[1, 1, 1]), 2).is_err());
}

#[test]
fn kappa_values() {
    let l = Partition::new(&[2, 1]);
    assert_eq!(CharSpec::new(Algebra::C1, 1, l.clone(), 2).unwrap().kappa(), 6);
    assert_eq!(CharSpec::new(Algebra::A2EvenI, 1, l.clone(), 2).unwrap().kappa(), 10);
    assert_eq!(CharSpec::new(Algebra::A2EvenII, 1, l.clone(), 2).unwrap().kappa(), 11);
    assert_eq!(CharSpec::new(Algebra::D2, 1, l, 2).unwrap().kappa(), 9);
}

#[test]
fn main_theorem_specializations() {
    let mut g = rng(13);
    let neg_half = TParam::Mono(qi(-1), 1);
    let neg_one = TParam::Mono(qi(-1), 0);
    let cases = [
        (Variant::One, TParam::Inf, TParam::Inf),
        (Variant::One, TParam::Inf, neg_half.clone()),
        (Variant::One, TParam::Inf, neg_one.clone()),
        (Variant::One, TParam::Inf, TParam::Mono(qf(2, 3), 0)),
        (Variant::Two, TParam::Inf, TParam::Inf),
        (Variant::Two, TParam::Inf, neg_one),
    ];
    for (variant, b, c) in cases {
        for m in 0..=1 {
            let n = if variant == Variant::One { 2 } else { 1 };
            let pts = sample_point(&mut g, n, 9);
            let (l, r) = thm_main_sides(variant, m, &pts, &b, &c, 10).unwrap();
            assert!(l.agrees(&r), "{:?} m={} b={:?} c={:?}\n{}\n{}", variant, m, b, c, l, r);
        }
    }
}

#[test]
fn main_theorem_general_b_conjectural() {
    // Both parameters finite rests on the summed-M conjecture.
    let mut g = rng(14);
    let pts = sample_point(&mut g, 1, 9);
    let (l, r) = thm_main_sides(Variant::One, 1, &pts, &TParam::Mono(qi(-1), 0), &TParam::Mono(qi(-1), 1), 10).unwrap();
    assert!(l.agrees(&r), "{}\n{}", l, r);
}

fn params(g: &mut impl RationalSource, m: usize) -> (Vec<Q>, Vec<Q>) {
    ((0..=m).map(|_| g.generic(20)).collect(), (0..=m).map(|_| g.generic(20)).collect())
}

#[test]
fn appendix_limit_lemma() {
    let mut g = rng(21);
    for nn in MultiIndex::boxed(&[0, 0], &[1, 1]) {
        let mut done = 0;
        while done < 3 {
            let x = sample_point(&mut g, 2, 20);
            let q = g.generic(20);
            let (b, c) = params(&mut g, 1);
            match appendix_limit(1, &[], &nn.0, &x, &q, &b, &c) {
                Ok(chk) => {
                    assert!(chk.holds(), "N={} {:?}", nn, chk);
                    done += 1;
                }
                Err(qchar::Error::Singular(_)) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn appendix_limit_rank_three() {
    let mut g = rng(22);
    let mut done = 0;
    while done < 2 {
        let x = sample_point(&mut g, 3, 20);
        let q = g.generic(20);
        let (b, c) = params(&mut g, 0);
        match appendix_limit(2, &[1], &[1, 1, 0], &x, &q, &b, &c) {
            Ok(chk) => {
                assert!(chk.holds(), "{:?}", chk);
                done += 1;
            }
            Err(qchar::Error::Singular(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn odd_limit_matches_odd_form() {
    let mut g = rng(23);
    for (mm, nn) in [(vec![], vec![1]), (vec![], vec![2]), (vec![1], vec![1, 1]), (vec![0], vec![1, 1])] {
        let mut done = 0;
        while done < 3 {
            let x = sample_point(&mut g, nn.len() - 1, 20);
            let q = g.generic(20);
            let (b, c) = params(&mut g, 0);
            match odd_limit(&mm, &nn, &x, &q, &b, &c) {
                Ok(chk) => {
                    assert!(chk.holds(), "M={:?} N={:?} {:?}", mm, nn, chk);
                    done += 1;
                }
                Err(qchar::Error::Singular(_)) => continue,
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn zero_m_recovers_andrews_lhs() {
    let mut g = rng(24);
    let mut done = 0;
    while done < 3 {
        let x = sample_point(&mut g, 2, 20);
        let q = g.generic(20);
        let (b, c) = params(&mut g, 1);
        let nn = [2, 1];
        let got = l_mn(&[0, 0], &nn, &x, &q, &b, &c);
        let p = Point { q: q.clone(), x: x.clone() };
        let want = andrews_lhs(
            &p,
            1,
            &MultiIndex(nn.to_vec()),
            &b.iter().cloned().map(Param::Val).collect::<Vec<_>>(),
            &c.iter().cloned().map(Param::Val).collect::<Vec<_>>(),
        );
        match (got, want) {
            (Ok(a), Ok(w)) => {
                assert_eq!(a, w);
                done += 1;
            }
            (Err(qchar::Error::Singular(_)), _) | (_, Err(qchar::Error::Singular(_))) => continue,
            (Err(e), _) | (_, Err(e)) => panic!("{e}"),
        }
    }
}

#[test]
fn hyperoctahedral_symmetry() {
    let mut g = rng(25);
    let x = sample_point(&mut g, 2, 20);
    let q = g.generic(20);
    let (b, c) = params(&mut g, 0);
    let (m1, m2, n1, n2) = (1, 0, 1, 2);
    let l = |mm: [i64; 2], nn: [i64; 2], x: [Q; 2]| l_mn(&mm, &nn, &x, &q, &b, &c).unwrap();
    let base = l([m1, m2], [n1, n2], [x[0].clone(), x[1].clone()]);
    assert_eq!(base, l([m2, m1], [n2, n1], [x[1].clone(), x[0].clone()]));
    assert_eq!(base, l([m1, n2], [n1, m2], [x[0].clone(), x[1].recip()]));
    assert_eq!(base, l([n1, m2], [m1, n2], [x[0].recip(), x[1].clone()]));
    assert_eq!(base, l([n1, n2], [m1, m2], [x[0].recip(), x[1].recip()]));
}

fn pt(v: &[Q], e: i64) -> Vec<(Q, i64)> {
    v.iter().map(|c| (c.clone(), e)).collect()
}

#[test]
fn w_zero_proposition() {
    let mut g = rng(31);
    for n in 1..=3 {
        for big_m in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1]] {
            let x = pt(&sample_point(&mut g, n, 9), 0);
            let z = QSeries::constant(g.generic(9));
            let (l, r) = case2_sides(&big_m, &z, &x, 8).unwrap();
            assert!(l.agrees(&r), "n={} M={:?}\n{}\n{}", n, big_m, l, r);
        }
    }
}

#[test]
fn wz_finite_conjecture() {
    let mut g = rng(32);
    for big_m in [vec![1], vec![2], vec![1, 1]] {
        let x = pt(&sample_point(&mut g, 2, 9), 0);
        let w = QSeries::constant(g.generic(9));
        let z = QSeries::constant(g.generic(9));
        let (l, r) = wz_finite_sides(&big_m, &w, &z, &x, 8).unwrap();
        assert!(l.agrees(&r), "M={:?}\n{}\n{}", big_m, l, r);
    }
}

#[test]
fn summed_form() {
    let mut g = rng(33);
    for m in 0..=2 {
        let x = pt(&sample_point(&mut g, 2, 9), 1);
        let w = QSeries::mono(g.generic(9), 1);
        let z = QSeries::constant(g.generic(9));
        let (l, r) = sum_m_sides(m, &w, &z, &x, 10).unwrap();
        assert!(l.agrees(&r), "m={}\n{}\n{}", m, l, r);
    }
}
