use qchar::partitions::{MultiIndex, PartFilter, Partition, enum_partitions};
use qchar::qseries::{qf, qi, QSeries, Q};
use qchar::rational::{rng, RationalSource};
use qchar::symfunc::hl::{distinct_point, qprime_charge};
use qchar::symfunc::hyper::{milne_lemma, milne_qbinomial, pprime_multisum};
use qchar::symfunc::schur::{format_schur, xpow2};
use qchar::symfunc::*;

fn p(v: &[i64]) -> Partition {
    Partition::new(v)
}

fn x(n: usize, i: usize) -> XLaurent {
    xpow2(n, i, 2)
}

fn q() -> QSeries {
    QSeries::q_pow(1)
}

#[test]
fn schur_small_cases() {
    assert_eq!(schur(&p(&[1]), 2), &x(2, 0) + &x(2, 1));
    let s21 = &(&x(2, 0).pow(2) * &x(2, 1)) + &(&x(2, 0) * &x(2, 1).pow(2));
    assert_eq!(schur(&p(&[2, 1]), 2), s21);
    assert!(schur(&p(&[1, 1, 1]), 2).is_zero());
}

#[test]
fn symplectic_and_odd_orthogonal_rank_one() {
    let xi = XLaurent::var_pow(1, 0, -1);
    assert_eq!(symp_schur(&p(&[1]), 1).unwrap(), &xi + &XLaurent::var_pow(1, 0, 1));
    let half: Partition = "(1/2)".parse().unwrap();
    let want = &xpow2(1, 0, -1) + &xpow2(1, 0, 1);
    assert_eq!(so_odd_schur(&half, 1).unwrap(), want);
    for n in 1..=3 {
        assert_eq!(symp_schur(&Partition::empty(), n).unwrap(), XLaurent::one(n));
        assert_eq!(so_odd_schur(&Partition::empty(), n).unwrap(), XLaurent::one(n));
    }
}

#[test]
fn hall_littlewood_examples() {
    let n = 2;
    assert_eq!(hall_littlewood_p(&p(&[1]), n).unwrap(), &x(n, 0) + &x(n, 1));
    assert_eq!(hall_littlewood_p(&p(&[1, 1]), n).unwrap(), &x(n, 0) * &x(n, 1));
    let one_minus_q = &QSeries::one() - &q();
    let want = &(&x(n, 0).pow(2) + &x(n, 1).pow(2)) + &(&x(n, 0) * &x(n, 1)).scale(&one_minus_q);
    assert_eq!(hall_littlewood_p(&p(&[2]), n).unwrap(), want);
}

#[test]
fn hall_littlewood_specializes_to_schur_at_q0() {
    for lam in [p(&[2, 1]), p(&[3, 1]), p(&[2, 2, 1])] {
        let hl = hall_littlewood_p(&lam, 3).unwrap();
        let at0: Vec<_> = hl.terms().map(|(e, c)| (e.clone(), QSeries::constant(c.coeff(0)))).collect();
        let at0 = XLaurent::from_terms(3, at0, None);
        assert_eq!(at0, schur(&lam, 3), "{}", lam);
    }
}

#[test]
fn qprime_examples() {
    for n in 1..=3 {
        let sum = (0..n).fold(XLaurent::zero(n), |a, i| &a + &x(n, i));
        for m in QMethod::ALL {
            assert_eq!(qprime(&p(&[1]), n, m).unwrap(), sum, "{} n={}", m, n);
        }
    }
    let want = &schur(&p(&[1, 1]), 2) + &schur(&p(&[2]), 2).scale(&q());
    assert_eq!(qprime_charge(&p(&[1, 1]), 2), want);
    let pp = pprime(&p(&[2]), 2, QMethod::Charge, 12).unwrap();
    let inv = (&QSeries::one() - &q()).inv(12).unwrap();
    assert_eq!(pp, schur(&p(&[2]), 2).scale(&inv).truncate(12));
    assert_eq!(qprime(&Partition::empty(), 2, QMethod::Multisum).unwrap(), XLaurent::one(2));
}

#[test]
fn schur_expansion_format() {
    let f = qprime_charge(&p(&[1, 1]), 2);
    assert_eq!(format_schur(&schur_expand(&f).unwrap()), "s[1,1] + q*s[2]");
}

#[test]
fn bernstein_examples() {
    for n in 1..=3 {
        assert_eq!(bernstein_b(0, &XLaurent::one(n)).unwrap(), XLaurent::one(n));
        assert_eq!(bernstein_b(1, &XLaurent::one(n)).unwrap(), schur(&p(&[1]), n));
    }
    let b21 = bernstein_b(2, &bernstein_b(1, &XLaurent::one(3)).unwrap()).unwrap();
    assert_eq!(b21, qprime_charge(&p(&[2, 1]), 3));
}

#[test]
fn four_route_agreement_small() {
    for n in [2usize, 3] {
        for d in 0..=4 {
            for mu in Partition::all_of(d) {
                let base = qprime(&mu, n, QMethod::Charge).unwrap();
                for m in [QMethod::Jing, QMethod::Multisum, QMethod::Fermionic] {
                    assert_eq!(qprime(&mu, n, m).unwrap(), base, "μ={} n={} {}", mu, n, m);
                }
            }
        }
    }
}

#[test]
fn hall_pairing_examples() {
    let n = 2;
    let pair = |a: &[i64], b: &[i64]| {
        hall_pairing(&hall_littlewood_p(&p(a), n).unwrap(), &qprime(&p(b), n, QMethod::Charge).unwrap()).unwrap()
    };
    assert_eq!(pair(&[1], &[1]), QSeries::one());
    assert!(pair(&[2], &[1, 1]).is_zero());
    assert_eq!(pair(&[1, 1], &[1, 1]), QSeries::one());
}

#[test]
fn duality_of_p_and_qprime() {
    let n = 3;
    for d in 1..=3 {
        for lam in Partition::all_of(d) {
            for mu in Partition::all_of(d) {
                let v = hall_pairing(&hall_littlewood_p(&lam, n).unwrap(), &qprime(&mu, n, QMethod::Jing).unwrap()).unwrap();
                let want = if lam == mu { QSeries::one() } else { QSeries::zero() };
                assert_eq!(v, want, "{} {}", lam, mu);
            }
        }
    }
}

#[test]
fn f_tau_vanishing_and_multiplicativity() {
    let alph = Alphabet::rational(&[qf(2, 3), qf(-5, 7)]);
    let z = MultiIndex(vec![0, 0]);
    assert!(f_tau(&z, &z, 3, &alph, 10).unwrap().agrees(&QSeries::one()));
    let r = MultiIndex(vec![1, 0]);
    let s = MultiIndex(vec![1, 1]);
    assert!(f_tau(&r, &s, 1, &alph, 10).unwrap().is_zero());
    let mut g = rng(7);
    for _ in 0..5 {
        let pt = distinct_point(&mut g, 3);
        let alph = Alphabet::rational(&pt);
        let r = MultiIndex(vec![2, 1, 2]);
        let s = MultiIndex(vec![1, 0, 2]);
        for tau in 0..3 {
            let a = &f_tau(&r, &r, 1, &alph, 20).unwrap() * &f_tau(&r, &s, tau, &alph, 20).unwrap();
            assert!(a.agrees(&f_tau(&r, &s, tau + 1, &alph, 20).unwrap()));
        }
    }
}

#[test]
fn littlewood_identities() {
    for m in 1..=2i64 {
        for n in 1..=2usize {
            let mono = (0..n).fold(XLaurent::one(n), |a, i| &a * &XLaurent::var_pow(n, i, m));
            let rect = Partition::new(&vec![m; n]);
            let sp = &mono * &symp_schur(&rect, n).unwrap();
            let so = &mono * &so_odd_schur(&rect, n).unwrap();
            let deg = 2 * m * n as i64;
            let mut even = XLaurent::zero(n);
            for lam in enum_partitions(2 * m, deg, PartFilter::Even) {
                even = &even + &schur(&lam, n);
            }
            let mut all = XLaurent::zero(n);
            for lam in enum_partitions(2 * m, deg, PartFilter::All) {
                all = &all + &schur(&lam, n);
            }
            assert_eq!(sp, even, "symp m={} n={}", m, n);
            assert_eq!(so, all, "so m={} n={}", m, n);
        }
    }
}

#[test]
fn milne_identities() {
    let mut g = rng(11);
    for n in 1..=5 {
        let xs = distinct_point(&mut g, n);
        let ys: Vec<Q> = (0..n).map(|_| g.rational(9)).collect();
        let (l, r) = milne_lemma(&xs, &ys).unwrap();
        assert_eq!(l, r);
    }
    for n in 1..=3usize {
        for nn in MultiIndex::boxed(&vec![0; n], &vec![4; n]) {
            if nn.sum() > 4 {
                continue;
            }
            let (l, r) = loop {
                let xs = distinct_point(&mut g, n);
                let qv = g.generic(7);
                if let Ok(v) = milne_qbinomial(&nn.0, &xs, &qv) {
                    break v;
                }
            };
            assert_eq!(l, r, "N={}", nn);
        }
    }
}

#[test]
fn homogeneity() {
    let mut g = rng(3);
    let pt = distinct_point(&mut g, 3);
    let z = g.generic(6);
    let scaled: Vec<Q> = pt.iter().map(|a| a * &z).collect();
    for lam in [p(&[2, 1]), p(&[3]), p(&[1, 1, 1, 1])] {
        let a = pprime_multisum(&lam, &Alphabet::rational(&scaled), 12, false).unwrap();
        let b = pprime_multisum(&lam, &Alphabet::rational(&pt), 12, false).unwrap();
        assert!(a.agrees(&b.scale(&qchar::qseries::pow_q(&z, lam.weight()))));
    }
    let r = MultiIndex(vec![2, 1, 1]);
    let s = MultiIndex(vec![1, 1, 0]);
    let a = f_tau(&r, &s, 2, &Alphabet::rational(&scaled), 12).unwrap();
    let b = f_tau(&r, &s, 2, &Alphabet::rational(&pt), 12).unwrap();
    assert!(a.agrees(&b.scale(&qchar::qseries::pow_q(&z, 2 * r.sum()))));
}

#[test]
fn one_variable_closed_form() {
    let order = 30;
    for lam in [p(&[1]), p(&[2, 1]), p(&[1, 1]), p(&[3, 1, 1])] {
        let two: Vec<i64> = lam.parts().iter().map(|v| 2 * v).collect();
        let got = pprime(&p(&two), 1, QMethod::Fermionic, order).unwrap();
        let c = lam.b_lambda().inv(order).unwrap().shift(4 * lam.n_stat()).truncate(order);
        let want = XLaurent::var_pow(1, 0, 2 * lam.weight()).scale(&c);
        assert_eq!(got, want, "{}", lam);
    }
}

#[test]
fn rogers_szego_examples() {
    let z = QSeries::mono(qi(3), 0);
    assert_eq!(rogers_szego(1, &z), QSeries::constant(qi(4)));
    // H_m(q^{1/2}; q) = (-q^{1/2}; q^{1/2})_m
    let t = QSeries::t_pow(1);
    for m in 0..6 {
        let mut want = QSeries::one();
        for j in 1..=m {
            want = &want * &(&QSeries::one() + &QSeries::t_pow(j));
        }
        assert_eq!(rogers_szego(m, &t), want);
    }
}

#[test]
fn h_m_worked_example_and_symmetry() {
    let lam = p(&[6, 4, 3, 3, 2, 1, 1, 1]);
    let w = QSeries::mono(qf(2, 5), 1);
    let z = QSeries::mono(qf(-3, 4), 2);
    let got = h_m_weight(&lam, 3, &w, &z, 40).unwrap();
    let wz = &w * &z;
    let want = &(&rogers_szego(1, &wz).pow(2) * &homogeneous_rs(2, &w, &z)) * &homogeneous_rs(3, &w, &z);
    assert_eq!(got, want);
    // z^5 H_1(wz)^2 H_2(w/z) H_3(w/z) with rational w, z
    let (wr, zr) = (qf(2, 5), qf(-3, 4));
    let c = |v: Q| QSeries::constant(v);
    let ratio = c(&wr / &zr);
    let want2 = (&(&rogers_szego(1, &c(&wr * &zr)).pow(2) * &rogers_szego(2, &ratio)) * &rogers_szego(3, &ratio))
        .scale(&qchar::qseries::pow_q(&zr, 5));
    assert_eq!(h_m_weight(&lam, 3, &c(wr.clone()), &c(zr.clone()), 40).unwrap(), want2);
    for m in 1..=3 {
        for lam in enum_partitions(2 * m, 6, PartFilter::All) {
            assert_eq!(h_m_weight(&lam, m, &w, &z, 30).unwrap(), h_m_weight(&lam, m, &z, &w, 30).unwrap());
        }
    }
}
