use qchar::qseries::{qf, qi, Product, QSeries, Q};
use qchar::rational::{rng, RationalSource};
use qchar::rr::*;

fn zero() -> Mono {
    Mono::constant(qi(0))
}

fn one() -> Mono {
    Mono::constant(qi(1))
}

/// `sum_k q^{k^2 + a k}/(q)_k`, computed term by term.
fn rr_sum(a: i64, order: i64) -> QSeries {
    let mut acc = QSeries::zero_to(order);
    let mut k = 0;
    while 2 * (k * k + a * k) <= order {
        let mut p = Product::new();
        p.mul_mono(&qi(1), 2 * (k * k + a * k));
        p.div_poch(&QSeries::t_pow(2), k).unwrap();
        acc = &acc + &p.finish(order).unwrap();
        k += 1;
    }
    acc
}

#[test]
fn rogers_ramanujan_sums() {
    let f = nahm_f(&NahmSpec::new(1, 1, one(), zero(), zero()).unwrap(), 30).unwrap();
    assert!(f.agrees(&rr_sum(0, 30)));
    assert!(f.agrees(&andrews_gordon_product(2, 30).unwrap()));
    let half = "q^1/2".parse::<Mono>().unwrap();
    let f = nahm_f(&NahmSpec::new(1, 1, half, zero(), zero()).unwrap(), 30).unwrap();
    assert!(f.agrees(&rr_sum(1, 30)));
}

#[test]
fn andrews_gordon() {
    for k in 2..=4 {
        let s = andrews_gordon_sum(k, 20).unwrap();
        assert!(s.agrees(&andrews_gordon_product(k, 20).unwrap()), "k={}", k);
        let f = nahm_f(&NahmSpec::new(k - 1, 1, one(), zero(), zero()).unwrap(), 20).unwrap();
        assert!(f.agrees(&s), "k={}", k);
    }
}

#[test]
fn root_lattice_form() {
    let mut g = rng(41);
    for n in 1..=3 {
        let (u, w, z) = (Mono::constant(g.generic(9)), Mono::constant(g.generic(9)), Mono::constant(g.generic(9)));
        let spec = NahmSpec::new(1, n, u.clone(), w.clone(), z.clone()).unwrap();
        let a = nahm_f(&spec, 12).unwrap();
        let b = nahm_f_root_lattice(n, &u, &w, &z, 12).unwrap();
        assert!(a.agrees(&b), "n={}", n);
    }
}

#[test]
fn m_one_theorem() {
    let mut g = rng(42);
    for n in 1..=3 {
        let spec = NahmSpec::new(1, n, Mono::constant(g.generic(9)), Mono::constant(g.generic(9)), Mono::constant(g.generic(9))).unwrap();
        assert!(spec_is_proved(&spec));
        let (l, r) = spec_sides(&spec, 12).unwrap();
        assert!(l.agrees(&r), "n={}\n{}\n{}", n, l, r);
    }
}

#[test]
fn conjectural_specializations() {
    let mut g = rng(43);
    let spec = NahmSpec::new(2, 1, Mono::constant(g.generic(9)), Mono::constant(g.generic(9)), Mono::constant(g.generic(9))).unwrap();
    let (l, r) = spec_sides(&spec, 12).unwrap();
    assert!(l.agrees(&r), "m=2 n=1\n{}\n{}", l, r);

    let spec = NahmSpec::new(2, 2, one(), zero(), zero()).unwrap();
    assert!(spec_is_proved(&spec));
    let (l, r) = spec_sides(&spec, 12).unwrap();
    assert!(l.agrees(&r), "m=2 n=2\n{}\n{}", l, r);

    let spec = NahmSpec::new(2, 2, Mono::constant(g.generic(9)), Mono::constant(g.generic(9)), Mono::constant(g.generic(9))).unwrap();
    assert!(!spec_is_proved(&spec));
    let (l, r) = spec_sides(&spec, 10).unwrap();
    assert!(l.agrees(&r), "m=2 n=2 generic\n{}\n{}", l, r);
}

#[test]
fn w_z_symmetry() {
    let mut g = rng(44);
    for m in 1..=2 {
        for n in 1..=2 {
            let spec = NahmSpec::new(m, n, Mono::constant(g.generic(9)), Mono::constant(g.generic(9)), Mono::constant(g.generic(9))).unwrap();
            let a = nahm_f(&spec, 12).unwrap();
            let b = nahm_f(&spec.swapped(), 12).unwrap();
            assert!(a.agrees(&b), "m={} n={}", m, n);
        }
    }
}

#[test]
fn unsupported_specialization() {
    let spec = NahmSpec::new(1, 2, "q".parse().unwrap(), zero(), zero()).unwrap();
    assert!(matches!(specialized_hl(&spec, 8), Err(qchar::Error::Unsupported(_))));
}

#[test]
fn parse_monomials() {
    assert_eq!("3".parse::<Mono>().unwrap(), Mono::constant(qi(3)));
    assert_eq!("-2/3*q^1/2".parse::<Mono>().unwrap(), Mono::new(qf(-2, 3), 1));
    assert_eq!("t^3".parse::<Mono>().unwrap(), Mono::new(qi(1), 3));
    assert_eq!("q".parse::<Mono>().unwrap(), Mono::new(Q::from_integer(1.into()), 2));
    assert!("q^1/3".parse::<Mono>().is_err());
    assert!("x^2".parse::<Mono>().is_err());
}

