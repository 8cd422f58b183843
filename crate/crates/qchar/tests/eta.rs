use qchar::eta::*;
use qchar::partitions::{enum_partitions, PartFilter};
use qchar::qseries::{eta_quotient, qi, triple_product, QSeries};
use qchar::report::Status;
use qchar::symfunc::{pprime, QMethod};

#[test]
fn macdonald_degeneration() {
    for e in REGISTRY {
        for n in 1..=2 {
            let l = lattice_side(e, n, 0, 20).unwrap_or_else(|err| panic!("{} n={}: {}", e.id, n, err));
            assert!(l.agrees(&QSeries::one()), "{} n={}: {}", e.id, n, l);
            assert!(hl_side(e, n, 0, 20).unwrap().agrees(&QSeries::one()));
        }
    }
}

#[test]
fn offsets_cancel() {
    for e in REGISTRY.iter().filter(|e| e.norm.is_some()) {
        for n in 1..=4 {
            for m in 0..=3 {
                let (off, _) = lattice_theta(e, n, m, 0).unwrap();
                let eq = eta_factor(e, n, 0).unwrap();
                assert_eq!(&off + &eq.offset, qi(0), "{} n={} m={}", e.id, n, m);
            }
        }
    }
}

#[test]
fn jacobi_cube() {
    let e = identity("C1-FS").unwrap();
    let (off, theta) = lattice_theta(e, 1, 0, 40).unwrap();
    let eta3 = eta_quotient(&[(qi(1), 3)], 40).unwrap();
    assert_eq!(off, eta3.offset);
    assert!(theta.agrees(&eta3.body));
    // (-1)^k (2k+1) q^{k(k+1)/2}
    let mut k = 0;
    while k * (k + 1) <= 40 {
        let s = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(theta.coeff(k * (k + 1)), qi(s * (2 * k + 1)));
        k += 1;
    }
}

#[test]
fn cn_eta_power_constant() {
    let e = identity("MD-C").unwrap();
    for n in 1..=4 {
        assert_eq!(Chi::B.eval(&Rho::C.vector(n)), cn_constant(n), "n={}", n);
    }
    assert_eq!(cn_constant(3), qi(6 * 120));
    // eta^{2n^2+n} = c_0 sum chi_B(v) q^{|v|^2/(4(n+1))}
    for n in 1..=2 {
        let (_, theta) = lattice_theta(e, n, 0, 20).unwrap();
        let power = eta_quotient(&[(qi(1), (2 * n * n + n) as i64)], 20).unwrap();
        assert!(theta.agrees(&power.body), "n={}", n);
    }
}

#[test]
fn corollary_matches_section_forms() {
    for (a, b) in [("MD-C", "C1-FS"), ("MD-BC", "BC-6b")] {
        for n in 1..=2 {
            for m in 0..=2 {
                let x = lattice_side(identity(a).unwrap(), n, m, 16).unwrap();
                let y = lattice_side(identity(b).unwrap(), n, m, 16).unwrap();
                assert!(x.agrees(&y), "{} {} n={} m={}", a, b, n, m);
            }
        }
    }
}

#[test]
fn rogers_ramanujan_desk_check() {
    let e = identity("BC-6c-RR").unwrap();
    let rr = (&triple_product(2, 3, 5, 5, 30).unwrap() * &qchar::qseries::poch_recip(&QSeries::t_pow(2), qchar::qseries::Extent::Infinite, 30).unwrap()).truncate(30);
    let l = lattice_side(e, 1, 1, 30).unwrap();
    let h = hl_side(e, 1, 1, 30).unwrap();
    let f = f_side(e, 1, 1, 30).unwrap().unwrap();
    assert!(l.agrees(&rr));
    assert!(h.agrees(&rr));
    assert!(f.agrees(&rr));
}

#[test]
fn andrews_gordon_from_lattice() {
    let e = identity("BC-6c-RR").unwrap();
    for m in 1..=3usize {
        let l = lattice_side(e, 1, m as i64, 20).unwrap();
        let ag = qchar::rr::andrews_gordon_sum(m + 1, 20).unwrap();
        assert!(l.agrees(&ag), "m={}", m);
    }
}

#[test]
fn feigin_stoyanovsky_rank_one() {
    let e = identity("C1-FS").unwrap();
    let h = hl_side(e, 1, 1, 16).unwrap();
    let f = f_side(e, 1, 1, 16).unwrap().unwrap();
    assert!(h.agrees(&f));
}

#[test]
fn principal_specialization_cross_check() {
    for ones in 1..=3 {
        for lambda in enum_partitions(8, 8, PartFilter::All).filter(|l| l.weight() >= 1 && l.weight() <= 6) {
            let a = principal_pprime(&lambda, ones, 10).unwrap();
            let p = pprime(&lambda, ones, QMethod::Charge, 10).unwrap();
            let mut b = QSeries::zero_to(10);
            for (_, c) in p.terms() {
                b = &b + c;
            }
            assert!(a.agrees(&b), "{} ones={}", lambda, ones);
        }
    }
}

#[test]
fn all_identities_small() {
    for e in REGISTRY {
        for n in 1..=2 {
            for m in 1..=2 {
                for r in verify_eta(e, n, m, 12) {
                    assert!(!r.status.is_failure(), "{}", r.to_text());
                    assert_ne!(r.status, Status::ConjecturalFail, "{}", r.to_text());
                }
            }
        }
    }
}

#[test]
fn unknown_id() {
    assert!(matches!(identity("nope"), Err(qchar::Error::UnknownId(_))));
}

