use num_traits::Zero;
use proptest::prelude::*;

use qchar::qseries::{poch_base, poch_recip_base, qf, Extent, QSeries, Q};
use qchar::rational::{rpoch, rpow};

fn rat() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=30).prop_filter_map("nonzero, not ±1", |(a, b)| {
        let v = qf(a, b);
        (a != 0 && v != qf(1, 1) && v != qf(-1, 1)).then_some(v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // (a)_{-n} / (b)_{-n} = (q/b)_n / (q/a)_n (b/a)^n
    #[test]
    fn negative_index_ratio(a in rat(), b in rat(), q in rat(), n in 1i64..=5) {
        // a = q^k makes (a)_{-n} singular and (q/a)_n vanish together
        let lhs = rpoch(&a, &q, -n).and_then(|x| Ok(x / rpoch(&b, &q, -n)?));
        prop_assume!(lhs.is_ok());
        let d = rpoch(&(&q / &a), &q, n).unwrap();
        prop_assert!(!d.is_zero());
        let rhs = rpoch(&(&q / &b), &q, n).unwrap() / d * rpow(&(&b / &a), n);
        prop_assert_eq!(lhs.unwrap(), rhs);
    }

    #[test]
    fn negative_index_ratio_as_series(a in rat(), b in rat(), n in 1i64..=5) {
        let order = 16;
        let q = QSeries::t_pow(2);
        let (sa, sb) = (QSeries::constant(a.clone()), QSeries::constant(b.clone()));
        let lhs = &poch_base(&sa, 2, Extent::Finite(-n), order).unwrap() * &poch_recip_base(&sb, 2, Extent::Finite(-n), order).unwrap();
        let qa = &q * &QSeries::constant(a.recip());
        let qb = &q * &QSeries::constant(b.recip());
        let rhs = &(&poch_base(&qb, 2, Extent::Finite(n), order).unwrap() * &poch_recip_base(&qa, 2, Extent::Finite(n), order).unwrap())
            * &QSeries::constant(rpow(&(&b / &a), n));
        prop_assert!(lhs.truncate(order).agrees(&rhs.truncate(order)));
    }

    #[test]
    fn split_at_n(a in rat(), n in 0i64..=6) {
        // (a)_∞ = (a)_n (a q^n)_∞
        let order = 20;
        let sa = QSeries::constant(a);
        let whole = poch_base(&sa, 2, Extent::Infinite, order).unwrap();
        let head = poch_base(&sa, 2, Extent::Finite(n), order).unwrap();
        let tail = poch_base(&sa.shift(2 * n), 2, Extent::Infinite, order).unwrap();
        prop_assert!(whole.agrees(&(&head * &tail).truncate(order)));
    }
}
