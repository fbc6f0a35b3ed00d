mod support;

use proptest::prelude::*;
use sunff_core::combinatorics::*;

#[test]
fn unrank_matches_enumeration_everywhere() {
    for n in 2..=5 {
        for m in 0..=8 {
            let shape = IrrepShape::new(n, m).unwrap();
            let brute = support::compositions_brute(n, m);
            assert_eq!(brute.len(), shape.dim());
            for (ell, parts) in brute.iter().enumerate() {
                let got = unrank(shape, ell).unwrap();
                assert_eq!(&got.parts, parts, "n={n} M={m} ell={ell}");
                assert_eq!(got.rank, ell);
                assert_eq!(rank_desc(parts, shape).unwrap(), ell);
            }
            assert_eq!(compositions_desc(shape).unwrap(), brute);
        }
    }
}

#[test]
fn n4_m5_rank_17() {
    let shape = IrrepShape::new(4, 5).unwrap();
    let brute = support::compositions_brute(4, 5);
    assert_eq!(brute.len(), 56);
    assert_eq!(unrank(shape, 17).unwrap().parts, brute[17]);
}

#[test]
fn dimension_recursion() {
    // N(n, M) = sum_{m <= M} N(n-1, m).
    for n in 2..=7 {
        for m in 0..=12 {
            let rec: usize = (0..=m).map(|k| irrep_dimension(n - 1, k).unwrap()).sum();
            assert_eq!(irrep_dimension(n, m).unwrap(), rec);
        }
    }
    assert_eq!(irrep_dimension(3, 2).unwrap(), 6);
    assert_eq!(irrep_dimension(1, 99).unwrap(), 1);
    assert_eq!(irrep_dimension(2, 41).unwrap(), 42);
}

#[test]
fn overflow_is_reported() {
    assert!(matches!(irrep_dimension(80, 1_000_000), Err(sunff_core::Error::Overflow(_))));
    assert!(matches!(binomial(200, 100), Err(sunff_core::Error::Overflow(_))));
}

#[test]
fn endpoints_and_errors() {
    let shape = IrrepShape::new(3, 2).unwrap();
    assert_eq!(rank_desc(&[2, 0, 0], shape).unwrap(), 0);
    assert_eq!(rank_desc(&[0, 0, 2], shape).unwrap(), 5);
    assert_eq!(rank_desc(&[1, 0, 1], shape).unwrap(), 2);
    assert!(unrank(shape, 6).is_err());
    assert!(rank_desc(&[1, 1, 1], shape).is_err());
    assert!(rank_desc(&[2, 0], shape).is_err());
}

proptest! {
    #[test]
    fn roundtrip_and_strict_order(n in 2usize..7, m in 0usize..14, seed in 0usize..10_000) {
        let shape = IrrepShape::new(n, m).unwrap();
        let ell = seed % shape.dim();
        let c = unrank(shape, ell).unwrap();
        prop_assert_eq!(c.parts.iter().sum::<usize>(), m);
        prop_assert_eq!(rank_desc(&c.parts, shape).unwrap(), ell);
        if ell + 1 < shape.dim() {
            let next = unrank(shape, ell + 1).unwrap();
            prop_assert!(c.parts > next.parts);
        }
    }
}
