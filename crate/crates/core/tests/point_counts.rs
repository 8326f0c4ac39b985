use mukai_core::clifford::Parity;
use mukai_core::quadrics::{clifford_quadrics, interpolate_quadrics};
use mukai_core::variety::{enumerate_points, enumerate_points_f2};
use mukai_core::PrimeField;

fn cell_count(q: u64) -> u64 {
    (1 + q) * (1 + q * q) * (1 + q.pow(3)) * (1 + q.pow(4))
}

#[test]
fn even_tenfold_over_f2_bitpacked_matches_generic() {
    let f = PrimeField::new(2).unwrap();
    let sys = interpolate_quadrics(Parity::Even, 150, 11).unwrap().over(&f);
    let (fast, fast_pts) = enumerate_points_f2(&sys, 5).unwrap();
    let (slow, slow_pts) = enumerate_points(&sys, 5).unwrap();
    assert_eq!(fast.total, cell_count(2));
    assert_eq!(fast.total, 2295);
    assert_eq!(fast.smooth, fast.total);
    assert_eq!(fast_pts, slow_pts);
    assert_eq!((slow.total, slow.smooth, slow.singular), (fast.total, fast.smooth, 0));
}

#[test]
fn odd_tenfold_over_f2_has_the_same_count() {
    let f = PrimeField::new(2).unwrap();
    let sys = clifford_quadrics(Parity::Odd).over(&f);
    let (report, _) = enumerate_points_f2(&sys, 5).unwrap();
    assert_eq!(report.total, 2295);
    assert_eq!(report.singular, 0);
}

#[test]
fn even_tenfold_over_f3() {
    let f = PrimeField::new(3).unwrap();
    let sys = clifford_quadrics(Parity::Even).over(&f);
    let (report, points) = enumerate_points(&sys, 5).unwrap();
    assert_eq!(report.total, cell_count(3));
    assert_eq!(report.total, 91840);
    assert_eq!(report.smooth, 91840);
    assert!(points.iter().all(|(_, r)| *r == 5));
}

#[test]
fn large_fields_are_refused() {
    let f = PrimeField::new(5).unwrap();
    let sys = clifford_quadrics(Parity::Even).over(&f);
    assert!(enumerate_points(&sys, 5).is_err());
}
