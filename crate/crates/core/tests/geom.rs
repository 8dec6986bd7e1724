use hamtet::geom::{centroid, exact_sum, orient3d_value, tetra_contains, tetra_volume6, Containment};
use hamtet::{orient3d, Point3, Sign, Tetra};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = BigRational> {
    (-1_000_000i64..1_000_000, 1i64..1000).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn point() -> impl Strategy<Value = Point3> {
    (rat(), rat(), rat()).prop_map(|(x, y, z)| Point3::new(x, y, z))
}

fn flip(s: Sign) -> Sign {
    match s {
        Sign::Positive => Sign::Negative,
        Sign::Negative => Sign::Positive,
        Sign::Zero => Sign::Zero,
    }
}

proptest! {
    #[test]
    fn swapping_two_points_flips_the_sign(a in point(), b in point(), c in point(), d in point()) {
        let s = orient3d(&a, &b, &c, &d);
        prop_assert_eq!(orient3d(&b, &a, &c, &d), flip(s));
        prop_assert_eq!(orient3d(&a, &b, &d, &c), flip(s));
        prop_assert_eq!(orient3d(&b, &c, &a, &d), s);
    }

    #[test]
    fn translation_invariance(a in point(), b in point(), c in point(), d in point(), t in point()) {
        let s = orient3d(&a, &b, &c, &d);
        let v = t.coords();
        let shift = |p: &Point3| p.translate(v);
        prop_assert_eq!(orient3d(&shift(&a), &shift(&b), &shift(&c), &shift(&d)), s);
    }

    #[test]
    fn filtered_sign_matches_exact_value(a in point(), b in point(), c in point(), d in point()) {
        prop_assert_eq!(orient3d(&a, &b, &c, &d), Sign::of(&orient3d_value(&a, &b, &c, &d)));
    }

    #[test]
    fn centroid_is_strictly_inside(a in point(), b in point(), c in point(), d in point()) {
        let pts = vec![a, b, c, d];
        let s = orient3d(&pts[0], &pts[1], &pts[2], &pts[3]);
        prop_assume!(s != Sign::Zero);
        let t = if s == Sign::Positive { Tetra([0, 1, 2, 3]) } else { Tetra([1, 0, 2, 3]) };
        let g = centroid(&pts).unwrap();
        prop_assert_eq!(tetra_contains(&t, &g, &pts), Containment::Interior);
    }

    #[test]
    fn exact_sum_matches_fold(v in proptest::collection::vec(rat(), 0..40)) {
        let folded = v.iter().fold(BigRational::from_integer(0.into()), |acc, x| acc + x);
        prop_assert_eq!(exact_sum(v), folded);
    }
}

#[test]
fn orient3d_examples() {
    let o = Point3::from_ints(0, 0, 0);
    let (x, y, z) = (
        Point3::from_ints(1, 0, 0),
        Point3::from_ints(0, 1, 0),
        Point3::from_ints(0, 0, 1),
    );
    assert_eq!(orient3d(&o, &x, &y, &z), Sign::Positive);
    assert_eq!(orient3d(&o, &y, &x, &z), Sign::Negative);
    assert_eq!(orient3d(&o, &x, &y, &Point3::from_ints(1, 1, 0)), Sign::Zero);
}

#[test]
fn near_coplanar_points_get_the_exact_sign() {
    // A fourth point 10⁻³⁰ above the plane z = 0, far outside f64 resolution.
    let tiny = BigRational::new(BigInt::from(1), BigInt::from(10).pow(30));
    let d = Point3::new(
        BigRational::from_integer(1.into()),
        BigRational::from_integer(1.into()),
        tiny.clone(),
    );
    let o = Point3::from_ints(0, 0, 0);
    let (x, y) = (Point3::from_ints(1, 0, 0), Point3::from_ints(0, 1, 0));
    assert_eq!(orient3d(&o, &x, &y, &d), Sign::Positive);
    assert_eq!(orient3d(&o, &y, &x, &d), Sign::Negative);
}

#[test]
fn volume_and_containment_examples() {
    let pts = vec![
        Point3::from_ints(0, 0, 0),
        Point3::from_ints(1, 0, 0),
        Point3::from_ints(0, 1, 0),
        Point3::from_ints(0, 0, 1),
        Point3::from_ints(2, 0, 0),
        Point3::from_ints(0, 2, 0),
        Point3::from_ints(0, 0, 2),
    ];
    let one = BigRational::from_integer(1.into());
    assert_eq!(tetra_volume6(&Tetra([0, 1, 2, 3]), &pts), one);
    assert_eq!(
        tetra_volume6(&Tetra([0, 4, 5, 6]), &pts),
        BigRational::from_integer(8.into())
    );
    let t = Tetra([0, 1, 2, 3]);
    assert_eq!(
        tetra_contains(&t, &Point3::from_ratios((1, 4), (1, 4), (1, 4)), &pts),
        Containment::Interior
    );
    assert_eq!(tetra_contains(&t, &pts[0], &pts), Containment::Boundary);
    assert_eq!(
        tetra_contains(&t, &Point3::from_ints(2, 2, 2), &pts),
        Containment::Exterior
    );
}

#[test]
fn centroid_examples() {
    let c = centroid(&[Point3::from_ints(0, 0, 0), Point3::from_ints(2, 0, 0)]).unwrap();
    assert_eq!(c, Point3::from_ints(1, 0, 0));
    assert_eq!(
        centroid(&[Point3::from_ints(1, 1, 1)]).unwrap(),
        Point3::from_ints(1, 1, 1)
    );
    assert!(centroid(&[]).is_err());
}
