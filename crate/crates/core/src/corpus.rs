//! Seeded point-set generators for tests, benchmarks and the `gen` command.
//!
//! Every generator is deterministic in its seed and produces exact rational
//! coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::geom::{centroid, Point3};
use crate::hull::{convex_hull, skeleton_degrees};

const GRID: i64 = 1_000_000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn on_grid(x: f64) -> BigRational {
    BigRational::new(BigInt::from((x * GRID as f64).round() as i64), BigInt::from(GRID))
}

fn grid_point(p: [f64; 3]) -> Point3 {
    Point3::new(on_grid(p[0]), on_grid(p[1]), on_grid(p[2]))
}

/// `n` points uniform in the unit ball, rounded to a 10⁻⁶ grid.
pub fn ball_points(n: usize, seed: u64) -> Vec<Point3> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p: [f64; 3] = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        if p.iter().map(|c| c * c).sum::<f64>() < 1.0 {
            let q = grid_point(p);
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// `n` points exactly on the unit sphere: rational points of the plane, mapped
/// by inverse stereographic projection.
pub fn sphere_points(n: usize, seed: u64) -> Vec<Point3> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    while out.len() < n {
        let d: [f64; 3] = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
        let len = d.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(0.1..=1.0).contains(&len) {
            continue;
        }
        let u = d.map(|c| c / len);
        if u[2] > 0.999 {
            continue;
        }
        let (a, b) = (on_grid(u[0] / (1.0 - u[2])), on_grid(u[1] / (1.0 - u[2])));
        let s = &a * &a + &b * &b;
        let den = &s + &one;
        let q = Point3::new(&two * &a / &den, &two * &b / &den, (&s - &one) / &den);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

/// The six points `±e_i`.
pub fn octahedron() -> Vec<Point3> {
    vec![
        Point3::from_ints(1, 0, 0),
        Point3::from_ints(-1, 0, 0),
        Point3::from_ints(0, 1, 0),
        Point3::from_ints(0, -1, 0),
        Point3::from_ints(0, 0, 1),
        Point3::from_ints(0, 0, -1),
    ]
}

/// A rational icosahedron (golden ratio approximated by 1618/1000) with each
/// vertex scaled by a seeded factor in `[1, 1.01)` to break symmetric coplanarities.
pub fn icosahedron(seed: u64) -> Vec<Point3> {
    let mut r = rng(seed);
    let phi = (1618, 1000);
    let mut out = vec![];
    for &(s1, s2) in &[(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let one = (s1, 1);
        let ph = (s2 * phi.0, phi.1);
        out.push([(0, 1), one, ph]);
        out.push([one, ph, (0, 1)]);
        out.push([ph, (0, 1), one]);
    }
    out.into_iter()
        .map(|c| {
            let k: i64 = r.gen_range(0..100);
            let f = BigRational::new(BigInt::from(10_000 + k), BigInt::from(10_000));
            let q = |(n, d): (i64, i64)| BigRational::new(n.into(), d.into()) * &f;
            Point3::new(q(c[0]), q(c[1]), q(c[2]))
        })
        .collect()
}

/// Adds `count` points strictly inside the hull of `points`: seeded convex
/// combinations of four distinct hull points with positive weights.
pub fn add_interior(points: &mut Vec<Point3>, count: usize, seed: u64) -> Result<()> {
    let hull = convex_hull(points)?;
    let ext = hull.exterior.clone();
    let mut r = rng(seed);
    let mut added = 0;
    while added < count {
        let w: Vec<i64> = (0..4).map(|_| r.gen_range(1..1000)).collect();
        let total: i64 = w.iter().sum();
        let picks: Vec<usize> = rand::seq::index::sample(&mut r, ext.len(), 4)
            .iter()
            .map(|k| ext[k])
            .collect();
        let mut acc = [
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
            BigRational::from_integer(0.into()),
        ];
        for (k, &i) in picks.iter().enumerate() {
            for (a, c) in acc.iter_mut().zip(points[i].coords()) {
                *a += c * BigRational::new(w[k].into(), total.into());
            }
        }
        let [x, y, z] = acc;
        let p = Point3::new(x, y, z);
        if points.contains(&p) {
            continue;
        }
        // Coplanar corners land on the hull.
        let mut trial = points.clone();
        trial.push(p.clone());
        match convex_hull(&trial) {
            Ok(h) if h.interior.contains(&(trial.len() - 1)) => {
                points.push(p);
                added += 1;
            }
            _ => {}
        }
    }
    Ok(())
}

/// Adds `count` points that are degree-3 hull vertices when added: each sits
/// just beyond the centroid of a seeded hull facet. Later points may stack on
/// facets created by earlier ones.
pub fn add_degree3(points: &mut Vec<Point3>, count: usize, seed: u64) -> Result<()> {
    let mut r = rng(seed);
    let mut added = 0;
    let mut attempts = 0;
    while added < count && attempts < 100 * (count + 1) {
        attempts += 1;
        let hull = convex_hull(points)?;
        let center = centroid(&hull.exterior.iter().map(|&i| points[i].clone()).collect::<Vec<_>>())?;
        let f = hull.mesh.facets()[r.gen_range(0..hull.mesh.facets().len())];
        let c = centroid(&[points[f[0]].clone(), points[f[1]].clone(), points[f[2]].clone()])?;
        let mut eps = BigRational::new(1.into(), 10.into());
        for _ in 0..40 {
            // c + eps * (c - center)
            let p = center.lerp(&c, &(BigRational::from_integer(1.into()) + &eps));
            let mut trial = points.clone();
            trial.push(p.clone());
            if let Ok(h) = convex_hull(&trial) {
                let idx = trial.len() - 1;
                if skeleton_degrees(&h.mesh).get(&idx) == Some(&3) && h.interior.len() == hull.interior.len() {
                    points.push(p);
                    added += 1;
                    break;
                }
            }
            eps /= BigRational::from_integer(2.into());
        }
    }
    Ok(())
}

/// Icosahedron with `peels` stacked degree-3 vertices and `interior` inner points.
pub fn forced_instance(seed: u64, peels: usize, interior: usize) -> Result<Vec<Point3>> {
    let mut pts = icosahedron(seed);
    add_degree3(&mut pts, peels, seed.wrapping_mul(31).wrapping_add(1))?;
    add_interior(&mut pts, interior, seed.wrapping_mul(31).wrapping_add(2))?;
    Ok(pts)
}
