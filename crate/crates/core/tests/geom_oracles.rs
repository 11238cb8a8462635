//! Randomized cross-checks of the convex kernel against independent oracles.
//!
//! The oracles here are deliberately naive: exhaustive facet-candidate
//! enumeration for hulls, and a barycentric facet-fan triangulation for
//! volumes. They share no code with the incremental hull.

use num::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use okounkov::geom::rat::{dot, norm_sq, primitive_integer, q, qi, sqrt_midpoint_concave, vec_sub, Int, Q};
use okounkov::geom::{Halfspace, Polytope};

fn rand_q(rng: &mut ChaCha8Rng, num_range: i64, max_den: i64) -> Q {
    q(rng.gen_range(-num_range..=num_range), rng.gen_range(1..=max_den))
}

fn rand_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Q> {
    (0..dim).map(|_| rand_q(rng, 8, 4)).collect()
}

/// Exhaustive facet search: every affinely independent triple of points
/// spans a candidate plane; keep it when all points lie on one side.
fn oracle_facets_3d(points: &[Vec<Q>]) -> Vec<Halfspace> {
    let m = points.len();
    let mut out: Vec<Halfspace> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let d1 = vec_sub(&points[j], &points[i]);
                let d2 = vec_sub(&points[k], &points[i]);
                // Cross product = plane normal.
                let n = vec![
                    &d1[1] * &d2[2] - &d1[2] * &d2[1],
                    &d1[2] * &d2[0] - &d1[0] * &d2[2],
                    &d1[0] * &d2[1] - &d1[1] * &d2[0],
                ];
                if n.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let b = dot(&n, &points[i]);
                let mut above = false;
                let mut below = false;
                for p in points {
                    let v = dot(&n, p);
                    if v > b {
                        above = true;
                    } else if v < b {
                        below = true;
                    }
                }
                if above && below {
                    continue;
                }
                // Orient inward: all points satisfy <n, x> >= b.
                let (n, b) = if above { (n, b) } else { (n.iter().map(|x| -x).collect(), -b) };
                let ints = primitive_integer(&n);
                let idx = n.iter().position(|x| !x.is_zero()).unwrap();
                let scale = Q::from_integer(ints[idx].clone()) / &n[idx];
                let h = Halfspace { normal: ints, offset: b * scale };
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn hull_matches_exhaustive_facet_enumeration_in_q3() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for round in 0..4 {
        let count = 50;
        let points: Vec<Vec<Q>> = (0..count).map(|_| rand_point(&mut rng, 3)).collect();
        let hull = Polytope::hull(3, &points).unwrap();
        assert_eq!(hull.dim(), Some(3), "round {round}: degenerate sample");
        let oracle = oracle_facets_3d(&points);
        assert_eq!(hull.facets(), &oracle[..], "round {round}: facet sets differ");
        // Vertices: points tight on a full-rank set of oracle facets.
        let mut expected: Vec<Vec<Q>> = points
            .iter()
            .filter(|p| {
                let tight: Vec<Vec<Q>> = oracle
                    .iter()
                    .filter(|h| h.tight(p))
                    .map(|h| h.normal.iter().map(|x| Q::from_integer(x.clone())).collect())
                    .collect();
                tight.len() >= 3 && okounkov::geom::linalg::rank(&tight) == 3
            })
            .cloned()
            .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(hull.vertices(), &expected[..], "round {round}: vertex sets differ");
    }
}

/// Independent volume: barycentric facet-fan triangulation. Each facet
/// polygon is fanned around its own centroid using its boundary edges
/// (vertex pairs sharing a second facet), then coned over the body centroid.
fn oracle_volume_3d(p: &Polytope) -> Q {
    let verts = p.vertices();
    let centroid = |pts: &[&Vec<Q>]| -> Vec<Q> {
        let n = Q::from_integer(Int::from(pts.len() as i64));
        (0..3)
            .map(|c| pts.iter().map(|v| v[c].clone()).sum::<Q>() / &n)
            .collect()
    };
    let all: Vec<&Vec<Q>> = verts.iter().collect();
    let c_body = centroid(&all);
    let mut vol = Q::zero();
    for f in p.facets() {
        let on_facet: Vec<&Vec<Q>> = verts.iter().filter(|v| f.tight(v)).collect();
        let c_f = centroid(&on_facet);
        for a in 0..on_facet.len() {
            for b in a + 1..on_facet.len() {
                let shares_other = p
                    .facets()
                    .iter()
                    .any(|g| g != f && g.tight(on_facet[a]) && g.tight(on_facet[b]));
                if !shares_other {
                    continue;
                }
                let rows = vec![
                    vec_sub(&c_f, &c_body),
                    vec_sub(on_facet[a], &c_body),
                    vec_sub(on_facet[b], &c_body),
                ];
                vol += okounkov::geom::linalg::det(&rows).abs();
            }
        }
    }
    vol / qi(6)
}

#[test]
fn volume_matches_barycentric_triangulation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..8 {
        let points: Vec<Vec<Q>> = (0..12).map(|_| rand_point(&mut rng, 3)).collect();
        let hull = Polytope::hull(3, &points).unwrap();
        if hull.dim() != Some(3) {
            continue;
        }
        assert_eq!(hull.volume(), oracle_volume_3d(&hull));
    }
}

#[test]
fn fubini_reconstruction_equals_volume_on_random_polytopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..6 {
        let points: Vec<Vec<Q>> = (0..10).map(|_| rand_point(&mut rng, 3)).collect();
        let hull = Polytope::hull(3, &points).unwrap();
        assert_eq!(hull.fubini_volume().unwrap(), hull.volume());
    }
    // Also in the plane.
    for _ in 0..6 {
        let points: Vec<Vec<Q>> = (0..8).map(|_| rand_point(&mut rng, 2)).collect();
        let hull = Polytope::hull(2, &points).unwrap();
        assert_eq!(hull.fubini_volume().unwrap(), hull.volume());
    }
}

#[test]
fn minkowski_sum_of_simplices_is_hull_of_pairwise_sums() {
    let s1 = Polytope::hull(2, &[vec![qi(0), qi(0)], vec![qi(1), qi(0)], vec![qi(0), qi(1)]]).unwrap();
    let s2 = Polytope::hull(2, &[vec![qi(0), qi(0)], vec![qi(2), qi(1)], vec![qi(1), qi(2)]]).unwrap();
    let mut sums = Vec::new();
    for a in s1.vertices() {
        for b in s2.vertices() {
            sums.push(vec![&a[0] + &b[0], &a[1] + &b[1]]);
        }
    }
    assert_eq!(sums.len(), 9);
    let expected = Polytope::hull(2, &sums).unwrap();
    assert_eq!(s1.minkowski_sum(&s2).unwrap(), expected);
    // Associativity up to representation equality.
    let s3 = Polytope::hull(2, &[vec![qi(0), qi(0)], vec![qi(1), qi(1)]]).unwrap();
    let left = s1.minkowski_sum(&s2).unwrap().minkowski_sum(&s3).unwrap();
    let right = s1.minkowski_sum(&s2.minkowski_sum(&s3).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn unimodular_images_preserve_volume() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..6 {
        let points: Vec<Vec<Q>> = (0..9).map(|_| rand_point(&mut rng, 3)).collect();
        let hull = Polytope::hull(3, &points).unwrap();
        // Random product of integer shears: always unimodular.
        let mut g = okounkov::geom::linalg::identity_int(3);
        for _ in 0..6 {
            let i = rng.gen_range(0..3);
            let mut j = rng.gen_range(0..3);
            if i == j {
                j = (j + 1) % 3;
            }
            let mut shear = okounkov::geom::linalg::identity_int(3);
            shear[i][j] = Int::from(rng.gen_range(-2..=2i64));
            g = okounkov::geom::linalg::mat_mul_int(&g, &shear);
        }
        assert!(okounkov::geom::linalg::int_det(&g).abs().is_one());
        let image = hull.apply_unimodular(&g).unwrap();
        assert_eq!(image.volume(), hull.volume());
    }
}

#[test]
fn slice_nonempty_iff_in_projection_range() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..5 {
        let points: Vec<Vec<Q>> = (0..8).map(|_| rand_point(&mut rng, 3)).collect();
        let hull = Polytope::hull(3, &points).unwrap();
        let (lo, hi) = hull.coord_range(0).unwrap();
        for t in [&lo - qi(1), lo.clone(), (&lo + &hi) / qi(2), hi.clone(), &hi + q(1, 3)] {
            let inside = t >= lo && t <= hi;
            assert_eq!(!hull.slice(&t).unwrap().is_empty(), inside);
        }
    }
}

#[test]
fn slice_volume_midpoint_concavity() {
    // Brunn-Minkowski: t -> vol(slice)^(1/(n-1)) is concave; checked at
    // rational triples with the exact two-square-root comparison.
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..6 {
        let points: Vec<Vec<Q>> = (0..10).map(|_| rand_point(&mut rng, 3)).collect();
        let hull = Polytope::hull(3, &points).unwrap();
        if hull.dim() != Some(3) {
            continue;
        }
        let (lo, hi) = hull.coord_range(0).unwrap();
        let width = &hi - &lo;
        for (f1, f2) in [(q(1, 8), q(5, 8)), (q(1, 4), q(3, 4)), (q(1, 16), q(15, 16))] {
            let t1 = &lo + &width * f1;
            let t2 = &lo + &width * f2;
            let mid = (&t1 + &t2) / qi(2);
            let a = hull.slice(&t1).unwrap().volume();
            let b = hull.slice(&t2).unwrap().volume();
            let m = hull.slice(&mid).unwrap().volume();
            assert!(sqrt_midpoint_concave(&a, &b, &m), "BM violated at {t1}..{t2}");
        }
    }
}

#[test]
fn hausdorff_of_dilated_simplex_is_exact_epsilon() {
    // Simplex with a vertex at the origin: d_H(S, (1+eps) S) = eps * max
    // vertex distance along the dilation; for the standard simplex this is
    // exactly eps (attained at the unit vertices), and it decreases to 0.
    let s = Polytope::hull(2, &[vec![qi(0), qi(0)], vec![qi(1), qi(0)], vec![qi(0), qi(1)]]).unwrap();
    let mut prev: Option<Q> = None;
    for k in 1..=5 {
        let eps = q(1, 1 << k);
        let dilated = s.scale(&(qi(1) + &eps)).unwrap();
        let d_sq = s.hausdorff_distance_sq(&dilated).unwrap();
        // Oracle: maximize vertex distances by hand. The farthest vertex of
        // the dilated simplex from S is (1+eps, 0) (or (0, 1+eps)), at
        // distance eps.
        let expected: Q = dilated
            .vertices()
            .iter()
            .map(|v| s.point_distance_sq(v))
            .max()
            .unwrap();
        assert_eq!(d_sq, expected);
        assert_eq!(d_sq, &eps * &eps);
        if let Some(p) = prev {
            assert!(d_sq < p);
        }
        prev = Some(d_sq);
    }
}

#[test]
fn point_distance_agrees_with_vertex_maximization_on_translates() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let s = Polytope::hull(2, &[vec![qi(0), qi(0)], vec![qi(2), qi(0)], vec![qi(0), qi(2)]]).unwrap();
    for _ in 0..10 {
        let p = rand_point(&mut rng, 2);
        let d = s.point_distance_sq(&p);
        // Distance must be at most any vertex distance and 0 iff inside.
        let min_vertex: Q = s.vertices().iter().map(|v| norm_sq(&vec_sub(v, &p))).min().unwrap();
        assert!(d <= min_vertex);
        assert_eq!(d.is_zero(), s.contains_point(&p));
    }
}
