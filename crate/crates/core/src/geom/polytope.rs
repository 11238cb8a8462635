//! Exact convex polytopes in Q^n with dual V/H representations.
//!
//! Construction always goes through `hull`, which computes irredundant
//! vertex and facet lists and cross-validates them. Lower-dimensional
//! polytopes are first-class: their affine hull is recorded as a list of
//! equations and their facets live inside that hull. The empty polytope is
//! a distinct value, not an error.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::linalg;
use super::qpoly::{interior_samples, PiecewisePoly, QPoly};
use super::rat::{dot, dot_int, norm_sq, primitive_integer, sqrt_approx, vec_add, vec_scale, vec_sub, Int, Q};

/// Closed halfspace `<normal, x> >= offset` with primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub offset: Q,
}

impl Halfspace {
    pub fn satisfies(&self, p: &[Q]) -> bool {
        dot_int(&self.normal, p) >= self.offset
    }

    pub fn tight(&self, p: &[Q]) -> bool {
        dot_int(&self.normal, p) == self.offset
    }
}

#[derive(Debug, Clone)]
pub struct Polytope {
    ambient: usize,
    /// Lex-sorted, irredundant. Empty list encodes the empty polytope.
    vertices: Vec<Vec<Q>>,
    /// Irredundant facet inequalities, canonical and sorted. For a
    /// d-dimensional polytope these cut out the body inside its affine hull.
    facets: Vec<Halfspace>,
    /// Affine hull equations `<a, x> = b` (empty when full-dimensional).
    equations: Vec<Halfspace>,
    /// None for the empty polytope.
    dim: Option<usize>,
    /// Lattice-normalized dim-volume (1 for a point, 0 for empty).
    rel_volume: Q,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}
impl Eq for Polytope {}

impl Polytope {
    pub fn empty(ambient: usize) -> Polytope {
        Polytope {
            ambient,
            vertices: vec![],
            facets: vec![],
            equations: vec![],
            dim: None,
            rel_volume: Q::zero(),
        }
    }

    /// Convex hull of a nonempty set of points in Q^ambient.
    pub fn hull(ambient: usize, points: &[Vec<Q>]) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if ambient == 0 || points.iter().any(|p| p.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "hull input must consist of points of dimension {ambient}"
            )));
        }
        let mut pts: Vec<Vec<Q>> = points.to_vec();
        pts.sort();
        pts.dedup();

        let basis_idx = affine_basis_indices(&pts);
        let d = basis_idx.len() - 1;

        if d == 0 {
            let p = pts[0].clone();
            let equations = (0..ambient)
                .map(|i| {
                    let mut normal = vec![Int::zero(); ambient];
                    normal[i] = Int::one();
                    Halfspace { normal, offset: p[i].clone() }
                })
                .collect();
            return Ok(Polytope {
                ambient,
                vertices: vec![p],
                facets: vec![],
                equations,
                dim: Some(0),
                rel_volume: Q::one(),
            });
        }

        // Reduce to full-dimensional coordinates. For d == n the reduction
        // is the identity; otherwise map through a basis of the saturated
        // direction lattice so that volumes are lattice-normalized.
        let (reduced, basis, base_point): (Vec<Vec<Q>>, Option<Vec<Vec<Int>>>, Vec<Q>) = if d == ambient {
            (pts.clone(), None, vec![Q::zero(); ambient])
        } else {
            let p0 = pts[basis_idx[0]].clone();
            let dirs: Vec<Vec<Q>> = basis_idx[1..].iter().map(|&i| vec_sub(&pts[i], &p0)).collect();
            let b = linalg::saturated_lattice_basis(&dirs, ambient);
            debug_assert_eq!(b.len(), d);
            let bt: Vec<Vec<Q>> = (0..ambient)
                .map(|col| b.iter().map(|row| Q::from_integer(row[col].clone())).collect())
                .collect();
            let reduced = pts
                .iter()
                .map(|p| {
                    linalg::solve(&bt, &vec_sub(p, &p0))
                        .expect("point outside its own affine span")
                })
                .collect();
            (reduced, Some(b), p0)
        };

        let hull = hull_full_dim(&reduced, d, &basis_idx)?;

        // Vertices in the original coordinates.
        let mut vertices: Vec<Vec<Q>> = hull.vertex_indices.iter().map(|&i| pts[i].clone()).collect();
        vertices.sort();

        // Facets, pulled back through the reduction when needed.
        let mut facets: Vec<Halfspace> = Vec::new();
        for (normal, offset) in &hull.facets {
            let (n_amb, b_amb) = match &basis {
                None => (normal.clone(), offset.clone()),
                Some(b) => pull_back_facet(b, &base_point, normal, offset),
            };
            facets.push(canonical_halfspace(&n_amb, &b_amb));
        }
        facets.sort();
        facets.dedup();

        // Affine hull equations.
        let mut equations: Vec<Halfspace> = Vec::new();
        if let Some(b) = &basis {
            let bq = linalg::to_q_matrix(b);
            for a in linalg::null_space(&bq) {
                let mut normal = primitive_integer(&a);
                // Canonical sign: first nonzero entry positive.
                if normal.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                    normal = normal.iter().map(|x| -x).collect();
                }
                let offset = dot_int(&normal, &base_point);
                equations.push(Halfspace { normal, offset });
            }
            equations.sort();
        }

        let poly = Polytope {
            ambient,
            vertices,
            facets,
            equations,
            dim: Some(d),
            rel_volume: hull.volume,
        };
        poly.validate()?;
        Ok(poly)
    }

    /// Bounded intersection of halfspaces and equations. The caller must
    /// guarantee boundedness; the computed hull of basic solutions is only
    /// the polytope itself in that case.
    pub fn from_halfspaces(
        ambient: usize,
        ineqs: &[(Vec<Q>, Q)],
        eqs: &[(Vec<Q>, Q)],
    ) -> Result<Polytope> {
        let mut constraints: Vec<(Vec<Q>, Q, bool)> = Vec::new();
        for (a, b) in eqs {
            if a.iter().all(|x| x.is_zero()) {
                if !b.is_zero() {
                    return Ok(Polytope::empty(ambient));
                }
                continue;
            }
            constraints.push((a.clone(), b.clone(), true));
        }
        for (a, b) in ineqs {
            if a.iter().all(|x| x.is_zero()) {
                if b.is_positive() {
                    return Ok(Polytope::empty(ambient));
                }
                continue;
            }
            constraints.push((a.clone(), b.clone(), false));
        }
        let m = constraints.len();
        let feasible = |x: &[Q]| {
            constraints.iter().all(|(a, b, is_eq)| {
                let v = dot(a, x);
                if *is_eq {
                    v == *b
                } else {
                    v >= *b
                }
            })
        };
        let mut candidates: BTreeSet<Vec<Q>> = BTreeSet::new();
        if m >= ambient {
            for combo in (0..m).combinations(ambient) {
                let a: Vec<Vec<Q>> = combo.iter().map(|&i| constraints[i].0.clone()).collect();
                let b: Vec<Q> = combo.iter().map(|&i| constraints[i].1.clone()).collect();
                if let Some(x) = linalg::solve_unique(&a, &b) {
                    if feasible(&x) {
                        candidates.insert(x);
                    }
                }
            }
        }
        if candidates.is_empty() {
            return Ok(Polytope::empty(ambient));
        }
        let pts: Vec<Vec<Q>> = candidates.into_iter().collect();
        Polytope::hull(ambient, &pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Affine dimension; `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim.is_none()
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn equations(&self) -> &[Halfspace] {
        &self.equations
    }

    /// Exact Lebesgue volume with respect to the full ambient dimension
    /// (zero for lower-dimensional and empty polytopes).
    pub fn volume(&self) -> Q {
        if self.dim == Some(self.ambient) {
            self.rel_volume.clone()
        } else {
            Q::zero()
        }
    }

    /// dim(P)-volume in the lattice-normalized affine span (1 for points,
    /// 0 for the empty polytope).
    pub fn relative_volume(&self) -> Q {
        self.rel_volume.clone()
    }

    pub fn contains_point(&self, p: &[Q]) -> bool {
        if self.is_empty() || p.len() != self.ambient {
            return false;
        }
        self.facets.iter().all(|h| h.satisfies(p)) && self.equations.iter().all(|h| h.tight(p))
    }

    /// True when `other` is contained in `self`.
    pub fn contains(&self, other: &Polytope) -> bool {
        if other.is_empty() {
            return true;
        }
        if self.is_empty() || self.ambient != other.ambient {
            return false;
        }
        other.vertices.iter().all(|v| self.contains_point(v))
    }

    pub fn translate(&self, v: &[Q]) -> Result<Polytope> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch("translate vector".into()));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts: Vec<Vec<Q>> = self.vertices.iter().map(|p| vec_add(p, v)).collect();
        Polytope::hull(self.ambient, &pts)
    }

    pub fn scale(&self, lambda: &Q) -> Result<Polytope> {
        if lambda.is_negative() {
            return Err(Error::InvalidScale);
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts: Vec<Vec<Q>> = self.vertices.iter().map(|p| vec_scale(p, lambda)).collect();
        Polytope::hull(self.ambient, &pts)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("minkowski_sum".into()));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Polytope::empty(self.ambient));
        }
        let pts: Vec<Vec<Q>> = self
            .vertices
            .iter()
            .cartesian_product(other.vertices.iter())
            .map(|(a, b)| vec_add(a, b))
            .collect();
        Polytope::hull(self.ambient, &pts)
    }

    pub fn intersect(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("intersect".into()));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Polytope::empty(self.ambient));
        }
        let to_q = |h: &Halfspace| {
            (
                h.normal.iter().map(|x| Q::from_integer(x.clone())).collect::<Vec<Q>>(),
                h.offset.clone(),
            )
        };
        let ineqs: Vec<(Vec<Q>, Q)> = self.facets.iter().chain(&other.facets).map(to_q).collect();
        let eqs: Vec<(Vec<Q>, Q)> = self.equations.iter().chain(&other.equations).map(to_q).collect();
        Polytope::from_halfspaces(self.ambient, &ineqs, &eqs)
    }

    /// Image under `x -> M x + t` where the rows of `m` give the output
    /// coordinates. Volume-preserving when `m` is square unimodular.
    pub fn affine_image(&self, m: &[Vec<Q>], t: &[Q]) -> Result<Polytope> {
        let out_dim = m.len();
        if out_dim == 0 || t.len() != out_dim || m.iter().any(|r| r.len() != self.ambient) {
            return Err(Error::DimensionMismatch("affine_image".into()));
        }
        if self.is_empty() {
            return Ok(Polytope::empty(out_dim));
        }
        let pts: Vec<Vec<Q>> = self
            .vertices
            .iter()
            .map(|p| (0..out_dim).map(|i| dot(&m[i], p) + &t[i]).collect())
            .collect();
        Polytope::hull(out_dim, &pts)
    }

    /// Row-vector action `x -> x g` by an integer unimodular matrix
    /// (valuation vectors transform this way under flag lifts). Preserves
    /// volume exactly since |det g| = 1.
    pub fn apply_unimodular(&self, g: &[Vec<Int>]) -> Result<Polytope> {
        let n = self.ambient;
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("apply_unimodular".into()));
        }
        if !linalg::int_det(g).abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let pts: Vec<Vec<Q>> = self.vertices.iter().map(|v| linalg::row_apply(v, g)).collect();
        Polytope::hull(n, &pts)
    }

    /// Exact slice `{ x in Q^{n-1} : (t, x) in P }`, re-embedded in Q^{n-1}.
    /// Empty (not an error) when t lies outside the first-coordinate range.
    pub fn slice(&self, t: &Q) -> Result<Polytope> {
        if self.ambient < 2 {
            return Err(Error::DimensionMismatch("slice needs ambient dimension >= 2".into()));
        }
        if self.is_empty() {
            return Ok(Polytope::empty(self.ambient - 1));
        }
        let reduce = |h: &Halfspace| {
            let a: Vec<Q> = h.normal[1..].iter().map(|x| Q::from_integer(x.clone())).collect();
            let b = &h.offset - Q::from_integer(h.normal[0].clone()) * t;
            (a, b)
        };
        let ineqs: Vec<(Vec<Q>, Q)> = self.facets.iter().map(reduce).collect();
        let eqs: Vec<(Vec<Q>, Q)> = self.equations.iter().map(reduce).collect();
        Polytope::from_halfspaces(self.ambient - 1, &ineqs, &eqs)
    }

    /// Range of the first coordinate over the polytope.
    pub fn coord_range(&self, coord: usize) -> Option<(Q, Q)> {
        if self.is_empty() {
            return None;
        }
        let vals = self.vertices.iter().map(|v| v[coord].clone());
        let lo = vals.clone().min().unwrap();
        let hi = vals.max().unwrap();
        Some((lo, hi))
    }

    /// Exact Fubini reconstruction: integral over t of the slice volume,
    /// computed piece by piece (the slice volume is a polynomial of degree
    /// <= n-1 between consecutive vertex first-coordinates).
    pub fn fubini_volume(&self) -> Result<Q> {
        if self.ambient < 2 {
            return Err(Error::DimensionMismatch("fubini needs ambient dimension >= 2".into()));
        }
        if self.is_empty() {
            return Ok(Q::zero());
        }
        let pw = self.slice_volume_pieces()?;
        Ok(pw.integrate(pw.lo(), &pw.hi().clone()).unwrap())
    }

    /// Piecewise polynomial t -> vol_{n-1}(slice(P, t)) on the projection
    /// range of the first coordinate.
    pub fn slice_volume_pieces(&self) -> Result<PiecewisePoly> {
        if self.ambient < 2 || self.is_empty() {
            return Err(Error::DimensionMismatch("slice_volume_pieces".into()));
        }
        let mut breaks: Vec<Q> = self.vertices.iter().map(|v| v[0].clone()).collect();
        breaks.sort();
        breaks.dedup();
        let deg = self.ambient - 1;
        let mut pieces = Vec::new();
        if breaks.len() == 1 {
            // P lies in a vertical hyperplane; the integral is zero.
            return Ok(PiecewisePoly {
                breaks: vec![breaks[0].clone(), breaks[0].clone()],
                pieces: vec![QPoly::zero()],
            });
        }
        for w in breaks.windows(2) {
            let samples: Vec<(Q, Q)> = interior_samples(&w[0], &w[1], deg)
                .into_iter()
                .map(|t| {
                    let v = self.slice(&t)?.volume();
                    Ok((t, v))
                })
                .collect::<Result<_>>()?;
            pieces.push(QPoly::interpolate(&samples));
        }
        Ok(PiecewisePoly { breaks, pieces })
    }

    /// Piecewise polynomial s -> vol_n(P intersect { <u,x> >= s }) on the
    /// range of heights of P along u. Degree <= n on each piece.
    pub fn volume_above_pieces(&self, u: &[Q]) -> Result<PiecewisePoly> {
        if self.is_empty() || u.len() != self.ambient {
            return Err(Error::DimensionMismatch("volume_above_pieces".into()));
        }
        let mut breaks: Vec<Q> = self.vertices.iter().map(|v| dot(u, v)).collect();
        breaks.sort();
        breaks.dedup();
        if breaks.len() == 1 {
            return Ok(PiecewisePoly {
                breaks: vec![breaks[0].clone(), breaks[0].clone()],
                pieces: vec![QPoly::constant(self.volume())],
            });
        }
        let to_q = |h: &Halfspace| {
            (
                h.normal.iter().map(|x| Q::from_integer(x.clone())).collect::<Vec<Q>>(),
                h.offset.clone(),
            )
        };
        let base_ineqs: Vec<(Vec<Q>, Q)> = self.facets.iter().map(to_q).collect();
        let eqs: Vec<(Vec<Q>, Q)> = self.equations.iter().map(to_q).collect();
        let deg = self.ambient;
        let mut pieces = Vec::new();
        for w in breaks.windows(2) {
            let samples: Vec<(Q, Q)> = interior_samples(&w[0], &w[1], deg)
                .into_iter()
                .map(|s| {
                    let mut ineqs = base_ineqs.clone();
                    ineqs.push((u.to_vec(), s.clone()));
                    let v = Polytope::from_halfspaces(self.ambient, &ineqs, &eqs)?.volume();
                    Ok((s, v))
                })
                .collect::<Result<_>>()?;
            pieces.push(QPoly::interpolate(&samples));
        }
        Ok(PiecewisePoly { breaks, pieces })
    }

    /// Exact squared Hausdorff distance (max over vertices of the squared
    /// distance to the other body).
    pub fn hausdorff_distance_sq(&self, other: &Polytope) -> Result<Q> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyInput);
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("hausdorff".into()));
        }
        let mut best = Q::zero();
        for v in &self.vertices {
            best = best.max(other.point_distance_sq(v));
        }
        for v in &other.vertices {
            best = best.max(self.point_distance_sq(v));
        }
        Ok(best)
    }

    /// Hausdorff distance within `tol`; the squared distances are exact and
    /// only the final square root is approximated.
    pub fn hausdorff_distance(&self, other: &Polytope, tol: &Q) -> Result<Q> {
        let sq = self.hausdorff_distance_sq(other)?;
        sqrt_approx(&sq, tol)
    }

    /// Exact squared Euclidean distance from a point to this polytope,
    /// by projecting onto the affine span of every face.
    pub fn point_distance_sq(&self, p: &[Q]) -> Q {
        debug_assert!(!self.is_empty());
        if self.contains_point(p) {
            return Q::zero();
        }
        let n = self.ambient;
        let eq_rows: Vec<(Vec<Q>, Q)> = self
            .equations
            .iter()
            .map(|h| {
                (
                    h.normal.iter().map(|x| Q::from_integer(x.clone())).collect(),
                    h.offset.clone(),
                )
            })
            .collect();
        let mut best: Option<Q> = None;
        let f = self.facets.len();
        let max_extra = n.saturating_sub(eq_rows.len());
        for k in 0..=max_extra.min(f) {
            for combo in (0..f).combinations(k) {
                let mut a: Vec<Vec<Q>> = eq_rows.iter().map(|(r, _)| r.clone()).collect();
                let mut b: Vec<Q> = eq_rows.iter().map(|(_, c)| c.clone()).collect();
                for &i in &combo {
                    a.push(
                        self.facets[i]
                            .normal
                            .iter()
                            .map(|x| Q::from_integer(x.clone()))
                            .collect(),
                    );
                    b.push(self.facets[i].offset.clone());
                }
                let x = if a.is_empty() {
                    p.to_vec()
                } else {
                    // Projection onto { A x = b }: x = p - A^T y with
                    // (A A^T) y = A p - b. Skip rank-deficient subsets; a
                    // smaller independent subset cuts the same span.
                    let aat: Vec<Vec<Q>> = a.iter().map(|r| a.iter().map(|s| dot(r, s)).collect()).collect();
                    let rhs: Vec<Q> = a.iter().zip(&b).map(|(r, c)| dot(r, p) - c).collect();
                    match linalg::solve_unique(&aat, &rhs) {
                        Some(y) => {
                            let mut x = p.to_vec();
                            for (row, yi) in a.iter().zip(&y) {
                                for (xj, rj) in x.iter_mut().zip(row) {
                                    *xj -= rj * yi;
                                }
                            }
                            x
                        }
                        None => continue,
                    }
                };
                if self.contains_point(&x) {
                    let d = norm_sq(&vec_sub(p, &x));
                    best = Some(match best {
                        None => d,
                        Some(old) => old.min(d),
                    });
                }
            }
        }
        best.expect("at least the vertex faces yield feasible projections")
    }

    /// Hull of the projection onto the given coordinates.
    pub fn project(&self, coords: &[usize]) -> Result<Polytope> {
        if coords.is_empty() || coords.iter().any(|&c| c >= self.ambient) {
            return Err(Error::DimensionMismatch("project".into()));
        }
        if self.is_empty() {
            return Ok(Polytope::empty(coords.len()));
        }
        let pts: Vec<Vec<Q>> = self
            .vertices
            .iter()
            .map(|v| coords.iter().map(|&c| v[c].clone()).collect())
            .collect();
        Polytope::hull(coords.len(), &pts)
    }

    /// Lexicographically smallest vertex.
    pub fn lex_min_vertex(&self) -> Option<&Vec<Q>> {
        self.vertices.first()
    }

    /// All lattice points of the polytope, guarded by a budget on the
    /// number of bounding-box cells scanned.
    pub fn lattice_points(&self, budget: u64) -> Result<Vec<Vec<Int>>> {
        if self.is_empty() {
            return Ok(vec![]);
        }
        let n = self.ambient;
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for c in 0..n {
            let (a, b) = self.coord_range(c).unwrap();
            lo.push(a.ceil().to_integer());
            hi.push(b.floor().to_integer());
        }
        let mut cells: u64 = 1;
        for c in 0..n {
            if hi[c] < lo[c] {
                return Ok(vec![]);
            }
            let w = (&hi[c] - &lo[c] + Int::one()).to_string().parse::<u64>().unwrap_or(u64::MAX);
            cells = cells.saturating_mul(w);
            if cells > budget {
                return Err(Error::TooLarge { budget, needed: cells });
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            let p: Vec<Q> = cur.iter().map(|x| Q::from_integer(x.clone())).collect();
            if self.contains_point(&p) {
                out.push(cur.clone());
            }
            // Odometer increment.
            let mut c = n;
            loop {
                if c == 0 {
                    return Ok(out);
                }
                c -= 1;
                cur[c] += 1;
                if cur[c] <= hi[c] {
                    break;
                }
                cur[c] = lo[c].clone();
            }
        }
    }

    /// Cross-validation of the dual representation: every vertex satisfies
    /// every constraint, every facet is supported by enough affinely
    /// independent vertices, and every vertex is pinned by constraints of
    /// full rank.
    pub fn validate(&self) -> Result<()> {
        let Some(d) = self.dim else {
            return Ok(());
        };
        let fail = |msg: String| Err(Error::InvalidInput(msg));
        for v in &self.vertices {
            if !(self.facets.iter().all(|h| h.satisfies(v)) && self.equations.iter().all(|h| h.tight(v))) {
                return fail("vertex violates an H-representation constraint".into());
            }
        }
        for h in &self.facets {
            let tight: Vec<&Vec<Q>> = self.vertices.iter().filter(|v| h.tight(v)).collect();
            if tight.is_empty() {
                return fail("facet without tight vertices".into());
            }
            let dirs: Vec<Vec<Q>> = tight[1..].iter().map(|v| vec_sub(v, tight[0])).collect();
            let r = if dirs.is_empty() { 0 } else { linalg::rank(&dirs) };
            if r + 1 < d {
                return fail("facet supported by too few affinely independent vertices".into());
            }
        }
        for v in &self.vertices {
            let mut normals: Vec<Vec<Q>> = self
                .facets
                .iter()
                .filter(|h| h.tight(v))
                .map(|h| h.normal.iter().map(|x| Q::from_integer(x.clone())).collect())
                .collect();
            for e in &self.equations {
                normals.push(e.normal.iter().map(|x| Q::from_integer(x.clone())).collect());
            }
            let r = if normals.is_empty() { 0 } else { linalg::rank(&normals) };
            if r != self.ambient {
                return fail("vertex not pinned by full-rank tight constraints".into());
            }
        }
        Ok(())
    }
}

/// Indices of a maximal affinely independent subset (first element is the
/// base point); the affine dimension is `result.len() - 1`.
fn affine_basis_indices(pts: &[Vec<Q>]) -> Vec<usize> {
    let mut idx = vec![0usize];
    let mut dirs: Vec<Vec<Q>> = Vec::new();
    for i in 1..pts.len() {
        let mut cand = dirs.clone();
        cand.push(vec_sub(&pts[i], &pts[0]));
        if linalg::rank(&cand) > dirs.len() {
            dirs = cand;
            idx.push(i);
        }
    }
    idx
}

struct HullData {
    vertex_indices: Vec<usize>,
    /// Facets in reduced coordinates: (rational normal, offset), inward.
    facets: Vec<(Vec<Q>, Q)>,
    volume: Q,
}

/// Incremental convex hull of points affinely spanning Q^d (d >= 1).
/// `basis_idx` indexes an affinely independent (d+1)-subset.
fn hull_full_dim(pts: &[Vec<Q>], d: usize, basis_idx: &[usize]) -> Result<HullData> {
    if d == 1 {
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| pts[a][0].cmp(&pts[b][0]));
        let lo = order[0];
        let hi = *order.last().unwrap();
        return Ok(HullData {
            vertex_indices: vec![lo, hi],
            facets: vec![
                (vec![Q::one()], pts[lo][0].clone()),
                (vec![-Q::one()], -pts[hi][0].clone()),
            ],
            volume: &pts[hi][0] - &pts[lo][0],
        });
    }

    #[derive(Clone)]
    struct Facet {
        verts: Vec<usize>,
        normal: Vec<Q>,
        offset: Q,
        alive: bool,
    }

    let facet_from = |verts: Vec<usize>, interior: &[Q]| -> Facet {
        let dirs: Vec<Vec<Q>> = verts[1..].iter().map(|&i| vec_sub(&pts[i], &pts[verts[0]])).collect();
        let ns = linalg::null_space(&dirs);
        debug_assert_eq!(ns.len(), 1, "facet points must span a hyperplane");
        let mut normal = ns.into_iter().next().unwrap();
        let mut offset = dot(&normal, &pts[verts[0]]);
        let side = dot(&normal, interior);
        debug_assert!(side != offset, "interior reference on facet hyperplane");
        if side < offset {
            normal = normal.iter().map(|x| -x).collect();
            offset = -offset;
        }
        Facet { verts, normal, offset, alive: true }
    };

    // Interior reference point: centroid of the initial simplex.
    let c0: Vec<Q> = {
        let mut acc = vec![Q::zero(); d];
        for &i in basis_idx {
            acc = vec_add(&acc, &pts[i]);
        }
        vec_scale(&acc, &(Q::one() / Q::from_integer(Int::from(basis_idx.len() as i64))))
    };

    let mut facets: Vec<Facet> = Vec::new();
    for skip in 0..basis_idx.len() {
        let verts: Vec<usize> = basis_idx
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, &i)| i)
            .collect();
        facets.push(facet_from(verts, &c0));
    }

    let in_simplex: BTreeSet<usize> = basis_idx.iter().copied().collect();
    for p in 0..pts.len() {
        if in_simplex.contains(&p) {
            continue;
        }
        let point = &pts[p];
        let visible: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && dot(&f.normal, point) < f.offset)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Ridge -> alive facets sharing it.
        let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (fi, f) in facets.iter().enumerate() {
            if !f.alive {
                continue;
            }
            for skip in 0..f.verts.len() {
                let mut r: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                r.sort_unstable();
                ridges.entry(r).or_default().push(fi);
            }
        }
        let visible_set: BTreeSet<usize> = visible.iter().copied().collect();
        let mut new_facets: Vec<Facet> = Vec::new();
        for (ridge, fs) in &ridges {
            debug_assert!(fs.len() == 2, "boundary complex must pair ridges");
            let vis = fs.iter().filter(|f| visible_set.contains(f)).count();
            if vis == 1 {
                let mut verts = ridge.clone();
                verts.push(p);
                new_facets.push(facet_from(verts, &c0));
            }
        }
        for fi in visible {
            facets[fi].alive = false;
        }
        facets.extend(new_facets);
    }

    let alive: Vec<&Facet> = facets.iter().filter(|f| f.alive).collect();

    // Volume via the boundary triangulation coned over the interior point.
    let mut volume = Q::zero();
    let mut dfact = Q::one();
    for k in 1..=d {
        dfact *= Q::from_integer(Int::from(k as i64));
    }
    for f in &alive {
        let rows: Vec<Vec<Q>> = f.verts.iter().map(|&i| vec_sub(&pts[i], &c0)).collect();
        volume += linalg::det(&rows).abs();
    }
    volume /= dfact;

    // Merge coplanar facets by canonical supporting hyperplane.
    let mut merged: BTreeMap<(Vec<Int>, Q), BTreeSet<usize>> = BTreeMap::new();
    for f in &alive {
        let h = canonical_halfspace(&f.normal, &f.offset);
        merged.entry((h.normal, h.offset)).or_default().extend(f.verts.iter().copied());
    }
    let facet_list: Vec<(Vec<Q>, Q)> = merged
        .keys()
        .map(|(n, b)| (n.iter().map(|x| Q::from_integer(x.clone())).collect(), b.clone()))
        .collect();

    // Vertices: hull points whose tight facet normals have full rank.
    let candidates: BTreeSet<usize> = merged.values().flatten().copied().collect();
    let mut vertex_indices = Vec::new();
    for &i in &candidates {
        let tight: Vec<Vec<Q>> = facet_list
            .iter()
            .filter(|(n, b)| dot(n, &pts[i]) == *b)
            .map(|(n, _)| n.clone())
            .collect();
        if linalg::rank(&tight) == d {
            vertex_indices.push(i);
        }
    }

    Ok(HullData { vertex_indices, facets: facet_list, volume })
}

/// Canonicalizes `<normal, x> >= offset` to a primitive integer normal.
fn canonical_halfspace(normal: &[Q], offset: &Q) -> Halfspace {
    let ints = primitive_integer(normal);
    let k = normal.iter().position(|x| !x.is_zero()).expect("zero facet normal");
    let scale = Q::from_integer(ints[k].clone()) / &normal[k];
    debug_assert!(scale.is_positive());
    Halfspace { normal: ints, offset: offset * scale }
}

/// Pulls a facet of the reduced polytope back to ambient coordinates: the
/// minimal-norm alpha with <alpha, b_i> = c_i, offset shifted by the base
/// point (deterministic choice; together with the span equations it cuts
/// the same face).
fn pull_back_facet(basis: &[Vec<Int>], base: &[Q], c: &[Q], beta: &Q) -> (Vec<Q>, Q) {
    let bq = linalg::to_q_matrix(basis);
    let gram: Vec<Vec<Q>> = bq.iter().map(|r| bq.iter().map(|s| dot(r, s)).collect()).collect();
    let z = linalg::solve_unique(&gram, c).expect("basis rows are independent");
    let n = base.len();
    let alpha: Vec<Q> = (0..n)
        .map(|j| bq.iter().zip(&z).map(|(row, zi)| &row[j] * zi).sum())
        .collect();
    let gamma = beta + dot(&alpha, base);
    (alpha, gamma)
}
