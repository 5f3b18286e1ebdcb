use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::sublattice::Point;
use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, IntMatrix};

/// A lattice simplex in `X^∨ ≅ Z^t`, the height-one slice of a cone of the
/// fan. Vertices are distinct, affinely independent and kept sorted
/// lexicographically, so two simplices with the same vertex set compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct LatticeSimplex {
    vertices: Vec<Point>,
}

impl LatticeSimplex {
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::Schema("a simplex needs at least one vertex".into()));
        };
        let t = first.len();
        if vertices.iter().any(|v| v.len() != t) {
            return Err(Error::Schema("simplex vertices have different dimensions".into()));
        }
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Schema(format!("repeated vertex in simplex {vertices:?}")));
        }
        let s = Self { vertices };
        if s.difference_rank() != s.dim() {
            return Err(Error::Schema(format!("simplex {s:?} is not affinely independent")));
        }
        Ok(s)
    }

    /// Shorthand for literal simplices; panics on invalid input.
    pub fn of(vertices: &[&[i64]]) -> Self {
        Self::new(vertices.iter().map(|v| v.to_vec()).collect()).expect("valid simplex literal")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Lexicographically smallest vertex; translation commutes with it.
    pub fn min_vertex(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_rank(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn translate(&self, by: &[i64]) -> Self {
        let vertices = self.vertices.iter().map(|v| v.iter().zip(by).map(|(a, b)| a + b).collect()).collect();
        Self { vertices }
    }

    pub fn negate(&self) -> Self {
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        vertices.sort();
        Self { vertices }
    }

    /// Codimension-one faces; face `i` omits vertex `i`.
    pub fn facets(&self) -> Vec<LatticeSimplex> {
        if self.dim() == 0 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|i| {
                let vertices = self.vertices.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
                Self { vertices }
            })
            .collect()
    }

    /// All faces, including the simplex itself.
    pub fn faces(&self) -> Vec<LatticeSimplex> {
        let n = self.vertices.len();
        (1..(1usize << n))
            .map(|mask| Self {
                vertices: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.vertices[i].clone()).collect(),
            })
            .collect()
    }

    /// `max |v_i − v_j|_∞` over pairs of vertices.
    pub fn diameter(&self) -> u64 {
        let mut d = 0;
        for a in &self.vertices {
            for b in &self.vertices {
                for (x, y) in a.iter().zip(b) {
                    d = d.max((x - y).unsigned_abs());
                }
            }
        }
        d
    }

    fn differences(&self) -> Vec<Vec<i64>> {
        let v0 = &self.vertices[0];
        self.vertices[1..].iter().map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect()).collect()
    }

    fn difference_rank(&self) -> usize {
        let diffs = self.differences();
        if diffs.is_empty() {
            return 0;
        }
        let m = IntMatrix::from_rows(diffs.iter().map(|r| r.iter().copied())).expect("rectangular");
        smith_normal_form(&m).diagonal().iter().filter(|d| !num_traits::Zero::is_zero(*d)).count()
    }

    /// `|det(v_1 − v_0, …, v_t − v_0)|` for a top-dimensional simplex, the
    /// normalized volume (`t!` times the Euclidean volume).
    pub fn normalized_volume(&self) -> u64 {
        let d = self.differences();
        match (self.ambient_rank(), d.len()) {
            (0, 0) => 1,
            (1, 1) => d[0][0].unsigned_abs(),
            (2, 2) => (d[0][0] as i128 * d[1][1] as i128 - d[0][1] as i128 * d[1][0] as i128).unsigned_abs() as u64,
            _ => 0,
        }
    }
}

impl fmt::Debug for LatticeSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.vertices).finish()
    }
}

impl fmt::Display for LatticeSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl TryFrom<Vec<Point>> for LatticeSimplex {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<LatticeSimplex> for Vec<Point> {
    fn from(s: LatticeSimplex) -> Self {
        s.vertices
    }
}

/// Whether the vectors `(v, 1)` extend to a basis of `Z^{t+1}`, i.e. the
/// cone over the simplex is smooth. For a top-dimensional simplex this is
/// `|det(v_i − v_0)| = 1`.
pub fn is_unimodular(s: &LatticeSimplex) -> bool {
    let diffs = s.differences();
    if diffs.is_empty() {
        return true;
    }
    let m = IntMatrix::from_rows(diffs.iter().map(|r| r.iter().copied())).expect("rectangular");
    let diag = smith_normal_form(&m).diagonal();
    diag.len() == diffs.len() && diag.iter().all(|d| *d == BigInt::one())
}

fn orient(a: &[i64], b: &[i64], c: &[i64]) -> i128 {
    let (ax, ay) = (a[0] as i128, a[1] as i128);
    (b[0] as i128 - ax) * (c[1] as i128 - ay) - (b[1] as i128 - ay) * (c[0] as i128 - ax)
}

fn on_segment(p: &[i64], a: &[i64], b: &[i64]) -> bool {
    orient(a, b, p) == 0
        && (0..2).all(|k| a[k].min(b[k]) <= p[k] && p[k] <= a[k].max(b[k]))
}

fn segments_meet(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Closed-hull membership for `t = 2`.
fn point_in_hull_2d(p: &[i64], s: &LatticeSimplex) -> bool {
    let v = s.vertices();
    match v.len() {
        1 => v[0] == p,
        2 => on_segment(p, &v[0], &v[1]),
        _ => {
            let o = [orient(&v[0], &v[1], p), orient(&v[1], &v[2], p), orient(&v[2], &v[0], p)];
            o.iter().all(|&x| x >= 0) || o.iter().all(|&x| x <= 0)
        }
    }
}

/// Whether the closed convex hulls of two simplices in `Z^t` (`t ≤ 2`) meet.
pub fn hulls_intersect(a: &LatticeSimplex, b: &LatticeSimplex) -> bool {
    match a.ambient_rank() {
        0 => true,
        1 => {
            let (alo, ahi) = (a.vertices[0][0], a.vertices.last().unwrap()[0]);
            let (blo, bhi) = (b.vertices[0][0], b.vertices.last().unwrap()[0]);
            alo <= bhi && blo <= ahi
        }
        2 => {
            if a.vertices.iter().any(|p| point_in_hull_2d(p, b)) || b.vertices.iter().any(|p| point_in_hull_2d(p, a)) {
                return true;
            }
            let edges = |s: &LatticeSimplex| -> Vec<(Point, Point)> {
                let v = &s.vertices;
                let mut out = Vec::new();
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        out.push((v[i].clone(), v[j].clone()));
                    }
                }
                out
            };
            let eb = edges(b);
            edges(a).iter().any(|(p, q)| eb.iter().any(|(r, s)| segments_meet(p, q, r, s)))
        }
        t => panic!("hull intersection is implemented for rank <= 2, got {t}"),
    }
}

/// Sign of the orientation of `p` relative to the facet `f` inside rank `t`
/// space: for `t = 1` the side of the point `f`, for `t = 2` the side of the
/// line through the edge `f`.
pub(crate) fn side_of_facet(f: &LatticeSimplex, p: &[i64]) -> i128 {
    match f.ambient_rank() {
        1 => (p[0] - f.vertices[0][0]).signum() as i128,
        2 => orient(&f.vertices[0], &f.vertices[1], p).signum(),
        _ => 0,
    }
}

pub(crate) fn orientation_2d(a: &[i64], b: &[i64], c: &[i64]) -> i128 {
    orient(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodularity_examples() {
        assert!(is_unimodular(&LatticeSimplex::of(&[&[0, 0], &[1, 0], &[1, 1]])));
        assert!(!is_unimodular(&LatticeSimplex::of(&[&[0, 0], &[2, 0], &[0, 1]])));
        assert!(is_unimodular(&LatticeSimplex::of(&[&[0], &[1]])));
        assert!(is_unimodular(&LatticeSimplex::of(&[&[5, 7]])));
        // lower-dimensional: a non-primitive edge is not smooth
        assert!(!is_unimodular(&LatticeSimplex::of(&[&[0, 0], &[2, 2]])));
        assert!(is_unimodular(&LatticeSimplex::of(&[&[0, 0], &[2, 3]])));
        assert!(!is_unimodular(&LatticeSimplex::of(&[&[0], &[3]])));
    }

    #[test]
    fn construction_normalizes_and_rejects() {
        let a = LatticeSimplex::of(&[&[1, 1], &[0, 0], &[1, 0]]);
        assert_eq!(a.vertices(), &[vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert!(LatticeSimplex::new(vec![vec![0, 0], vec![1, 1], vec![2, 2]]).is_err());
        assert!(LatticeSimplex::new(vec![vec![0], vec![0]]).is_err());
        assert!(LatticeSimplex::new(vec![]).is_err());
        assert!(LatticeSimplex::new(vec![vec![0], vec![0, 1]]).is_err());
        assert!(LatticeSimplex::new(vec![vec![0], vec![1], vec![2]]).is_err());
    }

    #[test]
    fn faces_and_facets() {
        let t = LatticeSimplex::of(&[&[0, 0], &[1, 0], &[1, 1]]);
        let f = t.facets();
        assert_eq!(f[0], LatticeSimplex::of(&[&[1, 0], &[1, 1]]));
        assert_eq!(f[2], LatticeSimplex::of(&[&[0, 0], &[1, 0]]));
        assert_eq!(t.faces().len(), 7);
        assert!(LatticeSimplex::of(&[&[3]]).facets().is_empty());
    }

    #[test]
    fn intersection_examples() {
        let t = LatticeSimplex::of(&[&[0, 0], &[1, 0], &[1, 1]]);
        assert!(hulls_intersect(&t, &t.translate(&[1, 0])));
        assert!(!hulls_intersect(&t, &t.translate(&[2, 0])));
        assert!(!hulls_intersect(&t, &t.translate(&[1, -1])));
        assert!(hulls_intersect(&t, &t.translate(&[1, 1])));
        assert!(!hulls_intersect(&t, &t.translate(&[-1, 1])));
        // segment crossing the interior without touching vertices
        let s = LatticeSimplex::of(&[&[0, 1], &[2, -1]]);
        let big = LatticeSimplex::of(&[&[-3, -3], &[3, -3], &[0, 3]]);
        assert!(hulls_intersect(&s, &t));
        assert!(hulls_intersect(&LatticeSimplex::of(&[&[0, 0]]), &big));
        // collinear disjoint segments
        let a = LatticeSimplex::of(&[&[0, 0], &[1, 1]]);
        assert!(!hulls_intersect(&a, &a.translate(&[2, 2])));
        assert!(hulls_intersect(&a, &a.translate(&[1, 1])));

        let e = LatticeSimplex::of(&[&[0], &[1]]);
        assert!(hulls_intersect(&e, &e.translate(&[1])));
        assert!(!hulls_intersect(&e, &e.translate(&[2])));
    }

    #[test]
    fn volumes_and_diameter() {
        assert_eq!(LatticeSimplex::of(&[&[0, 0], &[2, 0], &[0, 1]]).normalized_volume(), 2);
        assert_eq!(LatticeSimplex::of(&[&[0], &[3]]).normalized_volume(), 3);
        assert_eq!(LatticeSimplex::of(&[&[0, 0], &[1, 0], &[1, 1]]).diameter(), 1);
        assert_eq!(LatticeSimplex::new(vec![vec![]]).unwrap().normalized_volume(), 1);
    }
}
