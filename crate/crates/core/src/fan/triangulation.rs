use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::simplex::LatticeSimplex;
use super::sublattice::{Point, Sublattice};
use crate::degeneration::MAX_RANK;
use crate::error::{Error, Result};

/// A triangulation of `X^∨_R` invariant under translation by a period
/// lattice, stored as one representative per translation class of simplices
/// (all dimensions).
///
/// Representatives are canonical: the smallest vertex lies in the
/// fundamental parallelepiped of the period lattice. This makes class
/// membership a set lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTriangulation {
    rank: usize,
    lattice: Sublattice,
    simplices: BTreeSet<LatticeSimplex>,
}

/// On-disk form: `{"rank", "lattice", "simplices"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanDoc {
    pub rank: usize,
    pub lattice: Vec<Point>,
    pub simplices: Vec<LatticeSimplex>,
}

/// A facet class together with its top-dimensional cofaces, each translated
/// so that the facet sits at its canonical position.
#[derive(Clone, Debug)]
pub struct Wall {
    pub facet: LatticeSimplex,
    /// `(coface, vertex of the coface opposite the facet)`
    pub cofaces: Vec<(LatticeSimplex, Point)>,
}

impl PeriodicTriangulation {
    /// Builds the triangulation from any collection of simplices; each one is
    /// replaced by its canonical representative and all faces are added.
    pub fn new<I>(rank: usize, lattice: Sublattice, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticeSimplex>,
    {
        if rank > MAX_RANK {
            return Err(Error::UnsupportedRank(rank));
        }
        if lattice.rank() != rank {
            return Err(Error::Schema(format!("lattice has rank {}, expected {rank}", lattice.rank())));
        }
        let mut t = Self { rank, lattice, simplices: BTreeSet::new() };
        for s in simplices {
            if s.ambient_rank() != rank {
                return Err(Error::Schema(format!("simplex {s} does not live in rank {rank}")));
            }
            for f in s.faces() {
                let c = t.canonical(&f);
                t.simplices.insert(c);
            }
        }
        Ok(t)
    }

    pub fn from_doc(doc: FanDoc) -> Result<Self> {
        let lattice = Sublattice::from_points(doc.lattice)?;
        Self::new(doc.rank, lattice, doc.simplices)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FanDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn to_doc(&self) -> FanDoc {
        let mut simplices: Vec<LatticeSimplex> = self.simplices.iter().cloned().collect();
        simplices.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        FanDoc { rank: self.rank, lattice: self.lattice.basis().to_vec(), simplices }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    pub fn simplices(&self) -> impl Iterator<Item = &LatticeSimplex> {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, k: usize) -> impl Iterator<Item = &LatticeSimplex> {
        self.simplices.iter().filter(move |s| s.dim() == k)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices_of_dim(k).count()
    }

    /// Translate `s` so that its smallest vertex is reduced modulo the lattice.
    pub fn canonical(&self, s: &LatticeSimplex) -> LatticeSimplex {
        let m = s.min_vertex();
        let r = self.lattice.reduce(m);
        let shift: Point = r.iter().zip(m).map(|(a, b)| a - b).collect();
        s.translate(&shift)
    }

    /// Whether `s` is (a lattice translate of) one of the simplices.
    pub fn contains_class(&self, s: &LatticeSimplex) -> bool {
        self.simplices.contains(&self.canonical(s))
    }

    /// Re-expresses the triangulation relative to a finer period lattice
    /// `Λ ⊆ current lattice`: each class splits into `[current : Λ]` classes.
    pub fn attach_lattice(&self, lattice: Sublattice) -> Result<Self> {
        if !lattice.is_sublattice_of(&self.lattice) {
            return Err(Error::Schema("new period lattice must be contained in the current one".into()));
        }
        let shifts: Vec<Point> = lattice.coset_reps().into_iter().filter(|p| self.lattice.contains(p)).collect();
        let mut out = Self { rank: self.rank, lattice, simplices: BTreeSet::new() };
        for s in &self.simplices {
            for p in &shifts {
                let c = out.canonical(&s.translate(p));
                out.simplices.insert(c);
            }
        }
        Ok(out)
    }

    /// Facet classes of top-dimensional simplices with their cofaces. Only
    /// meaningful for `rank ≥ 1`.
    pub fn walls(&self) -> Vec<Wall> {
        let mut map: BTreeMap<LatticeSimplex, Vec<(LatticeSimplex, Point)>> = BTreeMap::new();
        for top in self.simplices_of_dim(self.rank) {
            for (i, f) in top.facets().into_iter().enumerate() {
                let c = self.canonical(&f);
                let shift: Point = c.min_vertex().iter().zip(f.min_vertex()).map(|(a, b)| a - b).collect();
                let opposite: Point = top.vertices()[i].iter().zip(&shift).map(|(a, b)| a + b).collect();
                map.entry(c).or_default().push((top.translate(&shift), opposite));
            }
        }
        // facets that never appear in a top simplex still count as walls
        for s in self.simplices_of_dim(self.rank.saturating_sub(1)) {
            if self.rank > 0 {
                map.entry(s.clone()).or_default();
            }
        }
        map.into_iter().map(|(facet, cofaces)| Wall { facet, cofaces }).collect()
    }

    /// Largest `|·|_∞` diameter of a simplex.
    pub fn max_diameter(&self) -> u64 {
        self.simplices.iter().map(LatticeSimplex::diameter).max().unwrap_or(0)
    }
}

/// The periodic unimodular triangulation used by default, with period `Z^t`:
/// a single vertex for `t = 0`, unit intervals for `t = 1`, and unit squares
/// cut along the `(1, 1)` diagonal for `t = 2`.
pub fn standard_triangulation(t: usize) -> Result<PeriodicTriangulation> {
    let tops: Vec<LatticeSimplex> = match t {
        0 => vec![LatticeSimplex::new(vec![vec![]])?],
        1 => vec![LatticeSimplex::of(&[&[0], &[1]])],
        2 => vec![
            LatticeSimplex::of(&[&[0, 0], &[1, 0], &[1, 1]]),
            LatticeSimplex::of(&[&[0, 0], &[1, 1], &[0, 1]]),
        ],
        _ => return Err(Error::UnsupportedRank(t)),
    };
    PeriodicTriangulation::new(t, Sublattice::identity(t), tops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;

    #[test]
    fn standard_rank_one() {
        let t = standard_triangulation(1).unwrap();
        assert_eq!(t.count(0), 1);
        assert_eq!(t.count(1), 1);
        assert!(t.contains_class(&LatticeSimplex::of(&[&[7], &[8]])));
    }

    #[test]
    fn standard_rank_two_cells() {
        // oracle: enumerate every cell of the diagonal subdivision meeting
        // [0,1)^2 by its lowest vertex and reduce mod Z^2 by hand
        let t = standard_triangulation(2).unwrap();
        let tri: Vec<_> = t.simplices_of_dim(2).cloned().collect();
        assert_eq!(
            tri,
            vec![
                LatticeSimplex::of(&[&[0, 0], &[0, 1], &[1, 1]]),
                LatticeSimplex::of(&[&[0, 0], &[1, 0], &[1, 1]]),
            ]
        );
        assert_eq!(t.count(1), 3);
        assert_eq!(t.count(0), 1);
    }

    #[test]
    fn standard_rank_zero_and_unsupported() {
        let t = standard_triangulation(0).unwrap();
        assert_eq!(t.count(0), 1);
        assert!(matches!(standard_triangulation(3), Err(Error::UnsupportedRank(3))));
    }

    #[test]
    fn attaching_a_lattice_multiplies_classes() {
        let t = standard_triangulation(2).unwrap();
        let l = Sublattice::new(&IntMatrix::diagonal([2, 2])).unwrap();
        let t2 = t.attach_lattice(l).unwrap();
        assert_eq!((t2.count(0), t2.count(1), t2.count(2)), (4, 12, 8));

        let skew = Sublattice::new(&IntMatrix::from_i64(&[&[2, 1], &[1, 2]])).unwrap();
        let t3 = t.attach_lattice(skew).unwrap();
        assert_eq!((t3.count(0), t3.count(1), t3.count(2)), (3, 9, 6));

        let t1 = standard_triangulation(1).unwrap();
        let t4 = t1.attach_lattice(Sublattice::new(&IntMatrix::from_i64(&[&[4]])).unwrap()).unwrap();
        assert_eq!((t4.count(0), t4.count(1)), (4, 4));
        assert!(t4.attach_lattice(Sublattice::identity(1)).is_err());
    }

    #[test]
    fn doc_round_trip() {
        let t = standard_triangulation(2)
            .unwrap()
            .attach_lattice(Sublattice::new(&IntMatrix::diagonal([2, 4])).unwrap())
            .unwrap();
        let text = serde_json::to_string(&t.to_doc()).unwrap();
        let back = PeriodicTriangulation::from_json(&text).unwrap();
        assert_eq!(back, t);
        assert!(text.starts_with(r#"{"rank":2,"lattice":[[2,0],[0,4]],"simplices":[[[0,0]],"#));
    }

    #[test]
    fn top_simplices_alone_generate_the_faces() {
        let doc = r#"{"rank":1,"lattice":[[2]],"simplices":[[[0],[1]],[[1],[2]]]}"#;
        let t = PeriodicTriangulation::from_json(doc).unwrap();
        assert_eq!(t.count(0), 2);
        assert_eq!(t.count(1), 2);
        assert!(PeriodicTriangulation::from_json(r#"{"rank":1,"lattice":[[2]],"simplices":[[[0],[0]]]}"#).is_err());
    }

    #[test]
    fn walls_have_two_cofaces_in_standard() {
        let t = standard_triangulation(2).unwrap();
        let walls = t.walls();
        assert_eq!(walls.len(), 3);
        for w in walls {
            assert_eq!(w.cofaces.len(), 2, "{:?}", w.facet);
        }
    }
}
