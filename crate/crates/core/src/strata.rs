//! Dual complexes of the special fibres: `Δ_A` read off a certified fan,
//! its quotient `Δ_X` by the involution, component counts and the type
//! classification they support.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::degeneration::{base_change, is_even, DegenerationData};
use crate::error::{Error, Result};
use crate::fan::{CertifiedFan, LatticeSimplex};
use crate::lattice::{component_group, two_torsion_order};

/// Highest cell dimension of a dual complex of a surface degeneration.
pub const MAX_CELL_DIM: usize = 2;

/// A Δ-complex of dimension at most two. Cells of each dimension are
/// numbered from zero; the faces of a `k`-cell are listed in the order
/// `d_0, …, d_k`, where `d_i` is the face opposite its `i`-th vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    faces: Vec<Vec<Vec<usize>>>,
    labels: Vec<Vec<String>>,
}

/// The permutation of cells induced by `ℓ ↦ −ℓ`, one per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionAction {
    perms: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KulikovType {
    I,
    II,
    III,
}

impl std::fmt::Display for KulikovType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            KulikovType::I => "I",
            KulikovType::II => "II",
            KulikovType::III => "III",
        };
        f.write_str(s)
    }
}

impl KulikovType {
    /// Type I, II, III for toric rank 0, 1, 2.
    pub fn from_toric_rank(t: usize) -> Result<Self> {
        match t {
            0 => Ok(KulikovType::I),
            1 => Ok(KulikovType::II),
            2 => Ok(KulikovType::III),
            r => Err(Error::UnsupportedRank(r)),
        }
    }
}

/// On-disk form of a [`DeltaComplex`], optionally with its involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<usize>,
    pub edges: Vec<Vec<usize>>,
    pub triangles: Vec<Vec<usize>>,
    pub labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<InvolutionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionDoc {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub triangles: Vec<usize>,
}

const LABEL_PREFIX: [char; MAX_CELL_DIM + 1] = ['v', 'e', 'f'];

impl DeltaComplex {
    /// Builds a complex from face lists per dimension, checking that every
    /// face id exists and that `d_i d_j = d_{j−1} d_i` for `i < j`.
    pub fn new(faces: Vec<Vec<Vec<usize>>>, labels: Option<Vec<Vec<String>>>) -> Result<Self> {
        if faces.len() > MAX_CELL_DIM + 1 {
            return Err(Error::Schema(format!("cells of dimension {} are not supported", faces.len() - 1)));
        }
        let mut faces = faces;
        faces.resize(MAX_CELL_DIM + 1, Vec::new());
        for (k, cells) in faces.iter().enumerate() {
            for (c, f) in cells.iter().enumerate() {
                let expected = if k == 0 { 0 } else { k + 1 };
                if f.len() != expected {
                    return Err(Error::Schema(format!("{k}-cell {c} has {} faces, expected {expected}", f.len())));
                }
                if k > 0 && f.iter().any(|&i| i >= faces[k - 1].len()) {
                    return Err(Error::Schema(format!("{k}-cell {c} refers to a missing face")));
                }
            }
        }
        let labels = match labels {
            Some(mut l) => {
                l.resize(MAX_CELL_DIM + 1, Vec::new());
                if l.iter().zip(&faces).any(|(l, f)| l.len() != f.len()) {
                    return Err(Error::Schema("one label per cell is required".into()));
                }
                l
            }
            None => faces
                .iter()
                .enumerate()
                .map(|(k, cells)| (0..cells.len()).map(|i| format!("{}{i}", LABEL_PREFIX[k])).collect())
                .collect(),
        };
        let complex = Self { faces, labels };
        for c in 0..complex.count(2) {
            let f = &complex.faces[2][c];
            let e = |i: usize| &complex.faces[1][f[i]];
            // simplicial identities on a triangle [v0 v1 v2]
            if e(2)[0] != e(0)[1] || e(2)[1] != e(1)[1] || e(1)[0] != e(0)[0] {
                return Err(Error::Schema(format!("2-cell {c} has incompatible edge faces")));
            }
        }
        Ok(complex)
    }

    pub fn from_doc(doc: &ComplexDoc) -> Result<Self> {
        if doc.vertices.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Schema("vertices must be numbered 0, 1, 2, ...".into()));
        }
        let faces = vec![vec![Vec::new(); doc.vertices.len()], doc.edges.clone(), doc.triangles.clone()];
        let mut complex = Self::new(faces, None)?;
        for (key, value) in &doc.labels {
            let (k, i) = parse_label_key(key).ok_or_else(|| Error::Schema(format!("bad label key {key:?}")))?;
            let slot = complex
                .labels
                .get_mut(k)
                .and_then(|l| l.get_mut(i))
                .ok_or_else(|| Error::Schema(format!("label {key:?} names a missing cell")))?;
            *slot = value.clone();
        }
        Ok(complex)
    }

    pub fn from_json(text: &str) -> Result<(Self, Option<InvolutionAction>)> {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let complex = Self::from_doc(&doc)?;
        let act = match doc.involution {
            Some(inv) => {
                let act = InvolutionAction::new(vec![inv.vertices, inv.edges, inv.triangles])?;
                if !act.is_involution() || !act.commutes_with_faces(&complex) {
                    return Err(Error::Schema("involution is not an involution commuting with the face maps".into()));
                }
                Some(act)
            }
            None => None,
        };
        Ok((complex, act))
    }

    pub fn to_doc(&self, act: Option<&InvolutionAction>) -> ComplexDoc {
        let mut labels = BTreeMap::new();
        for (k, ls) in self.labels.iter().enumerate() {
            for (i, l) in ls.iter().enumerate() {
                labels.insert(format!("{}{i}", LABEL_PREFIX[k]), l.clone());
            }
        }
        ComplexDoc {
            vertices: (0..self.count(0)).collect(),
            edges: self.faces[1].clone(),
            triangles: self.faces[2].clone(),
            labels,
            involution: act.map(|a| InvolutionDoc {
                vertices: a.perms[0].clone(),
                edges: a.perms[1].clone(),
                triangles: a.perms[2].clone(),
            }),
        }
    }

    /// Number of `k`-cells.
    pub fn count(&self, k: usize) -> usize {
        self.faces.get(k).map_or(0, Vec::len)
    }

    /// Largest dimension carrying a cell, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        (0..=MAX_CELL_DIM).rev().find(|&k| self.count(k) > 0)
    }

    pub fn faces(&self, k: usize, cell: usize) -> &[usize] {
        &self.faces[k][cell]
    }

    pub fn label(&self, k: usize, cell: usize) -> &str {
        &self.labels[k][cell]
    }

    /// Vertices of a cell in order `v_0, …, v_k`.
    pub fn cell_vertices(&self, k: usize, cell: usize) -> Vec<usize> {
        match k {
            0 => vec![cell],
            1 => {
                let f = &self.faces[1][cell];
                vec![f[1], f[0]]
            }
            _ => {
                let f = &self.faces[2][cell];
                let (e0, e2) = (&self.faces[1][f[0]], &self.faces[1][f[2]]);
                vec![e2[1], e2[0], e0[0]]
            }
        }
    }

    /// Number of edge ends at each vertex; a loop contributes two.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.count(0)];
        for e in &self.faces[1] {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Number of 2-cell sides glued to each edge, with multiplicity.
    pub fn edge_incidences(&self) -> Vec<usize> {
        let mut inc = vec![0; self.count(1)];
        for t in &self.faces[2] {
            for &e in t {
                inc[e] += 1;
            }
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        let n = self.count(0);
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.faces[1] {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }

    /// Distinct cells have distinct vertex sets and no cell repeats a vertex.
    pub fn is_simplicial(&self) -> bool {
        (1..=MAX_CELL_DIM).all(|k| {
            let mut seen = BTreeSet::new();
            (0..self.count(k)).all(|c| {
                let mut vs = self.cell_vertices(k, c);
                vs.sort_unstable();
                vs.windows(2).all(|w| w[0] != w[1]) && seen.insert(vs)
            })
        })
    }

    pub fn is_point(&self) -> bool {
        self.count(0) == 1 && self.count(1) == 0 && self.count(2) == 0
    }

    /// A path graph: connected, no 2-cells, degrees at most two and exactly
    /// two vertices of degree at most one.
    pub fn is_chain(&self) -> bool {
        let deg = self.vertex_degrees();
        self.count(2) == 0
            && self.is_connected()
            && deg.iter().all(|&d| d <= 2)
            && deg.iter().filter(|&&d| d <= 1).count() == 2
    }

    /// A cycle graph: connected, no 2-cells, at least one edge and every
    /// vertex of degree two.
    pub fn is_cycle(&self) -> bool {
        self.count(2) == 0 && self.count(1) > 0 && self.is_connected() && self.vertex_degrees().iter().all(|&d| d == 2)
    }

    /// Connected, with every edge glued to exactly two sides of 2-cells.
    pub fn is_closed_surface(&self) -> bool {
        self.count(2) > 0 && self.is_connected() && self.edge_incidences().iter().all(|&n| n == 2)
    }

    /// A closed surface with `χ = 2`; when the complex is simplicial the link
    /// of every vertex is additionally required to be a single cycle.
    pub fn is_sphere(&self) -> bool {
        if !self.is_closed_surface() || euler_characteristic(self) != 2 {
            return false;
        }
        !self.is_simplicial() || (0..self.count(0)).all(|v| self.link_is_cycle(v))
    }

    fn link_is_cycle(&self, v: usize) -> bool {
        let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for t in 0..self.count(2) {
            let vs = self.cell_vertices(2, t);
            if let Some(pos) = vs.iter().position(|&x| x == v) {
                let others: Vec<usize> = vs.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &x)| x).collect();
                adj.entry(others[0]).or_default().push(others[1]);
                adj.entry(others[1]).or_default().push(others[0]);
            }
        }
        if adj.is_empty() || adj.values().any(|n| n.len() != 2) {
            return false;
        }
        let start = *adj.keys().next().expect("nonempty link");
        let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
        while cur != start {
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
            steps += 1;
        }
        steps == adj.len()
    }
}

fn parse_label_key(key: &str) -> Option<(usize, usize)> {
    let mut chars = key.chars();
    let first = chars.next()?;
    let k = LABEL_PREFIX.iter().position(|&p| p == first)?;
    Some((k, chars.as_str().parse().ok()?))
}

impl InvolutionAction {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self> {
        let mut perms = perms;
        if perms.len() > MAX_CELL_DIM + 1 {
            return Err(Error::Schema("involution has too many dimensions".into()));
        }
        perms.resize(MAX_CELL_DIM + 1, Vec::new());
        for p in &perms {
            let mut seen = vec![false; p.len()];
            for &i in p {
                if i >= p.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Schema("involution entries must be permutations".into()));
                }
            }
        }
        Ok(Self { perms })
    }

    pub fn image(&self, k: usize, cell: usize) -> usize {
        self.perms[k][cell]
    }

    pub fn is_involution(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &j)| p[j] == i))
    }

    /// Checks `d_{k−i}(ι c) = ι(d_i c)`: negation reverses the lexicographic
    /// vertex order, so it sends the face opposite `v_i` to the face opposite
    /// `v_{k−i}`.
    pub fn commutes_with_faces(&self, complex: &DeltaComplex) -> bool {
        if (0..=MAX_CELL_DIM).any(|k| self.perms[k].len() != complex.count(k)) {
            return false;
        }
        (1..=MAX_CELL_DIM).all(|k| {
            (0..complex.count(k)).all(|c| {
                let f = complex.faces(k, c);
                let g = complex.faces(k, self.perms[k][c]);
                (0..=k).all(|i| g[k - i] == self.perms[k - 1][f[i]])
            })
        })
    }

    /// Cells mapped to themselves, per dimension.
    pub fn fixed_cells(&self, k: usize) -> Vec<usize> {
        self.perms[k].iter().enumerate().filter(|&(i, &j)| i == j).map(|(i, _)| i).collect()
    }
}

/// `Δ_A`: one `k`-cell per class of `k`-simplices modulo the period
/// lattice, faces induced by simplex faces and the involution by `ℓ ↦ −ℓ`.
pub fn dual_complex(fan: &CertifiedFan) -> Result<(DeltaComplex, InvolutionAction)> {
    fan.require_certified()?;
    let t = &fan.triangulation;
    let reps: Vec<Vec<&LatticeSimplex>> = (0..=MAX_CELL_DIM).map(|k| t.simplices_of_dim(k).collect()).collect();
    let index: Vec<BTreeMap<&LatticeSimplex, usize>> =
        reps.iter().map(|r| r.iter().enumerate().map(|(i, s)| (*s, i)).collect()).collect();
    let id = |k: usize, s: &LatticeSimplex| -> usize { index[k][&t.canonical(s)] };

    let mut faces = Vec::new();
    let mut perms = Vec::new();
    let mut labels = Vec::new();
    for (k, cells) in reps.iter().enumerate() {
        faces.push(
            cells
                .iter()
                .map(|s| if k == 0 { Vec::new() } else { s.facets().iter().map(|f| id(k - 1, f)).collect() })
                .collect(),
        );
        perms.push(cells.iter().map(|s| id(k, &s.negate())).collect());
        labels.push(cells.iter().map(|s| s.to_string()).collect());
    }
    Ok((DeltaComplex::new(faces, Some(labels))?, InvolutionAction::new(perms)?))
}

/// `Δ_X`: cells are orbits of the involution, each represented by its
/// smallest-numbered member. Since `ℓ ↦ −ℓ` reverses vertex order, the
/// vertices of every quotient cell are reordered by vertex-orbit number so
/// that the gluings of a cell and of its image agree; this is a Δ-complex
/// whenever no cell carries two vertices of one orbit. Cells of positive
/// dimension fixed by the involution are kept whole, which is exact only
/// when none occur (the case of a free action).
pub fn h_quotient(complex: &DeltaComplex, act: &InvolutionAction) -> DeltaComplex {
    let mut orbit_of: Vec<Vec<usize>> = Vec::new();
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    for k in 0..=MAX_CELL_DIM {
        let mut ids = vec![usize::MAX; complex.count(k)];
        let mut fk = Vec::new();
        let mut lk = Vec::new();
        for c in 0..complex.count(k) {
            let partner = act.image(k, c);
            if partner < c {
                ids[c] = ids[partner];
                continue;
            }
            ids[c] = fk.len();
            if k > 0 {
                let vertex_orbits: Vec<usize> = complex.cell_vertices(k, c).iter().map(|&v| orbit_of[0][v]).collect();
                let mut order: Vec<usize> = (0..=k).collect();
                order.sort_by_key(|&i| vertex_orbits[i]);
                let f = complex.faces(k, c);
                fk.push(order.iter().map(|&i| orbit_of[k - 1][f[i]]).collect());
            } else {
                fk.push(Vec::new());
            }
            lk.push(if partner == c {
                complex.label(k, c).to_string()
            } else {
                format!("{} ~ {}", complex.label(k, c), complex.label(k, partner))
            });
        }
        orbit_of.push(ids);
        faces.push(fk);
        labels.push(lk);
    }
    DeltaComplex { faces, labels }
}

/// `#V − #E + #F`.
pub fn euler_characteristic(complex: &DeltaComplex) -> i64 {
    (0..=MAX_CELL_DIM).map(|k| if k % 2 == 0 { 1 } else { -1 } * complex.count(k) as i64).sum()
}

/// The type forced by the toric rank, after checking that `Δ_X` has the
/// matching shape: a point, a chain, or a sphere.
pub fn classify_kummer_type(d: &DegenerationData, quotient: &DeltaComplex) -> Result<KulikovType> {
    let ty = KulikovType::from_toric_rank(d.rank())?;
    let (ok, shape) = match ty {
        KulikovType::I => (quotient.is_point(), "a point"),
        KulikovType::II => (quotient.is_chain(), "a chain"),
        KulikovType::III => (quotient.is_sphere(), "a triangulated 2-sphere"),
    };
    if !ok {
        return Err(Error::ShapeMismatch(format!(
            "toric rank {} needs the quotient complex to be {shape}; it has {} vertices, {} edges, {} triangles",
            d.rank(),
            quotient.count(0),
            quotient.count(1),
            quotient.count(2)
        )));
    }
    Ok(ty)
}

/// Components of the special fibres of the Néron model of `A` and of the
/// Kummer model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCounts {
    #[serde(with = "crate::json::int")]
    pub n_a: BigInt,
    #[serde(with = "crate::json::int")]
    pub n_x: BigInt,
}

/// `N_A = #Φ` and `N_X = #Φ[2] + (#Φ − #Φ[2]) / 2`, the number of orbits of
/// `Φ` under `x ↦ −x`.
pub fn component_counts(d: &DegenerationData) -> Result<ComponentCounts> {
    if !is_even(d) {
        return Err(Error::OddData);
    }
    let phi = component_group(d.b())?;
    let n_a = phi.order();
    let two = two_torsion_order(&phi);
    let n_x = &two + (&n_a - &two) / 2;
    Ok(ComponentCounts { n_a, n_x })
}

/// Component counts before and after a base change of ramification `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChangeCounts {
    pub e: u64,
    #[serde(with = "crate::json::int")]
    pub n: BigInt,
    #[serde(with = "crate::json::int")]
    pub n_l: BigInt,
    #[serde(with = "crate::json::int")]
    pub formula_n_l: BigInt,
    #[serde(with = "crate::json::int")]
    pub phi_order: BigInt,
    #[serde(with = "crate::json::int")]
    pub phi_l_order: BigInt,
    #[serde(with = "crate::json::int")]
    pub formula_phi_l_order: BigInt,
    pub consistent: bool,
}

/// Counts `N_L` by rebuilding the base-changed data and compares it with
/// `e^t·N − 2^{t−1}(e^t − 1)`; also compares `#Φ_L` with `e^t·#Φ`. For
/// `t = 0` both sides reduce to `N`. Disagreement is an error.
pub fn base_change_counts(d: &DegenerationData, e: u64) -> Result<BaseChangeCounts> {
    let counts = base_change_routes(d, e)?;
    if counts.n_l != counts.formula_n_l {
        return Err(Error::Inconsistent(format!(
            "N_L = {} by recount but {} by formula",
            counts.n_l, counts.formula_n_l
        )));
    }
    if !counts.consistent {
        return Err(Error::Inconsistent(format!(
            "#Phi_L = {} but e^t #Phi = {}",
            counts.phi_l_order, counts.formula_phi_l_order
        )));
    }
    Ok(counts)
}

/// Both routes of [`base_change_counts`] without asserting agreement.
pub fn base_change_routes(d: &DegenerationData, e: u64) -> Result<BaseChangeCounts> {
    if e == 0 {
        return Err(Error::InvalidScale(e.to_string()));
    }
    let before = component_counts(d)?;
    let after = component_counts(&base_change(d, &BigInt::from(e))?)?;
    let t = d.rank() as u32;
    let et: BigInt = Pow::pow(BigInt::from(e), t);
    let formula_n_l = if t == 0 {
        before.n_x.clone()
    } else {
        &et * &before.n_x - (BigInt::one() << (t - 1)) * (&et - BigInt::one())
    };
    let formula_phi_l_order = &et * &before.n_a;
    let consistent = after.n_x == formula_n_l && after.n_a == formula_phi_l_order;
    Ok(BaseChangeCounts {
        e,
        n: before.n_x,
        n_l: after.n_x,
        formula_n_l,
        phi_order: before.n_a,
        phi_l_order: after.n_a,
        formula_phi_l_order,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{auto_scale, certify_fan, standard_triangulation, WindowPolicy};
    use crate::lattice::IntMatrix;

    fn data(b: &[&[i64]]) -> DegenerationData {
        DegenerationData::with_identity_phi(IntMatrix::from_i64(b)).unwrap()
    }

    fn complexes(b: &[&[i64]]) -> (DeltaComplex, InvolutionAction, DeltaComplex) {
        let s = auto_scale(&data(b)).unwrap();
        assert_eq!(s.nu, 1);
        let (a, act) = dual_complex(&s.fan).unwrap();
        let x = h_quotient(&a, &act);
        (a, act, x)
    }

    fn counts(c: &DeltaComplex) -> (usize, usize, usize) {
        (c.count(0), c.count(1), c.count(2))
    }

    #[test]
    fn rank_one_cycle_and_chain() {
        let (a, act, x) = complexes(&[&[2]]);
        assert_eq!(counts(&a), (2, 2, 0));
        assert!(a.is_cycle());
        assert!(act.is_involution() && act.commutes_with_faces(&a));
        assert_eq!(act.fixed_cells(0), vec![0, 1]);
        assert_eq!(counts(&x), (2, 1, 0));
        assert!(x.is_chain());

        let (a, _, x) = complexes(&[&[4]]);
        assert!(a.is_cycle());
        assert_eq!(counts(&x), (3, 2, 0));
        assert_eq!(classify_kummer_type(&data(&[&[4]]), &x).unwrap(), KulikovType::II);
    }

    #[test]
    fn rank_two_torus_and_sphere() {
        let (a, act, x) = complexes(&[&[2, 0], &[0, 2]]);
        assert_eq!(counts(&a), (4, 12, 8));
        assert_eq!(euler_characteristic(&a), 0);
        assert!(a.is_closed_surface());
        assert!(act.is_involution() && act.commutes_with_faces(&a));
        assert_eq!(act.fixed_cells(0).len(), 4);
        assert!(act.fixed_cells(1).is_empty() && act.fixed_cells(2).is_empty());
        assert_eq!(counts(&x), (4, 6, 4));
        assert_eq!(euler_characteristic(&x), 2);
        assert!(x.is_simplicial() && x.is_sphere());
        assert_eq!(classify_kummer_type(&data(&[&[2, 0], &[0, 2]]), &x).unwrap(), KulikovType::III);
    }

    #[test]
    fn rank_zero_point() {
        let (a, _, x) = complexes(&[]);
        assert!(a.is_point() && x.is_point());
        assert_eq!(euler_characteristic(&x), 1);
        assert_eq!(classify_kummer_type(&data(&[]), &x).unwrap(), KulikovType::I);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let (a, _, _) = complexes(&[&[2, 0], &[0, 2]]);
        assert!(matches!(classify_kummer_type(&data(&[&[2, 0], &[0, 2]]), &a), Err(Error::ShapeMismatch(_))));
        let (_, _, chain) = complexes(&[&[4]]);
        assert!(matches!(classify_kummer_type(&data(&[]), &chain), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn uncertified_fans_are_refused() {
        // period Z: every edge meets its unit translate
        let fan = certify_fan(standard_triangulation(1).unwrap(), WindowPolicy::Safe).unwrap();
        assert!(!fan.certificates.property_d);
        assert!(matches!(dual_complex(&fan), Err(Error::UncertifiedFan(_))));
    }

    #[test]
    fn component_count_examples() {
        let c = component_counts(&data(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!((c.n_a, c.n_x), (BigInt::from(4), BigInt::from(4)));
        let c = component_counts(&data(&[&[4]])).unwrap();
        assert_eq!((c.n_a, c.n_x), (BigInt::from(4), BigInt::from(3)));
        let c = component_counts(&data(&[])).unwrap();
        assert_eq!((c.n_a, c.n_x), (BigInt::from(1), BigInt::from(1)));
        assert!(matches!(component_counts(&data(&[&[2, 1], &[1, 2]])), Err(Error::OddData)));
    }

    #[test]
    fn base_change_examples() {
        let c = base_change_counts(&data(&[&[4]]), 3).unwrap();
        assert_eq!((c.n, c.n_l), (BigInt::from(3), BigInt::from(7)));
        assert_eq!(c.phi_l_order, BigInt::from(12));
        let c = base_change_counts(&data(&[&[2, 0], &[0, 2]]), 2).unwrap();
        assert_eq!((c.n, c.n_l, c.phi_l_order), (BigInt::from(4), BigInt::from(10), BigInt::from(16)));
        let c = base_change_counts(&data(&[&[2, 0], &[0, 4]]), 1).unwrap();
        assert_eq!(c.n, c.n_l);
        assert!(base_change_counts(&data(&[&[4]]), 0).is_err());
    }

    #[test]
    fn complex_doc_round_trip() {
        let (a, act, _) = complexes(&[&[2]]);
        let doc = a.to_doc(Some(&act));
        let text = serde_json::to_string(&doc).unwrap();
        let (back, back_act) = DeltaComplex::from_json(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(back_act, Some(act));
        assert_eq!(doc.labels["v1"], "[(1)]");
        assert_eq!(doc.edges, vec![vec![1, 0], vec![0, 1]]);

        let bad = r#"{"vertices":[0],"edges":[[0,3]],"triangles":[],"labels":{}}"#;
        assert!(DeltaComplex::from_json(bad).is_err());
    }

    #[test]
    fn sphere_predicate_rejects_torus_and_pinched_surfaces() {
        // two triangles glued along all three edges: a sphere as a Δ-complex
        let two = DeltaComplex::new(
            vec![vec![vec![]; 3], vec![vec![1, 0], vec![2, 0], vec![2, 1]], vec![vec![2, 1, 0], vec![2, 1, 0]]],
            None,
        )
        .unwrap();
        assert!(two.is_sphere());
        assert!(!two.is_simplicial());
        let (torus, _, _) = complexes(&[&[2, 0], &[0, 2]]);
        assert!(!torus.is_sphere());
    }
}
