use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::degeneration::MAX_RANK;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// A point of `X^∨ ≅ Z^t`.
pub type Point = Vec<i64>;

/// Entries of a period lattice basis are kept below this bound so that every
/// intermediate product fits comfortably in `i128`.
const MAX_ENTRY: i64 = 1 << 31;

/// A full-rank sublattice `Λ ⊆ Z^t` (`t ≤ 2`) spanned by the rows of a basis
/// matrix, with reduction of points into the half-open fundamental
/// parallelepiped `{Σ c_i λ_i : 0 ≤ c_i < 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    basis: Vec<Point>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

impl Sublattice {
    pub fn new(basis: &IntMatrix) -> Result<Self> {
        let t = basis.rows();
        if !basis.is_square() {
            return Err(Error::Schema(format!("lattice basis must be square, got {}x{}", t, basis.cols())));
        }
        if t > MAX_RANK {
            return Err(Error::UnsupportedRank(t));
        }
        let rows: Vec<Point> = basis
            .to_rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().filter(|v| v.abs() < MAX_ENTRY).ok_or(Error::CoordinateOverflow))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_points(rows)
    }

    pub fn from_points(basis: Vec<Point>) -> Result<Self> {
        let t = basis.len();
        if t > MAX_RANK {
            return Err(Error::UnsupportedRank(t));
        }
        if basis.iter().any(|r| r.len() != t) {
            return Err(Error::Schema("lattice basis must be square".into()));
        }
        if basis.iter().flatten().any(|v| v.abs() >= MAX_ENTRY) {
            return Err(Error::CoordinateOverflow);
        }
        let b = |i: usize, j: usize| basis[i][j] as i128;
        let (adj, det) = match t {
            0 => (vec![], 1),
            1 => (vec![vec![1]], b(0, 0)),
            _ => (
                vec![vec![b(1, 1), -b(0, 1)], vec![-b(1, 0), b(0, 0)]],
                b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0),
            ),
        };
        if det == 0 {
            return Err(Error::SingularPairing);
        }
        Ok(Self { basis, adj, det })
    }

    pub fn identity(rank: usize) -> Self {
        let basis = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        Self::from_points(basis).expect("identity lattice")
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Point] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.basis.iter().map(|r| r.iter().copied())).expect("square basis")
    }

    /// Index `[Z^t : Λ]`.
    pub fn index(&self) -> u64 {
        self.det.unsigned_abs() as u64
    }

    pub fn max_basis_norm(&self) -> u64 {
        self.basis.iter().flatten().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// `v · adj(B)`, i.e. `det(B)` times the coordinates of `v` in the basis.
    fn scaled_coords(&self, v: &[i64]) -> Vec<i128> {
        let t = self.rank();
        (0..t).map(|j| (0..t).map(|i| v[i] as i128 * self.adj[i][j]).sum()).collect()
    }

    /// Integer coordinates of `v` in the basis, if `v ∈ Λ`.
    pub fn coefficients(&self, v: &[i64]) -> Option<Vec<i128>> {
        self.scaled_coords(v)
            .into_iter()
            .map(|c| {
                let (q, r) = c.div_rem(&self.det);
                (r == 0).then_some(q)
            })
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coefficients(v).is_some()
    }

    /// The unique representative of `v + Λ` in the fundamental parallelepiped.
    pub fn reduce(&self, v: &[i64]) -> Point {
        let t = self.rank();
        let q: Vec<i128> = self.scaled_coords(v).into_iter().map(|c| Integer::div_floor(&c, &self.det)).collect();
        (0..t)
            .map(|j| {
                let shift: i128 = (0..t).map(|i| q[i] * self.basis[i][j] as i128).sum();
                i64::try_from(v[j] as i128 - shift).expect("reduced coordinate fits in i64")
            })
            .collect()
    }

    /// One representative per class of `Z^t / Λ`, sorted.
    pub fn coset_reps(&self) -> Vec<Point> {
        let t = self.rank();
        let mut lo = vec![0i64; t];
        let mut hi = vec![0i64; t];
        for mask in 0..(1usize << t) {
            for j in 0..t {
                let c: i64 = (0..t).filter(|i| mask >> i & 1 == 1).map(|i| self.basis[i][j]).sum();
                lo[j] = lo[j].min(c);
                hi[j] = hi[j].max(c);
            }
        }
        let reps: Vec<Point> = box_points(&lo, &hi).filter(|p| self.reduce(p) == *p).collect();
        debug_assert_eq!(reps.len() as u64, self.index());
        reps
    }

    /// Nonzero lattice vectors with `|λ|_∞ ≤ radius`, sorted.
    pub fn vectors_in_window(&self, radius: u64) -> Vec<Point> {
        let r = radius as i64;
        let t = self.rank();
        box_points(&vec![-r; t], &vec![r; t])
            .filter(|p| p.iter().any(|&x| x != 0) && self.contains(p))
            .collect()
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &Sublattice) -> bool {
        self.rank() == other.rank() && self.basis.iter().all(|b| other.contains(b))
    }

    /// Same lattice, possibly different basis.
    pub fn same_lattice(&self, other: &Sublattice) -> bool {
        self.is_sublattice_of(other) && other.is_sublattice_of(self)
    }
}

/// Integer points of the box `[lo, hi]` in lexicographic order.
pub(crate) fn box_points(lo: &[i64], hi: &[i64]) -> impl Iterator<Item = Point> {
    let lo = lo.to_vec();
    let hi = hi.to_vec();
    let t = lo.len();
    let mut cur: Option<Point> = if lo.iter().zip(&hi).all(|(a, b)| a <= b) { Some(lo.clone()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut k = t;
        loop {
            if k == 0 {
                cur = None;
                break;
            }
            k -= 1;
            if next[k] < hi[k] {
                next[k] += 1;
                cur = Some(next);
                break;
            }
            next[k] = lo[k];
        }
        Some(out)
    })
}
