//! Exact rational monodromy operators: logarithms of unipotent operators,
//! the induced operator on `∧² H¹ ⊕ W`, nilpotency indices and the types
//! they detect, and the sign recovery behind the quadratic twist.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Sign;
use crate::strata::KulikovType;

/// Dimension of `H¹` of an abelian surface.
pub const H1_DIM: usize = 4;
/// Dimension of `∧² H¹`.
pub const WEDGE_DIM: usize = 6;
/// Number of two-torsion points of an abelian surface.
pub const TWO_TORSION_POINTS: usize = 16;

/// A square matrix over `Q`; column `j` holds the image of `e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalOperator {
    n: usize,
    entries: Vec<BigRational>,
}

impl std::fmt::Debug for RationalOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.n).map(|i| self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>())).finish()
    }
}

impl std::ops::Index<(usize, usize)> for RationalOperator {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalOperator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.n + j]
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl RationalOperator {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Schema(format!("operator must be square with {n} columns per row")));
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).expect("square literal")
    }

    /// The elementary matrix `E_ij` (one in row `i`, column `j`), 0-based.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m[(i, j)] = BigRational::one();
        m
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diag(blocks: &[&RationalOperator]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.n;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// The square block starting at `(off, off)` of size `size`.
    pub fn sub_block(&self, off: usize, size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in 0..size {
                m[(i, j)] = self[(off + i, off + j)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| a * k).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Coefficients `c_0, …, c_n` of `det(x·Id − M) = Σ c_k x^k`, by the
    /// Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<BigRational> {
        let n = self.n;
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &c[n - k + 1];
            }
            m = next;
            c[n - k] = -self.mul(&m).trace() / rat(k as i64);
        }
        c
    }

    /// Characteristic polynomial `(x − 1)^n`.
    pub fn is_unipotent(&self) -> bool {
        self.charpoly() == shifted_power(self.n, -1)
    }

    /// Characteristic polynomial `x^n`.
    pub fn is_nilpotent(&self) -> bool {
        self.charpoly() == shifted_power(self.n, 0)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        let n = self.n;
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank][col].clone();
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut().filter(|row| !row[col].is_zero()) {
                let f = &row[col] / &pivot;
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, p);
            inv.swap(col, p);
            let pivot = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &pivot;
                inv[col][c] /= &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let (da, di) = (&f * &a[col][c], &f * &inv[col][c]);
                    a[r][c] -= da;
                    inv[r][c] -= di;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// `Σ_{k<n} M^k / k!` for nilpotent `M`.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let mut out = Self::identity(self.n);
        let mut term = Self::identity(self.n);
        for k in 1..self.n.max(1) {
            term = term.mul(self).scale(&(BigRational::one() / rat(k as i64)));
            if term.is_zero() {
                break;
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn from_doc(doc: &MatrixDoc) -> Result<Self> {
        if doc.entries.len() != doc.dim {
            return Err(Error::Schema(format!("expected {} rows, got {}", doc.dim, doc.entries.len())));
        }
        let rows = doc
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> MatrixDoc {
        MatrixDoc {
            dim: self.n,
            entries: (0..self.n).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

/// Coefficients of `(x + c)^n`, lowest degree first.
fn shifted_power(n: usize, c: i64) -> Vec<BigRational> {
    let mut p = vec![BigRational::one()];
    for _ in 0..n {
        let mut q = vec![BigRational::zero(); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            q[k + 1] += a;
            q[k] += a * rat(c);
        }
        p = q;
    }
    p
}

/// Parses `"p/q"` or `"p"` with integers `p`, `q` and `q ≠ 0`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Schema(format!("not a rational number: {s:?}"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// On-disk form: `{"dim": n, "entries": [["p/q", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
}

/// `log σ = Σ_{m≥1} (−1)^{m+1} (σ − 1)^m / m`, a finite sum for unipotent `σ`.
pub fn log_unipotent(sigma: &RationalOperator) -> Result<RationalOperator> {
    if !sigma.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let n = sigma.dim();
    let u = sigma.sub(&RationalOperator::identity(n));
    let mut out = RationalOperator::zeros(n);
    let mut power = RationalOperator::identity(n);
    for m in 1..=n.max(1) {
        power = power.mul(&u);
        if power.is_zero() {
            break;
        }
        let sign = if m % 2 == 1 { 1 } else { -1 };
        out = out.add(&power.scale(&(rat(sign) / rat(m as i64))));
    }
    Ok(out)
}

/// The 4×4 nilpotent `N` with `N² = 0` and rank `t`: `N e_2 = e_1`, and for
/// `t = 2` also `N e_4 = e_3`.
pub fn standard_n(t: usize) -> Result<RationalOperator> {
    let mut n = RationalOperator::zeros(H1_DIM);
    match t {
        0 => {}
        1 => n[(0, 1)] = BigRational::one(),
        2 => {
            n[(0, 1)] = BigRational::one();
            n[(2, 3)] = BigRational::one();
        }
        r => return Err(Error::UnsupportedRank(r)),
    }
    Ok(n)
}

/// Index pairs `(i, j)`, `i < j`, in lexicographic order: the basis
/// `e_i ∧ e_j` of `∧²`.
pub fn wedge_basis(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect()
}

/// Matrix of `∧²f`: `f e_i ∧ f e_j` expanded in the basis of [`wedge_basis`].
pub fn wedge_square(f: &RationalOperator) -> RationalOperator {
    let basis = wedge_basis(f.dim());
    let mut w = RationalOperator::zeros(basis.len());
    for (c, &(i, j)) in basis.iter().enumerate() {
        for (r, &(k, l)) in basis.iter().enumerate() {
            w[(r, c)] = &f[(k, i)] * &f[(l, j)] - &f[(l, i)] * &f[(k, j)];
        }
    }
    w
}

/// Matrix of `N∧Id + Id∧N`: `e_i ∧ e_j ↦ N e_i ∧ e_j + e_i ∧ N e_j`.
pub fn wedge_derivation(n: &RationalOperator) -> RationalOperator {
    let basis = wedge_basis(n.dim());
    let mut w = RationalOperator::zeros(basis.len());
    for (c, &(i, j)) in basis.iter().enumerate() {
        for (r, &(k, l)) in basis.iter().enumerate() {
            let mut v = BigRational::zero();
            if l == j {
                v += &n[(k, i)];
            }
            if k == j {
                v -= &n[(l, i)];
            }
            if k == i {
                v += &n[(l, j)];
            }
            if l == i {
                v -= &n[(k, j)];
            }
            w[(r, c)] = v;
        }
    }
    w
}

/// The monodromy logarithm on `H² = ∧² H¹ ⊕ W`, stored by blocks: the
/// derivation block on `∧² H¹` and the zero block on the 16-dimensional
/// permutation part `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerMonodromy {
    pub wedge: RationalOperator,
    pub w_dim: usize,
}

impl KummerMonodromy {
    pub fn dim(&self) -> usize {
        self.wedge.dim() + self.w_dim
    }

    /// The dense `22 × 22` matrix.
    pub fn to_operator(&self) -> RationalOperator {
        RationalOperator::block_diag(&[&self.wedge, &RationalOperator::zeros(self.w_dim)])
    }

    /// Nilpotency index of the full operator; the zero block contributes
    /// nothing beyond index one.
    pub fn nilpotency_index(&self) -> Result<usize> {
        nilpotency_index(&self.wedge)
    }
}

fn require_square_zero(n: &RationalOperator) -> Result<()> {
    if n.dim() != H1_DIM {
        return Err(Error::DimensionMismatch { expected: H1_DIM, got: n.dim() });
    }
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    if !n.mul(n).is_zero() {
        return Err(Error::BadSquare);
    }
    Ok(())
}

/// `N_X = (N∧Id + Id∧N) ⊕ 0` for the monodromy logarithm `N` on `H¹`.
pub fn kummer_monodromy(n: &RationalOperator) -> Result<KummerMonodromy> {
    require_square_zero(n)?;
    Ok(KummerMonodromy { wedge: wedge_derivation(n), w_dim: TWO_TORSION_POINTS })
}

/// Smallest `m ≥ 1` with `M^m = 0`.
pub fn nilpotency_index(m: &RationalOperator) -> Result<usize> {
    let mut power = m.clone();
    for k in 1..=m.dim().max(1) {
        if power.is_zero() {
            return Ok(k);
        }
        power = power.mul(m);
    }
    Err(Error::NotNilpotent)
}

/// Index 1, 2, 3 gives type I, II, III.
pub fn type_from_index(m: usize) -> Result<KulikovType> {
    match m {
        1 => Ok(KulikovType::I),
        2 => Ok(KulikovType::II),
        3 => Ok(KulikovType::III),
        _ => Err(Error::InvalidIndex(m)),
    }
}

/// The toric rank is the rank of `N`.
pub fn toric_rank_from_n(n: &RationalOperator) -> Result<usize> {
    require_square_zero(n)?;
    Ok(n.rank())
}

/// The sign `s` with `s·f` unipotent, for a 4×4 `f` whose wedge square is
/// unipotent.
pub fn unipotent_or_negative(f: &RationalOperator) -> Result<Sign> {
    if f.dim() != H1_DIM {
        return Err(Error::DimensionMismatch { expected: H1_DIM, got: f.dim() });
    }
    if !wedge_square(f).is_unipotent() {
        return Err(Error::HypothesisFailed);
    }
    if f.is_unipotent() {
        Ok(Sign::Plus)
    } else if f.neg().is_unipotent() {
        Ok(Sign::Minus)
    } else {
        Err(Error::HypothesisFailed)
    }
}

/// `q(σ) = ±1` according as `±σ` is unipotent, for each operator. Every pair
/// `(i, j)` in `products` is additionally checked for
/// `q(σ_i σ_j) = q(σ_i) q(σ_j)`.
pub fn quadratic_twist_character(ops: &[RationalOperator], products: &[(usize, usize)]) -> Result<Vec<Sign>> {
    let signs = ops.iter().map(unipotent_or_negative).collect::<Result<Vec<_>>>()?;
    for &(i, j) in products {
        if i >= ops.len() || j >= ops.len() {
            return Err(Error::Schema(format!("product ({i}, {j}) refers to a missing operator")));
        }
        if unipotent_or_negative(&ops[i].mul(&ops[j]))? != signs[i] * signs[j] {
            return Err(Error::TwistNotMultiplicative);
        }
    }
    Ok(signs)
}

/// A permutation of the sixteen two-torsion points, 1-based as on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PermutationDoc", into = "PermutationDoc")]
pub struct TwoTorsionPermutation {
    perm: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct PermutationDoc {
    perm: Vec<usize>,
}

impl TryFrom<PermutationDoc> for TwoTorsionPermutation {
    type Error = Error;

    fn try_from(doc: PermutationDoc) -> Result<Self> {
        Self::new(doc.perm)
    }
}

impl From<TwoTorsionPermutation> for PermutationDoc {
    fn from(p: TwoTorsionPermutation) -> Self {
        PermutationDoc { perm: p.perm }
    }
}

impl TwoTorsionPermutation {
    /// `perm[i]` is the image of point `i + 1`; entries are `1..=16`.
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        if perm.len() != TWO_TORSION_POINTS {
            return Err(Error::Schema(format!("permutation needs {TWO_TORSION_POINTS} entries, got {}", perm.len())));
        }
        let mut seen = [false; TWO_TORSION_POINTS];
        for &p in &perm {
            if !(1..=TWO_TORSION_POINTS).contains(&p) || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Schema("perm must list each of 1..=16 exactly once".into()));
            }
        }
        Ok(Self { perm })
    }

    pub fn identity() -> Self {
        Self { perm: (1..=TWO_TORSION_POINTS).collect() }
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i + 1)
    }

    /// Permutation matrix sending basis vector `e_i` to `e_{perm(i)}`.
    pub fn matrix(&self) -> RationalOperator {
        let mut m = RationalOperator::zeros(TWO_TORSION_POINTS);
        for (i, &p) in self.perm.iter().enumerate() {
            m[(p - 1, i)] = BigRational::one();
        }
        m
    }
}

/// Whether the permutation matrix is unipotent, which for a permutation
/// matrix happens only for the identity.
pub fn two_torsion_trivial(p: &TwoTorsionPermutation) -> bool {
    let unipotent = p.matrix().is_unipotent();
    debug_assert_eq!(unipotent, p.is_identity());
    unipotent
}
