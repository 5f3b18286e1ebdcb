//! Split degeneration data `(X, Y, φ, a, b)` of an abelian surface, the
//! action of `Γ = Y ⋊ {±1}` on the cone over `X^∨`, and base change.
//!
//! Conventions: `X` and `Y` are identified with `Z^t` through fixed bases.
//! Row `i` of `phi` holds the coordinates of `φ(e_i^Y)` in `X`, and
//! `b[i][j] = b(e_i^Y, e_j^X)`. The element `b(y, −) ∈ X^∨` is therefore the
//! row vector `yᵀ·b`, and the symmetric pairing on `Y` is
//! `M[i][j] = b(e_i, φ(e_j)) = (b·phiᵀ)[i][j]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{IntMatrix, Sign};

/// Largest toric rank handled (abelian surfaces).
pub const MAX_RANK: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationData {
    rank: usize,
    phi: IntMatrix,
    b: IntMatrix,
    a_basis: Vec<BigInt>,
}

/// The on-disk form of [`DegenerationData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationDoc {
    pub rank: usize,
    pub phi: IntMatrix,
    pub b: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "json::opt_int_vec")]
    pub a_basis: Option<Vec<BigInt>>,
}

impl DegenerationData {
    /// Builds degeneration data after checking shapes.
    ///
    /// When `a_basis` is `None` the H-invariant choice `a(e_i) = M_ii / 2` is
    /// used; this fails with [`Error::OddDiagonal`] if some `M_ii` is odd.
    /// Axioms (injectivity, positivity) are not checked here; see [`validate`].
    pub fn new(rank: usize, phi: IntMatrix, b: IntMatrix, a_basis: Option<Vec<BigInt>>) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(Error::UnsupportedRank(rank));
        }
        for (name, m) in [("phi", &phi), ("b", &b)] {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Schema(format!(
                    "{name} must be {rank}x{rank}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let m = b.mul(&phi.transpose());
        let a_basis = match a_basis {
            Some(a) if a.len() != rank => {
                return Err(Error::Schema(format!("a_basis must have {rank} entries, got {}", a.len())));
            }
            Some(a) => a,
            None => (0..rank)
                .map(|i| {
                    let (q, r) = m[(i, i)].div_rem(&BigInt::from(2));
                    if r.is_zero() {
                        Ok(q)
                    } else {
                        Err(Error::OddDiagonal { index: i, value: m[(i, i)].to_string() })
                    }
                })
                .collect::<Result<_>>()?,
        };
        Ok(Self { rank, phi, b, a_basis })
    }

    pub fn from_doc(doc: DegenerationDoc) -> Result<Self> {
        Self::new(doc.rank, doc.phi, doc.b, doc.a_basis)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: DegenerationDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn to_doc(&self) -> DegenerationDoc {
        DegenerationDoc {
            rank: self.rank,
            phi: self.phi.clone(),
            b: self.b.clone(),
            a_basis: Some(self.a_basis.clone()),
        }
    }

    /// Data with `φ = Id` and the default (H-invariant) `a`.
    pub fn with_identity_phi(b: IntMatrix) -> Result<Self> {
        let rank = b.rows();
        Self::new(rank, IntMatrix::identity(rank), b, None)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn phi(&self) -> &IntMatrix {
        &self.phi
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn a_basis(&self) -> &[BigInt] {
        &self.a_basis
    }

    /// The pairing `M[i][j] = b(e_i, φ(e_j))` on `Y`.
    pub fn pairing_matrix(&self) -> IntMatrix {
        self.b.mul(&self.phi.transpose())
    }

    /// `b(y, −)` as a vector of `X^∨`.
    pub fn b_of(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.b.left_apply(y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
    /// Not an axiom: whether `a(−y) = a(y)`. Kummer-side pipelines need it.
    pub h_invariant: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks the axioms of the category: φ injective, `M` symmetric, `M`
/// positive definite, and the quadratic extension of `a` integral.
pub fn validate(d: &DegenerationData) -> ValidationReport {
    let mut checks = Vec::new();
    let t = d.rank();

    let det_phi = d.phi.determinant();
    checks.push(AxiomCheck {
        name: "phi_injective".into(),
        passed: t == 0 || !det_phi.is_zero(),
        detail: format!("det(phi) = {det_phi}"),
    });

    let m = d.pairing_matrix();
    let symmetric = m.is_symmetric();
    checks.push(AxiomCheck {
        name: "pairing_symmetric".into(),
        passed: symmetric,
        detail: format!("M = {m:?}"),
    });

    let minors = m.leading_minors();
    checks.push(AxiomCheck {
        name: "pairing_positive_definite".into(),
        passed: symmetric && minors.iter().all(Signed::is_positive),
        detail: format!(
            "leading minors [{}]",
            minors.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
    });

    // a(y) = Σ a_i y_i + (yᵀMy − Σ M_ii y_i) / 2; the numerator is even iff
    // every M_ij + M_ji is, which is what integrality of a on e_i + e_j means.
    let integral = (0..t).all(|i| (0..t).all(|j| i == j || (&m[(i, j)] + &m[(j, i)]).is_even()));
    checks.push(AxiomCheck {
        name: "a_integral".into(),
        passed: integral,
        detail: "a(e_i + e_j) - a(e_i) - a(e_j) = M_ij".into(),
    });

    ValidationReport { checks, h_invariant: h_invariance_check(d) }
}

/// The unique extension of `a_basis` satisfying
/// `a(y + y') − a(y) − a(y') = yᵀ M y'` with `a(0) = 0`.
pub fn a_value(d: &DegenerationData, y: &[BigInt]) -> BigInt {
    assert_eq!(y.len(), d.rank(), "vector length must equal the toric rank");
    let m = d.pairing_matrix();
    let mut total = BigInt::zero();
    for i in 0..d.rank() {
        total += &d.a_basis[i] * &y[i];
        // C(y_i, 2) * M_ii
        let choose2 = (&y[i] * (&y[i] - BigInt::one())) / 2;
        total += choose2 * &m[(i, i)];
        for j in i + 1..d.rank() {
            total += &m[(i, j)] * &y[i] * &y[j];
        }
    }
    total
}

/// An element `(y, h)` of `Γ = Y ⋊ H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GammaElement {
    #[serde(with = "json::int_vec")]
    pub y: Vec<BigInt>,
    pub h: Sign,
}

impl GammaElement {
    pub fn new(y: Vec<BigInt>, h: Sign) -> Self {
        Self { y, h }
    }

    pub fn identity(rank: usize) -> Self {
        Self { y: vec![BigInt::zero(); rank], h: Sign::Plus }
    }

    /// Group law making `S_{g1·g2} = S_{g1} ∘ S_{g2}`:
    /// `(y1, h1)·(y2, h2) = (y1 + h1·y2, h1·h2)`.
    pub fn compose(&self, other: &Self) -> Self {
        let h1 = BigInt::from(self.h.as_i64());
        let y = self.y.iter().zip(&other.y).map(|(a, b)| a + &h1 * b).collect();
        Self { y, h: self.h * other.h }
    }
}

/// A point `(ℓ, s)` of `X^∨ ⊕ Z` with `s ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConePoint {
    #[serde(with = "json::int_vec")]
    pub l: Vec<BigInt>,
    #[serde(with = "json::int")]
    pub s: BigInt,
}

impl ConePoint {
    pub fn new(l: Vec<BigInt>, s: BigInt) -> Self {
        Self { l, s }
    }

    pub fn is_apex(&self) -> bool {
        self.s.is_zero() && self.l.iter().all(Zero::is_zero)
    }
}

/// `S_{(y,h)}(ℓ, s) = (h·ℓ + s·b(y, −), s)`.
pub fn gamma_act(d: &DegenerationData, g: &GammaElement, p: &ConePoint) -> ConePoint {
    let h = BigInt::from(g.h.as_i64());
    let shift = d.b_of(&g.y);
    let l = p.l.iter().zip(&shift).map(|(l, b)| &h * l + &p.s * b).collect();
    ConePoint { l, s: p.s.clone() }
}

/// Whether every value `b(y, ξ)` is even.
pub fn is_even(d: &DegenerationData) -> bool {
    d.b.entries().all(Integer::is_even)
}

/// Base change along an extension of ramification index `nu`:
/// `(X, Y, φ, a, b) ↦ (X, Y, φ, ν·a, ν·b)`.
pub fn base_change(d: &DegenerationData, nu: &BigInt) -> Result<DegenerationData> {
    if !nu.is_positive() {
        return Err(Error::InvalidScale(nu.to_string()));
    }
    Ok(DegenerationData {
        rank: d.rank,
        phi: d.phi.clone(),
        b: d.b.scale(nu),
        a_basis: d.a_basis.iter().map(|a| a * nu).collect(),
    })
}

pub fn toric_rank(d: &DegenerationData) -> usize {
    d.rank
}

/// Whether `a(−y) = a(y)` for all `y`, i.e. `2·a(e_i) = M_ii` for all `i`.
pub fn h_invariance_check(d: &DegenerationData) -> bool {
    let m = d.pairing_matrix();
    (0..d.rank).all(|i| &d.a_basis[i] * 2 == m[(i, i)])
}
