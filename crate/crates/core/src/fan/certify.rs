//! Certification of periodic triangulations as smooth, semistable,
//! Γ-admissible fans, and the search for a base change that admits one.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::simplex::{hulls_intersect, is_unimodular, orientation_2d, side_of_facet, LatticeSimplex};
use super::sublattice::{box_points, Point, Sublattice};
use super::triangulation::{standard_triangulation, PeriodicTriangulation};
use crate::degeneration::{base_change, DegenerationData};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, Sign};

/// Radius of `y` used when checking that `Γ` permutes the cones.
pub const GAMMA_CHECK_RADIUS: i64 = 3;

/// Window radius below which the bounded searches are not exhaustive:
/// largest simplex diameter plus largest period basis entry plus one.
pub fn safe_window(t: &PeriodicTriangulation) -> u64 {
    t.max_diameter() + t.lattice().max_basis_norm() + 1
}

fn require_window(t: &PeriodicTriangulation, window: u64) -> Result<()> {
    let safe = safe_window(t);
    if window < safe {
        return Err(Error::WindowTooSmall { window, safe });
    }
    Ok(())
}

/// Reasons a triangulation fails to be a semistable periodic triangulation;
/// empty when it passes.
pub fn semistability_failures(t: &PeriodicTriangulation) -> Vec<String> {
    let mut out = Vec::new();
    let rank = t.rank();
    let index = t.lattice().index();

    if t.is_empty() {
        out.push("no simplices".to_string());
        return out;
    }
    if !t.contains_class(&LatticeSimplex::new(vec![vec![0; rank]]).expect("point")) {
        out.push("0 is not a vertex".to_string());
    }
    let vertices = t.count(0) as u64;
    if vertices != index {
        out.push(format!("{vertices} vertex classes, but X^dual has {index} classes mod the lattice"));
    }

    let factorial: u64 = (1..=rank as u64).product();
    let volume: u64 = t.simplices_of_dim(rank).map(LatticeSimplex::normalized_volume).sum();
    if volume != factorial * index {
        out.push(format!("top simplices have total normalized volume {volume}, expected {}", factorial * index));
    }

    for s in t.simplices() {
        if s.dim() < rank && !t.simplices().any(|u| u.dim() == rank && contains_face_class(t, u, s)) {
            out.push(format!("simplex {s} is not a face of a top-dimensional simplex"));
        }
    }

    if rank > 0 {
        for w in t.walls() {
            let ok = w.cofaces.len() == 2
                && side_of_facet(&w.facet, &w.cofaces[0].1) * side_of_facet(&w.facet, &w.cofaces[1].1) < 0;
            if !ok {
                out.push(format!("facet {} is not shared by two simplices on opposite sides", w.facet));
            }
        }
    }
    out
}

fn contains_face_class(t: &PeriodicTriangulation, top: &LatticeSimplex, s: &LatticeSimplex) -> bool {
    top.faces().iter().any(|f| f.dim() == s.dim() && t.canonical(f) == *s)
}

/// Every ray has the form `(ℓ, 1)` with `ℓ ∈ X^∨` (automatic for lattice
/// vertices), `{0} × R≥0` is a cone, the simplices tile `X^∨_R` face to face,
/// and every point of `X^∨` is a vertex.
pub fn check_semistable(t: &PeriodicTriangulation) -> bool {
    semistability_failures(t).is_empty()
}

pub fn check_unimodular(t: &PeriodicTriangulation) -> bool {
    t.simplices().all(is_unimodular)
}

/// A pair `(λ, S)` with `λ ≠ 0` in the period lattice and `S ∩ (S + λ) ≠ ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationViolation {
    pub lambda: Point,
    pub simplex: LatticeSimplex,
}

/// Cones meet their own `Y`-translates only in the apex: no simplex meets a
/// nonzero lattice translate of itself. Exhaustive once `window` reaches the
/// safe bound.
pub fn check_property_d(t: &PeriodicTriangulation, window: u64) -> Result<Vec<TranslationViolation>> {
    require_window(t, window)?;
    Ok(check_property_d_unchecked(t, window))
}

/// As [`check_property_d`] but without enforcing the safe window.
pub fn check_property_d_unchecked(t: &PeriodicTriangulation, window: u64) -> Vec<TranslationViolation> {
    let lambdas = t.lattice().vectors_in_window(window);
    let mut out = Vec::new();
    for s in t.simplices() {
        let d = s.diameter();
        for l in &lambdas {
            if l.iter().any(|x| x.unsigned_abs() > d) {
                continue;
            }
            if hulls_intersect(s, &s.translate(l)) {
                out.push(TranslationViolation { lambda: l.clone(), simplex: s.clone() });
            }
        }
    }
    out
}

/// A simplex with at least two vertices fixed by the involution up to
/// translation: `−S = S + b(y, −)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionViolation {
    pub y: Vec<i64>,
    pub lambda: Point,
    pub simplex: LatticeSimplex,
}

/// Checks that `H` acts freely on the classes of cones of dimension at
/// least two. The triangulation's period lattice must be `Λ_b`; `y` is
/// reported in the basis of `Y`.
///
/// For each class the only candidate translation is forced
/// (`λ = min(−S) − min(S)`), so the test per class is exact; `window` is
/// validated against the safe bound like the other windowed checks.
pub fn check_h_freeness(
    t: &PeriodicTriangulation,
    d: &DegenerationData,
    window: u64,
) -> Result<Vec<InvolutionViolation>> {
    require_window(t, window)?;
    check_h_freeness_unchecked(t, d)
}

fn check_h_freeness_unchecked(t: &PeriodicTriangulation, d: &DegenerationData) -> Result<Vec<InvolutionViolation>> {
    let lambda_b = Sublattice::new(d.b())?;
    if !lambda_b.same_lattice(t.lattice()) {
        return Err(Error::Schema("triangulation period lattice differs from the lattice spanned by b".into()));
    }
    Ok(h_fixed_classes(t, &lambda_b))
}

/// [`check_h_freeness`] with `y` expressed in the triangulation's own
/// lattice basis.
pub fn check_h_freeness_on_lattice(t: &PeriodicTriangulation, window: u64) -> Result<Vec<InvolutionViolation>> {
    require_window(t, window)?;
    Ok(h_fixed_classes(t, t.lattice()))
}

fn h_fixed_classes(t: &PeriodicTriangulation, coords: &Sublattice) -> Vec<InvolutionViolation> {
    let mut out = Vec::new();
    for s in t.simplices().filter(|s| s.dim() >= 1) {
        let neg = s.negate();
        let lambda: Point = neg.min_vertex().iter().zip(s.min_vertex()).map(|(a, b)| a - b).collect();
        if s.translate(&lambda) != neg {
            continue;
        }
        if let Some(y) = coords.coefficients(&lambda) {
            let y = y.into_iter().map(|c| i64::try_from(c).expect("coefficient fits")).collect();
            out.push(InvolutionViolation { y, lambda, simplex: s.clone() });
        }
    }
    out
}

/// A simplex whose image under `S_{(y,h)}` is not a cone of the fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaViolation {
    pub y: Vec<i64>,
    pub h: Sign,
    pub simplex: LatticeSimplex,
}

/// Checks that `S_{(y,h)}` maps simplices to simplices for `|y|_∞ ≤ radius`
/// and both signs. On the height-one slice `S_{(y,h)}(ℓ) = h·ℓ + b(y, −)`.
pub fn check_gamma_admissible(t: &PeriodicTriangulation, d: &DegenerationData, radius: i64) -> Result<Vec<GammaViolation>> {
    let rank = t.rank();
    if d.rank() != rank {
        return Err(Error::DimensionMismatch { expected: rank, got: d.rank() });
    }
    let mut out = Vec::new();
    for y in box_points(&vec![-radius; rank], &vec![radius; rank]) {
        let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        let shift: Point = d
            .b_of(&yb)
            .iter()
            .map(|v| v.to_i64().ok_or(Error::CoordinateOverflow))
            .collect::<Result<_>>()?;
        for h in [Sign::Plus, Sign::Minus] {
            for s in t.simplices() {
                let base = if h == Sign::Plus { s.clone() } else { s.negate() };
                if !t.contains_class(&base.translate(&shift)) {
                    out.push(GammaViolation { y: y.clone(), h, simplex: s.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// A quadratic form `Q(ℓ) = ½ ℓᵀ G ℓ` with `G` symmetric and of even
/// diagonal, so `Q` is integral on `Z^t`. Its values at the vertices define
/// a piecewise-linear function on the triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationForm {
    gram: IntMatrix,
}

impl PolarizationForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Schema("polarization Gram matrix must be symmetric".into()));
        }
        if (0..gram.rows()).any(|i| num_integer::Integer::is_odd(&gram[(i, i)])) {
            return Err(Error::Schema("polarization Gram matrix needs an even diagonal".into()));
        }
        Ok(Self { gram })
    }

    /// `Q(n) = n²` for rank 1 and `Q(m, n) = m² − mn + n²` for rank 2. The
    /// latter is strictly convex exactly on the diagonal subdivision used by
    /// [`standard_triangulation`].
    pub fn standard(rank: usize) -> Result<Self> {
        let gram = match rank {
            0 => IntMatrix::zeros(0, 0),
            1 => IntMatrix::from_i64(&[&[2]]),
            2 => IntMatrix::from_i64(&[&[2, -1], &[-1, 2]]),
            r => return Err(Error::UnsupportedRank(r)),
        };
        Self::new(gram)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn value(&self, l: &[i64]) -> BigInt {
        let v: Vec<BigInt> = l.iter().map(|&x| BigInt::from(x)).collect();
        self.gram.bilinear(&v, &v) / 2
    }

    pub fn is_positive_definite(&self) -> bool {
        self.gram.leading_minors().iter().all(Signed::is_positive)
    }
}

/// `D · (Q(q) − f(q))` where `f` is the affine interpolation of `Q` on the
/// simplex `top = facet ∪ {p}`, together with `D`; the convexity margin is
/// their quotient.
fn wall_margin(q_form: &PolarizationForm, facet: &LatticeSimplex, p: &[i64], q: &[i64]) -> (BigInt, BigInt) {
    let qv = |x: &[i64]| q_form.value(x);
    let f = facet.vertices();
    match facet.ambient_rank() {
        1 => {
            let v = &f[0];
            let d = BigInt::from(p[0] - v[0]);
            let num = &d * qv(q) - BigInt::from(p[0] - q[0]) * qv(v) - BigInt::from(q[0] - v[0]) * qv(p);
            (num, d)
        }
        2 => {
            let (u, v) = (&f[0], &f[1]);
            let d = orientation_2d(u, v, p);
            // barycentric weights of q in (u, v, p), scaled by d
            let wp = orientation_2d(u, v, q);
            let wv = orientation_2d(u, q, p);
            let wu = d - wp - wv;
            let d = BigInt::from(d);
            let num = &d * qv(q) - BigInt::from(wu) * qv(u) - BigInt::from(wv) * qv(v) - BigInt::from(wp) * qv(p);
            (num, d)
        }
        _ => (BigInt::from(1), BigInt::from(1)),
    }
}

/// Strict convexity of the piecewise-linear interpolation of `Q` across
/// every wall whose translate lies in the window. Central symmetry and the
/// periodicity twist `Q(ℓ + λ) − Q(ℓ)` affine in `ℓ` hold identically for a
/// quadratic form, so beyond convexity only positivity of `Q` is tested.
pub fn check_polarization(t: &PeriodicTriangulation, form: &PolarizationForm, window: u64) -> bool {
    if form.rank() != t.rank() || !form.is_positive_definite() {
        return false;
    }
    if t.rank() == 0 {
        return true;
    }
    let mut translates = t.lattice().vectors_in_window(window);
    translates.push(vec![0; t.rank()]);
    t.walls().iter().all(|w| {
        if w.cofaces.len() != 2 {
            return false;
        }
        let (p, q) = (&w.cofaces[0].1, &w.cofaces[1].1);
        translates.iter().all(|l| {
            let shift = |x: &[i64]| -> Point { x.iter().zip(l).map(|(a, b)| a + b).collect() };
            let (num, den) = wall_margin(form, &w.facet.translate(l), &shift(p), &shift(q));
            (num * den).is_positive()
        })
    })
}

/// Outcome of each certification check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    pub semistable: bool,
    pub unimodular: bool,
    pub property_d: bool,
    pub h_free: bool,
    pub gamma_admissible: bool,
    pub polarization: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.semistable && self.unimodular && self.property_d && self.h_free && self.gamma_admissible && self.polarization
    }

    /// The conditions a dual complex needs.
    pub fn fan_certified(&self) -> bool {
        self.semistable && self.unimodular && self.property_d
    }
}

/// A triangulation together with the checks it was run through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedFan {
    pub triangulation: PeriodicTriangulation,
    pub certificates: Certificates,
    pub window: u64,
}

/// How the search radius of the windowed checks is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WindowPolicy {
    /// The safe bound of the triangulation.
    #[default]
    Safe,
    /// A caller radius, refused with [`Error::WindowTooSmall`] below the
    /// safe bound.
    Checked(u64),
    /// A caller radius used as given; results below the safe bound are not
    /// certificates.
    Unchecked(u64),
}

impl WindowPolicy {
    /// The radius to search, or the error for a checked radius that is
    /// too small.
    pub fn resolve(self, t: &PeriodicTriangulation) -> Result<u64> {
        match self {
            WindowPolicy::Safe => Ok(safe_window(t)),
            WindowPolicy::Checked(w) => require_window(t, w).map(|()| w),
            WindowPolicy::Unchecked(w) => Ok(w),
        }
    }
}

/// Runs every check that needs only the triangulation: semistability,
/// unimodularity, property (d), freeness of the involution (coordinates in
/// the triangulation's lattice basis) and the standard polarization.
pub fn certify_fan(t: PeriodicTriangulation, policy: WindowPolicy) -> Result<CertifiedFan> {
    let window = policy.resolve(&t)?;
    let certificates = Certificates {
        semistable: check_semistable(&t),
        unimodular: check_unimodular(&t),
        property_d: check_property_d_unchecked(&t, window).is_empty(),
        h_free: h_fixed_classes(&t, t.lattice()).is_empty(),
        // translations of the period lattice always preserve the classes;
        // the content of admissibility is the central symmetry
        gamma_admissible: t.simplices().all(|s| t.contains_class(&s.negate())),
        polarization: check_polarization(&t, &PolarizationForm::standard(t.rank())?, window),
    };
    Ok(CertifiedFan { triangulation: t, certificates, window })
}

/// [`certify_fan`] with `H`-freeness and `Γ`-admissibility checked against
/// the degeneration data itself.
pub fn certify_for_data(t: PeriodicTriangulation, d: &DegenerationData, policy: WindowPolicy) -> Result<CertifiedFan> {
    let window = policy.resolve(&t)?;
    let mut fan = certify_fan(t, WindowPolicy::Unchecked(window))?;
    fan.certificates.h_free = check_h_freeness_unchecked(&fan.triangulation, d)?.is_empty();
    fan.certificates.gamma_admissible = check_gamma_admissible(&fan.triangulation, d, GAMMA_CHECK_RADIUS)?.is_empty();
    Ok(fan)
}

impl CertifiedFan {
    pub fn require_certified(&self) -> Result<()> {
        let c = &self.certificates;
        let missing: Vec<&str> = [("semistable", c.semistable), ("unimodular", c.unimodular), ("property_d", c.property_d)]
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| *n)
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::UncertifiedFan(missing.join(", ")))
        }
    }
}

/// Result of [`auto_scale`]: the ramification index and the fan certified
/// for the base-changed data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledFan {
    pub nu: u64,
    pub data: DegenerationData,
    pub fan: CertifiedFan,
}

/// Smallest `ν ≥ 1` for which the standard triangulation, taken with period
/// lattice `Λ_{ν·b}`, passes every check; returns it with the certified fan
/// of `base_change(d, ν)`.
pub fn auto_scale(d: &DegenerationData) -> Result<ScaledFan> {
    let standard = standard_triangulation(d.rank())?;
    for nu in 1u64.. {
        let scaled = base_change(d, &BigInt::from(nu))?;
        let t = standard.attach_lattice(Sublattice::new(scaled.b())?)?;
        let fan = certify_for_data(t, &scaled, WindowPolicy::Safe)?;
        if fan.certificates.all() {
            return Ok(ScaledFan { nu, data: scaled, fan });
        }
    }
    unreachable!("an even multiple of b always spreads the lattice past the unit simplices")
}
