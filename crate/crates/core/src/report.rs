//! The full pipeline from degeneration data to every invariant, with each
//! quantity that has two independent derivations cross-checked.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::degeneration::{h_invariance_check, is_even, validate, DegenerationData, DegenerationDoc};
use crate::error::{Error, Result};
use crate::fan::{auto_scale, certify_for_data, Certificates, WindowPolicy};
use crate::lattice::{component_group, ComponentGroup};
use crate::monodromy::{kummer_monodromy, nilpotency_index, standard_n, toric_rank_from_n, type_from_index};
use crate::strata::{
    base_change_routes, classify_kummer_type, component_counts, dual_complex, euler_characteristic, h_quotient,
    BaseChangeCounts, DeltaComplex, KulikovType,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub euler_characteristic: i64,
    pub shape: String,
}

impl ComplexSummary {
    pub fn of(c: &DeltaComplex) -> Self {
        let shape = if c.is_point() {
            "point"
        } else if c.is_chain() {
            "chain"
        } else if c.is_cycle() {
            "cycle"
        } else if c.is_sphere() {
            "sphere"
        } else if c.is_closed_surface() {
            "closed surface"
        } else {
            "other"
        };
        Self {
            vertices: c.count(0),
            edges: c.count(1),
            triangles: c.count(2),
            euler_characteristic: euler_characteristic(c),
            shape: shape.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromySummary {
    pub rank_n: usize,
    pub index_h1: usize,
    pub index_h2: usize,
    pub kulikov_type: KulikovType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: DegenerationDoc,
    pub toric_rank: usize,
    pub component_group: ComponentGroup,
    #[serde(with = "crate::json::int")]
    pub n_a: BigInt,
    #[serde(with = "crate::json::int")]
    pub n_x: BigInt,
    pub kulikov_type: KulikovType,
    pub nu: u64,
    pub window: u64,
    pub certificates: Certificates,
    pub delta_a: ComplexSummary,
    pub delta_x: ComplexSummary,
    pub monodromy: MonodromySummary,
    pub consistency: BTreeMap<String, bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_change: Option<Vec<BaseChangeCounts>>,
}

impl Report {
    /// Names of the consistency checks and base-change rows that failed.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.consistency.iter().filter(|(_, ok)| !**ok).map(|(k, _)| k.clone()).collect();
        for row in self.base_change.iter().flatten().filter(|r| !r.consistent) {
            out.push(format!("base_change_e{}", row.e));
        }
        out
    }

    pub fn consistent(&self) -> bool {
        self.failures().is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub window: WindowPolicy,
    /// Ramification indices `1..=max_e` for the base-change table.
    pub max_e: Option<u64>,
}

/// Checks the preconditions of the Kummer pipeline: axioms, evenness and
/// `H`-invariance.
pub fn require_kummer_ready(d: &DegenerationData) -> Result<()> {
    let report = validate(d);
    if !report.passed() {
        return Err(Error::AxiomFailed(report.failures().map(|c| c.name.clone()).collect()));
    }
    if !is_even(d) {
        return Err(Error::OddData);
    }
    if !h_invariance_check(d) {
        return Err(Error::NotHInvariant);
    }
    Ok(())
}

/// Runs the whole pipeline on valid, even, `H`-invariant data.
pub fn classify(d: &DegenerationData, options: ReportOptions) -> Result<Report> {
    require_kummer_ready(d)?;
    let t = d.rank();

    let scaled = auto_scale(d)?;
    let fan = match options.window {
        WindowPolicy::Safe => scaled.fan,
        policy => certify_for_data(scaled.fan.triangulation, &scaled.data, policy)?,
    };
    let (delta_a, act) = dual_complex(&fan)?;
    let delta_x = h_quotient(&delta_a, &act);
    let kulikov_type = classify_kummer_type(d, &delta_x)?;

    let group = component_group(d.b())?;
    let counts = component_counts(d)?;
    let scaled_counts = component_counts(&scaled.data)?;

    let n = standard_n(t)?;
    let n_x_op = kummer_monodromy(&n)?;
    let monodromy = MonodromySummary {
        rank_n: toric_rank_from_n(&n)?,
        index_h1: nilpotency_index(&n)?,
        index_h2: n_x_op.nilpotency_index()?,
        kulikov_type: type_from_index(n_x_op.nilpotency_index()?)?,
    };

    let closed_n_x = if t == 0 {
        BigInt::one()
    } else {
        &counts.n_a / 2 + (BigInt::one() << (t - 1))
    };
    let a_shape_ok = match t {
        0 => delta_a.is_point(),
        1 => delta_a.is_cycle(),
        _ => delta_a.is_closed_surface() && euler_characteristic(&delta_a) == 0,
    };
    let mut consistency = BTreeMap::new();
    let mut check = |name: &str, ok: bool| {
        consistency.insert(name.to_string(), ok);
    };
    check("certificates", fan.certificates.all());
    check("n_a_vs_delta_a_vertices", BigInt::from(delta_a.count(0)) == scaled_counts.n_a);
    check("n_x_vs_delta_x_vertices", BigInt::from(delta_x.count(0)) == scaled_counts.n_x);
    check("n_x_vs_closed_formula", counts.n_x == closed_n_x);
    check("n_a_vs_determinant", counts.n_a == d.b().determinant().magnitude().clone().into());
    check("delta_a_shape", a_shape_ok);
    check("type_vs_monodromy", monodromy.kulikov_type == kulikov_type);
    check("toric_rank_vs_rank_n", monodromy.rank_n == t);

    let base_change = match options.max_e {
        Some(max_e) => Some((1..=max_e).map(|e| base_change_routes(d, e)).collect::<Result<Vec<_>>>()?),
        None => None,
    };

    Ok(Report {
        input: d.to_doc(),
        toric_rank: t,
        component_group: group,
        n_a: counts.n_a,
        n_x: counts.n_x,
        kulikov_type,
        nu: scaled.nu,
        window: fan.window,
        certificates: fan.certificates,
        delta_a: ComplexSummary::of(&delta_a),
        delta_x: ComplexSummary::of(&delta_x),
        monodromy,
        consistency,
        base_change,
    })
}
