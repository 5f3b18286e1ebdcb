//! Semistable fans of the cone over `X^∨_R`, stored as their height-one
//! slices: periodic lattice triangulations of `X^∨_R`.

mod certify;
mod simplex;
mod sublattice;
mod triangulation;

pub use certify::{
    auto_scale, certify_fan, certify_for_data, check_gamma_admissible, check_h_freeness, check_h_freeness_on_lattice,
    check_polarization, check_property_d, check_property_d_unchecked, check_semistable, check_unimodular, safe_window,
    semistability_failures, CertifiedFan, Certificates, GammaViolation, InvolutionViolation, PolarizationForm,
    ScaledFan, TranslationViolation, WindowPolicy, GAMMA_CHECK_RADIUS,
};
pub use simplex::{hulls_intersect, is_unimodular, LatticeSimplex};
pub use sublattice::{Point, Sublattice};
pub use triangulation::{standard_triangulation, FanDoc, PeriodicTriangulation, Wall};
