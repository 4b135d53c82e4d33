//! Exact combinatorics of cyclic quotient singularities: Hirzebruch-Jung
//! continued fractions, T-chains and their discrepancies, zero continued
//! fractions, P-resolutions, building-block surface assembly, and
//! involution quotients. All arithmetic is exact (arbitrary-precision
//! integers and rationals); every value is immutable after construction
//! and every operation is pure, so the whole crate is safe to use from
//! multiple threads.

pub mod appendix;
pub mod cf;
pub mod error;
pub mod horikawa;
pub mod pres;
pub mod quotient;
pub mod smallsurf;
pub mod tsing;
pub mod zcf;

pub use appendix::{appendix_check, ComparisonReport, FamilyId, FamilyParams};
pub use cf::{
    blow_down, blow_down_with, dual, evaluate, hj_expand, is_zero_chain, Continuant, Fraction,
    GenChain, HJChain,
};
pub use error::{Error, Result};
pub use horikawa::{
    geography, horikawa_families, instantiate_family, validate_family_instance, GeographyReport,
    HorikawaFamily,
};
pub use pres::{
    compute_p_resolution, enumerate_p_resolutions, render, verify_p_resolution, PNode, PNodeKind,
    PResolution, VerifyReport,
};
pub use quotient::{
    duval_quotient_scan, lee_park_quotient, quotient_candidates, wahl_quotient_scan, CaseTag, Cqs,
    QuotientOutcome, ScanReport,
};
pub use smallsurf::{
    assemble, blowdown_invariants, bmy_bound, instantiate_block, k2_global, k2_multisection,
    lee_park, BlockId, BlockInstance, BlockParams, FiberKind, InvariantsRecord, LeeParkRecord,
    SmallSurfaceConfig, SmallSurfaceReport,
};
pub use tsing::{
    center, discrepancies, discrepancies_recursive, enumerate_t_chains, t_children, t_expand,
    t_recognize, DiscrepancyVector, TType,
};
pub use zcf::{enumerate_zcf, k_cross_set, k_set, triangulations, Triangulation, ZeroChain};
