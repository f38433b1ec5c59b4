//! Approximation problems whose solutions encode tiling counts.

pub mod aztec;
pub mod hexagon;

pub use aztec::{
    aztec_count, aztec_count_eps, aztec_full, aztec_multigap_count_by_telescoping, aztec_multigap_ratio,
    aztec_multigap_solve, aztec_pade, aztec_pade_eps, aztec_special_count, check_aztec_multigap, kappa_closed_form,
    pade_defect_vanishes, KappaForm, MultiGapSolution, PadeSolution, SpecialKind,
};
pub use hexagon::{
    check_hexagon_multigap, hermite_defect_vanishes, hexagon_hermite_pade, hexagon_k_max, hexagon_k_min,
    hexagon_multigap_ratio, hexagon_multigap_solve, hexagon_reduced_count, macmahon, HermitePadeSolution,
    HexMultiGapSolution,
};
