pub mod convergence;
pub mod sequence;
pub mod topology;

pub use convergence::{
    converges_in_induced_metric, converges_to, default_tol, final_quarter_start, is_cauchy,
    is_cauchy_induced, properly_converges, CauchyPair, CauchyReport, CauchyVerdict,
    ConvergenceReport, GapKind, GapWitness, Mode, DEFAULT_HORIZON,
};
pub use sequence::{SequenceJson, SequenceSpec};
pub use topology::{
    ball_cover_check, gdelta_diagonal, limit_set, maximal_points, seq_compact_witness,
    specialization_order, totally_bounded_at, CompactnessWitness, CoverReport, DiagonalReport,
    MaximalPoints, Net, SpecializationOrder, Subsequence,
};
