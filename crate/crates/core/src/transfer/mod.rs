//! Natural extensions of real functions and the calculus built on them.

mod calculus;
mod eval;
mod expr;

pub use calculus::{
    continuity_probe, derivative, evt_demo, limit_fun, limit_seq, limit_seq_report,
    uniform_continuity_probe, Continuity, EvtReport, EvtRow, ProbeSet, SeqLimit,
    SeqLimitReport, UniformContinuity, Witness, EVT_MAX_N, STANDARD_SAMPLES,
};
pub use eval::eval_star;
pub use expr::{Elementary, FuncExpr, NamedConst};

pub(crate) fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
