//! Arithmetic foundation: exact inputs, big complex numbers, decimal I/O,
//! q-shifted factorials and precision escalation for alternating sums.

mod complex;
mod context;
mod decimal;
mod escalation;
mod exact;
mod pochhammer;

pub(crate) use complex::pi;
pub use complex::{BigComplex, BigReal};
pub use context::{PrecisionContext, MIN_WORKING_BITS};
pub(crate) use decimal::DecimalDigits;
pub use decimal::{parse_scientific, round_trip_digits, to_scientific};
pub use escalation::{
    cancellation_bits, evaluate_with_escalation, Certified, ConditionReport, SeriesSum, TermAccumulator,
};
pub use exact::{ArgFn, ComplexArg, ExactComplex, ExactReal};
pub use pochhammer::{q_pochhammer, q_pochhammer_inf, qq_table, InfiniteProduct};
