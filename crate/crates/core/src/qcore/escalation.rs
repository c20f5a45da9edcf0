use std::cmp::Ordering;

use rug::Float;

use super::complex::{BigComplex, BigReal};
use super::context::PrecisionContext;
use crate::{Error, Result};

/// Outcome of one series run at a fixed precision.
#[derive(Clone, Debug)]
pub struct SeriesSum {
    pub value: BigComplex,
    /// Largest |term| seen while summing.
    pub max_term: BigReal,
    pub terms: usize,
}

/// Cancellation diagnostics of a certified evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub max_term_magnitude: BigReal,
    pub result_magnitude: BigReal,
    /// ceil(log2(max_term / |result|)), zero when no cancellation occurred.
    pub cancellation_bits: u32,
    pub escalations_used: u32,
    /// Precision of the run that was finally accepted.
    pub final_bits: u32,
    pub terms: usize,
}

/// A value certified to the context's target relative tolerance.
#[derive(Clone, Debug)]
pub struct Certified {
    pub value: BigComplex,
    pub condition: ConditionReport,
}

impl Certified {
    /// Wraps a value obtained without cancellation (products, closed forms).
    pub fn exact_path(value: BigComplex) -> Self {
        let bits = value.prec();
        let magnitude = value.abs();
        Self {
            condition: ConditionReport {
                max_term_magnitude: magnitude.clone(),
                result_magnitude: magnitude,
                cancellation_bits: 0,
                escalations_used: 0,
                final_bits: bits,
                terms: 1,
            },
            value,
        }
    }

    /// Applies a cancellation-free transformation to the certified value.
    pub fn map(self, f: impl FnOnce(BigComplex) -> BigComplex) -> Self {
        let value = f(self.value);
        let mut condition = self.condition;
        condition.result_magnitude = value.abs();
        Self { value, condition }
    }
}

/// Running sum that tracks the largest term magnitude.
#[derive(Clone, Debug)]
pub struct TermAccumulator {
    sum: BigComplex,
    max_term: BigReal,
    terms: usize,
}

impl TermAccumulator {
    pub fn new(bits: u32) -> Self {
        Self {
            sum: BigComplex::zero(bits),
            max_term: Float::new(64),
            terms: 0,
        }
    }

    pub fn add(&mut self, term: &BigComplex) {
        self.sum += term;
        self.note_magnitude(&term.abs());
        self.terms += 1;
    }

    pub fn sub(&mut self, term: &BigComplex) {
        self.sum -= term;
        self.note_magnitude(&term.abs());
        self.terms += 1;
    }

    /// Records a magnitude that took part in the sum without adding a term,
    /// e.g. the size of an intermediate that was cancelled inside a term.
    pub fn note_magnitude(&mut self, magnitude: &BigReal) {
        if magnitude.cmp_abs(&self.max_term) == Some(Ordering::Greater) {
            self.max_term = Float::with_val(64, magnitude);
        }
    }

    pub fn sum(&self) -> &BigComplex {
        &self.sum
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn finish(self) -> SeriesSum {
        SeriesSum {
            value: self.sum,
            max_term: self.max_term,
            terms: self.terms,
        }
    }
}

/// ceil(log2(max_term / |result|)) clamped at zero; `None` when the result
/// vanished although some term did not.
pub fn cancellation_bits(max_term: &BigReal, result: &BigReal) -> Option<u32> {
    if max_term.is_zero() {
        return Some(0);
    }
    if result.is_zero() {
        return None;
    }
    let ratio = Float::with_val(64, max_term / result).abs();
    if ratio <= 1 {
        return Some(0);
    }
    let bits = ratio.log2().ceil();
    Some(bits.to_u32_saturating().unwrap_or(u32::MAX))
}

/// Runs `evaluator` at the context's working precision and re-runs it at
/// higher precision until the observed cancellation fits.
///
/// A run at `b` bits is accepted when
/// `cancellation_bits + tol_bits + guard_bits <= b`; otherwise the next run
/// uses exactly that many bits. A vanishing result with nonzero terms
/// doubles the precision. After `max_escalations` re-runs without
/// acceptance the evaluation fails with [`Error::EscalationExhausted`].
pub fn evaluate_with_escalation<F>(ctx: &PrecisionContext, mut evaluator: F) -> Result<Certified>
where
    F: FnMut(u32) -> Result<SeriesSum>,
{
    let mut bits = ctx.working_bits();
    let mut escalations = 0;
    loop {
        let run = evaluator(bits)?;
        let magnitude = run.value.abs();
        let cancel = cancellation_bits(&run.max_term, &magnitude);
        let needed = match cancel {
            Some(c) => c.saturating_add(ctx.tol_bits()).saturating_add(ctx.guard_bits()),
            None => bits.saturating_mul(2),
        };
        if cancel.is_some() && needed <= bits {
            return Ok(Certified {
                condition: ConditionReport {
                    max_term_magnitude: run.max_term,
                    result_magnitude: magnitude,
                    cancellation_bits: cancel.unwrap_or(0),
                    escalations_used: escalations,
                    final_bits: bits,
                    terms: run.terms,
                },
                value: run.value,
            });
        }
        if escalations >= ctx.max_escalations() || needed > rug::float::prec_max() / 4 {
            return Err(Error::EscalationExhausted {
                escalations,
                bits,
                cancellation_bits: cancel.unwrap_or(bits),
            });
        }
        escalations += 1;
        bits = needed.max(bits + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(bits: u32, v: f64) -> BigComplex {
        BigComplex::from_real(Float::with_val(bits, v))
    }

    #[test]
    fn positive_terms_never_escalate() {
        let ctx = PrecisionContext::default();
        let out = evaluate_with_escalation(&ctx, |bits| {
            let mut acc = TermAccumulator::new(bits);
            for k in 1..=100 {
                acc.add(&real(bits, 1.0 / f64::from(k * k)));
            }
            Ok(acc.finish())
        })
        .unwrap();
        assert_eq!(out.condition.escalations_used, 0);
        assert_eq!(out.condition.cancellation_bits, 0);
    }

    #[test]
    fn heavy_cancellation_escalates_once() {
        // 2^200 + 1 − 2^200 is visible at 256 bits but needs 200 + 100 + 32
        let ctx = PrecisionContext::default();
        let mut seen = Vec::new();
        let out = evaluate_with_escalation(&ctx, |bits| {
            seen.push(bits);
            let big = BigComplex::from_real(Float::with_val(bits, Float::i_exp(1, 200)));
            let mut acc = TermAccumulator::new(bits);
            acc.add(&big);
            acc.add(&real(bits, 1.0));
            acc.sub(&big);
            Ok(acc.finish())
        })
        .unwrap();
        assert_eq!(out.value.re, 1);
        assert_eq!(out.condition.cancellation_bits, 200);
        assert_eq!(out.condition.escalations_used, 1);
        assert_eq!(seen, vec![256, 200 + 100 + 32]);
    }

    #[test]
    fn invisible_cancellation_doubles_precision() {
        let ctx = PrecisionContext::default();
        let mut seen = Vec::new();
        let out = evaluate_with_escalation(&ctx, |bits| {
            seen.push(bits);
            let big = BigComplex::from_real(Float::with_val(bits, Float::i_exp(1, 600)));
            let mut acc = TermAccumulator::new(bits);
            acc.add(&big);
            acc.add(&real(bits, 1.0));
            acc.sub(&big);
            Ok(acc.finish())
        })
        .unwrap();
        assert_eq!(out.value.re, 1);
        assert_eq!(seen, vec![256, 512, 1024]);
    }

    #[test]
    fn vanishing_sums_exhaust_the_budget() {
        let ctx = PrecisionContext::default().with_max_escalations(3).unwrap();
        let err = evaluate_with_escalation(&ctx, |bits| {
            let mut acc = TermAccumulator::new(bits);
            acc.add(&real(bits, 1.0));
            acc.sub(&real(bits, 1.0));
            Ok(acc.finish())
        })
        .unwrap_err();
        assert!(matches!(err, Error::EscalationExhausted { escalations: 3, .. }));
    }

    #[test]
    fn all_zero_terms_are_exact() {
        let ctx = PrecisionContext::default();
        let out = evaluate_with_escalation(&ctx, |bits| {
            let mut acc = TermAccumulator::new(bits);
            acc.add(&BigComplex::zero(bits));
            Ok(acc.finish())
        })
        .unwrap();
        assert!(out.value.is_zero());
        assert_eq!(out.condition.cancellation_bits, 0);
    }
}
