use rug::Float;

use crate::{Error, Result};

/// Working precision, requested accuracy and escalation policy.
///
/// A context is an immutable value threaded through every evaluation; there
/// is no global precision register. `target_rel_tol` is the accuracy every
/// certified result is measured against, whatever precision the series
/// actually needed to reach it.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecisionContext {
    working_bits: u32,
    target_rel_tol: f64,
    max_escalations: u32,
    guard_bits: u32,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            working_bits: 256,
            target_rel_tol: 1e-30,
            max_escalations: 8,
            guard_bits: 32,
        }
    }
}

pub const MIN_WORKING_BITS: u32 = 64;

impl PrecisionContext {
    pub fn new(working_bits: u32, target_rel_tol: f64, max_escalations: u32, guard_bits: u32) -> Result<Self> {
        if working_bits < MIN_WORKING_BITS {
            return Err(Error::InvalidContext(format!(
                "working_bits must be at least {MIN_WORKING_BITS}, got {working_bits}"
            )));
        }
        if working_bits > rug::float::prec_max() / 4 {
            return Err(Error::InvalidContext(format!(
                "working_bits {working_bits} is beyond the supported range"
            )));
        }
        if !(target_rel_tol > 0.0 && target_rel_tol < 1.0) || !target_rel_tol.is_normal() {
            return Err(Error::InvalidContext(format!(
                "target_rel_tol must lie in (0, 1), got {target_rel_tol}"
            )));
        }
        if max_escalations < 1 {
            return Err(Error::InvalidContext("max_escalations must be at least 1".into()));
        }
        Ok(Self {
            working_bits,
            target_rel_tol,
            max_escalations,
            guard_bits,
        })
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn target_rel_tol(&self) -> f64 {
        self.target_rel_tol
    }

    pub fn max_escalations(&self) -> u32 {
        self.max_escalations
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn with_working_bits(&self, working_bits: u32) -> Result<Self> {
        Self::new(working_bits, self.target_rel_tol, self.max_escalations, self.guard_bits)
    }

    pub fn with_target_rel_tol(&self, target_rel_tol: f64) -> Result<Self> {
        Self::new(self.working_bits, target_rel_tol, self.max_escalations, self.guard_bits)
    }

    pub fn with_max_escalations(&self, max_escalations: u32) -> Result<Self> {
        Self::new(self.working_bits, self.target_rel_tol, max_escalations, self.guard_bits)
    }

    /// ceil(log2(1 / target_rel_tol)).
    pub fn tol_bits(&self) -> u32 {
        (-self.target_rel_tol.log2()).ceil() as u32
    }

    /// Bits needed so that plain (cancellation-free) arithmetic meets the
    /// target tolerance with the guard margin.
    pub fn plain_bits(&self) -> u32 {
        self.working_bits.max(self.tol_bits() + self.guard_bits)
    }

    /// The target tolerance as a float at `bits`.
    pub fn tol(&self, bits: u32) -> Float {
        Float::with_val(bits.max(64), self.target_rel_tol)
    }

    /// Relative size below which a series tail may be dropped: a sixteenth
    /// of the target so that truncation and rounding together stay inside it.
    pub fn truncation_tol(&self, bits: u32) -> Float {
        self.tol(bits) / 16u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_documented_values() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.working_bits(), 256);
        assert_eq!(ctx.target_rel_tol(), 1e-30);
        assert_eq!(ctx.guard_bits(), 32);
        assert_eq!(ctx.max_escalations(), 8);
        assert_eq!(ctx.tol_bits(), 100);
    }

    #[test]
    fn rejects_invalid_settings() {
        assert!(PrecisionContext::new(32, 1e-30, 8, 32).is_err());
        assert!(PrecisionContext::new(256, 0.0, 8, 32).is_err());
        assert!(PrecisionContext::new(256, 1.0, 8, 32).is_err());
        assert!(PrecisionContext::new(256, f64::NAN, 8, 32).is_err());
        assert!(PrecisionContext::new(256, 1e-30, 0, 32).is_err());
        assert!(PrecisionContext::new(64, 0.5, 1, 0).is_ok());
    }
}
