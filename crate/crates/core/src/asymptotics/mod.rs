//! Global approximants of S_n(z; q) by the q-Airy function, with their
//! explicitly computable remainder bounds, plus the Θ_q-region formula and
//! the large-z relation for A_q.
//!
//! Write z = u·q^(−n·t). For t < 2 the inner approximant is
//! (q;q)_n S_n(z) = A_q(z) + r_n(z); for t > 0 the outer one is
//! (q;q)_n S_n(z) = (−z)^n q^(n²)·[A_q(q^(−2n)/z) + r_n(q^(−2n)/z)].

mod global;
mod theta_region;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::qcore::{BigComplex, BigReal, ExactReal};
use crate::{Error, Result};

pub use global::{approx_inner, approx_outer, inner_bound_factor, outer_bound_factor, remainder_series};
pub use theta_region::{
    large_z_index, q_airy_large_z, theta_region_approx, theta_region_approx_with_m, ThetaRegionApprox,
};

/// Which formula produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegionTag {
    /// A_q(z), valid for t < 2.
    Inner,
    /// (−z)^n q^(n²) A_q(q^(−2n)/z), valid for t > 0.
    Outer,
    /// The Θ_q formula for 1 ≤ t < 2.
    Theta,
    /// The q → 1 Airy limit of A_q(√q·x).
    AiryLimit,
}

impl RegionTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Inner => "INNER",
            Self::Outer => "OUTER",
            Self::Theta => "THETA",
            Self::AiryLimit => "AIRY_LIMIT",
        }
    }
}

impl std::fmt::Display for RegionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// σ = max(1/2, 1/2 + t/4) for t < 2.
pub fn sigma_of_t(t: &ExactReal) -> Result<ExactReal> {
    if *t.rational() >= 2 {
        return Err(Error::Domain(format!("σ(t) needs t < 2, got {t}")));
    }
    let half = Rational::from((1, 2));
    let linear = &half + Rational::from(t.rational() / 4u32);
    Ok(ExactReal::from_rational(half.max(linear)))
}

/// δ = min(3/2, 1 + t/4) for t > 0.
pub fn delta_of_t(t: &ExactReal) -> Result<ExactReal> {
    if *t.rational() <= 0 {
        return Err(Error::Domain(format!("δ(t) needs t > 0, got {t}")));
    }
    let cap = Rational::from((3, 2));
    let linear = Rational::from(1) + Rational::from(t.rational() / 4u32);
    Ok(ExactReal::from_rational(cap.min(linear)))
}

/// Requests extra work from the approximants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ApproxOptions {
    /// Also run the exact series and the direct remainder series, filling
    /// `exact`, `exact_core`, `remainder` and `realized_rel_err`.
    pub with_exact: bool,
}

impl ApproxOptions {
    pub fn with_exact() -> Self {
        Self { with_exact: true }
    }
}

/// One approximant evaluation.
///
/// The "core" quantities live on the scale the remainder bound is stated
/// on: (q;q)_n S_n(z) against A_q(z) for the inner approximant, and
/// (q;q)_n S_n(q^(−2n)/z) against A_q(q^(−2n)/z) for the outer one.
/// Multiplying by `prefactor` gives S_n(z) itself.
#[derive(Clone, Debug)]
pub struct ApproxReport {
    pub region: RegionTag,
    /// σ(t) for the inner approximant, δ(t) for the outer one.
    pub sigma_or_delta: ExactReal,
    /// Approximation of S_n(z).
    pub approx: BigComplex,
    /// A_q at the region's argument.
    pub core: BigComplex,
    /// 1/(q;q)_n (inner) or (−z)^n q^(n²)/(q;q)_n (outer).
    pub prefactor: BigComplex,
    /// Certified bound on |S_n(z) − approx|.
    pub bound: BigReal,
    /// Certified bound on |r_n| on the core scale.
    pub core_bound: BigReal,
    /// S_n(z).
    pub exact: Option<BigComplex>,
    /// (q;q)_n S_n at the region's argument.
    pub exact_core: Option<BigComplex>,
    /// r_n at the region's argument, summed directly without cancellation
    /// against the exact value.
    pub remainder: Option<BigComplex>,
    /// |r_n| / |exact_core|.
    pub realized_rel_err: Option<BigReal>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> ExactReal {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma_of_t(&t("0")).unwrap(), t("0.5"));
        assert_eq!(sigma_of_t(&t("1.6")).unwrap(), t("0.9"));
        assert_eq!(sigma_of_t(&t("-3")).unwrap(), t("0.5"));
        assert!(sigma_of_t(&t("2")).is_err());
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta_of_t(&t("2")).unwrap(), t("1.5"));
        assert_eq!(delta_of_t(&t("1")).unwrap(), t("1.25"));
        assert_eq!(delta_of_t(&t("100")).unwrap(), t("1.5"));
        assert!(delta_of_t(&t("0")).is_err());
    }

    #[test]
    fn region_tags_serialize_upper_case() {
        assert_eq!(serde_json::to_string(&RegionTag::AiryLimit).unwrap(), "\"AIRY_LIMIT\"");
        assert_eq!(RegionTag::Inner.to_string(), "INNER");
    }
}
