//! Arbitrary-precision Stieltjes–Wigert polynomials, the q-Airy (Ramanujan)
//! function and the theta-type function Θ_q, together with the two global
//! approximants of S_n(z; q) by A_q and their explicitly computable
//! remainder bounds.
//!
//! The crate is organised bottom-up:
//!
//! - [`qcore`]: exact inputs, big complex arithmetic, q-shifted factorials
//!   and the precision-escalation engine that certifies alternating sums.
//! - [`qfunctions`]: series and product evaluation of S_n, p_n, A_q,
//!   A_{q,n}, Θ_q and the weight w(x).
//! - [`asymptotics`]: the inner/outer approximants with certified bounds,
//!   the Θ_q-region formula and the large-z relation for A_q.
//! - [`airy`]: ξ(x) by adaptive Gauss–Legendre quadrature, a Taylor plus
//!   asymptotic Ai, and the q → 1 limit of A_q(√q·x).
//! - [`harness`]: table reproduction, verification suites, scientific
//!   formatting and the `swq` command line.
//!
//! ```no_run
//! use stieltjes_wigert::prelude::*;
//!
//! let ctx = PrecisionContext::default();
//! let params = QParams::new("0.5".parse()?, 50)?;
//! let z = ExactComplex::from_real(1.into());
//! let s = stieltjes_wigert(&params, &z, &ctx)?;
//! println!("S_50(1; 0.5) = {}", to_scientific(&s.value.re, Some(20)));
//! # Ok::<(), stieltjes_wigert::Error>(())
//! ```

pub mod airy;
pub mod asymptotics;
mod error;
pub mod harness;
pub mod qcore;
pub mod qfunctions;

pub use error::{Error, Result};

/// The types and functions most callers need.
pub mod prelude {
    pub use crate::airy::{airy_ai, q_airy_limit_q_to_1, xi_map, AiryEvalPolicy, XiResult};
    pub use crate::asymptotics::{
        approx_inner, approx_outer, delta_of_t, q_airy_large_z, sigma_of_t, theta_region_approx, ApproxOptions,
        ApproxReport, RegionTag,
    };
    pub use crate::harness::{format_scientific, reproduce_table1, reproduce_table2, run_suite, RunConfig, TableRow};
    pub use crate::qcore::{
        evaluate_with_escalation, parse_scientific, q_pochhammer, q_pochhammer_inf, to_scientific, BigComplex, BigReal,
        Certified, ConditionReport, ExactComplex, ExactReal, PrecisionContext, SeriesSum,
    };
    pub use crate::qfunctions::{
        q_airy, q_airy_poly, stieltjes_wigert, sw_p, symmetry_residual, theta_q, weight_w, EvalPoint, QParams,
    };
    pub use crate::{Error, Result};
}
