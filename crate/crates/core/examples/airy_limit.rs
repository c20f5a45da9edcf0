//! The q → 1 limit of A_q(√q·x) through ξ(x) and the real Airy function.

use rug::Float;
use stieltjes_wigert::airy::{airy_ai_with_path, AiryPath};
use stieltjes_wigert::prelude::*;
use stieltjes_wigert::qcore::ArgFn;

pub fn run_example() -> Result<()> {
    let ctx = PrecisionContext::default();
    let policy = AiryEvalPolicy::default();

    for x in [-1.0, -28.0, -40.0] {
        let v = airy_ai_with_path(&Float::with_val(ctx.plain_bits(), x), &policy, &ctx)?;
        let path = if v.path == AiryPath::Taylor {
            "Maclaurin"
        } else {
            "asymptotic"
        };
        println!("Ai({x}) = {}  via {path}", to_scientific(&v.value, Some(20)));
    }

    let x: ExactReal = "4".parse()?;
    for q in ["0.9", "0.99"] {
        let q: ExactReal = q.parse()?;
        let xi = xi_map(&x, &q, &ctx)?;
        let approx = q_airy_limit_q_to_1(&x, &q, &policy, &ctx)?;
        let arg = ArgFn(|b: u32| BigComplex::from_real(q.at(b + 16).sqrt() * x.at(b + 16)).round_to(b));
        let exact = q_airy(&q, &arg, &ctx)?.value.re;
        println!(
            "q={q}: ξ = {}  A_q(√q·4) = {}  limit = {}",
            to_scientific(&xi.xi, Some(10)),
            to_scientific(&exact, Some(8)),
            to_scientific(&approx, Some(8))
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
