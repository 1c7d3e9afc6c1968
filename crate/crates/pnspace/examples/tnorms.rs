// T-norms and their conorms: axiom campaigns, the generated parametric
// family, duality, and scalar dominance.

use pnspace::ddf::AnalyticDdf;
use pnspace::products::{check_scalar_dominance, ScalarOp};
use pnspace::report::CheckParams;
use pnspace::tnorm::{check_tnorm_axioms, TNorm};

fn main() -> pnspace::error::Result<()> {
    let params = CheckParams::new(5000, 7);

    // The three classical kinds and a generated one.
    let tg = TNorm::tg(AnalyticDdf::ratio(1.0)?, 2.0)?;
    for t in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz, tg.clone()] {
        let report = check_tnorm_axioms(&t, params);
        println!("{}", report.summary_line());
    }

    // The generated family evaluates through an additive generator and its
    // inverse; the closed forms bound it on both sides.
    let (x, y) = (0.3, 0.7);
    println!(
        "at ({x}, {y}): W {:.4} <= TG {:.4} <= M {:.4}",
        TNorm::Lukasiewicz.eval(x, y),
        tg.eval(x, y),
        TNorm::Minimum.eval(x, y)
    );

    // Every t-norm pairs with a conorm through s(x, y) = 1 - t(1-x, 1-y).
    let dual = tg.dual();
    println!("dual of {} is {}", tg.name(), dual.name());
    println!("TG*(0.3, 0.7) = {:.4}", dual.eval(x, y));

    // Min dominates every t-norm; the check samples quadruples.
    let dom = check_scalar_dominance(
        &ScalarOp::Norm(TNorm::Minimum),
        &ScalarOp::Norm(tg),
        1e-9,
        params,
    );
    println!("{}", dom.summary_line());
    Ok(())
}
