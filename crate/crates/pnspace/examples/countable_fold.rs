// A countable product: transformed exponential factors folded under the
// product lift, gated by the tail bound on the transform poles.

use pnspace::grid::Grid;
use pnspace::products::{check_countable_tail_bound, countable_product};
use pnspace::report::CheckParams;
use pnspace::spaces::{verify_axioms, NormDef, PnSpace, Space};
use pnspace::tnorm::TNorm;
use pnspace::transform::MbFunction;

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(256, 4.0)?;
    let params = CheckParams::new(600, 13);

    // Ten factors with geometric poles b_i = 2^-i. Each blowup squeezes its
    // factor into [0, b_i[, so the fold lives below the pole sum.
    let k = 10;
    let factor = PnSpace::exp_pi_space(1, grid, NormDef::L1)?;
    let b: Vec<f64> = (1..=k).map(|i| 0.5f64.powi(i as i32)).collect();
    let m: Vec<MbFunction> = b
        .iter()
        .map(|&bi| MbFunction::blowup(bi))
        .collect::<pnspace::error::Result<_>>()?;
    let product = countable_product(&vec![factor; k], &b, &m, &TNorm::Product)?;
    println!(
        "built {} (dim {}, pole sum {:?})",
        product.name(),
        product.dim(),
        product.pole_sum()
    );

    // Past the pole sum every product distribution reaches 1 exactly.
    let report = check_countable_tail_bound(&product, params)?;
    println!("{}", report.summary_line());

    // And the fold is a PN space under the product lift.
    println!("{}", verify_axioms(&product, params).summary_line());
    Ok(())
}
