// The dyadic mixture product: factor distributions averaged with weights
// 2^-i, which keeps countable products meaningful without shrinking carriers.

use pnspace::grid::Grid;
use pnspace::products::sigma_product;
use pnspace::report::CheckParams;
use pnspace::spaces::{verify_axioms_parts, NormDef, PnSpace, Space};
use pnspace::ddf::AnalyticDdf;

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(256, 4.0)?;
    let params = CheckParams::new(600, 17);

    // Twenty simple lines. The truncation leaves a 2^-20 deficit that the
    // axiom margins must absorb; the product declares it as a margin bonus.
    let factors: Vec<PnSpace> = (0..20)
        .map(|i| {
            PnSpace::simple_space(1, grid, NormDef::L1, AnalyticDdf::ratio(1.0)?)
                .map(|s| s.with_label(format!("line-{i}")))
        })
        .collect::<pnspace::error::Result<_>>()?;
    let product = sigma_product(&factors)?;
    println!(
        "built {} (dim {}, combiner {}, tail deficit {:.2e})",
        product.name(),
        product.dim(),
        product.combiner().name(),
        product.margin_bonus()
    );

    // The mixture is Menger under W: every axiom campaign passes.
    for report in verify_axioms_parts(&product, params) {
        println!("{}", report.summary_line());
    }
    Ok(())
}
