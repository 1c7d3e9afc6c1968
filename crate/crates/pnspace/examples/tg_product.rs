// The parametric product: alpha-homogeneous factors fold under the generated
// lift into one alpha-homogeneous space over the conjugate beta norm.

use pnspace::ddf::AnalyticDdf;
use pnspace::grid::Grid;
use pnspace::products::{check_tg_identity, tg_product};
use pnspace::report::CheckParams;
use pnspace::spaces::{NormDef, Space};

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(256, 4.0)?;
    let params = CheckParams::new(800, 9);
    let g = AnalyticDdf::ratio(1.0)?;
    let alpha = 2.0;

    // alpha = 2 makes beta = alpha / (alpha - 1) = 2: the flat combination of
    // the factor norms is Euclidean on the pair of norms.
    let product = tg_product(NormDef::L2, 2, NormDef::L2, 2, g.clone(), alpha, grid)?;
    println!("built {} (dim {})", product.name(), product.dim());

    // Factor norms 3 and 4 combine to 5: the distribution of the pair sits
    // exactly where a single factor of norm 5 would put it.
    let p = [3.0, 0.0, 0.0, 4.0];
    let nu = product.nu(&p);
    let single = tg_product(NormDef::L2, 2, NormDef::L2, 2, g, alpha, grid)?;
    let q = [5.0, 0.0, 0.0, 0.0];
    let reference = single.nu(&q);
    println!(
        "nu_(3,4)(t) == nu_(5,0)(t): {}",
        nu.eq_within(&reference, 0, 1e-9).holds
    );

    // The randomized campaign states the same identity over random pairs.
    let report = check_tg_identity(NormDef::L2, 2, NormDef::L2, 2, AnalyticDdf::ratio(1.0)?, alpha, grid, params)?;
    println!("{}", report.summary_line());
    Ok(())
}
