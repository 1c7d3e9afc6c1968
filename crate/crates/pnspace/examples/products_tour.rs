// Two-factor products of simple spaces: the lift product collapses to a
// simple space over the max-combined norm, the tau_M product to one over the
// sum-combined norm, and the Serstnev property survives the fold.

use pnspace::ddf::AnalyticDdf;
use pnspace::grid::Grid;
use pnspace::products::{check_serstnev_product, check_simple_product_identities, tau_product};
use pnspace::report::CheckParams;
use pnspace::spaces::{verify_axioms, NormDef, PnSpace, Space};
use pnspace::trifn::Trifn;

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(256, 4.0)?;
    let params = CheckParams::new(800, 5);
    let g = AnalyticDdf::ratio(1.0)?;

    let line = PnSpace::simple_space(1, grid, NormDef::L1, g.clone())?;
    let plane = PnSpace::simple_space(2, grid, NormDef::L2, g.clone())?;

    // The product carrier concatenates coordinates; the combiner decides how
    // the factor distributions merge.
    let lifted = tau_product(&line, &plane, Trifn::parse("lift:M")?)?;
    println!(
        "built {} (dim {}, combiner {})",
        lifted.name(),
        lifted.dim(),
        lifted.combiner().name()
    );
    println!("{}", verify_axioms(&lifted, params).summary_line());

    // Both closed-form identities at once: lift against the max combination,
    // sup-convolution against the sum combination.
    let identities = check_simple_product_identities(NormDef::L1, 1, NormDef::L2, 2, g, grid, params)?;
    println!("{}", identities.summary_line());

    // The tau_M product of Serstnev factors is Serstnev again.
    let report = check_serstnev_product(&line, &plane, Trifn::parse("tau:M")?, params)?;
    println!("{}", report.summary_line());
    Ok(())
}
