// Strong neighborhoods and how they compare with the product topology: the
// containment that always holds, the reverse witness that refutes the other
// direction, and the dyadic mixture where both directions work.

use pnspace::grid::Grid;
use pnspace::products::{countable_product, sigma_product};
use pnspace::report::CheckParams;
use pnspace::spaces::{NormDef, PnSpace};
use pnspace::tnorm::TNorm;
use pnspace::topology::{
    check_nbhd_nesting, in_strong, sigma_topology_equivalence, tau_product_containment,
};
use pnspace::transform::MbFunction;
use pnspace::ddf::AnalyticDdf;

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(256, 4.0)?;
    let params = CheckParams::new(1500, 19);

    // Membership is the neighborhood criterion nu_(p-q)(t) > 1 - t.
    let plane = PnSpace::simple_space(2, grid, NormDef::L2, AnalyticDdf::ratio(1.0)?)?;
    let p = [0.3, -0.1];
    let near = [0.31, -0.09];
    let far = [2.0, 2.0];
    println!("q near p in N(p, 0.5): {}", in_strong(&plane, &p, &near, 0.5));
    println!("q far  in N(p, 0.5): {}", in_strong(&plane, &p, &far, 0.5));
    println!("{}", check_nbhd_nesting(&plane, params).summary_line());

    // Lift-fold product: strong neighborhoods embed into boxes of factor
    // neighborhoods, and some box member escapes every strong neighborhood.
    let factor = PnSpace::exp_pi_space(1, grid, NormDef::L1)?;
    let b = [0.5, 0.25, 0.125, 0.06, 0.02, 0.008];
    let m: Vec<MbFunction> = b
        .iter()
        .map(|&bi| MbFunction::blowup(bi))
        .collect::<pnspace::error::Result<_>>()?;
    let fold = countable_product(&vec![factor; 6], &b, &m, &TNorm::Product)?;
    let base = [0.4, -0.8, 1.2, 0.0, 0.3, -0.5];
    let report = tau_product_containment(&fold, &base, 0.1, params)?;
    println!("{}", report.summary_line());
    if let Some(w) = &report.witness {
        println!("  escape witness inputs: {:?}", w.inputs);
    }

    // Dyadic mixture: the two topologies refine each other at explicit radii.
    let lines: Vec<PnSpace> = (0..10)
        .map(|_| PnSpace::simple_space(1, grid, NormDef::L1, AnalyticDdf::ratio(1.0)?))
        .collect::<pnspace::error::Result<_>>()?;
    let sigma = sigma_product(&lines)?;
    let q = [0.5, -0.3, 0.8, 0.0, 1.1, -0.7, 0.2, 0.9, -0.4, 0.6];
    println!(
        "{}",
        sigma_topology_equivalence(&sigma, &q, 0.1, params)?.summary_line()
    );
    Ok(())
}
