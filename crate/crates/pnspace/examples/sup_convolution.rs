// The three triangle-function kinds built from one t-norm: sup-convolution,
// pointwise lift, and the dual colift, ordered as tau <= lift <= colift.

use pnspace::ddf::{AnalyticDdf, Ddf};
use pnspace::grid::Grid;
use pnspace::tnorm::{TConorm, TNorm};
use pnspace::trifn::{colift, lift, sup_convolve, Trifn};

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(512, 8.0)?;

    // Steps convolve to the step at the summed abscissa, whatever the t-norm.
    let f = Ddf::eps(1.25, grid);
    let g = Ddf::eps(2.5, grid);
    for t in [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz] {
        let h = sup_convolve(&t, &f, &g);
        println!(
            "tau_{}(eps_1.25, eps_2.5) jumps at {:?}",
            t.name(),
            h.jump_abscissa()
        );
    }

    // On smooth shapes the kinds separate. The convolution shifts mass to the
    // right of the lift because it spends its argument across both inputs.
    let shape = AnalyticDdf::ratio(1.0)?;
    let a = Ddf::from_fn(grid, |x| shape.eval(x), 1.0);
    let b = Ddf::from_fn(grid, |x| shape.eval(2.0 * x), 1.0);
    let conv = sup_convolve(&TNorm::Minimum, &a, &b);
    let lifted = lift(&TNorm::Minimum, &a, &b);
    let colifted = colift(&TConorm::Maximum, &a, &b);
    println!("tau_M <= lift_M: {}", conv.le(&lifted, 1e-12).holds);
    println!("lift_M <= colift_M*: {}", lifted.le(&colifted, 1e-12).holds);
    println!(
        "at x = 1: tau_M {:.4}, lift_M {:.4}, colift_M* {:.4}",
        conv.eval(1.0),
        lifted.eval(1.0),
        colifted.eval(1.0)
    );

    // The parsed grammar names the same operations.
    let tau = Trifn::parse("tau:M")?;
    println!("parsed {} back from its name", tau.name());
    Ok(())
}
