// Distance distribution functions on a shared grid: construction, evaluation,
// and the pointwise order that everything else in the crate is stated in.

use pnspace::ddf::{AnalyticDdf, Ddf};
use pnspace::grid::Grid;

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(256, 4.0)?;
    println!("grid: {} cells over [0, {}], step {}", grid.n, grid.x_max, grid.step());

    // Unit steps are the extreme points of the order: eps0 is the maximum,
    // the step at infinity the minimum.
    let e0 = Ddf::eps0(grid);
    let e1 = Ddf::eps(1.0, grid);
    let einf = Ddf::eps_inf(grid);
    println!("eps0(0.5) = {}, eps1(0.5) = {}, eps1(1.5) = {}", e0.eval(0.5), e1.eval(0.5), e1.eval(1.5));
    println!("eps1 <= eps0: {}", e1.le(&e0, 1e-12).holds);
    println!("eps_inf <= eps1: {}", einf.le(&e1, 1e-12).holds);

    // Analytic shapes sample onto the grid; the constructor regularizes them
    // into left-continuous nondecreasing values with F(0) = 0.
    let g = AnalyticDdf::ratio(1.0)?;
    let f = Ddf::from_fn(grid, |x| g.eval(x), 1.0);
    println!("ratio shape at 1.0: {} (closed form {})", f.eval(1.0), g.eval(1.0));
    println!("value at infinity: {}", f.at_inf());

    // Rescaling the argument moves mass horizontally: F(./2) sits below F.
    let slower = f.scale_arg(2.0);
    println!("F(./2) <= F: {}", slower.le(&f, 1e-12).holds);

    // Comparisons carry their worst gap, so near-misses are inspectable.
    let check = f.le(&slower, 1e-12);
    println!(
        "F <= F(./2) holds: {}, max violation {:.4} at x = {:?}",
        check.holds, check.max_violation, check.at
    );

    // A step survives the round trip through the grid representation.
    println!("jump of eps1 recovered at {:?}", e1.jump_abscissa());
    Ok(())
}
