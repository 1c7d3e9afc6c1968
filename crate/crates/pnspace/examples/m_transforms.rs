// Argument re-parametrizations of distribution functions: the power and
// blowup families, and superadditivity at the scalar and distribution level.

use pnspace::ddf::Ddf;
use pnspace::grid::Grid;
use pnspace::report::CheckParams;
use pnspace::transform::{check_superadditivity_suite, m_transform, MbFunction};
use pnspace::trifn::Trifn;

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(512, 8.0)?;
    let params = CheckParams::new(4000, 11);

    // A blowup maps [0, b[ onto the whole axis; past its pole the transformed
    // function is complete.
    let blow = MbFunction::parse("blowup:2")?;
    let f = Ddf::eps(3.0, grid);
    let g = m_transform(&f, &blow);
    println!("{} sends eps_3 to a step at {:?}", blow.name(), g.jump_abscissa());
    println!("transformed value just past the pole: {}", g.eval(2.01));

    // Superadditive m-functions are exactly the ones whose transforms respect
    // the triangle inequality; the suite checks the scalar property, the
    // distribution-level property, and that the two verdicts agree.
    let tau = Trifn::parse("tau:M")?;
    for name in ["pow:2", "pow:3", "blowup:1", "pow:1", "pow:0.5"] {
        let m = MbFunction::parse(name)?;
        println!("-- {name}");
        for report in check_superadditivity_suite(&m, &tau, grid, params) {
            println!("   {}", report.summary_line());
        }
    }
    Ok(())
}
