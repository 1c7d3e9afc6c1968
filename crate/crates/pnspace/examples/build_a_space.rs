// Building probabilistic normed spaces and running the axiom campaigns,
// including a family that genuinely fails one axiom and the witness that
// proves it.

use pnspace::ddf::AnalyticDdf;
use pnspace::grid::Grid;
use pnspace::report::CheckParams;
use pnspace::spaces::{verify_axioms, verify_axioms_parts, NormDef, PnSpace};
use pnspace::trifn::Trifn;

fn main() -> pnspace::error::Result<()> {
    let grid = Grid::new(256, 4.0)?;
    let params = CheckParams::new(1000, 3);
    let g = AnalyticDdf::ratio(1.0)?;

    // A simple space scales one shape by the norm of the point.
    let plane = PnSpace::simple_space(2, grid, NormDef::L2, g.clone())?;
    println!("{}", verify_axioms(&plane, params).summary_line());

    // The alpha = 2 family needs its matched triangle functions: under them
    // every axiom passes.
    let matched = PnSpace::menger_alpha_space(2, grid, NormDef::L2, g.clone(), 2.0)?;
    println!("{}", verify_axioms(&matched, params).summary_line());

    // Under plain tau_M instead, the triangle inequality breaks: collinear
    // pairs double the norm, the argument scales by four, and tau_M only
    // splits it in half.
    let mismatched = PnSpace::new(
        2,
        grid,
        pnspace::spaces::alpha_simple(NormDef::L2, g, 2.0)?,
        Trifn::parse("tau:M")?,
        Trifn::parse("lift:M")?,
        pnspace::spaces::SpaceClass::Pn,
    )?
    .with_label("alpha2-under-tauM");
    for report in verify_axioms_parts(&mismatched, params) {
        if !report.passed() {
            println!("{}", report.summary_line());
            if let Some(w) = &report.witness {
                println!("  witness inputs: {:?}", w.inputs);
            }
        }
    }

    // The closed-form account of that failure at ||p|| = 1, t = 1:
    // nu_2p(1) = G(1/4) = 0.2 while tau_M(nu_p, nu_p)(1) = G(1/2) = 1/3.
    let p = [1.0, 0.0];
    let two_p = [2.0, 0.0];
    println!(
        "nu_2p(1) = {:.6}, tau_M(nu_p, nu_p)(1) = {:.6}",
        mismatched.norm.nu_at(&two_p, 1.0),
        {
            let nu_p = mismatched.norm.nu(&p, grid);
            pnspace::trifn::sup_convolve(&pnspace::tnorm::TNorm::Minimum, &nu_p, &nu_p).eval(1.0)
        }
    );
    Ok(())
}
