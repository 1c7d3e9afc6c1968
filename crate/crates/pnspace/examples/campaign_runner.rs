// Driving the bundled campaigns from code rather than the command line, with
// a JSON-lines dump of the reports.

use std::io::Write;

use pnspace::campaigns;
use pnspace::grid::Grid;
use pnspace::report::CheckParams;

fn main() -> pnspace::error::Result<()> {
    // A coarse grid and small trial counts keep this quick; the bundled
    // defaults used by the CLI are larger.
    let grid = Grid::new(128, 4.0)?;

    let mut out = std::io::stdout().lock();
    for id in campaigns::ids() {
        let params = CheckParams::new(150, campaigns::builtin_params(id).expect("bundled").seed);
        let report = campaigns::run(id, grid, params)?;
        writeln!(out, "{}", report.summary_line())?;
        writeln!(out, "  {}", serde_json::to_string(&report)?)?;
    }
    for name in campaigns::topology_ids() {
        let params = campaigns::builtin_topology_params(name).expect("bundled").with_trials(150);
        let report = campaigns::run_topology(name, grid, params)?;
        writeln!(out, "{}", report.summary_line())?;
    }
    Ok(())
}
