// Defining spaces and products in a config document and building them by
// name, the same path the command-line tool takes.

use pnspace::config::{Config, Overrides};
use pnspace::report::CheckParams;
use pnspace::spaces::verify_axioms;

const CONFIG: &str = r#"{
  "schema": 1,
  "grid": { "n": 256, "x_max": 4.0 },
  "spaces": {
    "wide-line": { "family": "simple", "dimension": 1, "norm": "l1", "g": "ratio:2" },
    "shrunk-line": {
      "family": "simple", "dimension": 1, "norm": "l1", "g": "ratio:2",
      "transform": "blowup:0.5"
    }
  },
  "products": {
    "pair": {
      "kind": "tau",
      "factors": ["wide-line", "shrunk-line"],
      "combiner": "lift:M"
    }
  },
  "campaigns": {
    "axioms:pair": { "trials": 400, "seed": 21 }
  }
}"#;

fn main() -> pnspace::error::Result<()> {
    let cfg = Config::parse(CONFIG)?;
    cfg.validate()?;
    let grid = cfg.grid()?;
    println!("grid: {} cells over [0, {}]", grid.n, grid.x_max);

    let space = cfg.build_space("shrunk-line")?;
    println!("built space {} (dim {})", space.label, space.dim);

    let product = cfg.build_product("pair")?;
    println!("built product {}", pnspace::spaces::Space::name(&product));

    // Campaign knobs resolve builtin < config < overrides; the config pins
    // this one to 400 trials and seed 21.
    let params = cfg.params_for(
        "axioms:pair",
        CheckParams::default(),
        Overrides { trials: None, seed: None },
    );
    println!("resolved params: trials {}, seed {}", params.trials, params.seed);
    println!("{}", verify_axioms(&product, params).summary_line());
    Ok(())
}
