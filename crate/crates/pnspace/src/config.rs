//! Versioned JSON configuration: one grid, named space and product
//! definitions, and per-campaign trial/seed overrides.
//!
//! Every name a definition mentions resolves at validation time, before any
//! campaign runs. The embedded default config covers the bundled campaigns
//! and the worked examples, so the binary is usable with no file at all.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ddf::AnalyticDdf;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::products::{countable_product, sigma_product, tau_product, tg_product, ProductSpace};
use crate::report::CheckParams;
use crate::spaces::{alpha_simple, NormDef, PnSpace, SpaceClass};
use crate::transform::MbFunction;
use crate::trifn::Trifn;

pub const SCHEMA_VERSION: u64 = 1;

/// Environment variable naming a config file to use when no --config flag is
/// given.
pub const CONFIG_ENV: &str = "PNSPACE_CONFIG";

/// The bundled configuration, also shipped as a plain file next to the
/// crate manifest so it doubles as the schema example.
pub const DEFAULT_CONFIG: &str = include_str!("../default-config.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema: u64,
    pub grid: GridDef,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDef>,
    #[serde(default)]
    pub products: BTreeMap<String, ProductDef>,
    #[serde(default)]
    pub campaigns: BTreeMap<String, CampaignDef>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDef {
    pub n: usize,
    pub x_max: f64,
}

/// A named space. `family` picks the constructor; the optional fields feed
/// it. `tau`/`tau_star` override the family's triangle functions, and
/// `transform` re-parametrizes the finished norm.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDef {
    pub family: String,
    pub dimension: usize,
    #[serde(default)]
    pub norm: Option<String>,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub tau: Option<String>,
    #[serde(default)]
    pub tau_star: Option<String>,
    #[serde(default)]
    pub transform: Option<String>,
}

/// A named product. `kind` is one of tau, tg, countable, sigma. Factors are
/// either listed by name or given as one name replicated `copies` times.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDef {
    pub kind: String,
    #[serde(default)]
    pub factors: Vec<String>,
    #[serde(default)]
    pub factor: Option<String>,
    #[serde(default)]
    pub copies: Option<usize>,
    #[serde(default)]
    pub combiner: Option<String>,
    #[serde(default)]
    pub tau: Option<String>,
    #[serde(default)]
    pub tau_star: Option<String>,
    #[serde(default)]
    pub b: Vec<f64>,
    #[serde(default)]
    pub m: Vec<String>,
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub norms: Vec<String>,
    #[serde(default)]
    pub dims: Vec<usize>,
    #[serde(default)]
    pub g: Option<String>,
    #[serde(default)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignDef {
    #[serde(default)]
    pub trials: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let cfg: Config =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("config parse: {e}")))?;
        if cfg.schema != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "config schema {} is not the supported version {SCHEMA_VERSION}",
                cfg.schema
            )));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        Config::parse(&text)
    }

    /// Resolution order: explicit path, then the environment variable, then
    /// the embedded default.
    pub fn resolve(path: Option<&Path>) -> Result<Config> {
        if let Some(p) = path {
            return Config::load(p);
        }
        if let Ok(p) = std::env::var(CONFIG_ENV) {
            if !p.is_empty() {
                return Config::load(Path::new(&p));
            }
        }
        Config::parse(DEFAULT_CONFIG)
    }

    pub fn bundled() -> Config {
        Config::parse(DEFAULT_CONFIG).expect("the embedded default config parses")
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.n, self.grid.x_max)
    }

    /// Checks that every name in every definition parses and that factor
    /// references point at defined spaces. Nothing is built yet; the checks
    /// here are exactly the ones whose failure should be a config error
    /// rather than a campaign result.
    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        for (name, def) in &self.spaces {
            self.check_space_def(name, def)?;
        }
        for (name, def) in &self.products {
            self.check_product_def(name, def)?;
        }
        Ok(())
    }

    fn check_space_def(&self, name: &str, def: &SpaceDef) -> Result<()> {
        let err = |what: &str| Error::Config(format!("space '{name}': {what}"));
        if def.dimension == 0 {
            return Err(err("dimension must be at least 1"));
        }
        match def.family.as_str() {
            "simple" | "alpha-simple" | "menger-alpha" => {
                NormDef::parse(def.norm.as_deref().ok_or_else(|| err("needs a norm"))?)?;
                AnalyticDdf::parse(def.g.as_deref().ok_or_else(|| err("needs a generator g"))?)?;
                if def.family != "simple" && def.alpha.is_none() {
                    return Err(err("needs alpha"));
                }
            }
            "equilateral" => {
                AnalyticDdf::parse(def.g.as_deref().ok_or_else(|| err("needs a generator g"))?)?;
            }
            "exp" => {
                NormDef::parse(def.norm.as_deref().ok_or_else(|| err("needs a norm"))?)?;
            }
            other => {
                return Err(Error::UnknownName(format!(
                    "space family '{other}' in space '{name}'"
                )))
            }
        }
        if let Some(t) = &def.tau {
            Trifn::parse(t)?;
        }
        if let Some(t) = &def.tau_star {
            Trifn::parse(t)?;
        }
        if let Some(m) = &def.transform {
            MbFunction::parse(m)?;
        }
        Ok(())
    }

    fn check_product_def(&self, name: &str, def: &ProductDef) -> Result<()> {
        let err = |what: &str| Error::Config(format!("product '{name}': {what}"));
        if def.kind != "tg" {
            for f in def.factor_names()? {
                if !self.spaces.contains_key(&f) {
                    return Err(Error::UnknownName(format!(
                        "space '{f}' referenced by product '{name}'"
                    )));
                }
            }
        }
        match def.kind.as_str() {
            "tau" => {
                Trifn::parse(def.combiner.as_deref().ok_or_else(|| err("needs a combiner"))?)?;
                if def.factor_names()?.len() != 2 {
                    return Err(err("needs exactly two factors"));
                }
            }
            "tg" => {
                if def.norms.len() != 2 || def.dims.len() != 2 {
                    return Err(err("needs two norms and two dims"));
                }
                for n in &def.norms {
                    NormDef::parse(n)?;
                }
                AnalyticDdf::parse(def.g.as_deref().ok_or_else(|| err("needs a generator g"))?)?;
                if def.alpha.is_none() {
                    return Err(err("needs alpha"));
                }
            }
            "countable" => {
                let k = def.factor_names()?.len();
                if def.b.len() != k {
                    return Err(err("needs one pole per factor"));
                }
                for m in def.transforms()? {
                    drop(m);
                }
                TNorm::parse(def.t.as_deref().ok_or_else(|| err("needs a t-norm t"))?)?;
            }
            "sigma" => {
                if def.factor_names()?.is_empty() {
                    return Err(err("needs at least one factor"));
                }
            }
            other => {
                return Err(Error::UnknownName(format!(
                    "product kind '{other}' in product '{name}'"
                )))
            }
        }
        if def.tau.is_some() != def.tau_star.is_some() {
            return Err(err("tau and tau_star overrides come as a pair"));
        }
        if let Some(t) = &def.tau {
            Trifn::parse(t)?;
        }
        if let Some(t) = &def.tau_star {
            Trifn::parse(t)?;
        }
        Ok(())
    }

    pub fn build_space(&self, name: &str) -> Result<PnSpace> {
        let def = self
            .spaces
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("space '{name}'")))?;
        self.check_space_def(name, def)?;
        let grid = self.grid()?;
        let dim = def.dimension;
        let norm = def.norm.as_deref().map(NormDef::parse).transpose()?;
        let g = def.g.as_deref().map(AnalyticDdf::parse).transpose()?;
        let mut space = match def.family.as_str() {
            "simple" => PnSpace::simple_space(dim, grid, norm.unwrap(), g.unwrap())?,
            "alpha-simple" => PnSpace::new(
                dim,
                grid,
                alpha_simple(norm.unwrap(), g.unwrap(), def.alpha.unwrap())?,
                Trifn::parse("tau:M")?,
                Trifn::parse("lift:M")?,
                SpaceClass::Pn,
            )?,
            "menger-alpha" => {
                PnSpace::menger_alpha_space(dim, grid, norm.unwrap(), g.unwrap(), def.alpha.unwrap())?
            }
            "equilateral" => {
                let f = crate::ddf::Ddf::from_fn(grid, |x| g.as_ref().unwrap().eval(x), 1.0);
                PnSpace::equilateral_space(dim, grid, f)?
            }
            "exp" => PnSpace::exp_pi_space(dim, grid, norm.unwrap())?,
            _ => unreachable!("validated above"),
        };
        if let Some(t) = &def.tau {
            space.tau = Trifn::parse(t)?;
        }
        if let Some(t) = &def.tau_star {
            space.tau_star = Trifn::parse(t)?;
        }
        if let Some(m) = &def.transform {
            space = space.transform(&MbFunction::parse(m)?);
        }
        Ok(space.with_label(name))
    }

    pub fn build_product(&self, name: &str) -> Result<ProductSpace> {
        let def = self
            .products
            .get(name)
            .ok_or_else(|| Error::UnknownName(format!("product '{name}'")))?;
        self.check_product_def(name, def)?;
        let factors: Vec<PnSpace> = if def.kind == "tg" {
            Vec::new()
        } else {
            def.factor_names()?
                .iter()
                .map(|f| self.build_space(f))
                .collect::<Result<_>>()?
        };
        let mut product = match def.kind.as_str() {
            "tau" => {
                let combiner = Trifn::parse(def.combiner.as_deref().unwrap())?;
                tau_product(&factors[0], &factors[1], combiner)?
            }
            "tg" => tg_product(
                NormDef::parse(&def.norms[0])?,
                def.dims[0],
                NormDef::parse(&def.norms[1])?,
                def.dims[1],
                AnalyticDdf::parse(def.g.as_deref().unwrap())?,
                def.alpha.unwrap(),
                self.grid()?,
            )?,
            "countable" => countable_product(
                &factors,
                &def.b,
                &def.transforms()?,
                &TNorm::parse(def.t.as_deref().unwrap())?,
            )?,
            "sigma" => sigma_product(&factors)?,
            _ => unreachable!("validated above"),
        };
        if let (Some(t), Some(ts)) = (&def.tau, &def.tau_star) {
            product = product.with_trifns(Trifn::parse(t)?, Trifn::parse(ts)?);
        }
        Ok(product)
    }

    /// Campaign knobs for a given id: builtin defaults, overridden by the
    /// config's campaigns table, overridden by the command line.
    pub fn params_for(&self, id: &str, builtin: CheckParams, ov: Overrides) -> CheckParams {
        let mut p = builtin;
        if let Some(def) = self.campaigns.get(id) {
            if let Some(t) = def.trials {
                p.trials = t;
            }
            if let Some(s) = def.seed {
                p.seed = s;
            }
        }
        if let Some(t) = ov.trials {
            p.trials = t;
        }
        if let Some(s) = ov.seed {
            p.seed = s ^ crate::report::fnv1a(id);
        }
        p
    }
}

impl ProductDef {
    pub fn factor_names(&self) -> Result<Vec<String>> {
        if !self.factors.is_empty() {
            if self.factor.is_some() || self.copies.is_some() {
                return Err(Error::Config(
                    "give either a factor list or factor + copies, not both".into(),
                ));
            }
            return Ok(self.factors.clone());
        }
        match (&self.factor, self.copies) {
            (Some(f), Some(k)) if k >= 1 => Ok(vec![f.clone(); k]),
            _ => Err(Error::Config(
                "needs either a factor list or factor + copies >= 1".into(),
            )),
        }
    }

    /// The countable kind takes explicit transforms or, by default, the
    /// blowup at each listed pole.
    pub fn transforms(&self) -> Result<Vec<MbFunction>> {
        if self.m.is_empty() {
            return self.b.iter().map(|&bi| MbFunction::blowup(bi)).collect();
        }
        if self.m.len() != self.b.len() {
            return Err(Error::Config(format!(
                "{} transforms against {} poles",
                self.m.len(),
                self.b.len()
            )));
        }
        self.m.iter().map(|s| MbFunction::parse(s)).collect()
    }
}

/// Command-line overrides threaded into every campaign of a run. A seed
/// override is mixed with the campaign id so sibling campaigns never share
/// streams.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub trials: Option<u64>,
    pub seed: Option<u64>,
}

use crate::tnorm::TNorm;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_parses_and_validates() {
        let cfg = Config::bundled();
        assert_eq!(cfg.schema, 1);
        assert!(cfg.spaces.contains_key("alpha2-under-tauM"));
        assert!(cfg.products.contains_key("sigma-simple"));
        cfg.validate().unwrap();
    }

    #[test]
    fn builds_every_default_space() {
        let cfg = Config::bundled();
        for name in cfg.spaces.keys() {
            let space = cfg.build_space(name).unwrap();
            assert_eq!(space.label, *name);
        }
    }

    #[test]
    fn builds_selected_default_products() {
        let cfg = Config::bundled();
        for name in ["max-product", "sum-product", "sigma-simple"] {
            let p = cfg.build_product(name).unwrap();
            assert!(p.factors().len() >= 2, "{name}");
        }
        let c = cfg.build_product("countable-pi").unwrap();
        assert_eq!(c.factors().len(), 10);
        assert!(c.pole_sum().unwrap() > 0.99 && c.pole_sum().unwrap() < 1.0);
    }

    #[test]
    fn rejects_wrong_schema_and_unknown_names() {
        let bad = r#"{ "schema": 2, "grid": { "n": 64, "x_max": 4.0 } }"#;
        assert!(matches!(Config::parse(bad), Err(Error::Config(_))));

        let bad = r#"{
            "schema": 1,
            "grid": { "n": 64, "x_max": 4.0 },
            "spaces": { "s": { "family": "simple", "dimension": 1, "norm": "l9", "g": "ratio:1" } }
        }"#;
        assert!(matches!(Config::parse(bad), Err(Error::UnknownName(_))));

        let bad = r#"{
            "schema": 1,
            "grid": { "n": 64, "x_max": 4.0 },
            "products": { "p": { "kind": "tau", "factors": ["ghost", "ghost"], "combiner": "tau:M" } }
        }"#;
        assert!(matches!(Config::parse(bad), Err(Error::UnknownName(_))));

        let cfg = Config::bundled();
        assert!(matches!(cfg.build_space("nope"), Err(Error::UnknownName(_))));
        assert!(matches!(cfg.build_product("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn campaign_param_resolution_orders_correctly() {
        let mut cfg = Config::bundled();
        cfg.campaigns.insert(
            "thm1".into(),
            CampaignDef {
                trials: Some(77),
                seed: Some(5),
            },
        );
        let builtin = CheckParams::new(1000, 42);
        let p = cfg.params_for("thm1", builtin, Overrides::default());
        assert_eq!((p.trials, p.seed), (77, 5));
        let p = cfg.params_for(
            "thm1",
            builtin,
            Overrides {
                trials: Some(9),
                seed: Some(3),
            },
        );
        assert_eq!(p.trials, 9);
        assert_eq!(p.seed, 3 ^ crate::report::fnv1a("thm1"));
        let p = cfg.params_for("thm2", builtin, Overrides::default());
        assert_eq!((p.trials, p.seed), (1000, 42));
    }

    #[test]
    fn env_var_supplies_the_config_path() {
        let dir = std::env::temp_dir().join("pnspace-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tiny.json");
        std::fs::write(&path, r#"{ "schema": 1, "grid": { "n": 32, "x_max": 2.0 } }"#).unwrap();
        std::env::set_var(CONFIG_ENV, &path);
        let cfg = Config::resolve(None).unwrap();
        std::env::remove_var(CONFIG_ENV);
        assert_eq!(cfg.grid.n, 32);
        let cfg = Config::resolve(None).unwrap();
        assert_eq!(cfg.grid.n, 256);
    }
}
