//! Random generation of distribution functions for property campaigns, with
//! compact serializable descriptors so witnesses can be replayed.

use rand::Rng;
use serde_json::{json, Value};

use crate::ddf::{mixture, AnalyticDdf, Ddf};
use crate::grid::Grid;

/// Recipe for one sampled distribution function. Realizing the same recipe on
/// the same grid is deterministic, which keeps witnesses reproducible.
#[derive(Debug, Clone, PartialEq)]
pub enum DdfDesc {
    /// Convex (possibly deficient) combination of unit steps.
    StepMix { atoms: Vec<StepAtom> },
    /// Closed-form family sampled onto the grid.
    Analytic(AnalyticDdf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepAtom {
    pub at: f64,
    pub weight: f64,
}

impl DdfDesc {
    pub fn step(a: f64) -> DdfDesc {
        DdfDesc::StepMix {
            atoms: vec![StepAtom { at: a, weight: 1.0 }],
        }
    }

    pub fn realize(&self, grid: Grid) -> Ddf {
        match self {
            DdfDesc::StepMix { atoms } => {
                let weights: Vec<f64> = atoms.iter().map(|a| a.weight).collect();
                let steps: Vec<Ddf> = atoms.iter().map(|a| Ddf::eps(a.at, grid)).collect();
                mixture(&weights, &steps)
                    .expect("sampled step weights sum to at most 1")
                    .ddf
            }
            DdfDesc::Analytic(a) => a.sample(grid),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            DdfDesc::StepMix { atoms } => json!({
                "kind": "step-mix",
                "atoms": atoms
                    .iter()
                    .map(|a| json!({"at": a.at, "weight": a.weight}))
                    .collect::<Vec<_>>(),
            }),
            DdfDesc::Analytic(a) => json!({"kind": "analytic", "name": a.name()}),
        }
    }
}

/// Draws a distribution function descriptor covering the corners campaigns
/// care about: exact unit steps (including the identity at 0 and steps beyond
/// the grid), deficient and proper step mixtures, and smooth analytic shapes.
pub fn random_ddf(rng: &mut impl Rng, grid: Grid) -> DdfDesc {
    let roll: f64 = rng.gen();
    if roll < 0.08 {
        DdfDesc::step(0.0)
    } else if roll < 0.22 {
        DdfDesc::step(rng.gen::<f64>() * 1.2 * grid.x_max)
    } else if roll < 0.75 {
        random_step_mix(rng, grid, 4)
    } else {
        DdfDesc::Analytic(random_analytic(rng, grid))
    }
}

/// Draws a step mixture with 1..=max_atoms atoms; with 30% probability the
/// total weight is deficient (the function does not reach 1 at infinity).
pub fn random_step_mix(rng: &mut impl Rng, grid: Grid, max_atoms: usize) -> DdfDesc {
    let k = rng.gen_range(1..=max_atoms.max(1));
    let mut weights: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let scale = if rng.gen::<f64>() < 0.3 {
        (0.3 + 0.7 * rng.gen::<f64>()) / total
    } else {
        1.0 / total
    };
    for w in &mut weights {
        *w *= scale;
    }
    let atoms = weights
        .into_iter()
        .map(|weight| StepAtom {
            at: rng.gen::<f64>() * 1.1 * grid.x_max,
            weight,
        })
        .collect();
    DdfDesc::StepMix { atoms }
}

/// Draws a closed-form shape whose interesting range lies on the grid.
pub fn random_analytic(rng: &mut impl Rng, grid: Grid) -> AnalyticDdf {
    let lo = (grid.x_max / 32.0).ln();
    let hi = grid.x_max.ln();
    let c = (lo + rng.gen::<f64>() * (hi - lo)).exp();
    if rng.gen::<bool>() {
        AnalyticDdf::Ratio { c }
    } else {
        AnalyticDdf::ExpComplement { c }
    }
}

/// Draws an on-grid abscissa, biased toward the lower half so that sums of
/// two samples tend to stay on the grid.
pub fn random_grid_abscissa(rng: &mut impl Rng, grid: Grid, max_index: usize) -> f64 {
    grid.abscissa(rng.gen_range(0..=max_index.min(grid.n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn realized_samples_are_valid_ddfs() {
        let grid = Grid::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let desc = random_ddf(&mut rng, grid);
            let f = desc.realize(grid);
            // construction re-validates monotonicity and range
            let rebuilt = Ddf::new(grid, f.values().to_vec(), f.at_inf()).unwrap();
            assert_eq!(rebuilt, f);
        }
    }

    #[test]
    fn realization_is_deterministic() {
        let grid = Grid::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let desc = random_ddf(&mut rng, grid);
        assert_eq!(desc.realize(grid), desc.realize(grid));
        let v = desc.to_value();
        assert!(v.get("kind").is_some());
    }

    #[test]
    fn step_descriptor_realizes_to_the_exact_step() {
        let grid = Grid::default();
        let desc = DdfDesc::step(3.0);
        assert_eq!(desc.realize(grid), Ddf::eps(3.0, grid));
        assert_eq!(desc.to_value()["atoms"][0]["at"], json!(3.0));
    }
}
