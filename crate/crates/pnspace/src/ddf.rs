//! Distance distribution functions on a uniform grid.
//!
//! A value of type [`Ddf`] represents a nondecreasing, left-continuous step
//! function F with F(0) = 0 and values in [0, 1]: the stored value at a jump
//! abscissa is the left limit, and between grid points the function takes the
//! value of the next grid point. Beyond `x_max` the representation jumps to
//! `at_inf`, the recorded value at +infinity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, INDEX_SNAP};

/// Grid-sampled distance distribution function. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Ddf {
    grid: Grid,
    values: Vec<f64>,
    at_inf: f64,
}

/// Outcome of a pointwise order comparison between two functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderCheck {
    pub holds: bool,
    /// Largest amount by which the claimed inequality failed, 0 when it held.
    pub max_violation: f64,
    /// Abscissa of the worst violation; infinity marks the at-infinity slot.
    pub at: Option<f64>,
}

impl OrderCheck {
    /// Keeps the worse of two comparison outcomes.
    pub fn merge(self, other: OrderCheck) -> OrderCheck {
        if other.max_violation > self.max_violation {
            other
        } else {
            OrderCheck {
                holds: self.holds && other.holds,
                ..self
            }
        }
    }
}

/// Result of a (possibly deficient) convex combination.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    pub ddf: Ddf,
    /// 1 minus the weight actually placed; bounds the truncation error of an
    /// infinite sum cut off after finitely many terms.
    pub tail_deficit: f64,
}

impl Ddf {
    /// Validating constructor: values must have length n + 1, start at 0,
    /// be nondecreasing within [0, 1], and at_inf must dominate the last value.
    pub fn new(grid: Grid, values: Vec<f64>, at_inf: f64) -> Result<Ddf> {
        if values.len() != grid.n + 1 {
            return Err(Error::Construction(format!(
                "value vector has length {}, grid wants {}",
                values.len(),
                grid.n + 1
            )));
        }
        if values[0] != 0.0 {
            return Err(Error::Construction(format!(
                "a distribution function starts at 0, got {}",
                values[0]
            )));
        }
        for w in values.windows(2) {
            if !(w[1] >= w[0]) {
                return Err(Error::Construction(format!(
                    "values must be nondecreasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        let last = *values.last().unwrap();
        if !(0.0..=1.0).contains(&last) {
            return Err(Error::Construction(format!(
                "values must stay in [0, 1], reached {last}"
            )));
        }
        if !(at_inf >= last && at_inf <= 1.0) {
            return Err(Error::Construction(format!(
                "value at infinity {at_inf} must lie in [{last}, 1]"
            )));
        }
        Ok(Ddf {
            grid,
            values,
            at_inf,
        })
    }

    /// Lenient constructor: forces the first value to 0, restores monotonicity
    /// by a running maximum, clamps everything to [0, 1], and lifts `at_inf`
    /// to at least the final value. Idempotent on already valid input.
    pub fn left_regularize(grid: Grid, mut values: Vec<f64>, at_inf: f64) -> Ddf {
        assert_eq!(values.len(), grid.n + 1, "value vector length mismatch");
        values[0] = 0.0;
        let mut running = 0.0f64;
        for v in values.iter_mut().skip(1) {
            running = running.max(v.clamp(0.0, 1.0));
            *v = running;
        }
        let at_inf = at_inf.clamp(0.0, 1.0).max(running);
        Ddf {
            grid,
            values,
            at_inf,
        }
    }

    /// Samples an arbitrary function onto the grid and regularizes it.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64, at_inf: f64) -> Ddf {
        let values = (0..=grid.n).map(|k| f(grid.abscissa(k))).collect();
        Ddf::left_regularize(grid, values, at_inf)
    }

    /// Unit step at `a`, snapped to the nearest grid point: 0 up to the step,
    /// 1 after it. `a = 0` gives the identity of the order, `a = inf` its
    /// minimum (all mass at infinity, including the value at infinity itself).
    pub fn eps(a: f64, grid: Grid) -> Ddf {
        assert!(!a.is_nan() && a >= 0.0, "step abscissa must be >= 0, got {a}");
        if a.is_infinite() {
            return Ddf::eps_inf(grid);
        }
        let j = if a > grid.x_max {
            grid.n
        } else {
            grid.nearest_index(a)
        };
        let mut values = vec![1.0; grid.n + 1];
        for v in values.iter_mut().take(j + 1) {
            *v = 0.0;
        }
        Ddf {
            grid,
            values,
            at_inf: 1.0,
        }
    }

    pub fn eps0(grid: Grid) -> Ddf {
        Ddf::eps(0.0, grid)
    }

    /// The function that is 0 everywhere, including at infinity. It is the
    /// minimum of the pointwise order and the identity of conorm lifts.
    pub fn eps_inf(grid: Grid) -> Ddf {
        Ddf {
            grid,
            values: vec![0.0; grid.n + 1],
            at_inf: 0.0,
        }
    }

    /// Constant plateau of height h on ]0, x_max] with the same value at
    /// infinity; h = 1 gives eps0.
    pub fn plateau(grid: Grid, h: f64) -> Ddf {
        assert!((0.0..=1.0).contains(&h));
        let mut values = vec![h; grid.n + 1];
        values[0] = 0.0;
        Ddf {
            grid,
            values,
            at_inf: h,
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at_inf(&self) -> f64 {
        self.at_inf
    }

    pub fn is_eps_inf(&self) -> bool {
        self.at_inf == 0.0
    }

    pub fn is_eps0(&self) -> bool {
        self.grid.n >= 1 && self.values[1] == 1.0
    }

    /// F(x) under the left-continuous step convention: the value of the next
    /// grid point, `at_inf` beyond the grid or at x = infinity.
    ///
    /// Panics on negative or NaN input.
    pub fn eval(&self, x: f64) -> f64 {
        assert!(
            !x.is_nan() && x >= 0.0,
            "distribution function evaluated at invalid abscissa {x}"
        );
        if x.is_infinite() {
            return self.at_inf;
        }
        let t = x / self.grid.step();
        if t > self.grid.n as f64 + INDEX_SNAP {
            return self.at_inf;
        }
        self.values[self.grid.index_at(x)]
    }

    /// True when F(t) > 1 - t, the neighborhood criterion measuring closeness
    /// to eps0. Requires t > 0.
    pub fn near_eps0(&self, t: f64) -> bool {
        assert!(t > 0.0, "neighborhood radius must be positive, got {t}");
        self.eval(t) > 1.0 - t
    }

    /// Recovers the step abscissa of a function produced by [`Ddf::eps`],
    /// None when the values are not exactly a 0/1 step.
    pub fn jump_abscissa(&self) -> Option<f64> {
        if self.at_inf != 1.0 {
            return None;
        }
        let mut jump = None;
        for (k, w) in self.values.windows(2).enumerate() {
            match (w[0], w[1]) {
                (0.0, 0.0) | (1.0, 1.0) => {}
                (0.0, 1.0) => {
                    if jump.is_some() {
                        return None;
                    }
                    jump = Some(k);
                }
                _ => return None,
            }
        }
        jump.map(|k| self.grid.abscissa(k))
    }

    /// Pointwise order test: self(x) <= other(x) + vtol at every grid point
    /// and at infinity. Reports the worst violation on failure.
    pub fn le(&self, other: &Ddf, vtol: f64) -> OrderCheck {
        assert_eq!(self.grid, other.grid, "order comparison needs one grid");
        let mut worst = 0.0f64;
        let mut at = None;
        for k in 0..=self.grid.n {
            let gap = self.values[k] - other.values[k];
            if gap > worst {
                worst = gap;
                at = Some(self.grid.abscissa(k));
            }
        }
        let gap_inf = self.at_inf - other.at_inf;
        if gap_inf > worst {
            worst = gap_inf;
            at = Some(f64::INFINITY);
        }
        OrderCheck {
            holds: worst <= vtol,
            max_violation: worst,
            at,
        }
    }

    /// Checks self >= other, allowing `cells` grid cells of horizontal slack
    /// and `vtol` of vertical slack: self(x_{k+cells}) >= other(x_k) - vtol.
    /// One cell absorbs the displacement that discrete sup-convolution and
    /// off-grid step snapping can introduce.
    pub fn ge_within(&self, other: &Ddf, cells: usize, vtol: f64) -> OrderCheck {
        assert_eq!(self.grid, other.grid, "order comparison needs one grid");
        let n = self.grid.n;
        let mut worst = 0.0f64;
        let mut at = None;
        for k in 0..=n {
            // Beyond the grid edge the function is only bounded by its value
            // at infinity, so the slack window extends to at_inf there.
            let idx = k + cells;
            let lhs = if idx > n { self.at_inf } else { self.values[idx] };
            let gap = other.values[k] - lhs;
            if gap > worst {
                worst = gap;
                at = Some(self.grid.abscissa(k));
            }
        }
        let gap_inf = other.at_inf - self.at_inf;
        if gap_inf > worst {
            worst = gap_inf;
            at = Some(f64::INFINITY);
        }
        OrderCheck {
            holds: worst <= vtol,
            max_violation: worst.max(0.0),
            at,
        }
    }

    /// Two-sided version of [`Ddf::ge_within`]: equality up to the slack.
    pub fn eq_within(&self, other: &Ddf, cells: usize, vtol: f64) -> OrderCheck {
        self.ge_within(other, cells, vtol)
            .merge(other.ge_within(self, cells, vtol))
    }

    /// Largest absolute pointwise difference, including the infinity slot.
    pub fn sup_distance(&self, other: &Ddf) -> f64 {
        assert_eq!(self.grid, other.grid);
        let mut worst = (self.at_inf - other.at_inf).abs();
        for k in 0..=self.grid.n {
            worst = worst.max((self.values[k] - other.values[k]).abs());
        }
        worst
    }

    /// F(x / s) for s > 0: stretches the argument axis by s. Reads of the
    /// source beyond its grid fall back to `at_inf`, so results are only
    /// faithful where x / s <= x_max.
    pub fn scale_arg(&self, s: f64) -> Ddf {
        assert!(s.is_finite() && s > 0.0, "scale factor must be positive");
        let values = (0..=self.grid.n)
            .map(|k| self.eval(self.grid.abscissa(k) / s))
            .collect();
        Ddf::left_regularize(self.grid, values, self.at_inf)
    }

    /// Re-samples onto another grid by step-convention evaluation.
    pub fn resample(&self, grid: Grid) -> Ddf {
        if grid == self.grid {
            return self.clone();
        }
        let values = (0..=grid.n).map(|k| self.eval(grid.abscissa(k))).collect();
        Ddf::left_regularize(grid, values, self.at_inf)
    }

    /// Serializable form for reports and fixtures.
    pub fn to_repr(&self) -> DdfRepr {
        DdfRepr {
            kind: "grid".into(),
            parameters: None,
            grid: Some(GridPayload {
                x_max: self.grid.x_max,
                n: self.grid.n,
                values: self.values.clone(),
                at_inf: self.at_inf,
            }),
        }
    }

    pub fn from_repr(repr: &DdfRepr) -> Result<Ddf> {
        match (&repr.grid, &repr.parameters) {
            (Some(g), _) if repr.kind == "grid" => {
                Ddf::new(Grid::new(g.n, g.x_max)?, g.values.clone(), g.at_inf)
            }
            (None, Some(_)) => {
                let a = AnalyticDdf::from_repr(repr)?;
                Ok(a.sample(Grid::default()))
            }
            _ => Err(Error::Config(format!(
                "malformed distribution payload of kind {:?}",
                repr.kind
            ))),
        }
    }
}

/// Weighted pointwise sum of distribution functions. Weights must be
/// nonnegative and sum to at most 1; a sum short of 1 is reported as the
/// mixture's tail deficit. Inputs on different grids are re-sampled onto the
/// finest grid present (smallest step, largest x_max).
pub fn mixture(weights: &[f64], fs: &[Ddf]) -> Result<Mixture> {
    if weights.len() != fs.len() {
        return Err(Error::Domain(format!(
            "{} weights against {} functions",
            weights.len(),
            fs.len()
        )));
    }
    let mut total = 0.0;
    for &w in weights {
        if !(w >= 0.0 && w.is_finite()) {
            return Err(Error::Domain(format!("weights must be >= 0, got {w}")));
        }
        total += w;
    }
    if total > 1.0 + 1e-12 {
        return Err(Error::Domain(format!("weights sum to {total} > 1")));
    }
    if fs.is_empty() {
        return Ok(Mixture {
            ddf: Ddf::eps_inf(Grid::default()),
            tail_deficit: 1.0,
        });
    }
    let step = fs
        .iter()
        .map(|f| f.grid().step())
        .fold(f64::INFINITY, f64::min);
    let x_max = fs.iter().map(|f| f.grid().x_max).fold(0.0, f64::max);
    let grid = Grid::new((x_max / step).round() as usize, x_max)?;
    let mut values = vec![0.0; grid.n + 1];
    let mut at_inf = 0.0;
    for (&w, f) in weights.iter().zip(fs) {
        let f = f.resample(grid);
        for (acc, v) in values.iter_mut().zip(f.values()) {
            *acc += w * v;
        }
        at_inf += w * f.at_inf();
    }
    Ok(Mixture {
        ddf: Ddf::left_regularize(grid, values, at_inf),
        tail_deficit: (1.0 - total).max(0.0),
    })
}

/// Closed-form distribution families with exact inverses where they are
/// strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AnalyticDdf {
    /// Unit step at a.
    Step { a: f64 },
    /// G(x) = x / (x + c), c > 0; strictly increasing onto ]0, 1[.
    Ratio { c: f64 },
    /// G(x) = 1 - exp(-x / c), c > 0; strictly increasing onto ]0, 1[.
    ExpComplement { c: f64 },
}

impl AnalyticDdf {
    pub fn ratio(c: f64) -> Result<AnalyticDdf> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Construction(format!("ratio parameter {c} <= 0")));
        }
        Ok(AnalyticDdf::Ratio { c })
    }

    pub fn exp_complement(c: f64) -> Result<AnalyticDdf> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Construction(format!(
                "exponential-complement parameter {c} <= 0"
            )));
        }
        Ok(AnalyticDdf::ExpComplement { c })
    }

    pub fn eval(&self, x: f64) -> f64 {
        assert!(!x.is_nan() && x >= 0.0, "evaluated at invalid abscissa {x}");
        match *self {
            AnalyticDdf::Step { a } => {
                if x > a {
                    1.0
                } else {
                    0.0
                }
            }
            AnalyticDdf::Ratio { c } => {
                if x.is_infinite() {
                    1.0
                } else {
                    x / (x + c)
                }
            }
            AnalyticDdf::ExpComplement { c } => 1.0 - (-x / c).exp(),
        }
    }

    /// Exact inverse on ]0, 1[ for the strictly increasing kinds.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        assert!((0.0..=1.0).contains(&y), "inverse argument {y} outside [0, 1]");
        match *self {
            AnalyticDdf::Step { .. } => Err(Error::Construction(
                "a step function has no closed-form inverse".into(),
            )),
            AnalyticDdf::Ratio { c } => {
                if y == 1.0 {
                    Ok(f64::INFINITY)
                } else {
                    Ok(c * y / (1.0 - y))
                }
            }
            AnalyticDdf::ExpComplement { c } => {
                if y == 1.0 {
                    Ok(f64::INFINITY)
                } else {
                    Ok(-c * (1.0 - y).ln())
                }
            }
        }
    }

    pub fn is_strictly_increasing(&self) -> bool {
        !matches!(self, AnalyticDdf::Step { .. })
    }

    pub fn sample(&self, grid: Grid) -> Ddf {
        match *self {
            AnalyticDdf::Step { a } => Ddf::eps(a, grid),
            _ => Ddf::from_fn(grid, |x| self.eval(x), 1.0),
        }
    }

    /// Config-facing name, e.g. "ratio:1", "expc:0.5", "step:2".
    pub fn name(&self) -> String {
        match *self {
            AnalyticDdf::Step { a } => format!("step:{a}"),
            AnalyticDdf::Ratio { c } => format!("ratio:{c}"),
            AnalyticDdf::ExpComplement { c } => format!("expc:{c}"),
        }
    }

    pub fn parse(s: &str) -> Result<AnalyticDdf> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| Error::UnknownName(format!("distribution '{s}'")))?;
        let p: f64 = param
            .parse()
            .map_err(|_| Error::Config(format!("bad parameter in distribution '{s}'")))?;
        match kind {
            "step" => {
                if p < 0.0 {
                    Err(Error::Construction(format!("step abscissa {p} < 0")))
                } else {
                    Ok(AnalyticDdf::Step { a: p })
                }
            }
            "ratio" => AnalyticDdf::ratio(p),
            "expc" => AnalyticDdf::exp_complement(p),
            _ => Err(Error::UnknownName(format!("distribution '{s}'"))),
        }
    }

    pub fn to_repr(&self) -> DdfRepr {
        let mut parameters = BTreeMap::new();
        let kind = match *self {
            AnalyticDdf::Step { a } => {
                parameters.insert("a".into(), a);
                "step"
            }
            AnalyticDdf::Ratio { c } => {
                parameters.insert("c".into(), c);
                "ratio"
            }
            AnalyticDdf::ExpComplement { c } => {
                parameters.insert("c".into(), c);
                "expc"
            }
        };
        DdfRepr {
            kind: kind.into(),
            parameters: Some(parameters),
            grid: None,
        }
    }

    pub fn from_repr(repr: &DdfRepr) -> Result<AnalyticDdf> {
        let params = repr
            .parameters
            .as_ref()
            .ok_or_else(|| Error::Config("analytic distribution without parameters".into()))?;
        let get = |key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| Error::Config(format!("missing parameter '{key}'")))
        };
        match repr.kind.as_str() {
            "step" => Ok(AnalyticDdf::Step { a: get("a")? }),
            "ratio" => AnalyticDdf::ratio(get("c")?),
            "expc" => AnalyticDdf::exp_complement(get("c")?),
            other => Err(Error::UnknownName(format!("distribution kind '{other}'"))),
        }
    }
}

/// JSON shape shared by grid-sampled and analytic distributions:
/// {kind, parameters | grid: {x_max, n, values, at_inf}}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DdfRepr {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameters: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridPayload>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPayload {
    pub x_max: f64,
    pub n: usize,
    pub values: Vec<f64>,
    pub at_inf: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::default()
    }

    #[test]
    fn step_evaluation_is_left_continuous() {
        let e2 = Ddf::eps(2.0, grid());
        assert_eq!(e2.eval(2.0), 0.0);
        assert_eq!(e2.eval(2.001), 1.0);
        assert_eq!(e2.eval(0.0), 0.0);
        assert_eq!(e2.eval(f64::INFINITY), 1.0);
    }

    #[test]
    fn eps0_is_one_everywhere_after_zero() {
        let e0 = Ddf::eps0(grid());
        assert_eq!(e0.eval(0.0), 0.0);
        for t in [1e-9, 0.01, 1.0, 15.99, 16.0, 1e9] {
            assert_eq!(e0.eval(t), 1.0, "at {t}");
        }
        assert!(e0.is_eps0());
    }

    #[test]
    fn eps_three_steps_at_the_right_grid_point() {
        let g = grid();
        let e3 = Ddf::eps(3.0, g);
        assert_eq!(e3.eval(3.0), 0.0);
        assert_eq!(e3.eval(3.0 + g.step()), 1.0);
        assert_eq!(e3.jump_abscissa(), Some(3.0));
    }

    #[test]
    fn eps_order_matches_reversed_abscissa_order() {
        let g = grid();
        let e1 = Ddf::eps(1.0, g);
        let e3 = Ddf::eps(3.0, g);
        let inf = Ddf::eps_inf(g);
        let e0 = Ddf::eps0(g);
        assert!(e3.le(&e1, 0.0).holds);
        assert!(!e1.le(&e3, 0.0).holds);
        assert!(inf.le(&e3, 0.0).holds);
        assert!(e1.le(&e0, 0.0).holds);
        // the violation certificate points into ]1, 3]
        let viol = e1.le(&e3, 0.0);
        let at = viol.at.unwrap();
        assert!(at > 1.0 && at <= 3.0, "violation at {at}");
        assert_eq!(viol.max_violation, 1.0);
    }

    #[test]
    fn half_cell_steps_snap_to_the_nearest_point() {
        let g = grid();
        let h = g.step();
        assert!(Ddf::eps(h / 2.0, g).is_eps0()); // ties to even: index 0
        assert_eq!(Ddf::eps(1.5 * h, g).jump_abscissa(), Some(2.0 * h));
    }

    #[test]
    fn mixture_hand_value() {
        let g = grid();
        let m = mixture(&[0.5, 0.25], &[Ddf::eps(1.0, g), Ddf::eps(2.0, g)]).unwrap();
        assert_eq!(m.ddf.eval(1.5), 0.5);
        assert_eq!(m.tail_deficit, 0.25);
        assert_eq!(m.ddf.eval(3.0), 0.75);
        assert_eq!(m.ddf.at_inf(), 0.75);
    }

    #[test]
    fn mixture_of_identical_steps_is_that_step() {
        let g = grid();
        let e = Ddf::eps(1.0, g);
        let m = mixture(&[0.5, 0.25, 0.25], &[e.clone(), e.clone(), e.clone()]).unwrap();
        assert_eq!(m.ddf, e);
        assert_eq!(m.tail_deficit, 0.0);
    }

    #[test]
    fn empty_mixture_is_all_deficit() {
        let m = mixture(&[], &[]).unwrap();
        assert!(m.ddf.is_eps_inf());
        assert_eq!(m.tail_deficit, 1.0);
    }

    #[test]
    fn overweight_mixture_is_rejected() {
        let g = grid();
        assert!(mixture(&[0.7, 0.7], &[Ddf::eps0(g), Ddf::eps0(g)]).is_err());
    }

    #[test]
    fn mixture_resamples_to_the_finest_grid() {
        let coarse = Grid::new(512, 16.0).unwrap();
        let fine = Grid::new(1024, 16.0).unwrap();
        let m = mixture(
            &[0.5, 0.5],
            &[Ddf::eps(1.0, coarse), Ddf::eps(2.0, fine)],
        )
        .unwrap();
        assert_eq!(m.ddf.grid(), fine);
        assert_eq!(m.ddf.eval(1.5), 0.5);
    }

    #[test]
    fn left_regularize_fixes_small_wiggles_and_is_idempotent() {
        let g = Grid::new(4, 4.0).unwrap();
        let raw = vec![0.0, 0.5, 0.5 - 1e-12, 0.8, 0.9];
        let f = Ddf::left_regularize(g, raw, 0.9);
        assert_eq!(f.values()[2], 0.5);
        let again = Ddf::left_regularize(g, f.values().to_vec(), f.at_inf());
        assert_eq!(f, again);
    }

    #[test]
    fn near_eps0_hand_values() {
        let g = grid();
        assert!(Ddf::eps0(g).near_eps0(0.9));
        assert!(Ddf::eps0(g).near_eps0(1e-6));
        assert!(!Ddf::eps(1.0, g).near_eps0(0.5)); // 0 > 0.5 fails
        let ratio = AnalyticDdf::ratio(1.0).unwrap().sample(g);
        // 0.9 / 1.9 > 0.1
        assert!(ratio.near_eps0(0.9));
    }

    #[test]
    fn analytic_hand_values_and_inverses() {
        let r = AnalyticDdf::ratio(1.0).unwrap();
        assert_eq!(r.eval(1.0), 0.5);
        assert_eq!(r.inverse(0.5).unwrap(), 1.0);
        let e = AnalyticDdf::exp_complement(2.0).unwrap();
        assert!((e.eval(e.inverse(0.3).unwrap()) - 0.3).abs() < 1e-12);
        let s = AnalyticDdf::Step { a: 2.0 };
        assert!(s.inverse(0.5).is_err());
        assert_eq!(s.eval(2.0), 0.0);
        assert_eq!(s.eval(2.1), 1.0);
    }

    #[test]
    fn analytic_names_round_trip() {
        for name in ["ratio:1", "expc:0.5", "step:2"] {
            let a = AnalyticDdf::parse(name).unwrap();
            assert_eq!(a.name(), name);
        }
        assert!(AnalyticDdf::parse("nope:1").is_err());
        assert!(AnalyticDdf::parse("ratio:-1").is_err());
    }

    #[test]
    fn repr_round_trips_through_json() {
        let g = grid();
        let f = Ddf::eps(1.5, g);
        let json = serde_json::to_string(&f.to_repr()).unwrap();
        let back = Ddf::from_repr(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(f, back);
        let a = AnalyticDdf::ratio(2.0).unwrap();
        let json = serde_json::to_string(&a.to_repr()).unwrap();
        assert!(json.starts_with("{\"kind\":\"ratio\""));
        let back = AnalyticDdf::from_repr(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn ge_within_allows_one_cell_of_drift() {
        let g = grid();
        let e1 = Ddf::eps(1.0, g);
        let drifted = Ddf::eps(1.0 + g.step(), g);
        assert!(drifted.ge_within(&e1, 1, 1e-9).holds);
        assert!(!drifted.ge_within(&e1, 0, 1e-9).holds);
        let two_off = Ddf::eps(1.0 + 2.0 * g.step(), g);
        assert!(!two_off.ge_within(&e1, 1, 1e-9).holds);
    }

    #[test]
    fn scale_arg_stretches_steps() {
        let g = grid();
        let e1 = Ddf::eps(1.0, g);
        let e2 = e1.scale_arg(2.0);
        assert_eq!(e2.jump_abscissa(), Some(2.0));
    }

    #[test]
    #[should_panic(expected = "invalid abscissa")]
    fn negative_abscissa_panics() {
        Ddf::eps0(grid()).eval(-1.0);
    }
}
