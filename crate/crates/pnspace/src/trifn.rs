//! Binary operations on distribution functions: sup-convolutions, pointwise
//! t-norm lifts and conorm lifts, their iterates, and the domination and
//! properness campaigns.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use serde_json::json;

use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::report::{run_campaign, CheckParams, TrialOutcome, VerificationReport};
use crate::sample::random_ddf;
use crate::tnorm::{TConorm, TNorm};

pub const DEFAULT_ITERATE_MAX: usize = 64;
pub const DEFAULT_ITERATE_TOL: f64 = 1e-6;

/// Slack under which the sup-convolution scan may skip a split: a skipped
/// term is guaranteed below the running best by more than any rounding in the
/// closed-form t-norms, so pruning never changes the result.
const PRUNE_MARGIN: f64 = 1e-9;

/// Standard comparison margin for inequalities between computed grid
/// functions: one horizontal cell plus a vertical tolerance.
pub const CELL_MARGIN: usize = 1;
pub const VTOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Trifn {
    /// tau_T: (F, G)(x) = sup { T(F(u), G(v)) : u + v = x }.
    SupConv(TNorm),
    /// Pointwise application of T to the two value sequences.
    Lift(TNorm),
    /// Pointwise application of a conorm; identity is the zero function.
    CoLift(TConorm),
}

impl Trifn {
    pub fn apply(&self, f: &Ddf, g: &Ddf) -> Ddf {
        match self {
            Trifn::SupConv(t) => sup_convolve(t, f, g),
            Trifn::Lift(t) => lift(t, f, g),
            Trifn::CoLift(s) => colift(s, f, g),
        }
    }

    /// The neutral element: the unit step at 0 for the t-norm kinds, the zero
    /// function for conorm lifts.
    pub fn identity(&self, grid: Grid) -> Ddf {
        match self {
            Trifn::SupConv(_) | Trifn::Lift(_) => Ddf::eps0(grid),
            Trifn::CoLift(_) => Ddf::eps_inf(grid),
        }
    }

    /// Config-facing name: "tau:<t>" | "lift:<t>" | "colift:<conorm>".
    pub fn name(&self) -> String {
        match self {
            Trifn::SupConv(t) => format!("tau:{}", t.name()),
            Trifn::Lift(t) => format!("lift:{}", t.name()),
            Trifn::CoLift(s) => format!("colift:{}", s.name()),
        }
    }

    pub fn parse(s: &str) -> Result<Trifn> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::UnknownName(format!("triangle function '{s}'")))?;
        match kind {
            "tau" => Ok(Trifn::SupConv(TNorm::parse(rest)?)),
            "lift" => Ok(Trifn::Lift(TNorm::parse(rest)?)),
            "colift" => Ok(Trifn::CoLift(TConorm::parse(rest)?)),
            _ => Err(Error::UnknownName(format!("triangle function '{s}'"))),
        }
    }
}

fn assert_same_grid(f: &Ddf, g: &Ddf) -> Grid {
    assert_eq!(
        f.grid(),
        g.grid(),
        "operands live on different grids; resample first"
    );
    f.grid()
}

/// Sup-convolution tau_T(F, G)(x_k) = max over j in [1, k] of
/// T(F(x_j), G(x_{k+1-j})).
///
/// The split of x_k into two positive parts puts one part in the half-open
/// cell ending at x_j and the other in the cell ending at x_{k+1-j}; under
/// the left-continuous step convention the supremum over a cell pair is
/// attained at exactly these stored values, so the scan is exact for on-grid
/// step functions.
pub fn sup_convolve(t: &TNorm, f: &Ddf, g: &Ddf) -> Ddf {
    let grid = assert_same_grid(f, g);
    let n = grid.n;
    let fv = f.values();
    let gv = g.values();
    let mut out = vec![0.0f64; n + 1];

    match t {
        TNorm::Minimum => {
            // min(F(x_j), G(x_{k+1-j})) pits a nondecreasing sequence against
            // a nonincreasing one; the max sits where they cross, found by
            // binary search.
            for (k, slot) in out.iter_mut().enumerate().skip(1) {
                let (mut lo, mut hi) = (1usize, k + 1);
                while lo < hi {
                    let mid = (lo + hi) / 2;
                    if fv[mid] >= gv[k + 1 - mid] {
                        hi = mid;
                    } else {
                        lo = mid + 1;
                    }
                }
                *slot = if lo > k {
                    fv[k]
                } else if lo == 1 {
                    gv[k]
                } else {
                    fv[lo - 1].max(gv[k + 1 - lo])
                };
            }
        }
        TNorm::Table(_) => {
            // A user table need not sit below min, so no pruning is sound.
            for (k, slot) in out.iter_mut().enumerate().skip(1) {
                let mut best = 0.0f64;
                for j in 1..=k {
                    best = best.max(t.eval(fv[j], gv[k + 1 - j]));
                }
                *slot = best;
            }
        }
        _ => {
            // T(a, b) <= min(a, b) + rounding for the closed-form kinds, so
            // splits whose smaller operand trails the running best by the
            // margin cannot win.
            for (k, slot) in out.iter_mut().enumerate().skip(1) {
                let mut best = 0.0f64;
                for j in 1..=k {
                    let b = gv[k + 1 - j];
                    if b + PRUNE_MARGIN <= best {
                        break;
                    }
                    let a = fv[j];
                    if a + PRUNE_MARGIN <= best {
                        continue;
                    }
                    best = best.max(t.eval(a, b));
                    if best == 1.0 {
                        break;
                    }
                }
                *slot = best;
            }
        }
    }
    let at_inf = t.eval(f.at_inf(), g.at_inf());
    Ddf::left_regularize(grid, out, at_inf)
}

/// Pointwise t-norm of the two value sequences.
pub fn lift(t: &TNorm, f: &Ddf, g: &Ddf) -> Ddf {
    let grid = assert_same_grid(f, g);
    let values = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(&a, &b)| t.eval(a, b))
        .collect();
    Ddf::left_regularize(grid, values, t.eval(f.at_inf(), g.at_inf()))
}

/// Pointwise conorm of the two value sequences.
pub fn colift(s: &TConorm, f: &Ddf, g: &Ddf) -> Ddf {
    let grid = assert_same_grid(f, g);
    let values = f
        .values()
        .iter()
        .zip(g.values())
        .map(|(&a, &b)| s.eval(a, b))
        .collect();
    Ddf::left_regularize(grid, values, s.eval(f.at_inf(), g.at_inf()))
}

/// Left fold of the operation over a nonempty sequence.
pub fn serial_iterate(tau: &Trifn, fs: &[Ddf]) -> Ddf {
    assert!(!fs.is_empty(), "serial iterate of an empty sequence");
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = tau.apply(&acc, f);
    }
    acc
}

/// What [`infinite_iterate`] can certify about its run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceCert {
    /// Factors consumed, including the first.
    pub factors: usize,
    /// Sup-distance between the last two partial folds.
    pub final_delta: f64,
    pub converged: bool,
    /// When a step lower bound sigma was supplied: whether the limit sits
    /// above the unit step at sigma within the standard margin.
    pub lower_bound_holds: Option<bool>,
}

/// Folds factors(0), factors(1), ... until the partial fold moves less than
/// `tol` in sup-distance or `n_max` factors are consumed. Non-convergence is
/// reported in the certificate, not as an error.
pub fn infinite_iterate(
    tau: &Trifn,
    factors: impl Fn(usize) -> Ddf,
    n_max: usize,
    tol: f64,
    step_lower_bound: Option<f64>,
) -> (Ddf, ConvergenceCert) {
    assert!(n_max >= 1);
    let mut acc = factors(0);
    let mut consumed = 1;
    let mut final_delta = f64::INFINITY;
    let mut converged = false;
    while consumed < n_max {
        let next = tau.apply(&acc, &factors(consumed));
        consumed += 1;
        final_delta = acc.sup_distance(&next);
        acc = next;
        if final_delta < tol {
            converged = true;
            break;
        }
    }
    let lower_bound_holds = step_lower_bound.map(|sigma| {
        acc.ge_within(&Ddf::eps(sigma, acc.grid()), CELL_MARGIN, VTOL).holds
    });
    (
        acc,
        ConvergenceCert {
            factors: consumed,
            final_delta,
            converged,
            lower_bound_holds,
        },
    )
}

/// Randomized check that `outer` dominates `inner`: for sampled quadruples,
/// outer(inner(F1,G1), inner(F2,G2)) >= inner(outer(F1,F2), outer(G1,G2))
/// within the one-cell margin. A pass means no counterexample was found, not
/// a proof.
pub fn check_dominance(
    outer: &Trifn,
    inner: &Trifn,
    grid: Grid,
    params: CheckParams,
) -> VerificationReport {
    let claim = format!(
        "{o} dominates {i}: {o}({i}(F1,G1), {i}(F2,G2)) >= {i}({o}(F1,F2), {o}(G1,G2)) on sampled quadruples (no counterexample found; not a proof)",
        o = outer.name(),
        i = inner.name()
    );
    run_campaign(
        &format!("dominance:{}>>{}", outer.name(), inner.name()),
        &claim,
        params,
        1,
        |_, rng| {
            let descs = [
                random_ddf(rng, grid),
                random_ddf(rng, grid),
                random_ddf(rng, grid),
                random_ddf(rng, grid),
            ];
            let [f1, g1, f2, g2] = [
                descs[0].realize(grid),
                descs[1].realize(grid),
                descs[2].realize(grid),
                descs[3].realize(grid),
            ];
            let lhs = outer.apply(&inner.apply(&f1, &g1), &inner.apply(&f2, &g2));
            let rhs = inner.apply(&outer.apply(&f1, &f2), &outer.apply(&g1, &g2));
            let check = lhs.ge_within(&rhs, CELL_MARGIN, VTOL);
            let inputs = BTreeMap::from([
                ("F1".to_string(), descs[0].to_value()),
                ("G1".to_string(), descs[1].to_value()),
                ("F2".to_string(), descs[2].to_value()),
                ("G2".to_string(), descs[3].to_value()),
            ]);
            TrialOutcome::from_order_check(&check, describe_at(check.at), inputs)
        },
    )
}

/// Location string for a comparison outcome.
pub(crate) fn describe_at(at: Option<f64>) -> String {
    match at {
        Some(x) if x.is_finite() => format!("at x={x}"),
        Some(_) => "at infinity".to_string(),
        None => String::new(),
    }
}

/// Randomized check that tau(step_s, step_t) >= step_{s+t} for on-grid s, t.
pub fn check_proper(tau: &Trifn, grid: Grid, params: CheckParams) -> VerificationReport {
    let claim = format!(
        "{} applied to unit steps at s and t sits above the unit step at s+t, for on-grid abscissae",
        tau.name()
    );
    run_campaign(
        &format!("proper:{}", tau.name()),
        &claim,
        params,
        1,
        |_, rng| {
            let i = rng.gen_range(0..=grid.n);
            let j = rng.gen_range(0..=(grid.n - i));
            let s = grid.abscissa(i);
            let t = grid.abscissa(j);
            let combined = tau.apply(&Ddf::eps(s, grid), &Ddf::eps(t, grid));
            let check = combined.ge_within(&Ddf::eps(s + t, grid), CELL_MARGIN, VTOL);
            let inputs = BTreeMap::from([
                ("s".to_string(), json!(s)),
                ("t".to_string(), json!(t)),
            ]);
            TrialOutcome::from_order_check(&check, format!("s={s}, t={t}"), inputs)
        },
    )
}
