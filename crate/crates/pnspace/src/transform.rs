//! Strictly increasing reparametrizations m of [0, b] onto [0, inf], the
//! induced transforms F(m(.)) of distribution functions, and superadditivity
//! campaigns at scalar and distribution level.

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::json;

use crate::ddf::Ddf;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::report::{run_campaign, CheckParams, TrialOutcome, Verdict, VerificationReport};
use crate::sample::random_ddf;
use crate::trifn::{Trifn, CELL_MARGIN, VTOL};

/// Continuous strictly increasing map from [0, b] onto [0, inf] with a
/// closed-form inverse; b may be infinite.
#[derive(Debug, Clone)]
pub enum MbFunction {
    /// m(x) = x^gamma on [0, inf]. Exponents below 1 are constructible on
    /// purpose: they are the stock counterexamples to superadditivity.
    Power { gamma: f64 },
    /// m(x) = x / (b - x) on [0, b].
    Blowup { b: f64 },
    /// User-supplied closed-form pair.
    Custom {
        name: String,
        b: f64,
        m: fn(f64) -> f64,
        m_inv: fn(f64) -> f64,
    },
}

impl PartialEq for MbFunction {
    /// Custom kinds compare by name and domain end; function pointer
    /// addresses are not stable across codegen units.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MbFunction::Power { gamma: a }, MbFunction::Power { gamma: b }) => a == b,
            (MbFunction::Blowup { b: a }, MbFunction::Blowup { b }) => a == b,
            (
                MbFunction::Custom { name: n1, b: b1, .. },
                MbFunction::Custom { name: n2, b: b2, .. },
            ) => n1 == n2 && b1 == b2,
            _ => false,
        }
    }
}

impl MbFunction {
    pub fn power(gamma: f64) -> Result<MbFunction> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Construction(format!(
                "power exponent must be positive and finite, got {gamma}"
            )));
        }
        Ok(MbFunction::Power { gamma })
    }

    pub fn blowup(b: f64) -> Result<MbFunction> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::Construction(format!(
                "blowup pole must be positive and finite, got {b}"
            )));
        }
        Ok(MbFunction::Blowup { b })
    }

    /// Right end of the domain; infinite for powers.
    pub fn b(&self) -> f64 {
        match self {
            MbFunction::Power { .. } => f64::INFINITY,
            MbFunction::Blowup { b } => *b,
            MbFunction::Custom { b, .. } => *b,
        }
    }

    pub fn m(&self, x: f64) -> f64 {
        debug_assert!(x >= 0.0 && x <= self.b(), "argument {x} outside [0, b]");
        match self {
            MbFunction::Power { gamma } => match gamma {
                g if *g == 1.0 => x,
                g if *g == 2.0 => x * x,
                g if *g == 3.0 => x * x * x,
                g if *g == 0.5 => x.sqrt(),
                g => x.powf(*g),
            },
            MbFunction::Blowup { b } => {
                if x == 0.0 {
                    0.0
                } else {
                    x / (b - x)
                }
            }
            MbFunction::Custom { m, .. } => m(x),
        }
    }

    pub fn m_inv(&self, y: f64) -> f64 {
        debug_assert!(y >= 0.0, "inverse argument {y} negative");
        match self {
            MbFunction::Power { gamma } => match gamma {
                g if *g == 1.0 => y,
                g if *g == 2.0 => y.sqrt(),
                g if *g == 3.0 => y.cbrt(),
                g if *g == 0.5 => y * y,
                g => y.powf(1.0 / *g),
            },
            MbFunction::Blowup { b } => {
                if y.is_infinite() {
                    *b
                } else {
                    b * y / (1.0 + y)
                }
            }
            MbFunction::Custom { m_inv, .. } => m_inv(y),
        }
    }

    /// Config-facing name: "pow:<gamma>" | "blowup:<b>".
    pub fn name(&self) -> String {
        match self {
            MbFunction::Power { gamma } => format!("pow:{gamma}"),
            MbFunction::Blowup { b } => format!("blowup:{b}"),
            MbFunction::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    pub fn parse(s: &str) -> Result<MbFunction> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| Error::UnknownName(format!("m-function '{s}'")))?;
        let p: f64 = param
            .parse()
            .map_err(|_| Error::Config(format!("bad parameter in m-function '{s}'")))?;
        match kind {
            "pow" => MbFunction::power(p),
            "blowup" => MbFunction::blowup(p),
            _ => Err(Error::UnknownName(format!("m-function '{s}'"))),
        }
    }
}

/// The transform (Fm)(x) = F(m(x)), with the finite-b completion: the last
/// grid value below b serves as the left limit at b, and everything beyond b
/// is 1.
pub fn m_transform(f: &Ddf, m: &MbFunction) -> Ddf {
    let grid = f.grid();
    let b = m.b();
    let snap = grid.step() * 1e-9;
    let mut values = vec![0.0f64; grid.n + 1];
    for k in 1..=grid.n {
        let x = grid.abscissa(k);
        values[k] = if x > b + snap {
            1.0
        } else if x >= b - snap {
            values[k - 1]
        } else {
            f.eval(m.m(x))
        };
    }
    let at_inf = if b.is_finite() { 1.0 } else { f.at_inf() };
    Ddf::left_regularize(grid, values, at_inf)
}

/// Randomized scalar check: m(x + y) >= m(x) + m(y) on sampled pairs with
/// x + y <= b. Gaps are normalized by the magnitude of the right side so
/// unbounded families report comparable violations.
pub fn check_superadditive(m: &MbFunction, params: CheckParams) -> VerificationReport {
    let claim = format!(
        "{}: m(x+y) >= m(x) + m(y) for sampled x, y with x + y within the domain",
        m.name()
    );
    let m = m.clone();
    run_campaign(
        &format!("superadditive:{}", m.name()),
        &claim,
        params,
        1,
        move |_, rng| {
            let (x, y) = if m.b().is_finite() {
                let x = rng.gen::<f64>() * m.b();
                (x, rng.gen::<f64>() * (m.b() - x))
            } else {
                let scale = |r: f64| 10f64.powf(r * 6.0 - 3.0);
                (scale(rng.gen()), scale(rng.gen()))
            };
            let gap = (m.m(x) + m.m(y) - m.m(x + y)) / (1.0 + m.m(x) + m.m(y));
            let inputs = BTreeMap::from([
                ("m".to_string(), json!(m.name())),
                ("x".to_string(), json!(x)),
                ("y".to_string(), json!(y)),
            ]);
            TrialOutcome::from_gap(gap, 1e-12, format!("x={x}, y={y}"), inputs)
        },
    )
}

/// Randomized distribution-level check: the m-transform of tau(F, G)
/// dominates tau(Fm, Gm) on sampled pairs, within the standard margin.
pub fn check_tau_superadditive(
    m: &MbFunction,
    tau: &Trifn,
    grid: Grid,
    params: CheckParams,
) -> VerificationReport {
    let claim = format!(
        "{m}: transforming {tau}(F, G) by m dominates {tau}(F m-transform, G m-transform) on sampled pairs",
        m = m.name(),
        tau = tau.name()
    );
    run_campaign(
        &format!("tau-superadditive:{}:{}", m.name(), tau.name()),
        &claim,
        params,
        1,
        move |_, rng| {
            let df = random_ddf(rng, grid);
            let dg = random_ddf(rng, grid);
            let f = df.realize(grid);
            let g = dg.realize(grid);
            let lhs = m_transform(&tau.apply(&f, &g), m);
            let rhs = tau.apply(&m_transform(&f, m), &m_transform(&g, m));
            let check = lhs.ge_within(&rhs, CELL_MARGIN, VTOL);
            let inputs = BTreeMap::from([
                ("m".to_string(), json!(m.name())),
                ("F".to_string(), df.to_value()),
                ("G".to_string(), dg.to_value()),
            ]);
            TrialOutcome::from_order_check(&check, crate::trifn::describe_at(check.at), inputs)
        },
    )
}

/// Runs the scalar and distribution-level campaigns and adds a third report
/// stating whether their verdicts agree (they are expected to characterize
/// the same property of m).
pub fn check_superadditivity_suite(
    m: &MbFunction,
    tau: &Trifn,
    grid: Grid,
    params: CheckParams,
) -> Vec<VerificationReport> {
    let scalar = check_superadditive(m, params.derive("scalar"));
    let tau_level = check_tau_superadditive(m, tau, grid, params.derive("tau-level"));
    let decided =
        scalar.verdict != Verdict::InsufficientSamples && tau_level.verdict != Verdict::InsufficientSamples;
    let agree = decided && scalar.verdict == tau_level.verdict;
    let agreement = VerificationReport {
        campaign: format!("superadditive-agreement:{}:{}", m.name(), tau.name()),
        verdict: if agree { Verdict::Pass } else { Verdict::Fail },
        trials: scalar.trials + tau_level.trials,
        checked: scalar.checked + tau_level.checked,
        max_violation: 0.0,
        witness: None,
        claim: format!(
            "the scalar and distribution-level superadditivity campaigns for {} reach the same verdict under {}",
            m.name(),
            tau.name()
        ),
    };
    vec![scalar, tau_level, agreement]
}
