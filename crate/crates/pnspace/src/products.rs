//! Products of factor spaces on a shared grid: two-block products merged by
//! a triangle function, parametric strict-norm products with a closed-form
//! target, finite truncations of countable lifted products, and dyadically
//! weighted mixture products. Constructors record or enforce the dominance
//! and superadditivity hypotheses their conclusions rest on.

use std::collections::BTreeMap;

use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::ddf::{mixture, AnalyticDdf, Ddf};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::report::{
    fnv1a, run_campaign, CheckParams, TrialOutcome, Verdict, VerificationReport,
};
use crate::sample::random_ddf;
use crate::spaces::{
    alpha_simple, check_serstnev, vadd, verify_axioms, vneg, NormDef, PnSpace, Space, SpaceClass,
};
use crate::tnorm::{TConorm, TNorm};
use crate::transform::{check_superadditive, MbFunction};
use crate::trifn::{check_dominance, describe_at, serial_iterate, Trifn, CELL_MARGIN};

/// Trials for the certificate campaigns a constructor runs on itself.
const EVIDENCE_TRIALS: u64 = 128;

/// Grid size for those campaigns. Operator-ordering evidence does not need
/// the caller's resolution, and the coarse probe keeps construction cheap.
const EVIDENCE_N: usize = 128;

/// Upper bound on the pole mass of the dropped tail, summed over the last
/// quarter of a truncated factor sequence. A truncation whose tail carries
/// more than this does not stand in for the full sequence and is refused.
pub const CAUCHY_TOL: f64 = 0.01;

fn evidence_params(label: &str) -> CheckParams {
    CheckParams::new(EVIDENCE_TRIALS, fnv1a(label))
}

fn evidence_grid(like: Grid) -> Grid {
    Grid::new(EVIDENCE_N, like.x_max).expect("probe grid dimensions are valid")
}

/// Rule that merges the factor distributions into the product distribution.
#[derive(Debug, Clone)]
pub enum Combiner {
    /// Two factor blocks merged by a triangle function.
    Tau1(Trifn),
    /// Dyadically weighted sum over the factor sequence: weight 2^-(i+1) on
    /// factor i. The 2^-K of unplaced mass is the product's tail deficit.
    Sigma,
    /// Left fold of the pointwise t-norm lift over the factor sequence.
    CountableLift { t: TNorm },
}

impl Combiner {
    pub fn name(&self) -> String {
        match self {
            Combiner::Tau1(t) => t.name(),
            Combiner::Sigma => "sigma".into(),
            Combiner::CountableLift { t } => format!("lift-fold:{}", t.name()),
        }
    }
}

/// Product of finitely many factor spaces on one grid. Vectors over the
/// product are concatenations of one block per factor, in factor order.
#[derive(Debug, Clone)]
pub struct ProductSpace {
    factors: Vec<PnSpace>,
    /// offsets[i]..offsets[i+1] delimit block i; the last entry is the total
    /// dimension.
    offsets: Vec<usize>,
    combiner: Combiner,
    grid: Grid,
    tau: Trifn,
    tau_star: Trifn,
    label: String,
    /// Mass the combiner provably never places, granted back to the axiom
    /// margins as vertical slack.
    tail_deficit: f64,
    /// Sum of the factor pole positions when every factor jumps to 1 at a
    /// finite argument; the product is then 1 beyond this point.
    pole_sum: Option<f64>,
    /// Reports from the hypothesis campaigns run at construction time.
    evidence: Vec<VerificationReport>,
}

impl ProductSpace {
    fn assemble(
        factors: Vec<PnSpace>,
        combiner: Combiner,
        tau: Trifn,
        tau_star: Trifn,
        label: String,
    ) -> ProductSpace {
        let grid = factors[0].grid;
        let mut offsets = vec![0usize];
        for f in &factors {
            offsets.push(offsets.last().unwrap() + f.dim);
        }
        ProductSpace {
            factors,
            offsets,
            combiner,
            grid,
            tau,
            tau_star,
            label,
            tail_deficit: 0.0,
            pole_sum: None,
            evidence: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[PnSpace] {
        &self.factors
    }

    pub fn combiner(&self) -> &Combiner {
        &self.combiner
    }

    pub fn evidence(&self) -> &[VerificationReport] {
        &self.evidence
    }

    pub fn pole_sum(&self) -> Option<f64> {
        self.pole_sum
    }

    pub fn tail_deficit(&self) -> f64 {
        self.tail_deficit
    }

    /// Replaces the product's own triangle function pair, keeping factors and
    /// combiner. Constructions whose conclusion names a different pair than
    /// the factors' use this after assembly.
    pub fn with_trifns(mut self, tau: Trifn, tau_star: Trifn) -> ProductSpace {
        self.tau = tau;
        self.tau_star = tau_star;
        self
    }

    pub fn block<'a>(&self, v: &'a [f64], i: usize) -> &'a [f64] {
        &v[self.offsets[i]..self.offsets[i + 1]]
    }

    fn factor_ddfs(&self, p: &[f64]) -> Vec<Ddf> {
        assert_eq!(p.len(), self.dim(), "vector length vs product dimension");
        (0..self.factors.len())
            .map(|i| self.factors[i].nu(self.block(p, i)))
            .collect()
    }
}

impl Space for ProductSpace {
    fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn grid(&self) -> Grid {
        self.grid
    }

    fn name(&self) -> String {
        self.label.clone()
    }

    fn tau(&self) -> &Trifn {
        &self.tau
    }

    fn tau_star(&self) -> &Trifn {
        &self.tau_star
    }

    fn nu(&self, p: &[f64]) -> Ddf {
        let parts = self.factor_ddfs(p);
        match &self.combiner {
            Combiner::Tau1(t1) => t1.apply(&parts[0], &parts[1]),
            Combiner::Sigma => {
                let weights: Vec<f64> = (0..parts.len())
                    .map(|i| 0.5f64.powi(i as i32 + 1))
                    .collect();
                mixture(&weights, &parts)
                    .expect("dyadic weights are a sub-probability vector")
                    .ddf
            }
            Combiner::CountableLift { t } => serial_iterate(&Trifn::Lift(t.clone()), &parts),
        }
    }

    fn nu_at(&self, p: &[f64], x: f64) -> f64 {
        match &self.combiner {
            // No closed form under a sup-convolution; evaluate on the grid.
            Combiner::Tau1(Trifn::SupConv(_)) => self.nu(p).eval(x),
            Combiner::Tau1(Trifn::Lift(t)) => t.eval(
                self.factors[0].nu_at(self.block(p, 0), x),
                self.factors[1].nu_at(self.block(p, 1), x),
            ),
            Combiner::Tau1(Trifn::CoLift(s)) => s.eval(
                self.factors[0].nu_at(self.block(p, 0), x),
                self.factors[1].nu_at(self.block(p, 1), x),
            ),
            Combiner::Sigma => (0..self.factors.len())
                .map(|i| 0.5f64.powi(i as i32 + 1) * self.factors[i].nu_at(self.block(p, i), x))
                .sum(),
            Combiner::CountableLift { t } => {
                let mut acc = self.factors[0].nu_at(self.block(p, 0), x);
                for i in 1..self.factors.len() {
                    acc = t.eval(acc, self.factors[i].nu_at(self.block(p, i), x));
                }
                acc
            }
        }
    }

    fn margin_bonus(&self) -> f64 {
        self.tail_deficit
    }

    fn margin_cells(&self) -> usize {
        // A sup-convolution combiner feeds an extra ceil bracket into each
        // side of an axiom comparison, on top of the kernel's own.
        match &self.combiner {
            Combiner::Tau1(Trifn::SupConv(_)) => 3,
            _ => CELL_MARGIN,
        }
    }

    fn sample_vector(&self, rng: &mut dyn RngCore) -> Vec<f64> {
        // One block draw per factor; 20% of vectors get anti-proportional
        // block scales, the configuration independent per-factor draws
        // essentially never produce and the one that stresses a
        // sup-convolution combiner.
        let staggered = self.factors.len() >= 2 && rng.gen::<f64>() < 0.20;
        let (scale, phase) = if staggered {
            (10f64.powf(0.3 + 0.7 * rng.gen::<f64>()), rng.gen::<bool>())
        } else {
            (1.0, false)
        };
        let mut out = Vec::with_capacity(self.dim());
        for (i, f) in self.factors.iter().enumerate() {
            let mut block = f.sample_vector(rng);
            if staggered {
                let c = if (i % 2 == 0) == phase {
                    scale
                } else {
                    1.0 / scale
                };
                for x in &mut block {
                    *x *= c;
                }
            }
            out.extend(block);
        }
        out
    }
}

/// Binary operation on the unit interval, t-norm or t-conorm, for scalar
/// dominance statements.
#[derive(Debug, Clone)]
pub enum ScalarOp {
    Norm(TNorm),
    Conorm(TConorm),
}

impl ScalarOp {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            ScalarOp::Norm(t) => t.eval(x, y),
            ScalarOp::Conorm(s) => s.eval(x, y),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ScalarOp::Norm(t) => t.name(),
            ScalarOp::Conorm(s) => s.name(),
        }
    }
}

fn unit_sample(rng: &mut ChaCha8Rng) -> f64 {
    // Boundary snaps concentrate on the points where dominance ties.
    let r: f64 = rng.gen();
    if r < 0.075 {
        0.0
    } else if r < 0.15 {
        1.0
    } else {
        rng.gen()
    }
}

/// Scalar dominance campaign on sampled quadruples from [0, 1]:
/// outer(inner(x, u), inner(y, v)) >= inner(outer(x, y), outer(u, v)).
/// Conorm hypotheses enter in dual form (both operations conorms), where the
/// same display is the sound one.
pub fn check_scalar_dominance(
    outer: &ScalarOp,
    inner: &ScalarOp,
    tol: f64,
    params: CheckParams,
) -> VerificationReport {
    let claim = format!(
        "{o} dominates {i} on the unit interval: {o}({i}(x,u), {i}(y,v)) >= {i}({o}(x,y), {o}(u,v)) on sampled quadruples (no counterexample found; not a proof)",
        o = outer.name(),
        i = inner.name(),
    );
    let campaign = format!("dominance-scalar:{}>>{}", outer.name(), inner.name());
    let outer = outer.clone();
    let inner = inner.clone();
    run_campaign(&campaign, &claim, params, 1, move |_, rng| {
        let (x, y, u, v) = (
            unit_sample(rng),
            unit_sample(rng),
            unit_sample(rng),
            unit_sample(rng),
        );
        let lhs = outer.eval(inner.eval(x, u), inner.eval(y, v));
        let rhs = inner.eval(outer.eval(x, y), outer.eval(u, v));
        let inputs = BTreeMap::from([
            ("x".to_string(), json!(x)),
            ("y".to_string(), json!(y)),
            ("u".to_string(), json!(u)),
            ("v".to_string(), json!(v)),
        ]);
        TrialOutcome::from_gap(
            rhs - lhs,
            tol,
            format!("x={x}, y={y}, u={u}, v={v}"),
            inputs,
        )
    })
}

/// Scalar shadow of the tau* certificate when tau* is a conorm colift: the
/// function-level display is only sound for the t-norm kinds, so the conorm
/// ordering is recorded in dual form against the conorm matching `tau1`.
fn conorm_certificate(s: &TConorm, tau1: &Trifn, params: CheckParams) -> VerificationReport {
    let inner = match tau1 {
        Trifn::SupConv(t) | Trifn::Lift(t) => t.dual(),
        Trifn::CoLift(s1) => s1.clone(),
    };
    check_scalar_dominance(
        &ScalarOp::Conorm(s.clone()),
        &ScalarOp::Conorm(inner),
        1e-12,
        params,
    )
}

/// Two-block product carrying the factors' shared triangle function pair,
/// with `tau1` as the combiner across the blocks. Requires the factors to
/// agree on grid, tau, and tau*. Construction records two dominance
/// certificates (tau* over tau1 and tau1 over tau) on a coarse probe grid;
/// they are evidence, not gates. A product that fails them is still built,
/// and the axiom campaigns are then expected to refute it.
pub fn tau_product(v1: &PnSpace, v2: &PnSpace, tau1: Trifn) -> Result<ProductSpace> {
    if v1.grid != v2.grid {
        return Err(Error::Construction(format!(
            "factor grids differ: n={} x_max={} vs n={} x_max={}",
            v1.grid.n, v1.grid.x_max, v2.grid.n, v2.grid.x_max
        )));
    }
    if v1.tau != v2.tau || v1.tau_star != v2.tau_star {
        return Err(Error::Construction(format!(
            "factors must share the triangle function pair, got ({}, {}) vs ({}, {})",
            v1.tau.name(),
            v1.tau_star.name(),
            v2.tau.name(),
            v2.tau_star.name(),
        )));
    }
    let label = format!("product[{}]({} | {})", tau1.name(), v1.label, v2.label);
    let probe = evidence_grid(v1.grid);
    let upper = match &v1.tau_star {
        Trifn::SupConv(_) | Trifn::Lift(_) => check_dominance(
            &v1.tau_star,
            &tau1,
            probe,
            evidence_params(&format!("{label}:upper")),
        ),
        Trifn::CoLift(s) => {
            conorm_certificate(s, &tau1, evidence_params(&format!("{label}:upper")))
        }
    };
    let lower = check_dominance(
        &tau1,
        &v1.tau,
        probe,
        evidence_params(&format!("{label}:lower")),
    );
    let mut out = ProductSpace::assemble(
        vec![v1.clone(), v2.clone()],
        Combiner::Tau1(tau1),
        v1.tau.clone(),
        v1.tau_star.clone(),
        label,
    );
    out.evidence = vec![upper, lower];
    Ok(out)
}

/// Grid-level identity checks for two-block products of simple factors that
/// share one distribution G:
///   (a) the min-lift product equals the simple space over the max-combined
///       norm, bit-identically at every grid point;
///   (b) the min sup-convolution product equals the simple space over the
///       sum-combined norm, within one cell.
pub fn check_simple_product_identities(
    norm1: NormDef,
    d1: usize,
    norm2: NormDef,
    d2: usize,
    g: AnalyticDdf,
    grid: Grid,
    params: CheckParams,
) -> Result<VerificationReport> {
    let v1 = PnSpace::simple_space(d1, grid, norm1.clone(), g.clone())?;
    let v2 = PnSpace::simple_space(d2, grid, norm2.clone(), g.clone())?;
    let max_product = tau_product(&v1, &v2, Trifn::Lift(TNorm::Minimum))?;
    let max_target = PnSpace::simple_space(
        d1 + d2,
        grid,
        NormDef::max_combine(d1, norm1.clone(), norm2.clone()),
        g.clone(),
    )?;
    let sum_product = tau_product(&v1, &v2, Trifn::SupConv(TNorm::Minimum))?;
    let sum_target = PnSpace::simple_space(
        d1 + d2,
        grid,
        NormDef::sum_combine(d1, norm1.clone(), norm2.clone()),
        g,
    )?;

    // 5% of vectors get their second block rescaled so the block norms tie,
    // the configuration where the max-side equality has no slack to hide in.
    let tie_blocks = move |p: &mut Vec<f64>, rng: &mut ChaCha8Rng| {
        if rng.gen::<f64>() < 0.05 {
            let s1 = norm1.eval(&p[..d1]);
            let s2 = norm2.eval(&p[d1..]);
            if s1 > 0.0 && s2 > 0.0 {
                for x in &mut p[d1..] {
                    *x *= s1 / s2;
                }
            }
        }
    };

    let tie_a = tie_blocks.clone();
    let part_a = run_campaign(
        &format!("simple-product:max:{}", max_target.label),
        "the min lift of the factor distributions equals the simple distribution over the max-combined norm at every grid point within 1e-12",
        params.derive("simple-product:max"),
        1,
        move |_, rng| {
            let mut p = max_product.sample_vector(rng);
            tie_a(&mut p, rng);
            // Pointwise, no cell slack: the min lift never moves mass
            // horizontally. The tolerance only absorbs last-bit noise when
            // the tied block norms make G's argument order ambiguous.
            let d = max_product.nu(&p).sup_distance(&max_target.nu(&p));
            let inputs = BTreeMap::from([("p".to_string(), json!(p))]);
            TrialOutcome::from_gap(d, 1e-12, format!("sup distance {d:e}"), inputs)
        },
    );

    let part_b = run_campaign(
        &format!("simple-product:sum:{}", sum_target.label),
        "the min sup-convolution of the factor distributions equals the simple distribution over the sum-combined norm within one cell",
        params.derive("simple-product:sum"),
        1,
        move |_, rng| {
            let mut p = sum_product.sample_vector(rng);
            tie_blocks(&mut p, rng);
            let check = sum_product.nu(&p).eq_within(&sum_target.nu(&p), 1, 1e-12);
            let inputs = BTreeMap::from([("p".to_string(), json!(p))]);
            TrialOutcome::from_order_check(&check, describe_at(check.at), inputs)
        },
    );

    Ok(VerificationReport::merge(
        "simple-product-identities",
        "products of simple factors under the min lift and the min sup-convolution are the simple spaces over the max- and sum-combined norms",
        &[part_a, part_b],
    ))
}

fn verdict_word(passed: bool) -> &'static str {
    if passed {
        "held"
    } else {
        "refuted"
    }
}

/// Joint prediction check for a two-block product of distributive factors:
/// mutual dominance between the combiner and the min sup-convolution forces
/// the product to be a distributive space (axioms plus both scalar-split
/// identities). The campaign fails exactly when both dominances hold and the
/// product check still refutes; the reverse pattern (product holds while
/// dominance fails) constrains the whole factor family, not one instance,
/// and is reported without failing.
pub fn check_serstnev_product(
    v1: &PnSpace,
    v2: &PnSpace,
    tau1: Trifn,
    params: CheckParams,
) -> Result<VerificationReport> {
    let product = tau_product(v1, v2, tau1.clone())?;
    let campaign = format!("serstnev-product:{}", product.name());

    let f1 = check_serstnev(v1, params.derive("factor-1"));
    let f2 = check_serstnev(v2, params.derive("factor-2"));
    if !(f1.passed() && f2.passed()) {
        return Ok(VerificationReport::merge(
            &campaign,
            "factor hypothesis: both factors must pass their scalar-split identity checks; refuted, so the product prediction was not evaluated",
            &[f1, f2],
        ));
    }

    let axioms = verify_axioms(&product, params.derive("axioms"));
    let idents = check_serstnev(&product, params.derive("identities"));
    let space_part = VerificationReport::merge(
        &format!("distributive-space:{}", product.name()),
        "the product passes the axioms and both scalar-split identities",
        &[axioms, idents],
    );
    let tau_m = Trifn::SupConv(TNorm::Minimum);
    let dom_upper = check_dominance(
        &tau1,
        &tau_m,
        product.grid,
        params.derive("combiner-over-min"),
    );
    let dom_lower = check_dominance(
        &tau_m,
        &tau1,
        product.grid,
        params.derive("min-over-combiner"),
    );

    let space_ok = space_part.passed();
    let dom_ok = dom_upper.passed() && dom_lower.passed();
    let parts = [f1, f2, space_part, dom_upper, dom_lower];
    let insufficient = parts
        .iter()
        .any(|r| r.verdict == Verdict::InsufficientSamples);
    let trials = parts.iter().map(|r| r.trials).sum();
    let checked = parts.iter().map(|r| r.checked).sum();

    let outcome = match (dom_ok, space_ok) {
        (true, true) => "both held: consistent",
        (false, false) => "both refuted: consistent",
        (false, true) => {
            "dominance refuted while this product held; the reverse direction constrains the whole factor family, not one instance"
        }
        (true, false) => "dominance held but the product was refuted: prediction violated",
    };
    let claim = format!(
        "mutual dominance between {} and {} forces the product distributive structure: dominance {}, product {}; {}",
        tau1.name(),
        tau_m.name(),
        verdict_word(dom_ok),
        verdict_word(space_ok),
        outcome,
    );
    let (verdict, max_violation, witness) = if insufficient {
        (Verdict::InsufficientSamples, 0.0, None)
    } else if dom_ok && !space_ok {
        (
            Verdict::Fail,
            parts[2].max_violation,
            parts[2].witness.clone(),
        )
    } else {
        (Verdict::Pass, 0.0, None)
    };
    Ok(VerificationReport {
        campaign,
        verdict,
        trials,
        checked,
        max_violation,
        witness,
        claim,
    })
}

/// Product of two factors certified Menger under one t-norm T, merged by the
/// sup-convolution of `t0`. The two scalar dominance hypotheses (the conorm
/// dual to T over the conorm dual to t0, and t0 over T) gate the claim: when
/// either is refuted the product is not built and the report says so. When
/// both hold, the product carries (sup-convolution of T, conorm colift of
/// T's dual) and must pass the axioms.
pub fn check_menger_product(
    v1: &PnSpace,
    v2: &PnSpace,
    t0: &TNorm,
    params: CheckParams,
) -> Result<VerificationReport> {
    let t = match (&v1.class, &v2.class) {
        (SpaceClass::Menger(a), SpaceClass::Menger(b)) if a == b => a.clone(),
        _ => {
            return Err(Error::Construction(format!(
                "both factors must be certified Menger under one t-norm, got {} and {}",
                v1.class.name(),
                v2.class.name(),
            )))
        }
    };
    let s = t.dual();
    let tol = t.axiom_tol().max(t0.axiom_tol()).max(1e-12);
    let hyp_upper = check_scalar_dominance(
        &ScalarOp::Conorm(s.clone()),
        &ScalarOp::Conorm(t0.dual()),
        tol,
        params.derive("upper-hypothesis"),
    );
    let hyp_lower = check_scalar_dominance(
        &ScalarOp::Norm(t0.clone()),
        &ScalarOp::Norm(t.clone()),
        tol,
        params.derive("lower-hypothesis"),
    );
    let campaign = format!("menger-product[{}]({} | {})", t0.name(), v1.label, v2.label);
    if !(hyp_upper.passed() && hyp_lower.passed()) {
        return Ok(VerificationReport::merge(
            &campaign,
            &format!(
                "dominance hypotheses for merging Menger({}) factors by the {} sup-convolution: refuted, product not built",
                t.name(),
                t0.name()
            ),
            &[hyp_upper, hyp_lower],
        ));
    }
    let product = tau_product(v1, v2, Trifn::SupConv(t0.clone()))?
        .with_trifns(Trifn::SupConv(t.clone()), Trifn::CoLift(s));
    let axioms = verify_axioms(&product, params.derive("axioms"));
    Ok(VerificationReport::merge(
        &campaign,
        &format!(
            "Menger({t}) factors merged by the {t0} sup-convolution form a Menger({t}) space under (tau, colift of the dual conorm)",
            t = t.name(),
            t0 = t0.name()
        ),
        &[hyp_upper, hyp_lower, axioms],
    ))
}

/// Two-block product of strict-parametric factors sharing (G, alpha), merged
/// by the pointwise lift of the same parametric t-norm. The product has the
/// closed form of an alpha-homogeneous space over the beta-combined norm
/// with beta = alpha/(alpha - 1); that identity is probed at construction
/// and a miss refuses the product.
pub fn tg_product(
    norm1: NormDef,
    d1: usize,
    norm2: NormDef,
    d2: usize,
    g: AnalyticDdf,
    alpha: f64,
    grid: Grid,
) -> Result<ProductSpace> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(Error::Construction(format!(
            "parametric product needs alpha > 1, got {alpha}"
        )));
    }
    let v1 = PnSpace::menger_alpha_space(d1, grid, norm1.clone(), g.clone(), alpha)?;
    let v2 = PnSpace::menger_alpha_space(d2, grid, norm2.clone(), g.clone(), alpha)?;
    let t = TNorm::tg(g.clone(), alpha)?;
    let mut product = tau_product(&v1, &v2, Trifn::Lift(t))?;
    let beta = alpha / (alpha - 1.0);
    let target = alpha_simple(NormDef::beta(beta, d1, norm1, norm2)?, g, alpha)?;
    let probe = run_campaign(
        &format!("tg-product:identity:{}", product.name()),
        "the pointwise parametric lift of the two alpha-homogeneous factors equals the alpha-homogeneous distribution over the beta-combined norm",
        evidence_params(&format!("{}:identity", product.name())),
        1,
        |_, rng| {
            let p = product.sample_vector(rng);
            let x = rng.gen::<f64>() * grid.x_max;
            let lhs = product.nu_at(&p, x);
            let rhs = target.nu_at(&p, x);
            let gap = (lhs - rhs).abs() / (1.0 + rhs.abs());
            let inputs = BTreeMap::from([
                ("p".to_string(), json!(p)),
                ("x".to_string(), json!(x)),
            ]);
            TrialOutcome::from_gap(gap, 1e-9, format!("at x={x}"), inputs)
        },
    );
    if !probe.passed() {
        return Err(Error::Hypothesis(Box::new(probe)));
    }
    product.evidence.push(probe);
    Ok(product)
}

/// Randomized closed-form check for the parametric product: at sampled
/// vectors and arguments, nu(p)(x) = G(x / ||p||_beta^alpha) with
/// beta = alpha/(alpha - 1). Trial 0 pins the integer case: block norms 3
/// and 4 under beta = 2 combine to 5.
pub fn check_tg_identity(
    norm1: NormDef,
    d1: usize,
    norm2: NormDef,
    d2: usize,
    g: AnalyticDdf,
    alpha: f64,
    grid: Grid,
    params: CheckParams,
) -> Result<VerificationReport> {
    let product = tg_product(norm1.clone(), d1, norm2.clone(), d2, g.clone(), alpha, grid)?;
    let beta = alpha / (alpha - 1.0);
    let target = alpha_simple(NormDef::beta(beta, d1, norm1, norm2)?, g, alpha)?;
    Ok(run_campaign(
        &format!("tg-identity:{}", product.name()),
        &format!(
            "nu(p)(x) = G(x / ||p||_beta^alpha) with beta = {beta} at sampled (p, x); trial 0 uses blocks of norm 3 and 4"
        ),
        params,
        1,
        move |trial, rng| {
            let (p, x) = if trial == 0 {
                // Axis vectors have block norm equal to their coefficient for
                // every atomic norm, so the combined norm is exactly
                // (3^beta + 4^beta)^(1/beta).
                let mut p = vec![0.0; d1 + d2];
                p[0] = 3.0;
                p[d1] = 4.0;
                (p, 0.2 * grid.x_max)
            } else {
                (product.sample_vector(rng), rng.gen::<f64>() * grid.x_max)
            };
            let lhs = product.nu_at(&p, x);
            let rhs = target.nu_at(&p, x);
            let gap = (lhs - rhs).abs() / (1.0 + rhs.abs());
            let inputs = BTreeMap::from([
                ("p".to_string(), json!(p)),
                ("x".to_string(), json!(x)),
            ]);
            TrialOutcome::from_gap(gap, 1e-9, format!("at x={x}"), inputs)
        },
    ))
}

/// Finite truncation of a countable lifted product. Factor i is
/// re-parametrized by the transform m_i, whose pole b_i is where the
/// re-parametrized distribution jumps to 1. Gates, in order: the pole tail
/// over the last quarter of the sequence must be lighter than [`CAUCHY_TOL`]
/// (truncations with fewer than 4 factors have an empty tail window and pass
/// vacuously), and every distinct transform must pass its superadditivity
/// campaign; refusal carries the refuting report. The product folds the
/// pointwise lift of `t` over the re-parametrized factors and carries that
/// lift on both sides.
pub fn countable_product(
    factors: &[PnSpace],
    b: &[f64],
    m: &[MbFunction],
    t: &TNorm,
) -> Result<ProductSpace> {
    if factors.is_empty() {
        return Err(Error::Construction(
            "countable product needs at least one factor".into(),
        ));
    }
    if factors.len() != b.len() || factors.len() != m.len() {
        return Err(Error::Construction(format!(
            "{} factors against {} poles and {} transforms",
            factors.len(),
            b.len(),
            m.len()
        )));
    }
    let grid = factors[0].grid;
    if factors.iter().any(|f| f.grid != grid) {
        return Err(Error::Construction(
            "countable product factors must share one grid".into(),
        ));
    }
    for (i, (&bi, mi)) in b.iter().zip(m).enumerate() {
        if !(bi.is_finite() && bi > 0.0) {
            return Err(Error::Construction(format!(
                "pole {i} must be finite and positive, got {bi}"
            )));
        }
        if mi.b() != bi {
            return Err(Error::Construction(format!(
                "transform {} at position {i} has pole {}, expected {bi}",
                mi.name(),
                mi.b()
            )));
        }
    }
    let k = factors.len();
    let window = k / 4;
    let tail: f64 = b[k - window..].iter().sum();
    if tail >= CAUCHY_TOL {
        return Err(Error::Construction(format!(
            "pole tail mass {tail:.4} over the last {window} factors reaches {CAUCHY_TOL}; the truncation does not stand in for the full sequence"
        )));
    }
    let mut seen: Vec<&MbFunction> = Vec::new();
    let mut evidence = Vec::new();
    for mi in m {
        if seen.iter().any(|s| *s == mi) {
            continue;
        }
        seen.push(mi);
        let report = check_superadditive(
            mi,
            evidence_params(&format!("countable:superadditive:{}", mi.name())).with_trials(2048),
        );
        if !report.passed() {
            return Err(Error::Hypothesis(Box::new(report)));
        }
        evidence.push(report);
    }
    let transformed: Vec<PnSpace> = factors.iter().zip(m).map(|(f, mi)| f.transform(mi)).collect();
    let label = format!("countable-product[lift:{}](K={k})", t.name());
    let mut out = ProductSpace::assemble(
        transformed,
        Combiner::CountableLift { t: t.clone() },
        Trifn::Lift(t.clone()),
        Trifn::Lift(t.clone()),
        label,
    );
    out.pole_sum = Some(b.iter().sum());
    out.evidence = evidence;
    Ok(out)
}

/// For sampled vectors, the countable product distribution is 1 at every
/// grid point beyond the pole sum, and 1 at infinity. Poles land exactly on
/// the transform jumps, so the tolerance only absorbs t-norm arithmetic on
/// exact ones.
pub fn check_countable_tail_bound(
    product: &ProductSpace,
    params: CheckParams,
) -> Result<VerificationReport> {
    let sigma = product.pole_sum().ok_or_else(|| {
        Error::Construction(format!(
            "{} has no pole sum; the tail bound applies to countable products",
            product.name()
        ))
    })?;
    let grid = product.grid();
    Ok(run_campaign(
        &format!("countable:tail-bound:{}", product.name()),
        &format!(
            "nu(p) equals 1 at every grid point beyond the pole sum {sigma} and at infinity, for sampled p"
        ),
        params,
        1,
        move |_, rng| {
            let p = product.sample_vector(rng);
            let f = product.nu(&p);
            let mut worst = 1.0 - f.at_inf();
            let mut at = "at infinity".to_string();
            for k in 0..=grid.n {
                if grid.abscissa(k) > sigma {
                    let gap = 1.0 - f.values()[k];
                    if gap > worst {
                        worst = gap;
                        at = format!("at x={}", grid.abscissa(k));
                    }
                }
            }
            let inputs = BTreeMap::from([("p".to_string(), json!(p))]);
            TrialOutcome::from_gap(worst, 1e-12, at, inputs)
        },
    ))
}

/// Dyadically weighted mixture product over a factor sequence. Each distinct
/// factor triangle pair must satisfy two grid orderings, checked on a coarse
/// probe grid and enforced: the factor tau sits above the Lukasiewicz
/// sup-convolution, and the factor tau* sits below the bounded-sum colift.
/// The stock kinds satisfy both cell by cell; parametric t-norms can
/// genuinely dip below the Lukasiewicz floor and are refused. The product
/// carries (Lukasiewicz sup-convolution, bounded-sum colift) and tail
/// deficit 2^-K.
pub fn sigma_product(factors: &[PnSpace]) -> Result<ProductSpace> {
    if factors.is_empty() {
        return Err(Error::Construction(
            "sigma product needs at least one factor".into(),
        ));
    }
    let grid = factors[0].grid;
    if factors.iter().any(|f| f.grid != grid) {
        return Err(Error::Construction(
            "sigma product factors must share one grid".into(),
        ));
    }
    let probe = evidence_grid(grid);
    let floor = Trifn::SupConv(TNorm::Lukasiewicz);
    let ceiling = Trifn::CoLift(TConorm::BoundedSum);
    let mut evidence = Vec::new();
    let mut seen: Vec<(String, String)> = Vec::new();
    for f in factors {
        let key = (f.tau.name(), f.tau_star.name());
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        for (gate, lo, hi) in [
            ("floor", floor.clone(), f.tau.clone()),
            ("ceiling", f.tau_star.clone(), ceiling.clone()),
        ] {
            let claim = format!(
                "{} <= {} at every grid point on sampled pairs",
                lo.name(),
                hi.name()
            );
            let campaign = format!("sigma:{gate}-gate:{}:{}", lo.name(), hi.name());
            let params = evidence_params(&campaign);
            let report = run_campaign(&campaign, &claim, params, 1, |_, rng| {
                let df = random_ddf(rng, probe);
                let dg = random_ddf(rng, probe);
                let check = lo
                    .apply(&df.realize(probe), &dg.realize(probe))
                    .le(&hi.apply(&df.realize(probe), &dg.realize(probe)), 1e-12);
                let inputs = BTreeMap::from([
                    ("F".to_string(), df.to_value()),
                    ("G".to_string(), dg.to_value()),
                ]);
                TrialOutcome::from_order_check(&check, describe_at(check.at), inputs)
            });
            if !report.passed() {
                return Err(Error::Hypothesis(Box::new(report)));
            }
            evidence.push(report);
        }
    }
    let k = factors.len();
    let mut out = ProductSpace::assemble(
        factors.to_vec(),
        Combiner::Sigma,
        floor,
        ceiling,
        format!("sigma-product(K={k})"),
    );
    out.tail_deficit = 0.5f64.powi(k as i32);
    out.evidence = evidence;
    Ok(out)
}

/// Distance-distribution view of a space: the pair (p, q) maps to the
/// distribution of q - p.
pub struct PmView<'a> {
    space: &'a dyn Space,
}

impl PmView<'_> {
    pub fn distance(&self, p: &[f64], q: &[f64]) -> Ddf {
        self.space.nu(&vadd(q, &vneg(p)))
    }

    pub fn distance_at(&self, p: &[f64], q: &[f64], x: f64) -> f64 {
        self.space.nu_at(&vadd(q, &vneg(p)), x)
    }
}

pub fn pm_view(space: &dyn Space) -> PmView<'_> {
    PmView { space }
}

/// The distance view is the norm of the difference by definition; this pins
/// the bookkeeping bit-exactly: F(p,q) = nu(q-p), F(p,p) is the unit step at
/// 0, and F(p,q) = F(q,p).
pub fn check_pm_coincidence(space: &dyn Space, params: CheckParams) -> VerificationReport {
    run_campaign(
        &format!("pm-coincidence:{}", space.name()),
        "F(p,q) = nu(q-p) bit-exactly, F(p,p) is the unit step at 0, and F(p,q) = F(q,p)",
        params,
        1,
        move |_, rng| {
            let view = pm_view(space);
            let p = space.sample_vector(rng);
            let q = space.sample_vector(rng);
            let fpq = view.distance(&p, &q);
            let direct = space.nu(&vadd(&q, &vneg(&p)));
            let diagonal = view
                .distance(&p, &p)
                .sup_distance(&Ddf::eps0(space.grid()));
            let symmetric = fpq.sup_distance(&view.distance(&q, &p));
            let worst = fpq
                .sup_distance(&direct)
                .max(diagonal)
                .max(symmetric);
            let inputs = BTreeMap::from([
                ("p".to_string(), json!(p)),
                ("q".to_string(), json!(q)),
            ]);
            TrialOutcome::from_gap(worst, 0.0, "distance view disagreement", inputs)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::simple;
    use crate::trifn::lift;

    fn tgrid() -> Grid {
        Grid::new(256, 16.0).unwrap()
    }

    fn ratio1() -> AnalyticDdf {
        AnalyticDdf::ratio(1.0).unwrap()
    }

    fn simple_factor(dim: usize, grid: Grid) -> PnSpace {
        PnSpace::simple_space(dim, grid, NormDef::L2, ratio1()).unwrap()
    }

    #[test]
    fn tau_product_rejects_mismatched_factors_and_records_evidence() {
        let grid = tgrid();
        let v1 = simple_factor(2, grid);
        let other_grid = Grid::new(128, 16.0).unwrap();
        let v2 = simple_factor(1, other_grid);
        assert!(matches!(
            tau_product(&v1, &v2, Trifn::Lift(TNorm::Minimum)),
            Err(Error::Construction(_))
        ));

        let mut v3 = simple_factor(1, grid);
        v3.tau = Trifn::SupConv(TNorm::Lukasiewicz);
        assert!(matches!(
            tau_product(&v1, &v3, Trifn::Lift(TNorm::Minimum)),
            Err(Error::Construction(_))
        ));

        let v4 = simple_factor(3, grid);
        let product = tau_product(&v1, &v4, Trifn::Lift(TNorm::Minimum)).unwrap();
        assert_eq!(product.dim(), 5);
        assert_eq!(product.evidence().len(), 2);
        assert!(product.evidence().iter().all(|r| r.passed()));
    }

    #[test]
    fn min_lift_product_is_the_pointwise_min_of_factor_distributions() {
        let grid = tgrid();
        let f1 = Ddf::from_fn(grid, |x| 1.0 - (-x).exp(), 1.0);
        let f2 = Ddf::from_fn(grid, |x| x / (x + 3.0), 1.0);
        let v1 = PnSpace::equilateral_space(2, grid, f1.clone()).unwrap();
        let v2 = PnSpace::equilateral_space(2, grid, f2.clone()).unwrap();
        let product = tau_product(&v1, &v2, Trifn::Lift(TNorm::Minimum)).unwrap();

        let p = [1.0, -2.0, 0.5, 3.0];
        let nu = product.nu(&p);
        let expected = lift(&TNorm::Minimum, &f1, &f2);
        assert_eq!(nu.sup_distance(&expected), 0.0);

        // A zero block contributes the unit step, the lift identity.
        let part = [1.0, -2.0, 0.0, 0.0];
        assert_eq!(product.nu(&part).sup_distance(&f1), 0.0);
        assert_eq!(
            product.nu(&[0.0; 4]).sup_distance(&Ddf::eps0(grid)),
            0.0
        );
    }

    #[test]
    fn lukasiewicz_lift_product_of_lukasiewicz_factors_passes_axioms() {
        let grid = tgrid();
        let make = |dim| {
            PnSpace::new(
                dim,
                grid,
                simple(NormDef::L2, ratio1()).unwrap(),
                Trifn::SupConv(TNorm::Lukasiewicz),
                Trifn::Lift(TNorm::Minimum),
                SpaceClass::Pn,
            )
            .unwrap()
        };
        let product = tau_product(&make(2), &make(1), Trifn::Lift(TNorm::Lukasiewicz)).unwrap();
        let report = verify_axioms(&product, CheckParams::new(150, 41));
        assert!(report.passed(), "{}", report.summary_line());
    }

    #[test]
    fn two_factor_product_commutes_up_to_block_swap() {
        let grid = tgrid();
        let v1 = simple_factor(2, grid);
        let v2 = PnSpace::simple_space(1, grid, NormDef::L1, ratio1()).unwrap();
        let forward = tau_product(&v1, &v2, Trifn::SupConv(TNorm::Minimum)).unwrap();
        let backward = tau_product(&v2, &v1, Trifn::SupConv(TNorm::Minimum)).unwrap();
        let p = [0.3, -1.2, 2.5];
        let q = [2.5, 0.3, -1.2];
        assert_eq!(forward.nu(&p).sup_distance(&backward.nu(&q)), 0.0);
    }

    #[test]
    fn simple_product_identities_hold() {
        let report = check_simple_product_identities(
            NormDef::L2,
            2,
            NormDef::L1,
            3,
            ratio1(),
            tgrid(),
            CheckParams::new(200, 7),
        )
        .unwrap();
        assert!(report.passed(), "{}", report.summary_line());
    }

    #[test]
    fn serstnev_product_prediction_consistent_for_min_combiner() {
        let grid = tgrid();
        let v1 = simple_factor(2, grid);
        let v2 = simple_factor(1, grid);
        let report =
            check_serstnev_product(&v1, &v2, Trifn::SupConv(TNorm::Minimum), CheckParams::new(250, 3))
                .unwrap();
        assert!(report.passed(), "{}", report.summary_line());
        assert!(report.claim.contains("both held"), "{}", report.claim);
    }

    #[test]
    fn serstnev_product_prediction_consistent_for_lukasiewicz_combiner() {
        let grid = Grid::new(128, 16.0).unwrap();
        let v1 = simple_factor(1, grid);
        let v2 = simple_factor(1, grid);
        let report = check_serstnev_product(
            &v1,
            &v2,
            Trifn::SupConv(TNorm::Lukasiewicz),
            CheckParams::new(1500, 3),
        )
        .unwrap();
        assert!(report.passed(), "{}", report.summary_line());
        assert!(
            report.claim.contains("both refuted"),
            "{}",
            report.claim
        );
    }

    #[test]
    fn menger_product_under_min_combiner_passes() {
        let grid = tgrid();
        let v1 = PnSpace::menger_alpha_space(1, grid, NormDef::L2, ratio1(), 2.0).unwrap();
        let v2 = PnSpace::menger_alpha_space(2, grid, NormDef::L1, ratio1(), 2.0).unwrap();
        let report =
            check_menger_product(&v1, &v2, &TNorm::Minimum, CheckParams::new(100, 11)).unwrap();
        assert!(report.passed(), "{}", report.summary_line());
    }

    #[test]
    fn menger_product_reports_failed_hypothesis_without_building() {
        let grid = tgrid();
        let make = |dim| {
            PnSpace::new(
                dim,
                grid,
                simple(NormDef::L2, ratio1()).unwrap(),
                Trifn::SupConv(TNorm::Minimum),
                Trifn::Lift(TNorm::Minimum),
                SpaceClass::Menger(TNorm::Minimum),
            )
            .unwrap()
        };
        let report =
            check_menger_product(&make(1), &make(1), &TNorm::Lukasiewicz, CheckParams::new(400, 5))
                .unwrap();
        assert!(!report.passed());
        assert!(report.claim.contains("product not built"), "{}", report.claim);

        let mismatched = PnSpace::simple_space(1, grid, NormDef::L2, ratio1()).unwrap();
        assert!(matches!(
            check_menger_product(&make(1), &mismatched, &TNorm::Minimum, CheckParams::new(10, 5)),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn menger_product_under_lukasiewicz_self_combination_passes() {
        let grid = tgrid();
        let make = |dim| {
            PnSpace::new(
                dim,
                grid,
                simple(NormDef::L2, ratio1()).unwrap(),
                Trifn::SupConv(TNorm::Lukasiewicz),
                Trifn::CoLift(TConorm::BoundedSum),
                SpaceClass::Menger(TNorm::Lukasiewicz),
            )
            .unwrap()
        };
        let report =
            check_menger_product(&make(1), &make(2), &TNorm::Lukasiewicz, CheckParams::new(120, 13))
                .unwrap();
        assert!(report.passed(), "{}", report.summary_line());
    }

    #[test]
    fn tg_product_matches_beta_norm_closed_form() {
        let grid = tgrid();
        assert!(matches!(
            tg_product(NormDef::L2, 2, NormDef::L2, 1, ratio1(), 1.0, grid),
            Err(Error::Construction(_))
        ));

        let product = tg_product(NormDef::L2, 2, NormDef::L2, 1, ratio1(), 2.0, grid).unwrap();
        // Block norms 3 and 4, beta = 2: combined norm 5, nu(p)(x) = G(x/25).
        let p = [3.0, 0.0, 4.0];
        let got = product.nu_at(&p, 5.0);
        let want = ratio1().eval(5.0 / 25.0);
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");

        let report = check_tg_identity(
            NormDef::L2,
            2,
            NormDef::L2,
            1,
            ratio1(),
            2.0,
            grid,
            CheckParams::new(300, 17),
        )
        .unwrap();
        assert!(report.passed(), "{}", report.summary_line());
    }

    fn subroot() -> MbFunction {
        MbFunction::Custom {
            name: "subroot".into(),
            b: 1.0,
            m: |x| (x / (1.0 - x)).sqrt(),
            m_inv: |y| y * y / (1.0 + y * y),
        }
    }

    #[test]
    fn countable_product_of_transformed_exp_factors() {
        let grid = tgrid();
        let factor = PnSpace::exp_pi_space(1, grid, NormDef::L2).unwrap();
        let factors = vec![factor; 4];
        let b = [0.5, 0.25, 0.125, 0.008];
        let m: Vec<MbFunction> = b.iter().map(|&bi| MbFunction::blowup(bi).unwrap()).collect();
        let product = countable_product(&factors, &b, &m, &TNorm::Product).unwrap();
        assert_eq!(product.pole_sum(), Some(0.5 + 0.25 + 0.125 + 0.008));

        let axioms = verify_axioms(&product, CheckParams::new(150, 23));
        assert!(axioms.passed(), "{}", axioms.summary_line());
        let tail = check_countable_tail_bound(&product, CheckParams::new(150, 29)).unwrap();
        assert!(tail.passed(), "{}", tail.summary_line());
    }

    #[test]
    fn countable_product_gates_reject_bad_inputs() {
        let grid = tgrid();
        let factor = PnSpace::exp_pi_space(1, grid, NormDef::L2).unwrap();
        let factors = vec![factor; 4];

        // Pole list disagrees with the transform at position 3.
        let b = [0.5, 0.25, 0.125, 0.01];
        let m: Vec<MbFunction> = [0.5, 0.25, 0.125, 0.008]
            .iter()
            .map(|&bi| MbFunction::blowup(bi).unwrap())
            .collect();
        match countable_product(&factors, &b, &m, &TNorm::Product) {
            Err(Error::Construction(msg)) => assert!(msg.contains("position 3"), "{msg}"),
            other => panic!("expected construction error, got {other:?}"),
        }

        // Heavy pole tail.
        let b = [0.5, 0.25, 0.125, 0.0625];
        let m: Vec<MbFunction> = b.iter().map(|&bi| MbFunction::blowup(bi).unwrap()).collect();
        match countable_product(&factors, &b, &m, &TNorm::Product) {
            Err(Error::Construction(msg)) => assert!(msg.contains("tail"), "{msg}"),
            other => panic!("expected construction error, got {other:?}"),
        }

        // Superadditivity refutation travels inside the error.
        let b = [1.0, 0.5, 0.25, 0.008];
        let mut m: Vec<MbFunction> = b[1..]
            .iter()
            .map(|&bi| MbFunction::blowup(bi).unwrap())
            .collect();
        m.insert(0, subroot());
        match countable_product(&factors, &b, &m, &TNorm::Product) {
            Err(Error::Hypothesis(report)) => {
                assert!(report.campaign.contains("superadditive:custom:subroot"));
                assert!(!report.passed());
            }
            other => panic!("expected hypothesis error, got {other:?}"),
        }
    }

    #[test]
    fn countable_truncation_is_monotone_in_the_factor_count() {
        let grid = tgrid();
        let factor = PnSpace::exp_pi_space(1, grid, NormDef::L2).unwrap();
        let b5 = [0.2, 0.1, 0.05, 0.009, 0.004];
        let m5: Vec<MbFunction> = b5.iter().map(|&bi| MbFunction::blowup(bi).unwrap()).collect();
        let p5 = vec![factor.clone(); 5];
        let prod5 = countable_product(&p5, &b5, &m5, &TNorm::Product).unwrap();
        let prod4 =
            countable_product(&p5[..4], &b5[..4], &m5[..4], &TNorm::Product).unwrap();

        let v = [0.7, -1.1, 0.4, 2.0, -0.3];
        let check = prod5.nu(&v).le(&prod4.nu(&v[..4]), 1e-12);
        assert!(check.holds, "violation {}", check.max_violation);
    }

    #[test]
    fn sigma_product_passes_axioms_and_bounds_its_tail() {
        let grid = tgrid();
        let factors: Vec<PnSpace> = (0..6)
            .map(|i| {
                PnSpace::simple_space(1, grid, NormDef::L2, AnalyticDdf::ratio(1.0 + i as f64).unwrap())
                    .unwrap()
            })
            .collect();
        let product = sigma_product(&factors).unwrap();
        assert_eq!(product.tail_deficit(), 0.5f64.powi(6));
        assert!(product.evidence().iter().all(|r| r.passed()));

        let report = verify_axioms(&product, CheckParams::new(150, 31));
        assert!(report.passed(), "{}", report.summary_line());

        // Extending the truncation by eight factors moves the distribution by
        // less than the declared tail deficit, and by at least half of it
        // when the appended blocks are zero.
        let mut longer = factors.clone();
        for _ in 0..8 {
            longer.push(factors[0].clone());
        }
        let extended = sigma_product(&longer).unwrap();
        let p = [0.5, -1.0, 2.0, 0.1, -0.4, 1.3];
        let mut q = p.to_vec();
        q.extend([0.0; 8]);
        let d = product.nu(&p).sup_distance(&extended.nu(&q));
        assert!(d <= 0.5f64.powi(6) + 1e-15, "distance {d}");
        assert!(d >= 0.5f64.powi(7), "distance {d}");
    }

    #[test]
    fn pm_view_coincides_with_the_norm_of_the_difference() {
        let grid = tgrid();
        let space = simple_factor(3, grid);
        let report = check_pm_coincidence(&space, CheckParams::new(150, 37));
        assert!(report.passed(), "{}", report.summary_line());

        let product =
            tau_product(&simple_factor(2, grid), &simple_factor(1, grid), Trifn::Lift(TNorm::Minimum))
                .unwrap();
        let report = check_pm_coincidence(&product, CheckParams::new(100, 37));
        assert!(report.passed(), "{}", report.summary_line());
    }

    #[test]
    fn product_sampler_fills_every_block() {
        use rand::SeedableRng;
        let grid = tgrid();
        let product = tau_product(
            &simple_factor(2, grid),
            &PnSpace::simple_space(3, grid, NormDef::LInf, ratio1()).unwrap(),
            Trifn::Lift(TNorm::Minimum),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let p = product.sample_vector(&mut rng);
            assert_eq!(p.len(), 5);
            assert!(p.iter().all(|x| x.is_finite()));
        }
    }
}
