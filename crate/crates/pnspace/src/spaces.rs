//! Vector carriers, scalar norms, probabilistic norms, and the axiom
//! verifiers.
//!
//! A candidate space pairs a finite-dimensional real carrier with a map
//! `nu` from vectors to ddfs and two triangle functions: `tau` bounds
//! `nu_(p+q)` from below, `tau_star` bounds the convexity split of `nu_p`
//! from above. The campaigns here sample vectors and scalars, evaluate both
//! sides of each axiom on the grid, and record the worst margin violation
//! as a witness. Exact axioms (N1 at the zero vector only up to a declared
//! tail deficit, N2 always) are compared bit for bit; the inequalities N3
//! and N4 get the standard one-cell margin.

use std::collections::BTreeMap;

use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::ddf::{AnalyticDdf, Ddf, OrderCheck};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::report::{run_campaign, CheckParams, TrialOutcome, VerificationReport};
use crate::sample::random_ddf;
use crate::tnorm::{Generator, TNorm};
use crate::transform::MbFunction;
use crate::trifn::{describe_at, Trifn, CELL_MARGIN, VTOL};

/// x^e with the common exponents routed through exact operations, so that
/// hand-checked norm chains survive bit for bit.
pub(crate) fn powx(x: f64, e: f64) -> f64 {
    if e == 1.0 {
        x
    } else if e == 2.0 {
        x * x
    } else if e == 3.0 {
        x * x * x
    } else if e == 0.5 {
        x.sqrt()
    } else {
        x.powf(e)
    }
}

pub fn vzero(dim: usize) -> Vec<f64> {
    vec![0.0; dim]
}

pub fn is_vzero(v: &[f64]) -> bool {
    v.iter().all(|x| *x == 0.0)
}

pub fn vadd(u: &[f64], v: &[f64]) -> Vec<f64> {
    assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn vneg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|a| -a).collect()
}

pub fn vscale(c: f64, v: &[f64]) -> Vec<f64> {
    v.iter().map(|a| c * a).collect()
}

/// One standard normal draw (Box-Muller, cosine branch).
pub(crate) fn std_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Carrier sample: mostly standard normal coordinates, sometimes rescaled,
/// sometimes a signed axis vector. Axis vectors matter because the known
/// axiom failures are collinear.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    let roll: f64 = rng.gen();
    if roll < 0.10 {
        let mut v = vzero(dim);
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        v[rng.gen_range(0..dim)] = sign * 10f64.powf(rng.gen_range(-0.6..0.6));
        v
    } else {
        let scale = if roll < 0.85 {
            1.0
        } else {
            10f64.powf(rng.gen_range(-1.0..1.0))
        };
        (0..dim).map(|_| scale * std_normal(rng)).collect()
    }
}

/// Scalar norm on the carrier. The combined kinds split the coordinate
/// block at `split` and feed the two halves to the component norms.
#[derive(Debug, Clone, PartialEq)]
pub enum NormDef {
    L1,
    L2,
    LInf,
    /// (left^beta + right^beta)^(1/beta) over the split blocks. A norm for
    /// beta >= 1; for beta < 1 the triangle inequality can fail, so it is
    /// checked by campaign, never assumed.
    Beta {
        beta: f64,
        split: usize,
        left: Box<NormDef>,
        right: Box<NormDef>,
    },
    /// max(left, right) over the split blocks.
    MaxCombine {
        split: usize,
        left: Box<NormDef>,
        right: Box<NormDef>,
    },
    /// left + right over the split blocks.
    SumCombine {
        split: usize,
        left: Box<NormDef>,
        right: Box<NormDef>,
    },
}

impl NormDef {
    pub fn beta(beta: f64, split: usize, left: NormDef, right: NormDef) -> Result<NormDef> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::Construction(format!(
                "beta-combine exponent must be positive and finite, got {beta}"
            )));
        }
        Ok(NormDef::Beta {
            beta,
            split,
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    pub fn max_combine(split: usize, left: NormDef, right: NormDef) -> NormDef {
        NormDef::MaxCombine {
            split,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn sum_combine(split: usize, left: NormDef, right: NormDef) -> NormDef {
        NormDef::SumCombine {
            split,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn eval(&self, v: &[f64]) -> f64 {
        match self {
            NormDef::L1 => v.iter().map(|x| x.abs()).sum(),
            NormDef::L2 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            NormDef::LInf => v.iter().fold(0.0f64, |m, x| m.max(x.abs())),
            NormDef::Beta {
                beta,
                split,
                left,
                right,
            } => {
                let (a, b) = v.split_at((*split).min(v.len()));
                powx(
                    powx(left.eval(a), *beta) + powx(right.eval(b), *beta),
                    1.0 / *beta,
                )
            }
            NormDef::MaxCombine { split, left, right } => {
                let (a, b) = v.split_at((*split).min(v.len()));
                left.eval(a).max(right.eval(b))
            }
            NormDef::SumCombine { split, left, right } => {
                let (a, b) = v.split_at((*split).min(v.len()));
                left.eval(a) + right.eval(b)
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            NormDef::L1 => "l1".into(),
            NormDef::L2 => "l2".into(),
            NormDef::LInf => "linf".into(),
            NormDef::Beta {
                beta, left, right, ..
            } => format!("beta[{beta}]({},{})", left.name(), right.name()),
            NormDef::MaxCombine { left, right, .. } => {
                format!("max({},{})", left.name(), right.name())
            }
            NormDef::SumCombine { left, right, .. } => {
                format!("sum({},{})", left.name(), right.name())
            }
        }
    }

    pub fn parse(s: &str) -> Result<NormDef> {
        match s {
            "l1" => Ok(NormDef::L1),
            "l2" => Ok(NormDef::L2),
            "linf" => Ok(NormDef::LInf),
            _ => Err(Error::UnknownName(format!("norm '{s}'"))),
        }
    }
}

/// Samples vectors and scalars and checks definiteness, absolute
/// homogeneity, and the triangle inequality, each to relative tolerance
/// 1e-12. Signed axis pairs are probed deterministically because they are
/// the known triangle witnesses of the beta-combine with beta < 1.
pub fn check_norm_axioms(norm: &NormDef, dim: usize, params: CheckParams) -> VerificationReport {
    const TOL: f64 = 1e-12;
    let claim = format!(
        "{} is a norm on R^{dim}: zero exactly at the zero vector, absolutely homogeneous, triangle inequality, relative tolerance 1e-12",
        norm.name()
    );
    run_campaign(
        &format!("norm-axioms:{}[d={dim}]", norm.name()),
        &claim,
        params,
        1,
        |i, rng| {
            let (u, v) = if i == 0 {
                (vzero(dim), vzero(dim))
            } else if i % 8 == 1 && dim >= 2 {
                let mut u = vzero(dim);
                let mut v = vzero(dim);
                let i0 = rng.gen_range(0..dim);
                let j0 = (i0 + 1 + rng.gen_range(0..dim - 1)) % dim;
                u[i0] = (if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    * 10f64.powf(rng.gen_range(-0.31..0.31));
                v[j0] = (if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    * 10f64.powf(rng.gen_range(-0.31..0.31));
                (u, v)
            } else {
                (random_vector(rng, dim), random_vector(rng, dim))
            };
            let lambda: f64 = if rng.gen::<f64>() < 0.05 {
                0.0
            } else {
                (if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    * 10f64.powf(rng.gen_range(-3.0..3.0))
            };
            let nu = norm.eval(&u);
            let nv = norm.eval(&v);

            let mut worst: f64 = 0.0;
            let mut loc = "held";
            let push = |gap: f64, l: &'static str, worst: &mut f64, loc: &mut &'static str| {
                if gap > *worst {
                    *worst = gap;
                    *loc = l;
                }
            };
            if is_vzero(&u) {
                push(nu.abs(), "norm of the zero vector", &mut worst, &mut loc);
            } else if !(nu > 0.0) {
                push(1.0, "positivity off the zero vector", &mut worst, &mut loc);
            }
            let homo = (norm.eval(&vscale(lambda, &u)) - lambda.abs() * nu).abs()
                / (1.0 + lambda.abs() * nu);
            push(homo, "absolute homogeneity", &mut worst, &mut loc);
            let tri = (norm.eval(&vadd(&u, &v)) - nu - nv) / (1.0 + nu + nv);
            push(tri, "triangle inequality", &mut worst, &mut loc);

            let mut inputs = BTreeMap::new();
            inputs.insert("u".into(), json!(u));
            inputs.insert("v".into(), json!(v));
            inputs.insert("lambda".into(), json!(lambda));
            TrialOutcome::from_gap(worst, TOL, loc, inputs)
        },
    )
}

/// Probabilistic norm: a total map from carrier vectors to ddfs. Every
/// family sends the zero vector to eps0.
#[derive(Debug, Clone)]
pub enum ProbNorm {
    /// nu_p = G(. / ||p||^alpha). alpha = 1 is the plain simple family.
    AlphaSimple {
        norm: NormDef,
        g: AnalyticDdf,
        alpha: f64,
    },
    /// nu_p = f for every p other than the zero vector.
    Equilateral { f: Ddf },
    /// nu_p is constant exp(-||p||) on the positive axis and 1 at infinity.
    ExpNorm { norm: NormDef },
    /// nu_p = (inner nu_p) m: argument re-parametrization by m.
    Transformed {
        inner: Box<ProbNorm>,
        m: MbFunction,
    },
}

/// nu_p = G(. / ||p||^alpha) for alpha > 0, alpha distinct from 1. The
/// plain alpha = 1 family is spelled `simple` and built by that constructor.
pub fn alpha_simple(norm: NormDef, g: AnalyticDdf, alpha: f64) -> Result<ProbNorm> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::Construction(format!(
            "alpha must be positive and finite, got {alpha}"
        )));
    }
    if alpha == 1.0 {
        return Err(Error::Construction(
            "alpha = 1 is the plain simple family; use simple()".into(),
        ));
    }
    check_generator_ddf(&g)?;
    Ok(ProbNorm::AlphaSimple { norm, g, alpha })
}

pub fn simple(norm: NormDef, g: AnalyticDdf) -> Result<ProbNorm> {
    check_generator_ddf(&g)?;
    Ok(ProbNorm::AlphaSimple { norm, g, alpha: 1.0 })
}

fn check_generator_ddf(g: &AnalyticDdf) -> Result<()> {
    if let AnalyticDdf::Step { a } = g {
        if *a == 0.0 || a.is_infinite() {
            return Err(Error::Construction(
                "the generating ddf must be neither eps0 nor the step at infinity".into(),
            ));
        }
    }
    Ok(())
}

/// nu_p = f for every nonzero p; f must itself differ from eps0, otherwise
/// the zero vector would not be recoverable from nu.
pub fn equilateral(f: Ddf) -> Result<ProbNorm> {
    if f.is_eps0() {
        return Err(Error::Construction(
            "an equilateral norm needs a ddf distinct from eps0".into(),
        ));
    }
    Ok(ProbNorm::Equilateral { f })
}

pub fn exp_norm(norm: NormDef) -> ProbNorm {
    ProbNorm::ExpNorm { norm }
}

pub fn transformed(inner: ProbNorm, m: MbFunction) -> ProbNorm {
    ProbNorm::Transformed {
        inner: Box::new(inner),
        m,
    }
}

impl ProbNorm {
    pub fn nu(&self, p: &[f64], grid: Grid) -> Ddf {
        match self {
            ProbNorm::AlphaSimple { norm, g, alpha } => {
                let r = norm.eval(p);
                if r == 0.0 {
                    return Ddf::eps0(grid);
                }
                let s = powx(r, *alpha);
                match *g {
                    AnalyticDdf::Step { a } => Ddf::eps(a * s, grid),
                    _ => Ddf::from_fn(grid, |x| g.eval(x / s), 1.0),
                }
            }
            ProbNorm::Equilateral { f } => {
                if is_vzero(p) {
                    Ddf::eps0(grid)
                } else {
                    f.resample(grid)
                }
            }
            ProbNorm::ExpNorm { norm } => {
                let h = (-norm.eval(p)).exp();
                let mut values = vec![h; grid.n + 1];
                values[0] = 0.0;
                Ddf::left_regularize(grid, values, 1.0)
            }
            ProbNorm::Transformed { inner, m } => {
                // Sampling the closed form keeps grid values exact.
                // Re-gridding the inner ddf instead would round m(x) up to
                // the next inner abscissa, and where m compresses that one
                // cell of error spans several outer cells.
                let at_inf = if m.b().is_finite() {
                    1.0
                } else {
                    inner.value_at_infinity(p)
                };
                Ddf::from_fn(grid, |x| self.nu_at(p, x), at_inf)
            }
        }
    }

    /// Value of nu_p at infinity, including any jump there.
    fn value_at_infinity(&self, p: &[f64]) -> f64 {
        match self {
            ProbNorm::AlphaSimple { .. } | ProbNorm::ExpNorm { .. } => 1.0,
            ProbNorm::Equilateral { f } => {
                if is_vzero(p) {
                    1.0
                } else {
                    f.at_inf()
                }
            }
            ProbNorm::Transformed { inner, m } => {
                if m.b().is_finite() {
                    1.0
                } else {
                    inner.value_at_infinity(p)
                }
            }
        }
    }

    /// Closed-form pointwise evaluation; agrees with the grid ddf at every
    /// grid abscissa.
    pub fn nu_at(&self, p: &[f64], t: f64) -> f64 {
        assert!(!t.is_nan() && t >= 0.0, "evaluated at invalid abscissa {t}");
        match self {
            ProbNorm::AlphaSimple { norm, g, alpha } => {
                let r = norm.eval(p);
                if r == 0.0 {
                    return if t > 0.0 { 1.0 } else { 0.0 };
                }
                if t == 0.0 {
                    return 0.0;
                }
                g.eval(t / powx(r, *alpha))
            }
            ProbNorm::Equilateral { f } => {
                if is_vzero(p) {
                    if t > 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    f.eval(t)
                }
            }
            ProbNorm::ExpNorm { norm } => {
                if t == 0.0 {
                    0.0
                } else if t.is_infinite() {
                    1.0
                } else {
                    (-norm.eval(p)).exp()
                }
            }
            ProbNorm::Transformed { inner, m } => {
                let b = m.b();
                if t > b {
                    1.0
                } else if b.is_finite() && t >= b {
                    inner.limit_value(p)
                } else {
                    inner.nu_at(p, m.m(t))
                }
            }
        }
    }

    /// Left limit of nu_p at infinity: the sup over finite arguments.
    pub fn limit_value(&self, p: &[f64]) -> f64 {
        match self {
            ProbNorm::AlphaSimple { .. } => 1.0,
            ProbNorm::Equilateral { f } => {
                if is_vzero(p) {
                    1.0
                } else {
                    f.values()[f.grid().n]
                }
            }
            ProbNorm::ExpNorm { norm } => {
                if is_vzero(p) {
                    1.0
                } else {
                    (-norm.eval(p)).exp()
                }
            }
            ProbNorm::Transformed { inner, m } => {
                if m.b().is_finite() {
                    1.0
                } else {
                    inner.limit_value(p)
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            ProbNorm::AlphaSimple { norm, g, alpha } => {
                if *alpha == 1.0 {
                    format!("simple({},{})", norm.name(), g.name())
                } else {
                    format!("alpha-simple({},{},alpha={alpha})", norm.name(), g.name())
                }
            }
            ProbNorm::Equilateral { .. } => "equilateral".into(),
            ProbNorm::ExpNorm { norm } => format!("exp-norm({})", norm.name()),
            ProbNorm::Transformed { inner, m } => {
                format!("m[{}]({})", m.name(), inner.name())
            }
        }
    }
}

/// The class a constructor claims for its output. The verifiers are the
/// arbiter; the claim only routes defaults and report text.
#[derive(Debug, Clone)]
pub enum SpaceClass {
    Pn,
    Ppn,
    Serstnev,
    Menger(TNorm),
}

impl SpaceClass {
    pub fn name(&self) -> String {
        match self {
            SpaceClass::Pn => "PN".into(),
            SpaceClass::Ppn => "PPN".into(),
            SpaceClass::Serstnev => "Serstnev".into(),
            SpaceClass::Menger(t) => format!("Menger({})", t.name()),
        }
    }
}

/// A concrete candidate space: carrier dimension, probabilistic norm, and
/// the two triangle functions.
#[derive(Debug, Clone)]
pub struct PnSpace {
    pub dim: usize,
    pub grid: Grid,
    pub norm: ProbNorm,
    pub tau: Trifn,
    pub tau_star: Trifn,
    pub class: SpaceClass,
    pub label: String,
}

impl PnSpace {
    pub fn new(
        dim: usize,
        grid: Grid,
        norm: ProbNorm,
        tau: Trifn,
        tau_star: Trifn,
        class: SpaceClass,
    ) -> Result<PnSpace> {
        if dim == 0 {
            return Err(Error::Construction(
                "carrier dimension must be at least 1".into(),
            ));
        }
        let label = format!("{}[d={dim}]", norm.name());
        Ok(PnSpace {
            dim,
            grid,
            norm,
            tau,
            tau_star,
            class,
            label,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> PnSpace {
        self.label = label.into();
        self
    }

    /// Simple space under the min sup-convolution and the min lift.
    pub fn simple_space(dim: usize, grid: Grid, norm: NormDef, g: AnalyticDdf) -> Result<PnSpace> {
        PnSpace::new(
            dim,
            grid,
            simple(norm, g)?,
            Trifn::SupConv(TNorm::Minimum),
            Trifn::Lift(TNorm::Minimum),
            SpaceClass::Serstnev,
        )
    }

    /// Alpha-simple space under the sup-convolution and the lift of the
    /// t-norm generated by its own ddf, the strongest pair that works.
    pub fn menger_alpha_space(
        dim: usize,
        grid: Grid,
        norm: NormDef,
        g: AnalyticDdf,
        alpha: f64,
    ) -> Result<PnSpace> {
        let t = TNorm::tg(g.clone(), alpha)?;
        PnSpace::new(
            dim,
            grid,
            alpha_simple(norm, g, alpha)?,
            Trifn::SupConv(t.clone()),
            Trifn::Lift(t.clone()),
            SpaceClass::Menger(t),
        )
    }

    /// Equilateral space under the min lift on both sides.
    pub fn equilateral_space(dim: usize, grid: Grid, f: Ddf) -> Result<PnSpace> {
        PnSpace::new(
            dim,
            grid,
            equilateral(f)?,
            Trifn::Lift(TNorm::Minimum),
            Trifn::Lift(TNorm::Minimum),
            SpaceClass::Pn,
        )
    }

    /// Constant-height family under the product lift on both sides.
    pub fn exp_pi_space(dim: usize, grid: Grid, norm: NormDef) -> Result<PnSpace> {
        PnSpace::new(
            dim,
            grid,
            exp_norm(norm),
            Trifn::Lift(TNorm::Product),
            Trifn::Lift(TNorm::Product),
            SpaceClass::Pn,
        )
    }

    /// Re-parametrizes the probabilistic norm by m, keeping the triangle
    /// functions. When tau is a sup-convolution the caller owes the
    /// superadditivity gate; lifts commute with every m unconditionally.
    pub fn transform(&self, m: &MbFunction) -> PnSpace {
        let mut out = self.clone();
        out.norm = transformed(self.norm.clone(), m.clone());
        out.label = format!("m[{}]({})", m.name(), self.label);
        out
    }
}

/// Anything the axiom campaigns can interrogate: concrete spaces here,
/// product constructions elsewhere.
pub trait Space: Sync {
    fn dim(&self) -> usize;
    fn grid(&self) -> Grid;
    fn name(&self) -> String;
    fn tau(&self) -> &Trifn;
    fn tau_star(&self) -> &Trifn;
    fn nu(&self, p: &[f64]) -> Ddf;

    /// Pointwise evaluation, overridden with a closed form where one exists.
    fn nu_at(&self, p: &[f64], t: f64) -> f64 {
        self.nu(p).eval(t)
    }

    /// Extra vertical tolerance the axiom margins must grant, e.g. the tail
    /// deficit of a truncated mixture.
    fn margin_bonus(&self) -> f64 {
        0.0
    }

    /// Horizontal slack in grid cells for the axiom comparisons. One cell
    /// absorbs the step bracket of the single kernel application inside each
    /// check; norms that are themselves sup-convolution outputs widen the
    /// bracket and override this.
    fn margin_cells(&self) -> usize {
        CELL_MARGIN
    }

    fn sample_vector(&self, rng: &mut dyn RngCore) -> Vec<f64> {
        random_vector(rng, self.dim())
    }
}

impl Space for PnSpace {
    fn dim(&self) -> usize {
        self.dim
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
        self.norm.nu(p, self.grid)
    }

    fn nu_at(&self, p: &[f64], t: f64) -> f64 {
        self.norm.nu_at(p, t)
    }
}

/// Vector pair classes biased toward the collinear configurations that
/// witness the known N3 failures.
fn random_pair(space: &dyn Space, rng: &mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>, &'static str) {
    let p = space.sample_vector(rng);
    let roll: f64 = rng.gen();
    if roll < 0.70 {
        let q = space.sample_vector(rng);
        (p, q, "independent")
    } else if roll < 0.80 {
        let q = p.clone();
        (p, q, "equal")
    } else if roll < 0.85 {
        let q = vneg(&p);
        (p, q, "opposite")
    } else if roll < 0.90 {
        let q = vzero(space.dim());
        (p, q, "one-zero")
    } else {
        let c = rng.gen_range(-2.0..=2.0);
        let q = vscale(c, &p);
        (p, q, "collinear")
    }
}

fn scalar_split(rng: &mut ChaCha8Rng) -> f64 {
    let roll: f64 = rng.gen();
    if roll < 0.05 {
        0.0
    } else if roll < 0.10 {
        1.0
    } else {
        rng.gen()
    }
}

/// Runs the per-axiom campaigns and merges them into one report. The parts
/// stay individually inspectable through `verify_axioms_parts`.
pub fn verify_axioms(space: &dyn Space, params: CheckParams) -> VerificationReport {
    let parts = verify_axioms_parts(space, params);
    VerificationReport::merge(
        &format!("axioms:{}", space.name()),
        &format!(
            "{} satisfies N1-N4 under tau={}, tau*={}",
            space.name(),
            space.tau().name(),
            space.tau_star().name()
        ),
        &parts,
    )
}

pub fn verify_axioms_parts(space: &dyn Space, params: CheckParams) -> Vec<VerificationReport> {
    vec![
        check_n1_zero(space, params.derive("N1-zero")),
        check_n1_distinct(space, params.derive("N1-distinct")),
        check_n2(space, params.derive("N2")),
        check_n3(space, params.derive("N3")),
        check_n4(space, params.derive("N4")),
        check_tau_order(space, params.derive("tau-order")),
    ]
}

fn check_n1_zero(space: &dyn Space, params: CheckParams) -> VerificationReport {
    let bonus = space.margin_bonus();
    run_campaign(
        &format!("{}:N1:zero", space.name()),
        "nu at the zero vector equals eps0, up to the declared tail deficit",
        params.with_trials(1),
        1,
        |_, _| {
            let theta = vzero(space.dim());
            let check = space
                .nu(&theta)
                .eq_within(&Ddf::eps0(space.grid()), space.margin_cells(), bonus + 1e-9);
            let mut inputs = BTreeMap::new();
            inputs.insert("p".into(), json!(theta));
            TrialOutcome::from_order_check(
                &check,
                format!("nu at the zero vector {}", describe_at(check.at)),
                inputs,
            )
        },
    )
}

fn check_n1_distinct(space: &dyn Space, params: CheckParams) -> VerificationReport {
    run_campaign(
        &format!("{}:N1:distinct", space.name()),
        "nu_p stays strictly below 1 somewhere for every sampled nonzero p",
        params,
        (params.trials / 4).max(1),
        |_, rng| {
            let p = space.sample_vector(rng);
            if is_vzero(&p) {
                return TrialOutcome::Rejected;
            }
            if distinct_from_eps0(space, &p) {
                TrialOutcome::held()
            } else {
                let mut inputs = BTreeMap::new();
                inputs.insert("p".into(), json!(p));
                TrialOutcome::Violated {
                    violation: 1.0,
                    location: "nu_p indistinguishable from eps0".into(),
                    inputs,
                }
            }
        },
    )
}

/// A ddf differs from eps0 iff it dips below 1 at some positive argument.
/// On the grid the first positive abscissa carries the minimum; steps that
/// fit inside the first cell are chased by halving t through the closed
/// form.
fn distinct_from_eps0(space: &dyn Space, p: &[f64]) -> bool {
    if space.nu(p).values()[1] < 1.0 - 1e-9 {
        return true;
    }
    let mut t = space.grid().step();
    for _ in 0..60 {
        t *= 0.5;
        if space.nu_at(p, t) < 1.0 - 1e-9 {
            return true;
        }
    }
    false
}

fn check_n2(space: &dyn Space, params: CheckParams) -> VerificationReport {
    run_campaign(
        &format!("{}:N2", space.name()),
        "nu_p and nu_(-p) coincide bit for bit",
        params,
        1,
        |_, rng| {
            let p = space.sample_vector(rng);
            let d = space.nu(&p).sup_distance(&space.nu(&vneg(&p)));
            let mut inputs = BTreeMap::new();
            inputs.insert("p".into(), json!(p));
            TrialOutcome::from_gap(d, 0.0, "nu_p vs nu_(-p)", inputs)
        },
    )
}

fn check_n3(space: &dyn Space, params: CheckParams) -> VerificationReport {
    let bonus = space.margin_bonus();
    run_campaign(
        &format!("{}:N3", space.name()),
        "nu_(p+q) >= tau(nu_p, nu_q) within one grid cell of horizontal and the standard vertical slack",
        params,
        1,
        |_, rng| {
            let (p, q, class) = random_pair(space, rng);
            let lhs = space.nu(&vadd(&p, &q));
            let rhs = space.tau().apply(&space.nu(&p), &space.nu(&q));
            let check = lhs.ge_within(&rhs, space.margin_cells(), VTOL + bonus);
            let mut inputs = BTreeMap::new();
            inputs.insert("p".into(), json!(p));
            inputs.insert("q".into(), json!(q));
            inputs.insert("class".into(), json!(class));
            TrialOutcome::from_order_check(
                &check,
                format!("N3 {}", describe_at(check.at)),
                inputs,
            )
        },
    )
}

fn check_n4(space: &dyn Space, params: CheckParams) -> VerificationReport {
    let bonus = space.margin_bonus();
    run_campaign(
        &format!("{}:N4", space.name()),
        "nu_p <= tau*(nu_(a p), nu_((1-a) p)) for scalar a in [0,1], within the standard margin",
        params,
        1,
        |_, rng| {
            let p = space.sample_vector(rng);
            let a = scalar_split(rng);
            let lhs = space
                .tau_star()
                .apply(&space.nu(&vscale(a, &p)), &space.nu(&vscale(1.0 - a, &p)));
            let check = lhs.ge_within(&space.nu(&p), space.margin_cells(), VTOL + bonus);
            let mut inputs = BTreeMap::new();
            inputs.insert("p".into(), json!(p));
            inputs.insert("a".into(), json!(a));
            TrialOutcome::from_order_check(
                &check,
                format!("N4 {}", describe_at(check.at)),
                inputs,
            )
        },
    )
}

fn check_tau_order(space: &dyn Space, params: CheckParams) -> VerificationReport {
    run_campaign(
        &format!("{}:tau-order", space.name()),
        "tau(F, G) <= tau*(F, G) pointwise on sampled ddf pairs",
        params,
        1,
        |_, rng| {
            let grid = space.grid();
            let df = random_ddf(rng, grid);
            let dg = random_ddf(rng, grid);
            let f = df.realize(grid);
            let g = dg.realize(grid);
            let check = space
                .tau()
                .apply(&f, &g)
                .le(&space.tau_star().apply(&f, &g), 1e-12);
            let mut inputs = BTreeMap::new();
            inputs.insert("F".into(), df.to_value());
            inputs.insert("G".into(), dg.to_value());
            TrialOutcome::from_order_check(
                &check,
                format!("tau vs tau* {}", describe_at(check.at)),
                inputs,
            )
        },
    )
}

/// Grid comparison of nu_(lambda p) against nu_p with the argument shrunk
/// by |lambda|. Points whose scaled argument leaves the grid are masked
/// out; the rest must sit inside a band of one cell below and
/// margin_cells + ceil(|lambda| (margin_cells + 1) / 2) cells above. The
/// ceil evaluation convention introduces the fixed part; the source's own
/// value bracket, (margin_cells - 1) / 2 cells wide, is stretched by the
/// scale change and contributes the lambda-proportional part.
pub fn scaling_band_check(space: &dyn Space, p: &[f64], lambda: f64, vtol: f64) -> OrderCheck {
    assert!(lambda != 0.0 && lambda.is_finite());
    let grid = space.grid();
    let lam = lambda.abs();
    let lhs = space.nu(&vscale(lambda, p));
    let rhs_src = space.nu(p);
    let n = grid.n;
    let m = space.margin_cells();
    let stretched = (lam * (m as f64 + 1.0) / 2.0).ceil() as usize;
    let slack = m + stretched.min(n);
    let mut holds = true;
    let mut worst = 0.0f64;
    let mut at = None;
    for k in 0..=n {
        let u = grid.abscissa(k) / lam;
        if u > grid.x_max * (1.0 + 1e-12) {
            break;
        }
        let r = rhs_src.eval(u);
        let lo = lhs.values()[k.saturating_sub(1)] - vtol;
        let hi = if k + slack > n {
            lhs.at_inf()
        } else {
            lhs.values()[k + slack]
        } + vtol;
        let gap = (lo - r).max(r - hi);
        if gap > worst {
            worst = gap;
            at = Some(grid.abscissa(k));
        }
        if gap > 0.0 {
            holds = false;
        }
    }
    OrderCheck {
        holds,
        max_violation: worst.max(0.0),
        at,
    }
}

/// The two extra identities of a Serstnev space: the convexity split is an
/// equality under the min sup-convolution, and scaling a vector by lambda
/// stretches its ddf argument by |lambda|.
pub fn check_serstnev(space: &dyn Space, params: CheckParams) -> VerificationReport {
    let bonus = space.margin_bonus();
    let tau_m = Trifn::SupConv(TNorm::Minimum);
    let eq = run_campaign(
        &format!("{}:serstnev:n4-equality", space.name()),
        "tau_M(nu_(a p), nu_((1-a) p)) equals nu_p within the standard margin",
        params.derive("serstnev-eq"),
        1,
        |_, rng| {
            let p = space.sample_vector(rng);
            let a = scalar_split(rng);
            let mixed = tau_m.apply(&space.nu(&vscale(a, &p)), &space.nu(&vscale(1.0 - a, &p)));
            let check = mixed.eq_within(&space.nu(&p), space.margin_cells(), VTOL + bonus);
            let mut inputs = BTreeMap::new();
            inputs.insert("p".into(), json!(p));
            inputs.insert("a".into(), json!(a));
            TrialOutcome::from_order_check(
                &check,
                format!("split equality {}", describe_at(check.at)),
                inputs,
            )
        },
    );
    let scaling = run_campaign(
        &format!("{}:serstnev:scaling", space.name()),
        "nu_(lambda p)(t) equals nu_p(t / |lambda|) on the masked grid band",
        params.derive("serstnev-scaling"),
        1,
        |_, rng| {
            let p = space.sample_vector(rng);
            let lambda: f64 = if rng.gen::<f64>() < 0.05 {
                -1.0
            } else {
                (if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    * 10f64.powf(rng.gen_range(-3.0..3.0))
            };
            let check = scaling_band_check(space, &p, lambda, VTOL + bonus);
            let mut inputs = BTreeMap::new();
            inputs.insert("p".into(), json!(p));
            inputs.insert("lambda".into(), json!(lambda));
            TrialOutcome::from_order_check(
                &check,
                format!("scaling law {}", describe_at(check.at)),
                inputs,
            )
        },
    );
    VerificationReport::merge(
        &format!("serstnev:{}", space.name()),
        &format!(
            "{} satisfies the split equality and the scaling law",
            space.name()
        ),
        &[eq, scaling],
    )
}

/// The generator-level inequality equivalent to the alpha-simple space
/// being Menger under the strict t-norm with additive generator f:
/// ||p+q||^alpha h(s+t) <= ||p||^alpha h(s) + ||q||^alpha h(t), where h is
/// the inverse of f composed with G. Sampled over s, t in ]0, inf[ and
/// nonzero p, q with a nonzero sum.
pub fn menger_alpha_condition(
    norm: &NormDef,
    g: &AnalyticDdf,
    alpha: f64,
    gen: &Generator,
    dim: usize,
    params: CheckParams,
) -> Result<VerificationReport> {
    if !(alpha > 1.0) {
        return Err(Error::Domain(format!(
            "the generator condition needs alpha > 1, got {alpha}"
        )));
    }
    if !g.is_strictly_increasing() {
        return Err(Error::Domain(
            "the generator condition needs a strictly increasing ddf".into(),
        ));
    }
    let inv = move |u: f64| -> f64 { g.inverse(gen.f_inv(u)).unwrap_or(f64::INFINITY) };
    let claim = format!(
        "||p+q||^{alpha} h(s+t) <= ||p||^{alpha} h(s) + ||q||^{alpha} h(t) with h the inverse of the generator composed with {}, tolerance 1e-9",
        g.name()
    );
    Ok(run_campaign(
        &format!("menger-condition:{}:alpha={alpha}", g.name()),
        &claim,
        params,
        (params.trials / 4).max(1),
        move |_, rng| {
            let mut p = random_vector(rng, dim);
            let mut q = random_vector(rng, dim);
            let mut ok = false;
            for _ in 0..32 {
                if !is_vzero(&p) && !is_vzero(&q) && !is_vzero(&vadd(&p, &q)) {
                    ok = true;
                    break;
                }
                p = random_vector(rng, dim);
                q = random_vector(rng, dim);
            }
            if !ok {
                return TrialOutcome::Rejected;
            }
            let s = 10f64.powf(rng.gen_range(-6.0..2.0));
            let t = 10f64.powf(rng.gen_range(-6.0..2.0));
            let lhs = powx(norm.eval(&vadd(&p, &q)), alpha) * inv(s + t);
            let rhs = powx(norm.eval(&p), alpha) * inv(s) + powx(norm.eval(&q), alpha) * inv(t);
            if !lhs.is_finite() || !rhs.is_finite() {
                return TrialOutcome::Rejected;
            }
            let viol = ((lhs - rhs) / (1.0 + rhs.abs())).max(0.0);
            let mut inputs = BTreeMap::new();
            inputs.insert("p".into(), json!(p));
            inputs.insert("q".into(), json!(q));
            inputs.insert("s".into(), json!(s));
            inputs.insert("t".into(), json!(t));
            TrialOutcome::from_gap(viol, 1e-9, format!("generator inequality at s={s} t={t}"), inputs)
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn grid() -> Grid {
        Grid::new(256, 16.0).unwrap()
    }

    fn ratio1() -> AnalyticDdf {
        AnalyticDdf::ratio(1.0).unwrap()
    }

    #[test]
    fn norm_values_and_the_three_four_five_chain() {
        assert_eq!(NormDef::L1.eval(&[3.0, -4.0]), 7.0);
        assert_eq!(NormDef::L2.eval(&[3.0, -4.0]), 5.0);
        assert_eq!(NormDef::LInf.eval(&[3.0, -4.0]), 4.0);
        let beta = NormDef::beta(2.0, 2, NormDef::L2, NormDef::L2).unwrap();
        assert_eq!(beta.eval(&[3.0, 0.0, 0.0, 4.0]), 5.0);
        let max = NormDef::max_combine(1, NormDef::L2, NormDef::L2);
        assert_eq!(max.eval(&[3.0, -4.0]), 4.0);
        let sum = NormDef::sum_combine(1, NormDef::L2, NormDef::L2);
        assert_eq!(sum.eval(&[3.0, -4.0]), 7.0);
        assert_eq!(NormDef::parse("l2").unwrap(), NormDef::L2);
        assert!(NormDef::parse("l7").is_err());
    }

    #[test]
    fn atomic_and_combined_norms_pass_the_axiom_campaign() {
        let params = CheckParams::new(200, 9);
        for (norm, dim) in [
            (NormDef::L1, 2),
            (NormDef::L2, 3),
            (NormDef::LInf, 4),
            (NormDef::beta(2.0, 1, NormDef::L2, NormDef::L2).unwrap(), 2),
            (NormDef::max_combine(1, NormDef::L1, NormDef::L2), 3),
            (NormDef::sum_combine(2, NormDef::L2, NormDef::LInf), 3),
        ] {
            let report = check_norm_axioms(&norm, dim, params);
            assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        }
    }

    #[test]
    fn small_beta_combine_fails_the_triangle_inequality() {
        let norm = NormDef::beta(0.5, 1, NormDef::L2, NormDef::L2).unwrap();
        assert_eq!(norm.eval(&[1.0, 1.0]), 4.0);
        assert_eq!(norm.eval(&[1.0, 0.0]), 1.0);
        let report = check_norm_axioms(&norm, 2, CheckParams::new(200, 9));
        assert_eq!(report.verdict, Verdict::Fail);
        let w = report.witness.expect("triangle witness");
        assert!(w.violation > 0.1, "violation {}", w.violation);
        assert_eq!(w.location, "triangle inequality");
    }

    #[test]
    fn alpha_simple_hand_values() {
        let norm = alpha_simple(NormDef::L2, ratio1(), 2.0).unwrap();
        let f = norm.nu(&[0.0, 2.0], grid());
        assert_eq!(f.eval(1.0), 0.2);
        assert_eq!(norm.nu_at(&[0.0, 2.0], 1.0), 0.2);
        assert!(norm.nu(&[0.0; 2], grid()).is_eps0());
        assert_eq!(
            f.sup_distance(&norm.nu(&[0.0, -2.0], grid())),
            0.0,
            "negation must not move the ddf"
        );
    }

    #[test]
    fn alpha_simple_rejects_bad_parameters() {
        assert!(alpha_simple(NormDef::L2, ratio1(), 1.0).is_err());
        assert!(alpha_simple(NormDef::L2, ratio1(), 0.0).is_err());
        assert!(alpha_simple(NormDef::L2, AnalyticDdf::Step { a: 0.0 }, 2.0).is_err());
        assert!(simple(NormDef::L2, AnalyticDdf::Step { a: f64::INFINITY }).is_err());
    }

    #[test]
    fn simple_family_is_the_alpha_one_case() {
        let norm = simple(NormDef::L2, ratio1()).unwrap();
        assert_eq!(norm.nu(&[3.0, 0.0], grid()).eval(3.0), 0.5);
        assert_eq!(norm.name(), "simple(l2,ratio:1)");
    }

    #[test]
    fn equilateral_returns_the_same_ddf_for_every_nonzero_vector() {
        let f = Ddf::eps(2.0, grid());
        let norm = equilateral(f.clone()).unwrap();
        assert_eq!(norm.nu(&[1.0, 1.0], grid()), f);
        assert_eq!(norm.nu(&[-0.3, 7.0], grid()), f);
        assert!(norm.nu(&[0.0, 0.0], grid()).is_eps0());
        assert!(equilateral(Ddf::eps0(grid())).is_err());
    }

    #[test]
    fn exp_norm_is_the_constant_height_family() {
        let norm = exp_norm(NormDef::L2);
        let f = norm.nu(&[1.0, 0.0], grid());
        assert_eq!(f.eval(0.5), (-1.0f64).exp());
        assert_eq!(f.eval(12.0), (-1.0f64).exp());
        assert_eq!(f.at_inf(), 1.0);
        assert!(norm.nu(&[0.0, 0.0], grid()).is_eps0());
        assert_eq!(norm.nu_at(&[1.0, 0.0], 3.0), (-1.0f64).exp());
    }

    #[test]
    fn closed_form_and_grid_agree_at_grid_points() {
        let norm = alpha_simple(NormDef::L2, ratio1(), 2.0).unwrap();
        let g = grid();
        let p = [0.7, -1.3];
        let f = norm.nu(&p, g);
        for k in 0..=g.n {
            assert_eq!(f.values()[k], norm.nu_at(&p, g.abscissa(k)), "k={k}");
        }
    }

    #[test]
    fn transformed_norm_composes_the_closed_forms() {
        let inner = simple(NormDef::L2, ratio1()).unwrap();
        let m = MbFunction::blowup(2.0).unwrap();
        let norm = transformed(inner.clone(), m.clone());
        let p = [1.0, 0.0];
        for t in [0.25, 0.5, 1.0, 1.9] {
            assert_eq!(norm.nu_at(&p, t), inner.nu_at(&p, m.m(t)));
        }
        assert_eq!(norm.nu_at(&p, 2.5), 1.0);
        assert_eq!(norm.nu_at(&p, 2.0), 1.0, "limit through the pole is 1");
    }

    #[test]
    fn menger_alpha_space_passes_all_axioms() {
        let space =
            PnSpace::menger_alpha_space(2, grid(), NormDef::L2, ratio1(), 2.0).unwrap();
        assert_eq!(space.class.name(), "Menger(TG:ratio:1:2)");
        let parts = verify_axioms_parts(&space, CheckParams::new(200, 11));
        for part in &parts {
            assert_eq!(part.verdict, Verdict::Pass, "{part:?}");
        }
    }

    #[test]
    fn simple_space_is_serstnev() {
        let space = PnSpace::simple_space(2, grid(), NormDef::L2, ratio1()).unwrap();
        let report = verify_axioms(&space, CheckParams::new(200, 12));
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        let serstnev = check_serstnev(&space, CheckParams::new(200, 12));
        assert_eq!(serstnev.verdict, Verdict::Pass, "{serstnev:?}");
    }

    #[test]
    fn equilateral_and_exp_spaces_pass_their_axioms() {
        let eq = PnSpace::equilateral_space(2, grid(), Ddf::plateau(grid(), 0.6)).unwrap();
        let report = verify_axioms(&eq, CheckParams::new(150, 13));
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        let ex = PnSpace::exp_pi_space(3, grid(), NormDef::L2).unwrap();
        let report = verify_axioms(&ex, CheckParams::new(150, 13));
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
    }

    #[test]
    fn alpha_two_space_under_the_min_convolution_fails_n3() {
        let space = PnSpace::new(
            2,
            grid(),
            alpha_simple(NormDef::L2, ratio1(), 2.0).unwrap(),
            Trifn::SupConv(TNorm::Minimum),
            Trifn::Lift(TNorm::Minimum),
            SpaceClass::Ppn,
        )
        .unwrap();

        // Hand values at t = 1 with p = q = e1: doubling the vector divides
        // the argument by 4, while the min convolution only divides by 2.
        let p = [1.0, 0.0];
        let doubled = space.nu(&vscale(2.0, &p));
        assert!((doubled.eval(1.0) - 0.2).abs() < 1e-12);
        let folded = space.tau().apply(&space.nu(&p), &space.nu(&p));
        assert!((folded.eval(1.0) - 1.0 / 3.0).abs() < 1e-12);

        let parts = verify_axioms_parts(&space, CheckParams::new(300, 14));
        assert_eq!(parts[3].verdict, Verdict::Fail, "N3 must fail: {:?}", parts[3]);
        let w = parts[3].witness.as_ref().expect("collinear witness");
        assert!(w.violation > 0.1, "violation {}", w.violation);
        assert_eq!(verify_axioms(&space, CheckParams::new(300, 14)).verdict, Verdict::Fail);

        let serstnev = check_serstnev(&space, CheckParams::new(300, 14));
        assert_eq!(serstnev.verdict, Verdict::Fail, "{serstnev:?}");
    }

    #[test]
    fn mismatched_triangle_pair_is_caught_by_the_order_probe() {
        let space = PnSpace::new(
            2,
            grid(),
            simple(NormDef::L2, ratio1()).unwrap(),
            Trifn::Lift(TNorm::Minimum),
            Trifn::SupConv(TNorm::Lukasiewicz),
            SpaceClass::Pn,
        )
        .unwrap();
        let parts = verify_axioms_parts(&space, CheckParams::new(200, 15));
        assert_eq!(parts[5].verdict, Verdict::Fail, "{:?}", parts[5]);
    }

    #[test]
    fn generator_condition_holds_for_the_matched_tnorm() {
        let g = ratio1();
        let t = TNorm::tg(g.clone(), 2.0).unwrap();
        let gen = t.additive_generator().expect("strict t-norm");
        // For this g and alpha the composed inverse is u -> 1/u.
        let inv = g.inverse(gen.f_inv(2.0)).unwrap();
        assert!((inv - 0.5).abs() < 1e-12, "{inv}");
        let report =
            menger_alpha_condition(&NormDef::L2, &g, 2.0, &gen, 2, CheckParams::new(300, 16))
                .unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{report:?}");
        assert!(menger_alpha_condition(
            &NormDef::L2,
            &g,
            1.0,
            &gen,
            2,
            CheckParams::new(10, 16)
        )
        .is_err());
    }

    #[test]
    fn scaling_band_check_accepts_true_scaling_and_rejects_the_alpha_two_family() {
        let good = PnSpace::simple_space(2, grid(), NormDef::L2, ratio1()).unwrap();
        let p = [1.0, 0.5];
        for lambda in [0.3, 1.0, 2.0, -1.0, 17.0] {
            let check = scaling_band_check(&good, &p, lambda, VTOL);
            assert!(check.holds, "lambda={lambda}: {check:?}");
        }
        let bad = PnSpace::new(
            2,
            grid(),
            alpha_simple(NormDef::L2, ratio1(), 2.0).unwrap(),
            Trifn::SupConv(TNorm::Minimum),
            Trifn::Lift(TNorm::Minimum),
            SpaceClass::Ppn,
        )
        .unwrap();
        let check = scaling_band_check(&bad, &[1.0, 0.0], 2.0, VTOL);
        assert!(!check.holds && check.max_violation > 0.05, "{check:?}");
    }
}
