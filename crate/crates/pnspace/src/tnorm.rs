//! Triangular norms and conorms on [0, 1], with additive generators for the
//! strict kinds and randomized axiom campaigns.

use std::collections::BTreeMap;

use rand::Rng;
use serde_json::json;

use crate::ddf::AnalyticDdf;
use crate::error::{Error, Result};
use crate::report::{run_campaign, CheckParams, TrialOutcome, VerificationReport};

/// Lattice resolution for user-table norms; values are stored on the
/// (TABLE_N+1)^2 nodes of a uniform grid over [0,1]^2.
const TABLE_N: usize = 256;

/// Arithmetic tolerance for the closed-form kinds.
pub const TNORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum TNorm {
    /// min(x, y), the pointwise largest t-norm.
    Minimum,
    /// x * y.
    Product,
    /// max(x + y - 1, 0).
    Lukasiewicz,
    /// Strict parametric family built from an invertible distribution G and
    /// an exponent alpha > 1:
    /// T(x, y) = G([G^-1(x)^(1/(1-alpha)) + G^-1(y)^(1/(1-alpha))]^(1-alpha)).
    TG { g: AnalyticDdf, alpha: f64 },
    /// User-supplied values on a lattice, evaluated bilinearly. Axiom checks
    /// on this kind only claim lattice-level validity.
    Table(TNormTable),
}

impl TNorm {
    /// Builds the strict parametric kind. The distribution must be invertible
    /// and the exponent must exceed 1, otherwise the formula degenerates.
    pub fn tg(g: AnalyticDdf, alpha: f64) -> Result<TNorm> {
        if !g.is_strictly_increasing() {
            return Err(Error::Construction(format!(
                "parametric t-norm needs an invertible distribution, got {}",
                g.name()
            )));
        }
        if !(alpha.is_finite() && alpha > 1.0) {
            return Err(Error::Construction(format!(
                "parametric t-norm exponent must exceed 1, got {alpha}"
            )));
        }
        Ok(TNorm::TG { g, alpha })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&x), "t-norm argument {x} outside [0,1]");
        debug_assert!((0.0..=1.0).contains(&y), "t-norm argument {y} outside [0,1]");
        match self {
            TNorm::Minimum => x.min(y),
            TNorm::Product => x * y,
            TNorm::Lukasiewicz => {
                // At a 1 argument the sum formula picks up the rounding of
                // fl(x + 1) - 1; the identity axiom must hold bit-exactly.
                if x == 1.0 {
                    y
                } else if y == 1.0 {
                    x
                } else {
                    (x + y - 1.0).max(0.0)
                }
            }
            TNorm::TG { g, alpha } => {
                // Boundary values by the t-norm axioms; the generator formula
                // reproduces them only as limits.
                if x == 0.0 || y == 0.0 {
                    return 0.0;
                }
                if x == 1.0 {
                    return y;
                }
                if y == 1.0 {
                    return x;
                }
                let gen = Generator::for_tg(g.clone(), *alpha);
                gen.f_inv(gen.f(x) + gen.f(y))
            }
            TNorm::Table(t) => t.eval(x, y),
        }
    }

    /// Range-checked evaluation for untrusted inputs.
    pub fn try_eval(&self, x: f64, y: f64) -> Result<f64> {
        for v in [x, y] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("t-norm argument {v} outside [0, 1]")));
            }
        }
        Ok(self.eval(x, y))
    }

    /// Decreasing additive generator, present for the strict kinds only.
    pub fn additive_generator(&self) -> Option<Generator> {
        match self {
            TNorm::Product => Some(Generator::neg_log()),
            TNorm::TG { g, alpha } => Some(Generator::for_tg(g.clone(), *alpha)),
            _ => None,
        }
    }

    pub fn dual(&self) -> TConorm {
        TConorm::DualOf(Box::new(self.clone()))
    }

    /// Config-facing name: "M" | "Pi" | "W" | "TG:<dist>:<alpha>".
    pub fn name(&self) -> String {
        match self {
            TNorm::Minimum => "M".into(),
            TNorm::Product => "Pi".into(),
            TNorm::Lukasiewicz => "W".into(),
            TNorm::TG { g, alpha } => format!("TG:{}:{alpha}", g.name()),
            TNorm::Table(t) => format!("table:{}", t.name),
        }
    }

    /// Inverse of [`TNorm::name`] for the non-table kinds.
    pub fn parse(s: &str) -> Result<TNorm> {
        match s {
            "M" => Ok(TNorm::Minimum),
            "Pi" => Ok(TNorm::Product),
            "W" => Ok(TNorm::Lukasiewicz),
            _ => {
                if let Some(rest) = s.strip_prefix("TG:") {
                    let (dist, alpha) = rest
                        .rsplit_once(':')
                        .ok_or_else(|| Error::UnknownName(format!("t-norm '{s}'")))?;
                    let alpha: f64 = alpha
                        .parse()
                        .map_err(|_| Error::Config(format!("bad exponent in t-norm '{s}'")))?;
                    TNorm::tg(AnalyticDdf::parse(dist)?, alpha)
                } else {
                    Err(Error::UnknownName(format!("t-norm '{s}'")))
                }
            }
        }
    }

    /// Axiom tolerance: closed-form kinds are exact to rounding; a bilinear
    /// table is only trusted to one lattice step.
    pub fn axiom_tol(&self) -> f64 {
        match self {
            TNorm::Table(t) => 1.0 / t.n as f64,
            _ => TNORM_TOL,
        }
    }

    /// Snaps a sample to the nearest admissible evaluation point. Table
    /// axioms are claimed on lattice nodes only.
    fn admissible(&self, x: f64) -> f64 {
        match self {
            TNorm::Table(t) => (x * t.n as f64).round() / t.n as f64,
            _ => x,
        }
    }
}

/// Decreasing bijection f: [0,1] -> [0,inf] with closed-form inverse; the
/// t-norm it generates is T(x,y) = f_inv(f(x) + f(y)).
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    kind: GeneratorKind,
}

#[derive(Debug, Clone, PartialEq)]
enum GeneratorKind {
    /// f(x) = -ln x, generating the product norm.
    NegLog,
    /// f(x) = [G^-1(x)]^(1/(1-alpha)); inverse f_inv(t) = G(t^(1-alpha)).
    Tg { g: AnalyticDdf, alpha: f64 },
}

impl Generator {
    fn neg_log() -> Generator {
        Generator {
            kind: GeneratorKind::NegLog,
        }
    }

    fn for_tg(g: AnalyticDdf, alpha: f64) -> Generator {
        Generator {
            kind: GeneratorKind::Tg { g, alpha },
        }
    }

    pub fn f(&self, x: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&x));
        match &self.kind {
            GeneratorKind::NegLog => -x.ln(),
            GeneratorKind::Tg { g, alpha } => {
                if x == 0.0 {
                    return f64::INFINITY;
                }
                if x == 1.0 {
                    return 0.0;
                }
                let u = g.inverse(x).expect("generator distribution is invertible");
                u.powf(1.0 / (1.0 - alpha))
            }
        }
    }

    pub fn f_inv(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        match &self.kind {
            GeneratorKind::NegLog => (-t).exp(),
            GeneratorKind::Tg { g, alpha } => {
                if t == 0.0 {
                    return 1.0;
                }
                g.eval(t.powf(1.0 - alpha))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TConorm {
    /// max(x, y).
    Maximum,
    /// x + y - xy.
    ProbabilisticSum,
    /// min(x + y, 1).
    BoundedSum,
    /// 1 - T(1-x, 1-y).
    DualOf(Box<TNorm>),
}

impl TConorm {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&x), "conorm argument {x} outside [0,1]");
        debug_assert!((0.0..=1.0).contains(&y), "conorm argument {y} outside [0,1]");
        match self {
            TConorm::Maximum => x.max(y),
            TConorm::ProbabilisticSum => x + y - x * y,
            TConorm::BoundedSum => (x + y).min(1.0),
            TConorm::DualOf(t) => 1.0 - t.eval(1.0 - x, 1.0 - y),
        }
    }

    pub fn try_eval(&self, x: f64, y: f64) -> Result<f64> {
        for v in [x, y] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("conorm argument {v} outside [0, 1]")));
            }
        }
        Ok(self.eval(x, y))
    }

    /// Config-facing name: "Mstar" | "Pistar" | "Wstar" | "dual:<t-norm>".
    pub fn name(&self) -> String {
        match self {
            TConorm::Maximum => "Mstar".into(),
            TConorm::ProbabilisticSum => "Pistar".into(),
            TConorm::BoundedSum => "Wstar".into(),
            TConorm::DualOf(t) => format!("dual:{}", t.name()),
        }
    }

    pub fn parse(s: &str) -> Result<TConorm> {
        match s {
            "Mstar" => Ok(TConorm::Maximum),
            "Pistar" => Ok(TConorm::ProbabilisticSum),
            "Wstar" => Ok(TConorm::BoundedSum),
            _ => {
                if let Some(rest) = s.strip_prefix("dual:") {
                    Ok(TConorm::DualOf(Box::new(TNorm::parse(rest)?)))
                } else {
                    Err(Error::UnknownName(format!("conorm '{s}'")))
                }
            }
        }
    }
}

/// Values of a binary operation on the nodes of a uniform lattice over
/// [0,1]^2, evaluated bilinearly in between.
#[derive(Debug, Clone, PartialEq)]
pub struct TNormTable {
    name: String,
    n: usize,
    /// Row-major, (n+1) * (n+1); entry (i, j) holds the value at (i/n, j/n).
    values: Vec<f64>,
}

impl TNormTable {
    pub fn from_fn(name: &str, f: impl Fn(f64, f64) -> f64) -> TNormTable {
        let n = TABLE_N;
        let mut values = Vec::with_capacity((n + 1) * (n + 1));
        for i in 0..=n {
            for j in 0..=n {
                let v = f(i as f64 / n as f64, j as f64 / n as f64);
                assert!(
                    (0.0..=1.0).contains(&v),
                    "table value {v} at node ({i}, {j}) outside [0, 1]"
                );
                values.push(v);
            }
        }
        TNormTable {
            name: name.into(),
            n,
            values,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn node(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.n + 1) + j]
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let n = self.n as f64;
        let i = ((x * n) as usize).min(self.n - 1);
        let j = ((y * n) as usize).min(self.n - 1);
        let u = x * n - i as f64;
        let v = y * n - j as f64;
        let a = self.node(i, j);
        let b = self.node(i + 1, j);
        let c = self.node(i, j + 1);
        let d = self.node(i + 1, j + 1);
        (1.0 - u) * (1.0 - v) * a + u * (1.0 - v) * b + (1.0 - u) * v * c + u * v * d
    }
}

/// Randomized check of the t-norm axioms: commutativity, associativity,
/// monotonicity in each slot, identity at 1, and the consequent upper bound
/// T(x, y) <= min(x, y).
pub fn check_tnorm_axioms(t: &TNorm, params: CheckParams) -> VerificationReport {
    let tol = t.axiom_tol();
    let claim = format!(
        "{} is commutative, associative, nondecreasing, has identity 1, and never exceeds min, on sampled points to {tol:.0e}",
        t.name()
    );
    run_campaign(
        &format!("tnorm-axioms:{}", t.name()),
        &claim,
        params,
        1,
        |_, rng| {
            let x = t.admissible(rng.gen());
            let y = t.admissible(rng.gen());
            let z = t.admissible(rng.gen());
            let w = t.admissible(rng.gen());
            let (lo, hi) = (x.min(w), x.max(w));

            let gaps = [
                ("commutativity", (t.eval(x, y) - t.eval(y, x)).abs()),
                (
                    "associativity",
                    (t.eval(t.eval(x, y), z) - t.eval(x, t.eval(y, z))).abs(),
                ),
                ("identity-at-1", (t.eval(x, 1.0) - x).abs()),
                ("monotonicity", t.eval(lo, y) - t.eval(hi, y)),
                ("bounded-by-min", t.eval(x, y) - x.min(y)),
            ];
            let (axiom, worst) = gaps
                .into_iter()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            let inputs = BTreeMap::from([
                ("tnorm".to_string(), json!(t.name())),
                ("x".to_string(), json!(x)),
                ("y".to_string(), json!(y)),
                ("z".to_string(), json!(z)),
                ("w".to_string(), json!(w)),
            ]);
            TrialOutcome::from_gap(worst, tol, format!("{axiom} at x={x}, y={y}, z={z}"), inputs)
        },
    )
}

/// Randomized check of the dyadic mixture bounds for W and its conorm: for
/// sequences a, b in [0,1]^K extended by zeros,
///   W(sum a_i/2^i, sum b_i/2^i)  <=  sum W(a_i, b_i)/2^i, and
///   W*(sum a_i/2^i, sum b_i/2^i) >=  sum W*(a_i, b_i)/2^i.
pub fn check_w_mixture_bounds(prefix_len: usize, params: CheckParams) -> VerificationReport {
    assert!(prefix_len >= 1);
    let w = TNorm::Lukasiewicz;
    let ws = TConorm::BoundedSum;
    let claim = format!(
        "for [0,1]-sequences with support length {prefix_len}, W of the dyadic-weighted sums is at most the dyadic-weighted sum of W values, and the bounded-sum conorm satisfies the reverse bound"
    );
    run_campaign(
        "w-mixture-bounds",
        &claim,
        params,
        1,
        move |_, rng| {
            let a: Vec<f64> = (0..prefix_len).map(|_| rng.gen()).collect();
            let b: Vec<f64> = (0..prefix_len).map(|_| rng.gen()).collect();
            let mut sum_a = 0.0;
            let mut sum_b = 0.0;
            let mut rhs_w = 0.0;
            let mut rhs_ws = 0.0;
            for i in 0..prefix_len {
                let weight = 0.5f64.powi(i as i32 + 1);
                sum_a += weight * a[i];
                sum_b += weight * b[i];
                rhs_w += weight * w.eval(a[i], b[i]);
                rhs_ws += weight * ws.eval(a[i], b[i]);
            }
            let gap_w = w.eval(sum_a, sum_b) - rhs_w;
            let gap_ws = rhs_ws - ws.eval(sum_a, sum_b);
            let (side, worst) = if gap_w >= gap_ws {
                ("W-mixture-bound", gap_w)
            } else {
                ("W*-mixture-bound", gap_ws)
            };
            let inputs = BTreeMap::from([
                ("a".to_string(), json!(a)),
                ("b".to_string(), json!(b)),
            ]);
            TrialOutcome::from_gap(worst, TNORM_TOL, side, inputs)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn closed_form_values() {
        close(TNorm::Lukasiewicz.eval(0.7, 0.5), 0.2, 1e-12);
        assert_eq!(TNorm::Product.eval(0.5, 0.5), 0.25);
        assert_eq!(TNorm::Minimum.eval(0.3, 1.0), 0.3);
        close(
            TNorm::Lukasiewicz.eval(15.0 / 16.0, 15.0 / 16.0),
            7.0 / 8.0,
            1e-15,
        );
    }

    #[test]
    fn conorm_values() {
        assert_eq!(TConorm::BoundedSum.eval(0.7, 0.5), 1.0);
        assert_eq!(TConorm::BoundedSum.eval(0.2, 0.3), 0.5);
        let dual_min = TNorm::Minimum.dual();
        assert_eq!(dual_min.eval(0.4, 0.0), 0.4);
        close(dual_min.eval(0.4, 0.7), 0.7, 1e-15);
        close(TConorm::ProbabilisticSum.eval(0.5, 0.5), 0.75, 1e-15);
    }

    #[test]
    fn duality_is_an_involution() {
        let t = TNorm::Product;
        let s = t.dual();
        for (x, y) in [(0.1, 0.9), (0.5, 0.5), (0.33, 0.77), (0.0, 1.0)] {
            close(1.0 - s.eval(1.0 - x, 1.0 - y), t.eval(x, y), 1e-15);
        }
    }

    #[test]
    fn parametric_norm_hand_value() {
        // G(x) = x/(x+1), alpha = 2: both generator values at 0.5 equal 1,
        // the combined argument is 1/2, and G(1/2) = 1/3.
        let t = TNorm::tg(AnalyticDdf::ratio(1.0).unwrap(), 2.0).unwrap();
        close(t.eval(0.5, 0.5), 1.0 / 3.0, 1e-12);
        assert_eq!(t.eval(0.25, 1.0), 0.25);
        assert_eq!(t.eval(0.0, 0.8), 0.0);
    }

    #[test]
    fn parametric_norm_rejects_degenerate_parameters() {
        assert!(TNorm::tg(AnalyticDdf::ratio(1.0).unwrap(), 1.0).is_err());
        assert!(TNorm::tg(AnalyticDdf::Step { a: 1.0 }, 2.0).is_err());
    }

    #[test]
    fn generator_reproduces_the_direct_formula() {
        for t in [
            TNorm::Product,
            TNorm::tg(AnalyticDdf::ratio(2.0).unwrap(), 3.0).unwrap(),
            TNorm::tg(AnalyticDdf::exp_complement(1.0).unwrap(), 2.5).unwrap(),
        ] {
            let gen = t.additive_generator().unwrap();
            for (x, y) in [(0.2, 0.9), (0.5, 0.5), (0.99, 0.01), (0.7, 0.3)] {
                close(gen.f_inv(gen.f(x) + gen.f(y)), t.eval(x, y), 1e-12);
            }
            close(gen.f_inv(gen.f(0.42)), 0.42, 1e-12);
        }
        assert!(TNorm::Minimum.additive_generator().is_none());
        assert!(TNorm::Lukasiewicz.additive_generator().is_none());
    }

    #[test]
    fn axioms_pass_for_builtin_kinds() {
        let params = CheckParams::new(400, 11);
        for t in [
            TNorm::Minimum,
            TNorm::Product,
            TNorm::Lukasiewicz,
            TNorm::tg(AnalyticDdf::ratio(1.0).unwrap(), 2.0).unwrap(),
        ] {
            let report = check_tnorm_axioms(&t, params.derive(&t.name()));
            assert!(report.passed(), "{}", report.summary_line());
        }
    }

    #[test]
    fn table_of_a_conorm_fails_the_identity_axiom() {
        // x + y - xy has 1 as annihilator, not identity: at the lattice node
        // (0.5, 1) the table holds 1, not 0.5.
        let table = TNorm::Table(TNormTable::from_fn("probsum", |x, y| x + y - x * y));
        assert_eq!(table.eval(0.5, 1.0), 1.0);
        let report = check_tnorm_axioms(&table, CheckParams::new(200, 3));
        assert_eq!(report.verdict, crate::report::Verdict::Fail);
        assert!(report.max_violation > 0.1);
    }

    #[test]
    fn table_of_a_tnorm_passes_at_lattice_tolerance() {
        let table = TNorm::Table(TNormTable::from_fn("w-copy", |x, y| {
            TNorm::Lukasiewicz.eval(x, y)
        }));
        let report = check_tnorm_axioms(&table, CheckParams::new(300, 5));
        assert!(report.passed(), "{}", report.summary_line());
    }

    #[test]
    fn bilinear_table_matches_source_on_and_off_lattice() {
        let table = TNormTable::from_fn("pi-copy", |x, y| x * y);
        assert_eq!(table.eval(0.5, 0.25), 0.125);
        // off-lattice, error bounded by the cell curvature
        close(table.eval(0.3337, 0.7771), 0.3337 * 0.7771, 1e-5);
        assert_eq!(table.eval(1.0, 1.0), 1.0);
        assert_eq!(table.eval(0.0, 0.9), 0.0);
    }

    #[test]
    fn mixture_bounds_hand_case_and_campaign() {
        // all-ones prefix of length 4: W(15/16, 15/16) = 7/8 <= 15/16
        let a = 15.0 / 16.0;
        close(TNorm::Lukasiewicz.eval(a, a), 7.0 / 8.0, 1e-15);
        let report = check_w_mixture_bounds(16, CheckParams::new(2000, 9));
        assert!(report.passed(), "{}", report.summary_line());
        assert_eq!(report.checked, 2000);
    }

    #[test]
    fn names_round_trip() {
        for name in ["M", "Pi", "W", "TG:ratio:1:2", "TG:expc:0.5:3"] {
            assert_eq!(TNorm::parse(name).unwrap().name(), name);
        }
        for name in ["Mstar", "Pistar", "Wstar", "dual:W", "dual:TG:ratio:1:2"] {
            assert_eq!(TConorm::parse(name).unwrap().name(), name);
        }
        assert!(matches!(
            TNorm::parse("frobnicate"),
            Err(Error::UnknownName(_))
        ));
        assert!(matches!(TNorm::parse("TG:step:1:2"), Err(Error::Construction(_))));
        assert!(TConorm::parse("W").is_err());
    }

    #[test]
    fn out_of_range_arguments_are_domain_errors() {
        assert!(matches!(
            TNorm::Product.try_eval(1.5, 0.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            TConorm::BoundedSum.try_eval(0.5, -0.1),
            Err(Error::Domain(_))
        ));
        assert_eq!(TNorm::Product.try_eval(0.5, 0.5).unwrap(), 0.25);
    }
}
