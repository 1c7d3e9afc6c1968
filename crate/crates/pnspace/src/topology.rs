//! Strong-topology neighborhoods and the experiments comparing them with
//! the product topology over the product constructions: the countable
//! lifted product's strong topology sees all components at once and is
//! strictly finer, while the dyadic mixture product's strong topology
//! matches the product topology under explicit radius schedules.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::products::{Combiner, ProductSpace};
use crate::report::{run_campaign, CheckParams, TrialOutcome, Verdict, VerificationReport};
use crate::spaces::{std_normal, vadd, vneg, Space};

/// Membership in the strong neighborhood of radius t around p:
/// nu_(q-p)(t) > 1 - t. One distribution evaluation decides it.
pub fn in_strong(space: &dyn Space, p: &[f64], q: &[f64], t: f64) -> bool {
    assert!(
        t > 0.0 && t.is_finite(),
        "neighborhood radius must be positive and finite"
    );
    space.nu_at(&vadd(q, &vneg(p)), t) > 1.0 - t
}

/// Strong neighborhood around a center vector.
pub struct StrongNbhd<'a> {
    space: &'a dyn Space,
    center: Vec<f64>,
    radius: f64,
}

impl<'a> StrongNbhd<'a> {
    pub fn new(space: &'a dyn Space, center: Vec<f64>, radius: f64) -> Result<StrongNbhd<'a>> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Domain(format!(
                "neighborhood radius must be positive and finite, got {radius}"
            )));
        }
        if center.len() != space.dim() {
            return Err(Error::Domain(format!(
                "center has {} coordinates, the space has dimension {}",
                center.len(),
                space.dim()
            )));
        }
        Ok(StrongNbhd {
            space,
            center,
            radius,
        })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, q: &[f64]) -> bool {
        in_strong(self.space, &self.center, q, self.radius)
    }
}

/// Per-coordinate proposal scale: 1 plus the sup of the coordinate's block,
/// so perturbations track the magnitude of each factor's part of the center.
fn coord_scales(p: &[f64], block_dims: &[usize]) -> Vec<f64> {
    let mut out = Vec::with_capacity(p.len());
    let mut off = 0;
    for &d in block_dims {
        let sup = p[off..off + d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        out.extend(std::iter::repeat(1.0 + sup).take(d));
        off += d;
    }
    out
}

fn block_dims(space_dim: usize, product: Option<&ProductSpace>) -> Vec<usize> {
    match product {
        Some(prod) => prod.factors().iter().map(|f| f.dim).collect(),
        None => vec![space_dim],
    }
}

/// Rejection sampling of a member of N_p(t). The Gaussian offset starts at a
/// log-uniform fraction of the radius and halves until the proposal lands
/// inside; tiny offsets are members for any reasonable center, so the
/// descent almost always accepts within its budget.
fn sample_member(
    space: &dyn Space,
    p: &[f64],
    t: f64,
    scales: &[f64],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<f64>> {
    let mut u = 10f64.powf(rng.gen_range(-2.0..0.0));
    for _ in 0..12 {
        let q: Vec<f64> = p
            .iter()
            .zip(scales)
            .map(|(&x, &s)| x + u * t * s * std_normal(rng))
            .collect();
        if in_strong(space, p, &q, t) {
            return Some(q);
        }
        u *= 0.4;
    }
    None
}

fn require_shape(product: &ProductSpace, p: &[f64], eps: f64) -> Result<()> {
    if p.len() != product.dim() {
        return Err(Error::Domain(format!(
            "center has {} coordinates, the product has dimension {}",
            p.len(),
            product.dim()
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!(
            "radius must lie in (0, 1), got {eps}"
        )));
    }
    Ok(())
}

/// Containment experiment for a countable lifted product: every sampled
/// member of the product strong neighborhood N_p(eps) has all components in
/// their factor neighborhoods of the same radius (the product topology is
/// no finer than the strong one), while the reverse containment is refuted
/// by a vector agreeing with the center everywhere except one late
/// component. The merged report passes when the forward campaign holds and
/// an escaping witness was found; an exhausted witness search reports
/// insufficient samples rather than a refutation.
pub fn tau_product_containment(
    product: &ProductSpace,
    p: &[f64],
    eps: f64,
    params: CheckParams,
) -> Result<VerificationReport> {
    if !matches!(product.combiner(), Combiner::CountableLift { .. }) {
        return Err(Error::Construction(format!(
            "the containment experiment applies to countable lifted products, got combiner {}",
            product.combiner().name()
        )));
    }
    require_shape(product, p, eps)?;
    let k = product.factors().len();
    let dims = block_dims(product.dim(), Some(product));
    let scales = coord_scales(p, &dims);

    let forward = run_campaign(
        &format!("tau-product:forward-containment:{}", product.name()),
        "every sampled member of the product strong neighborhood has all components inside the factor neighborhoods of the same radius",
        params.derive("forward"),
        params.trials,
        |_, rng| {
            let Some(q) = sample_member(product, p, eps, &scales, rng) else {
                return TrialOutcome::Rejected;
            };
            let diff = vadd(&q, &vneg(p));
            let mut worst = f64::NEG_INFINITY;
            let mut at = 0usize;
            let mut off = 0usize;
            for (i, f) in product.factors().iter().enumerate() {
                let vi = f.nu_at(&diff[off..off + f.dim], eps);
                let gap = (1.0 - eps) - vi;
                if gap > worst {
                    worst = gap;
                    at = i;
                }
                off += f.dim;
            }
            let inputs = BTreeMap::from([
                ("q".to_string(), json!(q)),
                ("component".to_string(), json!(at)),
            ]);
            TrialOutcome::from_gap(worst, 1e-12, format!("component {at}"), inputs)
        },
    );

    // The would-be reverse containment: a finite-support product
    // neighborhood constrains only components up to some index, so a vector
    // that agrees with the center there but runs away on a later component
    // belongs to it. If such a vector always stayed in N_p(eps), the product
    // topology would contain the strong one. The search walks (component,
    // offset) pairs; any escape refutes the claim, which is the expected
    // outcome.
    let reverse_inner = run_campaign(
        &format!("tau-product:reverse-containment:{}", product.name()),
        "every vector agreeing with the center except on one late component stays in the product strong neighborhood",
        params.derive("reverse"),
        1,
        |trial, _| {
            let lanes = (k - 1).max(1) as u64;
            let i0 = 1 + (trial % lanes) as usize;
            let w = 2f64.powi(((trial / lanes) % 50) as i32);
            let mut q = p.to_vec();
            let off: usize = product.factors()[..i0].iter().map(|f| f.dim).sum();
            q[off] += w;
            let value = product.nu_at(&vadd(&q, &vneg(p)), eps);
            let gap = (1.0 - eps) - value;
            let inputs = BTreeMap::from([
                ("component".to_string(), json!(i0)),
                ("offset".to_string(), json!(w)),
                ("membership_value".to_string(), json!(value)),
            ]);
            TrialOutcome::from_gap(gap, 0.0, format!("component {i0}, offset {w}"), inputs)
        },
    );
    let reverse = if reverse_inner.verdict == Verdict::Fail {
        reverse_inner.expect_refutation(
            &format!("tau-product:reverse-witness:{}", product.name()),
            "a vector of the finite-support product neighborhood escapes the product strong neighborhood (the witness records it)",
        )
    } else {
        VerificationReport {
            campaign: format!("tau-product:reverse-witness:{}", product.name()),
            verdict: Verdict::InsufficientSamples,
            trials: reverse_inner.trials,
            checked: reverse_inner.checked,
            max_violation: 0.0,
            witness: None,
            claim: "no escaping vector found within the search budget, the reverse containment was not refuted".into(),
        }
    };

    Ok(VerificationReport::merge(
        &format!("tau-product-containment:{}", product.name()),
        "the product strong neighborhood sits inside the product of factor neighborhoods, and the reverse containment is refuted by a late-component witness",
        &[forward, reverse],
    ))
}

/// Mutual containment experiment for a dyadic mixture product, with the
/// radius schedules that make the two topologies agree:
///   (a) members of the finite-support product neighborhood of radius eps/2
///       on the first ceil(log2(2/eps)) factors, arbitrary beyond, lie in
///       N_p(eps): the constrained factors carry all but eps/2 of the
///       weight;
///   (b) members of N_p(delta) with delta = eps * 2^-(i0+1) (the weight of
///       factor i0) have component i0 in its factor neighborhood of radius
///       eps: the i0 term alone forces nu^i0(delta) > 1 - eps.
/// The truncation bounds both schedules: (a) needs enough factors for the
/// tail weight to drop below eps/2, (b) needs delta above the truncation
/// deficit or N_p(delta) is empty.
pub fn sigma_topology_equivalence(
    product: &ProductSpace,
    p: &[f64],
    eps: f64,
    params: CheckParams,
) -> Result<VerificationReport> {
    if !matches!(product.combiner(), Combiner::Sigma) {
        return Err(Error::Construction(format!(
            "the equivalence experiment applies to dyadic mixture products, got combiner {}",
            product.combiner().name()
        )));
    }
    require_shape(product, p, eps)?;
    let k = product.factors().len();
    let n_a = (2.0 / eps).log2().ceil() as usize;
    if k < n_a {
        return Err(Error::Construction(format!(
            "radius {eps} needs {n_a} constrained factors but the truncation has {k}; the unplaced tail weight would exceed eps/2"
        )));
    }
    let i0 = 2.min(k - 1);
    let delta = eps * 0.5f64.powi(i0 as i32 + 1);
    if delta <= product.tail_deficit() {
        return Err(Error::Construction(format!(
            "target radius {delta:.6} does not exceed the truncation deficit {:.6}; N_p(delta) is empty on this truncation",
            product.tail_deficit()
        )));
    }
    let dims = block_dims(product.dim(), Some(product));
    let scales = coord_scales(p, &dims);

    let direction_a = run_campaign(
        &format!("sigma-topology:product-into-strong:{}", product.name()),
        &format!(
            "every sampled vector with the first {n_a} components in factor neighborhoods of radius {}, and the rest arbitrary, is a member of the strong neighborhood of radius {eps}",
            eps / 2.0
        ),
        params.derive("product-into-strong"),
        params.trials,
        |_, rng| {
            let mut q = Vec::with_capacity(p.len());
            let mut off = 0usize;
            for (i, f) in product.factors().iter().enumerate() {
                let block = &p[off..off + f.dim];
                if i < n_a {
                    let block_scales = coord_scales(block, &[f.dim]);
                    let Some(qb) = sample_member(f, block, eps / 2.0, &block_scales, rng) else {
                        return TrialOutcome::Rejected;
                    };
                    q.extend(qb);
                } else {
                    let far = 10f64.powf(rng.gen_range(0.0..3.0));
                    q.extend(block.iter().map(|&x| x + far * std_normal(rng)));
                }
                off += f.dim;
            }
            let value = product.nu_at(&vadd(&q, &vneg(p)), eps);
            let gap = (1.0 - eps) - value;
            let inputs = BTreeMap::from([
                ("q".to_string(), json!(q)),
                ("membership_value".to_string(), json!(value)),
            ]);
            TrialOutcome::from_gap(gap, 1e-12, "strong membership", inputs)
        },
    );

    let direction_b = run_campaign(
        &format!("sigma-topology:strong-into-product:{}", product.name()),
        &format!(
            "every sampled member of the strong neighborhood of radius {delta:.6} has component {i0} in its factor neighborhood of radius {eps}"
        ),
        params.derive("strong-into-product"),
        params.trials,
        |_, rng| {
            let Some(q) = sample_member(product, p, delta, &scales, rng) else {
                return TrialOutcome::Rejected;
            };
            let off: usize = product.factors()[..i0].iter().map(|f| f.dim).sum();
            let f = &product.factors()[i0];
            let diff = vadd(&q[off..off + f.dim], &vneg(&p[off..off + f.dim]));
            let vi = f.nu_at(&diff, eps);
            let gap = (1.0 - eps) - vi;
            let inputs = BTreeMap::from([
                ("q".to_string(), json!(q)),
                ("component_value".to_string(), json!(vi)),
            ]);
            TrialOutcome::from_gap(gap, 1e-12, format!("component {i0}"), inputs)
        },
    );

    Ok(VerificationReport::merge(
        &format!("sigma-topology-equivalence:{}", product.name()),
        &format!(
            "mutual neighborhood containment under the schedules: radius {}/2 on the first {n_a} factors into radius {eps}, and radius {delta:.6} into radius {eps} on factor {i0}",
            eps
        ),
        &[direction_a, direction_b],
    ))
}

/// Neighborhood nesting: for q inside N_p(t) there is a smaller radius t'
/// with N_q(t') inside N_p(t). Each trial walks dyadic candidates and
/// samples members of N_q(t'); a candidate whose sampled members all stay
/// in N_p(t) certifies the nesting for that pair. A candidate radius so
/// small the sampler finds no members counts as nested vacuously (the
/// truncated mixture's neighborhoods empty out below the tail deficit).
pub fn check_nbhd_nesting(space: &dyn Space, params: CheckParams) -> VerificationReport {
    let dims = block_dims(space.dim(), None);
    run_campaign(
        &format!("nbhd-nesting:{}", space.name()),
        "members of a strong neighborhood have a strong neighborhood of their own inside it, found by dyadic radius search",
        params,
        1,
        |_, rng| {
            let p = space.sample_vector(rng);
            let t = 10f64.powf(rng.gen_range(-1.0..0.0));
            let scales = coord_scales(&p, &dims);
            let Some(q) = sample_member(space, &p, t, &scales, rng) else {
                return TrialOutcome::Rejected;
            };
            let q_scales = coord_scales(&q, &dims);
            for j in 1..=24 {
                let t_prime = t * 0.5f64.powi(j);
                let mut all_inside = true;
                for _ in 0..32 {
                    let Some(r) = sample_member(space, &q, t_prime, &q_scales, rng) else {
                        continue;
                    };
                    if !in_strong(space, &p, &r, t) {
                        all_inside = false;
                        break;
                    }
                }
                if all_inside {
                    return TrialOutcome::Held { violation: 0.0 };
                }
            }
            let inputs = BTreeMap::from([
                ("p".to_string(), json!(p)),
                ("q".to_string(), json!(q)),
                ("t".to_string(), json!(t)),
            ]);
            TrialOutcome::Violated {
                violation: 1.0,
                location: format!("no nested radius found down to t * 2^-24 for t = {t}"),
                inputs,
            }
        },
    )
}

/// Neighborhood separation: distinct centers have a radius at which their
/// strong neighborhoods are disjoint. The dyadic search uses the axiom
/// certificate: when nu_(q-p)(2t) <= 1 - 2t, any point in both
/// neighborhoods would violate the triangle axiom for spaces whose tau
/// sits above the Lukasiewicz sup-convolution. Sampled members of N_p(t)
/// double-check the certificate.
pub fn check_nbhd_separation(space: &dyn Space, params: CheckParams) -> VerificationReport {
    let dims = block_dims(space.dim(), None);
    run_campaign(
        &format!("nbhd-separation:{}", space.name()),
        "distinct centers admit a radius with disjoint strong neighborhoods, found by dyadic search with a triangle-axiom certificate",
        params,
        1,
        |_, rng| {
            let p = space.sample_vector(rng);
            let q = space.sample_vector(rng);
            let diff = vadd(&q, &vneg(&p));
            if diff.iter().all(|x| x.abs() < 1e-9) {
                return TrialOutcome::Rejected;
            }
            let scales = coord_scales(&p, &dims);
            for j in 0..=40 {
                let t = 0.5f64.powi(j);
                if space.nu_at(&diff, 2.0 * t) <= 1.0 - 2.0 * t {
                    for _ in 0..16 {
                        if let Some(r) = sample_member(space, &p, t, &scales, rng) {
                            if in_strong(space, &q, &r, t) {
                                let inputs = BTreeMap::from([
                                    ("p".to_string(), json!(p)),
                                    ("q".to_string(), json!(q)),
                                    ("r".to_string(), json!(r)),
                                    ("t".to_string(), json!(t)),
                                ]);
                                return TrialOutcome::Violated {
                                    violation: 1.0,
                                    location: format!(
                                        "certificate radius {t} admitted a common member"
                                    ),
                                    inputs,
                                };
                            }
                        }
                    }
                    return TrialOutcome::Held { violation: 0.0 };
                }
            }
            let inputs = BTreeMap::from([
                ("p".to_string(), json!(p)),
                ("q".to_string(), json!(q)),
            ]);
            TrialOutcome::Violated {
                violation: 1.0,
                location: "no separating radius found down to 2^-40".into(),
                inputs,
            }
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddf::AnalyticDdf;
    use crate::grid::Grid;
    use crate::products::{countable_product, sigma_product};
    use crate::spaces::{NormDef, PnSpace};
    use crate::tnorm::TNorm;
    use crate::transform::MbFunction;
    use rand::SeedableRng;

    fn tgrid() -> Grid {
        Grid::new(256, 16.0).unwrap()
    }

    fn simple_line(grid: Grid) -> PnSpace {
        PnSpace::simple_space(1, grid, NormDef::L2, AnalyticDdf::ratio(1.0).unwrap()).unwrap()
    }

    fn countable_fixture(grid: Grid) -> ProductSpace {
        let factor = PnSpace::exp_pi_space(1, grid, NormDef::L2).unwrap();
        let b = [0.5, 0.25, 0.125, 0.06, 0.02, 0.008];
        let m: Vec<MbFunction> = b.iter().map(|&bi| MbFunction::blowup(bi).unwrap()).collect();
        countable_product(&vec![factor; 6], &b, &m, &TNorm::Product).unwrap()
    }

    fn sigma_fixture(grid: Grid, k: usize) -> ProductSpace {
        let factor = simple_line(grid);
        sigma_product(&vec![factor; k]).unwrap()
    }

    #[test]
    fn strong_membership_basics() {
        let grid = tgrid();
        let space = simple_line(grid);
        // The center is always a member, at any radius.
        assert!(in_strong(&space, &[2.5], &[2.5], 0.01));
        assert!(in_strong(&space, &[2.5], &[2.5], 2.0));
        // Unit distance under the ratio distribution: G(0.9) = 9/19 > 0.1,
        // while G(0.1) = 1/11 < 0.9.
        assert!(in_strong(&space, &[0.0], &[1.0], 0.9));
        assert!(!in_strong(&space, &[0.0], &[1.0], 0.1));

        let nbhd = StrongNbhd::new(&space, vec![0.0], 0.9).unwrap();
        assert!(nbhd.contains(&[1.0]));
        assert_eq!(nbhd.radius(), 0.9);
        assert_eq!(nbhd.center(), &[0.0]);
        assert!(StrongNbhd::new(&space, vec![0.0], 0.0).is_err());
        assert!(StrongNbhd::new(&space, vec![0.0, 1.0], 0.5).is_err());
    }

    #[test]
    fn strong_membership_is_monotone_and_symmetric() {
        let grid = tgrid();
        let space = simple_line(grid);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let p = space.sample_vector(&mut rng);
            let q = space.sample_vector(&mut rng);
            let t = 10f64.powf(rng.gen_range(-1.5..0.0));
            let member = in_strong(&space, &p, &q, t);
            assert_eq!(member, in_strong(&space, &q, &p, t));
            if member {
                assert!(in_strong(&space, &p, &q, 2.0 * t));
            }
        }
    }

    #[test]
    fn tau_product_containment_holds_forward_and_refutes_reverse() {
        let grid = tgrid();
        let product = countable_fixture(grid);
        let p = vec![0.4, -0.8, 1.2, 0.0, 0.3, -0.5];
        let report =
            tau_product_containment(&product, &p, 0.1, CheckParams::new(400, 19)).unwrap();
        assert!(report.passed(), "{}", report.summary_line());

        // A far late component keeps the vector inside the finite-support
        // product neighborhood but pushes it out of the strong one.
        let mut far = p.clone();
        far[1] += 1e6;
        assert!(!in_strong(&product, &p, &far, 0.1));

        let sigma = sigma_fixture(grid, 10);
        assert!(matches!(
            tau_product_containment(&sigma, &vec![0.0; 10], 0.1, CheckParams::new(10, 19)),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn sigma_topology_equivalence_holds_both_directions() {
        let grid = tgrid();
        let product = sigma_fixture(grid, 10);
        let p: Vec<f64> = (0..10).map(|i| 0.3 * i as f64 - 1.0).collect();
        let report =
            sigma_topology_equivalence(&product, &p, 0.1, CheckParams::new(400, 23)).unwrap();
        assert!(report.passed(), "{}", report.summary_line());
    }

    #[test]
    fn sigma_equivalence_rejects_truncations_too_short_for_the_schedules() {
        let grid = tgrid();
        let countable = countable_fixture(grid);
        assert!(matches!(
            sigma_topology_equivalence(&countable, &vec![0.0; 6], 0.1, CheckParams::new(10, 3)),
            Err(Error::Construction(_))
        ));
        // Four factors cannot carry radius 0.1: the tail weight 2^-4 stays
        // above eps/2.
        match sigma_topology_equivalence(
            &sigma_fixture(grid, 4),
            &vec![0.0; 4],
            0.1,
            CheckParams::new(10, 3),
        ) {
            Err(Error::Construction(msg)) => assert!(msg.contains("tail"), "{msg}"),
            other => panic!("expected construction error, got {other:?}"),
        }
        // Five factors pass the factor-count gate but the target radius
        // eps/8 sits below the truncation deficit 2^-5.
        match sigma_topology_equivalence(
            &sigma_fixture(grid, 5),
            &vec![0.0; 5],
            0.1,
            CheckParams::new(10, 3),
        ) {
            Err(Error::Construction(msg)) => assert!(msg.contains("deficit"), "{msg}"),
            other => panic!("expected construction error, got {other:?}"),
        }
    }

    #[test]
    fn sigma_membership_tolerates_one_arbitrarily_far_component() {
        let grid = tgrid();
        let product = sigma_fixture(grid, 10);
        let p = vec![0.0; 10];
        let mut q = p.clone();
        q[7] = 1e9;
        assert!(in_strong(&product, &p, &q, 0.1));

        // The countable lifted product does not: one far component with a
        // pole above the radius sinks the whole membership value.
        let countable = countable_fixture(grid);
        let pc = vec![0.0; 6];
        let mut qc = pc.clone();
        qc[1] = 1e9;
        assert!(!in_strong(&countable, &pc, &qc, 0.1));
    }

    #[test]
    fn neighborhoods_nest_and_separate() {
        let grid = tgrid();
        let sigma = sigma_fixture(grid, 6);
        let nest = check_nbhd_nesting(&sigma, CheckParams::new(40, 29));
        assert!(nest.passed(), "{}", nest.summary_line());
        let sep = check_nbhd_separation(&sigma, CheckParams::new(40, 31));
        assert!(sep.passed(), "{}", sep.summary_line());

        let line = simple_line(grid);
        let nest = check_nbhd_nesting(&line, CheckParams::new(40, 37));
        assert!(nest.passed(), "{}", nest.summary_line());
        let sep = check_nbhd_separation(&line, CheckParams::new(40, 41));
        assert!(sep.passed(), "{}", sep.summary_line());
    }
}
