// Helpers shared by the integration suites.
#![allow(dead_code)]

use pnspace::ddf::Ddf;
use pnspace::tnorm::TNorm;

/// Quadratic reference for the sup-convolution: out[k] is the maximum of
/// T(F(x_j), G(x_{k+1-j})) over every split, no pruning, no search. The
/// production scan must agree with this bit for bit.
pub fn brute_sup_convolve(t: &TNorm, f: &Ddf, g: &Ddf) -> Ddf {
    let grid = f.grid();
    assert_eq!(grid.n, g.grid().n);
    assert_eq!(grid.x_max, g.grid().x_max);
    let fv = f.values();
    let gv = g.values();
    let mut out = vec![0.0f64; grid.n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        let mut best = 0.0f64;
        for j in 1..=k {
            best = best.max(t.eval(fv[j], gv[k + 1 - j]));
        }
        *slot = best;
    }
    Ddf::left_regularize(grid, out, t.eval(f.at_inf(), g.at_inf()))
}

/// Structural invariants every distribution function must carry: zero at the
/// origin, nondecreasing values inside [0, 1], and a value at infinity that
/// tops the finite values.
pub fn assert_ddf_invariants(f: &Ddf, context: &str) {
    let v = f.values();
    assert_eq!(v[0], 0.0, "{context}: F(0) != 0");
    for w in v.windows(2) {
        assert!(w[0] <= w[1], "{context}: values decrease ({} > {})", w[0], w[1]);
    }
    for &x in v {
        assert!((0.0..=1.0).contains(&x), "{context}: value {x} escapes [0, 1]");
    }
    assert!(
        f.at_inf() >= v[v.len() - 1] && f.at_inf() <= 1.0,
        "{context}: value at infinity {} inconsistent",
        f.at_inf()
    );
}
