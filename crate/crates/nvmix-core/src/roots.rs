//! Bracketing root finder for smooth 1-D conditions.
//!
//! The resonance conditions are smooth curves of the field, so robustness
//! beats speed: scan a uniform grid for sign changes, then bisect each
//! bracket down to the requested tolerance.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Bisect a sign change in [a, b] down to `xtol`.
///
/// Assumes `f(a)` and `f(b)` have opposite signs (or one endpoint is an exact
/// zero).
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    let fb = f(b);
    if fb == 0.0 {
        return b;
    }
    debug_assert!(fa * fb < 0.0, "bisect requires a bracket");
    while (b - a).abs() > xtol {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break; // interval no longer representable
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// All roots of `f` on [lo, hi] found by scanning `points` grid nodes for
/// sign changes and bisecting each bracket.
///
/// Roots separated by less than the grid spacing can be missed; callers pick
/// the grid density from the physics of the condition being solved.
pub fn scan_roots<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    points: usize,
    xtol: f64,
) -> Vec<f64> {
    let mut roots = Vec::new();
    if points < 2 || !(hi > lo) {
        return roots;
    }
    let step = (hi - lo) / (points - 1) as f64;
    let mut x_prev = lo;
    let mut f_prev = f(lo);
    if f_prev == 0.0 {
        roots.push(lo);
    }
    for k in 1..points {
        let x = lo + step * k as f64;
        let fx = f(x);
        if fx == 0.0 {
            roots.push(x);
        } else if f_prev != 0.0 && f_prev * fx < 0.0 {
            roots.push(bisect(f, x_prev, x, xtol));
        }
        x_prev = x;
        f_prev = fx;
    }
    roots
}
