//! Eigenvalues of small Hermitian matrices via cyclic Jacobi rotations.
//!
//! Quadratic convergence on 2x2 and 3x3 problems; a handful of sweeps reaches
//! machine precision. Only eigenvalues are produced, which is all the level
//! curves and matching conditions need.

use crate::mat::{c, CMatrix};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The input is symmetrized first so tiny Hermiticity violations from
/// accumulated roundoff do not leak imaginary parts into the result. Ties are
/// broken by the original diagonal position, which keeps level ordering
/// reproducible across a degenerate crossing.
pub fn hermitian_eigenvalues<const N: usize>(m: &CMatrix<N>) -> [f64; N] {
    let mut a = m.hermitian_part();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _ in 0..64 {
        let mut off = 0.0_f64;
        for p in 0..N {
            for q in (p + 1)..N {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= 1e-16 * scale {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut vals = [0.0_f64; N];
    for i in 0..N {
        vals[i] = a[(i, i)].re;
    }
    // insertion sort: stable, so exact ties keep diagonal order
    for i in 1..N {
        let mut j = i;
        while j > 0 && vals[j] < vals[j - 1] {
            vals.swap(j, j - 1);
            j -= 1;
        }
    }
    vals
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
fn rotate<const N: usize>(a: &mut CMatrix<N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / c(r, 0.0);
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = 0.5 * (2.0 * r).atan2(app - aqq);
    let (s, cs) = tau.sin_cos();
    // columns of the rotation: R[p][p]=c, R[p][q]=-s*phase, R[q][p]=s*conj(phase), R[q][q]=c
    let rpq = -phase * s;
    let rqp = phase.conj() * s;
    // A <- R^dag A R applied as column then row updates
    for i in 0..N {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * cs + aiq * rqp;
        a[(i, q)] = aip * rpq + aiq * cs;
    }
    for j in 0..N {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * cs + aqj * rqp.conj();
        a[(q, j)] = apj * rpq.conj() + aqj * cs;
    }
    // clean the annihilated pair against roundoff
    a[(p, q)] = c(0.0, 0.0);
    a[(q, p)] = c(0.0, 0.0);
}

/// Eigenvalues of a Hermitian 2x2 in closed form, ascending.
pub fn hermitian_eigenvalues_2x2(m: &CMatrix<2>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)].norm();
    let mean = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
    [mean - rad, mean + rad]
}
