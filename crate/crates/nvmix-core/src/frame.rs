//! Half-angle rotation that diagonalizes the static Hamiltonian near the
//! level crossing, and the effective drive it induces.
//!
//! With the static field in the xz plane, the upper 2x2 block of the shifted
//! representation is `(splitting/2) * (-cos(theta) sigma_z - sin(theta)
//! sigma_x)`; conjugating by a rotation through `theta/2` about the spin axis
//! turns that block into `diag(-splitting, +splitting)/2` exactly, for any
//! angle. A transverse drive then acquires a longitudinal component
//! (modulating the level splitting) plus a reduced transverse one, which is
//! what makes single-tone frequency mixing possible near the crossing.

use crate::mat::{c, cr, Mat3, C64};
use crate::spin::{Basis, FieldVector, PhysicalConstants, TripletMatrix};
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::FRAC_1_SQRT_2;

/// One of the three level pairs of the rotated frame, indices ascending in
/// energy within the frame ordering (the crossing pair first, the far level
/// third).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelPair {
    /// The two near-crossing levels.
    OneTwo,
    /// Lower crossing level and the far level.
    OneThree,
    /// Upper crossing level and the far level.
    TwoThree,
}

impl LevelPair {
    /// Zero-based matrix indices `(i, j)` with `i < j`.
    pub fn indices(&self) -> (usize, usize) {
        match self {
            LevelPair::OneTwo => (0, 1),
            LevelPair::OneThree => (0, 2),
            LevelPair::TwoThree => (1, 2),
        }
    }

    /// All three pairs.
    pub fn all() -> [LevelPair; 3] {
        [LevelPair::OneTwo, LevelPair::OneThree, LevelPair::TwoThree]
    }
}

impl core::fmt::Display for LevelPair {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let (i, j) = self.indices();
        write!(f, "{}-{}", i + 1, j + 1)
    }
}

/// Result of diagonalizing the static part near the crossing.
#[derive(Clone, Copy, Debug)]
pub struct StaticFrame {
    /// Mixing angle (rad); `pi/2` at the crossing, `0` far above it.
    pub theta: f64,
    /// Cotangent of the mixing angle, axial detuning over transverse
    /// coupling. Infinite on-axis.
    pub eta: f64,
    /// Transition splitting of the crossing pair (rad/s).
    pub splitting: f64,
    /// Transverse coupling `sqrt(2) * omega_dc_x` (rad/s).
    pub transverse: f64,
    /// Diagonal energy of the far level (rad/s).
    pub far_level: f64,
    /// The half-angle rotation matrix.
    pub rotation: Mat3,
}

impl StaticFrame {
    /// Level splitting of a pair in the rotated frame (rad/s).
    ///
    /// The crossing-pair levels sit at -/+ half the splitting; the far level
    /// at its diagonal energy.
    pub fn pair_splitting(&self, pair: LevelPair) -> f64 {
        match pair {
            LevelPair::OneTwo => self.splitting,
            LevelPair::OneThree => self.far_level + 0.5 * self.splitting,
            LevelPair::TwoThree => self.far_level - 0.5 * self.splitting,
        }
    }
}

/// Effective drive produced by a transverse tone after the rotation.
#[derive(Clone, Copy, Debug)]
pub struct TransformedDrive {
    /// Longitudinal part: modulates the crossing-pair splitting (rad/s,
    /// real).
    pub longitudinal: f64,
    /// Transverse part coupling the crossing pair (rad/s).
    pub transverse: C64,
    /// The input drive phasor `omega_ac_x + i omega_ac_y` (rad/s).
    pub drive: C64,
    /// Couplings to the far level, entries (1,3) and (2,3).
    pub far_couplings: [C64; 2],
}

impl TransformedDrive {
    /// Assemble the full 3x3 transformed drive matrix.
    pub fn matrix(&self) -> TripletMatrix {
        let m = Mat3::from_rows([
            [cr(-self.longitudinal), self.transverse, self.far_couplings[0]],
            [self.transverse.conj(), cr(self.longitudinal), self.far_couplings[1]],
            [self.far_couplings[0].conj(), self.far_couplings[1].conj(), cr(0.0)],
        ]);
        TripletMatrix::new(m, Basis::Rotated)
    }
}

/// Rotation through `theta/2` about the spin axis, acting on the crossing
/// pair.
pub fn rotation(theta: f64) -> Mat3 {
    let (s, cs) = (0.5 * theta).sin_cos();
    Mat3::from_rows([
        [cr(cs), cr(-s), cr(0.0)],
        [cr(s), cr(cs), cr(0.0)],
        [cr(0.0), cr(0.0), cr(1.0)],
    ])
}

/// Diagonalize the static part for a field in the xz plane.
///
/// Fails when the static field has a y component, or when both the axial
/// detuning and the transverse coupling vanish (the angle is then undefined
/// at an exact degeneracy).
pub fn static_frame(omega_dc: &FieldVector, constants: &PhysicalConstants) -> Result<StaticFrame> {
    if omega_dc.y() != 0.0 {
        return Err(Error::StaticFieldOffPlane);
    }
    let axial = omega_dc.axial_detuning(constants);
    let transverse = core::f64::consts::SQRT_2 * omega_dc.x();
    if axial == 0.0 && transverse == 0.0 {
        return Err(Error::DegenerateCrossing);
    }
    let theta = transverse.atan2(axial);
    Ok(StaticFrame {
        theta,
        eta: axial / transverse,
        splitting: axial.hypot(transverse),
        transverse,
        far_level: omega_dc.far_level_energy(constants),
        rotation: rotation(theta),
    })
}

/// Transform a transverse drive phasor into the rotated frame.
///
/// The longitudinal part is `2^(-3/2) (w + w*) sin(theta)` and the transverse
/// part `2^(-1/2) (w sin^2(theta/2) - w* cos^2(theta/2))`; the 2x2 block
/// determinant `-(longitudinal^2) - |transverse|^2 = -|w|^2 / 2` holds for
/// every angle.
pub fn transform_transverse_drive(drive: C64, frame: &StaticFrame) -> TransformedDrive {
    let theta = frame.theta;
    let (sh, ch) = (0.5 * theta).sin_cos();
    let longitudinal = 0.5 * FRAC_1_SQRT_2 * (drive + drive.conj()).re * theta.sin();
    let transverse = FRAC_1_SQRT_2 * (drive * (sh * sh) - drive.conj() * (ch * ch));
    let far_couplings = [
        -drive.conj() * (sh * FRAC_1_SQRT_2),
        -drive.conj() * (ch * FRAC_1_SQRT_2),
    ];
    TransformedDrive { longitudinal, transverse, drive, far_couplings }
}

/// Transform a longitudinal modulation amplitude into the rotated frame.
///
/// Returns `(amplitude/2) * [[-cos, sin, 0], [sin, cos, 0], [0, 0, 3]]`: far
/// from the crossing this is a pure splitting modulation, at the crossing it
/// acts transversely on the pair.
pub fn transform_longitudinal_drive(amplitude: f64, frame: &StaticFrame) -> TripletMatrix {
    let (s, cs) = frame.theta.sin_cos();
    let h = 0.5 * amplitude;
    let m = Mat3::from_rows([
        [cr(-h * cs), cr(h * s), cr(0.0)],
        [cr(h * s), cr(h * cs), cr(0.0)],
        [cr(0.0), cr(0.0), cr(3.0 * h)],
    ]);
    TripletMatrix::new(m, Basis::Rotated)
}

/// Closed-form conjugation identities of the half-angle rotation, returned as
/// the maximum entrywise deviation when each is evaluated numerically at
/// `theta`.
///
/// These five relations are what the drive transforms above are built from;
/// the last one is checked on a few generic complex phasors.
pub fn rotation_identity_error(theta: f64) -> f64 {
    let u = rotation(theta);
    let (s, cs) = theta.sin_cos();
    let (sh, ch) = (0.5 * theta).sin_cos();
    let mut worst = 0.0_f64;

    let mut check = |lhs: Mat3, rhs: Mat3| {
        let got = lhs.conjugated_by(&u);
        let err = got.max_abs_diff(&rhs);
        if err > worst {
            worst = err;
        }
    };

    // splitting-modulation block
    check(
        Mat3::diag([-1.0, 1.0, 0.0]),
        Mat3::from_rows([
            [cr(-cs), cr(s), cr(0.0)],
            [cr(s), cr(cs), cr(0.0)],
            [cr(0.0), cr(0.0), cr(0.0)],
        ]),
    );
    // transverse block
    check(
        Mat3::from_rows([
            [cr(0.0), cr(1.0), cr(0.0)],
            [cr(1.0), cr(0.0), cr(0.0)],
            [cr(0.0), cr(0.0), cr(0.0)],
        ]),
        Mat3::from_rows([
            [cr(s), cr(cs), cr(0.0)],
            [cr(cs), cr(-s), cr(0.0)],
            [cr(0.0), cr(0.0), cr(0.0)],
        ]),
    );
    // couplings of level 1 to the far level
    check(
        Mat3::from_rows([
            [cr(0.0), cr(0.0), cr(1.0)],
            [cr(0.0), cr(0.0), cr(0.0)],
            [cr(1.0), cr(0.0), cr(0.0)],
        ]),
        Mat3::from_rows([
            [cr(0.0), cr(0.0), cr(ch)],
            [cr(0.0), cr(0.0), cr(-sh)],
            [cr(ch), cr(-sh), cr(0.0)],
        ]),
    );
    // couplings of level 2 to the far level
    check(
        Mat3::from_rows([
            [cr(0.0), cr(0.0), cr(0.0)],
            [cr(0.0), cr(0.0), cr(1.0)],
            [cr(0.0), cr(1.0), cr(0.0)],
        ]),
        Mat3::from_rows([
            [cr(0.0), cr(0.0), cr(sh)],
            [cr(0.0), cr(0.0), cr(ch)],
            [cr(sh), cr(ch), cr(0.0)],
        ]),
    );
    // full transverse ladder with a generic phasor x + i y
    for (x, y) in [(1.0, 0.0), (0.0, 1.0), (0.3, -0.7)] {
        let w = c(x, y);
        check(
            Mat3::from_rows([
                [cr(0.0), w, cr(0.0)],
                [w.conj(), cr(0.0), w],
                [cr(0.0), w.conj(), cr(0.0)],
            ]),
            Mat3::from_rows([
                [cr(x * s), c(x * cs, y), w * sh],
                [c(x * cs, -y), cr(-x * s), w * ch],
                [w.conj() * sh, w.conj() * ch, cr(0.0)],
            ]),
        );
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::gslac_representation;
    use core::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};
    use rand::{Rng, SeedableRng};

    fn consts() -> PhysicalConstants {
        PhysicalConstants::nv()
    }

    #[test]
    fn crossing_gives_right_angle() {
        let cts = consts();
        let wx = TAU * 10.0e6;
        let f = FieldVector::new(wx, 0.0, cts.zero_field_splitting()).unwrap();
        let frame = static_frame(&f, &cts).unwrap();
        assert!(frame.eta.abs() < 1e-15);
        assert!((frame.theta - FRAC_PI_2).abs() < 1e-15);
        let expect = SQRT_2 * wx;
        assert!(((frame.splitting - expect) / expect).abs() < 1e-14);
        assert!(((frame.transverse - expect) / expect).abs() < 1e-14);
    }

    #[test]
    fn far_detuned_angle_closes() {
        let cts = consts();
        let f = FieldVector::new(TAU * 1.0e6, 0.0, cts.zero_field_splitting() + TAU * 1.0e9)
            .unwrap();
        let frame = static_frame(&f, &cts).unwrap();
        assert!(frame.theta > 0.0 && frame.theta < 0.002);
        let zd = f.axial_detuning(&cts).abs();
        assert!(((frame.splitting - zd) / zd).abs() < 1e-5);
    }

    #[test]
    fn frame_invariants_random() {
        let cts = consts();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let f = FieldVector::new(
                TAU * rng.gen_range(1e5..2e8),
                0.0,
                TAU * rng.gen_range(2.0e9..3.6e9),
            )
            .unwrap();
            let frame = static_frame(&f, &cts).unwrap();
            // cot(theta) = eta, sign conventions
            assert!((1.0 / frame.theta.tan() - frame.eta).abs() <= 1e-12 * (1.0 + frame.eta.abs()));
            assert!(frame.theta.sin() > 0.0);
            let root = frame.transverse * (1.0 + frame.eta * frame.eta).sqrt();
            assert!(((frame.splitting - root) / root).abs() < 1e-12);
            let denom = (frame.eta * frame.eta + 1.0).sqrt();
            assert!((frame.theta.cos() - frame.eta / denom).abs() < 1e-12);
            assert!((frame.theta.sin() - 1.0 / denom).abs() < 1e-12);
            // unitarity
            let uu = frame.rotation.adjoint() * frame.rotation;
            assert!(uu.max_abs_diff(&Mat3::identity()) < 1e-12);
        }
    }

    #[test]
    fn rotation_diagonalizes_static_block() {
        let cts = consts();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let f = FieldVector::new(
                TAU * rng.gen_range(1e5..2e8),
                0.0,
                TAU * rng.gen_range(2.0e9..3.6e9),
            )
            .unwrap();
            let frame = static_frame(&f, &cts).unwrap();
            let hdc = gslac_representation(&f, &cts);
            let rotated = hdc.matrix.conjugated_by(&frame.rotation);
            let scale = hdc.matrix.max_abs();
            assert!(rotated[(0, 1)].norm() < 1e-12 * scale);
            assert!(rotated[(1, 0)].norm() < 1e-12 * scale);
            assert!((rotated[(0, 0)].re + 0.5 * frame.splitting).abs() < 1e-12 * scale);
            assert!((rotated[(1, 1)].re - 0.5 * frame.splitting).abs() < 1e-12 * scale);
            assert!((rotated[(2, 2)].re - frame.far_level).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn rejects_bad_static_fields() {
        let cts = consts();
        let off = FieldVector::new(1.0, 1.0, cts.zero_field_splitting()).unwrap();
        assert!(matches!(static_frame(&off, &cts), Err(Error::StaticFieldOffPlane)));
        let degenerate = FieldVector::new(0.0, 0.0, cts.zero_field_splitting()).unwrap();
        assert!(matches!(static_frame(&degenerate, &cts), Err(Error::DegenerateCrossing)));
    }

    fn frame_at(theta: f64) -> StaticFrame {
        StaticFrame {
            theta,
            eta: 1.0 / theta.tan(),
            splitting: 1.0,
            transverse: theta.sin(),
            far_level: 10.0,
            rotation: rotation(theta),
        }
    }

    #[test]
    fn transverse_drive_limits() {
        let w = c(2.0e6, 0.0);
        // far from the crossing: no longitudinal component
        let td = transform_transverse_drive(w, &frame_at(0.0));
        assert_eq!(td.longitudinal, 0.0);
        assert!((td.transverse - (-w.conj() * FRAC_1_SQRT_2)).norm() < 1e-9);
        // at the crossing with a real drive: longitudinal maximal, transverse dead
        let td = transform_transverse_drive(w, &frame_at(FRAC_PI_2));
        assert!((td.longitudinal - FRAC_1_SQRT_2 * w.re).abs() < 1e-9);
        assert!(td.transverse.norm() < 1e-9);
    }

    #[test]
    fn block_determinant_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10_000 {
            let theta = rng.gen_range(-PI..PI);
            let w = c(rng.gen_range(-1e7..1e7), rng.gen_range(-1e7..1e7));
            let td = transform_transverse_drive(w, &frame_at(theta));
            let lhs = -td.longitudinal * td.longitudinal - td.transverse.norm_sqr();
            let rhs = -0.5 * w.norm_sqr();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1e-300));
        }
    }

    #[test]
    fn longitudinal_drive_limits_and_conjugation_oracle() {
        let amp = TAU * 3.0e6;
        let far = transform_longitudinal_drive(amp, &frame_at(0.0));
        assert!(far
            .matrix
            .max_abs_diff(&Mat3::diag([-0.5 * amp, 0.5 * amp, 1.5 * amp]))
            < 1e-9);
        let near = transform_longitudinal_drive(amp, &frame_at(FRAC_PI_2));
        assert!((near.matrix[(0, 1)].re - 0.5 * amp).abs() < 1e-9);
        assert!(near.matrix[(0, 0)].norm() < 1e-9);

        // oracle: conjugate the bare shifted longitudinal modulation directly
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let theta = rng.gen_range(-PI..PI);
            let frame = frame_at(theta);
            let bare = Mat3::diag([-0.5 * amp, 0.5 * amp, 1.5 * amp]);
            let oracle = bare.conjugated_by(&frame.rotation);
            let got = transform_longitudinal_drive(amp, &frame);
            assert!(got.matrix.max_abs_diff(&oracle) < 1e-14 * amp);
        }
    }

    #[test]
    fn transverse_matrix_matches_direct_conjugation() {
        // oracle: rotate the bare transverse ladder and compare entrywise
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let theta = rng.gen_range(-PI..PI);
            let frame = frame_at(theta);
            let w = c(rng.gen_range(-1e7..1e7), rng.gen_range(-1e7..1e7));
            // bare entry (-w*)/sqrt(2) on the ladder positions
            let t = -w.conj() * FRAC_1_SQRT_2;
            let bare = Mat3::from_rows([
                [cr(0.0), t, cr(0.0)],
                [t.conj(), cr(0.0), t],
                [cr(0.0), t.conj(), cr(0.0)],
            ]);
            let oracle = bare.conjugated_by(&frame.rotation);
            let got = transform_transverse_drive(w, &frame).matrix();
            assert!(got.matrix.max_abs_diff(&oracle) < 1e-13 * w.norm().max(1.0));
        }
    }

    #[test]
    fn transforms_are_linear_in_the_drive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let theta = rng.gen_range(-PI..PI);
            let frame = frame_at(theta);
            let w = c(rng.gen_range(-1e7..1e7), rng.gen_range(-1e7..1e7));
            let lz = rng.gen_range(-1e7..1e7);
            // sum of the separate transforms equals the transform of the sum
            let t = -w.conj() * FRAC_1_SQRT_2;
            let bare_t = Mat3::from_rows([
                [cr(0.0), t, cr(0.0)],
                [t.conj(), cr(0.0), t],
                [cr(0.0), t.conj(), cr(0.0)],
            ]);
            let bare_l = Mat3::diag([-0.5 * lz, 0.5 * lz, 1.5 * lz]);
            let oracle = (bare_t + bare_l).conjugated_by(&frame.rotation);
            let got = transform_transverse_drive(w, &frame).matrix().matrix
                + transform_longitudinal_drive(lz, &frame).matrix;
            assert!(got.max_abs_diff(&oracle) < 1e-13 * oracle.max_abs().max(1.0));
        }
    }

    #[test]
    fn conjugation_preserves_trace_and_eigenvalues() {
        use crate::eigen::hermitian_eigenvalues;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let theta = rng.gen_range(-PI..PI);
            let u = rotation(theta);
            let mut m = Mat3::zeros();
            for i in 0..3 {
                for j in 0..3 {
                    m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            let m = m.hermitian_part();
            let r = m.conjugated_by(&u);
            assert!((m.trace() - r.trace()).norm() < 1e-12);
            let e1 = hermitian_eigenvalues(&m);
            let e2 = hermitian_eigenvalues(&r);
            for k in 0..3 {
                assert!((e1[k] - e2[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_errors_are_tiny() {
        assert_eq!(rotation_identity_error(0.0), 0.0);
        assert!(rotation_identity_error(PI / 3.0) < 1e-14);
        let mut worst = 0.0_f64;
        for k in 0..1000 {
            let theta = -PI + TAU * k as f64 / 999.0;
            worst = worst.max(rotation_identity_error(theta));
        }
        assert!(worst < 1e-13);
    }
}
