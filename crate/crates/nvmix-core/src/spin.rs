//! Triplet ground-state Hamiltonian of a spin-1 defect and its level curves.
//!
//! The magnetic field is carried as an angular-frequency vector
//! `omega = gamma_e * B`, so every matrix element is in rad/s. The spin
//! projection basis is ordered `m_S = (+1, 0, -1)`; with that ordering the
//! two levels that cross near the anti-crossing already sit in slots 1 and 2.

use alloc::vec::Vec;

use crate::eigen::hermitian_eigenvalues;
use crate::mat::{c, cr, Mat3};
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::{FRAC_1_SQRT_2, TAU};

/// Labels which representation a 3x3 matrix is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Spin projection basis, `m_S = (+1, 0, -1)`.
    Zeeman,
    /// Same level ordering, with the global shift of half the axial detuning
    /// added so the crossing pair straddles zero.
    Crossing,
    /// After the half-angle rotation that diagonalizes the static part.
    Rotated,
}

/// 3x3 complex matrix together with the basis it is expressed in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripletMatrix {
    /// The matrix entries.
    pub matrix: Mat3,
    /// Which representation the entries refer to.
    pub basis: Basis,
}

impl TripletMatrix {
    /// Wrap a matrix with its basis tag.
    pub fn new(matrix: Mat3, basis: Basis) -> Self {
        Self { matrix, basis }
    }

    /// Largest deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        self.matrix.hermiticity_error()
    }
}

/// Zero-field splitting, gyromagnetic ratio, and strain splitting, all
/// angular (rad/s, rad/s per tesla, rad/s).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    zero_field_splitting: f64,
    gyromagnetic_ratio: f64,
    strain_splitting: f64,
}

impl PhysicalConstants {
    /// Validated constructor.
    ///
    /// The strain splitting must be non-negative and stay below a tenth of
    /// the zero-field splitting; beyond that the near-crossing treatment of
    /// this crate stops making sense.
    pub fn new(
        zero_field_splitting: f64,
        gyromagnetic_ratio: f64,
        strain_splitting: f64,
    ) -> Result<Self> {
        if !zero_field_splitting.is_finite()
            || !gyromagnetic_ratio.is_finite()
            || !strain_splitting.is_finite()
        {
            return Err(Error::NonFinite("physical constants"));
        }
        if zero_field_splitting <= 0.0 {
            return Err(Error::InvalidConstants("zero-field splitting must be positive"));
        }
        if gyromagnetic_ratio <= 0.0 {
            return Err(Error::InvalidConstants("gyromagnetic ratio must be positive"));
        }
        if strain_splitting < 0.0 || strain_splitting >= zero_field_splitting / 10.0 {
            return Err(Error::InvalidConstants(
                "strain splitting must satisfy 0 <= strain < zero-field splitting / 10",
            ));
        }
        Ok(Self { zero_field_splitting, gyromagnetic_ratio, strain_splitting })
    }

    /// Standard values for the negatively charged nitrogen-vacancy defect:
    /// 2 pi x 2.87 GHz zero-field splitting, 2 pi x 28.03 GHz/T gyromagnetic
    /// ratio, zero strain.
    pub fn nv() -> Self {
        Self {
            zero_field_splitting: TAU * 2.87e9,
            gyromagnetic_ratio: TAU * 28.03e9,
            strain_splitting: 0.0,
        }
    }

    /// Same defaults with an explicit strain splitting (rad/s).
    pub fn nv_with_strain(strain_splitting: f64) -> Result<Self> {
        Self::new(TAU * 2.87e9, TAU * 28.03e9, strain_splitting)
    }

    /// Zero-field splitting (rad/s).
    pub fn zero_field_splitting(&self) -> f64 {
        self.zero_field_splitting
    }

    /// Gyromagnetic ratio (rad/s per tesla).
    pub fn gyromagnetic_ratio(&self) -> f64 {
        self.gyromagnetic_ratio
    }

    /// Strain splitting (rad/s).
    pub fn strain_splitting(&self) -> f64 {
        self.strain_splitting
    }

    /// Field magnitude (tesla) at which the axial Zeeman shift equals the
    /// zero-field splitting.
    pub fn crossing_field(&self) -> f64 {
        self.zero_field_splitting / self.gyromagnetic_ratio
    }
}

/// Magnetic field as an angular-frequency vector (rad/s per component).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldVector {
    x: f64,
    y: f64,
    z: f64,
}

impl FieldVector {
    /// Validated constructor; every component must be finite.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite("field vector component"));
        }
        Ok(Self { x, y, z })
    }

    /// Field of magnitude `b_tesla` along a unit direction.
    pub fn from_field(b_tesla: f64, direction: [f64; 3], constants: &PhysicalConstants) -> Result<Self> {
        let norm = (direction[0] * direction[0]
            + direction[1] * direction[1]
            + direction[2] * direction[2])
            .sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::DirectionNotNormalized);
        }
        let g = constants.gyromagnetic_ratio();
        Self::new(g * b_tesla * direction[0], g * b_tesla * direction[1], g * b_tesla * direction[2])
    }

    /// x component (rad/s).
    pub fn x(&self) -> f64 {
        self.x
    }

    /// y component (rad/s).
    pub fn y(&self) -> f64 {
        self.y
    }

    /// z component (rad/s).
    pub fn z(&self) -> f64 {
        self.z
    }

    /// Axial detuning from the crossing, `omega_z - omega_D` (rad/s).
    pub fn axial_detuning(&self, constants: &PhysicalConstants) -> f64 {
        self.z - constants.zero_field_splitting()
    }

    /// Transverse coupling entry `-sqrt(2) (omega_x - i omega_y)` (rad/s).
    pub fn transverse_coupling(&self) -> crate::mat::C64 {
        -core::f64::consts::SQRT_2 * c(self.x, -self.y)
    }

    /// Transverse drive phasor `omega_x + i omega_y` (rad/s).
    pub fn transverse_phasor(&self) -> crate::mat::C64 {
        c(self.x, self.y)
    }

    /// Diagonal energy of the far level, `(omega_D + 3 omega_z) / 2` (rad/s).
    pub fn far_level_energy(&self, constants: &PhysicalConstants) -> f64 {
        0.5 * (constants.zero_field_splitting() + 3.0 * self.z)
    }
}

/// The three spin-1 operators over hbar, `(S_x, S_y, S_z)`, in the
/// `m_S = (+1, 0, -1)` basis.
pub fn spin1_operators() -> (TripletMatrix, TripletMatrix, TripletMatrix) {
    let s = FRAC_1_SQRT_2;
    let sx = Mat3::from_rows([
        [cr(0.0), cr(s), cr(0.0)],
        [cr(s), cr(0.0), cr(s)],
        [cr(0.0), cr(s), cr(0.0)],
    ]);
    let sy = Mat3::from_rows([
        [cr(0.0), c(0.0, -s), cr(0.0)],
        [c(0.0, s), cr(0.0), c(0.0, -s)],
        [cr(0.0), c(0.0, s), cr(0.0)],
    ]);
    let sz = Mat3::diag([1.0, 0.0, -1.0]);
    (
        TripletMatrix::new(sx, Basis::Zeeman),
        TripletMatrix::new(sy, Basis::Zeeman),
        TripletMatrix::new(sz, Basis::Zeeman),
    )
}

/// Triplet Hamiltonian over hbar in the `m_S = (+1, 0, -1)` basis:
/// zero-field splitting, strain coupling of the outer levels, and the Zeeman
/// term `-omega . S / hbar`.
pub fn build_hamiltonian(field: &FieldVector, constants: &PhysicalConstants) -> TripletMatrix {
    let d = constants.zero_field_splitting();
    let e = constants.strain_splitting();
    // off-diagonal Zeeman entry (-omega_x + i omega_y)/sqrt(2)
    let t = FRAC_1_SQRT_2 * c(-field.x(), field.y());
    let m = Mat3::from_rows([
        [cr(d - field.z()), t, cr(e)],
        [t.conj(), cr(0.0), t],
        [cr(e), t.conj(), cr(d + field.z())],
    ]);
    TripletMatrix::new(m, Basis::Zeeman)
}

/// Same Hamiltonian with half the axial detuning added to the diagonal, the
/// form whose upper-left 2x2 block isolates the crossing pair.
///
/// Differs from [`build_hamiltonian`] by `(axial detuning / 2) * identity`
/// only; the far-level diagonal works out to `(omega_D + 3 omega_z) / 2`.
pub fn gslac_representation(field: &FieldVector, constants: &PhysicalConstants) -> TripletMatrix {
    let zd = field.axial_detuning(constants);
    let delta = field.transverse_coupling();
    let e = constants.strain_splitting();
    let m = Mat3::from_rows([
        [cr(-0.5 * zd), 0.5 * delta, cr(e)],
        [0.5 * delta.conj(), cr(0.5 * zd), 0.5 * delta],
        [cr(e), 0.5 * delta.conj(), cr(field.far_level_energy(constants))],
    ]);
    TripletMatrix::new(m, Basis::Crossing)
}

/// Exact level curves: for each field magnitude, the sorted eigenvalues of
/// the triplet Hamiltonian along a fixed unit direction.
///
/// Returns `(B, [E1, E2, E3])` pairs with energies ascending (rad/s).
pub fn eigen_levels(
    b_values: &[f64],
    direction: [f64; 3],
    constants: &PhysicalConstants,
) -> Result<Vec<(f64, [f64; 3])>> {
    let mut out = Vec::with_capacity(b_values.len());
    for &b in b_values {
        if !b.is_finite() {
            return Err(Error::NonFinite("field magnitude"));
        }
        let field = FieldVector::from_field(b, direction, constants)?;
        let h = build_hamiltonian(&field, constants);
        out.push((b, hermitian_eigenvalues(&h.matrix)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::C64;

    fn consts() -> PhysicalConstants {
        PhysicalConstants::nv()
    }

    #[test]
    fn operators_satisfy_spin1_algebra() {
        let (sx, sy, sz) = spin1_operators();
        assert_eq!(sz.matrix, Mat3::diag([1.0, 0.0, -1.0]));
        // S^2 = S(S+1) = 2
        let s2 = sx.matrix * sx.matrix + sy.matrix * sy.matrix + sz.matrix * sz.matrix;
        assert!(s2.max_abs_diff(&Mat3::identity().scale_re(2.0)) < 1e-15);
        // [Sx, Sy] = i Sz
        let comm = sx.matrix.commutator(&sy.matrix);
        assert!(comm.max_abs_diff(&sz.matrix.scale(c(0.0, 1.0))) < 1e-15);
        for op in [&sx, &sy, &sz] {
            assert!(op.hermiticity_error() < 1e-15);
        }
    }

    #[test]
    fn hamiltonian_matches_operator_sum() {
        // oracle route: assemble from the spin operators directly
        let cts = consts();
        let (sx, sy, sz) = spin1_operators();
        let field = FieldVector::new(1.0e8, -2.0e8, 3.0e9).unwrap();
        let sz2 = sz.matrix * sz.matrix;
        let splus = sx.matrix + sy.matrix.scale(c(0.0, 1.0));
        let sminus = sx.matrix + sy.matrix.scale(c(0.0, -1.0));
        let strain = (splus * splus + sminus * sminus).scale_re(0.5);
        let zeeman = sx.matrix.scale_re(field.x())
            + sy.matrix.scale_re(field.y())
            + sz.matrix.scale_re(field.z());
        let oracle = sz2.scale_re(cts.zero_field_splitting())
            + strain.scale_re(cts.strain_splitting())
            - zeeman;
        let h = build_hamiltonian(&field, &cts);
        assert!(h.matrix.max_abs_diff(&oracle) < 1e-6 * h.matrix.max_abs());
        assert!(h.hermiticity_error() < 1e-12 * h.matrix.max_abs());
    }

    #[test]
    fn zero_field_is_diagonal() {
        let cts = consts();
        let field = FieldVector::new(0.0, 0.0, 0.0).unwrap();
        let h = build_hamiltonian(&field, &cts);
        let d = cts.zero_field_splitting();
        assert!(h.matrix.max_abs_diff(&Mat3::diag([d, 0.0, d])) == 0.0);
    }

    #[test]
    fn crossing_field_gives_degenerate_pair() {
        let cts = consts();
        let field = FieldVector::new(0.0, 0.0, cts.zero_field_splitting()).unwrap();
        let h = build_hamiltonian(&field, &cts);
        let ev = hermitian_eigenvalues(&h.matrix);
        assert!(ev[0].abs() < 1e-6);
        assert!(ev[1].abs() < 1e-6);
        assert!((ev[2] - 2.0 * cts.zero_field_splitting()).abs() < 1e-3);
    }

    #[test]
    fn transverse_field_gap_against_independent_eigensolver() {
        // independent oracle: embed the complex Hermitian matrix as the real
        // symmetric [[Re, -Im], [Im, Re]] and use nalgebra's eigensolver
        let cts = consts();
        let wx = TAU * 10.0e6;
        let field = FieldVector::new(wx, 0.0, cts.zero_field_splitting()).unwrap();
        let h = build_hamiltonian(&field, &cts);
        let ours = hermitian_eigenvalues(&h.matrix);

        let mut embed = nalgebra::SMatrix::<f64, 6, 6>::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let e: C64 = h.matrix[(i, j)];
                embed[(i, j)] = e.re;
                embed[(i + 3, j + 3)] = e.re;
                embed[(i, j + 3)] = -e.im;
                embed[(i + 3, j)] = e.im;
            }
        }
        let mut doubled: Vec<f64> =
            embed.symmetric_eigenvalues().iter().copied().collect();
        doubled.sort_by(f64::total_cmp);
        // each eigenvalue appears twice in the embedding
        let oracle = [doubled[0], doubled[2], doubled[4]];

        let scale = ours[2].abs();
        for k in 0..3 {
            assert!(
                (ours[k] - oracle[k]).abs() < 1e-9 * scale,
                "level {k}: {} vs oracle {}",
                ours[k],
                oracle[k]
            );
        }
        // the crossing-pair gap approaches sqrt(2) * omega_x; the residual
        // coupling to the far level shifts it at the 1e-6 relative scale
        let gap = ours[1] - ours[0];
        let w_h = core::f64::consts::SQRT_2 * wx;
        assert!(((gap - w_h) / w_h).abs() < 2e-6, "gap {gap} vs {w_h}");
        let oracle_gap = oracle[1] - oracle[0];
        assert!(((gap - oracle_gap) / oracle_gap).abs() < 1e-9);
    }

    #[test]
    fn shifted_form_examples() {
        let cts = consts();
        // exactly at the crossing: upper 2x2 block vanishes
        let field = FieldVector::new(0.0, 0.0, cts.zero_field_splitting()).unwrap();
        let g = gslac_representation(&field, &cts);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(g.matrix[(i, j)], cr(0.0));
        }
        // detuned on-axis: diagonal (-zd/2, zd/2, far)
        let zd = TAU * 5.0e6;
        let field = FieldVector::new(0.0, 0.0, cts.zero_field_splitting() + zd).unwrap();
        let g = gslac_representation(&field, &cts);
        assert!((g.matrix[(0, 0)].re + 0.5 * zd).abs() < 1e-3);
        assert!((g.matrix[(1, 1)].re - 0.5 * zd).abs() < 1e-3);
        assert!(
            (g.matrix[(2, 2)].re - field.far_level_energy(&cts)).abs() < 1e-3
        );
    }

    #[test]
    fn shifted_form_is_identity_shift_of_hamiltonian() {
        use rand::{Rng, SeedableRng};
        let cts = consts();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let field = FieldVector::new(
                TAU * rng.gen_range(-5e7..5e7),
                TAU * rng.gen_range(-5e7..5e7),
                TAU * rng.gen_range(2.5e9..3.2e9),
            )
            .unwrap();
            let h = build_hamiltonian(&field, &cts);
            let g = gslac_representation(&field, &cts);
            let shift = Mat3::identity().scale_re(0.5 * field.axial_detuning(&cts));
            let diff = g.matrix - (h.matrix + shift);
            assert!(diff.max_abs() < 1e-12 * h.matrix.max_abs());
        }
    }

    #[test]
    fn level_curves_basics() {
        let cts = PhysicalConstants::nv_with_strain(TAU * 5.0e6).unwrap();
        let d = cts.zero_field_splitting();
        let e = cts.strain_splitting();
        let levels = eigen_levels(&[0.0], [0.0, 0.0, 1.0], &cts).unwrap();
        let (_, ev) = levels[0];
        assert!(ev[0].abs() < 1e-3);
        assert!((ev[1] - (d - e)).abs() < 1e-2);
        assert!((ev[2] - (d + e)).abs() < 1e-2);
    }

    #[test]
    fn misaligned_minimum_gap_matches_closed_form() {
        let cts = consts();
        let alpha = 1.0_f64.to_radians();
        let dir = [alpha.sin(), 0.0, alpha.cos()];
        let b0 = cts.crossing_field();
        let bs: Vec<f64> = (0..4001).map(|k| b0 * (0.98 + 0.04 * k as f64 / 4000.0)).collect();
        let levels = eigen_levels(&bs, dir, &cts).unwrap();
        let (b_min, gap_min) = levels
            .iter()
            .map(|(b, ev)| (*b, ev[1] - ev[0]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let predicted = core::f64::consts::SQRT_2 * cts.gyromagnetic_ratio() * b_min * alpha.sin();
        assert!(
            ((gap_min - predicted) / predicted).abs() < 0.01,
            "gap {gap_min} vs {predicted}"
        );
    }

    #[test]
    fn adjacent_levels_obey_perturbation_bound() {
        let cts = consts();
        let dir = [2.0_f64.to_radians().sin(), 0.0, 2.0_f64.to_radians().cos()];
        let bs: Vec<f64> = (0..500).map(|k| 0.08 + 0.04 * k as f64 / 499.0).collect();
        let levels = eigen_levels(&bs, dir, &cts).unwrap();
        for w in levels.windows(2) {
            let f0 = FieldVector::from_field(w[0].0, dir, &cts).unwrap();
            let f1 = FieldVector::from_field(w[1].0, dir, &cts).unwrap();
            let dh = build_hamiltonian(&f1, &cts).matrix - build_hamiltonian(&f0, &cts).matrix;
            let bound = dh.frobenius_norm() * (1.0 + 1e-12);
            for k in 0..3 {
                assert!((w[1].1[k] - w[0].1[k]).abs() <= bound);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let cts = consts();
        assert!(FieldVector::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(eigen_levels(&[0.1], [0.7, 0.0, 0.7], &cts).is_err());
        assert!(PhysicalConstants::new(TAU * 2.87e9, TAU * 28.03e9, TAU * 1e9).is_err());
        assert!(PhysicalConstants::new(-1.0, TAU * 28.03e9, 0.0).is_err());
    }
}
