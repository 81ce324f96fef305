//! Property tests over randomized inputs.

use core::f64::consts::TAU;

use proptest::prelude::*;

use nvmix_core::bessel::bessel_j;
use nvmix_core::frame::{rotation, static_frame};
use nvmix_core::mat::Mat3;
use nvmix_core::eigen::hermitian_eigenvalues;
use nvmix_core::rwa::{polarization_coefficient, RelaxationRates};
use nvmix_core::spin::{build_hamiltonian, FieldVector, PhysicalConstants};

proptest! {
    #[test]
    fn hamiltonian_is_hermitian_with_fixed_trace(
        wx in -1e10f64..1e10,
        wy in -1e10f64..1e10,
        wz in -1e10f64..1e10,
    ) {
        let cts = PhysicalConstants::nv();
        let field = FieldVector::new(wx, wy, wz).unwrap();
        let h = build_hamiltonian(&field, &cts);
        let scale = h.matrix.max_abs();
        prop_assert!(h.hermiticity_error() <= 1e-12 * scale);
        // the Zeeman and strain terms are traceless
        let want = 2.0 * cts.zero_field_splitting();
        prop_assert!((h.matrix.trace().re - want).abs() <= 1e-12 * want.max(scale));
    }

    #[test]
    fn eigenvalues_ignore_transverse_field_orientation(
        wt in 1e6f64..5e8,
        wz in 0f64..4e10,
        phi in 0f64..TAU,
    ) {
        // with no strain the spectrum depends only on |transverse|
        let cts = PhysicalConstants::nv();
        let a = FieldVector::new(wt, 0.0, wz).unwrap();
        let b = FieldVector::new(wt * phi.cos(), wt * phi.sin(), wz).unwrap();
        let ea = hermitian_eigenvalues(&build_hamiltonian(&a, &cts).matrix);
        let eb = hermitian_eigenvalues(&build_hamiltonian(&b, &cts).matrix);
        let scale = ea[2].abs().max(1.0);
        for k in 0..3 {
            prop_assert!((ea[k] - eb[k]).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn rotation_is_unitary(theta in -10f64..10.0) {
        let u = rotation(theta);
        let uu = u.adjoint() * u;
        let uut = u * u.adjoint();
        prop_assert!(uu.max_abs_diff(&Mat3::identity()) < 1e-12);
        prop_assert!(uut.max_abs_diff(&Mat3::identity()) < 1e-12);
    }

    #[test]
    fn frame_splitting_matches_eigengap_without_strain(
        wx in 1e6f64..3e8,
        zd in -5e9f64..5e9,
    ) {
        // the closed-form crossing-pair splitting is the 2x2 block gap
        let cts = PhysicalConstants::nv();
        let field = FieldVector::new(wx, 0.0, cts.zero_field_splitting() + zd).unwrap();
        let frame = static_frame(&field, &cts).unwrap();
        let want = (zd * zd + 2.0 * wx * wx).sqrt();
        prop_assert!(((frame.splitting - want) / want).abs() < 1e-12);
    }

    #[test]
    fn coefficient_is_bounded_and_even(
        amp in 0f64..1e9,
        det in -1e9f64..1e9,
        g1 in 1e3f64..1e8,
        g2 in 1e3f64..1e8,
    ) {
        let rates = RelaxationRates::new(g1, g2).unwrap();
        let p = polarization_coefficient(amp, det, &rates);
        prop_assert!((0.0..1.0).contains(&p));
        prop_assert_eq!(p, polarization_coefficient(-amp, det, &rates));
        prop_assert_eq!(p, polarization_coefficient(amp, -det, &rates));
    }

    #[test]
    fn bessel_parity_and_bound(n in 0i32..40, x in -60f64..60.0) {
        let j = bessel_j(n, x);
        prop_assert!(j.abs() <= 1.0 + 1e-12);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((bessel_j(-n, x) - sign * j).abs() < 1e-12);
        prop_assert!((bessel_j(n, -x) - sign * j).abs() < 1e-12);
    }
}
