//! Sideband expansion of a modulated drive and the steady-state polarization
//! coefficient of the dominant term.
//!
//! In the rotated frame the splitting of a driven pair is modulated as
//! `splitting - mod_amp * cos(mod_freq * t)` while a transverse tone couples
//! the pair at `drive_amp * exp(i * drive_freq * t)`. Absorbing the diagonal
//! into the interaction picture leaves a hollow matrix whose off-diagonal
//! element expands into sidebands weighted by Bessel functions: order `l`
//! carries amplitude `2 * drive_amp * J_l(mod_amp / mod_freq)` and detuning
//! `splitting - drive_freq - l * mod_freq`. When one sideband dominates, the
//! saturation of the pair is the usual two-level steady state.

use alloc::vec::Vec;

use crate::bessel::bessel_j_array;
use crate::frame::{LevelPair, StaticFrame};
use crate::mat::C64;
use crate::{Error, Result};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::FRAC_1_SQRT_2;

/// Longitudinal and transverse relaxation rates (rad/s).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelaxationRates {
    gamma1: f64,
    gamma2: f64,
}

impl RelaxationRates {
    /// Validated constructor; both rates must be positive and finite.
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        if !(gamma1.is_finite() && gamma2.is_finite()) {
            return Err(Error::NonFinite("relaxation rate"));
        }
        if gamma1 <= 0.0 || gamma2 <= 0.0 {
            return Err(Error::InvalidRates("rates must be positive"));
        }
        Ok(Self { gamma1, gamma2 })
    }

    /// Longitudinal (population) relaxation rate (rad/s).
    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    /// Transverse (coherence) relaxation rate (rad/s).
    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }
}

/// The five real parameters describing one driven pair: static splitting,
/// splitting-modulation amplitude and frequency, transverse drive amplitude
/// and frequency. All angular (rad/s).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveDecomposition {
    splitting: f64,
    mod_amp: f64,
    mod_freq: f64,
    drive_amp: f64,
    drive_freq: f64,
    pair: LevelPair,
}

impl DriveDecomposition {
    /// Validated constructor: frequencies positive, amplitudes non-negative,
    /// everything finite.
    pub fn new(
        splitting: f64,
        mod_amp: f64,
        mod_freq: f64,
        drive_amp: f64,
        drive_freq: f64,
        pair: LevelPair,
    ) -> Result<Self> {
        for v in [splitting, mod_amp, mod_freq, drive_amp, drive_freq] {
            if !v.is_finite() {
                return Err(Error::NonFinite("drive decomposition parameter"));
            }
        }
        if mod_freq <= 0.0 || drive_freq <= 0.0 {
            return Err(Error::InvalidDrive("modulation and drive frequencies must be positive"));
        }
        if mod_amp < 0.0 || drive_amp < 0.0 {
            return Err(Error::InvalidDrive("amplitudes must be non-negative"));
        }
        Ok(Self { splitting, mod_amp, mod_freq, drive_amp, drive_freq, pair })
    }

    /// Static splitting of the pair (rad/s).
    pub fn splitting(&self) -> f64 {
        self.splitting
    }

    /// Splitting-modulation amplitude (rad/s).
    pub fn mod_amp(&self) -> f64 {
        self.mod_amp
    }

    /// Splitting-modulation frequency (rad/s).
    pub fn mod_freq(&self) -> f64 {
        self.mod_freq
    }

    /// Transverse drive amplitude (rad/s).
    pub fn drive_amp(&self) -> f64 {
        self.drive_amp
    }

    /// Transverse drive frequency (rad/s).
    pub fn drive_freq(&self) -> f64 {
        self.drive_freq
    }

    /// Which level pair is driven.
    pub fn pair(&self) -> LevelPair {
        self.pair
    }

    /// Modulation index, the Bessel argument `mod_amp / mod_freq`.
    pub fn modulation_index(&self) -> f64 {
        self.mod_amp / self.mod_freq
    }

    /// Phase accumulated by the interaction picture up to time `t`:
    /// `splitting * t - (mod_amp / mod_freq) * sin(mod_freq * t)`.
    pub fn accumulated_phase(&self, t: f64) -> f64 {
        self.splitting * t - self.modulation_index() * (self.mod_freq * t).sin()
    }
}

/// One sideband of the expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingTerm {
    /// Sideband order.
    pub order: i32,
    /// Signed amplitude `2 * drive_amp * J_order(modulation index)` (rad/s).
    pub amplitude: f64,
    /// Detuning `splitting - drive_freq - order * mod_freq` (rad/s).
    pub detuning: f64,
    /// Which level pair the term drives.
    pub pair: LevelPair,
}

/// The sideband series, possibly truncated below the requested maximum
/// order where the Bessel weights underflow.
#[derive(Clone, Debug)]
pub struct SidebandExpansion {
    /// Terms for orders `-l ..= l`, ascending.
    pub terms: Vec<MixingTerm>,
    /// True when orders were dropped because their weights underflow.
    pub truncated: bool,
}

/// Interaction-picture off-diagonal element: the rotated-frame element with
/// the accumulated diagonal phase removed. Diagonal elements of that picture
/// vanish identically, so only off-diagonal entries come through here.
pub fn hollow_frame_element(off_diagonal: C64, accumulated_phase: f64) -> C64 {
    off_diagonal * C64::from_polar(1.0, -accumulated_phase)
}

/// Expand the drive into sidebands up to `|order| <= l_max`.
///
/// Orders whose Bessel weight magnitude falls below 1e-300 at the tail are
/// dropped (and flagged), so amplitudes never silently denormalize.
pub fn sideband_expansion(d: &DriveDecomposition, l_max: u32) -> SidebandExpansion {
    let index = d.modulation_index();
    let weights = bessel_j_array(l_max, index);
    let mut l_eff = l_max as usize;
    // cap the underflowing tail; at index zero the weights are exactly the
    // Kronecker delta, which is fine as-is
    if index != 0.0 {
        while l_eff > 0 && weights[l_eff].abs() < 1e-300 {
            l_eff -= 1;
        }
    }
    let truncated = l_eff < l_max as usize;
    let mut terms = Vec::with_capacity(2 * l_eff + 1);
    for l in -(l_eff as i32)..=(l_eff as i32) {
        let j = if l < 0 {
            let w = weights[(-l) as usize];
            if l % 2 != 0 {
                -w
            } else {
                w
            }
        } else {
            weights[l as usize]
        };
        terms.push(MixingTerm {
            order: l,
            amplitude: 2.0 * d.drive_amp() * j,
            detuning: d.splitting() - d.drive_freq() - l as f64 * d.mod_freq(),
            pair: d.pair(),
        });
    }
    SidebandExpansion { terms, truncated }
}

/// Steady-state polarization coefficient of a single resonant term:
/// `x / (1 + (detuning/gamma2)^2 + x)` with `x = amplitude^2 / (gamma1
/// gamma2)`. Always in [0, 1); even in both arguments.
pub fn polarization_coefficient(amplitude: f64, detuning: f64, rates: &RelaxationRates) -> f64 {
    let x = amplitude * amplitude / (rates.gamma1() * rates.gamma2());
    let d = detuning / rates.gamma2();
    x / (1.0 + d * d + x)
}

/// Pick the sideband with the largest polarization coefficient.
///
/// Returns the winning term and the dominance ratio (best over second-best
/// coefficient, infinite when there is no competition). Deterministic: ties
/// keep the earliest term.
pub fn dominant_term(
    terms: &[MixingTerm],
    rates: &RelaxationRates,
) -> Option<(MixingTerm, f64)> {
    let mut best: Option<(usize, f64)> = None;
    let mut second = 0.0_f64;
    for (k, term) in terms.iter().enumerate() {
        let p = polarization_coefficient(term.amplitude, term.detuning, rates);
        match best {
            None => best = Some((k, p)),
            Some((_, pb)) if p > pb => {
                second = pb;
                best = Some((k, p));
            }
            Some(_) => second = second.max(p),
        }
    }
    best.map(|(k, pb)| {
        let ratio = if terms.len() == 1 || second == 0.0 { f64::INFINITY } else { pb / second };
        (terms[k], ratio)
    })
}

/// Decomposition for a single transverse tone driving the crossing pair.
///
/// The tone self-modulates the splitting through its longitudinal component
/// (amplitude `2^(-1/2) * drive_amp * sin(theta)`) at its own frequency,
/// while the surviving transverse envelope is `2^(-1/2) * drive_amp *
/// |sin^2(theta/2) - cos^2(theta/2)|`.
pub fn single_antenna_decomposition(
    drive_amp: f64,
    drive_freq: f64,
    frame: &StaticFrame,
) -> Result<DriveDecomposition> {
    single_antenna_pair_decomposition(LevelPair::OneTwo, drive_amp, drive_freq, frame)
}

/// Single-tone decomposition for an arbitrary level pair.
pub fn single_antenna_pair_decomposition(
    pair: LevelPair,
    drive_amp: f64,
    drive_freq: f64,
    frame: &StaticFrame,
) -> Result<DriveDecomposition> {
    let mod_amp = FRAC_1_SQRT_2 * drive_amp * frame.theta.sin().abs();
    DriveDecomposition::new(
        frame.pair_splitting(pair),
        mod_amp,
        drive_freq,
        transverse_pair_amplitude(pair, drive_amp, frame),
        drive_freq,
        pair,
    )
}

/// Decomposition for separate longitudinal and transverse tones driving the
/// crossing pair: the splitting modulation is `long_amp * cos(theta)` (the
/// difference of the rotated diagonal), the transverse envelope as in the
/// single-tone case.
pub fn two_antenna_decomposition(
    long_amp: f64,
    long_freq: f64,
    drive_amp: f64,
    drive_freq: f64,
    frame: &StaticFrame,
) -> Result<DriveDecomposition> {
    two_antenna_pair_decomposition(LevelPair::OneTwo, long_amp, long_freq, drive_amp, drive_freq, frame)
}

/// Two-tone decomposition for an arbitrary level pair.
pub fn two_antenna_pair_decomposition(
    pair: LevelPair,
    long_amp: f64,
    long_freq: f64,
    drive_amp: f64,
    drive_freq: f64,
    frame: &StaticFrame,
) -> Result<DriveDecomposition> {
    let cs = frame.theta.cos();
    // differences of the rotated diagonal (-cos, cos, 3) * amp / 2
    let mod_amp = match pair {
        LevelPair::OneTwo => long_amp * cs.abs(),
        LevelPair::OneThree => long_amp * 0.5 * (3.0 + cs).abs(),
        LevelPair::TwoThree => long_amp * 0.5 * (3.0 - cs).abs(),
    };
    DriveDecomposition::new(
        frame.pair_splitting(pair),
        mod_amp,
        long_freq,
        transverse_pair_amplitude(pair, drive_amp, frame),
        drive_freq,
        pair,
    )
}

/// Magnitude of the transformed transverse element coupling a pair, for a
/// real drive phasor of the given amplitude.
fn transverse_pair_amplitude(pair: LevelPair, drive_amp: f64, frame: &StaticFrame) -> f64 {
    let (sh, ch) = (0.5 * frame.theta).sin_cos();
    match pair {
        LevelPair::OneTwo => FRAC_1_SQRT_2 * drive_amp * (sh * sh - ch * ch).abs(),
        LevelPair::OneThree => FRAC_1_SQRT_2 * drive_amp * sh.abs(),
        LevelPair::TwoThree => FRAC_1_SQRT_2 * drive_amp * ch.abs(),
    }
}
