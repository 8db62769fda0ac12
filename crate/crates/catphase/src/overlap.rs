//! Overlap between a cat state and its phase-shifted copy.
//!
//! Shifting the state by `exp(i x delta)` and projecting back gives the
//! characteristic function of the position density. For a two-packet cat it
//! has the closed form
//!
//! ```text
//! C(delta) = N^2 e^(-eta^2 delta^2 / 2) [ |a|^2 e^(i x0 delta)
//!          + |b|^2 e^(-i x0 delta)
//!          + I (a* b e^z + a b* e^(-z)) ],     z = 2 p0 eta^2 delta / hbar
//! ```
//!
//! so `|C(0)| = 1` identically and `|C| <= 1` everywhere. When the packets
//! are far apart (`I ~ 0`) the surviving `cos(x0 delta)` factor drives the
//! overlap to zero at displacements much smaller than the single-packet decay
//! scale `1/eta`; those sub-Fourier zeros are what [`find_zeros`] locates.
//! Since the overlap is a squared modulus it touches zero without changing
//! sign, so zeros are refined as minima, not bracketed sign changes.

use crate::cat::CatState;
use crate::error::{Error, Result};
use crate::grid::linspace;
use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A refined minimum counts as a zero when the overlap drops below this.
pub const ZERO_THRESHOLD: f64 = 1e-10;

/// Phase-shift parameter together with its derived dimensionless exponent
/// `z = 2 p0 eta^2 delta / hbar`. Always construct from the source state so
/// the two never drift apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapShift {
    delta: f64,
    z: f64,
}

impl OverlapShift {
    pub fn new(state: &CatState, delta: f64) -> Self {
        let eta = state.eta();
        Self {
            delta,
            z: 2.0 * state.p0() * eta * eta * delta / state.hbar(),
        }
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Closed-form overlap amplitude `<Psi'|Psi>` for a shift `delta`.
///
/// The cross terms are assembled in log space: `I e^(+-z)` can overflow on
/// its own even though the product with the Gaussian envelope is bounded
/// by 1 (`-v^2/2 +- z - 2u^2 = -(v -+ 2u)^2/2` with `v = eta delta`,
/// `u = p0 eta / hbar`, `z = 2uv`).
pub fn amplitude(state: &CatState, delta: f64) -> Complex64 {
    let shift = OverlapShift::new(state, delta);
    let eta = state.eta();
    let v = eta * delta;
    let u = state.p0() * eta / state.hbar();
    let x0 = state.x0();
    let half_sep = x0 * x0 / (2.0 * eta * eta);
    let n2 = state.normalization() * state.normalization();
    let a = state.a();
    let b = state.b();

    let direct = a.norm_sqr() * Complex64::new(-0.5 * v * v, x0 * delta).exp()
        + b.norm_sqr() * Complex64::new(-0.5 * v * v, -x0 * delta).exp();
    let envelope_exponent = -0.5 * v * v - 2.0 * u * u - half_sep;
    let cross_plus = (envelope_exponent + shift.z()).exp();
    let cross_minus = (envelope_exponent - shift.z()).exp();
    let cross = a.conj() * b * cross_plus + a * b.conj() * cross_minus;
    n2 * (direct + cross)
}

/// Squared-modulus overlap `|<Psi'|Psi>|^2` from the closed form.
pub fn value(state: &CatState, delta: f64) -> f64 {
    amplitude(state, delta).norm_sqr()
}

/// Independent overlap evaluation by adaptive quadrature of
/// `|int |Psi(x)|^2 e^(i x delta) dx|^2`; the arbiter for the closed form.
pub fn quadrature(state: &CatState, delta: f64) -> Result<f64> {
    let span = state.x0() + 10.0 * state.eta();
    let density_phase =
        |x: f64| Complex64::new(0.0, x * delta).exp() * state.position_density_at(x);
    let freq = delta.abs() + 2.0 * state.p0() / state.hbar();
    let panels = crate::quad::panels_for_oscillation(2.0 * span, freq).max(4);
    let integral = crate::quad::integrate_complex(
        &density_phase,
        -span,
        span,
        crate::quad::DEFAULT_ABS_TOL,
        panels,
    )?;
    Ok(integral.norm_sqr())
}

/// Inclusive scan range for [`find_zeros`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaRange {
    pub min: f64,
    pub max: f64,
}

impl DeltaRange {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::GridSpec("scan range must be finite".into()));
        }
        if min < 0.0 {
            return Err(Error::GridSpec("scan range must start at delta >= 0".into()));
        }
        if max <= min {
            return Err(Error::GridSpec("scan range must be ordered".into()));
        }
        Ok(Self { min, max })
    }
}

/// Sampled overlap profile with located zeros.
#[derive(Debug, Clone)]
pub struct OverlapProfile {
    /// Scan abscissas, strictly increasing.
    pub deltas: Vec<f64>,
    /// Overlap values in [0, 1] at the scan abscissas.
    pub values: Vec<f64>,
    /// Refined zero locations, strictly increasing.
    pub zeros: Vec<f64>,
    /// Smallest zero, if any exist in the range.
    pub first_zero: Option<f64>,
    /// Minimum spacing between consecutive zeros, when two or more exist.
    pub min_spacing: Option<f64>,
}

/// Scan the overlap on a uniform grid and refine every interior local
/// minimum by golden-section search; minima below [`ZERO_THRESHOLD`] are
/// reported as zeros.
///
/// An empty zero list is a valid outcome, not an error: it is the signature
/// of the fully-overlapping (`I ~ 1`) regime.
pub fn find_zeros(state: &CatState, range: DeltaRange, scan_points: usize) -> Result<OverlapProfile> {
    profile_impl(state, range, scan_points, scan_values)
}

/// Sequential twin of [`find_zeros`], independent of the `parallel` feature.
pub fn find_zeros_serial(
    state: &CatState,
    range: DeltaRange,
    scan_points: usize,
) -> Result<OverlapProfile> {
    profile_impl(state, range, scan_points, scan_values_serial)
}

fn profile_impl(
    state: &CatState,
    range: DeltaRange,
    scan_points: usize,
    scan: fn(&CatState, &[f64]) -> Vec<f64>,
) -> Result<OverlapProfile> {
    if scan_points < 100 {
        return Err(Error::GridSpec(format!(
            "scan needs at least 100 points, got {scan_points}"
        )));
    }
    let deltas = linspace(range.min, range.max, scan_points);
    let values = scan(state, &deltas);

    let mut zeros = Vec::new();
    for k in 1..deltas.len() - 1 {
        let is_min = values[k] <= values[k - 1]
            && values[k] <= values[k + 1]
            && (values[k] < values[k - 1] || values[k] < values[k + 1]);
        if !is_min {
            continue;
        }
        let (at, lowest) = golden_section_min(
            |d| value(state, d),
            deltas[k - 1],
            deltas[k + 1],
            1e-13,
            200,
        );
        if lowest <= ZERO_THRESHOLD {
            // Two scan minima can refine into the same touching point.
            if zeros
                .last()
                .is_none_or(|prev| at - prev > 10.0 * (deltas[1] - deltas[0]).min(1e-3))
            {
                zeros.push(at);
            }
        }
    }

    let first_zero = zeros.first().copied();
    let min_spacing = if zeros.len() >= 2 {
        zeros
            .windows(2)
            .map(|w| w[1] - w[0])
            .min_by(|a, b| a.total_cmp(b))
    } else {
        None
    };
    Ok(OverlapProfile {
        deltas,
        values,
        zeros,
        first_zero,
        min_spacing,
    })
}

#[cfg(feature = "parallel")]
fn scan_values(state: &CatState, deltas: &[f64]) -> Vec<f64> {
    deltas.par_iter().map(|&d| value(state, d)).collect()
}

#[cfg(not(feature = "parallel"))]
fn scan_values(state: &CatState, deltas: &[f64]) -> Vec<f64> {
    scan_values_serial(state, deltas)
}

fn scan_values_serial(state: &CatState, deltas: &[f64]) -> Vec<f64> {
    deltas.iter().map(|&d| value(state, d)).collect()
}

/// Golden-section minimization of `f` on `[a, b]`.
fn golden_section_min<F>(f: F, mut a: f64, mut b: f64, x_tol: f64, max_iter: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (b - a).abs() <= x_tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Sub-Fourier diagnostics of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    /// Packet overlap I.
    pub inner_product: f64,
    /// First overlap zero in the default scan range, if any.
    pub first_zero: Option<f64>,
    /// Single-packet overlap decay scale `1/eta`.
    pub fourier_scale: f64,
    /// True when a zero exists below the Fourier scale.
    pub sub_fourier: bool,
}

/// Default scan: 2000 points out to `max(5/eta, 4 pi / max(x0, eta))`, which
/// resolves both the Gaussian envelope and the fastest `cos(x0 delta)`
/// oscillation.
pub fn sensitivity_report(state: &CatState) -> Result<SensitivityReport> {
    let eta = state.eta();
    let max = (5.0 / eta).max(4.0 * std::f64::consts::PI / state.x0().max(eta));
    let profile = find_zeros(state, DeltaRange::new(0.0, max)?, 2000)?;
    let fourier_scale = 1.0 / eta;
    let sub_fourier = profile.first_zero.is_some_and(|z| z < fourier_scale);
    Ok(SensitivityReport {
        inner_product: state.inner_product(),
        first_zero: profile.first_zero,
        fourier_scale,
        sub_fourier,
    })
}
