//! Two-packet Gaussian cat state.
//!
//! The state is a normalized superposition of two Gaussian packets of common
//! width `eta`, centered at `+-x0` and carrying momenta `+-p0`:
//!
//! ```text
//! psi_pm(x) = (2 pi eta^2)^(-1/4) exp(-(x -+ x0)^2 / (4 eta^2) +- i p0 x / hbar)
//! Psi(x)    = N (a psi_+(x) + b psi_-(x)),   |a|^2 + |b|^2 = 1
//! N         = 1 / sqrt(1 + 2 I Re(a* b))
//! I         = <psi_+|psi_-> = exp(-2 p0^2 eta^2 / hbar^2 - x0^2 / (2 eta^2))
//! ```
//!
//! The packet overlap `I` controls everything downstream: `I ~ 0` is the
//! regime of phase-space interference and sub-Fourier displacement
//! sensitivity, `I ~ 1` the regime where the state acts as a weak-measurement
//! pointer.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Tolerance on |a|^2 + |b|^2 = 1 at construction.
const AMPLITUDE_TOL: f64 = 1e-12;
/// Positivity tolerance on the normalization denominator.
const DEGENERACY_TOL: f64 = 1e-14;

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { name, value })
    }
}

fn check_finite_complex(name: &'static str, value: Complex64) -> Result<()> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite {
            name,
            value: if value.re.is_finite() {
                value.im
            } else {
                value.re
            },
        })
    }
}

/// Normalized superposition of two counter-propagating Gaussian packets.
#[derive(Debug, Clone, PartialEq)]
pub struct CatState {
    a: Complex64,
    b: Complex64,
    x0: f64,
    p0: f64,
    eta: f64,
    hbar: f64,
    /// Packet overlap, cached at construction.
    inner: f64,
    /// Global normalization, cached at construction.
    norm: f64,
}

impl CatState {
    /// Build a cat state with `hbar = 1`.
    ///
    /// Signs of the geometry are absorbed into the amplitude conventions, so
    /// `x0 >= 0` and `p0 >= 0` are required; `eta` must be positive. The
    /// amplitudes must satisfy `|a|^2 + |b|^2 = 1` within 1e-12 and must not
    /// annihilate the state (e.g. `a = -b` with fully overlapping packets).
    pub fn new(a: Complex64, b: Complex64, x0: f64, p0: f64, eta: f64) -> Result<Self> {
        Self::with_hbar(a, b, x0, p0, eta, 1.0)
    }

    /// Build a cat state with an explicit value of `hbar`.
    pub fn with_hbar(
        a: Complex64,
        b: Complex64,
        x0: f64,
        p0: f64,
        eta: f64,
        hbar: f64,
    ) -> Result<Self> {
        check_finite_complex("a", a)?;
        check_finite_complex("b", b)?;
        check_finite("x0", x0)?;
        check_finite("p0", p0)?;
        check_finite("eta", eta)?;
        check_finite("hbar", hbar)?;
        if eta <= 0.0 {
            return Err(Error::OutOfRange {
                name: "eta",
                value: eta,
                reason: "packet width must be positive",
            });
        }
        if hbar <= 0.0 {
            return Err(Error::OutOfRange {
                name: "hbar",
                value: hbar,
                reason: "hbar must be positive",
            });
        }
        if x0 < 0.0 {
            return Err(Error::OutOfRange {
                name: "x0",
                value: x0,
                reason: "center offset must be non-negative (signs live in a, b)",
            });
        }
        if p0 < 0.0 {
            return Err(Error::OutOfRange {
                name: "p0",
                value: p0,
                reason: "packet momentum must be non-negative (signs live in a, b)",
            });
        }
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if (norm_sq - 1.0).abs() > AMPLITUDE_TOL {
            return Err(Error::AmplitudeNormalization { norm_sq });
        }
        let inner = packet_overlap(x0, p0, eta, hbar);
        let denominator = 1.0 + 2.0 * inner * (a.conj() * b).re;
        if denominator <= DEGENERACY_TOL {
            return Err(Error::DegenerateState { denominator });
        }
        Ok(Self {
            a,
            b,
            x0,
            p0,
            eta,
            hbar,
            inner,
            norm: 1.0 / denominator.sqrt(),
        })
    }

    /// The one-parameter amplitude family `a = (cos phi + i sin phi)/sqrt(2)`,
    /// `b = conj(a)`, which carries the purely imaginary weak value
    /// `i tan(phi)`.
    pub fn from_phase_angle(phi: f64, x0: f64, p0: f64, eta: f64, hbar: f64) -> Result<Self> {
        check_finite("phi", phi)?;
        let half = std::f64::consts::FRAC_1_SQRT_2;
        let a = Complex64::new(phi.cos(), phi.sin()) * half;
        Self::with_hbar(a, a.conj(), x0, p0, eta, hbar)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Packet overlap `I = <psi_+|psi_-> in [0, 1]`.
    pub fn inner_product(&self) -> f64 {
        self.inner
    }

    /// Global normalization constant `N`.
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    /// Component packet `psi_+` (upper sign) or `psi_-` (lower sign).
    pub fn packet(&self, x: f64, positive_branch: bool) -> Complex64 {
        let sign = if positive_branch { 1.0 } else { -1.0 };
        let eta2 = self.eta * self.eta;
        let prefactor = (2.0 * std::f64::consts::PI * eta2).powf(-0.25);
        let dx = x - sign * self.x0;
        let exponent = Complex64::new(-dx * dx / (4.0 * eta2), sign * self.p0 * x / self.hbar);
        prefactor * exponent.exp()
    }

    /// Position wavefunction `Psi(x)`, global normalization included.
    pub fn wavefunction(&self, x: f64) -> Complex64 {
        self.norm * (self.a * self.packet(x, true) + self.b * self.packet(x, false))
    }

    /// Pointwise position density `|Psi(x)|^2`.
    pub fn position_density_at(&self, x: f64) -> f64 {
        self.wavefunction(x).norm_sqr()
    }

    /// Momentum wavefunction `Phi(p)`, the analytic Fourier transform of
    /// `Psi` with convention `Phi(p) = (2 pi hbar)^(-1/2) int Psi(x) e^(-ipx/hbar) dx`.
    ///
    /// Each packet transforms to a Gaussian of width `hbar/(2 eta)` centered
    /// at `+-p0`, carrying an `x0`-dependent phase that produces the momentum
    /// interference fringes.
    pub fn momentum_wavefunction(&self, p: f64) -> Complex64 {
        self.norm
            * (self.a * self.momentum_packet(p, true) + self.b * self.momentum_packet(p, false))
    }

    fn momentum_packet(&self, p: f64, positive_branch: bool) -> Complex64 {
        let sign = if positive_branch { 1.0 } else { -1.0 };
        let eta2 = self.eta * self.eta;
        let h2 = self.hbar * self.hbar;
        let prefactor = (2.0 * eta2 / (std::f64::consts::PI * h2)).powf(0.25);
        let dp = p - sign * self.p0;
        let exponent = Complex64::new(-dp * dp * eta2 / h2, -sign * dp * self.x0 / self.hbar);
        prefactor * exponent.exp()
    }

    /// Pointwise momentum density `|Phi(p)|^2`.
    pub fn momentum_density_at(&self, p: f64) -> f64 {
        self.momentum_wavefunction(p).norm_sqr()
    }

    /// Position density sampled on `xs`.
    ///
    /// The grid must cover `[-(x0 + 6 eta), x0 + 6 eta]`; a spacing coarser
    /// than `eta / 10` sets the `coarse` flag on the result.
    pub fn position_density(&self, xs: &[f64]) -> Result<SampledDensity> {
        let span = self.x0 + 6.0 * self.eta;
        self.sampled(xs, span, self.eta, |x| self.position_density_at(x))
    }

    /// Momentum density sampled on `ps`.
    ///
    /// The grid must cover `[-(p0 + 3 hbar/eta), p0 + 3 hbar/eta]` (six
    /// momentum widths); the coarseness flag is scaled to the momentum width
    /// `hbar/(2 eta)`.
    pub fn momentum_density(&self, ps: &[f64]) -> Result<SampledDensity> {
        let width = self.hbar / (2.0 * self.eta);
        let span = self.p0 + 6.0 * width;
        self.sampled(ps, span, width, |p| self.momentum_density_at(p))
    }

    fn sampled<F>(&self, grid: &[f64], span: f64, width: f64, f: F) -> Result<SampledDensity>
    where
        F: Fn(f64) -> f64,
    {
        if grid.len() < 2 {
            return Err(Error::GridSpec("need at least two sample points".into()));
        }
        let (min, max) = (grid[0], *grid.last().unwrap());
        if min > -span || max < span {
            return Err(Error::GridTooNarrow {
                got_min: min,
                got_max: max,
                need_min: -span,
                need_max: span,
            });
        }
        let mut coarse = false;
        for w in grid.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::GridSpec("samples must be strictly increasing".into()));
            }
            if w[1] - w[0] > width / 10.0 {
                coarse = true;
            }
        }
        let values = grid.iter().map(|&x| f(x)).collect();
        Ok(SampledDensity { values, coarse })
    }
}

/// Closed-form packet overlap `exp(-2 p0^2 eta^2/hbar^2 - x0^2/(2 eta^2))`.
pub fn packet_overlap(x0: f64, p0: f64, eta: f64, hbar: f64) -> f64 {
    (-2.0 * p0 * p0 * eta * eta / (hbar * hbar) - x0 * x0 / (2.0 * eta * eta)).exp()
}

/// A density evaluated on a caller-supplied grid.
#[derive(Debug, Clone)]
pub struct SampledDensity {
    pub values: Vec<f64>,
    /// Set when the grid spacing exceeds a tenth of the relevant width.
    pub coarse: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{argmax, linspace, trapezoid};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn even_cat(x0: f64, p0: f64, eta: f64) -> CatState {
        let half = Complex64::new(FRAC_1_SQRT_2, 0.0);
        CatState::new(half, half, x0, p0, eta).unwrap()
    }

    #[test]
    fn identical_packets_have_unit_overlap() {
        let state = even_cat(0.0, 0.0, 1.0);
        assert!((state.inner_product() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn separated_packet_overlap_matches_exponent() {
        // exponent: 2 p0^2 eta^2 + x0^2 / 2 = 0.0002 + 18
        let state = even_cat(6.0, 0.01, 1.0);
        let want = (-18.0002f64).exp();
        assert!((state.inner_product() - want).abs() / want < 1e-14);
        assert!(state.inner_product() < 1e-7);
    }

    #[test]
    fn nearly_coincident_packets_overlap_near_one() {
        let state = even_cat(1e-4, 1e-3, 1.0);
        assert!((state.inner_product() - 0.999_998_0f64).abs() < 1e-6);
    }

    #[test]
    fn normalization_of_orthogonal_branches_is_one() {
        let state = even_cat(6.0, 0.01, 1.0);
        assert!((state.normalization() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn normalization_of_fully_overlapping_even_cat() {
        let state = even_cat(0.0, 0.0, 1.0);
        assert!((state.normalization() - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn phase_family_normalization_near_cancellation() {
        let state = CatState::from_phase_angle(PI / 2.02, 1e-4, 1e-3, 1.0, 1.0).unwrap();
        // 1 + 2 I Re(a*b) = 1 + I cos(2 phi) ~ 4.858e-4
        assert!((state.normalization() - 45.37).abs() < 0.05);
    }

    #[test]
    fn annihilating_superposition_is_rejected() {
        let half = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let err = CatState::new(half, -half, 0.0, 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateState { .. }));
    }

    #[test]
    fn unnormalized_amplitudes_are_rejected() {
        let err = CatState::new(
            Complex64::new(0.9, 0.0),
            Complex64::new(0.9, 0.0),
            1.0,
            0.0,
            1.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::AmplitudeNormalization { .. }));
    }

    #[test]
    fn non_finite_inputs_are_rejected() {
        let half = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(CatState::new(half, half, f64::NAN, 0.0, 1.0).is_err());
        assert!(CatState::new(Complex64::new(f64::INFINITY, 0.0), half, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn even_superposition_is_real_positive_at_origin() {
        let state = even_cat(3.0, 0.0, 1.0);
        let value = state.wavefunction(0.0);
        assert!(value.im.abs() < 1e-15);
        assert!(value.re > 0.0);
    }

    #[test]
    fn wavefunction_normalizes_on_wide_grid() {
        let state = CatState::from_phase_angle(PI / 2.02, 6.0, 0.01, 1.0, 1.0).unwrap();
        let xs = linspace(-14.0, 14.0, 20_001);
        let ys: Vec<f64> = xs.iter().map(|&x| state.position_density_at(x)).collect();
        assert!((trapezoid(&xs, &ys) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn strongly_separated_density_is_bimodal_at_centers() {
        let state = CatState::from_phase_angle(PI / 2.02, 6.0, 0.01, 1.0, 1.0).unwrap();
        let xs = linspace(-14.0, 14.0, 28_001);
        let d = state.position_density(&xs).unwrap();
        assert!(!d.coarse);
        let right: Vec<f64> = xs
            .iter()
            .zip(&d.values)
            .filter(|(x, _)| **x > 0.0)
            .map(|(_, v)| *v)
            .collect();
        let xs_right: Vec<f64> = xs.iter().copied().filter(|x| *x > 0.0).collect();
        let peak_right = xs_right[argmax(&right)];
        assert!((peak_right - 6.0).abs() < 0.05);
        let left: Vec<f64> = xs
            .iter()
            .zip(&d.values)
            .filter(|(x, _)| **x < 0.0)
            .map(|(_, v)| *v)
            .collect();
        let xs_left: Vec<f64> = xs.iter().copied().filter(|x| *x < 0.0).collect();
        let peak_left = xs_left[argmax(&left)];
        assert!((peak_left + 6.0).abs() < 0.05);
    }

    #[test]
    fn single_branch_density_is_the_component_gaussian() {
        let state = CatState::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 2.0, 0.5, 0.7)
            .unwrap();
        let xs = linspace(-10.0, 10.0, 4001);
        let d = state.position_density(&xs).unwrap();
        let i = argmax(&d.values);
        assert!((xs[i] - 2.0).abs() < 0.01);
        for (&x, &v) in xs.iter().zip(&d.values) {
            let dx: f64 = x - 2.0;
            let want = (2.0 * PI * 0.49).sqrt().recip() * (-dx * dx / (2.0 * 0.49)).exp();
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn single_branch_momentum_density_is_gaussian_at_p0() {
        let state = CatState::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 2.0, 0.5, 0.7)
            .unwrap();
        let sigma = 1.0 / (2.0 * 0.7); // hbar / (2 eta)
        let ps = linspace(-6.0, 6.0, 4001);
        let d = state.momentum_density(&ps).unwrap();
        let i = argmax(&d.values);
        assert!((ps[i] - 0.5).abs() < 0.01);
        for (&p, &v) in ps.iter().zip(&d.values) {
            let dp: f64 = p - 0.5;
            let want =
                (2.0 * PI * sigma * sigma).sqrt().recip() * (-dp * dp / (2.0 * sigma * sigma)).exp();
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn narrow_grid_is_rejected() {
        let state = even_cat(6.0, 0.01, 1.0);
        let xs = linspace(-8.0, 8.0, 1001);
        assert!(matches!(
            state.position_density(&xs),
            Err(Error::GridTooNarrow { .. })
        ));
        let ps = linspace(-2.0, 2.0, 1001); // needs +-(p0 + 3)
        assert!(matches!(
            state.momentum_density(&ps),
            Err(Error::GridTooNarrow { .. })
        ));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn coincident_phase_family_density_is_unimodal_with_shifted_peak() {
        let state = CatState::from_phase_angle(PI / 2.02, 1e-4, 1e-3, 1.0, 1.0).unwrap();
        let xs = linspace(-8.0001, 8.0001, 16_001);
        let d = state.position_density(&xs).unwrap();
        let mut maxima = Vec::new();
        for k in 1..d.values.len() - 1 {
            if d.values[k] > d.values[k - 1] && d.values[k] > d.values[k + 1] {
                maxima.push(xs[k]);
            }
        }
        assert_eq!(maxima.len(), 1, "maxima at {maxima:?}");
        assert!((maxima[0] - (-0.129)).abs() <= 0.005, "peak {}", maxima[0]);
    }

    #[test]
    fn coarse_grid_is_flagged() {
        let state = even_cat(0.0, 0.0, 1.0);
        let xs = linspace(-7.0, 7.0, 41); // spacing 0.35 > eta/10
        let d = state.position_density(&xs).unwrap();
        assert!(d.coarse);
    }
}
