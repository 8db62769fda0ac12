//! Weak values and weak-regime pointer approximations.
//!
//! A spin-1/2 system pre-selected in `a1 |up_z> + a2 |down_z>`, weakly coupled
//! to the meter through `sigma_x`, and post-selected in `|up_z>` leaves the
//! meter in the cat state with branch amplitudes `(a, b) ~ (a1 + a2, a1 - a2)`.
//! The post-selected expectation `<up_z|sigma_x|chi_in> / <up_z|chi_in>`
//! collapses to the ratio `a2 / a1`, which may be complex and arbitrarily
//! large.
//!
//! When the two meter packets overlap almost completely (`I >= 0.99`) the
//! exact cat state is well approximated by a single Gaussian whose phase
//! carries the weak value; its position density is then peaked at
//! `-2 p0 eta^2 Im(a2/a1) / hbar` and, for a real weak value, the momentum
//! density is peaked at `p0 Re(a2/a1)`. Outside that regime the
//! approximation is refused: that refusal is the complementarity statement,
//! since the same `I` going to zero is what produces the sub-Fourier
//! interference structure.

use crate::cat::CatState;
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Threshold on I above which the weak-pointer expansion is accepted.
pub const WEAK_THRESHOLD: f64 = 0.99;
/// Threshold on I below which the measurement is effectively projective.
pub const STRONG_THRESHOLD: f64 = 0.01;

fn check_finite(name: &'static str, value: Complex64) -> Result<()> {
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

/// Pre-selected spin state `a1 |up_z> + a2 |down_z>`, measured observable
/// `sigma_x`, post-selection `|up_z>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSelection {
    a1: Complex64,
    a2: Complex64,
}

impl SpinSelection {
    pub fn new(a1: Complex64, a2: Complex64) -> Result<Self> {
        check_finite("a1", a1)?;
        check_finite("a2", a2)?;
        let norm_sq = a1.norm_sqr() + a2.norm_sqr();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::AmplitudeNormalization { norm_sq });
        }
        Ok(Self { a1, a2 })
    }

    /// Selection whose weak value is `i tan(phi)`: `a1 = cos(phi)`,
    /// `a2 = i sin(phi)`. This is the spin-side parametrization of
    /// [`CatState::from_phase_angle`].
    pub fn from_phase_angle(phi: f64) -> Result<Self> {
        Self::new(
            Complex64::new(phi.cos(), 0.0),
            Complex64::new(0.0, phi.sin()),
        )
    }

    pub fn a1(&self) -> Complex64 {
        self.a1
    }

    pub fn a2(&self) -> Complex64 {
        self.a2
    }
}

/// Measurement regime classified by the packet overlap I.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// I <= 0.01: projective measurement, pointer at the eigenvalues.
    Strong,
    /// I >= 0.99: weak measurement, pointer at the weak value.
    Weak,
    Intermediate,
}

impl Regime {
    pub fn classify(inner_product: f64) -> Self {
        if inner_product >= WEAK_THRESHOLD {
            Regime::Weak
        } else if inner_product <= STRONG_THRESHOLD {
            Regime::Strong
        } else {
            Regime::Intermediate
        }
    }
}

/// Weak value `a2 / a1` of `sigma_x` for the standard pre/post-selection.
///
/// Reported as an error (not computed) when `|a1| <= 1e-12`, where the ratio
/// grows without bound.
pub fn weak_value(sel: &SpinSelection) -> Result<Complex64> {
    let a1_abs = sel.a1.norm();
    if a1_abs <= 1e-12 {
        return Err(Error::DivergentWeakValue { a1_abs });
    }
    Ok(sel.a2 / sel.a1)
}

/// Weak value annotated with the regime of the meter state it would be read
/// out from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakValue {
    pub value: Complex64,
    pub regime: Regime,
}

impl WeakValue {
    pub fn evaluate(sel: &SpinSelection, state: &CatState) -> Result<Self> {
        Ok(Self {
            value: weak_value(sel)?,
            regime: Regime::classify(state.inner_product()),
        })
    }
}

/// Cat-state branch amplitudes for a spin selection:
/// `(a, b) = (a1 + a2, a1 - a2)` rescaled to `|a|^2 + |b|^2 = 1`.
pub fn branch_amplitudes(sel: &SpinSelection) -> (Complex64, Complex64) {
    let a = sel.a1 + sel.a2;
    let b = sel.a1 - sel.a2;
    let scale = (a.norm_sqr() + b.norm_sqr()).sqrt();
    (a / scale, b / scale)
}

/// Inverse of [`branch_amplitudes`]: recover the spin selection from cat
/// branch amplitudes.
pub fn selection_from_branches(a: Complex64, b: Complex64) -> Result<SpinSelection> {
    let a1 = a + b;
    let a2 = a - b;
    let scale = (a1.norm_sqr() + a2.norm_sqr()).sqrt();
    SpinSelection::new(a1 / scale, a2 / scale)
}

/// First-order pointer state in the weak regime: the Gaussian-with-complex-
/// phase shape `exp(-x^2/(4 eta^2) + i p0 x w / hbar)` with `w = a2/a1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakPointerApprox {
    weak_value: Complex64,
    eta: f64,
    p0: f64,
    hbar: f64,
    center: f64,
}

impl WeakPointerApprox {
    /// Unnormalized approximate wavefunction shape.
    pub fn amplitude(&self, x: f64) -> Complex64 {
        let eta2 = self.eta * self.eta;
        let phase = Complex64::new(0.0, self.p0 * x / self.hbar) * self.weak_value;
        (Complex64::new(-x * x / (4.0 * eta2), 0.0) + phase).exp()
    }

    /// Normalized approximate position density: a Gaussian of width `eta`
    /// centered at `-2 p0 eta^2 Im(w) / hbar`.
    pub fn density(&self, x: f64) -> f64 {
        let eta2 = self.eta * self.eta;
        let dx = x - self.center;
        (2.0 * std::f64::consts::PI * eta2).sqrt().recip() * (-dx * dx / (2.0 * eta2)).exp()
    }

    /// Analytic maximizer of the approximate density.
    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn weak_value(&self) -> Complex64 {
        self.weak_value
    }
}

/// Build the weak-regime pointer approximation, refusing states outside the
/// weak regime (`I < 0.99`) and couplings for which the first-order phase
/// expansion breaks down over the packet support (checked at `x = 4 eta`,
/// which covers all but ~1e-4 of the Gaussian mass).
pub fn pointer_approx(state: &CatState, sel: &SpinSelection) -> Result<WeakPointerApprox> {
    let inner = state.inner_product();
    if inner < WEAK_THRESHOLD {
        return Err(Error::RegimeViolation {
            inner_product: inner,
            threshold: WEAK_THRESHOLD,
        });
    }
    let w = weak_value(sel)?;
    let magnitude = (state.p0() * 4.0 * state.eta() / state.hbar()) * w.norm();
    if magnitude >= 1.0 {
        return Err(Error::ExpansionOutOfRange { magnitude });
    }
    let center = -2.0 * state.p0() * state.eta() * state.eta() * w.im / state.hbar();
    Ok(WeakPointerApprox {
        weak_value: w,
        eta: state.eta(),
        p0: state.p0(),
        hbar: state.hbar(),
        center,
    })
}

/// Predicted position-density peak `-2 p0 eta^2 Im(a2/a1) / hbar` in the weak
/// regime. An imaginary weak value shifts the pointer in the same space the
/// coupling acts in.
pub fn position_peak_prediction(state: &CatState, sel: &SpinSelection) -> Result<f64> {
    Ok(pointer_approx(state, sel)?.center())
}

/// Predicted momentum-density peak `p0 Re(a2/a1)` in the weak regime.
/// Stated for real weak values only; a significant imaginary part is
/// rejected.
pub fn momentum_peak_prediction(state: &CatState, sel: &SpinSelection) -> Result<f64> {
    let approx = pointer_approx(state, sel)?;
    let w = approx.weak_value();
    if w.im.abs() > 1e-9 {
        return Err(Error::ImaginaryWeakValue { imaginary: w.im });
    }
    Ok(state.p0() * w.re)
}
