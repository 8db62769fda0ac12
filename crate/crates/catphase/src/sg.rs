//! Stern-Gerlach weak-measurement pipeline.
//!
//! A spin-1/2 beam crosses a field region with gradient `B` along x for a
//! transit time `tau`. The two spin components pick up opposite momentum
//! kicks `+-p'_x = +-mu B tau` and center offsets `+-p'_x tau / (2 m)`,
//! entangling spin with position. Projecting the spin onto `|up_z>` and
//! integrating out the spectator axes leaves the meter in exactly the
//! two-packet cat state, with
//!
//! ```text
//! x0 = p'_x tau / (2 m),    p0 = p'_x,
//! I  = exp(-mu^2 B^2 tau^4 / (8 m^2 eta^2) - 2 mu^2 B^2 tau^2 eta^2 / hbar^2)
//! ```
//!
//! so the packet overlap — and with it the weak/strong character of the
//! measurement — is set by the apparatus parameters alone. Wavepacket
//! spreading is neglected throughout; the common dynamical phase
//! `Delta = p'_x^2 tau / (6 m hbar)` cancels in every density.

use crate::cat::CatState;
use crate::error::{Error, Result};
use crate::weak::{branch_amplitudes, SpinSelection};
use num_complex::Complex64;

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFinite { name, value });
    }
    if value <= 0.0 {
        return Err(Error::OutOfRange {
            name,
            value,
            reason: "must be positive",
        });
    }
    Ok(())
}

/// Apparatus parameters of the weak-coupling Stern-Gerlach stage.
///
/// `b_gradient` may be zero (no coupling, packets stay put); every other
/// parameter is strictly positive. When a field-region length is supplied it
/// must satisfy `d = p_y tau / m` within 1e-9.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgConfig {
    mu: f64,
    b_gradient: f64,
    tau: f64,
    mass: f64,
    eta: f64,
    p_y: f64,
    d: f64,
    hbar: f64,
}

impl SgConfig {
    pub fn new(mu: f64, b_gradient: f64, tau: f64, mass: f64, eta: f64, p_y: f64) -> Result<Self> {
        Self::with_hbar(mu, b_gradient, tau, mass, eta, p_y, 1.0)
    }

    pub fn with_hbar(
        mu: f64,
        b_gradient: f64,
        tau: f64,
        mass: f64,
        eta: f64,
        p_y: f64,
        hbar: f64,
    ) -> Result<Self> {
        require_positive("mu", mu)?;
        require_positive("tau", tau)?;
        require_positive("m", mass)?;
        require_positive("eta", eta)?;
        require_positive("p_y", p_y)?;
        require_positive("hbar", hbar)?;
        if !b_gradient.is_finite() {
            return Err(Error::NonFinite {
                name: "B",
                value: b_gradient,
            });
        }
        if b_gradient < 0.0 {
            return Err(Error::OutOfRange {
                name: "B",
                value: b_gradient,
                reason: "field gradient must be non-negative",
            });
        }
        Ok(Self {
            mu,
            b_gradient,
            tau,
            mass,
            eta,
            p_y,
            d: p_y * tau / mass,
            hbar,
        })
    }

    /// Re-check an explicitly supplied field-region length against the
    /// transit relation `d = p_y tau / m`.
    pub fn with_field_length(mut self, d: f64) -> Result<Self> {
        require_positive("d", d)?;
        let expected = self.p_y * self.tau / self.mass;
        if (d - expected).abs() > 1e-9 * expected.max(1.0) {
            return Err(Error::InconsistentTransit { d, expected });
        }
        self.d = d;
        Ok(self)
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn b_gradient(&self) -> f64 {
        self.b_gradient
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn p_y(&self) -> f64 {
        self.p_y
    }

    pub fn field_length(&self) -> f64 {
        self.d
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Momentum kick `p'_x = mu B tau` acquired inside the field region.
    pub fn drift_momentum(&self) -> f64 {
        self.mu * self.b_gradient * self.tau
    }
}

/// The two evolved spin-component packets, reduced to the measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedPacketPair {
    drift_momentum: f64,
    center_offset: f64,
    phase_delta: f64,
    eta: f64,
    hbar: f64,
}

impl EvolvedPacketPair {
    pub fn drift_momentum(&self) -> f64 {
        self.drift_momentum
    }

    pub fn center_offset(&self) -> f64 {
        self.center_offset
    }

    /// Common dynamical phase `Delta = p'_x^2 tau / (6 m hbar)`.
    pub fn phase_delta(&self) -> f64 {
        self.phase_delta
    }

    /// Spin-up component: Gaussian at `+offset` with phase `+p'_x x / hbar`,
    /// both branches sharing the global phase `-Delta`.
    pub fn psi_plus(&self, x: f64) -> Complex64 {
        self.packet(x, 1.0)
    }

    /// Spin-down component: mirror image of [`Self::psi_plus`].
    pub fn psi_minus(&self, x: f64) -> Complex64 {
        self.packet(x, -1.0)
    }

    fn packet(&self, x: f64, sign: f64) -> Complex64 {
        let eta2 = self.eta * self.eta;
        let prefactor = (2.0 * std::f64::consts::PI * eta2).powf(-0.25);
        let dx = x - sign * self.center_offset;
        let exponent = Complex64::new(
            -dx * dx / (4.0 * eta2),
            sign * self.drift_momentum * x / self.hbar - self.phase_delta,
        );
        prefactor * exponent.exp()
    }
}

/// Solve the coupled-packet evolution across the field region, with
/// wavepacket spreading neglected.
pub fn evolve_packets(cfg: &SgConfig) -> EvolvedPacketPair {
    let drift = cfg.drift_momentum();
    EvolvedPacketPair {
        drift_momentum: drift,
        center_offset: drift * cfg.tau / (2.0 * cfg.mass),
        phase_delta: drift * drift * cfg.tau / (6.0 * cfg.mass * cfg.hbar),
        eta: cfg.eta,
        hbar: cfg.hbar,
    }
}

/// Packet overlap of the evolved pair,
/// `exp(-mu^2 B^2 tau^4 / (8 m^2 eta^2) - 2 mu^2 B^2 tau^2 eta^2 / hbar^2)`.
///
/// Identical to the cat-state overlap under the substitution
/// `x0 = p'_x tau/(2m)`, `p0 = p'_x`.
pub fn inner_product(cfg: &SgConfig) -> f64 {
    let drift = cfg.drift_momentum();
    let quad_term = drift * drift * cfg.tau * cfg.tau / (8.0 * cfg.mass * cfg.mass * cfg.eta * cfg.eta);
    let kick_term = 2.0 * drift * drift * cfg.eta * cfg.eta / (cfg.hbar * cfg.hbar);
    (-quad_term - kick_term).exp()
}

/// Position density of the spin-position entangled state with the spin traced
/// out: `|a|^2 |psi_+|^2 + |b|^2 |psi_-|^2`.
pub fn entangled_density(cfg: &SgConfig, sel: &SpinSelection, x: f64) -> f64 {
    let pair = evolve_packets(cfg);
    let (a, b) = branch_amplitudes(sel);
    a.norm_sqr() * pair.psi_plus(x).norm_sqr() + b.norm_sqr() * pair.psi_minus(x).norm_sqr()
}

/// Reduced 2x2 spin density matrix after the coupling stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSpinDensity {
    entries: [[Complex64; 2]; 2],
}

impl ReducedSpinDensity {
    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.entries[0][1] - self.entries[1][0].conj()).norm() <= tol
            && self.entries[0][0].im.abs() <= tol
            && self.entries[1][1].im.abs() <= tol
    }

    /// Eigenvalues of the 2x2 Hermitian matrix, ascending.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let t = self.trace().re;
        let d = (self.entries[0][0] * self.entries[1][1]
            - self.entries[0][1] * self.entries[1][0])
            .re;
        let disc = (t * t / 4.0 - d).max(0.0).sqrt();
        (t / 2.0 - disc, t / 2.0 + disc)
    }

    /// Purity `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let (lo, hi) = self.eigenvalues();
        lo * lo + hi * hi
    }
}

/// Reduced density matrix of the spin after coupling: populations are
/// untouched, coherences are damped by the packet overlap.
///
/// The overlap slot is kept complex (conjugated across the diagonal) even
/// though it is real and positive for this idealized field profile.
pub fn reduced_density_matrix(cfg: &SgConfig, sel: &SpinSelection) -> ReducedSpinDensity {
    let overlap = Complex64::new(inner_product(cfg), 0.0);
    let a1 = sel.a1();
    let a2 = sel.a2();
    ReducedSpinDensity {
        entries: [
            [
                Complex64::new(a1.norm_sqr(), 0.0),
                a1 * a2.conj() * overlap,
            ],
            [
                a1.conj() * a2 * overlap.conj(),
                Complex64::new(a2.norm_sqr(), 0.0),
            ],
        ],
    }
}

/// Post-select the spin in `|up_z>` and integrate out the spectator axes:
/// the meter collapses onto the cat state with branch amplitudes from the
/// pre-selection and geometry from the evolved packets.
pub fn post_select(cfg: &SgConfig, sel: &SpinSelection) -> Result<CatState> {
    let pair = evolve_packets(cfg);
    let (a, b) = branch_amplitudes(sel);
    CatState::with_hbar(
        a,
        b,
        pair.center_offset(),
        pair.drift_momentum(),
        cfg.eta,
        cfg.hbar,
    )
}

/// Cat-state geometry realized by an apparatus configuration:
/// `(x0, p0) = (p'_x tau / (2 m), p'_x)`.
pub fn cat_parameters(cfg: &SgConfig) -> (f64, f64) {
    let pair = evolve_packets(cfg);
    (pair.center_offset(), pair.drift_momentum())
}

/// Invert [`cat_parameters`]: find the gradient and transit time that realize
/// a target cat geometry for given `mu`, `m`, `eta`, `p_y`.
///
/// Requires `x0 > 0` and `p0 > 0`; the kick-free geometry `(0, 0)` and the
/// offset-only geometry `x0 > 0, p0 = 0` have no finite-time solution.
pub fn config_from_cat_parameters(
    x0: f64,
    p0: f64,
    mu: f64,
    mass: f64,
    eta: f64,
    p_y: f64,
    hbar: f64,
) -> Result<SgConfig> {
    if !(x0 > 0.0 && p0 > 0.0) {
        return Err(Error::UnsolvableInverse { x0, p0 });
    }
    let tau = 2.0 * mass * x0 / p0;
    let b_gradient = p0 / (mu * tau);
    SgConfig::with_hbar(mu, b_gradient, tau, mass, eta, p_y, hbar)
}
