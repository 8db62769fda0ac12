//! Phase-space analysis of two-packet Gaussian cat states.
//!
//! The crate revolves around one number: the overlap `I` between the two
//! Gaussian packets of a [`CatState`]. At `I ~ 0` the state carries
//! phase-space interference — Wigner negativity and displacement-overlap
//! zeros far below the Fourier scale `1/eta`. At `I ~ 1` the same state is a
//! weak-measurement pointer whose position density is shifted by the
//! imaginary part of a weak value. The two regimes are mutually exclusive,
//! and the [`sg`] module shows how both arise from one Stern-Gerlach
//! apparatus by tuning the field gradient and transit time.
//!
//! Modules:
//!
//! - [`cat`] — the state itself: normalization, densities, transforms.
//! - [`overlap`] — displacement overlap, zero finding, sub-Fourier report.
//! - [`wigner`] — Wigner function, negativity, marginals.
//! - [`weak`] — weak values, branch mapping, pointer-shift predictions.
//! - [`sg`] — Stern-Gerlach evolution, decoherence, post-selection.
//! - [`quad`] — the adaptive Gauss-Legendre engine used by the quadrature
//!   cross-checks that every closed form in the crate is tested against.
//!
//! Grid scans and field evaluations run data-parallel under the default
//! `parallel` feature (rayon); disabling it falls back to the sequential
//! paths, which are also exported (`*_serial`) for benchmarking.

pub mod cat;
pub mod error;
pub mod grid;
pub mod overlap;
pub mod quad;
pub mod sg;
pub mod weak;
pub mod wigner;

pub use cat::{CatState, SampledDensity};
pub use error::{Error, Result};
pub use overlap::{DeltaRange, OverlapProfile, OverlapShift, SensitivityReport};
pub use sg::{EvolvedPacketPair, ReducedSpinDensity, SgConfig};
pub use weak::{Regime, SpinSelection, WeakPointerApprox, WeakValue};
pub use wigner::{PhaseSpaceGrid, WignerField};
