//! Wigner distribution of the cat state.
//!
//! Convention: `W(x,p) = (1/(pi hbar)) int Psi*(x+y) Psi(x-y) e^(2ipy/hbar) dy`,
//! so that `int int W dx dp = 1`, the marginals are the position and momentum
//! densities, and `|W| <= 1/(pi hbar)` everywhere.
//!
//! For the two-packet cat the transform evaluates in closed form to two
//! Gaussian lobes at `(+-x0, +-p0)` plus an interference structure centered
//! at the phase-space origin:
//!
//! ```text
//! W = (N^2/(pi hbar)) [ |a|^2 G(x-x0, p-p0) + |b|^2 G(x+x0, p+p0)
//!     + 2 E(x,p) (Re(a* b) cos th + Im(a* b) sin th) ]
//! G(u,v) = exp(-u^2/(2 eta^2) - 2 eta^2 v^2 / hbar^2)
//! E(x,p) = exp(-x^2/(2 eta^2) - 2 eta^2 p^2 / hbar^2)
//! th     = 2 (p0 x - x0 p) / hbar
//! ```
//!
//! The closed form is re-derived from the defining transform (the marginal
//! identities fix the sign of the `Im` term) and is validated against
//! [`quadrature`] in the test suite.

use crate::cat::CatState;
use crate::error::{Error, Result};
use crate::grid::{linspace, trapezoid};
use ndarray::Array2;
use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Rectangular phase-space sampling window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub nx: usize,
    pub np: usize,
}

impl PhaseSpaceGrid {
    pub fn new(x_min: f64, x_max: f64, p_min: f64, p_max: f64, nx: usize, np: usize) -> Result<Self> {
        for (name, v) in [
            ("x_min", x_min),
            ("x_max", x_max),
            ("p_min", p_min),
            ("p_max", p_max),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite { name, value: v });
            }
        }
        if x_max <= x_min || p_max <= p_min {
            return Err(Error::GridSpec("phase-space window must be ordered".into()));
        }
        if nx < 16 || np < 16 {
            return Err(Error::GridSpec(format!(
                "need at least 16 samples per axis, got {nx} x {np}"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            p_min,
            p_max,
            nx,
            np,
        })
    }

    /// Default window for a state: `+-(x0 + 6 eta)` in position and
    /// `+-(p0 + 3 hbar/eta)` in momentum, at 512 x 512. Resolves the
    /// interference fringes, whose momentum period is `pi hbar / x0`.
    pub fn default_for(state: &CatState) -> Self {
        let x_span = state.x0() + 6.0 * state.eta();
        let p_span = state.p0() + 6.0 * state.hbar() / (2.0 * state.eta());
        Self {
            x_min: -x_span,
            x_max: x_span,
            p_min: -p_span,
            p_max: p_span,
            nx: 512,
            np: 512,
        }
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dp(&self) -> f64 {
        (self.p_max - self.p_min) / (self.np - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.nx)
    }

    pub fn ps(&self) -> Vec<f64> {
        linspace(self.p_min, self.p_max, self.np)
    }

    /// True when the spacing meets the default acceptance bounds
    /// (`dx <= eta/8`, `dp <= hbar/(16 eta)`).
    pub fn resolves(&self, state: &CatState) -> bool {
        self.dx() <= state.eta() / 8.0 && self.dp() <= state.hbar() / (16.0 * state.eta())
    }
}

/// Closed-form Wigner value at a single phase-space point.
pub fn closed_form(state: &CatState, x: f64, p: f64) -> f64 {
    let eta2 = state.eta() * state.eta();
    let hbar = state.hbar();
    let h2 = hbar * hbar;
    let x0 = state.x0();
    let p0 = state.p0();
    let lobe = |u: f64, v: f64| (-u * u / (2.0 * eta2) - 2.0 * eta2 * v * v / h2).exp();
    let ab = state.a().conj() * state.b();
    let theta = 2.0 * (p0 * x - x0 * p) / hbar;
    let direct = state.a().norm_sqr() * lobe(x - x0, p - p0)
        + state.b().norm_sqr() * lobe(x + x0, p + p0);
    let cross = 2.0 * lobe(x, p) * (ab.re * theta.cos() + ab.im * theta.sin());
    let n2 = state.normalization() * state.normalization();
    n2 * (direct + cross) / (std::f64::consts::PI * hbar)
}

/// Wigner value by adaptive quadrature of the defining transform; the arbiter
/// for [`closed_form`]. Fails if the imaginary residue exceeds 1e-10.
pub fn quadrature(state: &CatState, x: f64, p: f64) -> Result<f64> {
    let hbar = state.hbar();
    let half_span = x.abs() + state.x0() + 12.0 * state.eta();
    let integrand = |y: f64| {
        state.wavefunction(x + y).conj()
            * state.wavefunction(x - y)
            * Complex64::new(0.0, 2.0 * p * y / hbar).exp()
    };
    let freq = 2.0 * p.abs() / hbar + 2.0 * state.p0() / hbar;
    let panels = crate::quad::panels_for_oscillation(2.0 * half_span, freq).max(4);
    let integral = crate::quad::integrate_complex(
        &integrand,
        -half_span,
        half_span,
        crate::quad::DEFAULT_ABS_TOL,
        panels,
    )?;
    if integral.im.abs() > 1e-10 {
        return Err(Error::ImaginaryResidue {
            residue: integral.im,
        });
    }
    Ok(integral.re / (std::f64::consts::PI * hbar))
}

/// Dense Wigner evaluation over a phase-space window.
#[derive(Debug, Clone)]
pub struct WignerField {
    pub grid: PhaseSpaceGrid,
    /// Row `i` holds `W(xs[i], ps[..])`.
    pub values: Array2<f64>,
    /// Most negative value on the grid.
    pub min_value: f64,
    /// Trapezoid mass `int int W dx dp` over the window.
    pub total_mass: f64,
    /// Set when the grid spacing exceeds the default resolution bounds.
    pub coarse: bool,
}

impl WignerField {
    /// Marginal densities: `int W dp` per row and `int W dx` per column.
    pub fn marginals(&self) -> (Vec<f64>, Vec<f64>) {
        let xs = self.grid.xs();
        let ps = self.grid.ps();
        let position = self
            .values
            .rows()
            .into_iter()
            .map(|row| trapezoid(&ps, row.as_slice().expect("row-major field")))
            .collect();
        let momentum = self
            .values
            .columns()
            .into_iter()
            .map(|col| {
                let col: Vec<f64> = col.iter().copied().collect();
                trapezoid(&xs, &col)
            })
            .collect();
        (position, momentum)
    }
}

/// Evaluate the closed form over the grid (parallel over rows when the
/// `parallel` feature is on). Mass and minimum are reduced sequentially in
/// row order, so repeated runs are bit-identical.
pub fn field(state: &CatState, grid: &PhaseSpaceGrid) -> Result<WignerField> {
    assemble(state, grid, eval_rows(state, grid))
}

/// Sequential twin of [`field`], independent of the `parallel` feature.
pub fn field_serial(state: &CatState, grid: &PhaseSpaceGrid) -> Result<WignerField> {
    assemble(state, grid, eval_rows_serial(state, grid))
}

fn assemble(state: &CatState, grid: &PhaseSpaceGrid, flat: Vec<f64>) -> Result<WignerField> {
    let values = Array2::from_shape_vec((grid.nx, grid.np), flat)
        .map_err(|e| Error::GridSpec(e.to_string()))?;
    let bound = 1.0 / (std::f64::consts::PI * state.hbar()) + 1e-9;
    let mut min_value = f64::INFINITY;
    for &v in values.iter() {
        debug_assert!(v.abs() <= bound, "universal Wigner bound violated: {v}");
        if v < min_value {
            min_value = v;
        }
    }
    let xs = grid.xs();
    let ps = grid.ps();
    let row_masses: Vec<f64> = values
        .rows()
        .into_iter()
        .map(|row| trapezoid(&ps, row.as_slice().expect("row-major field")))
        .collect();
    let total_mass = trapezoid(&xs, &row_masses);
    Ok(WignerField {
        grid: *grid,
        values,
        min_value,
        total_mass,
        coarse: !grid.resolves(state),
    })
}

#[cfg(feature = "parallel")]
fn eval_rows(state: &CatState, grid: &PhaseSpaceGrid) -> Vec<f64> {
    let xs = grid.xs();
    let ps = grid.ps();
    let mut flat = vec![0.0; grid.nx * grid.np];
    flat.par_chunks_mut(grid.np)
        .zip(xs.par_iter())
        .for_each(|(row, &x)| {
            for (cell, &p) in row.iter_mut().zip(&ps) {
                *cell = closed_form(state, x, p);
            }
        });
    flat
}

#[cfg(not(feature = "parallel"))]
fn eval_rows(state: &CatState, grid: &PhaseSpaceGrid) -> Vec<f64> {
    eval_rows_serial(state, grid)
}

fn eval_rows_serial(state: &CatState, grid: &PhaseSpaceGrid) -> Vec<f64> {
    let xs = grid.xs();
    let ps = grid.ps();
    let mut flat = Vec::with_capacity(grid.nx * grid.np);
    for &x in &xs {
        for &p in &ps {
            flat.push(closed_form(state, x, p));
        }
    }
    flat
}
