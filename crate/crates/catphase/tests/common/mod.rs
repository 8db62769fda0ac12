//! Shared helpers for the integration-test suites.
#![allow(dead_code)] // each suite uses its own subset

use catphase::CatState;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Fixed-seed RNG so every run exercises the same parameter sets.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random normalized amplitude pair, rejecting near-degenerate combinations
/// so relative-error comparisons stay meaningful.
pub fn random_amplitudes(rng: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    loop {
        let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let scale = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if scale < 1e-3 {
            continue;
        }
        let (a, b) = (a / scale, b / scale);
        // keep 1 + 2 I Re(a* b) safely positive for any I in [0, 1]
        if 1.0 + 2.0 * (a.conj() * b).re > 0.05 {
            return (a, b);
        }
    }
}

/// Random cat state inside the calibrated sweep domain
/// (`x0/eta <= 8`, `p0 eta / hbar <= 4`).
pub fn random_state(rng: &mut ChaCha8Rng) -> CatState {
    let (a, b) = random_amplitudes(rng);
    let eta = rng.gen_range(0.5..2.0);
    let x0 = rng.gen_range(0.0..8.0 * eta);
    let p0 = rng.gen_range(0.0..4.0 / eta);
    CatState::new(a, b, x0, p0, eta).expect("sampled state must be valid")
}

/// Interior maximizer of a smooth function: coarse grid argmax followed by
/// golden-section refinement of the bracketing interval.
pub fn refine_argmax<F>(f: F, min: f64, max: f64, coarse_points: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let xs = catphase::grid::linspace(min, max, coarse_points);
    let mut best = 0;
    let mut best_val = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let v = f(x);
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    let lo = xs[best.saturating_sub(1)];
    let hi = xs[(best + 1).min(xs.len() - 1)];
    golden_max(&f, lo, hi)
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 {
            break;
        }
        if f1 >= f2 {
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
    0.5 * (a + b)
}
