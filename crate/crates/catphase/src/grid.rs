//! Small sampling helpers shared by the density and phase-space code.

/// `n` evenly spaced points covering `[min, max]` inclusive.
pub fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    assert!(max > min, "linspace needs an ordered range");
    let step = (max - min) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i + 1 == n {
                max
            } else {
                min + i as f64 * step
            }
        })
        .collect()
}

/// Trapezoid integral of samples `ys` over the (possibly non-uniform) grid `xs`.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2);
    let mut acc = 0.0;
    for i in 1..xs.len() {
        acc += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
    }
    acc
}

/// Index of the largest sample.
pub fn argmax(ys: &[f64]) -> usize {
    let mut best = 0;
    for (i, y) in ys.iter().enumerate() {
        if *y > ys[best] {
            best = i;
        }
    }
    best
}
