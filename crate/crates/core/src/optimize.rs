//! One-dimensional golden-section search.

/// `(3 − √5)/2`, the golden-section interior fraction.
const INV_PHI2: f64 = 0.381_966_011_250_105_1;

/// Result of a bracketed golden-section search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenResult {
    /// Best argument seen.
    pub arg: f64,
    /// Objective value at `arg`.
    pub value: f64,
    /// Width of the final bracket.
    pub width: f64,
}

/// Maximizes a unimodal `f` on `[a, b]` with at most `iters` bracket reductions,
/// stopping early once the bracket is narrower than `tol`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize, tol: f64) -> GoldenResult {
    if a > b {
        core::mem::swap(&mut a, &mut b);
    }
    let mut c = a + INV_PHI2 * (b - a);
    let mut d = b - INV_PHI2 * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for _ in 0..iters {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = a + INV_PHI2 * (b - a);
            fc = f(c);
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = b - INV_PHI2 * (b - a);
            fd = f(d);
            if fd > best.1 {
                best = (d, fd);
            }
        }
    }
    GoldenResult {
        arg: best.0,
        value: best.1,
        width: b - a,
    }
}

/// Minimizing counterpart of [`golden_max`].
pub fn golden_min(f: impl Fn(f64) -> f64, a: f64, b: f64, iters: usize, tol: f64) -> GoldenResult {
    let r = golden_max(|t| -f(t), a, b, iters, tol);
    GoldenResult {
        value: -r.value,
        ..r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let r = golden_max(|t| -(t - 0.3) * (t - 0.3), 0.0, 1.0, 200, 1e-14);
        assert!((r.arg - 0.3).abs() < 1e-7);
        assert!(r.width <= 1e-14);
    }

    #[test]
    fn handles_boundary_optimum() {
        let r = golden_min(|t| t, 0.0, 2.0, 100, 0.0);
        assert!(r.arg < 1e-15);
        assert!(r.value < 1e-15);
    }

    #[test]
    fn reversed_bracket() {
        let r = golden_min(|t: f64| (t - 1.5).abs(), 2.0, 1.0, 100, 1e-12);
        assert!((r.arg - 1.5).abs() < 1e-11);
    }
}
