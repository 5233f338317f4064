//! One-dimensional scalar optimization used by the closed-interval
//! maximizations in this crate.
//!
//! The workhorse is Brent's bracketed scheme: golden-section steps with
//! successive parabolic interpolation whenever the fit is trustworthy.
//! All objectives in this crate are unimodal on the interval they are
//! searched on, which is the regime the method is designed for.

/// `2 − φ`: the golden-section interior fraction.
const CGOLD: f64 = 0.381_966_011_250_105;

/// Minimizes `f` on `[lo, hi]` to absolute parameter tolerance `tol_abs`,
/// evaluating at most `max_iter` candidate points. Returns `(x, f(x))` for
/// the best point seen.
fn brent_min<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol_abs: f64,
    max_iter: usize,
) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    // `d` is the last step, `e` the one before it (drives the decision to
    // accept a parabolic step).
    let mut d = 0.0f64;
    let mut e = 0.0f64;

    for _ in 0..max_iter {
        let m = 0.5 * (a + b);
        let tol1 = tol_abs + f64::EPSILON * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }

        let mut take_golden = true;
        if e.abs() > tol1 {
            // Parabola through (v,fv), (w,fw), (x,fx).
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            e = d;
            // Accept the parabolic step only if it falls inside the bracket
            // and shrinks faster than the step two iterations ago.
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m > x { tol1 } else { -tol1 };
                }
                take_golden = false;
            }
        }
        if take_golden {
            e = if x < m { b - x } else { a - x };
            d = CGOLD * e;
        }

        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u);

        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv) = (w, fw);
            (w, fw) = (x, fx);
            (x, fx) = (u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv) = (w, fw);
                (w, fw) = (u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    (x, fx)
}

/// Maximizes `f` on `[lo, hi]`; see [`brent_min`] for the guarantees.
pub(crate) fn brent_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol_abs: f64,
    max_iter: usize,
) -> (f64, f64) {
    let (x, neg) = brent_min(|x| -f(x), lo, hi, tol_abs, max_iter);
    (x, -neg)
}

/// Refines an interior maximizer of a smooth concave `f` with Newton steps on
/// a central finite-difference gradient.
///
/// Value-comparison searches such as [`brent_max`] can localize a maximizer
/// only to within the flat top of the objective (≈ √ε of the parameter),
/// because closer to the optimum the function values are indistinguishable in
/// floating point.  The difference *gradient*, by contrast, passes through
/// zero linearly and pins the maximizer to ~1e-10.  Returns the start point
/// when it sits within the stencil width of an endpoint or the local
/// curvature estimate is not usably negative (boundary optima).
pub(crate) fn polish_interior_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    start: f64,
) -> f64 {
    let h = 1e-6;
    let mut x = start;
    for _ in 0..8 {
        if x - h <= lo || x + h >= hi {
            break;
        }
        let f_plus = f(x + h);
        let f_minus = f(x - h);
        let grad = (f_plus - f_minus) / (2.0 * h);
        let curv = (f_plus - 2.0 * f(x) + f_minus) / (h * h);
        // The negation sends NaN curvature to the bail-out path.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !grad.is_finite() || !(curv < -1e-9) {
            break;
        }
        let next = (x - grad / curv).clamp(lo, hi);
        let moved = (next - x).abs();
        x = next;
        if moved < 1e-13 {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_vertex() {
        let (x, fx) = brent_max(|x| 3.0 - (x - 0.3).powi(2), 0.0, 1.0, 1e-12, 200);
        assert!((x - 0.3).abs() < 1e-9, "x = {x}");
        assert!((fx - 3.0).abs() < 1e-15);
    }

    #[test]
    fn finds_transcendental_maximum() {
        // max of x·exp(-x) at x = 1.
        let (x, fx) = brent_max(|x| x * (-x).exp(), 0.0, 5.0, 1e-12, 200);
        assert!((x - 1.0).abs() < 1e-8, "x = {x}");
        assert!((fx - (-1.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn handles_maximum_at_interval_edge() {
        // Monotone increasing: optimum at the right endpoint. Brent never
        // evaluates the exact endpoint but must converge to within tolerance.
        let (x, _) = brent_max(|x| x, 0.0, 1.0, 1e-12, 200);
        assert!(1.0 - x < 1e-9, "x = {x}");
    }

    #[test]
    fn polish_sharpens_flat_top_maximizer() {
        // Flat-topped quartic-like objective: Brent alone leaves ~1e-8 slack,
        // the gradient polish recovers the vertex to ~1e-10.
        let f = |x: f64| 1.0 - 0.37 * (x - 0.3) * (x - 0.3);
        let (x0, _) = brent_max(f, 0.0, 1.0, 1e-12, 200);
        let x = polish_interior_max(f, 0.0, 1.0, x0);
        assert!((x - 0.3).abs() < 1e-9, "x = {x}");
        let grad = (f(x + 1e-6) - f(x - 1e-6)) / 2e-6;
        assert!(grad.abs() < 1e-8, "grad = {grad}");
    }

    #[test]
    fn polish_leaves_boundary_maximizer_alone() {
        // Monotone objective: the maximum sits on the right endpoint, where
        // the curvature test fails and the start point must come back as is.
        let x = polish_interior_max(|x| x, 0.0, 1.0, 1.0 - 1e-10);
        assert_eq!(x, 1.0 - 1e-10);
    }

    #[test]
    fn respects_iteration_cap() {
        let mut calls = 0usize;
        let _ = brent_max(
            |x| {
                calls += 1;
                -(x - 0.5).powi(2)
            },
            0.0,
            1.0,
            1e-12,
            10,
        );
        assert!(calls <= 11, "calls = {calls}");
    }
}
