//! One-dimensional maximisation and root finding on bounded intervals.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the maximiser of a unimodal `f` on `[lo, hi]`.
/// The endpoints are compared as well, so boundary maxima are returned
/// exactly. Values of `-inf` are allowed.
pub(crate) fn golden_section_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(lo, f(lo)), (hi, f(hi)), (mid, f(mid))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        })
}

/// Bisection for a zero of a decreasing function `g` on `[lo, hi]` given
/// `g(lo) > 0 > g(hi)`; returns the midpoint of the final bracket.
pub(crate) fn bisect_decreasing(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return mid;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bisection on any continuous `g` with a sign change on `[lo, hi]`,
/// stopping once `|g| <= abs_tol` or after 300 halvings.
pub(crate) fn bisect_sign_change(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, abs_tol: f64) -> (f64, f64) {
    let mut g_lo = g(lo);
    let mut best = (lo, g_lo);
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid);
        if g_mid.abs() < best.1.abs() {
            best = (mid, g_mid);
        }
        if g_mid.abs() <= abs_tol || mid <= lo || mid >= hi {
            break;
        }
        if (g_mid > 0.0) == (g_lo > 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    best
}
