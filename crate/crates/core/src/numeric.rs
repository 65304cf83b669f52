//! Small numerical helpers shared across modules.

/// Order-insensitive compensated sum.
///
/// Terms are sorted before a Neumaier summation, so any permutation of the
/// same multiset of values yields the same bits.
pub fn canonical_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut v: Vec<f64> = values.into_iter().collect();
    v.sort_by(f64::total_cmp);
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in v {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Recursive pairwise summation, independent of how work is later split.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if values.len() <= LEAF {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute error `tol`.
///
/// The interval is first cut into `panels` equal pieces so narrow features
/// are not skipped by the first coarse estimate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let panel_tol = tol / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let lo = a + h * k as f64;
        let hi = if k + 1 == panels { b } else { lo + h };
        let fa = f(lo);
        let fb = f(hi);
        let m = 0.5 * (lo + hi);
        let fm = f(m);
        let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson_step(&f, lo, hi, fa, fm, fb, whole, panel_tol, 40);
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // stop once the error target drops below what doubles can resolve
    let floor = f64::EPSILON * (left.abs() + right.abs());
    if depth == 0 || delta.abs() <= 15.0 * tol.max(floor) {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sum_ignores_order() {
        let a = [1e16, 1.0, -1e16, 3.5, 0.1, 0.2];
        let mut b = a;
        b.reverse();
        assert_eq!(canonical_sum(a), canonical_sum(b));
        assert!((canonical_sum(a) - 4.8).abs() < 1e-12);
    }

    #[test]
    fn simpson_polynomials_and_sine() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-12, 1);
        assert!((v - 4.0).abs() < 1e-12);
        let s = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-10, 4);
        assert!((s - 2.0).abs() < 1e-10);
    }

    #[test]
    fn pairwise_matches_plain_sum() {
        let v: Vec<f64> = (0..1000).map(|i| i as f64 * 0.5).collect();
        assert_eq!(pairwise_sum(&v), 249750.0);
    }
}
