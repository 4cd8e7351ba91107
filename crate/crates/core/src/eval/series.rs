//! Truncated nested series with rigorous tail bounds.
//!
//! Each depth level is one pass over `m = 1..M` consuming the running prefix
//! sums of the level inside it, so the cost is `O(depth · M)` with a single
//! `O(M)` buffer reused across levels.

use num_complex::Complex64;

use super::approx::{ComplexApprox, KahanSum};
use super::RootTable;

/// `∫_L^∞ (α + u)^d e^{−cu} du`, in closed form.
pub(crate) fn log_power_tail(alpha: f64, d: u32, l: f64, c: f64) -> f64 {
    let mut falling = 1.0;
    let mut total = 0.0;
    for i in 0..=d {
        total += falling * (alpha + l).powi((d - i) as i32) / c.powi(i as i32 + 1);
        falling *= (d - i) as f64;
    }
    (-c * l).exp() * total
}

/// Bound `|Σ_{j≤m} wⱼ|` for a periodic sequence given by one period.
pub(crate) fn partial_sum_bound(period: &[Complex64]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut best: f64 = 0.0;
    for w in period {
        acc += w;
        best = best.max(acc.norm());
    }
    // the full-period sum is zero up to rounding
    best + acc.norm() + 1e-12
}

/// Bounds on the inner sums `|S₂(m)|`: `G(m) = C · (α + ln m)^d`.
struct InnerBound {
    c: f64,
    alpha: f64,
    d: u32,
}

impl InnerBound {
    fn at(&self, m: f64) -> f64 {
        self.c * (self.alpha + m.ln()).powi(self.d as i32)
    }

    /// `∫_M^∞ G(t) t^{−e} dt` for `e > 1`; `None` if `G(t)t^{−e}` is not
    /// yet decreasing at `M`.
    fn tail(&self, m: f64, e: f64) -> Option<f64> {
        (self.d as f64 <= e * (self.alpha + m.ln()))
            .then(|| self.c * log_power_tail(self.alpha, self.d, m.ln(), e - 1.0))
    }
}

/// One pass of the prefix recursion: replaces `buf[m]` (holding the inner
/// prefix sums `S_{i+1}(m)`) by `S_i(m) = Σ_{j≤m} w(j) S_{i+1}(j−1)`.
fn fold_level(buf: &mut [Complex64], weight: impl Fn(usize) -> Complex64) {
    let mut acc = KahanSum::new();
    let mut inner_prev = buf[0];
    buf[0] = Complex64::new(0.0, 0.0);
    for (m, slot) in buf.iter_mut().enumerate().skip(1) {
        let inner_here = *slot;
        acc.add(weight(m) * inner_prev);
        *slot = acc.total();
        inner_prev = inner_here;
    }
}

/// `Σ_{m₁>⋯>m_n>0, m₁≤M} ∏ wᵢ(mᵢ)`, outermost weight first.
fn nested_prefix(weights: &[Box<dyn Fn(usize) -> Complex64 + '_>], m: usize) -> Complex64 {
    let mut buf = vec![Complex64::new(1.0, 0.0); m + 1];
    for w in weights.iter().rev() {
        fold_level(&mut buf, w);
    }
    buf[m]
}

/// `L_∗(ks; twists)` by direct summation of `m₁ ≤ M`.
pub fn l_star_series(ks: &[u32], twists: &[u32], table: &RootTable, trunc: u64) -> ComplexApprox {
    let n = table.level() as u64;
    let k1 = ks[0];
    // block-align the cut when the outer sum is only conditionally convergent
    let m = if k1 == 1 { (trunc / n).max(1) * n } else { trunc } as usize;
    let weights: Vec<Box<dyn Fn(usize) -> Complex64>> = ks
        .iter()
        .zip(twists)
        .map(|(&k, &a)| {
            let t = table;
            Box::new(move |j: usize| t.power(a as i64 * j as i64) / (j as f64).powi(k as i32))
                as Box<dyn Fn(usize) -> Complex64>
        })
        .collect();
    let value = nested_prefix(&weights, m);

    let inner = InnerBound {
        c: ks[1..]
            .iter()
            .filter(|&&k| k >= 2)
            .map(|&k| 1.0 + 1.0 / (k as f64 - 1.0))
            .product(),
        alpha: 1.0,
        d: ks[1..].iter().filter(|&&k| k == 1).count() as u32,
    };
    let mf = m as f64;
    let tail = if k1 >= 2 {
        inner.tail(mf, k1 as f64)
    } else {
        let period: Vec<Complex64> = (1..=n).map(|j| table.power(twists[0] as i64 * j as i64)).collect();
        let ca = partial_sum_bound(&period);
        inner
            .tail(mf, 2.0)
            .map(|t| ca * (inner.at(mf + 1.0) / (mf + 1.0) + 2.0 * t))
    };
    let rounding = 8.0 * ks.len() as f64 * f64::EPSILON * inner.at(mf) * (1.0 + mf.ln());
    ComplexApprox::new(value, tail.unwrap_or(f64::INFINITY) + rounding)
}

/// `ζ_N(ks; twists) = N^n Σ_{mᵢ ≡ aᵢ} ∏ mᵢ^{−kᵢ}` by direct summation,
/// `k₁ ≥ 2`.
pub fn zeta_n_series(ks: &[u32], twists: &[u32], level: u32, trunc: u64) -> ComplexApprox {
    let n = level as usize;
    let nf = level as f64;
    let m = trunc as usize;
    let weights: Vec<Box<dyn Fn(usize) -> Complex64>> = ks
        .iter()
        .zip(twists)
        .map(|(&k, &a)| {
            let r = a as usize % n;
            Box::new(move |j: usize| {
                if j % n == r {
                    Complex64::new(nf / (j as f64).powi(k as i32), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }) as Box<dyn Fn(usize) -> Complex64>
        })
        .collect();
    let value = nested_prefix(&weights, m);

    let inner = InnerBound {
        c: ks[1..]
            .iter()
            .filter(|&&k| k >= 2)
            .map(|&k| nf + 1.0 / (k as f64 - 1.0))
            .product(),
        alpha: nf,
        d: ks[1..].iter().filter(|&&k| k == 1).count() as u32,
    };
    let mf = m as f64;
    let k1 = ks[0] as f64;
    let tail = inner
        .tail(mf, k1)
        .map(|t| nf * inner.at(mf + 1.0) / (mf + 1.0).powf(k1) + t);
    let rounding = 8.0 * ks.len() as f64 * f64::EPSILON * inner.at(mf) * nf * (nf + mf.ln());
    ComplexApprox::new(Complex64::new(value.re, 0.0), tail.unwrap_or(f64::INFINITY) + rounding)
}

/// `Σ_{m₁>m₂>0, m₁≤M} f(m₁) g(m₂) / (m₁ m₂^{k−1})` for period-`N` numerators
/// with `Σ_{period} f = 0`, and the Abel tail bound.
pub fn double_series_periodic(
    f: impl Fn(usize) -> Complex64,
    g: impl Fn(usize) -> Complex64,
    k: u32,
    level: u32,
    trunc: u64,
) -> ComplexApprox {
    let n = level as usize;
    let m = ((trunc as usize) / n).max(1) * n;
    let outer: Box<dyn Fn(usize) -> Complex64> = Box::new(|j| f(j) / j as f64);
    let inner: Box<dyn Fn(usize) -> Complex64> = Box::new(|j| g(j) / (j as f64).powi(k as i32 - 1));
    let value = nested_prefix(&[outer, inner], m);

    let period: Vec<Complex64> = (1..=n).map(&f).collect();
    let cf = partial_sum_bound(&period);
    let g_max = (1..=n).map(&g).map(|z| z.norm()).fold(0.0, f64::max);
    let kk = k as f64 - 1.0;
    let inner_bound = if k >= 3 {
        g_max * (1.0 + 1.0 / (kk - 1.0))
    } else {
        f64::INFINITY
    };
    let mf = m as f64;
    let tail = cf * 3.0 * inner_bound / (mf + 1.0);
    let rounding = 16.0 * f64::EPSILON * inner_bound * cf * (1.0 + mf.ln());
    ComplexApprox::new(value, tail + rounding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn tail_integral_closed_form() {
        // ∫_L^∞ e^{−u} du = e^{−L}; ∫_L^∞ u e^{−2u} du = e^{−2L}(L/2 + 1/4)
        assert!((log_power_tail(0.0, 0, 1.5, 1.0) - (-1.5f64).exp()).abs() < 1e-15);
        let want = (-4.0f64).exp() * (1.0 + 0.25);
        assert!((log_power_tail(0.0, 1, 2.0, 2.0) - want).abs() < 1e-15);
    }

    #[test]
    fn zeta_two_with_bound() {
        let t = RootTable::new(1);
        let v = l_star_series(&[2], &[0], &t, 100_000);
        let truth = PI * PI / 6.0;
        assert!((v.re - truth).abs() <= v.err);
        assert!(v.err < 2e-5);
    }

    #[test]
    fn alternating_harmonic_with_bound() {
        let t = RootTable::new(2);
        let v = l_star_series(&[1], &[1], &t, 1000);
        assert!((v.re + 2f64.ln()).abs() <= v.err, "{v}");
    }

    #[test]
    fn euler_double_with_bound() {
        let t = RootTable::new(1);
        let v = l_star_series(&[2, 1], &[0, 0], &t, 20_000);
        let z3 = 1.2020569031595942;
        assert!((v.re - z3).abs() <= v.err, "{v}");
    }

    #[test]
    fn odd_squares() {
        let v = zeta_n_series(&[2], &[1], 2, 100_000);
        assert!((v.re - PI * PI / 4.0).abs() <= v.err, "{v}");
        assert!(v.err < 1e-4);
    }
}
