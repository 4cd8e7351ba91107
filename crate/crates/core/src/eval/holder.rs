//! `L_∗` through its iterated-integral form and Hölder convolution.
//!
//! `L_∗(k; a) = (−1)^n Z(b)` where `Z(b₁,…,b_w) = ∫_{1>t₁>⋯>t_w>0} ∏ dtᵢ/(tᵢ − bᵢ)`
//! and `b` is `k₁−1` zeros, `ω^{−a₁}`, `k₂−1` zeros, `ω^{−(a₁+a₂)}`, …
//! The convolution splits `Z(b)` into integrals whose letters all have
//! modulus at least `1 + d > 1`; each of those is a geometrically
//! convergent nested series.

use num_complex::Complex64;

use super::approx::ComplexApprox;
use super::RootTable;

/// A letter of the integral: `0` or `ω^j`. Kept exact so that `1 − ω^0`
/// is an exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Point {
    Zero,
    Root(u32),
}

struct Series {
    value: Complex64,
    err: f64,
    bound: f64,
}

const TAIL_TARGET: f64 = 1e-18;
const MAX_TERMS: usize = 20_000;

/// Smallest `K` with `Σ_{n>K} C(n−1, g−1) rⁿ` below target, and that tail.
fn truncation(groups: usize, r: f64) -> (usize, f64) {
    let g = groups as f64;
    let mut t = r.powi(groups as i32);
    let mut n = groups;
    loop {
        // t = C(n−1, g−1) rⁿ; advance to n + 1
        let next = t * r * n as f64 / (n as f64 + 1.0 - g);
        let rho = r * (n as f64 + 1.0) / (n as f64 + 2.0 - g);
        if rho < 1.0 {
            let tail = next / (1.0 - rho);
            if tail < TAIL_TARGET || n >= MAX_TERMS {
                return (n, tail);
            }
        }
        t = next;
        n += 1;
    }
}

/// `Z(c₁,…,c_w)` for letters that are `0` or of modulus > 1, the last
/// one nonzero.
fn nested_series(word: &[Option<Complex64>]) -> Series {
    if word.is_empty() {
        return Series {
            value: Complex64::new(1.0, 0.0),
            err: 0.0,
            bound: 1.0,
        };
    }
    let mut groups: Vec<(i32, Complex64)> = Vec::new();
    let mut s = 0;
    for c in word {
        s += 1;
        if let Some(c) = c {
            groups.push((s, *c));
            s = 0;
        }
    }
    debug_assert_eq!(s, 0, "last letter must be nonzero");
    let r = groups.iter().map(|(_, c)| 1.0 / c.norm()).fold(0.0, f64::max);
    debug_assert!(r < 1.0);
    let (k_max, tail) = truncation(groups.len(), r);
    let bound = (r / (1.0 - r)).powi(groups.len() as i32);

    let mut prev: Vec<Complex64> = Vec::new();
    for (idx, &(s, c)) in groups.iter().enumerate().rev() {
        let inv = c.inv();
        let mut cur = vec![Complex64::new(0.0, 0.0); k_max + 1];
        if idx + 1 == groups.len() {
            let mut pw = Complex64::new(1.0, 0.0);
            for (n, slot) in cur.iter_mut().enumerate().skip(1) {
                pw *= inv;
                *slot = pw / (n as f64).powi(s);
            }
        } else {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 1..=k_max {
                acc = (acc + prev[n - 1]) * inv;
                cur[n] = acc / (n as f64).powi(s);
            }
        }
        prev = cur;
    }
    let sign = if groups.len().is_multiple_of(2) { 1.0 } else { -1.0 };
    let value: Complex64 = prev.iter().sum::<Complex64>() * sign;
    let rounding = 4.0 * (k_max * groups.len()) as f64 * f64::EPSILON * bound;
    Series {
        value,
        err: tail + rounding,
        bound,
    }
}

/// The scale `d` of the convolution: letters end up with modulus ≥ `1 + d`.
fn split_scale(level: u32) -> f64 {
    if level <= 2 {
        1.0
    } else {
        (2.0 * (std::f64::consts::PI / level as f64).sin()).min(1.0)
    }
}

fn integral(points: &[Point], table: &RootTable) -> ComplexApprox {
    let d = split_scale(table.level());
    let p = 1.0 + d;
    let q = (1.0 + d) / d;
    let one = Complex64::new(1.0, 0.0);
    let mut total = ComplexApprox::ZERO;
    for j in 0..=points.len() {
        let left: Vec<Option<Complex64>> = points[..j]
            .iter()
            .rev()
            .map(|pt| match pt {
                Point::Zero => Some(Complex64::new(q, 0.0)),
                Point::Root(0) => None,
                Point::Root(e) => Some((one - table.power(*e as i64)) * q),
            })
            .collect();
        let right: Vec<Option<Complex64>> = points[j..]
            .iter()
            .map(|pt| match pt {
                Point::Zero => None,
                Point::Root(e) => Some(table.power(*e as i64) * p),
            })
            .collect();
        let a = nested_series(&left);
        let b = nested_series(&right);
        let v = a.value * b.value;
        let err = a.bound * b.err + b.bound * a.err + a.err * b.err;
        let term = ComplexApprox::new(if j % 2 == 0 { v } else { -v }, err);
        total = total + term;
    }
    total
}

/// `L_∗(ks; twists)` at level `table.level()`; the caller guarantees
/// convergence (`k₁ ≥ 2`, or `k₁ = 1` with `a₁ ≢ 0`).
pub fn l_star(ks: &[u32], twists: &[u32], table: &RootTable) -> ComplexApprox {
    let n = table.level() as i64;
    let mut points = Vec::new();
    let mut cum = 0i64;
    for (&k, &a) in ks.iter().zip(twists) {
        cum += a as i64;
        points.extend(std::iter::repeat_n(Point::Zero, k as usize - 1));
        points.push(Point::Root((-cum).rem_euclid(n) as u32));
    }
    let z = integral(&points, table);
    if ks.len().is_multiple_of(2) {
        z
    } else {
        -z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn l(ks: &[u32], ts: &[u32], n: u32) -> ComplexApprox {
        l_star(ks, ts, &RootTable::new(n))
    }

    #[test]
    fn classical_values() {
        let z2 = l(&[2], &[0], 1);
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14, "{z2}");
        assert!(z2.err < 1e-12, "{}", z2.err);
        let log2 = l(&[1], &[1], 2);
        assert!((log2.re + 2f64.ln()).abs() < 1e-14);
        let z21 = l(&[2, 1], &[0, 0], 1);
        let z3 = l(&[3], &[0], 1);
        assert!((z21.re - z3.re).abs() < 1e-14);
        assert!((z3.re - 1.2020569031595942).abs() < 1e-14);
    }

    #[test]
    fn depth_one_at_level_three() {
        // Σ ω^m / m² = Li₂(ω); real part is Σ cos(2πm/3)/m² = −π²/18
        let v = l(&[2], &[1], 3);
        assert!((v.re + PI * PI / 18.0).abs() < 1e-14, "{v}");
    }

    #[test]
    fn large_level_uses_smaller_split() {
        // Σ cos(2πm/N)/m² = π²(1/6 − 1/N + 1/N²)
        let n = 12u32;
        let v = l(&[2], &[1], n);
        let nf = n as f64;
        let want = PI * PI * (1.0 / 6.0 - 1.0 / nf + 1.0 / (nf * nf));
        assert!((v.re - want).abs() < 1e-13, "{v} vs {want}");
    }
}
