//! Closed forms of the stuffle and shuffle sums over compositions, the sum
//! theorem and the weighted kernel element.

use num_bigint::BigInt;
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, word_from_indices, Alphabet, IndexVector, NCPoly};
use crate::error::AlgebraError;
use crate::mlv::{map_i_inv, shuffle, stuffle};

use super::catalog::{double_l_sum, double_l_weighted};
use super::{IdentityFamily, IdentityInstance, Params, Relation};

const THEOREM_TOL: f64 = 1e-6;

/// A parameter point `(N, k, n; a, a₁, …, a_{n−1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaPoint {
    pub level: u32,
    pub k: u32,
    pub n: u32,
    pub a: i64,
    pub av: Vec<i64>,
}

impl LemmaPoint {
    pub fn new(level: u32, k: u32, n: u32, a: i64, av: Vec<i64>) -> Result<Self, AlgebraError> {
        if n < 2 || k < n + 1 {
            return Err(AlgebraError::Parameter(format!(
                "need n ≥ 2 and k ≥ n + 1, got k = {k}, n = {n}"
            )));
        }
        if av.len() != n as usize - 1 {
            return Err(AlgebraError::Parameter(format!(
                "need {} twists a₁…a_{{n−1}}, got {}",
                n - 1,
                av.len()
            )));
        }
        Alphabet::mlv(level)?;
        Ok(LemmaPoint { level, k, n, a, av })
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Mlv(self.level)
    }

    fn params(&self) -> Params {
        let mut tw = vec![self.a];
        tw.extend(&self.av);
        Params::level(self.level).with_k(self.k).with_n(self.n).with_twists(&tw)
    }

    fn tag(&self) -> String {
        let tw: Vec<String> = std::iter::once(self.a)
            .chain(self.av.iter().copied())
            .map(|t| t.to_string())
            .collect();
        format!("N={}/k={}/n={}/a=({})", self.level, self.k, self.n, tw.join(","))
    }

    /// `D = (a₁, a₂ − a₁, …, a_{n−1} − a_{n−2})`.
    fn diffs(&self) -> Vec<i64> {
        (0..self.av.len())
            .map(|i| self.av[i] - if i == 0 { 0 } else { self.av[i - 1] })
            .collect()
    }
}

/// All compositions of `total` into `parts` positive parts, in
/// lexicographic order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 1..=rest.saturating_sub(parts as u32 - 1) {
            prefix.push(first);
            go(rest - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if total as usize >= parts {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

fn pow2(e: u32) -> i64 {
    1i64 << e
}

fn sum(c: &[u32]) -> u32 {
    c.iter().sum()
}

/// Accumulates `Σ c · z_{ks; ts}` with twists reduced mod N.
struct Builder {
    alphabet: Alphabet,
    poly: NCPoly,
}

impl Builder {
    fn new(alphabet: Alphabet) -> Self {
        Builder {
            alphabet,
            poly: NCPoly::zero(alphabet),
        }
    }

    fn push(&mut self, c: i64, ks: &[u32], ts: &[i64]) {
        if c == 0 {
            return;
        }
        let twists = ts.iter().map(|&t| self.alphabet.reduce_twist(t)).collect();
        let iv = IndexVector::new(ks.to_vec(), twists).expect("positive exponents");
        self.poly.add_term(word_from_indices(&iv, self.alphabet), rat(c));
    }

    fn word(&self, ks: &[u32], ts: &[i64]) -> NCPoly {
        let mut b = Builder::new(self.alphabet);
        b.push(1, ks, ts);
        b.poly
    }
}

fn splice(head: &[i64], mid: &[i64], tail: &[i64]) -> Vec<i64> {
    [head, mid, tail].concat()
}

fn bumped(d: &[i64], at: usize, by: i64) -> Vec<i64> {
    let mut v = d.to_vec();
    v[at] += by;
    v
}

/// The `(l, k₁, …, k_{n−1})` with `l + Σkᵢ = k`, `l ≥ 1`, `k₁ ≥ 2`.
fn split_points(p: &LemmaPoint) -> Vec<(u32, Vec<u32>)> {
    let m = p.n as usize - 1;
    (1..p.k)
        .flat_map(|l| {
            compositions(p.k - l, m)
                .into_iter()
                .filter(|c| c[0] >= 2)
                .map(move |c| (l, c))
        })
        .collect()
}

/// Both stuffle closed forms: brute-force product sums against the
/// displayed right-hand sides.
pub fn lemma41_check(p: &LemmaPoint) -> Result<(IdentityInstance, IdentityInstance), AlgebraError> {
    let n = p.n as usize;
    let (a, d) = (p.a, p.diffs());
    let b = Builder::new(p.alphabet());

    // leading exponent 1
    let mut lhs = NCPoly::zero(p.alphabet());
    for c in compositions(p.k - 1, n - 1).into_iter().filter(|c| c[0] >= 2) {
        let prod = stuffle(&map_i_inv(&b.word(&[1], &[a]))?, &map_i_inv(&b.word(&c, &p.av))?)?;
        lhs = lhs.add(&prod)?;
    }
    let mut rhs = Builder::new(p.alphabet());
    for c in compositions(p.k - 1, n - 1).into_iter().filter(|c| c[0] >= 2) {
        rhs.push(1, &[&[1][..], &c].concat(), &splice(&[a], &d, &[]));
    }
    for i in 2..=n {
        for c in compositions(p.k, n).into_iter().filter(|c| c[0] >= 2 && c[i - 1] == 1) {
            rhs.push(1, &c, &splice(&d[..i - 1], &[a], &d[i - 1..]));
        }
    }
    for c in compositions(p.k, n - 1).into_iter().filter(|c| c[0] >= 3) {
        rhs.push(1, &c, &bumped(&d, 0, a));
    }
    for i in 2..n {
        for c in compositions(p.k, n - 1)
            .into_iter()
            .filter(|c| c[0] >= 2 && c[i - 1] >= 2)
        {
            rhs.push(1, &c, &bumped(&d, i - 1, a));
        }
    }
    let first = IdentityInstance::new(
        format!("stuffle-sum-l1/{}", p.tag()),
        IdentityFamily::StuffleClosedForm,
        p.params(),
    )
    .with_sides(lhs, rhs.poly);

    // general leading exponent
    let mut lhs = NCPoly::zero(p.alphabet());
    for (l, c) in split_points(p) {
        let prod = stuffle(&map_i_inv(&b.word(&[l], &[a]))?, &map_i_inv(&b.word(&c, &p.av))?)?;
        lhs = lhs.add(&prod)?;
    }
    let mut rhs = Builder::new(p.alphabet());
    for c in compositions(p.k, n).into_iter().filter(|c| c[1] >= 2) {
        rhs.push(1, &c, &splice(&[a], &d, &[]));
    }
    for i in 1..n {
        for c in compositions(p.k, n).into_iter().filter(|c| c[0] >= 2) {
            rhs.push(1, &c, &splice(&d[..i], &[a], &d[i..]));
        }
    }
    for c in compositions(p.k, n - 1).into_iter().filter(|c| c[0] >= 2) {
        rhs.push(c[0] as i64 - 2, &c, &bumped(&d, 0, a));
    }
    for i in 2..n {
        for c in compositions(p.k, n - 1).into_iter().filter(|c| c[0] >= 2) {
            rhs.push(c[i - 1] as i64 - 1, &c, &bumped(&d, i - 1, a));
        }
    }
    let second = IdentityInstance::new(
        format!("stuffle-sum/{}", p.tag()),
        IdentityFamily::StuffleClosedForm,
        p.params(),
    )
    .with_sides(lhs, rhs.poly);
    Ok((first, second))
}

/// Both shuffle closed forms, including the power-of-two coefficients.
pub fn lemma42_check(p: &LemmaPoint) -> Result<(IdentityInstance, IdentityInstance), AlgebraError> {
    let n = p.n as usize;
    let (a, av) = (p.a, &p.av);
    let b = Builder::new(p.alphabet());

    let mut lhs = NCPoly::zero(p.alphabet());
    for c in compositions(p.k - 1, n - 1).into_iter().filter(|c| c[0] >= 2) {
        lhs = lhs.add(&shuffle(&b.word(&[1], &[a]), &b.word(&c, av))?)?;
    }
    let mut rhs = Builder::new(p.alphabet());
    for c in compositions(p.k, n).into_iter().filter(|c| c[0] + c[1] >= 3) {
        rhs.push(1, &c, &splice(&[a], av, &[]));
    }
    for c in compositions(p.k - 1, n - 1).into_iter().filter(|c| c[0] >= 2) {
        rhs.push(1, &[&c[..], &[1]].concat(), &splice(av, &[a], &[]));
    }
    for i in 2..n {
        for c in compositions(p.k, n).into_iter().filter(|c| c[0] >= 2) {
            rhs.push(1, &c, &splice(&av[..i - 1], &[a], &av[i - 1..]));
        }
    }
    let first = IdentityInstance::new(
        format!("shuffle-sum-l1/{}", p.tag()),
        IdentityFamily::ShuffleClosedForm,
        p.params(),
    )
    .with_sides(lhs, rhs.poly);

    let mut lhs = NCPoly::zero(p.alphabet());
    for (l, c) in split_points(p) {
        lhs = lhs.add(&shuffle(&b.word(&[l], &[a]), &b.word(&c, av))?)?;
    }
    let mut rhs = Builder::new(p.alphabet());
    for c in compositions(p.k, n) {
        let ts = splice(&[a], av, &[]);
        if c[1] >= 2 {
            rhs.push(pow2(c[0] - 1), &c, &ts);
        } else {
            rhs.push(pow2(c[0] - 1) - 1, &c, &ts);
        }
    }
    for i in 2..n {
        for c in compositions(p.k, n) {
            let coeff = pow2(sum(&c[..i]) - i as u32) - pow2(sum(&c[1..i]) - (i as u32 - 1));
            rhs.push(coeff, &c, &splice(&av[..i - 1], &[a], &av[i - 1..]));
        }
    }
    for c in compositions(p.k, n) {
        let coeff = pow2(sum(&c[..n - 1]) - (n as u32 - 1)) - pow2(sum(&c[1..n - 1]) - (n as u32 - 2));
        rhs.push(coeff, &c, &splice(av, &[a], &[]));
    }
    let second = IdentityInstance::new(
        format!("shuffle-sum/{}", p.tag()),
        IdentityFamily::ShuffleClosedForm,
        p.params(),
    )
    .with_sides(lhs, rhs.poly);
    Ok((first, second))
}

/// The binomial sums behind the power-of-two coefficients, for
/// `α = 1..=alpha_max`.
pub fn binomial_checks(alpha_max: u32) -> Vec<IdentityInstance> {
    let big = |x: u64| BigInt::from(x);
    let binom = |n: u32, k: i64| {
        if k < 0 || k > n as i64 {
            0
        } else {
            binomial(n as u64, k as u64)
        }
    };
    let mut out = Vec::new();
    for alpha in 1..=alpha_max {
        let params = Params::level(1).with_k(alpha);
        // Σ_{k₁ ≥ 2} C(α−1, k₁−1) = 2^{α−1} − 1
        let lhs: u64 = (2..=alpha as i64).map(|k1| binom(alpha - 1, k1 - 1)).sum();
        out.push(
            IdentityInstance::new(
                format!("binomial/leading/alpha={alpha}"),
                IdentityFamily::Binomial,
                params.clone(),
            )
            .with_integers(big(lhs), big((1 << (alpha - 1)) - 1)),
        );
        // Σ_{k=1}^{α} C(α−1, k−1) = 2^{α−1}
        let lhs: u64 = (1..=alpha as i64).map(|k| binom(alpha - 1, k - 1)).sum();
        out.push(
            IdentityInstance::new(
                format!("binomial/full/alpha={alpha}"),
                IdentityFamily::Binomial,
                params.clone(),
            )
            .with_integers(big(lhs), big(1 << (alpha - 1))),
        );
        // Σ_{k₁ ≥ max(2, β)} C(α−1, k₁−β) is 2^{α−1} − 1 for β = 1 and 2^{α−1} for β ≥ 2
        for beta in 1..=4i64 {
            let lhs: u64 = (beta.max(2)..=alpha as i64 + beta)
                .map(|k1| binom(alpha - 1, k1 - beta))
                .sum();
            let want = if beta == 1 {
                (1u64 << (alpha - 1)) - 1
            } else {
                1 << (alpha - 1)
            };
            out.push(
                IdentityInstance::new(
                    format!("binomial/shifted/alpha={alpha}/beta={beta}"),
                    IdentityFamily::Binomial,
                    params.clone(),
                )
                .with_integers(big(lhs), big(want)),
            );
        }
    }
    out
}

/// The sum theorem, as `LHS − RHS` over the MLV alphabet.
pub fn thm43_poly(p: &LemmaPoint) -> Result<NCPoly, AlgebraError> {
    let n = p.n as usize;
    let (a, av, d) = (p.a, &p.av, p.diffs());
    let mut e = Builder::new(p.alphabet());
    let lead = splice(&[a, av[0] - a], &d[1..], &[]);
    for c in compositions(p.k, n).into_iter().filter(|c| c[0] >= 2) {
        e.push(1, &c, &lead);
        for i in 2..n {
            e.push(1, &c, &splice(&d[..i - 1], &[a - av[i - 2], av[i - 1] - a], &d[i..]));
        }
        if c[n - 1] == 1 {
            e.push(1, &c, &splice(&d, &[a - av[n - 2]], &[]));
        }
    }
    for c in compositions(p.k, n).into_iter().filter(|c| c[0] == 1 && c[1] >= 2) {
        e.push(-1, &c, &splice(&[a, av[0]], &d[1..], &[]));
        e.push(1, &c, &lead);
    }
    for i in 2..=n {
        for c in compositions(p.k, n).into_iter().filter(|c| c[0] >= 2 && c[i - 1] == 1) {
            e.push(-1, &c, &splice(&d[..i - 1], &[a], &d[i - 1..]));
        }
    }
    for c in compositions(p.k, n - 1).into_iter().filter(|c| c[0] >= 3) {
        e.push(-1, &c, &bumped(&d, 0, a));
    }
    for i in 2..n {
        for c in compositions(p.k, n - 1)
            .into_iter()
            .filter(|c| c[0] >= 2 && c[i - 1] >= 2)
        {
            e.push(-1, &c, &bumped(&d, i - 1, a));
        }
    }
    Ok(e.poly)
}

/// The sum theorem; its `L_∗` value must vanish.
pub fn thm43_element(p: &LemmaPoint) -> Result<IdentityInstance, AlgebraError> {
    let poly = thm43_poly(p)?;
    Ok(IdentityInstance::new(
        format!("sum-theorem/{}", p.tag()),
        IdentityFamily::SumTheorem,
        p.params(),
    )
    .with_relation(Relation::from_mlv_poly(&poly)?)
    .with_tol(THEOREM_TOL))
}

/// The displayed weighted element (right-hand side of the theorem).
pub fn thm44_poly(p: &LemmaPoint) -> Result<NCPoly, AlgebraError> {
    let n = p.n as usize;
    let (a, av, d) = (p.a, &p.av, p.diffs());
    let mut e = Builder::new(p.alphabet());
    let lead = splice(&[a, av[0] - a], &d[1..], &[]);
    for c in compositions(p.k, n) {
        if c[1] >= 2 {
            e.push(pow2(c[0] - 1), &c, &lead);
            e.push(-1, &c, &splice(&[a, av[0]], &d[1..], &[]));
        }
        if c[0] < 2 {
            continue;
        }
        if c[1] == 1 {
            e.push(pow2(c[0] - 1) - 1, &c, &lead);
        }
        for i in 2..n {
            let coeff = pow2(sum(&c[..i]) - i as u32) - pow2(sum(&c[1..i]) - (i as u32 - 1));
            e.push(
                coeff,
                &c,
                &splice(&d[..i - 1], &[a - av[i - 2], av[i - 1] - a], &d[i..]),
            );
        }
        let coeff = pow2(sum(&c[..n - 1]) - (n as u32 - 1)) - pow2(sum(&c[1..n - 1]) - (n as u32 - 2));
        e.push(coeff, &c, &splice(&d, &[a - av[n - 2]], &[]));
        for i in 1..n {
            e.push(-1, &c, &splice(&d[..i], &[a], &d[i..]));
        }
    }
    for c in compositions(p.k, n - 1).into_iter().filter(|c| c[0] >= 2) {
        e.push(-(c[0] as i64 - 2), &c, &bumped(&d, 0, a));
        for i in 2..n {
            e.push(-(c[i - 1] as i64 - 1), &c, &bumped(&d, i - 1, a));
        }
    }
    Ok(e.poly)
}

/// `Σ I⁻¹(z_{l,a} ⧢ w) − I⁻¹(z_{l,a}) ∗ I⁻¹(w)` by brute force.
pub fn thm44_brute_force(p: &LemmaPoint) -> Result<NCPoly, AlgebraError> {
    let b = Builder::new(p.alphabet());
    let mut out = NCPoly::zero(p.alphabet());
    for (l, c) in split_points(p) {
        let zl = b.word(&[l], &[p.a]);
        let w = b.word(&c, &p.av);
        let sh = map_i_inv(&shuffle(&zl, &w)?)?;
        let st = stuffle(&map_i_inv(&zl)?, &map_i_inv(&w)?)?;
        out = out.add(&sh.sub(&st)?)?;
    }
    Ok(out)
}

/// The weighted element: equal to its brute-force form, inside `A⁰`, and
/// annihilated by `L_∗`.
pub fn thm44_element(p: &LemmaPoint) -> Result<IdentityInstance, AlgebraError> {
    let poly = thm44_poly(p)?;
    let brute = thm44_brute_force(p)?;
    Ok(IdentityInstance::new(
        format!("weighted-theorem/{}", p.tag()),
        IdentityFamily::WeightedTheorem,
        p.params(),
    )
    .with_relation(Relation::from_mlv_poly(&poly)?)
    .with_tol(THEOREM_TOL)
    .with_a0(poly.clone())
    .with_sides(brute, poly))
}

/// Depth-two coherence: the theorems at `n = 2` are the double-L
/// corollaries at `(a₁, a₂) = (a, a₁ − a)` resp. `(a, a₁)`.
pub fn specializations(level: u32, k: u32, a: i64, a1: i64) -> Result<Vec<IdentityInstance>, AlgebraError> {
    let p = LemmaPoint::new(level, k, 2, a, vec![a1])?;
    let sum = double_l_sum(level, k, a, a1 - a)
        .to_mlv_poly()
        .expect("rational L-relation");
    let weighted = double_l_weighted(level, k, a, a1)
        .to_mlv_poly()
        .expect("rational L-relation");
    Ok(vec![
        IdentityInstance::new(
            format!("specialize/sum/{}", p.tag()),
            IdentityFamily::Specialization,
            p.params(),
        )
        .with_sides(thm43_poly(&p)?, sum),
        IdentityInstance::new(
            format!("specialize/weighted/{}", p.tag()),
            IdentityFamily::Specialization,
            p.params(),
        )
        .with_sides(thm44_poly(&p)?, weighted),
    ])
}

fn twist_tuples(level: u32, len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..level as i64).map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t);
                    v
                })
            })
            .collect();
    }
    out
}

/// Seeded random twist tuples; order is reproducible.
fn random_tuples(level: u32, len: usize, count: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..len).map(|_| rng.gen_range(0..level as i64)).collect())
        .collect()
}

/// Parameter grid for the closed forms: `n ∈ ns`, `n+1 ≤ k ≤ n+5`, every
/// twist tuple for `N ≤ 2` and `random` seeded tuples for larger `N`.
pub fn lemma_grid(levels: &[u32], ns: &[u32], random: usize, seed: u64) -> Vec<LemmaPoint> {
    let mut out = Vec::new();
    for &level in levels {
        for &n in ns {
            for k in n + 1..=n + 5 {
                let tuples = if level <= 2 {
                    twist_tuples(level, n as usize)
                } else {
                    random_tuples(
                        level,
                        n as usize,
                        random,
                        seed ^ ((level as u64) << 32 | (n as u64) << 16 | k as u64),
                    )
                };
                for t in tuples {
                    out.push(LemmaPoint::new(level, k, n, t[0], t[1..].to_vec()).expect("grid is in range"));
                }
            }
        }
    }
    out
}

/// Parameter grid for the two theorems: `k ∈ ks` (skipping `k ≤ n`),
/// `n ∈ ns`, `per_point` random twist tuples (all-zero at `N = 1`).
pub fn theorem_grid(levels: &[u32], ks: &[u32], ns: &[u32], per_point: usize, seed: u64) -> Vec<LemmaPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &level in levels {
        for &n in ns {
            for &k in ks.iter().filter(|&&k| k > n) {
                let count = if level == 1 { 1 } else { per_point };
                for _ in 0..count {
                    let t: Vec<i64> = (0..n).map(|_| rng.gen_range(0..level as i64)).collect();
                    out.push(LemmaPoint::new(level, k, n, t[0], t[1..].to_vec()).expect("grid is in range"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(level: u32, k: u32, n: u32, tw: &[i64]) -> LemmaPoint {
        LemmaPoint::new(level, k, n, tw[0], tw[1..].to_vec()).unwrap()
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(6, 3).len(), 10);
        assert!(compositions(2, 3).is_empty());
        assert_eq!(compositions(3, 1), vec![vec![3]]);
    }

    #[test]
    fn closed_forms_examples() {
        for p in [
            pt(1, 3, 2, &[0, 0]),
            pt(2, 4, 2, &[1, 1]),
            pt(3, 5, 3, &[2, 1, 2]),
            pt(2, 6, 3, &[1, 0, 1]),
        ] {
            let (a, b) = lemma41_check(&p).unwrap();
            assert_eq!(a.symbolic(), Some(true), "{}", a.id);
            assert_eq!(b.symbolic(), Some(true), "{}", b.id);
            let (a, b) = lemma42_check(&p).unwrap();
            assert_eq!(a.symbolic(), Some(true), "{}", a.id);
            assert_eq!(b.symbolic(), Some(true), "{}", b.id);
        }
    }

    #[test]
    fn weighted_element_matches_brute_force() {
        for p in [
            pt(1, 4, 2, &[0, 0]),
            pt(3, 4, 2, &[1, 2]),
            pt(2, 6, 3, &[1, 1, 0]),
            pt(3, 7, 4, &[0, 2, 1, 1]),
        ] {
            let inst = thm44_element(&p).unwrap();
            assert_eq!(inst.symbolic(), Some(true), "{}", inst.id);
        }
    }

    #[test]
    fn binomials() {
        assert!(binomial_checks(12).iter().all(|i| i.symbolic() == Some(true)));
    }

    #[test]
    fn range_is_enforced() {
        assert!(LemmaPoint::new(2, 3, 3, 0, vec![0, 0]).is_err());
        assert!(LemmaPoint::new(2, 5, 3, 0, vec![0]).is_err());
    }
}
