//! Exhaustive algebra-law checks and double-shuffle kernel elements.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{word_from_indices, Alphabet, IndexVector, NCPoly};
use crate::error::{AlgebraError, EvalError};
use crate::level;
use crate::mlv::{self, Product};

use super::sums::compositions;
use super::{IdentityFamily, IdentityInstance, Params, Relation};

type BinaryOp = fn(&NCPoly, &NCPoly) -> Result<NCPoly, AlgebraError>;
type UnaryOp = fn(&NCPoly) -> Result<NCPoly, AlgebraError>;

/// Every generator index of weight ≤ `max_weight` and depth ≤ `max_depth`,
/// twists in the alphabet's range, in a fixed order.
pub(crate) fn generator_indices(alphabet: Alphabet, max_weight: u32, max_depth: usize) -> Vec<IndexVector> {
    let n = alphabet.level() as i64;
    let mut out = Vec::new();
    for w in 1..=max_weight {
        for d in 1..=max_depth.min(w as usize) {
            for ks in compositions(w, d) {
                let mut tuples: Vec<Vec<u32>> = vec![Vec::new()];
                for _ in 0..d {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            (0..n).map(move |a| {
                                let mut t = t.clone();
                                t.push(alphabet.reduce_twist(a));
                                t
                            })
                        })
                        .collect();
                }
                out.extend(
                    tuples
                        .into_iter()
                        .map(|t| IndexVector::new(ks.clone(), t).expect("positive parts")),
                );
            }
        }
    }
    out
}

fn words(alphabet: Alphabet, max_weight: u32, max_depth: usize) -> Vec<(u32, NCPoly)> {
    generator_indices(alphabet, max_weight, max_depth)
        .into_iter()
        .map(|iv| (iv.weight(), NCPoly::from_indices(alphabet, &iv)))
        .collect()
}

fn family_letter(alphabet: Alphabet) -> &'static str {
    if alphabet.is_mlv() {
        "A"
    } else {
        "U"
    }
}

fn count_instance(id: String, family: IdentityFamily, level: u32, weight: u32, failures: usize) -> IdentityInstance {
    let params = Params::level(level).with_k(weight);
    IdentityInstance::new(id, family, params).with_integers(BigInt::from(failures), BigInt::from(0))
}

fn commutativity_failures(ws: &[(u32, NCPoly)], op: BinaryOp) -> Result<usize, AlgebraError> {
    let fails: Result<Vec<usize>, AlgebraError> = (0..ws.len())
        .into_par_iter()
        .map(|i| {
            let mut bad = 0;
            for j in i + 1..ws.len() {
                if op(&ws[i].1, &ws[j].1)? != op(&ws[j].1, &ws[i].1)? {
                    bad += 1;
                }
            }
            Ok(bad)
        })
        .collect();
    Ok(fails?.into_iter().sum())
}

fn associativity_failures(ws: &[(u32, NCPoly)], total: u32, op: BinaryOp) -> Result<usize, AlgebraError> {
    let fails: Result<Vec<usize>, AlgebraError> = ws
        .par_iter()
        .map(|(wu, u)| {
            let mut bad = 0;
            for (wv, v) in ws.iter().filter(|(wv, _)| wu + wv < total) {
                let uv = op(u, v)?;
                for (_, w) in ws.iter().filter(|(ww, _)| wu + wv + ww <= total) {
                    if op(&uv, w)? != op(u, &op(v, w)?)? {
                        bad += 1;
                    }
                }
            }
            Ok(bad)
        })
        .collect();
    Ok(fails?.into_iter().sum())
}

/// Commutativity of both products on every pair of generator words of
/// weight ≤ `max_weight` (depth ≤ 3), associativity on every triple of
/// total weight ≤ `triple_weight`; one instance per law, product and
/// alphabet, asserting zero counterexamples.
pub fn algebra_laws(level: u32, max_weight: u32, triple_weight: u32) -> Result<Vec<IdentityInstance>, AlgebraError> {
    let mut out = Vec::new();
    let cases: [(Alphabet, &str, BinaryOp); 4] = [
        (Alphabet::mlv(level)?, "stuffle", mlv::stuffle),
        (Alphabet::mlv(level)?, "shuffle", mlv::shuffle),
        (Alphabet::level_n(level)?, "stuffle", level::stuffle_n),
        (Alphabet::level_n(level)?, "shuffle", level::shuffle_n),
    ];
    for (alphabet, name, op) in cases {
        let ws = words(alphabet, max_weight, 3);
        let tag = format!("{}/N={level}", family_letter(alphabet));
        let bad = commutativity_failures(&ws, op)?;
        out.push(count_instance(
            format!("algebra/{name}-commutative/{tag}"),
            IdentityFamily::AlgebraLaw,
            level,
            max_weight,
            bad,
        ));
        let bad = associativity_failures(&ws, triple_weight, op)?;
        out.push(count_instance(
            format!("algebra/{name}-associative/{tag}"),
            IdentityFamily::AlgebraLaw,
            level,
            triple_weight,
            bad,
        ));
    }
    Ok(out)
}

/// `I⁻¹∘I`, `I∘I⁻¹`, `J⁻¹∘J` and `J∘J⁻¹` on every generator word of
/// weight ≤ `max_weight`.
pub fn map_inverses(level: u32, max_weight: u32) -> Result<Vec<IdentityInstance>, AlgebraError> {
    let cases: [(Alphabet, &str, UnaryOp, UnaryOp); 4] = [
        (Alphabet::mlv(level)?, "I-inverse-after-I", mlv::map_i, mlv::map_i_inv),
        (Alphabet::mlv(level)?, "I-after-I-inverse", mlv::map_i_inv, mlv::map_i),
        (
            Alphabet::level_n(level)?,
            "J-inverse-after-J",
            level::map_j,
            level::map_j_inv,
        ),
        (
            Alphabet::level_n(level)?,
            "J-after-J-inverse",
            level::map_j_inv,
            level::map_j,
        ),
    ];
    let mut out = Vec::new();
    for (alphabet, name, first, second) in cases {
        let ws = words(alphabet, max_weight, max_weight as usize);
        let bad: Result<Vec<bool>, AlgebraError> = ws.par_iter().map(|(_, w)| Ok(&second(&first(w)?)? != w)).collect();
        let bad = bad?.into_iter().filter(|&b| b).count();
        out.push(count_instance(
            format!("maps/{name}/N={level}"),
            IdentityFamily::MapInverse,
            level,
            max_weight,
            bad,
        ));
    }
    Ok(out)
}

/// Reconstruction from `reg_∗` and `reg_⧢` on every word of `A¹` of weight
/// ≤ `max_weight`, the identity on `A⁰`, and one worked regularization.
pub fn regularization_checks(level: u32, max_weight: u32) -> Result<Vec<IdentityInstance>, AlgebraError> {
    let alphabet = Alphabet::mlv(level)?;
    let ws = words(alphabet, max_weight, max_weight as usize);
    let mut out = Vec::new();
    for (product, name) in [(Product::Stuffle, "stuffle"), (Product::Shuffle, "shuffle")] {
        let fails: Result<Vec<(bool, bool)>, AlgebraError> = ws
            .par_iter()
            .map(|(_, w)| {
                let reg = mlv::regularize(w, product)?;
                let rebuilt = reg.reconstruct()? != *w;
                let identity = mlv::in_a0(w) && (reg.degree() != 0 || reg.constant() != w);
                Ok((rebuilt, identity))
            })
            .collect();
        let fails = fails?;
        let rebuilt = fails.iter().filter(|f| f.0).count();
        let identity = fails.iter().filter(|f| f.1).count();
        out.push(count_instance(
            format!("regularize/{name}-reconstruction/N={level}"),
            IdentityFamily::Regularization,
            level,
            max_weight,
            rebuilt,
        ));
        out.push(count_instance(
            format!("regularize/{name}-identity-on-convergent/N={level}"),
            IdentityFamily::Regularization,
            level,
            max_weight,
            identity,
        ));
    }
    // y₀ x y₀ = y₀ ⧢ x y₀ − 2 x y₀ y₀
    let iv = |ks: Vec<u32>| IndexVector::new(ks.clone(), vec![0; ks.len()]).expect("positive parts");
    let w = NCPoly::from_indices(alphabet, &iv(vec![1, 2]));
    let reg = mlv::reg_shuffle(&w)?;
    let want = NCPoly::from_indices(alphabet, &iv(vec![2, 1])).scale(&crate::algebra::rat(-2));
    out.push(
        IdentityInstance::new(
            format!("regularize/shuffle-example/N={level}"),
            IdentityFamily::Regularization,
            Params::level(level),
        )
        .with_sides(reg.constant().clone(), want),
    );
    Ok(out)
}

/// Criteria-style algebra suite: laws, map inverses and regularization.
pub fn algebra_suite(level: u32) -> Result<Vec<IdentityInstance>, AlgebraError> {
    let mut out = algebra_laws(level, 5, 6)?;
    out.extend(map_inverses(level, 6)?);
    out.extend(regularization_checks(level, 5)?);
    Ok(out)
}

fn admissible(alphabet: Alphabet, iv: &IndexVector) -> bool {
    match (iv.ks().first(), iv.twists().first()) {
        (Some(&k), Some(&a)) => k >= 2 || (alphabet.is_mlv() && a != 0),
        _ => false,
    }
}

/// A random convergent generator word (in `A⁰` or `U⁰`) of the given depth
/// and weight at most `max_weight`.
pub fn random_generator_word(rng: &mut impl Rng, alphabet: Alphabet, depth: usize, max_weight: u32) -> NCPoly {
    let n = alphabet.level() as i64;
    assert!(
        max_weight as usize > depth,
        "weight must leave room for a convergent word"
    );
    loop {
        let w = rng.gen_range(depth as u32 + 1..=max_weight);
        // a random composition of w into `depth` parts via sorted cut points
        let mut cuts: Vec<u32> = Vec::with_capacity(depth + 1);
        while cuts.len() < depth - 1 {
            let c = rng.gen_range(1..w);
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
        cuts.sort_unstable();
        cuts.insert(0, 0);
        cuts.push(w);
        let ks: Vec<u32> = cuts.windows(2).map(|p| p[1] - p[0]).collect();
        let ts = (0..depth).map(|_| alphabet.reduce_twist(rng.gen_range(0..n))).collect();
        let iv = IndexVector::new(ks, ts).expect("positive parts");
        if admissible(alphabet, &iv) {
            return NCPoly::from_word(alphabet, word_from_indices(&iv, alphabet));
        }
    }
}

fn kernel_instance(alphabet: Alphabet, w1: &NCPoly, w2: &NCPoly, tag: &str) -> Result<IdentityInstance, EvalError> {
    let level = alphabet.level();
    let (element, relation) = if alphabet.is_mlv() {
        let e = mlv::fds_element(w1, w2)?;
        let r = Relation::from_mlv_poly_shuffle(&e)?;
        (e, r)
    } else {
        let e = level::fds_n_element(w1, w2)?;
        let r = Relation::from_level_poly(&e)?;
        (e, r)
    };
    let id = format!(
        "double-shuffle/{}/N={level}/{tag}/{}*{}",
        family_letter(alphabet),
        crate::algebra::print_poly(w1),
        crate::algebra::print_poly(w2)
    );
    let params = Params::level(level).with_k(w1.generator_terms()?[0].0.weight() + w2.generator_terms()?[0].0.weight());
    Ok(IdentityInstance::new(id, IdentityFamily::DoubleShuffle, params)
        .with_a0(element)
        .with_relation(relation)
        .with_tol(1e-6))
}

/// Finite double-shuffle kernel elements at `level`, on both alphabets:
/// every pair of convergent depth-one generators with exponent ≤ 6, then
/// `random_pairs` seeded pairs whose first word has depth 2 or 3.
pub fn double_shuffle_suite(level: u32, random_pairs: usize, seed: u64) -> Result<Vec<IdentityInstance>, EvalError> {
    let mut out = Vec::new();
    for alphabet in [Alphabet::mlv(level)?, Alphabet::level_n(level)?] {
        let gens: Vec<NCPoly> = generator_indices(alphabet, 6, 1)
            .into_iter()
            .filter(|iv| admissible(alphabet, iv))
            .map(|iv| NCPoly::from_indices(alphabet, &iv))
            .collect();
        for i in 0..gens.len() {
            for j in i..gens.len() {
                out.push(kernel_instance(alphabet, &gens[i], &gens[j], "depth-one")?);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(level) << 8 ^ u64::from(alphabet.is_mlv()));
        for _ in 0..random_pairs {
            let d1 = rng.gen_range(2..=3);
            let d2 = rng.gen_range(1..=2);
            let w1 = random_generator_word(&mut rng, alphabet, d1, 5);
            let w2 = random_generator_word(&mut rng, alphabet, d2, 4);
            out.push(kernel_instance(alphabet, &w1, &w2, "random")?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_counts() {
        // Σ_w Σ_d C(w−1, d−1) N^d over w ≤ 3
        assert_eq!(generator_indices(Alphabet::Mlv(2), 3, 3).len(), 2 + 6 + 18);
        assert_eq!(generator_indices(Alphabet::Mlv(3), 5, 3).len(), 375);
    }

    #[test]
    fn laws_hold_on_small_grid() {
        for inst in algebra_laws(2, 3, 4).unwrap() {
            assert_eq!(inst.symbolic(), Some(true), "{}", inst.id);
        }
    }

    #[test]
    fn regularization_example() {
        for inst in regularization_checks(1, 4).unwrap() {
            assert_eq!(inst.symbolic(), Some(true), "{}", inst.id);
        }
    }

    #[test]
    fn random_words_are_convergent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_generator_word(&mut rng, Alphabet::Level(3), 2, 5);
            let (iv, _) = &w.generator_terms().unwrap()[0];
            assert_eq!(iv.depth(), 2);
            assert!(iv.ks()[0] >= 2);
        }
    }
}
