//! Instance lists behind `mlv verify`.

use clap::ValueEnum;
use mlv_core::formulas::{
    algebra_laws, binomial_checks, corollary_catalog, derive_weighted_level2, double_shuffle_suite, lemma41_check,
    lemma42_check, lemma_grid, level2_closed_forms, map_inverses, regularization_checks, specializations, theorem_grid,
    thm43_element, thm44_element, IdentityInstance,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Lemmas,
    Theorems,
    Corollaries,
    All,
}

/// Fixed seed so that reports are reproducible run to run.
pub const SEED: u64 = 20_240_601;

fn algebra(level: u32, kmax: u32) -> Result<Vec<IdentityInstance>, String> {
    let w = kmax.min(5);
    let mut out = algebra_laws(level, w, w + 1).map_err(|e| e.to_string())?;
    out.extend(map_inverses(level, kmax.min(6)).map_err(|e| e.to_string())?);
    out.extend(regularization_checks(level, w).map_err(|e| e.to_string())?);
    out.extend(double_shuffle_suite(level, 20, SEED).map_err(|e| e.to_string())?);
    Ok(out)
}

fn lemmas(level: u32, kmax: u32) -> Result<Vec<IdentityInstance>, String> {
    let mut out = binomial_checks(12);
    for p in lemma_grid(&[level], &[2, 3, 4], 50, SEED)
        .into_iter()
        .filter(|p| p.k <= kmax)
    {
        let (a, b) = lemma41_check(&p).map_err(|e| e.to_string())?;
        let (c, d) = lemma42_check(&p).map_err(|e| e.to_string())?;
        out.extend([a, b, c, d]);
    }
    Ok(out)
}

fn theorems(level: u32, kmax: u32) -> Result<Vec<IdentityInstance>, String> {
    let ks: Vec<u32> = (3..=kmax).collect();
    let mut out = Vec::new();
    for p in theorem_grid(&[level], &ks, &[2, 3], 4, SEED) {
        out.push(thm43_element(&p).map_err(|e| e.to_string())?);
        out.push(thm44_element(&p).map_err(|e| e.to_string())?);
    }
    for k in 3..=kmax {
        for a in 0..level as i64 {
            for a1 in 0..level as i64 {
                out.extend(specializations(level, k, a, a1).map_err(|e| e.to_string())?);
            }
        }
    }
    Ok(out)
}

fn corollaries(level: u32, kmax: u32) -> Result<Vec<IdentityInstance>, String> {
    let mut out = Vec::new();
    for k in 3..=kmax {
        out.extend(corollary_catalog(level, k).map_err(|e| e.to_string())?);
    }
    if level == 2 {
        out.extend(level2_closed_forms(kmax));
        for k in 3..=kmax {
            out.extend(derive_weighted_level2(k).map_err(|e| e.to_string())?);
        }
    }
    Ok(out)
}

/// All instances of `suite` at `level` up to weight `kmax`, in a fixed order.
pub fn instances(suite: Suite, level: u32, kmax: u32) -> Result<Vec<IdentityInstance>, String> {
    if kmax < 3 {
        return Err(format!("--kmax must be at least 3, got {kmax}"));
    }
    match suite {
        Suite::Algebra => algebra(level, kmax),
        Suite::Lemmas => lemmas(level, kmax),
        Suite::Theorems => theorems(level, kmax),
        Suite::Corollaries => corollaries(level, kmax),
        Suite::All => {
            let mut out = algebra(level, kmax)?;
            out.extend(lemmas(level, kmax)?);
            out.extend(theorems(level, kmax)?);
            out.extend(corollaries(level, kmax)?);
            Ok(out)
        }
    }
}
