use mlv_core::eval::EvalConfig;
use mlv_core::eval::Evaluator;
use mlv_core::formulas::{
    corollary_catalog, derive_weighted_level2, specializations, summarize, theorem_grid, thm43_element, thm44_element,
    verify_all, verify_instance, Expectation, IdentityInstance, LemmaPoint, Relation,
};

fn cfg(tol: f64) -> EvalConfig {
    let mut c = EvalConfig::new(1);
    c.tol = tol;
    c
}

fn residual(inst: &IdentityInstance, level: u32) -> f64 {
    let mut c = cfg(1e-6);
    c.level = level;
    let report = verify_instance(inst, &Evaluator::new(c).unwrap());
    assert!(report.error.is_none(), "{report}");
    report.residual.unwrap()
}

#[test]
fn sum_theorem_examples() {
    let p = LemmaPoint::new(2, 4, 2, 0, vec![1]).unwrap();
    assert!(residual(&thm43_element(&p).unwrap(), 2) < 1e-7);
    let p = LemmaPoint::new(1, 5, 3, 0, vec![0, 0]).unwrap();
    assert!(residual(&thm43_element(&p).unwrap(), 1) < 1e-7);
}

#[test]
fn weighted_theorem_examples() {
    let p = LemmaPoint::new(3, 4, 2, 1, vec![2]).unwrap();
    assert!(residual(&thm44_element(&p).unwrap(), 3) < 1e-6);
    let p = LemmaPoint::new(2, 6, 3, 1, vec![0, 1]).unwrap();
    let inst = thm44_element(&p).unwrap();
    assert_eq!(inst.symbolic(), Some(true));
    assert!(residual(&inst, 2) < 1e-6);
}

#[test]
fn theorems_vanish_on_the_grid() {
    let ks: Vec<u32> = (3..=8).collect();
    let points = theorem_grid(&[1, 2, 3], &ks, &[2, 3], 4, 11);
    let mut all = Vec::new();
    for p in &points {
        all.push(thm43_element(p).unwrap());
        all.push(thm44_element(p).unwrap());
    }
    let reports = verify_all(&all, cfg(1e-6)).unwrap();
    let (_, failed) = summarize(&reports);
    let bad: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.to_string()).collect();
    assert_eq!(failed, 0, "{bad:#?}");
}

#[test]
fn depth_two_theorems_are_the_double_corollaries() {
    for level in 1..=3u32 {
        for k in 3..=8 {
            for a in 0..level as i64 {
                for a1 in 0..level as i64 {
                    for inst in specializations(level, k, a, a1).unwrap() {
                        assert_eq!(inst.symbolic(), Some(true), "{}", inst.id);
                    }
                }
            }
        }
    }
}

#[test]
fn every_catalog_line_up_to_weight_eight() {
    let mut all = Vec::new();
    for level in 1..=3 {
        for k in 3..=8 {
            all.extend(corollary_catalog(level, k).unwrap());
        }
    }
    let reports = verify_all(&all, cfg(1e-5)).unwrap();
    let bad: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.to_string()).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn misprinted_level_three_line_fails_and_its_variant_holds() {
    let lines = corollary_catalog(3, 5).unwrap();
    let printed = lines.iter().find(|i| i.expectation == Expectation::Erratum).unwrap();
    let variant = lines.iter().find(|i| i.id == "level3/zeta3-sum/(3,1)/k=5").unwrap();
    let reports = verify_all(&[printed.clone(), variant.clone()], cfg(1e-8)).unwrap();
    assert!(!reports[0].holds && reports[0].pass);
    assert!(reports[0].residual.unwrap() > 0.1, "{}", reports[0]);
    assert!(reports[1].holds, "{}", reports[1]);
}

#[test]
fn weighted_level_two_example() {
    // Σ 2^j L(j, k−j; 1, 0) − (k−1)ζ(k) − 2L(k; 1) at k = 5
    let lines = corollary_catalog(2, 5).unwrap();
    let inst = lines.iter().find(|i| i.id == "level2/weighted-sum/(1,0)/k=5").unwrap();
    assert!(residual(inst, 2) < 1e-7);
}

#[test]
fn derived_level_two_lines_use_nonzero_constituents() {
    for inst in derive_weighted_level2(6).unwrap() {
        assert_eq!(inst.symbolic(), Some(true), "{}", inst.id);
        let (lhs, _) = inst.sides.as_ref().unwrap();
        assert!(!lhs.is_zero());
        let expanded: Relation = inst.relation.as_ref().unwrap().expand().unwrap();
        assert!(!expanded.is_zero());
    }
}

#[test]
fn grid_rejects_out_of_range_points() {
    assert!(LemmaPoint::new(3, 3, 3, 0, vec![0, 0]).is_err());
    assert!(LemmaPoint::new(0, 5, 2, 0, vec![0]).is_err());
}
