//! Randomized cross-checks tying the independent implementations together:
//! constructors against the validator, grid conditions against family-level
//! validation, continuous shifts against the score, and the random subsample
//! against its recorded behaviour.

mod common;

use incseq::decompose::decompose_all;
use incseq::family::BoxDims;
use incseq::search::{random_grow, GrowthPolicy};

#[test]
fn constructor_outputs_validate_in_bulk() {
    common::construct_outputs_always_validate(1000);
}

#[test]
fn grid_conditions_agree_with_validation_in_bulk() {
    common::grid_conditions_match_family_validation(1000);
}

#[test]
fn shift_improvements_are_monotone() {
    common::improve_shift_never_degrades(100);
}

#[test]
fn subsample_retention_grows_with_arity() {
    common::sample_retention_is_monotone();
}

/// Decomposition must succeed on any grown family, and its certificates are
/// machine-checked inside `decompose_check` on every call.
#[test]
fn grown_families_decompose_cleanly() {
    let policies = [
        GrowthPolicy::UniformMinimal,
        GrowthPolicy::MinSumSquares,
        GrowthPolicy::MaxMinCoordinate,
    ];
    for seed in 0..40u64 {
        let side = 2 + (seed % 4) as u32;
        let dims = BoxDims::new(vec![side, 6 - side.min(4), 3]).expect("positive sides");
        let policy = policies[(seed % 3) as usize];
        let family = random_grow(&dims, 2, policy, seed).expect("growth succeeds");
        let summary = decompose_all(&family).expect("decomposition succeeds");
        assert_eq!(summary.results.len(), 3, "one verdict per label coordinate");
        for result in &summary.results {
            assert_eq!(
                result.decomposable,
                result.blocks.is_some(),
                "seed {seed}: verdict and certificate disagree"
            );
        }
    }
}
