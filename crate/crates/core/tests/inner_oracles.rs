mod common;

#[test]
fn lowrank_step_matches_reference() {
    for (i, case) in common::oracles().lowrank.iter().enumerate() {
        let err = common::lowrank_error(case);
        assert!(err.objective <= 1e-6, "case {i}: {err:?}");
        assert!(err.iterate <= 1e-4, "case {i}: {err:?}");
    }
}

#[test]
fn sparse_step_matches_reference() {
    for (i, case) in common::oracles().sparse.iter().enumerate() {
        let err = common::sparse_error(case);
        assert!(err.objective <= 1e-9, "case {i}: {err:?}");
        assert!(err.iterate <= 1e-6, "case {i}: {err:?}");
    }
}
