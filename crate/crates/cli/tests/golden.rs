mod common;

#[test]
fn printed_values_match_golden_files() {
    let bad = common::check_golden();
    assert!(bad.is_empty(), "golden mismatches: {bad:?}");
}
