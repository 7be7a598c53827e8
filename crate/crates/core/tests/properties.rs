mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn spectrum_vs_char_poly((f, n, a, b) in dt_case(8)) {
        spectrum_matches_char_poly(&f, n, &a, &b)?;
    }

    #[test]
    fn char_poly_vs_dickson((f, n, a, b) in dt_case(8)) {
        char_poly_is_shifted_dickson(&f, n, &a, &b)?;
    }

    #[test]
    fn hull_dual_cross_checks((f, rows) in generator_case()) {
        hull_and_dual(&f, &rows)?;
    }

    #[test]
    fn weight_distribution_sums((f, rows) in generator_case()) {
        weights_sum_and_agree(&f, &rows)?;
    }

    #[test]
    fn isometry_linearity((e, extra, seed, pairs, c) in linearity_case()) {
        isometry_is_linear(e, extra, seed, &pairs, c)?;
    }

    #[test]
    fn element_round_trip((f, idx) in element_case()) {
        element_strings_round_trip(&f, idx)?;
    }
}
