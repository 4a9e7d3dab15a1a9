//! Parser robustness: arbitrary input never panics, and printed canonical
//! forms reparse to equal elements in both modes.

use ckengine::fixtures;
use ckengine::parse::{
    parse_expr, parse_graph, parse_map_file, parse_partition_file, parse_unitary_file,
};
use ckengine::script::{parse_element, parse_script};
use ckengine::Mode;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parsers_never_panic(input in "\\PC*") {
        let _ = parse_graph(&input);
        let _ = parse_expr(&input);
        let _ = parse_unitary_file(&input);
        let _ = parse_map_file(&input);
        let _ = parse_script(&input);
        let g = fixtures::o2();
        let _ = parse_partition_file(&input, &g);
        let _ = parse_element(&input, &g, Mode::Exact);
    }

    #[test]
    fn parsers_survive_structured_noise(
        head in prop::sample::select(vec!["vertex", "edge", "split", "map", "unitary", "P(", "S(", "adj(", "1/2+", "load", "assert-zero"]),
        tail in "[a-z0-9 ()*+,/{}|\\[\\]#\"^-]*",
    ) {
        let text = format!("{head} {tail}");
        let _ = parse_graph(&text);
        let _ = parse_expr(&text);
        let _ = parse_unitary_file(&text);
        let _ = parse_map_file(&text);
        let _ = parse_script(&text);
        let g = fixtures::ex41();
        let _ = parse_partition_file(&text, &g);
        let _ = parse_element(&text, &g, Mode::Exact);
    }
}

#[test]
fn float_mode_roundtrip() {
    use ckengine::random::random_element;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    for (_, g) in fixtures::all() {
        for _ in 0..10 {
            let x = random_element(&g, Mode::Float, 5, 2, &mut rng).unwrap();
            let printed = x.to_string();
            let back = parse_element(&printed, &g, Mode::Float).unwrap();
            assert!(back.equals(&x), "float roundtrip failed for `{printed}`");
        }
    }
}

#[test]
fn rejects_documented_error_cases() {
    let g = fixtures::ex41();
    // Non-composable path inside S(...).
    assert!(parse_element("S(c a)", &g, Mode::Exact).is_err());
    // Unknown edge.
    assert!(parse_element("S(nope)", &g, Mode::Exact).is_err());
    // Malformed scalar.
    assert!(parse_element("1/ * P(v1)", &g, Mode::Exact).is_err());
    // Unbalanced parens.
    assert!(parse_element("(P(v1)", &g, Mode::Exact).is_err());
}
