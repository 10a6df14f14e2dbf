use latticeface::{parse_polytope, PolytopeDocument};
use latticeface_core::{Int, Polytope, Rat};
use proptest::prelude::*;

fn coordinate() -> impl Strategy<Value = Rat> {
    prop_oneof![
        (-50i64..=50).prop_map(|n| Rat::from_integer(n.into())),
        (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rat::new(p.into(), q.into())),
        any::<i64>().prop_map(|n| Rat::from_integer(Int::from(n) * Int::from(1_000_003))),
    ]
}

fn points() -> impl Strategy<Value = (usize, Vec<Vec<Rat>>)> {
    (1usize..=3).prop_flat_map(|d| (Just(d), proptest::collection::vec(proptest::collection::vec(coordinate(), d), 1..=6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn emitted_documents_parse_to_equal_polytopes((d, pts) in points()) {
        let p = Polytope::new(d, pts).unwrap();
        let doc = PolytopeDocument::from_polytope(&p);
        let text = doc.to_json_string();
        let back = parse_polytope(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(PolytopeDocument::from_polytope(&back), doc);
    }
}
