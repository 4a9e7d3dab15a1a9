//! Out-splitting properties over randomized partitions, and the bundled
//! two-vertex-in-Cuntz identification.

use std::collections::BTreeMap;

use ckengine::fixtures;
use ckengine::moves::{induced_images, out_split, GeneratorMap};
use ckengine::parse::{parse_map_file, parse_unitary_file};
use ckengine::random::random_partition;
use ckengine::{Element, Mode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn out_split_preserves_standing_assumption() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (name, g) in fixtures::all() {
        assert!(g.standing_assumption().holds());
        for _ in 0..20 {
            let part = random_partition(&g, &mut rng);
            let f = out_split(&g, &part).unwrap();
            assert!(
                f.standing_assumption().holds(),
                "standing assumption lost splitting {name}"
            );
        }
    }
}

#[test]
fn induced_maps_verify_on_random_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (name, g) in fixtures::all() {
        for _ in 0..8 {
            let part = random_partition(&g, &mut rng);
            let f = out_split(&g, &part).unwrap();

            // Counting identities.
            let total_copies: usize =
                (0..g.vertex_count() as u32).map(|v| part.copies(v)).sum();
            assert_eq!(f.vertex_count(), total_copies);
            let expected_edges: usize = (0..g.edge_count() as u32)
                .map(|e| part.copies(g.edge_range(e)))
                .sum();
            assert_eq!(f.edge_count(), expected_edges);

            // Path counts: every length-k path of the source spawns one
            // copy per class of its terminal vertex.
            for k in 1..=3usize {
                let f_count = f.paths_of_length(k, None, None).unwrap().len();
                let e_count: usize = g
                    .paths_of_length(k, None, None)
                    .unwrap()
                    .iter()
                    .map(|p| part.copies(g.vertex_index(p.range()).unwrap()))
                    .sum();
                assert_eq!(f_count, e_count, "path counts at k={k} on {name}");
            }

            let mut map = induced_images(&g, &f, &part, Mode::Exact).unwrap();
            let report = map.verify_homomorphism().unwrap();
            assert!(
                report.all_pass(),
                "relations fail on {name}: {:?}",
                report.failures()
            );
            assert!(map.verify_diagonal_carry(3).unwrap(), "carry on {name}");
        }
    }
}

fn load_ex41_maps() -> (GeneratorMap, GeneratorMap) {
    let e = fixtures::ex41();
    let o2 = fixtures::o2();
    let fwd = parse_map_file(include_str!("../../../assets/maps/ex41_forward.map"))
        .unwrap()
        .bind(&e, &o2, Mode::Exact)
        .unwrap();
    let inv = parse_map_file(include_str!("../../../assets/maps/ex41_inverse.map"))
        .unwrap()
        .bind(&o2, &e, Mode::Exact)
        .unwrap();
    (fwd, inv)
}

#[test]
fn bundled_identification_verifies() {
    let (mut fwd, mut inv) = load_ex41_maps();
    assert!(fwd.verify_homomorphism().unwrap().all_pass());
    assert!(inv.verify_homomorphism().unwrap().all_pass());
    assert!(fwd.verify_diagonal_carry(2).unwrap());
}

#[test]
fn corrupted_identification_fails() {
    let e = fixtures::ex41();
    let o2 = fixtures::o2();
    let (fwd, _) = load_ex41_maps();

    // Swap the images of S(b) and S(c): relations break, and the diagonal
    // carry fails because a composable source path maps to zero.
    let mut p_images = BTreeMap::new();
    for v in e.vertices() {
        p_images.insert(v.to_string(), fwd.vertex_image(v).unwrap().clone());
    }
    let mut s_images = BTreeMap::new();
    for edge in e.edges() {
        let img = match edge {
            "b" => fwd.edge_image("c").unwrap().clone(),
            "c" => fwd.edge_image("b").unwrap().clone(),
            other => fwd.edge_image(other).unwrap().clone(),
        };
        s_images.insert(edge.to_string(), img);
    }
    let mut bad = GeneratorMap::new(&e, &o2, p_images, s_images).unwrap();
    let report = bad.verify_homomorphism().unwrap();
    assert!(!report.all_pass());
    assert!(!bad.verify_diagonal_carry(2).unwrap());

    // The image of the composable path (b, a) vanishes under the swap.
    let ba = ckengine::Path::from_edge_ids(&e, &["b", "a"]).unwrap();
    let p_ba = Element::path_projection(&ba, Mode::Exact);
    assert!(bad.apply(&p_ba).unwrap().is_zero());
}

#[test]
fn bundled_unitary_satisfies_hypothesis_and_transports() {
    // The rotation block unitary meets the hypothesis on the two-vertex
    // graph, and its image under the identification is a unitary of the
    // Cuntz algebra that is no longer gauge-homogeneous.
    let e = fixtures::ex41();
    let (fwd, _) = load_ex41_maps();
    let u = parse_unitary_file(include_str!("../../../assets/unitaries/ex41_u.unitary"))
        .unwrap()
        .bind(&e, Mode::Exact)
        .unwrap();
    assert!(u.hypothesis_check().holds);

    let transported = fwd.apply(&u.as_element()).unwrap();
    let class = ckengine::endo::verify_unitary(&transported);
    assert!(class.in_ue);
    assert!(!class.in_ue_core, "the transported unitary leaves the core");
    assert!(!class.in_ub);
}
