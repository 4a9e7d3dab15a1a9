//! Acceptance suite: one test per criterion, each printing a pass line
//! with its runtime and asserting the stated budget and tolerance.
//!
//! Run with `cargo test -p ckengine --test acceptance -- --nocapture` to
//! see the per-criterion lines.

use std::time::{Duration, Instant};

use ckengine::endo::{conjugation_oracle, verify_unitary};
use ckengine::fixtures;
use ckengine::maps::{expect_core, expect_core_level, expect_diagonal, shift, shift_power};
use ckengine::moves::{block_structure_report, induced_images, out_split};
use ckengine::parse::{parse_graph, parse_map_file, parse_partition_file, parse_unitary_file};
use ckengine::random::{
    random_block_element, random_block_unitary, random_core_element, random_diagonal_element,
    random_element, random_partition,
};
use ckengine::rep::{block_sizes, compute_delta, represent};
use ckengine::{BlockUnitary, Element, Graph, Mode, Path, Scalar, SubalgebraTag};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GRAPH_O2: &str = include_str!("../../../assets/graphs/o2.graph");
const GRAPH_EX41: &str = include_str!("../../../assets/graphs/ex41.graph");
const GRAPH_SPLIT_E: &str = include_str!("../../../assets/graphs/split_e.graph");
const PART_SPLIT_E: &str = include_str!("../../../assets/partitions/split_e.partition");
const MAP_FORWARD: &str = include_str!("../../../assets/maps/ex41_forward.map");
const MAP_INVERSE: &str = include_str!("../../../assets/maps/ex41_inverse.map");
const UNITARY_EX41: &str = include_str!("../../../assets/unitaries/ex41_u.unitary");

fn finish(n: u32, what: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!(
        "[PASS] criterion {n:2}: {what} ({:.3} s, budget {:.0} s)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed <= budget,
        "criterion {n} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

fn edge_projection(g: &Graph, e: &str) -> Element {
    let s = Element::edge_isometry(g, e, Mode::Exact).unwrap();
    s.mul(&s.adjoint()).unwrap()
}

/// The four bundled graphs, the split pair included.
fn paper_graphs() -> Vec<(String, Graph)> {
    let split_e = parse_graph(GRAPH_SPLIT_E).unwrap();
    let part = parse_partition_file(PART_SPLIT_E, &split_e).unwrap();
    let split_f = out_split(&split_e, &part).unwrap();
    vec![
        ("o2".into(), parse_graph(GRAPH_O2).unwrap()),
        ("ex41".into(), parse_graph(GRAPH_EX41).unwrap()),
        ("split_e".into(), split_e),
        ("split_f".into(), split_f),
    ]
}

#[test]
fn criterion_01_relation_suite() {
    let start = Instant::now();
    for (name, g) in paper_graphs() {
        for e in g.edges() {
            let s = Element::edge_isometry(&g, e, Mode::Exact).unwrap();
            let r = g.vertex_name(g.edge_range(g.edge_index(e).unwrap()));
            let pr = Element::vertex_projection(&g, r, Mode::Exact).unwrap();
            let diff = s.adjoint().mul(&s).unwrap().sub(&pr).unwrap();
            assert_eq!(diff.term_count(), 0, "GA1 at {e} on {name}");
        }
        for (vi, v) in g.vertices().enumerate() {
            if g.out_degree(vi as u32) == 0 {
                continue;
            }
            let pv = Element::vertex_projection(&g, v, Mode::Exact).unwrap();
            let mut sum = Element::zero(&g, Mode::Exact);
            for &e in g.out_edges(vi as u32) {
                sum = sum.add(&edge_projection(&g, g.edge_id(e))).unwrap();
            }
            let diff = pv.sub(&sum).unwrap();
            assert_eq!(diff.term_count(), 0, "GA2 at {v} on {name}");
        }
    }
    finish(1, "Cuntz-Krieger relations normalize to zero exactly", start, Duration::from_secs(1));
}

#[test]
fn criterion_02_matrix_unit_law() {
    let start = Instant::now();
    let g = parse_graph(GRAPH_EX41).unwrap();
    let one = Scalar::one(Mode::Exact);
    let mut products = 0usize;
    for k in 0..=2usize {
        let paths = g.paths_of_length(k, None, None).unwrap();
        let mut basis: Vec<(Path, Path)> = Vec::new();
        for mu in &paths {
            for nu in &paths {
                if mu.range() == nu.range() {
                    basis.push((mu.clone(), nu.clone()));
                }
            }
        }
        for (mu, nu) in &basis {
            let x = Element::term(mu, nu, one.clone()).unwrap();
            for (al, be) in &basis {
                let y = Element::term(al, be, one.clone()).unwrap();
                let prod = x.mul(&y).unwrap();
                let expected = if nu.edge_ids() == al.edge_ids() && nu.source() == al.source() {
                    Element::term(mu, be, one.clone()).unwrap()
                } else {
                    Element::zero(&g, Mode::Exact)
                };
                assert!(prod.equals(&expected), "at level {k}");
                products += 1;
            }
        }
    }
    assert!(products > 8000, "exhaustiveness: only {products} products");
    finish(2, "matrix-unit law exhaustive at level <= 2", start, Duration::from_secs(10));
}

#[test]
fn criterion_03_representation_dimensions() {
    let start = Instant::now();
    let g = parse_graph(GRAPH_EX41).unwrap();
    let sizes = block_sizes(&g, 2);
    assert_eq!(
        sizes,
        vec![("v1".to_string(), 8), ("v2".to_string(), 5)]
    );
    // Independent route 1: column sums of A^2.
    let a = g.adjacency_matrix();
    let n = a.len();
    let mut a2 = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            for (l, row) in a.iter().enumerate() {
                a2[i][j] += a[i][l] * row[j];
            }
        }
    }
    let col_sums: Vec<u64> = (0..n).map(|j| a2.iter().map(|r| r[j]).sum()).collect();
    assert_eq!(col_sums, vec![8, 5]);
    // Independent route 2: brute-force path enumeration.
    for (i, v) in g.vertices().enumerate() {
        let brute = g.paths_of_length(2, None, Some(v)).unwrap().len() as u64;
        assert_eq!(brute, sizes[i].1);
    }
    // And the represented identity has those block dimensions.
    let rep = represent(&Element::identity(&g, Mode::Exact), 2).unwrap();
    let dims: Vec<usize> = rep.blocks().map(|(_, b)| b.paths.len()).collect();
    assert_eq!(dims, vec![8, 5]);
    finish(3, "level-2 block sizes are (8, 5) by three routes", start, Duration::from_secs(1));
}

#[test]
fn criterion_04_quasifree_group_law() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    for (name, g) in paper_graphs() {
        let mut gens = Vec::new();
        for v in g.vertices() {
            gens.push(Element::vertex_projection(&g, v, Mode::Exact).unwrap());
        }
        for e in g.edges() {
            gens.push(Element::edge_isometry(&g, e, Mode::Exact).unwrap());
        }
        for trial in 0..50 {
            let u = random_block_unitary(&g, Mode::Exact, trial % 2 == 0, &mut rng);
            let w = random_block_unitary(&g, Mode::Exact, trial % 3 == 0, &mut rng);
            let uw = u.compose(&w).unwrap();
            let ustar = u.adjoint();
            for x in &gens {
                let lhs = uw.apply(x).unwrap();
                let rhs = u.apply(&w.apply(x).unwrap()).unwrap();
                assert!(lhs.equals(&rhs), "group law on {name} trial {trial}");
                let id = ustar.apply(&u.apply(x).unwrap()).unwrap();
                assert!(id.equals(x), "inverse law on {name} trial {trial}");
            }
        }
    }
    finish(4, "quasi-free group law on 50 random pairs per graph", start, Duration::from_secs(30));
}

#[test]
fn criterion_05_word_action_consistency() {
    let start = Instant::now();
    let g = parse_graph(GRAPH_O2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let image_of_path = |u: &BlockUnitary, p: &Path| -> Element {
        if p.is_empty() {
            return Element::vertex_projection(&g, p.source(), Mode::Exact).unwrap();
        }
        let mut acc: Option<Element> = None;
        for e in p.edge_ids() {
            let se = Element::edge_isometry(&g, e, Mode::Exact).unwrap();
            let img = u.apply(&se).unwrap();
            acc = Some(match acc {
                None => img,
                Some(a) => a.mul(&img).unwrap(),
            });
        }
        acc.unwrap()
    };
    for _ in 0..3 {
        let u = random_block_unitary(&g, Mode::Exact, true, &mut rng);
        for lm in 0..=3usize {
            for ln in 0..=3usize {
                for mu in g.paths_of_length(lm, None, None).unwrap() {
                    for nu in g.paths_of_length(ln, None, Some(mu.range())).unwrap() {
                        let word = Element::term(&mu, &nu, Scalar::one(Mode::Exact)).unwrap();
                        let direct = u.apply(&word).unwrap();
                        let via_generators = image_of_path(&u, &mu)
                            .mul(&image_of_path(&u, &nu).adjoint())
                            .unwrap();
                        assert!(direct.equals(&via_generators), "word {mu:?} {nu:?}");
                    }
                }
            }
        }
    }
    finish(5, "word action matches generator products to length 3", start, Duration::from_secs(30));
}

#[test]
fn criterion_06_hypothesis_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    for (name, g) in paper_graphs() {
        let mut monomial = 0;
        let mut moved = 0;
        for trial in 0..100 {
            let u = random_block_unitary(&g, Mode::Exact, trial % 2 == 1, &mut rng);
            let fast = u.hypothesis_check().holds;
            let slow = conjugation_oracle(&u);
            assert_eq!(fast, slow, "disagreement on {name} trial {trial}");
            if fast {
                moved += 1;
            } else {
                monomial += 1;
            }
        }
        assert!(monomial > 0, "sample mix on {name}");
        if g.adjacency_matrix().iter().flatten().any(|&n| n >= 2) {
            assert!(moved > 0, "sample mix on {name}");
        }
    }
    finish(6, "hypothesis criterion agrees with the conjugation oracle, 100 trials per graph", start, Duration::from_secs(60));
}

#[test]
fn criterion_07_identification_end_to_end() {
    let start = Instant::now();
    let e = parse_graph(GRAPH_EX41).unwrap();
    let o2 = parse_graph(GRAPH_O2).unwrap();
    let mut fwd = parse_map_file(MAP_FORWARD)
        .unwrap()
        .bind(&e, &o2, Mode::Exact)
        .unwrap();
    let mut inv = parse_map_file(MAP_INVERSE)
        .unwrap()
        .bind(&o2, &e, Mode::Exact)
        .unwrap();

    // The five substitutions satisfy the source relations inside the
    // target engine.
    let report = fwd.verify_homomorphism().unwrap();
    assert!(report.all_pass(), "{:?}", report.failures());
    assert!(inv.verify_homomorphism().unwrap().all_pass());

    // The inverse formulas compose with the forward map to fix all
    // generators, in both directions.
    for v in e.vertices() {
        let x = Element::vertex_projection(&e, v, Mode::Exact).unwrap();
        assert!(inv.apply(&fwd.apply(&x).unwrap()).unwrap().equals(&x));
    }
    for ed in e.edges() {
        let x = Element::edge_isometry(&e, ed, Mode::Exact).unwrap();
        assert!(inv.apply(&fwd.apply(&x).unwrap()).unwrap().equals(&x));
    }
    for v in o2.vertices() {
        let x = Element::vertex_projection(&o2, v, Mode::Exact).unwrap();
        assert!(fwd.apply(&inv.apply(&x).unwrap()).unwrap().equals(&x));
    }
    for ed in o2.edges() {
        let x = Element::edge_isometry(&o2, ed, Mode::Exact).unwrap();
        assert!(fwd.apply(&inv.apply(&x).unwrap()).unwrap().equals(&x));
    }

    // Diagonal carry to level 2.
    assert!(fwd.verify_diagonal_carry(2).unwrap());

    // The exact all-nonzero block satisfies the hypothesis.
    let u = parse_unitary_file(UNITARY_EX41)
        .unwrap()
        .bind(&e, Mode::Exact)
        .unwrap();
    let verdict = u.hypothesis_check();
    assert!(verdict.holds);
    assert!(verdict.witness.is_some());
    finish(7, "bundled identification verifies end to end", start, Duration::from_secs(10));
}

#[test]
fn criterion_08_delta_computation() {
    let start = Instant::now();
    let g = parse_graph(GRAPH_O2).unwrap();

    // Hadamard block in float mode: delta = sqrt(2)/2 within 1e-6.
    let h = 0.5f64.sqrt();
    let had = BlockUnitary::new(
        &g,
        Mode::Float,
        vec![(
            ("v".into(), "v".into()),
            vec![
                vec![Scalar::complex(h, 0.0), Scalar::complex(h, 0.0)],
                vec![Scalar::complex(h, 0.0), Scalar::complex(-h, 0.0)],
            ],
        )],
        false,
    )
    .unwrap();
    let se = Element::edge_isometry(&g, "e1", Mode::Float).unwrap();
    let p = se.mul(&se.adjoint()).unwrap();
    let delta = compute_delta(&had, &p, "v").unwrap();
    assert!((delta - 0.7071068).abs() <= 1e-6, "delta = {delta}");

    // Flip block: exactly zero through the symbolic membership route.
    let zero = Scalar::zero(Mode::Exact);
    let one = Scalar::one(Mode::Exact);
    let flip = BlockUnitary::new(
        &g,
        Mode::Exact,
        vec![(
            ("v".into(), "v".into()),
            vec![vec![zero.clone(), one.clone()], vec![one, zero]],
        )],
        false,
    )
    .unwrap();
    let p = edge_projection(&g, "e1");
    assert_eq!(compute_delta(&flip, &p, "v").unwrap(), 0.0);
    finish(8, "delta: sqrt(2)/2 for the Hadamard block, exact 0 for the flip", start, Duration::from_secs(1));
}

#[test]
fn criterion_09_block_structure_of_split_pair() {
    let start = Instant::now();
    let e = parse_graph(GRAPH_SPLIT_E).unwrap();
    let part = parse_partition_file(PART_SPLIT_E, &e).unwrap();
    let f = out_split(&e, &part).unwrap();
    let e_sizes: Vec<u64> = block_structure_report(&e).iter().map(|b| b.2).collect();
    let f_sizes: Vec<u64> = block_structure_report(&f).iter().map(|b| b.2).collect();
    assert_eq!(e_sizes, vec![2]);
    assert_eq!(f_sizes, vec![1, 1, 1, 1]);
    finish(9, "U(B) shapes: U(2) before the split, U(1)^4 after", start, Duration::from_secs(1));
}

#[test]
fn criterion_10_structure_map_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for (name, g) in paper_graphs() {
        let one = Element::identity(&g, Mode::Exact);
        // Idempotence and bimodule laws.
        for _ in 0..5 {
            let x = random_element(&g, Mode::Exact, 5, 3, &mut rng).unwrap();
            let f = expect_core(&x);
            assert!(expect_core(&f).equals(&f));
            let d = expect_diagonal(&x);
            assert!(expect_diagonal(&d).equals(&d));

            let a0 = random_core_element(&g, Mode::Exact, 2, 3, &mut rng);
            let b0 = random_core_element(&g, Mode::Exact, 1, 3, &mut rng);
            let lhs = expect_core(&a0.mul(&x).unwrap().mul(&b0).unwrap());
            let rhs = a0.mul(&expect_core(&x)).unwrap().mul(&b0).unwrap();
            assert!(lhs.equals(&rhs), "core bimodule on {name}");

            let ad = random_diagonal_element(&g, Mode::Exact, 2, 3, &mut rng);
            let bd = random_diagonal_element(&g, Mode::Exact, 1, 3, &mut rng);
            let lhs = expect_diagonal(&ad.mul(&x).unwrap().mul(&bd).unwrap());
            let rhs = ad.mul(&expect_diagonal(&x)).unwrap().mul(&bd).unwrap();
            assert!(lhs.equals(&rhs), "diagonal bimodule on {name}");

            for k in 1..=3usize {
                let fk = expect_core_level(&x, k);
                assert!(expect_core_level(&fk, k).equals(&fk));
                assert!(fk.membership(SubalgebraTag::CoreLevel(k)));
                let a = random_core_element(&g, Mode::Exact, k, 3, &mut rng);
                let b = random_core_element(&g, Mode::Exact, k, 3, &mut rng);
                let lhs = expect_core_level(&a.mul(&x).unwrap().mul(&b).unwrap(), k);
                let rhs = a.mul(&expect_core_level(&x, k)).unwrap().mul(&b).unwrap();
                assert!(lhs.equals(&rhs), "level-{k} bimodule on {name}");
            }
        }
        // Unit preservation.
        for k in 0..=3usize {
            assert!(expect_core_level(&one, k).equals(&one));
            assert!(expect_core_level(&shift_power(&one, k + 1), k).equals(&one));
        }
        // Shift multiplicativity on B and the generator commutation, for
        // 20 random unitaries per graph.
        for _ in 0..20 {
            let x = random_block_element(&g, Mode::Exact, &mut rng);
            let y = random_block_element(&g, Mode::Exact, &mut rng);
            assert!(shift(&x.mul(&y).unwrap())
                .equals(&shift(&x).mul(&shift(&y)).unwrap()));

            let u = random_block_unitary(&g, Mode::Exact, true, &mut rng).as_element();
            for e in g.edges() {
                let se = Element::edge_isometry(&g, e, Mode::Exact).unwrap();
                let lhs = se.mul(&u).unwrap();
                let rhs = shift(&u).mul(&se).unwrap();
                assert!(lhs.equals(&rhs), "commutation at {e} on {name}");
            }
        }
    }
    finish(10, "expectation and shift laws over random samples", start, Duration::from_secs(60));
}

#[test]
fn criterion_11_out_split_verification() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1011);
    for (name, g) in paper_graphs() {
        for trial in 0..20 {
            let part = random_partition(&g, &mut rng);
            let f = out_split(&g, &part).unwrap();
            assert!(
                f.standing_assumption().holds(),
                "standing assumption lost on {name} trial {trial}"
            );
            let mut map = induced_images(&g, &f, &part, Mode::Exact).unwrap();
            let report = map.verify_homomorphism().unwrap();
            assert!(
                report.all_pass(),
                "relations fail on {name} trial {trial}: {:?}",
                report.failures()
            );
            assert!(
                map.verify_diagonal_carry(3).unwrap(),
                "diagonal carry fails on {name} trial {trial}"
            );
        }
    }
    finish(11, "20 random out-splits per graph verify completely", start, Duration::from_secs(60));
}

#[test]
fn transported_unitary_leaves_the_quasifree_class() {
    // Companion check to criterion 7: the identification transports the
    // rotation to a unitary of the one-vertex algebra that is unitary but
    // no longer gauge-homogeneous, so the hypothesis machinery genuinely
    // changes presentation.
    let e = parse_graph(GRAPH_EX41).unwrap();
    let o2 = parse_graph(GRAPH_O2).unwrap();
    let fwd = parse_map_file(MAP_FORWARD)
        .unwrap()
        .bind(&e, &o2, Mode::Exact)
        .unwrap();
    let u = parse_unitary_file(UNITARY_EX41)
        .unwrap()
        .bind(&e, Mode::Exact)
        .unwrap();
    let transported = fwd.apply(&u.as_element()).unwrap();
    let class = verify_unitary(&transported);
    assert!(class.in_ue && !class.in_ue_core && !class.in_ub);
}
