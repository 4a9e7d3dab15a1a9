//! Laws of the shift, gauge action and conditional expectations.

use ckengine::fixtures;
use ckengine::maps::{
    degree_component, expect_core, expect_core_level, expect_diagonal, gauge, shift,
};
use ckengine::random::{
    random_block_element, random_block_unitary, random_core_element, random_diagonal_element,
    random_element,
};
use ckengine::{Element, Mode, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn shift_is_linear_and_star_preserving() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (_, g) in fixtures::all() {
        for _ in 0..6 {
            let x = random_element(&g, Mode::Exact, 5, 2, &mut rng).unwrap();
            let y = random_element(&g, Mode::Exact, 5, 2, &mut rng).unwrap();
            let lhs = shift(&x.add(&y).unwrap());
            let rhs = shift(&x).add(&shift(&y)).unwrap();
            assert!(lhs.equals(&rhs));
            assert!(shift(&x.adjoint()).equals(&shift(&x).adjoint()));
        }
    }
}

#[test]
fn shift_is_multiplicative_on_block_commutant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (name, g) in fixtures::all() {
        for _ in 0..8 {
            let x = random_block_element(&g, Mode::Exact, &mut rng);
            let y = random_block_element(&g, Mode::Exact, &mut rng);
            let lhs = shift(&x.mul(&y).unwrap());
            let rhs = shift(&x).mul(&shift(&y)).unwrap();
            assert!(lhs.equals(&rhs), "multiplicativity on B over {name}");
        }
    }
}

#[test]
fn generator_commutation_with_shift() {
    // S_e u = shift(u) S_e for u commuting with the vertex projections.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, g) in fixtures::all() {
        for _ in 0..5 {
            let u = random_block_unitary(&g, Mode::Exact, true, &mut rng).as_element();
            for e in g.edges() {
                let se = Element::edge_isometry(&g, e, Mode::Exact).unwrap();
                let lhs = se.mul(&u).unwrap();
                let rhs = shift(&u).mul(&se).unwrap();
                assert!(lhs.equals(&rhs), "S_{e} u = shift(u) S_{e} on {name}");
            }
        }
    }
}

#[test]
fn gauge_is_star_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let z = Scalar::gauss(3, 5, 4, 5);
    for (_, g) in fixtures::all() {
        for _ in 0..6 {
            let x = random_element(&g, Mode::Exact, 5, 2, &mut rng).unwrap();
            let y = random_element(&g, Mode::Exact, 5, 2, &mut rng).unwrap();
            let lhs = gauge(&x.mul(&y).unwrap(), &z).unwrap();
            let rhs = gauge(&x, &z).unwrap().mul(&gauge(&y, &z).unwrap()).unwrap();
            assert!(lhs.equals(&rhs));
            let lhs = gauge(&x.adjoint(), &z).unwrap();
            let rhs = gauge(&x, &z).unwrap().adjoint();
            assert!(lhs.equals(&rhs));
        }
    }
}

#[test]
fn degree_component_commutes_with_adjoint_up_to_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (_, g) in fixtures::all() {
        for _ in 0..8 {
            let x = random_element(&g, Mode::Exact, 6, 3, &mut rng).unwrap();
            for m in -3..=3i64 {
                let lhs = degree_component(&x, m).adjoint();
                let rhs = degree_component(&x.adjoint(), -m);
                assert!(lhs.equals(&rhs));
            }
        }
    }
}

#[test]
fn expectations_are_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (_, g) in fixtures::all() {
        for _ in 0..6 {
            let x = random_element(&g, Mode::Exact, 6, 3, &mut rng).unwrap();
            let f = expect_core(&x);
            assert!(expect_core(&f).equals(&f));
            let d = expect_diagonal(&x);
            assert!(expect_diagonal(&d).equals(&d));
            for k in 0..=3usize {
                let fk = expect_core_level(&x, k);
                assert!(expect_core_level(&fk, k).equals(&fk));
            }
        }
    }
}

#[test]
fn expectations_satisfy_bimodule_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in fixtures::all() {
        for _ in 0..6 {
            let x = random_element(&g, Mode::Exact, 5, 3, &mut rng).unwrap();

            // Phi^0 over the core.
            let a = random_core_element(&g, Mode::Exact, 2, 3, &mut rng);
            let b = random_core_element(&g, Mode::Exact, 1, 3, &mut rng);
            let lhs = expect_core(&a.mul(&x).unwrap().mul(&b).unwrap());
            let rhs = a.mul(&expect_core(&x)).unwrap().mul(&b).unwrap();
            assert!(lhs.equals(&rhs), "core bimodule law on {name}");

            // Phi_D over the diagonal.
            let a = random_diagonal_element(&g, Mode::Exact, 2, 3, &mut rng);
            let b = random_diagonal_element(&g, Mode::Exact, 1, 3, &mut rng);
            let lhs = expect_diagonal(&a.mul(&x).unwrap().mul(&b).unwrap());
            let rhs = a.mul(&expect_diagonal(&x)).unwrap().mul(&b).unwrap();
            assert!(lhs.equals(&rhs), "diagonal bimodule law on {name}");

            // Phi_F^k over the level-k core.
            for k in 1..=3usize {
                let a = random_core_element(&g, Mode::Exact, k, 3, &mut rng);
                let b = random_core_element(&g, Mode::Exact, k, 3, &mut rng);
                let lhs = expect_core_level(&a.mul(&x).unwrap().mul(&b).unwrap(), k);
                let rhs = a.mul(&expect_core_level(&x, k)).unwrap().mul(&b).unwrap();
                assert!(lhs.equals(&rhs), "level-{k} bimodule law on {name}");
            }
        }
    }
}

#[test]
fn expect_core_level_unit_preservation_exhaustive() {
    for (_, g) in fixtures::all() {
        let one = Element::identity(&g, Mode::Exact);
        for k in 0..=3usize {
            assert!(expect_core_level(&one, k).equals(&one));
            // Also from a strictly deeper presentation of the unit.
            let deep = ckengine::maps::shift_power(&one, k + 1);
            assert!(expect_core_level(&deep, k).equals(&one));
        }
    }
}

#[test]
fn degree_components_resolve_elements() {
    // Sum of components recovers x, components vanish off-support, and a
    // degree-homogeneous element is fixed by its own component.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (_, g) in fixtures::all() {
        for _ in 0..6 {
            let x = random_element(&g, Mode::Exact, 6, 3, &mut rng).unwrap();
            let mut acc = Element::zero(&g, Mode::Exact);
            for m in -4..=4i64 {
                acc = acc.add(&degree_component(&x, m)).unwrap();
            }
            assert!(acc.equals(&x));
            if x.is_zero() {
                continue;
            }
            for (m, _) in x.degree_levels() {
                let comp = degree_component(&x, m);
                assert!(degree_component(&comp, m).equals(&comp));
            }
        }
    }
}
