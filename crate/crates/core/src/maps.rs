//! The shift, the gauge action, degree projections and the conditional
//! expectations onto the core, the diagonal and the finite-level cores.

use crate::element::{Element, SubalgebraTag};
use crate::error::{CkError, Result};
use crate::scalar::Scalar;

/// The shift `x -> sum_e S_e x S_e^*`. A unital completely positive map in
/// general, and multiplicative on the commutant of the vertex projections.
pub fn shift(x: &Element) -> Element {
    let g = x.graph().clone();
    let mut raw = Vec::new();
    for (k, c) in x.raw_terms() {
        let sm = k.mu.source;
        let sn = k.nu.source;
        if sm != sn {
            // No single edge can feed both legs.
            continue;
        }
        for &e in g.in_edges(sm) {
            let mut mu_edges = vec![e];
            mu_edges.extend_from_slice(&k.mu.edges);
            let mut nu_edges = vec![e];
            nu_edges.extend_from_slice(&k.nu.edges);
            let src = g.edge_source(e);
            raw.push((
                c.clone(),
                crate::element::path_key(src, mu_edges),
                crate::element::path_key(src, nu_edges),
            ));
        }
    }
    Element::from_raw(&g, x.mode(), raw).expect("shift preserves level uniformity")
}

/// `shift` applied `k` times.
pub fn shift_power(x: &Element, k: usize) -> Element {
    let mut acc = x.clone();
    for _ in 0..k {
        acc = shift(&acc);
    }
    acc
}

/// The gauge action at a fixed unimodular scalar: each term of degree `m`
/// picks up `z^m`.
pub fn gauge(x: &Element, z: &Scalar) -> Result<Element> {
    if z.mode() != x.mode() {
        return Err(CkError::ModeMismatch(format!(
            "gauge scalar is {}, element is {}",
            z.mode(),
            x.mode()
        )));
    }
    if !z.is_unimodular() {
        return Err(CkError::Usage(format!(
            "gauge parameter must be unimodular, got {z}"
        )));
    }
    let mut acc = Element::zero(x.graph(), x.mode());
    for (m, _) in x.degree_levels() {
        let factor = z.pow_i(m)?;
        acc = acc.add(&degree_component(x, m).scale(&factor)?)?;
    }
    Ok(acc)
}

/// The degree-`m` spectral component. Summing over all degrees present
/// recovers the element; the degree-0 component is the expectation onto
/// the core.
pub fn degree_component(x: &Element, m: i64) -> Element {
    let raw = x
        .raw_terms()
        .iter()
        .filter(|(k, _)| k.degree() == m)
        .map(|(k, c)| (c.clone(), k.mu.clone(), k.nu.clone()))
        .collect();
    Element::from_raw(x.graph(), x.mode(), raw).expect("subset of a canonical form")
}

/// Expectation onto the core: kills every term with `|mu| != |nu|`.
pub fn expect_core(x: &Element) -> Element {
    degree_component(x, 0)
}

/// Expectation onto the diagonal: keeps the terms with `mu = nu`.
pub fn expect_diagonal(x: &Element) -> Element {
    let raw = x
        .raw_terms()
        .iter()
        .filter(|(k, _)| k.mu == k.nu)
        .map(|(k, c)| (c.clone(), k.mu.clone(), k.nu.clone()))
        .collect();
    Element::from_raw(x.graph(), x.mode(), raw).expect("subset of a canonical form")
}

/// Expectation onto the level-`k` core. Terms already at level <= k pass
/// through; a level-`l > k` term `S_(b.a) S_(b'.a')^*` with `|b| = k`
/// contributes only when the tails agree, weighted by one over the number
/// of length-`(l-k)` paths out of `r(b)`.
pub fn expect_core_level(x: &Element, k: usize) -> Element {
    let g = x.graph().clone();
    let core = expect_core(x);
    let level = match core.degree_levels().get(&0) {
        Some(&l) => l,
        None => return core, // zero
    };
    if level <= k {
        return core;
    }
    let mut raw = Vec::new();
    for (t, c) in core.raw_terms() {
        if t.mu.edges[k..] != t.nu.edges[k..] {
            continue;
        }
        let beta = t.mu.prefix(k);
        let beta2 = t.nu.prefix(k);
        let tails = g.count_paths_from(beta.range(&g), level - k);
        debug_assert!(tails >= 1);
        let weight = Scalar::ratio(1, tails as i64, x.mode());
        raw.push((c.mul(&weight), beta, beta2));
    }
    Element::from_raw(&g, x.mode(), raw).expect("compression stays at one level")
}

/// True when `x` is fixed by the expectation onto the level-`k` core,
/// i.e. lies in `F^k`.
pub fn in_core_level(x: &Element, k: usize) -> bool {
    x.membership(SubalgebraTag::CoreLevel(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;
    use crate::fixtures;
    use crate::graph::Path;
    use crate::scalar::{Mode, Scalar};

    fn s(g: &crate::graph::Graph, ids: &[&str]) -> Element {
        Element::path_isometry(&Path::from_edge_ids(g, ids).unwrap(), Mode::Exact)
    }

    fn proj(g: &crate::graph::Graph, ids: &[&str]) -> Element {
        let x = s(g, ids);
        x.mul(&x.adjoint()).unwrap()
    }

    #[test]
    fn shift_examples() {
        let g = fixtures::o2();
        let pv = Element::vertex_projection(&g, "v", Mode::Exact).unwrap();
        assert!(shift(&pv).equals(&pv));

        let expected = proj(&g, &["e1", "e1"]).add(&proj(&g, &["e2", "e1"])).unwrap();
        assert!(shift(&proj(&g, &["e1"])).equals(&expected));
    }

    #[test]
    fn shift_maps_levels_up() {
        let g = fixtures::ex41();
        let x = proj(&g, &["a"]);
        let shifted = shift(&x);
        assert!(shifted.membership(crate::element::SubalgebraTag::DiagonalLevel(2)));
    }

    #[test]
    fn gauge_examples() {
        let g = fixtures::o2();
        let x = s(&g, &["e1"]);
        let one = Scalar::one(Mode::Exact);
        assert!(gauge(&x, &one).unwrap().equals(&x));

        let i = Scalar::i(Mode::Exact);
        let ix = x.scale(&i).unwrap();
        assert!(gauge(&x, &i).unwrap().equals(&ix));

        // Degree-0 terms are fixed.
        let d = proj(&g, &["e1"]);
        assert!(gauge(&d, &i).unwrap().equals(&d));

        let bad = Scalar::from_i64(2, Mode::Exact);
        assert!(gauge(&x, &bad).is_err());
    }

    #[test]
    fn gauge_is_action() {
        let g = fixtures::ex41();
        let x = s(&g, &["a"])
            .mul(&s(&g, &["b", "c"]).adjoint())
            .unwrap()
            .add(&proj(&g, &["d"]))
            .unwrap();
        let z = Scalar::gauss(3, 5, 4, 5);
        let w = Scalar::i(Mode::Exact);
        let a = gauge(&gauge(&x, &z).unwrap(), &w).unwrap();
        let b = gauge(&x, &z.mul(&w)).unwrap();
        assert!(a.equals(&b));
    }

    #[test]
    fn degree_component_examples() {
        let g = fixtures::o2();
        let x = s(&g, &["e1"])
            .add(&s(&g, &["e1"]).mul(&s(&g, &["e2"]).adjoint()).unwrap())
            .unwrap();
        assert!(degree_component(&x, 1).equals(&s(&g, &["e1"])));
        assert!(degree_component(&x, 5).is_zero());

        // Phi^0 kills off-degree terms.
        let off = s(&g, &["e1", "e2"]).mul(&s(&g, &["e1"]).adjoint()).unwrap();
        assert!(expect_core(&off).is_zero());

        // Components sum back to the element.
        let mut acc = Element::zero(&g, Mode::Exact);
        for (m, _) in x.degree_levels() {
            acc = acc.add(&degree_component(&x, m)).unwrap();
        }
        assert!(acc.equals(&x));
    }

    #[test]
    fn expect_diagonal_examples() {
        let g = fixtures::o2();
        let offdiag = s(&g, &["e1"]).mul(&s(&g, &["e2"]).adjoint()).unwrap();
        assert!(expect_diagonal(&offdiag).is_zero());

        let pv = Element::vertex_projection(&g, "v", Mode::Exact).unwrap();
        assert!(expect_diagonal(&pv).equals(&pv));

        let two = Scalar::from_i64(2, Mode::Exact);
        let x = s(&g, &["e1"])
            .add(&proj(&g, &["e1", "e2"]).scale(&two).unwrap())
            .unwrap();
        let expected = proj(&g, &["e1", "e2"]).scale(&two).unwrap();
        assert!(expect_diagonal(&x).equals(&expected));
    }

    #[test]
    fn expect_core_level_examples() {
        let g = fixtures::o2();
        // Frozen from the tail-count oracle: the weight is
        // 1/count_paths_from(v, 1) = 1/2.
        let x = proj(&g, &["e1", "e1"]);
        let half = Scalar::ratio(1, 2, Mode::Exact);
        let expected = proj(&g, &["e1"]).scale(&half).unwrap();
        assert!(expect_core_level(&x, 1).equals(&expected));

        // Tails differ: killed.
        let y = s(&g, &["e1", "e1"])
            .mul(&s(&g, &["e1", "e2"]).adjoint())
            .unwrap();
        assert!(expect_core_level(&y, 1).is_zero());

        // Identity on F^k.
        let z = proj(&g, &["e1"]);
        assert!(expect_core_level(&z, 1).equals(&z));
        assert!(expect_core_level(&z, 3).equals(&z));
    }

    #[test]
    fn expect_core_level_preserves_unit() {
        for (_, g) in fixtures::all() {
            let one = Element::identity(&g, Mode::Exact);
            for k in 0..=3 {
                // Also feed in the unit re-expanded to a deeper level.
                let deep = shift_power(&one, k + 1);
                assert!(deep.equals(&one), "shift of 1 is 1 on sink-free graphs");
                assert!(expect_core_level(&one, k).equals(&one));
            }
        }
    }

    #[test]
    fn reconstitution_oracle() {
        // Summing a full tail family reconstitutes the level-1 projection,
        // and the expectation sends each member to its uniform share.
        let g = fixtures::ex41();
        let p_a = proj(&g, &["a"]);
        let tails = ["a", "b", "c"]; // edges out of r(a) = v1
        let mut sum = Element::zero(&g, Mode::Exact);
        for t in tails {
            let member = proj(&g, &["a", t]);
            let share = expect_core_level(&member, 1);
            let third = Scalar::ratio(1, 3, Mode::Exact);
            assert!(share.equals(&p_a.scale(&third).unwrap()));
            sum = sum.add(&member).unwrap();
        }
        assert!(sum.equals(&p_a));
        assert!(expect_core_level(&sum, 1).equals(&p_a));
    }
}
