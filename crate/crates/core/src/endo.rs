//! Endomorphisms determined by unitaries.
//!
//! A unitary `u` commuting with the vertex projections determines the
//! endomorphism `lambda_u` fixing every `P_v` and sending `S_e` to `u S_e`.
//! On a word it acts as `u_k S_mu S_nu^* u_l^*` with `k = |mu|`, `l = |nu|`
//! and the cocycle chain `u_k = u shift(u) ... shift^(k-1)(u)`.
//!
//! The unitaries of the block algebra `B` (level-1 core terms with equal
//! sources, one full matrix block per vertex pair joined by an edge) give
//! the quasi-free automorphisms; those are represented concretely as
//! [`BlockUnitary`], one matrix per block, rows and columns indexed by the
//! parallel edges in lexicographic id order.

use std::collections::BTreeMap;
use std::fmt;

use crate::element::{path_key, Element, SubalgebraTag};
use crate::error::{CkError, Result};
use crate::graph::Graph;
use crate::maps::shift;
use crate::scalar::{Mode, Scalar, FLOAT_TOL};

/// Classification of an element against the unitary groups of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitaryClass {
    /// Unitary and commutes with every vertex projection.
    pub in_ue: bool,
    /// Additionally gauge-invariant (inside the core).
    pub in_ue_core: bool,
    /// Additionally inside the block algebra `B`.
    pub in_ub: bool,
    /// Predicates were decided within the float tolerance rather than
    /// exactly.
    pub approximate: bool,
}

/// Decides membership of `x` in `U_E`, `U_E` intersected with the core,
/// and `U(B)`.
pub fn verify_unitary(x: &Element) -> UnitaryClass {
    let in_ue = x.membership(SubalgebraTag::UnitaryCandidate);
    UnitaryClass {
        in_ue,
        in_ue_core: in_ue && x.membership(SubalgebraTag::Core),
        in_ub: in_ue && x.membership(SubalgebraTag::BlockCommutant),
        approximate: x.mode() == Mode::Float,
    }
}

/// The cocycle chain `u_k = u shift(u) ... shift^(k-1)(u)` for `k >= 1`.
pub fn cocycle_chain(u: &Element, k: usize) -> Result<Element> {
    if k == 0 {
        return Err(CkError::Usage("cocycle chain needs k >= 1".into()));
    }
    let mut acc = u.clone();
    let mut power = u.clone();
    for _ in 1..k {
        power = shift(&power);
        acc = acc.mul(&power)?;
    }
    Ok(acc)
}

/// Applies `lambda_u` term by term: `u_|mu| S_mu S_nu^* u_|nu|^*`,
/// extended linearly. `u` must be a verified element of `U_E`.
pub(crate) fn lambda_apply_element(u: &Element, x: &Element) -> Result<Element> {
    let g = x.graph().clone();
    let mode = x.mode();
    if u.graph() != &g {
        return Err(CkError::GraphMismatch(
            "unitary and argument live on different graphs".into(),
        ));
    }
    if u.mode() != mode {
        return Err(CkError::ModeMismatch(format!(
            "unitary is {}, argument is {}",
            u.mode(),
            mode
        )));
    }
    let max_len = x
        .raw_terms()
        .keys()
        .map(|t| t.mu.len().max(t.nu.len()))
        .max()
        .unwrap_or(0);
    // chains[j] = u_j, with u_0 the identity.
    let mut chains = Vec::with_capacity(max_len + 1);
    chains.push(Element::identity(&g, mode));
    for j in 1..=max_len {
        chains.push(cocycle_chain(u, j)?);
    }
    // Bucket terms by (|mu|, |nu|) so each bucket costs two products.
    let mut buckets: BTreeMap<(usize, usize), Vec<_>> = BTreeMap::new();
    for (t, c) in x.raw_terms() {
        buckets
            .entry((t.mu.len(), t.nu.len()))
            .or_default()
            .push((c.clone(), t.mu.clone(), t.nu.clone()));
    }
    let mut acc = Element::zero(&g, mode);
    for ((lm, ln), raw) in buckets {
        let part = Element::from_raw(&g, mode, raw)?;
        let image = chains[lm].mul(&part)?.mul(&chains[ln].adjoint())?;
        acc = acc.add(&image)?;
    }
    Ok(acc)
}

/// A general (not necessarily quasi-free) unitary in `U_E`, usable for
/// evaluating `lambda_u`. No inverse is offered unless it lies in `U(B)`.
#[derive(Debug, Clone)]
pub struct GeneralUnitary {
    element: Element,
    class: UnitaryClass,
}

impl GeneralUnitary {
    pub fn from_element(element: Element) -> Result<GeneralUnitary> {
        let class = verify_unitary(&element);
        if !class.in_ue {
            return Err(CkError::Usage(
                "element is not a unitary commuting with the vertex projections".into(),
            ));
        }
        Ok(GeneralUnitary { element, class })
    }

    pub fn class(&self) -> UnitaryClass {
        self.class
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        lambda_apply_element(&self.element, x)
    }
}

/// A unitary of the block algebra `B`, stored as one square matrix per
/// vertex pair `(v, w)` with at least one edge `v -> w`. Rows and columns
/// are indexed by those edges in lexicographic id order, and the entry at
/// `(e, f)` is the coefficient of `S_e S_f^*`.
#[derive(Clone)]
pub struct BlockUnitary {
    graph: Graph,
    mode: Mode,
    blocks: BTreeMap<(u32, u32), Vec<Vec<Scalar>>>,
}

impl fmt::Debug for BlockUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockUnitary({} blocks, {})", self.blocks.len(), self.mode)
    }
}

/// Edges `v -> w` in canonical order: the index set of one block.
pub fn block_edges(g: &Graph, v: u32, w: u32) -> Vec<u32> {
    g.out_edges(v)
        .iter()
        .copied()
        .filter(|&e| g.edge_range(e) == w)
        .collect()
}

fn check_unitary_matrix(m: &[Vec<Scalar>], mode: Mode) -> bool {
    let n = m.len();
    for i in 0..n {
        for j in 0..n {
            // (U^* U)_{ij} = sum_k conj(U_{ki}) U_{kj}
            let mut s = Scalar::zero(mode);
            for row in m.iter().take(n) {
                s = s.add(&row[i].conj().mul(&row[j]));
            }
            let target = if i == j {
                Scalar::one(mode)
            } else {
                Scalar::zero(mode)
            };
            let ok = match mode {
                Mode::Exact => s == target,
                Mode::Float => s.sub(&target).abs() <= FLOAT_TOL,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

impl BlockUnitary {
    /// Builds a block unitary from named blocks. Blocks for vertex pairs
    /// not listed are filled with the identity when `default_identity` is
    /// set, and are an error otherwise.
    pub fn new(
        graph: &Graph,
        mode: Mode,
        named_blocks: Vec<((String, String), Vec<Vec<Scalar>>)>,
        default_identity: bool,
    ) -> Result<BlockUnitary> {
        let mut blocks: BTreeMap<(u32, u32), Vec<Vec<Scalar>>> = BTreeMap::new();
        for ((vs, ws), m) in named_blocks {
            let v = graph
                .vertex_index(&vs)
                .ok_or_else(|| CkError::Usage(format!("unknown vertex `{vs}`")))?;
            let w = graph
                .vertex_index(&ws)
                .ok_or_else(|| CkError::Usage(format!("unknown vertex `{ws}`")))?;
            let size = block_edges(graph, v, w).len();
            if size == 0 {
                return Err(CkError::Usage(format!(
                    "no edges {vs} -> {ws}: block undefined"
                )));
            }
            if m.len() != size || m.iter().any(|row| row.len() != size) {
                return Err(CkError::Usage(format!(
                    "block {vs} -> {ws} must be {size}x{size}"
                )));
            }
            for row in &m {
                for entry in row {
                    if entry.mode() != mode {
                        return Err(CkError::ModeMismatch(format!(
                            "block {vs} -> {ws} entry has mode {}",
                            entry.mode()
                        )));
                    }
                }
            }
            if !check_unitary_matrix(&m, mode) {
                return Err(CkError::Usage(format!("block {vs} -> {ws} is not unitary")));
            }
            if blocks.insert((v, w), m).is_some() {
                return Err(CkError::Usage(format!("block {vs} -> {ws} given twice")));
            }
        }
        // Every nonempty block must be present.
        for v in 0..graph.vertex_count() as u32 {
            for w in 0..graph.vertex_count() as u32 {
                let size = block_edges(graph, v, w).len();
                if size == 0 || blocks.contains_key(&(v, w)) {
                    continue;
                }
                if !default_identity {
                    return Err(CkError::Usage(format!(
                        "missing block {} -> {}",
                        graph.vertex_name(v),
                        graph.vertex_name(w)
                    )));
                }
                let mut id = vec![vec![Scalar::zero(mode); size]; size];
                for (i, row) in id.iter_mut().enumerate() {
                    row[i] = Scalar::one(mode);
                }
                blocks.insert((v, w), id);
            }
        }
        Ok(BlockUnitary {
            graph: graph.clone(),
            mode,
            blocks,
        })
    }

    /// The identity of `U(B)`.
    pub fn identity(graph: &Graph, mode: Mode) -> BlockUnitary {
        BlockUnitary::new(graph, mode, Vec::new(), true).expect("identity blocks are unitary")
    }

    /// Recovers the block form of an element of `U(B)`.
    pub fn from_element(x: &Element) -> Result<BlockUnitary> {
        if !verify_unitary(x).in_ub {
            return Err(CkError::Usage("element is not in U(B)".into()));
        }
        let g = x.graph().clone();
        let form = x
            .degree0_level_form(1)?
            .expect("membership in B implies a level-1 form");
        let mut named: BTreeMap<(u32, u32), Vec<Vec<Scalar>>> = BTreeMap::new();
        for v in 0..g.vertex_count() as u32 {
            for w in 0..g.vertex_count() as u32 {
                let n = block_edges(&g, v, w).len();
                if n > 0 {
                    named.insert((v, w), vec![vec![Scalar::zero(x.mode()); n]; n]);
                }
            }
        }
        for (t, c) in form {
            let e = t.mu.edges[0];
            let f = t.nu.edges[0];
            let key = (g.edge_source(e), g.edge_range(e));
            let edges = block_edges(&g, key.0, key.1);
            let i = edges.iter().position(|&x| x == e).unwrap();
            let j = edges.iter().position(|&x| x == f).unwrap();
            named.get_mut(&key).unwrap()[i][j] = c;
        }
        BlockUnitary::new(
            &g,
            x.mode(),
            named
                .into_iter()
                .map(|((v, w), m)| {
                    (
                        (
                            g.vertex_name(v).to_string(),
                            g.vertex_name(w).to_string(),
                        ),
                        m,
                    )
                })
                .collect(),
            false,
        )
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Blocks in canonical `(v, w)` order, with their entries.
    pub fn blocks(&self) -> impl Iterator<Item = (&(u32, u32), &Vec<Vec<Scalar>>)> {
        self.blocks.iter()
    }

    /// The element `sum over blocks of sum_{e,f} U_{ef} S_e S_f^*`.
    pub fn as_element(&self) -> Element {
        let g = &self.graph;
        let mut raw = Vec::new();
        for (&(v, w), m) in &self.blocks {
            let edges = block_edges(g, v, w);
            for (i, &e) in edges.iter().enumerate() {
                for (j, &f) in edges.iter().enumerate() {
                    if m[i][j].is_exactly_zero() {
                        continue;
                    }
                    raw.push((
                        m[i][j].clone(),
                        path_key(g.edge_source(e), vec![e]),
                        path_key(g.edge_source(f), vec![f]),
                    ));
                }
            }
        }
        Element::from_raw(g, self.mode, raw).expect("level-1 terms never expand")
    }

    /// `lambda_u(x)`.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        lambda_apply_element(&self.as_element(), x)
    }

    /// The cocycle chain `u_k` as an element of the level-`k` core.
    pub fn chain(&self, k: usize) -> Result<Element> {
        cocycle_chain(&self.as_element(), k)
    }

    /// Block-wise product; satisfies `lambda_(uw) = lambda_u . lambda_w`.
    pub fn compose(&self, other: &BlockUnitary) -> Result<BlockUnitary> {
        if self.graph != other.graph {
            return Err(CkError::GraphMismatch(
                "block unitaries live on different graphs".into(),
            ));
        }
        if self.mode != other.mode {
            return Err(CkError::ModeMismatch(format!(
                "{} vs {}",
                self.mode, other.mode
            )));
        }
        let mut blocks = BTreeMap::new();
        for (&key, a) in &self.blocks {
            let b = &other.blocks[&key];
            let n = a.len();
            let mut prod = vec![vec![Scalar::zero(self.mode); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = Scalar::zero(self.mode);
                    for k in 0..n {
                        s = s.add(&a[i][k].mul(&b[k][j]));
                    }
                    prod[i][j] = s;
                }
            }
            blocks.insert(key, prod);
        }
        Ok(BlockUnitary {
            graph: self.graph.clone(),
            mode: self.mode,
            blocks,
        })
    }

    /// Block-wise adjoint; implements the inverse automorphism.
    pub fn adjoint(&self) -> BlockUnitary {
        let mut blocks = BTreeMap::new();
        for (&key, m) in &self.blocks {
            let n = m.len();
            let mut adj = vec![vec![Scalar::zero(self.mode); n]; n];
            for (i, row) in adj.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot = m[j][i].conj();
                }
            }
            blocks.insert(key, adj);
        }
        BlockUnitary {
            graph: self.graph.clone(),
            mode: self.mode,
            blocks,
        }
    }

    fn entry_is_zero(&self, s: &Scalar) -> bool {
        match self.mode {
            Mode::Exact => s.is_exactly_zero(),
            Mode::Float => s.abs() <= FLOAT_TOL,
        }
    }

    /// True when every block has exactly one nonzero entry per row and
    /// column.
    pub fn is_monomial(&self) -> bool {
        self.blocks.values().all(|m| {
            let n = m.len();
            (0..n).all(|j| {
                let nonzero = (0..n).filter(|&i| !self.entry_is_zero(&m[i][j])).count();
                nonzero == 1
            })
        })
    }

    /// Decides whether `u D^1 u^* != D^1` and, when it holds, produces a
    /// witness: a vertex `v` and an edge set spanning a diagonal projection
    /// `p` with `u p u^*` outside the level-1 diagonal.
    ///
    /// For a unitary block, a column with two or more nonzero entries is
    /// exactly what moves an edge projection off the diagonal, so the
    /// monomial criterion decides the hypothesis; the returned witness is
    /// re-checked symbolically.
    pub fn hypothesis_check(&self) -> HypothesisVerdict {
        let g = &self.graph;
        let u = self.as_element();
        for (&(v, w), m) in &self.blocks {
            let edges = block_edges(g, v, w);
            let n = m.len();
            for j in 0..n {
                let nonzero = (0..n).filter(|&i| !self.entry_is_zero(&m[i][j])).count();
                if nonzero >= 2 {
                    let e = edges[j];
                    let p = Element::from_raw(
                        g,
                        self.mode,
                        vec![(
                            Scalar::one(self.mode),
                            path_key(g.edge_source(e), vec![e]),
                            path_key(g.edge_source(e), vec![e]),
                        )],
                    )
                    .expect("level-1 projection");
                    let conj = u.mul(&p).unwrap().mul(&u.adjoint()).unwrap();
                    assert!(
                        !conj.membership(SubalgebraTag::DiagonalLevel(1)),
                        "witness column must leave the diagonal"
                    );
                    return HypothesisVerdict {
                        holds: true,
                        witness: Some(Witness {
                            vertex: g.vertex_name(v).to_string(),
                            edges: vec![g.edge_id(e).to_string()],
                        }),
                    };
                }
            }
        }
        HypothesisVerdict {
            holds: false,
            witness: None,
        }
    }
}

/// Outcome of [`BlockUnitary::hypothesis_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// A vertex and edge set whose diagonal projection is moved off the
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vertex: String,
    pub edges: Vec<String>,
}

/// Brute force referee for the hypothesis: conjugate every edge projection
/// both ways and test level-1 diagonal membership symbolically.
pub fn conjugation_oracle(u: &BlockUnitary) -> bool {
    let g = u.graph().clone();
    let ue = u.as_element();
    let ua = ue.adjoint();
    for e in g.edges() {
        let se = Element::edge_isometry(&g, e, u.mode()).unwrap();
        let p = se.mul(&se.adjoint()).unwrap();
        let fwd = ue.mul(&p).unwrap().mul(&ua).unwrap();
        if !fwd.membership(SubalgebraTag::DiagonalLevel(1)) {
            return true;
        }
        let bwd = ua.mul(&p).unwrap().mul(&ue).unwrap();
        if !bwd.membership(SubalgebraTag::DiagonalLevel(1)) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Path;

    fn s(g: &Graph, ids: &[&str]) -> Element {
        Element::path_isometry(&Path::from_edge_ids(g, ids).unwrap(), Mode::Exact)
    }

    fn o2_flip() -> BlockUnitary {
        let g = fixtures::o2();
        let zero = Scalar::zero(Mode::Exact);
        let one = Scalar::one(Mode::Exact);
        BlockUnitary::new(
            &g,
            Mode::Exact,
            vec![(
                ("v".into(), "v".into()),
                vec![vec![zero.clone(), one.clone()], vec![one, zero]],
            )],
            false,
        )
        .unwrap()
    }

    /// The all-nonzero exact rotation block on {a, b}, identity elsewhere.
    fn ex41_u() -> BlockUnitary {
        let g = fixtures::ex41();
        BlockUnitary::new(
            &g,
            Mode::Exact,
            vec![(
                ("v1".into(), "v1".into()),
                vec![
                    vec![
                        Scalar::ratio(3, 5, Mode::Exact),
                        Scalar::ratio(4, 5, Mode::Exact),
                    ],
                    vec![
                        Scalar::ratio(-4, 5, Mode::Exact),
                        Scalar::ratio(3, 5, Mode::Exact),
                    ],
                ],
            )],
            true,
        )
        .unwrap()
    }

    #[test]
    fn classification_examples() {
        let g = fixtures::o2();
        let flip = o2_flip();
        let class = verify_unitary(&flip.as_element());
        assert!(class.in_ue && class.in_ue_core && class.in_ub);
        assert!(!class.approximate);

        let class = verify_unitary(&ex41_u().as_element());
        assert!(class.in_ub);

        let e11 = s(&g, &["e1"]).mul(&s(&g, &["e1"]).adjoint()).unwrap();
        let class = verify_unitary(&e11);
        assert!(!class.in_ue && !class.in_ub && !class.in_ue_core);
    }

    #[test]
    fn block_unitary_element_identities() {
        for u in [o2_flip(), ex41_u()] {
            let g = u.graph().clone();
            let ue = u.as_element();
            assert!(ue.membership(SubalgebraTag::BlockCommutant));
            let one = Element::identity(&g, Mode::Exact);
            assert!(ue.adjoint().mul(&ue).unwrap().equals(&one));
            assert!(ue.mul(&ue.adjoint()).unwrap().equals(&one));
        }
    }

    #[test]
    fn construction_rejects_bad_blocks() {
        let g = fixtures::o2();
        let one = Scalar::one(Mode::Exact);
        // Not unitary.
        let m = vec![
            vec![one.clone(), one.clone()],
            vec![one.clone(), one.clone()],
        ];
        assert!(
            BlockUnitary::new(&g, Mode::Exact, vec![(("v".into(), "v".into()), m)], false).is_err()
        );
        // Wrong size.
        let m = vec![vec![one.clone()]];
        assert!(
            BlockUnitary::new(&g, Mode::Exact, vec![(("v".into(), "v".into()), m)], false).is_err()
        );
        // Missing block without default.
        assert!(BlockUnitary::new(&g, Mode::Exact, vec![], false).is_err());
        assert!(BlockUnitary::new(&g, Mode::Exact, vec![], true).is_ok());
    }

    #[test]
    fn chain_examples() {
        let g = fixtures::o2();
        let flip = o2_flip();
        let u1 = flip.chain(1).unwrap();
        assert!(u1.equals(&flip.as_element()));
        assert!(flip.chain(0).is_err());

        // u_2 S_{e1 e1} = lambda_u(S_e1) lambda_u(S_e1) = S_{e2 e2}.
        let u2 = flip.chain(2).unwrap();
        let lhs = u2.mul(&s(&g, &["e1", "e1"])).unwrap();
        assert!(lhs.equals(&s(&g, &["e2", "e2"])));

        let id = BlockUnitary::identity(&g, Mode::Exact);
        for k in 1..=3 {
            assert!(id
                .chain(k)
                .unwrap()
                .equals(&Element::identity(&g, Mode::Exact)));
        }
    }

    #[test]
    fn lambda_examples() {
        let g = fixtures::o2();
        let flip = o2_flip();
        assert!(flip.apply(&s(&g, &["e1"])).unwrap().equals(&s(&g, &["e2"])));

        let x = s(&g, &["e1"]).mul(&s(&g, &["e2"]).adjoint()).unwrap();
        let y = s(&g, &["e2"]).mul(&s(&g, &["e1"]).adjoint()).unwrap();
        assert!(flip.apply(&x).unwrap().equals(&y));

        for (_, g) in fixtures::all() {
            let id = BlockUnitary::identity(&g, Mode::Exact);
            for v in g.vertices() {
                let pv = Element::vertex_projection(&g, v, Mode::Exact).unwrap();
                assert!(id.apply(&pv).unwrap().equals(&pv));
            }
        }
        let u = ex41_u();
        for v in u.graph().clone().vertices() {
            let pv = Element::vertex_projection(u.graph(), v, Mode::Exact).unwrap();
            assert!(u.apply(&pv).unwrap().equals(&pv));
        }
    }

    #[test]
    fn compose_examples() {
        let g = fixtures::o2();
        let flip = o2_flip();
        let id = BlockUnitary::identity(&g, Mode::Exact);
        let sq = flip.compose(&flip).unwrap();
        assert!(sq.as_element().equals(&id.as_element()));
        let inv = flip.compose(&flip.adjoint()).unwrap();
        assert!(inv.as_element().equals(&id.as_element()));
    }

    #[test]
    fn lambda_on_b_is_conjugation() {
        let u = ex41_u();
        let w = u.adjoint().as_element();
        let lhs = u.apply(&w).unwrap();
        let rhs = u
            .as_element()
            .mul(&w)
            .unwrap()
            .mul(&u.as_element().adjoint())
            .unwrap();
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn hypothesis_examples() {
        let flip = o2_flip();
        let verdict = flip.hypothesis_check();
        assert!(!verdict.holds && verdict.witness.is_none());
        assert!(!conjugation_oracle(&flip));

        let u = ex41_u();
        let verdict = u.hypothesis_check();
        assert!(verdict.holds);
        let w = verdict.witness.unwrap();
        assert_eq!(w.vertex, "v1");
        assert!(conjugation_oracle(&u));

        // Diagonal phases are monomial.
        let g = fixtures::o2();
        let i = Scalar::i(Mode::Exact);
        let zero = Scalar::zero(Mode::Exact);
        let phases = BlockUnitary::new(
            &g,
            Mode::Exact,
            vec![(
                ("v".into(), "v".into()),
                vec![vec![i.clone(), zero.clone()], vec![zero, i.neg()]],
            )],
            false,
        )
        .unwrap();
        assert!(!phases.hypothesis_check().holds);
        assert!(!conjugation_oracle(&phases));
    }

    #[test]
    fn general_unitary_requires_ue() {
        let g = fixtures::o2();
        let flip = o2_flip().as_element();
        let gu = GeneralUnitary::from_element(flip).unwrap();
        assert!(gu.class().in_ub);
        let proj = s(&g, &["e1"]).mul(&s(&g, &["e1"]).adjoint()).unwrap();
        assert!(GeneralUnitary::from_element(proj).is_err());
    }
}
