//! Out-splitting of graphs and machine-verified generator maps.
//!
//! An out-splitting partitions the outgoing edges of each vertex into
//! ordered nonempty classes. The split graph has one copy `v^i` per class
//! of `v` and one copy `e^j` of each edge per class of its range; the copy
//! `e^j` runs from `s(e)^i` (with `i` the class of `e` at its source) to
//! `r(e)^j`. The induced generator assignment `P_v -> sum_i P_(v^i)`,
//! `S_e -> sum_j S_(e^j)` is not taken on faith: `verify_homomorphism`
//! checks orthogonality, completeness and both defining relations inside
//! the target engine, and `verify_diagonal_carry` checks that path
//! projections stay diagonal.

use std::collections::{BTreeMap, BTreeSet};

use crate::element::Element;
use crate::element::SubalgebraTag;
use crate::error::{CkError, Result};
use crate::graph::{Graph, Path};
use crate::scalar::Mode;

/// A partition of each vertex's outgoing edges into ordered nonempty
/// classes. Vertices that emit edges and are not mentioned get the trivial
/// single class.
#[derive(Debug, Clone)]
pub struct OutSplitPartition {
    graph: Graph,
    /// Per vertex index: ordered classes of edge indices.
    classes: BTreeMap<u32, Vec<Vec<u32>>>,
}

impl OutSplitPartition {
    pub fn new(graph: &Graph, named: Vec<(String, Vec<Vec<String>>)>) -> Result<OutSplitPartition> {
        let mut classes: BTreeMap<u32, Vec<Vec<u32>>> = BTreeMap::new();
        for (vname, vclasses) in named {
            let v = graph
                .vertex_index(&vname)
                .ok_or_else(|| CkError::Usage(format!("unknown vertex `{vname}`")))?;
            if classes.contains_key(&v) {
                return Err(CkError::Usage(format!("vertex `{vname}` split twice")));
            }
            let mut seen = BTreeSet::new();
            let mut resolved = Vec::new();
            for class in vclasses {
                if class.is_empty() {
                    return Err(CkError::Usage(format!("empty class at vertex `{vname}`")));
                }
                let mut idx_class = Vec::new();
                for id in class {
                    let e = graph
                        .edge_index(&id)
                        .ok_or_else(|| CkError::Usage(format!("unknown edge `{id}`")))?;
                    if graph.edge_source(e) != v {
                        return Err(CkError::Usage(format!(
                            "edge `{id}` does not leave vertex `{vname}`"
                        )));
                    }
                    if !seen.insert(e) {
                        return Err(CkError::Usage(format!(
                            "edge `{id}` appears in two classes at `{vname}`"
                        )));
                    }
                    idx_class.push(e);
                }
                idx_class.sort();
                resolved.push(idx_class);
            }
            let all: BTreeSet<u32> = graph.out_edges(v).iter().copied().collect();
            if seen != all {
                let missing: Vec<&str> = all
                    .difference(&seen)
                    .map(|&e| graph.edge_id(e))
                    .collect();
                return Err(CkError::Usage(format!(
                    "classes at `{vname}` do not cover its outgoing edges (missing {})",
                    missing.join(", ")
                )));
            }
            classes.insert(v, resolved);
        }
        // Unmentioned vertices: a single class with all outgoing edges.
        for v in 0..graph.vertex_count() as u32 {
            if classes.contains_key(&v) {
                continue;
            }
            let out = graph.out_edges(v).to_vec();
            if out.is_empty() {
                classes.insert(v, Vec::new());
            } else {
                classes.insert(v, vec![out]);
            }
        }
        Ok(OutSplitPartition {
            graph: graph.clone(),
            classes,
        })
    }

    /// The trivial partition: one class per emitting vertex.
    pub fn trivial(graph: &Graph) -> OutSplitPartition {
        OutSplitPartition::new(graph, Vec::new()).expect("trivial partition is valid")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of copies `v^1 ... v^m(v)` the vertex gets; at least 1.
    pub fn copies(&self, v: u32) -> usize {
        self.classes[&v].len().max(1)
    }

    /// 1-based class index of an edge at its source.
    pub fn class_of(&self, e: u32) -> usize {
        let v = self.graph.edge_source(e);
        self.classes[&v]
            .iter()
            .position(|c| c.contains(&e))
            .expect("partition covers every edge")
            + 1
    }
}

/// Builds the out-split graph: vertices `v^i`, edges `e^j` with
/// `s(e^j) = s(e)^i` and `r(e^j) = r(e)^j`.
pub fn out_split(g: &Graph, part: &OutSplitPartition) -> Result<Graph> {
    if part.graph() != g {
        return Err(CkError::GraphMismatch(
            "partition belongs to a different graph".into(),
        ));
    }
    let mut vertices = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        for i in 1..=part.copies(v) {
            vertices.push(format!("{}^{}", g.vertex_name(v), i));
        }
    }
    let mut edges = Vec::new();
    for e in 0..g.edge_count() as u32 {
        let src = g.edge_source(e);
        let rng = g.edge_range(e);
        let i = part.class_of(e);
        for j in 1..=part.copies(rng) {
            edges.push((
                format!("{}^{}", g.edge_id(e), j),
                format!("{}^{}", g.vertex_name(src), i),
                format!("{}^{}", g.vertex_name(rng), j),
            ));
        }
    }
    Graph::new(vertices, edges)
}

/// An assignment of target-algebra elements to the generators of a source
/// graph.
#[derive(Debug, Clone)]
pub struct GeneratorMap {
    source: Graph,
    target: Graph,
    mode: Mode,
    p_images: BTreeMap<String, Element>,
    s_images: BTreeMap<String, Element>,
    verified: bool,
}

impl GeneratorMap {
    /// Requires one image per source vertex and per source edge, all living
    /// on the target graph in one mode.
    pub fn new(
        source: &Graph,
        target: &Graph,
        p_images: BTreeMap<String, Element>,
        s_images: BTreeMap<String, Element>,
    ) -> Result<GeneratorMap> {
        let mut mode = None;
        for (name, el) in p_images.iter().chain(s_images.iter()) {
            if el.graph() != target {
                return Err(CkError::GraphMismatch(format!(
                    "image of `{name}` does not live on the target graph"
                )));
            }
            match mode {
                None => mode = Some(el.mode()),
                Some(m) if m != el.mode() => {
                    return Err(CkError::ModeMismatch(format!(
                        "image of `{name}` has mode {}",
                        el.mode()
                    )))
                }
                _ => {}
            }
        }
        for v in source.vertices() {
            if !p_images.contains_key(v) {
                return Err(CkError::Usage(format!("missing image for P({v})")));
            }
        }
        for e in source.edges() {
            if !s_images.contains_key(e) {
                return Err(CkError::Usage(format!("missing image for S({e})")));
            }
        }
        Ok(GeneratorMap {
            source: source.clone(),
            target: target.clone(),
            mode: mode.unwrap_or(Mode::Exact),
            p_images,
            s_images,
            verified: false,
        })
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn vertex_image(&self, v: &str) -> Option<&Element> {
        self.p_images.get(v)
    }

    pub fn edge_image(&self, e: &str) -> Option<&Element> {
        self.s_images.get(e)
    }

    fn path_image(&self, p: &Path) -> Result<Element> {
        if p.is_empty() {
            return Ok(self.p_images[p.source()].clone());
        }
        let mut acc: Option<Element> = None;
        for id in p.edge_ids() {
            let img = &self.s_images[id];
            acc = Some(match acc {
                None => img.clone(),
                Some(a) => a.mul(img)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Applies the generator substitution to an arbitrary source element.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.graph() != &self.source {
            return Err(CkError::GraphMismatch(
                "argument does not live on the source graph".into(),
            ));
        }
        if x.mode() != self.mode {
            return Err(CkError::ModeMismatch(format!(
                "argument mode {} vs map mode {}",
                x.mode(),
                self.mode
            )));
        }
        let mut acc = Element::zero(&self.target, self.mode);
        for view in x.term_views() {
            let mu = self.path_image(&view.mu)?;
            let nu = self.path_image(&view.nu)?;
            let term = mu.mul(&nu.adjoint())?.scale(&view.coef)?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Checks, inside the target engine, that the images satisfy the
    /// defining relations of the source graph: mutually orthogonal
    /// self-adjoint idempotent vertex images summing to the identity, and
    /// (GA1)/(GA2) for every edge and emitting vertex. Sets the verified
    /// flag when everything passes.
    pub fn verify_homomorphism(&mut self) -> Result<HomReport> {
        let mut entries = Vec::new();
        let mut push = |name: String, pass: bool, detail: String| {
            entries.push(HomCheck { name, pass, detail });
        };
        let vs: Vec<String> = self.source.vertices().map(|s| s.to_string()).collect();
        for v in &vs {
            let p = &self.p_images[v];
            let proj = p.mul(p)?.equals(p) && p.adjoint().equals(p);
            push(
                format!("projection P({v})"),
                proj,
                if proj {
                    String::new()
                } else {
                    format!("image of P({v}) is not a self-adjoint idempotent")
                },
            );
        }
        for (i, v) in vs.iter().enumerate() {
            for w in vs.iter().skip(i + 1) {
                let prod = self.p_images[v].mul(&self.p_images[w])?;
                let pass = prod.is_zero();
                push(
                    format!("orthogonality P({v}) P({w})"),
                    pass,
                    if pass {
                        String::new()
                    } else {
                        format!("P({v})P({w}) = {prod}")
                    },
                );
            }
        }
        let mut sum = Element::zero(&self.target, self.mode);
        for v in &vs {
            sum = sum.add(&self.p_images[v])?;
        }
        let one = Element::identity(&self.target, self.mode);
        let pass = sum.equals(&one);
        push(
            "completeness sum P(v) = 1".to_string(),
            pass,
            if pass {
                String::new()
            } else {
                format!("sum of vertex images = {sum}")
            },
        );
        for e in self.source.edges() {
            let s = &self.s_images[e];
            let r = self.source.vertex_name(
                self.source
                    .edge_range(self.source.edge_index(e).unwrap()),
            );
            let lhs = s.adjoint().mul(s)?;
            let rhs = &self.p_images[r];
            let pass = lhs.equals(rhs);
            push(
                format!("GA1 S({e})"),
                pass,
                if pass {
                    String::new()
                } else {
                    format!("S({e})* S({e}) = {lhs}, expected image of P({r})")
                },
            );
        }
        for (vi, v) in vs.iter().enumerate() {
            let out = self.source.out_edges(vi as u32);
            if out.is_empty() {
                continue;
            }
            let mut rhs = Element::zero(&self.target, self.mode);
            for &e in out {
                let s = &self.s_images[self.source.edge_id(e)];
                rhs = rhs.add(&s.mul(&s.adjoint())?)?;
            }
            let pass = rhs.equals(&self.p_images[v]);
            push(
                format!("GA2 P({v})"),
                pass,
                if pass {
                    String::new()
                } else {
                    format!("sum of range projections = {rhs}")
                },
            );
        }
        let report = HomReport { entries };
        self.verified = report.all_pass();
        Ok(report)
    }

    /// True when the image of every path projection `P_mu`, `|mu| <= k`,
    /// is a nonzero diagonal element of the target. Vanishing images count
    /// as failures: a faithful diagonal-to-diagonal map never kills a path
    /// projection.
    pub fn verify_diagonal_carry(&self, k: usize) -> Result<bool> {
        for l in 0..=k {
            for mu in self.source.paths_of_length(l, None, None)? {
                let p = Element::path_projection(&mu, self.mode);
                let img = self.apply(&p)?;
                if img.is_zero() || !img.membership(SubalgebraTag::Diagonal) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Per-identity outcome of the relation check.
#[derive(Debug, Clone)]
pub struct HomCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// All identities checked by [`GeneratorMap::verify_homomorphism`].
#[derive(Debug, Clone)]
pub struct HomReport {
    pub entries: Vec<HomCheck>,
}

impl HomReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> Vec<&HomCheck> {
        self.entries.iter().filter(|e| !e.pass).collect()
    }
}

/// The induced generator map of an out-splitting:
/// `P_v -> sum_i P_(v^i)` and `S_e -> sum_j S_(e^j)`.
pub fn induced_images(
    g: &Graph,
    f: &Graph,
    part: &OutSplitPartition,
    mode: Mode,
) -> Result<GeneratorMap> {
    let expected = out_split(g, part)?;
    if &expected != f {
        return Err(CkError::GraphMismatch(
            "target is not the out-split of the source along this partition".into(),
        ));
    }
    let mut p_images = BTreeMap::new();
    for v in 0..g.vertex_count() as u32 {
        let mut acc = Element::zero(f, mode);
        for i in 1..=part.copies(v) {
            let name = format!("{}^{}", g.vertex_name(v), i);
            acc = acc.add(&Element::vertex_projection(f, &name, mode)?)?;
        }
        p_images.insert(g.vertex_name(v).to_string(), acc);
    }
    let mut s_images = BTreeMap::new();
    for e in 0..g.edge_count() as u32 {
        let rng = g.edge_range(e);
        let mut acc = Element::zero(f, mode);
        for j in 1..=part.copies(rng) {
            let name = format!("{}^{}", g.edge_id(e), j);
            acc = acc.add(&Element::edge_isometry(f, &name, mode)?)?;
        }
        s_images.insert(g.edge_id(e).to_string(), acc);
    }
    GeneratorMap::new(g, f, p_images, s_images)
}

/// All blocks `(v, w, A(v,w))` with at least one edge, in canonical order.
pub fn block_structure_report(g: &Graph) -> Vec<(String, String, u64)> {
    let a = g.adjacency_matrix();
    let names: Vec<&str> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, row) in a.iter().enumerate() {
        for (j, &count) in row.iter().enumerate() {
            if count >= 1 {
                out.push((names[i].to_string(), names[j].to_string(), count));
            }
        }
    }
    out
}

/// Human-readable shape of `U(B)` as a product of unitary groups.
pub fn unitary_group_summary(g: &Graph) -> String {
    let blocks = block_structure_report(g);
    if blocks.is_empty() {
        return "trivial".to_string();
    }
    blocks
        .iter()
        .map(|(_, _, n)| format!("U({n})"))
        .collect::<Vec<_>>()
        .join(" x ")
}
