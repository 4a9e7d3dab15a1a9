//! Normal-form arithmetic in the universal *-algebra on the generators
//! `{P_v, S_e}` of a graph.
//!
//! An element is a finite linear combination of words `S_mu S_nu^*` with
//! `r(mu) = r(nu)`. Two rewrite facts make equality decidable on finite
//! spans:
//!
//! * products reduce by prefix comparison:
//!   `(S_mu S_nu^*)(S_al S_be^*)` is `S_(mu.al') S_be^*` when `al = nu.al'`,
//!   `S_mu S_(be.nu')^*` when `nu = al.nu'`, and zero otherwise;
//! * a word can be pushed to a longer level by the relation
//!   `S_mu S_nu^* = sum over edges alpha out of r(mu) of S_(mu.a) S_(nu.a)^*`,
//!   provided the graph has no sink where the expansion happens.
//!
//! The canonical form groups terms by degree `|mu| - |nu|` and, inside each
//! degree, expands every term so all `nu` share the smallest admissible
//! common length. Words at a fixed degree and level are treated as linearly
//! independent, so an element is zero exactly when its canonical form has
//! no terms. Elements are immutable; every operation returns a fresh
//! canonical value.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use serde_json::json;

use crate::error::{CkError, Result};
use crate::graph::{Graph, Path};
use crate::scalar::{Mode, Scalar};

/// Internal path representation: source vertex plus edge indices.
/// Ordering is lexicographic in the edge sequence (which coincides with
/// edge-id order), with the source breaking ties between vertex paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PathKey {
    pub source: u32,
    pub edges: Vec<u32>,
}

impl Ord for PathKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.edges
            .cmp(&other.edges)
            .then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for PathKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl PathKey {
    pub fn vertex(v: u32) -> Self {
        PathKey {
            source: v,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn range(&self, g: &Graph) -> u32 {
        match self.edges.last() {
            Some(&e) => g.edge_range(e),
            None => self.source,
        }
    }

    /// Appends a tail starting at this key's range.
    pub fn extended(&self, tail: &[u32]) -> PathKey {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(tail);
        PathKey {
            source: self.source,
            edges,
        }
    }

    /// First `k` edges as a path key.
    pub fn prefix(&self, k: usize) -> PathKey {
        PathKey {
            source: self.source,
            edges: self.edges[..k].to_vec(),
        }
    }

    /// If `prefix` is an initial segment, the remaining path (based at the
    /// prefix's range). Vertex paths are prefixes exactly of paths with
    /// matching source.
    pub fn strip_prefix(&self, prefix: &PathKey, g: &Graph) -> Option<PathKey> {
        if prefix.edges.len() > self.edges.len() {
            return None;
        }
        if prefix.edges.is_empty() {
            if prefix.source == self.source {
                return Some(self.clone());
            }
            return None;
        }
        if self.edges[..prefix.edges.len()] == prefix.edges[..] {
            Some(PathKey {
                source: prefix.range(g),
                edges: self.edges[prefix.edges.len()..].to_vec(),
            })
        } else {
            None
        }
    }

    pub fn to_path(&self, g: &Graph) -> Path {
        Path::from_indices(g, self.source, self.edges.clone())
    }
}

pub(crate) fn path_key(source: u32, edges: Vec<u32>) -> PathKey {
    PathKey { source, edges }
}

/// A word `S_mu S_nu^*` identified by its two paths.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct TermKey {
    pub mu: PathKey,
    pub nu: PathKey,
}

impl TermKey {
    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }
}

/// One term of an element, exposed with full path data.
#[derive(Debug, Clone)]
pub struct TermView {
    pub coef: Scalar,
    pub mu: Path,
    pub nu: Path,
}

/// An element of the universal *-algebra of a graph, kept in canonical form.
#[derive(Clone)]
pub struct Element {
    graph: Graph,
    mode: Mode,
    terms: BTreeMap<TermKey, Scalar>,
}

impl Element {
    // ---- constructors ----

    pub fn zero(graph: &Graph, mode: Mode) -> Element {
        Element {
            graph: graph.clone(),
            mode,
            terms: BTreeMap::new(),
        }
    }

    /// The vertex projection `P_v`.
    pub fn vertex_projection(graph: &Graph, v: &str, mode: Mode) -> Result<Element> {
        let idx = graph
            .vertex_index(v)
            .ok_or_else(|| CkError::Usage(format!("unknown vertex `{v}`")))?;
        let key = TermKey {
            mu: PathKey::vertex(idx),
            nu: PathKey::vertex(idx),
        };
        let mut terms = BTreeMap::new();
        terms.insert(key, Scalar::one(mode));
        Ok(Element {
            graph: graph.clone(),
            mode,
            terms,
        })
    }

    /// The sum of all vertex projections, the multiplicative identity.
    pub fn identity(graph: &Graph, mode: Mode) -> Element {
        let mut terms = BTreeMap::new();
        for v in 0..graph.vertex_count() as u32 {
            terms.insert(
                TermKey {
                    mu: PathKey::vertex(v),
                    nu: PathKey::vertex(v),
                },
                Scalar::one(mode),
            );
        }
        Element {
            graph: graph.clone(),
            mode,
            terms,
        }
    }

    /// The partial isometry `S_mu` of a path (the projection `P_v` when the
    /// path has length zero).
    pub fn path_isometry(path: &Path, mode: Mode) -> Element {
        let g = path.graph().clone();
        let mu = PathKey {
            source: path.source_index(),
            edges: path.edge_indices().to_vec(),
        };
        let nu = PathKey::vertex(mu.range(&g));
        let mut terms = BTreeMap::new();
        terms.insert(TermKey { mu, nu }, Scalar::one(mode));
        Element {
            graph: g,
            mode,
            terms,
        }
    }

    /// `S_e` for a single edge.
    pub fn edge_isometry(graph: &Graph, e: &str, mode: Mode) -> Result<Element> {
        let p = Path::from_edge_ids(graph, &[e])?;
        Ok(Element::path_isometry(&p, mode))
    }

    /// `coef * S_mu S_nu^*`. Returns the zero element when the ranges of
    /// the two paths differ.
    pub fn term(mu: &Path, nu: &Path, coef: Scalar) -> Result<Element> {
        if mu.graph() != nu.graph() {
            return Err(CkError::GraphMismatch(
                "term paths live on different graphs".into(),
            ));
        }
        let g = mu.graph().clone();
        let mode = coef.mode();
        let mk = PathKey {
            source: mu.source_index(),
            edges: mu.edge_indices().to_vec(),
        };
        let nk = PathKey {
            source: nu.source_index(),
            edges: nu.edge_indices().to_vec(),
        };
        if mk.range(&g) != nk.range(&g) || coef.is_exactly_zero() {
            return Ok(Element::zero(&g, mode));
        }
        let mut terms = BTreeMap::new();
        terms.insert(TermKey { mu: mk, nu: nk }, coef);
        Ok(Element {
            graph: g,
            mode,
            terms,
        })
    }

    /// The range projection `P_mu = S_mu S_mu^*`.
    pub fn path_projection(path: &Path, mode: Mode) -> Element {
        let s = Element::path_isometry(path, mode);
        let adj = s.adjoint();
        s.mul(&adj).expect("projection of a valid path")
    }

    pub(crate) fn from_raw(
        graph: &Graph,
        mode: Mode,
        raw: Vec<(Scalar, PathKey, PathKey)>,
    ) -> Result<Element> {
        let terms = canonicalize_raw(graph, mode, raw)?;
        Ok(Element {
            graph: graph.clone(),
            mode,
            terms,
        })
    }

    // ---- accessors ----

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<TermKey, Scalar> {
        &self.terms
    }

    pub fn term_views(&self) -> Vec<TermView> {
        self.terms
            .iter()
            .map(|(k, c)| TermView {
                coef: c.clone(),
                mu: k.mu.to_path(&self.graph),
                nu: k.nu.to_path(&self.graph),
            })
            .collect()
    }

    /// Degrees present, with the common `|nu|` level of each.
    pub fn degree_levels(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for k in self.terms.keys() {
            m.insert(k.degree(), k.nu.len());
        }
        m
    }

    fn check_compatible(&self, other: &Element) -> Result<()> {
        if self.graph != other.graph {
            return Err(CkError::GraphMismatch(
                "operands live on different graphs".into(),
            ));
        }
        if self.mode != other.mode {
            return Err(CkError::ModeMismatch(format!(
                "{} vs {}",
                self.mode, other.mode
            )));
        }
        Ok(())
    }

    // ---- algebra ----

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let mut raw: Vec<(Scalar, PathKey, PathKey)> = Vec::new();
        for (k, c) in self.terms.iter().chain(other.terms.iter()) {
            raw.push((c.clone(), k.mu.clone(), k.nu.clone()));
        }
        Element::from_raw(&self.graph, self.mode, raw)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale_raw(&Scalar::from_i64(-1, other.mode)))
    }

    fn scale_raw(&self, c: &Scalar) -> Element {
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, v)| {
                let prod = c.mul(v);
                if prod.is_exactly_zero() {
                    None
                } else {
                    Some((k.clone(), prod))
                }
            })
            .collect();
        Element {
            graph: self.graph.clone(),
            mode: self.mode,
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Element> {
        if c.mode() != self.mode {
            return Err(CkError::ModeMismatch(format!(
                "scalar is {}, element is {}",
                c.mode(),
                self.mode
            )));
        }
        Ok(self.scale_raw(c))
    }

    /// The adjoint `x^*`: conjugates coefficients and swaps the paths.
    pub fn adjoint(&self) -> Element {
        // Swapping preserves per-degree level uniformity, so no expansion
        // can be needed.
        let raw = self
            .terms
            .iter()
            .map(|(k, c)| (c.conj(), k.nu.clone(), k.mu.clone()))
            .collect();
        Element::from_raw(&self.graph, self.mode, raw).expect("adjoint never expands")
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_compatible(other)?;
        let g = &self.graph;
        let mut raw: Vec<(Scalar, PathKey, PathKey)> = Vec::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                // (S_mu1 S_nu1^*)(S_mu2 S_nu2^*): compare nu1 with mu2.
                if let Some(rest) = k2.mu.strip_prefix(&k1.nu, g) {
                    raw.push((c1.mul(c2), k1.mu.extended(&rest.edges), k2.nu.clone()));
                } else if let Some(rest) = k1.nu.strip_prefix(&k2.mu, g) {
                    raw.push((c1.mul(c2), k1.mu.clone(), k2.nu.extended(&rest.edges)));
                }
            }
        }
        Element::from_raw(g, self.mode, raw)
    }

    // ---- predicates ----

    /// True when the canonical form is zero: no terms in exact mode, all
    /// coefficients below tolerance in float mode.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_small())
    }

    /// Value equality, decided on canonical forms at a common level.
    /// Elements over different graphs or modes are simply unequal.
    pub fn equals(&self, other: &Element) -> bool {
        if self.graph != other.graph || self.mode != other.mode {
            return false;
        }
        if self.terms == other.terms {
            return true;
        }
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            // A failed common-level expansion (sink in the way) means the
            // canonical forms are genuinely incomparable, hence not equal.
            Err(_) => false,
        }
    }

    /// Membership in the named subspace/subalgebra, decided on the
    /// canonical form.
    pub fn membership(&self, tag: SubalgebraTag) -> bool {
        match tag {
            SubalgebraTag::Degree(m) => self.terms.keys().all(|k| k.degree() == m),
            SubalgebraTag::Core => self.terms.keys().all(|k| k.degree() == 0),
            SubalgebraTag::CoreLevel(k) => self.in_core_level(k),
            SubalgebraTag::Diagonal => self.terms.keys().all(|k| k.mu == k.nu),
            SubalgebraTag::DiagonalLevel(k) => {
                self.terms.keys().all(|k| k.mu == k.nu) && self.in_core_level(k)
            }
            SubalgebraTag::BlockCommutant => self.in_block_commutant(),
            SubalgebraTag::UnitaryCandidate => self.is_unitary_candidate(),
        }
    }

    fn in_core_level(&self, k: usize) -> bool {
        if !self.membership(SubalgebraTag::Core) {
            return false;
        }
        match self.degree_levels().get(&0) {
            None => true, // zero element
            Some(&l) if l <= k => true,
            Some(_) => self.compress_degree0(k).is_some(),
        }
    }

    fn in_block_commutant(&self) -> bool {
        if !self.membership(SubalgebraTag::Core) {
            return false;
        }
        match self.degree0_level_form(1) {
            Ok(Some(terms)) => terms
                .keys()
                .all(|t| self.graph.edge_source(t.mu.edges[0]) == self.graph.edge_source(t.nu.edges[0])),
            _ => false,
        }
    }

    fn is_unitary_candidate(&self) -> bool {
        let one = Element::identity(&self.graph, self.mode);
        for v in self.graph.vertices() {
            let p = Element::vertex_projection(&self.graph, v, self.mode).unwrap();
            let left = match p.mul(self) {
                Ok(x) => x,
                Err(_) => return false,
            };
            let right = match self.mul(&p) {
                Ok(x) => x,
                Err(_) => return false,
            };
            if !left.equals(&right) {
                return false;
            }
        }
        let star = self.adjoint();
        let a = match star.mul(self) {
            Ok(x) => x,
            Err(_) => return false,
        };
        let b = match self.mul(&star) {
            Ok(x) => x,
            Err(_) => return false,
        };
        a.equals(&one) && b.equals(&one)
    }

    // ---- level manipulation ----

    /// The degree-0 component as a level-`k` coefficient table, if the
    /// element's degree-0 part lies in the level-`k` core. Expands when the
    /// canonical level is below `k` (which can fail at a sink) and
    /// strictly compresses when above (full tail families with matching
    /// coefficients required).
    pub(crate) fn degree0_level_form(&self, k: usize) -> Result<Option<BTreeMap<TermKey, Scalar>>> {
        let deg0: Vec<(Scalar, PathKey, PathKey)> = self
            .terms
            .iter()
            .filter(|(t, _)| t.degree() == 0)
            .map(|(t, c)| (c.clone(), t.mu.clone(), t.nu.clone()))
            .collect();
        if deg0.is_empty() {
            return Ok(Some(BTreeMap::new()));
        }
        let l = deg0[0].1.len();
        if l == k {
            let mut m = BTreeMap::new();
            for (c, mu, nu) in deg0 {
                m.insert(TermKey { mu, nu }, c);
            }
            return Ok(Some(m));
        }
        if l < k {
            let expanded = expand_block(&self.graph, deg0, k)?;
            return Ok(Some(expanded));
        }
        Ok(self.compress_degree0(k))
    }

    /// Strict compression of the degree-0 block to level `k < l`: succeeds
    /// only when the element genuinely lies in the level-`k` core.
    fn compress_degree0(&self, k: usize) -> Option<BTreeMap<TermKey, Scalar>> {
        let g = &self.graph;
        let mut acc: BTreeMap<TermKey, (Scalar, u64)> = BTreeMap::new();
        let mut level = None;
        for (t, c) in &self.terms {
            if t.degree() != 0 {
                return None;
            }
            let l = t.nu.len();
            level = Some(l);
            if l <= k {
                return None; // callers handle the l <= k case
            }
            if t.mu.edges[k..] != t.nu.edges[k..] {
                return None; // tails differ: off the level-k lattice
            }
            let beta = t.mu.prefix(k);
            let beta2 = t.nu.prefix(k);
            if beta.range(g) != beta2.range(g) {
                return None;
            }
            let key = TermKey {
                mu: beta,
                nu: beta2,
            };
            match acc.get_mut(&key) {
                None => {
                    acc.insert(key, (c.clone(), 1));
                }
                Some((c0, n)) => {
                    if !c0.approx_eq(c) {
                        return None;
                    }
                    *n += 1;
                }
            }
        }
        let l = level?;
        let mut result = BTreeMap::new();
        for (key, (c, n)) in acc {
            let expected = g.count_paths_from(key.mu.range(g), l - k);
            if n != expected {
                return None; // incomplete tail family
            }
            result.insert(key, c);
        }
        Some(result)
    }
}

/// Tags for the membership predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubalgebraTag {
    /// Spectral subspace of a fixed degree.
    Degree(i64),
    /// The gauge-invariant core (all degrees zero).
    Core,
    /// Level-`k` core `F^k`.
    CoreLevel(usize),
    /// The diagonal (all terms `mu = nu`).
    Diagonal,
    /// Level-`k` diagonal `D^k`.
    DiagonalLevel(usize),
    /// `B`: level-1 core terms with matching sources, the commutant of the
    /// vertex projections inside `F^1`.
    BlockCommutant,
    /// Commutes with every vertex projection and is unitary.
    UnitaryCandidate,
}

/// Verifies that a (GA2) expansion of depth `delta` below `v` never hits a
/// sink.
fn ensure_expandable(g: &Graph, v: u32, delta: usize) -> Result<()> {
    let mut frontier: BTreeSet<u32> = BTreeSet::new();
    frontier.insert(v);
    for _ in 0..delta {
        for &w in &frontier {
            if g.out_degree(w) == 0 {
                return Err(CkError::UnsupportedGraph(format!(
                    "normal form needs an expansion past sink `{}`",
                    g.vertex_name(w)
                )));
            }
        }
        frontier = frontier
            .iter()
            .flat_map(|&w| g.out_edges(w).iter().map(|&e| g.edge_range(e)))
            .collect();
    }
    Ok(())
}

/// Expands every raw term of one degree block to `nu`-length `level`.
fn expand_block(
    g: &Graph,
    raw: Vec<(Scalar, PathKey, PathKey)>,
    level: usize,
) -> Result<BTreeMap<TermKey, Scalar>> {
    let mut out: BTreeMap<TermKey, Scalar> = BTreeMap::new();
    let mut merge = |key: TermKey, c: Scalar| {
        use std::collections::btree_map::Entry;
        match out.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_exactly_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    };
    for (c, mu, nu) in raw {
        let delta = level - nu.len();
        if delta == 0 {
            merge(TermKey { mu, nu }, c);
            continue;
        }
        let at = mu.range(g);
        ensure_expandable(g, at, delta)?;
        for (_, tail) in g.path_keys(delta, Some(at), None) {
            merge(
                TermKey {
                    mu: mu.extended(&tail),
                    nu: nu.extended(&tail),
                },
                c.clone(),
            );
        }
    }
    Ok(out)
}

/// Full canonicalization of a raw term list: drop zero/ill-ranged terms,
/// group by degree, expand each degree to its smallest admissible common
/// level, merge.
fn canonicalize_raw(
    g: &Graph,
    mode: Mode,
    raw: Vec<(Scalar, PathKey, PathKey)>,
) -> Result<BTreeMap<TermKey, Scalar>> {
    let mut by_degree: BTreeMap<i64, Vec<(Scalar, PathKey, PathKey)>> = BTreeMap::new();
    for (c, mu, nu) in raw {
        debug_assert_eq!(c.mode(), mode);
        if c.is_exactly_zero() || mu.range(g) != nu.range(g) {
            continue;
        }
        let d = mu.len() as i64 - nu.len() as i64;
        by_degree.entry(d).or_default().push((c, mu, nu));
    }
    let mut terms = BTreeMap::new();
    for (_, block) in by_degree {
        let level = block.iter().map(|(_, _, nu)| nu.len()).max().unwrap();
        for (key, c) in expand_block(g, block, level)? {
            terms.insert(key, c);
        }
    }
    Ok(terms)
}

impl fmt::Display for Element {
    /// Prints in the element expression grammar; output reparses to an
    /// equal element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = term_body(&self.graph, k);
            if c == &Scalar::one(self.mode) {
                write!(f, "{body}")?;
            } else {
                write!(f, "{c} * {body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn path_text(g: &Graph, p: &PathKey) -> String {
    p.edges
        .iter()
        .map(|&e| g.edge_id(e))
        .collect::<Vec<_>>()
        .join(" ")
}

fn term_body(g: &Graph, k: &TermKey) -> String {
    match (k.mu.edges.is_empty(), k.nu.edges.is_empty()) {
        (true, true) => format!("P({})", g.vertex_name(k.mu.source)),
        (false, true) => format!("S({})", path_text(g, &k.mu)),
        (true, false) => format!("adj(S({}))", path_text(g, &k.nu)),
        (false, false) => format!(
            "S({}) * adj(S({}))",
            path_text(g, &k.mu),
            path_text(g, &k.nu)
        ),
    }
}

impl Element {
    /// Canonical form as a JSON term array for machine-readable reports.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                json!({
                    "coef": c.to_string(),
                    "mu": {
                        "source": self.graph.vertex_name(k.mu.source),
                        "edges": k.mu.edges.iter().map(|&e| self.graph.edge_id(e)).collect::<Vec<_>>(),
                    },
                    "nu": {
                        "source": self.graph.vertex_name(k.nu.source),
                        "edges": k.nu.edges.iter().map(|&e| self.graph.edge_id(e)).collect::<Vec<_>>(),
                    },
                })
            })
            .collect();
        json!({ "mode": self.mode.to_string(), "terms": terms })
    }
}
