//! Faithful finite-dimensional representation of the level-`k` core.
//!
//! The level-`k` core splits into one full matrix block per vertex `v`,
//! spanned by the words `S_mu S_nu^*` with `|mu| = |nu| = k` and
//! `r(mu) = r(nu) = v`; the block at `v` has size equal to the number of
//! length-`k` paths into `v`. Rows and columns are indexed by those paths
//! in lexicographic edge-sequence order. Operator norms are computed
//! numerically on the represented blocks (largest singular value); exact
//! symbolic membership stays the authority for any zero/nonzero decision.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::complex::Complex64;
use serde_json::json;

use crate::element::{path_key, Element, SubalgebraTag};
use crate::endo::{block_edges, BlockUnitary};
use crate::error::{CkError, Result};
use crate::graph::Graph;
use crate::scalar::{Mode, Scalar, FLOAT_TOL};

/// Out-degrees above this make the diagonal-projection enumeration in
/// [`compute_delta`] unreasonable.
const DELTA_OUT_DEGREE_LIMIT: usize = 20;

/// The image of an element of the level-`k` core: one square scalar matrix
/// per vertex, indexed by the length-`k` paths into that vertex.
#[derive(Debug)]
pub struct BlockMatrixRep {
    graph: Graph,
    level: usize,
    mode: Mode,
    /// Per vertex: the path index (edge sequences in canonical order) and
    /// the matrix. Vertices with no length-`k` path are absent.
    blocks: BTreeMap<u32, BlockData>,
}

#[derive(Debug)]
pub struct BlockData {
    pub paths: Vec<Vec<u32>>,
    pub matrix: Vec<Vec<Scalar>>,
}

/// Sizes of the level-`k` blocks in canonical vertex order:
/// `n_v(k) = sum_w A^k(w, v)`.
pub fn block_sizes(g: &Graph, k: usize) -> Vec<(String, u64)> {
    g.vertices()
        .enumerate()
        .map(|(i, v)| (v.to_string(), g.count_paths_into(i as u32, k)))
        .collect()
}

/// Represents `x` on the level-`k` core. Usage error when `x` is not a
/// member.
pub fn represent(x: &Element, k: usize) -> Result<BlockMatrixRep> {
    if !x.membership(SubalgebraTag::CoreLevel(k)) {
        return Err(CkError::Usage(format!(
            "element is not in the level-{k} core"
        )));
    }
    let g = x.graph().clone();
    let form = x
        .degree0_level_form(k)?
        .expect("membership already established");

    let mut blocks: BTreeMap<u32, BlockData> = BTreeMap::new();
    let mut index: BTreeMap<u32, BTreeMap<Vec<u32>, usize>> = BTreeMap::new();
    for v in 0..g.vertex_count() as u32 {
        let paths: Vec<Vec<u32>> = g
            .path_keys(k, None, Some(v))
            .into_iter()
            .map(|(_, edges)| edges)
            .collect();
        if paths.is_empty() {
            continue;
        }
        let idx: BTreeMap<Vec<u32>, usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let n = paths.len();
        blocks.insert(
            v,
            BlockData {
                paths,
                matrix: vec![vec![Scalar::zero(x.mode()); n]; n],
            },
        );
        index.insert(v, idx);
    }
    for (t, c) in form {
        let v = t.mu.range(&g);
        let idx = &index[&v];
        let row = idx[&t.mu.edges];
        let col = idx[&t.nu.edges];
        blocks.get_mut(&v).unwrap().matrix[row][col] = c;
    }
    Ok(BlockMatrixRep {
        graph: g,
        level: k,
        mode: x.mode(),
        blocks,
    })
}

impl BlockMatrixRep {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&u32, &BlockData)> {
        self.blocks.iter()
    }

    pub fn block_for(&self, v: &str) -> Option<&BlockData> {
        let idx = self.graph.vertex_index(v)?;
        self.blocks.get(&idx)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| {
            b.matrix.iter().flatten().all(|s| match self.mode {
                Mode::Exact => s.is_exactly_zero(),
                Mode::Float => s.abs() <= FLOAT_TOL,
            })
        })
    }

    /// Matrix product blockwise; both sides must be level-`k` images over
    /// the same graph.
    pub fn mul(&self, other: &BlockMatrixRep) -> Result<BlockMatrixRep> {
        if self.graph != other.graph || self.level != other.level || self.mode != other.mode {
            return Err(CkError::Usage(
                "block matrix shapes do not match".into(),
            ));
        }
        let mut blocks = BTreeMap::new();
        for (&v, a) in &self.blocks {
            let b = &other.blocks[&v];
            let n = a.paths.len();
            let mut m = vec![vec![Scalar::zero(self.mode); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = Scalar::zero(self.mode);
                    for l in 0..n {
                        s = s.add(&a.matrix[i][l].mul(&b.matrix[l][j]));
                    }
                    m[i][j] = s;
                }
            }
            blocks.insert(
                v,
                BlockData {
                    paths: a.paths.clone(),
                    matrix: m,
                },
            );
        }
        Ok(BlockMatrixRep {
            graph: self.graph.clone(),
            level: self.level,
            mode: self.mode,
            blocks,
        })
    }

    /// Conjugate transpose blockwise.
    pub fn adjoint(&self) -> BlockMatrixRep {
        let mut blocks = BTreeMap::new();
        for (&v, a) in &self.blocks {
            let n = a.paths.len();
            let mut m = vec![vec![Scalar::zero(self.mode); n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot = a.matrix[j][i].conj();
                }
            }
            blocks.insert(
                v,
                BlockData {
                    paths: a.paths.clone(),
                    matrix: m,
                },
            );
        }
        BlockMatrixRep {
            graph: self.graph.clone(),
            level: self.level,
            mode: self.mode,
            blocks,
        }
    }

    pub fn equals(&self, other: &BlockMatrixRep) -> bool {
        if self.graph != other.graph || self.level != other.level || self.mode != other.mode {
            return false;
        }
        self.blocks.iter().all(|(v, a)| {
            let b = &other.blocks[v];
            a.matrix
                .iter()
                .flatten()
                .zip(b.matrix.iter().flatten())
                .all(|(x, y)| x.approx_eq(y))
        })
    }

    /// Largest singular value over all blocks.
    pub fn spectral_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for data in self.blocks.values() {
            let n = data.paths.len();
            if n == 0 {
                continue;
            }
            let m = DMatrix::from_fn(n, n, |i, j| data.matrix[i][j].to_complex());
            let svd = m.svd(false, false);
            if let Some(s) = svd
                .singular_values
                .iter()
                .cloned()
                .fold(None::<f64>, |acc, x| Some(acc.map_or(x, |a| a.max(x))))
            {
                best = best.max(s);
            }
        }
        best
    }

    /// Matrices as JSON, each entry a `[re, im]` pair, labeled by path.
    pub fn to_json(&self) -> serde_json::Value {
        let blocks: Vec<serde_json::Value> = self
            .blocks
            .iter()
            .map(|(&v, data)| {
                let labels: Vec<String> = data
                    .paths
                    .iter()
                    .map(|p| {
                        if p.is_empty() {
                            self.graph.vertex_name(v).to_string()
                        } else {
                            p.iter()
                                .map(|&e| self.graph.edge_id(e))
                                .collect::<Vec<_>>()
                                .join(" ")
                        }
                    })
                    .collect();
                let rows: Vec<Vec<[f64; 2]>> = data
                    .matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| {
                                let z = s.to_complex();
                                [z.re, z.im]
                            })
                            .collect()
                    })
                    .collect();
                json!({
                    "vertex": self.graph.vertex_name(v),
                    "paths": labels,
                    "matrix": rows,
                })
            })
            .collect();
        json!({ "level": self.level, "blocks": blocks })
    }
}

/// Operator norm of a level-`k` core element: the largest singular value
/// over the represented blocks, within float tolerance.
pub fn operator_norm(x: &Element, k: usize) -> Result<f64> {
    Ok(represent(x, k)?.spectral_norm())
}

/// The block projection `sum of S_e S_e^* over edges v -> w`, a minimal
/// central projection of the block algebra. Zero (with a warning) when
/// there is no edge `v -> w`.
pub fn central_projection(g: &Graph, v: &str, w: &str, mode: Mode) -> Result<Element> {
    let vi = g
        .vertex_index(v)
        .ok_or_else(|| CkError::Usage(format!("unknown vertex `{v}`")))?;
    let wi = g
        .vertex_index(w)
        .ok_or_else(|| CkError::Usage(format!("unknown vertex `{w}`")))?;
    let edges = block_edges(g, vi, wi);
    if edges.is_empty() {
        log::warn!("no edges {v} -> {w}: block projection is zero");
        return Ok(Element::zero(g, mode));
    }
    let raw = edges
        .into_iter()
        .map(|e| {
            (
                Scalar::one(mode),
                path_key(g.edge_source(e), vec![e]),
                path_key(g.edge_source(e), vec![e]),
            )
        })
        .collect();
    Element::from_raw(g, mode, raw)
}

/// The distance from `u p u^*` to the level-1 diagonal at `v`: the minimum
/// of `|| u p u^* - q ||` over all 2^d diagonal projections `q` spanned by
/// the edges out of `v`. Exact symbolic membership decides the zero case;
/// the positive values are numeric.
pub fn compute_delta(u: &BlockUnitary, p: &Element, v: &str) -> Result<f64> {
    let g = u.graph().clone();
    if p.graph() != &g {
        return Err(CkError::GraphMismatch(
            "projection lives on a different graph".into(),
        ));
    }
    let vi = g
        .vertex_index(v)
        .ok_or_else(|| CkError::Usage(format!("unknown vertex `{v}`")))?;
    // p must be a projection in D^1 P_v.
    if !p.membership(SubalgebraTag::DiagonalLevel(1)) {
        return Err(CkError::Usage(
            "p is not in the level-1 diagonal".into(),
        ));
    }
    let pv = Element::vertex_projection(&g, v, p.mode())?;
    if !p.mul(&pv)?.equals(p) {
        return Err(CkError::Usage(format!("p is not supported at vertex {v}")));
    }
    if !p.mul(p)?.equals(p) || !p.adjoint().equals(p) {
        return Err(CkError::Usage("p is not a projection".into()));
    }

    let ue = u.as_element();
    let conj = ue.mul(p)?.mul(&ue.adjoint())?;
    if conj.membership(SubalgebraTag::DiagonalLevel(1)) {
        // The infimum is attained exactly.
        return Ok(0.0);
    }

    let out = g.out_edges(vi).to_vec();
    if out.len() > DELTA_OUT_DEGREE_LIMIT {
        return Err(CkError::Usage(format!(
            "out-degree {} exceeds the enumeration limit {DELTA_OUT_DEGREE_LIMIT}",
            out.len()
        )));
    }
    let mut best = f64::INFINITY;
    for mask in 0u64..(1 << out.len()) {
        let raw: Vec<_> = out
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| {
                (
                    Scalar::one(p.mode()),
                    path_key(g.edge_source(e), vec![e]),
                    path_key(g.edge_source(e), vec![e]),
                )
            })
            .collect();
        let q = Element::from_raw(&g, p.mode(), raw)?;
        let dist = operator_norm(&conj.sub(&q)?, 1)?;
        best = best.min(dist);
    }
    Ok(best)
}

/// Reference spectral norm for small matrices, used by tests as an
/// independent oracle: power iteration on `A^H A` with a deterministic
/// start, refined by the Rayleigh quotient.
pub fn power_iteration_norm(m: &[Vec<Complex64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 0.0;
    }
    let a = DMatrix::from_fn(n, n, |i, j| m[i][j]);
    let h = a.adjoint() * &a;
    let mut v = nalgebra::DVector::from_element(n, Complex64::new(1.0, 0.0));
    // Deterministic perturbation so we do not start orthogonal to the
    // dominant eigenvector.
    for i in 0..n {
        v[i] += Complex64::new(0.01 * (i as f64 + 1.0), 0.013 * (i as f64 + 2.0));
    }
    let mut lambda = 0.0f64;
    for _ in 0..500 {
        let w = &h * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        v = w / Complex64::new(norm, 0.0);
        lambda = (v.adjoint() * &h * &v)[(0, 0)].re;
    }
    lambda.max(0.0).sqrt()
}
