//! Seeded random generators for the verification suites.
//!
//! Exact-mode randomness has to stay inside Q(i), so unitary matrices are
//! built as products of elementary exact unitaries: signed/phase monomial
//! matrices and Givens-style rotations from Pythagorean triples. Everything
//! is driven by a caller-supplied RNG, so suites are reproducible from a
//! seed.

use rand::prelude::IndexedRandom;
use rand::Rng;

use crate::element::{path_key, Element};
use crate::endo::{block_edges, BlockUnitary};
use crate::error::Result;
use crate::graph::Graph;
use crate::moves::OutSplitPartition;
use crate::scalar::{Mode, Scalar};

/// Unimodular phases available in exact mode.
fn phase_pool(mode: Mode) -> Vec<Scalar> {
    match mode {
        Mode::Exact => vec![
            Scalar::from_i64(1, Mode::Exact),
            Scalar::from_i64(-1, Mode::Exact),
            Scalar::i(Mode::Exact),
            Scalar::i(Mode::Exact).neg(),
            Scalar::gauss(3, 5, 4, 5),
            Scalar::gauss(3, 5, -4, 5),
            Scalar::gauss(-4, 5, 3, 5),
            Scalar::gauss(5, 13, 12, 13),
        ],
        Mode::Float => {
            let mut v = Vec::new();
            for k in 0..8 {
                let t = std::f64::consts::TAU * (k as f64) / 8.0;
                v.push(Scalar::complex(t.cos(), t.sin()));
            }
            v
        }
    }
}

/// Exact cosine/sine pairs with c^2 + s^2 = 1.
const PYTHAGOREAN: &[(i64, i64, i64)] = &[(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)];

fn identity_matrix(n: usize, mode: Mode) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(mode); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one(mode);
    }
    m
}

fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>], mode: Mode) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut out = vec![vec![Scalar::zero(mode); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = Scalar::zero(mode);
            for k in 0..n {
                s = s.add(&a[i][k].mul(&b[k][j]));
            }
            out[i][j] = s;
        }
    }
    out
}

/// A random monomial matrix: a permutation with unimodular phases.
pub fn random_monomial_matrix<R: Rng>(n: usize, mode: Mode, rng: &mut R) -> Vec<Vec<Scalar>> {
    let phases = phase_pool(mode);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut m = vec![vec![Scalar::zero(mode); n]; n];
    for (col, &row) in perm.iter().enumerate() {
        m[row][col] = phases.choose(rng).unwrap().clone();
    }
    m
}

/// A random unitary matrix as a product of a monomial matrix and a few
/// embedded rotations. With `generic` set the result is almost surely not
/// monomial for `n >= 2` (it ends with a full rotation on a random pair).
pub fn random_unitary_matrix<R: Rng>(
    n: usize,
    mode: Mode,
    generic: bool,
    rng: &mut R,
) -> Vec<Vec<Scalar>> {
    let mut m = random_monomial_matrix(n, mode, rng);
    if n < 2 || !generic {
        return m;
    }
    let rounds = rng.random_range(1..=2);
    for _ in 0..rounds {
        let mut g = identity_matrix(n, mode);
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n);
        while j == i {
            j = rng.random_range(0..n);
        }
        let &(a, b, c) = PYTHAGOREAN.choose(rng).unwrap();
        let (cos, sin) = match mode {
            Mode::Exact => (Scalar::ratio(a, c, mode), Scalar::ratio(b, c, mode)),
            Mode::Float => (
                Scalar::complex(a as f64 / c as f64, 0.0),
                Scalar::complex(b as f64 / c as f64, 0.0),
            ),
        };
        let phase = phase_pool(mode).choose(rng).unwrap().clone();
        g[i][i] = cos.clone();
        g[i][j] = sin.mul(&phase);
        g[j][i] = sin.mul(&phase.conj()).neg();
        g[j][j] = cos;
        m = mat_mul(&g, &m, mode);
    }
    m
}

/// A random element of `U(B)`: one random unitary per block. `generic`
/// requests non-monomial blocks wherever the size allows.
pub fn random_block_unitary<R: Rng>(
    g: &Graph,
    mode: Mode,
    generic: bool,
    rng: &mut R,
) -> BlockUnitary {
    let mut named = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        for w in 0..g.vertex_count() as u32 {
            let n = block_edges(g, v, w).len();
            if n == 0 {
                continue;
            }
            named.push((
                (g.vertex_name(v).to_string(), g.vertex_name(w).to_string()),
                random_unitary_matrix(n, mode, generic, rng),
            ));
        }
    }
    BlockUnitary::new(g, mode, named, false).expect("generated blocks are unitary")
}

/// A random element of the block algebra `B` (arbitrary block entries,
/// not unitary).
pub fn random_block_element<R: Rng>(g: &Graph, mode: Mode, rng: &mut R) -> Element {
    let mut raw = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        for w in 0..g.vertex_count() as u32 {
            for &e in &block_edges(g, v, w) {
                for &f in &block_edges(g, v, w) {
                    if rng.random_bool(0.5) {
                        continue;
                    }
                    raw.push((
                        random_scalar(mode, rng),
                        path_key(g.edge_source(e), vec![e]),
                        path_key(g.edge_source(f), vec![f]),
                    ));
                }
            }
        }
    }
    Element::from_raw(g, mode, raw).expect("level-1 terms never expand")
}

/// A random element of the level-`k` core: words with both paths of
/// length `k` and matching ranges.
pub fn random_core_element<R: Rng>(
    g: &Graph,
    mode: Mode,
    level: usize,
    max_terms: usize,
    rng: &mut R,
) -> Element {
    let mut raw = Vec::new();
    let terms = rng.random_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let mu = random_path_ending_anywhere(g, level, rng);
        if mu.len() != level {
            continue;
        }
        if let Some(nu) = random_path_with_range(g, level, mu.range(g), rng) {
            raw.push((random_scalar(mode, rng), mu, nu));
        }
    }
    Element::from_raw(g, mode, raw).expect("level-matched terms never expand")
}

/// A random diagonal element at level `k`.
pub fn random_diagonal_element<R: Rng>(
    g: &Graph,
    mode: Mode,
    level: usize,
    max_terms: usize,
    rng: &mut R,
) -> Element {
    let mut raw = Vec::new();
    let terms = rng.random_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let mu = random_path_ending_anywhere(g, level, rng);
        if mu.len() != level {
            continue;
        }
        raw.push((random_scalar(mode, rng), mu.clone(), mu));
    }
    Element::from_raw(g, mode, raw).expect("diagonal terms never expand")
}

/// A random diagonal projection at level `k`: a random subset of the
/// length-`k` path projections.
pub fn random_diagonal_projection<R: Rng>(
    g: &Graph,
    mode: Mode,
    level: usize,
    rng: &mut R,
) -> Element {
    let mut raw = Vec::new();
    for (src, edges) in g.path_keys(level, None, None) {
        if rng.random_bool(0.5) {
            let key = path_key(src, edges);
            raw.push((Scalar::one(mode), key.clone(), key));
        }
    }
    Element::from_raw(g, mode, raw).expect("diagonal terms never expand")
}

/// A random scalar with small numerators and denominators.
pub fn random_scalar<R: Rng>(mode: Mode, rng: &mut R) -> Scalar {
    match mode {
        Mode::Exact => {
            let num = rng.random_range(-3..=3i64);
            let den = rng.random_range(1..=3i64);
            let inum = rng.random_range(-3..=3i64);
            Scalar::gauss(num, den, inum, den)
        }
        Mode::Float => Scalar::complex(
            rng.random_range(-2.0..=2.0),
            rng.random_range(-2.0..=2.0),
        ),
    }
}

/// A random element: up to `max_terms` words with `|mu|, |nu| <= max_len`.
pub fn random_element<R: Rng>(
    g: &Graph,
    mode: Mode,
    max_terms: usize,
    max_len: usize,
    rng: &mut R,
) -> Result<Element> {
    let mut raw = Vec::new();
    let terms = rng.random_range(0..=max_terms);
    for _ in 0..terms {
        let lm = rng.random_range(0..=max_len);
        let mu = random_path_ending_anywhere(g, lm, rng);
        let v = mu.range(g);
        let ln = rng.random_range(0..=max_len);
        let nu = match random_path_with_range(g, ln, v, rng) {
            Some(p) => p,
            None => continue,
        };
        raw.push((random_scalar(mode, rng), mu, nu));
    }
    Element::from_raw(g, mode, raw)
}

fn random_path_ending_anywhere<R: Rng>(
    g: &Graph,
    len: usize,
    rng: &mut R,
) -> crate::element::PathKey {
    let start = rng.random_range(0..g.vertex_count() as u32);
    let mut at = start;
    let mut edges = Vec::new();
    for _ in 0..len {
        let out = g.out_edges(at);
        if out.is_empty() {
            break;
        }
        let &e = out.choose(rng).unwrap();
        edges.push(e);
        at = g.edge_range(e);
    }
    let src = if edges.is_empty() {
        start
    } else {
        g.edge_source(edges[0])
    };
    path_key(src, edges)
}

fn random_path_with_range<R: Rng>(
    g: &Graph,
    len: usize,
    v: u32,
    rng: &mut R,
) -> Option<crate::element::PathKey> {
    let candidates = g.path_keys(len, None, Some(v));
    let (src, edges) = candidates.choose(rng)?.clone();
    Some(path_key(src, edges))
}

/// A random out-split partition: shuffles each vertex's outgoing edges and
/// cuts them into a random number of classes.
pub fn random_partition<R: Rng>(g: &Graph, rng: &mut R) -> OutSplitPartition {
    let mut named = Vec::new();
    for v in 0..g.vertex_count() as u32 {
        let mut out: Vec<u32> = g.out_edges(v).to_vec();
        if out.is_empty() {
            continue;
        }
        for i in (1..out.len()).rev() {
            let j = rng.random_range(0..=i);
            out.swap(i, j);
        }
        let parts = rng.random_range(1..=out.len());
        // Cut points: distribute edges into `parts` contiguous chunks.
        let mut classes: Vec<Vec<String>> = vec![Vec::new(); parts];
        for (i, e) in out.iter().enumerate() {
            classes[i % parts].push(g.edge_id(*e).to_string());
        }
        named.push((g.vertex_name(v).to_string(), classes));
    }
    OutSplitPartition::new(g, named).expect("generated partition is valid")
}
