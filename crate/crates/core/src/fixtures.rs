//! The standard example graphs used throughout the documentation and tests.
//!
//! The same graphs ship as data files under `assets/graphs/`; these
//! constructors exist so library tests do not depend on file paths.

use crate::graph::Graph;

/// One vertex `v` with two loops `e1`, `e2` (the 2-generator Cuntz graph).
pub fn o2() -> Graph {
    Graph::new(vec!["v"], vec![("e1", "v", "v"), ("e2", "v", "v")]).unwrap()
}

/// Two vertices: loops `a`, `b` at `v1`, edge `c : v1 -> v2`, loop `d` at
/// `v2`, edge `e : v2 -> v1`.
pub fn ex41() -> Graph {
    Graph::new(
        vec!["v1", "v2"],
        vec![
            ("a", "v1", "v1"),
            ("b", "v1", "v1"),
            ("c", "v1", "v2"),
            ("d", "v2", "v2"),
            ("e", "v2", "v1"),
        ],
    )
    .unwrap()
}

/// One vertex `w` with two loops `f1`, `f2`; the graph that gets out-split.
pub fn split_e() -> Graph {
    Graph::new(vec!["w"], vec![("f1", "w", "w"), ("f2", "w", "w")]).unwrap()
}

/// The out-split of [`split_e`] along the partition `{f1} | {f2}`:
/// two vertices, four edges, all adjacency entries 1.
pub fn split_f() -> Graph {
    Graph::new(
        vec!["w^1", "w^2"],
        vec![
            ("f1^1", "w^1", "w^1"),
            ("f1^2", "w^1", "w^2"),
            ("f2^1", "w^2", "w^1"),
            ("f2^2", "w^2", "w^2"),
        ],
    )
    .unwrap()
}

/// The four graphs above, with the names used in reports.
pub fn all() -> Vec<(&'static str, Graph)> {
    vec![
        ("o2", o2()),
        ("ex41", ex41()),
        ("split_e", split_e()),
        ("split_f", split_f()),
    ]
}
