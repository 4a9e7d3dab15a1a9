//! Symbolic computation engine for graph C*-algebras of finite directed
//! graphs.
//!
//! The engine does exact normal-form arithmetic on finite spans of words
//! `S_mu S_nu^*` over the Cuntz-Krieger relations, and on top of that the
//! gauge/expectation/shift calculus, endomorphisms determined by unitaries,
//! faithful finite-level matrix representations with operator norms, and
//! out-splitting graph moves with machine-verified generator maps. Text
//! formats for graphs, unitaries, partitions, generator maps and a small
//! verification script language are included; the `ckengine` binary in the
//! companion crate drives them.

pub mod element;
pub mod endo;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod maps;
pub mod moves;
pub mod parse;
pub mod random;
pub mod rep;
pub mod scalar;
pub mod script;

pub use element::{Element, SubalgebraTag, TermView};
pub use endo::{BlockUnitary, GeneralUnitary, HypothesisVerdict, UnitaryClass};
pub use error::{CkError, Result};
pub use graph::{Graph, Path, StandingReport};
pub use scalar::{Mode, Scalar, FLOAT_TOL};
