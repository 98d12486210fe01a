//! Rectangular (grid) diagrams of links and the moves between them.

pub mod distinguish;
pub mod exchange;
pub mod flype;
pub mod grid;
pub mod group;
pub mod invariants;
pub mod moves;
pub mod render;
pub mod script;

pub use grid::{canonicalize, equivalent, find_shift, CanonicalForm, Color, GridDiagram, InvalidDiagram, Vertex, Violation};
pub use moves::{apply, applicable, classify, Axis, Cell, Corner, Level, MoveError, MoveKind, MoveSpec, StabType};
