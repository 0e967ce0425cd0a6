//! The coloured matrix quantum group as a presented algebra.

pub mod algebra;
pub mod hopf;
pub mod relations;
pub mod rewrite;

pub use algebra::{GroupAlgebra, GroupLetter, Letter, MonomialOrder, NCPoly, Palette, PaletteColour, TensorPoly, Word};
pub use rewrite::{RewriteError, RewriteSystem, Rule};
