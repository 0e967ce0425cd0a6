//! The dual coloured quantum algebra.

pub mod checks;
pub mod expr;
pub mod functionals;
pub mod pairing;

pub use expr::{
    dual_antipode, dual_coproduct, rho_eval, CartanExp, CartanKind, DualExpr, DualFactor, DualGen, DualLetter,
    DualTensor,
};
pub use functionals::{build_l, ColourPair, RllVariant, Units};
pub use pairing::{pair, DualError, Pairer, PairingConvention};
