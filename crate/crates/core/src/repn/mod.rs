//! Modules for `U_χ(𝔤)` and one-dimensional modules for the W-algebra.

pub mod character;
pub mod induced;
pub mod module;
pub mod theorem;

pub use character::{
    check_one_dim, classify_one_dim, entrywise_fp_test, fp_factoring_test, one_dim_action, EntryDomain, Ext,
    OneDimCharacter, OneDimClass, QuadraticExtension, Shift,
};
pub use induced::{
    build_baby_verma, build_induced, highest_weight_check, whittaker_action, whittaker_d_eigenvalues, DEFAULT_MAX_DIM,
};
pub use module::{are_isomorphic, hom_space, Head, IsoVerdict, MatrixModule, ModuleExport, ModuleKind};
pub use theorem::{check_minimal_modules, verify_main_theorem, ClassOutcome, MainTheoremReport};
