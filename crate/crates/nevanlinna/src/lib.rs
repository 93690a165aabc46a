//! Numerical Nevanlinna functionals for maps `h = R(base)` where `R` is
//! rational and `base` is one of `z`, `exp`, `sin`, `cos`, `tan`.
//!
//! Zeros and poles are enumerated exactly from the level sets of the base
//! function; proximity functions are computed by adaptive quadrature. All
//! arithmetic here is double precision.

pub mod checks;
pub mod error;
pub mod functionals;
pub mod inventory;
pub mod mero;
pub mod output;
pub mod quadrature;

pub use checks::{
    check_identity3, check_lemma2, check_theorem_n, disk_samples, AsymptoticVerdict, Identity3Options,
    Identity3Result, RadiusGrid, Relation, Spacing, TailPolicy,
};
pub use error::{LabError, Result};
pub use functionals::{
    argument_principle, characteristic_t, counting_n, counting_z, proximity_m, CountingTable, Functionals, TableRow,
};
pub use inventory::{Inventory, Point};
pub use mero::{Base, MeroExpr, MERO_GRAMMAR};
