//! Exact arithmetic in the split octonions and verification of Rota-Baxter
//! operators on them.

pub mod field;
pub mod linmap;
pub mod octonion;
pub mod subalgebra;
pub mod rota_baxter;
pub mod morphisms;
pub mod classify;
pub mod io;
