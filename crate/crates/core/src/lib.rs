//! Exact computation in free metabelian Poisson algebras and their
//! finitely presented quotients.

pub mod algebra;
pub mod basis;
pub mod coeff;
pub mod decide;
pub mod gsb;
pub mod oracle;
