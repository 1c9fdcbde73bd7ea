//! Exact computations around Lamé and Heun equations: the Halphen transform,
//! hypergeometric pullbacks along Belyi maps, and rank-2 monodromy tuples with
//! their Fricke coordinates, braid actions and middle convolution.

// error enums carry exact values (a quadratic scalar is a few hundred bytes)
#![allow(clippy::result_large_err)]

pub mod exactalg;
pub mod ode;
pub mod transforms;
pub mod parse;
pub mod data;
pub mod pullback;
pub mod monodromy;
