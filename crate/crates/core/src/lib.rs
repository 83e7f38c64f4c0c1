//! A dependently typed kernel whose universe levels range over a chosen
//! well-founded order and are themselves first-class terms.

pub mod levels;
pub mod nbe;
pub mod surface;
pub mod syntax;
pub mod elab;
pub mod cli;
