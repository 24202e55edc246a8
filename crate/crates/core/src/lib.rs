#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod ks;
pub mod line_green;
pub mod mittag_leffler;
pub mod params;
pub mod periodic_green;
pub mod quadrature;
pub mod special;
pub mod stochastic;
