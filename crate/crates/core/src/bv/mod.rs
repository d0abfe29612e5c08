//! Hochschild chains, the comparison with the bar resolution and the
//! Batalin–Vilkovisky operator.

pub mod chain;
pub mod eta;
pub mod ops;
pub mod table;

pub use chain::{connes_b, hoch_boundary, random_weight_zero_chain, verify_connes, HochChain};
pub use eta::{build_eta, to_bar, verify_eta, BarElem, ComparisonData};
pub use ops::{bv_context, cocycle_to_derivation, cup11, BvContext, DeltaValue, Derivation};
pub use table::{bv_table, bv_table_from, BvTable};
