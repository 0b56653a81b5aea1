//! 3-cells: Squier completion, sphere filling, standard presentations, transfer.

mod expr;
mod squier;
mod standard;
mod transfer;

pub use expr::{boundary3, carry_across, ExprDisplay, ExprError, ThreeCellExpr};
pub use squier::{squier_completion, CoherentPresentation, FillError, LocalFill, SquierCell};
pub use standard::{parse_table, standard_coherent_presentation, MonoidTable, TableError};
pub use transfer::{parse_transfer_map, transfer_homotopy_basis, Morphism, TransferData, TransferError};
