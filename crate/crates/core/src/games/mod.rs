//! Games: TU games, partition function games, network worth functions and
//! the conversions between them.

mod allocation;
mod convert;
mod pff;
mod tu;
mod worth;

pub use allocation::Allocation;
pub use convert::{
    ef_tu_game, ef_tu_game_from_worth, graph_restrict_pff, induced_worth_from_pff,
    is_externality_free, jw_tu_game, pff_from_certified_worth, pff_from_projected, pff_from_worth,
    project_worth, ExternalityCheck,
};
pub use pff::{EmbeddedCoalition, PffGame, PffSpace};
pub(crate) use pff::ScaledShares;
pub use tu::{graph_restrict_tu, TuGame};
pub use worth::{HashScope, WorthBody, WorthFunction};
pub(crate) use worth::hashed_rational;
