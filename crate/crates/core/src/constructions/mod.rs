//! Minterm constructions and the minterm-transitive functions they define.

mod compose;
mod function;
mod json;
mod minterm;

pub use compose::{reference_cyclic_minterm, xor_compose_minterms};
pub use function::{fill_subcubes, Hit, MintermFunction, TranslateRef, DEFAULT_GROUP_CAP};
pub use json::{LoadedMinterm, MintermFile};
pub use minterm::{isqrt, split_k, Construction, LabeledMinterm, Pattern};
