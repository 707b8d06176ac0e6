//! Text formats: polynomial expressions, `.finalg` structure documents and
//! congruence pair files.

mod expr;
mod finalg;
mod pairs;

pub use expr::{collect_variables, parse_poly};
pub use finalg::{bundled, parse_base, parse_finalg, parse_structure, parse_unit, write_finalg, FINFTY, POLYGON4};
pub use pairs::{pairs_in_ring, pairs_in_structure, parse_pairs, PairLine};
