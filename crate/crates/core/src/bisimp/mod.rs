//! Truncated bisimplicial groups: binerves of crossed squares, the
//! codiagonal, the diagonal and the Moore length bound.

mod chains;

pub mod bisimplicial;
pub mod nabla;

pub use bisimplicial::{
    binerve, binerve_capped, binerve_cat2, binerve_symmetry, constant_bisimplicial, make_bisimplicial, repeat_rows,
    BiTables, SymmetryCell, TruncatedBisimplicialGroup,
};
pub use nabla::{check_length_bound, codiagonal, codiagonal_parts, codiagonal_widths, diagonal, LengthReport};
