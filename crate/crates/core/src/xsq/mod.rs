//! Crossed squares, cat²-groups, crossed n-cubes and squared complexes.

pub mod cat2;
pub mod complex;
pub mod ncube;
pub mod square;

pub use cat2::{
    cat2_from_square, cat2_morphism_violation, cat2_roundtrip_witness, make_cat2, square_from_cat2,
    Cat2Group, Cat2Layout, Corners,
};
pub use complex::{make_squared_complex, ChainTail, SquaredComplex};
pub use ncube::{inclusion_ncube, make_crossed_ncube, ncube_from_crossed_module, ncube_from_square, CrossedNCube};
pub use square::{
    inclusion_crossed_square, make_crossed_square, square_isomorphism, square_morphism_violation,
    CrossedSquare, SquareMorphism,
};
