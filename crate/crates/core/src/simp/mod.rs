//! Truncated simplicial groups: identities, Moore complexes, homotopy
//! groups, nerves, décalage and the crossed n-cube functor for n ≤ 2.

pub mod functor;
pub mod level;
pub mod moore;
pub mod nerve;
pub mod simplicial;

pub use functor::{
    decalage, decalage_kernel, kernel_commutator_vs_boundary, m_functor, m_functor_1, m_functor_2,
    vertical_kernel_corner, MFunctor,
};
pub use level::Level;
pub use moore::{homotopy_from_moore, homotopy_group, moore, GroupComplex, HomotopyGroup, NormalComplex};
pub use nerve::{nerve_cat1, nerve_cat1_capped, ArrowData, DEFAULT_LEVEL_CAP};
pub use simplicial::{constant, make_simplicial, MooreCap, TruncatedSimplicialGroup};
