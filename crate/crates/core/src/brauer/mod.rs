//! Cyclic algebras, their splitting, and the index argument for Brauer-Severi surfaces.

mod algebra;
mod hilbert;
mod index;
mod norm;
mod scalar;

pub use algebra::{
    make_cyclic, make_cyclic_with_root, tensor_table, zero_divisor_search, CyclicAlgebra, StructureAlgebra,
    ZeroDivisorSearch, MAX_TENSOR_DIM,
};
pub use hilbert::{
    hilbert_symbol, norm_search_q, quaternion_splits_q, relevant_places, squarefree_part, LocalSymbol, Place,
    QuaternionVerdict,
};
pub use index::{index_chain_bs_surface, Bs2Branch, Bs2Verdict, Divisibility, IndexFact};
pub use norm::{is_norm_finite, kummer_degree, norm_criterion_finite, NormCriterion, NormWitness};
pub use scalar::{Rationals, ScalarField};
