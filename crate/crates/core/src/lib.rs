//! Exact computation in finitely generated free groups.
//!
//! Elements of F_n are reduced [`Word`]s. Finitely generated subgroups are
//! folded core graphs over the n-petal rose ([`LabeledGraph`]); from the
//! graph one reads off index, rank, a free basis, membership, normality and
//! the conjugacy class. Finite-index subgroups are enumerated from
//! transitive permutation actions.
//!
//! ```
//! use freegroup::{parse_word, Alphabet, Index, Subgroup};
//!
//! let ab = Alphabet::standard(2).unwrap();
//! let gens: Vec<_> = ["a^3", "b", "a b a^-1", "a^2 b a^-2"]
//!     .iter()
//!     .map(|s| parse_word(s, &ab).unwrap())
//!     .collect();
//! let h = Subgroup::generated_by(2, &gens).unwrap();
//! assert_eq!(h.index(), Index::Finite(3));
//! assert_eq!(h.rank(), 4);
//! assert!(h.is_normal());
//! ```

pub mod abelian;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod hom;
pub mod subgroup;
pub mod word;

pub use abelian::{
    abelianize, canonical_surjection, hom_matrix, integer_rank, is_surjective_onto_zn,
    quotient_exists, smith_divisors, ExpVector, IntMatrix,
};
pub use enumerate::{
    candidate_count, conjugacy_classes, count_index, enumerate_index, graph_from_perms, PermTuple,
    DEFAULT_ENUM_CAP,
};
pub use error::{Error, Result};
pub use graph::{
    bouquet, fold, fold_shuffled, CanonicalForm, Index, LabeledGraph, RawGraph, SpanningTree,
};
pub use hom::{apply_hom, Homomorphism};
pub use subgroup::{
    cyclic_cover, embed_in_f2, infinite_index_example, nielsen_schreier_rank,
    normal_subgroup_exists, subgroup_exists, Subgroup,
};
pub use word::{parse_word, Alphabet, Letter, Word};
