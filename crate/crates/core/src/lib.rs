//! Biset calculus for finite groups.
//!
//! - [`group`]: finite groups as Cayley tables, subgroups, double cosets and
//!   conjugation.
//! - [`biset`]: bifree bisets in explicit and standard form, their
//!   composition by the double coset formula and the Ind∘Iso∘Res
//!   factorization.
//! - [`category`]: the Burnside category of bifree bisets, its conjugation
//!   subcategory, pointed G-sets and the bivariant functor `j` into it.
//! - [`abelian`]: finitely generated abelian groups and their homomorphisms.
//! - [`mackey`]: Mackey functor data, axiom checkers, and the factorization
//!   of conjugation invariant Mackey functors through the conjugation
//!   category.

pub mod abelian;
pub mod biset;
pub mod category;
pub mod group;
pub mod mackey;

pub use group::{Elem, FiniteGroup, GroupError, GroupHom, GroupSpec, Subgroup};
