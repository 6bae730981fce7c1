//! Finite Coxeter groups of spherical type: root systems, the Weyl group
//! as signed-root permutations, Artin words, and the projection B -> W.

mod roots;
mod types;
mod word;

pub use roots::{RootCoords, RootSystem};
pub use types::TypeId;
pub use word::{
    braid_order_holds_w, conj_perm, conj_perm_with, enumerate_group, is_pure, word_to_w,
    ArtinWord, WElem,
};
