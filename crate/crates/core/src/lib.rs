pub mod decide;
pub mod dsl;
pub mod error;
pub mod homology;
pub mod ideal;
pub mod limits;
pub mod module;
pub mod poly;
pub mod retract;
pub mod ring;
pub mod snf;
pub mod suite;
pub mod zoo;

pub use error::{Error, Result};
pub use limits::Limits;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/specs.md")]
    mod specs {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/ideals.md")]
    mod ideals {}
    #[doc = include_str!("../../../book/src/content.md")]
    mod content {}
    #[doc = include_str!("../../../book/src/hierarchy.md")]
    mod hierarchy {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/retracts.md")]
    mod retracts {}
    #[doc = include_str!("../../../book/src/zoo.md")]
    mod zoo {}
}
