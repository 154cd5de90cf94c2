pub mod error;
pub mod linalg;
pub mod su3;

pub use error::{Error, Result};
pub mod elliptic;
pub mod ode;
pub mod quad;
pub mod qutrit;
pub mod biqutrit;
pub mod chain;
pub mod entanglement;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/basis.md")]
    mod basis {}
    #[doc = include_str!("../../../book/src/elliptic.md")]
    mod elliptic {}
    #[doc = include_str!("../../../book/src/qutrit.md")]
    mod qutrit {}
    #[doc = include_str!("../../../book/src/pair.md")]
    mod pair {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/chain.md")]
    mod chain {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
