//! Minimal dense reverse-mode differentiation.
//!
//! Values are `f64` matrices ([`Tensor`]). A [`Tape`] records operations as
//! they run and replays them backwards from a scalar loss; trainable
//! tensors live in a [`ParamStore`] and are updated by [`Adam`].

mod params;
mod tape;
mod tensor;

pub use params::{Adam, Checkpoint, CheckpointEntry, Param, ParamStore};
pub use tape::{Gradients, Index, Tape, Var};
pub use tensor::Tensor;

