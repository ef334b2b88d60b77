use bd_core::BdError;
use luk_two::LukError;
use models::ModelError;
use thiserror::Error;

use crate::{Modality, Tag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoLayerError {
    #[error(transparent)]
    Outer(#[from] LukError),
    #[error("in inner formula at {pos}: {source}")]
    Inner { pos: usize, source: BdError },
    #[error("modality {modality} is not part of {tag}")]
    Modality { modality: Modality, tag: Tag },
    #[error("`{0}` is not a modal atom (expected Pr[...], B[...] or Pl[...])")]
    NotModal(String),
    #[error("n = {0} is out of range (1..=5)")]
    OutOfRange(usize),
    #[error("formula uses {needed} variables, the model has {have}")]
    Variables { needed: usize, have: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}
