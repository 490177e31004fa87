//! State-sum invariants of closed oriented triangulated 4-manifolds.
//!
//! The built-in data instance is a finite group with a Z/N-valued 4-cocycle;
//! arbitrary tabulated data can be loaded with [`catdata::load_data`].

pub mod algebra;
pub mod catdata;
pub mod cli;
pub mod cocycle;
pub mod complex;
pub mod engine;
pub mod homcount;
pub mod network;
pub mod pachner;
pub(crate) mod simplex;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] algebra::GroupError),
    #[error(transparent)]
    Cyclotomic(#[from] algebra::CyclotomicError),
    #[error(transparent)]
    Complex(#[from] complex::ComplexError),
    #[error(transparent)]
    Move(#[from] pachner::MoveError),
    #[error(transparent)]
    Cocycle(#[from] cocycle::CocycleError),
    #[error(transparent)]
    Data(#[from] catdata::DataError),
    #[error(transparent)]
    Engine(#[from] engine::EngineError),
    #[error(transparent)]
    Hom(#[from] homcount::HomError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
