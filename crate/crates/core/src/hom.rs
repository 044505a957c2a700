//! Substitution homomorphisms F_m → F_n.
//!
//! Any choice of images for the generators extends to exactly one
//! homomorphism; [`Homomorphism::apply`] computes that extension by
//! substituting images letter by letter and reducing.

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    target_rank: usize,
    images: Vec<Word>,
}

impl Homomorphism {
    /// One image per source generator, all in F_target_rank.
    pub fn new(target_rank: usize, images: Vec<Word>) -> Result<Self> {
        if let Some(w) = images.iter().find(|w| w.rank() != target_rank) {
            return Err(Error::RankMismatch {
                expected: target_rank,
                found: w.rank(),
            });
        }
        Ok(Homomorphism {
            target_rank,
            images,
        })
    }

    pub fn identity(rank: usize) -> Self {
        Homomorphism {
            target_rank: rank,
            images: (0..rank).map(|g| Word::generator(rank, g)).collect(),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.images.len()
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.source_rank() {
            return Err(Error::ArityMismatch {
                expected: w.rank(),
                found: self.source_rank(),
            });
        }
        let inverses: Vec<Word> = self.images.iter().map(Word::inverse).collect();
        let raw = w.letters().iter().flat_map(|l: &Letter| {
            let image = if l.positive {
                &self.images[l.generator]
            } else {
                &inverses[l.generator]
            };
            image.letters().iter().copied()
        });
        Ok(Word::reduce(self.target_rank, raw))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Homomorphism) -> Result<Homomorphism> {
        let images = first
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(self.target_rank, images)
    }
}

/// Image of `w` under the homomorphism sending generator `g` to `images[g]`.
pub fn apply_hom(target_rank: usize, images: &[Word], w: &Word) -> Result<Word> {
    Homomorphism::new(target_rank, images.to_vec())?.apply(w)
}
