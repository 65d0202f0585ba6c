use thiserror::Error;

use super::{DFrame, Pair};
use crate::capacity::{Capacity, CapacityError};
use crate::lattice::{enumerate_homs, FrameHom, HomError};

/// A pair of frame homomorphisms `(h₊, h₋)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DFrameHom {
    pub plus: FrameHom,
    pub minus: FrameHom,
}

impl DFrameHom {
    pub fn identity(d: &DFrame) -> Self {
        DFrameHom {
            plus: FrameHom::identity(&d.plus),
            minus: FrameHom::identity(&d.minus),
        }
    }

    pub fn apply(&self, a: Pair) -> Pair {
        Pair::new(self.plus.apply(a.plus), self.minus.apply(a.minus))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DFrameHom) -> DFrameHom {
        DFrameHom {
            plus: self.plus.then(&other.plus),
            minus: self.minus.then(&other.minus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DHomError {
    #[error("{side} component: {source}")]
    Component {
        side: &'static str,
        source: HomError,
    },
}

/// A related pair whose image leaves the target relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DHomWitness {
    pub relation: &'static str,
    pub pair: Pair,
    pub image: Pair,
}

/// `Ok(None)` when `h` maps `con` into `con` and `tot` into `tot`;
/// `Ok(Some(w))` with the first offending pair otherwise. Components that
/// are not frame homomorphisms are a structural error.
pub fn is_dframe_hom(
    h: &DFrameHom,
    src: &DFrame,
    dst: &DFrame,
) -> Result<Option<DHomWitness>, DHomError> {
    FrameHom::new(&src.plus, &dst.plus, h.plus.map().to_vec()).map_err(|source| {
        DHomError::Component {
            side: "plus",
            source,
        }
    })?;
    FrameHom::new(&src.minus, &dst.minus, h.minus.map().to_vec()).map_err(|source| {
        DHomError::Component {
            side: "minus",
            source,
        }
    })?;
    for (relation, from, to) in [("con", &src.con, &dst.con), ("tot", &src.tot, &dst.tot)] {
        for pair in from.iter() {
            let image = h.apply(pair);
            if !to.contains(image) {
                return Ok(Some(DHomWitness {
                    relation,
                    pair,
                    image,
                }));
            }
        }
    }
    Ok(None)
}

/// Every d-frame homomorphism `src -> dst`, sorted.
pub fn enumerate_dframe_homs(
    src: &DFrame,
    dst: &DFrame,
    cap: &Capacity,
) -> Result<Vec<DFrameHom>, CapacityError> {
    let plus = enumerate_homs(&src.plus, &dst.plus, cap)?;
    let minus = enumerate_homs(&src.minus, &dst.minus, cap)?;
    let mut out = Vec::new();
    for p in &plus {
        for m in &minus {
            let h = DFrameHom {
                plus: p.clone(),
                minus: m.clone(),
            };
            if is_dframe_hom(&h, src, dst)
                .expect("enumerated components are frame homs")
                .is_none()
            {
                out.push(h);
            }
        }
    }
    Ok(out)
}
