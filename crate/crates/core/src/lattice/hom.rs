use std::fmt;

use thiserror::Error;

use super::frame::FinFrame;
use crate::capacity::{Capacity, CapacityError, Guard};

/// A map between frames that preserves finite meets and all joins. On finite
/// carriers that is: binary meets, binary joins, `0` and `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameHom {
    map: Vec<usize>,
}

impl fmt::Debug for FrameHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrameHom{:?}", self.map)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {got} entries, source has {expected} elements")]
    Arity { expected: usize, got: usize },
    #[error("image {value} of element {at} is out of range")]
    OutOfRange { at: usize, value: usize },
    #[error("not a frame homomorphism: {0}")]
    Law(HomViolation),
}

/// Why a map fails to be a frame homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    Bottom,
    Top,
    Meet(usize, usize),
    Join(usize, usize),
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Bottom => f.write_str("bottom not preserved"),
            HomViolation::Top => f.write_str("top not preserved"),
            HomViolation::Meet(a, b) => write!(f, "meet of {a} and {b} not preserved"),
            HomViolation::Join(a, b) => write!(f, "join of {a} and {b} not preserved"),
        }
    }
}

/// Returns the first law a map violates, or `None` for a frame hom.
pub fn hom_violation(src: &FinFrame, dst: &FinFrame, map: &[usize]) -> Option<HomViolation> {
    if map[src.bottom()] != dst.bottom() {
        return Some(HomViolation::Bottom);
    }
    if map[src.top()] != dst.top() {
        return Some(HomViolation::Top);
    }
    for a in src.elements() {
        for b in src.elements() {
            if map[src.meet(a, b)] != dst.meet(map[a], map[b]) {
                return Some(HomViolation::Meet(a, b));
            }
            if map[src.join(a, b)] != dst.join(map[a], map[b]) {
                return Some(HomViolation::Join(a, b));
            }
        }
    }
    None
}

impl FrameHom {
    pub fn new(src: &FinFrame, dst: &FinFrame, map: Vec<usize>) -> Result<Self, HomError> {
        if map.len() != src.len() {
            return Err(HomError::Arity {
                expected: src.len(),
                got: map.len(),
            });
        }
        if let Some((at, &value)) = map.iter().enumerate().find(|(_, &v)| v >= dst.len()) {
            return Err(HomError::OutOfRange { at, value });
        }
        match hom_violation(src, dst, &map) {
            Some(v) => Err(HomError::Law(v)),
            None => Ok(FrameHom { map }),
        }
    }

    pub(crate) fn new_unchecked(map: Vec<usize>) -> Self {
        FrameHom { map }
    }

    pub fn identity(frame: &FinFrame) -> Self {
        FrameHom {
            map: frame.elements().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FrameHom) -> FrameHom {
        FrameHom {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }
}

/// Every frame homomorphism `src -> dst`, in lexicographic order of their
/// maps. Backtracking search over a linear extension of `src`, pruning on
/// meets and joins as soon as all three elements involved are assigned.
pub fn enumerate_homs(
    src: &FinFrame,
    dst: &FinFrame,
    cap: &Capacity,
) -> Result<Vec<FrameHom>, CapacityError> {
    let space = (dst.len() as u128)
        .checked_pow(src.len() as u32)
        .unwrap_or(u128::MAX);
    cap.check(Guard::HomSpace, space)?;

    let order = src.poset().linear_extension();
    let n = src.len();
    let mut position = vec![0; n];
    for (p, &x) in order.iter().enumerate() {
        position[x] = p;
    }
    // For each element, the checks that become decidable once it is assigned:
    // every pair (y, z) of elements not after it whose meet or join involves
    // only elements not after it.
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for y in 0..n {
        for z in y..n {
            let m = src.meet(y, z);
            let j = src.join(y, z);
            let last = [y, z, m, j]
                .into_iter()
                .max_by_key(|&e| position[e])
                .unwrap();
            checks[last].push((y, z));
        }
    }

    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    fn go(
        depth: usize,
        order: &[usize],
        checks: &[Vec<(usize, usize)>],
        src: &FinFrame,
        dst: &FinFrame,
        map: &mut Vec<usize>,
        out: &mut Vec<FrameHom>,
    ) {
        if depth == order.len() {
            out.push(FrameHom { map: map.clone() });
            return;
        }
        let x = order[depth];
        let candidates: Vec<usize> = dst
            .elements()
            .filter(|&v| {
                (x != src.bottom() || v == dst.bottom()) && (x != src.top() || v == dst.top())
            })
            .collect();
        for v in candidates {
            map[x] = v;
            let ok = checks[x].iter().all(|&(y, z)| {
                map[src.meet(y, z)] == dst.meet(map[y], map[z])
                    && map[src.join(y, z)] == dst.join(map[y], map[z])
            });
            if ok {
                go(depth + 1, order, checks, src, dst, map, out);
            }
        }
        map[x] = usize::MAX;
    }
    go(0, &order, &checks, src, dst, &mut map, &mut out);
    out.sort();
    Ok(out)
}
