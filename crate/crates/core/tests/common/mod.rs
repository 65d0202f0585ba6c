#![allow(clippy::needless_range_loop)]

//! Helpers shared by the integration tests. The checks here are written
//! directly from the definitions and do not call the closure routines.

#![allow(dead_code)]

use dframe::dframe::{Pair, PairRelation, PairSpace};
use dframe::{ElemSet, FinFrame};

/// The frame of downsets of a poset on `n ≤ 6` points whose strict order
/// is generated by the bits of `rel` over the pairs `i < j`.
pub fn downset_frame(n: usize, rel: u32) -> FinFrame {
    let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if rel >> bit & 1 == 1 {
                up[i] |= 1 << j;
            }
            bit += 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= up[k];
            }
        }
    }
    let mut sets = Vec::new();
    for s in 0u64..(1 << n) {
        // s is a downset iff every member's down-set lies inside it.
        let ok = (0..n).all(|j| {
            s >> j & 1 == 0 || (0..n).all(|i| up[i] >> j & 1 == 0 || s >> i & 1 == 1)
        });
        if ok {
            sets.push(ElemSet(s));
        }
    }
    let labels = sets.iter().map(|s| format!("d{}", s.0)).collect();
    FinFrame::from_sets(labels, &sets).expect("downsets form a frame")
}

/// The pairs of `s` picked by the bits of `mask` (cycled).
pub fn relation_from_mask(s: PairSpace<'_>, mask: u64) -> PairRelation {
    let mut r = s.empty();
    for (k, a) in s.pairs().enumerate() {
        if mask >> (k % 64) & 1 == 1 {
            r.insert(a);
        }
    }
    r
}

pub fn is_down_closed(s: PairSpace<'_>, r: &PairRelation) -> bool {
    r.iter().all(|a| {
        s.pairs()
            .filter(|&b| s.plus.leq(b.plus, a.plus) && s.minus.leq(b.minus, a.minus))
            .all(|b| r.contains(b))
    })
}

pub fn is_up_closed(s: PairSpace<'_>, r: &PairRelation) -> bool {
    r.iter().all(|a| {
        s.pairs()
            .filter(|&b| s.plus.leq(a.plus, b.plus) && s.minus.leq(a.minus, b.minus))
            .all(|b| r.contains(b))
    })
}

/// Closed under binary logical meets and joins.
pub fn is_wedge_vee_closed(s: PairSpace<'_>, r: &PairRelation) -> bool {
    let v = r.to_vec();
    v.iter()
        .all(|&a| v.iter().all(|&b| r.contains(s.meet(a, b)) && r.contains(s.join(a, b))))
}

/// Least relation containing `seed` closed under ↓ and binary ∧, ∨, by
/// naive iteration.
pub fn naive_down_wedge_vee(s: PairSpace<'_>, seed: &PairRelation) -> PairRelation {
    let mut r = seed.clone();
    loop {
        let mut next = r.clone();
        let v = r.to_vec();
        for &a in &v {
            for &b in &v {
                next.insert(s.meet(a, b));
                next.insert(s.join(a, b));
            }
            for b in s.pairs() {
                if s.plus.leq(b.plus, a.plus) && s.minus.leq(b.minus, a.minus) {
                    next.insert(b);
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

pub fn pair(p: usize, q: usize) -> Pair {
    Pair::new(p, q)
}
