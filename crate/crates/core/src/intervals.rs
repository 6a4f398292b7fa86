//! Generalized intervals.
//!
//! `[x, y]` is the usual integer interval when `x <= y`, empty when
//! `y = x - 1`, and the "inverted" interval `[y + 1, x - 1]` when
//! `y + 1 <= x - 1`. With these conventions the pattern inequality
//! `a_{i+1,j} <= a_{i,j} <= a_{i+1,j+1}` (or its strict reversed form) is
//! just membership of `a_{i,j}` in `[a_{i+1,j}, a_{i+1,j+1}]`, and the
//! inversion flag of the interval is the inversion flag of the entry.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneralizedInterval {
    pub x: i64,
    pub y: i64,
}

impl GeneralizedInterval {
    pub fn new(x: i64, y: i64) -> Self {
        GeneralizedInterval { x, y }
    }

    /// Smallest and largest member, or `None` when empty.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        if self.x <= self.y {
            Some((self.x, self.y))
        } else if self.y == self.x - 1 {
            None
        } else {
            Some((self.y + 1, self.x - 1))
        }
    }

    pub fn is_inversion(&self) -> bool {
        self.y + 1 < self.x
    }

    pub fn is_empty(&self) -> bool {
        self.y == self.x - 1
    }

    /// `-1` for inversions, `+1` otherwise.
    pub fn sign(&self) -> i32 {
        if self.is_inversion() {
            -1
        } else {
            1
        }
    }

    pub fn contains(&self, z: i64) -> bool {
        match self.bounds() {
            Some((lo, hi)) => lo <= z && z <= hi,
            None => false,
        }
    }

    pub fn len(&self) -> usize {
        self.bounds().map_or(0, |(lo, hi)| (hi - lo + 1) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = self.bounds().unwrap_or((1, 0));
        lo..=hi
    }

    pub fn members(&self) -> BTreeSet<i64> {
        self.iter().collect()
    }
}

/// Shorthand for [`GeneralizedInterval::new`].
pub fn interval(x: i64, y: i64) -> GeneralizedInterval {
    GeneralizedInterval::new(x, y)
}

pub fn symmetric_difference(a: &BTreeSet<i64>, b: &BTreeSet<i64>) -> BTreeSet<i64> {
    a.symmetric_difference(b).copied().collect()
}

/// Outcome of checking one of the two symmetric-difference identities at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity_holds: bool,
    pub dichotomy_holds: bool,
}

/// Nested-or-disjoint dichotomy for a pair of generalized intervals.
///
/// The two sets are always nested or disjoint. When both are nonempty they
/// are disjoint exactly when one of them is an inversion; an empty interval
/// is trivially both nested in and disjoint from the other set.
fn dichotomy(a: GeneralizedInterval, b: GeneralizedInterval) -> bool {
    let (ma, mb) = (a.members(), b.members());
    let nested = ma.is_subset(&mb) || mb.is_subset(&ma);
    let disjoint = ma.is_disjoint(&mb);
    if !(nested || disjoint) {
        return false;
    }
    if ma.is_empty() || mb.is_empty() {
        return true;
    }
    let both_sides = ma.difference(&mb).next().is_some() && mb.difference(&ma).next().is_some();
    both_sides == (a.is_inversion() != b.is_inversion())
}

/// `[x,y] △ [x,z+1] = [y+1,z+1]` plus the dichotomy for `([x,y], [x,z+1])`.
pub fn check_first_identity(x: i64, y: i64, z: i64) -> IdentityCheck {
    let a = interval(x, y);
    let b = interval(x, z + 1);
    let identity_holds = symmetric_difference(&a.members(), &b.members()) == interval(y + 1, z + 1).members();
    IdentityCheck { identity_holds, dichotomy_holds: dichotomy(a, b) }
}

/// `[z,x] △ [y-1,x] = [y-1,z-1]` plus the dichotomy for `([z,x], [y-1,x])`.
pub fn check_second_identity(x: i64, y: i64, z: i64) -> IdentityCheck {
    let a = interval(z, x);
    let b = interval(y - 1, x);
    let identity_holds = symmetric_difference(&a.members(), &b.members()) == interval(y - 1, z - 1).members();
    IdentityCheck { identity_holds, dichotomy_holds: dichotomy(a, b) }
}
