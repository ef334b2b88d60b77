use std::fmt;

use num_traits::{One, Zero};
use ratlp::{fmt_q, parse_q, Q};

use crate::LukError;

/// The standard MV-algebra on `[0,1]`.
pub mod luk {
    use num_traits::{One, Zero};
    use ratlp::Q;

    pub fn neg(x: &Q) -> Q {
        Q::one() - x
    }

    pub fn imp(x: &Q, y: &Q) -> Q {
        (Q::one() - x + y).min(Q::one())
    }

    pub fn fus(x: &Q, y: &Q) -> Q {
        (x + y - Q::one()).max(Q::zero())
    }

    pub fn oplus(x: &Q, y: &Q) -> Q {
        (x + y).min(Q::one())
    }

    pub fn ominus(x: &Q, y: &Q) -> Q {
        (x - y).max(Q::zero())
    }

    /// 1 on 1, 0 elsewhere.
    pub fn delta(x: &Q) -> Q {
        if x.is_one() {
            Q::one()
        } else {
            Q::zero()
        }
    }
}

/// A point of `[0,1] x [0,1]^op`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoPoint {
    pub first: Q,
    pub second: Q,
}

impl TwoPoint {
    pub fn new(first: Q, second: Q) -> Result<Self, LukError> {
        for c in [&first, &second] {
            if *c < Q::zero() || *c > Q::one() {
                return Err(LukError::OutOfRange(fmt_q(c)));
            }
        }
        Ok(TwoPoint { first, second })
    }

    /// Unchecked constructor for values known to be in range.
    pub(crate) fn raw(first: Q, second: Q) -> Self {
        debug_assert!(first >= Q::zero() && first <= Q::one() && second >= Q::zero() && second <= Q::one());
        TwoPoint { first, second }
    }

    pub fn parse(first: &str, second: &str) -> Result<Self, LukError> {
        let p = |s: &str| parse_q(s).map_err(|_| LukError::OutOfRange(s.to_string()));
        TwoPoint::new(p(first)?, p(second)?)
    }

    /// `(1, 0)`.
    pub fn top() -> Self {
        TwoPoint::raw(Q::one(), Q::zero())
    }

    /// `(0, 1)`.
    pub fn bottom() -> Self {
        TwoPoint::raw(Q::zero(), Q::one())
    }

    /// Truth order: more support for truth, less for falsity.
    pub fn leq(&self, other: &TwoPoint) -> bool {
        self.first <= other.first && other.second <= self.second
    }

    /// Information order: more support for both.
    pub fn leq_info(&self, other: &TwoPoint) -> bool {
        self.first <= other.first && self.second <= other.second
    }

    pub fn swap(&self) -> TwoPoint {
        TwoPoint::raw(self.second.clone(), self.first.clone())
    }

    pub fn meet(&self, other: &TwoPoint) -> TwoPoint {
        TwoPoint::raw(self.first.clone().min(other.first.clone()), self.second.clone().max(other.second.clone()))
    }

    pub fn join(&self, other: &TwoPoint) -> TwoPoint {
        TwoPoint::raw(self.first.clone().max(other.first.clone()), self.second.clone().min(other.second.clone()))
    }
}

impl fmt::Display for TwoPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_q(&self.first), fmt_q(&self.second))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Classical,
    Incomplete,
    Contradictory,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Classical => "classical",
            Classification::Incomplete => "incomplete",
            Classification::Contradictory => "contradictory",
        })
    }
}

/// Compares the total support `a1 + a2` with 1.
pub fn classify(v: &TwoPoint) -> Classification {
    let s = &v.first + &v.second;
    match s.cmp(&Q::one()) {
        std::cmp::Ordering::Equal => Classification::Classical,
        std::cmp::Ordering::Less => Classification::Incomplete,
        std::cmp::Ordering::Greater => Classification::Contradictory,
    }
}
