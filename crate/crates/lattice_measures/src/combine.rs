use num_traits::{One, Zero};
use ratlp::Q;

use crate::{Lattice, MassFunction, MeasureError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Dempster,
    DuboisPrade,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// Classical rule on a powerset; conflict is the empty set.
    Powerset,
    /// De Morgan algebra without constants; no normalization.
    DeMorganFree,
    /// Bounded De Morgan algebra; the mass of bottom is dropped and the rest
    /// renormalized.
    DeMorganBounded,
}

impl std::str::FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dempster" => Ok(Rule::Dempster),
            "dubois_prade" | "dubois-prade" => Ok(Rule::DuboisPrade),
            other => Err(format!("unknown rule `{other}`")),
        }
    }
}

impl std::str::FromStr for Algebra {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "powerset" => Ok(Algebra::Powerset),
            "demorgan_free" | "demorgan-free" => Ok(Algebra::DeMorganFree),
            "demorgan_bounded" | "demorgan-bounded" => Ok(Algebra::DeMorganBounded),
            other => Err(format!("unknown algebra `{other}`")),
        }
    }
}

fn products<L: Lattice>(
    m1: &MassFunction<L::Elem>,
    m2: &MassFunction<L::Elem>,
    lat: &L,
    mut route: impl FnMut(&L::Elem, &L::Elem, L::Elem) -> L::Elem,
) -> MassFunction<L::Elem> {
    let mut out = MassFunction::new();
    for (x1, v1) in m1.iter() {
        for (x2, v2) in m2.iter() {
            let x = lat.meet(x1, x2);
            out.add(route(x1, x2, x), v1 * v2);
        }
    }
    out
}

/// Aggregates two general mass functions.
///
/// * Dempster, free algebra: `m(x) = sum_{x1 ^ x2 = x} m1(x1) m2(x2)`.
/// * Dempster, powerset or bounded algebra: the same sum restricted to
///   non-bottom meets, divided by the total non-bottom product mass.
/// * Dubois-Prade: a product whose meet is bottom goes to the join instead.
///   Without a bottom there is no conflict and this is the free rule.
pub fn combine<L: Lattice>(
    m1: &MassFunction<L::Elem>,
    m2: &MassFunction<L::Elem>,
    rule: Rule,
    algebra: Algebra,
    lat: &L,
) -> Result<MassFunction<L::Elem>, MeasureError> {
    match (rule, algebra) {
        (Rule::Dempster, Algebra::DeMorganFree) => Ok(products(m1, m2, lat, |_, _, x| x)),
        (Rule::Dempster, Algebra::Powerset | Algebra::DeMorganBounded) => {
            let bot = lat.bottom().ok_or(MeasureError::NoBottom)?;
            let mut out = products(m1, m2, lat, |_, _, x| x);
            out.remove(&bot);
            let denom = out.total().clone();
            if denom.is_zero() {
                return Err(MeasureError::TotalConflict);
            }
            out.scale(&(Q::one() / denom));
            Ok(out)
        }
        (Rule::DuboisPrade, _) => match lat.bottom() {
            Some(bot) => Ok(products(m1, m2, lat, |a, b, x| if x == bot { lat.join(a, b) } else { x })),
            None => {
                let out = products(m1, m2, lat, |_, _, x| x);
                debug_assert_eq!(out, combine(m1, m2, Rule::Dempster, Algebra::DeMorganFree, lat)?);
                Ok(out)
            }
        },
    }
}
