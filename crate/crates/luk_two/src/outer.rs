use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::value::luk;
use crate::{LukError, TwoPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Logic {
    /// Designated set `{(1,0)}`, implication `->`, Baaz delta.
    L2,
    /// Designated set `{a : a1 = 1}`, weak implication `~>`.
    NL,
}

impl Logic {
    pub fn designated(self, v: &TwoPoint) -> bool {
        match self {
            Logic::L2 => *v == TwoPoint::top(),
            Logic::NL => v.first == TwoPoint::top().first,
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::L2 => "L2",
            Logic::NL => "NL",
        })
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "l2" => Ok(Logic::L2),
            "nl" => Ok(Logic::NL),
            other => Err(format!("unknown logic `{other}` (expected l2 or nl)")),
        }
    }
}

/// Outer formulas over atoms of type `A`. Derived connectives are nodes of
/// their own and evaluate by closed coordinate formulas; [`Outer::desugar`]
/// expands them into the primitives of the chosen logic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outer<A> {
    Atom(A),
    Top,
    Bot,
    /// `-`, swaps the coordinates.
    Neg(Box<Outer<A>>),
    /// `~`, Łukasiewicz negation.
    Sim(Box<Outer<A>>),
    /// `D`, Baaz delta (L2).
    Delta(Box<Outer<A>>),
    /// `Dt`, the `(1,0)` detector (L2).
    DeltaTop(Box<Outer<A>>),
    /// `->` (L2).
    Imp(Box<Outer<A>>, Box<Outer<A>>),
    /// `~>` (NL).
    WImp(Box<Outer<A>>, Box<Outer<A>>),
    /// `=>` (NL).
    SImp(Box<Outer<A>>, Box<Outer<A>>),
    And(Box<Outer<A>>, Box<Outer<A>>),
    Or(Box<Outer<A>>, Box<Outer<A>>),
    /// `&.`, strong conjunction.
    Fus(Box<Outer<A>>, Box<Outer<A>>),
    Oplus(Box<Outer<A>>, Box<Outer<A>>),
    Ominus(Box<Outer<A>>, Box<Outer<A>>),
    /// `<->`: the equivalence of `->` in L2, the weak one of `~>` in NL.
    Equiv(Box<Outer<A>>, Box<Outer<A>>),
    /// `<=>` (NL).
    SEquiv(Box<Outer<A>>, Box<Outer<A>>),
}

macro_rules! binary_ctors {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(self, other: Outer<A>) -> Outer<A> {
            Outer::$variant(Box::new(self), Box::new(other))
        })*
    };
}

macro_rules! unary_ctors {
    ($($name:ident => $variant:ident),* $(,)?) => {
        $(pub fn $name(self) -> Outer<A> {
            Outer::$variant(Box::new(self))
        })*
    };
}

impl<A> Outer<A> {
    binary_ctors! {
        imp => Imp, wimp => WImp, simp => SImp, and => And, or => Or, fus => Fus,
        oplus => Oplus, ominus => Ominus, equiv => Equiv, sequiv => SEquiv,
    }

    unary_ctors! { neg => Neg, sim => Sim, delta => Delta, delta_top => DeltaTop }

    pub fn atom(a: A) -> Outer<A> {
        Outer::Atom(a)
    }

    /// The children of a node, left to right.
    pub fn children(&self) -> Vec<&Outer<A>> {
        use Outer::*;
        match self {
            Atom(_) | Top | Bot => vec![],
            Neg(x) | Sim(x) | Delta(x) | DeltaTop(x) => vec![x],
            Imp(x, y)
            | WImp(x, y)
            | SImp(x, y)
            | And(x, y)
            | Or(x, y)
            | Fus(x, y)
            | Oplus(x, y)
            | Ominus(x, y)
            | Equiv(x, y)
            | SEquiv(x, y) => vec![x, y],
        }
    }

    pub fn connective(&self) -> Option<&'static str> {
        use Outer::*;
        Some(match self {
            Atom(_) | Top | Bot => return None,
            Neg(_) => "-",
            Sim(_) => "~",
            Delta(_) => "D",
            DeltaTop(_) => "Dt",
            Imp(..) => "->",
            WImp(..) => "~>",
            SImp(..) => "=>",
            And(..) => "&",
            Or(..) => "|",
            Fus(..) => "&.",
            Oplus(..) => "(+)",
            Ominus(..) => "(-)",
            Equiv(..) => "<->",
            SEquiv(..) => "<=>",
        })
    }

    /// Rejects connectives outside the language of `logic`.
    pub fn check(&self, logic: Logic) -> Result<(), LukError> {
        let bad = match (self, logic) {
            (Outer::Imp(..) | Outer::Delta(_) | Outer::DeltaTop(_), Logic::NL) => true,
            (Outer::WImp(..) | Outer::SImp(..) | Outer::SEquiv(..), Logic::L2) => true,
            _ => false,
        };
        if bad {
            return Err(LukError::Connective { connective: self.connective().expect("compound"), logic });
        }
        self.children().into_iter().try_for_each(|c| c.check(logic))
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Replaces every atom by a formula.
    pub fn substitute<B>(&self, f: &impl Fn(&A) -> Outer<B>) -> Outer<B> {
        use Outer::*;
        let b = |x: &Outer<A>| Box::new(x.substitute(f));
        match self {
            Atom(a) => f(a),
            Top => Top,
            Bot => Bot,
            Neg(x) => Neg(b(x)),
            Sim(x) => Sim(b(x)),
            Delta(x) => Delta(b(x)),
            DeltaTop(x) => DeltaTop(b(x)),
            Imp(x, y) => Imp(b(x), b(y)),
            WImp(x, y) => WImp(b(x), b(y)),
            SImp(x, y) => SImp(b(x), b(y)),
            And(x, y) => And(b(x), b(y)),
            Or(x, y) => Or(b(x), b(y)),
            Fus(x, y) => Fus(b(x), b(y)),
            Oplus(x, y) => Oplus(b(x), b(y)),
            Ominus(x, y) => Ominus(b(x), b(y)),
            Equiv(x, y) => Equiv(b(x), b(y)),
            SEquiv(x, y) => SEquiv(b(x), b(y)),
        }
    }

    pub fn map_atoms<B>(&self, f: &impl Fn(&A) -> B) -> Outer<B> {
        self.substitute(&|a| Outer::Atom(f(a)))
    }

    pub fn atoms(&self) -> BTreeSet<A>
    where
        A: Ord + Clone,
    {
        let mut out = BTreeSet::new();
        fn go<A: Ord + Clone>(x: &Outer<A>, out: &mut BTreeSet<A>) {
            if let Outer::Atom(a) = x {
                out.insert(a.clone());
            }
            for c in x.children() {
                go(c, out);
            }
        }
        go(self, &mut out);
        out
    }

    /// Exact value under `logic`, atoms valued by `val`.
    pub fn eval_with<E>(&self, logic: Logic, val: &impl Fn(&A) -> Result<TwoPoint, E>) -> Result<TwoPoint, E> {
        use Outer::*;
        let ev = |x: &Outer<A>| x.eval_with(logic, val);
        Ok(match self {
            Atom(a) => val(a)?,
            Top => TwoPoint::top(),
            Bot => TwoPoint::bottom(),
            Neg(x) => ev(x)?.swap(),
            Sim(x) => sim(logic, &ev(x)?),
            Delta(x) => {
                let a = ev(x)?;
                TwoPoint::raw(luk::delta(&a.first), luk::neg(&luk::delta(&luk::neg(&a.second))))
            }
            DeltaTop(x) => {
                if ev(x)? == TwoPoint::top() {
                    TwoPoint::top()
                } else {
                    TwoPoint::bottom()
                }
            }
            Imp(x, y) => imp(&ev(x)?, &ev(y)?),
            WImp(x, y) => wimp(&ev(x)?, &ev(y)?),
            SImp(x, y) => {
                let (a, b) = (ev(x)?, ev(y)?);
                wimp(&a, &b).meet(&wimp(&b.swap(), &a.swap()))
            }
            And(x, y) => ev(x)?.meet(&ev(y)?),
            Or(x, y) => ev(x)?.join(&ev(y)?),
            Fus(x, y) => {
                let (a, b) = (ev(x)?, ev(y)?);
                match logic {
                    Logic::L2 => TwoPoint::raw(luk::fus(&a.first, &b.first), luk::oplus(&a.second, &b.second)),
                    Logic::NL => TwoPoint::raw(luk::fus(&a.first, &b.first), luk::imp(&a.first, &luk::neg(&b.first))),
                }
            }
            Oplus(x, y) => {
                let (a, b) = (ev(x)?, ev(y)?);
                match logic {
                    Logic::L2 => TwoPoint::raw(luk::oplus(&a.first, &b.first), luk::fus(&a.second, &b.second)),
                    Logic::NL => {
                        TwoPoint::raw(luk::oplus(&a.first, &b.first), luk::fus(&luk::neg(&a.first), &b.second))
                    }
                }
            }
            Ominus(x, y) => {
                let (a, b) = (ev(x)?, ev(y)?);
                match logic {
                    Logic::L2 => TwoPoint::raw(luk::ominus(&a.first, &b.first), luk::imp(&b.second, &a.second)),
                    Logic::NL => TwoPoint::raw(luk::ominus(&a.first, &b.first), luk::imp(&a.first, &b.first)),
                }
            }
            Equiv(x, y) => {
                let (a, b) = (ev(x)?, ev(y)?);
                match logic {
                    Logic::L2 => imp(&a, &b).meet(&imp(&b, &a)),
                    Logic::NL => wimp(&a, &b).meet(&wimp(&b, &a)),
                }
            }
            SEquiv(x, y) => {
                let (a, b) = (ev(x)?, ev(y)?);
                let weak = |a: &TwoPoint, b: &TwoPoint| wimp(a, b).meet(&wimp(b, a));
                weak(&a, &b).meet(&weak(&a.swap(), &b.swap()))
            }
        })
    }

    /// Expands every derived connective through its defining abbreviation,
    /// leaving `L2` formulas over `{->, ~, D, -}` and `NL` formulas over
    /// `{~>, &, ~, -}`, plus the constants.
    pub fn desugar(&self, logic: Logic) -> Outer<A>
    where
        A: Clone,
    {
        use Outer::*;
        let d = |x: &Outer<A>| x.desugar(logic);
        match (self, logic) {
            (Atom(_) | Top | Bot, _) => self.clone(),
            (Neg(x), _) => d(x).neg(),
            (Sim(x), _) => d(x).sim(),
            (Delta(x), _) => d(x).delta(),
            (Imp(x, y), _) => d(x).imp(d(y)),
            (WImp(x, y), _) => d(x).wimp(d(y)),
            // Dt a := D a & ~-D a
            (DeltaTop(x), _) => {
                let da = d(x).delta();
                da.clone().and(da.neg().sim()).desugar(logic)
            }
            // a & b := (a -> b) &. a
            (And(x, y), Logic::L2) => d(x).imp(d(y)).fus(d(x)).desugar(logic),
            (And(x, y), Logic::NL) => d(x).and(d(y)),
            // a | b := (a -> b) -> b
            (Or(x, y), Logic::L2) => d(x).imp(d(y)).imp(d(y)),
            // a | b := -(-a & -b)
            (Or(x, y), Logic::NL) => d(x).neg().and(d(y).neg()).neg(),
            // a &. b := ~(a -> ~b)
            (Fus(x, y), Logic::L2) => d(x).imp(d(y).sim()).sim(),
            (Fus(x, y), Logic::NL) => d(x).wimp(d(y).sim()).sim(),
            // a (+) b := ~a -> b
            (Oplus(x, y), Logic::L2) => d(x).sim().imp(d(y)),
            (Oplus(x, y), Logic::NL) => d(x).sim().wimp(d(y)),
            // a (-) b := ~(a -> b)
            (Ominus(x, y), Logic::L2) => d(x).imp(d(y)).sim(),
            (Ominus(x, y), Logic::NL) => d(x).wimp(d(y)).sim(),
            (Equiv(x, y), Logic::L2) => d(x).imp(d(y)).and(d(y).imp(d(x))).desugar(logic),
            (Equiv(x, y), Logic::NL) => d(x).wimp(d(y)).and(d(y).wimp(d(x))),
            // a => b := (a ~> b) & (-b ~> -a)
            (SImp(x, y), _) => d(x).wimp(d(y)).and(d(y).neg().wimp(d(x).neg())),
            // a <=> b := (a <-> b) & (-a <-> -b)
            (SEquiv(x, y), _) => {
                let weak = |a: Outer<A>, b: Outer<A>| a.clone().wimp(b.clone()).and(b.wimp(a));
                weak(d(x), d(y)).and(weak(d(x).neg(), d(y).neg()))
            }
        }
    }

    /// Pushes `-` down to the atoms.
    ///
    /// In `L2` the result has the same value as the input. In `NL` only the
    /// first coordinate is preserved, since some of the rewrite rules are
    /// weak equivalences.
    pub fn nnf(&self, logic: Logic) -> Outer<A>
    where
        A: Clone,
    {
        use Outer::*;
        let p = |x: &Outer<A>| x.nnf(logic);
        match self {
            Neg(x) => x.nnf_neg(logic),
            Atom(_) | Top | Bot => self.clone(),
            Sim(x) => p(x).sim(),
            Delta(x) => p(x).delta(),
            DeltaTop(x) => p(x).delta_top(),
            Imp(x, y) => p(x).imp(p(y)),
            WImp(x, y) => p(x).wimp(p(y)),
            // The first coordinate of these reads the second coordinates of
            // the arguments, which weak rewrites do not preserve.
            SImp(..) | SEquiv(..) => self.desugar_top_level(logic).nnf(logic),
            And(x, y) => p(x).and(p(y)),
            Or(x, y) => p(x).or(p(y)),
            Fus(x, y) => p(x).fus(p(y)),
            Oplus(x, y) => p(x).oplus(p(y)),
            Ominus(x, y) => p(x).ominus(p(y)),
            Equiv(x, y) => p(x).equiv(p(y)),
        }
    }

    /// The negation normal form of `-self`.
    fn nnf_neg(&self, logic: Logic) -> Outer<A>
    where
        A: Clone,
    {
        use Outer::*;
        let p = |x: &Outer<A>| x.nnf(logic);
        let n = |x: &Outer<A>| x.nnf_neg(logic);
        match (self, logic) {
            (Atom(_), _) => self.clone().neg(),
            (Top, _) => Bot,
            (Bot, _) => Top,
            (Neg(x), _) => p(x),
            (And(x, y), _) => n(x).or(n(y)),
            (Or(x, y), _) => n(x).and(n(y)),
            // -~a <-> ~-a
            (Sim(x), Logic::L2) => n(x).sim(),
            // -~a <~> a
            (Sim(x), Logic::NL) => p(x),
            // -(a -> b) <-> ~(~-a -> ~-b)
            (Imp(x, y), _) => n(x).sim().imp(n(y).sim()).sim(),
            // -D a <-> ~D~-a
            (Delta(x), _) => n(x).sim().delta().sim(),
            // Dt-values are fixpoints of ~-, so -Dt a = ~Dt a.
            (DeltaTop(x), _) => p(x).delta_top().sim(),
            (Fus(x, y), Logic::L2) => n(x).oplus(n(y)),
            (Oplus(x, y), Logic::L2) => n(x).fus(n(y)),
            (Ominus(x, y), Logic::L2) => n(y).imp(n(x)),
            // -(a ~> b) <~> a &. -b
            (WImp(x, y), _) => p(x).fus(n(y)),
            // -(a &. b) <~> a ~> ~b
            (Fus(x, y), Logic::NL) => p(x).wimp(p(y).sim()),
            // -(~a ~> b) <~> ~a &. -b
            (Oplus(x, y), Logic::NL) => p(x).sim().fus(n(y)),
            // -~(a ~> b) <~> a ~> b
            (Ominus(x, y), Logic::NL) => p(x).wimp(p(y)),
            (Equiv(..) | SImp(..) | SEquiv(..), _) => self.desugar_top_level(logic).nnf_neg(logic),
        }
    }

    /// One-step expansion of a derived binary connective.
    fn desugar_top_level(&self, logic: Logic) -> Outer<A>
    where
        A: Clone,
    {
        use Outer::*;
        let c = |x: &Outer<A>| x.clone();
        match self {
            Equiv(x, y) if logic == Logic::NL => c(x).wimp(c(y)).and(c(y).wimp(c(x))),
            Equiv(x, y) => c(x).imp(c(y)).and(c(y).imp(c(x))),
            SImp(x, y) => c(x).wimp(c(y)).and(c(y).neg().wimp(c(x).neg())),
            SEquiv(x, y) => c(x).equiv(c(y)).and(c(x).neg().equiv(c(y).neg())),
            _ => self.clone(),
        }
    }

    /// `-` occurs only directly above atoms.
    pub fn is_nnf(&self) -> bool {
        match self {
            Outer::Neg(x) => matches!(**x, Outer::Atom(_)),
            _ => self.children().iter().all(|c| c.is_nnf()),
        }
    }
}

fn sim(logic: Logic, a: &TwoPoint) -> TwoPoint {
    match logic {
        Logic::L2 => TwoPoint::raw(luk::neg(&a.first), luk::neg(&a.second)),
        Logic::NL => TwoPoint::raw(luk::neg(&a.first), a.first.clone()),
    }
}

/// `(a1 -> b1, b2 (-) a2)`, so that `-(a -> b)` is `-b (-) -a`.
fn imp(a: &TwoPoint, b: &TwoPoint) -> TwoPoint {
    TwoPoint::raw(luk::imp(&a.first, &b.first), luk::ominus(&b.second, &a.second))
}

/// `(a1 -> b1, a1 &. b2)`, so that `-(a ~> b)` has first coordinate
/// `a1 &. b2`.
fn wimp(a: &TwoPoint, b: &TwoPoint) -> TwoPoint {
    TwoPoint::raw(luk::imp(&a.first, &b.first), luk::fus(&a.first, &b.second))
}
