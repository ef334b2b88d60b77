//! Integer affine functions and one-piece McNaughton synthesis.

use luk_two::Outer;
use num_traits::{One, Zero};
use ratlp::Q;

/// `sum a_i * x_i + c` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub a: Vec<i64>,
    pub c: i64,
}

impl Affine {
    pub fn new(a: Vec<i64>, c: i64) -> Self {
        Affine { a, c }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        Affine { a: vec![0; n], c }
    }

    /// The coordinate function `x_i` in `n` dimensions.
    pub fn var(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Affine { a, c: 0 }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn is_constant(&self) -> bool {
        self.a.iter().all(|&v| v == 0)
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.a.len(), "point dimension");
        let mut s = Q::from_integer(self.c.into());
        for (&a, xi) in self.a.iter().zip(x) {
            if a != 0 {
                s += Q::from_integer(a.into()) * xi;
            }
        }
        s
    }

    pub fn add(&self, o: &Affine) -> Affine {
        Affine { a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(), c: self.c + o.c }
    }

    pub fn neg(&self) -> Affine {
        Affine { a: self.a.iter().map(|v| -v).collect(), c: -self.c }
    }

    pub fn shift(&self, d: i64) -> Affine {
        Affine { a: self.a.clone(), c: self.c + d }
    }

    /// `1 - self`.
    pub fn complement(&self) -> Affine {
        self.neg().shift(1)
    }

    /// `self(x')` where each `x'_i` is the affine function `sub[i]` of `x`.
    pub fn compose(&self, sub: &[Affine]) -> Affine {
        assert_eq!(sub.len(), self.a.len(), "substitution arity");
        let n = sub.first().map_or(0, Affine::dim);
        let mut out = Affine::constant(n, self.c);
        for (&a, s) in self.a.iter().zip(sub) {
            if a != 0 {
                for (o, v) in out.a.iter_mut().zip(&s.a) {
                    *o += a * v;
                }
                out.c += a * s.c;
            }
        }
        out
    }
}

/// `f# = min(1, max(0, f))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClampedAffine(pub Affine);

impl ClampedAffine {
    pub fn new(a: Vec<i64>, c: i64) -> Self {
        ClampedAffine(Affine::new(a, c))
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        clamp01(self.0.eval(x))
    }
}

pub fn clamp01(v: Q) -> Q {
    v.max(Q::zero()).min(Q::one())
}

fn oplus<A>(x: Outer<A>, y: Outer<A>) -> Outer<A> {
    match (x, y) {
        (Outer::Top, _) | (_, Outer::Top) => Outer::Top,
        (Outer::Bot, y) => y,
        (x, Outer::Bot) => x,
        (x, y) => x.oplus(y),
    }
}

fn fus<A>(x: Outer<A>, y: Outer<A>) -> Outer<A> {
    match (x, y) {
        (Outer::Bot, _) | (_, Outer::Bot) => Outer::Bot,
        (Outer::Top, y) => y,
        (x, Outer::Top) => x,
        (x, y) => x.fus(y),
    }
}

/// A formula `β` over `atoms` (one per coefficient) whose first coordinate
/// computes `f#` from the first coordinates of the atoms.
///
/// The coefficients are expanded into unit terms `±x`, added one at a time
/// with
///
/// ```text
/// clamp(g + x) = clamp(g) ⊕ (clamp(g + 1) & x)
/// clamp(g - x) = clamp(g) & (clamp(g - 1) ⊕ ~x)
/// ```
///
/// valid for every real `g` and `x ∈ [0,1]`. Partial sums that are constant
/// on the cube become `⊤` or `⊥`.
pub fn mcnaughton_clamped<A: Clone>(f: &ClampedAffine, atoms: &[A]) -> Outer<A> {
    assert_eq!(f.0.a.len(), atoms.len(), "one atom per coefficient");
    let mut units: Vec<(usize, bool)> = Vec::new();
    for pass in [true, false] {
        for (i, &a) in f.0.a.iter().enumerate() {
            if (a > 0) == pass && a != 0 {
                units.extend(std::iter::repeat_n((i, pass), a.unsigned_abs() as usize));
            }
        }
    }
    // pos[k] and neg[k] count the unit terms of each sign among the first k.
    let mut pos = vec![0i64];
    let mut neg = vec![0i64];
    for &(_, up) in &units {
        pos.push(pos.last().unwrap() + i64::from(up));
        neg.push(neg.last().unwrap() + i64::from(!up));
    }
    let mut memo = std::collections::HashMap::new();
    build(units.len(), f.0.c, &units, &pos, &neg, atoms, &mut memo)
}

fn build<A: Clone>(
    k: usize,
    d: i64,
    units: &[(usize, bool)],
    pos: &[i64],
    neg: &[i64],
    atoms: &[A],
    memo: &mut std::collections::HashMap<(usize, i64), Outer<A>>,
) -> Outer<A> {
    if d - neg[k] >= 1 {
        return Outer::Top;
    }
    if d + pos[k] <= 0 {
        return Outer::Bot;
    }
    if let Some(f) = memo.get(&(k, d)) {
        return f.clone();
    }
    let (i, up) = units[k - 1];
    let x = Outer::Atom(atoms[i].clone());
    let here = build(k - 1, d, units, pos, neg, atoms, memo);
    let out = if up {
        let next = build(k - 1, d + 1, units, pos, neg, atoms, memo);
        oplus(here, fus(next, x))
    } else {
        let next = build(k - 1, d - 1, units, pos, neg, atoms, memo);
        fus(here, oplus(next, x.sim()))
    };
    memo.insert((k, d), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(mcnaughton_clamped(&ClampedAffine::new(vec![1], 0), &["p"]), Outer::Atom("p"));
        let f = mcnaughton_clamped(&ClampedAffine::new(vec![1, 1], -1), &["p", "q"]);
        assert_eq!(f, Outer::Atom("p").fus(Outer::Atom("q")));
        assert_eq!(mcnaughton_clamped(&ClampedAffine::new(vec![1], 1), &["p"]), Outer::Top);
        assert_eq!(mcnaughton_clamped::<&str>(&ClampedAffine::new(vec![], 0), &[]), Outer::Bot);
        assert_eq!(mcnaughton_clamped(&ClampedAffine::new(vec![-1], 1), &["p"]), Outer::Atom("p").sim());
    }

    #[test]
    fn compose_substitutes() {
        // 2x - y + 1 at x = 1 - z, y = z  gives  3 - 3z
        let f = Affine::new(vec![2, -1], 1);
        let g = f.compose(&[Affine::new(vec![-1], 1), Affine::new(vec![1], 0)]);
        assert_eq!(g, Affine::new(vec![-3], 3));
    }
}
