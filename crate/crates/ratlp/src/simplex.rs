//! Dense two-phase tableau simplex over exact rationals, Bland's pivot rule.

use num_traits::{One, Signed, Zero};

use crate::rational::fmt_q;
use crate::{LinearSystem, Rel, Q};

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    ncols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn objective_value(&self, obj: &[Q]) -> Q {
        self.basis.iter().zip(&self.rhs).map(|(&b, v)| &obj[b] * v).sum()
    }

    fn maximize(&mut self, obj: &[Q], allowed: &[bool], mut trace: Option<&mut Vec<String>>) -> Step {
        loop {
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut r = obj[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !obj[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &obj[b] * &self.rows[i][j];
                    }
                }
                if r.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return Step::Optimal };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return Step::Unbounded };
            self.pivot(r, c);
            if let Some(t) = trace.as_deref_mut() {
                t.push(self.dump());
            }
        }
    }

    fn dump(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(fmt_q).collect();
            s.push_str(&format!("x{:<3}| {} | {}\n", self.basis[i], cells.join(" "), fmt_q(&self.rhs[i])));
        }
        s
    }
}

/// Returns a point satisfying every constraint of `sys`, or `None`.
pub(crate) fn feasible_point(sys: &LinearSystem, mut trace: Option<&mut Vec<String>>) -> Option<Vec<Q>> {
    let nvars = sys.vars.len();
    // Structural columns: one per nonnegative variable, two per free variable.
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(nvars);
    let mut ncols = 0;
    for &nn in &sys.nonneg {
        if nn {
            col_of.push((ncols, None));
            ncols += 1;
        } else {
            col_of.push((ncols, Some(ncols + 1)));
            ncols += 2;
        }
    }
    let strict = sys.constraints.iter().any(|c| c.rel.is_strict());
    let gap = if strict {
        ncols += 1;
        Some(ncols - 1)
    } else {
        None
    };

    // Rows in structural coordinates, rhs made nonnegative.
    let mut raw: Vec<(Vec<Q>, Rel, Q)> = Vec::new();
    for c in &sys.constraints {
        let mut row = vec![Q::zero(); ncols];
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (p, n) = col_of[j];
            row[p] += a;
            if let Some(n) = n {
                row[n] -= a;
            }
        }
        let rel = match c.rel {
            Rel::Gt => {
                row[gap.unwrap()] = -Q::one();
                Rel::Ge
            }
            Rel::Lt => {
                row[gap.unwrap()] = Q::one();
                Rel::Le
            }
            r => r,
        };
        raw.push((row, rel, c.bound.clone()));
    }
    if let Some(g) = gap {
        let mut row = vec![Q::zero(); ncols];
        row[g] = Q::one();
        raw.push((row, Rel::Le, Q::one()));
    }
    for (row, rel, b) in raw.iter_mut() {
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
            *rel = rel.mirrored();
        }
    }

    let n_slack = raw.iter().filter(|(_, r, _)| *r != Rel::Eq).count();
    let n_art = raw.iter().filter(|(_, r, _)| *r != Rel::Le).count();
    let total = ncols + n_slack + n_art;
    let art_start = ncols + n_slack;
    let mut t = Tableau { rows: Vec::new(), rhs: Vec::new(), basis: Vec::new(), ncols: total };
    let (mut next_slack, mut next_art) = (ncols, art_start);
    for (row, rel, b) in raw {
        let mut full = row;
        full.resize(total, Q::zero());
        let basic = match rel {
            Rel::Le => {
                full[next_slack] = Q::one();
                next_slack += 1;
                next_slack - 1
            }
            Rel::Ge => {
                full[next_slack] = -Q::one();
                next_slack += 1;
                full[next_art] = Q::one();
                next_art += 1;
                next_art - 1
            }
            _ => {
                full[next_art] = Q::one();
                next_art += 1;
                next_art - 1
            }
        };
        t.rows.push(full);
        t.rhs.push(b);
        t.basis.push(basic);
    }
    if let Some(tr) = trace.as_deref_mut() {
        tr.push(t.dump());
    }

    // Phase I: drive the artificial columns to zero.
    if n_art > 0 {
        let mut obj = vec![Q::zero(); total];
        for v in obj.iter_mut().skip(art_start) {
            *v = -Q::one();
        }
        let all = vec![true; total];
        t.maximize(&obj, &all, trace.as_deref_mut());
        if t.objective_value(&obj).is_negative() {
            return None;
        }
        let mut i = 0;
        while i < t.rows.len() {
            if t.basis[i] >= art_start {
                match (0..art_start).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => {
                        t.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        t.rows.remove(i);
                        t.rhs.remove(i);
                        t.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    // Phase II: maximize the gap when strict relations are present.
    if let Some(g) = gap {
        let mut obj = vec![Q::zero(); total];
        obj[g] = Q::one();
        let allowed: Vec<bool> = (0..total).map(|j| j < art_start).collect();
        if let Step::Unbounded = t.maximize(&obj, &allowed, trace) {
            unreachable!("the gap variable is bounded by 1");
        }
        if !t.objective_value(&obj).is_positive() {
            return None;
        }
    }

    let mut col_val = vec![Q::zero(); total];
    for (i, &b) in t.basis.iter().enumerate() {
        col_val[b] = t.rhs[i].clone();
    }
    Some(
        col_of
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &col_val[p] - &col_val[n],
                None => col_val[p].clone(),
            })
            .collect(),
    )
}
