//! Exact dense simplex for `max c·x  s.t.  A x = b, x ≥ 0`.
//!
//! Two phases with Bland's rule; problem sizes here are tiny (a handful of
//! rows, a few dozen columns), so clarity wins over speed.

use num_traits::{Signed, Zero};

use crate::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Q, x: Vec<Q> },
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Returns false if unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.width).filter(|&j| allowed(j)).find(|&j| {
                let mut red = cost[j].clone();
                for (i, &bj) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() && !cost[bj].is_zero() {
                        red -= &cost[bj] * &self.rows[i][j];
                    }
                }
                red.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let ratio = self.rhs(i) / &self.rows[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }

    fn objective(&self, cost: &[Q]) -> Q {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .fold(Q::zero(), |a, b| a + b)
    }
}

pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if neg { -v.clone() } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { crate::exact::q(1) } else { Q::zero() }));
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), width };

    let phase1: Vec<Q> = (0..width).map(|j| if j >= n { crate::exact::q(-1) } else { Q::zero() }).collect();
    t.optimize(&phase1, &|_| true);
    if t.objective(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificial variables out of the basis
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    let mut cost: Vec<Q> = c.to_vec();
    cost.extend((0..m).map(|_| Q::zero()));
    if !t.optimize(&cost, &|j| j < n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal { value: t.objective(&cost), x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};

    fn row(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_problems() {
        // max x + y, x + 2y + s = 4, 3x + y + s2 = 6
        let a = vec![row(&[1, 2, 1, 0]), row(&[3, 1, 0, 1])];
        let b = row(&[4, 6]);
        let c = row(&[1, 1, 0, 0]);
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, qf(14, 5));
                assert_eq!(x[0], qf(8, 5));
            }
            o => panic!("{o:?}"),
        }
        // x = -1 infeasible with x ≥ 0
        assert_eq!(maximize(&[row(&[1])], &row(&[-1]), &row(&[0])), LpOutcome::Infeasible);
        // max x with x - y = 0 unbounded
        assert_eq!(maximize(&[row(&[1, -1])], &row(&[0]), &row(&[1, 0])), LpOutcome::Unbounded);
        // redundant equality rows
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        match maximize(&a, &row(&[1, 2]), &row(&[3, 1])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(3)),
            o => panic!("{o:?}"),
        }
    }
}
