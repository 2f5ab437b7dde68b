use num::{Signed, Zero};

use super::{LinearProgram, LpResult};
use crate::rational::Rational;

/// Independent re-check of an LP answer against the program it claims to solve.
#[derive(Debug, Clone, PartialEq)]
pub struct LpCertificate {
    pub primal_feasible: bool,
    pub dual_feasible: bool,
    /// `(b·y + u·w) − c·x`; zero for an optimal pair.
    pub duality_gap: Rational,
    pub complementary_slackness: bool,
    /// Rank of the constraints active at `x` (rows, lower and upper bounds).
    pub active_rank: usize,
    pub num_vars: usize,
}

impl LpCertificate {
    pub fn is_optimal(&self) -> bool {
        self.primal_feasible
            && self.dual_feasible
            && self.duality_gap.is_zero()
            && self.complementary_slackness
    }

    pub fn is_basic(&self) -> bool {
        self.active_rank == self.num_vars
    }

    pub fn is_certified(&self) -> bool {
        self.is_optimal() && self.is_basic()
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (p, q)| acc + p * q)
}

pub fn certify(lp: &LinearProgram, result: &LpResult) -> LpCertificate {
    let n = lp.num_vars();
    let x = &result.x;
    let y = &result.duals;
    let w = &result.bound_duals;
    let shapes_ok = x.len() == n && y.len() == lp.num_rows() && w.len() == n;
    if !shapes_ok {
        return LpCertificate {
            primal_feasible: false,
            dual_feasible: false,
            duality_gap: Rational::zero(),
            complementary_slackness: false,
            active_rank: 0,
            num_vars: n,
        };
    }

    let row_values: Vec<Rational> = lp.rows.iter().map(|r| dot(r, x)).collect();
    let primal_feasible = row_values.iter().zip(&lp.rhs).all(|(ax, b)| ax <= b)
        && x.iter()
            .zip(&lp.upper)
            .all(|(xj, u)| !xj.is_negative() && u.as_ref().is_none_or(|u| xj <= u));

    let column_values: Vec<Rational> = (0..n)
        .map(|j| {
            lp.rows
                .iter()
                .zip(y)
                .fold(Rational::zero(), |acc, (r, yi)| acc + &r[j] * yi)
                + &w[j]
        })
        .collect();
    let dual_feasible = y.iter().all(|v| !v.is_negative())
        && w.iter().all(|v| !v.is_negative())
        && w.iter()
            .zip(&lp.upper)
            .all(|(wj, u)| u.is_some() || wj.is_zero())
        && column_values.iter().zip(&lp.objective).all(|(a, c)| a >= c);

    let dual_objective = dot(&lp.rhs, y)
        + w.iter()
            .zip(&lp.upper)
            .filter_map(|(wj, u)| u.as_ref().map(|u| wj * u))
            .fold(Rational::zero(), |acc, t| acc + t);
    let duality_gap = dual_objective - dot(&lp.objective, x);

    let complementary_slackness = y
        .iter()
        .zip(row_values.iter().zip(&lp.rhs))
        .all(|(yi, (ax, b))| yi.is_zero() || ax == b)
        && (0..n).all(|j| {
            let upper_ok = w[j].is_zero() || lp.upper[j].as_ref() == Some(&x[j]);
            let reduced_ok = column_values[j] == lp.objective[j] || x[j].is_zero();
            upper_ok && reduced_ok
        });

    let mut active: Vec<Vec<Rational>> = lp
        .rows
        .iter()
        .zip(row_values.iter().zip(&lp.rhs))
        .filter(|(_, (ax, b))| ax == b)
        .map(|(r, _)| r.clone())
        .collect();
    for j in 0..n {
        let at_bound = x[j].is_zero() || lp.upper[j].as_ref() == Some(&x[j]);
        if at_bound {
            let mut unit = vec![Rational::zero(); n];
            unit[j] = Rational::from_integer(1.into());
            active.push(unit);
        }
    }

    LpCertificate {
        primal_feasible,
        dual_feasible,
        duality_gap,
        complementary_slackness,
        active_rank: rank(active),
        num_vars: n,
    }
}

/// Rank over the rationals by fraction-exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (a, b) in row.iter_mut().zip(&pivot).skip(col) {
                *a -= &f * b;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
