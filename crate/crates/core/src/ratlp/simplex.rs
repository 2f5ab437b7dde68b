//! Dense bounded-variable primal simplex over exact rationals.
//!
//! Columns are ordered structural, then one slack per row, then one
//! artificial per row whose right-hand side is negative. Entering and leaving
//! choices follow Bland's rule on that order, which rules out cycling.
//! Columns appended by [`Simplex::add_column`] go at the end of the order.

use num::{Signed, Zero};

use super::{LinearProgram, LpResult};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

const PIVOT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Basic(usize),
    AtLower,
    AtUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

#[derive(Debug, Clone)]
pub struct Simplex {
    rows: usize,
    /// `rows × columns`, equal to `B⁻¹ · A` of the row-signed system.
    tableau: Vec<Vec<Rational>>,
    values: Vec<Rational>,
    upper: Vec<Option<Rational>>,
    cost: Vec<Rational>,
    reduced: Vec<Rational>,
    status: Vec<Status>,
    basis: Vec<usize>,
    kind: Vec<Kind>,
    /// +1 or -1 per row: rows with negative right-hand side are negated.
    row_sign: Vec<bool>,
    /// Column that held the identity for each row in the starting basis.
    unit_column: Vec<usize>,
    structural: Vec<usize>,
    first_slack: usize,
    pivots: usize,
    solved: bool,
}

impl Simplex {
    pub fn new(lp: &LinearProgram) -> Result<Self> {
        lp.check_dimensions()?;
        let m = lp.rhs.len();
        let n = lp.objective.len();
        let negated = lp.rhs.iter().filter(|b| b.is_negative()).count();
        let width = n + m + negated;

        let mut tableau = vec![vec![Rational::zero(); width]; m];
        let mut kind = Vec::with_capacity(width);
        let mut upper = Vec::with_capacity(width);
        let mut cost = Vec::with_capacity(width);
        for j in 0..n {
            kind.push(Kind::Structural(j));
            upper.push(lp.upper[j].clone());
            cost.push(lp.objective[j].clone());
        }
        for i in 0..m {
            kind.push(Kind::Slack(i));
            upper.push(None);
            cost.push(Rational::zero());
        }
        let mut status = vec![Status::AtLower; width];
        let mut values = vec![Rational::zero(); width];
        let mut basis = vec![0; m];
        let mut row_sign = vec![true; m];
        let mut unit_column = vec![0; m];
        let mut next_art = n + m;
        for i in 0..m {
            let positive = !lp.rhs[i].is_negative();
            row_sign[i] = positive;
            let sign = if positive {
                rational::one()
            } else {
                rational::int(-1)
            };
            for (cell, a) in tableau[i].iter_mut().zip(&lp.rows[i]) {
                *cell = a * &sign;
            }
            tableau[i][n + i] = sign.clone();
            if positive {
                basis[i] = n + i;
                status[n + i] = Status::Basic(i);
                values[n + i] = lp.rhs[i].clone();
                unit_column[i] = n + i;
            } else {
                let a = next_art;
                next_art += 1;
                kind.push(Kind::Artificial(i));
                upper.push(None);
                cost.push(Rational::zero());
                tableau[i][a] = rational::one();
                basis[i] = a;
                status[a] = Status::Basic(i);
                values[a] = -&lp.rhs[i];
                unit_column[i] = a;
            }
        }
        Ok(Self {
            rows: m,
            tableau,
            values,
            upper,
            cost,
            reduced: vec![Rational::zero(); width],
            status,
            basis,
            kind,
            row_sign,
            unit_column,
            structural: (0..n).collect(),
            first_slack: n,
            pivots: 0,
            solved: false,
        })
    }

    fn width(&self) -> usize {
        self.kind.len()
    }

    fn recompute_reduced(&mut self, cost: &[Rational]) {
        for j in 0..self.width() {
            let mut d = cost[j].clone();
            for i in 0..self.rows {
                let cb = &cost[self.basis[i]];
                if !cb.is_zero() && !self.tableau[i][j].is_zero() {
                    d -= cb * &self.tableau[i][j];
                }
            }
            self.reduced[j] = d;
        }
    }

    /// Runs phase one if needed, then phase two, from the current basis.
    pub fn solve(&mut self) -> Result<()> {
        if !self.solved {
            let has_artificial = self.kind.iter().any(|k| matches!(k, Kind::Artificial(_)));
            if has_artificial {
                let phase_one: Vec<Rational> = self
                    .kind
                    .iter()
                    .map(|k| match k {
                        Kind::Artificial(_) => rational::int(-1),
                        _ => Rational::zero(),
                    })
                    .collect();
                self.recompute_reduced(&phase_one);
                self.iterate()?;
                let infeasibility = self
                    .kind
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| matches!(k, Kind::Artificial(_)))
                    .fold(Rational::zero(), |acc, (j, _)| acc + &self.values[j]);
                if infeasibility.is_positive() {
                    return Err(Error::Infeasible);
                }
                for j in 0..self.width() {
                    if matches!(self.kind[j], Kind::Artificial(_)) {
                        self.upper[j] = Some(Rational::zero());
                    }
                }
            }
            self.solved = true;
        }
        let cost = self.cost.clone();
        self.recompute_reduced(&cost);
        self.iterate()
    }

    fn can_move(&self, j: usize) -> Option<bool> {
        let d = &self.reduced[j];
        match self.status[j] {
            Status::Basic(_) => None,
            Status::AtLower => {
                let blocked = matches!(&self.upper[j], Some(u) if u.is_zero());
                (d.is_positive() && !blocked).then_some(true)
            }
            Status::AtUpper => d.is_negative().then_some(false),
        }
    }

    fn iterate(&mut self) -> Result<()> {
        loop {
            let Some((entering, increase)) =
                (0..self.width()).find_map(|j| self.can_move(j).map(|inc| (j, inc)))
            else {
                return Ok(());
            };
            self.pivots += 1;
            if self.pivots > PIVOT_LIMIT {
                return Err(Error::InternalInvariantViolation(
                    "simplex pivot limit exceeded".into(),
                ));
            }

            // Leaving candidates: (step, variable index, row or bound flip, leaves at upper).
            let mut best: Option<(Rational, usize, Option<usize>, bool)> = None;
            let mut consider = |step: Rational, var: usize, row: Option<usize>, to_upper: bool| {
                let better = match &best {
                    None => true,
                    Some((s, v, _, _)) => step < *s || (step == *s && var < *v),
                };
                if better {
                    best = Some((step, var, row, to_upper));
                }
            };
            if let Some(u) = &self.upper[entering] {
                consider(u.clone(), entering, None, increase);
            }
            for i in 0..self.rows {
                let coef = &self.tableau[i][entering];
                if coef.is_zero() {
                    continue;
                }
                let rate = if increase { coef.clone() } else { -coef };
                let var = self.basis[i];
                if rate.is_positive() {
                    consider(&self.values[var] / &rate, var, Some(i), false);
                } else if let Some(u) = &self.upper[var] {
                    consider((u - &self.values[var]) / -rate, var, Some(i), true);
                }
            }
            let Some((step, _, row, to_upper)) = best else {
                return Err(Error::Unbounded);
            };

            let signed_step = if increase {
                step.clone()
            } else {
                -step.clone()
            };
            if !step.is_zero() {
                self.values[entering] += &signed_step;
                for i in 0..self.rows {
                    let coef = &self.tableau[i][entering];
                    if !coef.is_zero() {
                        let var = self.basis[i];
                        self.values[var] -= coef * &signed_step;
                    }
                }
            }
            match row {
                None => {
                    self.status[entering] = if to_upper {
                        Status::AtUpper
                    } else {
                        Status::AtLower
                    };
                }
                Some(r) => {
                    let leaving = self.basis[r];
                    self.values[leaving] = if to_upper {
                        self.upper[leaving].clone().expect("finite upper bound")
                    } else {
                        Rational::zero()
                    };
                    self.status[leaving] = if to_upper {
                        Status::AtUpper
                    } else {
                        Status::AtLower
                    };
                    self.pivot(r, entering);
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, entering: usize) {
        let width = self.width();
        let p = self.tableau[r][entering].clone();
        for j in 0..width {
            if !self.tableau[r][j].is_zero() {
                self.tableau[r][j] /= &p;
            }
        }
        let pivot_row = self.tableau[r].clone();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.tableau[i][entering].clone();
            if f.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.tableau[i][j] -= &f * pv;
                }
            }
        }
        let f = self.reduced[entering].clone();
        if !f.is_zero() {
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.reduced[j] -= &f * pv;
                }
            }
        }
        self.basis[r] = entering;
        self.status[entering] = Status::Basic(r);
    }

    /// Appends a structural column (original row coefficients) at its lower bound.
    /// The current basis stays primal feasible; call [`Simplex::solve`] again.
    pub fn add_column(
        &mut self,
        objective: Rational,
        coefficients: &[Rational],
        upper: Option<Rational>,
    ) -> usize {
        assert_eq!(coefficients.len(), self.rows, "column length");
        let signed: Vec<Rational> = coefficients
            .iter()
            .zip(&self.row_sign)
            .map(|(a, &s)| if s { a.clone() } else { -a })
            .collect();
        let mut column = vec![Rational::zero(); self.rows];
        for (k, a) in signed.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let unit = self.unit_column[k];
            for (i, out) in column.iter_mut().enumerate() {
                let b = &self.tableau[i][unit];
                if !b.is_zero() {
                    *out += b * a;
                }
            }
        }
        let mut reduced = objective.clone();
        for (i, c) in column.iter().enumerate() {
            let cb = &self.cost[self.basis[i]];
            if !cb.is_zero() && !c.is_zero() {
                reduced -= cb * c;
            }
        }
        for (row, c) in self.tableau.iter_mut().zip(column) {
            row.push(c);
        }
        let index = self.structural.len();
        self.kind.push(Kind::Structural(index));
        self.structural.push(self.kind.len() - 1);
        self.upper.push(upper);
        self.cost.push(objective);
        self.reduced.push(reduced);
        self.status.push(Status::AtLower);
        self.values.push(Rational::zero());
        index
    }

    pub fn pivots(&self) -> usize {
        self.pivots
    }

    pub fn num_structural(&self) -> usize {
        self.structural.len()
    }

    /// Reads off the primal point, duals and active set at the current basis.
    pub fn result(&self) -> LpResult {
        let x: Vec<Rational> = self
            .structural
            .iter()
            .map(|&j| self.values[j].clone())
            .collect();
        let objective = self.structural.iter().fold(Rational::zero(), |acc, &j| {
            acc + &self.cost[j] * &self.values[j]
        });
        let n = self.structural.len();
        let duals: Vec<Rational> = (0..self.rows)
            .map(|i| {
                let slack = self.slack_column(i);
                -self.reduced[slack].clone()
            })
            .collect();
        let bound_duals: Vec<Rational> = self
            .structural
            .iter()
            .map(|&j| {
                let d = &self.reduced[j];
                if d.is_positive() {
                    d.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let active_rows = (0..self.rows)
            .filter(|&i| self.values[self.slack_column(i)].is_zero())
            .collect();
        let at_lower = (0..n)
            .filter(|&s| self.values[self.structural[s]].is_zero())
            .collect();
        let at_upper = (0..n)
            .filter(|&s| {
                let j = self.structural[s];
                matches!(&self.upper[j], Some(u) if *u == self.values[j])
            })
            .collect();
        let basis = self
            .basis
            .iter()
            .map(|&j| match self.kind[j] {
                Kind::Structural(s) => super::BasisMember::Structural(s),
                Kind::Slack(i) => super::BasisMember::Slack(i),
                Kind::Artificial(i) => super::BasisMember::Artificial(i),
            })
            .collect();
        LpResult {
            x,
            objective,
            duals,
            bound_duals,
            active_rows,
            at_lower,
            at_upper,
            basis,
        }
    }

    fn slack_column(&self, row: usize) -> usize {
        self.first_slack + row
    }
}
