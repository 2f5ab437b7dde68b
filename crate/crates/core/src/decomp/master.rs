use num::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{
    cost_under, fractional_feasible, is_feasible, ConvexDecomposition, FractionalSolution,
    Instance, IntegralSolution, Term,
};
use crate::rational::{self, Rational};
use crate::ratlp::{LinearProgram, Simplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `value(e) ≥ target(e)` for every edge.
    Dominates,
    /// `value(e) = target(e)` for every edge.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageDecomposition {
    pub decomposition: ConvexDecomposition,
    /// `x̄_e / r`, one entry per edge of the instance.
    pub target: Vec<Rational>,
    pub relation: Relation,
}

impl CoverageDecomposition {
    /// Recomputes the values and checks the claimed relation exactly.
    pub fn holds(&self) -> bool {
        let values = self.decomposition.values(self.target.len());
        values
            .iter()
            .zip(&self.target)
            .all(|(v, t)| match self.relation {
                Relation::Dominates => v >= t,
                Relation::Exact => v == t,
            })
    }

    pub fn dominates(&self) -> bool {
        let values = self.decomposition.values(self.target.len());
        values.iter().zip(&self.target).all(|(v, t)| v >= t)
    }
}

/// Restricted master problem after the last pricing round.
#[derive(Debug, Clone, PartialEq)]
pub struct MasterState {
    pub columns: Vec<IntegralSolution>,
    pub lambdas: Vec<Rational>,
    /// Coverage scale reached: every covered edge gets at least `t · x̄_e / r`.
    pub t: Rational,
    /// Coverage duals, one per edge of the instance (zero off the support).
    pub duals: Vec<Rational>,
    /// Dual of the convexity row.
    pub sigma: Rational,
    /// Pricing rounds after the initial column.
    pub iterations: usize,
    /// `t` after every master solve.
    pub history: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnGeneration {
    pub cover: CoverageDecomposition,
    pub master: MasterState,
}

pub fn default_budget(support_size: usize) -> usize {
    50 * support_size + 50
}

fn check_column(
    instance: &Instance,
    support: &[bool],
    column: &IntegralSolution,
    y: &[Rational],
    bound: &Rational,
) -> Result<Rational> {
    if let Some(e) = column.iter().find(|&e| e >= support.len() || !support[e]) {
        return Err(Error::OracleGuaranteeViolated(format!(
            "column uses edge #{e} outside the support"
        )));
    }
    if !is_feasible(instance, column)? {
        return Err(Error::OracleGuaranteeViolated(
            "column is infeasible".into(),
        ));
    }
    let value = cost_under(y, column);
    if value < *bound {
        return Err(Error::OracleGuaranteeViolated(format!(
            "y·z = {value} is below y·x̄/r = {bound}"
        )));
    }
    Ok(value)
}

/// Builds a convex combination of oracle solutions covering `x̄ / r`.
///
/// The restricted master maximizes `t` subject to
/// `Σ_j λ_j χ^j_e ≥ t · x̄_e / r` on the support and `Σ_j λ_j ≤ 1`; its duals
/// price the next column. Whatever mass the master leaves unused goes to the
/// empty solution. `oracle(y)` must return a feasible set inside the support
/// with `y·z ≥ y·x̄ / r`; anything else is reported as a guarantee violation.
pub fn carr_vempala(
    instance: &Instance,
    x: &FractionalSolution,
    r: &Rational,
    mut oracle: impl FnMut(&[Rational]) -> Result<IntegralSolution>,
    budget: usize,
) -> Result<ColumnGeneration> {
    let m = instance.num_edges();
    if r < &Rational::one() {
        return Err(Error::InvalidArgument(format!("r = {r} is below 1")));
    }
    if x.len() != m || !fractional_feasible(instance, x) {
        return Err(Error::InvalidArgument(
            "point is not feasible for the instance".into(),
        ));
    }
    let target: Vec<Rational> = x.values().iter().map(|v| v / r).collect();
    let cover_rows = x.support();
    let mut in_support = vec![false; m];
    for &e in &cover_rows {
        in_support[e] = true;
    }
    if cover_rows.is_empty() {
        return Ok(ColumnGeneration {
            cover: CoverageDecomposition {
                decomposition: ConvexDecomposition::trivial(),
                target,
                relation: Relation::Exact,
            },
            master: MasterState {
                columns: Vec::new(),
                lambdas: Vec::new(),
                t: rational::one(),
                duals: vec![Rational::zero(); m],
                sigma: Rational::zero(),
                iterations: 0,
                history: Vec::new(),
            },
        });
    }

    let rows = cover_rows.len() + 1;
    let column_coefficients = |z: &IntegralSolution| -> Vec<Rational> {
        let mut col: Vec<Rational> = cover_rows
            .iter()
            .map(|&e| {
                if z.contains(e) {
                    -rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        col.push(rational::one());
        col
    };

    let mut y = vec![Rational::zero(); m];
    for &e in &cover_rows {
        y[e] = rational::one();
    }
    let first = oracle(&y)?;
    check_column(instance, &in_support, &first, &y, &(x.dot(&y) / r))?;

    let first_col = column_coefficients(&first);
    let mut lp_rows: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    for (i, &e) in cover_rows.iter().enumerate() {
        lp_rows.push(vec![target[e].clone(), first_col[i].clone()]);
    }
    lp_rows.push(vec![Rational::zero(), rational::one()]);
    let lp = LinearProgram {
        objective: vec![rational::one(), Rational::zero()],
        rows: lp_rows,
        rhs: {
            let mut rhs = vec![Rational::zero(); cover_rows.len()];
            rhs.push(rational::one());
            rhs
        },
        upper: vec![None, None],
    };
    let mut simplex = Simplex::new(&lp)?;
    let mut columns = vec![first];
    let mut history = Vec::new();
    let mut iterations = 0;

    loop {
        simplex.solve()?;
        let result = simplex.result();
        let t = result.x[0].clone();
        history.push(t.clone());
        y = vec![Rational::zero(); m];
        for (i, &e) in cover_rows.iter().enumerate() {
            y[e] = result.duals[i].clone();
        }
        let sigma = result.duals[rows - 1].clone();
        if t >= rational::one() {
            let lambdas: Vec<Rational> = result.x[1..].to_vec();
            let mut terms: Vec<Term> = columns
                .iter()
                .zip(&lambdas)
                .filter(|(_, l)| !l.is_zero())
                .map(|(c, l)| Term {
                    lambda: l.clone(),
                    solution: c.clone(),
                })
                .collect();
            let used = lambdas.iter().fold(Rational::zero(), |acc, l| acc + l);
            if used < rational::one() {
                terms.push(Term {
                    lambda: rational::one() - used,
                    solution: IntegralSolution::empty(),
                });
            }
            return Ok(ColumnGeneration {
                cover: CoverageDecomposition {
                    decomposition: ConvexDecomposition::from_terms(terms),
                    target,
                    relation: Relation::Dominates,
                },
                master: MasterState {
                    columns,
                    lambdas,
                    t,
                    duals: y,
                    sigma,
                    iterations,
                    history,
                },
            });
        }
        if iterations >= budget {
            return Err(Error::IterationLimit(budget));
        }
        iterations += 1;
        let z = oracle(&y)?;
        let value = check_column(instance, &in_support, &z, &y, &(x.dot(&y) / r))?;
        if value <= sigma {
            return Err(Error::OracleGuaranteeViolated(format!(
                "column has no positive reduced cost (y·z = {value}, σ = {sigma}) at t = {t}"
            )));
        }
        simplex.add_column(Rational::zero(), &column_coefficients(&z), None);
        columns.push(z);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::twocs::point_oracle3;

    fn t2() -> Instance {
        Instance::builder()
            .vertex("1", 3)
            .vertex("2", 3)
            .vertex("3", 3)
            .edge("a", &[("1", 2), ("2", 2)], int(1))
            .edge("b", &[("2", 2), ("3", 2)], int(1))
            .edge("c", &[("1", 2), ("3", 2)], int(1))
            .build()
            .unwrap()
    }

    #[test]
    fn single_edge_is_covered_by_one_column() {
        let inst = Instance::builder()
            .vertex("u", 1)
            .edge("e", &[("u", 1)], int(1))
            .build()
            .unwrap();
        let x = FractionalSolution::new(&inst, vec![int(1)]).unwrap();
        let cg = carr_vempala(&inst, &x, &int(3), |y| point_oracle3(&inst, &x, y), 10).unwrap();
        assert_eq!(cg.cover.decomposition.terms().len(), 1);
        assert_eq!(cg.cover.decomposition.value(0), int(1));
        assert!(cg.cover.holds());
        assert_eq!(cg.master.iterations, 0);
    }

    #[test]
    fn zero_point_is_trivially_exact() {
        let t = t2();
        let x = FractionalSolution::zeros(3);
        let cg = carr_vempala(&t, &x, &int(3), |_| unreachable!(), 10).unwrap();
        assert_eq!(cg.cover.decomposition, ConvexDecomposition::trivial());
        assert_eq!(cg.cover.relation, Relation::Exact);
    }

    #[test]
    fn triangle_is_dominated() {
        let t = t2();
        let x = FractionalSolution::new(&t, vec![ratio(3, 4); 3]).unwrap();
        let cg = carr_vempala(&t, &x, &int(3), |y| point_oracle3(&t, &x, y), 200).unwrap();
        assert!(cg.cover.holds());
        cg.cover.decomposition.validate(&t).unwrap();
        assert!(cg.master.t >= int(1));
        assert!(cg.master.history.windows(2).all(|w| w[0] <= w[1]));
        assert!(cg
            .cover
            .decomposition
            .terms()
            .iter()
            .all(|term| term.solution.len() <= 1));
        assert!(cg.cover.decomposition.len() <= cg.master.iterations + 2);
    }

    #[test]
    fn bad_oracles_are_caught() {
        let t = t2();
        let x = FractionalSolution::new(&t, vec![ratio(3, 4); 3]).unwrap();
        let err = carr_vempala(&t, &x, &int(3), |_| Ok(IntegralSolution::empty()), 10).unwrap_err();
        assert!(matches!(err, Error::OracleGuaranteeViolated(_)));
        let both: IntegralSolution = [0, 1].into_iter().collect();
        let err = carr_vempala(&t, &x, &int(3), |_| Ok(both.clone()), 10).unwrap_err();
        assert!(matches!(err, Error::OracleGuaranteeViolated(_)));
        // Always the same column: the second round has nothing new to price.
        let a: IntegralSolution = [0].into_iter().collect();
        let err = carr_vempala(&t, &x, &int(3), |_| Ok(a.clone()), 10).unwrap_err();
        assert!(matches!(err, Error::OracleGuaranteeViolated(_)));
    }

    #[test]
    fn budget_is_enforced() {
        let t = t2();
        let x = FractionalSolution::new(&t, vec![ratio(3, 4); 3]).unwrap();
        let err = carr_vempala(&t, &x, &int(3), |y| point_oracle3(&t, &x, y), 0).unwrap_err();
        assert_eq!(err, Error::IterationLimit(0));
    }
}
