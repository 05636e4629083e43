//! Exact rational linear programming: dense two-phase simplex with Bland's
//! lowest-index rule for both the entering and the leaving variable.

use crate::error::{Error, Result};
use crate::numerics::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Scalar>,
    pub relation: Relation,
    pub rhs: Scalar,
}

/// Bounds on one variable; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Scalar>,
    pub upper: Option<Scalar>,
}

impl Bound {
    pub fn nonnegative() -> Bound {
        Bound {
            lower: Some(Scalar::zero()),
            upper: None,
        }
    }

    pub fn free() -> Bound {
        Bound { lower: None, upper: None }
    }

    pub fn between(lower: Scalar, upper: Scalar) -> Bound {
        Bound {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

/// `minimize objective . v` subject to the constraints and variable bounds.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub objective: Vec<Scalar>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Scalar, point: Vec<Scalar> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal_point(&self) -> Option<&[Scalar]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

impl LpProblem {
    /// `num_vars` nonnegative variables, zero objective, no constraints.
    pub fn new(num_vars: usize) -> LpProblem {
        LpProblem {
            objective: vec![Scalar::zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![Bound::nonnegative(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Scalar>, relation: Relation, rhs: Scalar) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Adds `sum coeff * v[index] (rel) rhs` from sparse terms.
    pub fn add_sparse(&mut self, terms: &[(usize, Scalar)], relation: Relation, rhs: Scalar) {
        let mut coeffs = vec![Scalar::zero(); self.num_vars()];
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        self.add_constraint(coeffs, relation, rhs);
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::MalformedLp(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        for (k, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::MalformedLp(format!(
                    "constraint {k} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }
}

/// How an original variable is expressed through nonnegative columns.
enum VarMap {
    /// v = offset + col
    Shift { col: usize, offset: Scalar },
    /// v = offset - col
    Mirror { col: usize, offset: Scalar },
    /// v = pos - neg
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// m rows of `ncols + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Scalar {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize, reduced: &mut [Scalar], value: &mut Scalar) {
        let pivot = self.rows[r][c].clone();
        if pivot != Scalar::one() {
            let inv = pivot.recip();
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        let factor = reduced[c].clone();
        if !factor.is_zero() {
            for (v, p) in reduced.iter_mut().zip(&pivot_row[..self.ncols]) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
            // objective value tracks c_B . x_B
            *value += &(&factor * &pivot_row[self.ncols]);
        }
        self.basis[r] = c;
    }

    /// Reduced costs and objective value for `cost` under the current basis.
    fn price(&self, cost: &[Scalar]) -> (Vec<Scalar>, Scalar) {
        let mut reduced = cost.to_vec();
        let mut value = Scalar::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in reduced.iter_mut().enumerate() {
                let a = &self.rows[r][j];
                if !a.is_zero() {
                    *v -= &(cb * a);
                }
            }
            value += &(cb * self.rhs(r));
        }
        (reduced, value)
    }

    /// Runs primal simplex iterations with Bland's rule. Returns false when
    /// the objective is unbounded below.
    fn optimize(&mut self, cost: &[Scalar], allowed: &[bool]) -> (bool, Scalar) {
        let (mut reduced, mut value) = self.price(cost);
        loop {
            let entering = (0..self.ncols).find(|&j| allowed[j] && reduced[j].is_negative());
            let Some(c) = entering else {
                return (true, value);
            };
            let mut leaving: Option<(usize, Scalar)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let Some((r, _)) = leaving else {
                return (false, value);
            };
            self.pivot(r, c, &mut reduced, &mut value);
        }
    }
}

/// Solves the problem exactly.
pub fn lp_solve(problem: &LpProblem) -> Result<LpOutcome> {
    problem.validate()?;
    let n = problem.num_vars();

    // Map each variable onto nonnegative structural columns.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0usize;
    let mut extra_rows: Vec<(usize, Scalar)> = Vec::new(); // col <= bound
    for bound in &problem.bounds {
        match (&bound.lower, &bound.upper) {
            (Some(l), upper) => {
                if let Some(u) = upper {
                    if u < l {
                        return Ok(LpOutcome::Infeasible);
                    }
                    extra_rows.push((ncols, u - l));
                }
                maps.push(VarMap::Shift { col: ncols, offset: l.clone() });
                ncols += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Mirror { col: ncols, offset: u.clone() });
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split { pos: ncols, neg: ncols + 1 });
                ncols += 2;
            }
        }
    }
    let structural = ncols;

    // Rewrite constraints over the structural columns.
    let mut rows: Vec<(Vec<Scalar>, Relation, Scalar)> = Vec::new();
    for c in &problem.constraints {
        let mut coeffs = vec![Scalar::zero(); structural];
        let mut rhs = c.rhs.clone();
        for (coef, map) in c.coeffs.iter().zip(&maps) {
            if coef.is_zero() {
                continue;
            }
            match map {
                VarMap::Shift { col, offset } => {
                    coeffs[*col] += coef;
                    rhs -= &(coef * offset);
                }
                VarMap::Mirror { col, offset } => {
                    coeffs[*col] -= coef;
                    rhs -= &(coef * offset);
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] += coef;
                    coeffs[*neg] -= coef;
                }
            }
        }
        rows.push((coeffs, c.relation, rhs));
    }
    for (col, ub) in extra_rows {
        let mut coeffs = vec![Scalar::zero(); structural];
        coeffs[col] = Scalar::one();
        rows.push((coeffs, Relation::Le, ub));
    }

    // Slack columns, then artificial columns where no slack can start basic.
    let m = rows.len();
    let num_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let mut slack_of_row = vec![None; m];
    let mut next = structural;
    for (r, row) in rows.iter().enumerate() {
        if row.1 != Relation::Eq {
            slack_of_row[r] = Some(next);
            next += 1;
        }
    }
    debug_assert_eq!(next, structural + num_slack);
    let mut art_of_row = vec![None; m];
    let mut basis = vec![0usize; m];
    let mut needs_art = Vec::new();
    for (r, (_, rel, rhs)) in rows.iter().enumerate() {
        // after normalizing rhs >= 0, a `<=` slack has coefficient +1
        let flipped = rhs.is_negative();
        let slack_positive = match rel {
            Relation::Le => !flipped,
            Relation::Ge => flipped,
            Relation::Eq => false,
        };
        if slack_positive {
            basis[r] = slack_of_row[r].expect("inequality has a slack");
        } else {
            needs_art.push(r);
        }
    }
    for &r in &needs_art {
        art_of_row[r] = Some(next);
        basis[r] = next;
        next += 1;
    }
    let total = next;

    let mut tab_rows = Vec::with_capacity(m);
    for (r, (coeffs, rel, rhs)) in rows.into_iter().enumerate() {
        let mut row = vec![Scalar::zero(); total + 1];
        for (j, v) in coeffs.into_iter().enumerate() {
            row[j] = v;
        }
        if let Some(s) = slack_of_row[r] {
            row[s] = match rel {
                Relation::Le => Scalar::one(),
                Relation::Ge => -Scalar::one(),
                Relation::Eq => unreachable!(),
            };
        }
        row[total] = rhs;
        if row[total].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        if let Some(a) = art_of_row[r] {
            row[a] = Scalar::one();
        }
        tab_rows.push(row);
    }
    let mut tab = Tableau {
        rows: tab_rows,
        basis,
        ncols: total,
    };
    let is_art = |j: usize| j >= structural + num_slack;

    // Phase 1.
    if !needs_art.is_empty() {
        let cost: Vec<Scalar> = (0..total)
            .map(|j| if is_art(j) { Scalar::one() } else { Scalar::zero() })
            .collect();
        let allowed = vec![true; total];
        let (_, infeasibility) = tab.optimize(&cost, &allowed);
        if infeasibility.is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut r = 0;
        while r < tab.rows.len() {
            if is_art(tab.basis[r]) {
                match (0..total).find(|&j| !is_art(j) && !tab.rows[r][j].is_zero()) {
                    Some(c) => {
                        let mut scratch = vec![Scalar::zero(); total];
                        let mut v = Scalar::zero();
                        tab.pivot(r, c, &mut scratch, &mut v);
                    }
                    None => {
                        // redundant row
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    // Phase 2.
    let mut cost = vec![Scalar::zero(); total];
    for (coef, map) in problem.objective.iter().zip(&maps) {
        match map {
            VarMap::Shift { col, .. } => cost[*col] += coef,
            VarMap::Mirror { col, .. } => cost[*col] -= coef,
            VarMap::Split { pos, neg } => {
                cost[*pos] += coef;
                cost[*neg] -= coef;
            }
        }
    }
    let allowed: Vec<bool> = (0..total).map(|j| !is_art(j)).collect();
    let (bounded, _) = tab.optimize(&cost, &allowed);
    if !bounded {
        return Ok(LpOutcome::Unbounded);
    }

    let mut col_values = vec![Scalar::zero(); total];
    for (r, &b) in tab.basis.iter().enumerate() {
        col_values[b] = tab.rhs(r).clone();
    }
    let point: Vec<Scalar> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shift { col, offset } => offset + &col_values[*col],
            VarMap::Mirror { col, offset } => offset - &col_values[*col],
            VarMap::Split { pos, neg } => &col_values[*pos] - &col_values[*neg],
        })
        .collect();
    let value = problem
        .objective
        .iter()
        .zip(&point)
        .map(|(c, v)| c * v)
        .sum();
    debug_assert!(satisfies(problem, &point));
    Ok(LpOutcome::Optimal { value, point })
}

/// Exact check that `point` meets every constraint and bound.
pub fn satisfies(problem: &LpProblem, point: &[Scalar]) -> bool {
    if point.len() != problem.num_vars() {
        return false;
    }
    let bounds_ok = problem.bounds.iter().zip(point).all(|(b, v)| {
        b.lower.as_ref().is_none_or(|l| v >= l) && b.upper.as_ref().is_none_or(|u| v <= u)
    });
    bounds_ok
        && problem.constraints.iter().all(|c| {
            let lhs: Scalar = c.coeffs.iter().zip(point).map(|(a, v)| a * v).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
}
