//! Fourier-Motzkin projection for exact cone membership.
//!
//! Projects `{(x, l) : x = G l, l >= 0}` onto `x`-space by eliminating
//! the combination coefficients `l` one at a time. The recorded
//! elimination trail lets a feasible query be lifted back to an explicit
//! nonnegative combination, so membership verdicts come with
//! certificates. Independent of the simplex route; the two are
//! cross-checked in tests.
//!
//! Row growth is controlled by Kohler's criterion: every essential
//! inequality after `k` eliminations is a nonnegative combination of at
//! most `k + 1` of the original rows, so derived rows combining more
//! originals are redundant and safe to drop.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::ConeError;
use crate::rational::Rational;

const ROW_BUDGET: usize = 20_000;

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    /// bitmask over the original inequality rows this one combines;
    /// `None` disables history pruning (more than 128 original rows)
    history: Option<u128>,
}

/// One projection of a generator cone, reusable across queries.
///
/// Variable layout: `k` combination coefficients followed by the `dim`
/// ambient coordinates. All rows are homogeneous inequalities
/// `<coeffs, (l, x)> >= 0`.
#[derive(Debug, Clone)]
pub(crate) struct FmProjection {
    k: usize,
    /// for each eliminated coefficient, in order: (variable index, the
    /// inequality system it was eliminated from)
    trail: Vec<(usize, Vec<Vec<Rational>>)>,
    /// substitutions from the equality rows: (variable index, expression
    /// over the full variable layout with that variable's slot zeroed)
    substitutions: Vec<(usize, Vec<Rational>)>,
    /// final rows with support only on the ambient coordinates
    projected: Vec<Vec<Rational>>,
}

impl FmProjection {
    /// Builds the projection for the cone spanned by `generators`.
    pub(crate) fn build(generators: &[Vec<Rational>], dim: usize) -> Result<Self, ConeError> {
        let k = generators.len();
        let width = k + dim;

        // equalities x_i - sum_j G[j][i] l_j = 0
        let mut equalities: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                let mut row = vec![Rational::zero(); width];
                for (j, g) in generators.iter().enumerate() {
                    row[j] = -g[i].clone();
                }
                row[k + i] = Rational::from_integer(1.into());
                row
            })
            .collect();

        // Gaussian substitution: solve each equality for some l_j when
        // possible; leftover equalities constrain x alone (span conditions)
        let mut substitutions: Vec<(usize, Vec<Rational>)> = Vec::new();
        let mut span_rows: Vec<Vec<Rational>> = Vec::new();
        for row_idx in 0..equalities.len() {
            let row = equalities[row_idx].clone();
            let Some(pivot) = (0..k).find(|&j| !row[j].is_zero()) else {
                span_rows.push(row);
                continue;
            };
            // l_pivot = expr over the remaining variables
            let inv = -row[pivot].clone().recip();
            let mut expr: Vec<Rational> = row.iter().map(|c| c * &inv).collect();
            expr[pivot] = Rational::zero();
            // substitute into the remaining equalities
            for other in equalities.iter_mut().skip(row_idx + 1) {
                substitute_var(other, pivot, &expr);
            }
            for (_, prev) in substitutions.iter_mut() {
                substitute_var(prev, pivot, &expr);
            }
            substitutions.push((pivot, expr));
        }

        // inequality system: l_j >= 0 with basic coefficients replaced by
        // their expressions, plus the span conditions as equality pairs
        let mut raw_rows: Vec<Vec<Rational>> = Vec::new();
        for j in 0..k {
            let mut row = vec![Rational::zero(); width];
            row[j] = Rational::from_integer(1.into());
            for (pivot, expr) in &substitutions {
                substitute_var(&mut row, *pivot, expr);
            }
            raw_rows.push(row);
        }
        for row in &span_rows {
            raw_rows.push(row.clone());
            raw_rows.push(row.iter().map(|c| -c).collect());
        }
        let track_history = raw_rows.len() <= 128;
        let mut rows: Vec<Row> = raw_rows
            .into_iter()
            .enumerate()
            .map(|(i, coeffs)| Row {
                coeffs,
                history: track_history.then(|| 1u128 << i),
            })
            .collect();
        normalize_rows(&mut rows);

        // eliminate every coefficient variable that still appears
        let mut trail: Vec<(usize, Vec<Vec<Rational>>)> = Vec::new();
        let mut eliminated = 0usize;
        loop {
            let mut candidates: Vec<(usize, usize)> = Vec::new();
            for v in 0..k {
                let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                if pos + neg > 0 {
                    candidates.push((pos * neg, v));
                }
            }
            let Some(&(_, var)) = candidates.iter().min() else {
                break;
            };
            trail.push((var, rows.iter().map(|r| r.coeffs.clone()).collect()));
            eliminated += 1;
            rows = eliminate(&rows, var, eliminated)?;
        }

        let projected = rows
            .into_iter()
            .map(|r| r.coeffs[k..].to_vec())
            .collect::<Vec<_>>();

        Ok(FmProjection {
            k,
            trail,
            substitutions,
            projected,
        })
    }

    pub(crate) fn contains(&self, point: &[Rational]) -> bool {
        self.projected
            .iter()
            .all(|r| !eval_x(r, point).is_negative())
    }

    /// Lifts a member point back to nonnegative combination coefficients
    /// by walking the elimination trail in reverse.
    pub(crate) fn certificate(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(point) {
            return None;
        }
        let mut assignment: Vec<Option<Rational>> = vec![None; self.k];
        for (var, system) in self.trail.iter().rev() {
            let mut lower: Option<Rational> = None;
            let mut upper: Option<Rational> = None;
            for row in system {
                let c = &row[*var];
                if c.is_zero() {
                    continue;
                }
                // <row, z> >= 0 with everything but `var` known
                let rest = eval_known(row, *var, &assignment, point, self.k);
                let bound = -rest / c;
                if c.is_positive() {
                    if lower.as_ref().is_none_or(|l| bound > *l) {
                        lower = Some(bound);
                    }
                } else if upper.as_ref().is_none_or(|u| bound < *u) {
                    upper = Some(bound);
                }
            }
            let value = match (lower, upper) {
                (Some(l), Some(u)) => {
                    debug_assert!(l <= u, "inconsistent bounds on a feasible lift");
                    l
                }
                (Some(l), None) => l,
                (None, Some(u)) => u.min(Rational::zero()),
                (None, None) => Rational::zero(),
            };
            assignment[*var] = Some(value);
        }
        for (pivot, expr) in self.substitutions.iter().rev() {
            let value = eval_full(expr, &assignment, point, self.k);
            assignment[*pivot] = Some(value);
        }
        let lambda: Vec<Rational> = assignment
            .into_iter()
            .map(|a| a.unwrap_or_else(Rational::zero))
            .collect();
        debug_assert!(lambda.iter().all(|c| !c.is_negative()));
        Some(lambda)
    }
}

/// Replaces variable `pivot` in `row` by the linear expression `expr`.
fn substitute_var(row: &mut [Rational], pivot: usize, expr: &[Rational]) {
    let c = std::mem::replace(&mut row[pivot], Rational::zero());
    if c.is_zero() {
        return;
    }
    for (slot, e) in row.iter_mut().zip(expr) {
        let upd = &*slot + &(&c * e);
        *slot = upd;
    }
}

fn eliminate(rows: &[Row], var: usize, eliminated: usize) -> Result<Vec<Row>, ConeError> {
    let mut out: Vec<Row> = Vec::new();
    let mut pos: Vec<&Row> = Vec::new();
    let mut neg: Vec<&Row> = Vec::new();
    for r in rows {
        if r.coeffs[var].is_positive() {
            pos.push(r);
        } else if r.coeffs[var].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    let history_cap = (eliminated + 1) as u32;
    for p in &pos {
        for n in &neg {
            let history = match (p.history, n.history) {
                (Some(hp), Some(hn)) => {
                    let h = hp | hn;
                    // Kohler: essential rows combine at most k+1 originals
                    if h.count_ones() > history_cap {
                        continue;
                    }
                    Some(h)
                }
                _ => None,
            };
            // (-n_var) * p + p_var * n has a zero coefficient on var
            let a = -n.coeffs[var].clone();
            let b = p.coeffs[var].clone();
            let coeffs: Vec<Rational> = p
                .coeffs
                .iter()
                .zip(n.coeffs.iter())
                .map(|(pc, nc)| &(&a * pc) + &(&b * nc))
                .collect();
            out.push(Row { coeffs, history });
            if out.len() > ROW_BUDGET {
                return Err(ConeError::ProjectionTooLarge);
            }
        }
    }
    normalize_rows(&mut out);
    Ok(out)
}

/// Primitive-normalizes rows, drops zero rows, and merges duplicates
/// (keeping the sparsest history so later pruning stays effective).
fn normalize_rows(rows: &mut Vec<Row>) {
    let mut seen: BTreeMap<Vec<num_bigint::BigInt>, Row> = BTreeMap::new();
    for row in rows.drain(..) {
        let prim = crate::rational::primitive_integer_ray(&row.coeffs);
        if prim.iter().all(|c| c.is_zero()) {
            continue;
        }
        let coeffs: Vec<Rational> = prim
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let candidate = Row {
            coeffs,
            history: row.history,
        };
        seen.entry(prim)
            .and_modify(|existing| {
                let newer = candidate.history;
                if let (Some(h_new), Some(h_old)) = (newer, existing.history) {
                    if h_new.count_ones() < h_old.count_ones() {
                        existing.history = newer;
                    }
                }
            })
            .or_insert(candidate);
    }
    rows.extend(seen.into_values());
}

fn eval_x(row: &[Rational], point: &[Rational]) -> Rational {
    row.iter().zip(point).map(|(c, x)| c * x).sum()
}

fn eval_known(
    row: &[Rational],
    skip: usize,
    assignment: &[Option<Rational>],
    point: &[Rational],
    k: usize,
) -> Rational {
    let mut acc = Rational::zero();
    for (j, c) in row.iter().enumerate() {
        if j == skip || c.is_zero() {
            continue;
        }
        let value = if j < k {
            assignment[j]
                .clone()
                .expect("elimination order guarantees later variables are assigned")
        } else {
            point[j - k].clone()
        };
        acc = &acc + &(c * &value);
    }
    acc
}

fn eval_full(
    expr: &[Rational],
    assignment: &[Option<Rational>],
    point: &[Rational],
    k: usize,
) -> Rational {
    let mut acc = Rational::zero();
    for (j, c) in expr.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let value = if j < k {
            assignment[j].clone().unwrap_or_else(Rational::zero)
        } else {
            point[j - k].clone()
        };
        acc = &acc + &(c * &value);
    }
    acc
}

/// A separating normal must exist for points the projection rejects.
pub(crate) fn violated_row(proj: &FmProjection, point: &[Rational]) -> Option<Vec<Rational>> {
    proj.projected
        .iter()
        .find(|r| eval_x(r, point).is_negative())
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn gens(data: &[&[i64]]) -> Vec<Vec<Rational>> {
        data.iter()
            .map(|r| r.iter().map(|&c| int(c)).collect())
            .collect()
    }

    fn check_combination(
        generators: &[Vec<Rational>],
        lambda: &[Rational],
        point: &[Rational],
    ) {
        let dim = point.len();
        for i in 0..dim {
            let acc: Rational = generators
                .iter()
                .zip(lambda)
                .map(|(g, l)| &g[i] * l)
                .sum();
            assert_eq!(acc, point[i]);
        }
        assert!(lambda.iter().all(|l| !l.is_negative()));
    }

    #[test]
    fn orthant_membership() {
        let g = gens(&[&[1, 0], &[0, 1]]);
        let proj = FmProjection::build(&g, 2).unwrap();
        assert!(proj.contains(&[int(2), int(3)]));
        assert!(!proj.contains(&[int(1), int(-1)]));
        let lam = proj.certificate(&[int(2), int(3)]).unwrap();
        check_combination(&g, &lam, &[int(2), int(3)]);
    }

    #[test]
    fn redundant_generators_certificate() {
        let g = gens(&[&[1, 0], &[0, 1], &[1, 1]]);
        let proj = FmProjection::build(&g, 2).unwrap();
        let target = [rat(1, 2), rat(3, 2)];
        assert!(proj.contains(&target));
        let lam = proj.certificate(&target).unwrap();
        check_combination(&g, &lam, &target);
    }

    #[test]
    fn lower_dimensional_cone_span_condition() {
        let g = gens(&[&[1, 1]]);
        let proj = FmProjection::build(&g, 2).unwrap();
        assert!(proj.contains(&[int(2), int(2)]));
        assert!(!proj.contains(&[int(2), int(3)]));
        assert!(!proj.contains(&[int(-1), int(-1)]));
        let lam = proj.certificate(&[int(2), int(2)]).unwrap();
        check_combination(&g, &lam, &[int(2), int(2)]);
    }

    #[test]
    fn non_pointed_cone() {
        let g = gens(&[&[1, -1], &[-1, 1], &[0, 1]]);
        let proj = FmProjection::build(&g, 2).unwrap();
        // (1,-1) and (-1,1) span a line, plus (0,1): the halfplane
        // x + y >= 0
        assert!(proj.contains(&[int(5), int(-5)]));
        assert!(proj.contains(&[int(0), int(0)]));
        let target = [int(-2), int(3)];
        assert!(proj.contains(&target));
        let lam = proj.certificate(&target).unwrap();
        check_combination(&g, &lam, &target);
        assert!(!proj.contains(&[int(1), int(-2)]));
    }

    #[test]
    fn violated_row_reported() {
        let g = gens(&[&[1, 0], &[0, 1]]);
        let proj = FmProjection::build(&g, 2).unwrap();
        let row = violated_row(&proj, &[int(1), int(-1)]).unwrap();
        assert!(eval_x(&row, &[int(1), int(-1)]).is_negative());
    }

    #[test]
    fn many_generators_stay_within_budget() {
        // all 14 subset ideal classes for four branches
        let classes: Vec<Vec<Rational>> = crate::cone::cm_cone(4)
            .unwrap()
            .generators()
            .to_vec();
        let proj = FmProjection::build(&classes, 4).unwrap();
        let sheaf = [rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)];
        let lam = proj.certificate(&sheaf).unwrap();
        check_combination(&classes, &lam, &sheaf);
        assert!(!proj.contains(&[int(1), int(1), int(1), int(-2)]));
    }
}
