use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::snf::{smith_normal_form, Matrix};
use crate::error::{Error, Result};

/// Target multiplicities against a set of induced-character columns.
///
/// Rows are indexed by the irreducibles of `P`; `columns[c][j]` is the
/// multiplicity of the `j`-th irreducible in the `c`-th induced character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionInstance {
    pub columns: Vec<Vec<u64>>,
    pub target: Vec<u64>,
    /// Degrees of the row characters.
    pub row_degrees: Vec<u64>,
    /// `(subgroup class index, character index)` origins merged into each column.
    pub provenance: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveVerdict {
    pub status: SolveStatus,
    /// Coefficients with `A·a = t`, present iff feasible.
    pub witness: Option<Vec<BigInt>>,
    pub search_nodes: u64,
    /// For weak infeasibility, the row of `S·y = U·t` that fails.
    pub certificate: Option<String>,
}

impl SolveVerdict {
    pub fn is_feasible(&self) -> bool {
        self.status == SolveStatus::Feasible
    }
}

impl DecompositionInstance {
    pub fn new(columns: Vec<Vec<u64>>, target: Vec<u64>, row_degrees: Vec<u64>) -> Result<Self> {
        let n = columns.len();
        Self::with_provenance(columns, target, row_degrees, (0..n).map(|c| vec![(c, 0)]).collect())
    }

    pub fn with_provenance(
        columns: Vec<Vec<u64>>,
        target: Vec<u64>,
        row_degrees: Vec<u64>,
        provenance: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let rows = target.len();
        if row_degrees.len() != rows {
            return Err(Error::DimensionMismatch { expected: rows, got: row_degrees.len() });
        }
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch { expected: rows, got: c.len() });
        }
        if provenance.len() != columns.len() {
            return Err(Error::DimensionMismatch { expected: columns.len(), got: provenance.len() });
        }
        Ok(DecompositionInstance { columns, target, row_degrees, provenance })
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn column_degree(&self, c: usize) -> u64 {
        self.columns[c].iter().zip(&self.row_degrees).map(|(a, d)| a * d).sum()
    }

    fn matrix(&self) -> Matrix {
        (0..self.rows())
            .map(|j| self.columns.iter().map(|col| BigInt::from(col[j])).collect())
            .collect()
    }

    /// Byte-stable JSON dump with the verdicts of both solvers when given.
    pub fn to_json(&self, weak: Option<&SolveVerdict>, strong: Option<&SolveVerdict>) -> Value {
        let rows: Vec<Vec<u64>> = (0..self.rows())
            .map(|j| self.columns.iter().map(|c| c[j]).collect())
            .collect();
        let verdict = |v: &SolveVerdict| {
            json!({
                "feasible": v.is_feasible(),
                "witness": v.witness.as_ref().map(|w| w.iter().map(bigint_json).collect::<Vec<_>>()),
                "search_nodes": v.search_nodes,
                "certificate": v.certificate,
            })
        };
        json!({
            "rows": rows,
            "target": self.target,
            "row_degrees": self.row_degrees,
            "provenance": self.provenance,
            "weak": weak.map(verdict),
            "strong": strong.map(verdict),
        })
    }
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Decides `t ∈ Z-span(A)` through the Smith form: solve `S·y = U·t`, then `a = V·y`.
pub fn weak_solve(inst: &DecompositionInstance) -> Result<SolveVerdict> {
    let rows = inst.rows();
    let cols = inst.columns.len();
    let snf = smith_normal_form(&inst.matrix(), rows, cols)?;
    let b: Vec<BigInt> = snf
        .u
        .iter()
        .map(|row| row.iter().zip(&inst.target).map(|(x, &t)| x * BigInt::from(t)).sum())
        .collect();
    let rank = snf.rank();
    let mut y = vec![BigInt::zero(); cols];
    for (i, bi) in b.iter().enumerate() {
        if i < rank {
            let (q, r) = bi.div_rem(&snf.diagonal[i]);
            if !r.is_zero() {
                return Ok(infeasible(format!("invariant factor {} does not divide row {i}", snf.diagonal[i])));
            }
            y[i] = q;
        } else if !bi.is_zero() {
            return Ok(infeasible(format!("row {i} lies beyond the rank {rank}")));
        }
    }
    let a: Vec<BigInt> = snf
        .v
        .iter()
        .map(|row| row.iter().zip(&y).map(|(x, yy)| x * yy).sum())
        .collect();
    if !verify_witness(inst, &a, false)? {
        return Err(Error::Inconsistent("weak witness fails verification".into()));
    }
    Ok(SolveVerdict {
        status: SolveStatus::Feasible,
        witness: Some(a),
        search_nodes: 0,
        certificate: None,
    })
}

fn infeasible(certificate: String) -> SolveVerdict {
    SolveVerdict {
        status: SolveStatus::Infeasible,
        witness: None,
        search_nodes: 0,
        certificate: Some(certificate),
    }
}

struct Search<'a> {
    cols: Vec<&'a [u64]>,
    /// `suffix_cap[i][j]`: most that columns `i..` can contribute to row `j`.
    suffix_cap: Vec<Vec<u64>>,
    /// `suffix_gcd[i][j]`: gcd of row `j` over columns `i..` (0 when all vanish).
    suffix_gcd: Vec<Vec<u64>>,
    /// gcd of column degrees over columns `i..`.
    suffix_deg_gcd: Vec<u64>,
    row_degrees: &'a [u64],
    nodes: u64,
    budget: u64,
    coef: Vec<u64>,
}

impl Search<'_> {
    fn bound(&self, i: usize, residual: &[u64]) -> u64 {
        self.cols[i]
            .iter()
            .zip(residual)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0)
    }

    fn prunable(&self, i: usize, residual: &[u64]) -> bool {
        let deg: u64 = residual.iter().zip(self.row_degrees).map(|(r, d)| r * d).sum();
        let g = self.suffix_deg_gcd[i];
        if (g == 0 && deg != 0) || (g != 0 && !deg.is_multiple_of(g)) {
            return true;
        }
        residual.iter().enumerate().any(|(j, &r)| {
            let gj = self.suffix_gcd[i][j];
            r > self.suffix_cap[i][j] || (gj == 0 && r != 0) || (gj != 0 && r % gj != 0)
        })
    }

    fn dfs(&mut self, i: usize, residual: &mut Vec<u64>) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::NodeBudgetExceeded(self.budget));
        }
        if residual.iter().all(|&r| r == 0) {
            self.coef[i..].iter_mut().for_each(|c| *c = 0);
            return Ok(true);
        }
        if i == self.cols.len() || self.prunable(i, residual) {
            return Ok(false);
        }
        let col = self.cols[i];
        let hi = self.bound(i, residual);
        for a in (0..=hi).rev() {
            for (r, &x) in residual.iter_mut().zip(col) {
                *r -= a * x;
            }
            self.coef[i] = a;
            let found = self.dfs(i + 1, residual)?;
            for (r, &x) in residual.iter_mut().zip(col) {
                *r += a * x;
            }
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Decides `t ∈ N-span(A)` by exhaustive depth-first search within proven bounds.
pub fn strong_solve(inst: &DecompositionInstance, node_budget: u64) -> Result<SolveVerdict> {
    let rows = inst.rows();
    // columns touching a row with zero target are forced to zero
    let mut order: Vec<usize> = (0..inst.columns.len())
        .filter(|&c| {
            let col = &inst.columns[c];
            col.iter().any(|&a| a > 0) && col.iter().zip(&inst.target).all(|(&a, &t)| a == 0 || t > 0)
        })
        .collect();
    order.sort_by(|&a, &b| inst.column_degree(b).cmp(&inst.column_degree(a)).then(a.cmp(&b)));
    let cols: Vec<&[u64]> = order.iter().map(|&c| inst.columns[c].as_slice()).collect();
    let n = cols.len();
    let static_bound = |col: &[u64]| {
        col.iter()
            .zip(&inst.target)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &t)| t / a)
            .min()
            .unwrap_or(0)
    };
    let mut suffix_cap = vec![vec![0u64; rows]; n + 1];
    let mut suffix_gcd = vec![vec![0u64; rows]; n + 1];
    let mut suffix_deg_gcd = vec![0u64; n + 1];
    for i in (0..n).rev() {
        let ub = static_bound(cols[i]);
        for j in 0..rows {
            suffix_cap[i][j] = suffix_cap[i + 1][j] + cols[i][j] * ub;
            suffix_gcd[i][j] = suffix_gcd[i + 1][j].gcd(&cols[i][j]);
        }
        suffix_deg_gcd[i] = suffix_deg_gcd[i + 1].gcd(&inst.column_degree(order[i]));
    }
    let mut search = Search {
        cols,
        suffix_cap,
        suffix_gcd,
        suffix_deg_gcd,
        row_degrees: &inst.row_degrees,
        nodes: 0,
        budget: node_budget,
        coef: vec![0; n],
    };
    let mut residual = inst.target.clone();
    let found = search.dfs(0, &mut residual)?;
    let nodes = search.nodes;
    if !found {
        return Ok(SolveVerdict {
            status: SolveStatus::Infeasible,
            witness: None,
            search_nodes: nodes,
            certificate: None,
        });
    }
    let mut a = vec![BigInt::zero(); inst.columns.len()];
    for (k, &c) in order.iter().enumerate() {
        a[c] = BigInt::from(search.coef[k]);
    }
    if !verify_witness(inst, &a, true)? {
        return Err(Error::Inconsistent("strong witness fails verification".into()));
    }
    Ok(SolveVerdict {
        status: SolveStatus::Feasible,
        witness: Some(a),
        search_nodes: nodes,
        certificate: None,
    })
}

/// True iff `A·a = t` (and `a ≥ 0` when `nonnegative`).
pub fn verify_witness(inst: &DecompositionInstance, a: &[BigInt], nonnegative: bool) -> Result<bool> {
    if a.len() != inst.columns.len() {
        return Err(Error::DimensionMismatch { expected: inst.columns.len(), got: a.len() });
    }
    if nonnegative && a.iter().any(|x| x.is_negative()) {
        return Ok(false);
    }
    Ok((0..inst.rows()).all(|j| {
        let s: BigInt = inst.columns.iter().zip(a).map(|(col, x)| x * BigInt::from(col[j])).sum();
        s == BigInt::from(inst.target[j])
    }))
}
