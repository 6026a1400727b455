//! Square matrices over ℤ[q,q⁻¹] and exact inversion of unitriangular ones.

use std::fmt;

use crate::laurent::Poly;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix { rows: vec![vec![Poly::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = Poly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix is not square".into()));
        }
        Ok(PolyMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.rows[i][j] = p;
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        PolyMatrix { rows: (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect() }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyMatrix { rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Self {
        let n = self.size();
        let mut out = Self::zero(n);
        for i in 0..n {
            for (l, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[l][j];
                    if !b.is_zero() {
                        out.rows[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r[i].is_one() && r[i + 1..].iter().all(Poly::is_zero))
    }

    /// An ordering in which the matrix is lower unitriangular, if one exists:
    /// a topological sort of the graph j → i for nonzero off-diagonal a_ij.
    pub fn unitriangular_order(&self) -> Option<Vec<usize>> {
        let n = self.size();
        if (0..n).any(|i| !self.rows[i][i].is_one()) {
            return None;
        }
        let mut indegree: Vec<usize> =
            (0..n).map(|i| (0..n).filter(|&j| j != i && !self.rows[i][j].is_zero()).count()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(j) = ready.pop() {
            order.push(j);
            for i in (0..n).rev() {
                if i != j && !self.rows[i][j].is_zero() {
                    indegree[i] -= 1;
                    if indegree[i] == 0 {
                        ready.push(i);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Exact inverse of a matrix that is unitriangular up to a simultaneous
    /// permutation of rows and columns. Uses back-substitution only.
    pub fn unitriangular_inverse(&self) -> Result<Self> {
        let order = self
            .unitriangular_order()
            .ok_or_else(|| Error::Invalid("matrix is not unitriangular in any order".into()))?;
        let n = self.size();
        let mut inv = Self::zero(n);
        for (pc, &c) in order.iter().enumerate() {
            inv.rows[c][c] = Poly::one();
            for &i in &order[pc + 1..] {
                let mut acc = Poly::zero();
                for &j in &order[pc..] {
                    if j == i {
                        break;
                    }
                    let a = &self.rows[i][j];
                    let x = &inv.rows[j][c];
                    if !a.is_zero() && !x.is_zero() {
                        acc -= &(a * x);
                    }
                }
                inv.rows[i][c] = acc;
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}
