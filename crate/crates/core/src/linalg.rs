//! Sparse exact Gaussian elimination.

use std::collections::BTreeMap;

use crate::scalar::Field;

type Row<F> = BTreeMap<usize, F>;

/// Linear system `A x = b` over an exact field, assembled row by row.
#[derive(Clone, Debug)]
pub struct LinearSystem<F> {
    ncols: usize,
    rows: Vec<(Row<F>, F)>,
}

impl<F: Field> LinearSystem<F> {
    pub fn new(ncols: usize) -> Self {
        LinearSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn push(&mut self, entries: impl IntoIterator<Item = (usize, F)>, rhs: F) {
        let mut row = Row::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column out of range");
            let e = row.entry(c).or_insert_with(F::zero);
            *e = e.clone() + v;
        }
        row.retain(|_, v| !v.is_zero());
        self.rows.push((row, rhs));
    }

    /// One solution with free variables set to zero, or `None` if inconsistent.
    pub fn solve(&self) -> Option<Vec<F>> {
        let ech = Echelon::build(self.rows.iter().cloned())?;
        let mut x = vec![F::zero(); self.ncols];
        for (&c, (row, rhs)) in ech.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (&j, a) in row.range(c + 1..) {
                v = v - a.clone() * x[j].clone();
            }
            x[c] = v;
        }
        Some(x)
    }
}

struct Echelon<F> {
    /// leading column → row normalized to leading coefficient 1
    pivots: BTreeMap<usize, (Row<F>, F)>,
}

impl<F: Field> Echelon<F> {
    /// `None` when some row reduces to `0 = c ≠ 0`.
    fn build(rows: impl Iterator<Item = (Row<F>, F)>) -> Option<Self> {
        let mut pivots: BTreeMap<usize, (Row<F>, F)> = BTreeMap::new();
        for (mut row, mut rhs) in rows {
            loop {
                let Some((&c, lead)) = row.iter().next() else {
                    if !rhs.is_zero() {
                        return None;
                    }
                    break;
                };
                let lead = lead.clone();
                match pivots.get(&c) {
                    Some((prow, prhs)) => {
                        for (&j, a) in prow {
                            let e = row.entry(j).or_insert_with(F::zero);
                            *e = e.clone() - lead.clone() * a.clone();
                            if e.is_zero() {
                                row.remove(&j);
                            }
                        }
                        rhs = rhs - lead * prhs.clone();
                    }
                    None => {
                        let inv = F::one() / lead;
                        for v in row.values_mut() {
                            *v = v.clone() * inv.clone();
                        }
                        pivots.insert(c, (row, rhs * inv));
                        break;
                    }
                }
            }
        }
        Some(Echelon { pivots })
    }
}

/// Rank of a dense matrix.
pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let rows = m.iter().map(|r| {
        let row: Row<F> = r
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        (row, F::zero())
    });
    Echelon::build(rows).map_or(0, |e| e.pivots.len())
}
