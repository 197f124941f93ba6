use std::collections::BTreeMap;

use bpvoa_exact::Rational;
use num_traits::Zero;
use serde::Serialize;

use super::{Level, Realisation, TensorState};
use crate::combo::Combo;
use crate::error::{Error, Result};
use crate::lattice::{to_b_basis, BKey, LatticeState};
use crate::voa::PbwMonomial;
use crate::weight::HalfInt;

#[derive(Debug, Clone, Serialize)]
pub struct WeightCheck {
    pub level: String,
    pub weight: i64,
    /// Number of PBW monomials of this weight.
    pub monomials: usize,
    /// The same number counted from the generating function.
    pub expected_dimension: usize,
    pub rank: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityReport {
    pub cutoff: i64,
    pub checks: Vec<WeightCheck>,
}

impl InjectivityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Coefficients of `Π_g Π_{n ≥ h_g} (1 - q^n)^{-1}` up to `q^N`.
pub fn pbw_dimensions(weights: &[i64], cutoff: i64) -> Vec<usize> {
    let n = cutoff as usize;
    let mut dims = vec![0usize; n + 1];
    dims[0] = 1;
    for &h in weights {
        for part in h.max(1) as usize..=n {
            for w in part..=n {
                dims[w] += dims[w - part];
            }
        }
    }
    dims
}

/// `φ(x)` in the basis `B_Z ⊗ B_Π`.
pub fn to_product_basis(s: &TensorState) -> Combo<(PbwMonomial, BKey)> {
    let mut out = Combo::zero();
    for ((m, k), c) in s.iter() {
        for (b, d) in to_b_basis(&LatticeState::single(k.clone())).iter() {
            out.add_term((m.clone(), b.clone()), c * d);
        }
    }
    out
}

/// Exact rank by Gaussian elimination.
pub fn rank<K: Ord + Clone>(rows: &[Combo<K>]) -> Result<usize> {
    let mut cols: BTreeMap<K, usize> = BTreeMap::new();
    let mut mat: Vec<Vec<Rational>> = Vec::new();
    for r in rows {
        for k in r.keys() {
            let n = cols.len();
            cols.entry(k.clone()).or_insert(n);
        }
    }
    for r in rows {
        let mut row = vec![Rational::zero(); cols.len()];
        for (k, c) in r.iter() {
            row[cols[k]] = c
                .to_rational()
                .ok_or_else(|| Error::Invalid(format!("non-constant coefficient {c}")))?;
        }
        mat.push(row);
    }
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(p) = (rank..mat.len()).find(|&i| !mat[i][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, p);
        let pivot = mat[rank][col].clone();
        for i in rank + 1..mat.len() {
            if mat[i][col].is_zero() {
                continue;
            }
            let f = &mat[i][col] / &pivot;
            let (top, rest) = mat.split_at_mut(i);
            for (x, p) in rest[0][col..].iter_mut().zip(&top[rank][col..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Checks that `φ` is injective on every weight space up to `cutoff` at each
/// rational level, and that the PBW counts match the generating function.
pub fn verify_injectivity(cutoff: i64, levels: &[Rational]) -> Result<InjectivityReport> {
    let mut checks = Vec::new();
    for k in levels {
        let level = Level::at(k.clone());
        if level == Level::Critical {
            return Err(Error::CriticalLevel);
        }
        let r = Realisation::new(&level)?;
        let weights: Vec<i64> = r
            .source()
            .table()
            .generators()
            .iter()
            .map(|g| g.weight.to_int().expect("integral weights"))
            .collect();
        let dims = pbw_dimensions(&weights, cutoff);
        for w in 0..=cutoff {
            let basis = r.source().pbw_basis(HalfInt::from_int(w));
            let rows: Vec<_> = basis
                .iter()
                .map(|m| to_product_basis(&r.phi(&Combo::single(m.clone()))))
                .collect();
            let rk = rank(&rows)?;
            checks.push(WeightCheck {
                level: k.to_string(),
                weight: w,
                monomials: basis.len(),
                expected_dimension: dims[w as usize],
                rank: rk,
                pass: rk == basis.len() && basis.len() == dims[w as usize],
            });
        }
    }
    Ok(InjectivityReport { cutoff, checks })
}
