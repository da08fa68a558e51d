//! Row-style Hermite normal form and lattice membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// Canonical triangular basis of the lattice spanned by the input rows.
///
/// `basis` is upper triangular with positive pivots and entries above each
/// pivot reduced into `[0, pivot)`. The row space over the integers equals
/// the input lattice. `transform` records the unimodular row operations:
/// `transform * input = [basis; 0]`.
#[derive(Clone, Debug)]
pub struct HermiteBasis {
    pub basis: IntMatrix,
    pub transform: IntMatrix,
}

impl HermiteBasis {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Absolute determinant of the basis, i.e. the lattice index in `Z^n`.
    pub fn index(&self) -> BigInt {
        self.basis.det().abs()
    }

    /// Membership test: does `v` lie in the lattice? Solves `x * basis = v`
    /// by forward substitution on the triangular basis; membership holds iff
    /// every division is exact.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let mut rem: Vec<BigInt> = v.to_vec();
        for i in 0..n {
            let pivot = self.basis.at(i, i);
            let (q, r) = rem[i].div_rem(pivot);
            if !r.is_zero() {
                return Ok(false);
            }
            for (j, slot) in rem.iter_mut().enumerate().skip(i) {
                *slot -= &q * self.basis.at(i, j);
            }
        }
        Ok(rem.iter().all(Zero::is_zero))
    }
}

/// Computes the canonical row-style Hermite normal form of the lattice
/// spanned by `rows`. The rows must span a full-rank lattice of `Z^n`;
/// otherwise `RankDeficient` is returned.
pub fn hermite_basis(rows: &[Vec<BigInt>]) -> Result<HermiteBasis> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m < n || n == 0 {
        return Err(Error::RankDeficient);
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rows.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0),
        });
    }

    let mut a = IntMatrix::from_rows(rows);
    let mut t = IntMatrix::identity(m);

    let mut pivot_row = 0usize;
    for col in 0..n {
        // Use gcd row operations to leave a single nonzero entry in this
        // column at `pivot_row`.
        loop {
            let best = (pivot_row..m)
                .filter(|&i| !a.at(i, col).is_zero())
                .min_by_key(|&i| a.at(i, col).abs());
            let Some(best) = best else { break };
            a.swap_rows(pivot_row, best);
            t.swap_rows(pivot_row, best);
            let mut finished = true;
            for i in pivot_row + 1..m {
                if a.at(i, col).is_zero() {
                    continue;
                }
                let q = -a.at(i, col).div_floor(a.at(pivot_row, col));
                a.add_row_multiple(i, pivot_row, &q);
                t.add_row_multiple(i, pivot_row, &q);
                if !a.at(i, col).is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if a.at(pivot_row, col).is_zero() {
            return Err(Error::RankDeficient);
        }
        if a.at(pivot_row, col).is_negative() {
            a.negate_row(pivot_row);
            t.negate_row(pivot_row);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..pivot_row {
            let q = -a.at(i, col).div_floor(a.at(pivot_row, col));
            a.add_row_multiple(i, pivot_row, &q);
            t.add_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
        if pivot_row == n {
            break;
        }
    }
    if pivot_row < n {
        return Err(Error::RankDeficient);
    }

    let mut basis = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            *basis.at_mut(i, j) = a.at(i, j).clone();
        }
    }
    Ok(HermiteBasis {
        basis,
        transform: t,
    })
}
