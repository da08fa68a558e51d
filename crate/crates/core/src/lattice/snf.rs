//! Smith normal form with unimodular witnesses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// Smith normal form `U * M * V = S` of a non-singular square integer matrix,
/// together with the data derived from it: the reduced `V'`, `S'` obtained by
/// dropping the columns of unit invariant factors, the determinantal divisors
/// `d_i = s_1 * ... * s_i`, and the rank of the quotient group `Z^n / Z^n M`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    /// The input matrix.
    pub matrix: IntMatrix,
    /// Invariant factors `s_1 | s_2 | ... | s_n`, all positive.
    pub invariant_factors: Vec<BigInt>,
    /// Left unimodular witness.
    pub u: IntMatrix,
    /// Right unimodular witness.
    pub v: IntMatrix,
    /// Last `r` columns of `V`, where `r` is the number of invariant factors
    /// greater than one. The map `u -> u * V'` (mod `S'`) realizes the
    /// isomorphism onto the invariant-factor product.
    pub v_prime: IntMatrix,
    /// Invariant factors greater than one, i.e. the moduli of `S'`.
    pub s_prime: Vec<BigInt>,
    /// Determinantal divisors `d_1, ..., d_n`.
    pub det_divisors: Vec<BigInt>,
    /// Number of invariant factors greater than one; the rank of the
    /// quotient group. Equals `n` when no factor is one.
    pub rank_r: usize,
}

/// A vector reduced to canonical coordinates in the invariant-factor product:
/// coordinate `i` lies in `[0, s'_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalVector {
    pub coords: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn n(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Group order `|det M|`.
    pub fn order(&self) -> BigInt {
        self.det_divisors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }

    /// Canonical coordinates of `u` in the invariant-factor product: the
    /// image `u * V'` with coordinate `i` reduced modulo `s'_i`.
    pub fn canonicalize(&self, u: &[BigInt]) -> Result<CanonicalVector> {
        let image = self.v_prime.row_vec_mul(u)?;
        let coords = image
            .iter()
            .zip(&self.s_prime)
            .map(|(x, m)| x.mod_floor(m))
            .collect();
        Ok(CanonicalVector { coords })
    }

    /// Congruence test `u = v (mod M)` via the component test: for each `i`,
    /// `(u - v) * V_i = 0 (mod s_i)`.
    pub fn congruent(&self, u: &[BigInt], v: &[BigInt]) -> Result<bool> {
        let n = self.n();
        if u.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: u.len(),
            });
        }
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let diff: Vec<BigInt> = u.iter().zip(v).map(|(a, b)| a - b).collect();
        let image = self.v.row_vec_mul(&diff)?;
        Ok(image
            .iter()
            .zip(&self.invariant_factors)
            .all(|(x, s)| x.mod_floor(s).is_zero()))
    }
}

/// Structural facts about `Z^n / Z^n M` read off a Smith decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFacts {
    /// `|Z^n / Z^n M| = |det M|`.
    pub order: BigInt,
    /// Number of invariant factors greater than one.
    pub rank: usize,
    /// Cyclic iff the next-to-last determinantal divisor is one.
    pub is_cyclic: bool,
}

/// Order, rank, and cyclicity of the quotient group.
pub fn group_facts(dec: &SmithDecomposition) -> GroupFacts {
    let n = dec.n();
    let is_cyclic = if n <= 1 {
        true
    } else {
        dec.det_divisors[n - 2].is_one()
    };
    GroupFacts {
        order: dec.order(),
        rank: dec.rank_r,
        is_cyclic,
    }
}

/// Congruence `u = v (mod M)`: true iff `u - v` lies in the row lattice of
/// `M`. Computes a Smith decomposition internally; callers with many queries
/// against the same `M` should hold a [`SmithDecomposition`] and use its
/// method instead.
pub fn congruent(u: &[BigInt], v: &[BigInt], m: &IntMatrix) -> Result<bool> {
    smith_normal_form(m)?.congruent(u, v)
}

/// Canonical coordinates of `u` modulo `M` (see
/// [`SmithDecomposition::canonicalize`]).
pub fn canonicalize(dec: &SmithDecomposition, u: &[BigInt]) -> Result<CanonicalVector> {
    dec.canonicalize(u)
}

/// Computes the Smith normal form of a non-singular square integer matrix by
/// Bezout-style row/column reduction with explicit unimodular tracking.
///
/// Pivoting is deterministic: the entry of smallest nonzero absolute value in
/// the working submatrix, ties broken in row-major order. Invariant factors
/// come out positive and in divisibility order.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithDecomposition> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let n = m.rows();
    let det = m.det();
    if n > 0 && det.is_zero() {
        return Err(Error::SingularLattice);
    }

    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for t in 0..n {
        loop {
            let (pi, pj) = pivot_position(&a, t).expect("non-singular matrix has a pivot");
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            // Reduce the pivot column and row; remainders smaller than the
            // pivot trigger another pivot selection round.
            let mut clean = true;
            for i in t + 1..n {
                if a.at(i, t).is_zero() {
                    continue;
                }
                let q = -a.at(i, t).div_floor(a.at(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !a.at(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a.at(t, j).is_zero() {
                    continue;
                }
                let q = -a.at(t, j).div_floor(a.at(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !a.at(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }

            // Pivot must divide the whole remaining submatrix so that the
            // invariant factors come out in divisibility order.
            if let Some(i) = (t + 1..n)
                .find(|&i| (t + 1..n).any(|j| !a.at(i, j).mod_floor(a.at(t, t)).is_zero()))
            {
                a.add_row_multiple(t, i, &BigInt::one());
                u.add_row_multiple(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    let invariant_factors = a.diagonal();
    debug_assert_eq!(u.mul(m).mul(&v), a);

    let mut det_divisors = Vec::with_capacity(n);
    let mut acc = BigInt::one();
    for s in &invariant_factors {
        acc *= s;
        det_divisors.push(acc.clone());
    }

    let rank_r = invariant_factors.iter().filter(|s| !s.is_one()).count();
    let v_prime = v.columns_from(n - rank_r);
    let s_prime = invariant_factors[n - rank_r..].to_vec();

    Ok(SmithDecomposition {
        matrix: m.clone(),
        invariant_factors,
        u,
        v,
        v_prime,
        s_prime,
        det_divisors,
        rank_r,
    })
}

/// Smallest nonzero |entry| in the submatrix `[t.., t..]`, row-major ties.
fn pivot_position(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let n = a.rows();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            let e = a.at(i, j);
            if e.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.at(bi, bj).abs() <= e.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn biv(vs: &[i64]) -> Vec<BigInt> {
        vs.iter().copied().map(BigInt::from).collect()
    }

    fn check_decomposition(m: &IntMatrix, dec: &SmithDecomposition) {
        // U M V = S, exactly.
        let mut s = IntMatrix::zeros(m.rows(), m.cols());
        for (i, f) in dec.invariant_factors.iter().enumerate() {
            *s.at_mut(i, i) = f.clone();
        }
        assert_eq!(dec.u.mul(m).mul(&dec.v), s);
        assert!(dec.u.is_unimodular());
        assert!(dec.v.is_unimodular());
        // Divisibility chain, positivity, determinant product.
        for w in dec.invariant_factors.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "chain broken: {dec:?}");
        }
        assert!(dec.invariant_factors.iter().all(|f| f.is_positive()));
        assert_eq!(dec.order(), m.det().abs());
    }

    #[test]
    fn worked_example_z24() {
        let m = IntMatrix::from_i64(&[&[3, -2, 0], &[0, 4, 1], &[0, 0, 2]]);
        let dec = smith_normal_form(&m).unwrap();
        assert_eq!(dec.invariant_factors, biv(&[1, 1, 24]));
        check_decomposition(&m, &dec);
        assert_eq!(dec.rank_r, 1);
        assert_eq!(dec.s_prime, biv(&[24]));
        let facts = group_facts(&dec);
        assert_eq!(facts.order, bi(24));
        assert_eq!(facts.rank, 1);
        assert!(facts.is_cyclic);
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntMatrix::identity(4);
        let dec = smith_normal_form(&m).unwrap();
        assert_eq!(dec.invariant_factors, biv(&[1, 1, 1, 1]));
        assert_eq!(dec.u, IntMatrix::identity(4));
        assert_eq!(dec.v, IntMatrix::identity(4));
        assert_eq!(dec.rank_r, 0);
        let facts = group_facts(&dec);
        assert_eq!(facts.order, bi(1));
        assert_eq!(facts.rank, 0);
    }

    #[test]
    fn diag_4_6_has_factors_2_12() {
        let m = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        let dec = smith_normal_form(&m).unwrap();
        assert_eq!(dec.invariant_factors, biv(&[2, 12]));
        check_decomposition(&m, &dec);
    }

    #[test]
    fn diag_2_2_is_rank_two_not_cyclic() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]);
        let dec = smith_normal_form(&m).unwrap();
        let facts = group_facts(&dec);
        assert_eq!(facts.order, bi(4));
        assert_eq!(facts.rank, 2);
        assert!(!facts.is_cyclic);
        // No element of Z^2/Z^2M has order 4: every coordinate doubles to 0.
        for x in 0..2i64 {
            for y in 0..2i64 {
                let two_v = biv(&[2 * x, 2 * y]);
                assert!(dec.congruent(&two_v, &biv(&[0, 0])).unwrap());
            }
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(matches!(smith_normal_form(&m), Err(Error::SingularLattice)));
    }

    #[test]
    fn congruence_matches_canonical_images_in_z24() {
        let m = IntMatrix::from_i64(&[&[3, -2, 0], &[0, 4, 1], &[0, 0, 2]]);
        let dec = smith_normal_form(&m).unwrap();
        // Rows of M are congruent to zero.
        for i in 0..3 {
            let row: Vec<BigInt> = m.row(i).to_vec();
            assert!(dec.congruent(&row, &biv(&[0, 0, 0])).unwrap());
        }
        // u = v trivially congruent.
        assert!(dec.congruent(&biv(&[3, 0, 0]), &biv(&[3, 0, 0])).unwrap());
        // Congruent iff canonical images coincide.
        let u = biv(&[3, 0, 0]);
        let v = biv(&[0, -2, 0]);
        let same = dec.canonicalize(&u).unwrap() == dec.canonicalize(&v).unwrap();
        assert_eq!(dec.congruent(&u, &v).unwrap(), same);
    }

    #[test]
    fn canonical_images_cover_z24_once() {
        let m = IntMatrix::from_i64(&[&[3, -2, 0], &[0, 4, 1], &[0, 0, 2]]);
        let dec = smith_normal_form(&m).unwrap();
        let mut seen = std::collections::HashSet::new();
        for i in 0..2i64 {
            for j in 0..4i64 {
                for k in 0..3i64 {
                    // i*e3 + j*e2 + k*e1 over a fundamental box of volume 24.
                    let u = biv(&[k, j, i]);
                    seen.insert(dec.canonicalize(&u).unwrap());
                }
            }
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn canonicalize_respects_addition() {
        let m = IntMatrix::from_i64(&[&[3, -2, 0], &[0, 4, 1], &[0, 0, 2]]);
        let dec = smith_normal_form(&m).unwrap();
        let u = biv(&[5, -3, 2]);
        let v = biv(&[-1, 7, 4]);
        let sum: Vec<BigInt> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let cu = dec.canonicalize(&u).unwrap();
        let cv = dec.canonicalize(&v).unwrap();
        let expected: Vec<BigInt> = cu
            .coords
            .iter()
            .zip(&cv.coords)
            .zip(&dec.s_prime)
            .map(|((a, b), s)| (a + b).mod_floor(s))
            .collect();
        assert_eq!(dec.canonicalize(&sum).unwrap().coords, expected);
    }

    #[test]
    fn det_divisors_are_gcds_of_minors_for_small_matrices() {
        // Independent oracle: d_i = gcd of all i x i minors.
        let cases = [
            IntMatrix::from_i64(&[&[3, -2, 0], &[0, 4, 1], &[0, 0, 2]]),
            IntMatrix::from_i64(&[&[4, 0], &[0, 6]]),
            IntMatrix::from_i64(&[&[2, 1], &[1, 2]]),
            IntMatrix::from_i64(&[&[6, 4, 2], &[2, 8, 4], &[0, 2, 10]]),
        ];
        for m in &cases {
            let dec = smith_normal_form(m).unwrap();
            for size in 1..=m.rows() {
                let mut g = BigInt::zero();
                for rows in subsets(m.rows(), size) {
                    for cols in subsets(m.cols(), size) {
                        g = g.gcd(&minor(m, &rows, &cols));
                    }
                }
                assert_eq!(g, dec.det_divisors[size - 1], "d_{size} of {m:?}");
            }
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut out);
        out
    }

    fn minor(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| m.at(i, j).clone()).collect())
            .collect();
        IntMatrix::from_rows(&sub).det()
    }
}
