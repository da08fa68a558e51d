//! Moore-like bounds for mixed graphs, in every stated equivalent form.
//!
//! The general mixed bound is dual-tracked: a floating-point closed form in
//! the irrational roots `u1, u2`, and an exact integer layer recurrence
//! `n_0 = 1`, `n_1 = d`, `n_{i+1} = (d-1) n_i + z n_{i-1}`. The recurrence is
//! the ground truth; the closed form is a cross-check.
//!
//! The Abelian Cayley bound `M_AC(r1, r2, z, k)` is exact big-integer
//! binomial arithmetic throughout, with the convention `C(n, r) = 0` whenever
//! `r < 0`, `r > n`, or `n < 0`, so that summands outside the combinatorial
//! range vanish silently.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Roots and coefficients of the closed-form mixed Moore bound.
#[derive(Clone, Copy, Debug)]
pub struct MooreParameters {
    pub r: u32,
    pub z: u32,
    /// Total degree `d = r + z`.
    pub d: u32,
    /// Discriminant `v = (d-1)^2 + 4z`.
    pub v: u32,
    pub u1: f64,
    pub u2: f64,
    pub a: f64,
    pub b: f64,
}

impl MooreParameters {
    /// Requires `r + z >= 1` and `v > 0` (the closed form degenerates at
    /// `r = 1, z = 0`, where the discriminant vanishes).
    pub fn new(r: u32, z: u32) -> Result<Self> {
        let d = r + z;
        if d == 0 {
            return Err(Error::InvalidParameter(
                "degenerate degree r = z = 0".into(),
            ));
        }
        let v = (d - 1).pow(2) + 4 * z;
        if v == 0 {
            return Err(Error::Unsupported(
                "closed form requires v > 0 (fails only at r = 1, z = 0)".into(),
            ));
        }
        let sqrt_v = f64::from(v).sqrt();
        let df = f64::from(d);
        Ok(MooreParameters {
            r,
            z,
            d,
            v,
            u1: (df - 1.0 - sqrt_v) / 2.0,
            u2: (df - 1.0 + sqrt_v) / 2.0,
            a: (sqrt_v - (df + 1.0)) / (2.0 * sqrt_v),
            b: (sqrt_v + (df + 1.0)) / (2.0 * sqrt_v),
        })
    }
}

/// Geometric partial sum `(u^{k+1} - 1)/(u - 1)`, with the `u -> 1` limit.
fn geometric_sum(u: f64, k: u32) -> f64 {
    if (u - 1.0).abs() < 1e-12 {
        f64::from(k) + 1.0
    } else {
        (u.powi(k as i32 + 1) - 1.0) / (u - 1.0)
    }
}

/// Closed-form mixed Moore bound `M(r, z, k)`.
pub fn mixed_moore_bound(r: u32, z: u32, k: u32) -> Result<f64> {
    let p = MooreParameters::new(r, z)?;
    Ok(p.a * geometric_sum(p.u1, k) + p.b * geometric_sum(p.u2, k))
}

/// Moore tree layer counts `n_0, ..., n_k` for degree pair `(r, z)`.
pub fn moore_layers(r: u32, z: u32, k: u32) -> Result<Vec<BigUint>> {
    let d = r + z;
    if d == 0 {
        return Err(Error::InvalidParameter(
            "degenerate degree r = z = 0".into(),
        ));
    }
    let mut layers = Vec::with_capacity(k as usize + 1);
    layers.push(BigUint::one());
    if k >= 1 {
        layers.push(BigUint::from(d));
    }
    for i in 2..=k as usize {
        let next = (d - 1) * &layers[i - 1] + z * &layers[i - 2];
        layers.push(next);
    }
    Ok(layers)
}

/// Exact mixed Moore bound by the integer layer recurrence:
/// `sum of n_i for i = 0..=k`.
pub fn mixed_moore_recurrence(r: u32, z: u32, k: u32) -> Result<BigUint> {
    Ok(moore_layers(r, z, k)?.iter().sum())
}

/// Moore-like bound for bipartite mixed graphs (requires `r > 0`).
pub fn bipartite_mixed_bound(r: u32, z: u32, k: u32) -> Result<f64> {
    if r == 0 {
        return Err(Error::Unsupported(
            "bipartite bound is stated for r > 0 only".into(),
        ));
    }
    let d = r + z;
    let v = (d - 1).pow(2) + 4 * z;
    if v == 0 {
        // r = 1, z = 0: the closed form degenerates; the exact layer sum is
        // the limit value.
        return Ok(bipartite_recurrence_value(r, z, k)?
            .to_f64()
            .expect("small layer sum"));
    }
    let p = MooreParameters::new(r, z)?;
    let term = |u: f64| -> f64 {
        if (u - 1.0).abs() < 1e-12 {
            // lim_{u->1} (u^{k+1} - u)/(u^2 - 1)
            f64::from(k) / 2.0
        } else {
            (u.powi(k as i32 + 1) - u) / (u * u - 1.0)
        }
    };
    Ok(2.0 * (p.a * term(p.u1) + p.b * term(p.u2)))
}

/// Integer value matched by the bipartite bound: twice the sum of the Moore
/// layers `n_i` over `i <= k-1` with `i = k-1 (mod 2)` (the layers on the far
/// side of the bipartition).
pub fn bipartite_recurrence_value(r: u32, z: u32, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Ok(BigUint::zero());
    }
    let layers = moore_layers(r, z, k - 1)?;
    let parity = (k - 1) % 2;
    let sum: BigUint = layers
        .iter()
        .enumerate()
        .filter(|(i, _)| *i as u32 % 2 == parity)
        .map(|(_, n)| n)
        .sum();
    Ok(2u32 * sum)
}

/// Binomial coefficient over `i64` index space with the zero-outside-range
/// convention.
pub fn binomial(n: i64, r: i64) -> BigUint {
    if r < 0 || n < 0 || r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r) as u64;
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from((n as u64) - i) / BigUint::from(i + 1);
    }
    acc
}

/// Parameters of the Abelian Cayley Moore bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcBoundParams {
    pub r1: u32,
    pub r2: u32,
    pub z: u32,
    pub k: u32,
}

impl AcBoundParams {
    pub fn new(r1: u32, r2: u32, z: u32, k: u32) -> Self {
        AcBoundParams { r1, r2, z, k }
    }
}

/// The equivalent expressions for `M_AC`.
///
/// `ThmII` and `ThmIII` are the specializations obtained from the balls-in-
/// boxes expression by the symmetry shift with `nu = r1` resp. `nu = z`; they
/// require `r1 <= z` resp. `r1 >= z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundForm {
    /// Single sum in binomials of the totals `r2 + z` and `r1 + r2`.
    Eq5,
    /// Balls-in-boxes double sum over non-empty pair and involution boxes.
    Prop2,
    /// Single sum after shifting all pairs away (`nu = -r2`).
    ThmI,
    /// After shifting all involutions into pairs (`nu = r1`); needs `r1 <= z`.
    ThmII,
    /// After shifting all directed generators into pairs (`nu = z`); needs
    /// `r1 >= z`.
    ThmIII,
}

impl BoundForm {
    pub const ALL: [BoundForm; 5] = [
        BoundForm::Eq5,
        BoundForm::Prop2,
        BoundForm::ThmI,
        BoundForm::ThmII,
        BoundForm::ThmIII,
    ];

    pub fn applies_to(self, p: AcBoundParams) -> bool {
        match self {
            BoundForm::ThmII => p.r1 <= p.z,
            BoundForm::ThmIII => p.r1 >= p.z,
            _ => true,
        }
    }
}

/// Moore bound for mixed Abelian Cayley graphs, exact.
pub fn ac_bound(p: AcBoundParams, form: BoundForm) -> Result<BigUint> {
    let (r1, r2, z, k) = (
        i64::from(p.r1),
        i64::from(p.r2),
        i64::from(p.z),
        i64::from(p.k),
    );
    if !form.applies_to(p) {
        return Err(Error::Unsupported(format!(
            "{form:?} does not apply to r1 = {r1}, z = {z}"
        )));
    }
    let two = BigUint::from(2u32);
    let value = match form {
        BoundForm::Eq5 => (0..=k)
            .map(|i| binomial(r2 + z + i, i) * binomial(r1 + r2, k - i))
            .sum(),
        BoundForm::Prop2 => {
            let mut acc = BigUint::zero();
            for i in 0..=r2 {
                let inner: BigUint = (0..=r1)
                    .map(|j| binomial(r1, j) * binomial(k + z - j, i + z))
                    .sum();
                acc += binomial(r2, i) * two.pow(i as u32) * inner;
            }
            acc
        }
        BoundForm::ThmI => (0..=r1 + r2)
            .map(|j| binomial(r1 + r2, j) * binomial(k + r2 + z - j, z + r2))
            .sum(),
        BoundForm::ThmII => (0..=r1 + r2)
            .map(|i| binomial(r1 + r2, i) * two.pow(i as u32) * binomial(k + z - r1, i + z - r1))
            .sum(),
        BoundForm::ThmIII => {
            let mut acc = BigUint::zero();
            for i in 0..=r2 + z {
                let inner: BigUint = (0..=r1 - z)
                    .map(|j| binomial(r1 - z, j) * binomial(k - j, i))
                    .sum();
                acc += binomial(r2 + z, i) * two.pow(i as u32) * inner;
            }
            acc
        }
    };
    Ok(value)
}

/// Default-form bound (the single-sum expression).
pub fn ac_bound_default(r1: u32, r2: u32, z: u32, k: u32) -> BigUint {
    ac_bound(AcBoundParams::new(r1, r2, z, k), BoundForm::Eq5).expect("Eq5 applies unconditionally")
}

/// Symmetry shift: trades `nu` involution/directed pairs for inverse-closed
/// pairs. Legal for `-r2 <= nu <= min(r1, z)`; `ac_bound` is invariant.
pub fn ac_bound_shift(p: AcBoundParams, nu: i64) -> Result<AcBoundParams> {
    if nu < -i64::from(p.r2) || nu > i64::from(p.r1.min(p.z)) {
        return Err(Error::InvalidParameter(format!(
            "shift nu = {nu} outside [-r2, min(r1, z)] = [{}, {}]",
            -i64::from(p.r2),
            p.r1.min(p.z)
        )));
    }
    Ok(AcBoundParams {
        r1: (i64::from(p.r1) - nu) as u32,
        r2: (i64::from(p.r2) + nu) as u32,
        z: (i64::from(p.z) - nu) as u32,
        k: p.k,
    })
}

/// Delannoy number `F_{t,k} = sum_i 2^i C(t,i) C(k,i)`; the Abelian Cayley
/// bound with only inverse-closed pairs.
pub fn delannoy(t: u32, k: u32) -> BigUint {
    let two = BigUint::from(2u32);
    (0..=t.min(k))
        .map(|i| {
            two.pow(i) * binomial(i64::from(t), i64::from(i)) * binomial(i64::from(k), i64::from(i))
        })
        .sum()
}

/// The `r2 = 0` bound table: entry `(z, r1)` holds `M_AC(r1, 0, z, k)`.
#[derive(Clone, Debug)]
pub struct Table1 {
    pub k: u32,
    pub r1_max: u32,
    pub z_max: u32,
    /// `values[z][r1]`.
    pub values: Vec<Vec<BigUint>>,
}

/// Grid of `M_AC(r1, 0, z, k)` over `0 <= r1 <= r1_max`, `0 <= z <= z_max`.
/// The table is stated for diameter `k >= 2`.
pub fn emit_table1(k: u32, r1_max: u32, z_max: u32) -> Result<Table1> {
    if k < 2 {
        return Err(Error::InvalidParameter("table is stated for k >= 2".into()));
    }
    let values = (0..=z_max)
        .map(|z| {
            (0..=r1_max)
                .map(|r1| ac_bound_default(r1, 0, z, k))
                .collect()
        })
        .collect();
    Ok(Table1 {
        k,
        r1_max,
        z_max,
        values,
    })
}

impl Table1 {
    /// CSV with a header row; first column is `z`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("z/r1");
        for r1 in 0..=self.r1_max {
            out.push_str(&format!(",{r1}"));
        }
        out.push('\n');
        for (z, row) in self.values.iter().enumerate() {
            out.push_str(&z.to_string());
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}
