//! Finite Abelian groups as invariant-factor products.
//!
//! A group is a list of moduli `m_1, ..., m_t`, each at least 2, standing for
//! `Z_{m_1} x ... x Z_{m_t}`; the trivial group is the empty list. Elements
//! are coordinate vectors reduced componentwise. The canonical form used for
//! isomorphism-class comparisons is the invariant-factor chain, in which each
//! modulus divides the next.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{hermite_basis, smith_normal_form, SmithDecomposition};

/// A finite Abelian group `Z_{m_1} x ... x Z_{m_t}` with every `m_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

#[derive(Deserialize)]
struct RawGroup {
    factors: Vec<u64>,
}

impl TryFrom<RawGroup> for AbelianGroup {
    type Error = String;

    fn try_from(raw: RawGroup) -> std::result::Result<Self, String> {
        if raw.factors.contains(&0) {
            return Err("group moduli must be positive".into());
        }
        Ok(AbelianGroup::new(&raw.factors))
    }
}

/// An element of an [`AbelianGroup`], one residue per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl AbelianGroup {
    /// Builds a group from moduli, dropping unit factors. Panics on a zero
    /// modulus.
    pub fn new(factors: &[u64]) -> Self {
        assert!(factors.iter().all(|&m| m > 0), "moduli must be positive");
        AbelianGroup {
            factors: factors.iter().copied().filter(|&m| m > 1).collect(),
        }
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        AbelianGroup { factors: vec![] }
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: u64) -> Self {
        AbelianGroup::new(&[n])
    }

    /// The invariant-factor group defined by a Smith decomposition.
    pub fn from_smith(dec: &SmithDecomposition) -> Result<Self> {
        let mut factors = Vec::new();
        for s in &dec.s_prime {
            let f = s.to_u64().ok_or_else(|| {
                Error::InvalidParameter(format!("invariant factor {s} exceeds u64"))
            })?;
            factors.push(f);
        }
        Ok(AbelianGroup { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    /// Reduces possibly negative/overflowing coordinates into the group.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                got: coords.len(),
            });
        }
        let coords = coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.coords.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                got: a.coords.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn negate(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
            .collect();
        Ok(GroupElement { coords })
    }

    /// Least `t >= 1` with `t * a = 0`: the lcm of the coordinate orders.
    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        let mut order = 1u64;
        for (&x, &m) in a.coords.iter().zip(&self.factors) {
            let coord_order = m / m.gcd(&x);
            order = order.lcm(&coord_order);
        }
        Ok(order)
    }

    /// True iff `a != 0` and `2a = 0`.
    pub fn is_involution(&self, a: &GroupElement) -> Result<bool> {
        self.check(a)?;
        let nonzero = a.coords.iter().any(|&x| x != 0);
        Ok(nonzero && self.element_order(a)? == 2)
    }

    /// All elements, in mixed-radix order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let n = self.order();
        (0..n).map(|i| self.element_from_index(i))
    }

    /// Mixed-radix decoding, least significant coordinate last (so that the
    /// index order matches lexicographic coordinate order).
    pub fn element_from_index(&self, mut index: u64) -> GroupElement {
        let mut coords = vec![0u64; self.factors.len()];
        for (slot, &m) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = index % m;
            index /= m;
        }
        GroupElement { coords }
    }

    pub fn index_of(&self, a: &GroupElement) -> u64 {
        let mut index = 0u64;
        for (&c, &m) in a.coords.iter().zip(&self.factors) {
            index = index * m + c;
        }
        index
    }

    /// True iff the closure of `set` under addition is the whole group.
    pub fn generates(&self, set: &[GroupElement]) -> Result<bool> {
        for a in set {
            self.check(a)?;
        }
        Ok(self.closure_size(set)? == self.order())
    }

    fn closure_size(&self, set: &[GroupElement]) -> Result<u64> {
        let n = self.order() as usize;
        let mut seen = vec![false; n];
        seen[self.index_of(&self.zero()) as usize] = true;
        let mut frontier = vec![self.zero()];
        let mut count = 1u64;
        while let Some(v) = frontier.pop() {
            for s in set {
                let w = self.add(&v, s)?;
                let idx = self.index_of(&w) as usize;
                if !seen[idx] {
                    seen[idx] = true;
                    count += 1;
                    frontier.push(w);
                }
            }
        }
        Ok(count)
    }

    /// Direct product: concatenates factor lists (no canonicalization).
    pub fn direct_product(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        AbelianGroup { factors }
    }

    /// Invariant-factor canonical form of this group: the unique isomorphic
    /// factor chain in which each modulus divides the next.
    pub fn canonical_form(&self) -> AbelianGroup {
        let mut factors = self.factors.clone();
        // Repeatedly replace a non-dividing pair (a, b) by (gcd, lcm); this
        // terminates with a divisibility chain.
        loop {
            let mut changed = false;
            for i in 0..factors.len() {
                for j in i + 1..factors.len() {
                    let (a, b) = (factors[i], factors[j]);
                    let g = a.gcd(&b);
                    if g != a.min(b) || a > b {
                        factors[i] = g;
                        factors[j] = a / g * b;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        AbelianGroup::new(&factors)
    }

    /// Quotient `G / <a>` by an involution, as an invariant-factor group
    /// plus the projection map pushing elements forward.
    ///
    /// The quotient is computed by appending `a` to the defining lattice
    /// `diag(m_1, ..., m_t)` and re-running the Smith normal form of the
    /// resulting full-rank basis.
    pub fn quotient_by(&self, a: &GroupElement) -> Result<(AbelianGroup, Projection)> {
        self.check(a)?;
        if !self.is_involution(a)? {
            return Err(Error::Unsupported(
                "quotient_by requires an involution".into(),
            ));
        }
        let t = self.factors.len();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(t + 1);
        for (i, &m) in self.factors.iter().enumerate() {
            let mut row = vec![BigInt::ZERO; t];
            row[i] = BigInt::from(m);
            rows.push(row);
        }
        rows.push(a.coords.iter().map(|&c| BigInt::from(c)).collect());
        let h = hermite_basis(&rows)?;
        let dec = smith_normal_form(&h.basis)?;
        let quotient = AbelianGroup::from_smith(&dec)?;
        let moduli: Vec<u64> = quotient.factors.clone();
        Ok((
            quotient,
            Projection {
                matrix: dec.v_prime.clone(),
                moduli,
            },
        ))
    }
}

/// A surjective homomorphism from one coordinate system onto an
/// invariant-factor group, stored as an explicit matrix so generator sets
/// can be pushed through quotients.
#[derive(Clone, Debug)]
pub struct Projection {
    matrix: crate::lattice::IntMatrix,
    moduli: Vec<u64>,
}

impl Projection {
    pub fn apply(&self, a: &GroupElement) -> Result<GroupElement> {
        let v: Vec<BigInt> = a.coords.iter().map(|&c| BigInt::from(c)).collect();
        let image = self.matrix.row_vec_mul(&v)?;
        let coords = image
            .iter()
            .zip(&self.moduli)
            .map(|(x, &m)| {
                let r = x.mod_floor(&BigInt::from(m));
                r.to_u64().expect("reduced residue fits u64")
            })
            .collect();
        Ok(GroupElement { coords })
    }
}

impl GroupElement {
    /// Coordinates as i64, for display and JSON.
    pub fn coords_i64(&self) -> Vec<i64> {
        self.coords.iter().map(|&c| c as i64).collect()
    }
}

/// One representative per isomorphism class of Abelian groups of order `n`,
/// in invariant-factor form, deterministically ordered (by increasing rank,
/// then lexicographically by factors).
pub fn groups_of_order(n: u64) -> Vec<AbelianGroup> {
    assert!(n >= 1);
    if n == 1 {
        return vec![AbelianGroup::trivial()];
    }
    let factorization = factorize(n);
    // For each prime, the Abelian p-groups of order p^e correspond to the
    // partitions of e. Combine per-prime partitions into invariant factors by
    // aligning the largest parts.
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> = factorization
        .iter()
        .map(|&(p, e)| (p, partitions(e)))
        .collect();

    let mut groups = Vec::new();
    let mut choice = vec![0usize; per_prime.len()];
    loop {
        let max_len = per_prime
            .iter()
            .zip(&choice)
            .map(|((_, parts), &c)| parts[c].len())
            .max()
            .unwrap_or(0);
        // Invariant factor i (from the largest) multiplies the i-th largest
        // part of each prime.
        let mut chain = vec![1u64; max_len];
        for ((p, parts), &c) in per_prime.iter().zip(&choice) {
            for (i, &exp) in parts[c].iter().enumerate() {
                chain[i] *= p.pow(exp);
            }
        }
        chain.reverse(); // ascending divisibility
        groups.push(AbelianGroup::new(&chain));

        let mut i = 0;
        loop {
            if i == choice.len() {
                groups.sort_by(|a, b| (a.rank(), a.factors()).cmp(&(b.rank(), b.factors())));
                groups.dedup();
                return groups;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `e` in decreasing-part form, deterministically ordered.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        let top = remaining.min(max_part);
        for part in (1..=top).rev() {
            cur.push(part);
            rec(remaining - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: &AbelianGroup, coords: &[i64]) -> GroupElement {
        g.element(coords).unwrap()
    }

    #[test]
    fn negate_12_in_z24_is_12() {
        let g = AbelianGroup::cyclic(24);
        let twelve = el(&g, &[12]);
        assert_eq!(g.negate(&twelve).unwrap(), twelve);
    }

    #[test]
    fn add_inverse_is_zero() {
        let g = AbelianGroup::new(&[2, 6]);
        for a in g.elements() {
            let n = g.negate(&a).unwrap();
            assert_eq!(g.add(&a, &n).unwrap(), g.zero());
        }
    }

    #[test]
    fn element_order_by_iterated_addition() {
        let g = AbelianGroup::new(&[2, 6]);
        let a = el(&g, &[1, 3]);
        assert_eq!(g.element_order(&a).unwrap(), 2);
        // Oracle: iterate additions until identity.
        for b in g.elements() {
            let mut acc = b.clone();
            let mut t = 1u64;
            while acc != g.zero() {
                acc = g.add(&acc, &b).unwrap();
                t += 1;
            }
            assert_eq!(g.element_order(&b).unwrap(), t, "{b:?}");
        }
    }

    #[test]
    fn involutions_of_z2_x_z4() {
        let g = AbelianGroup::new(&[2, 4]);
        let expected = [el(&g, &[1, 0]), el(&g, &[0, 2]), el(&g, &[1, 2])];
        let found: Vec<GroupElement> = g
            .elements()
            .filter(|a| g.is_involution(a).unwrap())
            .collect();
        assert_eq!(found.len(), 3);
        for e in expected {
            assert!(found.contains(&e));
        }
        assert!(!g.is_involution(&g.zero()).unwrap());
    }

    #[test]
    fn involution_of_even_cyclic_group() {
        for k in 1..8u64 {
            let g = AbelianGroup::cyclic(2 * k);
            assert!(g.is_involution(&el(&g, &[k as i64])).unwrap());
        }
    }

    #[test]
    fn generating_sets() {
        let z24 = AbelianGroup::cyclic(24);
        let set = [el(&z24, &[2]), el(&z24, &[3]), el(&z24, &[12])];
        assert!(z24.generates(&set).unwrap());

        let g = AbelianGroup::new(&[2, 6]);
        assert!(!g.generates(&[g.zero()]).unwrap());
        let misses = [el(&g, &[0, 2]), el(&g, &[0, 3])];
        assert!(!g.generates(&misses).unwrap());
    }

    #[test]
    fn generates_agrees_with_pairwise_closure_up_to_order_48() {
        // Independent oracle: saturate S <- S union (S+S) to a fixpoint.
        for n in [6u64, 8, 12, 16, 24, 36, 48] {
            for g in groups_of_order(n) {
                let els: Vec<GroupElement> = g.elements().collect();
                for probe in 0..els.len().min(5) {
                    let set = vec![els[probe].clone(), els[(probe * 7 + 1) % els.len()].clone()];
                    let mut closure: std::collections::BTreeSet<GroupElement> =
                        set.iter().cloned().collect();
                    closure.insert(g.zero());
                    loop {
                        let mut next = closure.clone();
                        for a in &closure {
                            for b in &closure {
                                next.insert(g.add(a, b).unwrap());
                            }
                        }
                        if next.len() == closure.len() {
                            break;
                        }
                        closure = next;
                    }
                    assert_eq!(
                        g.generates(&set).unwrap(),
                        closure.len() as u64 == g.order(),
                        "{set:?} in {g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_of_z18_by_9_is_z9() {
        let g = AbelianGroup::cyclic(18);
        let (q, proj) = g.quotient_by(&el(&g, &[9])).unwrap();
        assert_eq!(q, AbelianGroup::cyclic(9));
        let images: Vec<u64> = [1i64, 4, 9]
            .iter()
            .map(|&c| proj.apply(&el(&g, &[c])).unwrap().coords[0])
            .collect();
        // Generator images are {1, 4, 0} up to a global sign.
        let direct = images == vec![1, 4, 0];
        let negated = images == vec![8, 5, 0];
        assert!(direct || negated, "images {images:?}");
    }

    #[test]
    fn quotient_of_z2_x_zk_by_involution_drops_factor() {
        for k in [3u64, 4, 5, 8] {
            let g = AbelianGroup::new(&[2, k]);
            let (q, _) = g.quotient_by(&el(&g, &[1, 0])).unwrap();
            assert_eq!(q, AbelianGroup::cyclic(k));
            assert_eq!(q.order(), g.order() / 2);
        }
    }

    #[test]
    fn quotient_rejects_non_involution() {
        let g = AbelianGroup::cyclic(18);
        assert!(matches!(
            g.quotient_by(&el(&g, &[6])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn product_of_coprime_cyclics_canonicalizes_to_one_factor() {
        let p = AbelianGroup::cyclic(2).direct_product(&AbelianGroup::cyclic(9));
        assert_eq!(p.factors(), &[2, 9]);
        assert_eq!(p.canonical_form(), AbelianGroup::cyclic(18));
    }

    #[test]
    fn rank_is_bounded_by_the_largest_prime_exponent() {
        for n in 2..=64u64 {
            let max_exp = {
                let mut m = n;
                let mut best = 0u32;
                let mut p = 2u64;
                while p * p <= m {
                    let mut e = 0;
                    while m % p == 0 {
                        m /= p;
                        e += 1;
                    }
                    best = best.max(e);
                    p += 1;
                }
                if m > 1 {
                    best = best.max(1);
                }
                best
            };
            for g in groups_of_order(n) {
                assert!(g.rank() as u32 <= max_exp, "{g:?} at order {n}");
            }
        }
    }

    #[test]
    fn json_rejects_zero_moduli() {
        let ok: AbelianGroup = serde_json::from_str(r#"{"factors":[2,6]}"#).unwrap();
        assert_eq!(ok, AbelianGroup::new(&[2, 6]));
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"factors":[0,6]}"#).is_err());
    }

    #[test]
    fn groups_of_order_8_and_14_and_1() {
        let g8 = groups_of_order(8);
        assert_eq!(
            g8,
            vec![
                AbelianGroup::cyclic(8),
                AbelianGroup::new(&[2, 4]),
                AbelianGroup::new(&[2, 2, 2]),
            ]
        );
        assert_eq!(groups_of_order(14), vec![AbelianGroup::cyclic(14)]);
        assert_eq!(groups_of_order(1), vec![AbelianGroup::trivial()]);
    }

    #[test]
    fn groups_of_order_satisfy_chain_and_match_brute_force_counts() {
        // Number of Abelian groups of order n for n = 1..16 (classical
        // classification; product of partition counts per prime exponent).
        let class_counts = [1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5];
        for n in 1..=16u64 {
            let groups = groups_of_order(n);
            assert_eq!(groups.len(), class_counts[(n - 1) as usize], "order {n}");
            for g in &groups {
                assert_eq!(g.order(), n);
                for w in g.factors().windows(2) {
                    assert_eq!(w[1] % w[0], 0, "chain broken in {g:?}");
                }
            }
            // Brute-force isomorphism classification: count multisets of
            // element orders; for Abelian groups of these sizes the order
            // profile separates isomorphism classes.
            let mut profiles: Vec<Vec<u64>> = groups
                .iter()
                .map(|g| {
                    let mut orders: Vec<u64> =
                        g.elements().map(|a| g.element_order(&a).unwrap()).collect();
                    orders.sort_unstable();
                    orders
                })
                .collect();
            let total = profiles.len();
            profiles.dedup();
            assert_eq!(profiles.len(), total, "duplicate class at order {n}");
        }
    }
}
