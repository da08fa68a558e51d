//! Cayley mixed graphs of Abelian groups and their BFS distance profiles.
//!
//! A generating set splits into `r1` involutions (each contributes one
//! undirected edge per vertex), `r2` inverse-closed pairs (two undirected
//! edges), and `z` directed generators whose inverses are absent (one out-arc
//! each). Vertices are group elements; `u` reaches `u + s` for every `s` in
//! the set, counting both members of each pair. The graph is never stored
//! explicitly: adjacency is generator addition, so BFS needs `O(N)` memory.

use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::lattice::{smith_normal_form, IntMatrix};

/// A generating set classified by signature `(r1, r2, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    involutions: Vec<GroupElement>,
    pairs: Vec<GroupElement>,
    directed: Vec<GroupElement>,
    generates_group: bool,
}

impl GeneratorSet {
    pub fn r1(&self) -> usize {
        self.involutions.len()
    }

    pub fn r2(&self) -> usize {
        self.pairs.len()
    }

    pub fn z(&self) -> usize {
        self.directed.len()
    }

    /// Undirected degree `r = r1 + 2 r2`.
    pub fn undirected_degree(&self) -> usize {
        self.r1() + 2 * self.r2()
    }

    /// Total out-degree `d = r + z`.
    pub fn degree(&self) -> usize {
        self.undirected_degree() + self.z()
    }

    pub fn involutions(&self) -> &[GroupElement] {
        &self.involutions
    }

    /// One representative per inverse-closed pair `{a, -a}`.
    pub fn pairs(&self) -> &[GroupElement] {
        &self.pairs
    }

    pub fn directed(&self) -> &[GroupElement] {
        &self.directed
    }

    /// Whether the classified set generates the whole group. Reported, not
    /// fatal: a non-generating set still classifies.
    pub fn generates_group(&self) -> bool {
        self.generates_group
    }

    /// Every out-step: involutions, both members of each pair, directed.
    pub fn out_steps(&self, group: &AbelianGroup) -> Result<Vec<GroupElement>> {
        let mut steps = self.involutions.clone();
        for a in &self.pairs {
            steps.push(a.clone());
            steps.push(group.negate(a)?);
        }
        steps.extend(self.directed.iter().cloned());
        Ok(steps)
    }

    /// The raw generator list (pairs expanded), sorted, for serialization.
    pub fn raw_elements(&self, group: &AbelianGroup) -> Result<Vec<GroupElement>> {
        let mut raw = self.out_steps(group)?;
        raw.sort();
        Ok(raw)
    }
}

/// Classifies a raw generator list into the `(r1, r2, z)` buckets.
///
/// Zero elements and duplicates are rejected. A set that fails to generate
/// the group is *not* an error; the flag is recorded on the result.
pub fn classify_generators(group: &AbelianGroup, raw: &[GroupElement]) -> Result<GeneratorSet> {
    if raw.is_empty() {
        return Err(Error::InvalidGenerators("empty generator set".into()));
    }
    let zero = group.zero();
    let mut seen = std::collections::BTreeSet::new();
    for a in raw {
        if a.coords.len() != group.rank() {
            return Err(Error::DimensionMismatch {
                expected: group.rank(),
                got: a.coords.len(),
            });
        }
        if *a == zero {
            return Err(Error::InvalidGenerators("contains the zero element".into()));
        }
        if !seen.insert(a.clone()) {
            return Err(Error::InvalidGenerators(format!(
                "duplicate element {:?}",
                a.coords_i64()
            )));
        }
    }

    let mut involutions = Vec::new();
    let mut pairs = Vec::new();
    let mut directed = Vec::new();
    for a in raw {
        if group.is_involution(a)? {
            involutions.push(a.clone());
            continue;
        }
        let neg = group.negate(a)?;
        if seen.contains(&neg) {
            // Inverse-closed pair; record the lexicographically smaller
            // member once.
            if *a < neg {
                pairs.push(a.clone());
            }
        } else {
            directed.push(a.clone());
        }
    }
    involutions.sort();
    pairs.sort();
    directed.sort();
    let generates_group = group.generates(raw)?;
    Ok(GeneratorSet {
        involutions,
        pairs,
        directed,
        generates_group,
    })
}

/// BFS over the implicit Cayley graph: distances from `start` following the
/// given steps, `u32::MAX` for unreached vertices. With `stop_after = k`,
/// vertices beyond distance `k` are left unreached.
pub(crate) fn bfs_distances(
    group: &AbelianGroup,
    steps: &[GroupElement],
    start: u64,
    stop_after: Option<u32>,
) -> Vec<u32> {
    let n = group.order() as usize;
    let mut dist = vec![u32::MAX; n];
    dist[start as usize] = 0;
    let mut queue = VecDeque::with_capacity(n);
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize];
        if let Some(limit) = stop_after {
            if dv >= limit {
                break;
            }
        }
        let ve = group.element_from_index(v);
        for s in steps {
            let w = group.add(&ve, s).expect("steps live in the group");
            let wi = group.index_of(&w);
            if dist[wi as usize] == u32::MAX {
                dist[wi as usize] = dv + 1;
                queue.push_back(wi);
            }
        }
    }
    dist
}

/// A Cayley mixed graph, stored implicitly as a group plus a classified
/// generating set. Immutable after construction.
#[derive(Clone, Debug)]
pub struct CayleyMixedGraph {
    group: AbelianGroup,
    gens: GeneratorSet,
}

/// Serializable description of a graph: the group and the raw generator
/// list as coordinate vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphSpec {
    pub group: AbelianGroup,
    pub generators: Vec<Vec<i64>>,
}

/// BFS result from the origin: one distance per vertex and the layers
/// `G_l(0)` as vertex index lists.
#[derive(Clone, Debug)]
pub struct DistanceProfile {
    dist: Vec<u32>,
    layers: Vec<Vec<u64>>,
}

/// Per-layer split of a profile for `r1 = 1`: `avoiding[l]` holds the
/// vertices of layer `l` with a shortest path that avoids the involution,
/// `through[l]` those whose every shortest path uses it.
#[derive(Clone, Debug)]
pub struct SplitLayers {
    pub avoiding: Vec<Vec<u64>>,
    pub through: Vec<Vec<u64>>,
}

/// Machine-readable BFS report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BfsReport {
    pub order: u64,
    pub r1: usize,
    pub r2: usize,
    pub z: usize,
    pub diameter: u32,
    pub layer_sizes: Vec<u64>,
}

impl CayleyMixedGraph {
    pub fn new(group: AbelianGroup, gens: GeneratorSet) -> Self {
        CayleyMixedGraph { group, gens }
    }

    /// The one-vertex graph (trivial group, no generators).
    pub fn one_vertex() -> Self {
        CayleyMixedGraph {
            group: AbelianGroup::trivial(),
            gens: GeneratorSet {
                involutions: vec![],
                pairs: vec![],
                directed: vec![],
                generates_group: true,
            },
        }
    }

    /// Builds from a group and raw generator coordinates.
    pub fn from_generators(group: &AbelianGroup, raw: &[Vec<i64>]) -> Result<Self> {
        let elements: Vec<GroupElement> = raw
            .iter()
            .map(|coords| group.element(coords))
            .collect::<Result<_>>()?;
        let gens = classify_generators(group, &elements)?;
        Ok(CayleyMixedGraph::new(group.clone(), gens))
    }

    /// Cayley graph of `Z^n / Z^n M` on the canonical images of the given
    /// integer vectors. Images equal to zero (redundant generators) are
    /// dropped and repeated images deduplicated, so multi-edges never arise.
    pub fn from_lattice(m: &IntMatrix, gens: &[Vec<i64>]) -> Result<Self> {
        let dec = smith_normal_form(m)?;
        let group = AbelianGroup::from_smith(&dec)?;
        if group.order() == 1 {
            return Ok(CayleyMixedGraph::one_vertex());
        }
        let mut images: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            let v: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
            let canon = dec.canonicalize(&v)?;
            let coords: Vec<i64> = canon
                .coords
                .iter()
                .map(|c| i64::try_from(c).expect("reduced residue fits i64"))
                .collect();
            if coords.iter().any(|&c| c != 0) && !images.contains(&coords) {
                images.push(coords);
            }
        }
        Self::from_generators(&group, &images)
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        Self::from_generators(&spec.group, &spec.generators)
    }

    pub fn to_spec(&self) -> Result<GraphSpec> {
        let generators = self
            .gens
            .raw_elements(&self.group)?
            .iter()
            .map(GroupElement::coords_i64)
            .collect();
        Ok(GraphSpec {
            group: self.group.clone(),
            generators,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }

    fn bfs(&self, start: u64, steps: &[GroupElement], stop_after: Option<u32>) -> Vec<u32> {
        bfs_distances(&self.group, steps, start, stop_after)
    }

    /// Exact BFS distances and layers from the origin. Errors with
    /// `NotStronglyConnected` if any vertex is unreachable.
    pub fn distances_from_origin(&self) -> Result<DistanceProfile> {
        let steps = self.gens.out_steps(&self.group)?;
        let start = self.group.index_of(&self.group.zero());
        let dist = self.bfs(start, &steps, None);
        let unreached = dist.iter().filter(|&&d| d == u32::MAX).count();
        if unreached > 0 {
            return Err(Error::NotStronglyConnected {
                unreached,
                order: self.order() as usize,
            });
        }
        let diameter = dist.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); diameter as usize + 1];
        for (v, &d) in dist.iter().enumerate() {
            layers[d as usize].push(v as u64);
        }
        Ok(DistanceProfile { dist, layers })
    }

    /// Eccentricity of the origin; equals the diameter by vertex
    /// transitivity.
    pub fn diameter(&self) -> Result<u32> {
        Ok(self.distances_from_origin()?.diameter())
    }

    /// Early-exit BFS: `Some(diameter)` if every vertex is covered within
    /// distance `k`, `None` as soon as layer `k` closes with vertices
    /// uncovered.
    pub fn diameter_at_most(&self, k: u32) -> Result<Option<u32>> {
        let steps = self.gens.out_steps(&self.group)?;
        let start = self.group.index_of(&self.group.zero());
        let dist = self.bfs(start, &steps, Some(k));
        let mut max = 0u32;
        for &d in &dist {
            if d == u32::MAX {
                return Ok(None);
            }
            max = max.max(d);
        }
        Ok(Some(max))
    }

    /// Splits each layer by whether some shortest path avoids the single
    /// involution. Requires `r1 = 1`.
    pub fn split_layers(&self, profile: &DistanceProfile) -> Result<SplitLayers> {
        if self.gens.r1() != 1 {
            return Err(Error::Unsupported(format!(
                "split_layers requires exactly one involution, got r1 = {}",
                self.gens.r1()
            )));
        }
        // Second BFS with the involution edge removed: a vertex of layer l
        // has a shortest path avoiding the involution iff it is still at
        // distance l there.
        let mut steps = Vec::new();
        for a in self.gens.pairs() {
            steps.push(a.clone());
            steps.push(self.group.negate(a)?);
        }
        steps.extend(self.gens.directed().iter().cloned());
        let start = self.group.index_of(&self.group.zero());
        let no_inv = self.bfs(start, &steps, None);

        let mut avoiding = vec![Vec::new(); profile.layers.len()];
        let mut through = vec![Vec::new(); profile.layers.len()];
        for (l, layer) in profile.layers.iter().enumerate() {
            for &v in layer {
                if no_inv[v as usize] == l as u32 {
                    avoiding[l].push(v);
                } else {
                    through[l].push(v);
                }
            }
        }
        Ok(SplitLayers { avoiding, through })
    }

    /// Test aid: all vertices share the same eccentricity (a consequence of
    /// vertex transitivity, checked by all-pairs BFS).
    pub fn check_eccentricity_uniform(&self) -> Result<bool> {
        let steps = self.gens.out_steps(&self.group)?;
        let n = self.order();
        let mut ecc = None;
        for start in 0..n {
            let dist = self.bfs(start, &steps, None);
            if dist.contains(&u32::MAX) {
                return Err(Error::NotStronglyConnected {
                    unreached: dist.iter().filter(|&&d| d == u32::MAX).count(),
                    order: n as usize,
                });
            }
            let e = dist.iter().copied().max().unwrap_or(0);
            match ecc {
                None => ecc = Some(e),
                Some(prev) if prev != e => return Ok(false),
                Some(_) => {}
            }
        }
        Ok(true)
    }

    /// BFS report for machine consumption.
    pub fn report(&self) -> Result<BfsReport> {
        let profile = self.distances_from_origin()?;
        Ok(BfsReport {
            order: self.order(),
            r1: self.gens.r1(),
            r2: self.gens.r2(),
            z: self.gens.z(),
            diameter: profile.diameter(),
            layer_sizes: profile.layer_sizes(),
        })
    }
}

impl DistanceProfile {
    pub fn diameter(&self) -> u32 {
        (self.layers.len() - 1) as u32
    }

    pub fn distance(&self, v: u64) -> u32 {
        self.dist[v as usize]
    }

    pub fn layers(&self) -> &[Vec<u64>] {
        &self.layers
    }

    pub fn layer_sizes(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.len() as u64).collect()
    }

    /// Vertices within distance `j` of the origin.
    pub fn ball_size(&self, j: u32) -> u64 {
        self.layers
            .iter()
            .take(j as usize + 1)
            .map(|l| l.len() as u64)
            .sum()
    }
}

impl SplitLayers {
    pub fn sizes(&self) -> Vec<(u64, u64)> {
        self.avoiding
            .iter()
            .zip(&self.through)
            .map(|(a, t)| (a.len() as u64, t.len() as u64))
            .collect()
    }

    /// Totals over all layers: vertices with an involution-free shortest
    /// path vs. the rest.
    pub fn totals(&self) -> (u64, u64) {
        let a = self.avoiding.iter().map(Vec::len).sum::<usize>() as u64;
        let t = self.through.iter().map(Vec::len).sum::<usize>() as u64;
        (a, t)
    }
}
