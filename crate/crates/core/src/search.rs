//! Pruned exhaustive search over Abelian groups and classified generator
//! sets for a given signature `(r1, r2, z)` and diameter `k`.
//!
//! Orders descend from the Moore bound; for each order every isomorphism
//! class of group and every generator set with the requested signature is
//! enumerated (deduplicated by sorted representatives within each bucket)
//! and checked by early-exit BFS. Pruning is conservative only: parity of
//! the order, signature filtering, and lexicographic bucket ordering; no
//! automorphism reduction. Results are merged deterministically, so the
//! outcome does not depend on the number of worker threads.

use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{ac_bound_default, AcBoundParams};
use crate::error::{Error, Result};
use crate::group::{groups_of_order, AbelianGroup, GroupElement};
use crate::mixedgraph::{bfs_distances, CayleyMixedGraph};

/// Resource limits for a search. Candidate budgets cut deterministically;
/// the time budget is checked between batches, so it is a soft limit.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub max_candidates: Option<u64>,
    pub max_seconds: Option<f64>,
}

/// What to search: signature, diameter, order range, limits.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub r1: u32,
    pub r2: u32,
    pub z: u32,
    pub k: u32,
    pub n_min: u64,
    pub n_max: u64,
    pub budget: Budget,
    /// Worker threads for candidate evaluation; 1 = sequential.
    pub jobs: usize,
    /// Collect every witness at the best order instead of the first.
    pub all_witnesses: bool,
}

impl SearchSpec {
    /// Spec with the default order range `[2, M_AC(r1, r2, z, k)]`.
    pub fn new(r1: u32, r2: u32, z: u32, k: u32) -> Result<Self> {
        let bound = ac_bound_default(r1, r2, z, k);
        let n_max = bound.to_u64().ok_or_else(|| {
            Error::InvalidParameter(format!("Moore bound {bound} exceeds the search range"))
        })?;
        Ok(SearchSpec {
            r1,
            r2,
            z,
            k,
            n_min: 2,
            n_max,
            budget: Budget::default(),
            jobs: 1,
            all_witnesses: false,
        })
    }
}

/// A verified search hit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub group: AbelianGroup,
    pub generators: Vec<Vec<i64>>,
    pub diameter: u32,
    pub layer_sizes: Vec<u64>,
}

/// Outcome of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub r1: u32,
    pub r2: u32,
    pub z: u32,
    pub k: u32,
    pub n_min: u64,
    pub n_max: u64,
    /// Largest order admitting diameter at most `k`, if any was found.
    pub best_order: Option<u64>,
    pub witnesses: Vec<Witness>,
    /// True only if every (group, generator set) in range was examined or
    /// soundly pruned.
    pub exhausted: bool,
    pub candidates_examined: u64,
}

/// Progress callback events (order started, group finished).
#[derive(Clone, Copy, Debug)]
pub enum Progress<'a> {
    Order {
        n: u64,
    },
    Group {
        n: u64,
        group: &'a AbelianGroup,
        candidates: u64,
        hits: usize,
    },
}

/// One candidate generator set, in bucket form.
#[derive(Clone, Debug)]
struct Candidate {
    involutions: Vec<GroupElement>,
    pairs: Vec<GroupElement>,
    directed: Vec<GroupElement>,
}

impl Candidate {
    fn steps(&self, group: &AbelianGroup) -> Vec<GroupElement> {
        let mut steps = self.involutions.clone();
        for a in &self.pairs {
            steps.push(a.clone());
            steps.push(group.negate(a).expect("element of the group"));
        }
        steps.extend(self.directed.iter().cloned());
        steps
    }

    fn raw(&self, group: &AbelianGroup) -> Vec<Vec<i64>> {
        let mut raw: Vec<GroupElement> = self.steps(group);
        raw.sort();
        raw.iter().map(GroupElement::coords_i64).collect()
    }
}

fn combinations<T: Clone>(items: &[T], take: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(
        items: &[T],
        take: usize,
        start: usize,
        cur: &mut Vec<T>,
        out: &mut Vec<Vec<T>>,
    ) {
        if cur.len() == take {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, take, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, take, 0, &mut Vec::new(), &mut out);
    out
}

/// All generator sets of the given signature over `group`, in lexicographic
/// bucket order.
fn enumerate_candidates(group: &AbelianGroup, r1: u32, r2: u32, z: u32) -> Vec<Candidate> {
    let zero = group.zero();
    let mut involutions = Vec::new();
    let mut pair_reps = Vec::new();
    let mut others = Vec::new();
    for a in group.elements() {
        if a == zero {
            continue;
        }
        if group.is_involution(&a).expect("element of the group") {
            involutions.push(a);
        } else {
            let neg = group.negate(&a).expect("element of the group");
            if a < neg {
                pair_reps.push(a.clone());
            }
            others.push(a);
        }
    }

    let inv_choices = combinations(&involutions, r1 as usize);
    let pair_choices = combinations(&pair_reps, r2 as usize);

    let mut out = Vec::new();
    for inv in &inv_choices {
        for pairs in &pair_choices {
            // Directed generators may not collide with a chosen pair (in
            // either sign) and no two may be mutually inverse.
            let mut closed: Vec<GroupElement> = Vec::new();
            for p in pairs {
                closed.push(p.clone());
                closed.push(group.negate(p).expect("element of the group"));
            }
            let directed_pool: Vec<GroupElement> = others
                .iter()
                .filter(|a| !closed.contains(a))
                .cloned()
                .collect();
            for directed in combinations(&directed_pool, z as usize) {
                let mut ok = true;
                'outer: for (i, a) in directed.iter().enumerate() {
                    let neg = group.negate(a).expect("element of the group");
                    for b in directed.iter().skip(i + 1) {
                        if *b == neg {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                if ok {
                    out.push(Candidate {
                        involutions: inv.clone(),
                        pairs: pairs.clone(),
                        directed,
                    });
                }
            }
        }
    }
    out
}

/// Evaluates one candidate: `Some(diameter)` iff the set reaches every
/// vertex within distance `k` (non-generating sets simply fail the cover).
fn evaluate(group: &AbelianGroup, cand: &Candidate, k: u32) -> Option<u32> {
    let steps = cand.steps(group);
    let dist = bfs_distances(group, &steps, group.index_of(&group.zero()), Some(k));
    let mut max = 0u32;
    for &d in &dist {
        if d == u32::MAX {
            return None;
        }
        max = max.max(d);
    }
    Some(max)
}

/// Exhaustive search descending from `n_max`. See [`SearchSpec`].
pub fn exhaustive_search(spec: &SearchSpec) -> Result<SearchResult> {
    exhaustive_search_with_progress(spec, &mut |_| {})
}

/// Search variant reporting progress through a callback.
pub fn exhaustive_search_with_progress(
    spec: &SearchSpec,
    progress: &mut dyn FnMut(Progress),
) -> Result<SearchResult> {
    let started = Instant::now();
    let mut examined = 0u64;
    let mut result = SearchResult {
        r1: spec.r1,
        r2: spec.r2,
        z: spec.z,
        k: spec.k,
        n_min: spec.n_min,
        n_max: spec.n_max,
        best_order: None,
        witnesses: Vec::new(),
        exhausted: true,
        candidates_examined: 0,
    };
    let pool = (spec.jobs > 1)
        .then(|| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(spec.jobs)
                .build()
        })
        .transpose()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;

    let mut n = spec.n_max;
    while n >= spec.n_min.max(2) {
        // An involution forces even order.
        if spec.r1 >= 1 && n % 2 == 1 {
            n -= 1;
            continue;
        }
        progress(Progress::Order { n });
        let mut hits_at_n: Vec<Witness> = Vec::new();
        for group in groups_of_order(n) {
            let over_time = spec
                .budget
                .max_seconds
                .is_some_and(|s| started.elapsed().as_secs_f64() > s);
            if over_time {
                result.exhausted = false;
                result.candidates_examined = examined;
                return Ok(result);
            }
            let mut candidates = enumerate_candidates(&group, spec.r1, spec.r2, spec.z);
            if let Some(maxc) = spec.budget.max_candidates {
                let left = maxc.saturating_sub(examined);
                if (candidates.len() as u64) > left {
                    candidates.truncate(left as usize);
                    result.exhausted = false;
                }
            }
            examined += candidates.len() as u64;

            let eval_all = |cands: &[Candidate]| -> Vec<(usize, u32)> {
                match &pool {
                    Some(pool) => pool.install(|| {
                        cands
                            .par_iter()
                            .enumerate()
                            .filter_map(|(i, c)| evaluate(&group, c, spec.k).map(|d| (i, d)))
                            .collect()
                    }),
                    None => cands
                        .iter()
                        .enumerate()
                        .filter_map(|(i, c)| evaluate(&group, c, spec.k).map(|d| (i, d)))
                        .collect(),
                }
            };
            let mut hits = eval_all(&candidates);
            hits.sort_by_key(|&(i, _)| i);
            progress(Progress::Group {
                n,
                group: &group,
                candidates: candidates.len() as u64,
                hits: hits.len(),
            });
            for (i, _) in &hits {
                // Independent single-threaded re-verification of the hit.
                let raw = candidates[*i].raw(&group);
                let graph = CayleyMixedGraph::from_generators(&group, &raw)?;
                let report = graph.report()?;
                debug_assert!(report.diameter <= spec.k);
                hits_at_n.push(Witness {
                    group: group.clone(),
                    generators: raw,
                    diameter: report.diameter,
                    layer_sizes: report.layer_sizes,
                });
            }
            if !result.exhausted {
                // Candidate budget ran out inside this group.
                result.best_order = (!hits_at_n.is_empty()).then_some(n);
                result.witnesses = hits_at_n;
                result.candidates_examined = examined;
                return Ok(result);
            }
        }
        if !hits_at_n.is_empty() {
            result.best_order = Some(n);
            result.witnesses = if spec.all_witnesses {
                hits_at_n
            } else {
                hits_at_n.truncate(1);
                hits_at_n
            };
            result.candidates_examined = examined;
            return Ok(result);
        }
        n -= 1;
    }
    result.candidates_examined = examined;
    Ok(result)
}

/// How a non-existence verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NonexistenceEvidence {
    /// The bound is odd, but one involution forces even order.
    OddOrderParity,
    /// Every group and generator set at the bound order was examined.
    ExhaustedSearch { candidates_examined: u64 },
    /// The search budget ran out first; no verdict.
    BudgetExhausted { candidates_examined: u64 },
}

/// Verdict for "is there a mixed Moore Abelian Cayley graph" at signature
/// `(1, 0, z)` and diameter `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonexistenceReport {
    pub r1: u32,
    pub z: u32,
    pub k: u32,
    pub bound: u64,
    pub attained: bool,
    pub evidence: NonexistenceEvidence,
    pub witnesses: Vec<Witness>,
}

/// Checks whether the Moore bound `M_AC(1, 0, z, k)` is attained, for
/// `z >= 2` and `k >= 2`. Odd bounds short-circuit by parity; otherwise the
/// search runs at exactly the bound order.
pub fn verify_moore_nonexistence(
    z: u32,
    k: u32,
    budget: Budget,
    jobs: usize,
) -> Result<NonexistenceReport> {
    if z < 2 || k < 2 {
        return Err(Error::InvalidParameter(
            "non-existence check is stated for z >= 2 and k >= 2".into(),
        ));
    }
    let bound_big = ac_bound_default(1, 0, z, k);
    let bound = bound_big.to_u64().ok_or_else(|| {
        Error::InvalidParameter(format!("bound {bound_big} exceeds the search range"))
    })?;
    let _ = AcBoundParams::new(1, 0, z, k);
    if bound % 2 == 1 {
        return Ok(NonexistenceReport {
            r1: 1,
            z,
            k,
            bound,
            attained: false,
            evidence: NonexistenceEvidence::OddOrderParity,
            witnesses: Vec::new(),
        });
    }
    let spec = SearchSpec {
        r1: 1,
        r2: 0,
        z,
        k,
        n_min: bound,
        n_max: bound,
        budget,
        jobs,
        all_witnesses: true,
    };
    let result = exhaustive_search(&spec)?;
    let evidence = if result.exhausted {
        NonexistenceEvidence::ExhaustedSearch {
            candidates_examined: result.candidates_examined,
        }
    } else {
        NonexistenceEvidence::BudgetExhausted {
            candidates_examined: result.candidates_examined,
        }
    };
    Ok(NonexistenceReport {
        r1: 1,
        z,
        k,
        bound,
        attained: result.best_order.is_some(),
        evidence,
        witnesses: result.witnesses,
    })
}
