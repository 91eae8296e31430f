//! Exact and approximate oracles: minimum dominating set (subset enumeration
//! and branch-and-bound), greedy dominating set, and k-clique search.
//!
//! Both exact modes return the lexicographically least optimal set, so they
//! can be cross-checked set-for-set and results are stable across runs.

use crate::graphs::{is_dominating, DominatingSetResult, Graph};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph with {n} vertices exceeds the {cap}-vertex cap for {mode}")]
    TooLarge { n: usize, cap: usize, mode: String },
    #[error("budget must be positive")]
    EmptyBudget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    ExactEnum,
    ExactBranchBound,
    Greedy,
}

/// Search limits. `max_nodes` caps search-tree nodes; `time_cap_ms`, when
/// set, is a wall-clock cap checked periodically. On exhaustion of either
/// the solver returns its best incumbent with sound bounds and `optimal`
/// unset. Node caps keep results reproducible; time caps trade that away.
#[derive(Debug, Clone, Copy)]
pub struct SolverBudget {
    pub max_nodes: u64,
    pub time_cap_ms: Option<u64>,
    pub mode: SolverMode,
}

impl SolverBudget {
    pub fn exact_enum() -> Self {
        Self {
            max_nodes: 200_000_000,
            time_cap_ms: None,
            mode: SolverMode::ExactEnum,
        }
    }

    pub fn exact_bb() -> Self {
        Self {
            max_nodes: 200_000_000,
            time_cap_ms: None,
            mode: SolverMode::ExactBranchBound,
        }
    }

    pub fn greedy() -> Self {
        Self {
            max_nodes: 1,
            time_cap_ms: None,
            mode: SolverMode::Greedy,
        }
    }

    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_time_cap_ms(mut self, cap: u64) -> Self {
        self.time_cap_ms = Some(cap);
        self
    }

    pub(crate) fn deadline(&self) -> Option<std::time::Instant> {
        self.time_cap_ms
            .map(|ms| std::time::Instant::now() + std::time::Duration::from_millis(ms))
    }
}

// Shared budget bookkeeping for the exact searches.
pub(crate) struct Ticker {
    nodes: u64,
    max_nodes: u64,
    deadline: Option<std::time::Instant>,
    pub(crate) exhausted: bool,
}

impl Ticker {
    pub(crate) fn new(max_nodes: u64, deadline: Option<std::time::Instant>) -> Self {
        Self {
            nodes: 0,
            max_nodes,
            deadline,
            exhausted: false,
        }
    }

    /// Counts a node; returns false once any budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if std::time::Instant::now() >= deadline {
                    self.exhausted = true;
                }
            }
        }
        !self.exhausted
    }
}

// Plain bitset over vertex indices 0..len.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    fn or_assign(&mut self, other: &Bits) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn covers_all(&self) -> bool {
        let full_words = self.len / 64;
        if self.words[..full_words].iter().any(|&w| w != u64::MAX) {
            return false;
        }
        let rem = self.len % 64;
        rem == 0 || self.words[full_words] & ((1u64 << rem) - 1) == (1u64 << rem) - 1
    }

    fn first_unset(&self) -> Option<usize> {
        (0..self.len).find(|&i| !self.get(i))
    }

    fn disjoint(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

fn closed_neighborhoods(g: &Graph) -> Vec<Bits> {
    let n = g.n();
    let mut masks = Vec::with_capacity(n);
    for v in 1..=n as u32 {
        let mut b = Bits::new(n);
        b.set(v as usize - 1);
        for u in g.neighbors(v) {
            b.set(u as usize - 1);
        }
        masks.push(b);
    }
    masks
}

/// Greedy packing of vertices with pairwise disjoint closed neighborhoods,
/// restricted to currently uncovered vertices. Each packed vertex needs its
/// own dominator, so the packing size lower-bounds the remaining cost.
fn packing_bound(n: usize, closed: &[Bits], covered: &Bits) -> usize {
    let mut taken: Vec<&Bits> = Vec::new();
    let mut count = 0;
    for (v, mask) in closed.iter().enumerate().take(n) {
        if covered.get(v) {
            continue;
        }
        if taken.iter().all(|t| t.disjoint(mask)) {
            taken.push(mask);
            count += 1;
        }
    }
    count
}

fn greedy_with_bound(g: &Graph) -> (BTreeSet<u32>, usize) {
    let n = g.n();
    let closed = closed_neighborhoods(g);
    let mut covered = Bits::new(n);
    let lb = packing_bound(n, &closed, &covered);
    let mut chosen = BTreeSet::new();
    while !covered.covers_all() {
        let mut best_v = 0usize;
        let mut best_gain = 0usize;
        for (v, mask) in closed.iter().enumerate() {
            let gain = mask
                .words
                .iter()
                .zip(&covered.words)
                .map(|(c, k)| (c & !k).count_ones() as usize)
                .sum();
            if gain > best_gain {
                best_gain = gain;
                best_v = v;
            }
        }
        debug_assert!(best_gain > 0);
        chosen.insert(best_v as u32 + 1);
        let mask = closed[best_v].clone();
        covered.or_assign(&mask);
    }
    (chosen, lb)
}

/// Greedy approximation: repeatedly takes the vertex whose closed
/// neighborhood covers the most currently uncovered vertices, smallest id on
/// ties.
pub fn greedy_dominating_set(g: &Graph) -> DominatingSetResult {
    let (chosen, lb) = greedy_with_bound(g);
    let optimal = chosen.len() == lb;
    let result = DominatingSetResult::new(chosen, lb, optimal);
    debug_assert!(result.verify(g).unwrap_or(false) || g.n() == 0);
    result
}

struct EnumSearch<'a> {
    closed: &'a [Bits],
    suffix_union: Vec<Bits>,
    n: usize,
    ticker: Ticker,
}

impl EnumSearch<'_> {
    // Lexicographically first dominating set of exactly `need` more vertices
    // drawn from start.., given already-covered mask.
    fn find(&mut self, start: usize, need: usize, covered: &Bits, picked: &mut Vec<u32>) -> bool {
        if !self.ticker.tick() {
            return false;
        }
        if covered.covers_all() {
            return need == 0;
        }
        if need == 0 || start >= self.n {
            return false;
        }
        // No completion from here can cover what the suffix cannot reach.
        let mut reach = covered.clone();
        reach.or_assign(&self.suffix_union[start]);
        if !reach.covers_all() {
            return false;
        }
        for v in start..=(self.n - need) {
            let mut next = covered.clone();
            next.or_assign(&self.closed[v]);
            picked.push(v as u32 + 1);
            if self.find(v + 1, need - 1, &next, picked) {
                return true;
            }
            picked.pop();
            if self.ticker.exhausted {
                return false;
            }
        }
        false
    }
}

fn exact_enum(g: &Graph, budget: &SolverBudget) -> Result<DominatingSetResult, SolverError> {
    let n = g.n();
    if n > 64 {
        return Err(SolverError::TooLarge {
            n,
            cap: 64,
            mode: "exact_enum".into(),
        });
    }
    if n == 0 {
        return Ok(DominatingSetResult::new(BTreeSet::new(), 0, true));
    }
    let closed = closed_neighborhoods(g);
    let mut suffix_union = vec![Bits::new(n); n + 1];
    for v in (0..n).rev() {
        suffix_union[v] = suffix_union[v + 1].clone();
        suffix_union[v].or_assign(&closed[v]);
    }
    let empty = Bits::new(n);
    let lb = packing_bound(n, &closed, &empty);
    let mut search = EnumSearch {
        closed: &closed,
        suffix_union,
        n,
        ticker: Ticker::new(budget.max_nodes, budget.deadline()),
    };
    for size in lb.max(1)..=n {
        let mut picked = Vec::with_capacity(size);
        if search.find(0, size, &empty, &mut picked) {
            let set: BTreeSet<u32> = picked.into_iter().collect();
            return Ok(DominatingSetResult::new(set, size, true));
        }
        if search.ticker.exhausted {
            // Sizes below `size` are fully ruled out; fall back to greedy
            // for a valid upper bound.
            let (greedy, _) = greedy_with_bound(g);
            return Ok(DominatingSetResult::new(greedy, size, false));
        }
    }
    unreachable!("the full vertex set always dominates");
}

struct BbSearch<'a> {
    g: &'a Graph,
    closed: &'a [Bits],
    n: usize,
    best: BTreeSet<u32>,
    best_size: usize,
    ticker: Ticker,
}

fn lex_less(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x != y {
            return x < y;
        }
    }
    a.len() < b.len()
}

impl BbSearch<'_> {
    fn run(&mut self, current: &mut BTreeSet<u32>, covered: &Bits) {
        if !self.ticker.tick() {
            return;
        }
        let Some(v) = covered.first_unset() else {
            if current.len() < self.best_size
                || (current.len() == self.best_size && lex_less(current, &self.best))
            {
                self.best = current.clone();
                self.best_size = current.len();
            }
            return;
        };
        let lb = packing_bound(self.n, self.closed, covered);
        // Keep equal-cost branches alive so the lexicographic tie-break sees
        // every optimal set.
        if current.len() + lb > self.best_size {
            return;
        }
        let vertex = v as u32 + 1;
        let mut candidates: Vec<u32> = vec![vertex];
        candidates.extend(self.g.neighbors(vertex));
        candidates.sort_unstable();
        for u in candidates {
            let mut next = covered.clone();
            next.or_assign(&self.closed[u as usize - 1]);
            current.insert(u);
            self.run(current, &next);
            current.remove(&u);
            if self.ticker.exhausted {
                return;
            }
        }
    }
}

fn exact_bb(g: &Graph, budget: &SolverBudget) -> Result<DominatingSetResult, SolverError> {
    let n = g.n();
    if n == 0 {
        return Ok(DominatingSetResult::new(BTreeSet::new(), 0, true));
    }
    let closed = closed_neighborhoods(g);
    let empty = Bits::new(n);
    let root_lb = packing_bound(n, &closed, &empty);
    let (greedy, _) = greedy_with_bound(g);
    let mut search = BbSearch {
        g,
        closed: &closed,
        n,
        best_size: greedy.len(),
        best: greedy,
        ticker: Ticker::new(budget.max_nodes, budget.deadline()),
    };
    let mut current = BTreeSet::new();
    search.run(&mut current, &empty);
    if search.ticker.exhausted {
        let size = search.best_size;
        return Ok(DominatingSetResult::new(
            search.best,
            root_lb.min(size),
            false,
        ));
    }
    let size = search.best_size;
    Ok(DominatingSetResult::new(search.best, size, true))
}

/// Minimum dominating set under the given budget. Exact modes certify
/// optimality (`gamma_lower_bound == size`) unless the node budget runs out,
/// in which case the result carries sound lower and upper bounds.
pub fn exact_min_dominating_set(
    g: &Graph,
    budget: SolverBudget,
) -> Result<DominatingSetResult, SolverError> {
    if budget.max_nodes == 0 {
        return Err(SolverError::EmptyBudget);
    }
    let result = match budget.mode {
        SolverMode::ExactEnum => exact_enum(g, &budget)?,
        SolverMode::ExactBranchBound => exact_bb(g, &budget)?,
        SolverMode::Greedy => greedy_dominating_set(g),
    };
    debug_assert!(g.n() == 0 || is_dominating(g, &result.vertices).unwrap_or(false));
    Ok(result)
}

/// Searches for a clique of size at least `k`; returns the lexicographically
/// first witness of size exactly `k`, or `None`.
pub fn has_k_clique(g: &Graph, k: usize) -> Option<BTreeSet<u32>> {
    if k == 0 {
        return Some(BTreeSet::new());
    }
    if k > g.n() {
        return None;
    }
    let candidates: Vec<u32> = g.vertices().collect();
    let mut current = Vec::with_capacity(k);
    if extend_clique(g, &candidates, k, &mut current) {
        Some(current.into_iter().collect())
    } else {
        None
    }
}

fn extend_clique(g: &Graph, candidates: &[u32], need: usize, current: &mut Vec<u32>) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.len() < need {
        return false;
    }
    for (idx, &v) in candidates.iter().enumerate() {
        if candidates.len() - idx < need {
            break;
        }
        let next: Vec<u32> = candidates[idx + 1..]
            .iter()
            .copied()
            .filter(|&u| g.has_edge(u, v))
            .collect();
        current.push(v);
        if extend_clique(g, &next, need - 1, current) {
            return true;
        }
        current.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detrand::SplitMix64;
    use crate::graphs::Graph;

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..=n as u32 {
            let w = if v as usize == n { 1 } else { v + 1 };
            g.add_edge(v, w).unwrap();
        }
        g
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn star(leaves: usize) -> Graph {
        let mut g = Graph::new(leaves + 1);
        for v in 2..=(leaves + 1) as u32 {
            g.add_edge(1, v).unwrap();
        }
        g
    }

    fn random_graph(rng: &mut SplitMix64, n: usize, num: u64, den: u64) -> Graph {
        let mut g = Graph::new(n);
        for u in 1..=n as u32 {
            for v in (u + 1)..=n as u32 {
                if rng.chance(num, den) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn complete_graph_needs_one_vertex() {
        for mode in [SolverMode::ExactEnum, SolverMode::ExactBranchBound] {
            let r = exact_min_dominating_set(
                &complete(6),
                SolverBudget {
                    max_nodes: 1_000_000,
                    time_cap_ms: None,
                    mode,
                },
            )
            .unwrap();
            assert_eq!(r.size, 1);
            assert_eq!(r.vertices, [1].into_iter().collect());
            assert!(r.optimal);
            assert_eq!(r.gamma_lower_bound, 1);
        }
    }

    #[test]
    fn c5_needs_two() {
        let r = exact_min_dominating_set(&cycle(5), SolverBudget::exact_enum()).unwrap();
        assert_eq!(r.size, 2);
        assert!(r.optimal);
    }

    #[test]
    fn edgeless_needs_everything() {
        let g = Graph::new(4);
        let r = exact_min_dominating_set(&g, SolverBudget::exact_bb()).unwrap();
        assert_eq!(r.size, 4);
        assert_eq!(r.vertices, (1..=4).collect());
    }

    #[test]
    fn lexicographic_tie_break_agrees() {
        // C4 has several optimal pairs; both modes must return {1, 2}.
        let g = cycle(4);
        let a = exact_min_dominating_set(&g, SolverBudget::exact_enum()).unwrap();
        let b = exact_min_dominating_set(&g, SolverBudget::exact_bb()).unwrap();
        assert_eq!(a.vertices, [1, 2].into_iter().collect());
        assert_eq!(a.vertices, b.vertices);
    }

    #[test]
    fn enum_and_bb_agree_on_random_graphs() {
        let mut rng = SplitMix64::new(42);
        for trial in 0..40 {
            let n = 2 + (trial % 11) as usize;
            let g = random_graph(&mut rng, n, 1, 3);
            let a = exact_min_dominating_set(&g, SolverBudget::exact_enum()).unwrap();
            let b = exact_min_dominating_set(&g, SolverBudget::exact_bb()).unwrap();
            assert!(a.optimal && b.optimal);
            assert_eq!(a.size, b.size, "size mismatch on {g:?}");
            assert_eq!(a.vertices, b.vertices, "set mismatch on {g:?}");
        }
    }

    #[test]
    fn no_smaller_dominating_set_exists() {
        // Exhaustively confirm minimality on small graphs.
        let mut rng = SplitMix64::new(17);
        for _ in 0..20 {
            let n = 2 + rng.next_below(7) as usize;
            let g = random_graph(&mut rng, n, 2, 5);
            let r = exact_min_dominating_set(&g, SolverBudget::exact_enum()).unwrap();
            assert!(is_dominating(&g, &r.vertices).unwrap());
            for mask in 0u32..(1 << n) {
                if (mask.count_ones() as usize) < r.size {
                    let d: std::collections::BTreeSet<u32> = (0..n as u32)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| i + 1)
                        .collect();
                    assert!(!is_dominating(&g, &d).unwrap());
                }
            }
        }
    }

    #[test]
    fn greedy_star_picks_center() {
        let r = greedy_dominating_set(&star(6));
        assert_eq!(r.size, 1);
        assert_eq!(r.vertices, [1].into_iter().collect());
    }

    #[test]
    fn greedy_is_dominating_and_bounded() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..30 {
            let n = 2 + rng.next_below(12) as usize;
            let g = random_graph(&mut rng, n, 1, 4);
            let greedy = greedy_dominating_set(&g);
            assert!(is_dominating(&g, &greedy.vertices).unwrap());
            let exact = exact_min_dominating_set(&g, SolverBudget::exact_bb()).unwrap();
            assert!(greedy.size >= exact.size);
            let bound = ((n as f64).ln() + 1.0) * exact.size as f64;
            assert!(greedy.size as f64 <= bound + 1e-9);
        }
    }

    #[test]
    fn budget_exhaustion_returns_flagged_bounds() {
        let g = random_graph(&mut SplitMix64::new(8), 16, 1, 3);
        let r = exact_min_dominating_set(
            &g,
            SolverBudget {
                max_nodes: 3,
                time_cap_ms: None,
                mode: SolverMode::ExactBranchBound,
            },
        )
        .unwrap();
        assert!(!r.optimal);
        assert!(r.gamma_lower_bound <= r.size);
        assert!(is_dominating(&g, &r.vertices).unwrap());
        let exact = exact_min_dominating_set(&g, SolverBudget::exact_bb()).unwrap();
        assert!(r.gamma_lower_bound <= exact.size);
        assert!(r.size >= exact.size);
    }

    #[test]
    fn time_cap_yields_flagged_result() {
        let g = random_graph(&mut SplitMix64::new(12), 20, 1, 3);
        let r = exact_min_dominating_set(&g, SolverBudget::exact_bb().with_time_cap_ms(0)).unwrap();
        // A zero deadline may or may not fire before the search ends on a
        // fast machine; either way the result must be sound.
        assert!(is_dominating(&g, &r.vertices).unwrap());
        assert!(r.gamma_lower_bound <= r.size);
    }

    #[test]
    fn enum_rejects_big_graphs() {
        let g = Graph::new(65);
        assert!(matches!(
            exact_min_dominating_set(&g, SolverBudget::exact_enum()),
            Err(SolverError::TooLarge { .. })
        ));
    }

    #[test]
    fn clique_on_k5() {
        let w = has_k_clique(&complete(5), 5).unwrap();
        assert_eq!(w, (1..=5).collect());
    }

    #[test]
    fn c5_is_triangle_free() {
        assert!(has_k_clique(&cycle(5), 3).is_none());
        assert!(has_k_clique(&cycle(5), 2).is_some());
    }

    #[test]
    fn clique_witness_is_lexicographically_first() {
        // Two triangles {1,4,5} and {2,3,6}: first by lex order is {1,4,5}.
        let g = Graph::from_edges(6, [(1, 4), (1, 5), (4, 5), (2, 3), (2, 6), (3, 6)]).unwrap();
        let w = has_k_clique(&g, 3).unwrap();
        assert_eq!(w, [1, 4, 5].into_iter().collect());
    }

    #[test]
    fn clique_agrees_with_complement_independent_set() {
        // Independent oracle: brute-force independent sets of the complement.
        fn has_independent_set(g: &Graph, k: usize) -> bool {
            let n = g.n();
            for mask in 0u32..(1u32 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let verts: Vec<u32> = (0..n as u32)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| i + 1)
                    .collect();
                let ok = verts
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| verts[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
                if ok {
                    return true;
                }
            }
            false
        }
        let mut rng = SplitMix64::new(77);
        for _ in 0..25 {
            let n = 2 + rng.next_below(9) as usize;
            let g = random_graph(&mut rng, n, 1, 2);
            let co = g.complement();
            for k in 1..=n.min(5) {
                assert_eq!(
                    has_k_clique(&g, k).is_some(),
                    has_independent_set(&co, k),
                    "disagreement at n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn clique_witnesses_are_cliques() {
        let mut rng = SplitMix64::new(55);
        for _ in 0..25 {
            let n = 3 + rng.next_below(8) as usize;
            let g = random_graph(&mut rng, n, 1, 2);
            for k in 1..=4usize {
                if let Some(w) = has_k_clique(&g, k) {
                    assert_eq!(w.len(), k);
                    let verts: Vec<u32> = w.iter().copied().collect();
                    for (i, &u) in verts.iter().enumerate() {
                        for &v in &verts[i + 1..] {
                            assert!(g.has_edge(u, v));
                        }
                    }
                }
            }
        }
    }
}
