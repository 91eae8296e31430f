//! Depth-2 monotone circuits (an AND of ORs over positive literals), the
//! graph-to-circuit translation under which dominating sets of size `w`
//! correspond exactly to satisfying assignments of weight `w`, and an exact
//! minimum-weight satisfiability search.
//!
//! The translation uses closed neighborhoods: the clause for vertex `v` is
//! `OR{X_u : u in N[v]}`, including `X_v` itself. Ranging over open
//! neighborhoods instead would let a chosen vertex fail its own clause and
//! break the weight correspondence.

use crate::graphs::{Graph, GraphError};
use crate::solvers::{SolverBudget, Ticker};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

pub const EXACT_VAR_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("clause {index} is empty")]
    EmptyClause { index: usize },
    #[error("clause {index} uses variable {var} outside 1..={num_vars}")]
    VarOutOfRange {
        index: usize,
        var: u32,
        num_vars: usize,
    },
    #[error("{num_vars} variables exceed the exact-search cap {cap}")]
    TooLarge { num_vars: usize, cap: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// AND of OR-clauses over positive literals `X_1..X_num_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCircuit {
    num_vars: usize,
    clauses: Vec<BTreeSet<u32>>,
}

impl MonotoneCircuit {
    pub fn new(num_vars: usize, clauses: Vec<BTreeSet<u32>>) -> Result<Self, CircuitError> {
        for (index, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CircuitError::EmptyClause { index });
            }
            if let Some(&var) = clause.iter().find(|&&v| v == 0 || v as usize > num_vars) {
                return Err(CircuitError::VarOutOfRange {
                    index,
                    var,
                    num_vars,
                });
            }
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[BTreeSet<u32>] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, true_vars: &BTreeSet<u32>) -> bool {
        self.clauses.iter().all(|c| !c.is_disjoint(true_vars))
    }

    /// Text form: `vars <n>` then one `or <i> <j> ...` line per clause.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vars {}", self.num_vars);
        for clause in &self.clauses {
            out.push_str("or");
            for v in clause {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, CircuitError> {
        let mut num_vars: Option<usize> = None;
        let mut clauses = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vars") {
                if num_vars.is_some() {
                    return Err(CircuitError::Parse {
                        line: line_no,
                        msg: "duplicate vars line".into(),
                    });
                }
                num_vars = Some(rest.trim().parse().map_err(|_| CircuitError::Parse {
                    line: line_no,
                    msg: format!("bad variable count {:?}", rest.trim()),
                })?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("or") {
                if num_vars.is_none() {
                    return Err(CircuitError::Parse {
                        line: line_no,
                        msg: "clause before vars line".into(),
                    });
                }
                let mut clause = BTreeSet::new();
                for field in rest.split_ascii_whitespace() {
                    let v: u32 = field.parse().map_err(|_| CircuitError::Parse {
                        line: line_no,
                        msg: format!("bad literal {field:?}"),
                    })?;
                    clause.insert(v);
                }
                clauses.push(clause);
                continue;
            }
            return Err(CircuitError::Parse {
                line: line_no,
                msg: format!("unrecognized line {line:?}"),
            });
        }
        let num_vars = num_vars.ok_or(CircuitError::Parse {
            line: 0,
            msg: "missing vars line".into(),
        })?;
        Self::new(num_vars, clauses)
    }
}

/// One variable per vertex, one clause per vertex over its closed
/// neighborhood. Dominating sets of size `w` correspond one-to-one to
/// satisfying assignments of weight `w`.
pub fn graph_to_circuit(g: &Graph) -> MonotoneCircuit {
    let clauses: Vec<BTreeSet<u32>> = g
        .vertices()
        .map(|v| {
            let mut clause: BTreeSet<u32> = g.neighbors(v).collect();
            clause.insert(v);
            clause
        })
        .collect();
    MonotoneCircuit::new(g.n(), clauses).expect("closed neighborhoods are valid clauses")
}

/// A satisfying assignment and what is provably known about its weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentResult {
    pub true_vars: BTreeSet<u32>,
    pub weight: usize,
    pub weight_lower_bound: usize,
    pub optimal: bool,
}

struct CircuitSearch<'a> {
    clauses: &'a [BTreeSet<u32>],
    best: BTreeSet<u32>,
    best_weight: usize,
    ticker: Ticker,
}

fn clause_packing_bound(clauses: &[BTreeSet<u32>], satisfied: &[bool]) -> usize {
    let mut used: BTreeSet<u32> = BTreeSet::new();
    let mut count = 0;
    for (clause, &sat) in clauses.iter().zip(satisfied) {
        if sat {
            continue;
        }
        if clause.iter().all(|v| !used.contains(v)) {
            used.extend(clause.iter().copied());
            count += 1;
        }
    }
    count
}

fn lex_less(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> bool {
    for (x, y) in a.iter().zip(b.iter()) {
        if x != y {
            return x < y;
        }
    }
    a.len() < b.len()
}

impl CircuitSearch<'_> {
    fn run(&mut self, current: &mut BTreeSet<u32>, satisfied: &mut Vec<bool>) {
        if !self.ticker.tick() {
            return;
        }
        let Some(open) = satisfied.iter().position(|&s| !s) else {
            if current.len() < self.best_weight
                || (current.len() == self.best_weight && lex_less(current, &self.best))
            {
                self.best = current.clone();
                self.best_weight = current.len();
            }
            return;
        };
        let lb = clause_packing_bound(self.clauses, satisfied);
        if current.len() + lb > self.best_weight {
            return;
        }
        let candidates: Vec<u32> = self.clauses[open].iter().copied().collect();
        for v in candidates {
            let flipped: Vec<usize> = self
                .clauses
                .iter()
                .enumerate()
                .filter(|(i, c)| !satisfied[*i] && c.contains(&v))
                .map(|(i, _)| i)
                .collect();
            for &i in &flipped {
                satisfied[i] = true;
            }
            current.insert(v);
            self.run(current, satisfied);
            current.remove(&v);
            for &i in &flipped {
                satisfied[i] = false;
            }
            if self.ticker.exhausted {
                return;
            }
        }
    }
}

fn greedy_cover(circuit: &MonotoneCircuit) -> BTreeSet<u32> {
    let mut satisfied = vec![false; circuit.clauses.len()];
    let mut chosen = BTreeSet::new();
    while satisfied.iter().any(|&s| !s) {
        let mut best_v = 0u32;
        let mut best_gain = 0usize;
        for v in 1..=circuit.num_vars as u32 {
            let gain = circuit
                .clauses
                .iter()
                .zip(&satisfied)
                .filter(|(c, &s)| !s && c.contains(&v))
                .count();
            if gain > best_gain {
                best_gain = gain;
                best_v = v;
            }
        }
        debug_assert!(best_gain > 0, "nonempty clauses always have a candidate");
        chosen.insert(best_v);
        for (i, clause) in circuit.clauses.iter().enumerate() {
            if clause.contains(&best_v) {
                satisfied[i] = true;
            }
        }
    }
    chosen
}

/// Minimum-weight satisfying assignment, lexicographically least among the
/// optima. On budget exhaustion the incumbent is returned with sound bounds
/// and `optimal` unset.
pub fn min_weight_satisfying(
    circuit: &MonotoneCircuit,
    budget: SolverBudget,
) -> Result<AssignmentResult, CircuitError> {
    if circuit.num_vars > EXACT_VAR_CAP {
        return Err(CircuitError::TooLarge {
            num_vars: circuit.num_vars,
            cap: EXACT_VAR_CAP,
        });
    }
    if circuit.clauses.is_empty() {
        return Ok(AssignmentResult {
            true_vars: BTreeSet::new(),
            weight: 0,
            weight_lower_bound: 0,
            optimal: true,
        });
    }
    let root_lb = clause_packing_bound(&circuit.clauses, &vec![false; circuit.clauses.len()]);
    let greedy = greedy_cover(circuit);
    let mut search = CircuitSearch {
        clauses: &circuit.clauses,
        best_weight: greedy.len(),
        best: greedy,
        ticker: Ticker::new(budget.max_nodes, budget.deadline()),
    };
    let mut current = BTreeSet::new();
    let mut satisfied = vec![false; circuit.clauses.len()];
    search.run(&mut current, &mut satisfied);
    debug_assert!(circuit.is_satisfied_by(&search.best));
    let weight = search.best_weight;
    if search.ticker.exhausted {
        return Ok(AssignmentResult {
            true_vars: search.best,
            weight,
            weight_lower_bound: root_lb.min(weight),
            optimal: false,
        });
    }
    Ok(AssignmentResult {
        true_vars: search.best,
        weight,
        weight_lower_bound: weight,
        optimal: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detrand::SplitMix64;
    use crate::solvers::{exact_min_dominating_set, SolverBudget};

    fn clause(vars: &[u32]) -> BTreeSet<u32> {
        vars.iter().copied().collect()
    }

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..=n as u32 {
            let w = if v as usize == n { 1 } else { v + 1 };
            g.add_edge(v, w).unwrap();
        }
        g
    }

    // Independent oracle: scan all assignments by bitmask.
    fn brute_min_weight(c: &MonotoneCircuit) -> Option<usize> {
        let n = c.num_vars();
        (0u32..(1 << n))
            .filter(|mask| {
                let vars: BTreeSet<u32> = (0..n as u32)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| i + 1)
                    .collect();
                c.is_satisfied_by(&vars)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
    }

    #[test]
    fn k2_needs_one_variable() {
        let g = Graph::from_edges(2, [(1, 2)]).unwrap();
        let c = graph_to_circuit(&g);
        assert_eq!(c.clauses(), &[clause(&[1, 2]), clause(&[1, 2])]);
        let r = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
        assert_eq!(r.weight, 1);
        assert_eq!(r.true_vars, clause(&[1]));
        assert!(r.optimal);
    }

    #[test]
    fn edgeless_graph_forces_every_variable() {
        let c = graph_to_circuit(&Graph::new(3));
        assert_eq!(c.clauses(), &[clause(&[1]), clause(&[2]), clause(&[3])]);
        let r = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
        assert_eq!(r.weight, 3);
    }

    #[test]
    fn c5_matches_domination_number() {
        let g = cycle(5);
        let c = graph_to_circuit(&g);
        let r = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
        assert_eq!(r.weight, 2);
        assert_eq!(brute_min_weight(&c), Some(2));
    }

    #[test]
    fn single_and_chained_clauses() {
        let c = MonotoneCircuit::new(1, vec![clause(&[1])]).unwrap();
        let r = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
        assert_eq!((r.weight, r.true_vars.clone()), (1, clause(&[1])));

        let c = MonotoneCircuit::new(3, vec![clause(&[1, 2]), clause(&[2, 3])]).unwrap();
        let r = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
        assert_eq!((r.weight, r.true_vars.clone()), (1, clause(&[2])));
    }

    #[test]
    fn lexicographically_least_optimum_is_returned() {
        let c = MonotoneCircuit::new(2, vec![clause(&[1, 2])]).unwrap();
        let r = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
        assert_eq!(r.true_vars, clause(&[1]));
    }

    #[test]
    fn weight_equals_domination_number_on_random_graphs() {
        let mut rng = SplitMix64::new(23);
        for _ in 0..30 {
            let n = 1 + rng.next_below(8) as usize;
            let mut g = Graph::new(n);
            for u in 1..=n as u32 {
                for v in (u + 1)..=n as u32 {
                    if rng.chance(2, 5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let circuit = graph_to_circuit(&g);
            let assignment = min_weight_satisfying(&circuit, SolverBudget::exact_bb()).unwrap();
            let ds = exact_min_dominating_set(&g, SolverBudget::exact_bb()).unwrap();
            assert_eq!(assignment.weight, ds.size);
            assert_eq!(brute_min_weight(&circuit), Some(ds.size));
            // The assignment's support is itself a dominating set.
            assert!(crate::graphs::is_dominating(&g, &assignment.true_vars).unwrap());
        }
    }

    #[test]
    fn supersets_of_satisfying_assignments_satisfy() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..20 {
            let n = 2 + rng.next_below(6) as usize;
            let mut g = Graph::new(n);
            for u in 1..=n as u32 {
                for v in (u + 1)..=n as u32 {
                    if rng.chance(1, 2) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let c = graph_to_circuit(&g);
            let r = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
            let mut superset = r.true_vars.clone();
            for v in 1..=n as u32 {
                if rng.chance(1, 2) {
                    superset.insert(v);
                }
            }
            assert!(c.is_satisfied_by(&superset));
        }
    }

    #[test]
    fn text_roundtrip() {
        let c = MonotoneCircuit::new(4, vec![clause(&[1, 3]), clause(&[2, 3, 4])]).unwrap();
        let text = c.to_text();
        assert_eq!(text, "vars 4\nor 1 3\nor 2 3 4\n");
        assert_eq!(MonotoneCircuit::from_text(&text).unwrap(), c);
    }

    #[test]
    fn parse_and_validation_errors() {
        assert!(matches!(
            MonotoneCircuit::from_text("or 1 2"),
            Err(CircuitError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            MonotoneCircuit::from_text("vars x"),
            Err(CircuitError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            MonotoneCircuit::new(2, vec![clause(&[])]),
            Err(CircuitError::EmptyClause { index: 0 })
        ));
        assert!(matches!(
            MonotoneCircuit::new(2, vec![clause(&[3])]),
            Err(CircuitError::VarOutOfRange {
                index: 0,
                var: 3,
                ..
            })
        ));
        let big = MonotoneCircuit::new(40, vec![clause(&[1])]).unwrap();
        assert!(matches!(
            min_weight_satisfying(&big, SolverBudget::exact_bb()),
            Err(CircuitError::TooLarge { .. })
        ));
    }

    #[test]
    fn budget_exhaustion_keeps_sound_bounds() {
        let g = cycle(9);
        let c = graph_to_circuit(&g);
        let r = min_weight_satisfying(&c, SolverBudget::exact_bb().with_max_nodes(2)).unwrap();
        assert!(!r.optimal);
        assert!(c.is_satisfied_by(&r.true_vars));
        let exact = min_weight_satisfying(&c, SolverBudget::exact_bb()).unwrap();
        assert!(r.weight_lower_bound <= exact.weight);
        assert!(r.weight >= exact.weight);
    }
}
