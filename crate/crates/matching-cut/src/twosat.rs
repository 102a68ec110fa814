//! Linear-time 2-SAT over the implication graph: Tarjan's strongly connected
//! components, deterministic model extraction by component order.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoSatError {
    #[error("literal refers to variable {var}, but the formula has {count} variables")]
    VariableOutOfRange { var: usize, count: usize },
    #[error("assignment has {got} values, formula has {expected} variables")]
    LengthMismatch { got: usize, expected: usize },
}

/// A literal: variable index plus polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Self {
        Lit { var: self.var, positive: !self.positive }
    }

    /// Implication-graph node id: 2*var for the positive literal, 2*var+1 for
    /// the negative one.
    fn node(self) -> usize {
         2 * self.var + usize::from(!self.positive)
    }
}

/// A total truth assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A conjunction of 2-literal clauses. A unit clause is stored as the same
/// literal twice. Clause order is preserved and determines solver order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    variable_count: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSatFormula {
    pub fn new(variable_count: usize) -> Self {
        TwoSatFormula { variable_count, clauses: Vec::new() }
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        self.clauses.push((a, b));
    }

    /// Adds the unit clause (l), stored as (l, l).
    pub fn add_unit(&mut self, l: Lit) {
        self.add_clause(l, l);
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    fn check_vars(&self) -> Result<(), TwoSatError> {
        for &(a, b) in &self.clauses {
            for l in [a, b] {
                if l.var >= self.variable_count {
                    return Err(TwoSatError::VariableOutOfRange {
                        var: l.var,
                        count: self.variable_count,
                    });
                }
            }
        }
        Ok(())
    }

    /// Returns a satisfying assignment, or `None` if unsatisfiable.
    /// Deterministic: the same formula always yields the same assignment.
    pub fn solve(&self) -> Result<Option<Assignment>, TwoSatError> {
        self.check_vars()?;
        let nodes = 2 * self.variable_count;
        let mut adj = vec![Vec::new(); nodes];
        for &(a, b) in &self.clauses {
            // (a | b) forces !a -> b and !b -> a
            adj[a.negated().node()].push(b.node());
            adj[b.negated().node()].push(a.node());
        }
        let comp = tarjan_scc(&adj);
        let mut values = Vec::with_capacity(self.variable_count);
        for var in 0..self.variable_count {
            let pos = comp[Lit::pos(var).node()];
            let neg = comp[Lit::neg(var).node()];
            if pos == neg {
                return Ok(None);
            }
            // components are numbered in reverse topological order; the
            // literal whose component completes first (a sink) is made true
            values.push(pos < neg);
        }
        Ok(Some(Assignment::new(values)))
    }

    /// True iff every clause has at least one true literal under `a`.
    pub fn evaluate(&self, a: &Assignment) -> Result<bool, TwoSatError> {
        self.check_vars()?;
        if a.len() != self.variable_count {
            return Err(TwoSatError::LengthMismatch {
                got: a.len(),
                expected: self.variable_count,
            });
        }
        let lit_true = |l: Lit| a.value(l.var) == l.positive;
        Ok(self.clauses.iter().all(|&(x, y)| lit_true(x) || lit_true(y)))
    }
}

/// Iterative Tarjan SCC; returns the component index per node, components
/// numbered in completion order (sinks first).
fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut comp = vec![usize::MAX; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut next_comp = 0usize;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("scc stack non-empty");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    comp
}
