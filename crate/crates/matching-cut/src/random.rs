//! Random instance generation: Erdos-Renyi G(n,p) plus rejection sampling
//! into the structured classes the fast deciders cover.

use crate::graph::{Bipartition, Graph};
use rand::Rng;
use thiserror::Error;

/// Default attempt cap for [`sample`].
pub const DEFAULT_SAMPLE_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RandomError {
    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("no graph of the requested class found within {attempts} attempts")]
    SampleExhausted { attempts: usize },
}

fn check_probability(p: f64) -> Result<(), RandomError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomError::InvalidProbability(p));
    }
    Ok(())
}

/// G(n,p): every unordered vertex pair becomes an edge independently with
/// probability p. Pairs are drawn in lexicographic order, so a seeded rng
/// reproduces the same graph.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph, RandomError> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, &edges).expect("generated pairs are canonical"))
}

/// Bipartite G(n1+n2, p): vertices 0..n1 form class 1, the rest class 2, and
/// only cross-class pairs may become edges. Returns the planted bipartition
/// alongside the graph (the graph may be disconnected, where the planted
/// classes carry more information than a recomputed one).
pub fn bipartite_gnp(
    n1: usize,
    n2: usize,
    p: f64,
    rng: &mut impl Rng,
) -> Result<(Graph, Bipartition), RandomError> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for u in 0..n1 {
        for w in 0..n2 {
            if rng.gen_bool(p) {
                edges.push((u, n1 + w));
            }
        }
    }
    let g = Graph::new(n1 + n2, &edges).expect("generated pairs are canonical");
    let class1: Vec<usize> = (0..n1).collect();
    let bp = Bipartition::from_class1(&g, &class1).expect("edges cross the planted classes");
    Ok((g, bp))
}

/// Structured classes for rejection sampling, matching what the fast
/// deciders accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    /// Connected, no further restriction.
    Connected,
    /// Connected with diameter at most 2.
    Diameter2,
    /// Connected, bipartite, diameter at most 3.
    BipartiteDiam3,
}

impl GraphClass {
    pub fn matches(self, g: &Graph) -> bool {
        if !g.is_connected() {
            return false;
        }
        match self {
            GraphClass::Connected => true,
            GraphClass::Diameter2 => g.diameter().at_most(2),
            GraphClass::BipartiteDiam3 => g.bipartition().is_some() && g.diameter().at_most(3),
        }
    }
}

/// Rejection-samples a graph of the requested class: draws G(n,p) (or its
/// bipartite variant with a random class split) until the class predicate
/// holds or `max_attempts` draws have been used.
pub fn sample(
    class: GraphClass,
    n: usize,
    p: f64,
    rng: &mut impl Rng,
    max_attempts: usize,
) -> Result<Graph, RandomError> {
    check_probability(p)?;
    for _ in 0..max_attempts {
        let g = match class {
            GraphClass::Connected | GraphClass::Diameter2 => gnp(n, p, rng)?,
            GraphClass::BipartiteDiam3 => {
                let n1 = if n >= 2 { rng.gen_range(1..n) } else { n };
                bipartite_gnp(n1, n - n1, p, rng)?.0
            }
        };
        if class.matches(&g) {
            return Ok(g);
        }
    }
    Err(RandomError::SampleExhausted {
        attempts: max_attempts,
    })
}
