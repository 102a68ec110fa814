//! Matching-cut core machinery: cut verification, the brute-force oracle,
//! forcing-rule propagation from seed sets, and the 2-SAT completion that
//! assigns whole residual components to one side or the other.
//!
//! A matching cut is a bipartition (X, Y) of the vertices, both sides
//! non-empty, such that every vertex has at most one neighbor across the cut;
//! the crossing edges then form a (possibly empty) matching.

use crate::graph::{Graph, GraphError};
use crate::twosat::{Lit, TwoSatError, TwoSatFormula};
use std::collections::VecDeque;
use thiserror::Error;

/// Vertex-count cap for the exhaustive oracle.
pub const DEFAULT_ORACLE_CAP: usize = 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("cut is not a partition of the vertex set")]
    NotAPartition,
    #[error("cut has an empty side")]
    EmptySide,
    #[error("graph has {vertex_count} vertices, oracle cap is {cap}")]
    OracleCapExceeded { vertex_count: usize, cap: usize },
    #[error("invalid seeds: {0}")]
    SeedPrecondition(&'static str),
    #[error("invalid forcing state: {0}")]
    InvalidState(&'static str),
    #[error("state is not stable: rule {rule:?} applies to vertex {vertex}")]
    NotStable { rule: Rule, vertex: usize },
    #[error("2-sat completion produced a non-matching cut: a residual component is not monochromatic in some extension")]
    MonochromaticityViolation,
    #[error(transparent)]
    TwoSat(#[from] TwoSatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A bipartition of the vertex set into sides X and Y, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    x: Vec<usize>,
    y: Vec<usize>,
}

impl Cut {
    pub fn new(mut x: Vec<usize>, mut y: Vec<usize>) -> Self {
        x.sort_unstable();
        y.sort_unstable();
        Cut { x, y }
    }

    pub fn side_x(&self) -> &[usize] {
        &self.x
    }

    pub fn side_y(&self) -> &[usize] {
        &self.y
    }

    /// Edges of `g` with one endpoint on each side.
    pub fn crossing_edges(&self, g: &Graph) -> Result<Vec<(usize, usize)>, EngineError> {
        let side = self.side_map(g.vertex_count())?;
        Ok(g.edges()
            .iter()
            .copied()
            .filter(|&(u, v)| side[u] != side[v])
            .collect())
    }

    /// Per-vertex side map (true = X). Errors if the two sides are not a
    /// partition of 0..n or one side is empty.
    fn side_map(&self, n: usize) -> Result<Vec<bool>, EngineError> {
        let mut side = vec![None; n];
        for (vertices, in_x) in [(&self.x, true), (&self.y, false)] {
            for &v in vertices.iter() {
                if v >= n || side[v].is_some() {
                    return Err(EngineError::NotAPartition);
                }
                side[v] = Some(in_x);
            }
        }
        if side.iter().any(|s| s.is_none()) {
            return Err(EngineError::NotAPartition);
        }
        if self.x.is_empty() || self.y.is_empty() {
            return Err(EngineError::EmptySide);
        }
        Ok(side.into_iter().map(|s| s.expect("filled")).collect())
    }
}

/// True iff `cut` is a matching cut of `g`: every vertex has at most one
/// neighbor on the other side. Linear time.
pub fn verify_matching_cut(g: &Graph, cut: &Cut) -> Result<bool, EngineError> {
    let side = cut.side_map(g.vertex_count())?;
    for v in 0..g.vertex_count() {
        let mut cross = 0usize;
        for &w in g.neighbors(v) {
            if side[w] != side[v] {
                cross += 1;
                if cross > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// First violation of the matching condition, as a path (u, center, w):
/// `center` has the two cross-neighbors u < w. Scans vertices in index order,
/// so the answer is deterministic. `None` means the cut is a matching cut.
pub fn first_bad_p3(g: &Graph, cut: &Cut) -> Result<Option<(usize, usize, usize)>, EngineError> {
    let side = cut.side_map(g.vertex_count())?;
    for v in 0..g.vertex_count() {
        let mut first = None;
        for &w in g.neighbors(v) {
            if side[w] != side[v] {
                match first {
                    None => first = Some(w),
                    Some(u) => return Ok(Some((u, v, w))),
                }
            }
        }
    }
    Ok(None)
}

fn neighbor_masks(g: &Graph) -> Vec<u64> {
    let mut masks = vec![0u64; g.vertex_count()];
    for &(u, v) in g.edges() {
        masks[u] |= 1 << v;
        masks[v] |= 1 << u;
    }
    masks
}

fn mask_is_matching_cut(masks: &[u64], y_mask: u64, n: usize) -> bool {
    let all = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let x_mask = all & !y_mask;
    for (v, &nbrs) in masks.iter().enumerate() {
        let cross = if y_mask >> v & 1 == 1 { nbrs & x_mask } else { nbrs & y_mask };
        if cross.count_ones() > 1 {
            return false;
        }
    }
    true
}

fn cut_from_y_mask(n: usize, y_mask: u64) -> Cut {
    let x = (0..n).filter(|&v| y_mask >> v & 1 == 0).collect();
    let y = (0..n).filter(|&v| y_mask >> v & 1 == 1).collect();
    Cut::new(x, y)
}

/// Exhaustive oracle with the default cap of 22 vertices.
pub fn brute_force_oracle(g: &Graph) -> Result<Option<Cut>, EngineError> {
    brute_force_oracle_capped(g, DEFAULT_ORACLE_CAP)
}

/// Tries every bipartition with vertex 0 pinned to X, in increasing order of
/// the Y-membership counter over vertices 1..n, and returns the first
/// matching cut found. Errors above the cap (and above 63 vertices, where
/// enumeration is out of the question anyway).
pub fn brute_force_oracle_capped(g: &Graph, cap: usize) -> Result<Option<Cut>, EngineError> {
    let n = g.vertex_count();
    if n > cap || n > 63 {
        return Err(EngineError::OracleCapExceeded { vertex_count: n, cap: cap.min(63) });
    }
    if n < 2 {
        return Ok(None);
    }
    let masks = neighbor_masks(g);
    for counter in 1u64..(1 << (n - 1)) {
        let y_mask = counter << 1;
        if mask_is_matching_cut(&masks, y_mask, n) {
            return Ok(Some(cut_from_y_mask(n, y_mask)));
        }
    }
    Ok(None)
}

/// Number of matching-cut bipartitions (unordered), default cap.
pub fn count_matching_cuts(g: &Graph) -> Result<u64, EngineError> {
    count_matching_cuts_capped(g, DEFAULT_ORACLE_CAP)
}

pub fn count_matching_cuts_capped(g: &Graph, cap: usize) -> Result<u64, EngineError> {
    let n = g.vertex_count();
    if n > cap || n > 63 {
        return Err(EngineError::OracleCapExceeded { vertex_count: n, cap: cap.min(63) });
    }
    if n < 2 {
        return Ok(0);
    }
    let masks = neighbor_masks(g);
    let mut count = 0;
    for counter in 1u64..(1 << (n - 1)) {
        if mask_is_matching_cut(&masks, counter << 1, n) {
            count += 1;
        }
    }
    Ok(count)
}

/// Forcing rules, in priority order. R1-R3 refute the seed; R4/R5 force a
/// vertex onto a side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleFiring {
    pub rule: Rule,
    pub vertex: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    A,
    /// in X but not in A
    X,
    B,
    /// in Y but not in B
    Y,
    R,
}

/// Partial placement during propagation: A ⊆ X are the X-vertices already
/// matched across the cut, B ⊆ Y their partners, R the undecided rest.
///
/// Invariants: X ∩ Y = ∅; every vertex of A has exactly one neighbor in B and
/// vice versa; no vertex of X∖A has a neighbor in Y and no vertex of Y∖B has
/// a neighbor in X.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcingState {
    tags: Vec<Tag>,
}

impl ForcingState {
    /// Builds a state from explicit sets (X including A, Y including B) and
    /// checks the invariants.
    pub fn from_sets(
        g: &Graph,
        a: &[usize],
        b: &[usize],
        x: &[usize],
        y: &[usize],
    ) -> Result<Self, EngineError> {
        let n = g.vertex_count();
        let mut tags = vec![Tag::R; n];
        for (vertices, tag) in [(x, Tag::X), (y, Tag::Y)] {
            for &v in vertices {
                if v >= n {
                    return Err(EngineError::InvalidState("vertex out of range"));
                }
                if tags[v] != Tag::R {
                    return Err(EngineError::InvalidState("X and Y overlap"));
                }
                tags[v] = tag;
            }
        }
        for (vertices, outer, tag) in [(a, Tag::X, Tag::A), (b, Tag::Y, Tag::B)] {
            for &v in vertices {
                if v >= n || tags[v] != outer {
                    return Err(EngineError::InvalidState("A must lie in X and B in Y"));
                }
                tags[v] = tag;
            }
        }
        let state = ForcingState { tags };
        state.validate(g)?;
        Ok(state)
    }

    fn collect(&self, want: impl Fn(Tag) -> bool) -> Vec<usize> {
        (0..self.tags.len()).filter(|&v| want(self.tags[v])).collect()
    }

    pub fn set_a(&self) -> Vec<usize> {
        self.collect(|t| t == Tag::A)
    }

    pub fn set_b(&self) -> Vec<usize> {
        self.collect(|t| t == Tag::B)
    }

    /// X including A.
    pub fn set_x(&self) -> Vec<usize> {
        self.collect(|t| matches!(t, Tag::A | Tag::X))
    }

    /// Y including B.
    pub fn set_y(&self) -> Vec<usize> {
        self.collect(|t| matches!(t, Tag::B | Tag::Y))
    }

    pub fn residual(&self) -> Vec<usize> {
        self.collect(|t| t == Tag::R)
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.tags[v] == Tag::A
    }

    pub fn in_b(&self, v: usize) -> bool {
        self.tags[v] == Tag::B
    }

    pub fn in_x(&self, v: usize) -> bool {
        matches!(self.tags[v], Tag::A | Tag::X)
    }

    pub fn in_y(&self, v: usize) -> bool {
        matches!(self.tags[v], Tag::B | Tag::Y)
    }

    pub fn is_residual(&self, v: usize) -> bool {
        self.tags[v] == Tag::R
    }

    /// Re-checks the state invariants against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), EngineError> {
        validate_tags(g, &self.tags)
    }

    /// First forcing rule that still applies, scanning residual vertices in
    /// index order with R1-R3 before R4/R5. `None` means the state is stable.
    pub fn applicable_rule(&self, g: &Graph) -> Option<RuleFiring> {
        assert_eq!(self.tags.len(), g.vertex_count(), "state built for a different graph");
        for v in 0..self.tags.len() {
            if self.tags[v] != Tag::R {
                continue;
            }
            let (mut a, mut b, mut xa, mut yb) = (0, 0, 0, 0);
            for &w in g.neighbors(v) {
                match self.tags[w] {
                    Tag::A => a += 1,
                    Tag::B => b += 1,
                    Tag::X => xa += 1,
                    Tag::Y => yb += 1,
                    Tag::R => {}
                }
            }
            let rule = pick_rule(a, b, xa, yb);
            if let Some(rule) = rule {
                return Some(RuleFiring { rule, vertex: v });
            }
        }
        None
    }

    pub fn is_stable(&self, g: &Graph) -> bool {
        self.applicable_rule(g).is_none()
    }
}

fn pick_rule(a: u32, b: u32, xa: u32, yb: u32) -> Option<Rule> {
    if a >= 1 && (b >= 1 || yb >= 2) {
        Some(Rule::R1)
    } else if b >= 1 && (a >= 1 || xa >= 2) {
        Some(Rule::R2)
    } else if xa >= 2 && yb >= 2 {
        Some(Rule::R3)
    } else if a >= 1 || xa >= 2 {
        Some(Rule::R4)
    } else if b >= 1 || yb >= 2 {
        Some(Rule::R5)
    } else {
        None
    }
}

fn validate_tags(g: &Graph, tags: &[Tag]) -> Result<(), EngineError> {
    if tags.len() != g.vertex_count() {
        return Err(EngineError::InvalidState("vertex count mismatch"));
    }
    if !tags.contains(&Tag::A) || !tags.contains(&Tag::B) {
        return Err(EngineError::InvalidState("A and B must be non-empty"));
    }
    for (v, &tag) in tags.iter().enumerate() {
        match tag {
            Tag::A => {
                let partners = g.neighbors(v).iter().filter(|&&w| tags[w] == Tag::B).count();
                if partners != 1 {
                    return Err(EngineError::InvalidState(
                        "a vertex of A must have exactly one neighbor in B",
                    ));
                }
            }
            Tag::B => {
                let partners = g.neighbors(v).iter().filter(|&&w| tags[w] == Tag::A).count();
                if partners != 1 {
                    return Err(EngineError::InvalidState(
                        "a vertex of B must have exactly one neighbor in A",
                    ));
                }
            }
            Tag::X => {
                if g.neighbors(v).iter().any(|&w| matches!(tags[w], Tag::B | Tag::Y)) {
                    return Err(EngineError::InvalidState("X∖A touches Y"));
                }
            }
            Tag::Y => {
                if g.neighbors(v).iter().any(|&w| matches!(tags[w], Tag::A | Tag::X)) {
                    return Err(EngineError::InvalidState("Y∖B touches X"));
                }
            }
            Tag::R => {}
        }
    }
    Ok(())
}

/// Result of running the forcing rules from a seed pair to a fixpoint.
#[derive(Clone, Debug)]
pub struct PropagationOutcome {
    state: Option<ForcingState>,
    log: Vec<RuleFiring>,
}

impl PropagationOutcome {
    /// True when some refutation rule (R1-R3) fired: no matching cut
    /// separates the seeds.
    pub fn is_refuted(&self) -> bool {
        self.state.is_none()
    }

    pub fn stable_state(&self) -> Option<&ForcingState> {
        self.state.as_ref()
    }

    pub fn into_stable_state(self) -> Option<ForcingState> {
        self.state
    }

    /// Every rule application, in firing order, as (rule, examined vertex).
    pub fn rule_log(&self) -> &[RuleFiring] {
        &self.log
    }
}

pub(crate) struct Propagator<'g> {
    g: &'g Graph,
    tags: Vec<Tag>,
    a_n: Vec<u32>,
    b_n: Vec<u32>,
    xa_n: Vec<u32>,
    yb_n: Vec<u32>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    log: Vec<RuleFiring>,
    log_enabled: bool,
    lifo: bool,
}

impl<'g> Propagator<'g> {
    pub(crate) fn new(
        g: &'g Graph,
        seed_a: &[usize],
        seed_b: &[usize],
    ) -> Result<Self, EngineError> {
        let n = g.vertex_count();
        if seed_a.is_empty() || seed_b.is_empty() {
            return Err(EngineError::SeedPrecondition("seed sets must be non-empty"));
        }
        let mut tags = vec![Tag::R; n];
        for (seed, tag) in [(seed_a, Tag::A), (seed_b, Tag::B)] {
            for &v in seed {
                if v >= n {
                    return Err(EngineError::SeedPrecondition("seed vertex out of range"));
                }
                if tags[v] != Tag::R {
                    return Err(EngineError::SeedPrecondition(
                        "seed sets overlap or repeat a vertex",
                    ));
                }
                tags[v] = tag;
            }
        }
        for (seed, partner) in [(seed_a, Tag::B), (seed_b, Tag::A)] {
            for &v in seed {
                let partners = g.neighbors(v).iter().filter(|&&w| tags[w] == partner).count();
                if partners != 1 {
                    return Err(EngineError::SeedPrecondition(
                        "each seed vertex must have exactly one neighbor in the opposite seed",
                    ));
                }
            }
        }
        let mut p = Propagator {
            g,
            tags,
            a_n: vec![0; n],
            b_n: vec![0; n],
            xa_n: vec![0; n],
            yb_n: vec![0; n],
            queue: VecDeque::new(),
            queued: vec![false; n],
            log: Vec::new(),
            log_enabled: true,
            lifo: false,
        };
        for v in 0..n {
            for &w in g.neighbors(v) {
                match p.tags[w] {
                    Tag::A => p.a_n[v] += 1,
                    Tag::B => p.b_n[v] += 1,
                    _ => {}
                }
            }
        }
        for v in 0..n {
            if p.tags[v] == Tag::R {
                p.queue.push_back(v);
                p.queued[v] = true;
            }
        }
        Ok(p)
    }

    fn enqueue(&mut self, v: usize) {
        if self.tags[v] == Tag::R && !self.queued[v] {
            self.queued[v] = true;
            if self.lifo {
                self.queue.push_front(v);
            } else {
                self.queue.push_back(v);
            }
        }
    }

    /// Moves `v` to `to`, updating neighbor counters and re-queueing residual
    /// neighbors. Legal transitions: R->{A,X,B,Y}, Y->B, X->A.
    fn transition(&mut self, v: usize, to: Tag) {
        let from = self.tags[v];
        self.tags[v] = to;
        for i in 0..self.g.neighbors(v).len() {
            let u = self.g.neighbors(v)[i];
            match from {
                Tag::R => {}
                Tag::Y => self.yb_n[u] -= 1,
                Tag::X => self.xa_n[u] -= 1,
                _ => unreachable!("no transitions out of A or B"),
            }
            match to {
                Tag::A => self.a_n[u] += 1,
                Tag::B => self.b_n[u] += 1,
                Tag::X => self.xa_n[u] += 1,
                Tag::Y => self.yb_n[u] += 1,
                Tag::R => unreachable!("no transitions back to residual"),
            }
            self.enqueue(u);
        }
    }

    fn unique_neighbor_with_tag(&self, v: usize, tag: Tag) -> usize {
        *self
            .g
            .neighbors(v)
            .iter()
            .find(|&&w| self.tags[w] == tag)
            .expect("counter said such a neighbor exists")
    }

    /// R4: v joins X; if v has a unique neighbor w in Y∖B the pair (v, w)
    /// becomes matched (v to A, w to B).
    fn record(&mut self, rule: Rule, vertex: usize) {
        if self.log_enabled {
            self.log.push(RuleFiring { rule, vertex });
        }
    }

    pub(crate) fn disable_log(&mut self) {
        self.log_enabled = false;
    }

    fn apply_r4(&mut self, v: usize) {
        self.record(Rule::R4, v);
        if self.yb_n[v] == 1 {
            let w = self.unique_neighbor_with_tag(v, Tag::Y);
            self.transition(v, Tag::A);
            self.transition(w, Tag::B);
        } else {
            self.transition(v, Tag::X);
        }
        debug_assert!(validate_tags(self.g, &self.tags).is_ok());
    }

    fn apply_r5(&mut self, v: usize) {
        self.record(Rule::R5, v);
        if self.xa_n[v] == 1 {
            let w = self.unique_neighbor_with_tag(v, Tag::X);
            self.transition(v, Tag::B);
            self.transition(w, Tag::A);
        } else {
            self.transition(v, Tag::Y);
        }
        debug_assert!(validate_tags(self.g, &self.tags).is_ok());
    }

    /// Runs rules to a fixpoint. Returns true if a refutation rule fired.
    pub(crate) fn run(&mut self) -> bool {
        while let Some(v) = self.queue.pop_front() {
            self.queued[v] = false;
            if self.tags[v] != Tag::R {
                continue;
            }
            let (a, b, xa, yb) = (self.a_n[v], self.b_n[v], self.xa_n[v], self.yb_n[v]);
            match pick_rule(a, b, xa, yb) {
                Some(rule @ (Rule::R1 | Rule::R2 | Rule::R3)) => {
                    self.record(rule, v);
                    return true;
                }
                Some(Rule::R4) => self.apply_r4(v),
                Some(Rule::R5) => self.apply_r5(v),
                None => {}
            }
        }
        false
    }

    /// Decision for the exact search: place residual `v` on the X side (with
    /// the same matching bookkeeping R4 would do) and re-propagate.
    pub(crate) fn decide_x(&mut self, v: usize) -> bool {
        debug_assert_eq!(self.tags[v], Tag::R);
        if self.yb_n[v] == 1 {
            let w = self.unique_neighbor_with_tag(v, Tag::Y);
            self.transition(v, Tag::A);
            self.transition(w, Tag::B);
        } else {
            self.transition(v, Tag::X);
        }
        debug_assert!(validate_tags(self.g, &self.tags).is_ok());
        self.run()
    }

    pub(crate) fn decide_y(&mut self, v: usize) -> bool {
        debug_assert_eq!(self.tags[v], Tag::R);
        if self.xa_n[v] == 1 {
            let w = self.unique_neighbor_with_tag(v, Tag::X);
            self.transition(v, Tag::B);
            self.transition(w, Tag::A);
        } else {
            self.transition(v, Tag::Y);
        }
        debug_assert!(validate_tags(self.g, &self.tags).is_ok());
        self.run()
    }

    pub(crate) fn first_residual(&self) -> Option<usize> {
        self.tags.iter().position(|&t| t == Tag::R)
    }

    pub(crate) fn state(&self) -> ForcingState {
        ForcingState { tags: self.tags.clone() }
    }

    pub(crate) fn snapshot(&self) -> PropagatorSnapshot {
        PropagatorSnapshot {
            tags: self.tags.clone(),
            a_n: self.a_n.clone(),
            b_n: self.b_n.clone(),
            xa_n: self.xa_n.clone(),
            yb_n: self.yb_n.clone(),
        }
    }

    pub(crate) fn restore(&mut self, snap: &PropagatorSnapshot) {
        self.tags.clone_from(&snap.tags);
        self.a_n.clone_from(&snap.a_n);
        self.b_n.clone_from(&snap.b_n);
        self.xa_n.clone_from(&snap.xa_n);
        self.yb_n.clone_from(&snap.yb_n);
        self.queue.clear();
        self.queued.iter_mut().for_each(|q| *q = false);
    }
}

pub(crate) struct PropagatorSnapshot {
    tags: Vec<Tag>,
    a_n: Vec<u32>,
    b_n: Vec<u32>,
    xa_n: Vec<u32>,
    yb_n: Vec<u32>,
}

/// Runs the forcing rules from seeds A, B to a fixpoint (FIFO worklist,
/// refutation rules checked before forcing rules on each vertex).
///
/// Seed precondition: disjoint, non-empty, and each seed vertex has exactly
/// one neighbor in the opposite seed.
pub fn propagate(g: &Graph, seed_a: &[usize], seed_b: &[usize]) -> Result<PropagationOutcome, EngineError> {
    propagate_impl(g, seed_a, seed_b, false)
}

fn propagate_impl(
    g: &Graph,
    seed_a: &[usize],
    seed_b: &[usize],
    lifo: bool,
) -> Result<PropagationOutcome, EngineError> {
    let mut p = Propagator::new(g, seed_a, seed_b)?;
    p.lifo = lifo;
    let refuted = p.run();
    let state = if refuted { None } else { Some(p.state()) };
    Ok(PropagationOutcome { state, log: p.log })
}

#[cfg(test)]
pub(crate) fn propagate_lifo(
    g: &Graph,
    seed_a: &[usize],
    seed_b: &[usize],
) -> Result<PropagationOutcome, EngineError> {
    propagate_impl(g, seed_a, seed_b, true)
}

/// The residual components of a stable state together with the 2-SAT formula
/// whose models are exactly the valid whole-component completions.
/// Variables 2c / 2c+1 say "component c goes to X" / "goes to Y".
#[derive(Clone, Debug)]
pub struct ComponentFormula {
    pub formula: TwoSatFormula,
    /// Residual components, ordered by smallest contained vertex.
    pub components: Vec<Vec<usize>>,
}

impl ComponentFormula {
    pub fn x_var(c: usize) -> usize {
        2 * c
    }

    pub fn y_var(c: usize) -> usize {
        2 * c + 1
    }
}

/// Builds the completion formula for a stable state. Clauses, in order:
/// per component (x_C | y_C) and (!x_C | !y_C); unit (x_C) where some vertex
/// of X∖A has two neighbors in C; unit (y_C) likewise for Y∖B; (x_C | x_D)
/// for components sharing a neighbor in X∖A; (y_C | y_D) likewise for Y∖B.
pub fn build_component_formula(
    g: &Graph,
    state: &ForcingState,
) -> Result<ComponentFormula, EngineError> {
    state.validate(g)?;
    if let Some(firing) = state.applicable_rule(g) {
        return Err(EngineError::NotStable { rule: firing.rule, vertex: firing.vertex });
    }
    let n = g.vertex_count();
    let mut comp_of: Vec<Option<usize>> = vec![None; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if !state.is_residual(start) || comp_of[start].is_some() {
            continue;
        }
        let id = components.len();
        comp_of[start] = Some(id);
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if state.is_residual(w) && comp_of[w].is_none() {
                    comp_of[w] = Some(id);
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }

    let mut formula = TwoSatFormula::new(2 * components.len());
    for c in 0..components.len() {
        let (x, y) = (Lit::pos(ComponentFormula::x_var(c)), Lit::pos(ComponentFormula::y_var(c)));
        formula.add_clause(x, y);
        formula.add_clause(x.negated(), y.negated());
    }

    // anchored[v]: components adjacent to v, with multiplicity, for v in X∖A
    // or Y∖B
    let mut unit_x = std::collections::BTreeSet::new();
    let mut unit_y = std::collections::BTreeSet::new();
    let mut pair_x = std::collections::BTreeSet::new();
    let mut pair_y = std::collections::BTreeSet::new();
    for v in 0..n {
        let x_side = state.in_x(v) && !state.in_a(v);
        let y_side = state.in_y(v) && !state.in_b(v);
        if !x_side && !y_side {
            continue;
        }
        let mut counts: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
        for &w in g.neighbors(v) {
            if let Some(c) = comp_of[w] {
                *counts.entry(c).or_insert(0) += 1;
            }
        }
        let units = if x_side { &mut unit_x } else { &mut unit_y };
        for (&c, &cnt) in &counts {
            if cnt >= 2 {
                units.insert(c);
            }
        }
        let pairs = if x_side { &mut pair_x } else { &mut pair_y };
        let touched: Vec<usize> = counts.keys().copied().collect();
        for (i, &c) in touched.iter().enumerate() {
            for &d in &touched[i + 1..] {
                pairs.insert((c, d));
            }
        }
    }
    for c in unit_x {
        formula.add_unit(Lit::pos(ComponentFormula::x_var(c)));
    }
    for c in unit_y {
        formula.add_unit(Lit::pos(ComponentFormula::y_var(c)));
    }
    for (c, d) in pair_x {
        formula.add_clause(
            Lit::pos(ComponentFormula::x_var(c)),
            Lit::pos(ComponentFormula::x_var(d)),
        );
    }
    for (c, d) in pair_y {
        formula.add_clause(
            Lit::pos(ComponentFormula::y_var(c)),
            Lit::pos(ComponentFormula::y_var(d)),
        );
    }
    Ok(ComponentFormula { formula, components })
}

/// Completes a stable state to a full matching cut by assigning each residual
/// component to one side via 2-SAT, or reports that no completion exists.
///
/// Correctness of the "whole components" restriction is the caller's burden:
/// it holds when every residual vertex has a neighbor in X∖A and one in Y∖B
/// (as the phase solvers guarantee). The returned cut is re-verified
/// unconditionally, so a bad caller gets an error, never a wrong cut.
pub fn ab_matching_cut_via_2sat(g: &Graph, state: &ForcingState) -> Result<Option<Cut>, EngineError> {
    let cf = build_component_formula(g, state)?;
    let Some(assignment) = cf.formula.solve()? else {
        return Ok(None);
    };
    let mut x = state.set_x();
    let mut y = state.set_y();
    for (c, comp) in cf.components.iter().enumerate() {
        if assignment.value(ComponentFormula::x_var(c)) {
            x.extend_from_slice(comp);
        } else {
            y.extend_from_slice(comp);
        }
    }
    let cut = Cut::new(x, y);
    if verify_matching_cut(g, &cut)? {
        Ok(Some(cut))
    } else {
        Err(EngineError::MonochromaticityViolation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn cut(x: &[usize], y: &[usize]) -> Cut {
        Cut::new(x.to_vec(), y.to_vec())
    }

    #[test]
    fn c4_opposite_pairs_form_a_matching_cut() {
        let g = Graph::cycle(4).unwrap();
        assert!(verify_matching_cut(&g, &cut(&[0, 1], &[2, 3])).unwrap());
    }

    #[test]
    fn k3_cannot_be_cut() {
        let g = Graph::complete(3);
        assert!(!verify_matching_cut(&g, &cut(&[0], &[1, 2])).unwrap());
        assert_eq!(first_bad_p3(&g, &cut(&[0], &[1, 2])).unwrap(), Some((1, 0, 2)));
    }

    #[test]
    fn verify_rejects_bad_cuts() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(
            verify_matching_cut(&g, &cut(&[0, 1], &[2])),
            Err(EngineError::NotAPartition)
        );
        assert_eq!(
            verify_matching_cut(&g, &cut(&[0, 1, 2, 3], &[])),
            Err(EngineError::EmptySide)
        );
        assert_eq!(
            verify_matching_cut(&g, &cut(&[0, 1, 2], &[2, 3])),
            Err(EngineError::NotAPartition)
        );
    }

    #[test]
    fn verify_agrees_with_crossing_subgraph_restatement() {
        // independent route: max degree of the crossing edge set
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(2..9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let y_mask: u64 = rng.gen_range(1..(1 << n) - 1);
            let c = cut_from_y_mask(n, y_mask);
            let crossing = c.crossing_edges(&g).unwrap();
            let mut deg = vec![0usize; n];
            for &(u, v) in &crossing {
                deg[u] += 1;
                deg[v] += 1;
            }
            let restated = deg.iter().all(|&d| d <= 1);
            assert_eq!(verify_matching_cut(&g, &c).unwrap(), restated);
        }
    }

    #[test]
    fn oracle_on_k4_finds_nothing() {
        assert_eq!(brute_force_oracle(&Graph::complete(4)).unwrap(), None);
    }

    #[test]
    fn oracle_on_c5_returns_first_encoding() {
        let g = Graph::cycle(5).unwrap();
        let found = brute_force_oracle(&g).unwrap().expect("c5 has matching cuts");
        // counter order pins vertex 0 to X; {1,2} is the first valid Y
        assert_eq!(found, cut(&[0, 3, 4], &[1, 2]));
        assert!(verify_matching_cut(&g, &found).unwrap());
    }

    #[test]
    fn oracle_respects_cap() {
        let g = Graph::path(5);
        assert_eq!(
            brute_force_oracle_capped(&g, 4),
            Err(EngineError::OracleCapExceeded { vertex_count: 5, cap: 4 })
        );
    }

    #[test]
    fn tiny_graphs_have_no_cut() {
        assert_eq!(brute_force_oracle(&Graph::new(1, &[]).unwrap()).unwrap(), None);
        assert_eq!(brute_force_oracle(&Graph::new(0, &[]).unwrap()).unwrap(), None);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_matching_cuts(&Graph::complete(4)).unwrap(), 0);
        assert_eq!(count_matching_cuts(&Graph::new(2, &[(0, 1)]).unwrap()).unwrap(), 1);
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(count_matching_cuts(&c6).unwrap(), 9);
        // independent route: matching cuts of a cycle are exactly the pairs
        // of vertex-disjoint edges
        let edges = c6.edges();
        let mut disjoint_pairs = 0;
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a != c && a != d && b != c && b != d {
                    disjoint_pairs += 1;
                }
            }
        }
        assert_eq!(disjoint_pairs, 9);
    }

    #[test]
    fn disconnected_graph_has_the_empty_crossing_cut() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let found = brute_force_oracle(&g).unwrap().expect("disconnected");
        assert!(verify_matching_cut(&g, &found).unwrap());
    }

    #[test]
    fn propagate_rejects_bad_seeds() {
        let g = Graph::cycle(5).unwrap();
        assert!(matches!(
            propagate(&g, &[], &[1]),
            Err(EngineError::SeedPrecondition(_))
        ));
        assert!(matches!(
            propagate(&g, &[0], &[0]),
            Err(EngineError::SeedPrecondition(_))
        ));
        // 0 and 2 are not adjacent in C5
        assert!(matches!(
            propagate(&g, &[0], &[2]),
            Err(EngineError::SeedPrecondition(_))
        ));
    }

    #[test]
    fn propagate_on_c5_stabilizes_as_expected() {
        let g = Graph::cycle(5).unwrap();
        let out = propagate(&g, &[0], &[1]).unwrap();
        let state = out.stable_state().expect("stable");
        assert_eq!(state.set_a(), vec![0]);
        assert_eq!(state.set_b(), vec![1]);
        assert_eq!(state.set_x(), vec![0, 4]);
        assert_eq!(state.set_y(), vec![1, 2]);
        assert_eq!(state.residual(), vec![3]);
        assert!(state.is_stable(&g));
        let rules: Vec<Rule> = out.rule_log().iter().map(|f| f.rule).collect();
        assert_eq!(rules, vec![Rule::R5, Rule::R4]);
    }

    #[test]
    fn propagate_refutes_on_k4() {
        let g = Graph::complete(4);
        let out = propagate(&g, &[0], &[1]).unwrap();
        assert!(out.is_refuted());
        assert_eq!(out.rule_log().last().map(|f| f.rule), Some(Rule::R1));
    }

    #[test]
    fn star_center_seed_forces_leaves() {
        // K_{1,3}: A = {center}, B = {leaf}; other leaves join X by R4
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let out = propagate(&g, &[0], &[1]).unwrap();
        let state = out.stable_state().expect("stable");
        assert_eq!(state.set_x(), vec![0, 2, 3]);
        assert_eq!(state.set_y(), vec![1]);
        assert!(state.residual().is_empty());
    }

    #[test]
    fn propagation_is_confluent_between_queue_orders() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut runs = 0;
        while runs < 300 {
            let n = rng.gen_range(4..10);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            for &(a, b) in g.edges() {
                let fifo = propagate(&g, &[a], &[b]).unwrap();
                let lifo = propagate_lifo(&g, &[a], &[b]).unwrap();
                assert_eq!(fifo.is_refuted(), lifo.is_refuted());
                if let (Some(s), Some(t)) = (fifo.stable_state(), lifo.stable_state()) {
                    assert_eq!(s.set_x(), t.set_x());
                    assert_eq!(s.set_y(), t.set_y());
                    assert_eq!(s.set_a(), t.set_a());
                    assert_eq!(s.set_b(), t.set_b());
                }
                runs += 1;
            }
        }
    }

    #[test]
    fn stable_states_satisfy_residual_degree_bounds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let n = rng.gen_range(4..11);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            for &(a, b) in g.edges() {
                let out = propagate(&g, &[a], &[b]).unwrap();
                if let Some(state) = out.stable_state() {
                    state.validate(&g).unwrap();
                    for v in state.residual() {
                        let mut in_x = 0;
                        let mut in_y = 0;
                        for &w in g.neighbors(v) {
                            assert!(!state.in_a(w) && !state.in_b(w));
                            if state.in_x(w) {
                                in_x += 1;
                            }
                            if state.in_y(w) {
                                in_y += 1;
                            }
                        }
                        assert!(in_x <= 1 && in_y <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn forced_placements_hold_in_every_separating_cut() {
        // any matching cut with a on one side and b on the other must extend
        // the stable (X, Y)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..150 {
            let n = rng.gen_range(4..9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let masks = neighbor_masks(&g);
            for &(a, b) in g.edges() {
                let out = propagate(&g, &[a], &[b]).unwrap();
                let mut separating = Vec::new();
                for counter in 1u64..(1 << (n - 1)) {
                    let y_mask = counter << 1;
                    if mask_is_matching_cut(&masks, y_mask, n) {
                        let a_in_y = y_mask >> a & 1 == 1;
                        let b_in_y = y_mask >> b & 1 == 1;
                        if a_in_y != b_in_y {
                            // orient so a's side plays X
                            separating.push(if a_in_y { !y_mask } else { y_mask });
                        }
                    }
                }
                match out.stable_state() {
                    None => assert!(separating.is_empty(), "refuted seed had a separating cut"),
                    Some(state) => {
                        for y_mask in separating {
                            for v in state.set_x() {
                                assert_eq!(y_mask >> v & 1, 0);
                            }
                            for v in state.set_y() {
                                assert_eq!(y_mask >> v & 1, 1);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn formula_for_c5_state_is_free() {
        let g = Graph::cycle(5).unwrap();
        let out = propagate(&g, &[0], &[1]).unwrap();
        let state = out.stable_state().unwrap();
        let cf = build_component_formula(&g, state).unwrap();
        assert_eq!(cf.components, vec![vec![3]]);
        assert_eq!(cf.formula.clauses().len(), 2);
        let found = ab_matching_cut_via_2sat(&g, state).unwrap().expect("completable");
        assert!(verify_matching_cut(&g, &found).unwrap());
        // the completion keeps the forced placements
        assert!(found.side_x().contains(&0) && found.side_x().contains(&4));
        assert!(found.side_y().contains(&1) && found.side_y().contains(&2));
    }

    #[test]
    fn formula_requires_stability() {
        let g = Graph::path(4);
        // A = {0}, B = {1}, but vertex 2 is adjacent to B: R5 still applies
        let state = ForcingState::from_sets(&g, &[0], &[1], &[0], &[1]).unwrap();
        assert!(matches!(
            build_component_formula(&g, &state),
            Err(EngineError::NotStable { rule: Rule::R5, vertex: 2 })
        ));
    }

    #[test]
    fn contradictory_anchors_make_completion_fail() {
        // component {4,5} is pulled to X by vertex 2 (in X∖A, two neighbors)
        // and to Y by vertex 3 (in Y∖B, two neighbors): unsatisfiable
        let g = Graph::new(
            6,
            &[(0, 1), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        let state = ForcingState::from_sets(&g, &[0], &[1], &[0, 2], &[1, 3]).unwrap();
        assert!(state.is_stable(&g));
        let cf = build_component_formula(&g, &state).unwrap();
        assert_eq!(cf.components, vec![vec![4, 5]]);
        assert_eq!(ab_matching_cut_via_2sat(&g, &state).unwrap(), None);
    }

    #[test]
    fn empty_residual_completion_returns_the_state_cut() {
        let g = Graph::cycle(4).unwrap();
        let out = propagate(&g, &[0], &[1]).unwrap();
        let state = out.stable_state().unwrap();
        assert!(state.residual().is_empty());
        let found = ab_matching_cut_via_2sat(&g, state).unwrap().expect("cut exists");
        assert_eq!(found, cut(&[0, 3], &[1, 2]));
    }

    #[test]
    fn from_sets_validates_invariants() {
        let g = Graph::path(3);
        // B not adjacent to A
        assert!(ForcingState::from_sets(&g, &[0], &[2], &[0], &[2]).is_err());
        // fine: A = {0}, B = {1}
        assert!(ForcingState::from_sets(&g, &[0], &[1], &[0], &[1]).is_ok());
        // X∖A adjacent to Y
        assert!(ForcingState::from_sets(&g, &[0], &[1], &[0, 2], &[1]).is_err());
    }
}
