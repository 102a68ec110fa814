//! Instance generators that transport matching-cut existence into graphs of
//! prescribed diameter, with cut lifting and projection between source and
//! gadget.
//!
//! The diameter-3 gadget attaches a clique block Q_i to every source vertex
//! v_i and wires blocks pairwise; appending a chain of K_{2,2}s pads the
//! diameter to any d >= 4. The bipartite variant uses biclique blocks
//! S_i = (Q_i, R_i) and class-dependent wiring to reach diameter 4, padding
//! to d >= 5 with a chain on R_1. All constructions preserve the yes/no
//! answer exactly; lift_cut and project_cut carry witnesses across.

use crate::engine::{verify_matching_cut, Cut, EngineError};
use crate::graph::{Bipartition, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("source graph must be connected")]
    SourceDisconnected,
    #[error("source graph must have at least {need} vertices, got {got}")]
    SourceTooSmall { need: usize, got: usize },
    #[error("target diameter must be at least {min}, got {got}")]
    DiameterTooSmall { min: usize, got: usize },
    #[error("source graph must be bipartite with the given classes")]
    NotBipartite,
    #[error("cut is not a matching cut of the source graph")]
    InvalidSourceCut,
    #[error("cut is not a matching cut of the gadget graph")]
    InvalidGadgetCut,
    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(&'static str),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// What a gadget vertex stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Source vertex i, at the same index.
    Original(usize),
    /// Clique-block vertex q_i^j: `block` i, `slot` j.
    Clique { block: usize, slot: usize },
    /// Shadow-block vertex r_i^j of the bipartite construction.
    Shadow { block: usize, slot: usize },
    /// Chain vertex s_level (primed: s'_level); level 0 attaches to block 0.
    Chain { level: usize, primed: bool },
}

/// Everything needed to move cuts between a source graph and its gadget:
/// both graphs, the construction parameters, and the role of every gadget
/// vertex.
#[derive(Clone, Debug)]
pub struct GadgetRecipe {
    source: Graph,
    gadget: Graph,
    target_diameter: usize,
    bipartite_mode: bool,
    roles: Vec<Role>,
}

impl GadgetRecipe {
    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn gadget(&self) -> &Graph {
        &self.gadget
    }

    pub fn target_diameter(&self) -> usize {
        self.target_diameter
    }

    pub fn bipartite_mode(&self) -> bool {
        self.bipartite_mode
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role_of(&self, gadget_vertex: usize) -> Role {
        self.roles[gadget_vertex]
    }
}

fn clique_index(n: usize, block: usize, slot: usize) -> usize {
    n + block * n + slot
}

fn shadow_index(n: usize, block: usize, slot: usize) -> usize {
    n + n * n + block * n + slot
}

fn check_source(g: &Graph) -> Result<usize, ReductionError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(ReductionError::SourceTooSmall { need: 2, got: n });
    }
    if !g.is_connected() {
        return Err(ReductionError::SourceDisconnected);
    }
    Ok(n)
}

/// Clique-block gadget: each source vertex v_i gains a clique Q_i on n
/// vertices (v_i joined to all of it), and blocks are wired pairwise by the
/// single edge q_i^j q_j^i. The result has n + n^2 vertices, diameter 3, and
/// a matching cut exactly when the source has one.
pub fn gadget_diam3(g: &Graph) -> Result<(Graph, GadgetRecipe), ReductionError> {
    let n = check_source(g)?;
    let q = |block, slot| clique_index(n, block, slot);
    let mut edges = g.edges().to_vec();
    for i in 0..n {
        for j in 0..n {
            edges.push((i, q(i, j)));
            for k in j + 1..n {
                edges.push((q(i, j), q(i, k)));
            }
        }
        for j in i + 1..n {
            edges.push((q(i, j), q(j, i)));
        }
    }
    let gadget = Graph::new(n + n * n, &edges)?;
    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    for block in 0..n {
        for slot in 0..n {
            roles.push(Role::Clique { block, slot });
        }
    }
    let recipe = GadgetRecipe {
        source: g.clone(),
        gadget: gadget.clone(),
        target_diameter: 3,
        bipartite_mode: false,
        roles,
    };
    Ok((gadget, recipe))
}

/// The chain of d-3 K_{2,2}s used for diameter padding: levels 0..d-3, each
/// holding a pair s_k (even index) and s'_k (odd index), with consecutive
/// level pairs completely joined.
pub fn build_chain(d: usize) -> Result<Graph, ReductionError> {
    if d < 4 {
        return Err(ReductionError::DiameterTooSmall { min: 4, got: d });
    }
    let levels = d - 2;
    let mut edges = Vec::new();
    for level in 0..levels - 1 {
        let (s, sp) = (2 * level, 2 * level + 1);
        let (t, tp) = (2 * level + 2, 2 * level + 3);
        edges.extend([(s, t), (s, tp), (sp, t), (sp, tp)]);
    }
    Ok(Graph::new(2 * levels, &edges)?)
}

fn chain_roles(levels: usize) -> impl Iterator<Item = Role> {
    (0..levels).flat_map(|level| {
        [Role::Chain { level, primed: false }, Role::Chain { level, primed: true }]
    })
}

/// Diameter-d variant of the clique-block gadget, d >= 4 (d = 3 is the plain
/// gadget): appends the K_{2,2} chain of [`build_chain`] with its level-0
/// pair joined to all of Q_0.
pub fn gadget_diam_d(g: &Graph, d: usize) -> Result<(Graph, GadgetRecipe), ReductionError> {
    if d < 3 {
        return Err(ReductionError::DiameterTooSmall { min: 3, got: d });
    }
    if d == 3 {
        return gadget_diam3(g);
    }
    let (core, core_recipe) = gadget_diam3(g)?;
    let n = g.vertex_count();
    let chain = build_chain(d)?;
    let offset = core.vertex_count();
    let mut edges = core.edges().to_vec();
    for &(u, v) in chain.edges() {
        edges.push((offset + u, offset + v));
    }
    for j in 0..n {
        edges.push((clique_index(n, 0, j), offset));
        edges.push((clique_index(n, 0, j), offset + 1));
    }
    let gadget = Graph::new(offset + chain.vertex_count(), &edges)?;
    let mut roles = core_recipe.roles;
    roles.extend(chain_roles(d - 2));
    let recipe = GadgetRecipe {
        source: g.clone(),
        gadget: gadget.clone(),
        target_diameter: d,
        bipartite_mode: false,
        roles,
    };
    Ok((gadget, recipe))
}

/// Biclique-block gadget for bipartite sources: each v_i gains a complete
/// bipartite block S_i = (Q_i, R_i) on n + n vertices with v_i joined to all
/// of Q_i; blocks i and j are wired by two edges whose endpoints depend on
/// whether v_i and v_j share a color class (q_i^j r_j^i and r_i^j q_j^i if
/// they do, q_i^j q_j^i and r_i^j r_j^i otherwise). The result is bipartite
/// with n + 2n^2 vertices and diameter 4, and preserves the answer exactly.
pub fn bipartite_gadget_diam4(
    g: &Graph,
    bp: &Bipartition,
) -> Result<(Graph, GadgetRecipe), ReductionError> {
    let n = check_source(g)?;
    bp.validate(g).map_err(|_| ReductionError::NotBipartite)?;
    let q = |block, slot| clique_index(n, block, slot);
    let r = |block, slot| shadow_index(n, block, slot);
    let mut edges = g.edges().to_vec();
    for i in 0..n {
        for j in 0..n {
            edges.push((i, q(i, j)));
            for k in 0..n {
                edges.push((q(i, j), r(i, k)));
            }
        }
        for j in i + 1..n {
            if bp.in_class1(i) == bp.in_class1(j) {
                edges.push((q(i, j), r(j, i)));
                edges.push((r(i, j), q(j, i)));
            } else {
                edges.push((q(i, j), q(j, i)));
                edges.push((r(i, j), r(j, i)));
            }
        }
    }
    let gadget = Graph::new(n + 2 * n * n, &edges)?;
    let mut roles: Vec<Role> = (0..n).map(Role::Original).collect();
    for block in 0..n {
        for slot in 0..n {
            roles.push(Role::Clique { block, slot });
        }
    }
    for block in 0..n {
        for slot in 0..n {
            roles.push(Role::Shadow { block, slot });
        }
    }
    let recipe = GadgetRecipe {
        source: g.clone(),
        gadget: gadget.clone(),
        target_diameter: 4,
        bipartite_mode: true,
        roles,
    };
    Ok((gadget, recipe))
}

/// Bipartite diameter-d gadget, d >= 5 (d = 4 is the plain bipartite
/// gadget): appends the chain of [`build_chain`] for d-1 with its level-0
/// pair joined to all of R_0, keeping the graph bipartite.
pub fn bipartite_gadget_diam_d(
    g: &Graph,
    bp: &Bipartition,
    d: usize,
) -> Result<(Graph, GadgetRecipe), ReductionError> {
    if d < 4 {
        return Err(ReductionError::DiameterTooSmall { min: 4, got: d });
    }
    if d == 4 {
        return bipartite_gadget_diam4(g, bp);
    }
    let (core, core_recipe) = bipartite_gadget_diam4(g, bp)?;
    let n = g.vertex_count();
    let chain = build_chain(d - 1)?;
    let offset = core.vertex_count();
    let mut edges = core.edges().to_vec();
    for &(u, v) in chain.edges() {
        edges.push((offset + u, offset + v));
    }
    for j in 0..n {
        edges.push((shadow_index(n, 0, j), offset));
        edges.push((shadow_index(n, 0, j), offset + 1));
    }
    let gadget = Graph::new(offset + chain.vertex_count(), &edges)?;
    let mut roles = core_recipe.roles;
    roles.extend(chain_roles(d - 3));
    let recipe = GadgetRecipe {
        source: g.clone(),
        gadget: gadget.clone(),
        target_diameter: d,
        bipartite_mode: true,
        roles,
    };
    Ok((gadget, recipe))
}

/// Transports a matching cut of the source onto the gadget: originals keep
/// their side, every block follows its original, the chain follows vertex
/// 0's block. The result is re-verified on the gadget.
pub fn lift_cut(recipe: &GadgetRecipe, source_cut: &Cut) -> Result<Cut, ReductionError> {
    if !verify_matching_cut(recipe.source(), source_cut)? {
        return Err(ReductionError::InvalidSourceCut);
    }
    let n = recipe.source().vertex_count();
    let mut in_x = vec![false; n];
    for &v in source_cut.side_x() {
        in_x[v] = true;
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (v, role) in recipe.roles().iter().enumerate() {
        let side_x = match *role {
            Role::Original(i) => in_x[i],
            Role::Clique { block, .. } | Role::Shadow { block, .. } => in_x[block],
            Role::Chain { .. } => in_x[0],
        };
        if side_x {
            x.push(v);
        } else {
            y.push(v);
        }
    }
    let lifted = Cut::new(x, y);
    if !verify_matching_cut(recipe.gadget(), &lifted)? {
        return Err(ReductionError::ConstructionInvariant(
            "lifted cut is not a matching cut of the gadget",
        ));
    }
    Ok(lifted)
}

/// Restricts a matching cut of the gadget to the original vertices. By the
/// construction every block is monochromatic with its original, so the
/// restriction is again a matching cut with both sides non-empty; violations
/// signal a construction bug and are reported as errors.
pub fn project_cut(recipe: &GadgetRecipe, gadget_cut: &Cut) -> Result<Cut, ReductionError> {
    if !verify_matching_cut(recipe.gadget(), gadget_cut)? {
        return Err(ReductionError::InvalidGadgetCut);
    }
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (side, out) in [(gadget_cut.side_x(), &mut x), (gadget_cut.side_y(), &mut y)] {
        for &v in side {
            if let Role::Original(i) = recipe.role_of(v) {
                out.push(i);
            }
        }
    }
    if x.is_empty() || y.is_empty() {
        return Err(ReductionError::ConstructionInvariant(
            "projected cut has an empty side",
        ));
    }
    let projected = Cut::new(x, y);
    if !verify_matching_cut(recipe.source(), &projected)? {
        return Err(ReductionError::ConstructionInvariant(
            "projected cut is not a matching cut of the source",
        ));
    }
    Ok(projected)
}
