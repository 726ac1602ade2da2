//! Influence maximization under the independent cascade model.
//!
//! `E[I(X)]` is estimated by Monte-Carlo simulation. Every coin flip is a
//! counter-based draw keyed by `(seed, simulation, edge)`, so a simulation is
//! equivalent to a live-edge graph: edge `e` is live in simulation `j` iff
//! `U(seed, j, e) < p_e`. With common random numbers the same `r`
//! live-edge graphs are used for every evaluation of a run.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::problems::SubmodularObjective;
use crate::rng::{counter_uniform, mix64, stream_rng, Stream};
use crate::subset::Subset;

const REPORT_SALT: u64 = 0x005E_ED0F_F1A1;

/// Directed graph with per-edge activation probabilities, stored by source.
#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceGraph {
    nodes: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    probs: Vec<f64>,
}

impl InfluenceGraph {
    pub fn new(nodes: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        if nodes > u32::MAX as usize {
            return Err(Error::InvalidArgument(format!("{nodes} nodes is too many")));
        }
        let mut sorted = edges.to_vec();
        for &(u, v, p) in &sorted {
            if u >= nodes || v >= nodes {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) outside 0..{nodes}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop on node {u}")));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) has probability {p} outside [0, 1]"
                )));
            }
        }
        sorted.sort_by_key(|e| (e.0, e.1));
        let mut offsets = vec![0usize; nodes + 1];
        for &(u, _, _) in &sorted {
            offsets[u + 1] += 1;
        }
        for i in 0..nodes {
            offsets[i + 1] += offsets[i];
        }
        Ok(InfluenceGraph {
            nodes,
            offsets,
            targets: sorted.iter().map(|e| e.1 as u32).collect(),
            probs: sorted.iter().map(|e| e.2).collect(),
        })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    /// `(source, target, probability)` in storage order; the index is the edge id.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nodes).flat_map(move |u| {
            (self.offsets[u]..self.offsets[u + 1])
                .map(move |e| (u, self.targets[e] as usize, self.probs[e]))
        })
    }
}

/// Simple directed graph with exactly `edges` arcs drawn uniformly without
/// replacement, each with activation probability `p`.
pub fn generate_im_graph(nodes: usize, edges: usize, p: f64, seed: u64) -> Result<InfluenceGraph> {
    let slots = nodes.saturating_mul(nodes.saturating_sub(1));
    if edges > slots {
        return Err(Error::InvalidArgument(format!(
            "{edges} edges do not fit in a simple directed graph on {nodes} nodes"
        )));
    }
    let mut rng = stream_rng(seed, Stream::Generator);
    let arcs: Vec<(usize, usize, f64)> = index::sample(&mut rng, slots, edges)
        .into_iter()
        .map(|slot| {
            let u = slot / (nodes - 1);
            let r = slot % (nodes - 1);
            let v = if r < u { r } else { r + 1 };
            (u, v, p)
        })
        .collect();
    InfluenceGraph::new(nodes, &arcs)
}

/// Reads `u v p` lines (0-based ids). Blank lines and `#` comments are skipped.
pub fn parse_im_edges<R: BufRead>(reader: R) -> Result<InfluenceGraph> {
    let mut edges = Vec::new();
    let mut max_id = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let bad = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if toks.len() != 3 {
            return Err(bad(format!("expected `u v p`, got `{t}`")));
        }
        let u: usize = toks[0].parse().map_err(|_| bad(format!("bad node id `{}`", toks[0])))?;
        let v: usize = toks[1].parse().map_err(|_| bad(format!("bad node id `{}`", toks[1])))?;
        let p: f64 = toks[2].parse().map_err(|_| bad(format!("bad probability `{}`", toks[2])))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(bad(format!("probability {p} outside [0, 1]")));
        }
        if u == v {
            return Err(bad(format!("self-loop on node {u}")));
        }
        max_id = max_id.max(Some(u.max(v)));
        edges.push((u, v, p));
    }
    let nodes = max_id.map(|m| m + 1).ok_or_else(|| Error::Parse {
        line: 0,
        message: "no edges".into(),
    })?;
    InfluenceGraph::new(nodes, &edges)
}

pub fn load_im_edges(path: impl AsRef<Path>) -> Result<InfluenceGraph> {
    parse_im_edges(BufReader::new(File::open(path.as_ref())?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CascadeSettings {
    /// Simulations per search-time evaluation (`r`).
    pub simulations: usize,
    /// Independent simulations used by [`SubmodularObjective::report_value`].
    pub report_simulations: usize,
    pub seed: u64,
    /// Reuse the same `r` live-edge graphs for every evaluation.
    pub common_random_numbers: bool,
}

impl Default for CascadeSettings {
    fn default() -> Self {
        CascadeSettings {
            simulations: 100,
            report_simulations: 10_000,
            seed: 0,
            common_random_numbers: true,
        }
    }
}

/// Live-edge graphs, one CSR block per simulation.
#[derive(Clone, Debug)]
struct LiveEdges {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct InfluenceInstance {
    graph: InfluenceGraph,
    settings: CascadeSettings,
    live: Option<LiveEdges>,
    reach: Option<ReachIndex>,
}

impl InfluenceInstance {
    pub fn new(graph: InfluenceGraph, settings: CascadeSettings) -> Result<Self> {
        if settings.simulations == 0 || settings.report_simulations == 0 {
            return Err(Error::InvalidArgument("simulation counts must be at least 1".into()));
        }
        let live = settings
            .common_random_numbers
            .then(|| sample_live_edges(&graph, settings.seed, settings.simulations));
        let reach = live
            .as_ref()
            .and_then(|l| ReachIndex::build(l, graph.nodes, settings.simulations));
        Ok(InfluenceInstance {
            graph,
            settings,
            live,
            reach,
        })
    }

    pub fn graph(&self) -> &InfluenceGraph {
        &self.graph
    }

    pub fn settings(&self) -> CascadeSettings {
        self.settings
    }

    /// Search-time estimate of `E[I(X)]`.
    pub fn influence_spread(&self, x: &Subset, eval_index: u64) -> f64 {
        debug_assert_eq!(x.len(), self.graph.nodes);
        if x.is_empty() {
            return 0.0;
        }
        let r = self.settings.simulations;
        if let Some(reach) = &self.reach {
            return reach.total_spread(x, r) as f64 / r as f64;
        }
        let mut scratch = Scratch::new(self.graph.nodes);
        let total: usize = match &self.live {
            Some(live) => (0..r).map(|j| scratch.live_cascade(live, j, self.graph.nodes, x)).sum(),
            None => {
                let first = eval_index.wrapping_mul(r as u64);
                (0..r as u64)
                    .map(|j| {
                        scratch.coin_cascade(&self.graph, self.settings.seed, first.wrapping_add(j), x)
                    })
                    .sum()
            }
        };
        total as f64 / r as f64
    }

    /// Independent estimate over `simulations` fresh cascades keyed by `seed`.
    pub fn estimate(&self, x: &Subset, simulations: usize, seed: u64) -> f64 {
        if x.is_empty() || simulations == 0 {
            return 0.0;
        }
        let mut scratch = Scratch::new(self.graph.nodes);
        let total: usize = (0..simulations as u64)
            .map(|j| scratch.coin_cascade(&self.graph, seed, j, x))
            .sum();
        total as f64 / simulations as f64
    }
}

impl SubmodularObjective for InfluenceInstance {
    fn ground_size(&self) -> usize {
        self.graph.nodes
    }

    fn value(&self, x: &Subset, eval_index: u64) -> f64 {
        self.influence_spread(x, eval_index)
    }

    fn report_value(&self, x: &Subset) -> f64 {
        self.estimate(
            x,
            self.settings.report_simulations,
            mix64(self.settings.seed ^ REPORT_SALT),
        )
    }
}

fn sample_live_edges(graph: &InfluenceGraph, seed: u64, simulations: usize) -> LiveEdges {
    let n = graph.nodes;
    let mut offsets = Vec::with_capacity(simulations * (n + 1));
    let mut targets = Vec::new();
    for j in 0..simulations as u64 {
        for u in 0..n {
            offsets.push(targets.len() as u32);
            for e in graph.offsets[u]..graph.offsets[u + 1] {
                if counter_uniform(seed, j, e as u64) < graph.probs[e] {
                    targets.push(graph.targets[e]);
                }
            }
        }
        offsets.push(targets.len() as u32);
    }
    LiveEdges { offsets, targets }
}

/// Largest reach index kept in memory, in stored node ids.
const MAX_REACH_TARGETS: usize = 1 << 25;

/// For every node `v` and simulation `j`, the nodes other than `v` that a
/// cascade started at `v` activates in live-edge graph `j`. The spread of a
/// set in simulation `j` is the size of the union of its members' lists
/// plus the set itself.
#[derive(Clone, Debug)]
struct ReachIndex {
    words: usize,
    /// Entries of node `v` are `entries[node_offsets[v]..node_offsets[v + 1]]`.
    node_offsets: Vec<u32>,
    /// `(simulation, start, end)` ranges into `targets`.
    entries: Vec<(u32, u32, u32)>,
    targets: Vec<u32>,
}

impl ReachIndex {
    /// `None` when the index would exceed [`MAX_REACH_TARGETS`].
    fn build(live: &LiveEdges, nodes: usize, simulations: usize) -> Option<Self> {
        let mut per_node: Vec<Vec<(u32, u32, u32)>> = vec![Vec::new(); nodes];
        let mut targets = Vec::new();
        let mut scratch = Scratch::new(nodes);
        for j in 0..simulations {
            let base = j * (nodes + 1);
            for (v, list) in per_node.iter_mut().enumerate() {
                if live.offsets[base + v] == live.offsets[base + v + 1] {
                    continue;
                }
                let start = targets.len();
                scratch.stamp += 1;
                scratch.queue.clear();
                scratch.visited[v] = scratch.stamp;
                scratch.queue.push(v as u32);
                scratch.spread(live, base);
                targets.extend_from_slice(&scratch.queue[1..]);
                if targets.len() > MAX_REACH_TARGETS {
                    return None;
                }
                list.push((j as u32, start as u32, targets.len() as u32));
            }
        }
        let mut node_offsets = Vec::with_capacity(nodes + 1);
        let mut entries = Vec::new();
        for list in per_node {
            node_offsets.push(entries.len() as u32);
            entries.extend(list);
        }
        node_offsets.push(entries.len() as u32);
        Some(ReachIndex {
            words: nodes.div_ceil(64),
            node_offsets,
            entries,
            targets,
        })
    }

    /// Sum over simulations of the number of activated nodes.
    fn total_spread(&self, x: &Subset, simulations: usize) -> usize {
        let w = self.words;
        let mut marks = vec![0u64; simulations * w];
        for v in x.iter() {
            let (lo, hi) = (self.node_offsets[v] as usize, self.node_offsets[v + 1] as usize);
            for &(j, start, end) in &self.entries[lo..hi] {
                let row = &mut marks[j as usize * w..(j as usize + 1) * w];
                for &t in &self.targets[start as usize..end as usize] {
                    row[t as usize / 64] |= 1 << (t % 64);
                }
            }
        }
        let xw = x.words();
        let outside: u32 = marks
            .chunks_exact(w)
            .map(|row| row.iter().zip(xw).map(|(m, s)| (m & !s).count_ones()).sum::<u32>())
            .sum();
        simulations * x.count() + outside as usize
    }
}

/// Reusable BFS state; `stamp` avoids clearing `visited` between cascades.
struct Scratch {
    visited: Vec<u32>,
    stamp: u32,
    queue: Vec<u32>,
}

impl Scratch {
    fn new(nodes: usize) -> Self {
        Scratch {
            visited: vec![0; nodes],
            stamp: 0,
            queue: Vec::with_capacity(nodes),
        }
    }

    fn seed(&mut self, x: &Subset) {
        self.stamp += 1;
        self.queue.clear();
        for v in x.iter() {
            self.visited[v] = self.stamp;
            self.queue.push(v as u32);
        }
    }

    fn live_cascade(&mut self, live: &LiveEdges, sim: usize, nodes: usize, x: &Subset) -> usize {
        self.seed(x);
        self.spread(live, sim * (nodes + 1));
        self.queue.len()
    }

    /// Runs the queued cascade to completion in the live graph at `base`.
    fn spread(&mut self, live: &LiveEdges, base: usize) {
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            let (lo, hi) = (live.offsets[base + u] as usize, live.offsets[base + u + 1] as usize);
            for &v in &live.targets[lo..hi] {
                if self.visited[v as usize] != self.stamp {
                    self.visited[v as usize] = self.stamp;
                    self.queue.push(v);
                }
            }
        }
    }

    fn coin_cascade(&mut self, graph: &InfluenceGraph, seed: u64, sim: u64, x: &Subset) -> usize {
        self.seed(x);
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head] as usize;
            head += 1;
            for e in graph.offsets[u]..graph.offsets[u + 1] {
                let v = graph.targets[e] as usize;
                if self.visited[v] != self.stamp && counter_uniform(seed, sim, e as u64) < graph.probs[e] {
                    self.visited[v] = self.stamp;
                    self.queue.push(v as u32);
                }
            }
        }
        self.queue.len()
    }
}
