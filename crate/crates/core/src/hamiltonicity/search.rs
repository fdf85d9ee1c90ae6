//! Edge-state branch and bound for Hamiltonian cycles.
//!
//! Every edge is undecided, required or excluded. Required edges form
//! vertex-disjoint paths ("fragments"); each fragment end knows its partner
//! end so closing a short cycle is detected in constant time. All changes
//! go on a trail and are undone on backtrack.

use serde::{Deserialize, Serialize};

use crate::graph::{two_colouring, Graph, Vertex};

const UNDECIDED: u8 = 0;
const REQUIRED: u8 = 1;
const EXCLUDED: u8 = 2;

/// Which pruning rules the search applies. With everything off the search
/// still rejects vertices left with fewer than two usable edges and short
/// cycles, but infers nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Degree-two forcing, saturation exclusion and short-cycle exclusion.
    pub forcing: bool,
    /// Reject states whose usable edges are not 2-connected.
    pub connectivity: bool,
    /// Per-component end parity and colour balance over unsaturated vertices.
    pub component_bound: bool,
    /// Reject unbalanced bipartite graphs before searching.
    pub bipartite_precheck: bool,
    /// Before the main search, try a short search on a relabelled copy
    /// (strip-following order for products). Can only produce cycles.
    pub warm_start: bool,
}

impl SolverOptions {
    pub const ALL: SolverOptions = SolverOptions {
        forcing: true,
        connectivity: true,
        component_bound: true,
        bipartite_precheck: true,
        warm_start: true,
    };
    pub const NONE: SolverOptions = SolverOptions {
        forcing: false,
        connectivity: false,
        component_bound: false,
        bipartite_precheck: false,
        warm_start: false,
    };
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions::ALL
    }
}

/// Counters collected during one search.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
    pub propagation_failures: u64,
    pub connectivity_cuts: u64,
    pub component_cuts: u64,
}

enum Change {
    Status(usize),
    Fragment { v: Vertex, partner: Vertex, size: u32 },
    Closed,
}

pub(crate) enum Flow {
    Found,
    Exhausted,
    OutOfBudget,
}

pub(crate) struct Engine {
    n: usize,
    opts: SolverOptions,
    edge_ends: Vec<(Vertex, Vertex)>,
    incident: Vec<Vec<(Vertex, usize)>>,
    status: Vec<u8>,
    req: Vec<u8>,
    avail: Vec<u8>,
    partner: Vec<Vertex>,
    size: Vec<u32>,
    closed: bool,
    trail: Vec<Change>,
    queue: Vec<Vertex>,
    colour: Option<Vec<bool>>,
    pub(crate) stats: SearchStats,
    budget: u64,
    // scratch space for the cut checks
    mark: Vec<u32>,
    low: Vec<u32>,
    stack: Vec<(Vertex, usize)>,
}

impl Engine {
    pub(crate) fn new(g: &Graph, opts: SolverOptions, budget: u64) -> Self {
        let n = g.n();
        let edge_ends: Vec<(Vertex, Vertex)> = g.edges().collect();
        let mut incident = vec![Vec::new(); n];
        for (e, &(u, v)) in edge_ends.iter().enumerate() {
            incident[u].push((v, e));
            incident[v].push((u, e));
        }
        for list in &mut incident {
            list.sort_unstable();
        }
        Engine {
            n,
            opts,
            status: vec![UNDECIDED; edge_ends.len()],
            req: vec![0; n],
            avail: (0..n).map(|v| g.degree(v).min(u8::MAX as usize) as u8).collect(),
            partner: (0..n).collect(),
            size: vec![1; n],
            closed: false,
            trail: Vec::new(),
            queue: Vec::new(),
            colour: if opts.component_bound { two_colouring(g) } else { None },
            stats: SearchStats::default(),
            budget,
            mark: vec![0; n],
            low: vec![0; n],
            stack: Vec::new(),
            edge_ends,
            incident,
        }
    }

    fn edge_between(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let list = &self.incident[u];
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|k| list[k].1)
    }

    fn set_fragment(&mut self, v: Vertex, partner: Vertex, size: u32) {
        self.trail.push(Change::Fragment {
            v,
            partner: self.partner[v],
            size: self.size[v],
        });
        self.partner[v] = partner;
        self.size[v] = size;
    }

    fn require(&mut self, e: usize) -> bool {
        match self.status[e] {
            REQUIRED => return true,
            EXCLUDED => return false,
            _ => {}
        }
        let (u, v) = self.edge_ends[e];
        if self.req[u] >= 2 || self.req[v] >= 2 {
            return false;
        }
        let (pu, pv) = (self.partner[u], self.partner[v]);
        if pu == v {
            // u and v are the two ends of one fragment
            if self.size[u] as usize != self.n {
                return false;
            }
            self.mark_status(e, REQUIRED);
            self.closed = true;
            self.trail.push(Change::Closed);
            return true;
        }
        self.mark_status(e, REQUIRED);
        let joined = self.size[u] + self.size[v];
        self.set_fragment(pu, pv, joined);
        self.set_fragment(pv, pu, joined);
        self.queue.push(u);
        self.queue.push(v);
        match self.edge_between(pu, pv) {
            Some(f) if joined as usize == self.n => self.require(f),
            Some(f) if self.opts.forcing && self.status[f] == UNDECIDED => self.exclude(f),
            None if joined as usize == self.n => false,
            _ => true,
        }
    }

    fn exclude(&mut self, e: usize) -> bool {
        match self.status[e] {
            EXCLUDED => true,
            REQUIRED => false,
            _ => {
                self.mark_status(e, EXCLUDED);
                let (u, v) = self.edge_ends[e];
                self.queue.push(u);
                self.queue.push(v);
                true
            }
        }
    }

    fn mark_status(&mut self, e: usize, to: u8) {
        let (u, v) = self.edge_ends[e];
        self.status[e] = to;
        if to == REQUIRED {
            self.req[u] += 1;
            self.req[v] += 1;
        } else {
            self.avail[u] -= 1;
            self.avail[v] -= 1;
        }
        self.trail.push(Change::Status(e));
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            match self.trail.pop().unwrap() {
                Change::Status(e) => {
                    let (u, v) = self.edge_ends[e];
                    if self.status[e] == REQUIRED {
                        self.req[u] -= 1;
                        self.req[v] -= 1;
                    } else {
                        self.avail[u] += 1;
                        self.avail[v] += 1;
                    }
                    self.status[e] = UNDECIDED;
                }
                Change::Fragment { v, partner, size } => {
                    self.partner[v] = partner;
                    self.size[v] = size;
                }
                Change::Closed => self.closed = false,
            }
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        while let Some(v) = self.queue.pop() {
            if self.closed {
                self.queue.clear();
                return true;
            }
            if self.avail[v] < 2 {
                self.queue.clear();
                return false;
            }
            if !self.opts.forcing {
                continue;
            }
            let saturate = self.req[v] == 2 && self.avail[v] > 2;
            let force = self.avail[v] == 2 && self.req[v] < 2;
            if !(saturate || force) {
                continue;
            }
            for k in 0..self.incident[v].len() {
                let e = self.incident[v][k].1;
                if self.status[e] != UNDECIDED {
                    continue;
                }
                let ok = if saturate { self.exclude(e) } else { self.require(e) };
                if !ok {
                    return false;
                }
                if self.closed {
                    self.queue.clear();
                    return true;
                }
            }
        }
        true
    }

    /// The usable edges must form a 2-connected spanning graph.
    fn biconnected(&mut self) -> bool {
        let n = self.n;
        self.mark.iter_mut().for_each(|m| *m = 0);
        let mut time = 1u32;
        self.mark[0] = time;
        self.low[0] = time;
        self.stack.clear();
        self.stack.push((0, 0));
        let mut root_children = 0;
        while let Some(&mut (v, ref mut k)) = self.stack.last_mut() {
            if *k < self.incident[v].len() {
                let (w, e) = self.incident[v][*k];
                *k += 1;
                if self.status[e] == EXCLUDED {
                    continue;
                }
                if self.mark[w] == 0 {
                    time += 1;
                    self.mark[w] = time;
                    self.low[w] = time;
                    if v == 0 {
                        root_children += 1;
                    }
                    self.stack.push((w, 0));
                } else {
                    self.low[v] = self.low[v].min(self.mark[w]);
                }
            } else {
                self.stack.pop();
                if let Some(&(parent, _)) = self.stack.last() {
                    let lw = self.low[v];
                    self.low[parent] = self.low[parent].min(lw);
                    if parent != 0 && lw >= self.mark[parent] {
                        return false;
                    }
                }
            }
        }
        time as usize == n && root_children <= 1
    }

    /// Checks the part of the graph not yet inside a fragment's interior.
    ///
    /// Removing every vertex with two required edges leaves the fragment
    /// ends and the untouched vertices; the rest of any Hamiltonian cycle is
    /// a set of paths joining fragment ends through this remainder. So each
    /// component holds an even, positive number of ends, and when the graph
    /// is bipartite its colour surplus must be half the surplus of its ends.
    fn component_bound(&mut self) -> bool {
        let n = self.n;
        let fragments = (0..n).filter(|&v| self.req[v] == 1).count() / 2;
        self.mark.iter_mut().for_each(|m| *m = 0);
        let mut id = 0u32;
        for start in 0..n {
            if self.req[start] == 2 || self.mark[start] != 0 {
                continue;
            }
            id += 1;
            if fragments == 0 && id > 1 {
                return false;
            }
            self.mark[start] = id;
            let mut ends = 0i64;
            let mut end_surplus = 0i64;
            let mut surplus = 0i64;
            let mut last_end = None;
            let mut todo = vec![start];
            while let Some(v) = todo.pop() {
                let sign = match &self.colour {
                    Some(c) if c[v] => 1,
                    Some(_) => -1,
                    None => 0,
                };
                surplus += sign;
                if self.req[v] == 1 {
                    ends += 1;
                    end_surplus += sign;
                    last_end = Some(v);
                }
                for &(w, e) in &self.incident[v] {
                    if self.status[e] == UNDECIDED && self.mark[w] == 0 {
                        self.mark[w] = id;
                        todo.push(w);
                    }
                }
            }
            if fragments > 0 {
                if ends == 0 || ends % 2 == 1 {
                    return false;
                }
                if ends == 2 && fragments > 1 {
                    let x = last_end.unwrap();
                    if self.mark[self.partner[x]] == id {
                        return false;
                    }
                }
            }
            if 2 * surplus != end_surplus {
                return false;
            }
        }
        true
    }

    fn consistent(&mut self) -> bool {
        if !self.propagate() {
            self.stats.propagation_failures += 1;
            return false;
        }
        if self.closed {
            return true;
        }
        if self.opts.connectivity && !self.biconnected() {
            self.stats.connectivity_cuts += 1;
            return false;
        }
        if self.opts.component_bound && !self.component_bound() {
            self.stats.component_cuts += 1;
            return false;
        }
        true
    }

    pub(crate) fn initialise(&mut self) -> bool {
        self.queue.extend(0..self.n);
        self.consistent()
    }

    /// Fragment end with the fewest undecided edges, else an untouched
    /// vertex with the fewest usable edges; ties go to the lower index.
    fn branch_vertex(&self) -> Option<Vertex> {
        let undecided = |v: Vertex| self.incident[v].iter().filter(|&&(_, e)| self.status[e] == UNDECIDED).count();
        let end = (0..self.n)
            .filter(|&v| self.req[v] == 1)
            .map(|v| (undecided(v), v))
            .filter(|&(d, _)| d > 0)
            .min();
        if let Some((_, v)) = end {
            return Some(v);
        }
        (0..self.n)
            .filter(|&v| self.req[v] == 0)
            .map(|v| (self.avail[v], v))
            .filter(|&(d, v)| d > 0 && undecided(v) > 0)
            .min()
            .map(|(_, v)| v)
    }

    pub(crate) fn search(&mut self, depth: usize) -> Flow {
        if self.closed {
            return Flow::Found;
        }
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let choices: Vec<usize> = match self.branch_vertex() {
            Some(v) => self.incident[v]
                .iter()
                .filter(|&&(_, e)| self.status[e] == UNDECIDED)
                .map(|&(_, e)| e)
                .collect(),
            None => return Flow::Exhausted,
        };
        // branch k requires choices[k] after excluding choices[..k]; with a
        // single choice the second branch excludes it
        let branches = if choices.len() == 1 { 2 } else { choices.len() };
        for k in 0..branches {
            if self.stats.nodes >= self.budget {
                return Flow::OutOfBudget;
            }
            self.stats.nodes += 1;
            let mark = self.trail.len();
            let mut ok = choices[..k.min(choices.len())].iter().all(|&e| self.exclude(e));
            if ok {
                ok = match choices.get(k) {
                    Some(&e) => self.require(e),
                    None => true,
                };
            }
            if !ok {
                self.stats.propagation_failures += 1;
            } else if self.consistent() {
                match self.search(depth + 1) {
                    Flow::Exhausted => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
        }
        Flow::Exhausted
    }

    /// The cycle formed by the required edges, starting at 0 and leaving
    /// towards its smaller neighbour.
    pub(crate) fn cycle(&self) -> Vec<Vertex> {
        let mut next = vec![Vec::with_capacity(2); self.n];
        for (e, &(u, v)) in self.edge_ends.iter().enumerate() {
            if self.status[e] == REQUIRED {
                next[u].push(v);
                next[v].push(u);
            }
        }
        let mut cycle = Vec::with_capacity(self.n);
        let (mut prev, mut cur) = (usize::MAX, 0);
        for _ in 0..self.n {
            cycle.push(cur);
            let step = next[cur].iter().copied().filter(|&w| w != prev).min();
            match step {
                Some(w) => {
                    prev = cur;
                    cur = w;
                }
                None => break,
            }
        }
        cycle
    }
}
