//! Shortest paths on the 4-connected grid.
//!
//! `blocked` cells are impassable; everything else costs one step. The start
//! cell itself is never checked against `blocked`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::domain::{Cell, CellSet, Direction};

/// Length of a shortest path with A* and the Manhattan heuristic.
pub fn astar_cost(size: usize, blocked: CellSet, from: Cell, goal: Cell) -> Option<usize> {
    if from == goal {
        return Some(0);
    }
    if blocked.contains(goal) {
        return None;
    }
    let mut g = vec![usize::MAX; size * size];
    let mut open = BinaryHeap::new();
    let mut seq = 0usize;
    g[from.index(size)] = 0;
    open.push(Reverse((from.manhattan(goal), from.manhattan(goal), seq, from)));
    while let Some(Reverse((_, _, _, cell))) = open.pop() {
        let gc = g[cell.index(size)];
        if cell == goal {
            return Some(gc);
        }
        for d in Direction::ALL {
            let Some(n) = cell.step(d, size) else { continue };
            if blocked.contains(n) {
                continue;
            }
            let gn = gc + 1;
            if gn < g[n.index(size)] {
                g[n.index(size)] = gn;
                seq += 1;
                let h = n.manhattan(goal);
                open.push(Reverse((gn + h, h, seq, n)));
            }
        }
    }
    None
}

/// First step of a shortest path from `from` to `goal`, ties broken by
/// canonical direction order. `None` when the goal is unreachable or reached.
pub fn astar_next(size: usize, blocked: CellSet, from: Cell, goal: Cell) -> Option<Direction> {
    if from == goal {
        return None;
    }
    let best = astar_cost(size, blocked, from, goal)?;
    Direction::ALL.into_iter().find(|&d| {
        from.step(d, size).filter(|n| !blocked.contains(*n)).and_then(|n| astar_cost(size, blocked, n, goal))
            == Some(best - 1)
    })
}

/// Exact goal distances for every cell, from one reverse breadth-first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceField {
    size: usize,
    blocked: CellSet,
    dist: Vec<u32>,
}

impl DistanceField {
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn new(size: usize, blocked: CellSet, goal: Cell) -> Self {
        let mut dist = vec![Self::UNREACHABLE; size * size];
        let mut queue = VecDeque::new();
        if !blocked.contains(goal) {
            dist[goal.index(size)] = 0;
            queue.push_back(goal);
        }
        while let Some(c) = queue.pop_front() {
            let dc = dist[c.index(size)];
            for d in Direction::ALL {
                if let Some(n) = c.step(d, size) {
                    if !blocked.contains(n) && dist[n.index(size)] == Self::UNREACHABLE {
                        dist[n.index(size)] = dc + 1;
                        queue.push_back(n);
                    }
                }
            }
        }
        Self { size, blocked, dist }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocked(&self) -> CellSet {
        self.blocked
    }

    /// Steps to the goal through unblocked cells. `from` may itself be blocked.
    pub fn distance(&self, from: Cell) -> Option<u32> {
        if self.dist[from.index(self.size)] != Self::UNREACHABLE {
            return Some(self.dist[from.index(self.size)]);
        }
        if !self.blocked.contains(from) {
            return None;
        }
        Direction::ALL
            .into_iter()
            .filter_map(|d| from.step(d, self.size))
            .filter_map(|n| self.distance_unblocked(n))
            .min()
            .map(|d| d + 1)
    }

    fn distance_unblocked(&self, c: Cell) -> Option<u32> {
        let d = self.dist[c.index(self.size)];
        (d != Self::UNREACHABLE).then_some(d)
    }

    /// Same contract as [`astar_next`].
    pub fn next_step(&self, from: Cell) -> Option<Direction> {
        self.best_step_excluding(from, &[])
    }

    /// Best first step toward the goal among directions not in `excluded`.
    /// This may be a detour when the optimal step is excluded.
    pub fn best_step_excluding(&self, from: Cell, excluded: &[Direction]) -> Option<Direction> {
        let mut best: Option<(u32, Direction)> = None;
        for d in Direction::ALL {
            if excluded.contains(&d) {
                continue;
            }
            let Some(n) = from.step(d, self.size) else { continue };
            let Some(dn) = self.distance_unblocked(n) else { continue };
            if best.is_none_or(|(bd, _)| dn < bd) {
                best = Some((dn, d));
            }
        }
        best.map(|(_, d)| d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathCount {
    None,
    Unique,
    Multiple,
}

/// Whether zero, one, or several simple paths join `from` and `goal`.
///
/// The path is unique exactly when every edge of one shortest path is a
/// bridge of the free-cell graph.
pub fn safe_path_count(size: usize, blocked: CellSet, from: Cell, goal: Cell) -> PathCount {
    if blocked.contains(from) || blocked.contains(goal) {
        return PathCount::None;
    }
    let field = DistanceField::new(size, blocked, goal);
    if field.distance_unblocked(from).is_none() {
        return PathCount::None;
    }
    let bridges = bridges(size, blocked);
    let mut cur = from;
    while cur != goal {
        let d = field.next_step(cur).expect("reachable cell has a next step");
        let next = cur.step(d, size).unwrap();
        if !bridges.contains(&edge_key(cur, next)) {
            return PathCount::Multiple;
        }
        cur = next;
    }
    PathCount::Unique
}

fn edge_key(a: Cell, b: Cell) -> (Cell, Cell) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn bridges(size: usize, blocked: CellSet) -> Vec<(Cell, Cell)> {
    // Tarjan's low-link, iterative to keep the stack flat.
    let n = size * size;
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    let cell_of = |i: usize| Cell::new(i / size, i % size);
    for root in 0..n {
        if disc[root] != usize::MAX || blocked.contains(cell_of(root)) {
            continue;
        }
        // (node, parent, next direction index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (u, parent, ref mut di)) = stack.last_mut() {
            if *di < 4 {
                let d = Direction::ALL[*di];
                *di += 1;
                let Some(v) = cell_of(u).step(d, size) else { continue };
                if blocked.contains(v) {
                    continue;
                }
                let vi = v.index(size);
                if vi == parent {
                    continue;
                }
                if disc[vi] == usize::MAX {
                    disc[vi] = timer;
                    low[vi] = timer;
                    timer += 1;
                    stack.push((vi, u, 0));
                } else {
                    low[u] = low[u].min(disc[vi]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        out.push(edge_key(cell_of(parent), cell_of(u)));
                    }
                }
            }
        }
    }
    out
}
