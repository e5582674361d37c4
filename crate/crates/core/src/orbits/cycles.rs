//! Johnson's elementary-circuit enumeration.

use super::OrbitDigraph;

/// Every simple cycle, as a node sequence starting at its smallest node.
/// Returns `None` once more than `cap` cycles have been found.
pub(super) fn simple_cycles(graph: &OrbitDigraph, cap: usize) -> Option<Vec<Vec<usize>>> {
    let n = graph.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|c| graph.successors(c).collect()).collect();
    let mut out = Vec::new();
    for start in 0..n {
        let mut state = Circuit {
            adj: &adj,
            start,
            blocked: vec![false; n],
            blocked_by: vec![Vec::new(); n],
            stack: Vec::new(),
            out: &mut out,
            cap,
        };
        state.search(start)?;
    }
    Some(out)
}

struct Circuit<'a> {
    adj: &'a [Vec<usize>],
    start: usize,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    out: &'a mut Vec<Vec<usize>>,
    cap: usize,
}

impl Circuit<'_> {
    fn search(&mut self, v: usize) -> Option<bool> {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in &self.adj[v] {
            if w < self.start {
                continue;
            }
            if w == self.start {
                if self.out.len() >= self.cap {
                    return None;
                }
                self.out.push(self.stack.clone());
                found = true;
            } else if !self.blocked[w] && self.search(w)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &self.adj[v] {
                if w >= self.start && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        Some(found)
    }

    fn unblock(&mut self, v: usize) {
        self.blocked[v] = false;
        let waiting = std::mem::take(&mut self.blocked_by[v]);
        for w in waiting {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}
