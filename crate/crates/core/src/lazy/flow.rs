//! Unit-capacity maximum flow by shortest augmenting paths.

use std::collections::VecDeque;

pub(crate) const INF: u32 = u32::MAX / 2;

pub(crate) struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    /// Adds an arc `a -> b` with capacity `c` and its residual twin.
    pub(crate) fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// An undirected edge: capacity `c` in each direction.
    pub(crate) fn edge(&mut self, a: usize, b: usize, c: u32) {
        self.arc(a, b, c);
        self.arc(b, a, c);
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        let mut total = 0;
        loop {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                for &a in &self.head[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && via[y] == usize::MAX && y != s {
                        via[y] = a;
                        if y == t {
                            reached = true;
                            break;
                        }
                        queue.push_back(y);
                    }
                }
                if reached {
                    break;
                }
            }
            if !reached {
                return total;
            }
            let mut bottleneck = INF;
            let mut y = t;
            while y != s {
                let a = via[y];
                bottleneck = bottleneck.min(self.cap[a]);
                y = self.to[a ^ 1];
            }
            let mut y = t;
            while y != s {
                let a = via[y];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                y = self.to[a ^ 1];
            }
            total += bottleneck;
        }
    }
}
