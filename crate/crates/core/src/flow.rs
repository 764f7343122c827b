//! Dense unit-augmenting max-flow, enough for desk-scale connectivity.

use std::collections::VecDeque;

pub(crate) struct FlowNetwork {
    n: usize,
    cap: Vec<u32>,
}

impl FlowNetwork {
    pub(crate) fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            cap: vec![0; n * n],
        }
    }

    pub(crate) fn add_arc(&mut self, u: usize, v: usize, c: u32) {
        self.cap[u * self.n + v] += c;
    }

    /// Max flow from `s` to `t`, stopping early once `limit` is reached.
    pub(crate) fn max_flow(mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.n;
        let mut flow = 0;
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while flow < limit {
            parent.fill(usize::MAX);
            parent[s] = s;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for (v, pv) in parent.iter_mut().enumerate() {
                    if *pv == usize::MAX && self.cap[u * n + v] > 0 {
                        *pv = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut bottleneck = u32::MAX;
            let mut v = t;
            while v != s {
                let u = parent[v];
                bottleneck = bottleneck.min(self.cap[u * n + v]);
                v = u;
            }
            let push = bottleneck.min(limit - flow);
            let mut v = t;
            while v != s {
                let u = parent[v];
                self.cap[u * n + v] -= push;
                self.cap[v * n + u] += push;
                v = u;
            }
            flow += push;
        }
        flow
    }
}
