//! Strand-following engine for diagram gluings.
//!
//! Every tangle operation in this crate (stacking, juxtaposition, partial
//! top contraction, closures, turn-backs) reduces to the same bookkeeping:
//! take the matchings of the participating diagrams, add "link" edges where
//! boundary points are welded together, then trace each strand. Boundary
//! points of the output pair up along paths; closed cycles among interior
//! points count as removed loops.

/// A gluing graph: every node carries exactly one matching edge (`mate`),
/// and interior nodes carry exactly one link edge.
pub(crate) struct Gluing {
    mate: Vec<usize>,
    link: Vec<Option<usize>>,
}

impl Gluing {
    pub(crate) fn new(total: usize) -> Self {
        Gluing {
            mate: vec![usize::MAX; total],
            link: vec![None; total],
        }
    }

    /// Installs the matching of one participating diagram at `offset`.
    pub(crate) fn set_mates(&mut self, offset: usize, mates: &[usize]) {
        for (i, &m) in mates.iter().enumerate() {
            self.mate[offset + i] = offset + m;
        }
    }

    /// Welds two points together.
    pub(crate) fn add_link(&mut self, a: usize, b: usize) {
        debug_assert!(self.link[a].is_none() && self.link[b].is_none());
        self.link[a] = Some(b);
        self.link[b] = Some(a);
    }

    /// Traces all strands. `boundary[i]` is the node that becomes output
    /// point `i`; returns the induced matching on output points plus the
    /// number of closed interior loops.
    pub(crate) fn resolve(&self, boundary: &[usize]) -> (Vec<usize>, usize) {
        let n = self.mate.len();
        let mut boundary_index = vec![usize::MAX; n];
        for (i, &node) in boundary.iter().enumerate() {
            debug_assert!(
                self.link[node].is_none(),
                "boundary points must not be welded"
            );
            boundary_index[node] = i;
        }
        let mut visited = vec![false; n];
        let mut out_mate = vec![usize::MAX; boundary.len()];
        for (i, &start) in boundary.iter().enumerate() {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut cur = self.mate[start];
            loop {
                debug_assert!(cur != usize::MAX, "node without mate");
                visited[cur] = true;
                if boundary_index[cur] != usize::MAX {
                    let j = boundary_index[cur];
                    out_mate[i] = j;
                    out_mate[j] = i;
                    break;
                }
                let next = self.link[cur].expect("interior point without link");
                visited[next] = true;
                cur = self.mate[next];
            }
        }
        // Remaining unvisited points lie on closed loops.
        let mut loops = 0;
        for start in 0..n {
            if visited[start] || self.mate[start] == usize::MAX {
                continue;
            }
            loops += 1;
            let mut cur = start;
            loop {
                visited[cur] = true;
                let m = self.mate[cur];
                visited[m] = true;
                cur = self.link[m].expect("interior point without link");
                if cur == start {
                    break;
                }
            }
        }
        (out_mate, loops)
    }
}
