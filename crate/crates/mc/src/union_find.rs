/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    /// Resets to `n` singletons, reusing the allocation.
    pub fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n as u32);
        self.size.clear();
        self.size.resize(n, 1);
    }

    #[inline]
    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    #[inline]
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    /// Canonical labels `0..count`, numbered by first appearance in vertex
    /// order, so they depend only on the partition.
    pub fn labels(&mut self, out: &mut Vec<u32>) -> usize {
        let n = self.parent.len();
        out.clear();
        out.resize(n, u32::MAX);
        let mut root_label = vec![u32::MAX; n];
        let mut count = 0u32;
        for v in 0..n {
            let r = self.find(v);
            if root_label[r] == u32::MAX {
                root_label[r] = count;
                count += 1;
            }
            out[v] = root_label[r];
        }
        count as usize
    }
}
