//! Persistent ordered set of integers.
//!
//! Every insertion produces a new version; older versions stay valid and
//! answer queries exactly as before. The tree is an AVL tree with path
//! copying, so an insertion allocates `O(log n)` nodes and leaves all earlier
//! nodes untouched. Nodes live in a single arena and refer to each other by
//! index.

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    key: u32,
    left: u32,
    right: u32,
    height: u8,
}

/// Ordered set with one immutable version per insertion.
///
/// Version ids are dense: version 0 is empty and version `v` holds the first
/// `v` inserted keys.
#[derive(Debug, Clone)]
pub struct PersistentSet {
    nodes: Vec<Node>,
    roots: Vec<u32>,
}

impl Default for PersistentSet {
    fn default() -> Self {
        Self::new()
    }
}

impl PersistentSet {
    pub fn new() -> Self {
        Self {
            nodes: Vec::new(),
            roots: vec![NIL],
        }
    }

    pub fn with_capacity(inserts: usize) -> Self {
        let depth = (usize::BITS - inserts.leading_zeros()) as usize + 2;
        Self {
            nodes: Vec::with_capacity(inserts * depth),
            roots: {
                let mut r = Vec::with_capacity(inserts + 1);
                r.push(NIL);
                r
            },
        }
    }

    /// Id of the most recent version.
    pub fn latest(&self) -> usize {
        self.roots.len() - 1
    }

    /// Number of versions, including the empty version 0.
    pub fn versions(&self) -> usize {
        self.roots.len()
    }

    /// Total arena size; grows by `O(log n)` per insertion.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Inserts `key` into a copy of the latest version and returns the new
    /// version id.
    ///
    /// Panics if `key` is already present.
    pub fn insert(&mut self, key: u32) -> usize {
        let root = self.roots[self.latest()];
        let new_root = self.insert_at(root, key);
        self.roots.push(new_root);
        self.latest()
    }

    /// Largest key in `version` strictly less than `z`.
    pub fn pred_strict(&self, version: usize, z: u32) -> Option<u32> {
        let mut cur = self.root(version);
        let mut best = None;
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            if node.key < z {
                best = Some(node.key);
                cur = node.right;
            } else {
                cur = node.left;
            }
        }
        best
    }

    /// Smallest key in `version` strictly greater than `z`.
    pub fn succ_strict(&self, version: usize, z: u32) -> Option<u32> {
        let mut cur = self.root(version);
        let mut best = None;
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            if node.key > z {
                best = Some(node.key);
                cur = node.left;
            } else {
                cur = node.right;
            }
        }
        best
    }

    pub fn contains(&self, version: usize, key: u32) -> bool {
        let mut cur = self.root(version);
        while cur != NIL {
            let node = &self.nodes[cur as usize];
            match key.cmp(&node.key) {
                std::cmp::Ordering::Less => cur = node.left,
                std::cmp::Ordering::Greater => cur = node.right,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Height of the tree for `version`, which bounds every query path.
    pub fn height(&self, version: usize) -> usize {
        self.h(self.root(version)) as usize
    }

    /// Keys of `version` in increasing order.
    pub fn to_vec(&self, version: usize) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut cur = self.root(version);
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.nodes[cur as usize].left;
            }
            let n = stack.pop().unwrap();
            out.push(self.nodes[n as usize].key);
            cur = self.nodes[n as usize].right;
        }
        out
    }

    fn root(&self, version: usize) -> u32 {
        assert!(
            version < self.roots.len(),
            "version {version} does not exist (latest is {})",
            self.latest()
        );
        self.roots[version]
    }

    fn h(&self, n: u32) -> u8 {
        if n == NIL {
            0
        } else {
            self.nodes[n as usize].height
        }
    }

    fn alloc(&mut self, key: u32, left: u32, right: u32) -> u32 {
        let height = self.h(left).max(self.h(right)) + 1;
        let id = u32::try_from(self.nodes.len()).ok().filter(|&i| i != NIL);
        let id = id.expect("persistent set arena exhausted");
        self.nodes.push(Node {
            key,
            left,
            right,
            height,
        });
        id
    }

    fn insert_at(&mut self, n: u32, key: u32) -> u32 {
        if n == NIL {
            return self.alloc(key, NIL, NIL);
        }
        let node = self.nodes[n as usize];
        let (left, right) = match key.cmp(&node.key) {
            std::cmp::Ordering::Less => (self.insert_at(node.left, key), node.right),
            std::cmp::Ordering::Greater => (node.left, self.insert_at(node.right, key)),
            std::cmp::Ordering::Equal => panic!("key {key} already present"),
        };
        self.balance(node.key, left, right)
    }

    // Builds a node from `key` and two subtrees whose heights differ by at
    // most two, rotating (with fresh copies) when needed.
    fn balance(&mut self, key: u32, left: u32, right: u32) -> u32 {
        let (hl, hr) = (self.h(left), self.h(right));
        if hl > hr + 1 {
            let l = self.nodes[left as usize];
            if self.h(l.left) >= self.h(l.right) {
                let new_right = self.alloc(key, l.right, right);
                self.alloc(l.key, l.left, new_right)
            } else {
                let lr = self.nodes[l.right as usize];
                let new_left = self.alloc(l.key, l.left, lr.left);
                let new_right = self.alloc(key, lr.right, right);
                self.alloc(lr.key, new_left, new_right)
            }
        } else if hr > hl + 1 {
            let r = self.nodes[right as usize];
            if self.h(r.right) >= self.h(r.left) {
                let new_left = self.alloc(key, left, r.left);
                self.alloc(r.key, new_left, r.right)
            } else {
                let rl = self.nodes[r.left as usize];
                let new_left = self.alloc(key, left, rl.left);
                let new_right = self.alloc(r.key, rl.right, r.right);
                self.alloc(rl.key, new_left, new_right)
            }
        } else {
            self.alloc(key, left, right)
        }
    }
}
