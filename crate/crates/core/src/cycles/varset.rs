use std::fmt;

/// A set of coordinate indices, used for the coordinate subspace `V(S)`
/// where every variable in `S` vanishes.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(pub u64);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = 0u64;
        for i in it {
            assert!(i < 64, "variable index out of range");
            s |= 1 << i;
        }
        VarSet(s)
    }

    pub fn singleton(i: usize) -> Self {
        Self::from_indices([i])
    }

    pub fn all(n: usize) -> Self {
        Self::from_indices(0..n)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// `[x=y=0]`-style label.
    pub fn render(self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .iter()
            .map(|i| names.get(i).cloned().unwrap_or_else(|| format!("z{i}")))
            .collect();
        format!("[{}=0]", parts.join("="))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Codimension of a union of coordinate subspaces; `None` for the empty union.
pub fn union_codim(components: &[VarSet]) -> Option<usize> {
    components.iter().map(|s| s.len()).min()
}
