//! Prefix-maximum Fenwick tree.

/// Binary indexed tree answering `max(keys[0..i])` under point updates that
/// only ever raise a key.
#[derive(Clone, Debug)]
pub struct PrefixMax<K> {
    tree: Vec<K>,
    bottom: K,
}

impl<K: Copy + PartialOrd> PrefixMax<K> {
    /// `n` slots, all holding `bottom`.
    pub fn new(n: usize, bottom: K) -> Self {
        PrefixMax { tree: vec![bottom; n + 1], bottom }
    }

    pub fn len(&self) -> usize {
        self.tree.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Raises slot `i` to at least `key`.
    pub fn raise(&mut self, i: usize, key: K) {
        let mut j = i + 1;
        while j < self.tree.len() {
            if self.tree[j] < key {
                self.tree[j] = key;
            }
            j += j & j.wrapping_neg();
        }
    }

    /// Maximum over slots `0..i`, or `bottom` when `i == 0`.
    pub fn prefix_max(&self, i: usize) -> K {
        let mut best = self.bottom;
        let mut j = i.min(self.len());
        while j > 0 {
            if best < self.tree[j] {
                best = self.tree[j];
            }
            j &= j - 1;
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_naive(ops in proptest::collection::vec((0usize..40, -100i64..100), 0..200)) {
            let mut tree = PrefixMax::new(40, i64::MIN);
            let mut naive = vec![i64::MIN; 40];
            for (i, k) in ops {
                tree.raise(i, k);
                naive[i] = naive[i].max(k);
                for q in 0..=40 {
                    let expect = naive[..q].iter().copied().max().unwrap_or(i64::MIN);
                    prop_assert_eq!(tree.prefix_max(q), expect);
                }
            }
        }
    }

    #[test]
    fn empty_prefix_is_bottom() {
        let t: PrefixMax<f64> = PrefixMax::new(0, f64::NEG_INFINITY);
        assert!(t.is_empty());
        assert_eq!(t.prefix_max(5), f64::NEG_INFINITY);
    }
}
