//! Frequency-sorted Huffman coding over the corpus vocabulary.
//!
//! Each leaf's root-to-leaf path selects which internal-node vectors the
//! hierarchical softmax touches, so per-token updates cost O(log |V|) instead
//! of O(|V|).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Error, Debug)]
pub enum HuffmanError {
    #[error("vocabulary must have at least 2 tokens, got {0}")]
    VocabularyTooSmall(usize),
    #[error("token {0} has zero frequency")]
    ZeroFrequency(usize),
}

/// Prefix-free binary codes plus the matching internal-node paths.
///
/// `code(w)[i]` is the branch taken at internal node `path(w)[i]`; the two
/// sequences always have equal length.
#[derive(Clone, Debug)]
pub struct HuffmanTree {
    codes: Vec<Vec<bool>>,
    paths: Vec<Vec<u32>>,
}

impl HuffmanTree {
    /// Builds the optimal prefix code by repeatedly merging the two
    /// lowest-frequency subtrees. Ties break on (count, creation id) so the
    /// tree is identical across runs.
    pub fn build(frequencies: &[u64]) -> Result<HuffmanTree, HuffmanError> {
        let n = frequencies.len();
        if n < 2 {
            return Err(HuffmanError::VocabularyTooSmall(n));
        }
        if let Some(zero) = frequencies.iter().position(|&f| f == 0) {
            return Err(HuffmanError::ZeroFrequency(zero));
        }

        // nodes 0..n are leaves; n..2n-1 are internal in creation order
        let mut parent = vec![0usize; 2 * n - 1];
        let mut branch = vec![false; 2 * n - 1];
        let mut heap: BinaryHeap<Reverse<(u64, usize)>> = frequencies
            .iter()
            .enumerate()
            .map(|(i, &f)| Reverse((f, i)))
            .collect();

        for next in n..2 * n - 1 {
            let Reverse((ca, a)) = heap.pop().expect("heap holds >= 2 entries");
            let Reverse((cb, b)) = heap.pop().expect("heap holds >= 2 entries");
            parent[a] = next;
            branch[a] = false;
            parent[b] = next;
            branch[b] = true;
            heap.push(Reverse((ca + cb, next)));
        }

        let root = 2 * n - 2;
        let mut codes = Vec::with_capacity(n);
        let mut paths = Vec::with_capacity(n);
        for leaf in 0..n {
            let mut code = Vec::new();
            let mut path = Vec::new();
            let mut node = leaf;
            while node != root {
                code.push(branch[node]);
                // internal node's vector row is its creation index
                path.push((parent[node] - n) as u32);
                node = parent[node];
            }
            code.reverse();
            path.reverse();
            codes.push(code);
            paths.push(path);
        }
        Ok(HuffmanTree { codes, paths })
    }

    pub fn leaf_count(&self) -> usize {
        self.codes.len()
    }

    pub fn internal_count(&self) -> usize {
        self.codes.len() - 1
    }

    pub fn code(&self, token: usize) -> &[bool] {
        &self.codes[token]
    }

    pub fn path(&self, token: usize) -> &[u32] {
        &self.paths[token]
    }
}
