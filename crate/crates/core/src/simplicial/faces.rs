//! Iterated face maps `d_I = d_{i_1} ∘ … ∘ d_{i_s}`.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceIndexError {
    #[error("face indices must be strictly increasing and within 1..={n}: {indices:?}")]
    Invalid { n: usize, indices: Vec<usize> },
    #[error("position {j} out of range 1..={s}")]
    Position { j: usize, s: usize },
}

/// `I = (i_1 < … < i_s)` with `1 ≤ i_1`, `i_s ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceMultiIndex {
    pub n: usize,
    pub indices: Vec<usize>,
}

impl FaceMultiIndex {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self, FaceIndexError> {
        let ok = indices.windows(2).all(|w| w[0] < w[1]) && indices.iter().all(|&i| 1 <= i && i <= n);
        if !ok {
            return Err(FaceIndexError::Invalid { n, indices });
        }
        Ok(FaceMultiIndex { n, indices })
    }

    pub fn s(&self) -> usize {
        self.indices.len()
    }

    /// All of `𝒦_{n,s}`.
    pub fn all(n: usize, s: usize) -> Vec<Self> {
        let mut out = Vec::new();
        fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<FaceMultiIndex>) {
            if cur.len() == s {
                out.push(FaceMultiIndex { n, indices: cur.clone() });
                return;
            }
            for v in start..=n {
                cur.push(v);
                go(v + 1, n, s, cur, out);
                cur.pop();
            }
        }
        go(1, n, s, &mut Vec::new(), &mut out);
        out
    }
}

/// Normal form of a composite `d_{a_1} ∘ d_{a_2} ∘ …` (leftmost applied
/// last): strictly increasing, using `d_a d_b = d_b d_{a+1}` for `a ≥ b`.
pub fn face_normal_form(word: &[usize]) -> Vec<usize> {
    let mut w = word.to_vec();
    loop {
        let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] >= w[k + 1]) else {
            return w;
        };
        let (a, b) = (w[k], w[k + 1]);
        w[k] = b;
        w[k + 1] = a + 1;
    }
}

/// The unique `κ(j)` with `d_{κ(j)} ∘ d_{I(ĵ)} = d_I`, together with `I(ĵ)`.
pub fn kappa(i: &FaceMultiIndex, j: usize) -> Result<(usize, FaceMultiIndex), FaceIndexError> {
    if j < 1 || j > i.s() {
        return Err(FaceIndexError::Position { j, s: i.s() });
    }
    let mut rest = i.indices.clone();
    rest.remove(j - 1);
    let k = i.indices[j - 1] - (j - 1);
    let mut word = vec![k];
    word.extend_from_slice(&rest);
    debug_assert_eq!(face_normal_form(&word), i.indices);
    Ok((k, FaceMultiIndex { n: i.n, indices: rest }))
}
