//! (p,q)-shuffles.

/// A partition of `{0,…,p+q-1}` into increasing `sigma` (p entries) and
/// `tau` (q entries).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shuffle {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
}

impl Shuffle {
    pub fn p(&self) -> usize {
        self.sigma.len()
    }

    pub fn q(&self) -> usize {
        self.tau.len()
    }

    /// `ε(σ) = p + Σ_{i=1}^{p} (σ_i - i)`
    pub fn epsilon(&self) -> i64 {
        let p = self.sigma.len() as i64;
        p + self.sigma.iter().enumerate().map(|(i, &s)| s as i64 - (i as i64 + 1)).sum::<i64>()
    }

    pub fn sign(&self) -> i64 {
        crate::scalar::parity_sign(self.epsilon())
    }

    /// Sign of the permutation `(σ_1,…,σ_p,τ_1,…,τ_q)` by counting inversions.
    pub fn inversion_sign(&self) -> i64 {
        let perm: Vec<usize> = self.sigma.iter().chain(self.tau.iter()).copied().collect();
        let mut inv = 0i64;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        crate::scalar::parity_sign(inv)
    }
}

/// All `C(p+q, p)` shuffles in lexicographic order of `sigma`, with signs
/// `(-1)^{ε(σ)}`.
pub fn shuffles(p: usize, q: usize) -> Vec<(Shuffle, i64)> {
    let n = p + q;
    let mut out = Vec::new();
    let mut sigma = Vec::with_capacity(p);
    fn go(start: usize, n: usize, p: usize, sigma: &mut Vec<usize>, out: &mut Vec<(Shuffle, i64)>) {
        if sigma.len() == p {
            let tau = (0..n).filter(|i| !sigma.contains(i)).collect();
            let s = Shuffle { sigma: sigma.clone(), tau };
            let sign = s.sign();
            out.push((s, sign));
            return;
        }
        for v in start..n {
            sigma.push(v);
            go(v + 1, n, p, sigma, out);
            sigma.pop();
        }
    }
    go(0, n, p, &mut sigma, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let s = shuffles(0, 3);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].1, 1);
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].0.sigma.clone(), s[0].0.epsilon(), s[0].1), (vec![0], 0, 1));
        assert_eq!((s[1].0.sigma.clone(), s[1].0.epsilon(), s[1].1), (vec![1], 1, -1));
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(3, 2).len(), 10);
    }
}
