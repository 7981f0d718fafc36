use std::fmt;

/// Strictly increasing tuple of 0-based basis indices. Displayed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Builds from an already strictly increasing tuple.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(MultiIndex(indices))
        } else {
            None
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

/// Sorts `seq` and returns it with the sign of the sorting permutation, or
/// `None` when an index repeats (the skew value is zero).
pub fn canonical_multiindex(seq: &[usize]) -> Option<(MultiIndex, i8)> {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((MultiIndex(v), sign))
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(MultiIndex(cur.clone()));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All `k`-tuples from `0..n` with repetition, in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `idx` with position `pos` removed.
pub fn omit(idx: &[usize], pos: usize) -> Vec<usize> {
    idx.iter()
        .enumerate()
        .filter(|&(k, _)| k != pos)
        .map(|(_, &i)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        // 1-based (1,2,3), (2,1,3), (1,1,2)
        assert_eq!(canonical_multiindex(&[0, 1, 2]), Some((mi(&[0, 1, 2]), 1)));
        assert_eq!(canonical_multiindex(&[1, 0, 2]), Some((mi(&[0, 1, 2]), -1)));
        assert_eq!(canonical_multiindex(&[0, 0, 1]), None);
        assert_eq!(mi(&[0, 1, 2]).to_string(), "(1,2,3)");
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(4, 4).len(), 1);
        assert_eq!(combinations(3, 0), vec![mi(&[])]);
        assert!(combinations(2, 3).is_empty());
        let c = combinations(4, 2);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }

    fn inversion_sign(p: &[usize]) -> i8 {
        let mut s = 1;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    }

    proptest! {
        #[test]
        fn sign_is_multiplicative(a in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle(),
                                  b in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let composed: Vec<usize> = b.iter().map(|&i| a[i]).collect();
            let sa = canonical_multiindex(&a).unwrap().1;
            let sb = canonical_multiindex(&b).unwrap().1;
            let sc = canonical_multiindex(&composed).unwrap().1;
            prop_assert_eq!(sc, sa * sb);
            prop_assert_eq!(sa, inversion_sign(&a));
        }
    }
}
