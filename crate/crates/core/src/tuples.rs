//! Index tuples: increasing combinations and permutation signs.

/// All strictly increasing `k`-tuples drawn from `0..d`, in lexicographic order.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Advance the rightmost index that still has room.
        let mut i = k;
        let next = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if cur[i] < d - k + i {
                break Some(i);
            }
        };
        let Some(i) = next else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Sorts `indices` and returns the sign of the sorting permutation, or `None`
/// if an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut negative = false;
    // Insertion sort; tuples are short.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Converts 0-based indices to the 1-based form used in files and labels.
pub fn one_based(t: &[usize]) -> Vec<usize> {
    t.iter().map(|i| i + 1).collect()
}
