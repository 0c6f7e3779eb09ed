//! Permutations of [n] as image words (1-based), composed left to right.

/// x then y: i -> (i x) y.
pub fn compose(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().map(|&i| y[i - 1]).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

pub fn inverse(x: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; x.len()];
    for (i, &j) in x.iter().enumerate() {
        inv[j - 1] = i + 1;
    }
    inv
}

/// Number of inversions.
pub fn length(x: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i] > x[j] {
                c += 1;
            }
        }
    }
    c
}

/// The permutation s_(k_1) s_(k_2) ... of [n].
pub fn from_word(n: usize, word: &[usize]) -> Vec<usize> {
    let mut p = identity(n);
    for &k in word {
        // right multiplication by s_k swaps the values k and k+1
        for v in p.iter_mut() {
            if *v == k {
                *v = k + 1;
            } else if *v == k + 1 {
                *v = k;
            }
        }
    }
    p
}

/// Lexicographically smallest reduced word: repeatedly strip the smallest
/// left descent (a position k with x_k > x_(k+1)).
pub fn reduced_word(x: &[usize]) -> Vec<usize> {
    let mut w = x.to_vec();
    let mut word = Vec::new();
    while let Some(k) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) {
        w.swap(k, k + 1);
        word.push(k + 1);
    }
    word
}

/// All permutations of [n] in lexicographic order of their words.
pub fn all(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// k-subsets of [n] in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_words_rebuild_their_permutation() {
        for n in 1..=5 {
            for p in all(n) {
                let w = reduced_word(&p);
                assert_eq!(w.len(), length(&p));
                assert_eq!(from_word(n, &w), p);
            }
        }
    }

    #[test]
    fn longest_element_of_s3() {
        assert_eq!(reduced_word(&[3, 2, 1]), vec![1, 2, 1]);
    }

    #[test]
    fn composition_is_left_to_right() {
        // s_1 s_2: 1 -> 2 -> 3
        assert_eq!(from_word(3, &[1, 2]), vec![3, 1, 2]);
        assert_eq!(compose(&[2, 1, 3], &[1, 3, 2]), vec![3, 1, 2]);
        let p = vec![3, 1, 4, 2];
        assert_eq!(compose(&p, &inverse(&p)), identity(4));
    }

    #[test]
    fn counting_helpers() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(factorial(4), 24);
        assert_eq!(all(3).len(), 6);
    }
}
