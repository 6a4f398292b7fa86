//! Small permutation helpers shared by the tree and path modules.

/// Sign of a permutation given as a sequence of distinct values.
///
/// The values need not be `0..n`; only their relative order matters.
/// Returns `1` for even and `-1` for odd permutations.
pub fn sign<T: Ord>(seq: &[T]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// All `size`-subsets of `items`, each in increasing order, in lexicographic order.
pub fn subsets_of_size<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], size: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// All subsets of `items`, ordered by size and then lexicographically.
pub fn all_subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0..=items.len()).flat_map(|s| subsets_of_size(items, s)).collect()
}
