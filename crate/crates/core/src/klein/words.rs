//! Reduced-word ball enumeration with incremental pair values.
//!
//! Serial enumeration is breadth-first (by length, then lexicographic in
//! the letter order a < a^{-1} < b < b^{-1} < ...). The parallel driver
//! splits the ball over first-letter subtrees and merges the per-subtree
//! folds in a fixed order, so aggregate results are deterministic
//! regardless of thread scheduling.

use super::GroupSpec;
use crate::rep::PairElement;
use crate::word::Word;
use rayon::prelude::*;

/// Number of reduced words of length <= max_len in a free group of the
/// given rank: 1 + sum_k 2g (2g-1)^{k-1}.
pub fn ball_size(rank: usize, max_len: usize) -> u64 {
    let g2 = 2 * rank as u64;
    let mut total = 1u64;
    let mut level = g2;
    for _ in 0..max_len {
        total += level;
        level *= g2 - 1;
    }
    // One extra multiplication happens after the last level; harmless.
    total
}

/// Letters in lexicographic order: +1, -1, +2, -2, ...
fn alphabet(rank: usize) -> Vec<i8> {
    let mut letters = Vec::with_capacity(2 * rank);
    for k in 1..=rank as i8 {
        letters.push(k);
        letters.push(-k);
    }
    letters
}

fn dfs_level<F: FnMut(&Word, &PairElement)>(
    spec: &GroupSpec,
    letters: &[i8],
    target: usize,
    path: &mut Vec<i8>,
    values: &mut Vec<PairElement>,
    visit: &mut F,
) {
    if path.len() == target {
        visit(&Word::from_letters(path), values.last().expect("root value"));
        return;
    }
    for &letter in letters {
        if path.last() == Some(&-letter) {
            continue;
        }
        let next = values
            .last()
            .expect("root value")
            .product(&spec.generator_pair(letter));
        path.push(letter);
        values.push(next);
        dfs_level(spec, letters, target, path, values, visit);
        path.pop();
        values.pop();
    }
}

/// Visits every reduced word of length <= max_len with its pair value, in
/// breadth-first order.
pub fn for_each_word<F: FnMut(&Word, &PairElement)>(
    spec: &GroupSpec,
    max_len: usize,
    mut visit: F,
) {
    let letters = alphabet(spec.rank());
    for target in 0..=max_len {
        let mut path = Vec::with_capacity(max_len);
        let mut values = vec![PairElement::identity()];
        dfs_level(spec, &letters, target, &mut path, &mut values, &mut visit);
    }
}

/// Parallel fold over the word ball. Each first-letter subtree folds its
/// words in (length, lex) order into a fresh accumulator; the accumulators
/// merge in letter order after the short serial prefix (the identity).
pub fn par_word_fold<T, Mk, F, M>(spec: &GroupSpec, max_len: usize, mk: Mk, fold: F, merge: M) -> T
where
    T: Send,
    Mk: Fn() -> T + Sync,
    F: Fn(&mut T, &Word, &PairElement) + Sync,
    M: Fn(T, T) -> T + Sync,
{
    if max_len <= 2 {
        let mut acc = mk();
        for_each_word(spec, max_len, |w, p| fold(&mut acc, w, p));
        return acc;
    }
    let letters = alphabet(spec.rank());
    let mut acc = mk();
    fold(&mut acc, &Word::identity(), &PairElement::identity());
    let subtree_results: Vec<T> = letters
        .par_iter()
        .map(|&first| {
            let mut sub = mk();
            for target in 1..=max_len {
                let mut visit = |w: &Word, p: &PairElement| fold(&mut sub, w, p);
                let mut path = vec![first];
                let mut values = vec![spec.generator_pair(first)];
                dfs_level(spec, &letters, target, &mut path, &mut values, &mut visit);
            }
            sub
        })
        .collect();
    for sub in subtree_results {
        acc = merge(acc, sub);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::Mat2;

    fn free_spec(rank: usize) -> GroupSpec {
        // Generic-enough loxodromic generators; values are irrelevant for
        // counting tests.
        let gens = (0..rank)
            .map(|k| {
                let s = 2.0 + k as f64;
                Mat2::diag(
                    num_complex::Complex64::new(s, 0.0),
                    num_complex::Complex64::new(1.0 / s, 0.0),
                )
            })
            .collect();
        GroupSpec::new(gens).unwrap()
    }

    #[test]
    fn counts_small() {
        assert_eq!(ball_size(2, 1), 5);
        assert_eq!(ball_size(2, 2), 17);
        assert_eq!(ball_size(2, 12), 1_062_881);

        let spec = free_spec(2);
        let mut n = 0u64;
        for_each_word(&spec, 2, |_, _| n += 1);
        assert_eq!(n, 17);
    }

    #[test]
    fn bfs_order_and_reduction() {
        let spec = free_spec(2);
        let mut words = Vec::new();
        for_each_word(&spec, 2, |w, _| words.push(format!("{w}")));
        assert_eq!(
            &words[..9],
            &["", "a", "A", "b", "B", "aa", "ab", "aB", "AA"][..]
        );
        assert!(words.iter().all(|w| !w.contains("aA") && !w.contains("Aa")));
    }

    #[test]
    fn parallel_fold_matches_serial() {
        let spec = free_spec(2);
        let serial = {
            let mut sum = 0.0f64;
            let mut count = 0u64;
            for_each_word(&spec, 6, |_, p| {
                sum += p.g.frobenius().ln();
                count += 1;
            });
            (sum, count)
        };
        let par = par_word_fold(
            &spec,
            6,
            || (0.0f64, 0u64),
            |acc, _, p| {
                acc.0 += p.g.frobenius().ln();
                acc.1 += 1;
            },
            |a, b| (a.0 + b.0, a.1 + b.1),
        );
        assert_eq!(serial.1, par.1);
        assert!((serial.0 - par.0).abs() < 1e-6 * serial.0.abs().max(1.0));
    }

    #[test]
    fn group_law_on_word_values() {
        let spec = free_spec(2);
        let mut vals = Vec::new();
        for_each_word(&spec, 4, |w, p| vals.push((w.clone(), p.clone())));
        // Word concatenation agrees with matrix products (spot random pairs
        // deterministically).
        let mut idx = 7usize;
        for _ in 0..10_000 {
            idx = (idx * 31 + 17) % vals.len();
            let jdx = (idx * 13 + 5) % vals.len();
            let (wa, pa) = &vals[idx];
            let (wb, pb) = &vals[jdx];
            let w = wa.concat(wb);
            let direct = spec.value_of(&w);
            let product = pa.product(pb);
            assert!(direct.g.dist(&product.g) < 1e-9 * product.g.frobenius().max(1.0));
            assert!(direct.h.dist(&product.h) < 1e-9 * product.h.frobenius().max(1.0));
        }
    }
}
