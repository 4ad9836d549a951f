//! Small numeric helpers shared by the generators, finders and the harness.
//!
//! Wherever a quantity like √k or (n/k)^{1/3} has to become an integer
//! parameter, it is floored. The integer roots here are exact (no floating
//! point rounding at perfect powers).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Binomial coefficient as a float, usable when the exact value overflows.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Generalised binomial `x choose k` for a real upper argument (0 when `x < k - 1`).
pub fn binomial_real(x: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        let f = x - i as f64;
        if f <= 0.0 {
            return 0.0;
        }
        acc *= f / (i + 1) as f64;
    }
    acc
}

/// Largest `r` with `r^k <= x`.
pub fn iroot(x: u128, k: u32) -> u128 {
    if x < 2 || k == 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64).floor() as u128;
    while r > 0 && pow_sat(r, k) > x {
        r -= 1;
    }
    while pow_sat(r + 1, k) <= x {
        r += 1;
    }
    r
}

fn pow_sat(b: u128, k: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = match acc.checked_mul(b) {
            Some(v) => v,
            None => return u128::MAX,
        };
    }
    acc
}

pub fn isqrt(x: usize) -> usize {
    iroot(x as u128, 2) as usize
}

/// Largest `d` with `d^3 * k <= n`, i.e. the floor of (n/k)^{1/3}.
pub fn cube_root_ratio(n: usize, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    iroot((n / k) as u128, 3) as usize
}

/// Floor of `x` with a guard against values a hair below an integer.
pub fn floor_tol(x: f64) -> usize {
    if x <= 0.0 {
        return 0;
    }
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.floor() as usize
    }
}

/// Deterministic PRNG for a seed and a sub-stream tag.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Calls `f` on every `k`-subset of `items` (lexicographic in positions).
pub fn for_each_subset<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    if k > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = Vec::with_capacity(k);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        f(&buf);
        let m = items.len();
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + m - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_of_range(n: usize, k: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for_each_subset(&items, k, |s| out.push(s.to_vec()));
    out
}

/// Sorted difference `a \ b` of two sorted slices.
pub fn sorted_minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

pub fn is_subset_sorted(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), 35);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(60, 4), 487_635);
        assert!((binomial_f64(60, 4) - 487_635.0).abs() < 1e-6);
        assert!((binomial_real(4.5, 2) - 7.875).abs() < 1e-12);
        assert_eq!(binomial_real(1.0, 2), 0.0);
    }

    #[test]
    fn roots_are_exact_at_perfect_powers() {
        assert_eq!(iroot(27, 3), 3);
        assert_eq!(iroot(26, 3), 2);
        assert_eq!(iroot(1 << 40, 4), 1 << 10);
        assert_eq!(isqrt(48), 6);
        assert_eq!(cube_root_ratio(54, 2), 3);
        assert_eq!(cube_root_ratio(16, 2), 2);
        assert_eq!(cube_root_ratio(15, 2), 1);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of_range(4, 2).len(), 6);
        assert_eq!(subsets_of_range(4, 0), vec![Vec::<usize>::new()]);
        assert!(subsets_of_range(2, 3).is_empty());
        assert_eq!(subsets_of_range(3, 3), vec![vec![0, 1, 2]]);
        let s = subsets_of_range(5, 3);
        let mut sorted = s.clone();
        sorted.sort();
        assert_eq!(s, sorted);
    }

    #[test]
    fn primes() {
        let ps: Vec<usize> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
