//! Subset enumeration in (cardinality, lexicographic) order.

/// Yields every subset of `domain` as a bit mask over the domain's vertex
/// indices: all subsets of size 0, then size 1, and so on; within one size,
/// sorted member lists ascend lexicographically.
///
/// `domain` must be sorted ascending with all values below 64.
pub fn ordered_subsets(domain: &[usize]) -> OrderedSubsets<'_> {
    debug_assert!(domain.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(domain.iter().all(|&v| v < 64));
    OrderedSubsets {
        domain,
        size: 0,
        combo: Vec::new(),
        fresh: true,
    }
}

/// Subsets of `domain` with exactly `k` members, lexicographic order.
pub fn subsets_of_size(domain: &[usize], k: usize) -> impl Iterator<Item = u64> + '_ {
    ordered_subsets(domain)
        .skip_while(move |m| (m.count_ones() as usize) < k)
        .take_while(move |m| m.count_ones() as usize == k)
}

pub struct OrderedSubsets<'a> {
    domain: &'a [usize],
    size: usize,
    combo: Vec<usize>,
    fresh: bool,
}

impl OrderedSubsets<'_> {
    fn mask(&self) -> u64 {
        self.combo
            .iter()
            .fold(0, |m, &k| m | (1u64 << self.domain[k]))
    }

    fn advance(&mut self) -> bool {
        let n = self.domain.len();
        let k = self.size;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.combo[i] < n - k + i {
                self.combo[i] += 1;
                for j in i + 1..k {
                    self.combo[j] = self.combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for OrderedSubsets<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.fresh {
            self.fresh = false;
            return Some(self.mask());
        }
        if !self.advance() {
            self.size += 1;
            if self.size > self.domain.len() {
                return None;
            }
            self.combo = (0..self.size).collect();
        }
        Some(self.mask())
    }
}
