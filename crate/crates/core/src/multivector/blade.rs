use std::cmp::Ordering;

/// A wedge monomial: a set of coordinate indices stored as a bit mask.
///
/// Ordered by size, then lexicographically on the sorted index lists.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Blade(pub u64);

impl Ord for Blade {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| {
            let diff = self.0 ^ o.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(c: usize) -> Blade {
        Blade(1 << c)
    }

    pub fn from_indices(idx: &[usize]) -> Blade {
        Blade(idx.iter().fold(0, |m, &c| m | (1 << c)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: usize) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn without(self, c: usize) -> Blade {
        Blade(self.0 & !(1 << c))
    }

    /// Number of indices strictly below `c`.
    pub fn rank_of(self, c: usize) -> usize {
        (self.0 & ((1u64 << c) - 1)).count_ones() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let c = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(c)
            }
        })
    }

    pub fn is_subset_of(self, o: Blade) -> bool {
        self.0 & !o.0 == 0
    }

    /// Sign of `e_self ^ e_o` relative to the sorted blade, or `None` when
    /// the index sets overlap.
    pub fn wedge_sign(self, o: Blade) -> Option<i32> {
        if self.0 & o.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in o.indices() {
            swaps += (self.0 >> j >> 1).count_ones();
        }
        Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn union(self, o: Blade) -> Blade {
        Blade(self.0 | o.0)
    }
}

/// Sign of the permutation sorting `idx` (distinct entries), or `None` on repeats.
pub fn sort_sign(idx: &[usize]) -> Option<(Blade, i32)> {
    let mut blade = Blade::EMPTY;
    let mut sign = 1;
    for &c in idx {
        sign *= blade.wedge_sign(Blade::single(c))?;
        blade = blade.union(Blade::single(c));
    }
    Some((blade, sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_signs() {
        let mut v = vec![Blade(0b110), Blade(0b011), Blade(0b1), Blade(0), Blade(0b101)];
        v.sort();
        assert_eq!(v, vec![Blade(0), Blade(0b1), Blade(0b011), Blade(0b101), Blade(0b110)]);
        assert_eq!(sort_sign(&[1, 0]), Some((Blade(0b11), -1)));
        assert_eq!(sort_sign(&[2, 0, 1]), Some((Blade(0b111), 1)));
        assert_eq!(sort_sign(&[0, 0]), None);
    }
}
