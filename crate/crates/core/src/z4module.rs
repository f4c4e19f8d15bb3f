//! Submodules of `Z4^w` in reduced Howell form.
//!
//! A Howell basis is an echelon basis (with respect to a caller-chosen column
//! priority) with the extra property that every module element whose leading
//! entries vanish up to some column is spanned by the rows pivoting after that
//! column. Fully reduced, it is unique, so two modules are equal iff their
//! bases are equal, and membership is a single reduction pass.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z4Module {
    width: usize,
    order: Vec<usize>,
    pivots: Vec<usize>,
    rows: Vec<Vec<u8>>,
}

fn axpy(v: &mut [u8], f: u8, row: &[u8]) {
    // v -= f * row
    if f == 0 {
        return;
    }
    for (x, &y) in v.iter_mut().zip(row) {
        *x = (*x + 4 * 4 - f * y) % 4;
    }
}

impl Z4Module {
    /// Additive span of `gens` (each of length `width`); `order` lists every
    /// column exactly once, most significant first.
    pub fn span<I>(width: usize, order: &[usize], gens: I) -> Self
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        debug_assert_eq!(order.len(), width);
        let mut pool: Vec<Vec<u8>> = gens
            .into_iter()
            .map(|g| {
                debug_assert_eq!(g.len(), width);
                g.into_iter().map(|x| x % 4).collect::<Vec<u8>>()
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = Vec::new();
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for &c in order {
            let pick = pool
                .iter()
                .position(|r| r[c] & 1 == 1)
                .or_else(|| pool.iter().position(|r| r[c] == 2));
            let Some(i) = pick else { continue };
            let mut p = pool.swap_remove(i);
            if p[c] == 3 {
                p.iter_mut().for_each(|x| *x = (*x * 3) % 4);
            }
            let lead = p[c];
            for r in pool.iter_mut() {
                let f = r[c] / lead;
                axpy(r, f, &p);
            }
            if lead == 2 {
                pool.push(p.iter().map(|x| (x * 2) % 4).collect());
            }
            pool.retain(|r| r.iter().any(|&x| x != 0));
            pivots.push(c);
            rows.push(p);
        }
        for i in 0..rows.len() {
            let (c, lead) = (pivots[i], rows[i][pivots[i]]);
            let (above, rest) = rows.split_at_mut(i);
            for q in above.iter_mut() {
                let f = q[c] / lead;
                axpy(q, f, &rest[0]);
            }
        }
        Z4Module {
            width,
            order: order.to_vec(),
            pivots,
            rows,
        }
    }

    pub fn zero(width: usize, order: &[usize]) -> Self {
        Self::span(width, order, std::iter::empty())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `(pivot column, row)` pairs in echelon order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &[u8])> {
        self.pivots
            .iter()
            .copied()
            .zip(self.rows.iter().map(|r| r.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical representative of `v` modulo the module.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let mut v: Vec<u8> = v.iter().map(|x| x % 4).collect();
        for (c, row) in self.rows() {
            let f = v[c] / row[c];
            axpy(&mut v, f, row);
        }
        v
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_module(&self, other: &Z4Module) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// `log2` of the number of elements.
    pub fn log2_size(&self) -> usize {
        self.rows()
            .map(|(c, r)| if r[c] == 1 { 2 } else { 1 })
            .sum()
    }

    /// Generators of `{x in self : f(x) = 0}` for a `Z4`-linear `f` into `Z4^m`.
    pub fn kernel<F>(&self, m: usize, f: F) -> Z4Module
    where
        F: Fn(&[u8]) -> Vec<u8>,
    {
        let aug: Vec<Vec<u8>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = f(r);
                debug_assert_eq!(v.len(), m);
                v.extend_from_slice(r);
                v
            })
            .collect();
        let order: Vec<usize> = (0..m).chain(self.order.iter().map(|c| c + m)).collect();
        let h = Z4Module::span(m + self.width, &order, aug);
        let gens: Vec<Vec<u8>> = h
            .rows()
            .filter(|(c, _)| *c >= m)
            .map(|(_, r)| r[m..].to_vec())
            .collect();
        Z4Module::span(self.width, &self.order, gens)
    }

    /// The same module re-echelonized under another column priority.
    pub fn with_order(&self, order: &[usize]) -> Z4Module {
        Z4Module::span(self.width, order, self.rows.clone())
    }

    /// Image under a `Z4`-linear map into `Z4^m` with the given priority.
    pub fn image<F>(&self, m: usize, order: &[usize], f: F) -> Z4Module
    where
        F: Fn(&[u8]) -> Vec<u8>,
    {
        Z4Module::span(m, order, self.rows.iter().map(|r| f(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_span(width: usize, gens: &[Vec<u8>]) -> HashSet<Vec<u8>> {
        let mut set: HashSet<Vec<u8>> = HashSet::from([vec![0; width]]);
        for g in gens {
            let current: Vec<Vec<u8>> = set.iter().cloned().collect();
            for v in current {
                for k in 1..4u8 {
                    set.insert(v.iter().zip(g).map(|(a, b)| (a + k * b) % 4).collect());
                }
            }
        }
        set
    }

    fn all_words(width: usize) -> Vec<Vec<u8>> {
        (0..4usize.pow(width as u32))
            .map(|mut x| {
                (0..width)
                    .map(|_| {
                        let d = (x % 4) as u8;
                        x /= 4;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn matches_brute_force_span() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 33) as u8 % 4
        };
        for trial in 0..200 {
            let width = 2 + trial % 3;
            let gens: Vec<Vec<u8>> = (0..1 + trial % 3)
                .map(|_| (0..width).map(|_| next()).collect())
                .collect();
            let order: Vec<usize> = if trial % 2 == 0 {
                (0..width).collect()
            } else {
                (0..width).rev().collect()
            };
            let m = Z4Module::span(width, &order, gens.clone());
            let brute = brute_span(width, &gens);
            assert_eq!(1usize << m.log2_size(), brute.len());
            for w in all_words(width) {
                assert_eq!(m.contains(&w), brute.contains(&w), "{gens:?} {w:?}");
            }
            let shuffled: Vec<Vec<u8>> = gens.iter().rev().cloned().collect();
            assert_eq!(Z4Module::span(width, &order, shuffled), m);
        }
    }

    #[test]
    fn howell_property_needs_the_doubled_row() {
        // span{(2, 1)}: contains (0, 2) although no row pivots on column 1 with lead 2 a priori
        let m = Z4Module::span(2, &[0, 1], vec![vec![2, 1]]);
        assert!(m.contains(&[0, 2]));
        assert_eq!(m.rows().count(), 2);
        assert_eq!(m.log2_size(), 2);
    }

    #[test]
    fn kernel_of_doubling() {
        let m = Z4Module::span(2, &[0, 1], vec![vec![1, 1], vec![0, 2]]);
        let k = m.kernel(2, |r| r.iter().map(|x| (2 * x) % 4).collect());
        let brute: Vec<Vec<u8>> = brute_span(2, &[vec![1, 1], vec![0, 2]])
            .into_iter()
            .filter(|v| v.iter().all(|x| x % 2 == 0))
            .collect();
        assert_eq!(1usize << k.log2_size(), brute.len());
        assert!(brute.iter().all(|v| k.contains(v)));
    }
}
