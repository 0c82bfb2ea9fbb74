use std::sync::{Arc, LazyLock, Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{binomial_coefficient, factorial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    /// Unsigned Lah numbers `L(n,k)`.
    Lah,
    /// Signed Stirling numbers of the first kind: coefficients of `(x)_n`.
    Stirling1Signed,
    /// Stirling numbers of the second kind.
    Stirling2,
}

/// Lower-triangular table `T(n,k)`, `0 <= k <= n`, grown row by row from
/// its recurrence.
///
/// Published rows are immutable and handed out as shared slices, so readers
/// never block each other. Growth is serialized by a separate build lock.
#[derive(Debug)]
pub struct TriangleCache {
    kind: TriangleKind,
    rows: RwLock<Vec<Arc<[BigInt]>>>,
    build: Mutex<()>,
}

impl TriangleCache {
    pub fn new(kind: TriangleKind) -> Self {
        let first: Arc<[BigInt]> = Arc::from(vec![BigInt::from(1)]);
        Self {
            kind,
            rows: RwLock::new(vec![first]),
            build: Mutex::new(()),
        }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    /// Row `n` as entries `k = 0..=n`.
    pub fn row(&self, n: usize) -> Arc<[BigInt]> {
        if let Some(row) = self.rows.read().expect("triangle lock poisoned").get(n) {
            return Arc::clone(row);
        }
        let _guard = self.build.lock().expect("triangle build lock poisoned");
        let mut last = {
            let rows = self.rows.read().expect("triangle lock poisoned");
            if let Some(row) = rows.get(n) {
                return Arc::clone(row);
            }
            Arc::clone(rows.last().expect("row 0 always present"))
        };
        let mut next_index = last.len();
        while next_index <= n {
            let next: Arc<[BigInt]> = Arc::from(self.next_row(&last, next_index - 1));
            self.rows
                .write()
                .expect("triangle lock poisoned")
                .push(Arc::clone(&next));
            last = next;
            next_index += 1;
        }
        last
    }

    /// Entry `T(n,k)`; zero outside the triangle.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.row(n)[k].clone()
    }

    /// Builds row `n + 1` from row `n`.
    fn next_row(&self, prev: &[BigInt], n: usize) -> Vec<BigInt> {
        let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
        (0..=n + 1)
            .map(|k| {
                let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                match self.kind {
                    // L(n+1,k) = L(n,k-1) + (n+k) L(n,k)
                    TriangleKind::Lah => left + at(k) * (n + k),
                    // s(n+1,k) = s(n,k-1) - n s(n,k)
                    TriangleKind::Stirling1Signed => left - at(k) * n,
                    // S(n+1,k) = S(n,k-1) + k S(n,k)
                    TriangleKind::Stirling2 => left + at(k) * k,
                }
            })
            .collect()
    }
}

static LAH: LazyLock<TriangleCache> = LazyLock::new(|| TriangleCache::new(TriangleKind::Lah));
static STIRLING1: LazyLock<TriangleCache> =
    LazyLock::new(|| TriangleCache::new(TriangleKind::Stirling1Signed));
static STIRLING2: LazyLock<TriangleCache> = LazyLock::new(|| TriangleCache::new(TriangleKind::Stirling2));

/// Shared process-wide table for `kind`.
pub fn shared(kind: TriangleKind) -> &'static TriangleCache {
    match kind {
        TriangleKind::Lah => &LAH,
        TriangleKind::Stirling1Signed => &STIRLING1,
        TriangleKind::Stirling2 => &STIRLING2,
    }
}

/// Unsigned Lah number `L(n,k)`, read from the recurrence table.
pub fn lah_number(n: usize, k: usize) -> BigInt {
    let value = LAH.get(n, k);
    debug_assert!(n > 40 || value == lah_closed_form(n as u64, k as u64));
    value
}

/// `L(n,k) = C(n-1,k-1) n!/k!` for `1 <= k <= n`, `L(0,0) = 1`.
pub fn lah_closed_form(n: u64, k: u64) -> BigInt {
    match (n, k) {
        (0, 0) => BigInt::from(1),
        (_, 0) => BigInt::zero(),
        _ if k > n => BigInt::zero(),
        _ => binomial_coefficient(n - 1, k - 1) * factorial(n) / factorial(k),
    }
}

pub fn stirling1_signed(n: usize, k: usize) -> BigInt {
    STIRLING1.get(n, k)
}

/// `|S1(n,k)| = (-1)^(n-k) S1(n,k)`.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigInt {
    STIRLING1.get(n, k).abs()
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    STIRLING2.get(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Counts set partitions of {0..n} into k blocks, optionally as ordered
    // lists, by inserting elements one at a time.
    fn enumerate(n: usize, ordered: bool) -> Vec<u64> {
        fn go(i: usize, n: usize, blocks: &mut Vec<usize>, ordered: bool, counts: &mut [u64]) {
            if i == n {
                counts[blocks.len()] += 1;
                return;
            }
            for b in 0..blocks.len() {
                // an ordered list of length s has s + 1 insertion slots
                let slots = if ordered { blocks[b] + 1 } else { 1 };
                for _ in 0..slots {
                    blocks[b] += 1;
                    go(i + 1, n, blocks, ordered, counts);
                    blocks[b] -= 1;
                }
            }
            blocks.push(1);
            go(i + 1, n, blocks, ordered, counts);
            blocks.pop();
        }
        let mut counts = vec![0; n + 1];
        go(0, n, &mut Vec::new(), ordered, &mut counts);
        counts
    }

    #[test]
    fn lah_examples() {
        assert_eq!(lah_number(3, 2), BigInt::from(6));
        assert_eq!(lah_number(4, 2), BigInt::from(36));
        for n in 0..15 {
            assert_eq!(lah_number(n, n), BigInt::from(1));
        }
        assert_eq!(lah_number(2, 5), BigInt::zero());
        assert_eq!(lah_number(4, 0), BigInt::zero());
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling1_signed(3, 2), BigInt::from(-3));
        assert_eq!(stirling1_signed(4, 2), BigInt::from(11));
        assert_eq!(stirling2(3, 2), BigInt::from(3));
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        for n in 1..15 {
            assert_eq!(stirling1_signed(n, n), BigInt::from(1));
            assert_eq!(stirling2(n, 1), BigInt::from(1));
        }
        assert_eq!(stirling2(0, 0), BigInt::from(1));
        assert_eq!(stirling1_signed(0, 0), BigInt::from(1));
    }

    #[test]
    fn tables_match_enumeration() {
        for n in 0..=7 {
            let lists = enumerate(n, true);
            let blocks = enumerate(n, false);
            for k in 0..=n {
                assert_eq!(lah_number(n, k), BigInt::from(lists[k]), "L({n},{k})");
                assert_eq!(stirling2(n, k), BigInt::from(blocks[k]), "S2({n},{k})");
            }
        }
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for n in 0..=20u64 {
            for k in 0..=n {
                assert_eq!(lah_closed_form(n, k), LAH.get(n as usize, k as usize));
            }
        }
    }

    #[test]
    fn stirling1_signs_and_row_sums() {
        for n in 0..=15usize {
            let mut total = BigInt::zero();
            for k in 0..=n {
                let s = stirling1_signed(n, k);
                if !s.is_zero() {
                    let expected_negative = (n - k) % 2 == 1;
                    assert_eq!(s.is_negative(), expected_negative, "S1({n},{k})");
                }
                total += s.abs();
            }
            assert_eq!(total, factorial(n as u64));
        }
    }

    #[test]
    fn rows_are_stable_and_shared() {
        let cache = TriangleCache::new(TriangleKind::Stirling2);
        let early = cache.row(3);
        let _ = cache.row(30);
        let again = cache.row(3);
        assert!(Arc::ptr_eq(&early, &again));
        assert_eq!(cache.row(0).as_ref(), &[BigInt::from(1)]);
        assert_eq!(cache.kind(), TriangleKind::Stirling2);
    }

    #[test]
    fn concurrent_growth_agrees() {
        let cache = TriangleCache::new(TriangleKind::Lah);
        let rows: Vec<Arc<[BigInt]>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..8)
                .map(|i| {
                    let cache = &cache;
                    scope.spawn(move || cache.row(20 + i % 3))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for row in rows {
            let n = row.len() - 1;
            for (k, v) in row.iter().enumerate() {
                assert_eq!(*v, lah_closed_form(n as u64, k as u64));
            }
        }
    }
}
