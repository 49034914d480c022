//! Streaming enumeration of weak compositions.

/// All vectors of `parts` non-negative integers summing to `total`, in
/// lexicographic order. Only the current vector is held in memory.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    current: Vec<u32>,
    done: bool,
}

impl WeakCompositions {
    pub fn new(total: i64, parts: usize) -> Self {
        if parts == 0 || total < 0 {
            // zero parts only compose zero
            let done = !(parts == 0 && total == 0);
            return WeakCompositions {
                current: Vec::new(),
                done,
            };
        }
        let mut current = vec![0; parts];
        current[parts - 1] = total as u32;
        WeakCompositions { current, done: false }
    }

    fn advance(&mut self) {
        let last = self.current.len().saturating_sub(1);
        let Some(p) = self.current.iter().rposition(|&v| v > 0) else {
            self.done = true;
            return;
        };
        if p == 0 {
            self.done = true;
            return;
        }
        let tail = self.current[p];
        self.current[p - 1] += 1;
        self.current[p] = 0;
        self.current[last] = tail - 1;
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        if self.current.is_empty() {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}

pub fn weak_compositions(total: i64, parts: usize) -> WeakCompositions {
    WeakCompositions::new(total, parts)
}

/// Number of weak compositions, `C(total + parts - 1, parts - 1)`.
pub fn weak_composition_count(total: i64, parts: usize) -> u128 {
    if total < 0 {
        return 0;
    }
    if parts == 0 {
        return u128::from(total == 0);
    }
    crate::binomial::binomial_u128_saturating(total as u64 + parts as u64 - 1, parts as u64 - 1)
}
