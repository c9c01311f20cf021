use std::sync::{Mutex, OnceLock};

use rug::{Integer, Rational};

/// Entries are appended in order and never revised. `pascal` is the row of
/// binomial coefficients C(len, ·) needed to extend by recurrence.
struct Cache {
    numbers: Vec<Rational>,
    pascal: Vec<Integer>,
}

impl Cache {
    fn new() -> Self {
        Self {
            numbers: vec![Rational::from(1)],
            pascal: vec![Integer::from(1), Integer::from(1)],
        }
    }

    fn advance_pascal(&mut self) {
        let mut next = Vec::with_capacity(self.pascal.len() + 1);
        next.push(Integer::from(1));
        for w in self.pascal.windows(2) {
            next.push(Integer::from(&w[0] + &w[1]));
        }
        next.push(Integer::from(1));
        self.pascal = next;
    }

    /// B_m = 1 - Σ_{k<m} C(m,k) B_k / (m-k+1) for m = len.
    fn push_by_recurrence(&mut self) {
        let m = self.numbers.len();
        let value = if m >= 3 && m % 2 == 1 {
            Rational::new()
        } else {
            let mut sum = Rational::new();
            for (k, b) in self.numbers.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = Rational::from(b * &self.pascal[k]) / (m - k + 1) as u32;
                sum += term;
            }
            Rational::from(1) - sum
        };
        self.numbers.push(value);
        self.advance_pascal();
    }

    /// Fills every missing entry up to `m` from one Akiyama-Tanigawa pass.
    /// Pascal rows are rebuilt to stay in step with the list length.
    fn fill_by_akiyama_tanigawa(&mut self, m: usize) {
        let start = self.numbers.len();
        for (j, b) in akiyama_tanigawa_prefix(m)
            .into_iter()
            .enumerate()
            .skip(start)
        {
            debug_assert_eq!(j, self.numbers.len());
            self.numbers.push(b);
        }
        self.pascal = (0..=self.numbers.len() as u32)
            .map(|k| Integer::from(Integer::binomial_u(self.numbers.len() as u32, k)))
            .collect();
    }
}

fn cache() -> &'static Mutex<Cache> {
    static CACHE: OnceLock<Mutex<Cache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Cache::new()))
}

/// Bernoulli number B_m with B_1 = +1/2.
///
/// Values come from a process-wide cache. Missing entries are produced by
/// the recurrence when the cache already reaches B_{m-2}, and by the
/// Akiyama-Tanigawa triangle otherwise.
pub fn bernoulli(m: usize) -> Rational {
    let mut cache = cache().lock().unwrap_or_else(|e| e.into_inner());
    if m >= cache.numbers.len() + 2 {
        cache.fill_by_akiyama_tanigawa(m);
    }
    while cache.numbers.len() <= m {
        cache.push_by_recurrence();
    }
    cache.numbers[m].clone()
}

/// B_m from the Akiyama-Tanigawa triangle, independent of the cache.
pub fn bernoulli_akiyama_tanigawa(m: usize) -> Rational {
    akiyama_tanigawa_prefix(m)
        .pop()
        .expect("prefix holds B_0..=B_m")
}

/// B_0..=B_m; after row j the leading triangle entry equals B_j.
fn akiyama_tanigawa_prefix(m: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = Vec::with_capacity(m + 1);
    let mut out = Vec::with_capacity(m + 1);
    for j in 0..=m {
        a.push(Rational::from((1, j as u32 + 1)));
        for k in (1..=j).rev() {
            let diff = Rational::from(&a[k - 1] - &a[k]);
            a[k - 1] = diff * k as u32;
        }
        out.push(a[0].clone());
    }
    out
}

/// C(n, k) as an exact integer.
pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli_akiyama_tanigawa(0), 1);
        assert_eq!(bernoulli_akiyama_tanigawa(3), 0);
    }

    #[test]
    fn twelfth_number_agrees_across_algorithms() {
        let b12 = Rational::from((-691, 2730));
        assert_eq!(bernoulli(12), b12);
        assert_eq!(bernoulli_akiyama_tanigawa(12), b12);
    }

    #[test]
    fn recurrence_matches_triangle() {
        for m in 2..=40 {
            assert_eq!(bernoulli(m), bernoulli_akiyama_tanigawa(m), "m = {m}");
        }
    }

    #[test]
    fn far_requests_fill_through_the_triangle() {
        // Whatever the cache state, a distant index must still be right.
        assert_eq!(bernoulli(90), bernoulli_akiyama_tanigawa(90));
        assert_eq!(bernoulli(91), 0);
        assert_eq!(bernoulli(92), bernoulli_akiyama_tanigawa(92));
    }

    #[test]
    fn pascal_rows() {
        assert_eq!(binomial(10, 3), 120);
        let mut c = Cache::new();
        for _ in 0..6 {
            c.push_by_recurrence();
        }
        assert_eq!(c.pascal[3], binomial(7, 3));
        c.fill_by_akiyama_tanigawa(12);
        assert_eq!(c.numbers.len(), 13);
        assert_eq!(c.pascal[5], binomial(13, 5));
        c.push_by_recurrence();
        assert_eq!(c.numbers[13], 0);
    }
}
