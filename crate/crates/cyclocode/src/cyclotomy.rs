//! Cyclotomic classes D_i^(m), order-two cyclotomic numbers, additive
//! character sums as exact integer histograms, and order-two Gaussian
//! periods.
//!
//! A character sum over a subset S is stored as the vector of counts
//! n_c = #{x in S : Tr(x) = c}, representing sum n_c zeta_p^c exactly. It
//! collapses to a rational integer precisely when all nonzero-trace counts
//! agree, which holds for every subset this crate cares about; the reduction
//! is checked, never assumed.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::num::{pow_u128, rem_euclid_u64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclotomicClass {
    /// Class index, reduced into [0, m).
    pub i: u64,
    /// Order: the index of the subgroup of m-th powers.
    pub m: u64,
    /// (q^k - 1) / m.
    pub size: u64,
}

impl CyclotomicClass {
    /// The elements gamma^(i + m*j), j = 0..size.
    pub fn elements<'a>(&self, ctx: &'a FieldCtx) -> impl Iterator<Item = FieldElement> + 'a {
        let i = self.i;
        let m = self.m;
        (0..self.size).map(move |j| ctx.gamma_pow((i + m * j) as i64))
    }

    /// Is x a member (i.e. nonzero with log congruent to i mod m)?
    pub fn contains(&self, ctx: &FieldCtx, x: FieldElement) -> bool {
        match ctx.log(x) {
            None => false,
            Some(e) => e % self.m == self.i,
        }
    }
}

/// The coset gamma^i * <gamma^m> of the m-th power subgroup of F*_{q^k}.
pub fn cyclotomic_class(ctx: &FieldCtx, i: i64, m: u64) -> Result<CyclotomicClass> {
    let n = ctx.order();
    if m == 0 || n % m != 0 {
        return Err(Error::OrderDoesNotDivide { m, group_order: n });
    }
    Ok(CyclotomicClass { i: rem_euclid_u64(i, m), m, size: n / m })
}

/// The index of the class of a nonzero element, i.e. log(x) mod m.
pub fn class_index(ctx: &FieldCtx, x: FieldElement, m: u64) -> Option<u64> {
    ctx.log(x).map(|e| e % m)
}

/// Cyclotomic number (i, j)^(m): |(D_i^(m) + 1) ∩ D_j^(m)|, counted by
/// direct membership testing.
pub fn cyclotomic_number_bruteforce(ctx: &FieldCtx, i: i64, j: i64, m: u64) -> Result<u64> {
    let di = cyclotomic_class(ctx, i, m)?;
    let dj = cyclotomic_class(ctx, j, m)?;
    let one = ctx.one();
    let mut count = 0u64;
    for x in di.elements(ctx) {
        if dj.contains(ctx, ctx.add(x, one)) {
            count += 1;
        }
    }
    Ok(count)
}

/// Order-two cyclotomic numbers in closed form, valid when 4 | q^k - 1:
/// (0,0) = (q^k - 5)/4 and (0,1) = (1,0) = (1,1) = (q^k - 1)/4.
pub fn cyclotomic_number_order2_closed(q: u64, k: u32, i: i64, j: i64) -> Result<u64> {
    let qk = pow_u128(q, k);
    if qk < 5 || (qk - 1) % 4 != 0 {
        return Err(Error::HypothesisViolated(format!(
            "4 does not divide q^k - 1 = {}",
            qk - 1
        )));
    }
    let i = rem_euclid_u64(i, 2);
    let j = rem_euclid_u64(j, 2);
    let v = if i == 0 && j == 0 { (qk - 5) / 4 } else { (qk - 1) / 4 };
    Ok(v as u64)
}

/// chi(S) = sum over S of zeta_p^{Tr(x)}, held as the exact histogram of
/// absolute-trace values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicIntegerSum {
    /// counts[c] = number of subset elements with absolute trace c.
    pub counts: Vec<i64>,
}

impl CyclotomicIntegerSum {
    /// Collapses to a rational integer when all nonzero-trace counts are
    /// equal (using 1 + zeta + ... + zeta^{p-1} = 0); None otherwise.
    pub fn reduce(&self) -> Option<i64> {
        if self.counts.len() <= 1 {
            return Some(self.counts.first().copied().unwrap_or(0));
        }
        let n1 = self.counts[1];
        if self.counts[1..].iter().all(|&c| c == n1) {
            Some(self.counts[0] - n1)
        } else {
            None
        }
    }
}

impl std::fmt::Display for CyclotomicIntegerSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.reduce() {
            Some(v) => write!(f, "{}", v),
            None => {
                let terms: Vec<String> = self
                    .counts
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(e, &c)| if e == 0 { c.to_string() } else { format!("{}·ζ^{}", c, e) })
                    .collect();
                write!(f, "{}", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })
            }
        }
    }
}

/// Exact additive character sum over an arbitrary subset.
pub fn character_sum<I>(ctx: &FieldCtx, subset: I) -> CyclotomicIntegerSum
where
    I: IntoIterator<Item = FieldElement>,
{
    let p = ctx.params().p as usize;
    let mut counts = vec![0i64; p];
    for x in subset {
        counts[ctx.trace_absolute(x) as usize] += 1;
    }
    CyclotomicIntegerSum { counts }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GaussianPeriods {
    pub eta0: i64,
    pub eta1: i64,
}

/// Order-two Gaussian periods of F_{p^{tk}} in closed form. Requires tk even
/// (the only case this artifact meets) and odd p; the square root of -1 that
/// appears for p ≡ 3 (mod 4) enters only through (sqrt(-1))^{tk} = (-1)^{tk/2}.
pub fn gaussian_periods_closed(p: u64, t: u32, k: u32) -> Result<GaussianPeriods> {
    if !crate::num::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::HypothesisViolated(
            "order-two Gaussian periods require odd p".into(),
        ));
    }
    let tk = t * k;
    if tk % 2 != 0 {
        return Err(Error::OddDegree { t, k });
    }
    let half_power = pow_u128(p, tk / 2) as i64;
    let eta0 = match p % 4 {
        1 => (-1 - half_power) / 2,
        3 => {
            let sign = if (tk / 2) % 2 == 0 { 1 } else { -1 };
            (-1 - sign * half_power) / 2
        }
        _ => unreachable!("p is an odd prime"),
    };
    Ok(GaussianPeriods { eta0, eta1: -1 - eta0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    fn ctx7() -> FieldCtx {
        build_field(7, 1, 2, None).unwrap()
    }

    #[test]
    fn classes_partition_the_multiplicative_group() {
        let ctx = ctx7();
        for m in [1u64, 2, 3, 4, 6, 8, 12, 16, 24, 48] {
            let mut seen = std::collections::HashSet::new();
            let mut total = 0u64;
            for i in 0..m {
                let class = cyclotomic_class(&ctx, i as i64, m).unwrap();
                assert_eq!(class.size, 48 / m);
                for x in class.elements(&ctx) {
                    assert!(seen.insert(x), "classes must be disjoint");
                    total += 1;
                }
            }
            assert_eq!(total, 48);
            assert!(!seen.contains(&ctx.zero()));
        }
    }

    #[test]
    fn class_order_must_divide_group_order() {
        let ctx = ctx7();
        assert!(matches!(
            cyclotomic_class(&ctx, 0, 5),
            Err(Error::OrderDoesNotDivide { m: 5, group_order: 48 })
        ));
    }

    #[test]
    fn class_index_wraps() {
        let ctx = ctx7();
        let a = cyclotomic_class(&ctx, 2, 2).unwrap();
        let b = cyclotomic_class(&ctx, 0, 2).unwrap();
        assert_eq!(a, b);
        let c = cyclotomic_class(&ctx, -1, 2).unwrap();
        assert_eq!(c.i, 1);
    }

    #[test]
    fn full_group_character_sum_is_minus_one() {
        let ctx = ctx7();
        let class = cyclotomic_class(&ctx, 0, 1).unwrap();
        let s = character_sum(&ctx, class.elements(&ctx));
        assert_eq!(s.reduce(), Some(-1));
    }

    #[test]
    fn empty_subset_sums_to_zero() {
        let ctx = ctx7();
        let s = character_sum(&ctx, std::iter::empty());
        assert_eq!(s.reduce(), Some(0));
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn character_sums_over_square_classes_are_the_periods() {
        let ctx = ctx7();
        let d0 = cyclotomic_class(&ctx, 0, 2).unwrap();
        let d1 = cyclotomic_class(&ctx, 1, 2).unwrap();
        assert_eq!(character_sum(&ctx, d0.elements(&ctx)).reduce(), Some(3));
        assert_eq!(character_sum(&ctx, d1.elements(&ctx)).reduce(), Some(-4));
    }

    #[test]
    fn order2_cyclotomic_numbers_at_49() {
        let ctx = ctx7();
        assert_eq!(cyclotomic_number_bruteforce(&ctx, 0, 0, 2).unwrap(), 11);
        assert_eq!(cyclotomic_number_bruteforce(&ctx, 0, 1, 2).unwrap(), 12);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    cyclotomic_number_bruteforce(&ctx, i, j, 2).unwrap(),
                    cyclotomic_number_order2_closed(7, 2, i, j).unwrap(),
                );
            }
        }
        assert_eq!(cyclotomic_number_order2_closed(7, 2, 0, 0).unwrap(), 11);
        assert_eq!(cyclotomic_number_order2_closed(13, 2, 1, 1).unwrap(), 42);
    }

    #[test]
    fn order2_closed_needs_4_dividing_group_order() {
        assert!(matches!(
            cyclotomic_number_order2_closed(3, 3, 0, 0),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn row_sum_identity() {
        let ctx = ctx7();
        let sum: u64 = (0..2)
            .map(|j| cyclotomic_number_bruteforce(&ctx, 0, j, 2).unwrap())
            .sum();
        assert_eq!(sum, 48 / 2 - 1);
    }

    #[test]
    fn gaussian_periods_frozen_values() {
        assert_eq!(
            gaussian_periods_closed(7, 1, 2).unwrap(),
            GaussianPeriods { eta0: 3, eta1: -4 }
        );
        assert_eq!(
            gaussian_periods_closed(13, 1, 2).unwrap(),
            GaussianPeriods { eta0: -7, eta1: 6 }
        );
    }

    #[test]
    fn gaussian_periods_preconditions() {
        assert!(matches!(
            gaussian_periods_closed(7, 1, 1),
            Err(Error::OddDegree { t: 1, k: 1 })
        ));
        assert!(matches!(gaussian_periods_closed(4, 1, 2), Err(Error::NotPrime(4))));
        assert!(matches!(
            gaussian_periods_closed(2, 1, 2),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn gaussian_periods_depend_only_on_p_and_degree() {
        assert_eq!(
            gaussian_periods_closed(5, 2, 2).unwrap(),
            gaussian_periods_closed(5, 1, 4).unwrap()
        );
    }

    /// Closed form against the character-sum oracle across every small field
    /// with even degree.
    #[test]
    fn gaussian_periods_match_character_sums() {
        let cases: [(u64, u32, u32); 7] =
            [(3, 1, 2), (3, 1, 4), (3, 2, 2), (5, 1, 2), (5, 2, 2), (7, 1, 2), (13, 1, 2)];
        for (p, t, k) in cases {
            let ctx = build_field(p, t, k, None).unwrap();
            let periods = gaussian_periods_closed(p, t, k).unwrap();
            let d0 = cyclotomic_class(&ctx, 0, 2).unwrap();
            let d1 = cyclotomic_class(&ctx, 1, 2).unwrap();
            let s0 = character_sum(&ctx, d0.elements(&ctx)).reduce().expect("reducible");
            let s1 = character_sum(&ctx, d1.elements(&ctx)).reduce().expect("reducible");
            assert_eq!(periods.eta0, s0, "p={} t={} k={}", p, t, k);
            assert_eq!(periods.eta1, s1, "p={} t={} k={}", p, t, k);
            assert_eq!(periods.eta0 + periods.eta1, -1);
        }
    }

    /// Under the main assumption the subfield multiplicative group and the
    /// cube root of unity sit inside the squares.
    #[test]
    fn subfield_and_tau_are_squares() {
        let ctx = ctx7();
        let d0 = cyclotomic_class(&ctx, 0, 2).unwrap();
        for x in ctx.subfield_elements() {
            if !x.is_zero() {
                assert!(d0.contains(&ctx, x));
            }
        }
        let tau = ctx.gamma_pow(16);
        assert!(d0.contains(&ctx, tau));
    }
}
