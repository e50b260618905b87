//! Cyclotomic cosets modulo q^k - 1 and minimal polynomials h_a(x) of
//! gamma^{-a} over F_q.
//!
//! Coset membership settles polynomial equality without expanding anything;
//! the expanded product over conjugate roots is kept as the slow oracle and
//! for rendering check polynomials.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::num::rem_euclid_u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCoset {
    /// Smallest member.
    pub representative: u64,
    /// All members, ascending.
    pub members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The orbit of a modulo `modulus` under multiplication by q.
/// a is reduced into [0, modulus) first, so negative inputs are fine.
pub fn cyclotomic_coset(a: i64, q: u64, modulus: u64) -> CyclotomicCoset {
    let start = rem_euclid_u64(a, modulus);
    let mut members = vec![start];
    let mut cur = (start as u128 * q as u128 % modulus as u128) as u64;
    while cur != start {
        members.push(cur);
        cur = (cur as u128 * q as u128 % modulus as u128) as u64;
    }
    members.sort_unstable();
    CyclotomicCoset { representative: members[0], members }
}

/// True iff h_{a1}(x) = h_{a2}(x), decided on cosets.
pub fn polys_equal(a1: i64, a2: i64, q: u64, modulus: u64) -> bool {
    let c1 = cyclotomic_coset(a1, q, modulus);
    let a2 = rem_euclid_u64(a2, modulus);
    c1.members.binary_search(&a2).is_ok()
}

/// A polynomial with coefficients in the subfield F_q, stored as elements of
/// the ambient field F_{q^k}, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOverFq {
    pub coeffs: Vec<FieldElement>,
}

impl PolyOverFq {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation inside F_{q^k}.
    pub fn evaluate(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::Zero;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    /// Canonical symbols of the coefficients, constant term first.
    pub fn symbols(&self, ctx: &FieldCtx) -> Vec<u32> {
        self.coeffs
            .iter()
            .map(|&c| ctx.subfield_symbol(c).expect("coefficients verified in F_q"))
            .collect()
    }

    /// Human-readable rendering, low degree first, e.g. "4 + 6x + x^2".
    /// For a true prime field (t = 1) coefficients print as integers; for
    /// extension subfields they print as powers of g = gamma^delta.
    pub fn render(&self, ctx: &FieldCtx) -> String {
        let t = ctx.params().t;
        let delta = ctx.params().delta;
        let mut terms: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if t == 1 {
                let v = ctx.subfield_symbol(c).expect("coefficient in F_p");
                if v == 1 && i > 0 {
                    String::new()
                } else {
                    v.to_string()
                }
            } else {
                let e = ctx.log(c).expect("nonzero");
                debug_assert_eq!(e % delta, 0);
                let j = e / delta;
                match j {
                    0 if i > 0 => String::new(),
                    0 => "1".to_string(),
                    1 => "g".to_string(),
                    _ => format!("g^{}", j),
                }
            };
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{}", i),
            };
            terms.push(format!("{}{}", coeff, var));
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// The minimal polynomial of gamma^{-a} over F_q, expanded as the product of
/// (x - gamma^{-a q^j}) over the conjugates and verified to have every
/// coefficient inside F_q.
pub fn minimal_polynomial(ctx: &FieldCtx, a: i64) -> Result<PolyOverFq> {
    let n = ctx.order();
    let coset = cyclotomic_coset(a, ctx.params().q, n);
    // roots gamma^{-a q^j}: the negations of the coset members
    let mut coeffs: Vec<FieldElement> = vec![ctx.one()];
    for &member in &coset.members {
        let root = ctx.gamma_pow(-(member as i64));
        let neg_root = ctx.neg(root);
        let mut next = vec![FieldElement::Zero; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] = ctx.add(next[i + 1], c);
            next[i] = ctx.add(next[i], ctx.mul(neg_root, c));
        }
        coeffs = next;
    }
    for (i, &c) in coeffs.iter().enumerate() {
        if ctx.subfield_symbol(c).is_none() {
            return Err(Error::CoefficientOutsideSubfield { exponent: i as u64 });
        }
    }
    Ok(PolyOverFq { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    #[test]
    fn cosets_mod_48() {
        let c = cyclotomic_coset(2, 7, 48);
        assert_eq!(c.members, vec![2, 14]);
        assert_eq!(c.representative, 2);
        let c = cyclotomic_coset(-14, 7, 48);
        assert_eq!(c.members, vec![34, 46]);
        let c = cyclotomic_coset(0, 7, 48);
        assert_eq!(c.members, vec![0]);
    }

    #[test]
    fn polys_equal_on_cosets() {
        assert!(polys_equal(2, 14, 7, 48));
        assert!(!polys_equal(2, 34, 7, 48));
        assert!(polys_equal(-14, 34, 7, 48));
        for a in 0..48 {
            assert!(polys_equal(a, a, 7, 48));
        }
    }

    #[test]
    fn minimal_polynomial_of_one() {
        let ctx = build_field(7, 1, 2, None).unwrap();
        let h = minimal_polynomial(&ctx, 0).unwrap();
        // x - 1
        assert_eq!(h.coeffs, vec![ctx.neg(ctx.one()), ctx.one()]);
        assert_eq!(h.render(&ctx), "6 + x");
    }

    #[test]
    fn check_polynomials_at_q7() {
        let ctx = build_field(7, 1, 2, None).unwrap();
        let h2 = minimal_polynomial(&ctx, 2).unwrap();
        assert_eq!(h2.symbols(&ctx), vec![4, 6, 1]); // x^2 + 6x + 4
        assert_eq!(h2.render(&ctx), "4 + 6x + x^2");
        let h34 = minimal_polynomial(&ctx, 34).unwrap();
        assert_eq!(h34.symbols(&ctx), vec![2, 5, 1]); // x^2 + 5x + 2
        let h18 = minimal_polynomial(&ctx, 18).unwrap();
        assert_eq!(h18.symbols(&ctx), vec![1, 3, 1]); // x^2 + 3x + 1
        // h_{-14} = h_{34} and differs from h_{18}
        let hm14 = minimal_polynomial(&ctx, -14).unwrap();
        assert_eq!(hm14, h34);
        assert_ne!(hm14, h18);
    }

    #[test]
    fn check_polynomials_at_q13() {
        let ctx = build_field(13, 1, 2, None).unwrap();
        let h8 = minimal_polynomial(&ctx, 8).unwrap();
        assert_eq!(h8.symbols(&ctx), vec![3, 2, 1]); // x^2 + 2x + 3
        let h64 = minimal_polynomial(&ctx, 64).unwrap();
        assert_eq!(h64.symbols(&ctx), vec![9, 5, 1]); // x^2 + 5x + 9
        assert_ne!(h8, h64);
    }

    #[test]
    fn degree_matches_coset_size_everywhere() {
        let ctx = build_field(7, 1, 2, None).unwrap();
        for a in 0..48i64 {
            let h = minimal_polynomial(&ctx, a).unwrap();
            assert_eq!(h.degree(), cyclotomic_coset(a, 7, 48).size());
        }
    }

    #[test]
    fn root_evaluates_to_zero() {
        let ctx = build_field(7, 1, 2, None).unwrap();
        for a in 0..48i64 {
            let h = minimal_polynomial(&ctx, a).unwrap();
            assert!(h.evaluate(&ctx, ctx.gamma_pow(-a)).is_zero());
            // every conjugate root too
            for &member in &cyclotomic_coset(a, 7, 48).members {
                assert!(h.evaluate(&ctx, ctx.gamma_pow(-(member as i64))).is_zero());
            }
        }
    }

    #[test]
    fn coefficient_equality_iff_coset_equality() {
        let ctx = build_field(7, 1, 2, None).unwrap();
        let polys: Vec<PolyOverFq> =
            (0..48i64).map(|a| minimal_polynomial(&ctx, a).unwrap()).collect();
        for a1 in 0..48usize {
            for a2 in 0..48usize {
                let by_coeffs = polys[a1] == polys[a2];
                let by_cosets = polys_equal(a1 as i64, a2 as i64, 7, 48);
                assert_eq!(by_coeffs, by_cosets, "a1={} a2={}", a1, a2);
            }
        }
    }

    #[test]
    fn extension_subfield_coefficients() {
        // q = 25 over F_5: coefficients land in F_25, not F_5
        let ctx = build_field(5, 2, 2, None).unwrap();
        let n = ctx.order();
        for a in [0i64, 1, 2, 7, 26, 312] {
            let h = minimal_polynomial(&ctx, a).unwrap();
            assert_eq!(h.degree(), cyclotomic_coset(a, 25, n).size());
            assert!(h.evaluate(&ctx, ctx.gamma_pow(-a)).is_zero());
            for &c in &h.coeffs {
                assert!(ctx.subfield_symbol(c).is_some());
            }
        }
        // rendering uses powers of the subfield generator
        let h1 = minimal_polynomial(&ctx, 1).unwrap();
        assert!(h1.render(&ctx).contains('x'));
    }
}
