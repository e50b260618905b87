//! Codeword construction through the trace representation and exact weight
//! distributions by exhaustive enumeration.
//!
//! A codeword is c(alpha, beta) = (Tr(alpha g^(a1 i) + beta g^(a2 i)))_i for
//! i < n, with symbols in F_q. The enumeration engine never builds codewords:
//! it precomputes, for every exponent e, the canonical symbol of Tr(g^e) and
//! of -Tr(g^e), after which "coordinate i of c(g^u, g^v) is zero" becomes an
//! equality of two table lookups. Histograms from disjoint alpha-slices merge
//! by pointwise addition, so the result is independent of scheduling.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement, FieldParams};
use crate::num::gcd;

/// Ceiling on the number of (alpha, beta) pairs a full enumeration may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 100_000_000;

/// Parameters of one code: a reducible direct-sum code when a2 is present,
/// the irreducible component C_a otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    pub params: FieldParams,
    /// First exponent, normalized into [0, q^k - 2].
    pub a1: u64,
    /// Second exponent; absent for an irreducible component.
    pub a2: Option<u64>,
    /// Code length.
    pub n: u64,
    /// The selected exponent: the a_i whose component determines the length
    /// (ties resolved toward a1).
    pub a: u64,
    /// lambda = (q - 1) / gcd(q - 1, a/2).
    pub lambda: u64,
    /// 1 when a1 - a2 is congruent to +(q^k - 1)/3, 2 for the minus sign;
    /// absent for irreducible specs.
    pub epsilon: Option<u8>,
}

impl CodeSpec {
    /// Spec for the direct sum C_(a1, a2). Derives n, the selected exponent,
    /// lambda, and epsilon; rejects pairs whose difference is not a third of
    /// the group order or whose selected exponent fails gcd(delta, a) = 2.
    pub fn reducible(params: FieldParams, a1: i64, a2: i64) -> Result<CodeSpec> {
        let nn = params.group_order();
        let a1 = crate::num::rem_euclid_u64(a1, nn);
        let a2 = crate::num::rem_euclid_u64(a2, nn);
        if nn % 3 != 0 {
            return Err(Error::ConditionsNotMet(format!(
                "3 must divide q^k - 1 = {}",
                nn
            )));
        }
        let third = nn / 3;
        let diff = (a1 + nn - a2) % nn;
        let epsilon = if diff == third {
            1u8
        } else if diff == nn - third {
            2u8
        } else {
            return Err(Error::ConditionsNotMet(format!(
                "a1 - a2 = {} is not congruent to either sign of (q^k - 1)/3 = {}",
                diff, third
            )));
        };
        let n1 = nn / gcd(nn, a1);
        let n2 = nn / gcd(nn, a2);
        let (n, a) = if n1 >= n2 { (n1, a1) } else { (n2, a2) };
        if (a1 as u128 * n as u128) % nn as u128 != 0
            || (a2 as u128 * n as u128) % nn as u128 != 0
        {
            return Err(Error::ConditionsNotMet(
                "component lengths do not both divide the joint length".into(),
            ));
        }
        let lambda = lambda_for(&params, a)?;
        Ok(CodeSpec { params, a1, a2: Some(a2), n, a, lambda, epsilon: Some(epsilon) })
    }

    /// Spec for the irreducible component C_a.
    pub fn irreducible(params: FieldParams, a: i64) -> Result<CodeSpec> {
        let nn = params.group_order();
        let a = crate::num::rem_euclid_u64(a, nn);
        let lambda = lambda_for(&params, a)?;
        let n = nn / gcd(nn, a);
        Ok(CodeSpec { params, a1: a, a2: None, n, a, lambda, epsilon: None })
    }

    /// Number of (alpha, beta) pairs a full enumeration visits.
    pub fn enumeration_size(&self) -> u128 {
        let qk = self.params.field_size() as u128;
        if self.a2.is_some() {
            qk * qk
        } else {
            qk
        }
    }
}

fn lambda_for(params: &FieldParams, a: u64) -> Result<u64> {
    if gcd(params.delta, a) != 2 {
        return Err(Error::ConditionsNotMet(format!(
            "gcd(delta, a) = gcd({}, {}) must be 2",
            params.delta, a
        )));
    }
    let q1 = params.q - 1;
    Ok(q1 / gcd(q1, a / 2))
}

/// The codeword for (alpha, beta) as canonical F_q symbols. beta is ignored
/// for irreducible specs.
pub fn codeword(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    alpha: FieldElement,
    beta: FieldElement,
) -> Vec<u32> {
    let nn = ctx.order();
    let mut word = Vec::with_capacity(spec.n as usize);
    for i in 0..spec.n {
        let mut x = ctx.mul(alpha, ctx.gamma_pow((spec.a1 * i % nn) as i64));
        if let Some(a2) = spec.a2 {
            x = ctx.add(x, ctx.mul(beta, ctx.gamma_pow((a2 * i % nn) as i64)));
        }
        let tr = ctx.trace_relative(x);
        word.push(ctx.subfield_symbol(tr).expect("relative trace lies in F_q"));
    }
    word
}

/// Z(alpha, beta): the number of zero coordinates, counted directly.
pub fn z_count(ctx: &FieldCtx, spec: &CodeSpec, alpha: FieldElement, beta: FieldElement) -> u64 {
    codeword(ctx, spec, alpha, beta).iter().filter(|&&s| s == 0).count() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct WeightEntry {
    pub weight: u64,
    pub frequency: u64,
}

/// An exact weight enumerator: (weight, frequency) pairs sorted by weight,
/// zero frequencies omitted.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(transparent)]
pub struct WeightDistribution {
    pub entries: Vec<WeightEntry>,
}

impl WeightDistribution {
    pub fn from_hist(hist: &[u64]) -> WeightDistribution {
        let entries = hist
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f > 0)
            .map(|(w, &f)| WeightEntry { weight: w as u64, frequency: f })
            .collect();
        WeightDistribution { entries }
    }

    /// Builds from unsorted pairs, merging duplicate weights.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> WeightDistribution {
        let mut map = std::collections::BTreeMap::new();
        for &(w, f) in pairs {
            if f > 0 {
                *map.entry(w).or_insert(0u64) += f;
            }
        }
        WeightDistribution {
            entries: map.into_iter().map(|(weight, frequency)| WeightEntry { weight, frequency }).collect(),
        }
    }

    pub fn total(&self) -> u128 {
        self.entries.iter().map(|e| e.frequency as u128).sum()
    }

    pub fn first_moment(&self) -> u128 {
        self.entries.iter().map(|e| e.weight as u128 * e.frequency as u128).sum()
    }

    pub fn frequency_of(&self, weight: u64) -> u64 {
        self.entries
            .iter()
            .find(|e| e.weight == weight)
            .map(|e| e.frequency)
            .unwrap_or(0)
    }

    pub fn weights(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.weight).collect()
    }

    /// Renders as "1 + 72z^12 + ...", the usual weight-enumerator polynomial.
    pub fn to_poly_string(&self) -> String {
        if self.entries.is_empty() {
            return "0".to_string();
        }
        let terms: Vec<String> = self
            .entries
            .iter()
            .map(|e| match (e.weight, e.frequency) {
                (0, f) => f.to_string(),
                (1, 1) => "z".to_string(),
                (1, f) => format!("{}z", f),
                (w, 1) => format!("z^{}", w),
                (w, f) => format!("{}z^{}", f, w),
            })
            .collect();
        terms.join(" + ")
    }
}

/// Per-exponent symbol tables: key1[e] = symbol of Tr(g^e), key2neg[e] =
/// symbol of -Tr(g^e), both doubled in length so that exponent sums below
/// 2(q^k - 1) index directly without a modulo.
fn symbol_tables(ctx: &FieldCtx) -> (Vec<u32>, Vec<u32>) {
    let nn = ctx.order() as usize;
    let mut key1 = vec![0u32; 2 * nn];
    let mut key2neg = vec![0u32; 2 * nn];
    for e in 0..nn {
        let tr = ctx.trace_relative(ctx.gamma_pow(e as i64));
        let s = ctx.subfield_symbol(tr).expect("relative trace lies in F_q");
        let sneg = ctx.subfield_symbol(ctx.neg(tr)).expect("relative trace lies in F_q");
        key1[e] = s;
        key2neg[e] = sneg;
    }
    for e in 0..nn {
        key1[nn + e] = key1[e];
        key2neg[nn + e] = key2neg[e];
    }
    (key1, key2neg)
}

pub fn weight_distribution_bruteforce(ctx: &FieldCtx, spec: &CodeSpec) -> Result<WeightDistribution> {
    weight_distribution_bruteforce_with_budget(ctx, spec, DEFAULT_ENUMERATION_BUDGET)
}

/// Exact weight distribution by visiting every message pair. The histogram
/// is assembled per alpha-slice and merged additively.
pub fn weight_distribution_bruteforce_with_budget(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    budget: u128,
) -> Result<WeightDistribution> {
    let pairs = spec.enumeration_size();
    if pairs > budget {
        return Err(Error::EnumerationBudgetExceeded { pairs, budget });
    }
    let nn = ctx.order() as usize;
    let n = spec.n as usize;
    let (key1, key2neg) = symbol_tables(ctx);
    let u1: Vec<u32> = (0..n).map(|i| (spec.a1 * i as u64 % nn as u64) as u32).collect();

    let hist = match spec.a2 {
        None => {
            // single component: alpha = 0 and alpha = g^la for every la
            let mut hist = vec![0u64; n + 1];
            hist[0] += 1;
            for la in 0..nn {
                let zeros = u1
                    .iter()
                    .filter(|&&u| key1[la + u as usize] == 0)
                    .count();
                hist[n - zeros] += 1;
            }
            hist
        }
        Some(a2) => {
            let u2: Vec<u32> = (0..n).map(|i| (a2 * i as u64 % nn as u64) as u32).collect();
            // alpha index 0 encodes alpha = 0; index la + 1 encodes g^la
            (0..=nn)
                .into_par_iter()
                .map(|ai| {
                    let mut hist = vec![0u64; n + 1];
                    if ai == 0 {
                        hist[0] += 1; // (0, 0)
                        for lb in 0..nn {
                            let zeros = u2
                                .iter()
                                .filter(|&&u| key2neg[lb + u as usize] == 0)
                                .count();
                            hist[n - zeros] += 1;
                        }
                    } else {
                        let la = ai - 1;
                        let zeros = u1
                            .iter()
                            .filter(|&&u| key1[la + u as usize] == 0)
                            .count();
                        hist[n - zeros] += 1; // (g^la, 0)
                        for lb in 0..nn {
                            let mut zeros = 0usize;
                            for i in 0..n {
                                if key1[la + u1[i] as usize] == key2neg[lb + u2[i] as usize] {
                                    zeros += 1;
                                }
                            }
                            hist[n - zeros] += 1;
                        }
                    }
                    hist
                })
                .reduce(
                    || vec![0u64; n + 1],
                    |mut acc, part| {
                        for (a, b) in acc.iter_mut().zip(part) {
                            *a += b;
                        }
                        acc
                    },
                )
        }
    };
    let dist = WeightDistribution::from_hist(&hist);
    debug_assert_eq!(dist.total(), pairs);
    Ok(dist)
}

/// Draws `samples` uniform message pairs with a seeded generator and returns
/// the set of observed weights. Frequencies are never estimated; the caller
/// may only assert membership of these weights in a closed-form support.
pub fn weight_support_sample(
    ctx: &FieldCtx,
    spec: &CodeSpec,
    samples: u64,
    seed: u64,
) -> BTreeSet<u64> {
    let mut rng = StdRng::seed_from_u64(seed);
    let qk = ctx.size();
    let draw = |rng: &mut StdRng| -> FieldElement {
        let v = rng.gen_range(0..qk);
        if v == 0 {
            FieldElement::Zero
        } else {
            ctx.gamma_pow(v as i64 - 1)
        }
    };
    let mut seen = BTreeSet::new();
    for _ in 0..samples {
        let alpha = draw(&mut rng);
        let beta = if spec.a2.is_some() { draw(&mut rng) } else { FieldElement::Zero };
        let weight = spec.n - z_count(ctx, spec, alpha, beta);
        seen.insert(weight);
    }
    seen
}
