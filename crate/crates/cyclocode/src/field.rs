//! Exact arithmetic in F_{q^k} with q = p^t, backed by discrete-log tables.
//!
//! Elements are either zero or a power of a fixed primitive element `gamma`,
//! so multiplication is exponent addition and equality is structural. The
//! packed "code" of an element is its coordinate vector in the monomial
//! basis {1, x, ..., x^{m-1}}, read as a base-p integer; addition unpacks,
//! adds digit-wise and repacks. All tables are built once and never mutated,
//! so a context can be shared freely across threads.

use crate::error::{Error, Result};
use crate::num::{is_prime, pow_u128, prime_factors, rem_euclid_u64};

/// Maximum number of field elements a context may table.
pub const TABLE_BUDGET: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FieldParams {
    pub p: u64,
    pub t: u32,
    pub k: u32,
    pub q: u64,
    pub delta: u64,
}

impl FieldParams {
    pub fn new(p: u64, t: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if t == 0 || k == 0 {
            return Err(Error::InvalidParameter("t and k must be positive".into()));
        }
        let size = pow_u128(p, t * k);
        if size > TABLE_BUDGET {
            return Err(Error::TableBudgetExceeded { size, budget: TABLE_BUDGET });
        }
        let q = pow_u128(p, t) as u64;
        let qk = size as u64;
        Ok(FieldParams { p, t, k, q, delta: (qk - 1) / (q - 1) })
    }

    /// Derives (p, t) from a prime-power q.
    pub fn from_qk(q: u64, k: u32) -> Result<Self> {
        match crate::num::prime_power(q) {
            Some((p, t)) => FieldParams::new(p, t, k),
            None => Err(Error::InvalidParameter(format!("q = {} is not a prime power", q))),
        }
    }

    /// q^k, the field size.
    pub fn field_size(&self) -> u64 {
        pow_u128(self.p, self.t * self.k) as u64
    }

    /// q^k - 1, the multiplicative group order.
    pub fn group_order(&self) -> u64 {
        self.field_size() - 1
    }
}

/// An element of F_{q^k}: zero, or gamma^e for a canonical e in [0, q^k-2].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Zero,
    Log(u32),
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Zero)
    }
}

pub struct FieldCtx {
    params: FieldParams,
    /// Monic modulus, constant term first, degree m = t*k.
    modulus: Vec<u64>,
    m: u32,
    order: u32,
    /// exponent -> packed element code
    pub(crate) antilog: Vec<u32>,
    /// packed element code -> exponent (u32::MAX for the zero code)
    pub(crate) log: Vec<u32>,
    /// packed element code -> absolute trace in [0, p-1]
    pub(crate) abs_tr: Vec<u32>,
    /// sorted packed codes of the subfield F_q; index = canonical symbol
    pub(crate) subfield_codes: Vec<u32>,
}

// ---------- dense polynomial helpers over F_p (constant term first) ----------

fn poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, f, p);
    prod
}

/// In-place remainder modulo monic f.
fn poly_rem(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let deg_f = f.len() - 1;
    while a.len() > deg_f {
        let c = *a.last().unwrap() % p;
        let k = a.len() - 1 - deg_f;
        if c != 0 {
            for (i, &fc) in f.iter().enumerate() {
                let sub = c * fc % p;
                a[k + i] = (a[k + i] + p - sub) % p;
            }
        }
        a.pop();
    }
    while a.len() < deg_f {
        a.push(0);
    }
    if deg_f == 0 {
        a.clear();
        a.push(0);
    }
}

fn poly_pow_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let deg_f = f.len() - 1;
    let mut result = vec![0u64; deg_f.max(1)];
    result[0] = 1;
    let mut b = base.to_vec();
    poly_rem(&mut b, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &b, f, p);
        }
        b = poly_mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        // a mod b with b made monic first
        let lead = *b.last().unwrap();
        let inv = crate::num::inv_mod(lead, p).expect("p prime");
        let monic_b: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        poly_rem(&mut a, &monic_b, p);
        poly_trim(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn poly_is_nonzero_constant(a: &[u64]) -> bool {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    a.len() == 1 && a[0] != 0
}

/// x^(p^d) mod f, computed by d successive p-th powers.
fn frobenius_pow(f: &[u64], p: u64, d: u32) -> Vec<u64> {
    let deg_f = f.len() - 1;
    let mut x = vec![0u64; deg_f.max(2)];
    x[1] = 1;
    poly_rem(&mut x, f, p);
    let mut cur = x;
    for _ in 0..d {
        cur = poly_pow_mod(&cur, p, f, p);
    }
    cur
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = (f.len() - 1) as u32;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // x^(p^m) == x mod f
    let xpm = frobenius_pow(f, p, m);
    let deg = f.len() - 1;
    let mut x = vec![0u64; deg];
    x[1] = 1;
    if xpm != x {
        return false;
    }
    // gcd(x^(p^(m/r)) - x, f) must be constant for every prime r | m
    for r in prime_factors(m as u64) {
        let d = m / r as u32;
        let mut g = frobenius_pow(f, p, d);
        // g - x
        let sub = (g[1] + p - 1) % p;
        g[1] = sub;
        let gg = poly_gcd(&g, f, p);
        if !poly_is_nonzero_constant(&gg) {
            return false;
        }
    }
    true
}

/// Does x generate the full multiplicative group of F_p[x]/(f)?
/// Assumes f monic with nonzero constant term.
fn root_is_primitive(f: &[u64], p: u64, group_order: u64) -> bool {
    let deg = f.len() - 1;
    let mut x = vec![0u64; deg.max(2)];
    x[1] = 1;
    poly_rem(&mut x, f, p);
    let mut one = vec![0u64; deg.max(1)];
    one[0] = 1;
    if poly_pow_mod(&x, group_order, f, p) != one {
        return false;
    }
    for r in prime_factors(group_order) {
        if poly_pow_mod(&x, group_order / r, f, p) == one {
            return false;
        }
    }
    true
}

fn poly_display(f: &[u64]) -> String {
    let parts: Vec<String> = f.iter().map(|c| c.to_string()).collect();
    parts.join(",")
}

impl FieldCtx {
    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    /// q^k - 1.
    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// q^k.
    pub fn size(&self) -> u64 {
        self.log.len() as u64
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::Zero
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::Log(0)
    }

    /// gamma^e with e taken modulo q^k - 1 (negative e allowed).
    pub fn gamma_pow(&self, e: i64) -> FieldElement {
        FieldElement::Log(rem_euclid_u64(e, self.order()) as u32)
    }

    pub fn log(&self, x: FieldElement) -> Option<u64> {
        match x {
            FieldElement::Zero => None,
            FieldElement::Log(e) => Some(e as u64),
        }
    }

    pub(crate) fn code_of(&self, x: FieldElement) -> u32 {
        match x {
            FieldElement::Zero => 0,
            FieldElement::Log(e) => self.antilog[e as usize],
        }
    }

    pub(crate) fn element_of_code(&self, code: u32) -> FieldElement {
        if code == 0 {
            FieldElement::Zero
        } else {
            FieldElement::Log(self.log[code as usize])
        }
    }

    /// The constant element with value c (an F_p scalar embedded in the field).
    pub fn constant(&self, c: u64) -> FieldElement {
        self.element_of_code((c % self.params.p) as u32)
    }

    pub(crate) fn add_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.params.p as u32;
        let mut out = 0u32;
        let mut mult = 1u32;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.m {
            let da = a % p;
            let db = b % p;
            let mut d = da + db;
            if d >= p {
                d -= p;
            }
            out += d * mult;
            a /= p;
            b /= p;
            if a == 0 && b == 0 {
                break;
            }
            mult *= p;
        }
        out
    }

    fn neg_code(&self, a: u32) -> u32 {
        let p = self.params.p as u32;
        let mut out = 0u32;
        let mut mult = 1u32;
        let mut a = a;
        for _ in 0..self.m {
            let d = a % p;
            if d != 0 {
                out += (p - d) * mult;
            }
            a /= p;
            if a == 0 {
                break;
            }
            mult *= p;
        }
        out
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x, y) {
            (FieldElement::Zero, _) => y,
            (_, FieldElement::Zero) => x,
            _ => self.element_of_code(self.add_codes(self.code_of(x), self.code_of(y))),
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        match x {
            FieldElement::Zero => x,
            _ => self.element_of_code(self.neg_code(self.code_of(x))),
        }
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x, y) {
            (FieldElement::Zero, _) | (_, FieldElement::Zero) => FieldElement::Zero,
            (FieldElement::Log(a), FieldElement::Log(b)) => {
                let n = self.order;
                let mut e = a + b;
                if e >= n {
                    e -= n;
                }
                FieldElement::Log(e)
            }
        }
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        match x {
            FieldElement::Zero => Err(Error::DivisionByZero),
            FieldElement::Log(a) => {
                let n = self.order;
                Ok(FieldElement::Log(if a == 0 { 0 } else { n - a }))
            }
        }
    }

    /// x^e; negative e inverts first (error on zero), and 0^0 = 1.
    pub fn pow(&self, x: FieldElement, e: i64) -> Result<FieldElement> {
        match x {
            FieldElement::Zero => {
                if e > 0 {
                    Ok(FieldElement::Zero)
                } else if e == 0 {
                    Ok(self.one())
                } else {
                    Err(Error::DivisionByZero)
                }
            }
            FieldElement::Log(a) => {
                let n = self.order() as i128;
                let e = (a as i128 * e as i128).rem_euclid(n) as u32;
                Ok(FieldElement::Log(e))
            }
        }
    }

    /// Trace from F_{q^k} down to F_q: sum of the k conjugates x^(q^j).
    pub fn trace_relative(&self, x: FieldElement) -> FieldElement {
        match x {
            FieldElement::Zero => FieldElement::Zero,
            FieldElement::Log(e) => {
                let n = self.order() as u128;
                let q = self.params.q as u128;
                let mut acc = 0u32;
                let mut exp = e as u128;
                for _ in 0..self.params.k {
                    acc = self.add_codes(acc, self.antilog[exp as usize]);
                    exp = exp * q % n;
                }
                self.element_of_code(acc)
            }
        }
    }

    /// Absolute trace down to F_p, as an integer in [0, p-1].
    pub fn trace_absolute(&self, x: FieldElement) -> u64 {
        self.abs_tr[self.code_of(x) as usize] as u64
    }

    /// Canonical symbol of a subfield element: its rank among the q packed
    /// codes of F_q in ascending order. Zero always maps to 0 and one to 1.
    /// Returns None if x is not in F_q.
    pub fn subfield_symbol(&self, x: FieldElement) -> Option<u32> {
        let code = self.code_of(x);
        self.subfield_codes.binary_search(&code).ok().map(|r| r as u32)
    }

    /// All q elements of the subfield F_q, in canonical symbol order.
    pub fn subfield_elements(&self) -> Vec<FieldElement> {
        self.subfield_codes.iter().map(|&c| self.element_of_code(c)).collect()
    }

    /// Modulus rendered as a comma-separated coefficient list, constant first.
    pub fn modulus_string(&self) -> String {
        poly_display(&self.modulus)
    }
}

/// Builds the field context for F_{p^(t*k)}.
///
/// Without an override the modulus is the lexicographically smallest monic
/// primitive polynomial of degree t*k over F_p, comparing coefficient
/// vectors (c_0, ..., c_{m-1}) position by position from the constant term
/// up. gamma is the residue of the indeterminate.
pub fn build_field(p: u64, t: u32, k: u32, modulus_override: Option<&[u64]>) -> Result<FieldCtx> {
    let params = FieldParams::new(p, t, k)?;
    let m = t * k;
    let size = pow_u128(p, m) as u64;
    let group_order = size - 1;

    let modulus: Vec<u64> = match modulus_override {
        Some(raw) => {
            let mut f: Vec<u64> = raw.iter().map(|&c| c % p).collect();
            if f.len() != m as usize + 1 || *f.last().unwrap() != 1 {
                return Err(Error::InvalidParameter(format!(
                    "modulus override must be monic of degree {}",
                    m
                )));
            }
            if !is_irreducible(&f, p) {
                return Err(Error::ReducibleModulus(poly_display(&f)));
            }
            if !root_is_primitive(&f, p, group_order) {
                return Err(Error::NonPrimitiveModulus(poly_display(&f)));
            }
            poly_trim(&mut f);
            f
        }
        None => find_default_modulus(p, m, group_order),
    };

    // antilog/log tables by repeated multiplication with x
    let mut antilog = vec![0u32; group_order as usize];
    let mut log = vec![u32::MAX; size as usize];
    let mut cur = vec![0u64; m as usize];
    cur[0] = 1;
    for e in 0..group_order {
        let code = pack(&cur, p);
        antilog[e as usize] = code;
        debug_assert_eq!(log[code as usize], u32::MAX, "gamma has full order");
        log[code as usize] = e as u32;
        cur = mul_by_x(&cur, &modulus, p);
    }
    log[0] = u32::MAX;

    // absolute trace over the monomial basis, then by F_p-linearity
    let mut basis_tr = vec![0u64; m as usize];
    for i in 0..m as u64 {
        let mut acc = 0u32;
        let mut exp = i as u128;
        for _ in 0..m {
            acc = add_codes_raw(acc, antilog[exp as usize], p, m);
            exp = exp * p as u128 % group_order as u128;
        }
        assert!(
            (acc as u64) < p,
            "trace of a basis monomial must be a prime-field constant"
        );
        basis_tr[i as usize] = acc as u64;
    }
    let mut abs_tr = vec![0u32; size as usize];
    for code in 0..size as u32 {
        let mut c = code;
        let mut tr = 0u64;
        for &bt in basis_tr.iter() {
            tr = (tr + (c % p as u32) as u64 * bt) % p;
            c /= p as u32;
            if c == 0 {
                break;
            }
        }
        abs_tr[code as usize] = tr as u32;
    }

    // subfield F_q = {0} plus the cyclic group generated by gamma^delta
    let q = params.q;
    let delta = params.delta;
    let mut subfield_codes = Vec::with_capacity(q as usize);
    subfield_codes.push(0u32);
    for j in 0..(q - 1) as u128 {
        let e = (delta as u128 * j) % group_order as u128;
        subfield_codes.push(antilog[e as usize]);
    }
    subfield_codes.sort_unstable();
    assert_eq!(subfield_codes.len() as u64, q);

    Ok(FieldCtx {
        params,
        modulus,
        m,
        order: group_order as u32,
        antilog,
        log,
        abs_tr,
        subfield_codes,
    })
}

fn pack(digits: &[u64], p: u64) -> u32 {
    let mut code = 0u64;
    for &d in digits.iter().rev() {
        code = code * p + d;
    }
    code as u32
}

fn add_codes_raw(a: u32, b: u32, p: u64, m: u32) -> u32 {
    let p = p as u32;
    let mut out = 0u32;
    let mut mult = 1u32;
    let (mut a, mut b) = (a, b);
    for i in 0..m {
        let mut d = a % p + b % p;
        if d >= p {
            d -= p;
        }
        out += d * mult;
        a /= p;
        b /= p;
        if i + 1 < m {
            mult *= p;
        }
        if a == 0 && b == 0 {
            break;
        }
    }
    out
}

fn mul_by_x(cur: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let m = cur.len();
    let carry = cur[m - 1];
    let mut next = vec![0u64; m];
    for i in (1..m).rev() {
        next[i] = cur[i - 1];
    }
    if carry != 0 {
        // subtract carry * (f - x^m), i.e. use x^m = -(f_0 + ... + f_{m-1} x^{m-1})
        for i in 0..m {
            let sub = carry * f[i] % p;
            next[i] = (next[i] + p - sub) % p;
        }
    }
    next
}

fn find_default_modulus(p: u64, m: u32, group_order: u64) -> Vec<u64> {
    // count through coefficient tuples (c_0, ..., c_{m-1}) with c_0 as the
    // most significant counter digit, so the first hit is lexicographically
    // smallest with low-degree coefficients compared first
    let total = pow_u128(p, m);
    for idx in 0..total {
        let mut digits = vec![0u64; m as usize];
        let mut rest = idx;
        for i in (0..m as usize).rev() {
            digits[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if digits[0] == 0 {
            continue; // x divides f, cannot be primitive
        }
        digits.push(1);
        if root_is_primitive(&digits, p, group_order) {
            return digits;
        }
    }
    unreachable!("a primitive polynomial of every degree exists over F_p")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx(p: u64, t: u32, k: u32) -> FieldCtx {
        build_field(p, t, k, None).unwrap()
    }

    #[test]
    fn default_moduli_are_the_smallest_primitive_polynomials() {
        assert_eq!(ctx(7, 1, 2).modulus(), &[3, 1, 1]);
        assert_eq!(ctx(13, 1, 2).modulus(), &[2, 1, 1]);
        assert_eq!(ctx(7, 1, 4).modulus(), &[3, 0, 1, 1, 1]);
        assert_eq!(ctx(5, 2, 2).modulus(), &[2, 0, 2, 1, 1]);
        assert_eq!(ctx(7, 1, 1).modulus(), &[2, 1]);
        assert_eq!(ctx(3, 1, 2).modulus(), &[2, 1, 1]);
    }

    #[test]
    fn params_validation() {
        assert!(matches!(build_field(4, 1, 2, None), Err(Error::NotPrime(4))));
        assert!(matches!(
            build_field(2, 1, 23, None),
            Err(Error::TableBudgetExceeded { .. })
        ));
        assert!(matches!(
            build_field(7, 0, 2, None),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn override_validation() {
        // the default, given explicitly, reproduces the same field
        let a = build_field(7, 1, 2, Some(&[3, 1, 1])).unwrap();
        let b = ctx(7, 1, 2);
        assert_eq!(a.antilog, b.antilog);
        // x^2 + 6 = (x-1)(x+1) over F_7
        assert!(matches!(
            build_field(7, 1, 2, Some(&[6, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        // x^2 + 1 is irreducible over F_7 but its root has order 4
        assert!(matches!(
            build_field(7, 1, 2, Some(&[1, 0, 1])),
            Err(Error::NonPrimitiveModulus(_))
        ));
        // wrong degree
        assert!(matches!(
            build_field(7, 1, 2, Some(&[3, 1, 1, 1])),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn determinism() {
        let a = ctx(7, 1, 2);
        let b = ctx(7, 1, 2);
        assert_eq!(a.modulus, b.modulus);
        assert_eq!(a.antilog, b.antilog);
        assert_eq!(a.log, b.log);
        assert_eq!(a.abs_tr, b.abs_tr);
        assert_eq!(a.subfield_codes, b.subfield_codes);
    }

    /// Absolute trace of gamma computed a second way: raw polynomial
    /// arithmetic, summing the conjugates x + x^p mod f without any of the
    /// context's tables.
    #[test]
    fn absolute_trace_of_gamma_against_polynomial_oracle() {
        let f = ctx(7, 1, 2);
        let modulus = [3u64, 1, 1];
        let xp = poly_pow_mod(&[0, 1], 7, &modulus, 7); // x^7 mod f
        let sum0 = xp[0] % 7;
        let sum1 = (1 + xp[1]) % 7;
        assert_eq!(sum1, 0, "trace must be a constant");
        assert_eq!(sum0, 6);
        assert_eq!(f.trace_absolute(f.gamma_pow(1)), 6);
    }

    #[test]
    fn traces_basic_values() {
        let f = ctx(7, 1, 2);
        assert_eq!(f.trace_absolute(f.zero()), 0);
        assert_eq!(f.trace_relative(f.zero()), FieldElement::Zero);
        // Tr(1) = k * 1 = 2 for the relative trace
        assert_eq!(f.trace_relative(f.one()), f.constant(2));
        assert_eq!(f.trace_absolute(f.one()), 2);
    }

    #[test]
    fn trace_fibers_are_balanced() {
        let f = ctx(7, 1, 2);
        let mut rel = std::collections::HashMap::new();
        let mut abs = vec![0u64; 7];
        let mut all = vec![f.zero()];
        for e in 0..f.order() {
            all.push(f.gamma_pow(e as i64));
        }
        for &x in &all {
            *rel.entry(f.trace_relative(x)).or_insert(0u64) += 1;
            abs[f.trace_absolute(x) as usize] += 1;
        }
        assert_eq!(rel.len(), 7);
        assert!(rel.values().all(|&c| c == 7)); // q^{k-1}
        assert!(abs.iter().all(|&c| c == 7)); // p^{tk-1}
    }

    #[test]
    fn frobenius_invariance_of_relative_trace() {
        for f in [ctx(7, 1, 2), ctx(5, 2, 2)] {
            let q = f.params().q as i64;
            for e in 0..f.order() as i64 {
                let x = f.gamma_pow(e);
                let xq = f.pow(x, q).unwrap();
                assert_eq!(f.trace_relative(x), f.trace_relative(xq));
            }
            assert!((f.trace_relative(f.zero())).is_zero());
        }
    }

    #[test]
    fn relative_trace_lands_in_subfield() {
        for f in [ctx(7, 1, 2), ctx(5, 2, 2), ctx(7, 1, 4)] {
            for e in 0..f.order() as i64 {
                let tr = f.trace_relative(f.gamma_pow(e));
                assert!(f.subfield_symbol(tr).is_some());
            }
        }
    }

    #[test]
    fn subfield_is_additively_closed() {
        for f in [ctx(7, 1, 2), ctx(5, 2, 2)] {
            let sub = f.subfield_elements();
            assert_eq!(sub.len() as u64, f.params().q);
            for &x in &sub {
                for &y in &sub {
                    let s = f.add(x, y);
                    assert!(f.subfield_symbol(s).is_some());
                }
            }
        }
    }

    #[test]
    fn canonical_symbols() {
        let f = ctx(7, 1, 2);
        assert_eq!(f.subfield_symbol(f.zero()), Some(0));
        assert_eq!(f.subfield_symbol(f.one()), Some(1));
        // with t = 1 the symbol of a constant is the constant itself
        for c in 0..7 {
            assert_eq!(f.subfield_symbol(f.constant(c)), Some(c as u32));
        }
        // gamma itself is not in F_7
        assert_eq!(f.subfield_symbol(f.gamma_pow(1)), None);

        let g = ctx(5, 2, 2);
        assert_eq!(g.subfield_symbol(g.zero()), Some(0));
        assert_eq!(g.subfield_symbol(g.one()), Some(1));
        assert_eq!(g.subfield_elements().len(), 25);
    }

    #[test]
    fn cube_root_of_unity_satisfies_its_equation() {
        let f = ctx(7, 1, 2);
        let tau = f.gamma_pow(16); // (q^k - 1) / 3 = 16
        let lhs = f.add(f.add(f.mul(tau, tau), tau), f.one());
        assert!(lhs.is_zero());
    }

    #[test]
    fn inverse_law_and_division_by_zero() {
        let f = ctx(7, 1, 2);
        let g = f.gamma_pow(1);
        assert_eq!(f.mul(g, f.inv(g).unwrap()), f.one());
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.pow(f.zero(), -1), Err(Error::DivisionByZero));
        assert_eq!(f.pow(f.zero(), 0).unwrap(), f.one());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let f = ctx(7, 1, 2);
        let g = f.gamma_pow(5);
        assert_eq!(f.pow(g, -1).unwrap(), f.inv(g).unwrap());
        assert_eq!(f.pow(g, 48).unwrap(), f.one());
        assert_eq!(f.gamma_pow(-14), f.gamma_pow(34));
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for f in [ctx(7, 1, 2), ctx(5, 2, 2)] {
            let n = f.order() as i64;
            let pick = |rng: &mut StdRng| -> FieldElement {
                if rng.gen_ratio(1, 16) {
                    f.zero()
                } else {
                    f.gamma_pow(rng.gen_range(0..n))
                }
            };
            for _ in 0..300 {
                let a = pick(&mut rng);
                let b = pick(&mut rng);
                let c = pick(&mut rng);
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            }
        }
    }
}
