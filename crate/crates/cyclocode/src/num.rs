//! Small integer helpers: gcd, modular inverse, primality, prime powers,
//! factorization and Euler's totient. Everything is exact u64/u128 work;
//! the sizes involved stay far below overflow with u128 intermediates.

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Least nonnegative residue of a signed value.
pub fn rem_euclid_u64(a: i64, m: u64) -> u64 {
    (a.rem_euclid(m as i64)) as u64
}

/// Inverse of `a` modulo `m`; requires gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes n = p^t with p prime, t >= 1, if possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let fs = prime_factors(n);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut t = 0u32;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        t += 1;
    }
    if m == 1 {
        Some((p, t))
    } else {
        None
    }
}

pub fn totient(n: u64) -> u64 {
    let mut res = n;
    for p in prime_factors(n) {
        res = res / p * (p - 1);
    }
    res
}

/// p^e as u128 (never overflows for the table sizes this crate accepts).
pub fn pow_u128(p: u64, e: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc *= p as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(48, 34), 2);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(8, 2), 2);
        assert_eq!(gcd(14, 64), 2);
    }

    #[test]
    fn lcm_basics() {
        assert_eq!(lcm(24, 8), 24);
        assert_eq!(lcm(21, 6), 42);
        assert_eq!(lcm(0, 3), 0);
        assert_eq!(lcm(1, 1), 1);
    }

    #[test]
    fn inv_mod_roundtrip() {
        for m in [5u64, 7, 24, 48, 168] {
            for a in 1..m {
                match inv_mod(a, m) {
                    Some(x) => assert_eq!(a as u128 * x as u128 % m as u128, 1),
                    None => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(7));
        assert!(is_prime(13));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(49));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn totient_values() {
        assert_eq!(totient(4), 2);
        assert_eq!(totient(7), 6);
        assert_eq!(totient(10), 4);
        assert_eq!(totient(13), 12);
        assert_eq!(totient(16), 8);
    }

    #[test]
    fn negative_residues() {
        assert_eq!(rem_euclid_u64(-14, 48), 34);
        assert_eq!(rem_euclid_u64(2, 48), 2);
        assert_eq!(rem_euclid_u64(-48, 48), 0);
    }
}
