//! Small integer number theory used throughout: everything is exact `u64`
//! arithmetic with `u128` intermediates, sized for group orders <= 256 and
//! moduli that fit comfortably in a machine word.

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `base^exp mod m` for `m >= 1`.
pub fn modpow(base: u64, exp: u64, m: u64) -> u64 {
    assert!(m >= 1);
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut b: u128 = (base % m) as u128;
    let mut e = exp;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

/// Modular inverse of `a` mod `m`, if `gcd(a, m) = 1`.
pub fn modinv(a: u64, m: u64) -> Option<u64> {
    assert!(m >= 1);
    if m == 1 {
        return Some(0);
    }
    // extended Euclid on (a mod m, m), tracking only the coefficient of a
    let (mut r0, mut r1) = ((a % m) as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
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
    let m128 = m as i128;
    Some(((s0 % m128 + m128) % m128) as u64)
}

/// Multiplicative order of `a` mod `m`; requires `gcd(a, m) = 1`.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    assert!(m >= 1 && gcd(a % m.max(1), m) == 1 || m == 1);
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut ord = 1u64;
    while x != 1 {
        x = (x as u128 * (a % m) as u128 % m as u128) as u64;
        ord += 1;
        assert!(ord <= m, "order computation ran past the modulus");
    }
    ord
}

/// Prime factorization by trial division, returned as (prime, exponent)
/// pairs in increasing prime order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// p-adic valuation of `n` (for `n >= 1`).
pub fn padic_val(n: u64, p: u64) -> u32 {
    assert!(n >= 1 && p >= 2);
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modinv_agrees_with_modpow_on_prime_modulus() {
        for a in 1..97u64 {
            assert_eq!(modinv(a, 97), Some(modpow(a, 95, 97)));
        }
        assert_eq!(modinv(6, 9), None);
        assert_eq!(modinv(5, 1), Some(0));
    }

    #[test]
    fn orders_divide_phi() {
        for m in [5u64, 8, 9, 15, 32, 49] {
            for a in 1..m {
                if gcd(a, m) == 1 {
                    let d = multiplicative_order(a, m);
                    assert_eq!(modpow(a, d, m), 1 % m);
                    assert_eq!(euler_phi(m) % d, 0);
                }
            }
        }
    }

    #[test]
    fn factorization_roundtrip() {
        for n in 1..500u64 {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            for w in f.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
        }
        assert!(is_prime(251));
        assert!(!is_prime(1) && !is_prime(255));
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_val(48, 2), 4);
        assert_eq!(padic_val(48, 3), 1);
        assert_eq!(padic_val(7, 5), 0);
    }
}
