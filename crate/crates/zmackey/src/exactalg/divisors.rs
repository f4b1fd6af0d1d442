use alloc::format;
use alloc::vec::Vec;

use crate::Error;

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn divides(d: u64, n: u64) -> bool {
    if d == 0 {
        n == 0
    } else {
        n % d == 0
    }
}

/// Sorted divisors of `n ≥ 1`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn primes_of(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn valuation(p: u64, n: u64) -> u32 {
    assert!(n != 0 && p > 1, "valuation needs n ≠ 0 and p > 1");
    let mut m = n;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    e
}

/// The ℓ-primary part `a(ℓ)`.
pub fn ell_part(a: u64, l: u64) -> u64 {
    l.pow(valuation(l, a))
}

/// The prime-to-ℓ part `a(ℓ̂)`.
pub fn ell_hat_part(a: u64, l: u64) -> u64 {
    a / ell_part(a, l)
}

/// The unique ε mod [a,c] with ε ≡ 1 (mod a) and ε ≡ 1 − (a,c) (mod c).
pub fn epsilon(a: u64, c: u64, n: u64) -> Result<u64, Error> {
    if a == 0 || c == 0 || !divides(a, n) || !divides(c, n) {
        return Err(Error::Invalid(format!("epsilon needs a, c dividing n; got a={}, c={}, n={}", a, c, n)));
    }
    let m = lcm(a, c);
    let g = gcd(a, c) as i128;
    let target = (1 - g).rem_euclid(c as i128) as u64;
    // ε = 1 + a·k, solve a·k ≡ target − 1 (mod c)
    let rhs = ((target as i128 - 1).rem_euclid(c as i128)) as u64;
    for k in 0..(c / gcd(a, c)).max(1) {
        if (a * k) % c == rhs % c {
            return Ok((1 + a * k) % m);
        }
    }
    Err(Error::Invalid(format!("no epsilon for a={}, c={}", a, c)))
}

/// Prime edges `(d, d·ℓ)` of the divisor lattice of `n`.
pub fn prime_edges(n: u64) -> Vec<(u64, u64, u64)> {
    let ps = primes_of(n);
    let mut out = Vec::new();
    for d in divisors(n) {
        for &p in &ps {
            if n % (d * p) == 0 {
                out.push((d, d * p, p));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), alloc::vec![1]);
        assert_eq!(factorize(360), alloc::vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(ell_part(360, 3), 9);
        assert_eq!(ell_hat_part(360, 3), 40);
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(2, 3, 6).unwrap(), 3);
        for n in [12u64, 30, 60] {
            for a in divisors(n) {
                for c in divisors(n) {
                    let e = epsilon(a, c, n).unwrap();
                    assert_eq!(e % a, 1 % a);
                    let want = (1 - gcd(a, c) as i64).rem_euclid(c as i64) as u64;
                    assert_eq!(e % c, want);
                    let hits = (0..lcm(a, c)).filter(|x| x % a == 1 % a && x % c == want).count();
                    assert_eq!(hits, 1);
                }
            }
        }
        assert!(epsilon(5, 3, 6).is_err());
    }

    #[test]
    fn lattice_identities() {
        let ds = divisors(60);
        for &x in &ds {
            for &y in &ds {
                for &z in &ds {
                    assert_eq!(gcd(lcm(x, y), lcm(x, z)), lcm(x, gcd(y, z)));
                }
            }
        }
        for x in divisors(120) {
            for d in divisors(x) {
                for e in divisors(x) {
                    assert_eq!(gcd(x / d, x / e), x / lcm(d, e));
                }
            }
        }
    }
}
