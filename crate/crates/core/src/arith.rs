//! Exact integer helpers: square roots, gcd, trial-division factoring and
//! prime-power recognition. Everything here is `u64`/`i64`; no floating point.

/// `⌊√n⌋` by integer Newton iteration.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = 1u64 << ((64 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// `m = ⌊2√q⌋`, computed as `⌊√(4q)⌋`.
pub fn floor_two_sqrt(q: u64) -> u64 {
    isqrt(4 * q)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    factorize(n).first() == Some(&(n, 1))
}

/// Returns `(p, e)` with `q = p^e` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All odd prime powers in `[lo, hi]`, ascending.
pub fn odd_prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&q| q % 2 == 1 && prime_power(q).is_some())
        .collect()
}

pub fn pow_u128(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_sqrt_small() {
        assert_eq!(floor_two_sqrt(7), 5);
        assert_eq!(floor_two_sqrt(27), 10);
        assert_eq!(floor_two_sqrt(53), 14);
        assert_eq!(floor_two_sqrt(243), 31);
        assert_eq!(floor_two_sqrt(3125), 111);
        assert_eq!(floor_two_sqrt(19683), 280);
        // 4q a perfect square
        assert_eq!(floor_two_sqrt(49), 14);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(odd_prime_powers(3, 30), vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]);
        assert_eq!(euler_phi(130), 48);
        assert_eq!(euler_phi(19), 18);
    }

    proptest! {
        #[test]
        fn isqrt_brackets(n in 0u64..(1u64 << 50)) {
            let r = isqrt(n);
            prop_assert!(r * r <= n);
            prop_assert!((r + 1) * (r + 1) > n);
        }
    }
}
