// SPDX-License-Identifier: MIT OR Apache-2.0

//! Machine-integer number theory: modular arithmetic, primality, factoring.

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn mul_mod128(a: u128, b: u128, m: u128) -> u128 {
    if let (Ok(a64), Ok(b64)) = (u64::try_from(a), u64::try_from(b)) {
        if m <= u64::MAX as u128 {
            return (a64 as u128 * b64 as u128) % m;
        }
    }
    // Russian peasant; only reached for moduli above 2^64.
    let (mut a, mut b, mut r) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod128(r, a, m);
        }
        a = add_mod128(a, a, m);
        b >>= 1;
    }
    r
}

fn add_mod128(a: u128, b: u128, m: u128) -> u128 {
    let s = a.wrapping_add(b);
    if s < a || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn pow_mod128(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod128(r, b, m);
        }
        b = mul_mod128(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin; the 13 prime bases are exact below 3.3e24.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for &q in &BASES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod128(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i(a: i128, b: i128) -> i128 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i128
}

fn pollard_rho(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod128(mul_mod128(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization in ascending order of primes.
pub fn factor(n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    let mut m = n;
    let mut q = 2u128;
    while q < 1000 && q * q <= m {
        let mut e = 0;
        while m.is_multiple_of(q) {
            m /= q;
            e += 1;
        }
        if e > 0 {
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    let mut big = Vec::new();
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime(x) {
            big.push(x);
            continue;
        }
        let d = pollard_rho(x);
        stack.push(d);
        stack.push(x / d);
    }
    big.sort_unstable();
    for x in big {
        match out.last_mut() {
            Some((q, e)) if *q == x => *e += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

/// True when every prime power exactly dividing `n` is at most `bound`.
pub fn is_powersmooth(n: u128, bound: u128) -> bool {
    if n == 0 {
        return false;
    }
    factor(n).iter().all(|&(q, e)| q.checked_pow(e).is_some_and(|v| v <= bound))
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// ℓ-adic valuation of a nonzero integer.
pub fn valuation(mut n: i128, ell: i128) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % ell == 0 {
        n /= ell;
        v += 1;
    }
    v
}

/// Square root modulo an odd prime, smallest representative, or `None`.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(r.min(p - r))
}

/// All square roots of `a` modulo `m` (any m ≥ 1), ascending. Brute force
/// over prime-power components combined by CRT.
pub fn sqrt_mod_all(a: i128, m: u128) -> Vec<u128> {
    if m == 1 {
        return vec![0];
    }
    let mut acc: Vec<u128> = vec![0];
    let mut modulus = 1u128;
    for (q, e) in factor(m) {
        let qe = q.pow(e);
        let target = a.rem_euclid(qe as i128) as u128;
        let roots = sqrt_mod_prime_power(target, q, e);
        if roots.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * roots.len());
        for &x in &acc {
            for &y in &roots {
                next.push(crt(x, modulus, y, qe));
            }
        }
        acc = next;
        modulus *= qe;
    }
    acc.sort_unstable();
    acc.dedup();
    acc
}

fn sqrt_mod_prime_power(a: u128, q: u128, e: u32) -> Vec<u128> {
    let qe = q.pow(e);
    if qe <= 1 << 16 {
        return (0..qe).filter(|x| mul_mod128(*x, *x, qe) == a % qe).collect();
    }
    // Hensel lift from roots mod q; desk-scale inputs only hit this with q odd.
    let base = if q <= u64::MAX as u128 {
        match sqrt_mod_prime((a % q) as u64, q as u64) {
            Some(r) => vec![r as u128, (q - r as u128) % q],
            None => return Vec::new(),
        }
    } else {
        return Vec::new();
    };
    let mut roots: Vec<u128> = base;
    let mut modulus = q;
    for _ in 1..e {
        let next_mod = modulus * q;
        let mut next = Vec::new();
        for r in roots {
            for k in 0..q {
                let x = r + k * modulus;
                if mul_mod128(x, x, next_mod) == a % next_mod {
                    next.push(x);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        roots = next;
        modulus = next_mod;
    }
    roots
}

fn crt(a: u128, m: u128, b: u128, n: u128) -> u128 {
    // x ≡ a (m), x ≡ b (n), gcd(m,n)=1
    let inv = mod_inverse((m % n) as i128, n as i128).expect("coprime moduli") as u128;
    let t = mul_mod128((b + n - a % n) % n, inv, n);
    a + m * t
}

pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// ⌈log_b n⌉ for n ≥ 1, b ≥ 2.
pub fn ceil_log(n: u128, b: u128) -> u32 {
    let mut k = 0;
    let mut v = 1u128;
    while v < n {
        v *= b;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_small() {
        let sieve: Vec<u128> = (0..2000u128)
            .filter(|&n| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        let mr: Vec<u128> = (0..2000u128).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
        assert!(is_prime(3533));
        assert!(!is_prime(4301));
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u128, 2, 48, 288, 770048, 600851475143, 4301] {
            let f = factor(n);
            assert_eq!(f.iter().map(|(q, e)| q.pow(*e)).product::<u128>(), n);
            assert!(f.iter().all(|(q, _)| is_prime(*q)));
        }
        assert_eq!(factor(4301), vec![(11, 1), (17, 1), (23, 1)]);
    }

    #[test]
    fn sqrt_small() {
        assert_eq!(sqrt_mod_prime(188, 179), Some(3));
        assert_eq!(sqrt_mod_prime(178, 179), None);
        assert_eq!(sqrt_mod_all(-1, 25), vec![7, 18]);
        assert_eq!(sqrt_mod_all(-1, 3), Vec::<u128>::new());
    }

    #[test]
    fn powersmooth() {
        assert!(is_powersmooth(48, 50));
        assert!(!is_powersmooth(64, 50));
        assert!(!is_powersmooth(0, 50));
    }
}
