//! Machine-word modular arithmetic for cyclic linking forms and lens spaces.

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (i128::from(m), i128::from(a % m));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(i128::from(m)) as u64)
}

/// Prime factorisation by trial division.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
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

/// `u` is a unit mod `n` and a square of a unit.
///
/// Decided prime-power by prime-power: for odd `p` by Euler's criterion, for
/// `2^e` by `u ≡ 1 (mod 4)` when `e = 2` and `u ≡ 1 (mod 8)` when `e ≥ 3`.
pub fn is_square_unit(u: u64, n: u64) -> bool {
    if n == 1 {
        return true;
    }
    let u = u % n;
    if gcd(u, n) != 1 {
        return false;
    }
    factor(n).into_iter().all(|(p, e)| {
        if p == 2 {
            match e {
                1 => true,
                2 => u % 4 == 1,
                _ => u % 8 == 1,
            }
        } else {
            pow_mod(u % p, (p - 1) / 2, p) == 1
        }
    })
}

fn sqrt_mod_prime(u: u64, p: u64) -> Option<u64> {
    let u = u % p;
    if p == 2 {
        return Some(u);
    }
    if pow_mod(u, (p - 1) / 2, p) != 1 {
        return None;
    }
    // Tonelli–Shanks.
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(u, q, p);
    let mut r = pow_mod(u, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn sqrt_mod_prime_power(u: u64, p: u64, e: u32) -> Option<u64> {
    let pe = p.pow(e);
    let u = u % pe;
    if p == 2 {
        return match e {
            1 => Some(1),
            2 => (u % 4 == 1).then_some(1),
            _ => {
                if u % 8 != 1 {
                    return None;
                }
                let mut x = 1u64;
                for k in 3..e {
                    let m = 1u64 << (k + 1);
                    if mul_mod(x, x, m) != u % m {
                        x += 1 << (k - 1);
                    }
                }
                Some(x % pe)
            }
        };
    }
    let mut x = sqrt_mod_prime(u, p)?;
    let mut pk = p;
    for _ in 1..e {
        pk *= p;
        // Newton step: x ← x − (x² − u)/(2x) mod p^k.
        let fx = (mul_mod(x, x, pk) + pk - u % pk) % pk;
        let inv = inv_mod(mul_mod(2, x, pk), pk)?;
        x = (x + pk - mul_mod(fx, inv, pk)) % pk;
    }
    Some(x)
}

/// Some `k` with `k² ≡ u (mod n)`, for a unit `u`.
pub fn sqrt_mod(u: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let mut x = 0u64;
    let mut modulus = 1u64;
    for (p, e) in factor(n) {
        let pe = p.pow(e);
        let r = sqrt_mod_prime_power(u, p, e)?;
        // CRT merge of x mod `modulus` with r mod pe.
        let inv = inv_mod(modulus % pe, pe)?;
        let diff = (r + pe - x % pe) % pe;
        let t = mul_mod(diff, inv, pe);
        x += modulus * t;
        modulus *= pe;
        x %= modulus;
    }
    Some(x)
}
