//! Small integer helpers.

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// `Some(p)` when `n = p^k` with `k ≥ 1`.
pub fn prime_power_base(n: usize) -> Option<usize> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn pow_mod(mut base: usize, mut e: usize, m: usize) -> usize {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Multiplicative order of `e` modulo `m`, or `None` when `gcd(e, m) ≠ 1`.
pub fn multiplicative_order(e: usize, m: usize) -> Option<usize> {
    if m == 1 {
        return Some(1);
    }
    if gcd(e % m, m) != 1 {
        return None;
    }
    let mut x = e % m;
    let mut k = 1;
    while x != 1 {
        x = x * e % m;
        k += 1;
    }
    Some(k)
}
