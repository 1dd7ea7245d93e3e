//! Standard groups as permutation groups.

use std::sync::Arc;

use crate::arith::{factorize, is_prime, multiplicative_order};
use crate::error::{domain, Error, Result};
use crate::group::{FiniteGroup, Limits};
use crate::perm::Permutation;

/// Identity on `degree` points except for a `len`-cycle from `start`.
fn cycle_on(degree: usize, start: usize, len: usize) -> Vec<usize> {
    let mut images: Vec<usize> = (0..degree).collect();
    for k in 0..len {
        images[start + k] = start + (k + 1) % len;
    }
    images
}

/// `C_n`, realized on the sum of its prime-power cycle lengths.
pub fn cyclic(n: usize, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return domain("cyclic group of order 0");
    }
    limits.check_order(n)?;
    if n == 1 {
        return FiniteGroup::generate("C1", 1, vec![], limits);
    }
    let parts: Vec<usize> = factorize(n).iter().map(|&(p, e)| p.pow(e)).collect();
    let degree: usize = parts.iter().sum();
    let mut images: Vec<usize> = (0..degree).collect();
    let mut start = 0;
    for len in parts {
        for k in 0..len {
            images[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    let g = Permutation::from_images(images)?;
    FiniteGroup::generate(format!("C{n}"), degree, vec![g], limits)
}

pub fn elementary_abelian(p: usize, k: usize, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if k == 0 {
        return FiniteGroup::generate("C1", 1, vec![], limits);
    }
    limits.check_order(p.checked_pow(k as u32).unwrap_or(usize::MAX))?;
    let degree = p * k;
    let gens = (0..k)
        .map(|i| Permutation::from_images(cycle_on(degree, i * p, p)))
        .collect::<Result<Vec<_>>>()?;
    let name = if k == 1 {
        format!("C{p}")
    } else {
        format!("C{p}^{k}")
    };
    FiniteGroup::generate(name, degree, gens, limits)
}

/// Dihedral group of the given order `2n`.
pub fn dihedral(order: usize, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if order < 2 || !order.is_multiple_of(2) {
        return domain(format!(
            "dihedral order {order} must be even and at least 2"
        ));
    }
    let n = order / 2;
    let name = format!("D{order}");
    match n {
        1 => Ok(cyclic(2, limits)?.renamed(name)),
        2 => Ok(elementary_abelian(2, 2, limits)?.renamed(name)),
        _ => {
            let r = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect())?;
            let s = Permutation::from_images((0..n).map(|x| (n - x) % n).collect())?;
            FiniteGroup::generate(name, n, vec![r, s], limits)
        }
    }
}

/// Quaternion group in its regular representation.
pub fn quaternion8(limits: &Limits) -> Result<Arc<FiniteGroup>> {
    // index = 4·sign + unit, units 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mul = |a: usize, b: usize| {
        let (s, u) = UNIT[a % 4][b % 4];
        4 * ((a / 4 + b / 4 + s) % 2) + u
    };
    let right = |g: usize| Permutation::from_images((0..8).map(|x| mul(x, g)).collect());
    FiniteGroup::generate("Q8", 8, vec![right(1)?, right(2)?], limits)
}

pub fn symmetric(n: usize, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if n == 0 || n > 5 {
        return domain(format!(
            "symmetric groups are built for 1..=5 points, not {n}"
        ));
    }
    let name = format!("S{n}");
    if n == 1 {
        return FiniteGroup::generate(name, 1, vec![], limits);
    }
    let transposition = Permutation::from_cycles(n, &[vec![0, 1]])?;
    let long = Permutation::from_cycles(n, &[(0..n).collect()])?;
    FiniteGroup::generate(name, n, vec![transposition, long], limits)
}

pub fn alternating(n: usize, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if n == 0 || n > 5 {
        return domain(format!(
            "alternating groups are built for 1..=5 points, not {n}"
        ));
    }
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(format!("A{n}"), n, gens, limits)
}

/// `G × H` on disjoint point sets; generators of `G` come first.
pub fn direct_product(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<Arc<FiniteGroup>> {
    limits.check_order(g.order().saturating_mul(h.order()))?;
    let (ig, ih) = (
        Permutation::identity(g.degree()),
        Permutation::identity(h.degree()),
    );
    let gens = g
        .generators()
        .iter()
        .map(|x| x.direct_sum(&ih))
        .chain(h.generators().iter().map(|y| ig.direct_sum(y)))
        .collect();
    FiniteGroup::generate(
        format!("{}x{}", g.name(), h.name()),
        g.degree() + h.degree(),
        gens,
        limits,
    )
}

/// `A ⋊ ⟨t⟩` with `A = C_{n_1} × … × C_{n_r}`, `|t| = m` and `a^t = a^e`.
///
/// The group acts on the elements of `A` by `x ↦ e·x + b` and on `m` extra
/// points through `t`, which keeps the action faithful when `t` has a kernel
/// on `A`. Generators are the unit translations of `A` followed by `t`.
pub fn semidirect_cyclic(
    m: usize,
    a_orders: &[usize],
    e: usize,
    limits: &Limits,
) -> Result<Arc<FiniteGroup>> {
    if m == 0 || a_orders.is_empty() || a_orders.contains(&0) {
        return Err(Error::Construction("orders must be positive".into()));
    }
    let exp = a_orders.iter().fold(1, |acc, &n| crate::arith::lcm(acc, n));
    let ord = multiplicative_order(e, exp).ok_or_else(|| {
        Error::Construction(format!(
            "a ↦ a^{e} is not an automorphism of exponent-{exp} A"
        ))
    })?;
    if !m.is_multiple_of(ord) {
        return Err(Error::Construction(format!(
            "a ↦ a^{e} has order {ord}, which does not divide |t| = {m}"
        )));
    }
    let a_size: usize = a_orders.iter().product();
    limits.check_order(a_size.saturating_mul(m))?;

    // mixed-radix coordinates of A's points
    let decode = |mut x: usize| -> Vec<usize> {
        a_orders
            .iter()
            .map(|&n| {
                let c = x % n;
                x /= n;
                c
            })
            .collect()
    };
    let encode = |coords: &[usize]| -> usize {
        coords
            .iter()
            .zip(a_orders)
            .rev()
            .fold(0, |acc, (&c, &n)| acc * n + c)
    };
    let degree = a_size + m;
    let mut gens = Vec::new();
    for (i, &n) in a_orders.iter().enumerate() {
        let mut images: Vec<usize> = (0..degree).collect();
        for (x, img) in images.iter_mut().enumerate().take(a_size) {
            let mut c = decode(x);
            c[i] = (c[i] + 1) % n;
            *img = encode(&c);
        }
        gens.push(Permutation::from_images(images)?);
    }
    let mut images: Vec<usize> = (0..degree).collect();
    for (x, img) in images.iter_mut().enumerate().take(a_size) {
        let c: Vec<usize> = decode(x)
            .iter()
            .zip(a_orders)
            .map(|(&c, &n)| c * e % n)
            .collect();
        *img = encode(&c);
    }
    for k in 0..m {
        images[a_size + k] = a_size + (k + 1) % m;
    }
    gens.push(Permutation::from_images(images)?);
    let a_name: Vec<String> = a_orders.iter().map(|n| format!("C{n}")).collect();
    FiniteGroup::generate(
        format!("({}):C{m}[{e}]", a_name.join("x")),
        degree,
        gens,
        limits,
    )
}

/// The non-abelian group of order `pq`, `q | p − 1`.
pub fn nonabelian_pq(p: usize, q: usize, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) || !is_prime(q) || !(p - 1).is_multiple_of(q) {
        return domain(format!("no non-abelian group of order {p}·{q}"));
    }
    let e = (2..p)
        .find(|&e| multiplicative_order(e, p) == Some(q))
        .expect("(Z/p)^× is cyclic");
    Ok(semidirect_cyclic(q, &[p], e, limits)?.renamed(format!("C{p}:C{q}")))
}

/// `M_{p^n} = C_{p^{n−1}} ⋊ C_p` with `a^b = a^{1 + p^{n−2}}`, `n ≥ 3`
/// (`n ≥ 4` for `p = 2`).
pub fn modular_p_group(p: usize, n: u32, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    if !is_prime(p) || n < 3 || (p == 2 && n < 4) {
        return domain(format!("no modular p-group M_{{{p}^{n}}}"));
    }
    let a = p.pow(n - 1);
    let e = 1 + p.pow(n - 2);
    Ok(semidirect_cyclic(p, &[a], e, limits)?.renamed(format!("M{}", p.pow(n))))
}
