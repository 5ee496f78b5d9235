//! Recursive content / primitive-part gcd over Q[e1, e2, a, e].

use alloc::vec::Vec;

use num_integer::Integer;

use super::{ParamPoly, Rational, Symbol};

/// Monic gcd of two polynomials. `gcd(0, 0) = 0`.
pub fn gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    gcd_rec(a, b).monic()
}

fn main_symbol(a: &ParamPoly, b: &ParamPoly) -> Option<Symbol> {
    Symbol::ALL
        .into_iter()
        .find(|&s| a.contains(s) || b.contains(s))
}

fn gcd_rec(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return ParamPoly::one();
    }
    if a.div_exact(b).is_some() {
        return b.clone();
    }
    if b.div_exact(a).is_some() {
        return a.clone();
    }
    let s = match main_symbol(a, b) {
        Some(s) => s,
        None => return ParamPoly::one(),
    };
    if !a.contains(s) {
        return gcd_rec(a, &content_in(b, s));
    }
    if !b.contains(s) {
        return gcd_rec(&content_in(a, s), b);
    }
    let ca = content_in(a, s);
    let cb = content_in(b, s);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    if coprime_in(&pa, &pb, s) {
        return c;
    }
    let g = subresultant_gcd(pa, pb, s);
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `s`.
fn content_in(p: &ParamPoly, s: Symbol) -> ParamPoly {
    let mut acc = ParamPoly::zero();
    for c in p.coeffs_in(s) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return ParamPoly::one();
        }
    }
    acc.monic()
}

fn primitive_part_in(p: &ParamPoly, s: Symbol) -> ParamPoly {
    let c = content_in(p, s);
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder `prem(a, b) = lc(b)^(da - db + 1) a mod b` in `s`.
fn pseudo_rem(a: &ParamPoly, b: &ParamPoly, s: Symbol) -> ParamPoly {
    let db = b.degree_in(s);
    let lcb = lc_in(b, s);
    let mut r = a.clone();
    let mut steps = 0u32;
    while !r.is_zero() && r.degree_in(s) >= db {
        let dr = r.degree_in(s);
        let lcr = lc_in(&r, s);
        let mut shift = super::Monomial::ONE;
        shift.0[s.index()] = dr - db;
        let sub = (&lcr * b).mul_monomial(&num_traits::One::one(), &shift);
        r = &(&lcb * &r) - &sub;
        steps += 1;
    }
    let full = u32::from((a.degree_in(s) + 1).saturating_sub(db));
    if full > steps {
        r = &r * &lcb.pow(full - steps);
    }
    r
}

fn lc_in(p: &ParamPoly, s: Symbol) -> ParamPoly {
    let d = p.degree_in(s) as usize;
    p.coeffs_in(s).swap_remove(d)
}

/// Subresultant remainder sequence on primitive inputs; returns the
/// primitive gcd in `s`.
fn subresultant_gcd(a: ParamPoly, b: ParamPoly, s: Symbol) -> ParamPoly {
    let (mut a, mut b) = if a.degree_in(s) >= b.degree_in(s) {
        (a, b)
    } else {
        (b, a)
    };
    let mut g = ParamPoly::one();
    let mut h = ParamPoly::one();
    loop {
        let delta = (a.degree_in(s) - b.degree_in(s)) as u32;
        let r = pseudo_rem(&a, &b, s);
        if r.is_zero() {
            return primitive_part_in(&b, s);
        }
        if !r.contains(s) {
            return ParamPoly::one();
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = lc_in(&a, s);
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            num.div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
}

const PRIME: u64 = 2_147_483_647;

fn mod_pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

fn mod_inv(x: u64) -> u64 {
    mod_pow(x, PRIME - 2)
}

fn reduce(c: &Rational) -> Option<u64> {
    let p = num_bigint::BigInt::from(PRIME);
    let n = c.numer().mod_floor(&p);
    let d = c.denom().mod_floor(&p);
    let d = u64::try_from(d).ok()?;
    if d == 0 {
        return None;
    }
    Some(u64::try_from(n).ok()? * mod_inv(d) % PRIME)
}

/// Dense image in `F_p[s]` after evaluating every other symbol at `point`.
fn univariate_image(p: &ParamPoly, s: Symbol, point: &[u64; super::NUM_SYMBOLS]) -> Option<Vec<u64>> {
    let mut out = alloc::vec![0u64; p.degree_in(s) as usize + 1];
    for (m, c) in p.terms() {
        let mut v = reduce(c)?;
        for t in Symbol::ALL {
            if t != s {
                v = v * mod_pow(point[t.index()], u64::from(m.exp(t))) % PRIME;
            }
        }
        let slot = &mut out[m.exp(s) as usize];
        *slot = (*slot + v) % PRIME;
    }
    Some(out)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn univariate_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = mod_inv(b[b.len() - 1]);
        while a.len() >= b.len() {
            let q = a[a.len() - 1] * inv % PRIME;
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + PRIME - q * c % PRIME) % PRIME;
            }
            trim(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Proves `deg_s gcd(a, b) = 0` through an image in `F_p[s]` whose
/// degrees match the originals; a `false` answer proves nothing.
fn coprime_in(a: &ParamPoly, b: &ParamPoly, s: Symbol) -> bool {
    const POINTS: [[u64; super::NUM_SYMBOLS]; 2] = [
        [1_234_577, 7_654_337, 3_141_593, 2_718_283],
        [918_273_647, 56_473_829, 1_029_384_757, 374_659_201],
    ];
    let da = a.degree_in(s) as usize;
    let db = b.degree_in(s) as usize;
    POINTS.iter().any(|pt| {
        match (univariate_image(a, s, pt), univariate_image(b, s, pt)) {
            (Some(ia), Some(ib)) => {
                ia[da] != 0 && ib[db] != 0 && univariate_gcd_degree(ia, ib) == 0
            }
            _ => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::rat;

    fn v(s: Symbol) -> ParamPoly {
        ParamPoly::var(s)
    }

    #[test]
    fn common_factor_recovered() {
        let x = v(Symbol::E1);
        let y = v(Symbol::E2);
        let z = v(Symbol::A);
        let common = &(&x - &y) * &(&z + &ParamPoly::constant(rat(2)));
        let a = &common * &(&x + &z);
        let b = &common * &(&(&y * &y) - &x);
        assert_eq!(gcd(&a, &b), common.monic());
    }

    #[test]
    fn shared_factor_of_higher_degree() {
        let x = v(Symbol::E1);
        let y = v(Symbol::E2);
        let z = v(Symbol::A);
        let one = ParamPoly::one();
        let common = &(&(&x * &x) * &y) + &(&(&z * &x) - &one);
        let a = &common * &(&(&(&x * &(&y * &y)) + &(&z * &z)) + &one.scale(&rat(3)));
        let b = &common * &(&(&(&(&x * &x) * &(&z * &y)) - &(&y * &y)) + &x);
        assert_eq!(gcd(&a, &b), common.monic());
        let c = &(&a * &a) * &(&x - &z);
        assert_eq!(gcd(&c, &b), common.monic());
    }

    #[test]
    fn coprime_gives_one() {
        let x = v(Symbol::E1);
        let y = v(Symbol::E2);
        assert_eq!(gcd(&(&x + &y), &(&x - &y)), ParamPoly::one());
    }

    #[test]
    fn gcd_with_zero() {
        let x = v(Symbol::A).scale(&rat(3));
        assert_eq!(gcd(&x, &ParamPoly::zero()), v(Symbol::A));
    }
}
