//! Multi-modular number-theoretic-transform product for large polynomials.
//!
//! The two-variable product is flattened by Kronecker substitution
//! (`index = x * width + t`), multiplied modulo several 62-bit primes of the
//! form `c * 2^32 + 1`, and lifted back to signed integers with Garner's
//! mixed-radix reconstruction. Enough primes are used that their product
//! exceeds twice the largest possible output magnitude.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Signed;

use super::{BivarPoly, Term};

const TWO_ADICITY: u32 = 32;

/// Montgomery arithmetic modulo an odd prime below 2^62.
#[derive(Clone, Copy, Debug)]
struct Modulus {
    p: u64,
    /// -p^{-1} mod 2^64
    neg_inv: u64,
    /// 2^128 mod p
    r2: u64,
}

impl Modulus {
    fn new(p: u64) -> Self {
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Modulus {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    /// `a * b * 2^-64 mod p`; `a` may be any u64, `b < p`.
    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mont_in(&self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    fn mont_out(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    fn pow_mont(&self, base: u64, mut e: u64) -> u64 {
        let mut result = self.mont_in(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        result
    }

    /// Residue of a little-endian limb vector, in plain (non-Montgomery) form.
    fn reduce_limbs(&self, limbs: &[u64]) -> u64 {
        // acc * 2^64 == mul(acc, r2) in plain form
        let mut acc = 0u64;
        for &limb in limbs.iter().rev() {
            acc = self.add(self.mul(acc, self.r2), limb % self.p);
        }
        acc
    }
}

fn mulmod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u128(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod_u128(r, b, m);
        }
        b = mulmod_u128(b, b, m);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = powmod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The first `count` primes `c * 2^32 + 1` below 2^62, largest first.
fn ntt_primes(count: usize) -> Vec<u64> {
    let mut cache = PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    let mut c = match cache.last() {
        Some(&p) => (p - 1) >> TWO_ADICITY,
        None => 1u64 << (62 - TWO_ADICITY),
    };
    while cache.len() < count {
        c -= 1;
        assert!(c >= 1 << (61 - TWO_ADICITY), "ran out of transform primes");
        let p = (c << TWO_ADICITY) + 1;
        if is_prime(p) {
            cache.push(p);
        }
    }
    cache[..count].to_vec()
}

/// Precomputed transform tables for one prime and one size.
struct Transform {
    m: Modulus,
    n: usize,
    /// w^i for i < n/2 (Montgomery form)
    roots: Vec<u64>,
    inv_roots: Vec<u64>,
    /// n^{-1} (Montgomery form)
    n_inv: u64,
}

impl Transform {
    fn new(p: u64, n: usize) -> Self {
        let m = Modulus::new(p);
        // a quadratic non-residue has full 2-power order
        let mut g = 3u64;
        while powmod_u128(g, (p - 1) / 2, p) == 1 {
            g += 1;
        }
        let w = m.pow_mont(m.mont_in(g), (p - 1) / n as u64);
        let w_inv = m.pow_mont(w, p - 2);
        let half = n / 2;
        let mut roots = Vec::with_capacity(half);
        let mut inv_roots = Vec::with_capacity(half);
        let (mut a, mut b) = (m.mont_in(1), m.mont_in(1));
        for _ in 0..half {
            roots.push(a);
            inv_roots.push(b);
            a = m.mul(a, w);
            b = m.mul(b, w_inv);
        }
        let n_inv = m.pow_mont(m.mont_in(n as u64 % p), p - 2);
        Transform {
            m,
            n,
            roots,
            inv_roots,
            n_inv,
        }
    }

    /// Decimation in frequency: natural order in, bit-reversed order out.
    fn forward(&self, a: &mut [u64]) {
        let m = &self.m;
        let mut h = self.n / 2;
        while h >= 1 {
            let stride = self.n / (2 * h);
            for block in a.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (j, (u, v)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let (x, y) = (*u, *v);
                    *u = m.add(x, y);
                    *v = m.mul(m.sub(x, y), self.roots[j * stride]);
                }
            }
            h /= 2;
        }
    }

    /// Decimation in time: bit-reversed order in, natural order out, scaled.
    fn inverse(&self, a: &mut [u64]) {
        let m = &self.m;
        let mut h = 1;
        while h < self.n {
            let stride = self.n / (2 * h);
            for block in a.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for (j, (u, v)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let x = *u;
                    let y = m.mul(*v, self.inv_roots[j * stride]);
                    *u = m.add(x, y);
                    *v = m.sub(x, y);
                }
            }
            h *= 2;
        }
        for v in a.iter_mut() {
            *v = m.mul(*v, self.n_inv);
        }
    }
}

struct Flattened {
    x0: u32,
    t0: u32,
    /// (flat index, sign, magnitude limbs)
    entries: Vec<(usize, bool, Vec<u64>)>,
    len: usize,
}

fn flatten(poly: &BivarPoly, width: usize) -> Flattened {
    let x0 = poly.min_deg_x().unwrap_or(0);
    let t0 = poly.terms().iter().map(|t| t.t).min().unwrap_or(0);
    let mut len = 0;
    let entries = poly
        .terms()
        .iter()
        .map(|term| {
            let idx = (term.x - x0) as usize * width + (term.t - t0) as usize;
            len = len.max(idx + 1);
            (
                idx,
                term.coeff.is_negative(),
                term.coeff.magnitude().to_u64_digits(),
            )
        })
        .collect();
    Flattened {
        x0,
        t0,
        entries,
        len,
    }
}

fn load(flat: &Flattened, tr: &Transform, buf: &mut [u64]) {
    buf.iter_mut().for_each(|v| *v = 0);
    for (idx, negative, limbs) in &flat.entries {
        let r = tr.m.reduce_limbs(limbs);
        let r = if *negative && r != 0 { tr.m.p - r } else { r };
        buf[*idx] = tr.m.mont_in(r);
    }
}

fn limbs_to_biguint(limbs: &[u64]) -> BigUint {
    let mut digits = Vec::with_capacity(limbs.len() * 2);
    for &l in limbs {
        digits.push(l as u32);
        digits.push((l >> 32) as u32);
    }
    BigUint::new(digits)
}

/// Garner reconstruction tables for a fixed prime list.
struct Garner {
    mods: Vec<Modulus>,
    /// prefix[i][j] = (p_0 * ... * p_{j-1}) mod p_i, Montgomery form, j < i
    prefix: Vec<Vec<u64>>,
    /// inv[i] = (p_0 * ... * p_{i-1})^{-1} mod p_i, Montgomery form
    inv: Vec<u64>,
    /// product of all primes, little-endian limbs
    modulus: Vec<u64>,
    half_modulus: Vec<u64>,
}

impl Garner {
    fn new(primes: &[u64]) -> Self {
        let mods: Vec<Modulus> = primes.iter().map(|&p| Modulus::new(p)).collect();
        let mut prefix = Vec::with_capacity(primes.len());
        let mut inv = Vec::with_capacity(primes.len());
        for (i, m) in mods.iter().enumerate() {
            let mut row = Vec::with_capacity(i);
            let mut acc = m.mont_in(1);
            for &pj in &primes[..i] {
                row.push(acc);
                acc = m.mul(acc, m.mont_in(pj % m.p));
            }
            inv.push(m.pow_mont(acc, m.p - 2));
            prefix.push(row);
        }
        let mut modulus = vec![1u64];
        for &p in primes {
            mul_small_add(&mut modulus, p, 0);
        }
        let mut half_modulus = modulus.clone();
        let mut carry = 0u64;
        for limb in half_modulus.iter_mut().rev() {
            let next = *limb & 1;
            *limb = (*limb >> 1) | (carry << 63);
            carry = next;
        }
        Garner {
            mods,
            prefix,
            inv,
            modulus,
            half_modulus,
        }
    }

    /// Lifts plain-form residues to the symmetric integer they represent.
    fn lift(&self, residues: &[u64], digits: &mut Vec<u64>, acc: &mut Vec<u64>) -> BigInt {
        digits.clear();
        for (i, m) in self.mods.iter().enumerate() {
            let mut s = 0u64;
            for (j, &v) in digits.iter().enumerate() {
                s = m.add(s, m.mul(v, self.prefix[i][j]));
            }
            let diff = m.sub(residues[i] % m.p, s);
            // mul by Montgomery-form inverse yields plain form
            digits.push(m.mul(diff, self.inv[i]));
        }
        acc.clear();
        acc.push(0);
        for (i, &d) in digits.iter().enumerate().rev() {
            if i + 1 < digits.len() {
                mul_small_add(acc, self.mods[i].p, d);
            } else {
                acc[0] = d;
            }
        }
        while acc.len() > 1 && *acc.last().unwrap() == 0 {
            acc.pop();
        }
        if cmp_limbs(acc, &self.half_modulus) == std::cmp::Ordering::Greater {
            let mut neg = self.modulus.clone();
            sub_in_place(&mut neg, acc);
            BigInt::from_biguint(Sign::Minus, limbs_to_biguint(&neg))
        } else {
            BigInt::from_biguint(Sign::Plus, limbs_to_biguint(acc))
        }
    }
}

fn mul_small_add(limbs: &mut Vec<u64>, factor: u64, addend: u64) {
    let mut carry = addend as u128;
    for limb in limbs.iter_mut() {
        let v = *limb as u128 * factor as u128 + carry;
        *limb = v as u64;
        carry = v >> 64;
    }
    if carry > 0 {
        limbs.push(carry as u64);
    }
}

fn cmp_limbs(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    let trim = |s: &[u64]| s.len() - s.iter().rev().take_while(|&&l| l == 0).count();
    let (la, lb) = (trim(a), trim(b));
    if la != lb {
        return la.cmp(&lb);
    }
    for i in (0..la).rev() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    std::cmp::Ordering::Equal
}

/// a -= b, requires a >= b.
fn sub_in_place(a: &mut Vec<u64>, b: &[u64]) {
    let mut borrow = 0u64;
    for (i, ai) in a.iter_mut().enumerate() {
        let bi = b.get(i).copied().unwrap_or(0);
        let (d1, o1) = ai.overflowing_sub(bi);
        let (d2, o2) = d1.overflowing_sub(borrow);
        *ai = d2;
        borrow = (o1 || o2) as u64;
    }
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn bits_of(n: usize) -> u64 {
    (usize::BITS - n.leading_zeros()) as u64
}

pub(super) fn multiply(a: &BivarPoly, b: &BivarPoly, squaring: bool) -> BivarPoly {
    let span_t = |p: &BivarPoly| {
        let lo = p.terms().iter().map(|t| t.t).min().unwrap_or(0);
        p.deg_t().unwrap_or(0) - lo
    };
    let width = (span_t(a) + span_t(b) + 1) as usize;
    let fa = flatten(a, width);
    let fb = if squaring {
        None
    } else {
        Some(flatten(b, width))
    };
    let fb_ref = fb.as_ref().unwrap_or(&fa);
    let out_len = fa.len + fb_ref.len - 1;
    let size = out_len.next_power_of_two().max(2);
    assert!(
        size.trailing_zeros() <= TWO_ADICITY,
        "transform length exceeds prime two-adicity"
    );

    let bound_bits = a.max_coeff_bits() + b.max_coeff_bits() + bits_of(a.len().min(b.len())) + 2;
    let count = bound_bits.div_ceil(61) as usize;
    let primes = ntt_primes(count);

    let mut residues: Vec<Vec<u64>> = Vec::with_capacity(count);
    let mut buf_a = vec![0u64; size];
    let mut buf_b = if squaring {
        Vec::new()
    } else {
        vec![0u64; size]
    };
    for &p in &primes {
        let tr = Transform::new(p, size);
        load(&fa, &tr, &mut buf_a);
        tr.forward(&mut buf_a);
        if squaring {
            for v in buf_a.iter_mut() {
                *v = tr.m.mul(*v, *v);
            }
        } else {
            load(fb_ref, &tr, &mut buf_b);
            tr.forward(&mut buf_b);
            for (u, v) in buf_a.iter_mut().zip(buf_b.iter()) {
                *u = tr.m.mul(*u, *v);
            }
        }
        tr.inverse(&mut buf_a);
        residues.push(buf_a[..out_len].iter().map(|&v| tr.m.mont_out(v)).collect());
    }
    drop(buf_a);
    drop(buf_b);

    let garner = Garner::new(&primes);
    let x0 = fa.x0 + fb_ref.x0;
    let t0 = fa.t0 + fb_ref.t0;
    let mut column = vec![0u64; count];
    let mut digits = Vec::with_capacity(count);
    let mut acc = Vec::with_capacity(count + 1);
    let mut terms = Vec::new();
    for idx in 0..out_len {
        let mut any = false;
        for (c, r) in column.iter_mut().zip(residues.iter()) {
            *c = r[idx];
            any |= *c != 0;
        }
        if !any {
            continue;
        }
        let value = garner.lift(&column, &mut digits, &mut acc);
        terms.push(Term::new(
            x0 + (idx / width) as u32,
            t0 + (idx % width) as u32,
            value,
        ));
    }
    BivarPoly::from_sorted_unchecked(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_have_required_form() {
        let primes = ntt_primes(4);
        for &p in &primes {
            assert!(is_prime(p));
            assert_eq!((p - 1) % (1 << TWO_ADICITY), 0);
            assert!(p < 1 << 62 && p > 1 << 61);
        }
        assert!(primes.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn montgomery_roundtrip() {
        let m = Modulus::new(ntt_primes(1)[0]);
        for a in [0u64, 1, 2, 12345678901234, m.p - 1] {
            assert_eq!(m.mont_out(m.mont_in(a)), a);
        }
        let (a, b) = (987654321987654321u64 % m.p, 123456789123456789u64 % m.p);
        assert_eq!(
            m.mont_out(m.mul(m.mont_in(a), m.mont_in(b))),
            mulmod_u128(a, b, m.p)
        );
        assert_eq!(
            m.reduce_limbs(&[5, 1]),
            (((1u128 << 64) + 5) % m.p as u128) as u64
        );
    }

    #[test]
    fn transform_roundtrip() {
        let tr = Transform::new(ntt_primes(1)[0], 16);
        let orig: Vec<u64> = (0..16).map(|i| tr.m.mont_in(i * 7 + 3)).collect();
        let mut a = orig.clone();
        tr.forward(&mut a);
        tr.inverse(&mut a);
        assert_eq!(a, orig);
    }

    #[test]
    fn garner_lifts_signed_values() {
        let primes = ntt_primes(3);
        let g = Garner::new(&primes);
        let value: BigInt = "-98765432109876543210987654321098765".parse().unwrap();
        let residues: Vec<u64> = primes
            .iter()
            .map(|&p| {
                let r = (&value % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
                r.try_into().unwrap()
            })
            .collect();
        assert_eq!(g.lift(&residues, &mut Vec::new(), &mut Vec::new()), value);
    }

    #[test]
    fn matches_schoolbook_on_signed_input() {
        let a = BivarPoly::from_terms((0..40u32).map(|i| {
            let c: BigInt = BigInt::from(3i64).pow(i * 5) * if i % 3 == 0 { -1 } else { 1 };
            Term::new(i % 7, (i * 13) % 23, c)
        }));
        let b = BivarPoly::from_terms(
            (0..30u32).map(|i| Term::new(i % 4, i, BigInt::from(i as i64 - 15))),
        );
        assert_eq!(multiply(&a, &b, false), a.mul_schoolbook(&b));
        assert_eq!(multiply(&a, &a, true), a.mul_schoolbook(&a));
    }
}
