//! Reduced homology of the upper Koszul complexes
//! `K^b = { tau subset of b : x^(b \ tau) in I }`, which give the
//! multigraded Betti numbers `beta_{i,b}(S/I) = dim H~_{i-2}(K^b)` of a
//! squarefree monomial ideal.
//!
//! Ranks are exact over the rationals: boundary columns are reduced with
//! integer column operations `c <- a c - b r`, dividing out the content
//! after each step. Entries are kept in `i64` and the reduction restarts in
//! `BigInt` if anything overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

trait Scalar: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

type Column<T> = Vec<(u32, T)>;

/// `a * x - b * y` on sparse columns sorted by row.
fn combine<T: Scalar>(a: &T, x: &Column<T>, b: &T, y: &Column<T>) -> Option<Column<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (row, value) = if take_x {
            let v = a.mul(&x[i].1)?;
            i += 1;
            (x[i - 1].0, v)
        } else if take_y {
            let v = T::from_i64(0).sub(&b.mul(&y[j].1)?)?;
            j += 1;
            (y[j - 1].0, v)
        } else {
            let v = a.mul(&x[i].1)?.sub(&b.mul(&y[j].1)?)?;
            i += 1;
            j += 1;
            (x[i - 1].0, v)
        };
        if !value.is_zero() {
            out.push((row, value));
        }
    }
    Some(out)
}

fn normalize<T: Scalar>(column: &mut Column<T>) {
    let Some(first) = column.first() else { return };
    let mut g = first.1.gcd(&first.1);
    for (_, v) in column.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_unit() && !g.is_zero() {
        for (_, v) in column.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// Column rank over the rationals, or `None` on overflow.
fn rank_with<T: Scalar>(columns: &[Column<i64>]) -> Option<usize> {
    let mut pivots: HashMap<u32, Column<T>> = HashMap::new();
    for column in columns {
        let mut c: Column<T> = column.iter().map(|&(r, v)| (r, T::from_i64(v))).collect();
        while let Some((low, a)) = c.last().cloned() {
            let Some(reducer) = pivots.get(&low) else {
                pivots.insert(low, c);
                break;
            };
            let b = reducer.last().expect("stored pivots are nonzero").1.clone();
            let g = a.gcd(&b);
            c = combine(&b.div_exact(&g), &c, &a.div_exact(&g), reducer)?;
            normalize(&mut c);
        }
    }
    Some(pivots.len())
}

pub(crate) fn rank(columns: &[Column<i64>]) -> usize {
    rank_with::<i64>(columns)
        .or_else(|| rank_with::<BigInt>(columns))
        .expect("BigInt reduction cannot overflow")
}

/// Reduced Betti numbers `dim H~_d(K^b)` for `d = -1, 0, ..`, returned with
/// index `d + 1`. `gens` are the generators contained in `b`.
pub(crate) fn upper_koszul_homology(gens: &[u64], b: u64) -> Vec<usize> {
    let vertices: Vec<u32> = (0..64).filter(|v| b >> v & 1 == 1).collect();
    let s = vertices.len();
    // faces indexed by subsets of the local vertex list
    let is_face = |local: u32| {
        let tau = expand(local, &vertices);
        let rest = b & !tau;
        gens.iter().any(|&g| g & !rest == 0)
    };
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    for local in 0..(1u32 << s) {
        if is_face(local) {
            by_size[local.count_ones() as usize].push(local);
        }
    }
    if by_size[0].is_empty() {
        return vec![0; s + 1];
    }
    let index: Vec<HashMap<u32, u32>> = by_size
        .iter()
        .map(|faces| {
            faces
                .iter()
                .enumerate()
                .map(|(i, &f)| (f, i as u32))
                .collect()
        })
        .collect();
    // rank of the boundary map from faces of size `size` to size - 1
    let boundary_rank = |size: usize| -> usize {
        if size == 0 || size > s || by_size[size].is_empty() {
            return 0;
        }
        let columns: Vec<Column<i64>> = by_size[size]
            .iter()
            .map(|&face| {
                let mut col: Column<i64> = Vec::with_capacity(size);
                let mut sign = 1i64;
                let mut rest = face;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    col.push((index[size - 1][&(face ^ bit)], sign));
                    sign = -sign;
                    rest ^= bit;
                }
                col.sort_unstable_by_key(|(r, _)| *r);
                col
            })
            .collect();
        rank(&columns)
    };
    let ranks: Vec<usize> = (0..=s + 1).map(boundary_rank).collect();
    (0..=s)
        .map(|size| by_size[size].len() - ranks[size] - ranks[size + 1])
        .collect()
}

fn expand(local: u32, vertices: &[u32]) -> u64 {
    let mut out = 0u64;
    for (i, &v) in vertices.iter().enumerate() {
        if local >> i & 1 == 1 {
            out |= 1 << v;
        }
    }
    out
}

/// All joins (unions) of nonempty generator subsets.
pub(crate) fn lcm_lattice(gens: &[u64]) -> Vec<u64> {
    let mut elements: Vec<u64> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &g in gens {
        let mut fresh = vec![g];
        for &e in &elements {
            fresh.push(e | g);
        }
        for f in fresh {
            if seen.insert(f) {
                elements.push(f);
            }
        }
    }
    elements.sort_unstable();
    elements
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let cols = vec![
            vec![(0, 1), (1, -1)],
            vec![(1, 1), (2, -1)],
            vec![(0, 1), (2, -1)],
        ];
        assert_eq!(rank(&cols), 2);
        assert_eq!(rank(&[vec![(0, 2)], vec![(0, 3)]]), 1);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn bigint_fallback_agrees() {
        let big = i64::MAX / 2;
        let cols = vec![
            vec![(0, big), (1, 3)],
            vec![(0, 3), (1, big)],
            vec![(0, 1), (1, 1)],
        ];
        assert_eq!(rank_with::<i64>(&cols), None);
        assert_eq!(rank(&cols), 2);
    }

    #[test]
    fn two_points() {
        // <x1, x2> at b = {1,2}: K^b is two points, so H~_0 = 1
        assert_eq!(upper_koszul_homology(&[0b01, 0b10], 0b11), vec![0, 1, 0]);
        assert_eq!(upper_koszul_homology(&[0b01], 0b01), vec![1, 0]);
    }

    #[test]
    fn lattice_of_three() {
        assert_eq!(
            lcm_lattice(&[0b001, 0b010, 0b110]),
            vec![0b001, 0b010, 0b011, 0b110, 0b111]
        );
    }
}
