//! Table-driven arithmetic in GF(q^2) for q in {2, 3}.
//!
//! Elements are `a + b w` with `a, b` in GF(q), stored as the index
//! `a + q b`. The minimal polynomial of `w` is `x^2 + x + 1` over GF(2) and
//! `x^2 + 1` over GF(3).

use crate::error::{domain, Result};

pub type Elem = u8;

#[derive(Debug, Clone)]
pub struct Field {
    q: u8,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    conj: Vec<Elem>,
}

impl Field {
    pub fn q(&self) -> u8 {
        self.q
    }

    /// Number of elements, `q^2`.
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    /// Frobenius `x -> x^q`.
    #[inline]
    pub fn conj(&self, a: Elem) -> Elem {
        self.conj[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    /// Elements of the subfield GF(q).
    pub fn is_in_subfield(&self, a: Elem) -> bool {
        (a as usize) < self.q as usize
    }
}

pub fn build_field(q: u32) -> Result<Field> {
    // w^2 = s + t w
    let (s, t) = match q {
        2 => (1u32, 1u32),
        3 => (2, 0),
        _ => return Err(domain!("explicit construction supports q in {{2, 3}} (got {q})")),
    };
    let order = (q * q) as usize;
    let split = |x: usize| (x as u32 % q, x as u32 / q);
    let join = |a: u32, b: u32| ((a % q) + q * (b % q)) as Elem;

    let mut add = vec![0; order * order];
    let mut mul = vec![0; order * order];
    for x in 0..order {
        for y in 0..order {
            let (a, b) = split(x);
            let (c, d) = split(y);
            add[x * order + y] = join(a + c, b + d);
            let bd = b * d;
            mul[x * order + y] = join(a * c + bd * s, a * d + b * c + bd * t);
        }
    }
    let neg = (0..order).map(|x| (0..order).find(|&y| add[x * order + y] == 0).unwrap() as Elem).collect();
    let inv = (0..order)
        .map(|x| if x == 0 { 0 } else { (1..order).find(|&y| mul[x * order + y] == 1).unwrap() as Elem })
        .collect();
    let conj = (0..order).map(|x| (1..q).fold(x as Elem, |acc, _| mul[acc as usize * order + x])).collect();
    Ok(Field { q: q as u8, order, add, mul, neg, inv, conj })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_other_q() {
        assert!(build_field(4).is_err());
        assert!(build_field(5).is_err());
    }

    #[test]
    fn field_axioms() {
        for q in [2, 3] {
            let f = build_field(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                    // conjugation is a field automorphism
                    assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
                    assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
                }
                assert_eq!(f.conj(f.conj(a)), a);
                assert_eq!(f.conj(a) == a, f.is_in_subfield(a));
                assert!(f.is_in_subfield(f.mul(a, f.conj(a))));
            }
        }
    }

    #[test]
    fn gf4_conjugation_swaps_non_subfield_elements() {
        let f = build_field(2).unwrap();
        assert_eq!(f.conj(2), 3);
        assert_eq!(f.conj(3), 2);
    }

    #[test]
    fn gf9_multiplicative_group_is_cyclic() {
        let f = build_field(3).unwrap();
        let generator = f.elements().skip(1).find(|&g| {
            let mut x = g;
            let mut ord = 1;
            while x != 1 {
                x = f.mul(x, g);
                ord += 1;
            }
            ord == 8
        });
        assert!(generator.is_some());
    }
}
