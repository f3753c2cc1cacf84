use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A residue class `residue mod modulus` with `modulus > 0` and
/// `0 <= residue < modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub residue: BigInt,
    pub modulus: BigInt,
}

impl Class {
    pub fn new(residue: BigInt, modulus: BigInt) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        let residue = residue.mod_floor(&modulus);
        Class { residue, modulus }
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        n.mod_floor(&self.modulus) == self.residue
    }

    /// Smallest member `>= lo`.
    pub fn first_at_least(&self, lo: &BigInt) -> BigInt {
        lo + (&self.residue - lo).mod_floor(&self.modulus)
    }
}

/// Intersection of two residue classes, `None` when incompatible.
pub fn crt(a: &Class, b: &Class) -> Option<Class> {
    let eg = a.modulus.extended_gcd(&b.modulus);
    let g = eg.gcd;
    let diff = &b.residue - &a.residue;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let l = &a.modulus / &g * &b.modulus;
    // x = a.r + a.m * t,  a.m * t ≡ diff (mod b.m)
    let t = (&diff / &g * &eg.x).mod_floor(&(&b.modulus / &g));
    Some(Class::new(&a.residue + &a.modulus * t, l))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub(crate) fn lcm_big(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b)
}

pub(crate) fn is_unit(a: &BigInt) -> bool {
    a.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::big;

    #[test]
    fn crt_basic() {
        let c = crt(&Class::new(big(1), big(2)), &Class::new(big(0), big(3))).unwrap();
        assert_eq!(c, Class::new(big(3), big(6)));
        assert!(crt(&Class::new(big(1), big(2)), &Class::new(big(0), big(4))).is_none());
        let c = crt(&Class::new(big(2), big(4)), &Class::new(big(0), big(6))).unwrap();
        assert_eq!(c, Class::new(big(6), big(12)));
    }

    #[test]
    fn crt_agrees_with_brute_force() {
        for m1 in 1..9i64 {
            for m2 in 1..9i64 {
                for r1 in 0..m1 {
                    for r2 in 0..m2 {
                        let want: Vec<i64> =
                            (0..200).filter(|x| x % m1 == r1 && x % m2 == r2).collect();
                        let got = crt(&Class::new(big(r1), big(m1)), &Class::new(big(r2), big(m2)));
                        match got {
                            None => assert!(want.is_empty()),
                            Some(c) => {
                                let have: Vec<i64> =
                                    (0..200).filter(|x| c.contains(&big(*x))).collect();
                                assert_eq!(have, want);
                            }
                        }
                    }
                }
            }
        }
    }
}
