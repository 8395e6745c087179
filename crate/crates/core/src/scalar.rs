//! Coefficient arithmetic over ℤ or 𝔽_p.

use core::fmt;

use serde::{Deserialize, Serialize};

/// Characteristic of the coefficient ring: `0` means exact integers,
/// otherwise a prime `p` and values are kept reduced in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ring {
    p: u64,
}

impl Ring {
    pub const INTEGERS: Ring = Ring { p: 0 };

    /// `p = 0` selects ℤ. Any other value must be prime.
    pub fn new(p: u64) -> Option<Ring> {
        if p == 0 || is_prime(p) {
            Some(Ring { p })
        } else {
            None
        }
    }

    pub fn prime_field(p: u64) -> Option<Ring> {
        if p == 0 {
            None
        } else {
            Ring::new(p)
        }
    }

    pub fn characteristic(self) -> u64 {
        self.p
    }

    pub fn is_integral(self) -> bool {
        self.p == 0
    }

    #[inline]
    pub fn reduce(self, a: i128) -> i128 {
        if self.p == 0 {
            a
        } else {
            a.rem_euclid(self.p as i128)
        }
    }

    #[inline]
    pub fn add(self, a: i128, b: i128) -> i128 {
        if self.p == 0 {
            a.checked_add(b).expect("integer coefficient overflow")
        } else {
            (a + b).rem_euclid(self.p as i128)
        }
    }

    #[inline]
    pub fn sub(self, a: i128, b: i128) -> i128 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: i128) -> i128 {
        if self.p == 0 {
            -a
        } else {
            (-a).rem_euclid(self.p as i128)
        }
    }

    #[inline]
    pub fn mul(self, a: i128, b: i128) -> i128 {
        if self.p == 0 {
            a.checked_mul(b).expect("integer coefficient overflow")
        } else {
            (a * b).rem_euclid(self.p as i128)
        }
    }

    pub fn pow(self, a: i128, mut e: u32) -> i128 {
        let mut base = self.reduce(a);
        let mut acc = self.reduce(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    pub fn is_zero(self, a: i128) -> bool {
        self.reduce(a) == 0
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "Z")
        } else {
            write!(f, "F{}", self.p)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Binomial coefficient as u128 (exact for the small arguments used here).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Elementary symmetric polynomial `e_r(xs)` evaluated in `ring`.
pub fn elementary_symmetric(ring: Ring, xs: &[i128], r: usize) -> i128 {
    // e[k] after processing a prefix of xs
    let mut e = alloc::vec![0i128; r + 1];
    e[0] = ring.reduce(1);
    for &x in xs {
        for k in (1..=r).rev() {
            e[k] = ring.add(e[k], ring.mul(e[k - 1], x));
        }
    }
    e[r]
}
