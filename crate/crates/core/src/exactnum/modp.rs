//! Reduction of ℚ(i) into the prime field F_p with p ≡ 1 (mod 4), where −1 has a
//! square root. A nonzero image certifies a nonzero exact value; the converse
//! does not hold, so callers re-check zero images exactly.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Rational, Scalar};

pub const MODULUS: u64 = 998_244_353;

/// 3 generates F_p^*, so 3^((p-1)/4) squares to −1.
const SQRT_MINUS_ONE: u64 = 911_660_635;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModP(pub u64);

impl ModP {
    pub const ZERO: ModP = ModP(0);

    #[inline]
    pub fn add(self, o: ModP) -> ModP {
        let s = self.0 + o.0;
        ModP(if s >= MODULUS { s - MODULUS } else { s })
    }

    #[inline]
    pub fn sub(self, o: ModP) -> ModP {
        ModP(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + MODULUS - o.0 })
    }

    #[inline]
    pub fn mul(self, o: ModP) -> ModP {
        ModP(self.0 * o.0 % MODULUS)
    }

    pub fn pow(self, mut e: u64) -> ModP {
        let mut base = self;
        let mut acc = ModP(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<ModP> {
        (self.0 != 0).then(|| self.pow(MODULUS - 2))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    fn from_bigint(n: &BigInt) -> ModP {
        let m = BigInt::from(MODULUS);
        let mut r = n % &m;
        if r < BigInt::zero() {
            r += &m;
        }
        ModP(r.to_u64().expect("reduced residue fits in u64"))
    }

    pub fn from_rational(r: &Rational) -> Option<ModP> {
        let den = ModP::from_bigint(r.denom()).inv()?;
        Some(ModP::from_bigint(r.numer()).mul(den))
    }

    /// `None` when a denominator vanishes mod p.
    pub fn from_scalar(s: &Scalar) -> Option<ModP> {
        let re = ModP::from_rational(s.re())?;
        let im = ModP::from_rational(s.im())?;
        Some(re.add(im.mul(ModP(SQRT_MINUS_ONE))))
    }
}
