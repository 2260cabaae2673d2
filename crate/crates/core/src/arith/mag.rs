//! Directed-rounding magnitudes `m * 2^e` used as error radii.

use num_bigint::BigInt;
use std::cmp::Ordering;

const BITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Mag {
    m: u64,
    e: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { m: 0, e: 0 };

    pub fn pow2(e: i64) -> Mag {
        Mag { m: 1, e }
    }

    pub fn is_zero(self) -> bool {
        self.m == 0
    }

    fn norm(m: u128, e: i64, up: bool) -> Mag {
        if m == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - m.leading_zeros();
        if bits <= BITS {
            return Mag { m: m as u64, e };
        }
        let s = bits - BITS;
        let q = m >> s;
        let inexact = m & ((1u128 << s) - 1) != 0;
        if up && inexact {
            Mag::norm(q + 1, e + s as i64, up)
        } else {
            Mag { m: q as u64, e: e + s as i64 }
        }
    }

    fn from_bigint(x: &BigInt, exp: i64, up: bool) -> Mag {
        let mag = x.magnitude();
        let bits = mag.bits();
        if bits == 0 {
            return Mag::ZERO;
        }
        if bits <= 64 {
            let v = mag.iter_u64_digits().next().unwrap_or(0);
            return Mag::norm(v as u128, exp, up);
        }
        let s = bits - 64;
        let top = (mag >> s).iter_u64_digits().next().unwrap_or(0);
        let v = if up { top as u128 + 1 } else { top as u128 };
        Mag::norm(v, exp + s as i64, up)
    }

    pub fn up_from(x: &BigInt, exp: i64) -> Mag {
        Mag::from_bigint(x, exp, true)
    }

    pub fn down_from(x: &BigInt, exp: i64) -> Mag {
        Mag::from_bigint(x, exp, false)
    }

    pub fn add_up(self, o: Mag) -> Mag {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let (hi, lo) = if self.e >= o.e { (self, o) } else { (o, self) };
        let shift = hi.e - lo.e;
        if shift > 90 {
            return Mag::norm(hi.m as u128 + 1, hi.e, true);
        }
        Mag::norm(((hi.m as u128) << shift) + lo.m as u128, lo.e, true)
    }

    pub fn mul_up(self, o: Mag) -> Mag {
        Mag::norm(self.m as u128 * o.m as u128, self.e + o.e, true)
    }

    pub fn mul_down(self, o: Mag) -> Mag {
        Mag::norm(self.m as u128 * o.m as u128, self.e + o.e, false)
    }

    pub fn div_up(self, o: Mag) -> Mag {
        assert!(!o.is_zero(), "division by zero magnitude");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let q = ((self.m as u128) << 64) / o.m as u128 + 1;
        Mag::norm(q, self.e - o.e - 64, true)
    }

    /// Lower bound for `self - o`, or `None` when it is not positive.
    pub fn sub_down(self, o: Mag) -> Option<Mag> {
        if o.is_zero() {
            return Some(self);
        }
        if self.cmp_value(o) != Ordering::Greater {
            return None;
        }
        let shift = self.e - o.e;
        if shift > 90 {
            return Some(Mag::norm(self.m as u128 - 1, self.e, false)).filter(|m| !m.is_zero());
        }
        if shift >= 0 {
            let v = ((self.m as u128) << shift) - o.m as u128;
            Some(Mag::norm(v, o.e, false))
        } else {
            let v = self.m as u128 - ((o.m as u128) << (-shift));
            Some(Mag::norm(v, self.e, false))
        }
    }

    pub fn sqrt_down(self) -> Mag {
        if self.is_zero() {
            return self;
        }
        let (mut m, mut e) = (self.m as u128, self.e);
        if e.rem_euclid(2) == 1 {
            m <<= 1;
            e -= 1;
        }
        m <<= 64;
        e -= 64;
        Mag::norm(isqrt_u128(m), e / 2, false)
    }

    pub fn cmp_value(self, o: Mag) -> Ordering {
        match (self.is_zero(), o.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let lead = |x: Mag| x.e + (64 - x.m.leading_zeros()) as i64;
        match lead(self).cmp(&lead(o)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let shift = self.e - o.e;
        if shift >= 0 {
            ((self.m as u128) << shift).cmp(&(o.m as u128))
        } else {
            (self.m as u128).cmp(&((o.m as u128) << (-shift)))
        }
    }

    pub fn to_f64(self) -> f64 {
        super::bigfloat::ldexp(self.m as f64, self.e)
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
