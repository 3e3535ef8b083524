use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::GeomError;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q` with decimal digits only; floats are rejected.
pub fn parse_rat(s: &str) -> Result<Rat, GeomError> {
    let bad = || GeomError::Parse(format!("not an exact rational: {s:?}"));
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let unsigned = num
        .strip_prefix('-')
        .or_else(|| num.strip_prefix('+'))
        .unwrap_or(num);
    if !digits(unsigned) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => {
            let du = d.strip_prefix('-').unwrap_or(d);
            if !digits(du) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(GeomError::Parse(format!("zero denominator: {s:?}")));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[String; 2]", into = "[String; 2]")]
pub struct Rat2 {
    pub x: Rat,
    pub y: Rat,
}

impl Rat2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Rat2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Rat2::new(int(x), int(y))
    }

    /// `(xn/xd, yn/yd)`.
    pub fn q(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Rat2::new(rat(xn, xd), rat(yn, yd))
    }

    pub fn zero() -> Self {
        Rat2::new(Rat::zero(), Rat::zero())
    }

    pub fn parse(x: &str, y: &str) -> Result<Self, GeomError> {
        Ok(Rat2::new(parse_rat(x)?, parse_rat(y)?))
    }

    /// Parses `"a/b,c/d"`.
    pub fn parse_pair(s: &str) -> Result<Self, GeomError> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| GeomError::Parse(format!("expected \"x,y\": {s:?}")))?;
        Rat2::parse(x.trim(), y.trim())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, o: &Rat2) -> Rat {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Rat2) -> Rat {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn scale(&self, s: &Rat) -> Rat2 {
        Rat2::new(&self.x * s, &self.y * s)
    }

    pub fn half(&self) -> Rat2 {
        self.scale(&rat(1, 2))
    }

    pub fn double(&self) -> Rat2 {
        Rat2::new(&self.x + &self.x, &self.y + &self.y)
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    pub fn strings(&self) -> [String; 2] {
        [fmt_rat(&self.x), fmt_rat(&self.y)]
    }

    /// Angular half used for exact polar sorting: 0 for angles in [0, pi), 1 otherwise.
    pub(crate) fn half_plane(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Rat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl TryFrom<[String; 2]> for Rat2 {
    type Error = GeomError;
    fn try_from(v: [String; 2]) -> Result<Self, GeomError> {
        Rat2::parse(&v[0], &v[1])
    }
}

impl From<Rat2> for [String; 2] {
    fn from(p: Rat2) -> Self {
        p.strings()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr<&Rat2> for &Rat2 {
            type Output = Rat2;
            fn $f(self, o: &Rat2) -> Rat2 {
                Rat2::new(&self.x $op &o.x, &self.y $op &o.y)
            }
        }
        impl $tr<Rat2> for Rat2 {
            type Output = Rat2;
            fn $f(self, o: Rat2) -> Rat2 {
                &self $op &o
            }
        }
        impl $tr<&Rat2> for Rat2 {
            type Output = Rat2;
            fn $f(self, o: &Rat2) -> Rat2 {
                &self $op o
            }
        }
        impl $tr<Rat2> for &Rat2 {
            type Output = Rat2;
            fn $f(self, o: Rat2) -> Rat2 {
                self $op &o
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl Neg for &Rat2 {
    type Output = Rat2;
    fn neg(self) -> Rat2 {
        Rat2::new(-&self.x, -&self.y)
    }
}

impl Neg for Rat2 {
    type Output = Rat2;
    fn neg(self) -> Rat2 {
        Rat2::new(-self.x, -self.y)
    }
}

impl Mul<&Rat2> for &Rat {
    type Output = Rat2;
    fn mul(self, p: &Rat2) -> Rat2 {
        p.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("1/-2").unwrap(), rat(-1, 2));
        assert_eq!(fmt_rat(&parse_rat("0/7").unwrap()), "0");
        assert_eq!(fmt_rat(&rat(-3, 6)), "-1/2");
        for bad in ["0.5", "1e3", "", "1/0", "a", "1 /2", "-", "1/"] {
            assert!(parse_rat(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_ops() {
        let a = Rat2::q(1, 3, -2, 7);
        let b = Rat2::q(5, 11, 1, 2);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(a.cross(&a), Rat::zero());
        assert_eq!(a.cross(&b), -b.cross(&a));
    }
}
