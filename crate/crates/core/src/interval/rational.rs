use super::Interval;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// An exact exponent `num/den` in lowest terms with `den > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalExp {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalExp {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Usage("zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        let s = den.signum();
        Ok(RationalExp {
            num: s * num / g,
            den: s * den / g,
        })
    }

    pub const fn integer(n: i64) -> Self {
        RationalExp { num: n, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_interval(self) -> Interval {
        Interval::ratio(self.num as f64, self.den as f64)
    }

    fn checked(num: Option<i64>, den: Option<i64>) -> Result<Self> {
        match (num, den) {
            (Some(n), Some(d)) => RationalExp::new(n, d),
            _ => Err(Error::Usage("rational overflow".into())),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: RationalExp) -> Result<Self> {
        let n = self
            .num
            .checked_mul(o.den)
            .and_then(|a| o.num.checked_mul(self.den).and_then(|b| a.checked_add(b)));
        Self::checked(n, self.den.checked_mul(o.den))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, o: RationalExp) -> Result<Self> {
        self.add(RationalExp {
            num: -o.num,
            den: o.den,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: RationalExp) -> Result<Self> {
        Self::checked(self.num.checked_mul(o.num), self.den.checked_mul(o.den))
    }

    pub fn recip(self) -> Result<Self> {
        RationalExp::new(self.den, self.num)
    }

    pub fn sub_int(self, k: i64) -> Self {
        RationalExp {
            num: self.num - k * self.den,
            den: self.den,
        }
    }

    pub fn is_positive(self) -> bool {
        self.num > 0
    }
}

impl PartialOrd for RationalExp {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for RationalExp {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        ((self.num as i128) * (o.den as i128)).cmp(&((o.num as i128) * (self.den as i128)))
    }
}

impl fmt::Display for RationalExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `a/b`, an integer, or a terminating decimal such as `1.999999`
/// (converted exactly).
impl FromStr for RationalExp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Usage(format!("cannot parse exponent {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            return RationalExp::new(a, b);
        }
        if let Some((ip, fp)) = s.split_once('.') {
            if fp.is_empty() || !fp.bytes().all(|c| c.is_ascii_digit()) || fp.len() > 17 {
                return Err(bad());
            }
            let neg = ip.starts_with('-');
            let ip = ip.trim_start_matches(['-', '+']);
            let i: i64 = if ip.is_empty() {
                0
            } else {
                ip.parse().map_err(|_| bad())?
            };
            let f: i64 = fp.parse().map_err(|_| bad())?;
            let den = 10i64.pow(fp.len() as u32);
            let num = i
                .checked_mul(den)
                .and_then(|x| x.checked_add(f))
                .ok_or_else(bad)?;
            return RationalExp::new(if neg { -num } else { num }, den);
        }
        Ok(RationalExp::integer(s.parse().map_err(|_| bad())?))
    }
}

impl TryFrom<String> for RationalExp {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RationalExp> for String {
    fn from(r: RationalExp) -> String {
        r.to_string()
    }
}
