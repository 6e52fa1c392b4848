//! Exact rational arithmetic for guarantees and averages.

use num_integer::Integer;
use num_rational::Ratio;

pub type Rational = Ratio<u128>;

pub fn int(n: usize) -> Rational {
    Rational::from_integer(n as u128)
}

pub fn frac(num: usize, den: usize) -> Rational {
    Rational::new(num as u128, den as u128)
}

pub fn ceil(r: &Rational) -> u128 {
    r.numer().div_ceil(r.denom())
}

/// `value >= bound`, compared exactly.
pub fn meets(value: usize, bound: &Rational) -> bool {
    int(value) >= *bound
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `0.25`.
pub fn parse(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: u128 = p.trim().parse().ok()?;
        let q: u128 = q.trim().parse().ok()?;
        return (q != 0).then(|| Rational::new(p, q));
    }
    if let Some((whole, fractional)) = text.split_once('.') {
        let whole: u128 = if whole.is_empty() {
            0
        } else {
            whole.parse().ok()?
        };
        if fractional.is_empty() || !fractional.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let den = 10u128.checked_pow(fractional.len() as u32)?;
        let frac_part: u128 = fractional.parse().ok()?;
        return Some(Rational::new(whole * den + frac_part, den));
    }
    text.parse::<u128>().ok().map(Rational::from_integer)
}

pub fn display(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse("1/3"), Some(frac(1, 3)));
        assert_eq!(parse("0.5"), Some(frac(1, 2)));
        assert_eq!(parse("2"), Some(int(2)));
        assert_eq!(parse(".25"), Some(frac(1, 4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil(&frac(7, 2)), 4);
        assert_eq!(ceil(&int(3)), 3);
        assert_eq!(ceil(&frac(0, 5)), 0);
    }
}
