//! Text form of scalars: `c0 + c1*w + c2*w^2 + ...`, where `w` is ζ_N and each `ci` is `p` or `p/q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::field::{rational, CyclotomicField, Rational, Scalar};
use crate::error::{Error, Result};

/// Canonical literal: nonzero terms in increasing power order, coefficients in lowest terms.
pub fn format_scalar(s: &Scalar) -> String {
    let mut out = String::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        let power = match k {
            0 => String::new(),
            1 => "w".to_string(),
            _ => format!("w^{k}"),
        };
        if k == 0 {
            out.push_str(&fmt_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&fmt_rational(&mag));
            out.push('*');
            out.push_str(&power);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses a scalar literal in the given field. Powers of `w` beyond φ(N) are reduced.
pub fn parse_scalar(field: &'static CyclotomicField, text: &str) -> Result<Scalar> {
    let err = |reason: &str| Error::ScalarSyntax {
        literal: text.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = text.chars().collect();
    let skip_ws = |mut p: usize| {
        while p < chars.len() && chars[p].is_whitespace() {
            p += 1;
        }
        p
    };
    let mut pos = skip_ws(0);
    if pos >= chars.len() {
        return Err(err("empty literal"));
    }
    let mut acc = field.zero();
    let mut first = true;
    while pos < chars.len() {
        let mut sign = 1i32;
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                sign = -1;
                pos += 1;
            }
            _ if first => {}
            c => return Err(err(&format!("expected '+' or '-' before {c:?}"))),
        }
        first = false;
        pos = skip_ws(pos);
        if pos >= chars.len() {
            return Err(err("dangling sign"));
        }
        let coeff = if chars[pos].is_ascii_digit() {
            let (q, next) = read_rational(&chars, pos).map_err(|r| err(&r))?;
            pos = skip_ws(next);
            Some(q)
        } else {
            None
        };
        let mut power = 0u64;
        if coeff.is_some() && pos < chars.len() && chars[pos] == '*' {
            pos = skip_ws(pos + 1);
            if pos >= chars.len() || chars[pos] != 'w' {
                return Err(err("expected 'w' after '*'"));
            }
        } else if coeff.is_some() && pos < chars.len() && chars[pos] == 'w' {
            return Err(err("missing '*' between coefficient and 'w'"));
        }
        if pos < chars.len() && chars[pos] == 'w' {
            pos = skip_ws(pos + 1);
            power = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos = skip_ws(pos + 1);
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(err("missing exponent after '^'"));
                }
                let digits: String = chars[start..pos].iter().collect();
                power = digits.parse().map_err(|_| err("exponent too large"))?;
                pos = skip_ws(pos);
            }
        } else if coeff.is_none() {
            let c = chars[pos];
            return Err(err(&format!("unexpected character {c:?}")));
        }
        let mut q = coeff.unwrap_or_else(Rational::one);
        if sign < 0 {
            q = -q;
        }
        let k = (power % field.order() as u64) as i64;
        let term = &field.root(k) * &field.from_rational(q);
        acc += &term;
    }
    Ok(acc)
}

fn read_rational(chars: &[char], mut pos: usize) -> std::result::Result<(Rational, usize), String> {
    let start = pos;
    while pos < chars.len() && chars[pos].is_ascii_digit() {
        pos += 1;
    }
    let num: BigInt = chars[start..pos]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|_| "bad numerator".to_string())?;
    let mut den = BigInt::one();
    if pos < chars.len() && chars[pos] == '/' {
        pos += 1;
        let s = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        if s == pos {
            return Err("missing denominator".into());
        }
        den = chars[s..pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| "bad denominator".to_string())?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
    }
    Ok((rational(num, den).map_err(|e| e.to_string())?, pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let f = CyclotomicField::get(3).unwrap();
        let s = parse_scalar(f, "1/2 - 3*w").unwrap();
        assert_eq!(format_scalar(&s), "1/2 - 3*w");
        // w^2 = -1 - w in Q(zeta_3)
        let t = parse_scalar(f, "w^2").unwrap();
        assert_eq!(format_scalar(&t), "-1 - w");
        assert_eq!(format_scalar(&parse_scalar(f, "2/4").unwrap()), "1/2");
        assert_eq!(format_scalar(&parse_scalar(f, "-w + w").unwrap()), "0");
    }

    #[test]
    fn rational_field_literals() {
        let q = CyclotomicField::rationals();
        assert_eq!(
            parse_scalar(q, "-6/4").unwrap(),
            q.from_ratio(-3, 2).unwrap()
        );
        // in Q(zeta_1), w = 1
        assert_eq!(parse_scalar(q, "w + 1").unwrap(), q.from_int(2));
    }

    #[test]
    fn rejects_garbage() {
        let f = CyclotomicField::get(4).unwrap();
        for bad in ["", "1/0", "x", "1 +", "2*", "*w", "w^", "1 2", "3w"] {
            assert!(parse_scalar(f, bad).is_err(), "{bad:?} should fail");
        }
    }
}
