use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poly, Rat};
use crate::error::{Error, Result};

/// Parses a rational literal such as `3`, `-7/2` or `0`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let t = text.trim();
    let err = |message: String| Error::Parse { column: 1, message };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| err(format!("invalid rational numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| err(format!("invalid rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(err("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

/// Parses polynomial text over `x1..x{nvars}`.
///
/// Grammar: sums and differences of products, `*` and `/` (constant divisor
/// only), `^` with a non-negative integer exponent, unary minus, parentheses,
/// integer literals and variables `xN`. Whitespace is ignored.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly> {
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i + 1, c))
        .collect();
    let mut p = Parser {
        chars,
        pos: 0,
        nvars,
        end_col: text.chars().count() + 1,
    };
    if p.chars.is_empty() {
        return Err(p.error("empty polynomial"));
    }
    let out = p.expr()?;
    if p.pos < p.chars.len() {
        return Err(p.error(&format!("unexpected {:?}", p.chars[p.pos].1)));
    }
    Ok(out)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    nvars: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|&(c, _)| c).unwrap_or(self.end_col)
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            column: self.column(),
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let col = self.column();
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(v) if !v.is_zero() => acc = acc.scale(&(Rat::one() / v)),
                        Some(_) => {
                            return Err(Error::Parse {
                                column: col,
                                message: "division by zero".into(),
                            })
                        }
                        None => {
                            return Err(Error::Parse {
                                column: col,
                                message: "divisor must be a constant".into(),
                            })
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let col = self.column();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(Error::Parse {
                    column: col,
                    message: "expected exponent".into(),
                });
            }
            let k: u32 = digits.parse().map_err(|_| Error::Parse {
                column: col,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<Poly> {
        let col = self.column();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('x') => {
                self.pos += 1;
                let digits = self.digits();
                let idx: usize = digits.parse().map_err(|_| Error::Parse {
                    column: col,
                    message: "expected variable index after 'x'".into(),
                })?;
                if idx == 0 || idx > self.nvars {
                    return Err(Error::Parse {
                        column: col,
                        message: format!("variable x{idx} outside x1..x{}", self.nvars),
                    });
                }
                Ok(Poly::var(self.nvars, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(self.nvars, Rat::from_integer(v)))
            }
            Some(c) => Err(self.error(&format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    #[test]
    fn whitespace_insensitive() {
        let a = parse_poly("3/2*x1^2*x2 - x3", 3).unwrap();
        let b = parse_poly(" 3 / 2 * x1 ^ 2*x2-x3 ", 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coefficient(&[2, 1, 0]), rat(3, 2));
    }

    #[test]
    fn parentheses_and_unary() {
        let a = parse_poly("-(x1 - x2)^2", 2).unwrap();
        let b = parse_poly("-x1^2 + 2*x1*x2 - x2^2", 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_report_columns() {
        match parse_poly("x1 + x4", 3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        match parse_poly("x1 +", 3) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x1/x2", 2).is_err());
        assert!(parse_poly("1/0", 2).is_err());
        assert!(parse_poly("", 2).is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("5").unwrap(), rat(5, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a").is_err());
    }
}
