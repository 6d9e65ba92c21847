use super::{Exponent, Polynomial};
use crate::{Error, Result};

/// Parses a polynomial from text.
///
/// Terms are joined by `+`/`-` with arbitrary whitespace and have the form
/// `coeff`, `coeff * monomials`, or bare `monomials`; a monomial product
/// looks like `x1^3*x2`.  Coefficients are decimal literals (scientific
/// notation included) or integer ratios such as `2/3`, with an optional
/// sign.  Variables are `x1..x{nvars}`; repeated monomials merge by
/// addition, and terms that cancel to zero disappear.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<Polynomial> {
    Parser {
        bytes: text.as_bytes(),
        pos: 0,
        nvars,
    }
    .parse()
}

/// Scans text for the largest variable index, e.g. to size a polynomial
/// when no explicit variable count accompanies a file.  Returns zero for
/// text without variables; syntax problems surface later in
/// [`parse_polynomial`].
pub fn infer_nvars(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let mut j = i + 1;
            let mut index = 0usize;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                index = index.saturating_mul(10) + (bytes[j] - b'0') as usize;
                j += 1;
            }
            if j > i + 1 {
                best = best.max(index);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    best
}

/// Renders a polynomial in the same grammar [`parse_polynomial`] reads,
/// terms in descending graded-lexicographic order.  Coefficients print in
/// shortest round-trip notation, so `parse(format(p)) == p` bit for bit.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c < 0.0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0.0 { " - " } else { " + " });
        }
        if e.degree() == 0 {
            out.push_str(&format!("{}", mag));
        } else if mag != 1.0 {
            out.push_str(&format!("{}*{}", mag, e));
        } else {
            out.push_str(&e.to_string());
        }
    }
    out
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Polynomial> {
        self.skip_ws();
        if self.at_end() {
            return Err(Error::EmptyInput);
        }
        let mut poly = Polynomial::zero(self.nvars);
        let mut sign = 1.0;
        // A leading sign on the very first term is tolerated so that
        // formatted output like "-27*x1^3 + ..." reads back.
        if let Some(s) = self.try_sign() {
            sign = s;
            self.skip_ws();
        }
        loop {
            let (e, c) = self.term()?;
            poly = poly
                .add(&Polynomial::from_terms(self.nvars, [(e.powers().to_vec(), sign * c)])?)?;
            self.skip_ws();
            if self.at_end() {
                return Ok(poly);
            }
            sign = self.try_sign().ok_or_else(|| Error::Parse {
                pos: self.pos,
                msg: "expected '+' or '-' between terms".into(),
            })?;
            self.skip_ws();
            if self.at_end() {
                return Err(Error::Parse {
                    pos: self.pos,
                    msg: "expected a term after sign".into(),
                });
            }
        }
    }

    /// One term: `coeff`, `coeff '*' monomials`, or bare `monomials`.
    fn term(&mut self) -> Result<(Exponent, f64)> {
        let mut sign = 1.0;
        if let Some(s) = self.try_sign() {
            sign = s;
            self.skip_ws();
        }
        if self.at_end() {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected a term".into(),
            });
        }
        let b = self.bytes[self.pos];
        if b.is_ascii_digit() || b == b'.' {
            let c = self.coefficient()?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                let e = self.monomials()?;
                Ok((e, sign * c))
            } else {
                Ok((Exponent::constant(self.nvars), sign * c))
            }
        } else if b == b'x' {
            let e = self.monomials()?;
            Ok((e, sign))
        } else {
            Err(Error::Parse {
                pos: self.pos,
                msg: format!("unexpected character '{}'", b as char),
            })
        }
    }

    /// A decimal literal or an integer ratio `a/b`.
    fn coefficient(&mut self) -> Result<f64> {
        let start = self.pos;
        let first = self.number_token()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let denom_pos = self.pos;
            let second = self.number_token()?;
            let num: i64 = first.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: format!("ratio numerator '{}' is not an integer", first),
            })?;
            let den: i64 = second.parse().map_err(|_| Error::Parse {
                pos: denom_pos,
                msg: format!("ratio denominator '{}' is not an integer", second),
            })?;
            if den == 0 {
                return Err(Error::Parse {
                    pos: denom_pos,
                    msg: "ratio denominator is zero".into(),
                });
            }
            Ok(num as f64 / den as f64)
        } else {
            let v: f64 = first.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: format!("invalid number '{}'", first),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("number '{}' overflows f64", first),
                });
            }
            Ok(v)
        }
    }

    /// Lexes one unsigned numeric literal: digits, optional fraction,
    /// optional exponent part.
    fn number_token(&mut self) -> Result<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.pos == start {
            return Err(Error::Parse {
                pos: start,
                msg: "expected a number".into(),
            });
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                // Not an exponent part after all; back off.
                self.pos = mark;
            }
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ASCII slice")
            .to_string())
    }

    /// `var ('*' var)*`, merging repeated variables into one exponent.
    fn monomials(&mut self) -> Result<Exponent> {
        let mut powers = vec![0u32; self.nvars];
        loop {
            let (index, power) = self.variable()?;
            powers[index - 1] += power;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() != Some(b'x') {
                    return Err(Error::Parse {
                        pos: self.pos,
                        msg: "expected a variable after '*'".into(),
                    });
                }
            } else {
                return Ok(Exponent::new(powers));
            }
        }
    }

    /// `x<digits>` with an optional `^<digits>` power.
    fn variable(&mut self) -> Result<(usize, u32)> {
        let start = self.pos;
        if self.peek() != Some(b'x') {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected a variable".into(),
            });
        }
        self.pos += 1;
        let index = self.index_digits(start)?;
        if index == 0 || index > self.nvars {
            return Err(Error::VarOutOfRange {
                pos: start,
                index,
                nvars: self.nvars,
            });
        }
        let mut power = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let digits_pos = self.pos;
            let p = self.index_digits(digits_pos)?;
            power = u32::try_from(p).map_err(|_| Error::Parse {
                pos: digits_pos,
                msg: "exponent too large".into(),
            })?;
        }
        Ok((index, power))
    }

    fn index_digits(&mut self, err_pos: usize) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                pos: err_pos,
                msg: "expected digits".into(),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ASCII slice")
            .parse()
            .map_err(|_| Error::Parse {
                pos: err_pos,
                msg: "number too large".into(),
            })
    }

    fn try_sign(&mut self) -> Option<f64> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1.0)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1.0)
            }
            _ => None,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }
}
