//! Canonical text form: `x1^2*x3`, `T[x1*x2,t1]`, binomials as `lead - trail`.

use super::monomial::{SMonomial, TVariable, XMonomial};
use super::order::Variable;
use crate::error::{Error, Result};

/// Renders factors given largest first; runs of equal factors become powers.
pub fn render_factors(factors: &[Variable]) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let mut j = i;
        while j < factors.len() && factors[j] == factors[i] {
            j += 1;
        }
        let base = match &factors[i] {
            Variable::X(k) => format!("x{k}"),
            Variable::T(t) => t.to_string(),
        };
        if j - i == 1 {
            parts.push(base);
        } else {
            parts.push(format!("{base}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, offset: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            offset,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        self.err_at(self.pos, message)
    }

    fn err_at<T>(&self, pos: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.offset + pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("number out of range"))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat(b'^') {
            let e = self.number()?;
            Ok(e as u32)
        } else {
            Ok(1)
        }
    }

    fn x_index(&mut self, n: usize) -> Result<usize> {
        self.expect(b'x')?;
        let start = self.pos;
        let i = self.number()?;
        if i == 0 || i > n {
            return self.err_at(start, format!("x{i} is outside x1..x{n}"));
        }
        Ok(i)
    }

    fn x_monomial(&mut self, n: usize) -> Result<XMonomial> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(XMonomial::one(n));
        }
        let mut e = vec![0u32; n];
        loop {
            let i = self.x_index(n)?;
            e[i - 1] += self.exponent()?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(XMonomial::from_exponents(e))
    }

    fn smonomial(&mut self, n: usize) -> Result<SMonomial> {
        if self.peek() == Some(b'1') {
            self.pos += 1;
            return Ok(SMonomial::one(n));
        }
        let mut x = vec![0u32; n];
        let mut t = Vec::new();
        loop {
            match self.peek() {
                Some(b'x') => {
                    let i = self.x_index(n)?;
                    x[i - 1] += self.exponent()?;
                }
                Some(b'T') => {
                    self.pos += 1;
                    self.expect(b'[')?;
                    let gen = self.x_monomial(n)?;
                    self.expect(b',')?;
                    self.expect(b't')?;
                    let block = self.number()?;
                    if block == 0 {
                        return self.err("blocks are numbered from t1");
                    }
                    self.expect(b']')?;
                    let e = self.exponent()?;
                    for _ in 0..e {
                        t.push(TVariable::new(block, gen.clone()));
                    }
                }
                _ => return self.err("expected `x<i>` or `T[...]`"),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok(SMonomial::new(XMonomial::from_exponents(x), t))
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

pub fn parse_smonomial(s: &str, n: usize) -> Result<SMonomial> {
    let mut p = Parser::new(s, 0);
    let m = p.smonomial(n)?;
    p.finish()?;
    Ok(m)
}

/// Parses `a - b` into its two terms as written.
pub fn parse_difference(s: &str, n: usize) -> Result<(SMonomial, SMonomial)> {
    let Some(split) = s.find('-') else {
        return Err(Error::Parse {
            column: s.len() + 1,
            message: "expected `lead - trail`".into(),
        });
    };
    let mut p = Parser::new(&s[..split], 0);
    let a = p.smonomial(n)?;
    p.finish()?;
    let mut q = Parser::new(&s[split + 1..], split + 1);
    let b = q.smonomial(n)?;
    q.finish()?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_subscript_style_terms() {
        let m = parse_smonomial("x2*T[x2*x3,t2]*T[x1^2,t3]", 3).unwrap();
        assert_eq!(m.x.to_string(), "x2");
        assert_eq!(m.t_factors().len(), 2);
        assert_eq!(m.degree(), 3);
    }

    #[test]
    fn powers_of_t_variables() {
        let m = parse_smonomial("T[x1*x2,t1]^2", 2).unwrap();
        assert_eq!(m.t_factors().len(), 2);
    }

    #[test]
    fn reports_columns() {
        match parse_smonomial("x1*y2", 2) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_difference("x1 - x7", 2) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn renders_runs_as_powers() {
        let f = vec![Variable::X(1), Variable::X(1), Variable::X(3)];
        assert_eq!(render_factors(&f), "x1^2*x3");
        assert_eq!(render_factors(&[]), "1");
    }
}
