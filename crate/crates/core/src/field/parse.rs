//! Parser for rational-function strings such as `"a*b/(z*(1-z))"`.
//!
//! Grammar: sums and differences of products and quotients of factors;
//! a factor is an integer, a variable name, a parenthesized expression, or a
//! factor raised to an integer power with `^`.

use num_bigint::BigInt;

use super::poly::Vars;
use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::FieldError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, FieldError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            out.push(Tok::Num(lit.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FieldError::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Vars,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> FieldError {
        FieldError::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, FieldError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == '*' { &acc * &rhs } else { acc.checked_div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, FieldError> {
        match self.peek_op() {
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

    fn power(&mut self) -> Result<RatFunc, FieldError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek_op() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => i32::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        base.pow(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<RatFunc, FieldError> {
        let tok = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(RatFunc::constant(self.vars, Rational::from_integer(n))),
            Tok::Ident(name) => RatFunc::named(self.vars, &name),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(self.err(&format!("unexpected `{c}`"))),
        }
    }
}

pub fn parse_ratfunc(s: &str, vars: &Vars) -> Result<RatFunc, FieldError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(FieldError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, vars, src: s };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_companion_entry() {
        let v = Vars::new(["a", "b", "c", "z"]);
        let f = parse_ratfunc("((a+b+1)*z-c)/(z*(1-z))", &v).unwrap();
        let g = parse_ratfunc("(c - (a+b+1)*z)/(z^2 - z)", &v).unwrap();
        assert_eq!(f, g);
        assert!(parse_ratfunc("a +", &v).is_err());
        assert!(parse_ratfunc("q", &v).is_err());
        assert!(parse_ratfunc("1/(a-a)", &v).is_err());
    }

    #[test]
    fn display_round_trips() {
        let v = Vars::new(["x", "y"]);
        for s in ["x^2 - 1/3*y", "(x + 1)/(x*y - 2)", "-x^-2", "0", "7/2"] {
            let f = parse_ratfunc(s, &v).unwrap();
            let back = parse_ratfunc(&f.to_string(), &v).unwrap();
            assert_eq!(f, back, "{s} -> {f}");
        }
    }
}
