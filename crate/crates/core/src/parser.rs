//! Recursive-descent parser for bundle expressions.
//!
//! ```text
//! expr    := term ("(+)" term)*
//! term    := factor ("(x)" factor)*
//! factor  := primary ("*" | "(" int ")")*
//! primary := "O(" int ")" | "S" | "T" | "F(" rat ("," rat)* ")"
//!          | "Sym^" int primary | "Alt^" int primary | "(" expr ")"
//! rat     := int | int "/" int          (denominator 1 or 2)
//! ```
//!
//! Whitespace is ignored everywhere. Postfix `*` takes the dual, so `S*` is the
//! dual spinor bundle; a postfix `(a)` twists by `O(a)`, so `S*(-3)` is `S* (x) O(-3)`.
//! Error positions are 1-based columns of the original input.

use crate::bundle::{LeviBundle, Quadric};
use crate::error::{Error, Result};
use crate::weights::Weight;

pub fn parse_bundle(q: &Quadric, input: &str) -> Result<LeviBundle> {
    if let Some((i, c)) = input.char_indices().find(|(_, c)| !c.is_ascii()) {
        return Err(Error::Parse {
            pos: i + 1,
            msg: format!("non-ASCII character {c:?}"),
        });
    }
    let chars: Vec<(usize, u8)> = input
        .bytes()
        .enumerate()
        .filter(|(_, b)| !b.is_ascii_whitespace())
        .collect();
    let mut p = Parser {
        q,
        chars,
        at: 0,
        len: input.len(),
    };
    if p.chars.is_empty() {
        return Err(p.error("empty expression"));
    }
    let b = p.expr()?;
    if p.at < p.chars.len() {
        return Err(p.error(&format!("unexpected {:?}", p.peek().unwrap() as char)));
    }
    Ok(b)
}

struct Parser<'a> {
    q: &'a Quadric,
    chars: Vec<(usize, u8)>,
    at: usize,
    len: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.len, |c| c.0) + 1
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.chars.get(self.at).map(|c| c.1)
    }

    fn looking_at(&self, s: &str) -> bool {
        s.bytes()
            .enumerate()
            .all(|(i, b)| self.chars.get(self.at + i).map(|c| c.1) == Some(b))
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.looking_at(s) {
            self.at += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {s:?}")))
        }
    }

    fn expr(&mut self) -> Result<LeviBundle> {
        let mut acc = self.term()?;
        while self.eat("(+)") {
            let rhs = self.term()?;
            acc = acc.direct_sum(&rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LeviBundle> {
        let mut acc = self.factor()?;
        while self.eat("(x)") {
            let rhs = self.factor()?;
            acc = self.q.tensor_bundles(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LeviBundle> {
        let mut b = self.primary()?;
        loop {
            if self.eat("*") {
                b = self.q.dual_bundle(&b);
            } else if self.twist_ahead() {
                self.at += 1;
                let a = self.integer()?;
                self.expect(")")?;
                b = self.q.twist(&b, a);
            } else {
                return Ok(b);
            }
        }
    }

    /// `(` followed by an optionally signed integer; `(+)` is the direct sum.
    fn twist_ahead(&self) -> bool {
        let at = |i: usize| self.chars.get(self.at + i).map(|c| c.1);
        let digit = |c: Option<u8>| c.is_some_and(|c| c.is_ascii_digit());
        at(0) == Some(b'(')
            && (digit(at(1)) || (matches!(at(1), Some(b'-' | b'+')) && digit(at(2))))
    }

    fn primary(&mut self) -> Result<LeviBundle> {
        if self.eat("Sym^") {
            let k = self.natural()?;
            let inner = self.primary()?;
            return Ok(self.q.sym_bundle(&inner, k));
        }
        if self.eat("Alt^") {
            let k = self.natural()?;
            let inner = self.primary()?;
            return Ok(self.q.alt_bundle(&inner, k));
        }
        if self.eat("O(") {
            let a = self.integer()?;
            self.expect(")")?;
            return Ok(self.q.line_bundle(a));
        }
        if self.looking_at("F(") {
            let start = self.pos();
            self.at += 2;
            let mut doubled = vec![self.rational()?];
            while self.eat(",") {
                doubled.push(self.rational()?);
            }
            self.expect(")")?;
            if doubled.len() != self.q.rank() {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!(
                        "F(...) needs {} coordinates, got {}",
                        self.q.rank(),
                        doubled.len()
                    ),
                });
            }
            let w = Weight::from_doubled(doubled).map_err(|e| Error::Parse {
                pos: start,
                msg: e.to_string(),
            })?;
            return self.q.irreducible(w).map_err(|e| Error::Parse {
                pos: start,
                msg: e.to_string(),
            });
        }
        if self.eat("S") {
            return Ok(self.q.spinor());
        }
        if self.eat("T") {
            return Ok(self.q.tangent());
        }
        if self.peek() == Some(b'(') && !self.looking_at("(x)") && !self.looking_at("(+)") {
            self.at += 1;
            let b = self.expr()?;
            self.expect(")")?;
            return Ok(b);
        }
        match self.peek() {
            Some(c) => Err(self.error(&format!("unexpected {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<i64> {
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.at]
            .iter()
            .map(|c| c.1 as char)
            .collect();
        s.parse().map_err(|_| Error::Parse {
            pos: self.chars[start].0 + 1,
            msg: format!("number {s} out of range"),
        })
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let v = self.digits()?;
        Ok(if neg { -v } else { v })
    }

    fn natural(&mut self) -> Result<usize> {
        Ok(self.digits()? as usize)
    }

    /// Returns twice the rational.
    fn rational(&mut self) -> Result<i64> {
        let start = self.pos();
        let num = self.integer()?;
        if self.eat("/") {
            let den = self.digits()?;
            if den == 0 || (2 * num) % den != 0 {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("{num}/{den} is not a multiple of 1/2"),
                });
            }
            Ok(2 * num / den)
        } else {
            Ok(2 * num)
        }
    }
}
