use super::term::PrTerm;
use super::PrError;

pub fn pr_parse(text: &str) -> Result<PrTerm, PrError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let term = parser.term()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("trailing input after term"));
    }
    Ok(term)
}

/// Canonical text form: `C(f; g1, g2)`, `R(b, s)`, `P[n,k]`.
pub fn pr_render(term: &PrTerm) -> String {
    term.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> PrError {
        PrError::Parse {
            pos: self.pos,
            message: message.into(),
        }
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

    fn expect(&mut self, byte: u8) -> Result<(), PrError> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(self.error(format!(
                "expected `{}`, found `{}`",
                byte as char, b as char
            ))),
            None => Err(self.error(format!("expected `{}`, found end of input", byte as char))),
        }
    }

    fn number(&mut self) -> Result<usize, PrError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| PrError::Parse {
                pos: start,
                message: "number out of range".into(),
            })
    }

    fn term(&mut self) -> Result<PrTerm, PrError> {
        let Some(head) = self.peek() else {
            return Err(self.error("expected a term, found end of input"));
        };
        self.pos += 1;
        match head {
            b'Z' => Ok(PrTerm::Zero),
            b'S' => Ok(PrTerm::Succ),
            b'P' => {
                self.expect(b'[')?;
                let n = self.number()?;
                self.expect(b',')?;
                let k = self.number()?;
                self.expect(b']')?;
                PrTerm::proj(n, k)
            }
            b'C' => {
                self.expect(b'(')?;
                let outer = self.term()?;
                self.expect(b';')?;
                let mut inner = vec![self.term()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    inner.push(self.term()?);
                }
                self.expect(b')')?;
                PrTerm::comp(outer, inner)
            }
            b'R' => {
                self.expect(b'(')?;
                let base = self.term()?;
                self.expect(b',')?;
                let step = self.term()?;
                self.expect(b')')?;
                PrTerm::prim_rec(base, step)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("unexpected `{}`", other as char)))
            }
        }
    }
}
