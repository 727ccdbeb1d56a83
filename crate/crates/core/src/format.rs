//! Text format for presentations.
//!
//! ```text
//! # S/(x^2, xy) over F_101
//! char 101
//! vars x y
//! order grevlex
//! gens 0
//! rels
//! x^2
//! x*y
//! end
//! ```
//!
//! `order` and a `quotient ... end` block (one generator of `J` per line) are
//! optional. Each line of the `rels` block is one relation: `n` comma-separated
//! entries, entry `k` being the coefficient of generator `k`. Internally a
//! relation is a column of φ. `#` starts a comment.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::Polynomial;
use crate::presentation::GradedPresentation;
use crate::ring::{GradedRing, RingRef};

fn at(line: usize, column: usize, inner: Error) -> Error {
    Error::At {
        line,
        column,
        inner: Box::new(inner),
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Num(chars[start..i].iter().collect()),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Lexed {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else {
            return Err(syntax(line, col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    ring: &'a GradedRing,
    toks: Vec<Lexed>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> PolyParser<'a> {
    fn field(&self) -> &PrimeField {
        self.ring.field()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.ring.zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t, self.field()) } else { acc.add(&t, self.field()) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {}
                _ => break,
            }
            let f = self.factor()?;
            acc = acc.mul(&f, self.field());
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(s)) => {
                    self.pos += 1;
                    let e: u32 = s
                        .parse()
                        .ok()
                        .filter(|&e| e <= u16::MAX as u32)
                        .ok_or_else(|| syntax(self.line, col, format!("exponent {s} is too large")))?;
                    Ok(base.pow(e, self.field()))
                }
                _ => Err(syntax(self.line, col, "expected an exponent after '^'")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                Ok(constant_from_digits(self.ring, &s))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.identifier(&name, col)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                let close = self.col();
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(syntax(self.line, close, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(self.line, col, format!("unexpected token {t:?}"))),
            None => Err(syntax(self.line, col, "unexpected end of expression")),
        }
    }

    /// A declared variable, or a run of declared variables written without
    /// separators (`xy`), split greedily from the left.
    fn identifier(&self, name: &str, col: usize) -> Result<Polynomial> {
        if let Some(v) = self.ring.var_by_name(name) {
            return Ok(v);
        }
        let mut exps = vec![0u16; self.ring.nvars()];
        let mut rest = name;
        while !rest.is_empty() {
            let best = self
                .ring
                .variables()
                .iter()
                .enumerate()
                .filter(|(_, v)| rest.starts_with(v.as_str()))
                .max_by_key(|(_, v)| v.len());
            match best {
                Some((i, v)) => {
                    exps[i] += 1;
                    rest = &rest[v.len()..];
                }
                None => {
                    return Err(syntax(self.line, col, format!("unknown variable '{name}'")));
                }
            }
        }
        Ok(Polynomial::monomial(Monomial::from_exponents(&exps), 1))
    }
}

/// Reduces a decimal literal of any length modulo the characteristic.
fn constant_from_digits(ring: &GradedRing, digits: &str) -> Polynomial {
    let p = ring.field().characteristic() as u64;
    let mut r: u64 = 0;
    for d in digits.bytes() {
        r = (r * 10 + (d - b'0') as u64) % p;
    }
    Polynomial::constant(ring.nvars(), r as Coeff)
}

fn parse_expr_at(ring: &GradedRing, text: &str, line: usize, col0: usize) -> Result<Polynomial> {
    let toks = lex(text, line, col0)?;
    let end_col = col0 + text.chars().count();
    let mut p = PolyParser {
        ring,
        toks,
        pos: 0,
        line,
        end_col,
    };
    if p.peek().is_none() {
        return Err(syntax(line, col0, "empty expression"));
    }
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(syntax(line, p.col(), "trailing input"));
    }
    Ok(f)
}

/// Parses one polynomial in the ring's variables.
pub fn parse_polynomial(ring: &GradedRing, text: &str) -> Result<Polynomial> {
    parse_expr_at(ring, text, 1, 1)
}

/// Parses a linear form such as `x + 2y - z`.
pub fn parse_linear_form(ring: &GradedRing, text: &str) -> Result<Polynomial> {
    let f = parse_polynomial(ring, text)?;
    if f.degree() != Some(1) || !f.is_homogeneous() {
        return Err(Error::NotLinear(f.degree()));
    }
    Ok(f)
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn strip_comment(s: &str) -> &str {
    match s.find('#') {
        Some(k) => &s[..k],
        None => s,
    }
}

fn keyword_line<'a>(line: Option<&'a Line<'a>>, expected: &str, eof: usize) -> Result<(&'a Line<'a>, &'a str)> {
    let l = line.ok_or_else(|| syntax(eof, 1, format!("missing '{expected}' line")))?;
    let t = l.text.trim_start();
    let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
    if kw != expected {
        return Err(syntax(l.no, column_of(l.text, t), format!("expected '{expected}', found '{kw}'")));
    }
    Ok((l, rest))
}

fn column_of(full: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - full.as_ptr() as usize;
    full[..offset].chars().count() + 1
}

/// Parses a presentation file.
pub fn parse_file(text: &str) -> Result<GradedPresentation> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, t)| Line {
            no: i + 1,
            text: strip_comment(t),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();
    let eof = lines.last().map(|l| l.no + 1).unwrap_or(1);
    let mut it = lines.iter().peekable();
    let first_word = |l: &Line| l.text.split_whitespace().next().unwrap_or("").to_string();

    let (cl, rest) = keyword_line(it.next(), "char", eof)?;
    let rest = rest.trim();
    let p: u64 = rest
        .parse()
        .map_err(|_| syntax(cl.no, column_of(cl.text, rest), format!("bad characteristic '{rest}'")))?;
    let field = PrimeField::new(p).map_err(|e| at(cl.no, column_of(cl.text, rest), e))?;

    let (vl, rest) = keyword_line(it.next(), "vars", eof)?;
    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
    for n in rest.split_whitespace() {
        let ok = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && n.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(syntax(vl.no, column_of(vl.text, n), format!("bad variable name '{n}'")));
        }
    }

    let mut order = MonomialOrder::GRevLex;
    if let Some(l) = it.peek() {
        if first_word(l) == "order" {
            let rest = l.text.trim_start()["order".len()..].trim();
            order = rest
                .parse()
                .map_err(|m: String| syntax(l.no, column_of(l.text, rest), m))?;
            it.next();
        }
    }
    let ring = GradedRing::new(field, names, order).map_err(|e| at(vl.no, 1, e))?;

    let mut quotient = Vec::new();
    if let Some(l) = it.peek() {
        if first_word(l) == "quotient" {
            let qline = l.no;
            it.next();
            loop {
                let l = it.next().ok_or_else(|| syntax(qline, 1, "unterminated quotient block"))?;
                if l.text.trim() == "end" {
                    break;
                }
                let body = l.text.trim();
                let col = column_of(l.text, body);
                let f = parse_expr_at(&ring, body, l.no, col)?;
                ring.clone()
                    .with_quotient(vec![f.clone()])
                    .map_err(|e| at(l.no, col, e))?;
                quotient.push(f);
            }
        }
    }
    let ring = ring.with_quotient(quotient)?;

    let (gl, rest) = keyword_line(it.next(), "gens", eof)?;
    let mut twists = Vec::new();
    for w in rest.split_whitespace() {
        let a: i64 = w
            .parse()
            .map_err(|_| syntax(gl.no, column_of(gl.text, w), format!("bad generator degree '{w}'")))?;
        twists.push(a);
    }
    if twists.is_empty() {
        return Err(syntax(gl.no, column_of(gl.text, gl.text.trim_start()), "at least one generator degree is required"));
    }
    let n = twists.len();

    let rl = it.next().ok_or_else(|| syntax(gl.no + 1, 1, "missing 'rels' line"))?;
    if rl.text.trim() != "rels" {
        return Err(syntax(rl.no, column_of(rl.text, rl.text.trim_start()), "expected 'rels'"));
    }
    let mut columns: Vec<Vec<Polynomial>> = Vec::new();
    let mut spots: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut closed = false;
    for l in it.by_ref() {
        if l.text.trim() == "end" {
            closed = true;
            break;
        }
        let parts: Vec<&str> = l.text.split(',').collect();
        if parts.len() != n {
            return Err(syntax(
                l.no,
                column_of(l.text, l.text.trim_start()),
                format!("relation has {} entries but there are {n} generators", parts.len()),
            ));
        }
        let mut col = Vec::with_capacity(n);
        let mut where_ = Vec::with_capacity(n);
        for part in parts {
            let body = part.trim();
            let c = if body.is_empty() { column_of(l.text, part) } else { column_of(l.text, body) };
            col.push(parse_expr_at(&ring, body, l.no, c)?);
            where_.push((l.no, c));
        }
        columns.push(col);
        spots.push(where_);
    }
    if !closed {
        return Err(syntax(rl.no, 1, "unterminated rels block"));
    }
    if let Some(l) = it.next() {
        return Err(syntax(l.no, column_of(l.text, l.text.trim_start()), "unexpected content after 'end'"));
    }

    GradedPresentation::new(Arc::new(ring), twists, columns).map_err(|e| match e {
        Error::NonHomogeneous { row, col, .. } => {
            let (line, column) = spots[col][row];
            at(line, column, e)
        }
        Error::EmptyColumn(j) => {
            let (line, column) = spots[j][0];
            at(line, column, e)
        }
        other => other,
    })
}

/// Writes a presentation in the format read by [`parse_file`].
pub fn serialize(m: &GradedPresentation) -> String {
    let ring: &RingRef = m.ring();
    let mut out = String::new();
    out.push_str("# one relation per line; entry k multiplies generator k\n");
    out.push_str(&format!("char {}\n", ring.field().characteristic()));
    out.push_str(&format!("vars {}\n", ring.variables().join(" ")));
    out.push_str(&format!("order {}\n", ring.order().name()));
    if !ring.quotient().is_empty() {
        out.push_str("quotient\n");
        for g in ring.quotient() {
            out.push_str(&ring.render(g));
            out.push('\n');
        }
        out.push_str("end\n");
    }
    let gens: Vec<String> = m.row_twists().iter().map(|a| a.to_string()).collect();
    out.push_str(&format!("gens {}\n", gens.join(" ")));
    out.push_str("rels\n");
    for col in m.columns() {
        let entries: Vec<String> = col.iter().map(|f| ring.render(f)).collect();
        out.push_str(&entries.join(", "));
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "char 101\nvars x y\ngens 0\nrels\nx^2\nx*y\nend\n";

    #[test]
    fn parses_sample() {
        let m = parse_file(SAMPLE).unwrap();
        assert_eq!(m.n(), 1);
        assert_eq!(m.column_degrees(), &[2, 2]);
        assert_eq!(m.ring().render(m.entry(0, 1)), "x*y");
    }

    #[test]
    fn juxtaposition_and_parentheses() {
        let r = GradedRing::polynomial(101, 3).unwrap();
        let f = parse_polynomial(&r, "2xy - (x+z)^2 + 3 y z").unwrap();
        let g = parse_polynomial(&r, "2*x*y - x^2 - 2*x*z - z^2 + 3*y*z").unwrap();
        assert_eq!(f, g);
        let h = parse_polynomial(&r, "100x + x").unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn longest_name_wins_when_splitting() {
        let r = GradedRing::new(PrimeField::new(7).unwrap(), vec!["x".into(), "x1".into()], MonomialOrder::GRevLex).unwrap();
        let f = parse_polynomial(&r, "x1x").unwrap();
        let g = parse_polynomial(&r, "x1*x").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn nonprime_characteristic() {
        let err = parse_file("char 4\nvars x\ngens 0\nrels\nend\n").unwrap_err();
        match err {
            Error::At { line, column, inner } => {
                assert_eq!((line, column), (1, 6));
                assert_eq!(*inner, Error::NonPrime(4));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn nonhomogeneous_entry_is_located() {
        let err = parse_file("char 101\nvars x y\ngens 0\nrels\nx^2\nx + y^2\nend\n").unwrap_err();
        match err {
            Error::At { line, column, inner } => {
                assert_eq!((line, column), (6, 1));
                assert!(matches!(*inner, Error::NonHomogeneous { row: 0, col: 1, .. }));
            }
            e => panic!("{e:?}"),
        }
        let err = parse_file("char 101\nvars x y\ngens 0 1\nrels\nx^2, x*y\nend\n").unwrap_err();
        match err {
            Error::At { line, column, .. } => assert_eq!((line, column), (5, 6)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn unknown_variable_is_located() {
        let err = parse_file("char 101\nvars x y\ngens 0\nrels\nx*w\nend\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 5,
                column: 3,
                message: "unknown variable 'w'".into()
            }
        );
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "vars x\n",
            "char 101\nvars x\ngens\nrels\nend\n",
            "char 101\nvars x\ngens 0\nrels\nx^\nend\n",
            "char 101\nvars x\ngens 0\nrels\n(x\nend\n",
            "char 101\nvars x\ngens 0\nrels\nx\n",
            "char 101\nvars x\ngens 0 0\nrels\nx\nend\n",
            "char 101\nvars x\ngens 0\nrels\nx $ x\nend\n",
            "char 101\nvars x\ngens 0\nrels\nx\nend\nx\n",
        ] {
            assert!(parse_file(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn round_trip_with_quotient_and_comments() {
        let text = "# test\nchar 32003\nvars a b c\norder lex\nquotient\na*c - b^2  # conic\nend\ngens 0 1\nrels\nb^2, -1 * a\nc^2, 0\n0, 7c\nend\n";
        let m = parse_file(text).unwrap();
        assert_eq!(m.ring().order(), MonomialOrder::Lex);
        assert_eq!(m.ring().quotient().len(), 1);
        assert_eq!(m.column_degrees(), &[2, 2, 2]);
        let s = serialize(&m);
        let again = parse_file(&s).unwrap();
        assert_eq!(m, again);
        assert_eq!(serialize(&again), s);
    }

    #[test]
    fn free_module_round_trip() {
        let m = parse_file("char 2\nvars x\ngens 3 1\nrels\nend\n").unwrap();
        assert_eq!(m.m(), 0);
        assert_eq!(parse_file(&serialize(&m)).unwrap(), m);
    }

    #[test]
    fn linear_forms() {
        let r = GradedRing::polynomial(101, 3).unwrap();
        assert_eq!(parse_linear_form(&r, "x + 2y - z").unwrap(), r.linear_form(&[1, 2, -1]));
        assert!(matches!(parse_linear_form(&r, "x^2"), Err(Error::NotLinear(Some(2)))));
        assert!(parse_linear_form(&r, "x + 1").is_err());
    }
}
