//! Text front end: ring declarations, polynomial expressions and declaration documents.
//!
//! ```text
//! ring  ::= "ring" [name "="] FIELD "[" ident ("," ident)* "]" ORDER
//! FIELD ::= "Q" | "F" natural
//! ORDER ::= "grevlex" | "lex" | "block" "(" natural ")"
//! ideal NAME = f1, f2, ... ;
//! poly NAME = f ;
//! map NAME : SRC -> TGT = img1, ..., imgk ;
//! ```
//!
//! `#` starts a comment running to the end of the line. Lines whose first word is not
//! one of the keywords above are kept verbatim as [`Directive`]s for higher layers.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};
use crate::ringmap::RingMap;

pub const GRAMMAR_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Arrow,
    Newline,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Syntax { line, column, message: message.into() }
}

fn lex(src: &str, first_line: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0usize, first_line, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            out.push(Token { tok: Tok::Newline, line: tl, column: tc });
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: tl, column: tc });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Ident(s), line: tl, column: tc });
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::Arrow, line: tl, column: tc });
            i += 2;
            col += 2;
            continue;
        }
        if "+-*/^()[],;=:".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: tl, column: tc });
            i += 1;
            col += 1;
            continue;
        }
        return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    skip_newlines: bool,
}

impl Parser {
    fn new(toks: Vec<Token>) -> Self {
        Self { toks, pos: 0, skip_newlines: true }
    }

    fn peek(&mut self) -> &Token {
        if self.skip_newlines {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        self.peek();
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&mut self, message: impl Into<String>) -> AlgebraError {
        let t = self.peek().clone();
        syntax(t.line, t.column, message)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(syntax(t.line, t.column, format!("expected `{c}`, found {}", describe(&t.tok))))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self) -> Result<(String, usize, usize)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.column)),
            other => Err(syntax(t.line, t.column, format!("expected identifier, found {}", describe(&other)))),
        }
    }

    fn expect_natural(&mut self) -> Result<u64> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => n
                .to_u64()
                .ok_or_else(|| syntax(t.line, t.column, "integer too large")),
            other => Err(syntax(t.line, t.column, format!("expected integer, found {}", describe(other)))),
        }
    }

    fn ring_decl(&mut self, field_override: Option<Field>) -> Result<(Option<String>, Ring)> {
        let (kw, line, column) = self.expect_ident()?;
        if kw != "ring" {
            return Err(syntax(line, column, "expected `ring`"));
        }
        let (mut field_tok, mut fl, mut fc) = self.expect_ident()?;
        let mut name = None;
        if self.eat_sym('=') {
            name = Some(field_tok);
            (field_tok, fl, fc) = self.expect_ident()?;
        }
        let field = match field_tok.parse::<Field>() {
            Ok(f) => f,
            Err(AlgebraError::Syntax { message, .. }) => return Err(syntax(fl, fc, message)),
            Err(e) => return Err(e),
        };
        let field = field_override.unwrap_or(field);
        self.expect_sym('[')?;
        let mut vars = vec![self.expect_ident()?.0];
        while self.eat_sym(',') {
            vars.push(self.expect_ident()?.0);
        }
        self.expect_sym(']')?;
        self.skip_newlines = false;
        let order = match self.peek().tok.clone() {
            Tok::Ident(s) if s == "grevlex" => {
                self.next();
                MonomialOrder::Grevlex
            }
            Tok::Ident(s) if s == "lex" => {
                self.next();
                MonomialOrder::Lex
            }
            Tok::Ident(s) if s == "block" => {
                self.next();
                self.expect_sym('(')?;
                let k = self.expect_natural()? as usize;
                self.expect_sym(')')?;
                MonomialOrder::Block(k)
            }
            Tok::Newline | Tok::Eof => MonomialOrder::Grevlex,
            other => {
                let e = self.error_here(format!("expected monomial order, found {}", describe(&other)));
                self.skip_newlines = true;
                return Err(e);
            }
        };
        let end = self.peek().tok.clone();
        self.skip_newlines = true;
        if !matches!(end, Tok::Newline | Tok::Eof) {
            return Err(self.error_here("unexpected token after ring declaration"));
        }
        Ok((name, PolyRing::new(field, vars, order)?))
    }

    fn expr(&mut self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = if self.eat_sym('-') {
            -&self.term(ring)?
        } else {
            self.eat_sym('+');
            self.term(ring)?
        };
        loop {
            if self.eat_sym('+') {
                acc = &acc + &self.term(ring)?;
            } else if self.eat_sym('-') {
                acc = &acc - &self.term(ring)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Ring) -> Result<Polynomial> {
        let mut acc = self.factor(ring)?;
        loop {
            if self.eat_sym('*') {
                acc = &acc * &self.factor(ring)?;
            } else if self.peek().tok == Tok::Sym('/') {
                let t = self.next();
                let d = self.factor(ring)?;
                if d.is_zero() || !d.terms()[0].0.is_one() || d.len() != 1 {
                    return Err(syntax(t.line, t.column, "division only by nonzero constants"));
                }
                let inv = ring
                    .field()
                    .inv(&d.terms()[0].1)
                    .ok_or(AlgebraError::DivisionByZero)?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self, ring: &Ring) -> Result<Polynomial> {
        let base = self.atom(ring)?;
        if self.eat_sym('^') {
            let t = self.peek().clone();
            let e = self.expect_natural()?;
            let e = u32::try_from(e)
                .ok()
                .filter(|e| *e <= u32::from(u16::MAX))
                .ok_or_else(|| syntax(t.line, t.column, "exponent too large"))?;
            if let Some(d) = base.degree() {
                if u64::from(d) * u64::from(e) > u64::from(u16::MAX) {
                    return Err(AlgebraError::ExponentOverflow);
                }
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Ring) -> Result<Polynomial> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(ring, ring.field().from_bigint(&n))),
            Tok::Ident(name) => match ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(ring, i)),
                None => Err(AlgebraError::UnknownVariable(name)),
            },
            Tok::Sym('(') => {
                let e = self.expr(ring)?;
                self.expect_sym(')')?;
                Ok(e)
            }
            // unary minus inside products, e.g. `2*-x`
            Tok::Sym('-') => Ok(-&self.factor(ring)?),
            other => Err(syntax(t.line, t.column, format!("expected term, found {}", describe(&other)))),
        }
    }

    fn poly_list(&mut self, ring: &Ring) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        if self.eat_sym(';') {
            return Ok(out);
        }
        loop {
            out.push(self.expr(ring)?);
            if self.eat_sym(';') {
                return Ok(out);
            }
            self.expect_sym(',')?;
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Arrow => "`->`".into(),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a single ring declaration such as `ring F31[z00,z01,z10,z11] grevlex`.
pub fn parse_ring(decl: &str) -> Result<Ring> {
    let mut p = Parser::new(lex(decl, 1)?);
    let (_, ring) = p.ring_decl(None)?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here("trailing input after ring declaration"));
    }
    Ok(ring)
}

/// Parses a polynomial expression in `ring`.
pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial> {
    let mut p = Parser::new(lex(src, 1)?);
    let f = p.expr(ring)?;
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here("trailing input after polynomial"));
    }
    Ok(f)
}

/// A comma separated generator list (no terminator).
pub fn parse_polynomial_list(ring: &Ring, src: &str) -> Result<Vec<Polynomial>> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut p = Parser::new(lex(src, 1)?);
    let mut out = vec![p.expr(ring)?];
    while p.eat_sym(',') {
        out.push(p.expr(ring)?);
    }
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here("trailing input after polynomial list"));
    }
    Ok(out)
}

/// A line not understood by the declaration grammar, kept for higher layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Directive {
    pub keyword: String,
    pub args: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct NamedRing {
    pub name: Option<String>,
    pub ring: Ring,
}

#[derive(Clone, Debug)]
pub enum Statement {
    Ring(usize),
    Ideal(String),
    Poly(String),
    Map(String),
    Directive(usize),
}

/// Parsed declaration file. Ideals and polynomials live in the most recently declared ring.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub rings: Vec<NamedRing>,
    pub ideals: Vec<(String, Ideal)>,
    pub polys: Vec<(String, Polynomial)>,
    pub maps: Vec<(String, RingMap)>,
    pub directives: Vec<Directive>,
    pub statements: Vec<Statement>,
}

impl Document {
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn poly(&self, name: &str) -> Option<&Polynomial> {
        self.polys.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    pub fn map(&self, name: &str) -> Option<&RingMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn ring(&self, name: &str) -> Option<&Ring> {
        self.rings.iter().find(|r| r.name.as_deref() == Some(name)).map(|r| &r.ring)
    }

    /// First declared ideal, if any.
    pub fn first_ideal(&self) -> Option<&Ideal> {
        self.ideals.first().map(|(_, i)| i)
    }
}

pub fn parse_document(src: &str) -> Result<Document> {
    parse_document_with_field(src, None)
}

/// Parses a declaration document, optionally forcing every ring onto `field_override`.
pub fn parse_document_with_field(src: &str, field_override: Option<Field>) -> Result<Document> {
    let mut doc = Document::default();
    let mut current: Option<Ring> = None;
    let mut p = Parser::new(lex(src, 1)?);
    loop {
        let t = p.peek().clone();
        let kw = match &t.tok {
            Tok::Eof => break,
            Tok::Ident(s) => s.clone(),
            other => return Err(syntax(t.line, t.column, format!("expected statement, found {}", describe(other)))),
        };
        match kw.as_str() {
            "ring" => {
                let (name, ring) = p.ring_decl(field_override)?;
                if let Some(n) = &name {
                    if doc.ring(n).is_some() {
                        return Err(syntax(t.line, t.column, format!("ring `{n}` declared twice")));
                    }
                }
                doc.statements.push(Statement::Ring(doc.rings.len()));
                doc.rings.push(NamedRing { name, ring: ring.clone() });
                current = Some(ring);
            }
            "ideal" | "poly" => {
                p.next();
                let ring = current
                    .clone()
                    .ok_or_else(|| syntax(t.line, t.column, format!("`{kw}` before any ring declaration")))?;
                let (name, nl, nc) = p.expect_ident()?;
                p.expect_sym('=')?;
                let gens = p.poly_list(&ring)?;
                if kw == "ideal" {
                    if doc.ideal(&name).is_some() {
                        return Err(syntax(nl, nc, format!("ideal `{name}` declared twice")));
                    }
                    doc.statements.push(Statement::Ideal(name.clone()));
                    doc.ideals.push((name, Ideal::new(&ring, gens)));
                } else {
                    if gens.len() != 1 {
                        return Err(syntax(nl, nc, "`poly` takes exactly one expression"));
                    }
                    doc.statements.push(Statement::Poly(name.clone()));
                    doc.polys.push((name, gens.into_iter().next().unwrap()));
                }
            }
            "map" => {
                p.next();
                let (name, _, _) = p.expect_ident()?;
                p.expect_sym(':')?;
                let (src_name, sl, sc) = p.expect_ident()?;
                let t2 = p.next();
                if t2.tok != Tok::Arrow {
                    return Err(syntax(t2.line, t2.column, "expected `->`"));
                }
                let (tgt_name, tl, tc) = p.expect_ident()?;
                p.expect_sym('=')?;
                let source = doc
                    .ring(&src_name)
                    .cloned()
                    .ok_or_else(|| syntax(sl, sc, format!("unknown ring `{src_name}`")))?;
                let target = doc
                    .ring(&tgt_name)
                    .cloned()
                    .ok_or_else(|| syntax(tl, tc, format!("unknown ring `{tgt_name}`")))?;
                let images = p.poly_list(&target)?;
                let m = RingMap::new(&source, &target, images)?;
                doc.statements.push(Statement::Map(name.clone()));
                doc.maps.push((name, m));
            }
            _ => {
                // raw directive: the rest of the line
                p.next();
                p.skip_newlines = false;
                let mut args = Vec::new();
                loop {
                    let a = p.next();
                    match a.tok {
                        Tok::Newline | Tok::Eof => break,
                        Tok::Ident(s) => args.push(s),
                        Tok::Int(n) => args.push(n.to_string()),
                        Tok::Sym(c) => args.push(c.to_string()),
                        Tok::Arrow => args.push("->".into()),
                    }
                }
                p.skip_newlines = true;
                doc.statements.push(Statement::Directive(doc.directives.len()));
                doc.directives.push(Directive { keyword: kw, args, line: t.line });
            }
        }
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_declarations() {
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        assert_eq!(r.vars(), ["x", "y"]);
        assert_eq!(r.field(), Field::Rationals);
        let r = parse_ring("ring F31[z00,z01,z10,z11] grevlex").unwrap();
        assert_eq!(r.nvars(), 4);
        assert_eq!(r.field().characteristic(), 31);
        assert_eq!(parse_ring("ring F4[x] grevlex").unwrap_err(), AlgebraError::NotPrime(4));
        assert_eq!(
            parse_ring("ring Q[x,y,x] lex").unwrap_err(),
            AlgebraError::DuplicateVariable("x".into())
        );
        assert_eq!(parse_ring("ring Q[a,b] block(1)").unwrap().order(), MonomialOrder::Block(1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_ring("ring Q[x,,y] grevlex") {
            Err(AlgebraError::Syntax { line: 1, column: 10, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let r = parse_ring("ring Q[x,y] grevlex").unwrap();
        match parse_polynomial(&r, "x + * y") {
            Err(AlgebraError::Syntax { column: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_polynomial(&r, "x + w").unwrap_err(),
            AlgebraError::UnknownVariable("w".into())
        );
    }

    #[test]
    fn polynomial_examples() {
        let r = parse_ring("ring Q[z00,z01,z10,z11] grevlex").unwrap();
        let f = parse_polynomial(&r, "z00*z11 - z01*z10").unwrap();
        assert_eq!(f.to_string(), "-z01*z10 + z00*z11");
        let r1 = parse_ring("ring Q[x] grevlex").unwrap();
        assert_eq!(parse_polynomial(&r1, "x^0").unwrap(), Polynomial::one(&r1));
        let r2 = parse_ring("ring F2[x] grevlex").unwrap();
        assert!(parse_polynomial(&r2, "x + x").unwrap().is_zero());
        let f = parse_polynomial(&r, "(z00 - 1/2*z01)^2").unwrap();
        assert_eq!(f.to_string(), "z00^2 - z00*z01 + 1/4*z01^2");
    }

    #[test]
    fn documents() {
        let src = "# conifold input\nring A = Q[x,y]\nideal I = x^2, x*y;\npoly f = x +\n  y;\nring B = Q[t]\nmap phi : A -> B = t^2, t^3;\nrun gb I\n";
        let doc = parse_document(src).unwrap();
        assert_eq!(doc.ideal("I").unwrap().gens().len(), 2);
        assert_eq!(doc.poly("f").unwrap().to_string(), "x + y");
        assert_eq!(doc.map("phi").unwrap().images()[1].to_string(), "t^3");
        assert_eq!(
            doc.directives,
            vec![Directive { keyword: "run".into(), args: vec!["gb".into(), "I".into()], line: 8 }]
        );
        let err = parse_document("ring Q[x]\nideal I = x +;\n").unwrap_err();
        assert!(matches!(err, AlgebraError::Syntax { line: 2, .. }));
        let empty = parse_document("ring Q[x]\nideal Z = ;\n").unwrap();
        assert!(empty.ideal("Z").unwrap().gens().is_empty());
    }
}
