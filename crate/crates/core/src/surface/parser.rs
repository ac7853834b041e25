use std::collections::HashSet;
use std::sync::Arc;

use super::ast::*;
use super::lexer::{tokenize, Kw, Tok, Token};
use super::ParseError;

pub fn parse_program(source: &str, file: &str) -> Result<Program, ParseError> {
    let tokens = tokenize(source, file)?;
    let mut p = Parser { tokens, pos: 0 };
    let mut defs = Vec::new();
    loop {
        while p.eat(&Tok::SemiSemi) {}
        if p.at(&Tok::Eof) {
            break;
        }
        defs.push(p.top_def()?);
    }
    Ok(Program {
        file: Arc::from(file),
        defs,
    })
}

/// Parses a single expression, used by tests and tooling.
pub fn parse_expr(source: &str, file: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(source, file)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.seq()?;
    p.expect(&Tok::Eof, "end of input")?;
    Ok(e)
}

/// Parses a type expression such as `('a -> 'b) -> 'a list`.
pub fn parse_type(source: &str) -> Result<TypeExpr, ParseError> {
    let tokens = tokenize(source, "<type>")?;
    let mut p = Parser { tokens, pos: 0 };
    let t = p.type_expr()?;
    p.expect(&Tok::Eof, "end of type")?;
    Ok(t)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(i) => format!("integer `{i}`"),
        Tok::Float(f) => format!("float `{f}`"),
        Tok::Str(_) => "string literal".into(),
        Tok::Char(_) => "character literal".into(),
        Tok::Ident(x) => format!("identifier `{x}`"),
        Tok::TyVar(x) => format!("type variable `'{x}`"),
        Tok::Op(op) => format!("`{op}`"),
        Tok::Kw(kw) => format!("keyword `{}`", kw.as_str()),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::SemiSemi => "`;;`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Underscore => "`_`".into(),
        Tok::Eof => "end of input".into(),
    }
}

const COMPARISONS: &[&str] = &["<", ">", "<=", ">=", "<>", "==", "!="];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_tok(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span.clone()
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, tok: &Tok) -> bool {
        self.peek() == tok
    }

    fn at_kw(&self, kw: Kw) -> bool {
        self.peek() == &Tok::Kw(kw)
    }

    fn at_op(&self, op: &str) -> bool {
        matches!(self.peek(), Tok::Op(o) if o == op)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            span: self.span(),
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, ParseError> {
        self.error(format!(
            "expected {wanted}, found {}",
            describe(self.peek())
        ))
    }

    fn expect(&mut self, tok: &Tok, wanted: &str) -> Result<Span, ParseError> {
        if self.at(tok) {
            Ok(self.advance().span)
        } else {
            self.unexpected(wanted)
        }
    }

    fn expect_kw(&mut self, kw: Kw) -> Result<Span, ParseError> {
        self.expect(&Tok::Kw(kw), &format!("`{}`", kw.as_str()))
    }

    fn binder_name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !name.contains('.') => {
                self.advance();
                Ok(name)
            }
            Tok::Underscore => {
                self.advance();
                Ok("_".into())
            }
            _ => self.unexpected("a variable name"),
        }
    }

    fn top_def(&mut self) -> Result<TopDef, ParseError> {
        let start = self.span();
        if !self.at_kw(Kw::Let) {
            return self.unexpected("a top-level `let` definition");
        }
        let (is_rec, name, bound) = self.let_binding()?;
        if self.eat(&Tok::Kw(Kw::In)) {
            let body = self.seq()?;
            let span = start.to(&body.span);
            let e = Expr::new(
                ExprKind::Let {
                    is_rec,
                    name,
                    bound: Box::new(bound),
                    body: Box::new(body),
                },
                span.clone(),
            );
            return Ok(TopDef {
                is_rec: false,
                name: "_".into(),
                body: e,
                span,
            });
        }
        let span = start.to(&bound.span);
        Ok(TopDef {
            is_rec,
            name,
            body: bound,
            span,
        })
    }

    /// `let [rec] name params* [: ty] = expr`, stopping before `in`.
    fn let_binding(&mut self) -> Result<(bool, String, Expr), ParseError> {
        self.expect_kw(Kw::Let)?;
        let is_rec = self.eat(&Tok::Kw(Kw::Rec));
        let name = self.binder_name()?;
        let mut params = Vec::new();
        while self.starts_atom_pattern() {
            params.push(self.atom_pattern()?);
        }
        check_distinct(&params)?;
        let ret_annot = if self.eat(&Tok::Colon) {
            Some(self.type_expr()?)
        } else {
            None
        };
        self.expect(&Tok::Equals, "`=`")?;
        let mut body = self.seq()?;
        if let Some(ty) = ret_annot {
            let span = body.span.clone();
            body = Expr::new(ExprKind::Annot(Box::new(body), ty), span);
        }
        if !params.is_empty() {
            let span = params[0].span.to(&body.span);
            body = Expr::new(ExprKind::Fun(params, Box::new(body)), span);
        }
        Ok((is_rec, name, body))
    }

    fn seq(&mut self) -> Result<Expr, ParseError> {
        let first = self.expr()?;
        if self.at(&Tok::Semi) {
            // Trailing `;` before a closing token is allowed.
            let next = &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)].tok;
            if matches!(
                next,
                Tok::RParen | Tok::Kw(Kw::End) | Tok::Kw(Kw::Done) | Tok::Eof | Tok::SemiSemi
            ) {
                self.advance();
                return Ok(first);
            }
            self.advance();
            let second = self.seq()?;
            let span = first.span.to(&second.span);
            return Ok(Expr::new(
                ExprKind::Seq(Box::new(first), Box::new(second)),
                span,
            ));
        }
        Ok(first)
    }

    /// An expression without a toplevel `;`.
    fn expr(&mut self) -> Result<Expr, ParseError> {
        if let Some(e) = self.keyword_expr()? {
            return Ok(e);
        }
        let lhs = self.tuple()?;
        if self.at_op(":=") {
            let op = self.advance().span;
            let rhs = self.expr()?;
            return Ok(binary(":=", op, lhs, rhs));
        }
        Ok(lhs)
    }

    /// Constructs that extend as far right as possible.
    fn keyword_expr(&mut self) -> Result<Option<Expr>, ParseError> {
        let start = self.span();
        let e = match self.peek() {
            Tok::Kw(Kw::Let) => {
                let (is_rec, name, bound) = self.let_binding()?;
                self.expect_kw(Kw::In)?;
                let body = self.seq()?;
                let span = start.to(&body.span);
                Expr::new(
                    ExprKind::Let {
                        is_rec,
                        name,
                        bound: Box::new(bound),
                        body: Box::new(body),
                    },
                    span,
                )
            }
            Tok::Kw(Kw::Fun) => {
                self.advance();
                let mut params = Vec::new();
                while self.starts_atom_pattern() {
                    params.push(self.atom_pattern()?);
                }
                if params.is_empty() {
                    return self.unexpected("a parameter pattern");
                }
                check_distinct(&params)?;
                self.expect(&Tok::Arrow, "`->`")?;
                let body = self.seq()?;
                let span = start.to(&body.span);
                Expr::new(ExprKind::Fun(params, Box::new(body)), span)
            }
            Tok::Kw(Kw::Match) => {
                self.advance();
                let scrutinee = self.seq()?;
                self.expect_kw(Kw::With)?;
                self.eat(&Tok::Bar);
                let mut arms = Vec::new();
                loop {
                    let pat = self.pattern()?;
                    self.expect(&Tok::Arrow, "`->`")?;
                    let body = self.seq()?;
                    arms.push((pat, body));
                    if !self.eat(&Tok::Bar) {
                        break;
                    }
                }
                let span = start.to(&arms
                    .last()
                    .map(|a| a.1.span.clone())
                    .unwrap_or(start.clone()));
                Expr::new(ExprKind::Match(Box::new(scrutinee), arms), span)
            }
            Tok::Kw(Kw::If) => {
                self.advance();
                let cond = self.seq()?;
                self.expect_kw(Kw::Then)?;
                let then_b = self.expr()?;
                let else_b = if self.eat(&Tok::Kw(Kw::Else)) {
                    Some(Box::new(self.expr()?))
                } else {
                    None
                };
                let end = else_b.as_ref().map_or(&then_b.span, |e| &e.span);
                let span = start.to(end);
                Expr::new(ExprKind::If(Box::new(cond), Box::new(then_b), else_b), span)
            }
            _ => return Ok(None),
        };
        Ok(Some(e))
    }

    fn tuple(&mut self) -> Result<Expr, ParseError> {
        let first = self.or_expr()?;
        if !self.at(&Tok::Comma) {
            return Ok(first);
        }
        let mut elems = vec![first];
        while self.eat(&Tok::Comma) {
            elems.push(self.or_expr()?);
        }
        let span = elems[0].span.to(&elems[elems.len() - 1].span);
        Ok(Expr::new(ExprKind::Tuple(elems), span))
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        self.right_assoc(&["||"], Self::and_expr)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        self.right_assoc(&["&&"], Self::comparison)
    }

    fn comparison(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.concat()?;
        loop {
            let op = match self.peek() {
                Tok::Equals => "=".to_string(),
                Tok::Op(o) if COMPARISONS.contains(&o.as_str()) => o.clone(),
                _ => return Ok(lhs),
            };
            let op_span = self.advance().span;
            let rhs = self.concat()?;
            lhs = binary(&op, op_span, lhs, rhs);
        }
    }

    fn concat(&mut self) -> Result<Expr, ParseError> {
        self.right_assoc(&["^", "@"], Self::cons)
    }

    fn cons(&mut self) -> Result<Expr, ParseError> {
        self.right_assoc(&["::"], Self::additive)
    }

    fn right_assoc(
        &mut self,
        ops: &[&str],
        next: fn(&mut Self) -> Result<Expr, ParseError>,
    ) -> Result<Expr, ParseError> {
        let lhs = next(self)?;
        let op = match self.peek() {
            Tok::Op(o) if ops.contains(&o.as_str()) => o.clone(),
            _ => return Ok(lhs),
        };
        let op_span = self.advance().span;
        let rhs = self.right_assoc(ops, next)?;
        Ok(binary(&op, op_span, lhs, rhs))
    }

    fn left_assoc(
        &mut self,
        ops: &[&str],
        next: fn(&mut Self) -> Result<Expr, ParseError>,
    ) -> Result<Expr, ParseError> {
        let mut lhs = next(self)?;
        loop {
            let op = match self.peek() {
                Tok::Op(o) if ops.contains(&o.as_str()) => o.clone(),
                _ => return Ok(lhs),
            };
            let op_span = self.advance().span;
            let rhs = next(self)?;
            lhs = binary(&op, op_span, lhs, rhs);
        }
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        self.left_assoc(&["+", "-", "+.", "-."], Self::multiplicative)
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        self.left_assoc(&["*", "/", "*.", "/."], Self::unary)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if let Some(e) = self.keyword_expr()? {
            return Ok(e);
        }
        let start = self.span();
        let neg = match self.peek() {
            Tok::Op(o) if o == "-" || o == "~-" => "~-",
            Tok::Op(o) if o == "-." || o == "~-." => "~-.",
            _ => return self.application(),
        };
        let op_tok = self.advance();
        if neg == "~-" && op_tok.tok == Tok::Op("-".into()) && !self.peek_tok().spaced {
            // `-1` at the head of an expression is a literal.
            let lit = match *self.peek() {
                Tok::Int(i) => Some(ExprKind::ConstInt(-i)),
                Tok::Float(f) => Some(ExprKind::ConstFloat(-f)),
                _ => None,
            };
            if let Some(kind) = lit {
                let end = self.advance().span;
                return Ok(Expr::new(kind, start.to(&end)));
            }
        }
        let operand = self.unary()?;
        let span = start.to(&operand.span);
        let f = Expr::new(ExprKind::Var(neg.into()), op_tok.span);
        Ok(Expr::new(ExprKind::App(Box::new(f), vec![operand]), span))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Int(_)
                | Tok::Float(_)
                | Tok::Str(_)
                | Tok::Char(_)
                | Tok::Ident(_)
                | Tok::LParen
                | Tok::LBracket
                | Tok::Kw(Kw::True | Kw::False | Kw::Begin)
        ) || self.at_op("!")
    }

    fn application(&mut self) -> Result<Expr, ParseError> {
        let head = if self.at_kw(Kw::While) {
            return self.while_loop();
        } else {
            self.atom()?
        };
        let mut args = Vec::new();
        while self.starts_atom() {
            args.push(self.atom()?);
        }
        if args.is_empty() {
            return Ok(head);
        }
        Ok(make_app(head, args))
    }

    fn while_loop(&mut self) -> Result<Expr, ParseError> {
        let start = self.expect_kw(Kw::While)?;
        let cond = self.seq()?;
        self.expect_kw(Kw::Do)?;
        let body = self.seq()?;
        let end = self.expect_kw(Kw::Done)?;
        Ok(Expr::new(
            ExprKind::While(Box::new(cond), Box::new(body)),
            start.to(&end),
        ))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = self.span();
        let kind = match self.peek().clone() {
            Tok::Int(i) => ExprKind::ConstInt(i),
            Tok::Float(f) => ExprKind::ConstFloat(f),
            Tok::Str(s) => ExprKind::ConstString(s),
            Tok::Char(c) => ExprKind::ConstChar(c),
            Tok::Kw(Kw::True) => ExprKind::ConstBool(true),
            Tok::Kw(Kw::False) => ExprKind::ConstBool(false),
            Tok::Ident(x) => ExprKind::Var(x),
            Tok::Op(o) if o == "!" => {
                let op = self.advance().span;
                let operand = self.atom()?;
                let span = op.to(&operand.span);
                let f = Expr::new(ExprKind::Var("!".into()), op);
                return Ok(Expr::new(ExprKind::App(Box::new(f), vec![operand]), span));
            }
            Tok::Kw(Kw::Begin) => {
                self.advance();
                if self.at_kw(Kw::End) {
                    let end = self.advance().span;
                    return Ok(Expr::new(ExprKind::ConstUnit, start.to(&end)));
                }
                let inner = self.seq()?;
                self.expect_kw(Kw::End)?;
                return Ok(inner);
            }
            Tok::LParen => return self.paren(),
            Tok::LBracket => return self.list_literal(),
            _ => return self.unexpected("an expression"),
        };
        self.advance();
        Ok(Expr::new(kind, start))
    }

    fn paren(&mut self) -> Result<Expr, ParseError> {
        let start = self.expect(&Tok::LParen, "`(`")?;
        if self.at(&Tok::RParen) {
            let end = self.advance().span;
            return Ok(Expr::new(ExprKind::ConstUnit, start.to(&end)));
        }
        // Operator section `(+)`.
        let section = match self.peek() {
            Tok::Op(o) => Some(o.clone()),
            Tok::Equals => Some("=".into()),
            _ => None,
        };
        if let Some(op) = section {
            if self.tokens.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::RParen) {
                self.advance();
                let end = self.advance().span;
                return Ok(Expr::new(ExprKind::Var(op), start.to(&end)));
            }
        }
        let inner = self.seq()?;
        if self.eat(&Tok::Colon) {
            let ty = self.type_expr()?;
            let end = self.expect(&Tok::RParen, "`)`")?;
            return Ok(Expr::new(
                ExprKind::Annot(Box::new(inner), ty),
                start.to(&end),
            ));
        }
        self.expect(&Tok::RParen, "`)`")?;
        Ok(inner)
    }

    fn list_literal(&mut self) -> Result<Expr, ParseError> {
        let start = self.expect(&Tok::LBracket, "`[`")?;
        let mut elems = Vec::new();
        while !self.at(&Tok::RBracket) {
            elems.push(self.expr()?);
            if !self.eat(&Tok::Semi) {
                break;
            }
        }
        let end = self.expect(&Tok::RBracket, "`]` or `;`")?;
        Ok(Expr::new(ExprKind::ListLit(elems), start.to(&end)))
    }

    // Patterns

    fn starts_atom_pattern(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::Underscore
                | Tok::Int(_)
                | Tok::Float(_)
                | Tok::Str(_)
                | Tok::Char(_)
                | Tok::LParen
                | Tok::LBracket
                | Tok::Kw(Kw::True | Kw::False)
        )
    }

    fn pattern(&mut self) -> Result<Pattern, ParseError> {
        let first = self.cons_pattern()?;
        let pat = if self.at(&Tok::Comma) {
            let mut elems = vec![first];
            while self.eat(&Tok::Comma) {
                elems.push(self.cons_pattern()?);
            }
            let span = elems[0].span.to(&elems[elems.len() - 1].span);
            Pattern::new(PatternKind::Tuple(elems), span)
        } else {
            first
        };
        check_distinct(std::slice::from_ref(&pat))?;
        Ok(pat)
    }

    fn cons_pattern(&mut self) -> Result<Pattern, ParseError> {
        let head = self.atom_pattern()?;
        if self.at_op("::") {
            self.advance();
            let tail = self.cons_pattern()?;
            let span = head.span.to(&tail.span);
            return Ok(Pattern::new(
                PatternKind::Cons(Box::new(head), Box::new(tail)),
                span,
            ));
        }
        Ok(head)
    }

    fn atom_pattern(&mut self) -> Result<Pattern, ParseError> {
        let start = self.span();
        let kind = match self.peek().clone() {
            Tok::Ident(x) if !x.contains('.') => PatternKind::Var(x),
            Tok::Underscore => PatternKind::Wildcard,
            Tok::Int(i) => PatternKind::ConstInt(i),
            Tok::Float(f) => PatternKind::ConstFloat(f),
            Tok::Str(s) => PatternKind::ConstString(s),
            Tok::Char(c) => PatternKind::ConstChar(c),
            Tok::Kw(Kw::True) => PatternKind::ConstBool(true),
            Tok::Kw(Kw::False) => PatternKind::ConstBool(false),
            Tok::Op(o) if o == "-" => {
                self.advance();
                let kind = match *self.peek() {
                    Tok::Int(i) => PatternKind::ConstInt(-i),
                    Tok::Float(f) => PatternKind::ConstFloat(-f),
                    _ => return self.unexpected("a numeric literal"),
                };
                let end = self.advance().span;
                return Ok(Pattern::new(kind, start.to(&end)));
            }
            Tok::LParen => {
                self.advance();
                if self.at(&Tok::RParen) {
                    let end = self.advance().span;
                    return Ok(Pattern::new(PatternKind::ConstUnit, start.to(&end)));
                }
                let inner = self.pattern()?;
                if self.eat(&Tok::Colon) {
                    let ty = self.type_expr()?;
                    let end = self.expect(&Tok::RParen, "`)`")?;
                    let kind = PatternKind::Annot(Box::new(inner), ty);
                    return Ok(Pattern::new(kind, start.to(&end)));
                }
                self.expect(&Tok::RParen, "`)`")?;
                return Ok(inner);
            }
            Tok::LBracket => {
                self.advance();
                let mut elems = Vec::new();
                while !self.at(&Tok::RBracket) {
                    elems.push(self.pattern()?);
                    if !self.eat(&Tok::Semi) {
                        break;
                    }
                }
                let end = self.expect(&Tok::RBracket, "`]` or `;`")?;
                let span = start.to(&end);
                let mut pat = Pattern::new(PatternKind::Nil, span.clone());
                for elem in elems.into_iter().rev() {
                    let s = elem.span.to(&span);
                    pat = Pattern::new(PatternKind::Cons(Box::new(elem), Box::new(pat)), s);
                }
                return Ok(pat);
            }
            _ => return self.unexpected("a pattern"),
        };
        self.advance();
        Ok(Pattern::new(kind, start))
    }

    // Types

    fn type_expr(&mut self) -> Result<TypeExpr, ParseError> {
        let lhs = self.tuple_type()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.type_expr()?;
            return Ok(TypeExpr::Arrow(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn tuple_type(&mut self) -> Result<TypeExpr, ParseError> {
        let first = self.app_type()?;
        if !self.at_op("*") {
            return Ok(first);
        }
        let mut elems = vec![first];
        while self.at_op("*") {
            self.advance();
            elems.push(self.app_type()?);
        }
        Ok(TypeExpr::Tuple(elems))
    }

    fn app_type(&mut self) -> Result<TypeExpr, ParseError> {
        let mut ty = match self.peek().clone() {
            Tok::TyVar(v) => {
                self.advance();
                TypeExpr::Var(v)
            }
            Tok::Ident(name) => {
                self.type_constructor(&name, 0)?;
                self.advance();
                TypeExpr::Con(name, Vec::new())
            }
            Tok::LParen => {
                self.advance();
                let inner = self.type_expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                inner
            }
            _ => return self.unexpected("a type"),
        };
        while let Tok::Ident(name) = self.peek().clone() {
            self.type_constructor(&name, 1)?;
            self.advance();
            ty = TypeExpr::Con(name, vec![ty]);
        }
        Ok(ty)
    }

    fn type_constructor(&self, name: &str, arity: usize) -> Result<(), ParseError> {
        let expected = match name {
            "int" | "float" | "bool" | "string" | "unit" | "char" => 0,
            "list" | "ref" => 1,
            _ => return self.error(format!("unknown type constructor `{name}`")),
        };
        if expected != arity {
            return self.error(format!(
                "type constructor `{name}` expects {expected} argument(s)"
            ));
        }
        Ok(())
    }
}

fn binary(op: &str, op_span: Span, lhs: Expr, rhs: Expr) -> Expr {
    let span = lhs.span.to(&rhs.span);
    let f = Expr::new(ExprKind::Var(op.into()), op_span);
    Expr::new(ExprKind::App(Box::new(f), vec![lhs, rhs]), span)
}

/// Builds an application, flattening `(f a) b` into `f a b`.
fn make_app(head: Expr, mut args: Vec<Expr>) -> Expr {
    let span = head.span.to(&args[args.len() - 1].span);
    match head.kind {
        ExprKind::App(f, mut inner) => {
            inner.append(&mut args);
            Expr::new(ExprKind::App(f, inner), span)
        }
        kind => Expr::new(
            ExprKind::App(Box::new(Expr::new(kind, head.span)), args),
            span,
        ),
    }
}

fn check_distinct(pats: &[Pattern]) -> Result<(), ParseError> {
    let mut seen = HashSet::new();
    for pat in pats {
        for (name, span) in pat.bound_vars() {
            if !seen.insert(name) {
                return Err(ParseError {
                    span: span.clone(),
                    message: format!("variable `{name}` is bound several times in this pattern"),
                });
            }
        }
    }
    Ok(())
}
