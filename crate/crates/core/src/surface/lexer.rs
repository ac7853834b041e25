use std::sync::Arc;

use super::ast::Span;
use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Int(i64),
    Float(f64),
    Str(String),
    Char(char),
    /// Lowercase identifier, possibly dotted (`List.map`).
    Ident(String),
    /// `'a` in type annotations.
    TyVar(String),
    /// Operator symbol such as `+.`, `::`, `:=`.
    Op(String),
    Kw(Kw),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    SemiSemi,
    Bar,
    Arrow,
    Colon,
    Equals,
    Underscore,
    Eof,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kw {
    Let,
    Rec,
    In,
    Fun,
    If,
    Then,
    Else,
    Match,
    With,
    While,
    Do,
    Done,
    True,
    False,
    Begin,
    End,
}

impl Kw {
    fn from_word(word: &str) -> Option<Kw> {
        Some(match word {
            "let" => Kw::Let,
            "rec" => Kw::Rec,
            "in" => Kw::In,
            "fun" => Kw::Fun,
            "if" => Kw::If,
            "then" => Kw::Then,
            "else" => Kw::Else,
            "match" => Kw::Match,
            "with" => Kw::With,
            "while" => Kw::While,
            "do" => Kw::Do,
            "done" => Kw::Done,
            "true" => Kw::True,
            "false" => Kw::False,
            "begin" => Kw::Begin,
            "end" => Kw::End,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kw::Let => "let",
            Kw::Rec => "rec",
            Kw::In => "in",
            Kw::Fun => "fun",
            Kw::If => "if",
            Kw::Then => "then",
            Kw::Else => "else",
            Kw::Match => "match",
            Kw::With => "with",
            Kw::While => "while",
            Kw::Do => "do",
            Kw::Done => "done",
            Kw::True => "true",
            Kw::False => "false",
            Kw::Begin => "begin",
            Kw::End => "end",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
    /// Whitespace or a comment separates this token from the previous one.
    pub spaced: bool,
}

/// Characters that may start or continue an operator.
const OP_CHARS: &str = "+-*/<>=:!^&|@~.";

struct Lexer<'s> {
    src: &'s str,
    file: Arc<str>,
    pos: usize,
    line: u32,
    col: u32,
}

pub fn tokenize(src: &str, file: &str) -> Result<Vec<Token>, ParseError> {
    let mut lx = Lexer {
        src,
        file: Arc::from(file),
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        let spaced = lx.skip_trivia()?;
        let start = lx.mark();
        let Some(c) = lx.peek() else {
            out.push(Token {
                tok: Tok::Eof,
                span: lx.span_from(start),
                spaced,
            });
            return Ok(out);
        };
        let tok = lx.token(c, start)?;
        out.push(Token {
            tok,
            span: lx.span_from(start),
            spaced,
        });
    }
}

#[derive(Clone, Copy)]
struct Mark {
    pos: usize,
    line: u32,
    col: u32,
}

impl<'s> Lexer<'s> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn mark(&self) -> Mark {
        Mark {
            pos: self.pos,
            line: self.line,
            col: self.col,
        }
    }

    fn span_from(&self, m: Mark) -> Span {
        Span {
            file: self.file.clone(),
            start_line: m.line,
            start_col: m.col,
            end_line: self.line,
            end_col: self.col,
            byte_start: m.pos,
            byte_end: self.pos,
        }
    }

    fn error(&self, m: Mark, message: impl Into<String>) -> ParseError {
        ParseError {
            span: self.span_from(m),
            message: message.into(),
        }
    }

    fn skip_trivia(&mut self) -> Result<bool, ParseError> {
        let mut skipped = false;
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                    skipped = true;
                }
                Some('(') if self.peek_at(1) == Some('*') => {
                    self.skip_comment()?;
                    skipped = true;
                }
                _ => return Ok(skipped),
            }
        }
    }

    fn skip_comment(&mut self) -> Result<(), ParseError> {
        let start = self.mark();
        self.bump();
        self.bump();
        let mut depth = 1;
        while depth > 0 {
            match self.bump() {
                None => return Err(self.error(start, "unterminated comment")),
                Some('(') if self.peek() == Some('*') => {
                    self.bump();
                    depth += 1;
                }
                Some('*') if self.peek() == Some(')') => {
                    self.bump();
                    depth -= 1;
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    fn token(&mut self, c: char, start: Mark) -> Result<Tok, ParseError> {
        if c.is_ascii_digit() {
            return self.number(start);
        }
        if c.is_ascii_lowercase() || c == '_' {
            return Ok(self.word(start));
        }
        if c.is_ascii_uppercase() {
            return self.dotted_ident(start);
        }
        match c {
            '"' => return self.string(start),
            '\'' => return self.quote(start),
            '(' | ')' | '[' | ']' | ',' => {
                self.bump();
                return Ok(match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    _ => Tok::Comma,
                });
            }
            ';' => {
                self.bump();
                if self.peek() == Some(';') {
                    self.bump();
                    return Ok(Tok::SemiSemi);
                }
                return Ok(Tok::Semi);
            }
            _ => {}
        }
        if OP_CHARS.contains(c) {
            let mut op = String::new();
            while let Some(c) = self.peek().filter(|c| OP_CHARS.contains(*c)) {
                // `!` only ever stands alone so that `!!r` and `f !r` lex as expected.
                if c == '!' && !op.is_empty() {
                    break;
                }
                op.push(c);
                self.bump();
                if op == "!" {
                    break;
                }
            }
            return Ok(match op.as_str() {
                "->" => Tok::Arrow,
                ":" => Tok::Colon,
                "=" => Tok::Equals,
                "|" => Tok::Bar,
                _ => Tok::Op(op),
            });
        }
        self.bump();
        Err(self.error(start, format!("unexpected character `{c}`")))
    }

    fn number(&mut self, start: Mark) -> Result<Tok, ParseError> {
        let mut text = String::new();
        let mut is_float = false;
        self.digits(&mut text);
        if self.peek() == Some('.') && self.peek_at(1) != Some('.') {
            is_float = true;
            text.push('.');
            self.bump();
            self.digits(&mut text);
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let sign = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                is_float = true;
                text.push('e');
                self.bump();
                if sign {
                    text.push(self.bump().unwrap_or('+'));
                }
                self.digits(&mut text);
            }
        }
        if self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        {
            return Err(self.error(start, "malformed number literal"));
        }
        if is_float {
            text.parse()
                .map(Tok::Float)
                .map_err(|_| self.error(start, "malformed float literal"))
        } else {
            text.parse()
                .map(Tok::Int)
                .map_err(|_| self.error(start, "integer literal out of range"))
        }
    }

    fn digits(&mut self, out: &mut String) {
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit() || *c == '_') {
            if c != '_' {
                out.push(c);
            }
            self.bump();
        }
    }

    fn ident_chars(&mut self, out: &mut String) {
        while let Some(c) = self
            .peek()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '\'')
        {
            out.push(c);
            self.bump();
        }
    }

    fn word(&mut self, _start: Mark) -> Tok {
        let mut word = String::new();
        self.ident_chars(&mut word);
        if word == "_" {
            return Tok::Underscore;
        }
        match Kw::from_word(&word) {
            Some(kw) => Tok::Kw(kw),
            None => Tok::Ident(word),
        }
    }

    fn dotted_ident(&mut self, start: Mark) -> Result<Tok, ParseError> {
        let mut name = String::new();
        self.ident_chars(&mut name);
        while self.peek() == Some('.') {
            name.push('.');
            self.bump();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' => self.ident_chars(&mut name),
                _ => return Err(self.error(start, "expected identifier after `.`")),
            }
        }
        let last = name.rsplit('.').next().unwrap_or_default();
        if !last.starts_with(|c: char| c.is_ascii_lowercase() || c == '_') {
            return Err(self.error(
                start,
                format!("`{name}`: constructors and modules are not supported"),
            ));
        }
        Ok(Tok::Ident(name))
    }

    fn escape(&mut self, start: Mark) -> Result<char, ParseError> {
        match self.bump() {
            Some('n') => Ok('\n'),
            Some('t') => Ok('\t'),
            Some('r') => Ok('\r'),
            Some('\\') => Ok('\\'),
            Some('"') => Ok('"'),
            Some('\'') => Ok('\''),
            _ => Err(self.error(start, "invalid escape sequence")),
        }
    }

    fn string(&mut self, start: Mark) -> Result<Tok, ParseError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error(start, "unterminated string literal")),
                Some('"') => return Ok(Tok::Str(s)),
                Some('\\') => s.push(self.escape(start)?),
                Some(c) => s.push(c),
            }
        }
    }

    /// Either a character literal `'c'` or a type variable `'a`.
    fn quote(&mut self, start: Mark) -> Result<Tok, ParseError> {
        self.bump();
        match (self.peek(), self.peek_at(1)) {
            (Some('\\'), _) => {
                self.bump();
                let c = self.escape(start)?;
                if self.bump() != Some('\'') {
                    return Err(self.error(start, "unterminated character literal"));
                }
                Ok(Tok::Char(c))
            }
            (Some(c), Some('\'')) => {
                self.bump();
                self.bump();
                Ok(Tok::Char(c))
            }
            (Some(c), _) if c.is_ascii_lowercase() => {
                let mut name = String::new();
                self.ident_chars(&mut name);
                Ok(Tok::TyVar(name))
            }
            _ => Err(self.error(start, "malformed character literal")),
        }
    }
}
